//! Exhaustive censuses of isomorphism classes of curves over F_{p^k}.
//!
//! [`Census::run`] walks every nonsingular pair `(a4, a6)` in enumeration order and
//! keeps the first (least) member of each twist orbit `(u^4 a4, u^6 a6)`, so each
//! record is one F-isomorphism class with its canonical model.
//!
//! Level censuses weight each class by `#structures(E) / #Aut_F(E)`:
//!
//! * Igusa level `p^n`: points of exact order `p^n` on `E^(p^n)`. For ordinary `E` the
//!   kernel of `F^n` is connected, so every `p^n`-torsion point of `E^(p^n)` lies in the
//!   kernel of the Verschiebung and the rational generators of that kernel are exactly
//!   the rational points of order `p^n`. Supersingular classes carry no structure.
//! * `Gamma_1(l)`: points of exact order `l` on `E`.
//! * `Gamma(N)`: `#SL_2(Z/NZ)` when all of `E[N]` is rational, otherwise 0. That is the
//!   number of bases of `E[N]` with one fixed Weil pairing value.

pub use crate::arith::psi;
use crate::arith::{euler_phi, is_prime, sl2_order};
use crate::classnum::{
    field_size, kronecker_class_number, schoof_n, weighted_kronecker_class_number, Discriminant,
};
use crate::ellcurve::{hasse_bound, is_singular, WeierstrassCurve};
use crate::error::{Error, Result};
use crate::gf::{FieldDescriptor, FieldElement};
use num_rational::Ratio;
use num_traits::Zero;
use rayon::prelude::*;
use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

/// Largest field for a full census.
pub const CENSUS_LIMIT: u64 = 1 << 14;

/// One F-isomorphism class.
#[derive(Clone, Debug)]
pub struct ClassRecord {
    pub curve: WeierstrassCurve,
    pub trace: i64,
    /// `#Aut_F(E)`, the stabilizer of the coefficient pair in F*.
    pub aut: u32,
    pub orbit_size: u64,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum LevelStructure {
    Igusa { n: u32 },
    GammaFull { n: u64 },
    Gamma1 { ell: u64 },
}

impl LevelStructure {
    /// Checks the parameter constraints against the characteristic.
    pub fn validate(&self, p: u64) -> Result<()> {
        match *self {
            LevelStructure::Igusa { n: 0 } => {
                Err(Error::InvalidLevel("Igusa level needs n >= 1".into()))
            }
            LevelStructure::GammaFull { n } if n <= 2 || n % p == 0 => Err(Error::InvalidLevel(
                format!("Gamma({n}) needs N > 2 and p = {p} not dividing N"),
            )),
            LevelStructure::Gamma1 { ell } if !is_prime(ell) || ell < 5 || ell == p => {
                Err(Error::InvalidLevel(format!(
                    "Gamma1({ell}) needs a prime l > 4 different from p = {p}"
                )))
            }
            _ => Ok(()),
        }
    }

    /// Parses `igusa:n`, `gamma:N` or `gamma1:l`.
    pub fn parse(s: &str) -> Result<Self> {
        let (kind, value) = s
            .split_once(':')
            .ok_or_else(|| Error::InvalidLevel(format!("expected kind:value, got {s:?}")))?;
        let bad = || Error::InvalidLevel(format!("bad level value in {s:?}"));
        match kind.trim() {
            "igusa" => Ok(LevelStructure::Igusa {
                n: value.trim().parse().map_err(|_| bad())?,
            }),
            "gamma" => Ok(LevelStructure::GammaFull {
                n: value.trim().parse().map_err(|_| bad())?,
            }),
            "gamma1" => Ok(LevelStructure::Gamma1 {
                ell: value.trim().parse().map_err(|_| bad())?,
            }),
            other => Err(Error::InvalidLevel(format!("unknown level kind {other:?}"))),
        }
    }
}

impl fmt::Display for LevelStructure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LevelStructure::Igusa { n } => write!(f, "igusa:{n}"),
            LevelStructure::GammaFull { n } => write!(f, "gamma:{n}"),
            LevelStructure::Gamma1 { ell } => write!(f, "gamma1:{ell}"),
        }
    }
}

/// Whether a trace satisfies the congruences of a level structure.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Eligibility {
    pub eligible: bool,
    pub reason: String,
}

/// Congruence conditions for `t` over F_{q^k}, `q = p^e`.
pub fn eligibility(level: LevelStructure, p: u64, e: u32, k: u32, t: i64) -> Result<Eligibility> {
    let big_q = field_size(p, e, k)? as i128;
    let t = t as i128;
    let fail = |reason: String| {
        Ok(Eligibility {
            eligible: false,
            reason,
        })
    };
    let hasse_ok = t * t <= 4 * big_q;
    match level {
        LevelStructure::Igusa { n } => {
            let m = crate::arith::checked_pow(p, n).ok_or(Error::Overflow("p^n"))? as i128;
            if (t - big_q - 1).rem_euclid(m) != 0 {
                return fail(format!("t ≢ qᵏ+1 mod {m}"));
            }
            if t * t >= 4 * big_q {
                return fail("t² ≥ 4qᵏ".into());
            }
        }
        LevelStructure::GammaFull { n } => {
            let n = n as i128;
            if (t - big_q - 1).rem_euclid(n * n) != 0 {
                return fail(format!("t ≢ qᵏ+1 mod {}", n * n));
            }
            if big_q.rem_euclid(n) != 1 {
                return fail(format!("qᵏ ≢ 1 mod {n}"));
            }
            if !hasse_ok {
                return fail("t² > 4qᵏ".into());
            }
        }
        LevelStructure::Gamma1 { ell } => {
            let l = ell as i128;
            if (t - big_q - 1).rem_euclid(l) != 0 {
                return fail(format!("t ≢ qᵏ+1 mod {l}"));
            }
            if !hasse_ok {
                return fail("t² > 4qᵏ".into());
            }
        }
    }
    Ok(Eligibility {
        eligible: true,
        reason: String::new(),
    })
}

/// Degree of the j-map of the level structure over the j-line (the constant factor
/// in the closed form).
pub fn level_degree(level: LevelStructure, p: u64) -> Result<Ratio<i64>> {
    Ok(match level {
        LevelStructure::Igusa { n } => {
            let pn = crate::arith::checked_pow(p, n).ok_or(Error::Overflow("p^n"))?;
            Ratio::new(euler_phi(pn) as i64, 2)
        }
        LevelStructure::GammaFull { n } => Ratio::new(sl2_order(n) as i64, 2),
        LevelStructure::Gamma1 { ell } => Ratio::new((ell * ell - 1) as i64, 2),
    })
}

/// Discriminant entering the closed form: `t^2 - 4q^k`, divided by `N^2` for Gamma(N).
pub fn level_discriminant(
    level: LevelStructure,
    p: u64,
    e: u32,
    k: u32,
    t: i64,
) -> Result<Discriminant> {
    let big_q = field_size(p, e, k)? as i128;
    let raw = (t as i128) * (t as i128) - 4 * big_q;
    let raw = i64::try_from(raw).map_err(|_| Error::Overflow("discriminant"))?;
    if raw == 0 {
        return Err(Error::FormulaUndefined(format!("t² = 4qᵏ at t = {t}")));
    }
    let value = match level {
        LevelStructure::GammaFull { n } => {
            let n2 = (n * n) as i64;
            if raw % n2 != 0 {
                return Err(Error::FormulaUndefined(format!(
                    "(t² - 4qᵏ) = {raw} not divisible by N² = {n2}"
                )));
            }
            raw / n2
        }
        _ => raw,
    };
    Discriminant::new(value)
        .map_err(|_| Error::FormulaUndefined(format!("{value} is not a negative discriminant")))
}

/// Closed form `deg(J) * H_w(D)` for the level count at an eligible trace, with the
/// unit-weighted class number sum. Ineligible traces give 0.
pub fn level_formula(level: LevelStructure, p: u64, e: u32, k: u32, t: i64) -> Result<Ratio<i64>> {
    if !eligibility(level, p, e, k, t)?.eligible {
        return Ok(Ratio::zero());
    }
    let d = level_discriminant(level, p, e, k, t)?;
    Ok(level_degree(level, p)? * weighted_kronecker_class_number(d))
}

/// Same closed form with the unweighted Kronecker class number `H(D)`.
pub fn level_formula_unweighted(
    level: LevelStructure,
    p: u64,
    e: u32,
    k: u32,
    t: i64,
) -> Result<Ratio<i64>> {
    if !eligibility(level, p, e, k, t)?.eligible {
        return Ok(Ratio::zero());
    }
    let d = level_discriminant(level, p, e, k, t)?;
    Ok(level_degree(level, p)? * Ratio::from_integer(kronecker_class_number(d) as i64))
}

/// All isomorphism classes of curves over one field.
#[derive(Clone, Debug)]
pub struct Census {
    field: Arc<FieldDescriptor>,
    records: Vec<ClassRecord>,
}

impl Census {
    pub fn run(field: Arc<FieldDescriptor>) -> Result<Census> {
        let q = field.cardinality();
        if q > CENSUS_LIMIT || !field.has_tables() {
            return Err(Error::FieldTooLarge {
                q,
                limit: CENSUS_LIMIT,
                what: "isomorphism class census",
            });
        }
        let canonical = canonical_pairs(&field);
        let records = canonical
            .into_par_iter()
            .map(|(a4, a6, orbit_size)| {
                let curve = WeierstrassCurve::new(field.clone(), a4, a6)?;
                let trace = curve.trace()?.t;
                let aut = curve.rational_aut_order();
                debug_assert_eq!(orbit_size * aut as u64, q - 1);
                Ok(ClassRecord {
                    curve,
                    trace,
                    aut,
                    orbit_size,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Census { field, records })
    }

    pub fn field(&self) -> &Arc<FieldDescriptor> {
        &self.field
    }

    pub fn records(&self) -> &[ClassRecord] {
        &self.records
    }

    /// `sum of orbit sizes`, which must be `q^2 - q`.
    pub fn total_orbit_size(&self) -> u64 {
        self.records.iter().map(|r| r.orbit_size).sum()
    }

    pub fn empirical_n(&self, t: i64) -> u64 {
        self.records.iter().filter(|r| r.trace == t).count() as u64
    }

    /// Number of classes per trace.
    pub fn trace_counts(&self) -> BTreeMap<i64, u64> {
        let mut out = BTreeMap::new();
        for r in &self.records {
            *out.entry(r.trace).or_insert(0) += 1;
        }
        out
    }

    /// Number of classes per j-invariant.
    pub fn j_counts(&self) -> BTreeMap<FieldElement, u64> {
        let mut out = BTreeMap::new();
        for r in &self.records {
            *out.entry(r.curve.j_invariant()).or_insert(0) += 1;
        }
        out
    }

    /// Number of level structures on one class defined over the base field.
    pub fn structures(&self, record: &ClassRecord, level: LevelStructure) -> Result<u64> {
        let p = self.field.characteristic();
        let n_points = (self.field.cardinality() as i64 + 1 - record.trace) as u64;
        match level {
            LevelStructure::Igusa { n } => {
                if record.trace.rem_euclid(p as i64) == 0 {
                    return Ok(0);
                }
                let pn = crate::arith::checked_pow(p, n).ok_or(Error::Overflow("p^n"))?;
                if n_points % pn != 0 {
                    return Ok(0);
                }
                let twisted = record.curve.frobenius_twist(n);
                Ok(twisted.point_order_census(pn)?[&pn])
            }
            LevelStructure::Gamma1 { ell } => {
                if n_points % ell != 0 {
                    return Ok(0);
                }
                Ok(record.curve.point_order_census(ell)?[&ell])
            }
            LevelStructure::GammaFull { n } => {
                if n_points % (n * n) != 0 {
                    return Ok(0);
                }
                let full = record.curve.torsion_count(n)? == n * n;
                Ok(if full { sl2_order(n) } else { 0 })
            }
        }
    }

    /// `sum over classes with trace t of #structures / #Aut_F`, as an exact rational.
    pub fn level_mass(&self, level: LevelStructure, t: i64) -> Result<Ratio<i64>> {
        level.validate(self.field.characteristic())?;
        let classes: Vec<&ClassRecord> = self.records.iter().filter(|r| r.trace == t).collect();
        let terms = classes
            .par_iter()
            .map(|r| Ok(Ratio::new(self.structures(r, level)? as i64, r.aut as i64)))
            .collect::<Result<Vec<_>>>()?;
        Ok(terms.into_iter().sum())
    }

    /// Weighted level count; a non-integer total is an error.
    pub fn level_census(&self, level: LevelStructure, t: i64) -> Result<u64> {
        let mass = self.level_mass(level, t)?;
        if !mass.is_integer() {
            return Err(Error::NonIntegralMass(format!(
                "{level} at t = {t}: {mass}"
            )));
        }
        Ok(mass.to_integer() as u64)
    }

    /// Hasse interval `[-2 sqrt q, 2 sqrt q]` for this field.
    pub fn trace_range(&self) -> std::ops::RangeInclusive<i64> {
        let b = hasse_bound(self.field.cardinality());
        -b..=b
    }
}

/// Canonical (least) pair of each twist orbit with its orbit size, in enumeration order.
fn canonical_pairs(field: &FieldDescriptor) -> Vec<(FieldElement, FieldElement, u64)> {
    let q = field.cardinality();
    let g = field.primitive_element();
    let (g4, g6) = (field.pow(g, 4), field.pow(g, 6));
    let mut visited = vec![0u64; ((q * q) as usize).div_ceil(64)];
    let idx = |a: FieldElement, b: FieldElement| (a.index() * q + b.index()) as usize;
    let mut out = Vec::new();
    for a4 in field.elements() {
        for a6 in field.elements() {
            let i = idx(a4, a6);
            if visited[i / 64] >> (i % 64) & 1 == 1 || is_singular(field, a4, a6) {
                continue;
            }
            let (mut x, mut y) = (a4, a6);
            let mut size = 0u64;
            loop {
                let j = idx(x, y);
                visited[j / 64] |= 1 << (j % 64);
                size += 1;
                x = field.mul(x, g4);
                y = field.mul(y, g6);
                if (x, y) == (a4, a6) {
                    break;
                }
            }
            out.push((a4, a6, size));
        }
    }
    out
}

/// Runs a census of F_{p^(e k)}.
pub fn full_census(field: Arc<FieldDescriptor>) -> Result<Vec<ClassRecord>> {
    Ok(Census::run(field)?.records)
}

/// Empirical N(t) over a field; prefer [`Census::empirical_n`] for repeated queries.
pub fn empirical_n(field: Arc<FieldDescriptor>, t: i64) -> Result<u64> {
    Ok(Census::run(field)?.empirical_n(t))
}

/// Weighted level count over a field; prefer [`Census::level_census`] for repeated queries.
pub fn level_census(field: Arc<FieldDescriptor>, level: LevelStructure, t: i64) -> Result<u64> {
    Census::run(field)?.level_census(level, t)
}

/// Formula side of the N(t) identity for a census field `F_{p^(e k)}`.
pub fn formula_n(census: &Census, t: i64) -> Result<u64> {
    let f = census.field();
    Ok(schoof_n(t, f.characteristic(), 1, f.degree())?.value)
}
