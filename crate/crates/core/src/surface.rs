//! One-parameter families `y^2 = x^3 + a4(l) x + a6(l)` over the affine `l`-line.
//!
//! A scan of F_{p^k} groups parameters into Frobenius orbits (closed points). Each
//! fiber is counted once over the residue field of its closed point, and the trace
//! over F_{p^k} is obtained from the two-term trace recurrence.

use crate::arith::{is_prime, pow_mod};
use crate::classnum::schoof_n;
use crate::ellcurve::{character_sum, hasse_bound, trace_extend};
use crate::error::{Error, Result};
use crate::gf::poly::FpPoly;
use crate::gf::{make_field, FieldDescriptor, FieldElement, TABLE_LIMIT};
use rayon::prelude::*;
use std::collections::BTreeMap;
use std::f64::consts::PI;
use std::fmt;
use std::sync::Arc;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Family {
    p: u64,
    a4: FpPoly,
    a6: FpPoly,
    name: Option<String>,
}

impl Family {
    /// Validates primality, a nonsingular generic fiber and a non-constant j-invariant.
    pub fn new(p: u64, a4: FpPoly, a6: FpPoly, name: Option<String>) -> Result<Family> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if p <= 3 {
            return Err(Error::SmallCharacteristic(p));
        }
        if a4.p() != p || a6.p() != p {
            return Err(Error::InvalidArgument(
                "coefficient polynomials live over a different prime".into(),
            ));
        }
        let fam = Family { p, a4, a6, name };
        if fam.discriminant().is_zero() {
            return Err(Error::SingularFamily);
        }
        let (num, den) = fam.j_fraction();
        if num.is_constant() && den.is_constant() {
            return Err(Error::IsotrivialFamily);
        }
        Ok(fam)
    }

    /// Short Weierstrass form of `y^2 = x(x - 1)(x - l)`, after `x -> x + (l + 1)/3`.
    pub fn legendre(p: u64) -> Result<Family> {
        if p <= 3 {
            return Err(Error::SmallCharacteristic(p));
        }
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        let inv = |n: u64| p - pow_mod(n % p, p - 2, p);
        let a4 = FpPoly::from_signed(p, &[1, -1, 1]).scale(inv(3));
        let a6 = FpPoly::from_signed(p, &[1, 1])
            .mul(&FpPoly::from_signed(p, &[-1, 2]))
            .mul(&FpPoly::from_signed(p, &[-2, 1]))
            .scale(inv(27));
        Family::new(p, a4, a6, Some("legendre".into()))
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn a4(&self) -> &FpPoly {
        &self.a4
    }

    pub fn a6(&self) -> &FpPoly {
        &self.a6
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    /// `-16 (4 a4^3 + 27 a6^2)`.
    pub fn discriminant(&self) -> FpPoly {
        let p = self.p;
        self.a4
            .pow(3)
            .scale(4)
            .add(&self.a6.pow(2).scale(27))
            .scale(p - 16 % p)
    }

    /// `j(l) = 6912 a4^3 / (4 a4^3 + 27 a6^2)` in lowest terms, denominator monic.
    pub fn j_fraction(&self) -> (FpPoly, FpPoly) {
        let cube = self.a4.pow(3);
        let num = cube.scale(6912);
        let den = cube.scale(4).add(&self.a6.pow(2).scale(27));
        if num.is_zero() {
            return (num, FpPoly::constant(self.p, 1));
        }
        let g = num.gcd(&den);
        let (num, _) = num.div_rem(&g);
        let (den, _) = den.div_rem(&g);
        let lead = pow_mod(den.leading(), self.p - 2, self.p);
        (num.scale(lead), den.scale(lead))
    }

    /// The pullback along `l -> l^m`.
    pub fn compose_power(&self, m: usize) -> Result<Family> {
        Family::new(
            self.p,
            self.a4.compose_power(m),
            self.a6.compose_power(m),
            self.name.clone(),
        )
    }

    /// Fiber coefficients at a parameter value in an extension of F_p.
    pub fn fiber(&self, field: &FieldDescriptor, l: FieldElement) -> (FieldElement, FieldElement) {
        (eval_in(field, &self.a4, l), eval_in(field, &self.a6, l))
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(name) = &self.name {
            write!(f, "{name}: ")?;
        }
        write!(
            f,
            "y^2 = x^3 + ({}) x + ({}) over F_{}",
            self.a4, self.a6, self.p
        )
    }
}

fn eval_in(field: &FieldDescriptor, poly: &FpPoly, l: FieldElement) -> FieldElement {
    poly.coeffs().iter().rev().fold(field.zero(), |acc, &c| {
        field.add(field.mul(acc, l), field.from_int(c as i64))
    })
}

/// Parses a polynomial in `l` such as `3*l^2 - l + 1`.
pub fn parse_poly(p: u64, text: &str) -> std::result::Result<FpPoly, String> {
    let s: String = text
        .chars()
        .filter(|c| !c.is_whitespace())
        .map(|c| if c == 'λ' { 'l' } else { c })
        .collect();
    if s.is_empty() {
        return Err("empty polynomial".into());
    }
    let mut terms = Vec::new();
    let mut start = 0;
    for (i, c) in s.char_indices() {
        if (c == '+' || c == '-') && i > 0 && !s[..i].ends_with('^') {
            terms.push(&s[start..i]);
            start = i;
        }
    }
    terms.push(&s[start..]);

    let m = p as i128;
    let mut coeffs: Vec<i128> = Vec::new();
    for term in terms {
        let (sign, body) = match term.as_bytes().first() {
            Some(b'-') => (-1i128, &term[1..]),
            Some(b'+') => (1, &term[1..]),
            _ => (1, term),
        };
        if body.is_empty() {
            return Err(format!("dangling sign in '{text}'"));
        }
        let (coeff, exp) = match body.find('l') {
            None => (parse_int(body)?, 0usize),
            Some(pos) => {
                let head = body[..pos].strip_suffix('*').unwrap_or(&body[..pos]);
                if body[..pos].ends_with('*') && head.is_empty() {
                    return Err(format!("missing coefficient before '*' in '{term}'"));
                }
                let coeff = if head.is_empty() { 1 } else { parse_int(head)? };
                let tail = &body[pos + 1..];
                let exp = if tail.is_empty() {
                    1
                } else if let Some(e) = tail.strip_prefix('^') {
                    e.parse::<usize>()
                        .ok()
                        .filter(|&e| e <= 1 << 16)
                        .ok_or_else(|| format!("bad exponent '{e}'"))?
                } else {
                    return Err(format!("unexpected '{tail}' after variable"));
                };
                (coeff, exp)
            }
        };
        if coeffs.len() <= exp {
            coeffs.resize(exp + 1, 0);
        }
        coeffs[exp] = (coeffs[exp] + sign * coeff.rem_euclid(m)).rem_euclid(m);
    }
    Ok(FpPoly::new(
        p,
        coeffs.into_iter().map(|c| c as u64).collect(),
    ))
}

fn parse_int(s: &str) -> std::result::Result<i128, String> {
    s.parse::<i128>()
        .map_err(|_| format!("bad coefficient '{s}'"))
}

/// Reads a `key = value` family description.
///
/// Keys: `p`, `a4`, `a6`, `builtin` (only `legendre`) and `name`. Blank lines and
/// lines starting with `#` are skipped.
pub fn parse_family(text: &str) -> Result<Family> {
    let mut entries: BTreeMap<&str, (usize, &str)> = BTreeMap::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let content = raw.trim();
        if content.is_empty() || content.starts_with('#') {
            continue;
        }
        let err = |msg: String| Error::ParseFamily { line, msg };
        let (key, value) = content
            .split_once('=')
            .ok_or_else(|| err("expected 'key = value'".into()))?;
        let (key, value) = (key.trim(), value.trim());
        if !matches!(key, "p" | "a4" | "a6" | "builtin" | "name") {
            return Err(err(format!("unknown key '{key}'")));
        }
        if value.is_empty() {
            return Err(err(format!("empty value for '{key}'")));
        }
        if entries.insert(key, (line, value)).is_some() {
            return Err(err(format!("duplicate key '{key}'")));
        }
    }

    let last = text.lines().count().max(1);
    let (p_line, p_text) = *entries.get("p").ok_or(Error::ParseFamily {
        line: last,
        msg: "missing key 'p'".into(),
    })?;
    let p: u64 = p_text.parse().map_err(|_| Error::ParseFamily {
        line: p_line,
        msg: format!("bad prime '{p_text}'"),
    })?;
    let name = entries.get("name").map(|&(_, v)| v.to_string());

    if let Some(&(line, builtin)) = entries.get("builtin") {
        if let Some(&(l, _)) = entries.get("a4").or(entries.get("a6")) {
            return Err(Error::ParseFamily {
                line: l,
                msg: "'builtin' cannot be combined with a4/a6".into(),
            });
        }
        if builtin != "legendre" {
            return Err(Error::ParseFamily {
                line,
                msg: format!("unknown builtin family '{builtin}'"),
            });
        }
        let mut fam = Family::legendre(p)?;
        if name.is_some() {
            fam.name = name;
        }
        return Ok(fam);
    }

    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if p <= 3 {
        return Err(Error::SmallCharacteristic(p));
    }
    let poly = |key: &str| -> Result<FpPoly> {
        let &(line, value) = entries.get(key).ok_or(Error::ParseFamily {
            line: last,
            msg: format!("missing key '{key}'"),
        })?;
        parse_poly(p, value).map_err(|msg| Error::ParseFamily { line, msg })
    };
    Family::new(p, poly("a4")?, poly("a6")?, name)
}

/// Degree and separable degree of the j-map `l -> j(E_l)`.
pub fn j_map_degree(fam: &Family) -> (u64, u64) {
    let (mut num, mut den) = fam.j_fraction();
    let degree =
        |n: &FpPoly, d: &FpPoly| n.degree().unwrap_or(0).max(d.degree().unwrap_or(0)) as u64;
    let total = degree(&num, &den);
    let p = fam.p as usize;
    while degree(&num, &den) > 0 && num.exponents_divisible_by(p) && den.exponents_divisible_by(p) {
        num = num.deflate(p);
        den = den.deflate(p);
    }
    (total, degree(&num, &den))
}

/// Fiber type over a closed point; `t` is the trace over its residue field.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Fiber {
    Bad,
    Good { t: i64 },
}

/// A Frobenius orbit of parameters, listed from its least member.
#[derive(Clone, Debug)]
pub struct ClosedPoint {
    pub members: Vec<FieldElement>,
    pub fiber: Fiber,
}

impl ClosedPoint {
    pub fn rep(&self) -> FieldElement {
        self.members[0]
    }

    pub fn degree(&self) -> u32 {
        self.members.len() as u32
    }
}

/// Fiber tallies over the `p^k` parameters of F_{p^k}.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct FiberCounts {
    pub ordinary: u64,
    pub supersingular: u64,
    pub bad: u64,
}

impl FiberCounts {
    pub fn good(&self) -> u64 {
        self.ordinary + self.supersingular
    }

    pub fn total(&self) -> u64 {
        self.good() + self.bad
    }
}

/// All closed points of the affine line whose degree divides `k`.
#[derive(Clone, Debug)]
pub struct LevelScan {
    k: u32,
    field: Arc<FieldDescriptor>,
    points: Vec<ClosedPoint>,
}

fn scan_field(p: u64, k: u32) -> Result<Arc<FieldDescriptor>> {
    let field = make_field(p, k)?;
    if !field.has_tables() {
        return Err(Error::FieldTooLarge {
            q: field.cardinality(),
            limit: TABLE_LIMIT,
            what: "fiber scan",
        });
    }
    Ok(Arc::new(field))
}

fn residue_trace(field: &FieldDescriptor, fam: &Family, l: FieldElement, d: u32) -> Option<i64> {
    let (a4, a6) = fam.fiber(field, l);
    let disc = field.add(
        field.mul(field.from_int(4), field.pow(a4, 3)),
        field.mul(field.from_int(27), field.square(a6)),
    );
    if disc.is_zero() {
        None
    } else {
        Some(-character_sum(field, a4, a6, d))
    }
}

impl LevelScan {
    /// Scans F_{p^k}. With `verify_conjugates`, every orbit member is recounted and
    /// must give the same trace.
    pub fn run(fam: &Family, k: u32, verify_conjugates: bool) -> Result<LevelScan> {
        let field = scan_field(fam.p, k)?;
        let q = field.cardinality() as usize;
        let mut seen = vec![false; q];
        let mut orbits = Vec::new();
        for l in field.elements() {
            if seen[l.index() as usize] {
                continue;
            }
            let mut members = vec![l];
            seen[l.index() as usize] = true;
            let mut x = field.frobenius(l, 1);
            while x != l {
                seen[x.index() as usize] = true;
                members.push(x);
                x = field.frobenius(x, 1);
            }
            orbits.push(members);
        }
        let points = orbits
            .into_par_iter()
            .map(|members| {
                let d = members.len() as u32;
                let fiber = match residue_trace(&field, fam, members[0], d) {
                    None => Fiber::Bad,
                    Some(t) => Fiber::Good { t },
                };
                if verify_conjugates {
                    for &m in &members[1..] {
                        let other = residue_trace(&field, fam, m, d);
                        let first = match fiber {
                            Fiber::Bad => None,
                            Fiber::Good { t } => Some(t),
                        };
                        if other != first {
                            return Err(Error::ConjugateMismatch {
                                rep: members[0].index(),
                                member: m.index(),
                                first: first.unwrap_or(i64::MIN),
                                other: other.unwrap_or(i64::MIN),
                            });
                        }
                    }
                }
                Ok(ClosedPoint { members, fiber })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(LevelScan { k, field, points })
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn field(&self) -> &Arc<FieldDescriptor> {
        &self.field
    }

    pub fn points(&self) -> &[ClosedPoint] {
        &self.points
    }

    /// Trace of a good fiber over F_{p^k}, lifted from its residue field.
    pub fn level_trace(&self, point: &ClosedPoint) -> Result<Option<i64>> {
        match point.fiber {
            Fiber::Bad => Ok(None),
            Fiber::Good { t } => {
                let d = point.degree();
                let qd = self.field.characteristic().pow(d);
                trace_extend(t, qd, self.k / d).map(Some)
            }
        }
    }

    pub fn counts(&self) -> FiberCounts {
        let p = self.field.characteristic() as i64;
        let mut c = FiberCounts::default();
        for pt in &self.points {
            let d = pt.degree() as u64;
            match pt.fiber {
                Fiber::Bad => c.bad += d,
                Fiber::Good { t } if t % p == 0 => c.supersingular += d,
                Fiber::Good { .. } => c.ordinary += d,
            }
        }
        c
    }

    /// `t -> pi(k,t)''`: rational parameters with good fiber of trace `t` over F_{p^k}.
    pub fn doubleprime(&self) -> Result<BTreeMap<i64, u64>> {
        let mut out = BTreeMap::new();
        for pt in &self.points {
            if let Some(t) = self.level_trace(pt)? {
                *out.entry(t).or_insert(0) += pt.degree() as u64;
            }
        }
        Ok(out)
    }

    /// `t -> pi(k,t)'`: good closed points of degree exactly `k` with trace `t`.
    pub fn prime(&self) -> BTreeMap<i64, u64> {
        let mut out = BTreeMap::new();
        for pt in &self.points {
            if let (Fiber::Good { t }, true) = (pt.fiber, pt.degree() == self.k) {
                *out.entry(t).or_insert(0) += 1;
            }
        }
        out
    }
}

/// Parameters of F_{p^k} sorted by fiber type.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct FiberClasses {
    pub ordinary: Vec<FieldElement>,
    pub supersingular: Vec<FieldElement>,
    pub bad: Vec<FieldElement>,
}

pub fn classify_fibers(fam: &Family, k: u32) -> Result<FiberClasses> {
    let scan = LevelScan::run(fam, k, false)?;
    let p = fam.p as i64;
    let mut out = FiberClasses::default();
    for pt in scan.points() {
        let bucket = match pt.fiber {
            Fiber::Bad => &mut out.bad,
            Fiber::Good { t } if t % p == 0 => &mut out.supersingular,
            Fiber::Good { .. } => &mut out.ordinary,
        };
        bucket.extend_from_slice(&pt.members);
    }
    out.ordinary.sort();
    out.supersingular.sort();
    out.bad.sort();
    Ok(out)
}

pub fn pi_k_t_doubleprime(fam: &Family, k: u32, t: i64) -> Result<u64> {
    let scan = LevelScan::run(fam, k, false)?;
    Ok(scan.doubleprime()?.get(&t).copied().unwrap_or(0))
}

/// Also checks that conjugate parameters have equal traces.
pub fn pi_k_t_prime(fam: &Family, k: u32, t: i64) -> Result<u64> {
    let scan = LevelScan::run(fam, k, true)?;
    Ok(scan.prime().get(&t).copied().unwrap_or(0))
}

/// `t -> pi(k,t)''` by counting every fiber directly over F_{p^k}.
pub fn direct_trace_spectrum(fam: &Family, k: u32) -> Result<BTreeMap<i64, u64>> {
    let field = scan_field(fam.p, k)?;
    let traces: Vec<Option<i64>> = field
        .elements()
        .collect::<Vec<_>>()
        .into_par_iter()
        .map(|l| residue_trace(&field, fam, l, k))
        .collect();
    let mut out = BTreeMap::new();
    for t in traces.into_iter().flatten() {
        *out.entry(t).or_insert(0) += 1;
    }
    Ok(out)
}

/// An angle in [0, pi]; the nine multiples of pi/12 with `2 cos` a signed square root of
/// an integer are kept symbolically.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Angle {
    radians: f64,
    exact: Option<ExactCos>,
}

/// `2 cos(theta) = sign * sqrt(m)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
struct ExactCos {
    token: &'static str,
    sign: i8,
    m: u8,
}

const EXACT_ANGLES: [(f64, ExactCos); 9] = [
    (
        0.0,
        ExactCos {
            token: "0",
            sign: 1,
            m: 4,
        },
    ),
    (
        PI / 6.0,
        ExactCos {
            token: "pi/6",
            sign: 1,
            m: 3,
        },
    ),
    (
        PI / 4.0,
        ExactCos {
            token: "pi/4",
            sign: 1,
            m: 2,
        },
    ),
    (
        PI / 3.0,
        ExactCos {
            token: "pi/3",
            sign: 1,
            m: 1,
        },
    ),
    (
        PI / 2.0,
        ExactCos {
            token: "pi/2",
            sign: 0,
            m: 0,
        },
    ),
    (
        2.0 * PI / 3.0,
        ExactCos {
            token: "2pi/3",
            sign: -1,
            m: 1,
        },
    ),
    (
        3.0 * PI / 4.0,
        ExactCos {
            token: "3pi/4",
            sign: -1,
            m: 2,
        },
    ),
    (
        5.0 * PI / 6.0,
        ExactCos {
            token: "5pi/6",
            sign: -1,
            m: 3,
        },
    ),
    (
        PI,
        ExactCos {
            token: "pi",
            sign: -1,
            m: 4,
        },
    ),
];

const SNAP_TOLERANCE: f64 = 1e-12;
const GUARD_BAND: f64 = 1e-9;

impl Angle {
    pub const ZERO: Angle = Angle {
        radians: 0.0,
        exact: Some(EXACT_ANGLES[0].1),
    };
    pub const HALF_PI: Angle = Angle {
        radians: PI / 2.0,
        exact: Some(EXACT_ANGLES[4].1),
    };
    pub const PI: Angle = Angle {
        radians: PI,
        exact: Some(EXACT_ANGLES[8].1),
    };

    /// Radians in [0, pi]; values within 1e-12 of a symbolic angle snap to it.
    pub fn from_radians(x: f64) -> Result<Angle> {
        if !x.is_finite() || !(-SNAP_TOLERANCE..=PI + SNAP_TOLERANCE).contains(&x) {
            return Err(Error::InvalidAngle(format!("{x} is outside [0, pi]")));
        }
        for &(r, exact) in &EXACT_ANGLES {
            if (x - r).abs() <= SNAP_TOLERANCE {
                return Ok(Angle {
                    radians: r,
                    exact: Some(exact),
                });
            }
        }
        Ok(Angle {
            radians: x,
            exact: None,
        })
    }

    /// Accepts the tokens `0, pi/6, pi/4, pi/3, pi/2, 2pi/3, 3pi/4, 5pi/6, pi` or radians.
    pub fn parse(s: &str) -> Result<Angle> {
        let s = s.trim();
        if let Some(&(radians, exact)) = EXACT_ANGLES.iter().find(|(_, e)| e.token == s) {
            return Ok(Angle {
                radians,
                exact: Some(exact),
            });
        }
        let x: f64 = s
            .parse()
            .map_err(|_| Error::InvalidAngle(format!("cannot parse '{s}'")))?;
        Angle::from_radians(x)
    }

    pub fn radians(&self) -> f64 {
        self.radians
    }

    pub fn is_exact(&self) -> bool {
        self.exact.is_some()
    }

    /// `t <= 2 sqrt(q) cos(self)`.
    pub fn trace_at_most(&self, t: i64, q: u64) -> bool {
        match self.exact {
            Some(e) => surd_at_least(t, e.sign, e.m, q),
            None => {
                let b = self.bound(q);
                (t as f64) <= b + GUARD_BAND * b.abs().max(1.0)
            }
        }
    }

    /// `t >= 2 sqrt(q) cos(self)`.
    pub fn trace_at_least(&self, t: i64, q: u64) -> bool {
        match self.exact {
            Some(e) => surd_at_least(-t, -e.sign, e.m, q),
            None => {
                let b = self.bound(q);
                (t as f64) >= b - GUARD_BAND * b.abs().max(1.0)
            }
        }
    }

    fn bound(&self, q: u64) -> f64 {
        2.0 * (q as f64).sqrt() * self.radians.cos()
    }
}

/// `t <= sign * sqrt(m q)`, in integers.
fn surd_at_least(t: i64, sign: i8, m: u8, q: u64) -> bool {
    let t2 = (t as i128) * (t as i128);
    let mq = m as i128 * q as i128;
    if sign >= 0 {
        t <= 0 || t2 <= mq
    } else {
        t <= 0 && t2 >= mq
    }
}

impl fmt::Display for Angle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.exact {
            Some(e) => write!(f, "{}", e.token),
            None => write!(f, "{}", self.radians),
        }
    }
}

/// `alpha <= theta <= beta` for a trace over a field of `q` elements.
pub fn angle_contains(alpha: Angle, beta: Angle, t: i64, q: u64) -> bool {
    beta.trace_at_least(t, q) && alpha.trace_at_most(t, q)
}

/// An empirical count with the bound it must respect.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BoundCheck {
    pub count: u64,
    pub bound: u64,
}

impl BoundCheck {
    pub fn holds(&self) -> bool {
        self.count <= self.bound
    }
}

/// One row of the pointwise bound table over F_{p^k}.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PointwiseBound {
    pub k: u32,
    pub t: i64,
    pub check: BoundCheck,
}

#[derive(Clone, Debug)]
pub struct LevelSummary {
    pub k: u32,
    pub counts: FiberCounts,
    pub doubleprime: BTreeMap<i64, u64>,
    pub prime: BTreeMap<i64, u64>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct HistogramBin {
    pub lo: f64,
    pub hi: f64,
    pub count: u64,
    pub frequency: f64,
    pub density: f64,
    pub reference_mass: f64,
    pub reference_density: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Histogram {
    pub total: u64,
    pub bins: Vec<HistogramBin>,
}

/// Mass of the density `(2/pi) sin^2` on `[0, theta]`.
fn satotate_cdf(theta: f64) -> f64 {
    (theta - (2.0 * theta).sin() / 2.0) / PI
}

/// Everything a scan up to degree `b` determines.
#[derive(Clone, Debug)]
pub struct ScanReport {
    pub family: Family,
    pub b: u32,
    pub j_degree: u64,
    pub j_separable_degree: u64,
    pub levels: Vec<LevelSummary>,
}

impl ScanReport {
    pub fn run(fam: &Family, b: u32) -> Result<ScanReport> {
        if b == 0 {
            return Err(Error::InvalidArgument("B must be at least 1".into()));
        }
        let (j_degree, j_separable_degree) = j_map_degree(fam);
        let levels = (1..=b)
            .map(|k| {
                let scan = LevelScan::run(fam, k, false)?;
                Ok(LevelSummary {
                    k,
                    counts: scan.counts(),
                    doubleprime: scan.doubleprime()?,
                    prime: scan.prime(),
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(ScanReport {
            family: fam.clone(),
            b,
            j_degree,
            j_separable_degree,
            levels,
        })
    }

    pub fn p(&self) -> u64 {
        self.family.p
    }

    fn q(&self, k: u32) -> u64 {
        self.p().pow(k)
    }

    pub fn level(&self, k: u32) -> Option<&LevelSummary> {
        self.levels.get((k as usize).checked_sub(1)?)
    }

    /// N(t) over F_{p^k}, zero outside the Hasse interval.
    fn n_k(&self, k: u32, t: i64) -> Result<u64> {
        Ok(schoof_n(t, self.p(), 1, k)?.value)
    }

    /// `pi(k,t)'' <= deg(j) N(t)` for every `k <= B` and every `t` in the Hasse interval.
    pub fn pointwise_bounds(&self) -> Result<Vec<PointwiseBound>> {
        let mut rows = Vec::new();
        for lv in &self.levels {
            let h = hasse_bound(self.q(lv.k));
            for t in -h..=h {
                rows.push(PointwiseBound {
                    k: lv.k,
                    t,
                    check: BoundCheck {
                        count: lv.doubleprime.get(&t).copied().unwrap_or(0),
                        bound: self.j_degree * self.n_k(lv.k, t)?,
                    },
                });
            }
        }
        Ok(rows)
    }

    /// `pi(B,t)` with the bound `deg(j) * sum_{k <= B, t^2 <= 4 p^k} N_k(t)`.
    pub fn pi_b_t(&self, t: i64) -> Result<BoundCheck> {
        let mut count = 0;
        let mut sum = 0;
        for lv in &self.levels {
            count += lv.prime.get(&t).copied().unwrap_or(0);
            if (t as i128) * (t as i128) <= 4 * self.q(lv.k) as i128 {
                sum += self.n_k(lv.k, t)?;
            }
        }
        Ok(BoundCheck {
            count,
            bound: self.j_degree * sum,
        })
    }

    /// Every trace with some possible fiber up to degree `B`.
    pub fn trace_range(&self) -> std::ops::RangeInclusive<i64> {
        let h = hasse_bound(self.q(self.b));
        -h..=h
    }

    /// Closed points of degree at most `B` with angle in `[alpha, beta]`, and the bound
    /// `deg(j) * sum_k sum_t N_k(t)` over traces of angle in `[alpha, beta]`.
    pub fn pi_b_angle(&self, alpha: Angle, beta: Angle) -> Result<BoundCheck> {
        if alpha.radians() > beta.radians() {
            return Err(Error::InvalidAngle(format!(
                "interval start {alpha} exceeds end {beta}"
            )));
        }
        let mut count = 0;
        let mut sum = 0;
        for lv in &self.levels {
            let q = self.q(lv.k);
            for (&t, &c) in &lv.prime {
                if angle_contains(alpha, beta, t, q) {
                    count += c;
                }
            }
            let h = hasse_bound(q);
            for t in -h..=h {
                if angle_contains(alpha, beta, t, q) {
                    sum += self.n_k(lv.k, t)?;
                }
            }
        }
        Ok(BoundCheck {
            count,
            bound: self.j_degree * sum,
        })
    }

    /// Angle histogram of the good closed points of degree at most `B`.
    pub fn histogram(&self, nbins: usize) -> Result<Histogram> {
        if nbins == 0 {
            return Err(Error::InvalidArgument(
                "histogram needs at least one bin".into(),
            ));
        }
        let mut counts = vec![0u64; nbins];
        for lv in &self.levels {
            let q = self.q(lv.k);
            for (&t, &c) in &lv.prime {
                counts[angle_bin(t, q, nbins)] += c;
            }
        }
        let total: u64 = counts.iter().sum();
        let width = PI / nbins as f64;
        let bins = counts
            .into_iter()
            .enumerate()
            .map(|(i, count)| {
                let lo = PI * i as f64 / nbins as f64;
                let hi = if i + 1 == nbins {
                    PI
                } else {
                    PI * (i + 1) as f64 / nbins as f64
                };
                let frequency = if total == 0 {
                    0.0
                } else {
                    count as f64 / total as f64
                };
                let reference_mass = satotate_cdf(hi) - satotate_cdf(lo);
                HistogramBin {
                    lo,
                    hi,
                    count,
                    frequency,
                    density: frequency / width,
                    reference_mass,
                    reference_density: reference_mass / width,
                }
            })
            .collect();
        Ok(Histogram { total, bins })
    }
}

/// Bin `i` covers `[i pi/n, (i+1) pi/n)`, the last bin also contains `pi`.
fn angle_bin(t: i64, q: u64, nbins: usize) -> usize {
    let theta = crate::ellcurve::frobenius_angle(t, q);
    ((theta / PI * nbins as f64).floor() as usize).min(nbins - 1)
}

pub fn pi_b_t(fam: &Family, b: u32, t: i64) -> Result<BoundCheck> {
    ScanReport::run(fam, b)?.pi_b_t(t)
}

pub fn pi_b_angle(fam: &Family, b: u32, alpha: Angle, beta: Angle) -> Result<BoundCheck> {
    ScanReport::run(fam, b)?.pi_b_angle(alpha, beta)
}

pub fn satotate_histogram(fam: &Family, b: u32, nbins: usize) -> Result<Histogram> {
    ScanReport::run(fam, b)?.histogram(nbins)
}
