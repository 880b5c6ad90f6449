//! Short Weierstrass curves `y^2 = x^3 + a4 x + a6` over F_{p^k}.
//!
//! Point counts come from the quadratic character sum
//! `#E = 1 + sum_x (1 + chi(x^3 + a4 x + a6))`, evaluated in the log domain with
//! Zech logarithms when the field has lookup tables.

use crate::arith::{divisors, factorize, isqrt};
use crate::error::{Error, Result};
use crate::gf::{FieldDescriptor, FieldElement};
use std::collections::BTreeMap;
use std::f64::consts::PI;
use std::sync::Arc;

/// Largest field for exhaustive point counting.
pub const COUNT_LIMIT: u64 = 1 << 24;
/// Largest field for full point enumeration.
pub const ENUM_LIMIT: u64 = 1 << 20;

#[derive(Clone, Debug)]
pub struct WeierstrassCurve {
    field: Arc<FieldDescriptor>,
    a4: FieldElement,
    a6: FieldElement,
}

impl PartialEq for WeierstrassCurve {
    fn eq(&self, other: &Self) -> bool {
        self.a4 == other.a4 && self.a6 == other.a6 && *self.field == *other.field
    }
}

impl Eq for WeierstrassCurve {}

/// Trace of Frobenius over a field of `q_point` elements and its angle.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TraceRecord {
    pub q_point: u64,
    pub t: i64,
    pub theta: f64,
}

impl TraceRecord {
    pub fn new(q_point: u64, t: i64) -> Result<Self> {
        check_hasse(t, q_point)?;
        Ok(TraceRecord {
            q_point,
            t,
            theta: frobenius_angle(t, q_point),
        })
    }
}

/// Angle `theta` in [0, pi] with `t = 2 sqrt(q) cos(theta)`.
pub fn frobenius_angle(t: i64, q: u64) -> f64 {
    let c = t as f64 / (2.0 * (q as f64).sqrt());
    c.clamp(-1.0, 1.0).acos()
}

/// Checks `t^2 <= 4q`.
pub fn check_hasse(t: i64, q: u64) -> Result<()> {
    if (t as i128) * (t as i128) <= 4 * q as i128 {
        Ok(())
    } else {
        Err(Error::HasseViolation { t, q })
    }
}

/// Largest `|t|` allowed by the Hasse bound over a field of `q` elements.
pub fn hasse_bound(q: u64) -> i64 {
    isqrt(4 * q as u128) as i64
}

/// Trace over F_{q^m} from the trace over F_q, via `t_{j+1} = t_1 t_j - q t_{j-1}`.
pub fn trace_extend(t1: i64, q: u64, m: u32) -> Result<i64> {
    check_hasse(t1, q)?;
    if m == 0 {
        return Ok(2);
    }
    let (t1w, qw) = (t1 as i128, q as i128);
    let (mut prev, mut cur) = (2i128, t1w);
    for _ in 1..m {
        let next = t1w
            .checked_mul(cur)
            .and_then(|a| qw.checked_mul(prev).and_then(|b| a.checked_sub(b)))
            .ok_or(Error::Overflow("trace recurrence"))?;
        prev = cur;
        cur = next;
    }
    i64::try_from(cur).map_err(|_| Error::Overflow("trace recurrence"))
}

/// An affine point or the point at infinity.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Point {
    Infinity,
    Affine(FieldElement, FieldElement),
}

/// Coefficient pairs F-isomorphic to a curve, with the lexicographically least one.
#[derive(Clone, Debug)]
pub struct TwistOrbit {
    pub members: Vec<WeierstrassCurve>,
    pub canonical: WeierstrassCurve,
}

impl WeierstrassCurve {
    pub fn new(field: Arc<FieldDescriptor>, a4: FieldElement, a6: FieldElement) -> Result<Self> {
        if is_singular(&field, a4, a6) {
            return Err(Error::SingularCurve);
        }
        Ok(WeierstrassCurve { field, a4, a6 })
    }

    /// Convenience constructor from prime-subfield integers.
    pub fn from_ints(field: Arc<FieldDescriptor>, a4: i64, a6: i64) -> Result<Self> {
        let (a4, a6) = (field.from_int(a4), field.from_int(a6));
        Self::new(field, a4, a6)
    }

    pub fn field(&self) -> &Arc<FieldDescriptor> {
        &self.field
    }

    pub fn a4(&self) -> FieldElement {
        self.a4
    }

    pub fn a6(&self) -> FieldElement {
        self.a6
    }

    pub fn j_invariant(&self) -> FieldElement {
        let f = &*self.field;
        let four_a4_cubed = f.mul(f.from_int(4), f.pow(self.a4, 3));
        let denom = f.add(four_a4_cubed, f.mul(f.from_int(27), f.square(self.a6)));
        let num = f.mul(f.from_int(1728), four_a4_cubed);
        f.div(num, denom)
            .expect("nonsingular curve has nonzero discriminant")
    }

    /// Right-hand side `x^3 + a4 x + a6`.
    pub fn rhs(&self, x: FieldElement) -> FieldElement {
        let f = &*self.field;
        f.add(f.mul(f.add(f.square(x), self.a4), x), self.a6)
    }

    pub fn count_points(&self) -> Result<u64> {
        let q = self.field.cardinality();
        if q > COUNT_LIMIT {
            return Err(Error::FieldTooLarge {
                q,
                limit: COUNT_LIMIT,
                what: "exhaustive point counting",
            });
        }
        let d = self.field.degree();
        Ok((q as i64 + 1 + character_sum(&self.field, self.a4, self.a6, d)) as u64)
    }

    pub fn trace(&self) -> Result<TraceRecord> {
        let q = self.field.cardinality();
        let n = self.count_points()?;
        let t = q as i64 + 1 - n as i64;
        // A violation here means the counting kernel is broken.
        check_hasse(t, q).expect("Hasse bound must hold for every counted curve");
        TraceRecord::new(q, t)
    }

    pub fn is_supersingular(&self) -> Result<bool> {
        let t = self.trace()?.t;
        Ok(t.rem_euclid(self.field.characteristic() as i64) == 0)
    }

    /// Order of the geometric automorphism group (characteristic > 3).
    pub fn aut_order(&self) -> u32 {
        if self.a4.is_zero() {
            6
        } else if self.a6.is_zero() {
            4
        } else {
            2
        }
    }

    /// Order of `Aut_F(E)`, i.e. the stabilizer `{u : u^4 a4 = a4, u^6 a6 = a6}` in F*.
    pub fn rational_aut_order(&self) -> u32 {
        let n = self.field.cardinality() - 1;
        let g = |m: u64| crate::arith::gcd(m, n) as u32;
        if self.a4.is_zero() {
            g(6)
        } else if self.a6.is_zero() {
            g(4)
        } else {
            2
        }
    }

    /// The orbit `{(u^4 a4, u^6 a6) : u in F*}` and its least member.
    pub fn twist_orbit(&self) -> TwistOrbit {
        let f = &*self.field;
        let mut pairs: Vec<(FieldElement, FieldElement)> = f
            .elements()
            .skip(1)
            .map(|u| (f.mul(f.pow(u, 4), self.a4), f.mul(f.pow(u, 6), self.a6)))
            .collect();
        pairs.sort_unstable();
        pairs.dedup();
        let members: Vec<WeierstrassCurve> = pairs
            .into_iter()
            .map(|(a4, a6)| WeierstrassCurve {
                field: self.field.clone(),
                a4,
                a6,
            })
            .collect();
        let canonical = members[0].clone();
        TwistOrbit { members, canonical }
    }

    /// Curve with coefficients raised to the `p^n`-th power.
    pub fn frobenius_twist(&self, n: u32) -> WeierstrassCurve {
        let f = &*self.field;
        WeierstrassCurve {
            field: self.field.clone(),
            a4: f.frobenius(self.a4, n),
            a6: f.frobenius(self.a6, n),
        }
    }

    /// Same coefficients over an extension field containing this one as prime field.
    pub fn base_change(&self, field: Arc<FieldDescriptor>) -> Result<WeierstrassCurve> {
        let f = &*self.field;
        if f.degree() != 1 || field.characteristic() != f.characteristic() {
            return Err(Error::InvalidArgument(
                "base change is implemented from the prime field only".into(),
            ));
        }
        let (a4, a6) = (
            field.from_int(self.a4.index() as i64),
            field.from_int(self.a6.index() as i64),
        );
        WeierstrassCurve::new(field, a4, a6)
    }

    pub fn is_on_curve(&self, p: Point) -> bool {
        match p {
            Point::Infinity => true,
            Point::Affine(x, y) => self.field.square(y) == self.rhs(x),
        }
    }

    pub fn neg(&self, p: Point) -> Point {
        match p {
            Point::Infinity => p,
            Point::Affine(x, y) => Point::Affine(x, self.field.neg(y)),
        }
    }

    pub fn add(&self, a: Point, b: Point) -> Point {
        let f = &*self.field;
        match (a, b) {
            (Point::Infinity, _) => b,
            (_, Point::Infinity) => a,
            (Point::Affine(x1, y1), Point::Affine(x2, y2)) => {
                let slope = if x1 == x2 {
                    if f.add(y1, y2).is_zero() {
                        return Point::Infinity;
                    }
                    let num = f.add(f.mul(f.from_int(3), f.square(x1)), self.a4);
                    f.div(num, f.add(y1, y1)).expect("y != 0")
                } else {
                    f.div(f.sub(y2, y1), f.sub(x2, x1)).expect("x1 != x2")
                };
                let x3 = f.sub(f.sub(f.square(slope), x1), x2);
                let y3 = f.sub(f.mul(slope, f.sub(x1, x3)), y1);
                Point::Affine(x3, y3)
            }
        }
    }

    pub fn mul(&self, p: Point, mut n: u64) -> Point {
        let mut acc = Point::Infinity;
        let mut base = p;
        while n > 0 {
            if n & 1 == 1 {
                acc = self.add(acc, base);
            }
            base = self.add(base, base);
            n >>= 1;
        }
        acc
    }

    /// All rational points, infinity first, then by x and y index.
    pub fn points(&self) -> Result<Vec<Point>> {
        let q = self.field.cardinality();
        if q > ENUM_LIMIT {
            return Err(Error::FieldTooLarge {
                q,
                limit: ENUM_LIMIT,
                what: "point enumeration",
            });
        }
        let f = &*self.field;
        let mut pts = vec![Point::Infinity];
        for x in f.elements() {
            let r = self.rhs(x);
            if let Some(y) = f.sqrt(r) {
                if y.is_zero() {
                    pts.push(Point::Affine(x, y));
                } else {
                    let (y0, y1) = (y.min(f.neg(y)), y.max(f.neg(y)));
                    pts.push(Point::Affine(x, y0));
                    pts.push(Point::Affine(x, y1));
                }
            }
        }
        Ok(pts)
    }

    /// Order of `p` in a group of the given (factored) order.
    pub fn point_order(&self, p: Point, group_order: u64, factors: &[(u64, u32)]) -> u64 {
        let mut order = group_order;
        for &(prime, exp) in factors {
            for _ in 0..exp {
                if self.mul(p, order / prime) == Point::Infinity {
                    order /= prime;
                } else {
                    break;
                }
            }
        }
        order
    }

    /// Number of rational points of each exact order `d | m`.
    pub fn point_order_census(&self, m: u64) -> Result<BTreeMap<u64, u64>> {
        let mut census: BTreeMap<u64, u64> = divisors(m).into_iter().map(|d| (d, 0)).collect();
        let points = self.points()?;
        let n = points.len() as u64;
        let factors = factorize(n);
        for p in points {
            let order = self.point_order(p, n, &factors);
            if let Some(c) = census.get_mut(&order) {
                *c += 1;
            }
        }
        Ok(census)
    }

    /// Number of rational points killed by `m`.
    pub fn torsion_count(&self, m: u64) -> Result<u64> {
        Ok(self.point_order_census(m)?.values().sum())
    }
}

pub fn is_singular(f: &FieldDescriptor, a4: FieldElement, a6: FieldElement) -> bool {
    let d = f.add(
        f.mul(f.from_int(4), f.pow(a4, 3)),
        f.mul(f.from_int(27), f.square(a6)),
    );
    d.is_zero()
}

/// `sum_x chi_d(x^3 + a4 x + a6)` over the subfield F_{p^d} of `field`, where
/// `chi_d` is the quadratic character of that subfield. `a4`, `a6` must lie in it.
pub fn character_sum(field: &FieldDescriptor, a4: FieldElement, a6: FieldElement, d: u32) -> i64 {
    let k = field.degree();
    debug_assert!(k % d == 0);
    debug_assert!(field.frobenius(a4, d) == a4 && field.frobenius(a6, d) == a6);
    if !field.has_tables() {
        assert_eq!(d, k, "subfield sums need lookup tables");
        return field
            .elements()
            .map(|x| {
                let r = field.add(field.mul(field.add(field.square(x), a4), x), a6);
                field.chi(r)
            })
            .sum();
    }
    let n = field.cardinality() - 1;
    let sub = field.characteristic().pow(d) - 1;
    let step = n / sub;
    let none = FieldDescriptor::no_log();
    let la4 = field.log_or_none(a4);
    let la6 = field.log_or_none(a6);
    let chi = |l: u32| -> i64 {
        if l == none {
            0
        } else if (l as u64 / step) % 2 == 0 {
            1
        } else {
            -1
        }
    };
    // x = 0 contributes chi(a6).
    let mut sum = chi(la6);
    for j in 0..sub {
        let lx = j * step;
        let cube = ((3 * lx) % n) as u32;
        let linear = if la4 == none {
            none
        } else {
            ((la4 as u64 + lx) % n) as u32
        };
        let l = field.log_add(field.log_add(cube, linear), la6);
        sum += chi(l);
    }
    sum
}

/// Point count over the subfield F_{p^d}.
pub fn subfield_point_count(
    field: &FieldDescriptor,
    a4: FieldElement,
    a6: FieldElement,
    d: u32,
) -> u64 {
    let qd = field.characteristic().pow(d) as i64;
    (qd + 1 + character_sum(field, a4, a6, d)) as u64
}

/// Frobenius angle of a trace, as a [`TraceRecord`] with `theta` in [0, pi].
pub fn trace_record(t: i64, q: u64) -> Result<TraceRecord> {
    TraceRecord::new(q, t)
}

pub const HALF_PI: f64 = PI / 2.0;

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::make_field;

    fn field(p: u64, k: u32) -> Arc<FieldDescriptor> {
        Arc::new(make_field(p, k).unwrap())
    }

    /// For each x, count y with y^2 = rhs by scanning all y.
    fn naive_count(e: &WeierstrassCurve) -> u64 {
        let f = e.field();
        let mut by_square = std::collections::HashMap::new();
        for y in f.elements() {
            *by_square.entry(f.square(y)).or_insert(0u64) += 1;
        }
        1 + f
            .elements()
            .map(|x| by_square.get(&e.rhs(x)).copied().unwrap_or(0))
            .sum::<u64>()
    }

    #[test]
    fn j_invariant_special_values() {
        let f7 = field(7, 1);
        let e = WeierstrassCurve::from_ints(f7.clone(), 1, 0).unwrap();
        assert_eq!(e.j_invariant(), f7.from_int(1728));
        let e = WeierstrassCurve::from_ints(f7.clone(), 0, 1).unwrap();
        assert_eq!(e.j_invariant(), f7.zero());
        // Over F_5: 1728 * 4 / 31 = 3 * 4 / 1 = 2.
        let f5 = field(5, 1);
        let e = WeierstrassCurve::from_ints(f5.clone(), 1, 1).unwrap();
        assert_eq!(e.j_invariant(), f5.from_int(2));
        for member in e.twist_orbit().members {
            assert_eq!(member.j_invariant(), f5.from_int(2));
        }
    }

    #[test]
    fn singular_curves_rejected() {
        let f5 = field(5, 1);
        assert_eq!(
            WeierstrassCurve::from_ints(f5.clone(), 0, 0),
            Err(Error::SingularCurve)
        );
        // 4 * (-3)^3 + 27 * 2^2 = 0.
        assert!(WeierstrassCurve::from_ints(field(7, 1), -3, 2).is_err());
    }

    #[test]
    fn count_x3_plus_x_over_f5() {
        let e = WeierstrassCurve::from_ints(field(5, 1), 1, 0).unwrap();
        assert_eq!(e.count_points().unwrap(), 4);
        let tr = e.trace().unwrap();
        assert_eq!(tr.t, 2);
        assert!((tr.theta - (1.0 / 5f64.sqrt()).acos()).abs() < 1e-12);
        assert!(!e.is_supersingular().unwrap());
    }

    #[test]
    fn count_x3_plus_1() {
        let e = WeierstrassCurve::from_ints(field(5, 1), 0, 1).unwrap();
        assert_eq!(e.count_points().unwrap(), 6);
        assert!(e.is_supersingular().unwrap());
        let e7 = WeierstrassCurve::from_ints(field(7, 1), 0, 1).unwrap();
        assert_eq!(e7.count_points().unwrap(), naive_count(&e7));
        let chi: i64 = (0..7)
            .map(|x| e7.field().chi(e7.rhs(e7.field().from_int(x))))
            .sum();
        assert_eq!(e7.count_points().unwrap() as i64, 8 + chi);
    }

    #[test]
    fn angle_at_zero_trace() {
        let tr = TraceRecord::new(7, 0).unwrap();
        assert!((tr.theta - HALF_PI).abs() < 1e-15);
        assert!(TraceRecord::new(5, 5).is_err());
    }

    #[test]
    fn chi_sum_matches_naive_count() {
        for (p, k) in [(5u64, 1u32), (7, 1), (11, 1), (5, 2), (7, 2), (11, 2)] {
            let f = field(p, k);
            for a4 in f.elements() {
                for a6 in f.elements().step_by(if k == 1 { 1 } else { 3 }) {
                    let Ok(e) = WeierstrassCurve::new(f.clone(), a4, a6) else {
                        continue;
                    };
                    let n = e.count_points().unwrap();
                    assert_eq!(n, naive_count(&e));
                    let t = f.cardinality() as i64 + 1 - n as i64;
                    check_hasse(t, f.cardinality()).unwrap();
                }
            }
        }
    }

    #[test]
    fn trace_extend_values() {
        assert_eq!(trace_extend(2, 5, 2).unwrap(), -6);
        assert_eq!(trace_extend(3, 7, 1).unwrap(), 3);
        assert!(trace_extend(5, 5, 2).is_err());
        let e = WeierstrassCurve::from_ints(field(5, 1), 1, 0).unwrap();
        let e25 = e.base_change(field(5, 2)).unwrap();
        assert_eq!(e25.count_points().unwrap(), 32);
    }

    #[test]
    fn trace_extend_matches_base_change() {
        for p in [5u64, 7] {
            let f = field(p, 1);
            let ext: Vec<_> = (1..=3).map(|m| field(p, m)).collect();
            for a4 in 0..p as i64 {
                for a6 in 0..p as i64 {
                    let Ok(e) = WeierstrassCurve::from_ints(f.clone(), a4, a6) else {
                        continue;
                    };
                    let t1 = e.trace().unwrap().t;
                    for (m, fm) in ext.iter().enumerate() {
                        let em = e.base_change(fm.clone()).unwrap();
                        let direct = em.trace().unwrap().t;
                        assert_eq!(trace_extend(t1, p, m as u32 + 1).unwrap(), direct);
                    }
                }
            }
        }
    }

    #[test]
    fn subfield_sum_matches_small_field() {
        let f5 = field(5, 1);
        let f125 = field(5, 3);
        for a4 in 0..5 {
            for a6 in 0..5 {
                let Ok(e) = WeierstrassCurve::from_ints(f5.clone(), a4, a6) else {
                    continue;
                };
                let n = subfield_point_count(&f125, f125.from_int(a4), f125.from_int(a6), 1);
                assert_eq!(n, e.count_points().unwrap());
            }
        }
    }

    #[test]
    fn supersingular_j_over_f25() {
        // Scan every j over F_25 with one curve per j; only j = 0 is supersingular at p = 5.
        let f = field(5, 2);
        let mut ss = Vec::new();
        for j in f.elements() {
            let e = curve_with_j(&f, j);
            if e.is_supersingular().unwrap() {
                ss.push(j);
            }
        }
        assert_eq!(ss, vec![f.zero()]);
    }

    fn curve_with_j(f: &Arc<FieldDescriptor>, j: FieldElement) -> WeierstrassCurve {
        if j.is_zero() {
            return WeierstrassCurve::new(f.clone(), f.zero(), f.one()).unwrap();
        }
        if j == f.from_int(1728) {
            return WeierstrassCurve::new(f.clone(), f.one(), f.zero()).unwrap();
        }
        // y^2 = x^3 + 3c x + 2c with c = j / (1728 - j).
        let c = f.div(j, f.sub(f.from_int(1728), j)).unwrap();
        let e = WeierstrassCurve::new(f.clone(), f.mul(f.from_int(3), c), f.mul(f.from_int(2), c))
            .unwrap();
        assert_eq!(e.j_invariant(), j);
        e
    }

    #[test]
    fn twist_orbits_and_automorphisms() {
        let f5 = field(5, 1);
        let e = WeierstrassCurve::from_ints(f5.clone(), 1, 1).unwrap();
        let orbit = e.twist_orbit();
        assert_eq!(orbit.members.len(), 2);
        assert_eq!(e.aut_order(), 2);
        assert_eq!(orbit.members.len() as u32 * e.rational_aut_order(), 4);

        assert_eq!(
            WeierstrassCurve::from_ints(f5.clone(), 0, 1)
                .unwrap()
                .aut_order(),
            6
        );
        assert_eq!(
            WeierstrassCurve::from_ints(f5.clone(), 1, 0)
                .unwrap()
                .aut_order(),
            4
        );

        for (p, k) in [(5u64, 1u32), (7, 1), (13, 1), (5, 2)] {
            let f = field(p, k);
            let q = f.cardinality();
            let mut total = 0u64;
            for a4 in f.elements() {
                for a6 in f.elements() {
                    let Ok(e) = WeierstrassCurve::new(f.clone(), a4, a6) else {
                        continue;
                    };
                    let orbit = e.twist_orbit();
                    assert_eq!(
                        orbit.members.len() as u64 * e.rational_aut_order() as u64,
                        q - 1
                    );
                    if orbit.canonical.a4() == a4 && orbit.canonical.a6() == a6 {
                        total += orbit.members.len() as u64;
                    }
                }
            }
            assert_eq!(total, q * q - q);
        }
    }

    #[test]
    fn point_orders() {
        let e = WeierstrassCurve::from_ints(field(5, 1), 1, 0).unwrap();
        assert_eq!(e.point_order_census(1).unwrap(), BTreeMap::from([(1, 1)]));
        let pts = e.points().unwrap();
        assert_eq!(pts.len(), 4);
        assert!(pts.iter().all(|&p| e.is_on_curve(p)));
        // y^2 = x^3 + x over F_5 has group (Z/2)^2.
        let c = e.point_order_census(4).unwrap();
        assert_eq!(c, BTreeMap::from([(1, 1), (2, 3), (4, 0)]));
        assert_eq!(e.torsion_count(2).unwrap(), 4);
    }

    #[test]
    fn point_census_sums_to_group_order() {
        let f = field(11, 1);
        for a4 in 0..11 {
            for a6 in 0..11 {
                let Ok(e) = WeierstrassCurve::from_ints(f.clone(), a4, a6) else {
                    continue;
                };
                let n = e.count_points().unwrap();
                let c = e.point_order_census(n).unwrap();
                assert_eq!(c.values().sum::<u64>(), n);
                for (d, cnt) in &c {
                    assert!(*cnt == 0 || n % d == 0);
                }
            }
        }
    }

    #[test]
    fn group_law_is_associative_on_sample() {
        let f = field(7, 2);
        let e =
            WeierstrassCurve::new(f.clone(), f.from_int(3), f.element(&[1, 2]).unwrap()).unwrap();
        let pts = e.points().unwrap();
        let n = pts.len() as u64;
        for a in pts.iter().step_by(7) {
            assert_eq!(e.mul(*a, n), Point::Infinity);
            for b in pts.iter().step_by(11) {
                for c in pts.iter().step_by(13) {
                    let lhs = e.add(e.add(*a, *b), *c);
                    let rhs = e.add(*a, e.add(*b, *c));
                    assert_eq!(lhs, rhs);
                    assert!(e.is_on_curve(lhs));
                }
            }
        }
    }
}
