//! Exact arithmetic in F_p and F_{p^k} for p > 3.
//!
//! Elements are stored as their index `c_0 + c_1 p + ... + c_{k-1} p^{k-1}` in the
//! polynomial basis `F_p[x]/(m(x))`. Integer order on indices is the lexicographic
//! order on coefficient vectors read from the highest degree down, so enumeration,
//! canonical representatives and modulus selection all share one ordering.
//!
//! Fields with at most [`TABLE_LIMIT`] elements carry discrete log, antilog and Zech
//! tables built from the least primitive element; every operation on such a field is
//! a table lookup. Larger fields fall back to schoolbook polynomial arithmetic.

pub mod poly;

use crate::arith::{checked_pow, factorize, is_prime, mul_mod, pow_mod};
use crate::error::{Error, Result};
use poly::FpPoly;
use std::fmt;

/// Largest field size for which lookup tables are built.
pub const TABLE_LIMIT: u64 = 1 << 20;

const NO_LOG: u32 = u32::MAX;

/// An element of some [`FieldDescriptor`], as its coefficient index.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Default)]
pub struct FieldElement(u64);

impl FieldElement {
    pub const ZERO: FieldElement = FieldElement(0);
    pub const ONE: FieldElement = FieldElement(1);

    /// Position of the element in the enumeration order of its field.
    pub fn index(self) -> u64 {
        self.0
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

#[derive(Clone, Debug)]
struct Tables {
    generator: u64,
    /// exp[i] = index of g^i, 0 <= i < q - 1.
    exp: Vec<u32>,
    /// log[a] for a != 0, NO_LOG for zero.
    log: Vec<u32>,
    /// zech[n] = log(1 + g^n), NO_LOG where 1 + g^n = 0.
    zech: Vec<u32>,
}

/// The finite field F_{p^k}.
#[derive(Clone, Debug)]
pub struct FieldDescriptor {
    p: u64,
    k: u32,
    q: u64,
    modulus: Vec<u64>,
    tables: Option<Tables>,
}

impl PartialEq for FieldDescriptor {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.k == other.k && self.modulus == other.modulus
    }
}

impl Eq for FieldDescriptor {}

/// Builds F_{p^k} with the lexicographically least monic irreducible modulus.
pub fn make_field(p: u64, k: u32) -> Result<FieldDescriptor> {
    FieldDescriptor::new(p, k)
}

/// Legendre symbol `(a/p)` for an odd prime `p`.
pub fn legendre(a: i64, p: u64) -> Result<i8> {
    if p == 2 || !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    let r = (a as i128).rem_euclid(p as i128) as u64;
    if r == 0 {
        return Ok(0);
    }
    Ok(if pow_mod(r, (p - 1) / 2, p) == 1 {
        1
    } else {
        -1
    })
}

impl FieldDescriptor {
    pub fn new(p: u64, k: u32) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if p <= 3 {
            return Err(Error::SmallCharacteristic(p));
        }
        if k == 0 {
            return Err(Error::ZeroDegree);
        }
        let q = checked_pow(p, k)
            .filter(|&q| q <= 1u64 << 63)
            .ok_or(Error::FieldOverflow { p, k })?;
        let modulus = if k == 1 {
            vec![0, 1]
        } else {
            least_irreducible(p, k as usize)
        };
        let mut field = FieldDescriptor {
            p,
            k,
            q,
            modulus,
            tables: None,
        };
        if q <= TABLE_LIMIT {
            field.tables = Some(field.build_tables());
        }
        Ok(field)
    }

    pub fn characteristic(&self) -> u64 {
        self.p
    }

    pub fn degree(&self) -> u32 {
        self.k
    }

    pub fn cardinality(&self) -> u64 {
        self.q
    }

    /// Monic modulus, coefficients low to high (length k + 1).
    pub fn modulus(&self) -> &[u64] {
        &self.modulus
    }

    pub fn has_tables(&self) -> bool {
        self.tables.is_some()
    }

    pub fn zero(&self) -> FieldElement {
        FieldElement::ZERO
    }

    pub fn one(&self) -> FieldElement {
        FieldElement::ONE
    }

    /// Element with the given coefficient vector (low degree first).
    pub fn element(&self, coeffs: &[u64]) -> Result<FieldElement> {
        if coeffs.len() != self.k as usize {
            return Err(Error::BadCoefficients {
                expected: self.k as usize,
                got: coeffs.len(),
            });
        }
        Ok(self.encode(coeffs.iter().map(|c| c % self.p)))
    }

    /// Element by enumeration index, `None` if out of range.
    pub fn from_index(&self, index: u64) -> Option<FieldElement> {
        (index < self.q).then_some(FieldElement(index))
    }

    /// Image of an integer in the prime subfield.
    pub fn from_int(&self, n: i64) -> FieldElement {
        FieldElement((n as i128).rem_euclid(self.p as i128) as u64)
    }

    pub fn coeffs(&self, a: FieldElement) -> Vec<u64> {
        let mut v = a.0;
        (0..self.k)
            .map(|_| {
                let c = v % self.p;
                v /= self.p;
                c
            })
            .collect()
    }

    /// True when `a` lies in the prime subfield F_p.
    pub fn is_prime_subfield(&self, a: FieldElement) -> bool {
        a.0 < self.p
    }

    pub fn elements(&self) -> impl Iterator<Item = FieldElement> + '_ {
        (0..self.q).map(FieldElement)
    }

    fn encode(&self, coeffs: impl DoubleEndedIterator<Item = u64>) -> FieldElement {
        FieldElement(coeffs.rev().fold(0u64, |acc, c| acc * self.p + c))
    }

    pub fn add(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        debug_assert!(a.0 < self.q && b.0 < self.q);
        if self.k == 1 {
            let s = a.0 + b.0;
            return FieldElement(if s >= self.p { s - self.p } else { s });
        }
        if let Some(t) = &self.tables {
            if a.0 == 0 {
                return b;
            }
            if b.0 == 0 {
                return a;
            }
            return self.from_log(self.log_add(t.log[a.0 as usize], t.log[b.0 as usize]));
        }
        self.digitwise(a, b, |x, y| (x + y) % self.p)
    }

    pub fn neg(&self, a: FieldElement) -> FieldElement {
        if a.0 == 0 {
            return a;
        }
        if self.k == 1 {
            return FieldElement(self.p - a.0);
        }
        self.digitwise(a, FieldElement::ZERO, |x, _| (self.p - x) % self.p)
    }

    pub fn sub(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        debug_assert!(a.0 < self.q && b.0 < self.q);
        if a.0 == 0 || b.0 == 0 {
            return FieldElement::ZERO;
        }
        if self.k == 1 {
            return FieldElement(mul_mod(a.0, b.0, self.p));
        }
        if let Some(t) = &self.tables {
            let l = t.log[a.0 as usize] as u64 + t.log[b.0 as usize] as u64;
            return FieldElement(t.exp[(l % (self.q - 1)) as usize] as u64);
        }
        self.mul_poly(a, b)
    }

    pub fn square(&self, a: FieldElement) -> FieldElement {
        self.mul(a, a)
    }

    /// Multiplicative inverse; zero is an error.
    pub fn inv(&self, a: FieldElement) -> Result<FieldElement> {
        if a.0 == 0 {
            return Err(Error::ZeroInverse(self.q));
        }
        if let Some(t) = &self.tables {
            let l = t.log[a.0 as usize] as u64;
            return Ok(FieldElement(
                t.exp[((self.q - 1 - l) % (self.q - 1)) as usize] as u64,
            ));
        }
        Ok(self.pow(a, self.q - 2))
    }

    pub fn div(&self, a: FieldElement, b: FieldElement) -> Result<FieldElement> {
        Ok(self.mul(a, self.inv(b)?))
    }

    /// `a^e` by square-and-multiply (or a log lookup), with `0^0 = 1`.
    pub fn pow(&self, a: FieldElement, e: u64) -> FieldElement {
        if e == 0 {
            return FieldElement::ONE;
        }
        if a.0 == 0 {
            return FieldElement::ZERO;
        }
        if let Some(t) = &self.tables {
            let n = self.q - 1;
            let l = mul_mod(t.log[a.0 as usize] as u64, e % n, n);
            return FieldElement(t.exp[l as usize] as u64);
        }
        let mut base = a;
        let mut acc = FieldElement::ONE;
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// `a^(p^i)`.
    pub fn frobenius(&self, a: FieldElement, i: u32) -> FieldElement {
        let i = i % self.k;
        if i == 0 || a.0 < self.p {
            return a;
        }
        if let Some(t) = &self.tables {
            let n = self.q - 1;
            let factor = pow_mod(self.p, i as u64, n);
            let l = mul_mod(t.log[a.0 as usize] as u64, factor, n);
            return FieldElement(t.exp[l as usize] as u64);
        }
        (0..i).fold(a, |acc, _| self.pow(acc, self.p))
    }

    /// Size of the Frobenius orbit of `a`, i.e. the degree of its minimal polynomial.
    pub fn orbit_degree(&self, a: FieldElement) -> u32 {
        (1..=self.k)
            .find(|&d| self.k % d == 0 && self.frobenius(a, d) == a)
            .unwrap_or(self.k)
    }

    pub fn is_square(&self, a: FieldElement) -> bool {
        if a.0 == 0 {
            return true;
        }
        if let Some(t) = &self.tables {
            return t.log[a.0 as usize] % 2 == 0;
        }
        self.pow(a, (self.q - 1) / 2) == FieldElement::ONE
    }

    /// Quadratic character: 0, 1 or -1.
    pub fn chi(&self, a: FieldElement) -> i64 {
        if a.0 == 0 {
            0
        } else if self.is_square(a) {
            1
        } else {
            -1
        }
    }

    /// Some square root of `a`, if one exists.
    pub fn sqrt(&self, a: FieldElement) -> Option<FieldElement> {
        if a.0 == 0 {
            return Some(a);
        }
        if let Some(t) = &self.tables {
            let l = t.log[a.0 as usize];
            return (l % 2 == 0).then(|| FieldElement(t.exp[(l / 2) as usize] as u64));
        }
        if !self.is_square(a) {
            return None;
        }
        Some(self.tonelli_shanks(a))
    }

    fn tonelli_shanks(&self, a: FieldElement) -> FieldElement {
        let mut m = self.q - 1;
        let mut s = 0u32;
        while m % 2 == 0 {
            m /= 2;
            s += 1;
        }
        let z = self
            .elements()
            .skip(2)
            .find(|&z| !self.is_square(z))
            .expect("odd field has non-squares");
        let mut c = self.pow(z, m);
        let mut x = self.pow(a, m.div_ceil(2));
        let mut b = self.pow(a, m);
        let mut e = s;
        while b != FieldElement::ONE {
            let mut i = 0;
            let mut b2 = b;
            while b2 != FieldElement::ONE {
                b2 = self.square(b2);
                i += 1;
            }
            let g = self.pow(c, 1u64 << (e - i - 1));
            x = self.mul(x, g);
            c = self.square(g);
            b = self.mul(b, c);
            e = i;
        }
        x
    }

    /// Least primitive element in enumeration order.
    pub fn primitive_element(&self) -> FieldElement {
        match &self.tables {
            Some(t) => FieldElement(t.generator),
            None => self.find_generator(),
        }
    }

    fn find_generator(&self) -> FieldElement {
        let n = self.q - 1;
        let primes: Vec<u64> = factorize(n).into_iter().map(|(r, _)| r).collect();
        (1..self.q)
            .map(FieldElement)
            .find(|&g| {
                primes
                    .iter()
                    .all(|&r| self.pow(g, n / r) != FieldElement::ONE)
            })
            .expect("finite field has a primitive element")
    }

    fn build_tables(&self) -> Tables {
        let generator = self.find_generator();
        let n = (self.q - 1) as usize;
        let mut exp = vec![0u32; n];
        let mut log = vec![NO_LOG; self.q as usize];
        let mut acc = FieldElement::ONE;
        for (i, slot) in exp.iter_mut().enumerate() {
            *slot = acc.0 as u32;
            log[acc.0 as usize] = i as u32;
            acc = self.mul_poly(acc, generator);
        }
        let zech = exp
            .iter()
            .map(|&e| {
                let s = self.digitwise(FieldElement(e as u64), FieldElement::ONE, |x, y| {
                    (x + y) % self.p
                });
                log[s.0 as usize]
            })
            .collect();
        Tables {
            generator: generator.0,
            exp,
            log,
            zech,
        }
    }

    fn digitwise(
        &self,
        a: FieldElement,
        b: FieldElement,
        op: impl Fn(u64, u64) -> u64,
    ) -> FieldElement {
        let (mut x, mut y) = (a.0, b.0);
        let mut out = 0u64;
        let mut place = 1u64;
        for i in 0..self.k {
            out += op(x % self.p, y % self.p) * place;
            x /= self.p;
            y /= self.p;
            if i + 1 < self.k {
                place *= self.p;
            }
        }
        FieldElement(out)
    }

    fn mul_poly(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        let k = self.k as usize;
        if k == 1 {
            return FieldElement(mul_mod(a.0, b.0, self.p));
        }
        let (ca, cb) = (self.coeffs(a), self.coeffs(b));
        let p = self.p;
        let mut prod = vec![0u64; 2 * k - 1];
        for (i, &x) in ca.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in cb.iter().enumerate() {
                prod[i + j] = (prod[i + j] + mul_mod(x, y, p)) % p;
            }
        }
        for i in (k..prod.len()).rev() {
            let c = prod[i];
            if c == 0 {
                continue;
            }
            prod[i] = 0;
            for j in 0..k {
                let idx = i - k + j;
                prod[idx] = (prod[idx] + p - mul_mod(c, self.modulus[j], p)) % p;
            }
        }
        prod.truncate(k);
        self.encode(prod.into_iter())
    }

    // Log-domain helpers used by the point counting kernels.

    /// Discrete log of a nonzero element; `None` without tables or for zero.
    pub fn log(&self, a: FieldElement) -> Option<u32> {
        let t = self.tables.as_ref()?;
        let l = t.log[a.0 as usize];
        (l != NO_LOG).then_some(l)
    }

    pub(crate) fn log_add(&self, la: u32, lb: u32) -> u32 {
        let t = self.tables.as_ref().expect("log_add needs tables");
        if la == NO_LOG {
            return lb;
        }
        if lb == NO_LOG {
            return la;
        }
        let n = (self.q - 1) as u32;
        let d = if lb >= la { lb - la } else { lb + n - la };
        let z = t.zech[d as usize];
        if z == NO_LOG {
            return NO_LOG;
        }
        let s = la as u64 + z as u64;
        (s % n as u64) as u32
    }

    pub(crate) fn log_or_none(&self, a: FieldElement) -> u32 {
        match &self.tables {
            Some(t) => t.log[a.0 as usize],
            None => panic!("log_or_none needs tables"),
        }
    }

    pub(crate) fn from_log(&self, l: u32) -> FieldElement {
        if l == NO_LOG {
            return FieldElement::ZERO;
        }
        let t = self.tables.as_ref().expect("from_log needs tables");
        FieldElement(t.exp[l as usize] as u64)
    }

    pub(crate) const fn no_log() -> u32 {
        NO_LOG
    }

    /// Iterator-friendly display for one element.
    pub fn display(&self, a: FieldElement) -> ElementDisplay<'_> {
        ElementDisplay {
            field: self,
            elem: a,
        }
    }
}

/// Renders prime field elements as integers and extension elements as coefficient tuples.
pub struct ElementDisplay<'a> {
    field: &'a FieldDescriptor,
    elem: FieldElement,
}

impl fmt::Display for ElementDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.field.k == 1 {
            return write!(f, "{}", self.elem.0);
        }
        let parts: Vec<String> = self
            .field
            .coeffs(self.elem)
            .iter()
            .map(|c| c.to_string())
            .collect();
        write!(f, "({})", parts.join(","))
    }
}

impl fmt::Display for FieldDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.k == 1 {
            write!(f, "F_{}", self.p)
        } else {
            let m = FpPoly::new(self.p, self.modulus.clone());
            write!(f, "F_{}^{} = F_{}[l]/({})", self.p, self.k, self.p, m)
        }
    }
}

fn least_irreducible(p: u64, k: usize) -> Vec<u64> {
    let total = p.pow(k as u32);
    (0..total)
        .map(|code| {
            let mut coeffs: Vec<u64> = (0..k)
                .scan(code, |rest, _| {
                    let c = *rest % p;
                    *rest /= p;
                    Some(c)
                })
                .collect();
            coeffs.push(1);
            coeffs
        })
        .find(|coeffs| coeffs[0] != 0 && FpPoly::new(p, coeffs.clone()).is_irreducible())
        .expect("irreducible polynomials exist in every degree")
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeSet;

    fn squares_oracle(f: &FieldDescriptor) -> BTreeSet<FieldElement> {
        f.elements().map(|y| f.mul_poly(y, y)).collect()
    }

    #[test]
    fn make_field_prime_and_quadratic() {
        let f5 = make_field(5, 1).unwrap();
        assert_eq!(f5.modulus(), &[0, 1]);
        assert_eq!(f5.cardinality(), 5);
        let f25 = make_field(5, 2).unwrap();
        // x^2 + 2 is the lexicographically first monic quadratic without roots mod 5.
        assert_eq!(f25.modulus(), &[2, 0, 1]);
        assert_eq!(make_field(5, 2).unwrap(), f25);
    }

    #[test]
    fn make_field_rejects_bad_input() {
        assert_eq!(make_field(4, 1), Err(Error::NotPrime(4)));
        assert_eq!(make_field(3, 2), Err(Error::SmallCharacteristic(3)));
        assert_eq!(make_field(7, 0), Err(Error::ZeroDegree));
        assert!(matches!(
            make_field(5, 40),
            Err(Error::FieldOverflow { .. })
        ));
    }

    #[test]
    fn least_quadratic_matches_root_search() {
        for p in [5u64, 7, 11, 13] {
            let f = make_field(p, 2).unwrap();
            let oracle = (0..p)
                .flat_map(|b| (0..p).map(move |c| (b, c)))
                .find(|&(b, c)| (0..p).all(|x| (x * x + b * x + c) % p != 0))
                .unwrap();
            assert_eq!(f.modulus(), &[oracle.1, oracle.0, 1], "p = {p}");
        }
    }

    #[test]
    fn enumeration_order() {
        let f5 = make_field(5, 1).unwrap();
        let idx: Vec<u64> = f5.elements().map(|e| e.index()).collect();
        assert_eq!(idx, vec![0, 1, 2, 3, 4]);
        let f25 = make_field(5, 2).unwrap();
        let all: Vec<_> = f25.elements().collect();
        assert_eq!(all.len(), 25);
        assert_eq!(f25.coeffs(all[0]), vec![0, 0]);
        assert_eq!(f25.coeffs(all[24]), vec![4, 4]);
        assert_eq!(f25.display(all[24]).to_string(), "(4,4)");
        assert_eq!(make_field(7, 2).unwrap().elements().count(), 49);
    }

    #[test]
    fn basic_arithmetic() {
        let f5 = make_field(5, 1).unwrap();
        assert_eq!(f5.inv(f5.from_int(2)).unwrap(), f5.from_int(3));
        assert_eq!(f5.inv(f5.zero()), Err(Error::ZeroInverse(5)));

        let f25 = make_field(5, 2).unwrap();
        let x = f25.element(&[0, 1]).unwrap();
        // x^2 = -2 = 3 modulo x^2 + 2.
        assert_eq!(f25.mul(x, x), f25.element(&[3, 0]).unwrap());
    }

    #[test]
    fn field_axioms_small_fields() {
        for (p, k) in [(5u64, 1u32), (5, 2), (7, 2), (5, 3), (11, 2)] {
            let f = make_field(p, k).unwrap();
            let q = f.cardinality();
            for a in f.elements() {
                assert_eq!(f.add(a, f.neg(a)), f.zero());
                if !a.is_zero() {
                    assert_eq!(f.mul(a, f.inv(a).unwrap()), f.one());
                    assert_eq!(f.pow(a, q - 1), f.one());
                    let h = f.pow(a, (q - 1) / 2);
                    assert_eq!(f.mul(h, h), f.one());
                }
                assert_eq!(f.frobenius(a, k), a);
            }
            // Table arithmetic agrees with the polynomial fallback on a sample.
            for a in f.elements().step_by(3) {
                for b in f.elements().step_by(5) {
                    assert_eq!(f.mul(a, b), f.mul_poly(a, b));
                    assert_eq!(f.add(a, b), f.digitwise(a, b, |x, y| (x + y) % p));
                }
            }
        }
    }

    #[test]
    fn generic_path_matches_tables() {
        let tabled = make_field(7, 3).unwrap();
        let mut plain = tabled.clone();
        plain.tables = None;
        for a in tabled.elements().step_by(7) {
            for b in tabled.elements().step_by(11) {
                assert_eq!(tabled.mul(a, b), plain.mul(a, b));
                assert_eq!(tabled.add(a, b), plain.add(a, b));
            }
            assert_eq!(tabled.is_square(a), plain.is_square(a));
            assert_eq!(tabled.frobenius(a, 1), plain.frobenius(a, 1));
            if !a.is_zero() {
                assert_eq!(tabled.inv(a), plain.inv(a));
            }
            if let Some(r) = plain.sqrt(a) {
                assert_eq!(plain.square(r), a);
            }
        }
    }

    #[test]
    fn is_square_matches_exhaustive_squares() {
        for (p, k) in [
            (5u64, 1u32),
            (7, 1),
            (5, 2),
            (7, 2),
            (11, 2),
            (13, 2),
            (5, 3),
            (7, 3),
            (5, 4),
        ] {
            let f = make_field(p, k).unwrap();
            let squares = squares_oracle(&f);
            for a in f.elements() {
                assert_eq!(f.is_square(a), squares.contains(&a), "{a:?} in {f}");
                if let Some(r) = f.sqrt(a) {
                    assert_eq!(f.square(r), a);
                }
            }
            assert_eq!(squares.len() as u64, (f.cardinality() + 1) / 2);
        }
    }

    #[test]
    fn prime_subfield_becomes_squares() {
        let f5 = make_field(5, 1).unwrap();
        assert!(f5.is_square(f5.from_int(4)));
        assert!(!f5.is_square(f5.from_int(2)));
        assert!(f5.is_square(f5.zero()));
        let f25 = make_field(5, 2).unwrap();
        for c in 0..5 {
            assert!(f25.is_square(f25.from_int(c)));
        }
    }

    #[test]
    fn legendre_symbols() {
        assert_eq!(legendre(-3, 5), Ok(-1));
        assert_eq!(legendre(-4, 5), Ok(1));
        assert_eq!(legendre(10, 5), Ok(0));
        assert_eq!(legendre(1, 2), Err(Error::NotPrime(2)));
        assert_eq!(legendre(1, 9), Err(Error::NotPrime(9)));
        for p in [5u64, 7, 11, 13] {
            for a in -20i64..20 {
                let r = a.rem_euclid(p as i64) as u64;
                let oracle = if r == 0 {
                    0
                } else if (1..p).any(|y| y * y % p == r) {
                    1
                } else {
                    -1
                };
                assert_eq!(legendre(a, p).unwrap(), oracle);
            }
        }
    }

    #[test]
    fn frobenius_orbits_partition_field() {
        for (p, k) in [(5u64, 2u32), (5, 3), (7, 2), (5, 4)] {
            let f = make_field(p, k).unwrap();
            for a in f.elements().take(5) {
                if f.is_prime_subfield(a) {
                    assert_eq!(f.frobenius(a, 1), a);
                }
            }
            let mut seen = vec![false; f.cardinality() as usize];
            let mut total = 0u64;
            for a in f.elements() {
                if seen[a.index() as usize] {
                    continue;
                }
                let mut orbit = vec![a];
                let mut b = f.frobenius(a, 1);
                while b != a {
                    orbit.push(b);
                    b = f.frobenius(b, 1);
                }
                assert_eq!(k % orbit.len() as u32, 0);
                assert_eq!(orbit.len() as u32, f.orbit_degree(a));
                for e in &orbit {
                    seen[e.index() as usize] = true;
                }
                total += orbit.len() as u64;
            }
            assert_eq!(total, f.cardinality());
        }
    }

    #[test]
    fn large_field_without_tables() {
        let f = make_field(1_000_003, 2).unwrap();
        assert!(!f.has_tables());
        let a = f.element(&[12345, 678]).unwrap();
        let inv = f.inv(a).unwrap();
        assert_eq!(f.mul(a, inv), f.one());
        let sq = f.square(a);
        let r = f.sqrt(sq).unwrap();
        assert!(r == a || r == f.neg(a));
    }
}
