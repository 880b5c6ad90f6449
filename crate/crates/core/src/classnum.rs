//! Positive definite binary quadratic forms, class numbers h(D), Kronecker class
//! numbers H(D), and Schoof's count N(t) of isomorphism classes with a given trace.

use crate::arith::exact_sqrt;
use crate::error::{Error, Result};
use crate::gf::legendre;
use num_rational::Ratio;
use std::fmt;

/// The form `alpha x^2 + beta xy + gamma y^2`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct QuadForm {
    pub alpha: i64,
    pub beta: i64,
    pub gamma: i64,
}

impl QuadForm {
    pub fn new(alpha: i64, beta: i64, gamma: i64) -> Self {
        QuadForm { alpha, beta, gamma }
    }

    pub fn discriminant(&self) -> i64 {
        self.beta * self.beta - 4 * self.alpha * self.gamma
    }

    pub fn is_positive_definite(&self) -> bool {
        self.alpha > 0 && self.discriminant() < 0
    }

    /// Gauss reduced: `|beta| <= alpha <= gamma`, and `beta >= 0` on the boundary.
    pub fn is_reduced(&self) -> bool {
        let (a, b, c) = (self.alpha, self.beta, self.gamma);
        b.abs() <= a && a <= c && (b >= 0 || (b.abs() != a && a != c))
    }

    pub fn is_primitive(&self) -> bool {
        let g = crate::arith::gcd(self.alpha.unsigned_abs(), self.beta.unsigned_abs());
        crate::arith::gcd(g, self.gamma.unsigned_abs()) == 1
    }

    /// `f(ax + by, cx + dy)`.
    pub fn transform(&self, a: i64, b: i64, c: i64, d: i64) -> QuadForm {
        let (p, q, r) = (self.alpha, self.beta, self.gamma);
        QuadForm {
            alpha: p * a * a + q * a * c + r * c * c,
            beta: 2 * p * a * b + q * (a * d + b * c) + 2 * r * c * d,
            gamma: p * b * b + q * b * d + r * d * d,
        }
    }
}

impl fmt::Display for QuadForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{})", self.alpha, self.beta, self.gamma)
    }
}

/// A negative discriminant `D = 0, 1 (mod 4)`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Discriminant(i64);

impl Discriminant {
    pub fn new(value: i64) -> Result<Self> {
        if value >= 0 {
            return Err(Error::InvalidDiscriminant {
                value,
                reason: "must be negative",
            });
        }
        if !matches!(value.rem_euclid(4), 0 | 1) {
            return Err(Error::InvalidDiscriminant {
                value,
                reason: "must be 0 or 1 mod 4",
            });
        }
        Ok(Discriminant(value))
    }

    pub fn value(self) -> i64 {
        self.0
    }

    /// `D / f^2` for the `f` that keep it an integer discriminant, including `f = 1`.
    pub fn divisor_chain(self) -> Vec<(i64, Discriminant)> {
        let n = self.0.unsigned_abs();
        let mut out = Vec::new();
        let mut f = 1u64;
        while f * f <= n {
            if n % (f * f) == 0 {
                if let Ok(d) = Discriminant::new(self.0 / (f * f) as i64) {
                    out.push((f as i64, d));
                }
            }
            f += 1;
        }
        out
    }
}

impl fmt::Display for Discriminant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// One reduced representative per SL_2(Z)-class of forms of discriminant `d`.
pub fn reduced_forms(d: Discriminant, primitive_only: bool) -> Vec<QuadForm> {
    let disc = d.0;
    let n = disc.unsigned_abs();
    let mut forms = Vec::new();
    let mut alpha = 1i64;
    // alpha <= sqrt(|D| / 3)
    while (3 * alpha * alpha) as u64 <= n {
        let start = if (alpha - disc).rem_euclid(2) == 0 {
            -alpha
        } else {
            -alpha + 1
        };
        let mut beta = start;
        while beta <= alpha {
            let num = beta * beta - disc;
            if num % (4 * alpha) == 0 {
                let form = QuadForm::new(alpha, beta, num / (4 * alpha));
                if form.is_reduced() && (!primitive_only || form.is_primitive()) {
                    forms.push(form);
                }
            }
            beta += 2;
        }
        alpha += 1;
    }
    forms
}

/// h(D): number of classes of primitive forms.
pub fn class_number_h(d: Discriminant) -> u64 {
    reduced_forms(d, true).len() as u64
}

/// H(D) as the divisor sum `sum_f h(D / f^2)`.
pub fn kronecker_class_number(d: Discriminant) -> u64 {
    d.divisor_chain()
        .into_iter()
        .map(|(_, sub)| class_number_h(sub))
        .sum()
}

/// Number of units of the order of discriminant `d`.
pub fn unit_count(d: Discriminant) -> u32 {
    match d.0 {
        -3 => 6,
        -4 => 4,
        _ => 2,
    }
}

/// `sum_f h(D / f^2) / (w(D / f^2) / 2)`, the class number sum weighted by units.
pub fn weighted_kronecker_class_number(d: Discriminant) -> Ratio<i64> {
    d.divisor_chain()
        .into_iter()
        .map(|(_, sub)| Ratio::new(2 * class_number_h(sub) as i64, unit_count(sub) as i64))
        .sum()
}

/// Which branch of Schoof's formula produced `N(t)`.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum SchoofCase {
    Ordinary,
    ZeroNonSquare,
    TwiceRootSquare,
    RootSquare,
    ZeroSquare,
    Otherwise,
}

impl SchoofCase {
    pub fn label(self) -> &'static str {
        match self {
            SchoofCase::Ordinary => "t²<4qᵏ, p∤t",
            SchoofCase::ZeroNonSquare => "t=0, qᵏ non-square",
            SchoofCase::TwiceRootSquare => "t²=4qᵏ square",
            SchoofCase::RootSquare => "t²=qᵏ square",
            SchoofCase::ZeroSquare => "t=0, qᵏ square",
            SchoofCase::Otherwise => "otherwise",
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct SchoofCount {
    pub value: u64,
    pub case: SchoofCase,
}

/// `p^(e k)` with overflow checking.
pub fn field_size(p: u64, e: u32, k: u32) -> Result<u64> {
    e.checked_mul(k)
        .and_then(|ek| crate::arith::checked_pow(p, ek))
        .filter(|&q| q <= 1u64 << 63)
        .ok_or(Error::Overflow("field size"))
}

/// N(t): the number of F_{q^k}-isomorphism classes of curves with `q^k + 1 - t`
/// points, where `q = p^e`.
pub fn schoof_n(t: i64, p: u64, e: u32, k: u32) -> Result<SchoofCount> {
    if p <= 3 {
        return Err(Error::SmallCharacteristic(p));
    }
    let big_q = field_size(p, e, k)? as i128;
    let t2 = (t as i128) * (t as i128);
    let square = exact_sqrt(big_q as u128).is_some();
    let p_divides_t = (t as i128) % (p as i128) == 0;
    let leg3 = legendre(-3, p)? as i64;
    let leg4 = legendre(-4, p)? as i64;
    let count = |value: i64, case| SchoofCount {
        value: value as u64,
        case,
    };

    if t2 < 4 * big_q && !p_divides_t {
        let d = i64::try_from(t2 - 4 * big_q).map_err(|_| Error::Overflow("discriminant"))?;
        let h = kronecker_class_number(Discriminant::new(d)?);
        return Ok(count(h as i64, SchoofCase::Ordinary));
    }
    if t == 0 && !square {
        let h = kronecker_class_number(Discriminant::new(-4 * p as i64)?);
        return Ok(count(h as i64, SchoofCase::ZeroNonSquare));
    }
    if t2 == 4 * big_q && square {
        let num = p as i64 + 6 - 4 * leg3 - 3 * leg4;
        debug_assert_eq!(num % 12, 0);
        return Ok(count(num / 12, SchoofCase::TwiceRootSquare));
    }
    if t2 == big_q && square {
        return Ok(count(1 - leg3, SchoofCase::RootSquare));
    }
    if t == 0 && square {
        return Ok(count(1 - leg4, SchoofCase::ZeroSquare));
    }
    Ok(count(0, SchoofCase::Otherwise))
}
