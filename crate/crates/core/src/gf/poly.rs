//! Dense univariate polynomials over a prime field F_p.

use crate::arith::{mul_mod, pow_mod};
use std::fmt;

/// Polynomial over F_p with coefficients stored low degree first, no trailing zeros.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct FpPoly {
    p: u64,
    coeffs: Vec<u64>,
}

impl FpPoly {
    pub fn new(p: u64, coeffs: Vec<u64>) -> Self {
        let mut poly = FpPoly {
            p,
            coeffs: coeffs.into_iter().map(|c| c % p).collect(),
        };
        poly.trim();
        poly
    }

    /// Reduces signed integer coefficients into [0, p).
    pub fn from_signed(p: u64, coeffs: &[i64]) -> Self {
        let m = p as i128;
        Self::new(
            p,
            coeffs
                .iter()
                .map(|&c| (c as i128).rem_euclid(m) as u64)
                .collect(),
        )
    }

    pub fn zero(p: u64) -> Self {
        FpPoly {
            p,
            coeffs: Vec::new(),
        }
    }

    pub fn constant(p: u64, c: u64) -> Self {
        Self::new(p, vec![c])
    }

    /// The monomial `x`.
    pub fn x(p: u64) -> Self {
        Self::new(p, vec![0, 1])
    }

    fn trim(&mut self) {
        while self.coeffs.last() == Some(&0) {
            self.coeffs.pop();
        }
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> u64 {
        self.coeffs.get(i).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, with the zero polynomial reported as `None`.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> u64 {
        self.coeffs.last().copied().unwrap_or(0)
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n)
            .map(|i| (self.coeff(i) + other.coeff(i)) % self.p)
            .collect();
        Self::new(self.p, coeffs)
    }

    pub fn sub(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n)
            .map(|i| (self.coeff(i) + self.p - other.coeff(i)) % self.p)
            .collect();
        Self::new(self.p, coeffs)
    }

    pub fn scale(&self, c: u64) -> Self {
        let c = c % self.p;
        Self::new(
            self.p,
            self.coeffs.iter().map(|&a| mul_mod(a, c, self.p)).collect(),
        )
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero(self.p);
        }
        let mut out = vec![0u64; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                out[i + j] = (out[i + j] + mul_mod(a, b, self.p)) % self.p;
            }
        }
        Self::new(self.p, out)
    }

    pub fn pow(&self, mut e: u64) -> Self {
        let mut base = self.clone();
        let mut acc = Self::constant(self.p, 1);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }

    /// Quotient and remainder; panics on division by the zero polynomial.
    pub fn div_rem(&self, divisor: &Self) -> (Self, Self) {
        let dd = divisor.degree().expect("division by zero polynomial");
        let inv_lead = pow_mod(divisor.leading(), self.p - 2, self.p);
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return (Self::zero(self.p), self.clone());
        }
        let mut quot = vec![0u64; rem.len() - dd];
        for i in (dd..rem.len()).rev() {
            let c = mul_mod(rem[i], inv_lead, self.p);
            if c == 0 {
                continue;
            }
            quot[i - dd] = c;
            for (j, &d) in divisor.coeffs.iter().enumerate() {
                let idx = i - dd + j;
                rem[idx] = (rem[idx] + self.p - mul_mod(c, d, self.p)) % self.p;
            }
        }
        (Self::new(self.p, quot), Self::new(self.p, rem))
    }

    pub fn rem(&self, divisor: &Self) -> Self {
        self.div_rem(divisor).1
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        self.scale(pow_mod(self.leading(), self.p - 2, self.p))
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, other: &Self) -> Self {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn mul_mod(&self, other: &Self, modulus: &Self) -> Self {
        self.mul(other).rem(modulus)
    }

    pub fn pow_mod(&self, mut e: u64, modulus: &Self) -> Self {
        let mut base = self.rem(modulus);
        let mut acc = Self::constant(self.p, 1).rem(modulus);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul_mod(&base, modulus);
            }
            base = base.mul_mod(&base, modulus);
            e >>= 1;
        }
        acc
    }

    /// Ben-Or irreducibility test: no factor of degree `i <= deg/2` divides `x^(p^i) - x`.
    pub fn is_irreducible(&self) -> bool {
        let n = match self.degree() {
            None | Some(0) => return false,
            Some(1) => return true,
            Some(n) => n,
        };
        let x = Self::x(self.p);
        let mut frob = x.clone();
        for _ in 1..=n / 2 {
            frob = frob.pow_mod(self.p, self);
            if !frob.sub(&x).gcd(self).is_constant() {
                return false;
            }
        }
        true
    }

    /// Formal derivative.
    pub fn derivative(&self) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, &c)| mul_mod(c, i as u64 % self.p, self.p))
            .collect();
        Self::new(self.p, coeffs)
    }

    /// Evaluates at an element of F_p.
    pub fn eval(&self, x: u64) -> u64 {
        self.coeffs
            .iter()
            .rev()
            .fold(0, |acc, &c| (mul_mod(acc, x, self.p) + c) % self.p)
    }

    /// Substitutes `x -> x^m`.
    pub fn compose_power(&self, m: usize) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let mut coeffs = vec![0u64; (self.coeffs.len() - 1) * m + 1];
        for (i, &c) in self.coeffs.iter().enumerate() {
            coeffs[i * m] = c;
        }
        Self::new(self.p, coeffs)
    }

    /// True when every exponent with a nonzero coefficient is divisible by `m`.
    pub fn exponents_divisible_by(&self, m: usize) -> bool {
        self.coeffs
            .iter()
            .enumerate()
            .all(|(i, &c)| c == 0 || i % m == 0)
    }

    /// Inverse of [`compose_power`](Self::compose_power); caller checks divisibility first.
    pub fn deflate(&self, m: usize) -> Self {
        let coeffs = self.coeffs.iter().step_by(m).copied().collect();
        Self::new(self.p, coeffs)
    }
}

impl fmt::Display for FpPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, &c) in self.coeffs.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match (i, c) {
                (0, c) => write!(f, "{c}")?,
                (1, 1) => write!(f, "l")?,
                (1, c) => write!(f, "{c}*l")?,
                (i, 1) => write!(f, "l^{i}")?,
                (i, c) => write!(f, "{c}*l^{i}")?,
            }
        }
        Ok(())
    }
}
