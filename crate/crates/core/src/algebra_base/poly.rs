//! Dense univariate polynomials over exact rationals, low degree first.

use super::scalar::Scalar;
use crate::{Error, Result};
use serde::{Deserialize, Serialize};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

/// Polynomial in the single variable `t` with rational coefficients,
/// stored densely from the constant term up. Invariant: no trailing zero
/// coefficient, so the zero polynomial is the empty list and its degree
/// is `None`.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Polynomial {
    coeffs: Vec<Scalar>,
}

impl Polynomial {
    pub fn zero() -> Self {
        Polynomial { coeffs: vec![] }
    }

    pub fn one() -> Self {
        Polynomial::constant(Scalar::one())
    }

    pub fn constant(c: Scalar) -> Self {
        Polynomial::from_coeffs(vec![c])
    }

    /// The monomial `t`.
    pub fn t() -> Self {
        Polynomial::from_coeffs(vec![Scalar::zero(), Scalar::one()])
    }

    /// The linear factor `t − z`.
    pub fn linear(z: &Scalar) -> Self {
        Polynomial::from_coeffs(vec![-z, Scalar::one()])
    }

    pub fn from_coeffs(coeffs: Vec<Scalar>) -> Self {
        let mut p = Polynomial { coeffs };
        p.normalize();
        p
    }

    fn normalize(&mut self) {
        while self.coeffs.last().is_some_and(Scalar::is_zero) {
            self.coeffs.pop();
        }
    }

    pub fn coeffs(&self) -> &[Scalar] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> Scalar {
        self.coeffs.get(k).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, with `None` as the sentinel for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&Scalar> {
        self.coeffs.last()
    }

    pub fn eval(&self, z: &Scalar) -> Scalar {
        let mut acc = Scalar::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * z.clone() + c.clone();
        }
        acc
    }

    pub fn scale(&self, c: &Scalar) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero();
        }
        Polynomial::from_coeffs(self.coeffs.iter().map(|a| a * c).collect())
    }

    /// Multiplication by `t^k`.
    pub fn shift(&self, k: usize) -> Polynomial {
        if self.is_zero() {
            return Polynomial::zero();
        }
        let mut coeffs = vec![Scalar::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        Polynomial { coeffs }
    }

    pub fn pow(&self, n: u32) -> Polynomial {
        let mut acc = Polynomial::one();
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    /// Exact division with remainder; errors on a zero divisor.
    pub fn divrem(&self, div: &Polynomial) -> Result<(Polynomial, Polynomial)> {
        if div.is_zero() {
            return Err(Error::invalid("polynomial division by zero"));
        }
        let dd = div.degree().unwrap();
        let lead_inv = div.leading().unwrap().inv()?;
        let mut rem = self.clone();
        let mut quo = vec![Scalar::zero(); self.coeffs.len().saturating_sub(dd)];
        while let Some(rd) = rem.degree() {
            if rd < dd {
                break;
            }
            let factor = rem.leading().unwrap() * &lead_inv;
            let pos = rd - dd;
            quo[pos] = factor.clone();
            let sub = div.scale(&factor).shift(pos);
            rem = &rem - &sub;
        }
        Ok((Polynomial::from_coeffs(quo), rem))
    }

    /// Monic greatest common divisor, by the Euclidean algorithm.
    pub fn gcd(&self, other: &Polynomial) -> Polynomial {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let (_, r) = a.divrem(&b).expect("nonzero divisor");
            a = b;
            b = r;
        }
        if let Some(l) = a.leading() {
            let inv = l.inv().expect("nonzero leading");
            a = a.scale(&inv);
        }
        a
    }

    /// Extended gcd: returns (g, u, v) with u·self + v·other = g, g monic.
    pub fn xgcd(&self, other: &Polynomial) -> (Polynomial, Polynomial, Polynomial) {
        let (mut r0, mut r1) = (self.clone(), other.clone());
        let (mut s0, mut s1) = (Polynomial::one(), Polynomial::zero());
        let (mut t0, mut t1) = (Polynomial::zero(), Polynomial::one());
        while !r1.is_zero() {
            let (q, r) = r0.divrem(&r1).expect("nonzero divisor");
            let s = &s0 - &(&q * &s1);
            let t = &t0 - &(&q * &t1);
            r0 = r1;
            r1 = r;
            s0 = s1;
            s1 = s;
            t0 = t1;
            t1 = t;
        }
        if let Some(l) = r0.leading() {
            let inv = l.inv().expect("nonzero leading");
            return (r0.scale(&inv), s0.scale(&inv), t0.scale(&inv));
        }
        (r0, s0, t0)
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match k {
                0 => write!(f, "{c}")?,
                1 if c.is_one() => write!(f, "t")?,
                1 => write!(f, "{c}*t")?,
                _ if c.is_one() => write!(f, "t^{k}")?,
                _ => write!(f, "{c}*t^{k}")?,
            }
        }
        Ok(())
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..n).map(|k| self.coeff(k) + rhs.coeff(k)).collect();
        Polynomial::from_coeffs(coeffs)
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..n).map(|k| self.coeff(k) - rhs.coeff(k)).collect();
        Polynomial::from_coeffs(coeffs)
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        if self.is_zero() || rhs.is_zero() {
            return Polynomial::zero();
        }
        let mut coeffs = vec![Scalar::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        Polynomial::from_coeffs(coeffs)
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial::from_coeffs(self.coeffs.iter().map(|c| -c).collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(coeffs: &[i64]) -> Polynomial {
        Polynomial::from_coeffs(coeffs.iter().map(|&c| Scalar::from_int(c)).collect())
    }

    #[test]
    fn degree_sentinel() {
        assert_eq!(Polynomial::zero().degree(), None);
        assert_eq!(p(&[5]).degree(), Some(0));
        assert_eq!(p(&[0, 0, 3]).degree(), Some(2));
        assert_eq!(p(&[0, 0, 0]).degree(), None);
    }

    #[test]
    fn divrem_exact() {
        let f = p(&[-2, 1, 1]); // (t-1)(t+2)
        let g = p(&[-1, 1]);
        let (q, r) = f.divrem(&g).unwrap();
        assert_eq!(q, p(&[2, 1]));
        assert!(r.is_zero());

        let (q2, r2) = p(&[1, 0, 0, 1]).divrem(&p(&[1, 1])).unwrap();
        assert_eq!(&(&q2 * &p(&[1, 1])) + &r2, p(&[1, 0, 0, 1]));
    }

    #[test]
    fn gcd_and_xgcd() {
        let a = &p(&[-1, 1]) * &p(&[-2, 1]);
        let b = &p(&[-1, 1]) * &p(&[3, 1]);
        assert_eq!(a.gcd(&b), p(&[-1, 1]));

        let (g, u, v) = a.xgcd(&b);
        assert_eq!(g, p(&[-1, 1]));
        assert_eq!(&(&u * &a) + &(&v * &b), g);
    }

    #[test]
    fn eval_horner() {
        let f = p(&[1, 2, 3]);
        assert_eq!(f.eval(&Scalar::from_int(2)), Scalar::from_int(17));
    }
}
