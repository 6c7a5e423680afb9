//! Exact integer power series and rational polynomials used as ground truth.

use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Product of two integer power series truncated after `q^m`.
pub fn int_series_mul(a: &[BigInt], b: &[BigInt], m: usize) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero(); m + 1];
    for (i, x) in a.iter().enumerate().take(m + 1) {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate().take(m + 1 - i) {
            out[i + j] += x * y;
        }
    }
    out
}

/// Inverse of an integer power series whose constant term is `+-1`.
pub fn int_series_inv(a: &[BigInt], m: usize) -> Result<Vec<BigInt>> {
    let c0 = a.first().ok_or(Error::DivisionByZero)?;
    if !c0.abs().is_one() {
        return Err(Error::Domain("constant term must be +-1".into()));
    }
    let mut h = Vec::with_capacity(m + 1);
    h.push(c0.clone());
    for n in 1..=m {
        let mut acc = BigInt::zero();
        for k in 1..=n.min(a.len() - 1) {
            acc += &a[k] * &h[n - k];
        }
        h.push(-(acc * c0));
    }
    Ok(h)
}

/// Exact quotient of an integer series by an integer (every coefficient
/// must be divisible).
pub fn int_series_div_exact(a: &[BigInt], d: &BigInt) -> Result<Vec<BigInt>> {
    a.iter()
        .map(|c| {
            let (q, r) = c.div_rem(d);
            if r.is_zero() {
                Ok(q)
            } else {
                Err(Error::Domain("coefficient not divisible".into()))
            }
        })
        .collect()
}

/// Dense univariate polynomial over `Q`, low-to-high.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct RatPoly {
    coeffs: Vec<BigRational>,
}

impl RatPoly {
    pub fn new(mut coeffs: Vec<BigRational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        RatPoly { coeffs }
    }

    pub fn from_ints(c: &[i64]) -> Self {
        Self::new(c.iter().map(|&x| BigRational::from_integer(BigInt::from(x))).collect())
    }

    pub fn constant(c: BigRational) -> Self {
        Self::new(vec![c])
    }

    /// The variable `x`.
    pub fn x() -> Self {
        Self::from_ints(&[0, 1])
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> BigRational {
        self.coeffs.get(i).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn eval(&self, x: &BigRational) -> BigRational {
        self.coeffs.iter().rev().fold(BigRational::zero(), |acc, c| acc * x + c)
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * BigRational::from_integer(BigInt::from(i)))
                .collect(),
        )
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        Self::new((0..n).map(|i| self.coeff(i) + other.coeff(i)).collect())
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        Self::new(self.coeffs.iter().map(|x| x * c).collect())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.coeffs.is_empty() || other.coeffs.is_empty() {
            return Self::default();
        }
        let mut out = vec![BigRational::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Self::new(out)
    }
}

/// Exact p-adic valuation of a nonzero rational.
pub fn rational_valuation(q: &BigRational, p: u64) -> Option<i64> {
    if q.is_zero() {
        return None;
    }
    let pb = BigInt::from(p);
    let count = |n: &BigInt| {
        let mut v = 0i64;
        let mut x = n.clone();
        loop {
            let (d, r) = x.div_rem(&pb);
            if !r.is_zero() {
                return v;
            }
            x = d;
            v += 1;
        }
    };
    Some(count(q.numer()) - count(q.denom()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn series_inverse_of_one_minus_q() {
        let inv = int_series_inv(&ints(&[1, -1]), 5).unwrap();
        assert_eq!(inv, ints(&[1, 1, 1, 1, 1, 1]));
        assert_eq!(int_series_mul(&ints(&[1, -1]), &inv, 5), ints(&[1, 0, 0, 0, 0, 0]));
    }

    #[test]
    fn polynomial_derivative_and_eval() {
        let f = RatPoly::from_ints(&[1, -1, 1, -1]);
        assert_eq!(f.derivative(), RatPoly::from_ints(&[-1, 2, -3]));
        assert_eq!(f.eval(&BigRational::from_integer(2.into())), BigRational::from_integer((-5).into()));
        assert_eq!(f.mul(&RatPoly::from_ints(&[1, 1])), RatPoly::from_ints(&[1, 0, 0, 0, -1]));
    }

    #[test]
    fn valuations() {
        let q = BigRational::new(50.into(), 3.into());
        assert_eq!(rational_valuation(&q, 5), Some(2));
        assert_eq!(rational_valuation(&BigRational::new(1.into(), 125.into()), 5), Some(-3));
        assert_eq!(rational_valuation(&BigRational::zero(), 5), None);
    }
}
