//! Truncated p-adic arithmetic in `Z_p` and its unramified extensions.

mod context;
mod fp_poly;
mod num;

use alloc::vec::Vec;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

pub use context::PadicContext;
pub use num::{balanced_residue, PadicNum};

use crate::error::{Error, Result};

/// An element of the weight ring `Z[phi]`: `w = sum a_i phi^i`.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Weight {
    coeffs: Vec<i64>,
}

impl Weight {
    pub fn new(coeffs: &[i64]) -> Self {
        let mut coeffs = coeffs.to_vec();
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        Weight { coeffs }
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    /// Largest index with nonzero coefficient; `None` for `w = 0`.
    pub fn ord(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// `deg(w) = sum a_i`.
    pub fn deg(&self) -> i64 {
        self.coeffs.iter().sum()
    }

    /// `lambda^w = prod phi^i(lambda)^(a_i)`.
    pub fn apply(&self, lambda: &PadicNum) -> Result<PadicNum> {
        let mut acc = PadicNum::one(lambda.context());
        let mut twisted = lambda.clone();
        for &a in &self.coeffs {
            if a < 0 && !lambda.is_unit() {
                return Err(Error::Domain("negative weight exponent on a non-unit".into()));
            }
            acc = &acc * &twisted.pow_signed(a)?;
            twisted = twisted.frobenius();
        }
        Ok(acc)
    }
}

impl core::ops::Add for &Weight {
    type Output = Weight;
    fn add(self, rhs: &Weight) -> Weight {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let c: Vec<i64> = (0..n).map(|i| self.coeffs.get(i).unwrap_or(&0) + rhs.coeffs.get(i).unwrap_or(&0)).collect();
        Weight::new(&c)
    }
}

/// A parameter value: either exact (rational coordinates in the basis
/// `1, w, ..., w^(f-1)`) or an already-truncated p-adic number.
///
/// Exact parameters can be re-materialised at a higher working precision,
/// which the series constructions use to absorb the digits lost to
/// factorial denominators.
#[derive(Clone, Debug)]
pub enum Scalar {
    Exact(Vec<BigRational>),
    Padic(PadicNum),
}

impl Scalar {
    pub fn int(n: i64) -> Self {
        Scalar::Exact(alloc::vec![BigRational::from_integer(BigInt::from(n))])
    }

    pub fn ratio(n: i64, d: i64) -> Self {
        Scalar::Exact(alloc::vec![BigRational::new(BigInt::from(n), BigInt::from(d))])
    }

    pub fn rational(q: BigRational) -> Self {
        Scalar::Exact(alloc::vec![q])
    }

    /// Exact rational value when the scalar lies in `Q`.
    pub fn as_rational(&self) -> Option<BigRational> {
        match self {
            Scalar::Exact(c) if c.iter().skip(1).all(Zero::is_zero) => {
                Some(c.first().cloned().unwrap_or_else(BigRational::zero))
            }
            _ => None,
        }
    }

    /// Exact integer value, when it is one.
    pub fn as_integer(&self) -> Option<BigInt> {
        self.as_rational().filter(|q| q.is_integer()).map(|q| q.to_integer())
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Exact(c) => c.iter().all(Zero::is_zero),
            Scalar::Padic(x) => x.is_exact_zero(),
        }
    }

    pub fn is_one(&self) -> bool {
        self.as_rational().is_some_and(|q| q.is_one())
    }

    /// Value in the given context (same field, any cap).
    pub fn to_padic(&self, ctx: &PadicContext) -> Result<PadicNum> {
        match self {
            Scalar::Padic(x) => x.with_context(ctx),
            Scalar::Exact(coords) => {
                if coords.len() > ctx.degree() as usize {
                    return Err(Error::Parameter("more coordinates than the extension degree".into()));
                }
                let mut acc = PadicNum::zero(ctx);
                for (i, c) in coords.iter().enumerate() {
                    if c.is_zero() {
                        continue;
                    }
                    let mut basis = alloc::vec![BigInt::zero(); i + 1];
                    basis[i] = BigInt::one();
                    let w = PadicNum::from_coords(ctx, &basis);
                    acc = &acc + &(&w * &PadicNum::from_rational(ctx, c)?);
                }
                Ok(acc)
            }
        }
    }
}

impl From<PadicNum> for Scalar {
    fn from(x: PadicNum) -> Self {
        Scalar::Padic(x)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn weight_basics() {
        let w = Weight::new(&[2, 0, -1, 0]);
        assert_eq!(w.ord(), Some(2));
        assert_eq!(w.deg(), 1);
        assert_eq!(Weight::default().ord(), None);
    }

    #[test]
    fn weight_apply_on_base_field() {
        let c = PadicContext::new(5, 6).unwrap();
        let two = PadicNum::from_i64(&c, 2);
        assert_eq!(Weight::default().apply(&two).unwrap(), PadicNum::one(&c));
        assert!(Weight::new(&[1]).apply(&two).unwrap().eq_at(&two, 6));
        // phi - 1 acts trivially on Z_p
        assert!(Weight::new(&[-1, 1]).apply(&two).unwrap().eq_at(&PadicNum::one(&c), 6));
        let five = PadicNum::from_i64(&c, 5);
        assert!(Weight::new(&[-1]).apply(&five).is_err());
    }

    #[test]
    fn weight_apply_is_additive_in_extension() {
        let c = PadicContext::unramified(7, 5, 2).unwrap();
        let x = PadicNum::from_coords(&c, &[BigInt::from(3), BigInt::from(2)]);
        let w1 = Weight::new(&[1, 2]);
        let w2 = Weight::new(&[-3, 1, 1]);
        let lhs = (&w1 + &w2).apply(&x).unwrap();
        let rhs = w1.apply(&x).unwrap() * w2.apply(&x).unwrap();
        assert!(lhs.eq_at(&rhs, 5));
    }

    #[test]
    fn scalar_lifts_to_higher_precision() {
        let lo = PadicContext::new(5, 3).unwrap();
        let hi = lo.with_cap(10).unwrap();
        let s = Scalar::ratio(1, 3);
        let x = s.to_padic(&hi).unwrap();
        assert_eq!(x.abs_prec(), Some(10));
        assert!((x.mul_int(3)).eq_at(&PadicNum::one(&hi), 10));
        assert_eq!(Scalar::int(4).as_integer(), Some(BigInt::from(4)));
        assert!(Scalar::ratio(1, 2).as_integer().is_none());
    }
}
