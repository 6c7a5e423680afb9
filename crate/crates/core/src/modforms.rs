//! Classical q-expansions and Weierstrass points `(a, b)` over series rings.

use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exact::{int_series_div_exact, int_series_inv, int_series_mul};
use crate::padic::{PadicContext, PadicNum};
use crate::series::QSeries;

/// `sigma_m(n)` for `n = 0..=order` (with `sigma_m(0) = 0`).
pub fn sigma_coeffs(m: u32, order: usize) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero(); order + 1];
    for d in 1..=order {
        let dm = BigInt::from(d).pow(m);
        let mut n = d;
        while n <= order {
            out[n] += &dm;
            n += d;
        }
    }
    out
}

/// `s_m(q) = sum_n sigma_m(n) q^n` in the given context.
pub fn sigma_series(ctx: &PadicContext, m: u32, order: usize) -> QSeries {
    QSeries::from_ints(ctx, 0, &sigma_coeffs(m, order))
}

/// Integer coefficients of the normalised Eisenstein series `E_k`,
/// `k in {2, 4, 6}`.
pub fn eisenstein_coeffs(k: u32, order: usize) -> Result<Vec<BigInt>> {
    let (m, c) = match k {
        2 => (1, -24),
        4 => (3, 240),
        6 => (5, -504),
        _ => return Err(Error::Parameter(alloc::format!("E_{k} is not provided"))),
    };
    let mut s = sigma_coeffs(m, order);
    for x in s.iter_mut() {
        *x *= c;
    }
    s[0] = BigInt::one();
    Ok(s)
}

pub fn eisenstein(ctx: &PadicContext, k: u32, order: usize) -> Result<QSeries> {
    Ok(QSeries::from_ints(ctx, 0, &eisenstein_coeffs(k, order)?))
}

/// `Delta = (E4^3 - E6^2) / 1728`, coefficients of `q^0..=q^order`.
pub fn delta_coeffs(order: usize) -> Vec<BigInt> {
    let e4 = eisenstein_coeffs(4, order).expect("E4");
    let e6 = eisenstein_coeffs(6, order).expect("E6");
    let e4_3 = int_series_mul(&int_series_mul(&e4, &e4, order), &e4, order);
    let e6_2 = int_series_mul(&e6, &e6, order);
    let diff: Vec<BigInt> = e4_3.iter().zip(&e6_2).map(|(a, b)| a - b).collect();
    int_series_div_exact(&diff, &BigInt::from(1728)).expect("E4^3 - E6^2 is divisible by 1728")
}

/// `j = E4^3 / Delta`: coefficients of `q^-1..=q^order`.
pub fn j_coeffs(order: usize) -> Vec<BigInt> {
    let e4 = eisenstein_coeffs(4, order + 1).expect("E4");
    let e4_3 = int_series_mul(&int_series_mul(&e4, &e4, order + 1), &e4, order + 1);
    let delta = delta_coeffs(order + 2);
    let d_over_q = &delta[1..];
    let inv = int_series_inv(d_over_q, order + 1).expect("Delta/q has constant term 1");
    int_series_mul(&e4_3, &inv, order + 1)
}

/// A pair `(a, b)` describing `y^2 = x^3 + a x + b` over a series ring.
#[derive(Clone, Debug, PartialEq)]
pub struct ModularPoint {
    pub a: QSeries,
    pub b: QSeries,
}

/// Fixed constants of the Weierstrass normalisation.
const J_SCALE: i64 = -110_592; // -2^12 * 27

impl ModularPoint {
    pub fn new(a: QSeries, b: QSeries) -> Self {
        ModularPoint { a, b }
    }

    pub fn context(&self) -> &PadicContext {
        self.a.context()
    }

    pub fn order(&self) -> i64 {
        self.a.order().min(self.b.order())
    }

    /// `4a^3 + 27b^2`.
    pub fn four_a3_27b2(&self) -> QSeries {
        &self.a.pow(3).mul_int(4) + &self.b.pow(2).mul_int(27)
    }

    /// `Delta(a, b) = -16 (4a^3 + 27b^2)`.
    pub fn discriminant(&self) -> QSeries {
        self.four_a3_27b2().mul_int(-16)
    }

    /// `j = -2^12 3^3 a^3 / Delta(a, b)`, so that
    /// `1/j = (4a^3 + 27b^2) / (2^8 3^3 a^3)`.
    pub fn j_invariant(&self) -> Result<QSeries> {
        if self.a.q_valuation() != Some(0) {
            return Err(Error::Domain("j needs a unit a".into()));
        }
        self.a.pow(3).mul_int(J_SCALE).checked_div(&self.discriminant())
    }

    /// `(lambda^-4 a, lambda^-6 b)`.
    pub fn act(&self, lambda: &PadicNum) -> Result<Self> {
        let l = lambda.inv()?;
        Ok(ModularPoint { a: self.a.scale(&l.pow(4)), b: self.b.scale(&l.pow(6)) })
    }

    /// Points with `a, b` units of `R[[q]]` and `4a^3 + 27b^2` in `q R[[q]]^x`.
    pub fn is_bad_type(&self) -> bool {
        if !self.a.is_unit_series() || !self.b.is_unit_series() {
            return false;
        }
        let d = self.four_a3_27b2();
        (d.lowest()..=0).all(|n| d.coeff(n).is_zero()) && d.order() >= 1 && d.coeff(1).is_unit()
    }

    /// Points with `a, b` and `4a^3 + 27b^2` units of `R[[q]]`.
    pub fn is_good_type(&self) -> bool {
        self.a.is_unit_series() && self.b.is_unit_series() && self.four_a3_27b2().is_unit_series()
    }

    /// `E_{p-1}(a, b)` as a polynomial in `a, b`: `E4 = -48a` for `p = 5`,
    /// `E6 = -864b` for `p = 7`.
    pub fn hasse(&self) -> Result<QSeries> {
        match self.context().p() {
            5 => Ok(self.a.mul_int(-48)),
            7 => Ok(self.b.mul_int(-864)),
            p => Err(Error::Parameter(alloc::format!("ordinarity test is provided for p = 5, 7, not {p}"))),
        }
    }

    /// Ordinary iff `E_{p-1}(a, b)` is a unit of the p-adically completed
    /// Laurent series ring, i.e. integral and nonzero mod p.
    pub fn is_ordinary(&self) -> Result<bool> {
        let e = self.hasse()?;
        Ok(e.is_integral() && e.coeffs().iter().any(PadicNum::is_unit))
    }

    /// `f^1_q = (2a dq(b) - 3b dq(a)) / Delta(a, b)`.
    pub fn hurlburt(&self) -> Result<QSeries> {
        let num = &(&self.a * &self.b.dq()).mul_int(2) - &(&self.b * &self.a.dq()).mul_int(3);
        num.checked_div(&self.discriminant())
    }

    /// The point `(a(g(q)), b(g(q)))`.
    pub fn compose(&self, g: &QSeries) -> Result<Self> {
        Ok(ModularPoint { a: self.a.compose(g)?, b: self.b.compose(g)? })
    }
}

/// `a_{4,oo} = -E4/48` and `a_{6,oo} = -E6/864`.
pub fn tate_point(ctx: &PadicContext, order: usize) -> ModularPoint {
    let scale = |k: u32, d: i64| -> QSeries {
        let c = eisenstein_coeffs(k, order).expect("E4/E6");
        let r: Vec<BigRational> = c.into_iter().map(|x| BigRational::new(x, BigInt::from(d))).collect();
        QSeries::from_rationals(ctx, 0, &r).expect("48 and 864 are p-adic units")
    };
    ModularPoint { a: scale(4, -48), b: scale(6, -864) }
}

/// The expansion of `j_oo` in the context.
pub fn j_series(ctx: &PadicContext, order: usize) -> QSeries {
    QSeries::from_ints(ctx, -1, &j_coeffs(order))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    fn ctx() -> PadicContext {
        PadicContext::new(5, 8).unwrap()
    }

    #[test]
    fn divisor_sums() {
        let s3 = sigma_coeffs(3, 4);
        assert_eq!(s3, ints(&[0, 1, 9, 28, 73]));
        assert_eq!(sigma_coeffs(5, 2)[2], BigInt::from(33));
    }

    #[test]
    fn eisenstein_leading_terms() {
        assert_eq!(eisenstein_coeffs(4, 2).unwrap(), ints(&[1, 240, 2160]));
        assert_eq!(eisenstein_coeffs(6, 2).unwrap(), ints(&[1, -504, -16632]));
        assert_eq!(eisenstein_coeffs(2, 2).unwrap(), ints(&[1, -24, -72]));
        assert!(eisenstein_coeffs(8, 2).is_err());
    }

    #[test]
    fn delta_and_j_leading_terms() {
        assert_eq!(delta_coeffs(4), ints(&[0, 1, -24, 252, -1472]));
        assert_eq!(j_coeffs(2), ints(&[1, 744, 196884, 21493760]));
    }

    #[test]
    fn tate_point_is_bad_and_ordinary() {
        let c = ctx();
        let t = tate_point(&c, 20);
        let a0 = t.a.coeff(0);
        assert!(a0.mul_int(-48).eq_at(&PadicNum::one(&c), 8));
        let d = t.discriminant();
        assert_eq!(d.q_valuation(), Some(1));
        assert!(d.eq_at(&QSeries::from_ints(&c, 0, &delta_coeffs(20)), 8));
        assert!(t.is_bad_type());
        assert!(!t.is_good_type());
        assert!(t.is_ordinary().unwrap());
        let j = t.j_invariant().unwrap();
        assert!(j.eq_at(&j_series(&c, 19), 8));
    }

    #[test]
    fn supersingular_and_unsupported_primes() {
        let c = ctx();
        let t = tate_point(&c, 5);
        let bad = ModularPoint::new(t.a.mul_int(5), t.b.clone());
        assert!(!bad.is_ordinary().unwrap());
        let c11 = PadicContext::new(11, 4).unwrap();
        assert!(tate_point(&c11, 3).is_ordinary().is_err());
    }

    #[test]
    fn hurlburt_on_constant_and_scaled_points() {
        let c = ctx();
        let pt = ModularPoint::new(
            QSeries::constant(&PadicNum::from_i64(&c, 2), 6),
            QSeries::constant(&PadicNum::from_i64(&c, 3), 6),
        );
        assert!(pt.hurlburt().unwrap().eq_at(&QSeries::zero(&c, 6), 8));
        let t = tate_point(&c, 12);
        let h = t.hurlburt().unwrap();
        assert!(h.is_integral());
        let lam = PadicNum::from_i64(&c, 7);
        let hs = t.act(&lam).unwrap().hurlburt().unwrap();
        assert!(hs.eq_at(&h.scale(&lam.pow(2)), 8));
    }

    #[test]
    fn j_is_invariant_under_scaling() {
        let c = ctx();
        let t = tate_point(&c, 10);
        let j1 = t.j_invariant().unwrap();
        let j2 = t.act(&PadicNum::from_i64(&c, 3)).unwrap().j_invariant().unwrap();
        assert!(j1.eq_at(&j2, 8));
    }
}
