//! Witnesses that perturbing `z` or `alpha` changes the multiplicative
//! family mod p, and the exact valuation law for `b_n(pz, p) - b_n(pz0, p)`.

use alloc::vec::Vec;

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::error::{Error, Result};
use crate::exact::rational_valuation;
use crate::padic::{PadicContext, PadicNum, Scalar};
use crate::series::QSeries;
use crate::solutions::{u_mult, BnTable};

/// Exact `v_p(b_n(pz, p) - b_n(pz0, p))`.
pub fn bn_diff_valuation(p: u64, n: u32, z: &BigRational, z0: &BigRational) -> Result<i64> {
    if z == z0 {
        return Err(Error::Parameter("z and z0 must differ".into()));
    }
    let pr = BigRational::from_integer(BigInt::from(p));
    let a = BnTable::new(n as usize, &(&pr * z), &pr)?;
    let b = BnTable::new(n as usize, &(&pr * z0), &pr)?;
    let d = a.get(n as i64) - b.get(n as i64);
    rational_valuation(&d, p).ok_or_else(|| Error::Domain(alloc::format!("b_{n} values coincide")))
}

/// Smallest exponent `<= m` at which `f` and `g` differ mod p.
///
/// Both series must have integral coefficients known mod p at every
/// exponent compared.
pub fn modp_congruent(f: &QSeries, g: &QSeries, m: i64) -> Result<Option<i64>> {
    if f.lowest() < 0 || g.lowest() < 0 {
        return Err(Error::Domain("congruence is tested on power series".into()));
    }
    let top = m.min(f.order()).min(g.order());
    for n in 0..=top {
        let d = &f.coeff(n) - &g.coeff(n);
        if d.abs_prec().is_some_and(|a| a < 1) {
            return Err(Error::PrecisionExhausted);
        }
        if !d.has_valuation_at_least(1) {
            return Ok(Some(n));
        }
    }
    Ok(None)
}

/// Which parameter differs between the two families.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Scenario {
    /// `alpha = alpha0`, `z != z0`.
    ZPerturbed,
    /// `alpha != alpha0`, `z = z0`.
    AlphaPerturbed,
    /// `alpha = alpha0`, `z = z0`; only `eta` may differ.
    Unperturbed,
}

impl Scenario {
    pub fn name(self) -> &'static str {
        match self {
            Scenario::ZPerturbed => "z-perturbed",
            Scenario::AlphaPerturbed => "alpha-perturbed",
            Scenario::Unperturbed => "unperturbed",
        }
    }
}

/// One row of the valuation table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ValuationRow {
    pub n: u32,
    pub valuation: i64,
}

/// Inputs to [`instability_witness`].
#[derive(Clone, Debug)]
pub struct WitnessParams {
    pub kappa: u64,
    pub alpha: Scalar,
    pub alpha0: Scalar,
    pub z: Scalar,
    pub z0: Scalar,
    pub eta: PadicNum,
    pub eta0: PadicNum,
    /// Truncation order `M`.
    pub order: i64,
    /// Rows `n = 1..=table_rows` of the valuation table (z-perturbed only).
    pub table_rows: u32,
}

#[derive(Clone, Debug)]
pub struct InstabilityWitness {
    pub scenario: Scenario,
    /// First exponent where `eta u^z` and `eta0 u^z0` differ mod p.
    /// `None` means no disagreement up to the truncation order, which is
    /// inconclusive rather than a proof of congruence.
    pub first_bad_exponent: Option<i64>,
    pub valuation_table: Vec<ValuationRow>,
}

impl InstabilityWitness {
    /// The common value of the valuation table when it is constant.
    pub fn constant_valuation(&self) -> Option<i64> {
        let first = self.valuation_table.first()?.valuation;
        self.valuation_table.iter().all(|r| r.valuation == first).then_some(first)
    }
}

fn same(a: &Scalar, b: &Scalar, ctx: &PadicContext) -> Result<bool> {
    match (a.as_rational(), b.as_rational()) {
        (Some(x), Some(y)) => Ok(x == y),
        _ => Ok(a.to_padic(ctx)?.eq_at(&b.to_padic(ctx)?, ctx.cap() as i64)),
    }
}

/// Builds `eta u^z_{m,kappa,alpha}` and `eta0 u^{z0}_{m,kappa,alpha0}` and
/// reports where they first differ mod p.
pub fn instability_witness(ctx: &PadicContext, w: &WitnessParams) -> Result<InstabilityWitness> {
    let same_alpha = same(&w.alpha, &w.alpha0, ctx)?;
    let same_z = same(&w.z, &w.z0, ctx)?;
    let scenario = match (same_alpha, same_z) {
        (true, false) => Scenario::ZPerturbed,
        (false, true) => Scenario::AlphaPerturbed,
        (true, true) => Scenario::Unperturbed,
        (false, false) => return Err(Error::Parameter("perturb either alpha or z, not both".into())),
    };
    if !w.eta.is_unit() || !w.eta0.is_unit() {
        return Err(Error::Parameter("eta and eta0 must be units".into()));
    }
    for s in [&w.z, &w.z0] {
        if !s.to_padic(ctx)?.has_valuation_at_least(0) {
            return Err(Error::Parameter("z and z0 must be p-adic integers".into()));
        }
    }
    let f = u_mult(ctx, &w.z, w.kappa, &w.alpha, w.order)?.scale(&w.eta);
    let g = u_mult(ctx, &w.z0, w.kappa, &w.alpha0, w.order)?.scale(&w.eta0);
    let first_bad_exponent = modp_congruent(&f, &g, w.order)?;
    let mut valuation_table = Vec::new();
    if scenario == Scenario::ZPerturbed {
        let (z, z0) = match (w.z.as_rational(), w.z0.as_rational()) {
            (Some(z), Some(z0)) => (z, z0),
            _ => return Err(Error::Parameter("the valuation table needs rational z, z0".into())),
        };
        for n in 1..=w.table_rows {
            valuation_table.push(ValuationRow { n, valuation: bn_diff_valuation(ctx.p(), n, &z, &z0)? });
        }
    }
    Ok(InstabilityWitness { scenario, first_bad_exponent, valuation_table })
}

/// The observed constant valuation against the two candidate formulas
/// `v_p(z - z0) + 1` and `v_p(z) + 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ValuationLaw {
    pub z: BigRational,
    pub z0: BigRational,
    pub observed: Option<i64>,
    pub via_difference: i64,
    /// `None` when `z = 0`.
    pub via_z: Option<i64>,
}

impl ValuationLaw {
    pub fn matches_difference(&self) -> bool {
        self.observed == Some(self.via_difference)
    }

    pub fn matches_z(&self) -> bool {
        self.observed.is_some() && self.observed == self.via_z
    }
}

/// Valuation of `b_n(pz, p) - b_n(pz0, p)` for `n = 1..=rows`, summarised.
pub fn valuation_law(p: u64, z: &BigRational, z0: &BigRational, rows: u32) -> Result<ValuationLaw> {
    let vals = (1..=rows).map(|n| bn_diff_valuation(p, n, z, z0)).collect::<Result<Vec<_>>>()?;
    let observed = vals.first().copied().filter(|v| vals.iter().all(|x| x == v));
    let via_difference = rational_valuation(&(z - z0), p).expect("z != z0") + 1;
    Ok(ValuationLaw {
        z: z.clone(),
        z0: z0.clone(),
        observed,
        via_difference,
        via_z: rational_valuation(z, p).map(|v| v + 1),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(n))
    }

    fn ctx() -> PadicContext {
        PadicContext::new(5, 8).unwrap()
    }

    fn params(c: &PadicContext, alpha: i64, alpha0: i64, z: i64, z0: i64) -> WitnessParams {
        WitnessParams {
            kappa: 1,
            alpha: Scalar::int(alpha),
            alpha0: Scalar::int(alpha0),
            z: Scalar::int(z),
            z0: Scalar::int(z0),
            eta: PadicNum::one(c),
            eta0: PadicNum::one(c),
            order: 30,
            table_rows: 10,
        }
    }

    #[test]
    fn first_difference_valuation() {
        // b_1(x, 5) = (1 - x) / (1 - 5); the difference at z = 1, z0 = 0 is 5/4
        assert_eq!(bn_diff_valuation(5, 1, &r(1), &r(0)).unwrap(), 1);
        assert_eq!(bn_diff_valuation(5, 1, &r(5), &r(0)).unwrap(), 2);
        assert_eq!(bn_diff_valuation(5, 3, &r(0), &r(5)).unwrap(), 2);
        assert!(bn_diff_valuation(5, 1, &r(2), &r(2)).is_err());
    }

    #[test]
    fn congruence_mod_p() {
        let c = ctx();
        let one = QSeries::one(&c, 5);
        assert_eq!(modp_congruent(&one, &one, 5).unwrap(), None);
        let f = QSeries::from_i64s(&c, 0, &[1, 5, 0, 0, 0, 0]);
        assert_eq!(modp_congruent(&one, &f, 5).unwrap(), None);
        let g = QSeries::from_i64s(&c, 0, &[1, 1, 0, 0, 0, 0]);
        assert_eq!(modp_congruent(&one, &g, 5).unwrap(), Some(1));
    }

    #[test]
    fn witnesses() {
        let c = ctx();
        let w = instability_witness(&c, &params(&c, 2, 1, 0, 0)).unwrap();
        assert_eq!(w.scenario, Scenario::AlphaPerturbed);
        assert_eq!(w.first_bad_exponent, Some(1));
        let w = instability_witness(&c, &params(&c, 1, 1, 5, 10)).unwrap();
        assert_eq!(w.scenario, Scenario::ZPerturbed);
        assert!(w.first_bad_exponent.is_some_and(|e| e <= 30));
        assert_eq!(w.constant_valuation(), Some(2));
        let w = instability_witness(&c, &params(&c, 1, 1, 5, 5)).unwrap();
        assert_eq!(w.scenario, Scenario::Unperturbed);
        assert_eq!(w.first_bad_exponent, None);
        assert!(instability_witness(&c, &params(&c, 2, 1, 5, 0)).is_err());
    }

    #[test]
    fn law_follows_the_difference() {
        let law = valuation_law(7, &r(2), &r(7 * 2 + 2), 10).unwrap();
        assert_eq!(law.observed, Some(2));
        assert!(law.matches_difference());
        assert!(!law.matches_z());
        let law = valuation_law(5, &r(5), &r(0), 10).unwrap();
        assert!(law.matches_difference() && law.matches_z());
    }
}
