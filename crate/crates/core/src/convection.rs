//! The characters `Psi_q`, `Psi_p`, the convection and heat operators built
//! from them, the constant equation for `beta`, the map `iota`, and the
//! coefficientwise linear solver behind the solution census.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::error::{Error, Result};
use crate::modforms::{j_series, tate_point, ModularPoint};
use crate::padic::{PadicContext, PadicNum, Scalar};
use crate::series::QSeries;
use crate::solutions::guard_digits;

/// `Psi_q(u) = dq(u) / u`; for `u = q^e w` this is `e + dq(w)/w`.
pub fn psi_q(u: &QSeries) -> Result<QSeries> {
    let e = u.q_valuation().ok_or(Error::DivisionByZero)?;
    let w = u.shift(-e);
    let w = w.truncate(w.order());
    let r = w.dq().checked_div(&w)?;
    Ok(r.add_scalar(&PadicNum::from_i64(u.context(), e)))
}

/// `Psi_p(u) = (1/p) log(phi(u) / u^p)`, evaluated as
/// `sum_k (-1)^(k-1) p^(k-1) X^k / k` with `X = (phi(u)/u^p - 1)/p`.
/// Loses one digit of absolute precision.
pub fn psi_p(u: &QSeries) -> Result<QSeries> {
    let ctx = u.context().clone();
    let e = u.q_valuation().ok_or(Error::DivisionByZero)?;
    // phi(q^e) / (q^e)^p = 1
    let w = u.shift(-e);
    if !w.coeff(0).is_unit() {
        return Err(Error::Domain("Psi_p needs a unit series".into()));
    }
    let ratio = w.phi_star().checked_div(&w.pow(ctx.p()))?;
    let ratio = ratio.truncate(w.order());
    let x = ratio.add_scalar(&-PadicNum::one(&ctx)).div_int(ctx.p() as i64);
    if !x.is_integral() {
        return Err(Error::Domain("phi(u)/u^p is not 1 mod p".into()));
    }
    let target = x.eff_prec().unwrap_or(ctx.cap() as i64);
    let p = ctx.p() as i64;
    let mut sum = x.clone();
    let mut power = x.clone();
    let mut k: i64 = 2;
    let mut pk = PadicNum::from_i64(&ctx, p);
    loop {
        // v(p^(k-1) X^k / k) >= k - 1 - floor(log_p k)
        if k - 1 - ilog(k, p) >= target {
            break;
        }
        power = &power * &x;
        let term = power.scale(&pk).div_int(k);
        sum = if k % 2 == 0 { &sum - &term } else { &sum + &term };
        pk = pk.mul_int(p);
        k += 1;
    }
    Ok(sum)
}

fn ilog(k: i64, p: i64) -> i64 {
    let mut v = 0;
    let mut x = k;
    while x >= p {
        x /= p;
        v += 1;
    }
    v
}

/// Right side of the equation.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Rhs {
    Zero,
    MinusOne,
}

impl Rhs {
    pub fn value(self) -> i64 {
        match self {
            Rhs::Zero => 0,
            Rhs::MinusOne => -1,
        }
    }
}

/// `Psi_q + kappa Psi_p + kappa z phi Psi_p = rhs`.
///
/// `kappa_declared_integer` records the caller's assertion that `kappa` is a
/// positive integer; it decides zero pivots exactly in [`term_solver`].
#[derive(Clone, Debug)]
pub struct EquationParams {
    pub kappa: Scalar,
    pub z: Scalar,
    pub rhs: Rhs,
    pub kappa_declared_integer: bool,
}

impl EquationParams {
    pub fn new(kappa: Scalar, z: Scalar, rhs: Rhs) -> Result<Self> {
        let declared = kappa.as_integer().is_some_and(|k| k > BigInt::from(0));
        Ok(EquationParams { kappa, z, rhs, kappa_declared_integer: declared })
    }

    /// Same equation with `kappa` treated as a generic p-adic unit even when
    /// its value happens to be an integer.
    pub fn undeclared(mut self) -> Self {
        self.kappa_declared_integer = false;
        self
    }

    /// `kappa` a unit and `z` in `pZ_p` (or `pO`).
    pub fn validate(&self, ctx: &PadicContext) -> Result<()> {
        let k = self.kappa.to_padic(ctx)?;
        if !k.is_unit() {
            return Err(Error::Parameter("kappa must be a p-adic unit".into()));
        }
        let z = self.z.to_padic(ctx)?;
        if !z.has_valuation_at_least(1) {
            return Err(Error::Parameter("z must be divisible by p".into()));
        }
        Ok(())
    }

    fn values(&self, ctx: &PadicContext) -> Result<(PadicNum, PadicNum)> {
        self.validate(ctx)?;
        Ok((self.kappa.to_padic(ctx)?, self.z.to_padic(ctx)?))
    }
}

/// Coefficientwise valuation summary of a residual.
#[derive(Clone, Debug)]
pub struct ResidualReport {
    pub residual: QSeries,
    /// `None` when every coefficient is exactly zero.
    pub min_coeff_valuation: Option<i64>,
    pub tolerance: i64,
    pub passed: bool,
}

impl ResidualReport {
    pub fn new(residual: QSeries, tolerance: i64) -> Self {
        let min_coeff_valuation = residual.min_coeff_valuation();
        let passed = residual.coeffs().iter().all(|c| c.has_valuation_at_least(tolerance));
        ResidualReport { residual, min_coeff_valuation, tolerance, passed }
    }
}

/// The operator `Psi_q(u) + kappa Psi_p(u) + kappa z phi(Psi_p(u))`.
pub fn operator(u: &QSeries, eq: &EquationParams) -> Result<QSeries> {
    let ctx = u.context();
    let (kappa, z) = eq.values(ctx)?;
    let pp = psi_p(u)?;
    let kz = &kappa * &z;
    let mut out = &psi_q(u)? + &pp.scale(&kappa);
    if !kz.is_exact_zero() {
        out = &out + &pp.phi_star().scale(&kz);
    }
    Ok(out)
}

/// `operator(u) - rhs`, judged at `tolerance` (default `N - 3`).
pub fn residual(u: &QSeries, eq: &EquationParams, tolerance: Option<i64>) -> Result<ResidualReport> {
    let ctx = u.context();
    let tol = tolerance.unwrap_or(ctx.cap() as i64 - 3);
    let r = operator(u, eq)?.add_scalar(&PadicNum::from_i64(ctx, -eq.rhs.value()));
    Ok(ResidualReport::new(r, tol))
}

/// Solves `Psi_p(beta) + z phi(Psi_p(beta)) = -1/kappa` with `beta` in `1 + pO`.
pub fn solve_beta(ctx: &PadicContext, eq: &EquationParams) -> Result<PadicNum> {
    let hi = ctx.with_cap(ctx.cap() + 2)?;
    let (kappa, z) = eq.values(&hi)?;
    let target = -(kappa.inv()?);
    let limit = hi.cap() as usize + 2;
    // y + z phi(y) = -1/kappa
    let mut y = target.clone();
    for _ in 0..limit {
        let next = &target - &(&z * &y.frobenius());
        let done = next.eq_at(&y, hi.cap() as i64);
        y = next;
        if done {
            break;
        }
    }
    // phi(b) - p b = p y, by b <- p phi^-1(b + y)
    let p = PadicNum::from_i64(&hi, hi.p() as i64);
    let mut b = PadicNum::zero(&hi);
    for _ in 0..limit {
        let next = &p * &(&b + &y).frobenius_inverse();
        let done = next.eq_at(&b, hi.cap() as i64);
        b = next;
        if done {
            break;
        }
    }
    b.pexp()?.reduce_abs(ctx.cap() as i64).with_context(ctx)
}

/// Residual of the constant equation for `beta`, judged at `N - 1`.
pub fn beta_residual(beta: &PadicNum, eq: &EquationParams) -> Result<ResidualReport> {
    let ctx = beta.context();
    let (kappa, z) = eq.values(ctx)?;
    let s = QSeries::constant(beta, 0);
    let pp = psi_p(&s)?;
    let lhs = &pp + &pp.phi_star().truncate(0).scale(&z);
    let r = lhs.add_scalar(&kappa.inv()?);
    Ok(ResidualReport::new(r, ctx.cap() as i64 - 1))
}

/// `iota(u, v) = (v^4 a_{4,oo}(uq), v^6 a_{6,oo}(uq))`.
pub fn encode_iota(u: &QSeries, v: &QSeries) -> Result<ModularPoint> {
    if !u.is_unit_series() || !v.is_unit_series() {
        return Err(Error::Domain("iota needs unit power series".into()));
    }
    let ctx = u.context();
    let order = u.order().min(v.order());
    let tate = tate_point(ctx, order.max(0) as usize);
    let pt = tate.compose(&u.truncate(order).shift(1))?;
    Ok(ModularPoint::new(&v.pow(4) * &pt.a, &v.pow(6) * &pt.b))
}

/// Result of [`IotaDecoder::decode`].
#[derive(Clone, Debug)]
pub struct Decoded {
    pub u: QSeries,
    pub v2: QSeries,
    /// Whether `v` itself (a square root of `v2`) exists over the context.
    pub v_exists: bool,
}

/// Inverse of `iota` on bad-type points. Holds the compositional inverse
/// `sigma` of `1/j_oo`, which is shared across decodes.
#[derive(Clone, Debug)]
pub struct IotaDecoder {
    sigma: QSeries,
    tate: ModularPoint,
}

impl IotaDecoder {
    pub fn new(ctx: &PadicContext, order: usize) -> Result<Self> {
        let j = j_series(ctx, order);
        let inv_j = QSeries::one(ctx, order as i64 + 2).checked_div(&j)?;
        let sigma = inv_j.truncate(order as i64).reverse()?;
        Ok(IotaDecoder { sigma, tate: tate_point(ctx, order) })
    }

    /// Recovers `(u, v^2)` from `iota(u, v)`: `uq = sigma(1/j(pt))` with
    /// `1/j = (4a^3 + 27b^2) / (2^8 3^3 a^3)`, then `v^4 = a / a_{4,oo}(uq)`,
    /// `v^6 = b / a_{6,oo}(uq)` and `v^2 = v^6 / v^4`.
    pub fn decode(&self, pt: &ModularPoint) -> Result<Decoded> {
        if !pt.is_bad_type() {
            return Err(Error::Domain("decode needs a bad-type point".into()));
        }
        let order = pt.order().min(self.sigma.order());
        let inv_j = pt.four_a3_27b2().checked_div(&pt.a.pow(3).mul_int(6912))?.truncate(order);
        let uq = self.sigma.compose(&inv_j)?;
        let tate = ModularPoint::new(self.tate.a.truncate(order), self.tate.b.truncate(order));
        let at = tate.compose(&uq)?;
        let v4 = pt.a.checked_div(&at.a)?;
        let v6 = pt.b.checked_div(&at.b)?;
        let v2 = v6.checked_div(&v4)?;
        let prec = v2.eff_prec().unwrap_or(pt.context().cap() as i64);
        if !(&v2 * &v2).eq_at(&v4, prec) {
            return Err(Error::NoSquareRoot);
        }
        let v_exists = v2.sqrt().is_ok();
        let shifted = uq.shift(-1);
        let u = QSeries::from_coeffs(uq.context(), 0, (0..=shifted.order()).map(|n| shifted.coeff(n)).collect());
        Ok(Decoded { u, v2, v_exists })
    }
}

/// How a coefficient was settled by [`term_solver`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PivotStatus {
    Determined,
    Free,
    Obstructed,
}

impl PivotStatus {
    pub fn name(self) -> &'static str {
        match self {
            PivotStatus::Determined => "determined",
            PivotStatus::Free => "free",
            PivotStatus::Obstructed => "obstructed",
        }
    }
}

/// One row of the census: exponent, valuation of the pivot `n - kappa`
/// (`None` for a zero pivot) and status.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PivotRow {
    pub n: i64,
    pub pivot_valuation: Option<i64>,
    pub status: PivotStatus,
}

/// Output of [`term_solver`].
#[derive(Clone, Debug)]
pub struct SolveCensus {
    pub rows: Vec<PivotRow>,
    pub free: Vec<i64>,
    pub obstructed: Vec<i64>,
    /// `w = log(u / c0)` with the supplied values at free positions.
    pub w: QSeries,
    /// `u = c0 exp(w)`.
    pub u: QSeries,
}

impl SolveCensus {
    pub fn parameter_count(&self) -> usize {
        self.free.len()
    }
}

/// Coefficientwise solver for `operator(u) = rhs` with `u(0) = c0`.
///
/// With `w = log(u / c0)` the equation is linear:
/// `(n - kappa) w_n + (kappa/p - kappa z) phi(w_{n/p}) [p | n]
///  + (kappa z / p) phi^2(w_{n/p^2}) [p^2 | n] = 0`.
/// Free positions take their value from `free_values` (default 0).
pub fn term_solver(
    ctx: &PadicContext,
    eq: &EquationParams,
    c0: &Scalar,
    order: i64,
    free_values: &BTreeMap<i64, Scalar>,
) -> Result<SolveCensus> {
    let n_cap = ctx.cap() as i64;
    let hi = ctx.with_cap(ctx.cap() + guard_digits(ctx.p(), order) + 2)?;
    let (kappa, z) = eq.values(&hi)?;
    let c0v = c0.to_padic(&hi)?;
    if !c0v.is_unit() {
        return Err(Error::Parameter("c0 must be a unit".into()));
    }
    // constant-term constraint
    let cst = QSeries::constant(&c0v, 0);
    let pc = psi_p(&cst)?;
    let lhs = (&pc.scale(&kappa) + &pc.phi_star().truncate(0).scale(&(&kappa * &z))).coeff(0);
    let rhs = PadicNum::from_i64(&hi, eq.rhs.value());
    let prec = c0v.abs_prec().unwrap_or(hi.cap() as i64).min(n_cap) - 1;
    if !lhs.eq_at(&rhs, prec) {
        return Err(Error::Parameter("c0 violates the constant-term equation".into()));
    }

    let p = hi.p() as i64;
    let c1 = &kappa.div_int(p) - &(&kappa * &z);
    let c2 = (&kappa * &z).div_int(p);
    let kappa_int = if eq.kappa_declared_integer { eq.kappa.as_integer() } else { None };
    let mut w = vec![PadicNum::zero(&hi); order.max(0) as usize + 1];
    let mut rows = Vec::new();
    let mut free = Vec::new();
    let mut obstructed = Vec::new();
    for n in 1..=order {
        let mut r = PadicNum::zero(&hi);
        if n % p == 0 {
            r = &r - &(&c1 * &w[(n / p) as usize].frobenius());
        }
        if n % (p * p) == 0 {
            r = &r - &(&c2 * &w[(n / (p * p)) as usize].frobenius_pow(2));
        }
        let pivot = &PadicNum::from_i64(&hi, n) - &kappa;
        let pivot_zero = match &kappa_int {
            Some(k) => *k == BigInt::from(n),
            None => pivot.has_valuation_at_least(n_cap),
        };
        let row = if pivot_zero {
            if r.has_valuation_at_least(n_cap) {
                free.push(n);
                w[n as usize] = match free_values.get(&n) {
                    Some(v) => v.to_padic(&hi)?,
                    None => PadicNum::zero(&hi),
                };
                PivotRow { n, pivot_valuation: None, status: PivotStatus::Free }
            } else {
                obstructed.push(n);
                PivotRow { n, pivot_valuation: None, status: PivotStatus::Obstructed }
            }
        } else {
            w[n as usize] = r.checked_div(&pivot)?;
            PivotRow { n, pivot_valuation: pivot.valuation(), status: PivotStatus::Determined }
        };
        rows.push(row);
    }
    let w = QSeries::from_coeffs(&hi, 0, w);
    let u = w.exp()?.scale(&c0v);
    Ok(SolveCensus {
        rows,
        free,
        obstructed,
        w: w.reduce_abs(n_cap).with_context(ctx)?,
        u: u.reduce_abs(n_cap).with_context(ctx)?,
    })
}

/// The exact rational `alpha / kappa`, the free value at `n = kappa` that
/// reproduces `u^z_{m,kappa,alpha}`.
pub fn alpha_over_kappa(alpha: i64, kappa: i64) -> Scalar {
    Scalar::rational(BigRational::new(BigInt::from(alpha), BigInt::from(kappa)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::solutions::u_mult;

    fn ctx() -> PadicContext {
        PadicContext::new(5, 8).unwrap()
    }

    #[test]
    fn psi_q_examples() {
        let c = ctx();
        let q = QSeries::q(&c, 10);
        assert!(psi_q(&q).unwrap().eq_at(&QSeries::one(&c, 10), 8));
        let k = QSeries::constant(&PadicNum::from_i64(&c, 3), 10);
        assert!(psi_q(&k).unwrap().eq_at(&QSeries::zero(&c, 10), 8));
        let u1 = QSeries::from_i64s(&c, 0, &[1, 2, 3, 4, 5, 6]);
        let u2 = QSeries::from_i64s(&c, 0, &[2, 0, 1, 1, 0, 7]);
        let lhs = psi_q(&(&u1 * &u2)).unwrap();
        let rhs = &psi_q(&u1).unwrap() + &psi_q(&u2).unwrap();
        assert!(lhs.eq_at(&rhs, 8));
    }

    #[test]
    fn psi_p_examples() {
        let c = ctx();
        assert!(psi_p(&QSeries::q(&c, 10)).unwrap().eq_at(&QSeries::zero(&c, 10), 7));
        let zeta = PadicNum::teichmuller(&c, &[2]).unwrap();
        assert!(psi_p(&QSeries::constant(&zeta, 5)).unwrap().eq_at(&QSeries::zero(&c, 5), 7));
        let six = PadicNum::from_i64(&c, 6);
        let got = psi_p(&QSeries::constant(&six, 0)).unwrap().coeff(0);
        // (1 - 5)/5 log 6
        let oracle = six.plog().unwrap().mul_int(-4).div_int(5);
        assert!(got.eq_at(&oracle, 7));
        assert_eq!(got.abs_prec(), Some(7));
    }

    #[test]
    fn psi_p_is_additive() {
        let c = PadicContext::new(7, 8).unwrap();
        let u1 = QSeries::from_i64s(&c, 0, &[3, 2, 3, 4, 5, 6, 1, 1]);
        let u2 = QSeries::from_i64s(&c, 0, &[2, 0, 1, 1, 0, 7, 9, 1]);
        let lhs = psi_p(&(&u1 * &u2)).unwrap();
        let rhs = &psi_p(&u1).unwrap() + &psi_p(&u2).unwrap();
        assert!(lhs.eq_at(&rhs, 7));
    }

    #[test]
    fn trivial_residual() {
        let c = ctx();
        let eq = EquationParams::new(Scalar::int(3), Scalar::int(5), Rhs::Zero).unwrap();
        let rep = residual(&QSeries::one(&c, 10), &eq, None).unwrap();
        assert!(rep.passed);
        assert!(EquationParams::new(Scalar::int(5), Scalar::int(0), Rhs::Zero).unwrap().validate(&c).is_err());
        assert!(EquationParams::new(Scalar::int(1), Scalar::int(1), Rhs::Zero).unwrap().validate(&c).is_err());
    }

    #[test]
    fn kernel_solution_residual() {
        let c = ctx();
        let zeta = PadicNum::teichmuller(&c, &[3]).unwrap();
        let u = u_mult(&c, &Scalar::int(5), 2, &Scalar::int(1), 30).unwrap().scale(&zeta);
        let eq = EquationParams::new(Scalar::int(2), Scalar::int(5), Rhs::Zero).unwrap();
        let rep = residual(&u, &eq, None).unwrap();
        assert!(rep.passed, "min valuation {:?}", rep.min_coeff_valuation);
    }

    #[test]
    fn beta_closed_form_and_residual() {
        let c = ctx();
        let eq = EquationParams::new(Scalar::int(1), Scalar::int(0), Rhs::MinusOne).unwrap();
        let beta = solve_beta(&c, &eq).unwrap();
        let oracle = PadicNum::from_rational(&c, &BigRational::new(5.into(), 4.into())).unwrap().pexp().unwrap();
        assert!(beta.eq_at(&oracle, 8));
        assert!(beta_residual(&beta, &eq).unwrap().passed);
        let eqm = EquationParams::new(Scalar::int(-1), Scalar::int(0), Rhs::MinusOne).unwrap();
        let betam = solve_beta(&c, &eqm).unwrap();
        let oracle = PadicNum::from_rational(&c, &BigRational::new((-5).into(), 4.into())).unwrap().pexp().unwrap();
        assert!(betam.eq_at(&oracle, 8));
        let zeta = PadicNum::teichmuller(&c, &[2]).unwrap();
        assert!(beta_residual(&(&beta * &zeta), &eq).unwrap().passed);
    }

    #[test]
    fn beta_in_unramified_extension() {
        let c = PadicContext::unramified(5, 8, 2).unwrap();
        let z = Scalar::Exact(vec![BigRational::from_integer(5.into()), BigRational::from_integer(10.into())]);
        let eq = EquationParams::new(Scalar::ratio(1, 3), z, Rhs::MinusOne).unwrap();
        let beta = solve_beta(&c, &eq).unwrap();
        assert!(beta_residual(&beta, &eq).unwrap().passed);
    }

    #[test]
    fn beta_inhomogeneous_series() {
        let c = ctx();
        let eq = EquationParams::new(Scalar::int(1), Scalar::int(5), Rhs::MinusOne).unwrap();
        let beta = solve_beta(&c, &eq).unwrap();
        let u = u_mult(&c, &Scalar::int(5), 1, &Scalar::int(2), 30).unwrap().scale(&beta);
        assert!(residual(&u, &eq, None).unwrap().passed);
    }

    #[test]
    fn iota_roundtrip_and_errors() {
        let c = ctx();
        let one = QSeries::one(&c, 12);
        let t = encode_iota(&one, &one).unwrap();
        let tate = tate_point(&c, 12);
        assert!(t.a.eq_at(&tate.a, 8) && t.b.eq_at(&tate.b, 8));
        let dec = IotaDecoder::new(&c, 12).unwrap();
        let d = dec.decode(&t).unwrap();
        assert!(d.u.eq_at(&one, 8) && d.v2.eq_at(&one, 8));
        let u = QSeries::from_i64s(&c, 0, &[2, 1, 0, 3, 1, 1, 4, 0, 2, 1, 1, 3, 1]);
        let v = QSeries::from_i64s(&c, 0, &[3, 1, 1, 0, 2, 1, 0, 1, 4, 1, 1, 2, 2]);
        let pt = encode_iota(&u, &v).unwrap();
        assert!(pt.is_bad_type());
        // (u, -v) encodes to the same point
        let pt2 = encode_iota(&u, &-&v).unwrap();
        assert!(pt.a.eq_at(&pt2.a, 8) && pt.b.eq_at(&pt2.b, 8));
        let d = dec.decode(&pt).unwrap();
        assert!(d.u.eq_at(&u, 8));
        assert!(d.v2.eq_at(&(&v * &v), 8));
        let good = ModularPoint::new(QSeries::one(&c, 5), QSeries::one(&c, 5));
        assert!(good.is_good_type());
        assert!(dec.decode(&good).is_err());
    }

    #[test]
    fn census_examples() {
        let c = ctx();
        let none = BTreeMap::new();
        let eq = EquationParams::new(Scalar::int(3), Scalar::int(0), Rhs::Zero).unwrap();
        let cen = term_solver(&c, &eq, &Scalar::int(1), 30, &none).unwrap();
        assert_eq!(cen.free, vec![3]);
        assert!(cen.obstructed.is_empty());
        let eq = EquationParams::new(Scalar::ratio(1, 2), Scalar::int(0), Rhs::Zero).unwrap();
        let cen = term_solver(&c, &eq, &Scalar::int(1), 30, &none).unwrap();
        assert!(cen.free.is_empty());
        assert!(cen.u.eq_at(&QSeries::one(&c, 30), 8));
        let eq = EquationParams::new(Scalar::int(2), Scalar::int(0), Rhs::Zero).unwrap();
        assert_eq!(term_solver(&c, &eq, &Scalar::int(1), 30, &none).unwrap().free, vec![2]);
    }

    #[test]
    fn census_reproduces_multiplicative_family() {
        let c = ctx();
        let eq = EquationParams::new(Scalar::int(1), Scalar::int(5), Rhs::Zero).unwrap();
        let mut vals = BTreeMap::new();
        vals.insert(1, alpha_over_kappa(3, 1));
        let cen = term_solver(&c, &eq, &Scalar::int(1), 30, &vals).unwrap();
        assert_eq!(cen.free, vec![1]);
        let u = u_mult(&c, &Scalar::int(5), 1, &Scalar::int(3), 30).unwrap();
        assert!(cen.u.eq_at(&u, 5));
    }

    #[test]
    fn census_rejects_bad_constant_term() {
        let c = ctx();
        let eq = EquationParams::new(Scalar::int(2), Scalar::int(0), Rhs::Zero).unwrap();
        assert!(term_solver(&c, &eq, &Scalar::int(6), 10, &BTreeMap::new()).is_err());
    }
}
