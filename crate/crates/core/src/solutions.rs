//! The rational functions `b_n(x, y)` and the closed-form solution families.

use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exact::RatPoly;
use crate::modforms::{tate_point, ModularPoint};
use crate::padic::{PadicContext, PadicNum, Scalar};
use crate::series::QSeries;

/// `b_{-1}, b_0, ..., b_n` at a rational point, from
/// `b_n = ((1 - x) b_{n-1} + x b_{n-2}) / (1 - y^n)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BnTable {
    pub x: BigRational,
    pub y: BigRational,
    /// `entries[k]` is `b_{k-1}`.
    pub entries: Vec<BigRational>,
}

impl BnTable {
    pub fn new(n: usize, x: &BigRational, y: &BigRational) -> Result<Self> {
        let one = BigRational::one();
        let mut entries = vec![BigRational::zero(), one.clone()];
        let mut yn = one.clone();
        for _ in 1..=n {
            yn = &yn * y;
            let den = &one - &yn;
            if den.is_zero() {
                return Err(Error::SingularDenominator);
            }
            let k = entries.len();
            let b = ((&one - x) * &entries[k - 1] + x * &entries[k - 2]) / den;
            entries.push(b);
        }
        Ok(BnTable { x: x.clone(), y: y.clone(), entries })
    }

    /// `b_n` for `n >= -1`.
    pub fn get(&self, n: i64) -> &BigRational {
        &self.entries[(n + 1) as usize]
    }
}

/// `b_n(x, y)` as an exact rational.
pub fn b_eval(n: i64, x: &BigRational, y: &BigRational) -> Result<BigRational> {
    if n < -1 {
        return Err(Error::Parameter("b_n is defined for n >= -1".into()));
    }
    if n == -1 {
        return Ok(BigRational::zero());
    }
    Ok(BnTable::new(n as usize, x, y)?.get(n).clone())
}

/// Boundary line for [`b_closed`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BoundaryLine {
    /// `y = 0`: `b_n(x, 0) = (1 + (-1)^n x^(n+1)) / (1 + x)`.
    YZero,
    /// `x = 0`: `b_n(0, y) = 1 / ((1 - y)(1 - y^2)...(1 - y^n))`.
    XZero,
}

/// Closed forms of `b_n` on the two boundary lines.
pub fn b_closed(n: u32, line: BoundaryLine, t: &BigRational) -> Result<BigRational> {
    let one = BigRational::one();
    match line {
        BoundaryLine::YZero => {
            let denom = &one + t;
            if denom.is_zero() {
                // limit of the alternating geometric sum
                return Ok(BigRational::from_integer(BigInt::from(n + 1)));
            }
            let sign = if n.is_multiple_of(2) { one.clone() } else { -one.clone() };
            Ok((&one + sign * num_traits::pow(t.clone(), n as usize + 1)) / denom)
        }
        BoundaryLine::XZero => {
            let mut den = one.clone();
            let mut yk = one.clone();
            for _ in 1..=n {
                yk = &yk * t;
                den *= &one - &yk;
            }
            if den.is_zero() {
                return Err(Error::SingularDenominator);
            }
            Ok(one / den)
        }
    }
}

/// `b_n(x, 0)` as a polynomial in `x`.
pub fn b_poly_y0(n: u32) -> RatPoly {
    let one_minus_x = RatPoly::from_ints(&[1, -1]);
    let x = RatPoly::x();
    let mut prev = RatPoly::default();
    let mut cur = RatPoly::from_ints(&[1]);
    for _ in 0..n {
        let next = one_minus_x.mul(&cur).add(&x.mul(&prev));
        prev = cur;
        cur = next;
    }
    cur
}

/// `d b_n / dx` at `(0, 0)`.
pub fn db_dx_at_origin(n: u32) -> BigRational {
    b_poly_y0(n).derivative().coeff(0)
}

/// Checks the family preconditions: `kappa` a positive integer prime to `p`.
fn check_kappa(ctx: &PadicContext, kappa: u64) -> Result<()> {
    if kappa == 0 || kappa.is_multiple_of(ctx.p()) {
        return Err(Error::Parameter(alloc::format!("kappa = {kappa} must be a positive integer prime to p")));
    }
    Ok(())
}

/// Digits needed above `N` to absorb the losses of an exponential and of
/// divisions by `p^n` up to `q^order`.
pub(crate) fn guard_digits(p: u64, order: i64) -> u32 {
    let order = order.max(1) as u64;
    let mut fact = 0u64;
    let mut pk = p;
    while pk <= order {
        fact += order / pk;
        pk *= p;
    }
    let mut logp = 0u32;
    let mut x = order;
    while x >= p {
        x /= p;
        logp += 1;
    }
    fact as u32 + logp + 2
}

/// `b_n(pz, p)` for `n = 0..=count` in the given context.
fn bn_padic(ctx: &PadicContext, z: &PadicNum, count: usize) -> Vec<PadicNum> {
    let one = PadicNum::one(ctx);
    let p = PadicNum::from_i64(ctx, ctx.p() as i64);
    let x = &p * z;
    let mut out = vec![one.clone()];
    let mut prev = PadicNum::zero(ctx);
    let mut pn = one.clone();
    for _ in 1..=count {
        pn = &pn * &p;
        let den = &one - &pn;
        let b = (&(&one - &x) * &out[out.len() - 1] + &x * &prev).checked_div(&den).expect("1 - p^n is a unit");
        prev = out[out.len() - 1].clone();
        out.push(b);
    }
    out
}

/// Exponents `kappa p^n <= order`.
fn tower(p: u64, kappa: u64, order: i64) -> Vec<(usize, i64)> {
    let mut out = Vec::new();
    let mut e = kappa as i64;
    let mut n = 0;
    while e <= order {
        out.push((n, e));
        n += 1;
        e *= p as i64;
    }
    out
}

/// `sum_n b_n(pz, p) phi^n(alpha) q^(kappa p^n)` to `q^order`, computed in
/// `ctx` (callers may pass an elevated context).
fn additive_in(
    ctx: &PadicContext,
    z: &Scalar,
    kappa: u64,
    alpha: &Scalar,
    order: i64,
    integrate: bool,
) -> Result<QSeries> {
    let zp = z.to_padic(ctx)?;
    let a = alpha.to_padic(ctx)?;
    let tw = tower(ctx.p(), kappa, order);
    let b = bn_padic(ctx, &zp, tw.len());
    let mut coeffs = vec![PadicNum::zero(ctx); order.max(0) as usize + 1];
    for (n, e) in tw {
        let mut c = &b[n] * &a.frobenius_pow(n as u32);
        if integrate {
            c = c.div_int(e);
        }
        coeffs[e as usize] = c;
    }
    Ok(QSeries::from_coeffs(ctx, 0, coeffs))
}

/// `u^z_{a,kappa,alpha} = sum_{n >= 0} b_n(pz, p) phi^n(alpha) q^(kappa p^n)`.
pub fn u_additive(ctx: &PadicContext, z: &Scalar, kappa: u64, alpha: &Scalar, order: i64) -> Result<QSeries> {
    check_kappa(ctx, kappa)?;
    additive_in(ctx, z, kappa, alpha, order, false)
}

/// `u^z_{m,kappa,alpha} = exp(int u^z_{a,kappa,alpha} dq/q)`.
///
/// Computed with extra p-adic digits and truncated back to the context's
/// precision; integrality is checked by the caller via
/// [`QSeries::is_integral`].
pub fn u_mult(ctx: &PadicContext, z: &Scalar, kappa: u64, alpha: &Scalar, order: i64) -> Result<QSeries> {
    check_kappa(ctx, kappa)?;
    let hi = ctx.with_cap(ctx.cap() + guard_digits(ctx.p(), order))?;
    let f = additive_in(&hi, z, kappa, alpha, order, true)?;
    f.exp()?.reduce_abs(ctx.cap() as i64).with_context(ctx)
}

/// `(v^4 a_{4,oo}(g), v^6 a_{6,oo}(g))` for `g = eta q w`.
fn modular_from(ctx: &PadicContext, eta: &PadicNum, w: &QSeries, v: &QSeries, order: i64) -> Result<ModularPoint> {
    let g = w.scale(eta).shift(1).truncate(order);
    let tate = tate_point(ctx, order.max(0) as usize);
    let pt = tate.compose(&g)?;
    Ok(ModularPoint::new(&v.pow(4) * &pt.a, &v.pow(6) * &pt.b))
}

/// `u^z_{Gamma,eta,v} = (v^4 a_{4,oo}(eta q), v^6 a_{6,oo}(eta q))`.
pub fn u_modular_plain(ctx: &PadicContext, eta: &PadicNum, v: &QSeries, order: i64) -> Result<ModularPoint> {
    if !eta.is_unit() || !v.is_unit_series() {
        return Err(Error::Parameter("eta and v must be units".into()));
    }
    modular_from(ctx, eta, &QSeries::one(ctx, order), v, order)
}

/// `u^z_{Gamma,eta,v,kappa,alpha}`: the plain family composed with
/// `q -> q u^z_{m,kappa,alpha}`.
pub fn u_modular_deformed(
    ctx: &PadicContext,
    z: &Scalar,
    eta: &PadicNum,
    v: &QSeries,
    kappa: u64,
    alpha: &Scalar,
    order: i64,
) -> Result<ModularPoint> {
    if !eta.is_unit() || !v.is_unit_series() {
        return Err(Error::Parameter("eta and v must be units".into()));
    }
    let u = u_mult(ctx, z, kappa, alpha, order)?;
    modular_from(ctx, eta, &u, v, order)
}

/// Which closed-form family a [`SolutionFamily`] belongs to.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FamilyKind {
    Additive,
    Multiplicative,
    /// `zeta u^z_{m,kappa,alpha}`, solving the homogeneous equation.
    Kernel,
    /// `beta zeta u^z_{m,kappa,alpha}`, solving the equation with right side `-1`.
    Inhomogeneous,
    ModularPlain,
    ModularDeformed,
}

impl FamilyKind {
    pub fn name(self) -> &'static str {
        match self {
            FamilyKind::Additive => "additive",
            FamilyKind::Multiplicative => "multiplicative",
            FamilyKind::Kernel => "kernel",
            FamilyKind::Inhomogeneous => "inhomogeneous",
            FamilyKind::ModularPlain => "modular_plain",
            FamilyKind::ModularDeformed => "modular_deformed",
        }
    }
}

/// Parameter values a family was built from.
#[derive(Clone, Debug, Default)]
pub struct FamilyParams {
    pub z: Option<Scalar>,
    pub kappa: Option<u64>,
    pub alpha: Option<Scalar>,
    pub eta: Option<PadicNum>,
    pub v: Option<QSeries>,
    pub zeta: Option<PadicNum>,
    pub beta: Option<PadicNum>,
}

#[derive(Clone, Debug)]
pub enum Payload {
    Series(QSeries),
    Point(ModularPoint),
}

/// A constructed solution together with its parameters.
#[derive(Clone, Debug)]
pub struct SolutionFamily {
    pub kind: FamilyKind,
    pub params: FamilyParams,
    pub payload: Payload,
}

impl SolutionFamily {
    pub fn additive(ctx: &PadicContext, z: Scalar, kappa: u64, alpha: Scalar, order: i64) -> Result<Self> {
        let s = u_additive(ctx, &z, kappa, &alpha, order)?;
        Ok(SolutionFamily {
            kind: FamilyKind::Additive,
            params: FamilyParams { z: Some(z), kappa: Some(kappa), alpha: Some(alpha), ..Default::default() },
            payload: Payload::Series(s),
        })
    }

    pub fn multiplicative(ctx: &PadicContext, z: Scalar, kappa: u64, alpha: Scalar, order: i64) -> Result<Self> {
        let s = u_mult(ctx, &z, kappa, &alpha, order)?;
        Ok(SolutionFamily {
            kind: FamilyKind::Multiplicative,
            params: FamilyParams { z: Some(z), kappa: Some(kappa), alpha: Some(alpha), ..Default::default() },
            payload: Payload::Series(s),
        })
    }

    /// `zeta u^z_{m,kappa,alpha}` for a root of unity `zeta`.
    pub fn kernel(
        ctx: &PadicContext,
        z: Scalar,
        kappa: u64,
        alpha: Scalar,
        zeta: PadicNum,
        order: i64,
    ) -> Result<Self> {
        let s = u_mult(ctx, &z, kappa, &alpha, order)?.scale(&zeta);
        Ok(SolutionFamily {
            kind: FamilyKind::Kernel,
            params: FamilyParams {
                z: Some(z),
                kappa: Some(kappa),
                alpha: Some(alpha),
                zeta: Some(zeta),
                ..Default::default()
            },
            payload: Payload::Series(s),
        })
    }

    /// `beta zeta u^z_{m,kappa,alpha}` with `beta` solving the constant equation.
    pub fn inhomogeneous(
        ctx: &PadicContext,
        z: Scalar,
        kappa: u64,
        alpha: Scalar,
        zeta: PadicNum,
        order: i64,
    ) -> Result<Self> {
        let eq = crate::convection::EquationParams::new(
            Scalar::int(kappa as i64),
            z.clone(),
            crate::convection::Rhs::MinusOne,
        )?;
        let beta = crate::convection::solve_beta(ctx, &eq)?;
        let s = u_mult(ctx, &z, kappa, &alpha, order)?.scale(&(&beta * &zeta));
        Ok(SolutionFamily {
            kind: FamilyKind::Inhomogeneous,
            params: FamilyParams {
                z: Some(z),
                kappa: Some(kappa),
                alpha: Some(alpha),
                zeta: Some(zeta),
                beta: Some(beta),
                ..Default::default()
            },
            payload: Payload::Series(s),
        })
    }

    pub fn modular_plain(ctx: &PadicContext, eta: PadicNum, v: QSeries, order: i64) -> Result<Self> {
        let pt = u_modular_plain(ctx, &eta, &v, order)?;
        Ok(SolutionFamily {
            kind: FamilyKind::ModularPlain,
            params: FamilyParams { eta: Some(eta), v: Some(v), ..Default::default() },
            payload: Payload::Point(pt),
        })
    }

    #[allow(clippy::too_many_arguments)]
    pub fn modular_deformed(
        ctx: &PadicContext,
        z: Scalar,
        eta: PadicNum,
        v: QSeries,
        kappa: u64,
        alpha: Scalar,
        order: i64,
    ) -> Result<Self> {
        let pt = u_modular_deformed(ctx, &z, &eta, &v, kappa, &alpha, order)?;
        Ok(SolutionFamily {
            kind: FamilyKind::ModularDeformed,
            params: FamilyParams {
                z: Some(z),
                kappa: Some(kappa),
                alpha: Some(alpha),
                eta: Some(eta),
                v: Some(v),
                ..Default::default()
            },
            payload: Payload::Point(pt),
        })
    }

    pub fn series(&self) -> Option<&QSeries> {
        match &self.payload {
            Payload::Series(s) => Some(s),
            Payload::Point(_) => None,
        }
    }

    pub fn point(&self) -> Option<&ModularPoint> {
        match &self.payload {
            Payload::Point(p) => Some(p),
            Payload::Series(_) => None,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn seeds_and_first_step() {
        let x = r(2, 7);
        let y = r(3, 5);
        assert_eq!(b_eval(-1, &x, &y).unwrap(), r(0, 1));
        assert_eq!(b_eval(0, &x, &y).unwrap(), r(1, 1));
        assert_eq!(b_eval(1, &x, &y).unwrap(), (r(1, 1) - &x) / (r(1, 1) - &y));
        assert_eq!(b_eval(2, &x, &r(1, 1)), Err(Error::SingularDenominator));
    }

    #[test]
    fn boundary_values() {
        let x = r(3, 2);
        assert_eq!(b_eval(3, &x, &r(0, 1)).unwrap(), r(1, 1) - &x + &x * &x - &x * &x * &x);
        assert_eq!(b_closed(4, BoundaryLine::YZero, &x).unwrap(), b_eval(4, &x, &r(0, 1)).unwrap());
        let y = r(2, 3);
        assert_eq!(b_closed(2, BoundaryLine::XZero, &y).unwrap(), r(1, 1) / ((r(1, 1) - &y) * (r(1, 1) - &y * &y)));
        for n in 0..6 {
            assert_eq!(b_eval(n, &r(0, 1), &r(0, 1)).unwrap(), r(1, 1));
        }
        assert_eq!(b_closed(5, BoundaryLine::YZero, &r(-1, 1)).unwrap(), b_eval(5, &r(-1, 1), &r(0, 1)).unwrap());
    }

    #[test]
    fn derivative_at_origin() {
        assert_eq!(db_dx_at_origin(0), r(0, 1));
        for n in 1..=8 {
            assert_eq!(db_dx_at_origin(n), r(-1, 1));
        }
    }

    #[test]
    fn additive_family_example() {
        let ctx = PadicContext::new(5, 8).unwrap();
        let u = u_additive(&ctx, &Scalar::int(0), 1, &Scalar::int(1), 30).unwrap();
        let expect = |n: i64| -> PadicNum {
            match n {
                1 => PadicNum::one(&ctx),
                5 => PadicNum::from_rational(&ctx, &r(-1, 4)).unwrap(),
                25 => PadicNum::from_rational(&ctx, &r(1, 96)).unwrap(),
                _ => PadicNum::zero(&ctx),
            }
        };
        for n in 0..=30 {
            assert!(u.coeff(n).eq_at(&expect(n), 8), "q^{n}");
        }
        assert!(u.is_integral());
        let zero = u_additive(&ctx, &Scalar::int(0), 1, &Scalar::int(0), 30).unwrap();
        assert_eq!(zero.min_coeff_valuation(), None);
        assert!(u_additive(&ctx, &Scalar::int(0), 5, &Scalar::int(1), 30).is_err());
    }

    #[test]
    fn multiplicative_family_basics() {
        let ctx = PadicContext::new(5, 8).unwrap();
        let one = u_mult(&ctx, &Scalar::int(0), 1, &Scalar::int(0), 10).unwrap();
        assert!(one.eq_at(&QSeries::one(&ctx, 10), 8));
        let u = u_mult(&ctx, &Scalar::int(0), 1, &Scalar::int(1), 10).unwrap();
        assert!(u.is_integral());
        assert_eq!(u.eff_prec(), Some(8));
        // z = 0: exp(q + q^5/(5(1-5)) + ...) starts 1 + q + q^2/2
        assert!(u.coeff(2).eq_at(&PadicNum::from_rational(&ctx, &r(1, 2)).unwrap(), 8));
    }

    #[test]
    fn modular_families() {
        let ctx = PadicContext::new(7, 6).unwrap();
        let one = PadicNum::one(&ctx);
        let v = QSeries::one(&ctx, 10);
        let plain = u_modular_plain(&ctx, &one, &v, 10).unwrap();
        let tate = tate_point(&ctx, 10);
        assert!(plain.a.eq_at(&tate.a, 6) && plain.b.eq_at(&tate.b, 6));
        let deformed = u_modular_deformed(&ctx, &Scalar::int(0), &one, &v, 1, &Scalar::int(0), 10).unwrap();
        assert!(deformed.a.eq_at(&plain.a, 6) && deformed.b.eq_at(&plain.b, 6));
    }

    #[test]
    fn guard_digit_count() {
        // v_5(50!) = 12, floor(log_5 50) = 2
        assert_eq!(guard_digits(5, 50), 16);
    }
}
