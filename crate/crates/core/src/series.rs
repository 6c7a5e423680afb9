//! Truncated Laurent series in `q` over [`PadicNum`] coefficients.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::error::{Error, Result};
use crate::padic::{PadicContext, PadicNum};

/// `sum_{n = lowest}^{order} c_n q^n + O(q^(order + 1))`.
///
/// Coefficients above `order` are unknown, never zero. Every coefficient
/// carries its own p-adic precision; [`QSeries::eff_prec`] is the minimum.
#[derive(Clone, PartialEq)]
pub struct QSeries {
    ctx: PadicContext,
    lowest: i64,
    order: i64,
    coeffs: Vec<PadicNum>,
}

impl QSeries {
    /// Builds a series from coefficients at `lowest, lowest + 1, ...`; the
    /// order is the last supplied exponent.
    pub fn from_coeffs(ctx: &PadicContext, lowest: i64, coeffs: Vec<PadicNum>) -> Self {
        let order = lowest + coeffs.len() as i64 - 1;
        QSeries { ctx: ctx.clone(), lowest, order, coeffs }
    }

    /// Exact integer coefficients.
    pub fn from_ints(ctx: &PadicContext, lowest: i64, coeffs: &[BigInt]) -> Self {
        let c = coeffs.iter().map(|n| PadicNum::from_bigint(ctx, n)).collect();
        Self::from_coeffs(ctx, lowest, c)
    }

    pub fn from_i64s(ctx: &PadicContext, lowest: i64, coeffs: &[i64]) -> Self {
        let c = coeffs.iter().map(|&n| PadicNum::from_i64(ctx, n)).collect();
        Self::from_coeffs(ctx, lowest, c)
    }

    /// Exact rational coefficients.
    pub fn from_rationals(ctx: &PadicContext, lowest: i64, coeffs: &[BigRational]) -> Result<Self> {
        let c = coeffs.iter().map(|q| PadicNum::from_rational(ctx, q)).collect::<Result<_>>()?;
        Ok(Self::from_coeffs(ctx, lowest, c))
    }

    /// `O(q^(order + 1))`.
    pub fn zero(ctx: &PadicContext, order: i64) -> Self {
        Self::monomial(&PadicNum::zero(ctx), 0, order)
    }

    pub fn one(ctx: &PadicContext, order: i64) -> Self {
        Self::constant(&PadicNum::one(ctx), order)
    }

    pub fn constant(c: &PadicNum, order: i64) -> Self {
        Self::monomial(c, 0, order)
    }

    /// `c q^e + O(q^(order + 1))`.
    pub fn monomial(c: &PadicNum, e: i64, order: i64) -> Self {
        let ctx = c.context();
        let lowest = e.min(order + 1);
        let len = (order - lowest + 1).max(0) as usize;
        let mut coeffs = vec![PadicNum::zero(ctx); len];
        if e <= order {
            coeffs[(e - lowest) as usize] = c.clone();
        }
        QSeries { ctx: ctx.clone(), lowest, order, coeffs }
    }

    /// The series `q` to the given order.
    pub fn q(ctx: &PadicContext, order: i64) -> Self {
        Self::monomial(&PadicNum::one(ctx), 1, order)
    }

    pub fn context(&self) -> &PadicContext {
        &self.ctx
    }

    pub fn lowest(&self) -> i64 {
        self.lowest
    }

    /// Highest exponent with a known coefficient.
    pub fn order(&self) -> i64 {
        self.order
    }

    pub fn coeffs(&self) -> &[PadicNum] {
        &self.coeffs
    }

    /// Coefficient of `q^n`; exact zero below `lowest`.
    ///
    /// # Panics
    /// If `n` exceeds the truncation order.
    pub fn coeff(&self, n: i64) -> PadicNum {
        assert!(n <= self.order, "coefficient q^{n} is beyond the truncation order {}", self.order);
        if n < self.lowest {
            PadicNum::zero(&self.ctx)
        } else {
            self.coeffs[(n - self.lowest) as usize].clone()
        }
    }

    fn coeff_ref(&self, n: i64) -> Option<&PadicNum> {
        if n < self.lowest || n > self.order {
            None
        } else {
            Some(&self.coeffs[(n - self.lowest) as usize])
        }
    }

    /// Minimum absolute precision over the known coefficients; `None` if all
    /// of them are exact.
    pub fn eff_prec(&self) -> Option<i64> {
        self.coeffs.iter().filter_map(PadicNum::abs_prec).min()
    }

    /// Smallest coefficient valuation (inexact zeros count by their bound);
    /// `None` if every coefficient is exactly zero.
    pub fn min_coeff_valuation(&self) -> Option<i64> {
        self.coeffs.iter().filter_map(PadicNum::valuation).min()
    }

    /// First exponent whose coefficient is not exactly zero.
    fn support_start(&self) -> i64 {
        self.coeffs.iter().position(|c| !c.is_exact_zero()).map_or(self.order + 1, |i| self.lowest + i as i64)
    }

    /// `q`-adic valuation: the first exponent whose coefficient is nonzero at
    /// its precision, if any.
    pub fn q_valuation(&self) -> Option<i64> {
        self.coeffs.iter().position(|c| !c.is_zero()).map(|i| self.lowest + i as i64)
    }

    /// A unit of `R[[q]]`: no negative powers and a unit constant term.
    pub fn is_unit_series(&self) -> bool {
        self.order >= 0 && (self.lowest..0).all(|n| self.coeff(n).is_zero()) && self.coeff(0).is_unit()
    }

    /// True when every known coefficient is `p`-integral.
    pub fn is_integral(&self) -> bool {
        self.coeffs.iter().all(|c| c.has_valuation_at_least(0))
    }

    /// Drops coefficients above `order`.
    pub fn truncate(&self, order: i64) -> Self {
        if order >= self.order {
            return self.clone();
        }
        let lowest = self.lowest.min(order + 1);
        let coeffs = (lowest..=order).map(|n| self.coeff(n)).collect();
        QSeries { ctx: self.ctx.clone(), lowest, order, coeffs }
    }

    /// Coefficientwise truncation to absolute p-adic precision `k`.
    pub fn reduce_abs(&self, k: i64) -> Self {
        self.map(|c| c.reduce_abs(k))
    }

    /// Moves coefficients into another context over the same field.
    pub fn with_context(&self, ctx: &PadicContext) -> Result<Self> {
        let coeffs = self.coeffs.iter().map(|c| c.with_context(ctx)).collect::<Result<_>>()?;
        Ok(QSeries { ctx: ctx.clone(), lowest: self.lowest, order: self.order, coeffs })
    }

    fn map(&self, f: impl Fn(&PadicNum) -> PadicNum) -> Self {
        QSeries {
            ctx: self.ctx.clone(),
            lowest: self.lowest,
            order: self.order,
            coeffs: self.coeffs.iter().map(f).collect(),
        }
    }

    /// Indexed map over exponents.
    fn map_indexed(&self, f: impl Fn(i64, &PadicNum) -> PadicNum) -> Self {
        QSeries {
            ctx: self.ctx.clone(),
            lowest: self.lowest,
            order: self.order,
            coeffs: self.coeffs.iter().enumerate().map(|(i, c)| f(self.lowest + i as i64, c)).collect(),
        }
    }

    /// Congruence of all coefficients up to the common order modulo `p^prec`.
    pub fn eq_at(&self, other: &QSeries, prec: i64) -> bool {
        let top = self.order.min(other.order);
        let low = self.lowest.min(other.lowest);
        (low..=top).all(|n| self.coeff(n).eq_at(&other.coeff(n), prec))
    }

    pub fn scale(&self, c: &PadicNum) -> Self {
        self.map(|x| x * c)
    }

    pub fn mul_int(&self, n: i64) -> Self {
        self.scale(&PadicNum::from_i64(&self.ctx, n))
    }

    pub fn div_int(&self, n: i64) -> Self {
        self.map(|x| x.div_int(n))
    }

    /// Adds a constant without affecting the truncation order.
    pub fn add_scalar(&self, c: &PadicNum) -> Self {
        if self.order < 0 {
            return self.clone();
        }
        let mut out = self.extend_low(0);
        let i = (0 - out.lowest) as usize;
        out.coeffs[i] = &out.coeffs[i] + c;
        out
    }

    /// Same series with `lowest` lowered to at most `low`.
    fn extend_low(&self, low: i64) -> Self {
        if low >= self.lowest {
            return self.clone();
        }
        let mut coeffs = vec![PadicNum::zero(&self.ctx); (self.lowest - low) as usize];
        coeffs.extend(self.coeffs.iter().cloned());
        QSeries { ctx: self.ctx.clone(), lowest: low, order: self.order, coeffs }
    }

    /// Extends an exactly known polynomial to a higher order with zeros.
    pub fn extend_to(&self, order: i64) -> Self {
        if order <= self.order {
            return self.clone();
        }
        let mut out = self.clone();
        out.coeffs.resize((order - self.lowest + 1) as usize, PadicNum::zero(&self.ctx));
        out.order = order;
        out
    }

    /// Multiplication by `q^k`.
    pub fn shift(&self, k: i64) -> Self {
        QSeries { ctx: self.ctx.clone(), lowest: self.lowest + k, order: self.order + k, coeffs: self.coeffs.clone() }
    }

    fn add_impl(&self, other: &QSeries) -> QSeries {
        let order = self.order.min(other.order);
        let lowest = self.lowest.min(other.lowest).min(order + 1);
        let coeffs = (lowest..=order)
            .map(|n| match (self.coeff_ref(n), other.coeff_ref(n)) {
                (Some(a), Some(b)) => a + b,
                (Some(a), None) => a.clone(),
                (None, Some(b)) => b.clone(),
                (None, None) => PadicNum::zero(&self.ctx),
            })
            .collect();
        QSeries { ctx: self.ctx.clone(), lowest, order, coeffs }
    }

    fn mul_impl(&self, other: &QSeries) -> QSeries {
        let va = self.support_start();
        let vb = other.support_start();
        let lowest = self.lowest + other.lowest;
        let order = (self.order + vb).min(other.order + va).max(lowest - 1);
        let mut coeffs = Vec::with_capacity((order - lowest + 1) as usize);
        for n in lowest..=order {
            let mut acc = PadicNum::zero(&self.ctx);
            let i_lo = va.max(n - other.order);
            let i_hi = self.order.min(n - vb);
            for i in i_lo..=i_hi {
                let a = &self.coeffs[(i - self.lowest) as usize];
                let b = &other.coeffs[(n - i - other.lowest) as usize];
                if a.is_exact_zero() || b.is_exact_zero() {
                    continue;
                }
                acc = &acc + &(a * b);
            }
            coeffs.push(acc);
        }
        QSeries { ctx: self.ctx.clone(), lowest, order, coeffs }
    }

    /// Multiplicative inverse. The leading coefficient is the first one that
    /// is nonzero at its precision; earlier inexact zeros are dropped.
    pub fn inv(&self) -> Result<QSeries> {
        let v = self.q_valuation().ok_or(Error::DivisionByZero)?;
        let g: Vec<&PadicNum> = (v..=self.order).map(|n| &self.coeffs[(n - self.lowest) as usize]).collect();
        let len = g.len();
        let c0 = g[0].inv()?;
        let mut h: Vec<PadicNum> = Vec::with_capacity(len);
        h.push(c0.clone());
        for n in 1..len {
            let mut acc = PadicNum::zero(&self.ctx);
            for k in 1..=n {
                if g[k].is_exact_zero() {
                    continue;
                }
                acc = &acc + &(g[k] * &h[n - k]);
            }
            h.push(-(&acc * &c0));
        }
        Ok(QSeries::from_coeffs(&self.ctx, -v, h))
    }

    pub fn checked_div(&self, other: &QSeries) -> Result<QSeries> {
        Ok(self * &other.inv()?)
    }

    pub fn pow(&self, mut e: u64) -> QSeries {
        let mut acc: Option<QSeries> = None;
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = Some(match acc {
                    None => base.clone(),
                    Some(a) => &a * &base,
                });
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc.unwrap_or_else(|| QSeries::one(&self.ctx, self.order.max(0)))
    }

    pub fn pow_signed(&self, e: i64) -> Result<QSeries> {
        if e >= 0 {
            Ok(self.pow(e as u64))
        } else {
            Ok(self.inv()?.pow(e.unsigned_abs()))
        }
    }

    /// `delta_q = q d/dq`.
    pub fn dq(&self) -> QSeries {
        self.map_indexed(|n, c| if n == 0 { PadicNum::zero(&self.ctx) } else { c.mul_int(n) })
    }

    /// Ordinary derivative `d/dq`.
    pub fn deriv(&self) -> QSeries {
        self.dq().shift(-1)
    }

    /// `F -> F^phi(q^p)`: Frobenius on coefficients and `q -> q^p`.
    pub fn phi_star(&self) -> QSeries {
        let p = self.ctx.p() as i64;
        self.substitute_power(p, true)
    }

    fn substitute_power(&self, l: i64, twist: bool) -> QSeries {
        let lowest = self.lowest * l;
        let order = self.order * l + l - 1;
        let mut coeffs = vec![PadicNum::zero(&self.ctx); (order - lowest + 1) as usize];
        for (i, c) in self.coeffs.iter().enumerate() {
            coeffs[i * l as usize] = if twist { c.frobenius() } else { c.clone() };
        }
        QSeries { ctx: self.ctx.clone(), lowest, order, coeffs }
    }

    /// `phi_p F = F^p + p delta_p F`, the Frobenius lift on series.
    pub fn phi_p(&self) -> QSeries {
        self.phi_star()
    }

    /// `delta_p F = (F^phi(q^p) - F^p) / p`.
    pub fn dp(&self) -> Result<QSeries> {
        if self.eff_prec().is_some_and(|e| e < 2) {
            return Err(Error::PrecisionExhausted);
        }
        let num = &self.phi_star() - &self.pow(self.ctx.p());
        Ok(num.div_int(self.ctx.p() as i64))
    }

    /// Substitution `q -> q^l` for a prime `l != p`.
    pub fn phi_l(&self, l: u64) -> Result<QSeries> {
        if l == self.ctx.p() || !is_small_prime(l) {
            return Err(Error::Parameter(alloc::format!("{l} must be a prime different from p")));
        }
        Ok(self.substitute_power(l as i64, false))
    }

    /// Termwise `c_n q^n -> c_n q^n / n`; the `q^0` term must vanish.
    pub fn integrate(&self) -> Result<QSeries> {
        if self.lowest <= 0 && self.order >= 0 && !self.coeff(0).is_zero() {
            return Err(Error::Domain("cannot integrate a nonzero constant term".into()));
        }
        Ok(self.map_indexed(|n, c| if n == 0 { PadicNum::zero(&self.ctx) } else { c.div_int(n) }))
    }

    /// `exp F` for `F` in `pO + qK[[q]]`, via `n U_n = sum_k k F_k U_{n-k}`.
    pub fn exp(&self) -> Result<QSeries> {
        for n in self.lowest..0 {
            if !self.coeff(n).is_zero() {
                return Err(Error::Domain("exp of a series with negative powers".into()));
            }
        }
        let order = self.order;
        if order < 0 {
            return Ok(QSeries::zero(&self.ctx, order));
        }
        let c0 = self.coeff(0);
        let u0 = if c0.is_exact_zero() { PadicNum::one(&self.ctx) } else { c0.pexp()? };
        let kf: Vec<PadicNum> = (0..=order).map(|k| self.coeff(k).mul_int(k)).collect();
        let mut u: Vec<PadicNum> = Vec::with_capacity(order as usize + 1);
        u.push(PadicNum::one(&self.ctx));
        for n in 1..=order as usize {
            let mut acc = PadicNum::zero(&self.ctx);
            for k in 1..=n {
                if kf[k].is_exact_zero() {
                    continue;
                }
                acc = &acc + &(&kf[k] * &u[n - k]);
            }
            u.push(acc.div_int(n as i64));
        }
        Ok(QSeries::from_coeffs(&self.ctx, 0, u).scale(&u0))
    }

    /// `log U = log U(0) + int dq(U)/U` for a unit series with `U(0) = 1 mod p`.
    pub fn log(&self) -> Result<QSeries> {
        if !self.is_unit_series() {
            return Err(Error::Domain("log of a non-unit series".into()));
        }
        let u = self.truncate(self.order).drop_negative();
        let l0 = u.coeff(0).plog()?;
        let d = u.dq().checked_div(&u)?;
        Ok(d.integrate()?.add_scalar(&l0))
    }

    fn drop_negative(&self) -> QSeries {
        if self.lowest >= 0 {
            return self.clone();
        }
        let coeffs = (0..=self.order).map(|n| self.coeff(n)).collect();
        QSeries::from_coeffs(&self.ctx, 0, coeffs)
    }

    /// `F(G)` for `G` of positive `q`-valuation. Laurent `F` is allowed.
    pub fn compose(&self, g: &QSeries) -> Result<QSeries> {
        if (g.lowest..=g.order.min(0)).any(|n| !g.coeff(n).is_zero()) {
            return Err(Error::Domain("inner series must have positive q-valuation".into()));
        }
        // Inexact zeros at q^n, n <= 0, are treated as zero.
        let g = &g.map_indexed(|n, c| if n <= 0 { PadicNum::zero(&self.ctx) } else { c.clone() });
        let v = g.support_start();
        // Known order of F(G): the tail O(q^(oF + 1)) of F becomes O(q^(v (oF + 1))).
        let cap_order = if v > g.order { i64::MAX } else { v.saturating_mul(self.order + 1) - 1 };
        let top = g.order.max(self.order).min(cap_order);
        let g = g.truncate(top);
        let mut acc: Option<QSeries> = None;
        if self.order >= 0 {
            let mut s: Option<QSeries> = None;
            for n in (0..=self.order).rev() {
                let c = self.coeff(n);
                s = Some(match s {
                    None => QSeries::constant(&c, top),
                    Some(prev) => (&prev * &g).add_scalar(&c),
                });
            }
            acc = s;
        }
        if self.lowest < 0 {
            let ginv = g.inv()?;
            let mut t: Option<QSeries> = None;
            for n in self.lowest..0 {
                let c = self.coeff(n);
                t = Some(match t {
                    None => QSeries::constant(&c, top),
                    Some(prev) => (&prev * &ginv).add_scalar(&c),
                });
            }
            let neg = &t.expect("nonempty") * &ginv;
            acc = Some(match acc {
                None => neg,
                Some(a) => &a + &neg,
            });
        }
        let out = acc.unwrap_or_else(|| QSeries::zero(&self.ctx, top));
        Ok(out.truncate(cap_order.min(out.order)))
    }

    /// Compositional inverse of `G = c_1 q + ...` with `c_1` invertible,
    /// by Newton iteration `s -> s - (G(s) - q) / G'(s)`.
    pub fn reverse(&self) -> Result<QSeries> {
        if (self.lowest..=self.order.min(0)).any(|n| !self.coeff(n).is_zero()) || self.order < 1 {
            return Err(Error::Domain("reverse needs a series c1 q + ...".into()));
        }
        let c1 = self.coeff(1);
        if c1.is_zero() {
            return Err(Error::Domain("linear coefficient is not invertible".into()));
        }
        let order = self.order;
        let q = QSeries::q(&self.ctx, order);
        let d = self.deriv();
        let mut s = q.scale(&c1.inv()?);
        let mut known = 1i64;
        while known < order {
            known = (2 * known).min(order);
            let st = s.extend_to(known);
            let gs = self.compose(&st)?.truncate(known);
            let ds = d.compose(&st)?.truncate(known);
            let corr = (&gs - &q.truncate(known)).checked_div(&ds)?;
            s = &st - &corr;
        }
        // one more pass at full order to settle the tail
        let s = s.extend_to(order);
        let gs = self.compose(&s)?;
        let ds = d.compose(&s)?;
        let corr = (&gs - &q).checked_div(&ds)?;
        Ok((&s - &corr).truncate(order))
    }

    /// Square root of `q^(2e) u` with `u(0)` a square; the root with
    /// constant term from [`PadicNum::sqrt`] is returned.
    pub fn sqrt(&self) -> Result<QSeries> {
        let v = self.q_valuation().ok_or(Error::NoSquareRoot)?;
        if v % 2 != 0 {
            return Err(Error::NoSquareRoot);
        }
        let u: Vec<PadicNum> = (v..=self.order).map(|n| self.coeff(n)).collect();
        let s0 = u[0].sqrt()?;
        let inv2s0 = s0.mul_int(2).inv()?;
        let mut s = vec![s0];
        for n in 1..u.len() {
            let mut acc = u[n].clone();
            for k in 1..n {
                acc = &acc - &(&s[k] * &s[n - k]);
            }
            s.push(&acc * &inv2s0);
        }
        let root = QSeries::from_coeffs(&self.ctx, 0, s);
        // q-order of the root: half the relative order of the square
        Ok(root.shift(v / 2))
    }

    /// `C_p(X, Y) = (X^p + Y^p - (X + Y)^p) / p`.
    pub fn cp(x: &QSeries, y: &QSeries) -> QSeries {
        let p = x.ctx.p();
        (&(&x.pow(p) + &y.pow(p)) - &(x + y).pow(p)).div_int(p as i64)
    }
}

impl QSeries {
    /// Random series with coefficients uniform in `O / p^N` at
    /// `lowest..=order`.
    pub fn random<R: rand::Rng + ?Sized>(ctx: &PadicContext, lowest: i64, order: i64, rng: &mut R) -> Self {
        let coeffs = (lowest..=order).map(|_| PadicNum::random(ctx, rng)).collect();
        QSeries::from_coeffs(ctx, lowest, coeffs)
    }

    /// Random unit of `R[[q]]` known to `q^order`.
    pub fn random_unit<R: rand::Rng + ?Sized>(ctx: &PadicContext, order: i64, rng: &mut R) -> Self {
        let mut s = Self::random(ctx, 0, order, rng);
        s.coeffs[0] = PadicNum::random_unit(ctx, rng);
        s
    }
}

fn is_small_prime(n: u64) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| !n.is_multiple_of(d))
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident, $body:expr) => {
        impl $trait<&QSeries> for &QSeries {
            type Output = QSeries;
            fn $method(self, rhs: &QSeries) -> QSeries {
                $body(self, rhs)
            }
        }
        impl $trait<QSeries> for QSeries {
            type Output = QSeries;
            fn $method(self, rhs: QSeries) -> QSeries {
                $body(&self, &rhs)
            }
        }
    };
}

forward_binop!(Add, add, |a: &QSeries, b: &QSeries| a.add_impl(b));
forward_binop!(Sub, sub, |a: &QSeries, b: &QSeries| a.add_impl(&-b));
forward_binop!(Mul, mul, |a: &QSeries, b: &QSeries| a.mul_impl(b));

impl Neg for &QSeries {
    type Output = QSeries;
    fn neg(self) -> QSeries {
        self.map(|c| -c)
    }
}

impl Neg for QSeries {
    type Output = QSeries;
    fn neg(self) -> QSeries {
        -&self
    }
}

impl fmt::Debug for QSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_exact_zero() {
                continue;
            }
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            write!(f, "[{c}]q^{}", self.lowest + i as i64)?;
        }
        if !first {
            f.write_str(" + ")?;
        }
        write!(f, "O(q^{})", self.order + 1)
    }
}
