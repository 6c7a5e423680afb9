use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use num_bigint::{BigInt, BigUint, Sign};
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::context::{Elem, PadicContext};
use crate::error::{Error, Result};

/// An element of `K = W(F_{p^f})[1/p]` known to finite precision.
///
/// The representation is "capped relative": a value `p^v * u` with `u` a unit
/// known modulo `p^r` (`r <= N`, the context cap). Its absolute precision is
/// `v + r`. A value with `r = 0` is an inexact zero `O(p^v)`. Exact zero is
/// tracked separately and absorbs multiplication.
#[derive(Clone)]
pub struct PadicNum {
    ctx: PadicContext,
    repr: Repr,
}

#[derive(Clone)]
enum Repr {
    Zero,
    Approx { val: i64, rel: u32, unit: Elem },
}

impl PadicNum {
    fn approx(ctx: &PadicContext, val: i64, rel: u32, unit: Elem) -> Self {
        PadicNum { ctx: ctx.clone(), repr: Repr::Approx { val, rel, unit } }
    }

    /// Normalises `p^val * e` known modulo `p^(val + rel)`.
    fn normalize(ctx: &PadicContext, val: i64, rel: u32, mut e: Elem) -> Self {
        if rel == 0 {
            return Self::inexact_zero(ctx, val);
        }
        ctx.elem_reduce(&mut e, rel);
        match ctx.elem_valuation(&e) {
            None => Self::inexact_zero(ctx, val + rel as i64),
            Some(v) if v >= rel => Self::inexact_zero(ctx, val + rel as i64),
            Some(v) => {
                let unit = ctx.elem_div_p_pow(&e, v);
                Self::approx(ctx, val + v as i64, rel - v, unit)
            }
        }
    }

    /// Exact zero.
    pub fn zero(ctx: &PadicContext) -> Self {
        PadicNum { ctx: ctx.clone(), repr: Repr::Zero }
    }

    /// `O(p^k)`: zero known modulo `p^k`.
    pub fn inexact_zero(ctx: &PadicContext, k: i64) -> Self {
        Self::approx(ctx, k, 0, ctx.elem_zero())
    }

    pub fn one(ctx: &PadicContext) -> Self {
        Self::from_i64(ctx, 1)
    }

    pub fn from_i64(ctx: &PadicContext, n: i64) -> Self {
        Self::from_bigint(ctx, &BigInt::from(n))
    }

    /// An exact integer, stored at full relative precision.
    pub fn from_bigint(ctx: &PadicContext, n: &BigInt) -> Self {
        let mut coords = vec![BigInt::zero(); ctx.degree() as usize];
        coords[0] = n.clone();
        Self::from_coords(ctx, &coords)
    }

    /// An exact rational number; negative valuation allowed.
    pub fn from_rational(ctx: &PadicContext, q: &BigRational) -> Result<Self> {
        let n = Self::from_bigint(ctx, q.numer());
        let d = Self::from_bigint(ctx, q.denom());
        n.checked_div(&d)
    }

    /// The exact element `sum c_i w^i` with integer coordinates.
    pub fn from_coords(ctx: &PadicContext, coords: &[BigInt]) -> Self {
        let f = ctx.degree() as usize;
        assert!(coords.len() <= f, "more coordinates than the extension degree");
        if coords.iter().all(Zero::is_zero) {
            return Self::zero(ctx);
        }
        let pb = BigInt::from(ctx.p());
        let v = coords
            .iter()
            .filter(|c| !c.is_zero())
            .map(|c| {
                let mut v = 0u32;
                let mut x = c.clone();
                while (&x % &pb).is_zero() {
                    x /= &pb;
                    v += 1;
                }
                v
            })
            .min()
            .unwrap_or(0);
        let cap = ctx.cap();
        let modulus = BigInt::from(ctx.p_pow(cap));
        let shift = BigInt::from(ctx.p_pow(v));
        let mut unit = ctx.elem_zero();
        for (slot, c) in unit.iter_mut().zip(coords) {
            let r = (c / &shift) % &modulus;
            let r = if r.is_negative() { r + &modulus } else { r };
            *slot = r.to_biguint().expect("non-negative");
        }
        Self::approx(ctx, v as i64, cap, unit)
    }

    /// Rebuilds an element from its canonical form `numer / p^denom_exp`,
    /// with numerator coordinates and absolute precision `abs`.
    pub fn from_canonical(ctx: &PadicContext, numer: &[BigUint], denom_exp: u32, abs: i64) -> Self {
        let mut e = ctx.elem_zero();
        for (slot, c) in e.iter_mut().zip(numer) {
            *slot = c.clone();
        }
        let val = -(denom_exp as i64);
        let rel = abs - val;
        if rel <= 0 {
            return Self::inexact_zero(ctx, abs);
        }
        if ContextRel::elem_all_zero(&e) {
            return Self::inexact_zero(ctx, abs);
        }
        Self::normalize(ctx, val, (rel as u32).min(ctx.cap()), e)
    }

    pub fn context(&self) -> &PadicContext {
        &self.ctx
    }

    pub fn is_exact_zero(&self) -> bool {
        matches!(self.repr, Repr::Zero)
    }

    /// Zero at the known precision (exact zero or `O(p^k)`).
    pub fn is_zero(&self) -> bool {
        match &self.repr {
            Repr::Zero => true,
            Repr::Approx { rel, .. } => *rel == 0,
        }
    }

    /// Valuation; for `O(p^k)` this is the lower bound `k`, for exact zero `None`.
    pub fn valuation(&self) -> Option<i64> {
        match &self.repr {
            Repr::Zero => None,
            Repr::Approx { val, .. } => Some(*val),
        }
    }

    /// Relative precision (0 for inexact zeros, `None` for exact zero).
    pub fn rel_prec(&self) -> Option<u32> {
        match &self.repr {
            Repr::Zero => None,
            Repr::Approx { rel, .. } => Some(*rel),
        }
    }

    /// Absolute precision `v + r`; `None` means exact.
    pub fn abs_prec(&self) -> Option<i64> {
        match &self.repr {
            Repr::Zero => None,
            Repr::Approx { val, rel, .. } => Some(*val + *rel as i64),
        }
    }

    pub fn is_unit(&self) -> bool {
        matches!(&self.repr, Repr::Approx { val: 0, rel, .. } if *rel > 0)
    }

    /// True when the value is known to lie in `p^k Z_p` (or `p^k O`).
    pub fn has_valuation_at_least(&self, k: i64) -> bool {
        match &self.repr {
            Repr::Zero => true,
            Repr::Approx { val, .. } => *val >= k,
        }
    }

    /// `self == other` modulo `p^prec`, with enough precision to decide.
    pub fn eq_at(&self, other: &PadicNum, prec: i64) -> bool {
        (self - other).has_valuation_at_least(prec)
    }

    /// Unit part coordinates (reduced mod `p^rel`); `None` for zeros.
    pub fn unit_coords(&self) -> Option<&[BigUint]> {
        match &self.repr {
            Repr::Approx { rel, unit, .. } if *rel > 0 => Some(unit),
            _ => None,
        }
    }

    /// Canonical form `numer / p^denom_exp`: for non-negative valuation the
    /// numerator is the value reduced into `[0, p^N)` and `denom_exp = 0`;
    /// otherwise the numerator is the unit part and `denom_exp = -v`.
    pub fn canonical(&self) -> (Vec<BigUint>, u32) {
        match &self.repr {
            Repr::Approx { val, rel, unit } if *rel > 0 => {
                if *val >= 0 {
                    let cap = self.ctx.cap();
                    if *val >= cap as i64 {
                        return (self.ctx.elem_zero(), 0);
                    }
                    let mut e = self.ctx.elem_scale(unit, &self.ctx.p_pow(*val as u32), cap);
                    self.ctx.elem_reduce(&mut e, cap);
                    (e, 0)
                } else {
                    (unit.clone(), (-*val) as u32)
                }
            }
            _ => (self.ctx.elem_zero(), 0),
        }
    }

    /// Canonical residue of an integral value modulo `p^N` (f = 1 only).
    pub fn residue(&self) -> Option<BigUint> {
        if self.ctx.degree() != 1 || !self.has_valuation_at_least(0) {
            return None;
        }
        Some(self.canonical().0.swap_remove(0))
    }

    /// Moves the value into another context over the same field, capping the
    /// relative precision at the new cap. Precision is never invented.
    pub fn with_context(&self, ctx: &PadicContext) -> Result<Self> {
        if !self.ctx.same_field(ctx) {
            return Err(Error::ContextMismatch);
        }
        Ok(match &self.repr {
            Repr::Zero => Self::zero(ctx),
            Repr::Approx { val, rel, unit } => {
                let r = (*rel).min(ctx.cap());
                let mut u = unit.clone();
                ctx.elem_reduce(&mut u, r);
                Self::approx(ctx, *val, r, u)
            }
        })
    }

    /// Truncates to absolute precision `k` (exact zero stays exact).
    pub fn reduce_abs(&self, k: i64) -> Self {
        match &self.repr {
            Repr::Zero => self.clone(),
            Repr::Approx { val, rel, unit } => {
                let abs = (*val + *rel as i64).min(k);
                if abs <= *val {
                    Self::inexact_zero(&self.ctx, abs)
                } else {
                    let r = (abs - *val) as u32;
                    let mut u = unit.clone();
                    self.ctx.elem_reduce(&mut u, r);
                    Self::approx(&self.ctx, *val, r, u)
                }
            }
        }
    }

    fn check_ctx(&self, other: &PadicNum) {
        debug_assert!(self.ctx == other.ctx, "p-adic context mismatch");
    }

    fn add_impl(&self, other: &PadicNum) -> PadicNum {
        self.check_ctx(other);
        let (vx, rx, ux) = match &self.repr {
            Repr::Zero => return other.clone(),
            Repr::Approx { val, rel, unit } => (*val, *rel, unit),
        };
        let (vy, ry, uy) = match &other.repr {
            Repr::Zero => return self.clone(),
            Repr::Approx { val, rel, unit } => (*val, *rel, unit),
        };
        let abs = (vx + rx as i64).min(vy + ry as i64);
        let v = vx.min(vy);
        if abs <= v {
            return Self::inexact_zero(&self.ctx, abs);
        }
        let k = (abs - v) as u32;
        let ctx = &self.ctx;
        let lift = |u: &Elem, w: i64| -> Elem {
            if w - v >= k as i64 {
                ctx.elem_zero()
            } else {
                let mut e = ctx.elem_scale(u, &ctx.p_pow((w - v) as u32), k);
                ctx.elem_reduce(&mut e, k);
                e
            }
        };
        let sum = ctx.elem_add(&lift(ux, vx), &lift(uy, vy), k);
        Self::normalize(ctx, v, k, sum)
    }

    fn mul_impl(&self, other: &PadicNum) -> PadicNum {
        self.check_ctx(other);
        let (vx, rx, ux) = match &self.repr {
            Repr::Zero => return self.clone(),
            Repr::Approx { val, rel, unit } => (*val, *rel, unit),
        };
        let (vy, ry, uy) = match &other.repr {
            Repr::Zero => return other.clone(),
            Repr::Approx { val, rel, unit } => (*val, *rel, unit),
        };
        let rel = rx.min(ry);
        if rel == 0 {
            return Self::inexact_zero(&self.ctx, vx + vy);
        }
        let unit = self.ctx.elem_mul(ux, uy, rel);
        Self::approx(&self.ctx, vx + vy, rel, unit)
    }

    fn neg_impl(&self) -> PadicNum {
        match &self.repr {
            Repr::Zero => self.clone(),
            Repr::Approx { val, rel, unit } => Self::approx(&self.ctx, *val, *rel, self.ctx.elem_neg(unit, *rel)),
        }
    }

    /// Multiplicative inverse; fails on exact or inexact zeros.
    pub fn inv(&self) -> Result<PadicNum> {
        match &self.repr {
            Repr::Zero => Err(Error::DivisionByZero),
            Repr::Approx { rel: 0, .. } => Err(Error::DivisionByZero),
            Repr::Approx { val, rel, unit } => Ok(Self::approx(&self.ctx, -*val, *rel, self.ctx.elem_inv(unit, *rel))),
        }
    }

    pub fn checked_div(&self, other: &PadicNum) -> Result<PadicNum> {
        if self.is_exact_zero() {
            if other.is_zero() {
                return Err(Error::DivisionByZero);
            }
            return Ok(self.clone());
        }
        Ok(self * &other.inv()?)
    }

    pub fn mul_int(&self, n: i64) -> PadicNum {
        self * &Self::from_i64(&self.ctx, n)
    }

    /// Division by a nonzero integer.
    pub fn div_int(&self, n: i64) -> PadicNum {
        self.checked_div(&Self::from_i64(&self.ctx, n)).expect("nonzero integer divisor")
    }

    pub fn pow(&self, mut e: u64) -> PadicNum {
        let mut acc = Self::one(&self.ctx);
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    pub fn pow_signed(&self, e: i64) -> Result<PadicNum> {
        if e >= 0 {
            Ok(self.pow(e as u64))
        } else {
            Ok(self.inv()?.pow(e.unsigned_abs()))
        }
    }

    /// The Frobenius lift `phi`; the identity when `f = 1`.
    pub fn frobenius(&self) -> PadicNum {
        match &self.repr {
            Repr::Approx { val, rel, unit } if *rel > 0 && self.ctx.degree() > 1 => {
                let u = self.ctx.elem_frobenius(unit, *rel);
                Self::approx(&self.ctx, *val, *rel, u)
            }
            _ => self.clone(),
        }
    }

    /// `phi^k`.
    pub fn frobenius_pow(&self, k: u32) -> PadicNum {
        let f = self.ctx.degree();
        let mut x = self.clone();
        for _ in 0..(k % f) {
            x = x.frobenius();
        }
        x
    }

    /// `phi^(-1) = phi^(f-1)`.
    pub fn frobenius_inverse(&self) -> PadicNum {
        self.frobenius_pow(self.ctx.degree() - 1)
    }

    /// Teichmüller representative of a nonzero residue given by its
    /// coordinates mod p: the root of unity of order dividing `p^f - 1`
    /// congruent to it, found as the fixpoint of `x -> x^(p^f)`.
    pub fn teichmuller(ctx: &PadicContext, residue: &[i64]) -> Result<PadicNum> {
        let coords: Vec<BigInt> = residue.iter().map(|&c| BigInt::from(c)).collect();
        let x0 = Self::from_coords(ctx, &coords);
        if !x0.is_unit() {
            return Err(Error::Domain("Teichmüller lift of a residue divisible by p".into()));
        }
        let q = BigUint::from(ctx.p()).pow(ctx.degree());
        let cap = ctx.cap();
        let mut unit = x0.unit_coords().expect("unit").to_vec();
        for _ in 0..=cap + 1 {
            let next = ctx.elem_pow(&unit, &q, cap);
            if next == unit {
                break;
            }
            unit = next;
        }
        Ok(Self::approx(ctx, 0, cap, unit))
    }

    /// p-adic logarithm on `1 + pO`.
    pub fn plog(&self) -> Result<PadicNum> {
        let one = Self::one(&self.ctx);
        let x = self - &one;
        if !x.has_valuation_at_least(1) {
            return Err(Error::Domain("plog needs an argument congruent to 1 mod p".into()));
        }
        if x.is_zero() {
            return Ok(x);
        }
        let vx = x.valuation().expect("nonzero");
        let target = x.abs_prec().expect("inexact");
        let p = self.ctx.p();
        let mut sum = PadicNum::zero(&self.ctx);
        let mut power = x.clone();
        let mut k: u64 = 1;
        loop {
            let term = power.div_int(k as i64);
            sum = if k % 2 == 1 { &sum + &term } else { &sum - &term };
            k += 1;
            if (k as i64) * vx - ilog(k, p) as i64 >= target {
                break;
            }
            power = &power * &x;
        }
        Ok(sum.reduce_abs(target))
    }

    /// p-adic exponential on `pO` (converges since `p >= 5`).
    pub fn pexp(&self) -> Result<PadicNum> {
        if !self.has_valuation_at_least(1) {
            return Err(Error::Domain("pexp needs an argument of positive valuation".into()));
        }
        let one = Self::one(&self.ctx);
        if self.is_zero() {
            return Ok(&one + self);
        }
        let vx = self.valuation().expect("nonzero");
        let target = self.abs_prec().expect("inexact").min(self.ctx.cap() as i64);
        let p = self.ctx.p() as i64;
        let mut sum = one.clone();
        let mut term = one;
        let mut k: i64 = 1;
        loop {
            term = (&term * self).div_int(k);
            sum = &sum + &term;
            k += 1;
            // v(x^k / k!) >= k v(x) - (k - 1)/(p - 1)
            if k * vx - (k - 1) / (p - 1) >= target {
                break;
            }
        }
        Ok(sum.reduce_abs(target))
    }

    /// Square root of an element of even valuation whose unit part is a
    /// square in the residue field. The root congruent to the residue-field
    /// root returned by Tonelli-Shanks is chosen.
    pub fn sqrt(&self) -> Result<PadicNum> {
        let (val, rel, unit) = match &self.repr {
            Repr::Zero => return Ok(self.clone()),
            Repr::Approx { val, rel, .. } if *rel == 0 => {
                return Ok(Self::inexact_zero(&self.ctx, val.div_euclid(2)));
            }
            Repr::Approx { val, rel, unit } => (*val, *rel, unit),
        };
        if val % 2 != 0 {
            return Err(Error::NoSquareRoot);
        }
        let ctx = &self.ctx;
        let mut r0 = unit.clone();
        ctx.elem_reduce(&mut r0, 1);
        let root = residue_sqrt(ctx, &r0).ok_or(Error::NoSquareRoot)?;
        let a = Self::approx(ctx, 0, rel, unit.clone());
        let mut x = Self::approx(ctx, 0, rel, root);
        let mut prec = 1u32;
        while prec < rel {
            prec = (prec * 2).min(rel);
            let q = a.checked_div(&x)?;
            x = (&x + &q).div_int(2);
        }
        let x = x.reduce_abs(rel as i64);
        let shift = PadicNum::from_bigint(ctx, &BigInt::from(ctx.p_pow((val / 2).unsigned_abs() as u32)));
        if val >= 0 {
            Ok(&x * &shift)
        } else {
            x.checked_div(&shift)
        }
    }

    /// True if the unit part is a square in the residue field.
    pub fn is_square_residue(&self) -> bool {
        match &self.repr {
            Repr::Approx { rel, unit, val } if *rel > 0 && val % 2 == 0 => {
                let mut r0 = unit.clone();
                self.ctx.elem_reduce(&mut r0, 1);
                is_residue_square(&self.ctx, &r0)
            }
            _ => false,
        }
    }
}

impl PadicNum {
    /// Uniformly random element of `O / p^N`.
    pub fn random<R: rand::Rng + ?Sized>(ctx: &PadicContext, rng: &mut R) -> PadicNum {
        let m = ctx.p_pow(ctx.cap());
        let coords: Vec<BigInt> =
            (0..ctx.degree()).map(|_| BigInt::from_biguint(Sign::Plus, random_below(&m, rng))).collect();
        Self::from_coords(ctx, &coords)
    }

    /// Uniformly random unit of `O / p^N`.
    pub fn random_unit<R: rand::Rng + ?Sized>(ctx: &PadicContext, rng: &mut R) -> PadicNum {
        loop {
            let x = Self::random(ctx, rng);
            if x.is_unit() {
                return x;
            }
        }
    }
}

fn random_below<R: rand::Rng + ?Sized>(m: &BigUint, rng: &mut R) -> BigUint {
    let bits = m.bits();
    loop {
        let words = bits.div_ceil(32) as usize;
        let mut digits: Vec<u32> = (0..words).map(|_| rng.random::<u32>()).collect();
        let extra = (words as u64) * 32 - bits;
        if let Some(top) = digits.last_mut() {
            *top >>= extra;
        }
        let x = BigUint::new(digits);
        if &x < m {
            return x;
        }
    }
}

struct ContextRel;

impl ContextRel {
    fn elem_all_zero(e: &Elem) -> bool {
        PadicContext::elem_is_zero(e)
    }
}

/// floor(log_p k)
fn ilog(k: u64, p: u64) -> u32 {
    let mut v = 0;
    let mut x = k;
    while x >= p {
        x /= p;
        v += 1;
    }
    v
}

fn is_residue_square(ctx: &PadicContext, a: &Elem) -> bool {
    let q = BigUint::from(ctx.p()).pow(ctx.degree());
    let e = (&q - 1u32) >> 1;
    let r = ctx.elem_pow(a, &e, 1);
    r == ctx.elem_one()
}

/// Tonelli-Shanks in `F_{p^f}`.
fn residue_sqrt(ctx: &PadicContext, a: &Elem) -> Option<Elem> {
    if PadicContext::elem_is_zero(a) {
        return Some(a.clone());
    }
    if !is_residue_square(ctx, a) {
        return None;
    }
    let q = BigUint::from(ctx.p()).pow(ctx.degree());
    let mut t = &q - 1u32;
    let mut s = 0u32;
    while !t.bit(0) {
        t >>= 1;
        s += 1;
    }
    // find a non-square
    let f = ctx.degree() as usize;
    let mut z = None;
    'search: for lead in 1..ctx.p() {
        for pos in 0..f {
            let mut cand = ctx.elem_zero();
            cand[pos] = BigUint::from(lead);
            if pos > 0 {
                cand[0] = BigUint::one();
            }
            if !is_residue_square(ctx, &cand) {
                z = Some(cand);
                break 'search;
            }
        }
    }
    let z = z?;
    let mut m = s;
    let mut c = ctx.elem_pow(&z, &t, 1);
    let mut tt = ctx.elem_pow(a, &t, 1);
    let mut r = ctx.elem_pow(a, &((&t + 1u32) >> 1), 1);
    let one = ctx.elem_one();
    while tt != one {
        let mut i = 0u32;
        let mut probe = tt.clone();
        while probe != one {
            probe = ctx.elem_mul(&probe, &probe, 1);
            i += 1;
            if i == m {
                return None;
            }
        }
        let mut b = c.clone();
        for _ in 0..(m - i - 1) {
            b = ctx.elem_mul(&b, &b, 1);
        }
        m = i;
        c = ctx.elem_mul(&b, &b, 1);
        tt = ctx.elem_mul(&tt, &c, 1);
        r = ctx.elem_mul(&r, &b, 1);
    }
    Some(r)
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident, $impl:ident) => {
        impl $trait<&PadicNum> for &PadicNum {
            type Output = PadicNum;
            fn $method(self, rhs: &PadicNum) -> PadicNum {
                self.$impl(rhs)
            }
        }
        impl $trait<PadicNum> for PadicNum {
            type Output = PadicNum;
            fn $method(self, rhs: PadicNum) -> PadicNum {
                (&self).$impl(&rhs)
            }
        }
        impl $trait<&PadicNum> for PadicNum {
            type Output = PadicNum;
            fn $method(self, rhs: &PadicNum) -> PadicNum {
                (&self).$impl(rhs)
            }
        }
    };
}

impl PadicNum {
    fn sub_impl(&self, other: &PadicNum) -> PadicNum {
        self.add_impl(&other.neg_impl())
    }
}

forward_binop!(Add, add, add_impl);
forward_binop!(Sub, sub, sub_impl);
forward_binop!(Mul, mul, mul_impl);

impl Neg for &PadicNum {
    type Output = PadicNum;
    fn neg(self) -> PadicNum {
        self.neg_impl()
    }
}

impl Neg for PadicNum {
    type Output = PadicNum;
    fn neg(self) -> PadicNum {
        self.neg_impl()
    }
}

impl fmt::Debug for PadicNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for PadicNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.repr {
            Repr::Zero => f.write_str("0"),
            Repr::Approx { val, rel: 0, .. } => write!(f, "O({}^{})", self.ctx.p(), val),
            Repr::Approx { val, rel, unit } => {
                if unit.len() == 1 {
                    write!(f, "{}", unit[0])?;
                } else {
                    f.write_str("(")?;
                    for (i, c) in unit.iter().enumerate() {
                        if i > 0 {
                            f.write_str(", ")?;
                        }
                        write!(f, "{c}")?;
                    }
                    f.write_str(")")?;
                }
                if *val != 0 {
                    write!(f, "*{}^{}", self.ctx.p(), val)?;
                }
                write!(f, " + O({}^{})", self.ctx.p(), *val + *rel as i64)
            }
        }
    }
}

/// Signed integer view of an integral f = 1 value, balanced modulo its
/// absolute precision `p^k`: the representative in `(-p^k/2, p^k/2]`.
pub fn balanced_residue(x: &PadicNum) -> Option<BigInt> {
    let r = x.residue()?;
    let abs = x.abs_prec().unwrap_or(x.context().cap() as i64).clamp(0, x.context().cap() as i64);
    let m = x.context().p_pow(abs as u32);
    let r = BigInt::from_biguint(Sign::Plus, r);
    let m = BigInt::from_biguint(Sign::Plus, m);
    if &r * 2 > m {
        Some(r - m)
    } else {
        Some(r)
    }
}

impl PartialEq for PadicNum {
    /// Equality of representations: same context, same valuation, same
    /// relative precision and digits. Use [`PadicNum::eq_at`] for
    /// congruences.
    fn eq(&self, other: &Self) -> bool {
        if self.ctx != other.ctx {
            return false;
        }
        match (&self.repr, &other.repr) {
            (Repr::Zero, Repr::Zero) => true,
            (Repr::Approx { val: a, rel: r, unit: u }, Repr::Approx { val: b, rel: s, unit: w }) => {
                a == b && r == s && u == w
            }
            _ => false,
        }
    }
}
