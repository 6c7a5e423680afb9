//! Exact fractions `P / Delta^k` in the jet variables `a4^(i), a6^(i)`.
//!
//! Variables are written `a4_i`, `a6_i` in the textual form; `Delta` is
//! `-64 a4^3 - 432 a6^2`.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::modforms::ModularPoint;
use crate::padic::{PadicContext, PadicNum};
use crate::series::QSeries;

/// Which Weierstrass coefficient a jet variable refers to.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Coef {
    A4,
    A6,
}

/// Index of `a4^(i)` is `2i`, of `a6^(i)` is `2i + 1`.
fn var_index(c: Coef, i: usize) -> usize {
    2 * i + if c == Coef::A4 { 0 } else { 1 }
}

fn var_of(idx: usize) -> (Coef, usize) {
    (if idx.is_multiple_of(2) { Coef::A4 } else { Coef::A6 }, idx / 2)
}

/// Exponent vector, trailing zeros trimmed.
type Monomial = Vec<u32>;

fn trim(m: &mut Monomial) {
    while m.last() == Some(&0) {
        m.pop();
    }
}

fn mono_mul(a: &Monomial, b: &Monomial) -> Monomial {
    let mut out = vec![0u32; a.len().max(b.len())];
    for (i, e) in a.iter().enumerate() {
        out[i] += e;
    }
    for (i, e) in b.iter().enumerate() {
        out[i] += e;
    }
    out
}

/// Sparse polynomial with rational coefficients in the jet variables.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Poly {
    terms: BTreeMap<Monomial, BigRational>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly::default()
    }

    pub fn constant(c: BigRational) -> Self {
        let mut p = Poly::zero();
        p.add_term(Vec::new(), c);
        p
    }

    pub fn var(c: Coef, i: usize) -> Self {
        let mut m = vec![0u32; var_index(c, i) + 1];
        m[var_index(c, i)] = 1;
        let mut p = Poly::zero();
        p.add_term(m, BigRational::one());
        p
    }

    /// `Delta = -64 a4^3 - 432 a6^2`.
    pub fn delta() -> Self {
        let a4 = Poly::var(Coef::A4, 0);
        let a6 = Poly::var(Coef::A6, 0);
        a4.pow(3).scale_int(-64).add(&a6.pow(2).scale_int(-432))
    }

    fn add_term(&mut self, mut m: Monomial, c: BigRational) {
        if c.is_zero() {
            return;
        }
        trim(&mut m);
        let entry = self.terms.entry(m).or_insert_with(BigRational::zero);
        *entry += c;
        if entry.is_zero() {
            // re-trim the map
            self.terms.retain(|_, v| !v.is_zero());
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// The constant value if the polynomial is constant.
    pub fn as_constant(&self) -> Option<BigRational> {
        match self.terms.len() {
            0 => Some(BigRational::zero()),
            1 => self.terms.get(&Vec::new()).cloned(),
            _ => None,
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[u32], &BigRational)> {
        self.terms.iter().map(|(m, c)| (m.as_slice(), c))
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn neg(&self) -> Self {
        self.scale(&-BigRational::one())
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        let mut out = Poly::zero();
        for (m, x) in &self.terms {
            out.add_term(m.clone(), x * c);
        }
        out
    }

    pub fn scale_int(&self, c: i64) -> Self {
        self.scale(&BigRational::from_integer(BigInt::from(c)))
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Poly::zero();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                out.add_term(mono_mul(m1, m2), c1 * c2);
            }
        }
        out
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Poly::constant(BigRational::one());
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Partial derivative with respect to `c^(i)`.
    pub fn partial(&self, c: Coef, i: usize) -> Self {
        let idx = var_index(c, i);
        let mut out = Poly::zero();
        for (m, x) in &self.terms {
            let e = m.get(idx).copied().unwrap_or(0);
            if e == 0 {
                continue;
            }
            let mut m2 = m.clone();
            m2[idx] -= 1;
            out.add_term(m2, x * BigRational::from_integer(BigInt::from(e)));
        }
        out
    }

    /// Total derivative with `delta_q a^(i) = a^(i+1)`.
    pub fn dq(&self) -> Self {
        let mut out = Poly::zero();
        for idx in 0..self.num_vars() {
            let (c, i) = var_of(idx);
            let d = self.partial(c, i);
            if !d.is_zero() {
                out = out.add(&d.mul(&Poly::var(c, i + 1)));
            }
        }
        out
    }

    fn num_vars(&self) -> usize {
        self.terms.keys().map(Vec::len).max().unwrap_or(0)
    }

    /// Highest jet index present.
    pub fn order(&self) -> Option<usize> {
        self.num_vars().checked_sub(1).map(|i| i / 2)
    }

    /// Weight with `a4^(i) -> 4`, `a6^(i) -> 6`; `None` if not homogeneous.
    pub fn weight(&self) -> Option<i64> {
        let mut w = None;
        for m in self.terms.keys() {
            let mw: i64 = m.iter().enumerate().map(|(idx, &e)| e as i64 * if idx % 2 == 0 { 4 } else { 6 }).sum();
            match w {
                None => w = Some(mw),
                Some(v) if v != mw => return None,
                _ => {}
            }
        }
        Some(w.unwrap_or(0))
    }

    /// Exact division by `Delta` when possible, using `a4^(0)` as leading
    /// variable (the leading coefficient `-64` is a constant).
    pub fn div_delta(&self) -> Option<Self> {
        let delta = Poly::delta();
        let lead = BigRational::from_integer(BigInt::from(-64));
        let mut rem = self.clone();
        let mut quot = Poly::zero();
        loop {
            let top = rem
                .terms
                .iter()
                .filter(|(m, _)| m.first().copied().unwrap_or(0) >= 3)
                .max_by_key(|(m, _)| m.first().copied().unwrap_or(0))
                .map(|(m, c)| (m.clone(), c.clone()));
            let Some((m, c)) = top else { break };
            let mut qm = m.clone();
            qm[0] -= 3;
            let mut t = Poly::zero();
            t.add_term(qm, c / &lead);
            rem = rem.sub(&t.mul(&delta));
            quot = quot.add(&t);
        }
        rem.is_zero().then_some(quot)
    }

    /// Evaluates with `a4^(i) -> jets4[i]`, `a6^(i) -> jets6[i]`.
    fn eval(&self, jets4: &[QSeries], jets6: &[QSeries], ctx: &PadicContext, order: i64) -> Result<QSeries> {
        let mut acc = QSeries::zero(ctx, order);
        for (m, c) in &self.terms {
            let mut term = QSeries::constant(&PadicNum::from_rational(ctx, c)?, order);
            for (idx, &e) in m.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let (k, i) = var_of(idx);
                let s = if k == Coef::A4 { &jets4[i] } else { &jets6[i] };
                term = &term * &s.pow(e as u64);
            }
            acc = &acc + &term;
        }
        Ok(acc)
    }
}

fn fmt_rational(q: &BigRational) -> String {
    if q.is_integer() {
        format!("{}", q.numer())
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (n, (m, c)) in self.terms.iter().enumerate() {
            let (sign, mag) = if c.is_negative() { ("-", -c) } else { ("+", c.clone()) };
            if n == 0 {
                if sign == "-" {
                    f.write_str("-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            let mut factors: Vec<String> = Vec::new();
            if !mag.is_one() || m.is_empty() {
                factors.push(fmt_rational(&mag));
            }
            for (idx, &e) in m.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let (k, i) = var_of(idx);
                let name = if k == Coef::A4 { "a4" } else { "a6" };
                if e == 1 {
                    factors.push(format!("{name}_{i}"));
                } else {
                    factors.push(format!("{name}_{i}^{e}"));
                }
            }
            f.write_str(&factors.join("*"))?;
        }
        Ok(())
    }
}

/// `numerator / Delta^k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymFraction {
    num: Poly,
    k: u32,
}

impl SymFraction {
    /// Builds `num / Delta^k` and cancels common powers of `Delta`.
    pub fn new(num: Poly, k: u32) -> Self {
        let mut f = SymFraction { num, k };
        f.normalize();
        f
    }

    pub fn constant(c: BigRational) -> Self {
        Self::new(Poly::constant(c), 0)
    }

    pub fn var(c: Coef, i: usize) -> Self {
        Self::new(Poly::var(c, i), 0)
    }

    pub fn delta() -> Self {
        Self::new(Poly::delta(), 0)
    }

    /// `f^1_q = (2 a4 a6' - 3 a6 a4') / Delta` (normalising unit set to 1).
    pub fn hurlburt() -> Self {
        let num = Poly::var(Coef::A4, 0)
            .mul(&Poly::var(Coef::A6, 1))
            .scale_int(2)
            .sub(&Poly::var(Coef::A6, 0).mul(&Poly::var(Coef::A4, 1)).scale_int(3));
        Self::new(num, 1)
    }

    pub fn numerator(&self) -> &Poly {
        &self.num
    }

    pub fn delta_power(&self) -> u32 {
        self.k
    }

    /// Highest jet index present (0 for constants).
    pub fn order(&self) -> usize {
        self.num.order().unwrap_or(0)
    }

    /// Weight, counting `Delta` as 12; `None` if inhomogeneous.
    pub fn weight(&self) -> Option<i64> {
        self.num.weight().map(|w| w - 12 * self.k as i64)
    }

    /// Constant value if the fraction is a constant.
    pub fn as_constant(&self) -> Option<BigRational> {
        if self.k == 0 {
            self.num.as_constant()
        } else if self.num.is_zero() {
            Some(BigRational::zero())
        } else {
            None
        }
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    fn normalize(&mut self) {
        if self.num.is_zero() {
            self.k = 0;
            return;
        }
        while self.k > 0 {
            match self.num.div_delta() {
                Some(q) => {
                    self.num = q;
                    self.k -= 1;
                }
                None => break,
            }
        }
    }

    fn common(&self, other: &Self) -> (Poly, Poly, u32) {
        let k = self.k.max(other.k);
        let d = Poly::delta();
        (self.num.mul(&d.pow(k - self.k)), other.num.mul(&d.pow(k - other.k)), k)
    }

    pub fn add(&self, other: &Self) -> Self {
        let (a, b, k) = self.common(other);
        Self::new(a.add(&b), k)
    }

    pub fn sub(&self, other: &Self) -> Self {
        let (a, b, k) = self.common(other);
        Self::new(a.sub(&b), k)
    }

    pub fn mul(&self, other: &Self) -> Self {
        Self::new(self.num.mul(&other.num), self.k + other.k)
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        Self::new(self.num.scale(c), self.k)
    }

    /// Applies a derivation `d` given its action on polynomials, using the
    /// quotient rule for the `Delta^-k` factor.
    fn derive(&self, d: impl Fn(&Poly) -> Poly) -> Self {
        let dn = d(&self.num);
        if self.k == 0 {
            return Self::new(dn, 0);
        }
        let delta = Poly::delta();
        let ddelta = d(&delta);
        let num = dn.mul(&delta).sub(&self.num.mul(&ddelta).scale_int(self.k as i64));
        Self::new(num, self.k + 1)
    }

    /// Total `delta_q` derivative.
    pub fn dq(&self) -> Self {
        self.derive(Poly::dq)
    }

    /// `partial_r = 16 a4^2 d/da6^(r) - 72 a6 d/da4^(r)`.
    pub fn serre_partial(&self, r: usize) -> Self {
        let a4sq = Poly::var(Coef::A4, 0).pow(2).scale_int(16);
        let a6 = Poly::var(Coef::A6, 0).scale_int(-72);
        self.derive(|p| a4sq.mul(&p.partial(Coef::A6, r)).add(&a6.mul(&p.partial(Coef::A4, r))))
    }

    /// `D_r = 4 a4 d/da4^(r) + 6 a6 d/da6^(r)`.
    pub fn euler_d(&self, r: usize) -> Self {
        let a4 = Poly::var(Coef::A4, 0).scale_int(4);
        let a6 = Poly::var(Coef::A6, 0).scale_int(6);
        self.derive(|p| a4.mul(&p.partial(Coef::A4, r)).add(&a6.mul(&p.partial(Coef::A6, r))))
    }

    /// Substitutes `a4^(i) -> dq^i(a)`, `a6^(i) -> dq^i(b)` for a point
    /// `(a, b)` with invertible `Delta(a, b)`.
    pub fn eval_at(&self, pt: &ModularPoint) -> Result<QSeries> {
        let ctx = pt.context().clone();
        let r = self.order();
        let mut j4 = vec![pt.a.clone()];
        let mut j6 = vec![pt.b.clone()];
        for i in 0..r {
            j4.push(j4[i].dq());
            j6.push(j6[i].dq());
        }
        let order = pt.order();
        let num = self.num.eval(&j4, &j6, &ctx, order)?;
        if self.k == 0 {
            return Ok(num);
        }
        let d = pt.discriminant();
        if d.q_valuation().is_none() {
            return Err(Error::DivisionByZero);
        }
        num.checked_div(&d.pow(self.k as u64))
    }

    /// Fourier expansion at the Tate point.
    pub fn fourier_eval(&self, ctx: &PadicContext, order: usize) -> Result<QSeries> {
        self.eval_at(&crate::modforms::tate_point(ctx, order))
    }

    /// Randomised check of the transformation law
    /// `f(jets of L^4 a, L^6 b) = L^m f(jets of a, b)` for random unit
    /// series `L` and random points `(a, b)`.
    pub fn weight_check_random<R: rand::Rng + ?Sized>(
        &self,
        m: i64,
        ctx: &PadicContext,
        order: i64,
        trials: usize,
        rng: &mut R,
    ) -> Result<WeightCheck> {
        let tol = ctx.cap() as i64 - 2;
        for trial in 0..trials {
            let lambda = QSeries::random_unit(ctx, order, rng);
            let pt = loop {
                let a = QSeries::random_unit(ctx, order, rng);
                let b = QSeries::random_unit(ctx, order, rng);
                let pt = ModularPoint::new(a, b);
                if pt.discriminant().coeff(0).is_unit() {
                    break pt;
                }
            };
            let scaled = ModularPoint::new(&lambda.pow(4) * &pt.a, &lambda.pow(6) * &pt.b);
            let lhs = self.eval_at(&scaled)?;
            let rhs = &lambda.pow_signed(m)? * &self.eval_at(&pt)?;
            if !lhs.eq_at(&rhs, tol) {
                return Ok(WeightCheck { passed: false, witness: Some(WeightWitness { trial, lambda, point: pt }) });
            }
        }
        Ok(WeightCheck { passed: true, witness: None })
    }
}

/// Outcome of [`SymFraction::weight_check_random`].
#[derive(Clone, Debug)]
pub struct WeightCheck {
    pub passed: bool,
    pub witness: Option<WeightWitness>,
}

/// The substitution on which a weight check failed.
#[derive(Clone, Debug)]
pub struct WeightWitness {
    pub trial: usize,
    pub lambda: QSeries,
    pub point: ModularPoint,
}

impl fmt::Display for SymFraction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.k == 0 {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/Delta^{}", self.num, self.k)
        }
    }
}

impl FromStr for SymFraction {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut p = Parser { s: s.as_bytes(), pos: 0 };
        let f = p.fraction()?;
        p.skip_ws();
        if p.pos != p.s.len() {
            return Err(p.err("trailing input"));
        }
        Ok(f)
    }
}

struct Parser<'a> {
    s: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn err(&self, msg: &str) -> Error {
        Error::Parse(format!("{msg} at byte {}", self.pos))
    }

    fn skip_ws(&mut self) {
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.s.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn starts_with(&mut self, word: &str) -> bool {
        self.skip_ws();
        self.s[self.pos..].starts_with(word.as_bytes())
    }

    fn fraction(&mut self) -> Result<SymFraction> {
        let num = if self.eat(b'(') {
            let p = self.poly()?;
            if !self.eat(b')') {
                return Err(self.err("expected ')'"));
            }
            p
        } else {
            self.poly()?
        };
        let mut k = 0;
        let save = self.pos;
        if self.eat(b'/') {
            if self.starts_with("Delta") {
                self.pos += 5;
                k = if self.eat(b'^') { self.uint()? as u32 } else { 1 };
            } else {
                self.pos = save;
            }
        }
        Ok(SymFraction::new(num, k))
    }

    fn poly(&mut self) -> Result<Poly> {
        let mut acc = Poly::zero();
        let mut sign = if self.eat(b'-') {
            -1
        } else {
            self.eat(b'+');
            1
        };
        loop {
            let t = self.term()?;
            acc = acc.add(&t.scale_int(sign));
            if self.eat(b'+') {
                sign = 1;
            } else if self.eat(b'-') {
                sign = -1;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<Poly> {
        let mut acc = Poly::constant(BigRational::one());
        loop {
            let f = self.factor()?;
            acc = acc.mul(&f);
            if !self.eat(b'*') {
                return Ok(acc);
            }
        }
    }

    fn factor(&mut self) -> Result<Poly> {
        match self.peek() {
            Some(c) if c.is_ascii_digit() => {
                let n = self.int()?;
                let save = self.pos;
                if self.eat(b'/') && self.peek().is_some_and(|c| c.is_ascii_digit()) {
                    let d = self.int()?;
                    if d.is_zero() {
                        return Err(self.err("zero denominator"));
                    }
                    return Ok(Poly::constant(BigRational::new(n, d)));
                }
                self.pos = save;
                Ok(Poly::constant(BigRational::from_integer(n)))
            }
            Some(b'a') => {
                self.pos += 1;
                let c = if self.starts_with("4_") {
                    Coef::A4
                } else if self.starts_with("6_") {
                    Coef::A6
                } else {
                    return Err(self.err("expected a4_i or a6_i"));
                };
                self.pos += 2;
                let i = self.uint()?;
                let v = Poly::var(c, i);
                if self.eat(b'^') {
                    Ok(v.pow(self.uint()? as u32))
                } else {
                    Ok(v)
                }
            }
            Some(b'(') => {
                self.pos += 1;
                let p = self.poly()?;
                if !self.eat(b')') {
                    return Err(self.err("expected ')'"));
                }
                if self.eat(b'^') {
                    Ok(p.pow(self.uint()? as u32))
                } else {
                    Ok(p)
                }
            }
            _ => Err(self.err("expected a term")),
        }
    }

    fn int(&mut self) -> Result<BigInt> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected digits"));
        }
        let text = core::str::from_utf8(&self.s[start..self.pos]).expect("ascii digits");
        BigInt::from_str(text).map_err(|_| self.err("bad integer"))
    }

    fn uint(&mut self) -> Result<usize> {
        let n = self.int()?;
        usize::try_from(n).map_err(|_| self.err("index too large"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn dq_of_variables_and_delta() {
        let a4 = SymFraction::var(Coef::A4, 0);
        assert_eq!(a4.dq(), SymFraction::var(Coef::A4, 1));
        assert!(SymFraction::constant(rat(3, 1)).dq().is_zero());
        let d = Poly::delta().dq();
        let expected: Poly = "-192*a4_0^2*a4_1 - 864*a6_0*a6_1".parse::<SymFraction>().unwrap().numerator().clone();
        assert_eq!(d, expected);
    }

    #[test]
    fn serre_and_euler_on_variables() {
        let r = 3;
        assert_eq!(SymFraction::var(Coef::A4, r).serre_partial(r), SymFraction::var(Coef::A6, 0).scale(&rat(-72, 1)));
        assert_eq!(SymFraction::var(Coef::A4, 2).euler_d(2), SymFraction::var(Coef::A4, 0).scale(&rat(4, 1)));
        // Delta does not depend on higher jets; partial_0 kills it, D_0 scales by 12
        assert!(SymFraction::delta().serre_partial(0).is_zero());
        assert_eq!(SymFraction::delta().euler_d(0), SymFraction::delta().scale(&rat(12, 1)));
    }

    #[test]
    fn hurlburt_identities() {
        let f = SymFraction::hurlburt();
        assert_eq!(f.weight(), Some(-2));
        assert!(f.euler_d(1).is_zero());
        let g = f.dq();
        assert_eq!(g.order(), 2);
        assert!(g.euler_d(2).is_zero());
        assert_eq!(g.serre_partial(2).as_constant(), Some(rat(-1, 2)));
        assert_eq!(f.serre_partial(1).weight(), Some(0));
    }

    #[test]
    fn delta_cancellation() {
        let f = SymFraction::new(Poly::delta().mul(&Poly::var(Coef::A6, 2)), 1);
        assert_eq!(f, SymFraction::var(Coef::A6, 2));
        let g = SymFraction::new(Poly::var(Coef::A4, 0).pow(3), 1);
        assert_eq!(g.delta_power(), 1);
    }

    #[test]
    fn text_roundtrip() {
        let f = SymFraction::hurlburt();
        let s = alloc::string::ToString::to_string(&f);
        assert_eq!(s, "(-3*a6_0*a4_1 + 2*a4_0*a6_1)/Delta^1");
        assert_eq!(s.parse::<SymFraction>().unwrap(), f);
        let c: SymFraction = "-1/2".parse().unwrap();
        assert_eq!(c.as_constant(), Some(rat(-1, 2)));
        assert!("a5_0".parse::<SymFraction>().is_err());
        assert!("(a4_0".parse::<SymFraction>().is_err());
    }

    #[test]
    fn fourier_values() {
        let ctx = PadicContext::new(7, 8).unwrap();
        let a4 = SymFraction::var(Coef::A4, 0).fourier_eval(&ctx, 10).unwrap();
        let e4 = crate::modforms::eisenstein(&ctx, 4, 10).unwrap();
        assert!(a4.mul_int(-48).eq_at(&e4, 8));
        let d = SymFraction::delta().fourier_eval(&ctx, 10).unwrap();
        let oracle = QSeries::from_ints(&ctx, 0, &crate::modforms::delta_coeffs(10));
        assert!(d.eq_at(&oracle, 8));
        let one = SymFraction::constant(rat(1, 1)).fourier_eval(&ctx, 10).unwrap();
        assert!(one.eq_at(&QSeries::one(&ctx, 10), 8));
    }

    #[test]
    fn weight_checks() {
        let ctx = PadicContext::new(5, 8).unwrap();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        let a4 = SymFraction::var(Coef::A4, 0);
        assert!(a4.weight_check_random(4, &ctx, 8, 3, &mut rng).unwrap().passed);
        let bad = a4.weight_check_random(6, &ctx, 8, 3, &mut rng).unwrap();
        assert!(!bad.passed && bad.witness.is_some());
        let f = SymFraction::hurlburt();
        assert!(f.weight_check_random(-2, &ctx, 8, 3, &mut rng).unwrap().passed);
    }
}
