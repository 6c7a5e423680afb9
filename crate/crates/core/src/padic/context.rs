use alloc::format;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::fp_poly;
use crate::error::{Error, Result};

/// Coordinates of an element of `Z_p[w]/(m(w))` in the basis `1, w, ..., w^(f-1)`.
pub(crate) type Elem = Vec<BigUint>;

/// Arithmetic context: the prime, the relative precision cap `N`, and the
/// unramified extension `Z_p[w]/(m)` of degree `f` (`f = 1` is `Z_p`).
///
/// Cloning is cheap; contexts are shared behind an `Arc`.
#[derive(Clone)]
pub struct PadicContext {
    inner: Arc<Inner>,
}

struct Inner {
    p: u64,
    cap: u32,
    degree: u32,
    modulus: Vec<u64>,
    powers: Vec<BigUint>,
    /// `phi(w)^i` for `i < f` at full precision; empty for `f = 1`.
    frob_basis: Vec<Elem>,
}

impl fmt::Debug for PadicContext {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("PadicContext")
            .field("p", &self.p())
            .field("N", &self.cap())
            .field("f", &self.degree())
            .field("modulus", &self.inner.modulus)
            .finish()
    }
}

impl PartialEq for PadicContext {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.inner, &other.inner)
            || (self.inner.p == other.inner.p
                && self.inner.cap == other.inner.cap
                && self.inner.modulus == other.inner.modulus)
    }
}

impl Eq for PadicContext {}

impl PadicContext {
    /// `Z_p` at precision `N`.
    pub fn new(p: u64, n: u32) -> Result<Self> {
        Self::unramified(p, n, 1)
    }

    /// The unramified extension of degree `f`, defined by the first monic
    /// irreducible polynomial over `F_p` found by [`fp_poly::first_irreducible`].
    pub fn unramified(p: u64, n: u32, f: u32) -> Result<Self> {
        Self::check(p, n, f)?;
        let modulus = fp_poly::first_irreducible(p, f);
        Ok(Self::build(p, n, modulus))
    }

    /// Extension defined by an explicit monic modulus (low-to-high coefficients,
    /// reduced mod p), which must be irreducible over `F_p`.
    pub fn with_modulus(p: u64, n: u32, modulus: &[u64]) -> Result<Self> {
        if modulus.len() < 2 {
            return Err(Error::InvalidContext("modulus must have degree >= 1".into()));
        }
        let f = (modulus.len() - 1) as u32;
        Self::check(p, n, f)?;
        let m: Vec<u64> = modulus.iter().map(|c| c % p).collect();
        if m[m.len() - 1] != 1 {
            return Err(Error::InvalidContext("modulus must be monic".into()));
        }
        if !fp_poly::is_irreducible(&m, p) {
            return Err(Error::InvalidContext(format!("{modulus:?} is reducible mod {p}")));
        }
        Ok(Self::build(p, n, m))
    }

    /// Same field, different precision cap.
    pub fn with_cap(&self, n: u32) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidContext("precision must be >= 1".into()));
        }
        if n == self.cap() {
            return Ok(self.clone());
        }
        Ok(Self::build(self.p(), n, self.inner.modulus.clone()))
    }

    fn check(p: u64, n: u32, f: u32) -> Result<()> {
        if p < 5 || !fp_poly::is_prime(p) {
            return Err(Error::InvalidPrime(p));
        }
        if n == 0 {
            return Err(Error::InvalidContext("precision must be >= 1".into()));
        }
        if f == 0 {
            return Err(Error::InvalidContext("extension degree must be >= 1".into()));
        }
        Ok(())
    }

    fn build(p: u64, cap: u32, modulus: Vec<u64>) -> Self {
        let degree = (modulus.len() - 1) as u32;
        let pb = BigUint::from(p);
        let mut powers = Vec::with_capacity(cap as usize + 1);
        let mut acc = BigUint::one();
        for _ in 0..=cap {
            powers.push(acc.clone());
            acc *= &pb;
        }
        let mut ctx =
            PadicContext { inner: Arc::new(Inner { p, cap, degree, modulus, powers, frob_basis: Vec::new() }) };
        if degree > 1 {
            let image = ctx.frobenius_generator_image();
            let mut basis = Vec::with_capacity(degree as usize);
            let mut acc = ctx.elem_one();
            for _ in 0..degree {
                basis.push(acc.clone());
                acc = ctx.elem_mul(&acc, &image, cap);
            }
            Arc::get_mut(&mut ctx.inner).expect("fresh context").frob_basis = basis;
        }
        ctx
    }

    pub fn p(&self) -> u64 {
        self.inner.p
    }

    /// Precision cap `N` (relative precision of exact inputs).
    pub fn cap(&self) -> u32 {
        self.inner.cap
    }

    /// Extension degree `f`.
    pub fn degree(&self) -> u32 {
        self.inner.degree
    }

    /// Defining polynomial of the extension, low-to-high.
    pub fn modulus(&self) -> &[u64] {
        &self.inner.modulus
    }

    pub(crate) fn same_field(&self, other: &Self) -> bool {
        self.inner.p == other.inner.p && self.inner.modulus == other.inner.modulus
    }

    /// `p^k` as a big integer.
    pub fn p_pow(&self, k: u32) -> BigUint {
        match self.inner.powers.get(k as usize) {
            Some(v) => v.clone(),
            None => BigUint::from(self.p()).pow(k),
        }
    }

    fn p_pow_ref(&self, k: u32) -> alloc::borrow::Cow<'_, BigUint> {
        match self.inner.powers.get(k as usize) {
            Some(v) => alloc::borrow::Cow::Borrowed(v),
            None => alloc::borrow::Cow::Owned(BigUint::from(self.p()).pow(k)),
        }
    }

    // ---- element arithmetic modulo p^k --------------------------------

    pub(crate) fn elem_zero(&self) -> Elem {
        vec![BigUint::zero(); self.degree() as usize]
    }

    pub(crate) fn elem_one(&self) -> Elem {
        let mut e = self.elem_zero();
        e[0] = BigUint::one();
        e
    }

    pub(crate) fn elem_reduce(&self, a: &mut Elem, k: u32) {
        let m = self.p_pow_ref(k);
        for c in a.iter_mut() {
            if *c >= *m {
                *c %= &*m;
            }
        }
    }

    pub(crate) fn elem_add(&self, a: &Elem, b: &Elem, k: u32) -> Elem {
        let m = self.p_pow_ref(k);
        a.iter()
            .zip(b)
            .map(|(x, y)| {
                let s = x + y;
                if s >= *m {
                    s % &*m
                } else {
                    s
                }
            })
            .collect()
    }

    pub(crate) fn elem_neg(&self, a: &Elem, k: u32) -> Elem {
        let m = self.p_pow_ref(k);
        a.iter()
            .map(|x| {
                let x = x % &*m;
                if x.is_zero() {
                    x
                } else {
                    &*m - x
                }
            })
            .collect()
    }

    pub(crate) fn elem_scale(&self, a: &Elem, c: &BigUint, k: u32) -> Elem {
        let m = self.p_pow_ref(k);
        a.iter().map(|x| (x * c) % &*m).collect()
    }

    pub(crate) fn elem_mul(&self, a: &Elem, b: &Elem, k: u32) -> Elem {
        let m = self.p_pow_ref(k);
        let f = self.degree() as usize;
        if f == 1 {
            return vec![(&a[0] * &b[0]) % &*m];
        }
        let mut t = vec![BigUint::zero(); 2 * f - 1];
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                t[i + j] += x * y;
            }
        }
        // w^f = -(m_0 + m_1 w + ... + m_{f-1} w^{f-1})
        let modulus = &self.inner.modulus;
        for i in (f..2 * f - 1).rev() {
            let c = core::mem::take(&mut t[i]) % &*m;
            if c.is_zero() {
                continue;
            }
            for (j, &mj) in modulus.iter().take(f).enumerate() {
                if mj != 0 {
                    let neg = &*m - BigUint::from(mj);
                    t[i - f + j] += &c * neg;
                }
            }
        }
        t.truncate(f);
        for c in t.iter_mut() {
            *c %= &*m;
        }
        t
    }

    pub(crate) fn elem_pow(&self, a: &Elem, e: &BigUint, k: u32) -> Elem {
        let mut acc = self.elem_one();
        self.elem_reduce(&mut acc, k);
        let bits = e.bits();
        for i in (0..bits).rev() {
            acc = self.elem_mul(&acc, &acc, k);
            if e.bit(i) {
                acc = self.elem_mul(&acc, a, k);
            }
        }
        acc
    }

    /// p-adic valuation of the coordinate vector (minimum over coordinates),
    /// `None` if all coordinates are zero.
    pub(crate) fn elem_valuation(&self, a: &Elem) -> Option<u32> {
        let pb = BigUint::from(self.p());
        a.iter()
            .filter(|c| !c.is_zero())
            .map(|c| {
                let mut v = 0u32;
                let mut x = c.clone();
                loop {
                    let (q, r) = x.div_rem(&pb);
                    if !r.is_zero() {
                        break;
                    }
                    x = q;
                    v += 1;
                }
                v
            })
            .min()
    }

    pub(crate) fn elem_div_p_pow(&self, a: &Elem, v: u32) -> Elem {
        if v == 0 {
            return a.clone();
        }
        let d = self.p_pow(v);
        a.iter().map(|c| c / &d).collect()
    }

    pub(crate) fn elem_is_zero(a: &Elem) -> bool {
        a.iter().all(Zero::is_zero)
    }

    /// Inverse of a unit modulo `p^k`: inverse in `F_{p^f}` then Newton lifting.
    pub(crate) fn elem_inv(&self, a: &Elem, k: u32) -> Elem {
        let f = self.degree();
        let mut x = if f == 1 {
            let r = (&a[0] % self.p()).iter_u64_digits().next().unwrap_or(0);
            vec![BigUint::from(fp_poly::inv_mod(r, self.p()))]
        } else {
            // a^(p^f - 2) in the residue field
            let q = BigUint::from(self.p()).pow(f);
            let mut r = a.clone();
            self.elem_reduce(&mut r, 1);
            self.elem_pow(&r, &(q - 2u32), 1)
        };
        let two = {
            let mut t = self.elem_zero();
            t[0] = BigUint::from(2u32);
            t
        };
        let mut prec = 1u32;
        while prec < k {
            prec = (prec * 2).min(k);
            let ax = self.elem_mul(a, &x, prec);
            let corr = self.elem_add(&two, &self.elem_neg(&ax, prec), prec);
            x = self.elem_mul(&x, &corr, prec);
        }
        self.elem_reduce(&mut x, k);
        x
    }

    /// Frobenius lift applied to coordinates, modulo `p^k`.
    pub(crate) fn elem_frobenius(&self, a: &Elem, k: u32) -> Elem {
        if self.degree() == 1 {
            return a.clone();
        }
        let mut out = self.elem_zero();
        for (c, basis) in a.iter().zip(&self.inner.frob_basis) {
            if c.is_zero() {
                continue;
            }
            let term = self.elem_scale(basis, c, k);
            out = self.elem_add(&out, &term, k);
        }
        out
    }

    /// Hensel-lifted root of the modulus congruent to `w^p`; this is `phi(w)`.
    fn frobenius_generator_image(&self) -> Elem {
        let k = self.cap();
        let f = self.degree() as usize;
        let mut w = self.elem_zero();
        w[1] = BigUint::one();
        let mut y = self.elem_pow(&w, &BigUint::from(self.p()), k);
        let m = &self.inner.modulus;
        let eval = |ctx: &Self, y: &Elem, deriv: bool| -> Elem {
            // Horner on m(Y) or m'(Y)
            let mut acc = ctx.elem_zero();
            let coeffs: Vec<BigUint> = if deriv {
                (1..=f).map(|i| BigUint::from(m[i]) * BigUint::from(i as u64)).collect()
            } else {
                m.iter().map(|&c| BigUint::from(c)).collect()
            };
            for c in coeffs.iter().rev() {
                acc = ctx.elem_mul(&acc, y, k);
                let mut cst = ctx.elem_zero();
                cst[0] = c.clone();
                acc = ctx.elem_add(&acc, &cst, k);
            }
            acc
        };
        for _ in 0..64 {
            let val = eval(self, &y, false);
            if Self::elem_is_zero(&val) {
                break;
            }
            let der = eval(self, &y, true);
            let step = self.elem_mul(&val, &self.elem_inv(&der, k), k);
            y = self.elem_add(&y, &self.elem_neg(&step, k), k);
        }
        y
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_small_and_composite_primes() {
        assert_eq!(PadicContext::new(3, 4).unwrap_err(), Error::InvalidPrime(3));
        assert_eq!(PadicContext::new(9, 4).unwrap_err(), Error::InvalidPrime(9));
        assert!(PadicContext::new(5, 0).is_err());
    }

    #[test]
    fn unit_inverse_mod_625() {
        let ctx = PadicContext::new(5, 4).unwrap();
        let inv = ctx.elem_inv(&vec![BigUint::from(3u32)], 4);
        assert_eq!(inv, vec![BigUint::from(417u32)]);
    }

    #[test]
    fn frobenius_image_is_a_root() {
        let ctx = PadicContext::unramified(5, 6, 2).unwrap();
        let image = &ctx.inner.frob_basis[1];
        // m(y) = y^2 + m1 y + m0 must vanish mod 5^6
        let sq = ctx.elem_mul(image, image, 6);
        let m = ctx.modulus();
        let lin = ctx.elem_scale(image, &BigUint::from(m[1]), 6);
        let mut cst = ctx.elem_zero();
        cst[0] = BigUint::from(m[0]);
        let total = ctx.elem_add(&ctx.elem_add(&sq, &lin, 6), &cst, 6);
        assert!(PadicContext::elem_is_zero(&total));
    }
}
