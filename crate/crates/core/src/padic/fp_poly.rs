//! Dense polynomials over F_p, used only to pick and validate the defining
//! polynomial of an unramified extension.

use alloc::vec;
use alloc::vec::Vec;

fn mulmod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

pub(crate) fn powmod(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mulmod(acc, base, p);
        }
        base = mulmod(base, base, p);
        exp >>= 1;
    }
    acc
}

pub(crate) fn inv_mod(a: u64, p: u64) -> u64 {
    powmod(a, p - 2, p)
}

fn trim(a: &mut Vec<u64>) {
    while a.last() == Some(&0) {
        a.pop();
    }
}

/// Remainder of `a` modulo `m` (both low-to-high, `m` nonzero).
fn rem(a: &[u64], m: &[u64], p: u64) -> Vec<u64> {
    let mut r = a.to_vec();
    trim(&mut r);
    let dm = m.len() - 1;
    let lead_inv = inv_mod(m[dm], p);
    while r.len() > dm {
        let top = r.len() - 1;
        let c = mulmod(r[top], lead_inv, p);
        let shift = top - dm;
        for (j, &mj) in m.iter().enumerate() {
            let sub = mulmod(c, mj, p);
            r[shift + j] = (r[shift + j] + p - sub) % p;
        }
        trim(&mut r);
    }
    r
}

fn mul(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + mulmod(x, y, p)) % p;
        }
    }
    trim(&mut out);
    out
}

fn pow_mod_poly(base: &[u64], mut exp: u64, m: &[u64], p: u64) -> Vec<u64> {
    let mut acc = vec![1u64];
    let mut b = rem(base, m, p);
    while exp > 0 {
        if exp & 1 == 1 {
            acc = rem(&mul(&acc, &b, p), m, p);
        }
        b = rem(&mul(&b, &b, p), m, p);
        exp >>= 1;
    }
    acc
}

fn gcd(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let mut x = a.to_vec();
    let mut y = b.to_vec();
    trim(&mut x);
    trim(&mut y);
    while !y.is_empty() {
        let r = rem(&x, &y, p);
        x = y;
        y = r;
    }
    x
}

/// Ben-Or irreducibility test for a monic polynomial of degree >= 1.
pub(crate) fn is_irreducible(m: &[u64], p: u64) -> bool {
    let deg = m.len() - 1;
    if deg == 1 {
        return true;
    }
    let x = vec![0u64, 1];
    let mut h = x.clone();
    for _ in 0..deg / 2 {
        h = pow_mod_poly(&h, p, m, p);
        let mut diff = h.clone();
        diff.resize(diff.len().max(2), 0);
        diff[1] = (diff[1] + p - 1) % p;
        trim(&mut diff);
        let g = gcd(m, &diff, p);
        if g.len() != 1 {
            return false;
        }
    }
    true
}

/// Smallest monic irreducible polynomial of the given degree, in the order
/// that favours few nonzero low coefficients (binomials first).
pub(crate) fn first_irreducible(p: u64, degree: u32) -> Vec<u64> {
    let d = degree as usize;
    if d == 1 {
        return vec![0, 1];
    }
    // x^d - c for a non-d-th power c is the usual first candidate.
    for c in 1..p {
        let mut m = vec![0u64; d + 1];
        m[0] = (p - c) % p;
        m[d] = 1;
        if is_irreducible(&m, p) {
            return m;
        }
    }
    // Fall back to an exhaustive search over x^d + a x + b, then all tails.
    for a in 1..p {
        for b in 1..p {
            let mut m = vec![0u64; d + 1];
            m[0] = b;
            m[1] = a;
            m[d] = 1;
            if is_irreducible(&m, p) {
                return m;
            }
        }
    }
    let total = (p as u128).pow(degree);
    for code in 0..total {
        let mut m = vec![0u64; d + 1];
        let mut c = code;
        for slot in m.iter_mut().take(d) {
            *slot = (c % p as u128) as u64;
            c /= p as u128;
        }
        m[d] = 1;
        if m[0] != 0 && is_irreducible(&m, p) {
            return m;
        }
    }
    unreachable!("irreducible polynomials exist in every degree")
}

pub(crate) fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n.is_multiple_of(2) {
        return n == 2;
    }
    let mut d = 3u64;
    while d.saturating_mul(d) <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quadratic_nonresidue_binomial() {
        // 2 is a non-residue mod 5, 1 is a residue.
        assert!(is_irreducible(&[3, 0, 1], 5));
        assert!(!is_irreducible(&[4, 0, 1], 5));
        assert_eq!(first_irreducible(5, 2), vec![3, 0, 1]);
    }

    #[test]
    fn cubic_over_f7() {
        let m = first_irreducible(7, 3);
        assert_eq!(m.len(), 4);
        assert!(is_irreducible(&m, 7));
        // no roots in F_7
        for x in 0..7u64 {
            let v = m.iter().rev().fold(0u64, |acc, &c| (acc * x + c) % 7);
            assert_ne!(v, 0);
        }
    }

    #[test]
    fn primality() {
        assert!(is_prime(5) && is_prime(7) && is_prime(101));
        assert!(!is_prime(1) && !is_prime(9) && !is_prime(25));
    }
}
