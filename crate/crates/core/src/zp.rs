//! Small helpers for arithmetic in `Z/p`.

use crate::{Error, Result};

pub fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    if n.is_multiple_of(2) {
        return n == 2;
    }
    let n = u64::from(n);
    let mut d = 3u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

pub(crate) fn ensure_prime(p: u32) -> Result<()> {
    if is_prime(p) {
        Ok(())
    } else {
        Err(Error::NotPrime(p))
    }
}

/// Canonical representative of `v` in `0..p`.
pub fn residue(v: i64, p: u32) -> u32 {
    v.rem_euclid(i64::from(p)) as u32
}

pub(crate) fn add(a: u32, b: u32, p: u32) -> u32 {
    ((u64::from(a) + u64::from(b)) % u64::from(p)) as u32
}

pub(crate) fn mul(a: u32, b: u32, p: u32) -> u32 {
    ((u64::from(a) * u64::from(b)) % u64::from(p)) as u32
}

pub(crate) fn neg(a: u32, p: u32) -> u32 {
    if a == 0 {
        0
    } else {
        p - a
    }
}

/// Multiplicative inverse of a nonzero residue, via Fermat's little theorem.
pub(crate) fn inverse(a: u32, p: u32) -> u32 {
    debug_assert!(!a.is_multiple_of(p));
    let mut base = u64::from(a % p);
    let m = u64::from(p);
    let mut e = p - 2;
    let mut acc = 1u64;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * base % m;
        }
        base = base * base % m;
        e >>= 1;
    }
    acc as u32
}
