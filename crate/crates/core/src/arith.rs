//! Small integer utilities shared by the rewriting and group code.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{Error, Result};

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Prime factorisation as `(p, e)` pairs with ascending `p`.
pub fn prime_factors(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            let mut e = 0;
            while n.is_multiple_of(d) {
                n /= d;
                e += 1;
            }
            out.push((d, e));
        }
        d += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// The prime `p` if `n = p^k` with `k >= 1`.
pub fn prime_power_base(n: u64) -> Option<(u64, u32)> {
    match prime_factors(n).as_slice() {
        [(p, e)] => Some((*p, *e)),
        _ => None,
    }
}

/// Exponent of `p` in a nonzero integer.
pub fn valuation_big(a: &BigInt, p: u64) -> u32 {
    debug_assert!(!a.is_zero());
    let p = BigInt::from(p);
    let mut a = a.abs();
    let mut l = 0;
    loop {
        let (q, r) = a.div_rem(&p);
        if !r.is_zero() {
            return l;
        }
        a = q;
        l += 1;
    }
}

pub fn valuation(mut a: i128, p: i128) -> u32 {
    debug_assert!(a != 0);
    let mut l = 0;
    while a % p == 0 {
        a /= p;
        l += 1;
    }
    l
}

/// Least non-negative residue.
pub fn rem(a: i128, q: i128) -> i128 {
    a.rem_euclid(q)
}

/// Residue in `(-q/2, q/2]`.
pub fn sym_rem(a: i128, q: i128) -> i128 {
    let r = a.rem_euclid(q);
    if 2 * r > q {
        r - q
    } else {
        r
    }
}

/// Inverse of `a` modulo `q` by the extended Euclidean algorithm.
pub fn mod_inverse(a: i128, q: i128) -> Option<i128> {
    let g = a.rem_euclid(q).extended_gcd(&q);
    if g.gcd != 1 {
        return None;
    }
    Some(g.x.rem_euclid(q))
}

pub fn big_rem_u64(a: &BigInt, q: u64) -> u64 {
    a.mod_floor(&BigInt::from(q))
        .to_u64()
        .expect("residue fits modulus")
}

/// A prime power `p^m` with `m >= 1`, the exponent bound of the variety
/// of class-2 groups the rewriting works in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct PrimePower {
    p: u64,
    m: u32,
}

impl PrimePower {
    /// Largest modulus accepted; keeps products of residues inside `i128`.
    pub const MAX_MODULUS: u64 = 1 << 40;

    pub fn new(p: u64, m: u32) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        let modulus = p.checked_pow(m);
        match modulus {
            Some(q) if m >= 1 && q <= Self::MAX_MODULUS => Ok(Self { p, m }),
            _ => Err(Error::InvalidPrimePower { p, m }),
        }
    }

    /// `p^m` for a group exponent that is a prime power.
    pub fn from_exponent(exponent: u64) -> Option<Self> {
        let (p, m) = prime_power_base(exponent)?;
        Self::new(p, m).ok()
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn modulus(&self) -> u64 {
        self.p.pow(self.m)
    }

    pub fn modulus_big(&self) -> BigInt {
        BigInt::from(self.modulus())
    }

    pub fn reduce(&self, a: &BigInt) -> BigInt {
        a.mod_floor(&self.modulus_big())
    }
}

impl fmt::Display for PrimePower {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}^{}", self.p, self.m)
    }
}
