//! Exact integer helpers shared by every search method.
//!
//! The searches run on two integer representations: `u128` when the box is
//! small enough that every A⁴ + h·B⁴ fits, and `BigUint` otherwise. Both are
//! reached through the [`Magnitude`] trait so the search loops are written
//! once.

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigUint;
use num_integer::{Integer, Roots};
use num_traits::{ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Residues of fourth powers modulo 16.
pub const FOURTH_POWER_RESIDUES_MOD16: [u64; 2] = [0, 1];

/// Set of fourth-power residues for one modulus.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Sieve {
    pub modulus: u64,
    pub admissible: BTreeSet<u64>,
}

impl Sieve {
    pub fn admits(&self, residue: u64) -> bool {
        self.admissible.contains(&(residue % self.modulus))
    }
}

/// Builds the complete set `{ n⁴ mod m : 0 ≤ n < m }`.
pub fn build_sieve(modulus: u64) -> Result<Sieve> {
    if modulus < 2 {
        return Err(Error::SieveModulus(modulus));
    }
    let m = modulus as u128;
    let admissible = (0..m)
        .map(|n| {
            let sq = n * n % m;
            (sq * sq % m) as u64
        })
        .collect();
    Ok(Sieve {
        modulus,
        admissible,
    })
}

/// Exact fourth root: `Some(r)` iff `r⁴ == n`.
pub fn integer_fourth_root(n: &BigUint) -> Option<BigUint> {
    if n.is_zero() {
        return Some(BigUint::zero());
    }
    if let Some(small) = n.to_u128() {
        return fourth_root_u128(small).map(BigUint::from);
    }
    // nth_root is Newton iteration on the exact integer
    let r = n.nth_root(4);
    if r.pow(4) == *n {
        Some(r)
    } else {
        None
    }
}

/// Fourth-power test with the mod-16 prefilter applied first.
pub fn is_fourth_power(n: &BigUint) -> bool {
    let low = (n % 16u32).to_u64().unwrap_or(0);
    if low > 1 {
        return false;
    }
    integer_fourth_root(n).is_some()
}

pub fn is_fourth_power_u64(n: u64) -> bool {
    n % 16 <= 1 && fourth_root_u128(n as u128).is_some()
}

/// Floor of the fourth root of `n`.
pub fn floor_fourth_root_u128(n: u128) -> u128 {
    // the float estimate is within one of the true root for every u128
    let mut r = (n as f64).sqrt().sqrt() as u128;
    while r > 0 && r.checked_pow(4).is_none_or(|v| v > n) {
        r -= 1;
    }
    while (r + 1).checked_pow(4).is_some_and(|v| v <= n) {
        r += 1;
    }
    r
}

pub fn fourth_root_u128(n: u128) -> Option<u128> {
    let r = floor_fourth_root_u128(n);
    (r.pow(4) == n).then_some(r)
}

/// Exact square root of a nonnegative integer, prefiltered by the square
/// residues mod 16 and mod 9.
pub fn exact_sqrt(n: &BigUint) -> Option<BigUint> {
    if let Some(small) = n.to_u128() {
        return exact_sqrt_u128(small).map(BigUint::from);
    }
    if !square_residue_ok((n % 144u32).to_u64().unwrap_or(0)) {
        return None;
    }
    let r = n.sqrt();
    (&r * &r == *n).then_some(r)
}

pub fn exact_sqrt_u128(n: u128) -> Option<u128> {
    if !square_residue_ok((n % 144) as u64) {
        return None;
    }
    let r = n.sqrt();
    (r * r == n).then_some(r)
}

fn square_residue_ok(r144: u64) -> bool {
    matches!(r144 % 16, 0 | 1 | 4 | 9) && matches!(r144 % 9, 0 | 1 | 4 | 7)
}

/// Prime factorization by trial division, ascending by prime.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2u64;
    while p.saturating_mul(p) <= n {
        if n.is_multiple_of(p) {
            let mut e = 0;
            while n.is_multiple_of(p) {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// Prime-power factors of `h` whose prime is 3 mod 4.
pub fn prime_factors_3mod4(h: u64) -> Vec<(u64, u32)> {
    factorize(h).into_iter().filter(|&(p, _)| p % 4 == 3).collect()
}

pub fn is_prime(n: u64) -> bool {
    n >= 2 && factorize(n).first() == Some(&(n, 1))
}

/// Inverse of `a` modulo `m`, if it exists.
pub fn mod_inverse(a: u64, m: u64) -> Option<u64> {
    let g = (a as i128).extended_gcd(&(m as i128));
    if g.gcd != 1 {
        return None;
    }
    Some(g.x.rem_euclid(m as i128) as u64)
}

/// Combines `x ≡ r1 (mod m1)` and `x ≡ r2 (mod m2)` for coprime moduli.
pub fn crt_pair(r1: u64, m1: u64, r2: u64, m2: u64) -> Option<(u64, u64)> {
    let inv = mod_inverse(m1 % m2, m2)?;
    let m = m1 as u128 * m2 as u128;
    let diff = (r2 as i128 - r1 as i128).rem_euclid(m2 as i128) as u128;
    let t = diff * inv as u128 % m2 as u128;
    let x = (r1 as u128 + m1 as u128 * t) % m;
    Some((x as u64, m as u64))
}

/// Unsigned integer type a search can run on.
pub trait Magnitude: Clone + Ord + Send + Sync + fmt::Debug + 'static {
    /// Whether every value up to `entry⁴·(h + 1)` is representable.
    fn fits(entry: u64, h: u64) -> bool;
    fn fourth_power(n: u64) -> Self;
    fn add(&self, other: &Self) -> Self;
    /// `self - other`; callers guarantee `self >= other`.
    fn sub(&self, other: &Self) -> Self;
    fn mul_small(&self, k: u64) -> Self;
    fn div_small(&self, k: u64) -> Self;
    fn rem_small(&self, k: u64) -> u64;
    fn fourth_root(&self) -> Option<Self>;
    fn to_biguint(&self) -> BigUint;
}

impl Magnitude for u128 {
    fn fits(entry: u64, h: u64) -> bool {
        (entry as u128)
            .checked_pow(4)
            .and_then(|v| v.checked_mul(h as u128 + 1))
            .is_some()
    }
    fn fourth_power(n: u64) -> Self {
        (n as u128).pow(4)
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn mul_small(&self, k: u64) -> Self {
        self * k as u128
    }
    fn div_small(&self, k: u64) -> Self {
        self / k as u128
    }
    fn rem_small(&self, k: u64) -> u64 {
        (self % k as u128) as u64
    }
    fn fourth_root(&self) -> Option<Self> {
        fourth_root_u128(*self)
    }
    fn to_biguint(&self) -> BigUint {
        BigUint::from(*self)
    }
}

impl Magnitude for BigUint {
    fn fits(_entry: u64, _h: u64) -> bool {
        true
    }
    fn fourth_power(n: u64) -> Self {
        BigUint::from(n).pow(4)
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn mul_small(&self, k: u64) -> Self {
        self * k
    }
    fn div_small(&self, k: u64) -> Self {
        self / k
    }
    fn rem_small(&self, k: u64) -> u64 {
        (self % k).to_u64().unwrap_or(0)
    }
    fn fourth_root(&self) -> Option<Self> {
        integer_fourth_root(self)
    }
    fn to_biguint(&self) -> BigUint {
        self.clone()
    }
}
