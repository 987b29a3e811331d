//! Exhaustive search over (A, B, C) with D recovered as a fourth root.
//!
//! For every prime p ≡ 3 (mod 4) dividing h, p | A⁴ − C⁴ forces p | A − C or
//! p | A + C, because −1 is not a square mod p. A is therefore walked only
//! through the CRT combinations of A ≡ ±C (mod p). Full divisibility by h is
//! re-checked before the B loop, since prime multiplicity is not encoded in
//! the classes.

use std::collections::BTreeSet;
use std::ops::RangeInclusive;

use num_bigint::BigUint;
use num_integer::Integer;
use rayon::prelude::*;

use crate::arith::{crt_pair, is_fourth_power_u64, prime_factors_3mod4, Magnitude};
use crate::error::{Error, Result};
use crate::model::{Method, Solution};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct ResidueClass {
    pub modulus: u64,
    pub residue: u64,
}

impl ResidueClass {
    /// Members of the class in `[lo, hi]`, ascending.
    pub fn members(&self, lo: u64, hi: u64) -> impl Iterator<Item = u64> {
        let m = self.modulus;
        let first = if lo <= self.residue {
            self.residue
        } else {
            let k = (lo - self.residue).div_ceil(m);
            self.residue + k * m
        };
        (first..=hi).step_by(m as usize)
    }
}

/// Search box. A runs over `[a_min, a_max]`, C over `[0, c_max]`, B over
/// `[0, b_max]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BruteBounds {
    pub a_min: u64,
    pub a_max: u64,
    pub b_max: u64,
    pub c_max: u64,
}

impl BruteBounds {
    pub fn new(a_min: u64, a_max: u64, b_max: u64, c_max: u64) -> Result<Self> {
        let bounds = BruteBounds {
            a_min,
            a_max,
            b_max,
            c_max,
        };
        bounds.validate()?;
        Ok(bounds)
    }

    /// The box `1 ≤ A ≤ n`, `B, C ≤ n`.
    pub fn cube(n: u64) -> Self {
        BruteBounds {
            a_min: 1,
            a_max: n,
            b_max: n,
            c_max: n,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.a_min == 0 || self.a_max == 0 || self.b_max == 0 || self.c_max == 0 {
            return Err(Error::EmptyRange("brute bounds must be at least 1".into()));
        }
        if self.a_min > self.a_max {
            return Err(Error::EmptyRange(format!(
                "a_min {} exceeds a_max {}",
                self.a_min, self.a_max
            )));
        }
        Ok(())
    }
}

/// Admissible classes of A given C, modulo the product of the distinct
/// primes ≡ 3 (mod 4) dividing h.
pub fn residue_classes_for_a(h: u64, c: u64) -> Vec<ResidueClass> {
    let primes: Vec<u64> = prime_factors_3mod4(h).into_iter().map(|(p, _)| p).collect();
    let mut classes = vec![(0u64, 1u64)];
    for p in primes {
        let plus = c % p;
        let minus = (p - plus) % p;
        let mut next = BTreeSet::new();
        for &(r, m) in &classes {
            for s in [plus, minus] {
                if let Some(combined) = crt_pair(r, m, s, p) {
                    next.insert(combined);
                }
            }
        }
        classes = next.into_iter().collect();
    }
    let mut out: Vec<ResidueClass> = classes
        .into_iter()
        .map(|(residue, modulus)| ResidueClass { modulus, residue })
        .collect();
    out.sort();
    out
}

fn check_h(h: u64) -> Result<()> {
    if h < 2 {
        return Err(Error::HTooSmall { h, min: 2 });
    }
    if is_fourth_power_u64(h) {
        return Err(Error::FourthPowerH(h));
    }
    Ok(())
}

/// Runs the search and feeds each primitive solution to `emit` in ascending
/// (C, A, B) order. Returns the number emitted.
pub fn brute_search(h: u64, bounds: &BruteBounds, emit: &mut dyn FnMut(Solution)) -> Result<usize> {
    check_h(h)?;
    bounds.validate()?;
    let widest = bounds.a_max.max(bounds.b_max).max(bounds.c_max);
    let count = if <u128 as Magnitude>::fits(widest, h) {
        scan::<u128>(h, bounds, 0..=bounds.c_max, emit)
    } else {
        scan::<BigUint>(h, bounds, 0..=bounds.c_max, emit)
    };
    Ok(count)
}

/// Same search with the C range split across `workers` threads. The result is
/// sorted by (C, A, B) and equals the single-threaded output.
pub fn brute_search_parallel(h: u64, bounds: &BruteBounds, workers: usize) -> Result<Vec<Solution>> {
    check_h(h)?;
    bounds.validate()?;
    let workers = workers.max(1);
    let chunk = (bounds.c_max / (workers as u64 * 8)).max(1);
    let ranges: Vec<RangeInclusive<u64>> = (0..=bounds.c_max)
        .step_by(chunk as usize)
        .map(|lo| lo..=(lo + chunk - 1).min(bounds.c_max))
        .collect();
    let widest = bounds.a_max.max(bounds.b_max).max(bounds.c_max);
    let small = <u128 as Magnitude>::fits(widest, h);
    let run = |range: RangeInclusive<u64>| {
        let mut found = Vec::new();
        let mut sink = |s: Solution| found.push(s);
        if small {
            scan::<u128>(h, bounds, range, &mut sink);
        } else {
            scan::<BigUint>(h, bounds, range, &mut sink);
        }
        found
    };
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers)
        .build()
        .map_err(|e| Error::Config(e.to_string()))?;
    let parts: Vec<Vec<Solution>> = pool.install(|| ranges.into_par_iter().map(run).collect());
    let mut out: Vec<Solution> = parts.into_iter().flatten().collect();
    out.sort_by(|x, y| (&x.c, &x.a, &x.b).cmp(&(&y.c, &y.a, &y.b)));
    Ok(out)
}

fn candidates_for_c(h: u64, c: u64, lo: u64, hi: u64) -> Vec<u64> {
    let classes = residue_classes_for_a(h, c);
    if classes.len() == 1 && classes[0].modulus == 1 {
        return (lo..=hi).collect();
    }
    let mut out: Vec<u64> = classes.iter().flat_map(|cl| cl.members(lo, hi)).collect();
    out.sort_unstable();
    out
}

fn scan<V: Magnitude>(
    h: u64,
    bounds: &BruteBounds,
    c_range: RangeInclusive<u64>,
    emit: &mut dyn FnMut(Solution),
) -> usize {
    let b_fourth: Vec<V> = (0..=bounds.b_max).map(V::fourth_power).collect();
    let mut count = 0;
    for c in c_range {
        let lo = bounds.a_min.max(c + 1);
        if lo > bounds.a_max {
            continue;
        }
        let c4 = V::fourth_power(c);
        for a in candidates_for_c(h, c, lo, bounds.a_max) {
            let diff = V::fourth_power(a).sub(&c4);
            if diff.rem_small(h) != 0 {
                continue;
            }
            let quotient = diff.div_small(h);
            let q16 = quotient.rem_small(16);
            let ac = a.gcd(&c);
            for (b, b4) in b_fourth.iter().enumerate() {
                // B⁴ ≡ B mod 2 (mod 16); f must land in {0, 1}
                if (q16 + (b as u64 & 1)) % 16 > 1 {
                    continue;
                }
                let f = quotient.add(b4);
                let Some(d) = f.fourth_root() else { continue };
                let d = d.to_biguint();
                let g = BigUint::from(ac.gcd(&(b as u64))).gcd(&d);
                if g != BigUint::from(1u8) {
                    continue;
                }
                let s = Solution {
                    h,
                    a: a.into(),
                    b: (b as u64).into(),
                    c: c.into(),
                    d,
                    method: Method::Brute,
                };
                debug_assert!(crate::model::check_solution(&s).is_ok());
                emit(s);
                count += 1;
            }
        }
    }
    count
}
