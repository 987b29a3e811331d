//! Sorted-sum collision search.
//!
//! The box of pairs (A, B) is partitioned into p·q buckets by the residues of
//! A⁴ + h·B⁴ modulo two primes p, q ≡ 3 (mod 4). Equal values always share a
//! bucket, so sorting one bucket at a time finds every collision while only
//! one bucket is held in memory per worker.
//!
//! Inside a bucket the candidates are generated directly: for fixed B the
//! required residue of A⁴ mod p has at most two fourth roots, and likewise
//! mod q, so A is fixed modulo p·q by CRT.

use num_bigint::BigUint;
use num_integer::Integer;
use rayon::prelude::*;

use crate::arith::{is_prime, mod_inverse, Magnitude};
use crate::error::{Error, Result};
use crate::model::{normalize_unsigned, Method, Solution};

pub const DEFAULT_P: u64 = 331;
pub const DEFAULT_Q: u64 = 347;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BucketKey {
    pub p: u64,
    pub q: u64,
    pub rp: u64,
    pub rq: u64,
}

impl BucketKey {
    pub fn new(p: u64, q: u64, rp: u64, rq: u64) -> Result<Self> {
        check_primes(p, q)?;
        if rp >= p || rq >= q {
            return Err(Error::EmptyRange(format!(
                "bucket residues ({rp}, {rq}) out of range for ({p}, {q})"
            )));
        }
        Ok(BucketKey { p, q, rp, rq })
    }
}

/// One (A, B) pair with its value A⁴ + h·B⁴.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Entry<V> {
    pub value: V,
    pub a: u64,
    pub b: u64,
}

pub fn check_primes(p: u64, q: u64) -> Result<()> {
    for x in [p, q] {
        if x % 4 != 3 || !is_prime(x) {
            return Err(Error::BadBucketPrime(x));
        }
    }
    if p == q {
        return Err(Error::EqualBucketPrimes(p));
    }
    Ok(())
}

/// Precomputed residue tables for one (h, p, q, box).
pub struct BucketTables<V> {
    p: u64,
    q: u64,
    pq: u64,
    a_max: u64,
    b_max: u64,
    roots_p: Vec<Vec<u64>>,
    roots_q: Vec<Vec<u64>>,
    hb4_mod_p: Vec<u64>,
    hb4_mod_q: Vec<u64>,
    crt_p: u128,
    crt_q: u128,
    a4: Vec<V>,
    hb4: Vec<V>,
}

fn fourth_roots_table(m: u64) -> Vec<Vec<u64>> {
    let mut roots = vec![Vec::new(); m as usize];
    for x in 0..m {
        let sq = x as u128 * x as u128 % m as u128;
        roots[(sq * sq % m as u128) as usize].push(x);
    }
    roots
}

fn h_b4_mod(h: u64, b_max: u64, m: u64) -> Vec<u64> {
    (0..=b_max)
        .map(|b| {
            let b = b as u128 % m as u128;
            let b2 = b * b % m as u128;
            ((h as u128 % m as u128) * (b2 * b2 % m as u128) % m as u128) as u64
        })
        .collect()
}

impl<V: Magnitude> BucketTables<V> {
    pub fn new(h: u64, p: u64, q: u64, a_max: u64, b_max: u64) -> Result<Self> {
        check_primes(p, q)?;
        if h < 2 {
            return Err(Error::HTooSmall { h, min: 2 });
        }
        if a_max == 0 || b_max == 0 {
            return Err(Error::EmptyRange("meet bounds must be at least 1".into()));
        }
        let pq = p * q;
        // x ≡ ap (mod p), x ≡ aq (mod q)  ⇒  x = ap·crt_p + aq·crt_q (mod pq)
        let crt_p = q as u128 * mod_inverse(q % p, p).expect("distinct primes") as u128;
        let crt_q = p as u128 * mod_inverse(p % q, q).expect("distinct primes") as u128;
        Ok(BucketTables {
            p,
            q,
            pq,
            a_max,
            b_max,
            roots_p: fourth_roots_table(p),
            roots_q: fourth_roots_table(q),
            hb4_mod_p: h_b4_mod(h, b_max, p),
            hb4_mod_q: h_b4_mod(h, b_max, q),
            crt_p,
            crt_q,
            a4: (0..=a_max).map(V::fourth_power).collect(),
            hb4: (0..=b_max).map(|b| V::fourth_power(b).mul_small(h)).collect(),
        })
    }

    /// Entries of bucket (rp, rq), sorted by (value, A, B).
    pub fn bucket(&self, rp: u64, rq: u64) -> Vec<Entry<V>> {
        let mut out = Vec::new();
        let pq = self.pq as u128;
        for b in 1..=self.b_max {
            let tp = (rp + self.p - self.hb4_mod_p[b as usize]) % self.p;
            let ap_roots = &self.roots_p[tp as usize];
            if ap_roots.is_empty() {
                continue;
            }
            let tq = (rq + self.q - self.hb4_mod_q[b as usize]) % self.q;
            let aq_roots = &self.roots_q[tq as usize];
            for &ap in ap_roots {
                for &aq in aq_roots {
                    let a0 = ((ap as u128 * self.crt_p + aq as u128 * self.crt_q) % pq) as u64;
                    let start = if a0 == 0 { self.pq } else { a0 };
                    for a in (start..=self.a_max).step_by(self.pq as usize) {
                        out.push(Entry {
                            value: self.a4[a as usize].add(&self.hb4[b as usize]),
                            a,
                            b,
                        });
                    }
                }
            }
        }
        out.sort_unstable();
        out
    }
}

/// All (A, B) in `[1, a_max] × [1, b_max]` whose value lies in the bucket,
/// sorted by (value, A, B).
pub fn bucket_enumerate<V: Magnitude>(
    h: u64,
    key: &BucketKey,
    a_max: u64,
    b_max: u64,
) -> Result<Vec<Entry<V>>> {
    let tables = BucketTables::<V>::new(h, key.p, key.q, a_max, b_max)?;
    Ok(tables.bucket(key.rp, key.rq))
}

/// Primitive solutions from every equal-value pair in a sorted bucket.
pub fn collisions<V: Magnitude>(h: u64, bucket: &[Entry<V>]) -> Vec<Solution> {
    let mut out = Vec::new();
    let mut start = 0;
    while start < bucket.len() {
        let mut end = start + 1;
        while end < bucket.len() && bucket[end].value == bucket[start].value {
            end += 1;
        }
        for i in start..end {
            for j in i + 1..end {
                let (x, y) = (&bucket[i], &bucket[j]);
                if x.a.gcd(&x.b).gcd(&y.a).gcd(&y.b) != 1 {
                    continue;
                }
                let quad = [x.a, x.b, y.a, y.b].map(BigUint::from);
                let normalized =
                    normalize_unsigned(h, &quad[0], &quad[1], &quad[2], &quad[3], Method::Meet)
                        .expect("equal values satisfy the equation");
                out.extend(normalized.into_solution());
            }
        }
        start = end;
    }
    out
}

fn sweep<V: Magnitude>(
    h: u64,
    tables: &BucketTables<V>,
    rp: u64,
    emit: &mut dyn FnMut(Solution),
) -> usize {
    let mut count = 0;
    for rq in 0..tables.q {
        for s in collisions(h, &tables.bucket(rp, rq)) {
            emit(s);
            count += 1;
        }
    }
    count
}

/// Sweeps all p·q buckets in row-major order and emits each primitive
/// nontrivial collision once.
pub fn meet_search(
    h: u64,
    p: u64,
    q: u64,
    a_max: u64,
    b_max: u64,
    emit: &mut dyn FnMut(Solution),
) -> Result<usize> {
    if <u128 as Magnitude>::fits(a_max.max(b_max), h) {
        let tables = BucketTables::<u128>::new(h, p, q, a_max, b_max)?;
        Ok((0..p).map(|rp| sweep(h, &tables, rp, emit)).sum())
    } else {
        let tables = BucketTables::<BigUint>::new(h, p, q, a_max, b_max)?;
        Ok((0..p).map(|rp| sweep(h, &tables, rp, emit)).sum())
    }
}

/// [`meet_search`] with bucket rows spread over `workers` threads. Output
/// order matches the sequential sweep.
pub fn meet_search_parallel(
    h: u64,
    p: u64,
    q: u64,
    a_max: u64,
    b_max: u64,
    workers: usize,
) -> Result<Vec<Solution>> {
    fn rows<V: Magnitude>(
        h: u64,
        p: u64,
        tables: &BucketTables<V>,
        pool: &rayon::ThreadPool,
    ) -> Vec<Solution> {
        let parts: Vec<Vec<Solution>> = pool.install(|| {
            (0..p)
                .into_par_iter()
                .map(|rp| {
                    let mut found = Vec::new();
                    sweep(h, tables, rp, &mut |s| found.push(s));
                    found
                })
                .collect()
        });
        parts.into_iter().flatten().collect()
    }

    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers.max(1))
        .build()
        .map_err(|e| Error::Config(e.to_string()))?;
    if <u128 as Magnitude>::fits(a_max.max(b_max), h) {
        let tables = BucketTables::<u128>::new(h, p, q, a_max, b_max)?;
        Ok(rows(h, p, &tables, &pool))
    } else {
        let tables = BucketTables::<BigUint>::new(h, p, q, a_max, b_max)?;
        Ok(rows(h, p, &tables, &pool))
    }
}
