//! Solutions of A⁴ + h·B⁴ = C⁴ + h·D⁴ and their canonical form.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Where a solution came from.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Method {
    Brute,
    Meet,
    Quartic,
    Elliptic,
    Family(String),
    Imported,
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Method::Brute => f.write_str("brute"),
            Method::Meet => f.write_str("meet"),
            Method::Quartic => f.write_str("quartic"),
            Method::Elliptic => f.write_str("elliptic"),
            Method::Family(name) => write!(f, "family:{name}"),
            Method::Imported => f.write_str("imported"),
        }
    }
}

impl FromStr for Method {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        Ok(match s {
            "brute" => Method::Brute,
            "meet" => Method::Meet,
            "quartic" => Method::Quartic,
            "elliptic" => Method::Elliptic,
            "imported" => Method::Imported,
            other => match other.strip_prefix("family:") {
                Some(name) if !name.is_empty() => Method::Family(name.to_string()),
                _ => return Err(format!("unknown method {other:?}")),
            },
        })
    }
}

/// A verified, primitive, nontrivial solution with A > C.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Solution {
    pub h: u64,
    pub a: BigUint,
    pub b: BigUint,
    pub c: BigUint,
    pub d: BigUint,
    pub method: Method,
}

/// A⁴ + h·B⁴, shared by both sides of a solution.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Weight(pub BigUint);

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

impl Solution {
    pub fn weight(&self) -> Weight {
        weight(self)
    }

    /// Entries as a tuple, ignoring provenance.
    pub fn key(&self) -> (u64, &BigUint, &BigUint, &BigUint, &BigUint) {
        (self.h, &self.a, &self.b, &self.c, &self.d)
    }

    pub fn same_quadruple(&self, other: &Solution) -> bool {
        self.key() == other.key()
    }

    /// Total order used for "smallest": (weight, A, B).
    pub fn rank_cmp(&self, other: &Solution) -> Ordering {
        self.weight()
            .cmp(&other.weight())
            .then_with(|| self.a.cmp(&other.a))
            .then_with(|| self.b.cmp(&other.b))
    }

    pub fn with_method(mut self, method: Method) -> Self {
        self.method = method;
        self
    }
}

impl fmt::Display for Solution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "h={} ({}, {}, {}, {}) [{}]",
            self.h, self.a, self.b, self.c, self.d, self.method
        )
    }
}

/// Result of [`normalize`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Normalized {
    Solution(Solution),
    Trivial,
}

impl Normalized {
    pub fn into_solution(self) -> Option<Solution> {
        match self {
            Normalized::Solution(s) => Some(s),
            Normalized::Trivial => None,
        }
    }
}

fn side(h: u64, x: &BigInt, y: &BigInt) -> BigInt {
    x.pow(4) + BigInt::from(h) * y.pow(4)
}

/// Exact check of A⁴ + h·B⁴ = C⁴ + h·D⁴; signs are irrelevant.
pub fn verify(h: u64, a: &BigInt, b: &BigInt, c: &BigInt, d: &BigInt) -> bool {
    side(h, a, b) == side(h, c, d)
}

pub fn verify_unsigned(h: u64, a: &BigUint, b: &BigUint, c: &BigUint, d: &BigUint) -> bool {
    a.pow(4) + b.pow(4) * h == c.pow(4) + d.pow(4) * h
}

/// Absolute values, gcd division, orientation A > C.
///
/// Returns [`Normalized::Trivial`] when the two sides coincide. A quadruple
/// with all entries zero also counts as trivial.
pub fn normalize(h: u64, quad: &[BigInt; 4], method: Method) -> Result<Normalized> {
    let [a, b, c, d] = quad;
    if !verify(h, a, b, c, d) {
        return Err(Error::NotASolution {
            h,
            a: a.to_string(),
            b: b.to_string(),
            c: c.to_string(),
            d: d.to_string(),
        });
    }
    let mut abs: Vec<BigUint> = quad.iter().map(|x| x.abs().to_biguint().unwrap()).collect();
    let g = abs.iter().fold(BigUint::zero(), |g, x| g.gcd(x));
    if g.is_zero() {
        return Ok(Normalized::Trivial);
    }
    if !g.is_one() {
        for x in abs.iter_mut() {
            *x /= &g;
        }
    }
    let (mut a, mut b, mut c, mut d) = (
        abs[0].clone(),
        abs[1].clone(),
        abs[2].clone(),
        abs[3].clone(),
    );
    // on a verified solution A = C forces B = D, so A alone fixes orientation
    match a.cmp(&c) {
        Ordering::Equal => return Ok(Normalized::Trivial),
        Ordering::Less => {
            std::mem::swap(&mut a, &mut c);
            std::mem::swap(&mut b, &mut d);
        }
        Ordering::Greater => {}
    }
    Ok(Normalized::Solution(Solution {
        h,
        a,
        b,
        c,
        d,
        method,
    }))
}

/// Normalizes unsigned entries; convenience for search modules.
pub fn normalize_unsigned(
    h: u64,
    a: &BigUint,
    b: &BigUint,
    c: &BigUint,
    d: &BigUint,
    method: Method,
) -> Result<Normalized> {
    let quad = [a, b, c, d].map(|x| BigInt::from(x.clone()));
    normalize(h, &quad, method)
}

/// True iff the quadruple normalizes to identical sides.
pub fn is_trivial(_h: u64, a: &BigInt, b: &BigInt, c: &BigInt, d: &BigInt) -> bool {
    a.abs() == c.abs() && b.abs() == d.abs()
}

pub fn weight(s: &Solution) -> Weight {
    Weight(s.a.pow(4) + s.b.pow(4) * s.h)
}

pub fn is_primitive(a: &BigUint, b: &BigUint, c: &BigUint, d: &BigUint) -> bool {
    a.gcd(b).gcd(c).gcd(d).is_one()
}

/// Checks every invariant a stored [`Solution`] must satisfy.
pub fn check_solution(s: &Solution) -> std::result::Result<(), &'static str> {
    if s.h == 0 {
        return Err("h must be positive");
    }
    if !verify_unsigned(s.h, &s.a, &s.b, &s.c, &s.d) {
        return Err("equation does not hold");
    }
    if !is_primitive(&s.a, &s.b, &s.c, &s.d) {
        return Err("not primitive");
    }
    if s.a == s.c && s.b == s.d {
        return Err("trivial");
    }
    if s.a <= s.c {
        return Err("not oriented with A > C");
    }
    Ok(())
}
