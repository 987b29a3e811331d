//! Quartic model of the equation for fixed substitution constants (a, b).
//!
//! Writing A = px + a, B = qx − b, C = px − a, D = qx + b turns the equation
//! into a quadratic in x whose discriminant must be a square. With U = p/q
//! that is the genus-one quartic
//!
//! ```text
//! V² = −a⁴U⁴ + h·b³·a·U³ + a³·h·b·U − h²·b⁴
//! ```
//!
//! and each rational point (U, V) gives x = v / (a·p³ − h·b·q³) with v = V·q².

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::arith::{exact_sqrt, exact_sqrt_u128};
use crate::error::{Error, Result};
use crate::model::{normalize, Method, Normalized, Solution};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuarticCurve {
    pub a: u64,
    pub b: u64,
    pub h: u64,
    pub c4: BigInt,
    pub c3: BigInt,
    pub c2: BigInt,
    pub c1: BigInt,
    pub c0: BigInt,
}

/// U = p/q in lowest terms with q ≥ 1.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RationalU {
    pub p: BigInt,
    pub q: BigInt,
}

impl RationalU {
    pub fn new(p: BigInt, q: BigInt) -> Self {
        let r = BigRational::new(p, q);
        RationalU {
            p: r.numer().clone(),
            q: r.denom().clone(),
        }
    }

    pub fn from_rational(r: &BigRational) -> Self {
        RationalU {
            p: r.numer().clone(),
            q: r.denom().clone(),
        }
    }

    pub fn to_rational(&self) -> BigRational {
        BigRational::new(self.p.clone(), self.q.clone())
    }
}

/// A rational point on the quartic, V ≥ 0 when produced by the search.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuarticPoint {
    pub u: RationalU,
    pub v: BigRational,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Recovery {
    Solution(Solution),
    Degenerate,
}

pub fn build_quartic(a: u64, b: u64, h: u64) -> QuarticCurve {
    let (ai, bi, hi) = (BigInt::from(a), BigInt::from(b), BigInt::from(h));
    QuarticCurve {
        a,
        b,
        h,
        c4: -ai.pow(4),
        c3: &hi * bi.pow(3) * &ai,
        c2: BigInt::zero(),
        c1: ai.pow(3) * &hi * &bi,
        c0: -(hi.pow(2) * bi.pow(4)),
    }
}

const SIEVE_PRIMES: [u64; 10] = [3, 5, 7, 11, 13, 17, 19, 23, 29, 31];

impl QuarticCurve {
    pub fn evaluate(&self, u: &BigRational) -> BigRational {
        let coeffs = [&self.c4, &self.c3, &self.c2, &self.c1, &self.c0];
        coeffs.iter().fold(BigRational::zero(), |acc, c| {
            acc * u + BigRational::from_integer((*c).clone())
        })
    }

    /// q⁴·f(p/q) = −a⁴p⁴ + h·b³·q·a·p³ + a³·h·b·q³·p − h²·b⁴·q⁴.
    pub fn homogeneous(&self, p: &BigInt, q: &BigInt) -> BigInt {
        let p2 = p * p;
        let q2 = q * q;
        &self.c4 * &p2 * &p2 + &self.c3 * &p2 * p * q + &self.c1 * p * &q2 * q + &self.c0 * &q2 * &q2
    }

    fn coeffs_i128(&self) -> Option<[i128; 4]> {
        Some([
            self.c4.to_i128()?,
            self.c3.to_i128()?,
            self.c1.to_i128()?,
            self.c0.to_i128()?,
        ])
    }

    fn homogeneous_mod(&self, p: i128, q: i128, m: i128) -> i128 {
        let c = [&self.c4, &self.c3, &self.c1, &self.c0]
            .map(|x| (x % BigInt::from(m)).to_i128().unwrap().rem_euclid(m));
        let (p, q) = (p.rem_euclid(m), q.rem_euclid(m));
        let pow = |x: i128, e: u32| (0..e).fold(1i128, |acc, _| acc * x % m);
        (c[0] * pow(p, 4) + c[1] * pow(p, 3) % m * q + c[2] * p % m * pow(q, 3) + c[3] * pow(q, 4))
            .rem_euclid(m)
    }

    pub fn is_on_curve(&self, u: &BigRational, v: &BigRational) -> bool {
        v * v == self.evaluate(u)
    }
}

fn checked_homogeneous(c: &[i128; 4], p: i128, q: i128) -> Option<i128> {
    let p2 = p.checked_mul(p)?;
    let q2 = q.checked_mul(q)?;
    let t4 = c[0].checked_mul(p2.checked_mul(p2)?)?;
    let t3 = c[1].checked_mul(p2.checked_mul(p)?.checked_mul(q)?)?;
    let t1 = c[2].checked_mul(q2.checked_mul(q)?.checked_mul(p)?)?;
    let t0 = c[3].checked_mul(q2.checked_mul(q2)?)?;
    t4.checked_add(t3)?.checked_add(t1)?.checked_add(t0)
}

fn square_residues(m: u64) -> Vec<bool> {
    let mut ok = vec![false; m as usize];
    for x in 0..m {
        ok[(x * x % m) as usize] = true;
    }
    ok
}

/// Points with U = p/q for one denominator q and |p| ≤ `p_bound`.
pub fn rational_points_with_denominator(curve: &QuarticCurve, q: u64, p_bound: u64) -> Vec<QuarticPoint> {
    let mut out = Vec::new();
    if q == 0 {
        return out;
    }
    let qi = q as i128;
    // for each small prime, which p mod ℓ keep q⁴f(p/q) a square mod ℓ
    let filters: Vec<(u64, Vec<bool>)> = SIEVE_PRIMES
        .iter()
        .map(|&l| {
            let squares = square_residues(l);
            let allowed = (0..l)
                .map(|r| squares[curve.homogeneous_mod(r as i128, qi, l as i128) as usize])
                .collect();
            (l, allowed)
        })
        .collect();
    let small = curve.coeffs_i128();
    let q_big = BigInt::from(q);
    let q2 = BigInt::from(q) * q;
    let bound = p_bound as i128;
    for p in -bound..=bound {
        if p.unsigned_abs().gcd(&(q as u128)) != 1 {
            continue;
        }
        if !filters
            .iter()
            .all(|(l, allowed)| allowed[p.rem_euclid(*l as i128) as usize])
        {
            continue;
        }
        let root = match small.as_ref().and_then(|c| checked_homogeneous(c, p, qi)) {
            Some(val) if val < 0 => None,
            Some(val) => exact_sqrt_u128(val as u128).map(BigUint::from),
            None => {
                let val = curve.homogeneous(&BigInt::from(p), &q_big);
                if val.is_negative() {
                    None
                } else {
                    exact_sqrt(val.magnitude())
                }
            }
        };
        if let Some(v) = root {
            out.push(QuarticPoint {
                u: RationalU::new(BigInt::from(p), q_big.clone()),
                v: BigRational::new(BigInt::from_biguint(Sign::Plus, v), q2.clone()),
            });
        }
    }
    out
}

/// All points with |p| ≤ H and 1 ≤ q ≤ H, q ascending.
pub fn rational_points(curve: &QuarticCurve, height: u64) -> Vec<QuarticPoint> {
    (1..=height)
        .flat_map(|q| rational_points_with_denominator(curve, q, height))
        .collect()
}

/// Maps a point back to an integer solution.
///
/// The quadratic in x vanishes when x²·(a·p³ − h·b·q³) = h·b³·q − a³·p, and
/// with v² equal to the discriminant this gives x = v / (a·p³ − h·b·q³).
pub fn recover_solution(curve: &QuarticCurve, u: &RationalU, v: &BigRational) -> Result<Recovery> {
    let u_rat = u.to_rational();
    if !curve.is_on_curve(&u_rat, v) {
        return Err(Error::OffCurve);
    }
    let (p, q) = (u_rat.numer().clone(), u_rat.denom().clone());
    let (a, b, h) = (BigInt::from(curve.a), BigInt::from(curve.b), BigInt::from(curve.h));
    let v_int = v * BigRational::from_integer(&q * &q);
    let denom = &a * p.pow(3) - &h * &b * q.pow(3);
    if v_int.is_zero() || denom.is_zero() {
        return Ok(Recovery::Degenerate);
    }
    let x = v_int / BigRational::from_integer(denom.clone());
    debug_assert_eq!(
        &x * &x * BigRational::from_integer(denom),
        BigRational::from_integer(&h * b.pow(3) * &q - a.pow(3) * &p)
    );
    let px = BigRational::from_integer(p) * &x;
    let qx = BigRational::from_integer(q) * &x;
    let (ar, br) = (BigRational::from_integer(a), BigRational::from_integer(b));
    let entries = [&px + &ar, &qx - &br, &px - &ar, &qx + &br];
    Ok(match normalize(curve.h, &clear_denominators(&entries), Method::Quartic)? {
        Normalized::Solution(s) => Recovery::Solution(s),
        Normalized::Trivial => Recovery::Degenerate,
    })
}

/// Tries both signs of V; returns the distinct solutions.
pub fn recover_both_signs(curve: &QuarticCurve, u: &RationalU, v: &BigRational) -> Result<Vec<Solution>> {
    let mut out: Vec<Solution> = Vec::new();
    for sign in [v.clone(), -v.clone()] {
        if let Recovery::Solution(s) = recover_solution(curve, u, &sign)? {
            if !out.iter().any(|t| t.same_quadruple(&s)) {
                out.push(s);
            }
        }
    }
    Ok(out)
}

/// Scales rationals by the lcm of their denominators.
pub fn clear_denominators(values: &[BigRational; 4]) -> [BigInt; 4] {
    let lcm = values
        .iter()
        .fold(BigInt::one(), |acc, r| acc.lcm(r.denom()));
    values
        .clone()
        .map(|r| (r * BigRational::from_integer(lcm.clone())).to_integer())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn curve_2572_coefficients() {
        let c = build_quartic(15, 14, 2572);
        assert_eq!(c.c4, BigInt::from(-50625));
        assert_eq!(c.c3, BigInt::from(105_863_520));
        assert_eq!(c.c1, BigInt::from(121_527_000));
        assert_eq!(c.c0, BigInt::from(-254_128_908_544i64));
        assert!(c.c2.is_zero());
    }

    #[test]
    fn unit_curve() {
        let c = build_quartic(1, 1, 7);
        assert_eq!(
            [c.c4, c.c3, c.c1, c.c0],
            [BigInt::from(-1), BigInt::from(7), BigInt::from(7), BigInt::from(-49)]
        );
    }

    #[test]
    fn evaluate_examples() {
        let c = build_quartic(15, 14, 2572);
        let v = rat(45966408488, 23763);
        assert_eq!(c.evaluate(&rat(9002, 267)), &v * &v);
        for h in [2u64, 3, 17, 100] {
            let c = build_quartic(1, 1, h);
            assert!(c.evaluate(&rat(h as i64, 1)).is_zero());
            assert_eq!(c.evaluate(&BigRational::zero()), rat(-((h * h) as i64), 1));
        }
    }

    #[test]
    fn homogeneous_matches_evaluate() {
        let c = build_quartic(3, 2, 41);
        for p in -20i64..=20 {
            for q in 1i64..=9 {
                let direct = c.evaluate(&rat(p, q)) * BigRational::from_integer(BigInt::from(q).pow(4));
                assert_eq!(direct, BigRational::from_integer(c.homogeneous(&p.into(), &q.into())));
                let small = checked_homogeneous(&c.coeffs_i128().unwrap(), p as i128, q as i128);
                assert_eq!(small.map(BigInt::from), Some(c.homogeneous(&p.into(), &q.into())));
                for m in [3i128, 7, 31] {
                    let expect = c.homogeneous(&p.into(), &q.into()).mod_floor(&BigInt::from(m));
                    assert_eq!(BigInt::from(c.homogeneous_mod(p as i128, q as i128, m)), expect);
                }
            }
        }
    }

    #[test]
    fn unit_curve_point_at_h() {
        let c = build_quartic(1, 1, 5);
        let pts = rational_points(&c, 5);
        let hit = pts.iter().find(|pt| pt.u.to_rational() == rat(5, 1)).unwrap();
        assert!(hit.v.is_zero());
        assert_eq!(recover_solution(&c, &hit.u, &hit.v).unwrap(), Recovery::Degenerate);
        for pt in &pts {
            assert!(c.is_on_curve(&pt.u.to_rational(), &pt.v));
        }
    }

    #[test]
    fn height_monotone() {
        let c = build_quartic(2, 1, 13);
        let small = rational_points(&c, 12);
        let large = rational_points(&c, 25);
        for pt in &small {
            assert!(large.contains(pt));
        }
    }

    #[test]
    fn known_point_recovers() {
        let c = build_quartic(15, 14, 2572);
        let pts = rational_points_with_denominator(&c, 267, 10_000);
        let pt = pts.iter().find(|pt| pt.u.p == BigInt::from(9002)).unwrap();
        assert_eq!(pt.v, rat(45966408488, 23763));
        let sols = recover_both_signs(&c, &pt.u, &pt.v).unwrap();
        let expect: [BigUint; 4] = [799298u32, 61171, 623018, 103357].map(BigUint::from);
        assert!(sols
            .iter()
            .any(|s| [s.a.clone(), s.b.clone(), s.c.clone(), s.d.clone()] == expect));
    }

    #[test]
    fn off_curve_rejected() {
        let c = build_quartic(15, 14, 2572);
        let u = RationalU::new(9002.into(), 267.into());
        assert!(matches!(recover_solution(&c, &u, &rat(1, 1)), Err(Error::OffCurve)));
    }

    #[test]
    fn clear_denominators_scales() {
        let got = clear_denominators(&[rat(1, 2), rat(1, 3), rat(-5, 6), rat(2, 1)]);
        assert_eq!(got, [3, 2, -5, 12].map(BigInt::from));
    }
}
