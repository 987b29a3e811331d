//! Short Weierstrass model of the quartic and its exact group law.
//!
//! For substitution constants (a, b) and coefficient h the quartic is
//! birational to
//!
//! ```text
//! Y² = X³ − 3h²b⁴a⁴·X − b²h²a²(a⁸ + b⁸h²)
//! ```
//!
//! Points on this curve (usually multiples of a known generator) are mapped
//! back to quartic points and from there to integer solutions.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::arith::exact_sqrt;
use crate::error::{Error, Result};
use crate::model::{Method, Solution};
use crate::quartic::{build_quartic, recover_solution, QuarticCurve, RationalU, Recovery};

pub const DEFAULT_MAX_BITS: u64 = 1_000_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeierstrassCurve {
    pub a: u64,
    pub b: u64,
    pub h: u64,
    pub coef_a: BigInt,
    pub coef_b: BigInt,
    /// Scalar multiplication aborts once a coordinate needs more bits.
    pub max_bits: u64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CurvePoint {
    Infinity,
    Affine { x: BigRational, y: BigRational },
}

impl CurvePoint {
    pub fn affine(x: BigRational, y: BigRational) -> Self {
        CurvePoint::Affine { x, y }
    }

    pub fn is_infinity(&self) -> bool {
        matches!(self, CurvePoint::Infinity)
    }

    pub fn negate(&self) -> CurvePoint {
        match self {
            CurvePoint::Infinity => CurvePoint::Infinity,
            CurvePoint::Affine { x, y } => CurvePoint::Affine {
                x: x.clone(),
                y: -y.clone(),
            },
        }
    }

    fn bits(&self) -> u64 {
        match self {
            CurvePoint::Infinity => 0,
            CurvePoint::Affine { x, y } => [x.numer(), x.denom(), y.numer(), y.denom()]
                .iter()
                .map(|v| v.bits())
                .max()
                .unwrap_or(0),
        }
    }
}

impl fmt::Display for CurvePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CurvePoint::Infinity => f.write_str("O"),
            CurvePoint::Affine { x, y } => write!(f, "({x}, {y})"),
        }
    }
}

pub fn negate(p: &CurvePoint) -> CurvePoint {
    p.negate()
}

pub fn build_curve(a: u64, b: u64, h: u64) -> Result<WeierstrassCurve> {
    let (ai, bi, hi) = (BigInt::from(a), BigInt::from(b), BigInt::from(h));
    let h2 = hi.pow(2);
    let coef_a = BigInt::from(-3) * &h2 * bi.pow(4) * ai.pow(4);
    let coef_b = -(bi.pow(2) * &h2 * ai.pow(2) * (ai.pow(8) + bi.pow(8) * &h2));
    let curve = WeierstrassCurve {
        a,
        b,
        h,
        coef_a,
        coef_b,
        max_bits: DEFAULT_MAX_BITS,
    };
    if curve.discriminant().is_zero() {
        return Err(Error::SingularCurve { a, b, h });
    }
    Ok(curve)
}

fn int(v: &BigInt) -> BigRational {
    BigRational::from_integer(v.clone())
}

impl WeierstrassCurve {
    /// −16(4A³ + 27B²).
    pub fn discriminant(&self) -> BigInt {
        BigInt::from(-16) * (BigInt::from(4) * self.coef_a.pow(3) + BigInt::from(27) * self.coef_b.pow(2))
    }

    pub fn rhs(&self, x: &BigRational) -> BigRational {
        x * x * x + int(&self.coef_a) * x + int(&self.coef_b)
    }

    pub fn on_curve(&self, p: &CurvePoint) -> bool {
        match p {
            CurvePoint::Infinity => true,
            CurvePoint::Affine { x, y } => y * y == self.rhs(x),
        }
    }

    fn require(&self, p: &CurvePoint) -> Result<()> {
        if self.on_curve(p) {
            Ok(())
        } else {
            Err(Error::OffCurve)
        }
    }

    pub fn add(&self, p: &CurvePoint, q: &CurvePoint) -> Result<CurvePoint> {
        self.require(p)?;
        self.require(q)?;
        Ok(self.add_unchecked(p, q))
    }

    pub fn double(&self, p: &CurvePoint) -> Result<CurvePoint> {
        self.require(p)?;
        Ok(self.double_unchecked(p))
    }

    fn add_unchecked(&self, p: &CurvePoint, q: &CurvePoint) -> CurvePoint {
        let (x1, y1, x2, y2) = match (p, q) {
            (CurvePoint::Infinity, _) => return q.clone(),
            (_, CurvePoint::Infinity) => return p.clone(),
            (CurvePoint::Affine { x: x1, y: y1 }, CurvePoint::Affine { x: x2, y: y2 }) => {
                (x1, y1, x2, y2)
            }
        };
        if x1 == x2 {
            if y1 == y2 {
                return self.double_unchecked(p);
            }
            return CurvePoint::Infinity;
        }
        let slope = (y2 - y1) / (x2 - x1);
        let x3 = &slope * &slope - x1 - x2;
        let y3 = slope * (x1 - &x3) - y1;
        CurvePoint::Affine { x: x3, y: y3 }
    }

    fn double_unchecked(&self, p: &CurvePoint) -> CurvePoint {
        let CurvePoint::Affine { x, y } = p else {
            return CurvePoint::Infinity;
        };
        if y.is_zero() {
            return CurvePoint::Infinity;
        }
        let three = BigRational::from_integer(3.into());
        let two = BigRational::from_integer(2.into());
        let slope = (three * x * x + int(&self.coef_a)) / (two.clone() * y);
        let x3 = &slope * &slope - two * x;
        let y3 = slope * (x - &x3) - y;
        CurvePoint::Affine { x: x3, y: y3 }
    }

    /// n·P by double-and-add; negative n multiplies −P.
    pub fn multiply(&self, n: i64, p: &CurvePoint) -> Result<CurvePoint> {
        self.require(p)?;
        let base = if n < 0 { p.negate() } else { p.clone() };
        let mut k = n.unsigned_abs();
        let mut acc = CurvePoint::Infinity;
        let mut addend = base;
        while k > 0 {
            if k & 1 == 1 {
                acc = self.add_unchecked(&acc, &addend);
                self.check_bits(&acc)?;
            }
            k >>= 1;
            if k > 0 {
                addend = self.double_unchecked(&addend);
                self.check_bits(&addend)?;
            }
        }
        Ok(acc)
    }

    fn check_bits(&self, p: &CurvePoint) -> Result<()> {
        if p.bits() > self.max_bits {
            return Err(Error::CoordinateOverflow {
                limit: self.max_bits,
            });
        }
        Ok(())
    }

    pub fn quartic(&self) -> QuarticCurve {
        build_quartic(self.a, self.b, self.h)
    }

    /// Image of a finite point on the quartic, or `None` where the map's
    /// denominator vanishes (X = −b⁶h²/a²) or at infinity.
    pub fn to_quartic(&self, p: &CurvePoint) -> Option<(BigRational, BigRational)> {
        let CurvePoint::Affine { x, y } = p else {
            return None;
        };
        let (a, b, h) = (BigInt::from(self.a), BigInt::from(self.b), BigInt::from(self.h));
        let u_num = int(&(BigInt::from(2) * &b * &h * a.pow(6))) + int(&(BigInt::from(2) * b.pow(3) * &h)) * x;
        let u_den = int(&-(&a * b.pow(6) * h.pow(2))) - int(&a.pow(3)) * x;
        let v_den = int(&(&a * b.pow(12) * h.pow(4)))
            + int(&(BigInt::from(2) * a.pow(3) * h.pow(2) * b.pow(6))) * x
            + int(&a.pow(5)) * x * x;
        if u_den.is_zero() || v_den.is_zero() {
            return None;
        }
        let u = BigRational::new(BigInt::from(-1), BigInt::from(2)) * u_num / u_den;
        let v = int(&(&b * &h * (a.pow(8) - b.pow(8) * h.pow(2)))) * y / v_den;
        Some((u, v))
    }

    /// Finite points with X = m/e², |m| ≤ `numerator_bound`, 1 ≤ e ≤
    /// `denominator_bound`.
    pub fn small_point_search(&self, numerator_bound: u64, denominator_bound: u64) -> Vec<CurvePoint> {
        let mut out = Vec::new();
        let nb = numerator_bound as i64;
        for e in 1..=denominator_bound {
            let e = BigInt::from(e);
            let e2 = &e * &e;
            let e4 = &e2 * &e2;
            let e6 = &e4 * &e2;
            let e3 = &e2 * &e;
            for m in -nb..=nb {
                let m = BigInt::from(m);
                if !e.is_one() && !m.gcd(&e).is_one() {
                    continue;
                }
                // X³ + A·X + B = (m³ + A·m·e⁴ + B·e⁶) / e⁶
                let n = &m * &m * &m + &self.coef_a * &m * &e4 + &self.coef_b * &e6;
                if n.is_negative() {
                    continue;
                }
                let Some(root) = exact_sqrt(n.magnitude()) else {
                    continue;
                };
                let x = BigRational::new(m.clone(), e2.clone());
                let y = BigRational::new(BigInt::from(root), e3.clone());
                if !y.is_zero() {
                    out.push(CurvePoint::affine(x.clone(), -y.clone()));
                }
                out.push(CurvePoint::affine(x, y));
            }
        }
        out
    }
}

/// Walks ±n·P for n = 1..=max_multiple and emits each distinct recovered
/// solution. Returns the number emitted.
pub fn solutions_from_point(
    curve: &WeierstrassCurve,
    p: &CurvePoint,
    max_multiple: u64,
    emit: &mut dyn FnMut(Solution),
) -> Result<usize> {
    curve.require(p)?;
    if p.is_infinity() {
        return Ok(0);
    }
    let quartic = curve.quartic();
    let mut seen: Vec<Solution> = Vec::new();
    let mut multiple = CurvePoint::Infinity;
    for _ in 0..max_multiple {
        multiple = curve.add_unchecked(&multiple, p);
        curve.check_bits(&multiple)?;
        for candidate in [multiple.clone(), multiple.negate()] {
            let Some((u, v)) = curve.to_quartic(&candidate) else {
                continue;
            };
            let u = RationalU::from_rational(&u);
            if let Recovery::Solution(s) = recover_solution(&quartic, &u, &v)? {
                let s = s.with_method(Method::Elliptic);
                if !seen.iter().any(|t| t.same_quadruple(&s)) {
                    seen.push(s.clone());
                    emit(s);
                }
            }
        }
    }
    Ok(seen.len())
}

/// Parses "num/den" or a bare integer.
pub fn parse_rational(s: &str) -> Result<BigRational> {
    let bad = || Error::ParseRational(s.to_string());
    let (num, den) = match s.trim().split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s.trim(), "1"),
    };
    let num: BigInt = num.parse().map_err(|_| bad())?;
    let den: BigInt = den.parse().map_err(|_| bad())?;
    if den.is_zero() {
        return Err(bad());
    }
    Ok(BigRational::new(num, den))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn rat(s: &str) -> BigRational {
        parse_rational(s).unwrap()
    }

    fn gen1() -> CurvePoint {
        CurvePoint::affine(rat("11633949063/14161"), rat("1164093129464040/1685159"))
    }

    fn gen2() -> CurvePoint {
        CurvePoint::affine(rat("4587889797054/6723649"), rat("-8597517313555330650/17434421857"))
    }

    #[test]
    fn curve_9069() {
        let c = build_curve(3, 1, 9069).unwrap();
        assert_eq!(c.coef_a, BigInt::from(-19985962923i64));
        assert_eq!(c.coef_b, BigInt::from(-60885623843910378i64));
        assert!(c.on_curve(&gen1()));
        assert!(c.on_curve(&gen2()));
        assert_eq!(14161, 119 * 119);
    }

    #[test]
    fn singular_and_small_curves() {
        assert!(matches!(build_curve(1, 1, 1), Err(Error::SingularCurve { .. })));
        let c = build_curve(1, 1, 2).unwrap();
        assert_eq!((c.coef_a.clone(), c.coef_b.clone()), (BigInt::from(-12), BigInt::from(-20)));
        let origin = CurvePoint::affine(BigRational::zero(), BigRational::zero());
        assert!(!c.on_curve(&origin));
        assert!(c.on_curve(&CurvePoint::Infinity));
        assert!(matches!(c.add(&origin, &origin), Err(Error::OffCurve)));
    }

    #[test]
    fn to_quartic_known_point() {
        let c = build_curve(3, 1, 9069).unwrap();
        let (u, v) = c.to_quartic(&gen1()).unwrap();
        assert_eq!(u, rat("74903894/2701177"));
        assert_eq!(c.quartic().evaluate(&u), &v * &v);
        assert_eq!(c.to_quartic(&CurvePoint::Infinity), None);
    }

    #[test]
    fn to_quartic_undefined_at_pole() {
        // X = −b⁶h²/a² zeroes both denominators whether or not a point lies there
        let c = build_curve(2, 1, 5).unwrap();
        let x = BigRational::new(BigInt::from(-25), BigInt::from(4));
        let p = CurvePoint::affine(x, BigRational::one());
        assert_eq!(c.to_quartic(&p), None);
    }

    #[test]
    fn solution_from_generator() {
        let c = build_curve(3, 1, 9069).unwrap();
        let mut out = Vec::new();
        solutions_from_point(&c, &gen1(), 1, &mut |s| out.push(s)).unwrap();
        let want = [11390652421u64, 504256282, 6436474351, 1147136408];
        assert!(out.iter().any(|s| [&s.a, &s.b, &s.c, &s.d]
            .iter()
            .zip(want)
            .all(|(x, w)| **x == w.into())));
        assert_eq!(solutions_from_point(&c, &CurvePoint::Infinity, 3, &mut |_| {}).unwrap(), 0);
    }

    #[test]
    fn multiples_verify() {
        let c = build_curve(3, 1, 9069).unwrap();
        let mut out = Vec::new();
        solutions_from_point(&c, &gen1(), 3, &mut |s| out.push(s)).unwrap();
        assert!(out.len() >= 2);
        for s in &out {
            crate::model::check_solution(s).unwrap();
            assert_eq!(s.method, Method::Elliptic);
        }
    }

    #[test]
    fn double_stays_on_curve() {
        let c = build_curve(3, 1, 9069).unwrap();
        let d = c.double(&gen1()).unwrap();
        assert!(c.on_curve(&d));
        assert_eq!(c.multiply(2, &gen1()).unwrap(), d);
        assert_eq!(c.multiply(-2, &gen1()).unwrap(), d.negate());
        assert_eq!(c.multiply(0, &gen1()).unwrap(), CurvePoint::Infinity);
    }

    #[test]
    fn bit_cap_aborts() {
        let mut c = build_curve(3, 1, 9069).unwrap();
        c.max_bits = 200;
        assert!(matches!(c.multiply(64, &gen1()), Err(Error::CoordinateOverflow { limit: 200 })));
    }

    #[test]
    fn small_points() {
        let c = build_curve(1, 1, 2).unwrap();
        let pts = c.small_point_search(200, 3);
        for p in &pts {
            assert!(c.on_curve(p));
        }
        // brute scan over integral X as independent check
        let integral: Vec<i64> = (-200i64..=200)
            .filter(|&x| {
                let v = x * x * x - 12 * x - 20;
                v >= 0 && (v as f64).sqrt().round().powi(2) as i64 == v
            })
            .collect();
        for x in integral {
            let want = BigRational::from_integer(x.into());
            assert!(pts.iter().any(|p| matches!(p, CurvePoint::Affine { x: px, .. } if *px == want)));
        }
        assert!(c.small_point_search(0, 0).is_empty());
        let big = build_curve(3, 1, 9069).unwrap();
        assert!(big.small_point_search(50, 3).is_empty());
    }

    #[test]
    fn parse_rational_forms() {
        assert_eq!(rat("6/4"), BigRational::new(3.into(), 2.into()));
        assert_eq!(rat("-7"), BigRational::from_integer((-7).into()));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x/2").is_err());
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]

        #[test]
        fn multiply_is_additive(n in -5i64..=5, m in -5i64..=5) {
            let c = build_curve(3, 1, 9069).unwrap();
            let g = gen1();
            let lhs = c.multiply(n + m, &g).unwrap();
            let rhs = c.add(&c.multiply(n, &g).unwrap(), &c.multiply(m, &g).unwrap()).unwrap();
            prop_assert_eq!(lhs, rhs);
        }
    }
}
