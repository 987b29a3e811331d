//! Parametric solution families.
//!
//! Each family is a polynomial identity producing (h, A, B, C, D) from one
//! parameter (p or n) or two (m, n). Families are evaluated exactly; the
//! identities themselves are checked numerically by [`identity_sweep`].

use std::collections::BTreeMap;
use std::fmt;
use std::ops::RangeInclusive;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive};

use crate::arith::is_fourth_power_u64;
use crate::error::{Error, Result};
use crate::model::{normalize, verify, Method, Normalized, Solution};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FamilyId {
    /// h = a⁴ + b⁴ with (b², a, a², b).
    Obvious,
    /// h = 2n³(n² − 1) with (2n², n − 1, 2n, n + 1).
    Gerardin,
    T1R1,
    T1R2,
    T1R3,
    T1R4,
    T1R5,
    T1R6,
    T2R1,
    T2R2,
    T2R3,
    T2R4,
    T2R5,
    T2R6,
    T2R7,
    T2R8,
    T2R9,
    T2R10,
    T2R11,
    T2R12,
    T2R13,
    T2R14,
    T2R15,
    /// h = 2(m² − n²)³mn.
    DerivedA,
    /// h = 8(m² − n²)m³n³.
    DerivedB,
}

pub const ALL_FAMILIES: [FamilyId; 25] = [
    FamilyId::Obvious,
    FamilyId::Gerardin,
    FamilyId::T1R1,
    FamilyId::T1R2,
    FamilyId::T1R3,
    FamilyId::T1R4,
    FamilyId::T1R5,
    FamilyId::T1R6,
    FamilyId::T2R1,
    FamilyId::T2R2,
    FamilyId::T2R3,
    FamilyId::T2R4,
    FamilyId::T2R5,
    FamilyId::T2R6,
    FamilyId::T2R7,
    FamilyId::T2R8,
    FamilyId::T2R9,
    FamilyId::T2R10,
    FamilyId::T2R11,
    FamilyId::T2R12,
    FamilyId::T2R13,
    FamilyId::T2R14,
    FamilyId::T2R15,
    FamilyId::DerivedA,
    FamilyId::DerivedB,
];

impl FamilyId {
    pub fn name(self) -> &'static str {
        use FamilyId::*;
        match self {
            Obvious => "Obvious",
            Gerardin => "Gerardin",
            T1R1 => "T1R1",
            T1R2 => "T1R2",
            T1R3 => "T1R3",
            T1R4 => "T1R4",
            T1R5 => "T1R5",
            T1R6 => "T1R6",
            T2R1 => "T2R1",
            T2R2 => "T2R2",
            T2R3 => "T2R3",
            T2R4 => "T2R4",
            T2R5 => "T2R5",
            T2R6 => "T2R6",
            T2R7 => "T2R7",
            T2R8 => "T2R8",
            T2R9 => "T2R9",
            T2R10 => "T2R10",
            T2R11 => "T2R11",
            T2R12 => "T2R12",
            T2R13 => "T2R13",
            T2R14 => "T2R14",
            T2R15 => "T2R15",
            DerivedA => "DerivedA",
            DerivedB => "DerivedB",
        }
    }

    pub fn arity(self) -> usize {
        match self {
            FamilyId::Obvious | FamilyId::DerivedA | FamilyId::DerivedB => 2,
            _ => 1,
        }
    }

    /// The h column as printed.
    pub fn h_formula(self) -> &'static str {
        use FamilyId::*;
        match self {
            Obvious => "a^4 + b^4",
            Gerardin => "2n^3(n^2 - 1)",
            T1R1 => "p^2 + 2",
            T1R2 => "p(p^2 + 4)",
            T1R3 => "8p(p^2 + 1)",
            T1R4 => "p^4 - 1",
            T1R5 => "2p^4 - 2",
            T1R6 => "p^4 + 3p^2 + 1",
            T2R1 => "(n^2 + 4)(n^2 + 2)",
            T2R2 => "2n^4 + 12n^2 + 2",
            T2R3 => "2(n^2 + 9)(n^2 + 3)",
            T2R4 => "3(n^2 + 4)(n^2 - 2)",
            T2R5 => "3n^4 + 33n^2 + 3",
            T2R6 => "n^6 + 2n^4 + n^2 + 1",
            T2R7 => "2n^6 + 4n^4 + 2n^2 + 8",
            T2R8 => "3n^6 + 6n^4 + 3n^2 + 27",
            T2R9 => "(n^2 + 2)(n^4 + 3n^2 + 1)",
            T2R10 => "(2n + 1)(n^6 + 2n^4 + 5n^2 + 4n + 1)",
            T2R11 => "2(n + 1)(n^6 + 2n^4 + 5n^2 + 8n + 4)",
            T2R12 => "2(n + 1)(n^2 - n + 2)(n^4 + n^2 + 4n + 4)",
            T2R13 => "2(n^2 + 4)(n^2 + 3)(n^2 + 1)",
            T2R14 => "(n^2 + 3)(n^2 + 1)^2",
            T2R15 => "(2n + 3)(n^6 + 2n^4 + 5n^2 + 12n + 9)",
            DerivedA => "2(m^2 - n^2)^3 mn",
            DerivedB => "8(m^2 - n^2) m^3 n^3",
        }
    }
}

impl fmt::Display for FamilyId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for FamilyId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        ALL_FAMILIES
            .iter()
            .copied()
            .find(|f| f.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::UnknownFamily(s.to_string()))
    }
}

/// h and the raw quadruple (A, B, C, D) before normalization.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RawFamilyValue {
    pub h: BigInt,
    pub quad: [BigInt; 4],
}

fn i(v: i64) -> BigInt {
    BigInt::from(v)
}

fn raw(h: BigInt, a: BigInt, b: BigInt, c: BigInt, d: BigInt) -> RawFamilyValue {
    RawFamilyValue { h, quad: [a, b, c, d] }
}

/// Exact polynomial evaluation of one family.
pub fn evaluate(id: FamilyId, params: &[i64]) -> Result<RawFamilyValue> {
    if params.len() != id.arity() {
        return Err(Error::Arity {
            family: id.name().to_string(),
            expected: id.arity(),
            got: params.len(),
        });
    }
    use FamilyId::*;
    let x = i(params[0]);
    let p = &x;
    let n = &x;
    let pw = |v: &BigInt, e: u32| v.pow(e);
    let one = i(1);
    Ok(match id {
        Obvious => {
            let (a, b) = (i(params[0]), i(params[1]));
            raw(pw(&a, 4) + pw(&b, 4), pw(&b, 2), a.clone(), pw(&a, 2), b)
        }
        Gerardin => raw(
            i(2) * pw(n, 3) * (pw(n, 2) - 1),
            i(2) * pw(n, 2),
            n - 1,
            i(2) * n,
            n + 1,
        ),
        T1R1 => raw(
            pw(p, 2) + 2,
            pw(p, 3) + i(2) * p + 1,
            pw(p, 2) - p + 1,
            pw(p, 3) + i(2) * p - 1,
            pw(p, 2) + p + 1,
        ),
        T1R2 => raw(p * (pw(p, 2) + 4), p - 2, i(2), p + 2, i(0)),
        T1R3 => raw(i(8) * p * (pw(p, 2) + 1), p - 1, one, p + 1, i(0)),
        T1R4 => raw(pw(p, 4) - 1, p.clone(), i(0), one.clone(), one),
        T1R5 => raw(
            i(2) * pw(p, 4) - 2,
            pw(p, 2) + i(2) * p - 1,
            p - 1,
            pw(p, 2) - i(2) * p - 1,
            p + 1,
        ),
        T1R6 => raw(
            pw(p, 4) + i(3) * pw(p, 2) + 1,
            pw(p, 2) + p + 1,
            p - 1,
            pw(p, 2) - p + 1,
            p + 1,
        ),
        T2R1 => raw(
            (pw(n, 2) + 4) * (pw(n, 2) + 2),
            pw(n, 2) + n + 2,
            n - 1,
            pw(n, 2) - n + 2,
            n + 1,
        ),
        T2R2 => raw(
            i(2) * pw(n, 4) + i(12) * pw(n, 2) + 2,
            pw(n, 2) + i(2) * n + 1,
            n - 1,
            pw(n, 2) - i(2) * n + 1,
            n + 1,
        ),
        T2R3 => raw(
            i(2) * (pw(n, 2) + 9) * (pw(n, 2) + 3),
            pw(n, 2) + i(2) * n + 3,
            n - 1,
            pw(n, 2) - i(2) * n + 3,
            n + 1,
        ),
        T2R4 => raw(
            i(3) * (pw(n, 2) + 4) * (pw(n, 2) - 2),
            pw(n, 2) + i(3) * n - 2,
            n - 1,
            pw(n, 2) - i(3) * n - 2,
            n + 1,
        ),
        T2R5 => raw(
            i(3) * pw(n, 4) + i(33) * pw(n, 2) + 3,
            pw(n, 2) + i(3) * n + 1,
            n - 1,
            pw(n, 2) - i(3) * n + 1,
            n + 1,
        ),
        T2R6 => raw(
            pw(n, 6) + i(2) * pw(n, 4) + pw(n, 2) + 1,
            pw(n, 3) + n + 1,
            n - 1,
            pw(n, 3) + n - 1,
            n + 1,
        ),
        T2R7 => raw(
            i(2) * pw(n, 6) + i(4) * pw(n, 4) + i(2) * pw(n, 2) + 8,
            pw(n, 3) + n + 2,
            n - 1,
            pw(n, 3) + n - 2,
            n + 1,
        ),
        T2R8 => raw(
            i(3) * pw(n, 6) + i(6) * pw(n, 4) + i(3) * pw(n, 2) + 27,
            pw(n, 3) + n + 3,
            n - 1,
            pw(n, 3) + n - 3,
            n + 1,
        ),
        T2R9 => raw(
            (pw(n, 2) + 2) * (pw(n, 4) + i(3) * pw(n, 2) + 1),
            pw(n, 3) + i(2) * n + 1,
            n - 1,
            pw(n, 3) + i(2) * n - 1,
            n + 1,
        ),
        T2R10 => raw(
            (i(2) * n + 1) * (pw(n, 6) + i(2) * pw(n, 4) + i(5) * pw(n, 2) + i(4) * n + 1),
            pw(n, 3) + i(3) * n + 1,
            n - 1,
            pw(n, 3) - n - 1,
            n + 1,
        ),
        T2R11 => raw(
            i(2) * (n + 1) * (pw(n, 6) + i(2) * pw(n, 4) + i(5) * pw(n, 2) + i(8) * n + 4),
            pw(n, 3) + i(3) * n + 2,
            n - 1,
            pw(n, 3) - n - 2,
            n + 1,
        ),
        T2R12 => raw(
            i(2) * (n + 1) * (pw(n, 2) - n + 2) * (pw(n, 4) + pw(n, 2) + i(4) * n + 4),
            pw(n, 3) + i(3) * n + 2,
            n - 1,
            pw(n, 3) - n + 2,
            n + 1,
        ),
        T2R13 => raw(
            i(2) * (pw(n, 2) + 4) * (pw(n, 2) + 3) * (pw(n, 2) + 1),
            pw(n, 3) + i(3) * n + 2,
            n - 1,
            pw(n, 3) + i(3) * n - 2,
            n + 1,
        ),
        T2R14 => raw(
            (pw(n, 2) + 3) * pw(&(pw(n, 2) + 1), 2),
            pw(n, 3) + i(3) * n + 2,
            n - 2,
            pw(n, 3) + i(3) * n - 2,
            n + 2,
        ),
        T2R15 => raw(
            (i(2) * n + 3) * (pw(n, 6) + i(2) * pw(n, 4) + i(5) * pw(n, 2) + i(12) * n + 9),
            pw(n, 3) + 3 + i(3) * n,
            n - 1,
            pw(n, 3) - n - 3,
            n + 1,
        ),
        DerivedA => {
            let (m, n) = (i(params[0]), i(params[1]));
            let (m2, n2) = (pw(&m, 2), pw(&n, 2));
            raw(
                i(2) * pw(&(&m2 - &n2), 3) * &m * &n,
                (&n - &m) * (&n + &m) * (pw(&n, 4) - i(4) * &m2 * &n2 - pw(&m, 4)),
                i(2) * pw(&m, 3) * &n + i(2) * pw(&n, 3) * &m + i(2) * &m2 * &n2 - pw(&n, 4) - pw(&m, 4),
                (&n - &m) * (&n + &m) * (pw(&n, 4) + i(4) * &m2 * &n2 - pw(&m, 4)),
                i(2) * pw(&m, 3) * &n + i(2) * pw(&n, 3) * &m - i(2) * &m2 * &n2 + pw(&n, 4) + pw(&m, 4),
            )
        }
        DerivedB => {
            let (m, n) = (i(params[0]), i(params[1]));
            let (m2, n2) = (pw(&m, 2), pw(&n, 2));
            let mn2 = i(2) * &m * &n;
            let core = pw(&m, 4) - i(2) * &m2 * &n2 + pw(&n, 4);
            let cross = i(2) * pw(&m, 3) * &n + i(2) * &m * pw(&n, 3);
            // C is read without the trailing factor mn that appears in print;
            // with it the identity fails
            raw(
                i(8) * (&m2 - &n2) * pw(&m, 3) * pw(&n, 3),
                &mn2 * (&core + &cross),
                pw(&m, 4) - pw(&n, 4) - i(4) * &m2 * &n2,
                &mn2 * (&core - &cross),
                pw(&m, 4) - pw(&n, 4) + i(4) * &m2 * &n2,
            )
        }
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Inadmissible {
    NonPositiveH,
    /// h does not fit the 64-bit search range.
    HOutOfRange,
    FourthPowerH,
    Trivial,
}

impl fmt::Display for Inadmissible {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Inadmissible::NonPositiveH => "h <= 0",
            Inadmissible::HOutOfRange => "h exceeds 64 bits",
            Inadmissible::FourthPowerH => "h is a fourth power",
            Inadmissible::Trivial => "quadruple is trivial",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Generated {
    pub id: FamilyId,
    pub params: Vec<i64>,
    pub h: u64,
    pub raw: [BigInt; 4],
    pub solution: Solution,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Generation {
    Admissible(Box<Generated>),
    Inadmissible(Inadmissible),
}

fn admissible_h(h: &BigInt) -> std::result::Result<u64, Inadmissible> {
    if !h.is_positive() {
        return Err(Inadmissible::NonPositiveH);
    }
    let h = h.to_u64().ok_or(Inadmissible::HOutOfRange)?;
    if is_fourth_power_u64(h) {
        return Err(Inadmissible::FourthPowerH);
    }
    Ok(h)
}

/// Evaluates a family and normalizes the result.
pub fn generate(id: FamilyId, params: &[i64]) -> Result<Generation> {
    let value = evaluate(id, params)?;
    let h = match admissible_h(&value.h) {
        Ok(h) => h,
        Err(why) => return Ok(Generation::Inadmissible(why)),
    };
    let method = Method::Family(id.name().to_string());
    Ok(match normalize(h, &value.quad, method)? {
        Normalized::Trivial => Generation::Inadmissible(Inadmissible::Trivial),
        Normalized::Solution(solution) => Generation::Admissible(Box::new(Generated {
            id,
            params: params.to_vec(),
            h,
            raw: value.quad,
            solution,
        })),
    })
}

fn parameter_points(id: FamilyId, range: RangeInclusive<i64>) -> Vec<Vec<i64>> {
    if id.arity() == 1 {
        range.map(|p| vec![p]).collect()
    } else {
        range
            .clone()
            .flat_map(|m| range.clone().map(move |n| vec![m, n]))
            .collect()
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SweepReport {
    pub checked: usize,
    pub excluded: Vec<(Vec<i64>, Inadmissible)>,
    /// First parameter point whose quadruple fails the equation.
    pub failure: Option<Vec<i64>>,
}

impl SweepReport {
    pub fn passed(&self) -> bool {
        self.failure.is_none()
    }
}

/// Checks the identity at every admissible parameter point; two-parameter
/// families sweep the square `range × range`.
pub fn identity_sweep(id: FamilyId, range: RangeInclusive<i64>) -> SweepReport {
    let mut report = SweepReport::default();
    for params in parameter_points(id, range) {
        let value = evaluate(id, &params).expect("arity matches");
        let h = match admissible_h(&value.h) {
            Ok(h) => h,
            Err(why) => {
                report.excluded.push((params, why));
                continue;
            }
        };
        let [a, b, c, d] = &value.quad;
        if !verify(h, a, b, c, d) {
            report.failure = Some(params);
            return report;
        }
        if crate::model::is_trivial(h, a, b, c, d) {
            report.excluded.push((params, Inadmissible::Trivial));
            continue;
        }
        report.checked += 1;
    }
    report
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FamilyHit {
    pub id: FamilyId,
    pub params: Vec<i64>,
    pub solution: Solution,
}

/// Every family instance with parameters in `[-bound, bound]` whose h equals
/// the given value.
pub fn families_matching_h(h: u64, param_bound: u64) -> Vec<FamilyHit> {
    family_index(param_bound, h..=h).remove(&h).unwrap_or_default()
}

/// Family hits for all h in a range, computed in one sweep over parameters.
pub fn family_index(param_bound: u64, h_range: RangeInclusive<u64>) -> BTreeMap<u64, Vec<FamilyHit>> {
    let bound = param_bound.min(i64::MAX as u64) as i64;
    let mut index: BTreeMap<u64, Vec<FamilyHit>> = BTreeMap::new();
    for id in ALL_FAMILIES {
        for params in parameter_points(id, -bound..=bound) {
            let Ok(Generation::Admissible(g)) = generate(id, &params) else {
                continue;
            };
            if h_range.contains(&g.h) {
                index.entry(g.h).or_default().push(FamilyHit {
                    id,
                    params,
                    solution: g.solution,
                });
            }
        }
    }
    index
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigUint;

    fn entries(s: &Solution) -> [u64; 4] {
        [&s.a, &s.b, &s.c, &s.d].map(|x| u64::try_from(x).unwrap())
    }

    fn admissible(id: FamilyId, params: &[i64]) -> Generated {
        match generate(id, params).unwrap() {
            Generation::Admissible(g) => *g,
            other => panic!("{id} {params:?}: {other:?}"),
        }
    }

    #[test]
    fn gerardin_at_two() {
        let g = admissible(FamilyId::Gerardin, &[2]);
        assert_eq!(g.h, 48);
        assert_eq!(entries(&g.solution), [8, 1, 4, 3]);
        assert_eq!(4096 + 48, 256 + 3888);
    }

    #[test]
    fn table1_row4() {
        let g = admissible(FamilyId::T1R4, &[3]);
        assert_eq!(g.h, 80);
        assert_eq!(entries(&g.solution), [3, 0, 1, 1]);
    }

    #[test]
    fn derived_a_at_2_1() {
        let g = admissible(FamilyId::DerivedA, &[2, 1]);
        assert_eq!(g.h, 108);
        assert_eq!(g.raw, [93, 11, -3, 29].map(BigInt::from));
        assert_eq!(entries(&g.solution), [93, 11, 3, 29]);
        assert_eq!(93u64.pow(4) + 108 * 11u64.pow(4), 76386429);
        assert_eq!(3u64.pow(4) + 108 * 29u64.pow(4), 76386429);
    }

    #[test]
    fn derived_b_at_2_1() {
        let g = admissible(FamilyId::DerivedB, &[2, 1]);
        assert_eq!(g.h, 192);
        assert_eq!(entries(&g.solution), [116, 1, 44, 31]);
        assert_eq!(116u64.pow(4) + 192, 181064128);
    }

    #[test]
    fn derived_b_printed_reading_fails() {
        let (m, n) = (BigInt::from(2), BigInt::from(1));
        let value = evaluate(FamilyId::DerivedB, &[2, 1]).unwrap();
        let printed_c = &value.quad[2] * &m * &n;
        let h = value.h.to_u64().unwrap();
        assert!(!verify(h, &value.quad[0], &value.quad[1], &printed_c, &value.quad[3]));
    }

    #[test]
    fn obvious_at_2_1() {
        let g = admissible(FamilyId::Obvious, &[2, 1]);
        assert_eq!(g.h, 17);
        assert_eq!(g.raw, [1, 2, 4, 1].map(BigInt::from));
        // normalized orientation puts the larger A first
        assert_eq!(entries(&g.solution), [4, 1, 1, 2]);
    }

    #[test]
    fn inadmissible_parameters() {
        assert_eq!(
            generate(FamilyId::T1R4, &[1]).unwrap(),
            Generation::Inadmissible(Inadmissible::NonPositiveH)
        );
        assert_eq!(
            generate(FamilyId::DerivedA, &[3, 3]).unwrap(),
            Generation::Inadmissible(Inadmissible::NonPositiveH)
        );
        // (p − 2, 2, p + 2, 0) with p = 0 has h = 0
        assert!(matches!(generate(FamilyId::T1R2, &[0]).unwrap(), Generation::Inadmissible(_)));
        assert!(matches!(
            generate(FamilyId::Gerardin, &[1, 2]),
            Err(Error::Arity { expected: 1, got: 2, .. })
        ));
    }

    #[test]
    fn matching_h() {
        let hits = families_matching_h(48, 10);
        let want: [BigUint; 4] = [8u32, 1, 4, 3].map(BigUint::from);
        let find = |id: FamilyId, params: &[i64]| {
            hits.iter()
                .find(|hit| hit.id == id && hit.params == params)
                .map(|hit| [hit.solution.a.clone(), hit.solution.b.clone(), hit.solution.c.clone(), hit.solution.d.clone()])
        };
        assert_eq!(find(FamilyId::Gerardin, &[2]), Some(want.clone()));
        assert_eq!(find(FamilyId::T2R1, &[2]), Some(want));
        assert!(families_matching_h(17, 3)
            .iter()
            .any(|hit| hit.id == FamilyId::Obvious && hit.params == [2, 1]));
        for hit in families_matching_h(7, 50) {
            assert_eq!(hit.solution.h, 7);
            crate::model::check_solution(&hit.solution).unwrap();
        }
    }

    #[test]
    fn sweeps_pass_on_full_range() {
        for id in ALL_FAMILIES {
            let r = identity_sweep(id, -50..=50);
            assert!(r.passed(), "{id} failed at {:?}", r.failure);
            assert!(r.checked > 0, "{id}");
        }
    }

    #[test]
    fn gerardin_vs_t2r1() {
        // the two coincide at 2 only; h differs elsewhere
        let mut agree = Vec::new();
        for p in 2..=50 {
            let g = admissible(FamilyId::Gerardin, &[p]);
            let t = admissible(FamilyId::T2R1, &[p]);
            if g.h == t.h && g.solution.same_quadruple(&t.solution) {
                agree.push(p);
            }
        }
        assert_eq!(agree, vec![2]);
    }

    #[test]
    fn names_round_trip() {
        for id in ALL_FAMILIES {
            assert_eq!(id.name().parse::<FamilyId>().unwrap(), id);
        }
        assert!("T3R1".parse::<FamilyId>().is_err());
    }
}
