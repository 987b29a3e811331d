//! Smallest solution per h, ranked by (A⁴ + h·B⁴, A, B).

use std::collections::BTreeMap;

use num_bigint::BigUint;

use super::record::SolutionRecord;
use crate::model::Solution;

/// A box searched exhaustively: every A, C ≤ `a_max` and B, D ≤ `b_max`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Coverage {
    pub a_max: u64,
    pub b_max: u64,
}

impl Coverage {
    /// Whether the box contains every solution lighter than `weight`.
    ///
    /// A lighter solution has A⁴, C⁴ < weight and h·B⁴, h·D⁴ < weight.
    pub fn covers_below(&self, h: u64, weight: &BigUint) -> bool {
        if *weight == BigUint::from(0u8) {
            return true;
        }
        let below = weight - 1u32;
        let a_needed = below.nth_root(4);
        let b_needed = (&below / h).nth_root(4);
        a_needed <= BigUint::from(self.a_max) && b_needed <= BigUint::from(self.b_max)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MinimalRow {
    pub h: u64,
    pub solution: Solution,
    pub weight: BigUint,
    /// Set when minimality is not established by an exhaustive box.
    pub unproven: bool,
    pub records: usize,
}

/// One row per h, ascending. Without a coverage box every row is flagged.
pub fn minimal_report(records: &[SolutionRecord], coverage: Option<Coverage>) -> Vec<MinimalRow> {
    let mut best: BTreeMap<u64, (&SolutionRecord, usize)> = BTreeMap::new();
    for r in records {
        let entry = best.entry(r.solution.h).or_insert((r, 0));
        entry.1 += 1;
        let cur = entry.0;
        let key = |x: &SolutionRecord| (x.weight.clone(), x.solution.a.clone(), x.solution.b.clone());
        if key(r) < key(cur) {
            entry.0 = r;
        }
    }
    best.into_iter()
        .map(|(h, (r, count))| MinimalRow {
            h,
            solution: r.solution.clone(),
            weight: r.weight.clone(),
            unproven: !coverage.is_some_and(|c| c.covers_below(h, &r.weight)),
            records: count,
        })
        .collect()
}

pub fn format_report(rows: &[MinimalRow]) -> String {
    let mut out = String::from("h\tA\tB\tC\tD\tweight\tmethod\tnote\n");
    for row in rows {
        let s = &row.solution;
        out.push_str(&format!(
            "{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\n",
            row.h,
            s.a,
            s.b,
            s.c,
            s.d,
            row.weight,
            s.method,
            if row.unproven { "???" } else { "" }
        ));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::Method;

    fn rec(h: u64, v: [u64; 4]) -> SolutionRecord {
        SolutionRecord::new(Solution {
            h,
            a: v[0].into(),
            b: v[1].into(),
            c: v[2].into(),
            d: v[3].into(),
            method: Method::Imported,
        })
    }

    #[test]
    fn single_record() {
        let rows = minimal_report(&[rec(48, [8, 1, 4, 3])], None);
        assert_eq!(rows.len(), 1);
        assert_eq!(rows[0].weight, BigUint::from(4144u32));
        assert!(rows[0].unproven);
    }

    #[test]
    fn lower_weight_wins() {
        // 3⁴ = 1 + 5·2⁴ is lighter than (417, 117, 19, 281)
        let rows = minimal_report(&[rec(5, [417, 117, 19, 281]), rec(5, [3, 0, 1, 2])], None);
        assert_eq!(rows[0].solution.a, BigUint::from(3u32));
        assert_eq!(rows[0].records, 2);
    }

    #[test]
    fn coverage_flag() {
        // weight 4144: lighter solutions need A ≤ 8 and B ≤ (4143/48)^(1/4) = 3
        let r = [rec(48, [8, 1, 4, 3])];
        let covered = minimal_report(&r, Some(Coverage { a_max: 8, b_max: 3 }));
        assert!(!covered[0].unproven);
        let short_a = minimal_report(&r, Some(Coverage { a_max: 7, b_max: 3 }));
        assert!(short_a[0].unproven);
        let short_b = minimal_report(&r, Some(Coverage { a_max: 8, b_max: 2 }));
        assert!(short_b[0].unproven);
    }

    #[test]
    fn rows_sorted_by_h() {
        let rows = minimal_report(&[rec(48, [8, 1, 4, 3]), rec(2, [139, 34, 61, 116])], None);
        assert_eq!(rows.iter().map(|r| r.h).collect::<Vec<_>>(), vec![2, 48]);
        assert!(format_report(&rows).lines().count() == 3);
    }
}
