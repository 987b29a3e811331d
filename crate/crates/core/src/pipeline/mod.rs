//! Strategy ladder, batch runs, persistence and reporting.

mod config;
mod record;
mod report;

pub use config::{
    parse_methods, EllipticConfig, MeetConfig, Overrides, QuarticConfig, SearchConfig, SeedPoint,
    Strategy,
};
pub use record::{
    check_record, load_records, timestamp, verify_file, LineFailure, RecordWriter, SolutionRecord,
    VerifyReport,
};
pub use report::{format_report, minimal_report, Coverage, MinimalRow};

use std::collections::{BTreeMap, BTreeSet};
use std::path::{Path, PathBuf};
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::mpsc;
use std::time::{Duration, Instant};

use num_bigint::BigUint;
use num_integer::Integer;
use serde::Serialize;

use crate::arith::is_fourth_power_u64;
use crate::brute::{brute_search, brute_search_parallel};
use crate::elliptic::{build_curve, solutions_from_point, CurvePoint};
use crate::error::{Error, Result};
use crate::families::{family_index, FamilyHit};
use crate::meet::{meet_search, meet_search_parallel};
use crate::model::{Method, Solution};
use crate::quartic::{build_quartic, rational_points, recover_both_signs};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SearchStatus {
    Solved { method: Method, solution: Solution },
    Unsolved,
    SkippedFourthPower,
}

#[derive(Clone, Debug)]
pub struct MethodAttempt {
    pub strategy: Strategy,
    pub found: usize,
    pub elapsed: Duration,
    pub error: Option<String>,
}

#[derive(Clone, Debug)]
pub struct SearchOutcome {
    pub h: u64,
    pub status: SearchStatus,
    /// Distinct solutions found, ordered by (weight, A, B).
    pub solutions: Vec<Solution>,
    pub elapsed: Duration,
    pub attempts: Vec<MethodAttempt>,
}

impl SearchOutcome {
    pub fn is_solved(&self) -> bool {
        matches!(self.status, SearchStatus::Solved { .. })
    }
}

/// Runs the configured ladder for one h.
pub fn search_h(h: u64, config: &SearchConfig) -> SearchOutcome {
    let hits = if config.methods.contains(&Strategy::Families) {
        family_index(config.family_bound, h..=h).remove(&h).unwrap_or_default()
    } else {
        Vec::new()
    };
    search_with_hits(h, config, &hits)
}

fn search_with_hits(h: u64, config: &SearchConfig, hits: &[FamilyHit]) -> SearchOutcome {
    let start = Instant::now();
    if h == 0 || is_fourth_power_u64(h) {
        return SearchOutcome {
            h,
            status: SearchStatus::SkippedFourthPower,
            solutions: Vec::new(),
            elapsed: start.elapsed(),
            attempts: Vec::new(),
        };
    }
    let mut solutions: Vec<Solution> = Vec::new();
    let mut attempts = Vec::new();
    for &strategy in &config.methods {
        let t = Instant::now();
        let result = run_strategy(h, strategy, config, hits);
        let (found, error) = match result {
            Ok(found) => (found, None),
            Err(e) => (Vec::new(), Some(e.to_string())),
        };
        attempts.push(MethodAttempt {
            strategy,
            found: found.len(),
            elapsed: t.elapsed(),
            error,
        });
        let any = !found.is_empty();
        for s in found {
            if !solutions.iter().any(|t| t.same_quadruple(&s)) {
                solutions.push(s);
            }
        }
        if any && config.stop_on_first {
            break;
        }
    }
    solutions.sort_by(|x, y| x.rank_cmp(y));
    let status = match solutions.first() {
        Some(best) => SearchStatus::Solved {
            method: best.method.clone(),
            solution: best.clone(),
        },
        None => SearchStatus::Unsolved,
    };
    SearchOutcome {
        h,
        status,
        solutions,
        elapsed: start.elapsed(),
        attempts,
    }
}

fn coprime_grid(ab_max: u64) -> impl Iterator<Item = (u64, u64)> {
    (1..=ab_max).flat_map(move |a| (1..=ab_max).filter(move |b| a.gcd(b) == 1).map(move |b| (a, b)))
}

fn run_strategy(h: u64, strategy: Strategy, cfg: &SearchConfig, hits: &[FamilyHit]) -> Result<Vec<Solution>> {
    let mut out = Vec::new();
    match strategy {
        Strategy::Families => out.extend(hits.iter().map(|hit| hit.solution.clone())),
        Strategy::Brute => {
            if cfg.workers > 1 {
                out = brute_search_parallel(h, &cfg.brute, cfg.workers)?;
            } else {
                brute_search(h, &cfg.brute, &mut |s| out.push(s))?;
            }
        }
        Strategy::Meet => {
            let m = &cfg.meet;
            if cfg.workers > 1 {
                out = meet_search_parallel(h, m.p, m.q, m.a_max, m.b_max, cfg.workers)?;
            } else {
                meet_search(h, m.p, m.q, m.a_max, m.b_max, &mut |s| out.push(s))?;
            }
        }
        Strategy::Quartic => {
            for (a, b) in coprime_grid(cfg.quartic.ab_max) {
                let curve = build_quartic(a, b, h);
                for pt in rational_points(&curve, cfg.quartic.height) {
                    out.extend(recover_both_signs(&curve, &pt.u, &pt.v)?);
                }
            }
        }
        Strategy::Elliptic => {
            let e = &cfg.elliptic;
            let mut grid: BTreeSet<(u64, u64)> = coprime_grid(e.ab_max).collect();
            grid.extend(e.seeds.iter().filter(|s| s.h == h).map(|s| (s.a, s.b)));
            for (a, b) in grid {
                let Ok(curve) = build_curve(a, b, h) else { continue };
                let mut points = curve.small_point_search(e.numerator_bound, e.denominator_bound);
                for seed in e.seeds.iter().filter(|s| (s.h, s.a, s.b) == (h, a, b)) {
                    let p = CurvePoint::affine(seed.x.clone(), seed.y.clone());
                    if !curve.on_curve(&p) {
                        return Err(Error::OffCurve);
                    }
                    points.push(p);
                }
                for p in points {
                    match solutions_from_point(&curve, &p, e.max_multiple, &mut |s| out.push(s)) {
                        Ok(_) | Err(Error::CoordinateOverflow { .. }) => {}
                        Err(err) => return Err(err),
                    }
                }
            }
        }
    }
    Ok(out)
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct RunSummary {
    pub h_min: u64,
    pub h_max: u64,
    pub solved: usize,
    pub unsolved: usize,
    pub skipped: usize,
    /// h values already solved in the output file and not searched again.
    pub resumed: usize,
    pub records_written: usize,
    pub unsolved_h: Vec<u64>,
}

fn key_of(s: &Solution) -> (u64, BigUint, BigUint, BigUint, BigUint) {
    (s.h, s.a.clone(), s.b.clone(), s.c.clone(), s.d.clone())
}

pub fn summary_path(out: &Path) -> PathBuf {
    let mut name = out.file_name().unwrap_or_default().to_os_string();
    name.push(".summary.json");
    out.with_file_name(name)
}

/// Searches every h in the configured range and appends records to `out`.
///
/// h values that already have records in `out` are skipped, so an
/// interrupted run can be resumed with the same command. The last h in the
/// file is searched again in case the interruption cut its records short.
/// Records are written in ascending h regardless of the worker count.
pub fn run_range(config: &SearchConfig, out: &Path) -> Result<RunSummary> {
    config.validate()?;
    let existing = if out.exists() { load_records(out)?.0 } else { Vec::new() };
    // Records are written in ascending h, so only the last h can be partial.
    // It is searched again; records already on disk are not repeated.
    let last_h = existing.last().map(|r| r.solution.h);
    let solved_before: BTreeSet<u64> = existing
        .iter()
        .map(|r| r.solution.h)
        .filter(|&h| Some(h) != last_h)
        .collect();
    let mut written: BTreeSet<(u64, BigUint, BigUint, BigUint, BigUint)> =
        existing.into_iter().map(|r| key_of(&r.solution)).collect();
    let mut writer = RecordWriter::open(out)?;
    let pending: Vec<u64> = (config.h_min..=config.h_max)
        .filter(|h| !solved_before.contains(h))
        .collect();
    let index = if config.methods.contains(&Strategy::Families) {
        family_index(config.family_bound, config.h_min..=config.h_max)
    } else {
        BTreeMap::new()
    };
    let inner = SearchConfig {
        workers: 1,
        ..config.clone()
    };
    let mut summary = RunSummary {
        h_min: config.h_min,
        h_max: config.h_max,
        resumed: (config.h_min..=config.h_max)
            .filter(|h| solved_before.contains(h))
            .count(),
        ..Default::default()
    };

    let next = AtomicUsize::new(0);
    let (tx, rx) = mpsc::channel::<(usize, SearchOutcome)>();
    let result = std::thread::scope(|scope| -> Result<()> {
        for _ in 0..config.workers.min(pending.len().max(1)) {
            let tx = tx.clone();
            let (next, pending, index, inner) = (&next, &pending, &index, &inner);
            scope.spawn(move || loop {
                let i = next.fetch_add(1, Ordering::Relaxed);
                let Some(&h) = pending.get(i) else { break };
                let hits = index.get(&h).map(Vec::as_slice).unwrap_or(&[]);
                if tx.send((i, search_with_hits(h, inner, hits))).is_err() {
                    break;
                }
            });
        }
        drop(tx);
        let mut buffered = BTreeMap::new();
        let mut cursor = 0;
        for (i, outcome) in rx {
            buffered.insert(i, outcome);
            while let Some(outcome) = buffered.remove(&cursor) {
                cursor += 1;
                match outcome.status {
                    SearchStatus::Solved { .. } => summary.solved += 1,
                    SearchStatus::Unsolved => {
                        summary.unsolved += 1;
                        summary.unsolved_h.push(outcome.h);
                    }
                    SearchStatus::SkippedFourthPower => summary.skipped += 1,
                }
                for s in outcome.solutions {
                    if !written.insert(key_of(&s)) {
                        continue;
                    }
                    if let Err(e) = writer.append(&SolutionRecord::new(s)) {
                        // stop the workers early; the file stays line-complete
                        next.store(usize::MAX / 2, Ordering::Relaxed);
                        return Err(e);
                    }
                    summary.records_written += 1;
                }
            }
        }
        Ok(())
    });
    result?;

    let path = summary_path(out);
    let text = serde_json::to_string_pretty(&summary).expect("summary serializes");
    std::fs::write(&path, text + "\n").map_err(|source| Error::Io {
        path,
        h: None,
        source,
    })?;
    Ok(summary)
}
