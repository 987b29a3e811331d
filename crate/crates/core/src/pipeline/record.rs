//! Append-only JSON-lines solution records.
//!
//! One object per line with exactly the keys `h, a, b, c, d, method, weight,
//! ts`; every integer is a decimal string since weights overflow 64 bits.

use std::fs::{self, File, OpenOptions};
use std::io::{BufRead, BufReader, Read, Seek, SeekFrom, Write};
use std::path::{Path, PathBuf};
use std::time::{SystemTime, UNIX_EPOCH};

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::{check_solution, Method, Solution};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SolutionRecord {
    pub solution: Solution,
    pub weight: BigUint,
    pub ts: String,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct Wire {
    h: String,
    a: String,
    b: String,
    c: String,
    d: String,
    method: String,
    weight: String,
    ts: String,
}

pub fn timestamp() -> String {
    SystemTime::now()
        .duration_since(UNIX_EPOCH)
        .map(|d| d.as_secs().to_string())
        .unwrap_or_else(|_| "0".into())
}

impl SolutionRecord {
    pub fn new(solution: Solution) -> Self {
        let weight = solution.weight().0;
        SolutionRecord {
            solution,
            weight,
            ts: timestamp(),
        }
    }

    pub fn to_line(&self) -> String {
        let s = &self.solution;
        let wire = Wire {
            h: s.h.to_string(),
            a: s.a.to_string(),
            b: s.b.to_string(),
            c: s.c.to_string(),
            d: s.d.to_string(),
            method: s.method.to_string(),
            weight: self.weight.to_string(),
            ts: self.ts.clone(),
        };
        serde_json::to_string(&wire).expect("plain strings serialize")
    }

    /// Parses one line. Does not verify the equation; see [`check_record`].
    pub fn parse_line(line: &str) -> std::result::Result<Self, String> {
        let wire: Wire = serde_json::from_str(line).map_err(|e| format!("malformed record: {e}"))?;
        let big = |field: &str, v: &str| {
            v.parse::<BigUint>()
                .map_err(|_| format!("field {field}: {v:?} is not a nonnegative integer"))
        };
        let h = wire
            .h
            .parse::<u64>()
            .map_err(|_| format!("field h: {:?} is not a 64-bit integer", wire.h))?;
        Ok(SolutionRecord {
            solution: Solution {
                h,
                a: big("a", &wire.a)?,
                b: big("b", &wire.b)?,
                c: big("c", &wire.c)?,
                d: big("d", &wire.d)?,
                method: wire.method.parse::<Method>()?,
            },
            weight: big("weight", &wire.weight)?,
            ts: wire.ts,
        })
    }

    /// Equality ignoring the timestamp.
    pub fn same_content(&self, other: &SolutionRecord) -> bool {
        self.solution == other.solution && self.weight == other.weight
    }
}

/// Re-verifies equation, primitivity, nontriviality, orientation and weight.
pub fn check_record(r: &SolutionRecord) -> std::result::Result<(), String> {
    check_solution(&r.solution).map_err(str::to_string)?;
    if r.weight != r.solution.weight().0 {
        return Err("weight does not match A^4 + h*B^4".into());
    }
    Ok(())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LineFailure {
    /// 1-based line number.
    pub line: usize,
    pub reason: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct VerifyReport {
    pub checked: usize,
    pub passed: usize,
    pub failures: Vec<LineFailure>,
}

impl VerifyReport {
    pub fn ok(&self) -> bool {
        self.failures.is_empty()
    }
}

fn io_err(path: &Path, h: Option<u64>) -> impl FnOnce(std::io::Error) -> Error + '_ {
    move |source| Error::Io {
        path: path.to_path_buf(),
        h,
        source,
    }
}

/// Checks every non-blank line; failures are collected, not fatal.
pub fn verify_file(path: &Path) -> Result<VerifyReport> {
    let file = File::open(path).map_err(io_err(path, None))?;
    let mut report = VerifyReport::default();
    for (idx, line) in BufReader::new(file).lines().enumerate() {
        let line = line.map_err(io_err(path, None))?;
        if line.trim().is_empty() {
            continue;
        }
        report.checked += 1;
        match SolutionRecord::parse_line(&line).and_then(|r| check_record(&r)) {
            Ok(()) => report.passed += 1,
            Err(reason) => report.failures.push(LineFailure {
                line: idx + 1,
                reason,
            }),
        }
    }
    Ok(report)
}

/// Loads all well-formed records; malformed lines are returned separately.
pub fn load_records(path: &Path) -> Result<(Vec<SolutionRecord>, Vec<LineFailure>)> {
    let text = fs::read_to_string(path).map_err(io_err(path, None))?;
    let mut records = Vec::new();
    let mut bad = Vec::new();
    for (idx, line) in text.lines().enumerate() {
        if line.trim().is_empty() {
            continue;
        }
        match SolutionRecord::parse_line(line) {
            Ok(r) => records.push(r),
            Err(reason) => bad.push(LineFailure {
                line: idx + 1,
                reason,
            }),
        }
    }
    Ok((records, bad))
}

/// Append-only writer. Opening drops a trailing partial line left by an
/// interrupted run so that every remaining line is complete.
pub struct RecordWriter {
    path: PathBuf,
    file: File,
}

impl RecordWriter {
    pub fn open(path: &Path) -> Result<Self> {
        let mut file = OpenOptions::new()
            .create(true)
            .read(true)
            .append(true)
            .open(path)
            .map_err(io_err(path, None))?;
        let mut text = Vec::new();
        file.read_to_end(&mut text).map_err(io_err(path, None))?;
        if !text.is_empty() && text.last() != Some(&b'\n') {
            let keep = text.iter().rposition(|&c| c == b'\n').map_or(0, |i| i + 1);
            file.set_len(keep as u64).map_err(io_err(path, None))?;
            file.seek(SeekFrom::End(0)).map_err(io_err(path, None))?;
        }
        Ok(RecordWriter {
            path: path.to_path_buf(),
            file,
        })
    }

    pub fn append(&mut self, record: &SolutionRecord) -> Result<()> {
        let h = Some(record.solution.h);
        let mut line = record.to_line();
        line.push('\n');
        self.file
            .write_all(line.as_bytes())
            .map_err(io_err(&self.path, h))?;
        self.file.flush().map_err(io_err(&self.path, h))
    }
}
