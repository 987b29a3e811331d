use std::fmt;
use std::path::Path;
use std::str::FromStr;

use num_rational::BigRational;
use serde::Deserialize;

use crate::brute::BruteBounds;
use crate::elliptic::parse_rational;
use crate::error::{Error, Result};
use crate::meet::{DEFAULT_P, DEFAULT_Q};

/// One rung of the search ladder.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Strategy {
    Families,
    Brute,
    Meet,
    Quartic,
    Elliptic,
}

impl Strategy {
    pub const LADDER: [Strategy; 5] = [
        Strategy::Families,
        Strategy::Brute,
        Strategy::Meet,
        Strategy::Quartic,
        Strategy::Elliptic,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Strategy::Families => "families",
            Strategy::Brute => "brute",
            Strategy::Meet => "meet",
            Strategy::Quartic => "quartic",
            Strategy::Elliptic => "elliptic",
        }
    }
}

impl fmt::Display for Strategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Strategy {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Strategy::LADDER
            .into_iter()
            .find(|m| m.name() == s.trim())
            .ok_or_else(|| Error::Config(format!("unknown method {s:?}")))
    }
}

/// Parses a comma-separated method list, keeping order and dropping repeats.
pub fn parse_methods(list: &str) -> Result<Vec<Strategy>> {
    let mut out = Vec::new();
    for part in list.split(',').filter(|s| !s.trim().is_empty()) {
        let m: Strategy = part.parse()?;
        if !out.contains(&m) {
            out.push(m);
        }
    }
    if out.is_empty() {
        return Err(Error::Config("method list is empty".into()));
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MeetConfig {
    pub a_max: u64,
    pub b_max: u64,
    pub p: u64,
    pub q: u64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuarticConfig {
    /// Substitution constants run over 1 ≤ a, b ≤ ab_max with gcd(a, b) = 1.
    pub ab_max: u64,
    pub height: u64,
}

/// A user-supplied point on the Weierstrass curve for (h, a, b).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeedPoint {
    pub h: u64,
    pub a: u64,
    pub b: u64,
    pub x: BigRational,
    pub y: BigRational,
}

impl FromStr for SeedPoint {
    type Err = Error;

    /// `h:a:b:X:Y` with X and Y as `num/den`.
    fn from_str(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.split(':').collect();
        let [h, a, b, x, y] = parts[..] else {
            return Err(Error::Config(format!("seed {s:?} is not h:a:b:X:Y")));
        };
        let int = |v: &str| {
            v.trim()
                .parse::<u64>()
                .map_err(|_| Error::Config(format!("bad integer {v:?} in seed {s:?}")))
        };
        Ok(SeedPoint {
            h: int(h)?,
            a: int(a)?,
            b: int(b)?,
            x: parse_rational(x)?,
            y: parse_rational(y)?,
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EllipticConfig {
    pub ab_max: u64,
    pub numerator_bound: u64,
    pub denominator_bound: u64,
    pub max_multiple: u64,
    pub seeds: Vec<SeedPoint>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchConfig {
    pub h_min: u64,
    pub h_max: u64,
    pub methods: Vec<Strategy>,
    pub family_bound: u64,
    pub brute: BruteBounds,
    pub meet: MeetConfig,
    pub quartic: QuarticConfig,
    pub elliptic: EllipticConfig,
    pub stop_on_first: bool,
    pub workers: usize,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig {
            h_min: 2,
            h_max: 100,
            methods: Strategy::LADDER.to_vec(),
            family_bound: 50,
            brute: BruteBounds::cube(200),
            meet: MeetConfig {
                a_max: 300,
                b_max: 300,
                p: DEFAULT_P,
                q: DEFAULT_Q,
            },
            quartic: QuarticConfig {
                ab_max: 6,
                height: 60,
            },
            elliptic: EllipticConfig {
                ab_max: 3,
                numerator_bound: 2000,
                denominator_bound: 3,
                max_multiple: 2,
                seeds: Vec::new(),
            },
            stop_on_first: false,
            workers: 1,
        }
    }
}

impl SearchConfig {
    pub fn validate(&self) -> Result<()> {
        if self.h_min == 0 || self.h_min > self.h_max {
            return Err(Error::Config(format!(
                "invalid h range [{}, {}]",
                self.h_min, self.h_max
            )));
        }
        if self.methods.is_empty() {
            return Err(Error::Config("no methods selected".into()));
        }
        if self.workers == 0 {
            return Err(Error::Config("workers must be at least 1".into()));
        }
        if self.methods.contains(&Strategy::Brute) {
            self.brute.validate()?;
        }
        if self.methods.contains(&Strategy::Meet) {
            crate::meet::check_primes(self.meet.p, self.meet.q)?;
            if self.meet.a_max == 0 || self.meet.b_max == 0 {
                return Err(Error::Config("meet bounds must be at least 1".into()));
            }
        }
        Ok(())
    }
}

/// Flat key-value overrides, shared by the config file and the CLI flags.
#[derive(Clone, Debug, Default, Deserialize, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct Overrides {
    pub h_min: Option<u64>,
    pub h_max: Option<u64>,
    pub methods: Option<String>,
    pub out: Option<String>,
    pub stop_on_first: Option<bool>,
    pub workers: Option<usize>,
    pub family_bound: Option<u64>,
    pub brute_a_min: Option<u64>,
    pub brute_a_max: Option<u64>,
    pub brute_b_max: Option<u64>,
    pub brute_c_max: Option<u64>,
    pub meet_a_max: Option<u64>,
    pub meet_b_max: Option<u64>,
    pub meet_p: Option<u64>,
    pub meet_q: Option<u64>,
    pub quartic_ab_max: Option<u64>,
    pub quartic_height: Option<u64>,
    pub elliptic_ab_max: Option<u64>,
    pub elliptic_numerator_bound: Option<u64>,
    pub elliptic_denominator_bound: Option<u64>,
    pub elliptic_max_multiple: Option<u64>,
    pub elliptic_seeds: Option<Vec<String>>,
}

impl Overrides {
    pub fn from_toml(text: &str) -> Result<Self> {
        toml::from_str(text).map_err(|e| Error::Config(e.to_string()))
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|source| Error::Io {
            path: path.to_path_buf(),
            h: None,
            source,
        })?;
        Self::from_toml(&text)
    }

    /// Fields set in `other` win.
    pub fn merged(self, other: Overrides) -> Overrides {
        macro_rules! pick {
            ($($f:ident),*) => { Overrides { $($f: other.$f.or(self.$f)),* } };
        }
        pick!(
            h_min, h_max, methods, out, stop_on_first, workers, family_bound, brute_a_min,
            brute_a_max, brute_b_max, brute_c_max, meet_a_max, meet_b_max, meet_p, meet_q,
            quartic_ab_max, quartic_height, elliptic_ab_max, elliptic_numerator_bound,
            elliptic_denominator_bound, elliptic_max_multiple, elliptic_seeds
        )
    }

    pub fn apply(&self, cfg: &mut SearchConfig) -> Result<()> {
        macro_rules! set {
            ($($src:ident => $($dst:ident).+),* $(,)?) => {
                $(if let Some(v) = self.$src.clone() { cfg.$($dst).+ = v; })*
            };
        }
        set!(
            h_min => h_min,
            h_max => h_max,
            stop_on_first => stop_on_first,
            workers => workers,
            family_bound => family_bound,
            brute_a_min => brute.a_min,
            brute_a_max => brute.a_max,
            brute_b_max => brute.b_max,
            brute_c_max => brute.c_max,
            meet_a_max => meet.a_max,
            meet_b_max => meet.b_max,
            meet_p => meet.p,
            meet_q => meet.q,
            quartic_ab_max => quartic.ab_max,
            quartic_height => quartic.height,
            elliptic_ab_max => elliptic.ab_max,
            elliptic_numerator_bound => elliptic.numerator_bound,
            elliptic_denominator_bound => elliptic.denominator_bound,
            elliptic_max_multiple => elliptic.max_multiple,
        );
        if let Some(list) = &self.methods {
            cfg.methods = parse_methods(list)?;
        }
        if let Some(seeds) = &self.elliptic_seeds {
            cfg.elliptic.seeds = seeds.iter().map(|s| s.parse()).collect::<Result<_>>()?;
        }
        Ok(())
    }
}
