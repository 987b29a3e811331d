use std::path::PathBuf;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("sieve modulus must be at least 2, got {0}")]
    SieveModulus(u64),

    #[error("h = {0} is a perfect fourth power and is excluded from searching")]
    FourthPowerH(u64),

    #[error("h must be at least {min}, got {h}")]
    HTooSmall { h: u64, min: u64 },

    #[error("empty search range: {0}")]
    EmptyRange(String),

    #[error("{0} is not a prime congruent to 3 mod 4")]
    BadBucketPrime(u64),

    #[error("bucket primes must differ (both are {0})")]
    EqualBucketPrimes(u64),

    #[error("quadruple ({a}, {b}, {c}, {d}) does not satisfy the equation for h = {h}")]
    NotASolution {
        h: u64,
        a: String,
        b: String,
        c: String,
        d: String,
    },

    #[error("point is not on the curve")]
    OffCurve,

    #[error("curve with a = {a}, b = {b}, h = {h} is singular")]
    SingularCurve { a: u64, b: u64, h: u64 },

    #[error("coordinate size exceeded {limit} bits during scalar multiplication")]
    CoordinateOverflow { limit: u64 },

    #[error("family {family} takes {expected} parameter(s), got {got}")]
    Arity {
        family: String,
        expected: usize,
        got: usize,
    },

    #[error("unknown family id {0:?}")]
    UnknownFamily(String),

    #[error("invalid rational {0:?}")]
    ParseRational(String),

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("i/o error on {path} (h in progress: {h:?}): {source}")]
    Io {
        path: PathBuf,
        h: Option<u64>,
        #[source]
        source: std::io::Error,
    },
}

pub type Result<T> = std::result::Result<T, Error>;
