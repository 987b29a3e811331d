//! Exact search for integer solutions of A⁴ + h·B⁴ = C⁴ + h·D⁴.
//!
//! Four independent strategies ([`brute`], [`meet`], [`quartic`],
//! [`elliptic`]) plus closed-form [`families`] feed a common
//! [`pipeline`] that runs them per h and persists verified records.

pub mod arith;
pub mod brute;
pub mod elliptic;
pub mod error;
pub mod families;
pub mod meet;
pub mod model;
pub mod pipeline;
pub mod quartic;

pub use error::{Error, Result};
pub use model::{normalize, verify, Method, Normalized, Solution, Weight};
