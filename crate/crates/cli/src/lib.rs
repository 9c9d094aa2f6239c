//! Scenario-driven front end for the `ncc-core` causal predicates.
//!
//! The `ncc` binary is a thin wrapper around [`run::check`], [`run::verify`]
//! and the sweeps in [`sweep`]; everything it writes can also be produced
//! through this library.

pub mod error;
pub mod output;
pub mod record;
pub mod run;
pub mod scenario;
pub mod sweep;

pub use error::{CliError, Result};
pub use record::{Header, ResultRecord, Verdict};
pub use run::RunConfig;
pub use scenario::{Options, Scenario, SCHEMA_ID};

/// Environment variable capping the worker pool size.
pub const THREADS_ENV: &str = "NCC_THREADS";

/// Thread count requested through [`THREADS_ENV`], if it parses as a
/// positive integer.
pub fn requested_threads() -> Option<usize> {
    let raw = std::env::var(THREADS_ENV).ok()?;
    match raw.trim().parse::<usize>() {
        Ok(n) if n > 0 => Some(n),
        _ => {
            log::warn!("ignoring {THREADS_ENV}={raw:?}: expected a positive integer");
            None
        }
    }
}
