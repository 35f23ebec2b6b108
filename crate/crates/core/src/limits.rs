//! Desk-scale compute guards.
//!
//! Every exhaustive loop in the crate checks its size against one of these
//! ceilings before starting. Setting `QFF_MAX_WORK` replaces all of them with
//! a single value (may run long).

use crate::error::{Error, Result};

/// Search space bound for the brute-force norm-equation oracle.
pub const BRUTE_FORCE_WORK: u128 = 10_000_000;
/// Bound on `q^g` for point counting.
pub const COUNTING_WORK: u128 = 1_000_000;

pub const ENV_VAR: &str = "QFF_MAX_WORK";

fn override_value() -> Option<u128> {
    std::env::var(ENV_VAR).ok()?.trim().parse().ok()
}

pub fn limit(default: u128) -> u128 {
    override_value().unwrap_or(default)
}

pub fn check(what: &'static str, work: u128, default: u128) -> Result<()> {
    let limit = limit(default);
    if work > limit {
        return Err(Error::WorkLimit { what, work, limit });
    }
    Ok(())
}

/// `base^exp`, saturating at `u128::MAX`.
pub fn saturating_pow(base: u64, exp: u64) -> u128 {
    let mut acc: u128 = 1;
    for _ in 0..exp {
        acc = acc.saturating_mul(base as u128);
    }
    acc
}
