//! Prime sieve, prime counting, Panaitopol's explicit bounds for `π(x)`, and
//! the prime-window search used by valuation certificates.
//!
//! The Panaitopol bounds are evaluated in double precision. They only serve
//! as sanity checks against the sieve and never feed a certificate.

mod sieve;
mod window;

pub use sieve::{build_sieve, is_prime_trial, CacheStatus, SieveTable, DEFAULT_MAX_SIEVE_LIMIT};
pub use window::{find_window_prime, forbidden_factor, PrimeWindow};

use crate::error::{Error, Result};

/// `π(⌊x⌋)`.
pub fn prime_count(table: &SieveTable, x: f64) -> Result<u64> {
    if x.is_nan() || x < 0.0 {
        return Err(Error::Domain { function: "prime_count", x, requirement: ">= 0" });
    }
    let floor = x.floor();
    if floor > table.limit() as f64 {
        return Err(Error::OutOfSieveRange {
            what: "x",
            value: floor as u64,
            limit: table.limit(),
        });
    }
    Ok(table.count_up_to(floor as u64))
}

/// `x / (ln x − 1 − (ln x)^{-1/2})`, an upper bound for `π(x)` when `x >= 6`.
pub fn panaitopol_upper(x: f64) -> Result<f64> {
    if x.is_nan() || x < 6.0 {
        return Err(Error::Domain { function: "panaitopol_upper", x, requirement: ">= 6" });
    }
    let l = x.ln();
    Ok(x / (l - 1.0 - l.powf(-0.5)))
}

/// `x / (ln x − 1 + (ln x)^{-1/2})`, a lower bound for `π(x)` when `x >= 59`.
pub fn panaitopol_lower(x: f64) -> Result<f64> {
    if x.is_nan() || x < 59.0 {
        return Err(Error::Domain { function: "panaitopol_lower", x, requirement: ">= 59" });
    }
    let l = x.ln();
    Ok(x / (l - 1.0 + l.powf(-0.5)))
}
