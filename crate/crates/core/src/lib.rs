//! Exact elementary symmetric functions `S_k(n)` of `1, 1/3, ..., 1/(2n−1)`
//! and independently checkable certificates that none of them is an integer
//! for `n >= 2`.
//!
//! - [`rational`]: normalized big rationals.
//! - [`esf`]: evaluation of `S_k(n)` (and of general progressions), closed
//!   forms for `n − k <= 3`, and a power-sum oracle.
//! - [`primes`]: sieve, `π(x)`, Panaitopol bounds, prime windows.
//! - [`padic`]: valuations and prime-valuation certificates.
//! - [`bounds`]: the analytic `S_k(n) < 1` criterion and real inequalities.
//! - [`verifier`]: strategy selection, sweeps, reports.

pub mod bounds;
pub mod error;
pub mod esf;
pub mod exec;
pub mod padic;
pub mod primes;
pub mod rational;
pub mod verifier;

pub use error::{Error, Result};
pub use exec::Execution;
pub use rational::{ExactInt, ExactRational};
pub use verifier::{Certificate, SweepReport, Verifier, VerifierConfig};
