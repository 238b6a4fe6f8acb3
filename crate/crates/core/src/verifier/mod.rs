//! Certification of individual `S_k(n)` and the sweeps that cover every
//! pair up to a bound.
//!
//! [`Verifier::certify`] tries, in order: the analytic bound (when `k` clears
//! the threshold for `n`), a window prime, then exact evaluation for
//! `n <= exact_cap`. `k = 1` uses a prime `p` with `p <= 2n−1 < 3p` instead of
//! a window.

mod certificate;
mod report;
mod sweep;

pub use certificate::{check_certificate, Certificate, CertificateKind, CheckFailure, ExactCertificate};
pub use report::{Failure, KindCounts, Outcome, OutcomeKind, SweepKind, SweepReport, REPORT_SCHEMA};

use crate::bounds::{clears_threshold, issue_bound_certificate};
use crate::error::{Error, Result};
use crate::esf::{esf_single, OddProgression};
use crate::exec::Execution;
use crate::padic::issue_valuation_certificate;
use crate::primes::{find_window_prime, PrimeWindow, SieveTable, DEFAULT_MAX_SIEVE_LIMIT};

pub const DEFAULT_EXACT_CAP: u64 = 1000;
pub const EXACT_CAP_CEILING: u64 = 5000;
pub const DEFAULT_SIEVE_LIMIT: u64 = 30_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct VerifierConfig {
    pub exact_cap: u64,
    pub sieve_limit: u64,
    pub execution: Execution,
}

impl Default for VerifierConfig {
    fn default() -> Self {
        Self {
            exact_cap: DEFAULT_EXACT_CAP,
            sieve_limit: DEFAULT_SIEVE_LIMIT,
            execution: Execution::default(),
        }
    }
}

pub struct Verifier {
    config: VerifierConfig,
    sieve: SieveTable,
}

impl Verifier {
    /// Builds the sieve for `config.sieve_limit`.
    pub fn new(config: VerifierConfig) -> Result<Self> {
        let sieve = SieveTable::build(config.sieve_limit, DEFAULT_MAX_SIEVE_LIMIT)?;
        Self::with_sieve(config, sieve)
    }

    pub fn with_sieve(config: VerifierConfig, sieve: SieveTable) -> Result<Self> {
        if config.exact_cap > EXACT_CAP_CEILING {
            return Err(Error::ExactCapTooLarge {
                requested: config.exact_cap,
                ceiling: EXACT_CAP_CEILING,
            });
        }
        Ok(Self { config: VerifierConfig { sieve_limit: sieve.limit(), ..config }, sieve })
    }

    pub fn config(&self) -> &VerifierConfig {
        &self.config
    }

    pub fn sieve(&self) -> &SieveTable {
        &self.sieve
    }

    pub fn with_execution(mut self, execution: Execution) -> Self {
        self.config.execution = execution;
        self
    }

    /// A certificate for `S_k(n)` that [`check_certificate`] accepts.
    pub fn certify(&self, n: u64, k: u64) -> Result<Certificate> {
        if n < 2 || k == 0 || k > n {
            return Err(Error::KOutOfRange { n, k });
        }
        if k == 1 {
            if let Some(c) = self.single_multiple_certificate(n) {
                return Ok(c);
            }
        } else {
            if clears_threshold(n, k) {
                return Ok(Certificate::AnalyticBound(issue_bound_certificate(n, k)?));
            }
            if let Some(c) = self.window_certificate(n, k)? {
                return Ok(c);
            }
        }
        self.exact_certificate(n, k)
    }

    /// Certification is only defined for `1, 3, ..., 2n−1`.
    pub fn certify_progression(&self, prog: &OddProgression, k: u64) -> Result<Certificate> {
        if !prog.is_odd_numbers() {
            return Err(Error::UnsupportedProgression { m: prog.m, d: prog.d });
        }
        self.certify(prog.n, k)
    }

    // Largest sieved prime p <= 2n-1; usable when 3p > 2n-1.
    fn single_multiple_certificate(&self, n: u64) -> Option<Certificate> {
        let top = 2 * n - 1;
        let p = self.sieve.largest_prime_at_most(top)?;
        if p < 3 || 3 * p <= top {
            return None;
        }
        issue_valuation_certificate(n, 1, p).ok().map(Certificate::PrimeValuation)
    }

    fn window_certificate(&self, n: u64, k: u64) -> Result<Option<Certificate>> {
        let window = PrimeWindow::new(n, k)?;
        if window.last_candidate() > self.sieve.limit() {
            return Ok(None);
        }
        match find_window_prime(&window, &self.sieve)? {
            Some(p) => Ok(Some(Certificate::PrimeValuation(issue_valuation_certificate(n, k, p)?))),
            None => Ok(None),
        }
    }

    fn exact_certificate(&self, n: u64, k: u64) -> Result<Certificate> {
        if n > self.config.exact_cap {
            return Err(Error::Uncertifiable { n, k });
        }
        let value = esf_single(&OddProgression::odd(n)?, k)?;
        if value.is_integer() {
            return Err(Error::Uncertifiable { n, k });
        }
        Ok(Certificate::ExactNonInteger(ExactCertificate { n, k, value }))
    }
}
