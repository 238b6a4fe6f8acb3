use crate::error::{Error, Result};
use crate::rational::ExactRational;

use super::SieveTable;

/// `(3k² + 11k + 9)(k² + 5k + 5)`: a window prime must not divide it.
pub fn forbidden_factor(k: u64) -> u128 {
    let k = u128::from(k);
    (3 * k * k + 11 * k + 9) * (k * k + 5 * k + 5)
}

/// The interval `(n/(k+3), n/k]` together with the extra conditions a prime
/// in it must meet to certify `S_k(n)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrimeWindow {
    pub n: u64,
    pub k: u64,
    pub lower_exclusive: ExactRational,
    pub upper_inclusive: ExactRational,
    /// `2k + 6`; the prime must exceed it.
    pub min_exclusive_bound: u64,
    pub forbidden_factor: u128,
}

impl PrimeWindow {
    pub fn new(n: u64, k: u64) -> Result<Self> {
        if n == 0 || k == 0 {
            return Err(Error::KOutOfRange { n, k });
        }
        Ok(Self {
            n,
            k,
            lower_exclusive: ExactRational::new(n, k + 3)?,
            upper_inclusive: ExactRational::new(n, k)?,
            min_exclusive_bound: 2 * k + 6,
            forbidden_factor: forbidden_factor(k),
        })
    }

    /// `n/(k+3) < p <= n/k`, decided as `p(k+3) > n` and `pk <= n`.
    pub fn contains(&self, p: u64) -> bool {
        let (p, n, k) = (u128::from(p), u128::from(self.n), u128::from(self.k));
        p * (k + 3) > n && p * k <= n
    }

    /// Window membership, `p > 2k+6` and `p ∤ forbidden_factor`.
    /// Primality is the caller's business.
    pub fn admits(&self, p: u64) -> bool {
        self.contains(p)
            && p > self.min_exclusive_bound
            && !self.forbidden_factor.is_multiple_of(u128::from(p))
    }

    /// Smallest integer strictly above `n/(k+3)`.
    pub fn first_candidate(&self) -> u64 {
        self.n / (self.k + 3) + 1
    }

    /// `⌊n/k⌋`, the largest integer in the window.
    pub fn last_candidate(&self) -> u64 {
        self.n / self.k
    }
}

/// Smallest prime admitted by `window`, or `None` when there is none.
///
/// The sieve must reach `⌊n/k⌋`.
pub fn find_window_prime(window: &PrimeWindow, table: &SieveTable) -> Result<Option<u64>> {
    let hi = window.last_candidate();
    if hi > table.limit() {
        return Err(Error::OutOfSieveRange { what: "n/k", value: hi, limit: table.limit() });
    }
    let lo = window.first_candidate().max(window.min_exclusive_bound + 1);
    Ok(table.primes_between(lo, hi).find(|&p| window.admits(p)))
}
