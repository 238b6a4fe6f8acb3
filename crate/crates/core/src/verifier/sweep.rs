use std::time::Instant;

use crate::bounds::{first_analytic_k, inverse_threshold, issue_bound_certificate};
use crate::error::{Error, Result};
use crate::esf::{esf_all, OddProgression};
use crate::exec::map_ordered;
use crate::padic::issue_valuation_certificate;
use crate::primes::{find_window_prime, PrimeWindow};
use crate::rational::ExactRational;

use super::certificate::{check_certificate, Certificate};
use super::report::{Outcome, OutcomeKind, SweepKind, SweepReport};
use super::Verifier;

fn certified(c: &Certificate) -> Outcome {
    Outcome::certified(c, check_certificate(c).map_err(|e| e.to_string()))
}

impl Verifier {
    /// Evaluates every `S_k(n)` for `2 <= n <= n_max` exactly and records
    /// whether each is a non-integer.
    pub fn sweep_exact(&self, n_max: u64) -> Result<SweepReport> {
        if n_max < 2 {
            return Err(Error::InvalidRange(format!("n_max = {n_max} must be at least 2")));
        }
        if n_max > self.config.exact_cap {
            return Err(Error::ExactCapExceeded { n: n_max, cap: self.config.exact_cap });
        }
        let start = Instant::now();
        let ns: Vec<u64> = (2..=n_max).collect();
        let per_n = map_ordered(self.config.execution, ns, |n| {
            let values = esf_all(&OddProgression::odd(n).expect("n >= 2")).into_values();
            values
                .iter()
                .zip(1u64..)
                .map(|(v, k)| {
                    let ok = !v.is_integer();
                    Outcome {
                        n,
                        k,
                        k_max: None,
                        kind: OutcomeKind::ExactNonInteger,
                        p: None,
                        valuation: None,
                        ok,
                        reason: (!ok).then(|| format!("S_{k}({n}) = {v} is an integer")),
                    }
                })
                .collect::<Vec<_>>()
        });
        Ok(SweepReport::assemble(
            SweepKind::Exact,
            (2, n_max),
            (1, n_max),
            per_n.into_iter().flatten().collect(),
            start.elapsed().as_secs_f64(),
        ))
    }

    /// For every `k_min <= k <= k_max` and every `n` in `[n_min, n_max]`
    /// with `k <= n` and `n > ½e^{2k/e − 2}`, searches the prime window and
    /// issues and checks the valuation certificate. Pairs without a window
    /// prime are reported as failures.
    pub fn sweep_window(&self, (k_min, k_max): (u64, u64), (n_min, n_max): (u64, u64)) -> Result<SweepReport> {
        if k_min < 2 || k_min > k_max {
            return Err(Error::InvalidRange(format!("k range {k_min}..{k_max} must be ordered with k >= 2")));
        }
        if n_min < 1 || n_min > n_max {
            return Err(Error::InvalidRange(format!("n range {n_min}..{n_max} must be ordered and positive")));
        }
        if n_max / k_min > self.sieve.limit() {
            return Err(Error::OutOfSieveRange { what: "n/k", value: n_max / k_min, limit: self.sieve.limit() });
        }
        let start = Instant::now();
        let pairs: Vec<(u64, u64)> = (k_min..=k_max)
            .flat_map(|k| {
                let floor = inverse_threshold(k as f64);
                (n_min.max(k)..=n_max).filter(move |&n| n as f64 > floor).map(move |n| (n, k))
            })
            .collect();
        let outcomes = map_ordered(self.config.execution, pairs, |(n, k)| {
            let window = PrimeWindow::new(n, k).expect("n, k >= 1");
            match find_window_prime(&window, &self.sieve) {
                Ok(Some(p)) => match issue_valuation_certificate(n, k, p) {
                    Ok(c) => certified(&Certificate::PrimeValuation(c)),
                    Err(e) => Outcome::failed(n, k, e.to_string()),
                },
                Ok(None) => Outcome::failed(n, k, "no admissible prime in the window"),
                Err(e) => Outcome::failed(n, k, e.to_string()),
            }
        });
        Ok(SweepReport::assemble(
            SweepKind::Window,
            (n_min, n_max),
            (k_min, k_max),
            outcomes,
            start.elapsed().as_secs_f64(),
        ))
    }

    /// Certifies and checks every `S_k(n)` with `2 <= n <= n_max`,
    /// `1 <= k <= n`. At each `n`, all `k` from the first analytic one up to
    /// `n` share one analytic outcome.
    pub fn verify_theorem(&self, n_max: u64) -> Result<SweepReport> {
        if n_max < 2 {
            return Err(Error::InvalidRange(format!("n_max = {n_max} must be at least 2")));
        }
        if n_max / 2 > self.sieve.limit() {
            return Err(Error::OutOfSieveRange { what: "n/2", value: n_max / 2, limit: self.sieve.limit() });
        }
        let start = Instant::now();
        let ns: Vec<u64> = (2..=n_max).collect();
        let per_n = map_ordered(self.config.execution, ns, |n| {
            let k_first = first_analytic_k(n);
            let mut out: Vec<Outcome> = (1..k_first.min(n + 1))
                .map(|k| match self.certify(n, k) {
                    Ok(c) => certified(&c),
                    Err(e) => Outcome::failed(n, k, e.to_string()),
                })
                .collect();
            if k_first <= n {
                out.push(analytic_run(n, k_first));
            }
            out
        });
        Ok(SweepReport::assemble(
            SweepKind::Theorem,
            (2, n_max),
            (1, n_max),
            per_n.into_iter().flatten().collect(),
            start.elapsed().as_secs_f64(),
        ))
    }
}

/// One outcome for `k_first..=n`. The threshold is increasing in `k`, so
/// checking the certificate at `k_first` covers the run; for small `n` every
/// value is also evaluated and compared with 1.
fn analytic_run(n: u64, k_first: u64) -> Outcome {
    let mut outcome = match issue_bound_certificate(n, k_first) {
        Ok(c) => certified(&Certificate::AnalyticBound(c)),
        Err(e) => Outcome::failed(n, k_first, e.to_string()),
    };
    outcome.k_max = Some(n);
    if outcome.ok && n <= crate::bounds::EXACT_RECHECK_MAX_N {
        let values = esf_all(&OddProgression::odd(n).expect("n >= 2"));
        let one = ExactRational::one();
        if let Some(k) = (k_first..=n).find(|&k| values.get(k).is_none_or(|v| !v.is_positive() || v >= &one)) {
            outcome.ok = false;
            outcome.reason = Some(format!("S_{k}({n}) is not in (0, 1)"));
        }
    }
    outcome
}
