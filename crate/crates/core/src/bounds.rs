//! The analytic `S_k(n) < 1` criterion and the real-valued inequalities used
//! to push the prime-window argument past `n = 23000`.
//!
//! Everything here is double precision. Only [`issue_bound_certificate`]
//! produces a certificate, and it demands `k >= threshold + BOUNDARY_SLACK`
//! so that rounding in the threshold can never decide integrality. The other
//! checks are diagnostics compared with [`RELATIVE_MARGIN`].

use std::f64::consts::E;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::esf::{esf_single, OddProgression};
use crate::rational::ExactRational;

/// Required clearance between `k` and the threshold before the analytic
/// branch may certify.
pub const BOUNDARY_SLACK: f64 = 1.0 / (1u64 << 40) as f64;

/// Relative margin for the float diagnostics.
pub const RELATIVE_MARGIN: f64 = 1e-9;

/// Largest `n` at which certificate checks also evaluate `S_k(n)` exactly.
pub const EXACT_RECHECK_MAX_N: u64 = 400;

/// `½·ln(2n − 1) + 1`, an upper bound for `Σ_{i<n} 1/(2i+1)` when `n >= 2`.
pub fn harmonic_upper(n: u64) -> f64 {
    0.5 * ((2 * n - 1) as f64).ln() + 1.0
}

/// `e·(½·ln(2n − 1) + 1)`.
pub fn analytic_threshold(n: u64) -> f64 {
    E * harmonic_upper(n)
}

/// Whether `k` clears the threshold for `n` by at least [`BOUNDARY_SLACK`].
pub fn clears_threshold(n: u64, k: u64) -> bool {
    k as f64 >= analytic_threshold(n) + BOUNDARY_SLACK
}

/// Smallest `k` that [`clears_threshold`] for `n`.
pub fn first_analytic_k(n: u64) -> u64 {
    let mut k = (analytic_threshold(n) + BOUNDARY_SLACK).ceil().max(1.0) as u64;
    while k > 1 && clears_threshold(n, k - 1) {
        k -= 1;
    }
    while !clears_threshold(n, k) {
        k += 1;
    }
    k
}

/// Asserts `0 < S_k(n) < 1` for `threshold <= k <= n`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoundCertificate {
    pub n: u64,
    pub k: u64,
    pub threshold: f64,
    pub harmonic_upper: f64,
}

pub fn issue_bound_certificate(n: u64, k: u64) -> Result<BoundCertificate> {
    let threshold = analytic_threshold(n);
    if n == 0 || k > n || !clears_threshold(n, k) {
        return Err(Error::NotApplicable { n, k, threshold });
    }
    Ok(BoundCertificate { n, k, threshold, harmonic_upper: harmonic_upper(n) })
}

/// Why a bound certificate was rejected.
#[derive(Debug, Clone, PartialEq)]
pub enum BoundDefect {
    KAboveN,
    BelowThreshold { k: u64, threshold: f64 },
    StoredValues,
    NotBelowOne(ExactRational),
}

impl std::fmt::Display for BoundDefect {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            BoundDefect::KAboveN => f.write_str("k exceeds n"),
            BoundDefect::BelowThreshold { k, threshold } => {
                write!(f, "k = {k} does not clear threshold {threshold}")
            }
            BoundDefect::StoredValues => f.write_str("stored threshold values do not match"),
            BoundDefect::NotBelowOne(v) => write!(f, "S_k(n) = {v} is not below 1"),
        }
    }
}

/// Recomputes the threshold; for `n <= 400` also evaluates `S_k(n)` exactly
/// and confirms it lies in `(0, 1)`.
pub fn check_bound_certificate(c: &BoundCertificate) -> Result<(), BoundDefect> {
    if c.n == 0 || c.k > c.n || c.k == 0 {
        return Err(BoundDefect::KAboveN);
    }
    if !clears_threshold(c.n, c.k) {
        return Err(BoundDefect::BelowThreshold { k: c.k, threshold: analytic_threshold(c.n) });
    }
    if c.threshold != analytic_threshold(c.n) || c.harmonic_upper != harmonic_upper(c.n) {
        return Err(BoundDefect::StoredValues);
    }
    if c.n <= EXACT_RECHECK_MAX_N {
        let prog = OddProgression::odd(c.n).expect("n >= 1");
        let v = esf_single(&prog, c.k).expect("k in range");
        if !(v.is_positive() && v < ExactRational::one()) {
            return Err(BoundDefect::NotBelowOne(v));
        }
    }
    Ok(())
}

/// Exact `S_1(n)` against `½·ln(2n−1) + 1`, strictly.
///
/// The sum is rounded up and the logarithm side rounded down by a few ulps;
/// a comparison inside that band reports `false`.
pub fn harmonic_upper_bound_check(n: u64) -> bool {
    if n == 0 {
        return false;
    }
    let s1 = esf_single(&OddProgression::odd(n).expect("n >= 1"), 1).expect("k = 1");
    let sum_hi = s1.to_f64() * (1.0 + 4.0 * f64::EPSILON);
    let bound_lo = harmonic_upper(n) * (1.0 - 4.0 * f64::EPSILON);
    sum_hi < bound_lo
}

/// `ln k! > k·ln k − k`, the Stirling-type lower bound, with `ln k!` summed
/// directly. Holds for every `k >= 1`.
pub fn log_factorial_lower_bound_check(k: u64) -> bool {
    let log_fact: f64 = (2..=k).map(|i| (i as f64).ln()).sum();
    let kf = k as f64;
    strictly_below(kf * kf.ln() - kf, log_fact)
}

fn half_domain(function: &'static str, x: f64) -> Result<()> {
    if x > 0.5 {
        Ok(())
    } else {
        Err(Error::Domain { function, x, requirement: "> 1/2" })
    }
}

/// `x^0.3 − (e/2)·ln(2x − 1) − e − 3`.
pub fn f_eval(x: f64) -> Result<f64> {
    half_domain("f", x)?;
    Ok(x.powf(0.3) - E / 2.0 * (2.0 * x - 1.0).ln() - E - 3.0)
}

/// `(x + 3)(3x² + 11x + 9)`.
pub fn g_eval(x: f64) -> Result<f64> {
    half_domain("g", x)?;
    Ok((x + 3.0) * (3.0 * x * x + 11.0 * x + 9.0))
}

/// `e·(½·ln(2x − 1) + 1)`.
pub fn h_eval(x: f64) -> Result<f64> {
    half_domain("h", x)?;
    Ok(E * (0.5 * (2.0 * x - 1.0).ln() + 1.0))
}

/// `½·e^{2x/e − 2}`, the inverse of `h` up to the `+½`.
pub fn inverse_threshold(x: f64) -> f64 {
    0.5 * (2.0 * x / E - 2.0).exp()
}

/// `lhs < rhs` with `rhs` shrunk by the relative margin.
pub fn strictly_below(lhs: f64, rhs: f64) -> bool {
    lhs < rhs - RELATIVE_MARGIN * rhs.abs()
}

/// `6·0.7^{1/2}·t + e·t² + e·ln 2 + 2e + 3 <= 3·0.7^{3/2}·t³`.
pub fn cubic_margin_check(t: f64) -> bool {
    let lhs = 6.0 * 0.7f64.sqrt() * t + E * t * t + E * 2f64.ln() + 2.0 * E + 3.0;
    let rhs = 3.0 * 0.7f64.powf(1.5) * t.powi(3);
    t > 0.0 && lhs <= rhs * (1.0 - RELATIVE_MARGIN)
}

/// `½·e^{2x/e − 2} > g(x)`.
pub fn exp_dominates_g(x: f64) -> Result<bool> {
    Ok(strictly_below(g_eval(x)?, inverse_threshold(x)))
}

/// For `k < h(n)`: `n/(k+3) > n^0.7`, checked at the largest such integer `k`.
pub fn window_lower_exceeds_power(n: u64) -> Result<bool> {
    let h = h_eval(n as f64)?;
    let k_max = (h.ceil() - 1.0).max(1.0);
    let nf = n as f64;
    Ok(strictly_below(nf.powf(0.7), nf / (k_max + 3.0)))
}
