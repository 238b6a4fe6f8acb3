use std::fmt;

use serde::{Deserialize, Serialize};

use crate::bounds::{check_bound_certificate, BoundCertificate, BoundDefect};
use crate::esf::{esf_single, OddProgression};
use crate::padic::{check_valuation_certificate, Defect, ValuationCertificate};
use crate::rational::ExactRational;

use super::EXACT_CAP_CEILING;

/// The exact value of `S_k(n)`, which has a denominator above 1.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExactCertificate {
    pub n: u64,
    pub k: u64,
    pub value: ExactRational,
}

/// A witness that one `S_k(n)` is not an integer.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum Certificate {
    AnalyticBound(BoundCertificate),
    PrimeValuation(ValuationCertificate),
    ExactNonInteger(ExactCertificate),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CertificateKind {
    AnalyticBound,
    PrimeValuation,
    ExactNonInteger,
}

impl CertificateKind {
    pub fn as_str(self) -> &'static str {
        match self {
            CertificateKind::AnalyticBound => "analytic_bound",
            CertificateKind::PrimeValuation => "prime_valuation",
            CertificateKind::ExactNonInteger => "exact_non_integer",
        }
    }
}

impl fmt::Display for CertificateKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Why [`check_certificate`] rejected a certificate.
#[derive(Debug, Clone, PartialEq)]
pub enum CheckFailure {
    Bound(BoundDefect),
    Valuation(Defect),
    PairOutOfRange,
    ExactTooLarge,
    ExactMismatch,
    ExactIsInteger,
}

impl fmt::Display for CheckFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CheckFailure::Bound(d) => write!(f, "analytic bound: {d}"),
            CheckFailure::Valuation(d) => write!(f, "prime valuation: {d}"),
            CheckFailure::PairOutOfRange => f.write_str("need n > 1 and 1 <= k <= n"),
            CheckFailure::ExactTooLarge => {
                write!(f, "exact certificates are only rechecked for n <= {EXACT_CAP_CEILING}")
            }
            CheckFailure::ExactMismatch => f.write_str("stored value differs from S_k(n)"),
            CheckFailure::ExactIsInteger => f.write_str("stored value is an integer"),
        }
    }
}

impl Certificate {
    pub fn kind(&self) -> CertificateKind {
        match self {
            Certificate::AnalyticBound(_) => CertificateKind::AnalyticBound,
            Certificate::PrimeValuation(_) => CertificateKind::PrimeValuation,
            Certificate::ExactNonInteger(_) => CertificateKind::ExactNonInteger,
        }
    }

    pub fn pair(&self) -> (u64, u64) {
        match self {
            Certificate::AnalyticBound(c) => (c.n, c.k),
            Certificate::PrimeValuation(c) => (c.n, c.k),
            Certificate::ExactNonInteger(c) => (c.n, c.k),
        }
    }

    pub fn prime(&self) -> Option<u64> {
        match self {
            Certificate::PrimeValuation(c) => Some(c.p),
            _ => None,
        }
    }

    pub fn valuation(&self) -> Option<i64> {
        match self {
            Certificate::PrimeValuation(c) => Some(c.claimed_valuation),
            _ => None,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("certificate serializes")
    }

    pub fn check(&self) -> Result<(), CheckFailure> {
        check_certificate(self)
    }
}

/// Re-verifies a certificate from scratch, trusting none of its stored
/// derived values.
pub fn check_certificate(c: &Certificate) -> Result<(), CheckFailure> {
    let (n, k) = c.pair();
    if n < 2 || k == 0 || k > n {
        return Err(CheckFailure::PairOutOfRange);
    }
    match c {
        Certificate::AnalyticBound(b) => check_bound_certificate(b).map_err(CheckFailure::Bound),
        Certificate::PrimeValuation(v) => {
            check_valuation_certificate(v).map_err(CheckFailure::Valuation)
        }
        Certificate::ExactNonInteger(e) => {
            if e.n > EXACT_CAP_CEILING {
                return Err(CheckFailure::ExactTooLarge);
            }
            let prog = OddProgression::odd(e.n).expect("n >= 2");
            let value = esf_single(&prog, e.k).expect("k in range");
            if value != e.value {
                return Err(CheckFailure::ExactMismatch);
            }
            if value.is_integer() {
                return Err(CheckFailure::ExactIsInteger);
            }
            Ok(())
        }
    }
}
