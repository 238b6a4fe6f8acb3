//! Sweep reports: JSON (`esf-report/1`), CSV summary, and a text table.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use super::certificate::{Certificate, CertificateKind};

pub const REPORT_SCHEMA: &str = "esf-report/1";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SweepKind {
    Exact,
    Window,
    Theorem,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum OutcomeKind {
    AnalyticBound,
    PrimeValuation,
    ExactNonInteger,
    Uncertified,
}

impl From<CertificateKind> for OutcomeKind {
    fn from(k: CertificateKind) -> Self {
        match k {
            CertificateKind::AnalyticBound => OutcomeKind::AnalyticBound,
            CertificateKind::PrimeValuation => OutcomeKind::PrimeValuation,
            CertificateKind::ExactNonInteger => OutcomeKind::ExactNonInteger,
        }
    }
}

impl OutcomeKind {
    pub fn as_str(self) -> &'static str {
        match self {
            OutcomeKind::AnalyticBound => "analytic_bound",
            OutcomeKind::PrimeValuation => "prime_valuation",
            OutcomeKind::ExactNonInteger => "exact_non_integer",
            OutcomeKind::Uncertified => "uncertified",
        }
    }
}

/// Result for one `(n, k)` pair, or for the run `k..=k_max` at one `n` when
/// a single analytic bound covers all of them.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Outcome {
    pub n: u64,
    pub k: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub k_max: Option<u64>,
    pub kind: OutcomeKind,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub p: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub valuation: Option<i64>,
    pub ok: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub reason: Option<String>,
}

impl Outcome {
    pub fn certified(c: &Certificate, check: Result<(), String>) -> Self {
        let (n, k) = c.pair();
        Self {
            n,
            k,
            k_max: None,
            kind: c.kind().into(),
            p: c.prime(),
            valuation: c.valuation(),
            ok: check.is_ok(),
            reason: check.err(),
        }
    }

    pub fn failed(n: u64, k: u64, reason: impl Into<String>) -> Self {
        Self {
            n,
            k,
            k_max: None,
            kind: OutcomeKind::Uncertified,
            p: None,
            valuation: None,
            ok: false,
            reason: Some(reason.into()),
        }
    }

    /// Number of `(n, k)` pairs this outcome stands for.
    pub fn pairs(&self) -> u64 {
        self.k_max.map_or(1, |hi| hi - self.k + 1)
    }

    fn k_label(&self) -> String {
        match self.k_max {
            Some(hi) if hi != self.k => format!("{}..{}", self.k, hi),
            _ => self.k.to_string(),
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct KindCounts {
    pub analytic_bound: u64,
    pub prime_valuation: u64,
    pub exact_non_integer: u64,
    pub uncertified: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Failure {
    pub n: u64,
    pub k: u64,
    pub reason: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepReport {
    pub schema: String,
    pub sweep: SweepKind,
    pub n_min: u64,
    pub n_max: u64,
    pub k_min: u64,
    pub k_max: u64,
    pub pairs: u64,
    pub counts: KindCounts,
    pub failures: Vec<Failure>,
    pub outcomes: Vec<Outcome>,
    pub wall_time: f64,
}

impl SweepReport {
    pub(crate) fn assemble(
        sweep: SweepKind,
        (n_min, n_max): (u64, u64),
        (k_min, k_max): (u64, u64),
        outcomes: Vec<Outcome>,
        wall_time: f64,
    ) -> Self {
        let mut counts = KindCounts::default();
        let mut failures = Vec::new();
        let mut pairs = 0;
        for o in &outcomes {
            let m = o.pairs();
            pairs += m;
            match o.kind {
                OutcomeKind::AnalyticBound => counts.analytic_bound += m,
                OutcomeKind::PrimeValuation => counts.prime_valuation += m,
                OutcomeKind::ExactNonInteger => counts.exact_non_integer += m,
                OutcomeKind::Uncertified => counts.uncertified += m,
            }
            if !o.ok {
                failures.push(Failure {
                    n: o.n,
                    k: o.k,
                    reason: o.reason.clone().unwrap_or_default(),
                });
            }
        }
        Self {
            schema: REPORT_SCHEMA.to_string(),
            sweep,
            n_min,
            n_max,
            k_min,
            k_max,
            pairs,
            counts,
            failures,
            outcomes,
            wall_time,
        }
    }

    pub fn is_success(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn summary_line(&self) -> String {
        format!("pairs={} failures={}", self.pairs, self.failures.len())
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("report serializes")
    }

    /// The JSON report without `wall_time`; identical across repeated runs.
    pub fn body_json(&self) -> String {
        let mut v = serde_json::to_value(self).expect("report serializes");
        v.as_object_mut().expect("report is an object").remove("wall_time");
        v.to_string()
    }

    pub fn from_json(s: &str) -> serde_json::Result<Self> {
        serde_json::from_str(s)
    }

    /// Columns `n,k,kind,p,valuation,ok`. Analytic runs print `k` as `lo..hi`.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("n,k,kind,p,valuation,ok\n");
        for o in &self.outcomes {
            let p = o.p.map(|p| p.to_string()).unwrap_or_default();
            let v = o.valuation.map(|v| v.to_string()).unwrap_or_default();
            let _ = writeln!(out, "{},{},{},{},{},{}", o.n, o.k_label(), o.kind.as_str(), p, v, o.ok);
        }
        out
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(
            out,
            "{:?} sweep: n in [{}, {}], k in [{}, {}]",
            self.sweep, self.n_min, self.n_max, self.k_min, self.k_max
        );
        let c = &self.counts;
        let _ = writeln!(
            out,
            "{}  analytic_bound={} prime_valuation={} exact_non_integer={} uncertified={}",
            self.summary_line(),
            c.analytic_bound,
            c.prime_valuation,
            c.exact_non_integer,
            c.uncertified
        );
        for f in &self.failures {
            let _ = writeln!(out, "FAIL n={} k={}: {}", f.n, f.k, f.reason);
        }
        let _ = writeln!(out);
        let _ = writeln!(out, "{:>8} {:>12} {:<18} {:>8} {:>9} {:>3}", "n", "k", "kind", "p", "valuation", "ok");
        for o in &self.outcomes {
            let p = o.p.map(|p| p.to_string()).unwrap_or_else(|| "-".into());
            let v = o.valuation.map(|v| v.to_string()).unwrap_or_else(|| "-".into());
            let _ = writeln!(
                out,
                "{:>8} {:>12} {:<18} {:>8} {:>9} {:>3}",
                o.n,
                o.k_label(),
                o.kind.as_str(),
                p,
                v,
                if o.ok { "yes" } else { "no" }
            );
        }
        out
    }
}
