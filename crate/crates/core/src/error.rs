use thiserror::Error;

use crate::padic::Hypothesis;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("zero denominator")]
    ZeroDenominator,

    #[error("division by zero")]
    DivisionByZero,

    #[error("cannot parse {0:?} as a rational")]
    Parse(String),

    #[error("sieve limit {limit} exceeds the configured maximum {max}")]
    SieveTooLarge { limit: u64, max: u64 },

    #[error("sieve limit must be at least 2, got {0}")]
    SieveTooSmall(u64),

    #[error("{what} = {value} is outside the sieve range [0, {limit}]")]
    OutOfSieveRange { what: &'static str, value: u64, limit: u64 },

    #[error("{function}({x}) is undefined: requires x {requirement}")]
    Domain { function: &'static str, x: f64, requirement: &'static str },

    #[error("k = {k} is out of range for n = {n}")]
    KOutOfRange { n: u64, k: u64 },

    #[error("progression must have positive terms and n >= 1 (m = {m}, d = {d}, n = {n})")]
    InvalidProgression { m: u64, d: u64, n: u64 },

    #[error("no closed form for n - k = {0}; supported offsets are 1, 2, 3")]
    UnsupportedOffset(i64),

    #[error("the valuation of zero is infinite")]
    ZeroValuation,

    #[error("valuation certificate hypothesis failed: {0}")]
    Hypothesis(Hypothesis),

    #[error("analytic bound does not apply to (n = {n}, k = {k}): need {threshold:.6} <= k <= n")]
    NotApplicable { n: u64, k: u64, threshold: f64 },

    #[error("no strategy certifies (n = {n}, k = {k})")]
    Uncertifiable { n: u64, k: u64 },

    #[error("n = {n} exceeds the exact-evaluation cap {cap}")]
    ExactCapExceeded { n: u64, cap: u64 },

    #[error("exact cap {requested} exceeds the hard ceiling {ceiling}")]
    ExactCapTooLarge { requested: u64, ceiling: u64 },

    #[error("certification is only defined for the progression 1, 3, ..., 2n-1 (got m = {m}, d = {d})")]
    UnsupportedProgression { m: u64, d: u64 },

    #[error("invalid range: {0}")]
    InvalidRange(String),

    #[error("sieve cache: {0}")]
    CacheFormat(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
