//! p-adic valuations and prime-valuation certificates.
//!
//! A certificate names a prime `p` whose odd multiples among `1, 3, ..., 2n−1`
//! are exactly `p·1, p·3, ..., p·(2r−1)` with `r = ⌊n/p⌋ + t + 1`, each
//! divisible by `p` only once. Splitting `S_k(n)` by how many chosen factors
//! are multiples of `p` gives
//!
//! ```text
//! S_k(n) = S_k(r) / p^k + (terms of valuation >= −(k−1))
//! ```
//!
//! so `v_p(S_k(n)) = −k` as soon as `v_p(S_k(r)) = 0`.
//!
//! For `k >= 2` the prime must satisfy the window conditions of
//! [`PrimeWindow`]; they force `k <= r <= k+3`, where `S_k(r)` has a closed
//! form. For `k = 1` the prime must instead satisfy `p <= 2n−1 < 3p`, making
//! `p` itself the only multiple and `r = 1`.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::esf::closed_form;
use crate::primes::{is_prime_trial, PrimeWindow};
use crate::rational::{ExactInt, ExactRational};

/// Largest `e` with `p^e | x`.
pub fn vp_int(x: &ExactInt, p: u64) -> Result<u64> {
    if x.is_zero() {
        return Err(Error::ZeroValuation);
    }
    assert!(p >= 2, "valuation base must be at least 2");
    let p = BigInt::from(p);
    let mut x = x.clone();
    let mut e = 0;
    loop {
        let (q, r) = x.div_rem(&p);
        if !r.is_zero() {
            return Ok(e);
        }
        x = q;
        e += 1;
    }
}

/// `v_p(num) − v_p(den)`.
pub fn vp_rat(q: &ExactRational, p: u64) -> Result<i64> {
    if q.is_zero() {
        return Err(Error::ZeroValuation);
    }
    Ok(vp_int(q.numer(), p)? as i64 - vp_int(q.denom(), p)? as i64)
}

/// `−1` if `p(1 + 2⌊n/p⌋) > 2n − 1`, else `0`.
pub fn compute_t(n: u64, p: u64) -> i8 {
    let (n, p) = (u128::from(n), u128::from(p));
    if p * (1 + 2 * (n / p)) > 2 * n - 1 {
        -1
    } else {
        0
    }
}

/// How many of `1, 3, ..., 2n−1` are divisible by `p`, by direct scan.
pub fn count_multiples_oracle(n: u64, p: u64) -> u64 {
    (0..n).filter(|i| (1 + 2 * i) % p == 0).count() as u64
}

/// `⌊n/p⌋ + t + 1`.
pub fn reduced_index(n: u64, p: u64) -> u64 {
    ((n / p) as i64 + i64::from(compute_t(n, p)) + 1) as u64
}

/// A hypothesis that a prime-valuation certificate needs and did not get.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Hypothesis {
    KRange,
    NotPrime,
    NotAboveTwoKPlusSix,
    NotAboveWindowLower,
    AboveWindowUpper,
    DividesForbiddenFactor,
    /// k = 1 only: need `p` odd with `p <= 2n−1 < 3p`.
    NotSingleMultiple,
    ReducedIndexOutOfRange,
    SmallEsfDivisibleByP,
}

impl fmt::Display for Hypothesis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Hypothesis::KRange => "need 1 <= k <= n",
            Hypothesis::NotPrime => "p is not prime",
            Hypothesis::NotAboveTwoKPlusSix => "p must exceed 2k+6",
            Hypothesis::NotAboveWindowLower => "p must exceed n/(k+3)",
            Hypothesis::AboveWindowUpper => "p must not exceed n/k",
            Hypothesis::DividesForbiddenFactor => "p divides (3k^2+11k+9)(k^2+5k+5)",
            Hypothesis::NotSingleMultiple => "for k = 1, p must be odd with p <= 2n-1 < 3p",
            Hypothesis::ReducedIndexOutOfRange => "reduced index outside [k, k+3]",
            Hypothesis::SmallEsfDivisibleByP => "v_p(S_k(reduced index)) != 0",
        })
    }
}

/// Witness that `v_p(S_k(n)) = −k`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValuationCertificate {
    pub n: u64,
    pub k: u64,
    pub p: u64,
    pub t: i8,
    pub reduced_index: u64,
    /// `S_k(reduced_index)`.
    pub small_esf: ExactRational,
    #[serde(rename = "valuation")]
    pub claimed_valuation: i64,
}

/// Why a stored certificate was rejected.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Defect {
    Hypothesis(Hypothesis),
    /// `p² <= 2n−1`: some term could carry `p` twice.
    PrimeTooSmallForSquareFree,
    TRule { stored: i8, expected: i8 },
    ReducedIndex { stored: u64, expected: u64 },
    SmallEsf,
    SmallEsfValuation(i64),
    ClaimedValuation { stored: i64, expected: i64 },
}

impl fmt::Display for Defect {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Defect::Hypothesis(h) => write!(f, "{h}"),
            Defect::PrimeTooSmallForSquareFree => f.write_str("p^2 <= 2n-1"),
            Defect::TRule { stored, expected } => write!(f, "t = {stored}, rule gives {expected}"),
            Defect::ReducedIndex { stored, expected } => {
                write!(f, "reduced_index = {stored}, expected {expected}")
            }
            Defect::SmallEsf => f.write_str("small_esf does not match the closed form"),
            Defect::SmallEsfValuation(v) => write!(f, "v_p(small_esf) = {v}, expected 0"),
            Defect::ClaimedValuation { stored, expected } => {
                write!(f, "valuation = {stored}, expected {expected}")
            }
        }
    }
}

fn check_hypotheses(n: u64, k: u64, p: u64) -> Result<(), Hypothesis> {
    if k == 0 || k > n {
        return Err(Hypothesis::KRange);
    }
    if !is_prime_trial(p) {
        return Err(Hypothesis::NotPrime);
    }
    if k == 1 {
        let top = 2 * u128::from(n) - 1;
        let p = u128::from(p);
        if p % 2 == 0 || p > top || 3 * p <= top {
            return Err(Hypothesis::NotSingleMultiple);
        }
        return Ok(());
    }
    let w = PrimeWindow::new(n, k).map_err(|_| Hypothesis::KRange)?;
    if p <= w.min_exclusive_bound {
        return Err(Hypothesis::NotAboveTwoKPlusSix);
    }
    if u128::from(p) * u128::from(k + 3) <= u128::from(n) {
        return Err(Hypothesis::NotAboveWindowLower);
    }
    if u128::from(p) * u128::from(k) > u128::from(n) {
        return Err(Hypothesis::AboveWindowUpper);
    }
    if w.forbidden_factor % u128::from(p) == 0 {
        return Err(Hypothesis::DividesForbiddenFactor);
    }
    Ok(())
}

/// Checks every hypothesis for `(n, k, p)` and builds the certificate.
pub fn issue_valuation_certificate(n: u64, k: u64, p: u64) -> Result<ValuationCertificate> {
    check_hypotheses(n, k, p).map_err(Error::Hypothesis)?;
    let t = compute_t(n, p);
    let r = reduced_index(n, p);
    if r < k || r > k + 3 {
        return Err(Error::Hypothesis(Hypothesis::ReducedIndexOutOfRange));
    }
    let small_esf = closed_form(k, r)?;
    if vp_rat(&small_esf, p)? != 0 {
        return Err(Error::Hypothesis(Hypothesis::SmallEsfDivisibleByP));
    }
    Ok(ValuationCertificate {
        n,
        k,
        p,
        t,
        reduced_index: r,
        small_esf,
        claimed_valuation: -(k as i64),
    })
}

/// Re-derives every field of `c` from `(n, k, p)`.
pub fn check_valuation_certificate(c: &ValuationCertificate) -> Result<(), Defect> {
    check_hypotheses(c.n, c.k, c.p).map_err(Defect::Hypothesis)?;
    if u128::from(c.p) * u128::from(c.p) < 2 * u128::from(c.n) {
        return Err(Defect::PrimeTooSmallForSquareFree);
    }
    let t = compute_t(c.n, c.p);
    if c.t != t {
        return Err(Defect::TRule { stored: c.t, expected: t });
    }
    let r = reduced_index(c.n, c.p);
    if c.reduced_index != r {
        return Err(Defect::ReducedIndex { stored: c.reduced_index, expected: r });
    }
    if r < c.k || r > c.k + 3 {
        return Err(Defect::Hypothesis(Hypothesis::ReducedIndexOutOfRange));
    }
    match closed_form(c.k, r) {
        Ok(expected) if expected == c.small_esf => {}
        _ => return Err(Defect::SmallEsf),
    }
    let v = vp_rat(&c.small_esf, c.p).map_err(|_| Defect::SmallEsf)?;
    if v != 0 {
        return Err(Defect::SmallEsfValuation(v));
    }
    let expected = -(c.k as i64);
    if c.claimed_valuation != expected {
        return Err(Defect::ClaimedValuation { stored: c.claimed_valuation, expected });
    }
    Ok(())
}

impl ValuationCertificate {
    pub fn check(&self) -> Result<(), Defect> {
        check_valuation_certificate(self)
    }

    /// Single-line JSON with a leading `"type":"prime_valuation"`.
    pub fn to_json(&self) -> String {
        #[derive(Serialize)]
        struct Tagged<'a> {
            r#type: &'static str,
            #[serde(flatten)]
            inner: &'a ValuationCertificate,
        }
        serde_json::to_string(&Tagged { r#type: "prime_valuation", inner: self })
            .expect("certificate serializes")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::esf::{esf_single, OddProgression};
    use proptest::prelude::*;

    fn q(n: i64, d: i64) -> ExactRational {
        ExactRational::new(n, d).unwrap()
    }

    #[test]
    fn integer_valuations() {
        assert_eq!(vp_int(&45.into(), 3).unwrap(), 2);
        assert_eq!(vp_int(&7.into(), 5).unwrap(), 0);
        assert_eq!(vp_int(&817.into(), 43).unwrap(), 1);
        assert_eq!(vp_int(&(-81).into(), 3).unwrap(), 4);
        assert!(matches!(vp_int(&0.into(), 3), Err(Error::ZeroValuation)));
    }

    #[test]
    fn rational_valuations() {
        assert_eq!(vp_rat(&q(4, 3), 3).unwrap(), -1);
        assert_eq!(vp_rat(&q(9, 5), 3).unwrap(), 2);
        let s = esf_single(&OddProgression::odd(100).unwrap(), 2).unwrap();
        assert_eq!(vp_rat(&s, 23).unwrap(), -2);
        assert!(vp_rat(&ExactRational::zero(), 3).is_err());
    }

    #[test]
    fn t_rule_examples() {
        assert_eq!(compute_t(100, 23), -1);
        assert_eq!(compute_t(115, 23), -1);
        assert_eq!(compute_t(12, 3), -1);
        assert_eq!(compute_t(3, 3), -1);
        assert_eq!(compute_t(5, 3), 0);
        assert_eq!(count_multiples_oracle(100, 23), 4);
        assert_eq!(count_multiples_oracle(3, 3), 1);
        assert_eq!(count_multiples_oracle(12, 3), 4);
        assert_eq!(count_multiples_oracle(115, 23), 5);
        assert_eq!(count_multiples_oracle(5, 3), 2);
        for (n, p) in [(100, 23), (115, 23), (12, 3), (3, 3), (5, 3)] {
            assert_eq!(reduced_index(n, p), count_multiples_oracle(n, p));
        }
    }

    #[test]
    fn t_rule_matches_scan() {
        let table = crate::primes::build_sieve(4000).unwrap();
        for n in 1..=2000u64 {
            for p in table.primes_between(3, 2 * n - 1) {
                assert_eq!(reduced_index(n, p), count_multiples_oracle(n, p), "n={n} p={p}");
            }
        }
    }

    #[test]
    fn issue_examples() {
        let c = issue_valuation_certificate(100, 2, 23).unwrap();
        // odd multiples of 23 up to 199 are 23, 69, 115, 161
        assert_eq!((c.t, c.reduced_index), (-1, 4));
        assert_eq!(c.small_esf, q(86, 105));
        assert_eq!(c.claimed_valuation, -2);
        assert_eq!(vp_rat(&c.small_esf, 23).unwrap(), 0);

        let c = issue_valuation_certificate(50, 2, 17).unwrap();
        assert_eq!(c.t, 0);
        assert_eq!(c.reduced_index, 3);
        assert!(c.check().is_ok());

        assert!(matches!(
            issue_valuation_certificate(100, 2, 43),
            Err(Error::Hypothesis(Hypothesis::DividesForbiddenFactor))
        ));
    }

    #[test]
    fn issue_names_first_failure() {
        let h = |n, k, p| match issue_valuation_certificate(n, k, p) {
            Err(Error::Hypothesis(h)) => h,
            other => panic!("expected hypothesis failure, got {other:?}"),
        };
        assert_eq!(h(100, 0, 23), Hypothesis::KRange);
        assert_eq!(h(3, 4, 23), Hypothesis::KRange);
        assert_eq!(h(100, 2, 21), Hypothesis::NotPrime);
        assert_eq!(h(40, 2, 7), Hypothesis::NotAboveTwoKPlusSix);
        assert_eq!(h(100, 2, 19), Hypothesis::NotAboveWindowLower);
        assert_eq!(h(100, 2, 53), Hypothesis::AboveWindowUpper);
        assert_eq!(h(10, 1, 3), Hypothesis::NotSingleMultiple);
        assert_eq!(h(10, 1, 2), Hypothesis::NotSingleMultiple);
    }

    #[test]
    fn single_multiple_rule_for_k1() {
        // 2n-1 = 19, 3p > 19 needs p >= 7; largest prime is 19
        let c = issue_valuation_certificate(10, 1, 19).unwrap();
        assert_eq!(c.reduced_index, 1);
        assert_eq!(c.small_esf, q(1, 1));
        assert!(c.check().is_ok());
        let s1 = esf_single(&OddProgression::odd(10).unwrap(), 1).unwrap();
        assert_eq!(vp_rat(&s1, 19).unwrap(), -1);
        let c = issue_valuation_certificate(2, 1, 3).unwrap();
        assert!(c.check().is_ok());
    }

    #[test]
    fn tampering_is_detected() {
        let good = issue_valuation_certificate(100, 2, 23).unwrap();
        assert_eq!(check_valuation_certificate(&good), Ok(()));

        let mut c = good.clone();
        c.claimed_valuation = -1;
        assert_eq!(c.check(), Err(Defect::ClaimedValuation { stored: -1, expected: -2 }));

        let mut c = good.clone();
        c.p = 19;
        assert!(matches!(c.check(), Err(Defect::Hypothesis(_))));

        let mut c = good.clone();
        c.t = 0;
        assert!(matches!(c.check(), Err(Defect::TRule { .. })));

        let mut c = good.clone();
        c.reduced_index = 3;
        assert!(matches!(c.check(), Err(Defect::ReducedIndex { .. })));

        let mut c = good;
        c.small_esf = q(3, 5);
        assert_eq!(c.check(), Err(Defect::SmallEsf));
    }

    #[test]
    fn json_field_order() {
        let c = issue_valuation_certificate(100, 2, 23).unwrap();
        assert_eq!(
            c.to_json(),
            r#"{"type":"prime_valuation","n":100,"k":2,"p":23,"t":-1,"reduced_index":4,"small_esf":"86/105","valuation":-2}"#
        );
    }

    fn nonzero() -> impl Strategy<Value = ExactRational> {
        (any::<i64>().prop_filter("nonzero", |n| *n != 0), 1..i64::MAX).prop_map(|(n, d)| q(n, d))
    }

    proptest! {
        #[test]
        fn valuation_homomorphism(a in nonzero(), b in nonzero(), p in prop::sample::select(vec![2u64, 3, 5, 7, 23])) {
            let prod = &a * &b;
            prop_assert_eq!(vp_rat(&prod, p).unwrap(), vp_rat(&a, p).unwrap() + vp_rat(&b, p).unwrap());
            let sum = &a + &b;
            if !sum.is_zero() {
                let lo = vp_rat(&a, p).unwrap().min(vp_rat(&b, p).unwrap());
                prop_assert!(vp_rat(&sum, p).unwrap() >= lo);
            }
        }
    }
}
