#![allow(dead_code)]

use esf_core::ExactRational;

/// Every `S_k(n)`, `k = 0..=n`, by enumerating all subsets of
/// `{1, 3, ..., 2n−1}`. Works over the common denominator `1·3⋯(2n−1)` in
/// `u128`, which is exact up to `n = 20`.
pub fn brute_force_all(n: u64) -> Vec<ExactRational> {
    assert!(n <= 20, "subset enumeration is capped at n = 20");
    let terms: Vec<u128> = (0..n).map(|i| 2 * u128::from(i) + 1).collect();
    let full: u128 = terms.iter().product();
    let mut sums = vec![0u128; n as usize + 1];
    for mask in 0u32..(1u32 << n) {
        // full / prod(subset) = product of the terms left out
        let rest: u128 = (0..n as usize).filter(|i| mask >> i & 1 == 0).map(|i| terms[i]).product();
        sums[mask.count_ones() as usize] += rest;
    }
    sums.into_iter()
        .map(|s| ExactRational::new(num_bigint_from(s), num_bigint_from(full)).unwrap())
        .collect()
}

fn num_bigint_from(x: u128) -> esf_core::ExactInt {
    x.to_string().parse().unwrap()
}

/// π(x) by trial division, for small x.
pub fn prime_count_trial(x: u64) -> u64 {
    (2..=x).filter(|&i| esf_core::primes::is_prime_trial(i)).count() as u64
}
