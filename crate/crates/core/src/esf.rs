//! Exact elementary symmetric functions of reciprocals of an arithmetic
//! progression.
//!
//! With integer terms `a_0, ..., a_{n-1}` and `E_j` their integer elementary
//! symmetric functions, the `k`-th elementary symmetric function of the
//! reciprocals is `E_{n-k} / E_n`. Both evaluators run on integers and divide
//! once per result.

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::rational::{ExactInt, ExactRational};

/// Denominators `m, m+d, ..., m+(n-1)d`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct OddProgression {
    pub m: u64,
    pub d: u64,
    pub n: u64,
}

impl OddProgression {
    /// `1, 3, ..., 2n-1`.
    pub fn odd(n: u64) -> Result<Self> {
        Self::new(1, 2, n)
    }

    pub fn new(m: u64, d: u64, n: u64) -> Result<Self> {
        let last = (n.max(1) - 1).checked_mul(d).and_then(|x| x.checked_add(m));
        if m == 0 || n == 0 || last.is_none() {
            return Err(Error::InvalidProgression { m, d, n });
        }
        Ok(Self { m, d, n })
    }

    pub fn is_odd_numbers(&self) -> bool {
        self.m == 1 && self.d == 2
    }

    pub fn term(&self, i: u64) -> u64 {
        self.m + i * self.d
    }

    pub fn terms(&self) -> impl Iterator<Item = u64> + '_ {
        (0..self.n).map(|i| self.term(i))
    }

    fn check_k(&self, k: u64) -> Result<()> {
        if k == 0 || k > self.n {
            return Err(Error::KOutOfRange { n: self.n, k });
        }
        Ok(())
    }
}

/// `S_1, ..., S_n` for one progression.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EsfVector {
    pub n: u64,
    values: Vec<ExactRational>,
}

impl EsfVector {
    /// `S_k`, for `1 <= k <= n`.
    pub fn get(&self, k: u64) -> Option<&ExactRational> {
        k.checked_sub(1).and_then(|i| self.values.get(i as usize))
    }

    /// Entries in order `S_1, S_2, ...`.
    pub fn values(&self) -> &[ExactRational] {
        &self.values
    }

    pub fn into_values(self) -> Vec<ExactRational> {
        self.values
    }
}

/// Integer elementary symmetric functions `E_0..=E_n` of the terms.
fn integer_esf_row(prog: &OddProgression) -> Vec<BigUint> {
    let n = prog.n as usize;
    let mut row = vec![BigUint::zero(); n + 1];
    row[0] = BigUint::one();
    for (i, a) in prog.terms().enumerate() {
        for j in (1..=i + 1).rev() {
            let (lo, hi) = row.split_at_mut(j);
            hi[0] += &lo[j - 1] * a;
        }
    }
    row
}

fn ratio(num: BigUint, den: &BigUint) -> ExactRational {
    ExactRational::new(BigInt::from(num), BigInt::from(den.clone()))
        .expect("product of positive terms is nonzero")
}

/// Every `S_k` of the progression, `k = 1..=n`, in `O(n²)` big-integer
/// multiply-adds.
pub fn esf_all(prog: &OddProgression) -> EsfVector {
    let mut row = integer_esf_row(prog);
    let n = prog.n as usize;
    let total = row.pop().expect("row has n + 1 entries");
    // S_k = E_{n-k} / E_n, so walk the row backwards.
    let values = (1..=n).map(|k| ratio(std::mem::take(&mut row[n - k]), &total)).collect();
    EsfVector { n: prog.n, values }
}

/// `S_k` alone in `O(nk)`.
///
/// Keeps `F_j = e_j · (a_0 ⋯ a_i)` for `j <= k` over the prefix seen so far,
/// which is integral and obeys `F_j ← a·F_j + F_{j−1}`.
pub fn esf_single(prog: &OddProgression, k: u64) -> Result<ExactRational> {
    prog.check_k(k)?;
    let k = k as usize;
    let mut f = vec![BigUint::zero(); k + 1];
    f[0] = BigUint::one();
    for a in prog.terms() {
        for j in (1..=k).rev() {
            let prev = f[j - 1].clone();
            f[j] *= a;
            f[j] += prev;
        }
        f[0] *= a;
    }
    let den = std::mem::take(&mut f[0]);
    Ok(ratio(std::mem::take(&mut f[k]), &den))
}

/// `1 · 3 · 5 ⋯ (2·len − 1)`.
pub fn odd_product(len: u64) -> ExactInt {
    (0..len).fold(ExactInt::one(), |acc, i| acc * (2 * i + 1))
}

/// `S_k(k + offset)` for offsets 1, 2, 3 via the known closed forms, and
/// `S_k(k) = 1/(1·3⋯(2k−1))` for offset 0.
pub fn closed_form(k: u64, n: u64) -> Result<ExactRational> {
    if k == 0 {
        return Err(Error::KOutOfRange { n, k });
    }
    let offset = n as i64 - k as i64;
    let kk = ExactInt::from(k);
    let k1 = &kk + 1u32;
    let k2 = &kk + 2u32;
    let k3 = &kk + 3u32;
    let (num, den) = match offset {
        0 => (ExactInt::one(), odd_product(k)),
        1 => (&k1 * &k1, odd_product(k + 1)),
        2 => {
            let quad = ExactInt::from(3u32) * &kk * &kk + ExactInt::from(11u32) * &kk + 9u32;
            (&k1 * &k2 * quad, odd_product(k + 2) * 6u32)
        }
        3 => {
            let quad = &kk * &kk + ExactInt::from(5u32) * &kk + 5u32;
            (&k1 * &k2 * &k3 * &k3 * quad, odd_product(k + 3) * 6u32)
        }
        other => return Err(Error::UnsupportedOffset(other)),
    };
    ExactRational::new(num, den)
}

/// `S_k` via power sums `p_j = Σ (1/a_i)^j` and Newton's identities
/// `k·e_k = Σ_{i=1}^{k} (−1)^{i−1} e_{k−i} p_i`. Independent of the DP.
pub fn esf_newton_oracle(prog: &OddProgression, k: u64) -> Result<ExactRational> {
    prog.check_k(k)?;
    Ok(newton_prefix(prog, k as usize).pop().expect("k >= 1"))
}

/// [`esf_newton_oracle`] for every `k = 1..=n` in one pass.
pub fn esf_newton_oracle_all(prog: &OddProgression) -> Vec<ExactRational> {
    newton_prefix(prog, prog.n as usize)
}

// e_1..=e_k from Newton's identities.
fn newton_prefix(prog: &OddProgression, k: usize) -> Vec<ExactRational> {
    let recips: Vec<ExactRational> =
        prog.terms().map(|a| ExactRational::new(1, a).expect("terms are positive")).collect();
    let mut powers = recips.clone();
    let mut power_sums = Vec::with_capacity(k);
    for j in 1..=k {
        if j > 1 {
            for (p, r) in powers.iter_mut().zip(&recips) {
                *p = &*p * r;
            }
        }
        power_sums.push(powers.iter().fold(ExactRational::zero(), |acc, x| &acc + x));
    }
    let mut e = vec![ExactRational::one()];
    for m in 1..=k {
        let mut acc = ExactRational::zero();
        for i in 1..=m {
            let term = &e[m - i] * &power_sums[i - 1];
            acc = if i % 2 == 1 { &acc + &term } else { &acc - &term };
        }
        let m_inv = ExactRational::new(1, m as u64).expect("m >= 1");
        e.push(&acc * &m_inv);
    }
    e.remove(0);
    e
}
