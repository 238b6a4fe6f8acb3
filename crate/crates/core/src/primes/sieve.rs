use std::fs;
use std::io::Write;
use std::path::Path;

use bitvec::prelude::*;

use crate::error::{Error, Result};

/// Largest sieve [`build_sieve`] will allocate unless told otherwise.
pub const DEFAULT_MAX_SIEVE_LIMIT: u64 = 100_000_000;

const CACHE_MAGIC: &[u8; 9] = b"ESFSIEVE1";

/// Primality flags for every integer in `[0, limit]`, plus per-word prefix
/// counts so that `π(x)` is a constant-time lookup.
#[derive(Clone)]
pub struct SieveTable {
    limit: u64,
    bits: BitVec<u64, Lsb0>,
    // prefix[w] = number of primes below 64 * w
    prefix: Vec<u64>,
}

impl std::fmt::Debug for SieveTable {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("SieveTable")
            .field("limit", &self.limit)
            .field("primes", &self.count_up_to(self.limit))
            .finish()
    }
}

/// Sieve of Eratosthenes up to `limit` with the default size ceiling.
pub fn build_sieve(limit: u64) -> Result<SieveTable> {
    SieveTable::build(limit, DEFAULT_MAX_SIEVE_LIMIT)
}

/// Whether the cache file was reused or had to be regenerated.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CacheStatus {
    Loaded,
    Rebuilt,
}

impl SieveTable {
    pub fn build(limit: u64, max_limit: u64) -> Result<Self> {
        if limit < 2 {
            return Err(Error::SieveTooSmall(limit));
        }
        if limit > max_limit {
            return Err(Error::SieveTooLarge { limit, max: max_limit });
        }
        let len = (limit + 1) as usize;
        let mut bits = bitvec![u64, Lsb0; 1; len];
        bits.set(0, false);
        bits.set(1, false);
        let mut i = 2usize;
        while i * i < len {
            if bits[i] {
                let mut j = i * i;
                while j < len {
                    bits.set(j, false);
                    j += i;
                }
            }
            i += 1;
        }
        Ok(Self::from_bits(limit, bits))
    }

    fn from_bits(limit: u64, bits: BitVec<u64, Lsb0>) -> Self {
        let words = bits.as_raw_slice();
        let mut prefix = Vec::with_capacity(words.len() + 1);
        let mut acc = 0u64;
        prefix.push(0);
        for w in words {
            acc += u64::from(w.count_ones());
            prefix.push(acc);
        }
        Self { limit, bits, prefix }
    }

    pub fn limit(&self) -> u64 {
        self.limit
    }

    /// Panics if `i > limit`.
    pub fn is_prime(&self, i: u64) -> bool {
        assert!(i <= self.limit, "{i} is beyond the sieve limit {}", self.limit);
        self.bits[i as usize]
    }

    /// Number of primes `<= x`, for `x <= limit`.
    pub(crate) fn count_up_to(&self, x: u64) -> u64 {
        debug_assert!(x <= self.limit);
        let end = x as usize + 1;
        let word = end / 64;
        let rem = end % 64;
        let mut count = self.prefix[word];
        if rem > 0 {
            let w = self.bits.as_raw_slice()[word];
            count += u64::from((w & ((1u64 << rem) - 1)).count_ones());
        }
        count
    }

    /// Primes in `[lo, hi]`, ascending. `hi` is clamped to the limit.
    pub fn primes_between(&self, lo: u64, hi: u64) -> impl Iterator<Item = u64> + '_ {
        let hi = hi.min(self.limit);
        (lo..=hi).filter(move |&i| self.bits[i as usize])
    }

    pub fn primes(&self) -> impl Iterator<Item = u64> + '_ {
        self.bits.iter_ones().map(|i| i as u64)
    }

    /// Largest prime `<= x`, if any.
    pub fn largest_prime_at_most(&self, x: u64) -> Option<u64> {
        let x = x.min(self.limit);
        (2..=x).rev().find(|&i| self.bits[i as usize])
    }

    fn to_cache_bytes(&self) -> Vec<u8> {
        let nbytes = (self.limit as usize + 1).div_ceil(8);
        let mut out = Vec::with_capacity(CACHE_MAGIC.len() + 8 + nbytes);
        out.extend_from_slice(CACHE_MAGIC);
        out.extend_from_slice(&self.limit.to_le_bytes());
        let body: Vec<u8> = self
            .bits
            .as_raw_slice()
            .iter()
            .flat_map(|w| w.to_le_bytes())
            .take(nbytes)
            .collect();
        out.extend_from_slice(&body);
        out
    }

    fn from_cache_bytes(bytes: &[u8]) -> Result<Self> {
        let header = CACHE_MAGIC.len() + 8;
        if bytes.len() < header || &bytes[..CACHE_MAGIC.len()] != CACHE_MAGIC {
            return Err(Error::CacheFormat("bad magic".into()));
        }
        let limit = u64::from_le_bytes(bytes[CACHE_MAGIC.len()..header].try_into().unwrap());
        if !(2..=DEFAULT_MAX_SIEVE_LIMIT).contains(&limit) {
            return Err(Error::CacheFormat(format!("implausible limit {limit}")));
        }
        let len = limit as usize + 1;
        let body = &bytes[header..];
        if body.len() != len.div_ceil(8) {
            return Err(Error::CacheFormat(format!(
                "expected {} bitset bytes for limit {limit}, found {}",
                len.div_ceil(8),
                body.len()
            )));
        }
        let mut words: Vec<u64> = body
            .chunks(8)
            .map(|c| {
                let mut buf = [0u8; 8];
                buf[..c.len()].copy_from_slice(c);
                u64::from_le_bytes(buf)
            })
            .collect();
        // Clear anything past the limit so popcounts stay exact.
        if !len.is_multiple_of(64) {
            let last = words.len() - 1;
            words[last] &= (1u64 << (len % 64)) - 1;
        }
        let mut bits = BitVec::<u64, Lsb0>::from_vec(words);
        bits.truncate(len);
        let table = Self::from_bits(limit, bits);
        if table.is_prime(0) || table.is_prime(1) || !table.is_prime(2) {
            return Err(Error::CacheFormat("bitset fails spot check".into()));
        }
        Ok(table)
    }

    pub fn write_cache(&self, path: &Path) -> Result<()> {
        if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
            fs::create_dir_all(dir)?;
        }
        let mut f = fs::File::create(path)?;
        f.write_all(&self.to_cache_bytes())?;
        Ok(())
    }

    /// Reads a cached sieve for exactly `limit`, rebuilding (and rewriting
    /// the file) when it is missing, malformed, or for a different limit.
    pub fn load_or_build(path: &Path, limit: u64, max_limit: u64) -> Result<(Self, CacheStatus)> {
        if let Ok(bytes) = fs::read(path) {
            if let Ok(table) = Self::from_cache_bytes(&bytes) {
                if table.limit == limit {
                    return Ok((table, CacheStatus::Loaded));
                }
            }
        }
        let table = Self::build(limit, max_limit)?;
        table.write_cache(path)?;
        Ok((table, CacheStatus::Rebuilt))
    }
}

/// Deterministic trial division; independent of any sieve.
pub fn is_prime_trial(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n.is_multiple_of(2) {
        return n == 2;
    }
    let mut d = 3u64;
    while d.saturating_mul(d) <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_sieves() {
        let t = build_sieve(30).unwrap();
        let p: Vec<u64> = t.primes().collect();
        assert_eq!(p, vec![2, 3, 5, 7, 11, 13, 17, 19, 23, 29]);
        let t = build_sieve(2).unwrap();
        assert_eq!(t.primes().collect::<Vec<_>>(), vec![2]);
    }

    #[test]
    fn rejects_bad_limits() {
        assert!(matches!(build_sieve(1), Err(Error::SieveTooSmall(1))));
        assert!(matches!(
            SieveTable::build(1001, 1000),
            Err(Error::SieveTooLarge { limit: 1001, max: 1000 })
        ));
        assert!(matches!(
            build_sieve(DEFAULT_MAX_SIEVE_LIMIT + 1),
            Err(Error::SieveTooLarge { .. })
        ));
    }

    #[test]
    fn matches_trial_division_to_ten_thousand() {
        let t = build_sieve(10_000).unwrap();
        for i in 0..=10_000 {
            assert_eq!(t.is_prime(i), is_prime_trial(i), "i = {i}");
        }
    }

    #[test]
    fn counts_across_word_boundaries() {
        let t = build_sieve(1000).unwrap();
        let mut running = 0;
        for x in 0..=1000 {
            if is_prime_trial(x) {
                running += 1;
            }
            assert_eq!(t.count_up_to(x), running, "x = {x}");
        }
    }

    #[test]
    fn largest_prime_lookup() {
        let t = build_sieve(100).unwrap();
        assert_eq!(t.largest_prime_at_most(100), Some(97));
        assert_eq!(t.largest_prime_at_most(3), Some(3));
        assert_eq!(t.largest_prime_at_most(1), None);
    }

    #[test]
    fn cache_layout() {
        let t = build_sieve(30).unwrap();
        let bytes = t.to_cache_bytes();
        assert_eq!(&bytes[..9], b"ESFSIEVE1");
        assert_eq!(&bytes[9..17], &30u64.to_le_bytes());
        // 31 flags -> 4 bytes; byte 0 = primes 2,3,5,7 -> bits 2,3,5,7
        assert_eq!(bytes.len(), 17 + 4);
        assert_eq!(bytes[17], 0b1010_1100);
    }

    #[test]
    fn cache_roundtrip_and_mismatch() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("sieve.bin");
        let (a, s) = SieveTable::load_or_build(&path, 5000, DEFAULT_MAX_SIEVE_LIMIT).unwrap();
        assert_eq!(s, CacheStatus::Rebuilt);
        let (b, s) = SieveTable::load_or_build(&path, 5000, DEFAULT_MAX_SIEVE_LIMIT).unwrap();
        assert_eq!(s, CacheStatus::Loaded);
        assert_eq!(a.bits, b.bits);
        assert_eq!(b.count_up_to(5000), 669);

        let (c, s) = SieveTable::load_or_build(&path, 6000, DEFAULT_MAX_SIEVE_LIMIT).unwrap();
        assert_eq!(s, CacheStatus::Rebuilt);
        assert_eq!(c.limit(), 6000);

        fs::write(&path, b"ESFSIEVE1garbage").unwrap();
        let (_, s) = SieveTable::load_or_build(&path, 6000, DEFAULT_MAX_SIEVE_LIMIT).unwrap();
        assert_eq!(s, CacheStatus::Rebuilt);
    }
}
