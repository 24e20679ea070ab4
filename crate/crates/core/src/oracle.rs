//! Ground truth: a segmented, odd-only sieve of Eratosthenes.
//!
//! Nothing here uses the mod-6 structure the generative sieves rely on; the
//! only wheel is the factor 2 dropped by odd-only storage.

use alloc::vec;
use alloc::vec::Vec;

use crate::bitmap::BitSet;
use crate::genspace::PairKind;
use crate::{Error, Result};

/// Largest `N` accepted by [`primes_up_to`].
pub const MAX_LIMIT: u64 = 60_000_000_005;

/// Odd values per segment (the segment spans twice this many integers).
const SEGMENT_ODDS: usize = 1 << 18;

/// Primality bitmap over `[0, limit]`; bit `i` stands for `2i + 1`.
#[derive(Clone, PartialEq, Eq)]
pub struct PrimeTable {
    limit: u64,
    odd: BitSet,
}

impl core::fmt::Debug for PrimeTable {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        write!(f, "PrimeTable(limit={})", self.limit)
    }
}

impl PrimeTable {
    pub fn limit(&self) -> u64 {
        self.limit
    }

    /// # Panics
    ///
    /// If `n` exceeds the table limit.
    #[inline]
    pub fn is_prime(&self, n: u64) -> bool {
        assert!(n <= self.limit, "{n} beyond prime table limit {}", self.limit);
        if n % 2 == 0 {
            return n == 2;
        }
        self.odd.get((n / 2) as usize)
    }

    /// `π(limit)`.
    pub fn count(&self) -> u64 {
        self.odd.count_ones() as u64 + u64::from(self.limit >= 2)
    }

    /// Primes in ascending order.
    pub fn primes(&self) -> impl Iterator<Item = u64> + '_ {
        let two = (self.limit >= 2).then_some(2u64);
        two.into_iter()
            .chain((0..self.odd.len()).filter(|&i| self.odd.get(i)).map(|i| 2 * i as u64 + 1))
    }

    /// Primes `p` with `lo <= p <= hi` (clamped to the table).
    pub fn primes_in(&self, lo: u64, hi: u64) -> Vec<u64> {
        let hi = hi.min(self.limit);
        let mut out = Vec::new();
        if lo <= 2 && hi >= 2 {
            out.push(2);
        }
        let mut n = lo.max(3) | 1;
        while n <= hi {
            if self.odd.get((n / 2) as usize) {
                out.push(n);
            }
            n += 2;
        }
        out
    }
}

/// Plain sieve over `[0, n]`, returning odd primes only.
fn small_odd_primes(n: u64) -> Vec<u64> {
    let n = n as usize;
    let mut composite = vec![false; n / 2 + 1];
    let mut out = Vec::new();
    let mut i = 1usize;
    while 2 * i < n {
        if !composite[i] {
            let p = 2 * i + 1;
            out.push(p as u64);
            let mut j = p * p / 2;
            while j <= n / 2 {
                composite[j] = true;
                j += p;
            }
        }
        i += 1;
    }
    out
}

fn isqrt(n: u64) -> u64 {
    let mut r = libm::sqrt(n as f64) as u64;
    while r.saturating_mul(r) > n {
        r -= 1;
    }
    while (r + 1).saturating_mul(r + 1) <= n {
        r += 1;
    }
    r
}

/// Walks odd numbers up to `limit` one segment at a time.
pub struct SegmentedSieve {
    limit: u64,
    base: Vec<u64>,
    /// Next odd multiple of each base prime to strike, as an odd index.
    next: Vec<u64>,
    /// Odd index of the first value in the next segment.
    cursor: u64,
    end: u64,
    buf: Vec<bool>,
}

impl SegmentedSieve {
    pub fn new(limit: u64) -> Self {
        let base = small_odd_primes(isqrt(limit));
        let next = base.iter().map(|&p| p * p / 2).collect();
        SegmentedSieve {
            limit,
            base,
            next,
            cursor: 0,
            end: limit.div_ceil(2),
            buf: Vec::new(),
        }
    }

    /// Sieves the next segment. Returns the odd index of its first slot and a
    /// slice with `true` at primes; `None` when exhausted.
    pub fn next_segment(&mut self) -> Option<(u64, &[bool])> {
        if self.cursor >= self.end {
            return None;
        }
        let lo = self.cursor;
        let len = (self.end - lo).min(SEGMENT_ODDS as u64) as usize;
        let hi = lo + len as u64;
        self.buf.clear();
        self.buf.resize(len, true);
        for (p, nx) in self.base.iter().zip(self.next.iter_mut()) {
            let mut j = *nx;
            while j < hi {
                self.buf[(j - lo) as usize] = false;
                j += p;
            }
            *nx = j;
        }
        if lo == 0 {
            // 1 is not prime.
            self.buf[0] = false;
        }
        self.cursor = hi;
        Some((lo, &self.buf))
    }

    pub fn limit(&self) -> u64 {
        self.limit
    }
}

/// Primes `<= n` streamed in ascending order without storing them.
pub fn for_each_prime(n: u64, mut f: impl FnMut(u64)) {
    if n >= 2 {
        f(2);
    }
    if n < 3 {
        return;
    }
    let mut s = SegmentedSieve::new(n);
    while let Some((lo, seg)) = s.next_segment() {
        for (i, &p) in seg.iter().enumerate() {
            if p {
                f(2 * (lo + i as u64) + 1);
            }
        }
    }
}

pub fn primes_up_to(n: u64) -> Result<PrimeTable> {
    if !(2..=MAX_LIMIT).contains(&n) {
        return Err(Error::Capacity {
            limit: n,
            min: 2,
            max: MAX_LIMIT,
        });
    }
    let mut odd = BitSet::new(n.div_ceil(2) as usize);
    let mut s = SegmentedSieve::new(n);
    while let Some((lo, seg)) = s.next_segment() {
        for (i, &p) in seg.iter().enumerate() {
            if p {
                odd.set(lo as usize + i);
            }
        }
    }
    Ok(PrimeTable { limit: n, odd })
}

/// The first `count` primes greater than 3.
pub fn primes_above_three(count: usize) -> Vec<u64> {
    if count == 0 {
        return Vec::new();
    }
    // p_n < n (ln n + ln ln n) for n >= 6; pad for the two skipped primes.
    let n = (count + 2).max(6) as f64;
    let bound = (n * (libm::log(n) + libm::log(libm::log(n)))) as u64 + 10;
    let mut out = Vec::with_capacity(count);
    for_each_prime(bound, |p| {
        if p > 3 && out.len() < count {
            out.push(p);
        }
    });
    debug_assert_eq!(out.len(), count);
    out
}

/// Indices `k <= max_k` whose candidate pair is two primes, by direct lookup.
pub fn oracle_survivors(kind: PairKind, max_k: u64, table: &PrimeTable) -> Result<Vec<u64>> {
    if max_k == 0 {
        return Ok(Vec::new());
    }
    let needed = kind.pair(max_k).1;
    if table.limit() < needed {
        return Err(Error::TableTooSmall {
            limit: table.limit(),
            needed,
        });
    }
    Ok((1..=max_k)
        .filter(|&k| {
            let (s, l) = kind.pair(k);
            table.is_prime(s) && table.is_prime(l)
        })
        .collect())
}

/// Consecutive primes with `next >= 2·prime`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GapViolation {
    pub prime: u64,
    /// `None` when no successor exists below `2·prime + 1` within the scan.
    pub next: Option<u64>,
}

/// Violations of `p' < 2p` over consecutive primes with `p <= n`.
///
/// Streams primes up to `2n + 1`, far enough to see the successor of every
/// `p <= n` or to prove it is missing.
pub fn prime_gap_check(n: u64) -> Vec<GapViolation> {
    let mut violations = Vec::new();
    let mut prev: Option<u64> = None;
    for_each_prime(2 * n + 1, |p| {
        if let Some(q) = prev {
            if q <= n && p >= 2 * q {
                violations.push(GapViolation { prime: q, next: Some(p) });
            }
        }
        prev = Some(p);
    });
    if let Some(q) = prev {
        if q <= n {
            violations.push(GapViolation { prime: q, next: None });
        }
    }
    violations
}

/// Slow, obviously correct primality for recounts.
pub fn trial_division_is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::vec::Vec;

    #[test]
    fn small_tables() {
        let t = primes_up_to(10).unwrap();
        assert_eq!(t.primes().collect::<Vec<_>>(), [2, 3, 5, 7]);
        assert_eq!(primes_up_to(31).unwrap().count(), 11);
        let t = primes_up_to(2).unwrap();
        assert_eq!(t.primes().collect::<Vec<_>>(), [2]);
        assert!(primes_up_to(1).is_err());
        assert!(primes_up_to(MAX_LIMIT + 1).is_err());
    }

    #[test]
    fn table_matches_trial_division() {
        let t = primes_up_to(20_000).unwrap();
        for n in 0..=20_000 {
            assert_eq!(t.is_prime(n), trial_division_is_prime(n), "n={n}");
        }
        assert_eq!(primes_up_to(1000).unwrap().count(), 168);
        assert_eq!((0..=1000).filter(|&n| trial_division_is_prime(n)).count(), 168);
    }

    #[test]
    fn segments_span_boundaries() {
        // Several segments' worth, compared against the plain sieve.
        let n = 3 * 2 * SEGMENT_ODDS as u64 + 77;
        let t = primes_up_to(n).unwrap();
        let plain = small_odd_primes(n);
        assert_eq!(t.count() as usize, plain.len() + 1);
        let streamed = {
            let mut v = Vec::new();
            for_each_prime(n, |p| v.push(p));
            v
        };
        assert_eq!(streamed[0], 2);
        assert_eq!(&streamed[1..], &plain[..]);
        assert_eq!(t.primes_in(1_000_000, 1_000_100), [1_000_003, 1_000_033, 1_000_037, 1_000_039, 1_000_081, 1_000_099]);
    }

    #[test]
    fn first_primes_above_three() {
        assert_eq!(primes_above_three(5), [5, 7, 11, 13, 17]);
        let many = primes_above_three(10_000);
        assert_eq!(many.len(), 10_000);
        // The 10002nd prime.
        assert_eq!(*many.last().unwrap(), 104_759);
    }

    #[test]
    fn survivors_examples() {
        let t = primes_up_to(6 * 20 + 5).unwrap();
        assert_eq!(
            oracle_survivors(PairKind::Twin, 20, &t).unwrap(),
            [1, 2, 3, 5, 7, 10, 12, 17, 18]
        );
        assert_eq!(
            oracle_survivors(PairKind::Twin, 12, &t).unwrap(),
            [1, 2, 3, 5, 7, 10, 12]
        );
        assert_eq!(
            oracle_survivors(PairKind::Cousin, 13, &t).unwrap(),
            [1, 2, 3, 6, 7, 11, 13]
        );
        assert!(oracle_survivors(PairKind::Cousin, 21, &t).is_err());
    }

    #[test]
    fn gap_check() {
        assert!(prime_gap_check(10).is_empty());
        assert!(prime_gap_check(100).is_empty());
        assert!(prime_gap_check(3).is_empty());
    }
}
