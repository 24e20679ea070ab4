//! Sieving over generative space.
//!
//! A [`SieveWindow`] covers `k ∈ [lo, hi]` and has a bit set for every
//! excluded `k`. Two strategies fill it:
//!
//! * [`Strategy::Forms`] marks every thread of the three form families
//!   literally, looping `x` while `5x - 1 <= hi`. Cost is `Θ(K log K)`.
//! * [`Strategy::PrimeThreads`] marks, for each prime `q >= 5` with
//!   `q² <= 6·hi + 5`, the two residue classes of `k` where `q` divides a
//!   pair member, skipping the single `k` where that member is `q` itself.
//!
//! Both must produce bit-identical windows.

use alloc::vec::Vec;

use crate::bitmap::BitSet;
use crate::genspace::{self, ExclusionThread, Member, PairKind};
use crate::oracle::{self, PrimeTable};
use crate::{Error, Result};

/// Largest index accepted. Pair members up to `6·MAX_INDEX + 5` stay well
/// inside `u64` and within the oracle's capacity.
pub const MAX_INDEX: u64 = 10_000_000_000;

/// Default number of indices per segment.
pub const SEGMENT_LEN: u64 = 1 << 20;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Strategy {
    Forms,
    PrimeThreads,
}

impl Strategy {
    pub fn name(self) -> &'static str {
        match self {
            Strategy::Forms => "forms",
            Strategy::PrimeThreads => "threads",
        }
    }
}

fn check_range(lo: u64, hi: u64) -> Result<()> {
    if lo == 0 || lo > hi || hi > MAX_INDEX {
        return Err(Error::IndexRange {
            lo,
            hi,
            max: MAX_INDEX,
        });
    }
    Ok(())
}

/// Marks every member of `thread` inside `[lo, lo + bits.len())`.
#[inline]
fn mark(bits: &mut BitSet, lo: u64, hi: u64, thread: &ExclusionThread) {
    if thread.first > hi {
        return;
    }
    let start = thread.first_at_or_after(lo);
    if start <= hi {
        bits.set_stride((start - lo) as usize, thread.step as usize);
    }
}

/// Sealed exclusion bitmap over `[lo, hi]`.
#[derive(Clone, PartialEq, Eq)]
pub struct SieveWindow {
    lo: u64,
    hi: u64,
    kind: PairKind,
    strategy: Strategy,
    excluded: BitSet,
}

impl core::fmt::Debug for SieveWindow {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        f.debug_struct("SieveWindow")
            .field("lo", &self.lo)
            .field("hi", &self.hi)
            .field("kind", &self.kind)
            .field("strategy", &self.strategy)
            .field("excluded", &self.excluded.count_ones())
            .finish()
    }
}

impl SieveWindow {
    /// Literal form-family marking over `[lo, hi]`.
    pub fn forms(kind: PairKind, lo: u64, hi: u64) -> Result<Self> {
        check_range(lo, hi)?;
        let mut bits = BitSet::new((hi - lo + 1) as usize);
        let mut x = 1u64;
        while 5 * x - 1 <= hi {
            for t in genspace::k_forms(kind, x) {
                mark(&mut bits, lo, hi, &t);
            }
            x += 1;
        }
        Ok(SieveWindow {
            lo,
            hi,
            kind,
            strategy: Strategy::Forms,
            excluded: bits,
        })
    }

    /// Prime residue-class marking over `[lo, hi]`.
    ///
    /// `primes` is an ascending list of primes; every prime from 5 up to
    /// `isqrt(6·hi + 5)` must be present. Entries 2 and 3 and anything past
    /// the square root are ignored.
    pub fn prime_threads(kind: PairKind, lo: u64, hi: u64, primes: &[u64]) -> Result<Self> {
        check_range(lo, hi)?;
        let top = kind.pair(hi).1;
        let root = isqrt(top);
        let last = primes.last().copied().unwrap_or(0);
        if last < root && (last + 1..=root).any(genspace::is_prime_small) {
            return Err(Error::SievingPrimesShort { needed: root });
        }
        let mut bits = BitSet::new((hi - lo + 1) as usize);
        for &q in primes.iter().filter(|&&q| q >= 5).take_while(|&&q| q <= root) {
            for member in [Member::Small, Member::Large] {
                let t = genspace::prime_thread(kind, q, member);
                mark(&mut bits, lo, hi, &t);
            }
        }
        Ok(SieveWindow {
            lo,
            hi,
            kind,
            strategy: Strategy::PrimeThreads,
            excluded: bits,
        })
    }

    pub fn lo(&self) -> u64 {
        self.lo
    }

    pub fn hi(&self) -> u64 {
        self.hi
    }

    pub fn kind(&self) -> PairKind {
        self.kind
    }

    pub fn strategy(&self) -> Strategy {
        self.strategy
    }

    pub fn len(&self) -> u64 {
        self.hi - self.lo + 1
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// # Panics
    ///
    /// If `k` is outside the window.
    pub fn is_excluded(&self, k: u64) -> bool {
        assert!((self.lo..=self.hi).contains(&k), "k={k} outside window");
        self.excluded.get((k - self.lo) as usize)
    }

    pub fn excluded_count(&self) -> u64 {
        self.excluded.count_ones() as u64
    }

    pub fn survivor_count(&self) -> u64 {
        self.excluded.count_zeros() as u64
    }

    /// Non-excluded `k`, ascending.
    pub fn survivors(&self) -> impl Iterator<Item = u64> + '_ {
        self.excluded.iter_zeros().map(move |i| self.lo + i as u64)
    }

    /// Compares exclusion bits only, ignoring strategy.
    pub fn same_bits(&self, other: &SieveWindow) -> bool {
        self.lo == other.lo && self.hi == other.hi && self.kind == other.kind && self.excluded == other.excluded
    }

    /// Joins `next`, which must start at `self.hi + 1` with the same kind and
    /// strategy.
    pub fn concat(mut self, next: &SieveWindow) -> Result<Self> {
        if next.lo != self.hi + 1 || next.kind != self.kind || next.strategy != self.strategy {
            return Err(Error::WindowMismatch);
        }
        self.excluded.append(&next.excluded);
        self.hi = next.hi;
        Ok(self)
    }
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

/// Primes needed to sieve indices up to `hi`.
pub fn sieving_primes(kind: PairKind, hi: u64) -> Vec<u64> {
    let root = isqrt(kind.pair(hi).1);
    let mut out = Vec::new();
    oracle::for_each_prime(root.max(2), |p| out.push(p));
    out
}

/// Splits `[lo, hi]` into consecutive segments of at most `len` indices.
pub fn segments(lo: u64, hi: u64, len: u64) -> impl Iterator<Item = (u64, u64)> {
    debug_assert!(len > 0);
    let mut cur = lo;
    core::iter::from_fn(move || {
        if cur > hi {
            return None;
        }
        let end = hi.min(cur.saturating_add(len - 1));
        let seg = (cur, end);
        cur = end + 1;
        Some(seg)
    })
}

/// Form-family sieve of `[1, max_k]` in one window.
pub fn sieve_forms(kind: PairKind, max_k: u64) -> Result<SieveWindow> {
    SieveWindow::forms(kind, 1, max_k)
}

/// Prime-thread sieve of `[1, max_k]`, segment by segment.
pub fn sieve_prime_threads(kind: PairKind, max_k: u64) -> Result<SieveWindow> {
    check_range(1, max_k)?;
    let primes = sieving_primes(kind, max_k);
    let mut out: Option<SieveWindow> = None;
    for (lo, hi) in segments(1, max_k, SEGMENT_LEN) {
        let w = SieveWindow::prime_threads(kind, lo, hi, &primes)?;
        out = Some(match out {
            None => w,
            Some(acc) => acc.concat(&w)?,
        });
    }
    Ok(out.expect("non-empty range"))
}

pub fn survivors(window: &SieveWindow) -> Vec<u64> {
    window.survivors().collect()
}

/// A survivor index with its prime pair.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct SurvivorPair {
    pub k: u64,
    pub small: u64,
    pub large: u64,
}

/// Maps survivors to their pairs, checking both members against `table`.
///
/// A composite member means the sieve missed an exclusion.
pub fn pairs_from_survivors(kind: PairKind, ks: &[u64], table: &PrimeTable) -> Result<Vec<SurvivorPair>> {
    let mut out = Vec::with_capacity(ks.len());
    for &k in ks {
        let (small, large) = kind.pair(k);
        if large > table.limit() {
            return Err(Error::TableTooSmall {
                limit: table.limit(),
                needed: large,
            });
        }
        for member in [small, large] {
            if !table.is_prime(member) {
                return Err(Error::CompositeSurvivor { k, member });
            }
        }
        out.push(SurvivorPair { k, small, large });
    }
    Ok(out)
}

/// Counts pairs by their larger member.
#[derive(Debug, Clone)]
pub struct PairCounter {
    kind: PairKind,
    larges: Vec<u64>,
    max_k: u64,
}

impl PairCounter {
    /// Counter valid for every `n <= covered_n()`; `window` must start at 1.
    pub fn from_window(window: &SieveWindow) -> Self {
        debug_assert_eq!(window.lo(), 1);
        let kind = window.kind();
        PairCounter {
            kind,
            larges: window.survivors().map(|k| kind.pair(k).1).collect(),
            max_k: window.hi(),
        }
    }

    /// Sieves far enough to answer queries up to `n_max`.
    pub fn up_to(kind: PairKind, n_max: u64) -> Result<Self> {
        let max_k = kind.max_index_with_large_at_most(n_max);
        if max_k == 0 {
            return Ok(PairCounter {
                kind,
                larges: Vec::new(),
                max_k: 0,
            });
        }
        Ok(Self::from_window(&sieve_prime_threads(kind, max_k)?))
    }

    pub fn kind(&self) -> PairKind {
        self.kind
    }

    /// Largest `n` the counter answers exactly.
    pub fn covered_n(&self) -> u64 {
        // The next candidate's larger member minus one.
        self.kind.pair(self.max_k + 1).1 - 1
    }

    /// Pairs whose larger member is `<= n`.
    pub fn count(&self, n: u64) -> u64 {
        debug_assert!(n <= self.covered_n());
        self.larges.partition_point(|&l| l <= n) as u64
    }
}

/// `π` for the kind: pairs with larger member `<= n`.
pub fn pi_pairs(kind: PairKind, n: u64) -> Result<u64> {
    Ok(PairCounter::up_to(kind, n)?.count(n))
}
