//! Segment-parallel prime-thread sieving.

use rayon::prelude::*;

use twinspace_core::sieve::{self, SieveWindow, SEGMENT_LEN};
use twinspace_core::{PairKind, Result};

/// Same bitmap as [`sieve::sieve_prime_threads`]; segments are sieved on the
/// rayon pool and joined in index order.
pub fn par_sieve_prime_threads(kind: PairKind, max_k: u64) -> Result<SieveWindow> {
    par_sieve_with_segment(kind, max_k, SEGMENT_LEN)
}

pub fn par_sieve_with_segment(kind: PairKind, max_k: u64, segment: u64) -> Result<SieveWindow> {
    if max_k == 0 || max_k > sieve::MAX_INDEX {
        // Let the core produce the error.
        return sieve::sieve_prime_threads(kind, max_k);
    }
    let primes = sieve::sieving_primes(kind, max_k);
    let ranges: Vec<(u64, u64)> = sieve::segments(1, max_k, segment).collect();
    let windows: Vec<SieveWindow> = ranges
        .par_iter()
        .map(|&(lo, hi)| SieveWindow::prime_threads(kind, lo, hi, &primes))
        .collect::<Result<_>>()?;
    let mut iter = windows.into_iter();
    let first = iter.next().expect("non-empty range");
    iter.try_fold(first, |acc, w| acc.concat(&w))
}
