//! Exclusion sieves over the generative index `k`.
//!
//! Every prime above 3 is `6k - 1` or `6k + 1`, so a twin candidate is the pair
//! `(6k - 1, 6k + 1)` and a cousin candidate is `(6k + 1, 6k + 5)`. Rather than
//! sieving the integers, this crate sieves the indices `k`: a `k` is *excluded*
//! when it lies on one of the arithmetic progressions ("threads") that force a
//! member of its pair to be composite.
//!
//! * [`genspace`] holds the symbolic layer: the six-residue classes, composite
//!   factor witnesses, the exclusion form families and thread reduction.
//! * [`sieve`] marks excluded `k` over a window by two independent strategies.
//! * [`oracle`] is a plain sieve of Eratosthenes used as ground truth.
//! * [`analytics`] does the density bookkeeping and lower-bound comparisons.
//!
//! The crate is `no_std` and needs only `alloc`.
#![no_std]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod analytics;
pub mod bitmap;
mod error;
pub mod genspace;
pub mod oracle;
pub mod sieve;

pub use error::{Error, Result};
pub use genspace::PairKind;
