use thiserror::Error;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{n} is not a composite coprime to 6")]
    NotCpn5 { n: u64 },
    #[error("thread coefficient {q} is prime; nothing to reduce")]
    PrimeCoefficient { q: u64 },
    #[error("{q} is not a prime greater than 3")]
    NotSievingPrime { q: u64 },
    #[error("index range {lo}..={hi} is invalid (indices start at 1 and are capped at {max})")]
    IndexRange { lo: u64, hi: u64, max: u64 },
    #[error("limit {limit} is outside the supported range {min}..={max}")]
    Capacity { limit: u64, min: u64, max: u64 },
    #[error("windows are not adjacent or differ in kind/strategy")]
    WindowMismatch,
    #[error("sieving primes do not cover {needed}")]
    SievingPrimesShort { needed: u64 },
    #[error("k = {k} survived the sieve but {member} is composite")]
    CompositeSurvivor { k: u64, member: u64 },
    #[error("prime table covers {limit}, need {needed}")]
    TableTooSmall { limit: u64, needed: u64 },
    #[error("bound undefined for n = {n} (requires n > 6)")]
    BoundUndefined { n: u64 },
    #[error("step count {m} is outside 1..={max}")]
    StepCount { m: usize, max: usize },
    #[error("density recurrence disagrees with closed product at step {step}")]
    RecurrenceMismatch { step: usize },
}
