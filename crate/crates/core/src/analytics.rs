//! Density bookkeeping and lower-bound comparisons.
//!
//! After sieving with the first `m` primes above 3, the fraction of indices
//! still available is tracked two ways:
//!
//! * `available(m) = Π p5r(j) / p5(j)`, with `p5r = p - 1` for `p ≡ 1 (mod 6)`
//!   and `p5r = p - 2` for `p ≡ 5 (mod 6)`; equivalently `Π (1 - α(j)/p5(j))`.
//! * `density_true(m) = Π (1 - 2/p5(j))`, the exact share of residues modulo
//!   `Π p5(j)` outside both excluded classes of every prime.
//!
//! Both are kept as reduced exact fractions; floats appear only when reporting.

use alloc::collections::BTreeSet;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use crate::bitmap::BitSet;
use crate::genspace::{self, PairKind};
use crate::oracle;
use crate::sieve::PairCounter;
use crate::{Error, Result};

/// Euler–Mascheroni constant.
const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

/// Largest step count for full-period enumeration (`5·7·…·23 = 37 182 145`).
pub const MAX_PERIOD_STEPS: usize = 7;

/// Smallest `n` at which the `n / (15 ln²(n/6))` bound is claimed.
pub const LOG_BOUND_THRESHOLD: u64 = 18;

/// A non-negative exact fraction in lowest terms.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Fraction {
    num: BigUint,
    den: BigUint,
}

impl Fraction {
    pub fn new(num: BigUint, den: BigUint) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        let g = num.gcd(&den);
        Fraction {
            num: num / &g,
            den: den / g,
        }
    }

    pub fn from_u64(num: u64, den: u64) -> Self {
        Self::new(BigUint::from(num), BigUint::from(den))
    }

    pub fn numer(&self) -> &BigUint {
        &self.num
    }

    pub fn denom(&self) -> &BigUint {
        &self.den
    }

    pub fn mul_u64(&self, k: u64) -> Fraction {
        Fraction::new(&self.num * k, self.den.clone())
    }

    pub fn to_f64(&self) -> f64 {
        ratio_to_f64(&self.num, &self.den)
    }
}

/// `num / den` rounded to `f64` without overflowing either operand.
fn ratio_to_f64(num: &BigUint, den: &BigUint) -> f64 {
    if num.is_zero() {
        return 0.0;
    }
    let top = |v: &BigUint| -> (f64, i32) {
        let bits = v.bits();
        let shift = bits.saturating_sub(64);
        ((v >> shift).to_f64().unwrap_or(f64::NAN), shift as i32)
    };
    let (a, sa) = top(num);
    let (b, sb) = top(den);
    libm::scalbn(a / b, sa - sb)
}

impl PartialOrd for Fraction {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Fraction {
    fn cmp(&self, other: &Self) -> Ordering {
        if self.den == other.den {
            return self.num.cmp(&other.num);
        }
        (&self.num * &other.den).cmp(&(&other.num * &self.den))
    }
}

impl fmt::Display for Fraction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.num, self.den)
    }
}

impl fmt::Debug for Fraction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Running product of `a_j / p_j` over increasing primes `p_j` with every
/// prime factor of `a_j` below `p_j`, kept in lowest terms.
///
/// The denominator stays squarefree, so reducing a new factor only needs the
/// factorisation of `a_j` against the set of denominator primes.
#[derive(Clone, Debug)]
struct ReducedProduct {
    num: BigUint,
    den: BigUint,
    den_primes: BTreeSet<u64>,
    /// Product of the denominator primes cancelled so far.
    cancelled: BigUint,
    last_prime: u64,
}

impl ReducedProduct {
    fn new() -> Self {
        ReducedProduct {
            num: BigUint::one(),
            den: BigUint::one(),
            den_primes: BTreeSet::new(),
            cancelled: BigUint::one(),
            last_prime: 0,
        }
    }

    fn push(&mut self, a: u64, p: u64) {
        debug_assert!(p > self.last_prime && a < p);
        let mut rest = a;
        let mut keep = 1u64;
        let mut gone = 1u64;
        while rest > 1 {
            let f = genspace::smallest_prime_factor(rest);
            rest /= f;
            if self.den_primes.remove(&f) {
                gone *= f;
            } else {
                keep *= f;
            }
        }
        if gone > 1 {
            self.den /= gone;
            self.cancelled *= gone;
        }
        self.num *= keep;
        self.den *= p;
        self.den_primes.insert(p);
        self.last_prime = p;
    }

    fn value(&self) -> Fraction {
        Fraction {
            num: self.num.clone(),
            den: self.den.clone(),
        }
    }
}

/// `p ≡ 1 (mod 6)` or `p ≡ 5 (mod 6)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Form {
    Mpl,
    Mps,
}

impl Form {
    pub fn of(p: u64) -> Form {
        match genspace::classify_six_form(p) {
            genspace::SixForm::Mpl(_) => Form::Mpl,
            genspace::SixForm::Mps(_) => Form::Mps,
            genspace::SixForm::Neither => unreachable!("{p} is not coprime to 6"),
        }
    }

    pub fn alpha(self) -> u64 {
        match self {
            Form::Mpl => 1,
            Form::Mps => 2,
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            Form::Mpl => "MPL",
            Form::Mps => "MPS",
        }
    }
}

/// One sieving step: the `step`-th prime above 3 and both densities after it.
#[derive(Debug, Clone)]
pub struct DensityStep {
    pub step: usize,
    pub p5: u64,
    pub form: Form,
    pub alpha: u64,
    pub p5r: u64,
    pub available: Fraction,
    pub c_float: f64,
    pub density_true: Fraction,
    pub true_float: f64,
}

fn p5r_of(p: u64, form: Form) -> u64 {
    match form {
        Form::Mpl => p - 1,
        Form::Mps => p - 2,
    }
}

/// Density steps over the primes of `primes` (each > 3, ascending).
pub struct DensitySteps<I> {
    primes: I,
    step: usize,
    avail: ReducedProduct,
    truth: ReducedProduct,
}

impl<I: Iterator<Item = u64>> DensitySteps<I> {
    pub fn new(primes: I) -> Self {
        DensitySteps {
            primes,
            step: 0,
            avail: ReducedProduct::new(),
            truth: ReducedProduct::new(),
        }
    }
}

impl<I: Iterator<Item = u64>> Iterator for DensitySteps<I> {
    type Item = DensityStep;

    fn next(&mut self) -> Option<DensityStep> {
        let p5 = self.primes.next()?;
        let form = Form::of(p5);
        let p5r = p5r_of(p5, form);
        self.avail.push(p5r, p5);
        self.truth.push(p5 - 2, p5);
        self.step += 1;
        let available = self.avail.value();
        let density_true = self.truth.value();
        Some(DensityStep {
            step: self.step,
            p5,
            form,
            alpha: form.alpha(),
            p5r,
            c_float: available.to_f64(),
            true_float: density_true.to_f64(),
            available,
            density_true,
        })
    }
}

fn check_steps(m: usize) -> Result<()> {
    if m == 0 {
        return Err(Error::StepCount { m, max: usize::MAX });
    }
    Ok(())
}

/// The first `m` density steps.
///
/// The incremental recurrence is cross-checked against the unreduced closed
/// product `Π (p5 - α) / Π p5` at every step.
pub fn density_sequence(m: usize) -> Result<Vec<DensityStep>> {
    check_steps(m)?;
    let primes = oracle::primes_above_three(m);
    let steps: Vec<DensityStep> = DensitySteps::new(primes.iter().copied()).collect();
    let mut prod_num = BigUint::one();
    let mut prod_den = BigUint::one();
    for s in &steps {
        prod_num *= s.p5 - s.alpha;
        prod_den *= s.p5;
        // Cross-multiplied; fine at the step counts a table is built for.
        if s.available.numer() * &prod_den != s.available.denom() * &prod_num {
            return Err(Error::RecurrenceMismatch { step: s.step });
        }
    }
    Ok(steps)
}

/// Outcome of [`audit_density`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DensityAudit {
    pub steps: usize,
    /// Steps where the reduced recurrence equals the closed product exactly.
    pub recurrence_matches: usize,
    /// Steps `m >= 2` with `available(m) > density_true(m)` strictly.
    pub envelope_strict: usize,
    /// `available(1) == density_true(1)`.
    pub equal_at_first: bool,
}

impl DensityAudit {
    pub fn all_hold(&self) -> bool {
        self.recurrence_matches == self.steps
            && self.envelope_strict + 1 == self.steps
            && self.equal_at_first
    }
}

/// Streams `m` steps and checks the exact identities without keeping the
/// (large) fractions around.
///
/// The reduced recurrence value `a/b` equals the unreduced closed product
/// `Π (p5 - α) / Π p5` iff some `g` has `a·g = Π (p5 - α)` and `b·g = Π p5`;
/// the product of cancelled primes is that `g`. Both densities share the
/// denominator `Π p5`, so the envelope compares unreduced numerators.
pub fn audit_density(m: usize) -> Result<DensityAudit> {
    check_steps(m)?;
    let mut audit = DensityAudit {
        steps: 0,
        recurrence_matches: 0,
        envelope_strict: 0,
        equal_at_first: false,
    };
    let mut avail = ReducedProduct::new();
    let mut truth = ReducedProduct::new();
    let mut prod_num = BigUint::one();
    let mut prod_den = BigUint::one();
    let mut truth_num = BigUint::one();
    for p5 in oracle::primes_above_three(m) {
        let alpha = Form::of(p5).alpha();
        avail.push(p5r_of(p5, Form::of(p5)), p5);
        truth.push(p5 - 2, p5);
        prod_num *= p5 - alpha;
        prod_den *= p5;
        truth_num *= p5 - 2;
        audit.steps += 1;
        let g = &avail.cancelled;
        if &avail.num * g == prod_num && &avail.den * g == prod_den {
            audit.recurrence_matches += 1;
        }
        if audit.steps == 1 {
            audit.equal_at_first = avail.num == truth.num && avail.den == truth.den;
        } else if prod_num > truth_num {
            audit.envelope_strict += 1;
        }
    }
    Ok(audit)
}

/// `Π_{j<=m} (1 - 2/p5(j))`.
pub fn true_density(m: usize) -> Result<Fraction> {
    check_steps(m)?;
    let mut acc = ReducedProduct::new();
    for p in oracle::primes_above_three(m) {
        acc.push(p - 2, p);
    }
    Ok(acc.value())
}

/// `3 · Π_{2<p<=p5(m)} (1 - 2/p)`; the factor 3 cancels the `p = 3` term.
pub fn tripled_odd_prime_product(m: usize) -> Result<Fraction> {
    check_steps(m)?;
    let mut num = BigUint::from(3u32);
    let mut den = BigUint::from(3u32);
    for p in oracle::primes_above_three(m) {
        num *= p - 2;
        den *= p;
    }
    Ok(Fraction::new(num, den))
}

/// `P · available(m)` with `P = Π p5(j)`: the number of residue threads modulo
/// `P` the per-prime accounting leaves available.
pub fn thread_accounting_count(m: usize) -> Result<BigUint> {
    check_steps(m)?;
    Ok(oracle::primes_above_three(m).into_iter().map(|p| p5r_of(p, Form::of(p))).product())
}

/// Residues modulo `Π p5(j)` surviving every excluded class.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PeriodCount {
    pub modulus: u64,
    pub survivors: u64,
}

/// Marks both excluded classes of each prime over `[offset, offset + len)`.
fn residue_marks(kind: PairKind, primes: &[u64], offset: u64, len: usize) -> Result<BitSet> {
    let mut bits = BitSet::new(len);
    for &q in primes {
        for r in genspace::excluded_residues(kind, q)? {
            let start = (r + q - offset % q) % q;
            bits.set_stride(start as usize, q as usize);
        }
    }
    Ok(bits)
}

/// Counts residues `r ∈ [0, P)` with `r mod q` outside the excluded residues
/// of every one of the first `m <= 7` primes above 3, by enumeration.
pub fn full_period_survivor_count(kind: PairKind, m: usize) -> Result<PeriodCount> {
    if m == 0 || m > MAX_PERIOD_STEPS {
        return Err(Error::StepCount {
            m,
            max: MAX_PERIOD_STEPS,
        });
    }
    let primes = oracle::primes_above_three(m);
    let modulus: u64 = primes.iter().product();
    let bits = residue_marks(kind, &primes, 0, modulus as usize)?;
    Ok(PeriodCount {
        modulus,
        survivors: bits.count_zeros() as u64,
    })
}

/// Indices `k ∈ [1, window]` outside the excluded residue classes of the
/// first `m` primes above 3 (no start offsets).
pub fn empirical_survivors(kind: PairKind, m: usize, window: u64) -> Result<u64> {
    check_steps(m)?;
    let primes = oracle::primes_above_three(m);
    let bits = residue_marks(kind, &primes, 1, window as usize)?;
    Ok(bits.count_zeros() as u64)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MertensProduct {
    pub n: u64,
    /// `Π_{2<p<=n} (1 - 2/p)`
    pub product: f64,
    /// `product · (ln n)²`
    pub normalized: f64,
}

/// Multiplies in ascending prime order, so results are reproducible.
pub fn mertens_twin_product(n: u64) -> Result<MertensProduct> {
    if !(5..=oracle::MAX_LIMIT).contains(&n) {
        return Err(Error::Capacity {
            limit: n,
            min: 5,
            max: oracle::MAX_LIMIT,
        });
    }
    let mut product = 1.0f64;
    oracle::for_each_prime(n, |p| {
        if p > 2 {
            product *= 1.0 - 2.0 / p as f64;
        }
    });
    let ln = libm::log(n as f64);
    Ok(MertensProduct {
        n,
        product,
        normalized: product * ln * ln,
    })
}

/// `4 e^{-2γ} Π_{2<p<=n} (1 - 1/(p-1)²)`, the classical value of the
/// normalised product's limit. Reported only.
pub fn twin_constant_estimate(n: u64) -> f64 {
    let mut prod = 1.0f64;
    oracle::for_each_prime(n, |p| {
        if p > 2 {
            let d = (p - 1) as f64;
            prod *= 1.0 - 1.0 / (d * d);
        }
    });
    4.0 * libm::exp(-2.0 * EULER_GAMMA) * prod
}

/// `x / (15 ln²(x/6))` for real `x > 6`.
pub fn log_bound_value(x: f64) -> f64 {
    let l = libm::log(x / 6.0);
    x / (15.0 * l * l)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LogBound {
    pub value: f64,
    /// `n` below [`LOG_BOUND_THRESHOLD`], where the bound is not claimed.
    pub sub_threshold: bool,
}

pub fn lower_bound_log(n: u64) -> Result<LogBound> {
    if n <= 6 {
        return Err(Error::BoundUndefined { n });
    }
    Ok(LogBound {
        value: log_bound_value(n as f64),
        sub_threshold: n < LOG_BOUND_THRESHOLD,
    })
}

/// Actual count against the three lower bounds at one `n`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundReport {
    pub kind: PairKind,
    pub n: u64,
    pub pi: u64,
    /// `c_1 · n / 6`
    pub bound9: f64,
    /// `c_m · n / 12`, `m` from the interval schedule
    pub bound11: f64,
    /// Step `m` whose density `bound11` uses.
    pub schedule_step: usize,
    /// `n / (15 ln²(n/6))`, `None` for `n <= 6`
    pub bound20: Option<f64>,
    pub ok9: bool,
    pub ok11: bool,
    pub ok20: Option<bool>,
    pub sub_threshold: bool,
}

impl BoundReport {
    pub fn margin9(&self) -> f64 {
        self.pi as f64 - self.bound9
    }

    pub fn margin11(&self) -> f64 {
        self.pi as f64 - self.bound11
    }

    pub fn margin20(&self) -> Option<f64> {
        self.bound20.map(|b| self.pi as f64 - b)
    }

    /// A failed log bound at `n >= LOG_BOUND_THRESHOLD`.
    pub fn is_log_bound_violation(&self) -> bool {
        !self.sub_threshold && self.ok20 == Some(false)
    }
}

/// Pair counts and the density schedule needed for reports up to `n_max`.
#[derive(Debug, Clone)]
pub struct BoundContext {
    counter: PairCounter,
    /// `(p5(m), available(m) as f64)` for every `p5(m) <= n_max / 6`, at least one.
    schedule: Vec<(u64, f64)>,
    c1: f64,
    n_max: u64,
}

impl BoundContext {
    pub fn new(kind: PairKind, n_max: u64) -> Result<Self> {
        let counter = PairCounter::up_to(kind, n_max)?;
        let mut primes = Vec::new();
        oracle::for_each_prime((n_max / 6).max(5), |p| {
            if p > 3 {
                primes.push(p);
            }
        });
        let schedule: Vec<(u64, f64)> = DensitySteps::new(primes.into_iter())
            .map(|s| (s.p5, s.c_float))
            .collect();
        Ok(BoundContext {
            counter,
            c1: schedule[0].1,
            schedule,
            n_max,
        })
    }

    pub fn kind(&self) -> PairKind {
        self.counter.kind()
    }

    pub fn n_max(&self) -> u64 {
        self.n_max
    }

    pub fn pi(&self, n: u64) -> u64 {
        self.counter.count(n)
    }

    /// Largest `m` with `6·p5(m) <= n`, but at least 1.
    fn schedule_step(&self, n: u64) -> usize {
        self.schedule.partition_point(|&(p, _)| 6 * p <= n).max(1)
    }

    pub fn report(&self, n: u64) -> Result<BoundReport> {
        if n == 0 || n > self.n_max {
            return Err(Error::Capacity {
                limit: n,
                min: 1,
                max: self.n_max,
            });
        }
        let pi = self.counter.count(n);
        let nf = n as f64;
        let bound9 = self.c1 * nf / 6.0;
        let m = self.schedule_step(n);
        let bound11 = self.schedule[m - 1].1 * nf / 12.0;
        let log_bound = lower_bound_log(n).ok();
        let bound20 = log_bound.map(|b| b.value);
        let pif = pi as f64;
        Ok(BoundReport {
            kind: self.kind(),
            n,
            pi,
            bound9,
            bound11,
            schedule_step: m,
            bound20,
            ok9: pif > bound9,
            ok11: pif > bound11,
            ok20: bound20.map(|b| pif > b),
            sub_threshold: n < LOG_BOUND_THRESHOLD,
        })
    }
}

pub fn bound_report(kind: PairKind, n: u64) -> Result<BoundReport> {
    BoundContext::new(kind, n)?.report(n)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::vec::Vec;

    fn frac(a: u64, b: u64) -> Fraction {
        Fraction::from_u64(a, b)
    }

    #[test]
    fn density_examples() {
        let s = density_sequence(3).unwrap();
        assert_eq!(s[0].available, frac(3, 5));
        assert_eq!(s[1].available, frac(18, 35));
        assert_eq!((s[1].p5, s[1].form, s[1].alpha, s[1].p5r), (7, Form::Mpl, 1, 6));
        assert_eq!((s[2].p5, s[2].form, s[2].alpha, s[2].p5r), (11, Form::Mps, 2, 9));
        assert_eq!(s[2].available, frac(162, 385));
        assert!((s[1].c_float - 18.0 / 35.0).abs() < 1e-15);
        assert_eq!(s[0].density_true, frac(3, 5));
        assert_eq!(s[1].density_true, frac(15, 35));
    }

    #[test]
    fn step_invariants() {
        let s = density_sequence(400).unwrap();
        for (i, st) in s.iter().enumerate() {
            match st.form {
                Form::Mpl => assert!(st.p5r == st.p5 - 1 && st.alpha == 1),
                Form::Mps => assert!(st.p5r == st.p5 - 2 && st.alpha == 2),
            }
            assert!(st.available < frac(1, 1) && st.available > frac(0, 1));
            if i > 0 {
                assert!(st.available < s[i - 1].available);
                assert!(st.available > st.density_true);
            }
            // Lowest terms.
            assert!(st.available.numer().gcd(st.available.denom()).is_one());
            assert!(st.density_true.numer().gcd(st.density_true.denom()).is_one());
        }
    }

    #[test]
    fn audit_small() {
        let a = audit_density(300).unwrap();
        assert!(a.all_hold(), "{a:?}");
        assert_eq!(a.steps, 300);
    }

    #[test]
    fn true_density_examples() {
        assert_eq!(true_density(1).unwrap(), frac(3, 5));
        assert_eq!(true_density(2).unwrap(), frac(3, 7));
        assert_eq!(true_density(3).unwrap(), frac(27, 77));
        assert!(true_density(0).is_err());
    }

    #[test]
    fn tripled_product_equals_true_density() {
        for m in 1..60 {
            assert_eq!(tripled_odd_prime_product(m).unwrap(), true_density(m).unwrap());
        }
    }

    #[test]
    fn reduced_product_matches_gcd_reduction() {
        let primes = oracle::primes_above_three(300);
        let mut acc = ReducedProduct::new();
        let (mut n, mut d) = (BigUint::one(), BigUint::one());
        for p in primes {
            let a = p5r_of(p, Form::of(p));
            acc.push(a, p);
            n *= a;
            d *= p;
            assert_eq!(acc.value(), Fraction::new(n.clone(), d.clone()));
        }
    }

    #[test]
    fn period_examples() {
        let c = full_period_survivor_count(PairKind::Twin, 1).unwrap();
        assert_eq!((c.modulus, c.survivors), (5, 3));
        let c = full_period_survivor_count(PairKind::Twin, 2).unwrap();
        assert_eq!((c.modulus, c.survivors), (35, 15));
        let c = full_period_survivor_count(PairKind::Cousin, 2).unwrap();
        assert_eq!((c.modulus, c.survivors), (35, 15));
        assert_eq!(full_period_survivor_count(PairKind::Twin, 3).unwrap().survivors, 135);
        assert!(full_period_survivor_count(PairKind::Twin, 8).is_err());
        assert_eq!(thread_accounting_count(2).unwrap(), BigUint::from(18u32));
    }

    #[test]
    fn period_identity_small() {
        // Brute-force residue scan for m <= 4, against P · density_true.
        for kind in PairKind::ALL {
            for m in 1..=4 {
                let primes = oracle::primes_above_three(m);
                let modulus: u64 = primes.iter().product();
                let res: Vec<[u64; 2]> = primes
                    .iter()
                    .map(|&q| genspace::excluded_residues(kind, q).unwrap())
                    .collect();
                let brute = (0..modulus)
                    .filter(|r| primes.iter().zip(&res).all(|(q, e)| !e.contains(&(r % q))))
                    .count() as u64;
                let c = full_period_survivor_count(kind, m).unwrap();
                assert_eq!(c.survivors, brute);
                assert_eq!(true_density(m).unwrap().mul_u64(modulus), frac(brute, 1));
            }
        }
    }

    #[test]
    fn empirical_density_converges() {
        for kind in PairKind::ALL {
            for m in 1..=4 {
                let dens = true_density(m).unwrap().to_f64();
                for w in [10u64, 99, 1000, 4321, 20_000, 100_000] {
                    let c = empirical_survivors(kind, m, w).unwrap();
                    let err = (c as f64 / w as f64 - dens).abs();
                    assert!(err <= 2.0 * m as f64 / w as f64, "{kind} m={m} w={w}");
                }
            }
        }
    }

    #[test]
    fn mertens_examples() {
        // (1 - 2/3)(1 - 2/5) and then · (1 - 2/7)
        assert!((mertens_twin_product(5).unwrap().product - 0.2).abs() < 1e-15);
        assert!((mertens_twin_product(7).unwrap().product - 1.0 / 7.0).abs() < 1e-15);
        // Without the p = 3 factor these are 3/5 and 3/7.
        assert!((3.0 * mertens_twin_product(7).unwrap().product - 3.0 / 7.0).abs() < 1e-15);
        assert!(mertens_twin_product(4).is_err());
    }

    #[test]
    fn mertens_normalized_trend() {
        // Observed: 0.83039, 0.83192, 0.83236, rising toward the limit.
        let v: Vec<f64> = [10_000, 100_000, 1_000_000]
            .iter()
            .map(|&n| mertens_twin_product(n).unwrap().normalized)
            .collect();
        assert!(v.iter().all(|x| (0.70..=1.10).contains(x)));
        assert!(v[0] < v[1] && v[1] < v[2], "{v:?}");
        assert!((v[2] - 0.832_364_297_8).abs() < 1e-9);
    }

    #[test]
    fn log_bound_examples() {
        // Direct evaluation: 18 / (15 ln² 3), 31 / (15 ln²(31/6)).
        let b = lower_bound_log(18).unwrap();
        assert!((b.value - 0.994_242_539_6).abs() < 1e-9 && !b.sub_threshold);
        assert!((lower_bound_log(31).unwrap().value - 0.766_308_547_3).abs() < 1e-9);
        assert!((log_bound_value(6.0 * core::f64::consts::E) - 1.087_312_731_4).abs() < 1e-9);
        assert!(lower_bound_log(7).unwrap().sub_threshold);
        assert_eq!(lower_bound_log(6), Err(Error::BoundUndefined { n: 6 }));
        let mut prev = 0.0;
        for e in 3..=9 {
            let v = lower_bound_log(10u64.pow(e)).unwrap().value;
            assert!(v > prev);
            prev = v;
        }
    }

    #[test]
    fn report_examples() {
        let r = bound_report(PairKind::Twin, 31).unwrap();
        assert_eq!(r.pi, 4);
        assert!((r.bound9 - 3.1).abs() < 1e-12 && r.ok9);
        assert_eq!(r.schedule_step, 1);
        let r = bound_report(PairKind::Twin, 18).unwrap();
        assert_eq!(r.pi, 2);
        assert_eq!(r.ok20, Some(true));
        let r = bound_report(PairKind::Twin, 12).unwrap();
        assert!(r.sub_threshold && !r.is_log_bound_violation());
        let r = bound_report(PairKind::Twin, 5).unwrap();
        assert_eq!((r.bound20, r.ok20), (None, None));
    }

    #[test]
    fn schedule_steps_at_interval_edges() {
        let ctx = BoundContext::new(PairKind::Twin, 200).unwrap();
        assert_eq!(ctx.report(41).unwrap().schedule_step, 1);
        assert_eq!(ctx.report(42).unwrap().schedule_step, 2);
        assert_eq!(ctx.report(65).unwrap().schedule_step, 2);
        assert_eq!(ctx.report(66).unwrap().schedule_step, 3);
        assert!(ctx.report(201).is_err());
    }
}
