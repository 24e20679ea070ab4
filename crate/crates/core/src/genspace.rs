//! Six-residue classification, composite witnesses and the exclusion threads.
//!
//! For the twin kind the three form families are
//!
//! ```text
//! T1: k = (6x - 1)y + x   =>  6k - 1 = (6x - 1)(6y + 1)
//! T2: k = (6x - 1)y - x   =>  6k + 1 = (6x - 1)(6y - 1)
//! T3: k = (6x + 1)y + x   =>  6k + 1 = (6x + 1)(6y + 1)
//! ```
//!
//! and for the cousin kind
//!
//! ```text
//! C1: k = (6x - 1)y + x - 1   =>  6k + 5 = (6x - 1)(6y + 1)
//! C2: k = (6x - 1)y - x       =>  6k + 1 = (6x - 1)(6y - 1)
//! C3: k = (6x + 1)y + x       =>  6k + 1 = (6x + 1)(6y + 1)
//! ```
//!
//! with `x, y >= 1`. A `k` lies on some thread exactly when a member of its
//! candidate pair is composite.

use core::fmt;

use crate::{Error, Result};

/// Which pair of candidates an index `k` stands for.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum PairKind {
    /// `(6k - 1, 6k + 1)`
    Twin,
    /// `(6k + 1, 6k + 5)`
    Cousin,
}

/// One of the two members of a candidate pair.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Member {
    Small,
    Large,
}

impl PairKind {
    pub const ALL: [PairKind; 2] = [PairKind::Twin, PairKind::Cousin];

    /// Difference between the two pair members.
    pub fn gap(self) -> u64 {
        match self {
            PairKind::Twin => 2,
            PairKind::Cousin => 4,
        }
    }

    /// Signed offset `d` so that the member equals `6k + d`.
    pub fn offset(self, member: Member) -> i64 {
        match (self, member) {
            (PairKind::Twin, Member::Small) => -1,
            (PairKind::Twin, Member::Large) => 1,
            (PairKind::Cousin, Member::Small) => 1,
            (PairKind::Cousin, Member::Large) => 5,
        }
    }

    #[inline]
    pub fn member(self, k: u64, member: Member) -> u64 {
        let base = 6 * k;
        match self.offset(member) {
            -1 => base - 1,
            d => base + d as u64,
        }
    }

    /// `(small, large)` for index `k >= 1`.
    #[inline]
    pub fn pair(self, k: u64) -> (u64, u64) {
        (self.member(k, Member::Small), self.member(k, Member::Large))
    }

    /// Largest `k` whose larger member does not exceed `n` (0 if none).
    pub fn max_index_with_large_at_most(self, n: u64) -> u64 {
        let d = self.offset(Member::Large) as u64;
        if n < 6 + d {
            0
        } else {
            (n - d) / 6
        }
    }

    pub fn families(self) -> [Family; 3] {
        match self {
            PairKind::Twin => [Family::T1, Family::T2, Family::T3],
            PairKind::Cousin => [Family::C1, Family::C2, Family::C3],
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            PairKind::Twin => "twin",
            PairKind::Cousin => "cousin",
        }
    }
}

impl fmt::Display for PairKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Residue class of `n` with respect to the `6l ± 1` wheel.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SixForm {
    /// `n = 6l + 1`, `l >= 1`
    Mpl(u64),
    /// `n = 6s - 1`, `s >= 1`
    Mps(u64),
    Neither,
}

impl SixForm {
    /// Rebuilds `n`; `None` for [`SixForm::Neither`].
    pub fn value(self) -> Option<u64> {
        match self {
            SixForm::Mpl(l) => Some(6 * l + 1),
            SixForm::Mps(s) => Some(6 * s - 1),
            SixForm::Neither => None,
        }
    }
}

pub fn classify_six_form(n: u64) -> SixForm {
    match n % 6 {
        1 if n >= 7 => SixForm::Mpl(n / 6),
        5 => SixForm::Mps(n / 6 + 1),
        _ => SixForm::Neither,
    }
}

/// Trial-division primality, for the small arguments this module deals with.
pub(crate) fn is_prime_small(n: u64) -> bool {
    if n < 4 {
        return n >= 2;
    }
    if n % 2 == 0 || n % 3 == 0 {
        return false;
    }
    let mut d = 5u64;
    while d <= n / d {
        if n % d == 0 || n % (d + 2) == 0 {
            return false;
        }
        d += 6;
    }
    true
}

/// Smallest prime factor of `n >= 2`.
pub(crate) fn smallest_prime_factor(n: u64) -> u64 {
    debug_assert!(n >= 2);
    if n % 2 == 0 {
        return 2;
    }
    if n % 3 == 0 {
        return 3;
    }
    let mut d = 5u64;
    while d <= n / d {
        if n % d == 0 {
            return d;
        }
        if n % (d + 2) == 0 {
            return d + 2;
        }
        d += 6;
    }
    n
}

/// Which product identity a [`Cpn5Witness`] instantiates.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Cpn5Class {
    /// `n = 6(6xy - x + y) - 1 = (6x + 1)(6y - 1)`
    PlusMinus,
    /// `n = 6(6xy + x - y) - 1 = (6y + 1)(6x - 1)`
    MinusPlus,
    /// `n = 6(6xy + x + y) + 1 = (6x + 1)(6y + 1)`
    PlusPlus,
    /// `n = 6(6xy - x - y) + 1 = (6x - 1)(6y - 1)`
    MinusMinus,
}

/// A factorisation of a composite `n` coprime to 6 into two `6l ± 1` factors.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Cpn5Witness {
    pub n: u64,
    pub class: Cpn5Class,
    pub x: u64,
    pub y: u64,
}

impl Cpn5Witness {
    /// The two factors, in the order the identity writes them.
    pub fn factors(&self) -> (u64, u64) {
        let (x, y) = (self.x, self.y);
        match self.class {
            Cpn5Class::PlusMinus => (6 * x + 1, 6 * y - 1),
            Cpn5Class::MinusPlus => (6 * y + 1, 6 * x - 1),
            Cpn5Class::PlusPlus => (6 * x + 1, 6 * y + 1),
            Cpn5Class::MinusMinus => (6 * x - 1, 6 * y - 1),
        }
    }

    /// Evaluates the `6(…) ± 1` polynomial form.
    pub fn polynomial(&self) -> u64 {
        let (x, y) = (self.x, self.y);
        let xy6 = 6 * x * y;
        match self.class {
            Cpn5Class::PlusMinus => 6 * (xy6 - x + y) - 1,
            Cpn5Class::MinusPlus => 6 * (xy6 + x - y) - 1,
            Cpn5Class::PlusPlus => 6 * (xy6 + x + y) + 1,
            Cpn5Class::MinusMinus => 6 * (xy6 - x - y) + 1,
        }
    }

    /// Both identities reproduce `n`.
    pub fn is_valid(&self) -> bool {
        let (a, b) = self.factors();
        self.x >= 1 && self.y >= 1 && a.checked_mul(b) == Some(self.n) && self.polynomial() == self.n
    }
}

/// Finds the witness with the smallest `x`, then the smallest `y`; at equal
/// `(x, y)` the first class in declaration order wins.
pub fn cpn5_witness(n: u64) -> Result<Cpn5Witness> {
    if n < 25 || n % 2 == 0 || n % 3 == 0 || is_prime_small(n) {
        return Err(Error::NotCpn5 { n });
    }
    let minus_form = n % 6 == 5;
    let mut x = 1u64;
    // The smaller factor is at least 6x - 1 and the cofactor at least 5.
    while (6 * x - 1).saturating_mul(5) <= n {
        let mut best: Option<Cpn5Witness> = None;
        let mut offer = |class: Cpn5Class, y: u64| {
            let w = Cpn5Witness { n, class, x, y };
            match best {
                Some(b) if b.y <= y => {}
                _ => best = Some(w),
            }
        };
        let (plus, minus) = (6 * x + 1, 6 * x - 1);
        if minus_form {
            // (6x+1)(6y-1)
            if n % plus == 0 && (n / plus) % 6 == 5 {
                offer(Cpn5Class::PlusMinus, (n / plus + 1) / 6);
            }
            // (6y+1)(6x-1)
            if n % minus == 0 && (n / minus) % 6 == 1 && n / minus >= 7 {
                offer(Cpn5Class::MinusPlus, (n / minus - 1) / 6);
            }
        } else {
            if n % plus == 0 && (n / plus) % 6 == 1 && n / plus >= 7 {
                offer(Cpn5Class::PlusPlus, (n / plus - 1) / 6);
            }
            if n % minus == 0 && (n / minus) % 6 == 5 {
                offer(Cpn5Class::MinusMinus, (n / minus + 1) / 6);
            }
        }
        if let Some(w) = best {
            debug_assert!(w.is_valid());
            return Ok(w);
        }
        x += 1;
    }
    // Unreachable for composites coprime to 6.
    Err(Error::NotCpn5 { n })
}

/// One exclusion form family.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    /// twin, `(6x - 1)y + x`
    T1,
    /// twin, `(6x - 1)y - x`
    T2,
    /// twin, `(6x + 1)y + x`
    T3,
    /// cousin, `(6x - 1)y + x - 1`
    C1,
    /// cousin, `(6x - 1)y - x`
    C2,
    /// cousin, `(6x + 1)y + x`; inferred from the `(6x+1)(6y+1)` product
    /// since the displayed cousin system lists only two lines.
    C3,
}

impl Family {
    pub fn kind(self) -> PairKind {
        match self {
            Family::T1 | Family::T2 | Family::T3 => PairKind::Twin,
            Family::C1 | Family::C2 | Family::C3 => PairKind::Cousin,
        }
    }

    /// Common difference at parameter `x`.
    pub fn coefficient(self, x: u64) -> u64 {
        match self {
            Family::T3 | Family::C3 => 6 * x + 1,
            _ => 6 * x - 1,
        }
    }

    /// Value at `y = 1`.
    pub fn first(self, x: u64) -> u64 {
        match self {
            Family::T1 => 7 * x - 1,
            Family::T2 | Family::C2 => 5 * x - 1,
            Family::T3 | Family::C3 => 7 * x + 1,
            Family::C1 => 7 * x - 2,
        }
    }

    /// Value at `(x, y)`.
    pub fn eval(self, x: u64, y: u64) -> u64 {
        self.first(x) + (y - 1) * self.coefficient(x)
    }

    /// The pair member that the family makes composite.
    pub fn member(self) -> Member {
        match self {
            Family::T1 => Member::Small,
            Family::C1 => Member::Large,
            _ => match self.kind() {
                PairKind::Twin => Member::Large,
                PairKind::Cousin => Member::Small,
            },
        }
    }

    /// The two factors of the composite member at `(x, y)`.
    pub fn factors(self, x: u64, y: u64) -> (u64, u64) {
        match self {
            Family::T1 | Family::C1 => (6 * x - 1, 6 * y + 1),
            Family::T2 | Family::C2 => (6 * x - 1, 6 * y - 1),
            Family::T3 | Family::C3 => (6 * x + 1, 6 * y + 1),
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            Family::T1 => "T1",
            Family::T2 => "T2",
            Family::T3 => "T3",
            Family::C1 => "C1",
            Family::C2 => "C2",
            Family::C3 => "C3",
        }
    }
}

/// Where an [`ExclusionThread`] comes from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ThreadSource {
    /// A form family at fixed `x`.
    Form { family: Family, x: u64 },
    /// The residue class of `k` for which `prime` divides `member`, started at
    /// the first index where the cofactor is at least 5.
    Prime { prime: u64, member: Member },
}

/// The progression `first, first + step, first + 2·step, …`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct ExclusionThread {
    pub kind: PairKind,
    pub first: u64,
    pub step: u64,
    pub source: ThreadSource,
}

impl ExclusionThread {
    pub fn form(family: Family, x: u64) -> Self {
        debug_assert!(x >= 1);
        ExclusionThread {
            kind: family.kind(),
            first: family.first(x),
            step: family.coefficient(x),
            source: ThreadSource::Form { family, x },
        }
    }

    #[inline]
    pub fn coefficient(&self) -> u64 {
        self.step
    }

    #[inline]
    pub fn contains(&self, k: u64) -> bool {
        k >= self.first && (k - self.first) % self.step == 0
    }

    /// Smallest member `>= lo`.
    #[inline]
    pub fn first_at_or_after(&self, lo: u64) -> u64 {
        if self.first >= lo {
            self.first
        } else {
            let behind = lo - self.first;
            self.first + behind.div_ceil(self.step) * self.step
        }
    }

    /// Members in ascending order, up to and including `hi`.
    pub fn members_up_to(&self, hi: u64) -> impl Iterator<Item = u64> {
        let step = self.step as usize;
        (self.first..=hi).step_by(step)
    }
}

/// `T1, T2, T3` at parameter `x`.
pub fn twin_k_forms(x: u64) -> [ExclusionThread; 3] {
    k_forms(PairKind::Twin, x)
}

/// `C1, C2, C3` at parameter `x`.
pub fn cousin_k_forms(x: u64) -> [ExclusionThread; 3] {
    k_forms(PairKind::Cousin, x)
}

pub fn k_forms(kind: PairKind, x: u64) -> [ExclusionThread; 3] {
    kind.families().map(|f| ExclusionThread::form(f, x))
}

/// A form-family coordinate generating some `k`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct FormWitness {
    pub family: Family,
    pub x: u64,
    pub y: u64,
}

impl FormWitness {
    pub fn k(&self) -> u64 {
        self.family.eval(self.x, self.y)
    }
}

/// Searches every family with `5x - 1 <= k`; returns the witness with the
/// smallest `x`, families in declaration order.
pub fn is_excluded(kind: PairKind, k: u64) -> Option<FormWitness> {
    let mut x = 1u64;
    while 5 * x - 1 <= k {
        for family in kind.families() {
            let t = ExclusionThread::form(family, x);
            if t.contains(k) {
                let y = (k - t.first) / t.step + 1;
                return Some(FormWitness { family, x, y });
            }
        }
        x += 1;
    }
    None
}

/// Like [`is_excluded`] but only accepts witnesses whose coefficient is prime.
pub fn prime_coefficient_witness(kind: PairKind, k: u64) -> Option<FormWitness> {
    let mut x = 1u64;
    while 5 * x - 1 <= k {
        for family in kind.families() {
            let t = ExclusionThread::form(family, x);
            if t.contains(k) && is_prime_small(t.step) {
                let y = (k - t.first) / t.step + 1;
                return Some(FormWitness { family, x, y });
            }
        }
        x += 1;
    }
    None
}

/// `6^{-1} mod q` for `q` coprime to 6.
#[inline]
fn inverse_of_six(q: u64) -> u64 {
    // q ≡ 5 (mod 6): (q + 1)/6;  q ≡ 1 (mod 6): (5q + 1)/6
    if q % 6 == 5 {
        (q + 1) / 6
    } else {
        ((5 * q as u128 + 1) / 6) as u64
    }
}

/// Residue of `k mod q` at which `q` divides the given member.
#[inline]
pub fn member_residue(kind: PairKind, q: u64, member: Member) -> u64 {
    let d = kind.offset(member);
    let neg_d = (q as i128 - d as i128).rem_euclid(q as i128) as u128;
    ((neg_d * inverse_of_six(q) as u128) % q as u128) as u64
}

/// The two residues of `k mod q` where `q` divides a member of the pair,
/// ordered small member first.
pub fn excluded_residues(kind: PairKind, q: u64) -> Result<[u64; 2]> {
    if q < 5 || !is_prime_small(q) {
        return Err(Error::NotSievingPrime { q });
    }
    Ok([
        member_residue(kind, q, Member::Small),
        member_residue(kind, q, Member::Large),
    ])
}

/// The thread of `k` for which prime `q` divides `member` with cofactor >= 5.
///
/// `q` must be a prime above 3; not checked here.
#[inline]
pub fn prime_thread(kind: PairKind, q: u64, member: Member) -> ExclusionThread {
    let r = member_residue(kind, q, member);
    let mut first = if r == 0 { q } else { r };
    if kind.member(first, member) == q {
        first += q;
    }
    ExclusionThread {
        kind,
        first,
        step: q,
        source: ThreadSource::Prime { prime: q, member },
    }
}

pub fn prime_threads(kind: PairKind, q: u64) -> Result<[ExclusionThread; 2]> {
    excluded_residues(kind, q)?;
    Ok([
        prime_thread(kind, q, Member::Small),
        prime_thread(kind, q, Member::Large),
    ])
}

/// Replaces a thread with composite coefficient by the thread of its smallest
/// prime factor that contains it.
///
/// Writing `q = p·c` and the composite member as `q·m`, every member of the
/// input has that member equal to `p·(c·m)` with `c·m >= 5`, so it lies on the
/// prime thread of `p` for the same member.
pub fn reduce_thread(thread: &ExclusionThread) -> Result<ExclusionThread> {
    let q = thread.step;
    if is_prime_small(q) {
        return Err(Error::PrimeCoefficient { q });
    }
    let p = smallest_prime_factor(q);
    debug_assert!(p > 3);
    Ok(reduce_to(thread, p))
}

fn reduce_to(thread: &ExclusionThread, p: u64) -> ExclusionThread {
    let r = thread.first % p;
    let member = if member_residue(thread.kind, p, Member::Small) == r {
        Member::Small
    } else {
        debug_assert_eq!(member_residue(thread.kind, p, Member::Large), r);
        Member::Large
    };
    let reduced = prime_thread(thread.kind, p, member);
    debug_assert!(reduced.contains(thread.first));
    reduced
}

/// One reduced thread per distinct prime factor of the coefficient.
pub fn reductions(thread: &ExclusionThread) -> Result<alloc::vec::Vec<ExclusionThread>> {
    let q = thread.step;
    if is_prime_small(q) {
        return Err(Error::PrimeCoefficient { q });
    }
    let mut out = alloc::vec::Vec::new();
    let mut rest = q;
    while rest > 1 {
        let p = smallest_prime_factor(rest);
        while rest % p == 0 {
            rest /= p;
        }
        out.push(reduce_to(thread, p));
    }
    Ok(out)
}
