use proptest::prelude::*;

use twinspace_core::genspace::{self, PairKind};
use twinspace_core::oracle;
use twinspace_core::sieve::{self, SieveWindow};

fn kind() -> impl Strategy<Value = PairKind> {
    prop_oneof![Just(PairKind::Twin), Just(PairKind::Cousin)]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn split_windows_concatenate(kind in kind(), max_k in 2u64..20_000, frac in 0.0f64..1.0) {
        let m = 1 + ((max_k - 1) as f64 * frac) as u64;
        let whole = sieve::sieve_forms(kind, max_k).unwrap();
        let primes = sieve::sieving_primes(kind, max_k);
        let left = SieveWindow::prime_threads(kind, 1, m, &primes).unwrap();
        if m < max_k {
            let right = SieveWindow::prime_threads(kind, m + 1, max_k, &primes).unwrap();
            let joined = left.concat(&right).unwrap();
            prop_assert!(joined.same_bits(&whole));
            let fl = SieveWindow::forms(kind, 1, m).unwrap();
            let fr = SieveWindow::forms(kind, m + 1, max_k).unwrap();
            prop_assert!(fl.concat(&fr).unwrap().same_bits(&whole));
        } else {
            prop_assert!(left.same_bits(&whole));
        }
    }

    #[test]
    fn arbitrary_window_matches_oracle(kind in kind(), lo in 1u64..200_000, len in 1u64..5_000) {
        let hi = lo + len - 1;
        let table = oracle::primes_up_to(kind.pair(hi).1).unwrap();
        let primes = sieve::sieving_primes(kind, hi);
        let w = SieveWindow::prime_threads(kind, lo, hi, &primes).unwrap();
        let f = SieveWindow::forms(kind, lo, hi).unwrap();
        prop_assert!(w.same_bits(&f));
        for k in lo..=hi {
            let (s, l) = kind.pair(k);
            prop_assert_eq!(!w.is_excluded(k), table.is_prime(s) && table.is_prime(l));
        }
    }

    #[test]
    fn excluded_index_has_composite_witness(kind in kind(), k in 1u64..50_000) {
        match genspace::is_excluded(kind, k) {
            Some(w) => {
                let (a, b) = w.family.factors(w.x, w.y);
                prop_assert!(a >= 5 && b >= 5);
                prop_assert_eq!(kind.member(k, w.family.member()), a * b);
            }
            None => {
                let (s, l) = kind.pair(k);
                prop_assert!(oracle::trial_division_is_prime(s));
                prop_assert!(oracle::trial_division_is_prime(l));
            }
        }
    }

    #[test]
    fn cpn5_witness_reconstructs(a in 1u64..2_000, b in 1u64..2_000, sa in any::<bool>(), sb in any::<bool>()) {
        let f = |v: u64, plus: bool| if plus { 6 * v + 1 } else { 6 * v - 1 };
        let n = f(a, sa) * f(b, sb);
        let w = genspace::cpn5_witness(n).unwrap();
        prop_assert!(w.is_valid());
        prop_assert_eq!(w.n, n);
    }
}

#[test]
fn survivors_are_oracle_survivors_to_two_hundred_thousand() {
    let max_k = 200_000;
    for kind in PairKind::ALL {
        let table = oracle::primes_up_to(kind.pair(max_k).1).unwrap();
        let expect = oracle::oracle_survivors(kind, max_k, &table).unwrap();
        let w = sieve::sieve_prime_threads(kind, max_k).unwrap();
        assert_eq!(sieve::survivors(&w), expect);
        let pairs = sieve::pairs_from_survivors(kind, &expect, &table).unwrap();
        assert!(pairs.iter().all(|p| p.large - p.small == kind.gap()));
    }
}

#[test]
fn prime_counts_match_classical_values() {
    assert_eq!(oracle::primes_up_to(1_000).unwrap().count(), 168);
    assert_eq!(oracle::primes_up_to(1_000_000).unwrap().count(), 78_498);
    let mut streamed = 0u64;
    oracle::for_each_prime(1_000_000, |_| streamed += 1);
    assert_eq!(streamed, 78_498);
}
