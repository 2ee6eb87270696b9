mod common;

use std::sync::{Arc, OnceLock};
use std::thread;

use adele::RadixTable;
use common::*;
use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Zero};
use proptest::prelude::*;

#[test]
fn ladder_matches_lcm_loop() {
    let t = RadixTable::new();
    for (n, v) in lcm_ladder(200).into_iter().enumerate() {
        assert_eq!(t.psi_exp_int(n as u64).unwrap(), v, "n = {n}");
    }
}

#[test]
fn radices_are_prime_and_consecutive() {
    let t = RadixTable::new();
    for n in -300..300 {
        let p = t.radix(n).unwrap();
        assert!(is_prime(p), "radix({n}) = {p}");
        assert_eq!(t.psi_exp(n + 1).unwrap(), t.psi_exp(n).unwrap() * BigInt::from(p));
    }
    for n in 0..300 {
        assert_eq!(t.radix(-n - 1).unwrap(), t.radix(n).unwrap());
    }
}

#[test]
fn rho_indexes_the_lcm_ladder() {
    let t = RadixTable::new();
    let mut l = BigUint::one();
    let mut m = 0;
    for n in 0..60 {
        let target = t.rho(n).unwrap();
        while m < target {
            m += 1;
            l = l.lcm(&BigUint::from(m as u64));
        }
        assert_eq!(l, t.psi_exp_int(n as u64).unwrap(), "n = {n}, rho = {target}");
    }
    assert_eq!(t.rho(-1).unwrap(), -2);
    assert_eq!(t.rho(-4).unwrap(), -5);
}

#[test]
fn every_integer_up_to_ten_thousand_divides_the_ladder() {
    let t = RadixTable::new();
    for big_n in 1..=10_000u64 {
        let n = -t.order_of_rational(&r(1, big_n as i64)).unwrap();
        let v = t.psi_exp_int(n as u64).unwrap();
        assert!((v % big_n).is_zero(), "{big_n} does not divide psi_exp({n})");
        if n > 0 {
            let below = t.psi_exp_int(n as u64 - 1).unwrap();
            assert!(!(below % big_n).is_zero(), "{big_n} already divides psi_exp({})", n - 1);
        }
    }
}

#[test]
fn ceiling_is_enforced() {
    let t = RadixTable::with_ceiling(50);
    assert!(t.psi_exp(50).is_ok());
    assert!(t.psi_exp(51).is_err());
    assert!(t.radix(-51).is_err());
}

#[test]
fn concurrent_growth_is_consistent() {
    let t = Arc::new(RadixTable::new());
    let handles: Vec<_> = (0..8)
        .map(|i| {
            let t = Arc::clone(&t);
            thread::spawn(move || {
                (0..400)
                    .map(|k| t.radix((k * 7 + i * 13) % 800 - 400).unwrap())
                    .sum::<u64>()
            })
        })
        .collect();
    for h in handles {
        h.join().unwrap();
    }
    let fresh = RadixTable::new();
    for n in -400..400 {
        assert_eq!(t.radix(n).unwrap(), fresh.radix(n).unwrap());
    }
}

fn wide_ladder() -> &'static Ladder {
    static LADDER: OnceLock<Ladder> = OnceLock::new();
    LADDER.get_or_init(|| Ladder::new(500))
}

proptest! {
    #[test]
    fn order_is_the_divisibility_threshold(n in -5000i64..5000, d in 1i64..3000) {
        prop_assume!(n != 0);
        let t = RadixTable::new();
        let ladder = wide_ladder();
        let q = r(n, d);
        let g = t.order_of_rational(&q).unwrap();
        prop_assert_eq!(g, ladder.ord(&q));
        for l in g - 3..=g {
            prop_assert!((&q / t.psi_exp(l).unwrap()).is_integer());
        }
        prop_assert!(!(&q / t.psi_exp(g + 1).unwrap()).is_integer());
    }
}
