//! Property and cross-route tests: ring laws, reduction laws, the
//! derivation sweep, and round trips between the divisor solver and the
//! expanded polynomial constraint.

use num_bigint::BigInt;
use num_traits::Zero;
use proptest::prelude::*;
use scroll_core::cohomring::{BaseClass, BaseMonomial, BundleClass, ScalarPoly, BASE_MONOMIALS};
use scroll_core::{
    expanded_star_constraint, factorize, signed_divisors, star_solutions, verify_derivation,
};

#[test]
fn derivation_matches_closed_forms_up_to_forty() {
    for n in 3..=40 {
        verify_derivation(n).unwrap_or_else(|e| panic!("n = {n}: {e}"));
    }
}

#[test]
fn divisor_solutions_satisfy_the_expanded_constraint() {
    let constraint = expanded_star_constraint();
    let mut checked = 0usize;
    for n in 3..=80u64 {
        for c in star_solutions(n) {
            assert!(
                constraint.eval_int(&c.q, &c.d, &c.e2).is_zero(),
                "Q(q, d, e2) != 0 at n = {n}, d = {}, e2 = {}",
                c.d,
                c.e2
            );
            checked += 1;
        }
    }
    assert!(checked > 300, "expected a substantial sample, got {checked}");
}

/// A small random scalar: constant or degree-1 in the formal symbol.
fn arb_scalar() -> impl Strategy<Value = ScalarPoly> {
    (-4i64..=4, prop::bool::ANY, -2i64..=2).prop_map(|(c, with_d, dc)| {
        let constant = ScalarPoly::from_int(c);
        if with_d {
            &constant + &ScalarPoly::degree_symbol().scale(&scroll_core::Rational::from_integer(
                BigInt::from(dc),
            ))
        } else {
            constant
        }
    })
}

fn arb_base() -> impl Strategy<Value = BaseClass> {
    prop::collection::vec((0usize..8, arb_scalar()), 0..4).prop_map(|terms| {
        let mut out = BaseClass::zero();
        for (idx, coeff) in terms {
            out.add_to(BASE_MONOMIALS[idx], &coeff);
        }
        out
    })
}

fn arb_bundle() -> impl Strategy<Value = (u32, BundleClass)> {
    (3u32..=7).prop_flat_map(|n| {
        prop::collection::vec((0u32..=7, arb_base()), 0..5)
            .prop_map(move |terms| {
                let mut acc = BundleClass::zero(n);
                for (exp, base) in terms {
                    let exp = exp.min(n);
                    let max_base = (n - exp).min(2);
                    acc = &acc
                        + &(&BundleClass::h_pow(n, exp)
                            * &BundleClass::from_base(n, base.truncated(max_base)));
                }
                (n, acc)
            })
    })
}

fn arb_bundle_triple() -> impl Strategy<Value = (BundleClass, BundleClass, BundleClass)> {
    (3u32..=6).prop_flat_map(|n| {
        let single = move || {
            prop::collection::vec((0u32..=6, arb_base()), 0..4).prop_map(move |terms| {
                let mut acc = BundleClass::zero(n);
                for (exp, base) in terms {
                    let exp = exp.min(n);
                    let max_base = (n - exp).min(2);
                    acc = &acc
                        + &(&BundleClass::h_pow(n, exp)
                            * &BundleClass::from_base(n, base.truncated(max_base)));
                }
                acc
            })
        };
        (single(), single(), single())
    })
}

proptest! {
    #[test]
    fn bundle_mul_commutes((_, x) in arb_bundle(), seed in 0u32..=6) {
        // pair x with a shifted power of h and a generator to vary shapes
        let n = x.n();
        let y = &BundleClass::h_pow(n, seed.min(n))
            + &BundleClass::generator(n, BaseMonomial::Gamma1);
        prop_assert_eq!(&x * &y, &y * &x);
    }

    #[test]
    fn bundle_mul_is_associative((x, y, z) in arb_bundle_triple()) {
        prop_assert_eq!(&(&x * &y) * &z, &x * &(&y * &z));
    }

    #[test]
    fn bundle_mul_commutes_pairwise((x, y, _) in arb_bundle_triple()) {
        prop_assert_eq!(&x * &y, &y * &x);
    }

    #[test]
    fn reduce_is_idempotent((_, x) in arb_bundle()) {
        let once = x.reduce_h();
        prop_assert_eq!(once.reduce_h(), once);
    }

    #[test]
    fn reduce_commutes_with_addition((x, y, _) in arb_bundle_triple()) {
        let lhs = (&x + &y).reduce_h();
        let rhs = &x.reduce_h() + &y.reduce_h();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn factorize_round_trips(m in 1u64..=1_000_000_000) {
        let f = factorize(&BigInt::from(m)).unwrap();
        let mut product = num_bigint::BigUint::from(1u32);
        let mut last_prime = num_bigint::BigUint::from(0u32);
        for (p, e) in f.factors() {
            prop_assert!(p > &last_prime, "primes must increase");
            last_prime = p.clone();
            product *= p.pow(*e);
        }
        prop_assert_eq!(product, num_bigint::BigUint::from(m));
    }

    #[test]
    fn signed_divisors_match_brute_force(m in prop::sample::select(
        vec![1i64, 2, 3, 4, 6, 12, 30, 97, 360, 1024, 5040, 30030, 65536, 99991, 100000]
    ), negate in prop::bool::ANY) {
        let m = if negate { -m } else { m };
        let got = signed_divisors(&BigInt::from(m)).unwrap();
        let abs = m.unsigned_abs();
        let positive: Vec<u64> = (1..=abs).filter(|d| abs % d == 0).collect();
        let mut expected: Vec<BigInt> =
            positive.iter().rev().map(|&d| -BigInt::from(d)).collect();
        expected.extend(positive.iter().map(|&d| BigInt::from(d)));
        prop_assert_eq!(got, expected);
    }
}
