//! Randomized invariants: ring axioms, multiplication/division round trips,
//! residue reduction against full division, the factored gcd against the
//! classical gcd, and the fixed-point magnitude probe.

mod common;

use num_bigint::BigInt;
use proptest::collection::vec;
use proptest::prelude::*;
use subsum_core::cyclo::{fbp_gcd, gcd_binomial};
use subsum_core::{BinomialProduct, DensePoly};

fn small_poly() -> impl Strategy<Value = DensePoly> {
    vec(-20i64..=20, 0..12).prop_map(|cs| DensePoly::from_i64(&cs))
}

fn long_poly() -> impl Strategy<Value = DensePoly> {
    // Long enough to cross the Karatsuba threshold.
    vec(-9i64..=9, 40..90).prop_map(|cs| DensePoly::from_i64(&cs))
}

fn binomial_product() -> impl Strategy<Value = BinomialProduct> {
    vec((1u64..=12, 0i64..=3), 1..5).prop_map(BinomialProduct::from_pairs)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn ring_axioms(a in small_poly(), b in small_poly(), c in small_poly()) {
        let ab_c = &(&a * &b) * &c;
        let a_bc = &a * &(&b * &c);
        prop_assert_eq!(&ab_c, &a_bc);
        let dist = &a * &(&b + &c);
        let expanded = &(&a * &b) + &(&a * &c);
        prop_assert_eq!(dist, expanded);
        prop_assert_eq!(&(&a + &b) - &b, a);
    }

    #[test]
    fn karatsuba_matches_across_threshold(a in long_poly(), b in long_poly()) {
        // Evaluation homomorphism pins the long product without a second
        // multiplication routine: (a b)(t) = a(t) b(t) at several points.
        let prod = &a * &b;
        for t in [-3i64, -1, 2, 5] {
            prop_assert_eq!(prod.eval_i64(t), a.eval_i64(t) * b.eval_i64(t));
        }
    }

    #[test]
    fn mul_then_exact_div_round_trips(a in small_poly(), b in small_poly()) {
        prop_assume!(!b.is_zero());
        let prod = &a * &b;
        prop_assert_eq!(prod.exact_div(&b).unwrap(), a);
    }

    #[test]
    fn residue_zero_iff_divisible(p in small_poly(), m in 1u64..=12) {
        let residue = p.reduce_mod_cyclotomic(m);
        let phi = (*subsum_core::cyclo::cyclotomic(m)).clone();
        let divisible = p.exact_div(&phi).is_ok() || p.is_zero();
        prop_assert_eq!(residue.is_zero(), divisible);
    }

    #[test]
    fn binomial_power_shapes(k in 1u32..=64) {
        let row = DensePoly::from_i64(&[1, 1]).pow(k);
        let shape = row.shape_report();
        prop_assert!(shape.palindromic && shape.unimodal && shape.log_concave);
    }

    #[test]
    fn factored_gcd_matches_classical(inputs in vec(binomial_product(), 1..4)) {
        let gcd = fbp_gcd(inputs.iter()).expect("indices <= 12 stay expressible");
        let expansions: Vec<DensePoly> = inputs
            .iter()
            .map(|f| f.expand().unwrap())
            .collect();
        let classical = common::poly_gcd_many(&expansions);
        prop_assert_eq!(gcd.expand().unwrap(), classical);
    }

    #[test]
    fn max_dividing_power_matches_division(f in binomial_product(), i in 1u64..=8) {
        let mut p = f.expand().unwrap();
        let mut count = 0;
        while p.div_binomial_exact_assign(i as usize).is_ok() {
            count += 1;
        }
        prop_assert_eq!(f.max_dividing_power(i), count);
    }

    #[test]
    fn abs_squared_matches_fixed_point(
        m in prop::sample::select(vec![3u64, 4, 6]),
        a in -1_000_000i64..=1_000_000,
        b in -1_000_000i64..=1_000_000,
    ) {
        // |z|^2 from the quadratic form vs the 200-bit fixed-point route,
        // within 1e-20 relative error.
        let poly = DensePoly::from_i64(&[a, b]);
        let exact = poly.reduce_mod_cyclotomic(m).abs_squared().unwrap();
        let approx = common::abs2_fixed_point(m, &BigInt::from(a), &BigInt::from(b));
        let scaled_exact = &exact * common::abs2_scale();
        let diff = (&approx - &scaled_exact).magnitude().clone();
        let bound = scaled_exact.magnitude().max(common::abs2_scale().magnitude())
            / BigInt::from(10u8).pow(20).magnitude();
        prop_assert!(diff <= bound, "diff {diff} exceeds bound {bound}");
    }
}

#[test]
fn gcd_binomial_matches_classical_to_64() {
    for n in 1..=64u64 {
        for m in 1..=64u64 {
            let a = DensePoly::binomial(n as usize);
            let b = DensePoly::binomial(m as usize);
            let classical = common::poly_gcd_oracle(&a, &b);
            let factored = gcd_binomial(n, m).expand().unwrap();
            assert_eq!(factored, classical, "n = {n}, m = {m}");
        }
    }
}

#[test]
fn factored_gcd_on_partition_products() {
    // The gcd calculus against the classical gcd on actual h-product
    // collections, where expressibility is guaranteed.
    use subsum_core::subsum::h_product;
    use subsum_core::PartFamily;
    for n in 1..=9u64 {
        let hs: Vec<BinomialProduct> =
            subsum_core::partitions::enumerate_partitions(n, &PartFamily::All)
                .map(|l| h_product(n, &l, &PartFamily::All).unwrap())
                .collect();
        let fast = fbp_gcd(hs.iter()).unwrap().expand().unwrap();
        let expansions: Vec<DensePoly> = hs.iter().map(|h| h.expand().unwrap()).collect();
        assert_eq!(fast, common::poly_gcd_many(&expansions), "n = {n}");
    }
}
