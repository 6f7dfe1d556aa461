use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use tomjerry::polyring::{quotient_series, Poly, Ring, RingRef, DEFAULT_PRIME};

const P: u32 = DEFAULT_PRIME;

fn ring() -> RingRef {
    Ring::new(&["a", "b", "c", "d"], &[1, 2, 2, 3], P).unwrap()
}

fn poly_strategy() -> impl Strategy<Value = Vec<(i64, Vec<u32>)>> {
    prop::collection::vec((-50i64..50, prop::collection::vec(0u32..4, 4)), 0..8)
}

fn build(r: &RingRef, data: &[(i64, Vec<u32>)]) -> Poly {
    Poly::from_exponents(r, data)
}

/// Number of exponent vectors with `Σ e_i w_i = d`, by the coefficient recursion of `∏ 1/(1 - t^w)`.
fn count_by_series(weights: &[u32], d: u32) -> usize {
    let mut c = vec![0usize; d as usize + 1];
    c[0] = 1;
    for &w in weights {
        for e in w as usize..=d as usize {
            c[e] += c[e - w as usize];
        }
    }
    c[d as usize]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn ring_axioms(f in poly_strategy(), g in poly_strategy(), h in poly_strategy()) {
        let r = ring();
        let (f, g, h) = (build(&r, &f), build(&r, &g), build(&r, &h));
        prop_assert_eq!(&(&f + &g) * &h, &(&f * &h) + &(&g * &h));
        prop_assert_eq!(&f * &g, &g * &f);
        prop_assert_eq!(&(&f * &g) * &h, &f * &(&g * &h));
        prop_assert!((&f - &f).is_zero());
    }

    #[test]
    fn evaluation_is_a_homomorphism(f in poly_strategy(), g in poly_strategy(), pt in prop::collection::vec(0u32..P, 4)) {
        let r = ring();
        let (f, g) = (build(&r, &f), build(&r, &g));
        let field = r.field();
        prop_assert_eq!((&f * &g).evaluate(&pt), field.mul(f.evaluate(&pt), g.evaluate(&pt)));
        prop_assert_eq!((&f + &g).evaluate(&pt), field.add(f.evaluate(&pt), g.evaluate(&pt)));
    }

    #[test]
    fn leibniz_rule(f in poly_strategy(), g in poly_strategy(), v in 0usize..4) {
        let r = ring();
        let (f, g) = (build(&r, &f), build(&r, &g));
        prop_assert_eq!((&f * &g).derivative(v), &(&f.derivative(v) * &g) + &(&f * &g.derivative(v)));
    }

    #[test]
    fn display_parses_back(f in poly_strategy()) {
        let r = ring();
        let f = build(&r, &f);
        prop_assert_eq!(r.parse(&f.to_string()).unwrap(), f);
    }

    #[test]
    fn general_form_is_homogeneous_and_reproducible(d in 0u32..9, seed in any::<u64>()) {
        let r = ring();
        let f = r.general_form(d, &mut ChaCha8Rng::seed_from_u64(seed));
        let g = r.general_form(d, &mut ChaCha8Rng::seed_from_u64(seed));
        prop_assert_eq!(&f, &g);
        if !f.is_zero() {
            prop_assert!(f.is_homogeneous());
            prop_assert_eq!(f.weighted_degree().unwrap(), d);
        }
    }

    #[test]
    fn monomial_enumeration_is_complete(weights in prop::collection::vec(1u32..5, 1..6), d in 0u32..12) {
        let names: Vec<String> = (0..weights.len()).map(|i| format!("v{i}")).collect();
        let r = Ring::new(&names, &weights, P).unwrap();
        let ms = r.monomials_of_degree(d);
        prop_assert_eq!(ms.len(), count_by_series(&weights, d));
        prop_assert!(ms.iter().all(|m| r.degree_of(m) == d));
    }

    #[test]
    fn first_order_term_of_quotient(num in prop::collection::vec(1u32..20, 0..6), den in prop::collection::vec(1u32..8, 0..8)) {
        let s = quotient_series(&num, &den);
        let expected = den.iter().map(|&w| w as i64).sum::<i64>() - num.iter().map(|&w| w as i64).sum::<i64>();
        prop_assert_eq!(s.c1, BigRational::from_integer(BigInt::from(expected)));
    }
}

#[test]
fn field_inverse_and_signed_lift() {
    let r = ring();
    let f = r.field();
    for a in [1u32, 2, 17, P - 1] {
        assert_eq!(f.mul(a, f.inv(a)), 1);
    }
    assert_eq!(f.to_signed(P - 3), -3);
}
