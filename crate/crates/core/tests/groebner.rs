use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use tomjerry::groebner::{self, Budget, GroebnerError, Ideal};
use tomjerry::polyring::{DenseMatrix, MonomialOrder, Poly, Ring, RingRef};

const P: u32 = 32003;

fn ring(names: &[&str]) -> RingRef {
    Ring::standard(names, P).unwrap()
}

fn ideal(r: &RingRef, gens: &[&str]) -> Ideal {
    Ideal::new(r, r.polys(gens))
}

#[test]
fn lex_basis_of_monomial_ideal() {
    let r = Ring::standard(&["x", "y"], P).unwrap().reordered(MonomialOrder::Lex);
    let i = ideal(&r, &["x^2", "x*y"]);
    let gb = i.groebner_basis().unwrap();
    assert_eq!(gb.to_vec(), r.polys(&["x*y", "x^2"]));
}

#[test]
fn unit_ideal_basis() {
    let r = ring(&["x", "y"]);
    let i = ideal(&r, &["x*y - 1", "x"]);
    assert_eq!(i.groebner_basis().unwrap().to_vec(), vec![r.one()]);
    assert_eq!(i.dimension().unwrap(), -1);
}

#[test]
fn radical_membership_examples() {
    let r = ring(&["x", "y"]);
    let i = ideal(&r, &["x^2"]);
    assert!(i.radical_contains(&r.named("x")).unwrap());
    assert!(!i.radical_contains(&r.named("y")).unwrap());
    // Inhomogeneous path through the auxiliary variable.
    let j = ideal(&r, &["(x - 1)^3", "y^2 - x + 1"]);
    assert!(j.radical_contains(&r.parse("x - 1").unwrap()).unwrap());
    assert!(j.radical_contains(&r.named("y")).unwrap());
    assert!(!j.radical_contains(&r.named("x")).unwrap());
}

#[test]
fn colon_examples() {
    let r = ring(&["x", "y"]);
    let x = r.named("x");
    let c = ideal(&r, &["x*y"]).colon(&x).unwrap();
    assert!(c.same_as(&ideal(&r, &["y"])).unwrap());
    let c = ideal(&r, &["x^2", "x*y"]).colon(&x).unwrap();
    assert!(c.same_as(&ideal(&r, &["x", "y"])).unwrap());
    // General path: colon by a non-variable.
    let f = r.parse("x + y").unwrap();
    let i = ideal(&r, &["x^2 - y^2"]);
    assert!(i.colon(&f).unwrap().same_as(&ideal(&r, &["x - y"])).unwrap());
}

#[test]
fn saturation_examples() {
    let r = ring(&["x", "y", "z"]);
    let i = ideal(&r, &["x^3*y", "x^2*z"]);
    let s = i.saturate(&r.named("x")).unwrap();
    assert!(s.same_as(&ideal(&r, &["y", "z"])).unwrap());
    // Non-homogeneous route agrees.
    let j = ideal(&r, &["x^3*y + x^3", "x^2*z"]);
    let s = j.saturate(&r.named("x")).unwrap();
    assert!(s.same_as(&ideal(&r, &["y + 1", "z"])).unwrap());
}

#[test]
fn dimension_examples() {
    let r = ring(&["x", "y"]);
    assert_eq!(ideal(&r, &["x"]).dimension().unwrap(), 1);
    assert_eq!(ideal(&r, &["x", "y"]).dimension().unwrap(), 0);
    let r3 = ring(&["x", "y", "z"]);
    assert_eq!(ideal(&r3, &["x*y", "x*z"]).dimension().unwrap(), 2);
}

#[test]
fn length_and_reducedness_examples() {
    let r = ring(&["x", "y"]);
    let a = ideal(&r, &["x^2", "y"]);
    assert_eq!(a.length_0dim().unwrap(), 2);
    assert!(!groebner::is_reduced_0dim(&a, 1).unwrap());
    let b = ideal(&r, &["x^2 - 1", "y"]);
    assert_eq!(b.length_0dim().unwrap(), 2);
    assert!(groebner::is_reduced_0dim(&b, 1).unwrap());
    let c = ideal(&r, &["x"]);
    assert_eq!(c.length_0dim(), Err(GroebnerError::NotZeroDimensional));
    // Fat point of embedding dimension two: no linear form reaches the length.
    let d = ideal(&r, &["x^2", "x*y", "y^2"]);
    assert_eq!(d.length_0dim().unwrap(), 3);
    assert!(!groebner::is_reduced_0dim(&d, 7).unwrap());
}

#[test]
fn length_counts_points() {
    // Six distinct points: intersection of a conic and a cubic in general position.
    let r = ring(&["x", "y"]);
    let i = ideal(&r, &["x^2 + y^2 - 5", "(x - 1)*(x - 2)*(x + 2) - y"]);
    let n = i.length_0dim().unwrap();
    assert_eq!(n, 6);
    assert!(groebner::is_reduced_0dim(&i, 3).unwrap());
}

#[test]
fn budget_exhaustion_is_reported() {
    let r = ring(&["a", "b", "c", "d"]);
    let i = ideal(
        &r,
        &["a + b + c + d", "a*b + b*c + c*d + d*a", "a*b*c + b*c*d + c*d*a + d*a*b", "a*b*c*d - 1"],
    )
    .with_budget(Budget::pairs(2));
    assert!(matches!(i.groebner_basis(), Err(GroebnerError::Timeout { .. })));
}

#[test]
fn cyclic_four_basis_is_valid() {
    let r = ring(&["a", "b", "c", "d"]);
    let gens = r.polys(&["a + b + c + d", "a*b + b*c + c*d + d*a", "a*b*c + b*c*d + c*d*a + d*a*b", "a*b*c*d - 1"]);
    let i = Ideal::new(&r, gens.clone());
    let gb = i.groebner_basis().unwrap().to_vec();
    assert_basis_properties(&r, &gens, &gb);
    assert_eq!(i.dimension().unwrap(), 1);
}

/// Generators reduce to zero and all S-polynomials reduce to zero.
fn assert_basis_properties(r: &RingRef, gens: &[Poly], gb: &[Poly]) {
    let i = Ideal::new(r, gb.to_vec());
    for g in gens {
        assert!(i.contains(g).unwrap(), "generator {g} not reduced to zero");
    }
    for (a, f) in gb.iter().enumerate() {
        for g in &gb[a + 1..] {
            let (lf, lg) = (f.leading_monomial().unwrap(), g.leading_monomial().unwrap());
            let l = r.lcm(&lf, &lg);
            let s = f.mul_term(&lf.quotient_of(&l).unwrap(), 1) - g.mul_term(&lg.quotient_of(&l).unwrap(), 1);
            assert!(i.normal_form(&s).unwrap().is_zero());
        }
    }
}

/// Hilbert function by ranks of Macaulay matrices, independent of Buchberger.
fn macaulay_hilbert(r: &RingRef, gens: &[Poly], d: u32) -> usize {
    let monos = r.monomials_of_degree(d);
    let mut rows = Vec::new();
    for g in gens {
        let dg = g.weighted_degree().unwrap();
        if dg > d {
            continue;
        }
        for m in r.monomials_of_degree(d - dg) {
            let h = g.mul_term(&m, 1);
            rows.push(monos.iter().map(|mo| h.coefficient(mo)).collect::<Vec<u32>>());
        }
    }
    if rows.is_empty() {
        return monos.len();
    }
    monos.len() - DenseMatrix::from_rows(&rows).rank(r.field())
}

fn random_homogeneous(r: &RingRef, degrees: &[u32], seed: u64, sparsity: u32) -> Vec<Poly> {
    use rand::Rng;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    degrees
        .iter()
        .map(|&d| {
            let f = r.general_form(d, &mut rng);
            let terms: Vec<_> = f
                .terms()
                .iter()
                .copied()
                .filter(|_| rng.gen_range(0..10) < sparsity)
                .collect();
            let g = Poly::from_terms(r, terms);
            if g.is_zero() {
                f
            } else {
                g
            }
        })
        .collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn hilbert_function_matches_macaulay_oracle(
        seed in any::<u64>(),
        degrees in proptest::collection::vec(1u32..4, 1..4),
        sparsity in 2u32..10,
    ) {
        let r = Ring::new(&["x", "y", "z", "w"], &[1, 1, 2, 1], P).unwrap();
        let gens = random_homogeneous(&r, &degrees, seed, sparsity);
        let i = Ideal::new(&r, gens.clone());
        for d in 0..6 {
            prop_assert_eq!(i.hilbert_function(d).unwrap(), macaulay_hilbert(&r, &gens, d));
        }
    }

    #[test]
    fn output_satisfies_buchberger_criterion(
        seed in any::<u64>(),
        degrees in proptest::collection::vec(1u32..4, 1..4),
        sparsity in 2u32..10,
    ) {
        let r = Ring::new(&["x", "y", "z"], &[1, 2, 1], P).unwrap();
        let gens = random_homogeneous(&r, &degrees, seed, sparsity);
        let gb = Ideal::new(&r, gens.clone()).groebner_basis().unwrap().to_vec();
        assert_basis_properties(&r, &gens, &gb);
    }

    #[test]
    fn colon_and_saturation_are_monotone(seed in any::<u64>(), sparsity in 3u32..10) {
        let r = ring(&["x", "y", "z"]);
        let gens = random_homogeneous(&r, &[2, 2, 3], seed, sparsity);
        let i = Ideal::new(&r, gens);
        let f = r.named("x");
        let c = i.colon(&f).unwrap();
        let s = i.saturate(&f).unwrap();
        prop_assert!(c.contains_all(i.generators()).unwrap());
        prop_assert!(s.contains_all(c.generators()).unwrap());
        // (I : xy) through elimination equals ((I : x) : y) through the variable fast path.
        let xy = r.parse("x*y").unwrap();
        let twice = c.colon(&r.named("y")).unwrap();
        prop_assert!(i.colon(&xy).unwrap().same_as(&twice).unwrap());
    }
}

#[test]
fn general_colon_agrees_with_definition() {
    // (I : f) contains exactly the h with h·f ∈ I, checked on a few h.
    let r = ring(&["x", "y", "z"]);
    let i = ideal(&r, &["x^2*y - z^3", "y^2 - x*z"]);
    let f = r.parse("x + z").unwrap();
    let c = i.colon(&f).unwrap();
    for g in c.generators() {
        assert!(i.contains(&(g * &f)).unwrap());
    }
    assert!(c.contains_all(i.generators()).unwrap());
}

#[test]
fn elimination_recovers_twisted_cubic() {
    let r = ring(&["t", "a", "b", "c", "d"]);
    let i = ideal(&r, &["a - t^3", "b - t^2", "c - t", "d - 1"]);
    let e = i.eliminate(&[0]).unwrap();
    let s = e.ring().clone();
    let expected = Ideal::new(&s, s.polys(&["a*d - b*c", "b^2 - a*c", "c^2 - b*d", "d - 1"]));
    assert!(e.same_as(&expected).unwrap());
}
