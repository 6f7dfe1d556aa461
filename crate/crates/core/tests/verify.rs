use std::sync::Arc;

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use tomjerry::candidates::{fixtures, load_candidates_str, pfaffian_shape, project_type_i, IntPoly, PfaffianShape};
use tomjerry::formats::{enumerate_formats, instantiate, FailureReason, Format, FormatCandidate, SkewMatrix};
use tomjerry::groebner::{Budget, Ideal};
use tomjerry::polyring::{Poly, Ring, RingRef, DEFAULT_PRIME};
use tomjerry::verify::{
    check_sing_in_d, in_coordinate_ideal, pfaffians, restrict_and_check_nodes, singular_ideal, verify_case,
    CaseReport, LocalClass, NodeCheck, Verdict, VerifyConfig,
};

const P: u32 = DEFAULT_PRIME;

fn formats_at(json: &str, centre: usize) -> Vec<FormatCandidate> {
    let c = Arc::new(load_candidates_str(json).unwrap().remove(0));
    let cc = Arc::new(project_type_i(&c, centre).unwrap());
    let shape = pfaffian_shape(&cc.numerator_y).unwrap();
    enumerate_formats(&cc, shape).unwrap()
}

fn case_in(cases: &[FormatCandidate], name: &str) -> FormatCandidate {
    let f: Format = name.parse().unwrap();
    cases.iter().find(|fc| fc.orbit.contains(&f)).unwrap().clone()
}

fn genus0(centre: usize, name: &str) -> FormatCandidate {
    case_in(&formats_at(fixtures::GENUS_ZERO, centre), name)
}

fn run(fc: &FormatCandidate) -> CaseReport {
    verify_case(fc, &VerifyConfig::default()).unwrap()
}

/// Pfaffian of an even skew matrix by summing over all perfect matchings,
/// signed by the parity of the permutation listing the matched pairs.
fn matching_pfaffian(m: &[Vec<i64>], idx: &[usize], p: i64) -> i64 {
    fn go(m: &[Vec<i64>], rest: &[usize], seq: &mut Vec<usize>, p: i64, acc: &mut i64, prod: i64) {
        if rest.is_empty() {
            let mut inv = 0;
            for a in 0..seq.len() {
                for b in a + 1..seq.len() {
                    if seq[a] > seq[b] {
                        inv += 1;
                    }
                }
            }
            *acc = (*acc + if inv % 2 == 0 { prod } else { p - prod }) % p;
            return;
        }
        let first = rest[0];
        for k in 1..rest.len() {
            let other = rest[k];
            let remaining: Vec<usize> = rest.iter().copied().filter(|&v| v != first && v != other).collect();
            seq.push(first);
            seq.push(other);
            go(m, &remaining, seq, p, acc, prod * m[first][other] % p);
            seq.truncate(seq.len() - 2);
        }
    }
    let mut acc = 0;
    go(m, idx, &mut Vec::new(), p, &mut acc, 1);
    acc
}

fn skew_from(ring: &RingRef, upper: &[Poly]) -> SkewMatrix {
    SkewMatrix::from_upper(ring, 5, upper.to_vec())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn pfaffians_match_perfect_matchings(entries in prop::collection::vec(0u32..P, 10)) {
        let ring = Ring::standard(&["z"], P).unwrap();
        let m = skew_from(&ring, &entries.iter().map(|&c| ring.constant(c as i64)).collect::<Vec<_>>());
        let mut full = vec![vec![0i64; 5]; 5];
        let mut n = 0;
        for i in 0..5 {
            for j in i + 1..5 {
                full[i][j] = entries[n] as i64;
                full[j][i] = (P as i64 - entries[n] as i64) % P as i64;
                n += 1;
            }
        }
        let pf = pfaffians(&m).unwrap();
        for (i, f) in pf.iter().enumerate() {
            let rest: Vec<usize> = (0..5).filter(|&r| r != i).collect();
            prop_assert_eq!(f.constant_term() as i64, matching_pfaffian(&full, &rest, P as i64));
        }
    }

    #[test]
    fn laplace_relation(seed in any::<u64>()) {
        let ring = Ring::standard(&["a", "b", "c"], P).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let upper: Vec<Poly> = (0..10).map(|_| ring.general_form(1, &mut rng)).collect();
        let m = skew_from(&ring, &upper);
        let pf = pfaffians(&m).unwrap();
        for i in 0..5 {
            let sum = (0..5).fold(ring.zero(), |acc, j| {
                let term = &m.get(i, j) * &pf[j];
                if j % 2 == 0 { acc + term } else { acc - term }
            });
            prop_assert!(sum.is_zero());
        }
    }

    #[test]
    fn pfaffians_lie_in_coordinate_ideal(seed in any::<u64>(), centre in 1usize..4) {
        let ring_cases = formats_at(fixtures::GENUS_ZERO, centre);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for fc in &ring_cases {
            let ring = fc.centred.ring(P).unwrap();
            let m = instantiate(fc, &ring, &mut rng);
            for f in pfaffians(&m).unwrap() {
                prop_assert!(in_coordinate_ideal(&f, 4));
            }
        }
    }
}

#[test]
fn zero_matrix_has_zero_pfaffians() {
    let ring = Ring::standard(&["z"], P).unwrap();
    assert!(pfaffians(&SkewMatrix::zero(&ring, 5)).unwrap().iter().all(Poly::is_zero));
}

#[test]
fn pfaffians_have_the_shape_degrees() {
    let fc = genus0(1, "Tom1");
    let ring = fc.centred.ring(P).unwrap();
    let m = instantiate(&fc, &ring, &mut ChaCha8Rng::seed_from_u64(3));
    let degrees: Vec<u32> = pfaffians(&m).unwrap().iter().map(|f| f.weighted_degree().unwrap()).collect();
    assert_eq!(degrees, fc.shape.p.to_vec());
}

#[test]
fn third_centre_counts_by_length() {
    for (name, count) in [("Tom1", 14), ("Jer25", 17)] {
        let r = run(&genus0(1, name));
        assert_eq!(r.verdict, Verdict::Pass, "{name}");
        assert_eq!(r.length_count, Some(count));
        assert_eq!(r.chern_count, Some(count as u64));
    }
    let r = run(&genus0(3, "Tom4"));
    assert_eq!((r.verdict, r.length_count), (Verdict::Pass, Some(8)));
}

#[test]
fn jer24_has_non_isolated_singularities() {
    let fc = genus0(1, "Jer24");
    let r = run(&fc);
    assert!(matches!(r.verdict, Verdict::Fail(FailureReason::CoincidentFlanks { .. })), "{}", r.verdict);
    // Independently of the fishy-zero tests, the singular locus has positive dimension.
    let ring = fc.centred.ring(P).unwrap();
    let m = instantiate(&fc, &ring, &mut ChaCha8Rng::seed_from_u64(r.seed));
    let sing = singular_ideal(&pfaffians(&m).unwrap(), &ring);
    assert!(sing.dimension().unwrap() >= 2);
}

#[test]
fn verdict_is_deterministic() {
    let fc = genus0(2, "Tom3");
    let config = VerifyConfig { seed: 17, ..VerifyConfig::default() };
    let a = verify_case(&fc, &config).unwrap();
    let b = verify_case(&fc, &config).unwrap();
    assert_eq!((a.seed, &a.verdict, &a.matrix, a.length_count), (b.seed, &b.verdict, &b.matrix, b.length_count));
    let c = verify_case(&fc, &VerifyConfig { seed: 18, ..config }).unwrap();
    assert_ne!(a.matrix, c.matrix);
    assert_eq!(c.verdict, Verdict::Pass);
}

#[test]
fn injected_degeneracy_is_retried() {
    let fc = genus0(1, "Tom2");
    let r = verify_case(&fc, &VerifyConfig { sabotage: 2, ..VerifyConfig::default() }).unwrap();
    assert_eq!(r.attempts, 3);
    assert_eq!(r.verdict, Verdict::Pass);
    let r = verify_case(&fc, &VerifyConfig { sabotage: 9, retries: 3, ..VerifyConfig::default() }).unwrap();
    assert_eq!(r.attempts, 4);
    assert!(matches!(&r.verdict, Verdict::Flagged(s) if s.contains("accidental")));
}

#[test]
fn small_prime_is_rejected() {
    assert!(verify_case(&genus0(1, "Tom1"), &VerifyConfig { prime: 31, ..VerifyConfig::default() }).is_err());
}

#[test]
fn passing_cases_have_terminal_coordinate_points() {
    for (centre, name) in [(1, "Tom1"), (2, "Jer35"), (3, "Jer24")] {
        let r = run(&genus0(centre, name));
        assert!(r.verdict.is_pass());
        for p in r.points.iter().filter(|p| p.on_y) {
            let ok = matches!(
                p.class,
                Some(LocalClass::SmoothPoint | LocalClass::QuasismoothQuotient { .. } | LocalClass::HyperquotientTerminal { .. })
            );
            assert!(ok, "{name} {}: {:?}", p.name, p.class);
        }
    }
}

/// Baskets with a single 1/5 centre whose `Y` has the given shape and `x` weights.
fn adhoc_cases(p: [u32; 5], k: u32, y: [u32; 7], x: [u32; 4]) -> Vec<FormatCandidate> {
    let ny = PfaffianShape { p, k }.numerator();
    let xs = x.iter().fold(IntPoly::one(), |acc, &w| acc.mul(&IntPoly::one_minus_t_pow(w)));
    let nx = ny.mul(&IntPoly::one_minus_t_pow(5)).add(&xs.shift(5));
    let mut w = y.to_vec();
    w.push(5);
    w.sort_unstable();
    let pairs: Vec<String> = nx.pairs().iter().map(|(c, e)| format!("[{c},{e}]")).collect();
    let json = format!(
        r#"{{"id":"adhoc","genus":0,"basket":[[5,2]],"weights_X":{w:?},"numerator_X":[{}]}}"#,
        pairs.join(",")
    );
    formats_at(&json, 0)
}

fn sorted(mut w: Vec<u32>) -> Vec<u32> {
    w.sort_unstable();
    w
}

fn class_of(r: &CaseReport, name: &str) -> LocalClass {
    r.points.iter().find(|p| p.name == name).and_then(|p| p.class.clone()).unwrap()
}

#[test]
fn half_point_hyperquotient_on_a_curve_of_double_points() {
    let cases = adhoc_cases([7, 6, 6, 6, 5], 15, [1, 1, 2, 2, 3, 3, 4], [1, 2, 3, 4]);
    let r = run(&case_in(&cases, "Jer12"));
    assert!(matches!(r.verdict, Verdict::Fail(FailureReason::DownstreamSingular { .. })), "{}", r.verdict);
    match class_of(&r, "x4") {
        LocalClass::HyperquotientTerminal { r: 4, weights, equation: 2 } => {
            assert_eq!(sorted(weights.to_vec()), vec![1, 1, 2, 3])
        }
        c => panic!("index 4 point: {c:?}"),
    }
    match class_of(&r, "y2") {
        LocalClass::HyperquotientTerminal { r: 2, weights, equation: 0 } => {
            assert_eq!(sorted(weights.to_vec()), vec![0, 1, 1, 1])
        }
        c => panic!("half point: {c:?}"),
    }
}

#[test]
fn half_point_hyperquotient_fails_downstream() {
    let cases = adhoc_cases([8, 7, 7, 6, 6], 17, [1, 1, 2, 3, 3, 4, 4], [1, 3, 4, 4]);
    let r = run(&case_in(&cases, "Tom4"));
    assert!(matches!(r.verdict, Verdict::Fail(FailureReason::DownstreamSingular { .. })), "{}", r.verdict);
    assert!(matches!(class_of(&r, "y2"), LocalClass::HyperquotientTerminal { r: 2, equation: 0, .. }));
}

#[test]
fn cone_over_d_fails_containment() {
    // No entry involves x1, so Y is a cone with vertex the x1 point, off D.
    let ring = Ring::standard(&["x1", "x2", "x3", "x4", "y1", "y2", "y3"], P).unwrap();
    let m = SkewMatrix::parse_upper(
        &ring,
        5,
        &["y1", "y2", "y3", "y1 + y2", "x2", "x3", "x4", "x2 + x3", "x4 - x2", "x3 + x4"],
    )
    .unwrap();
    let pfs = pfaffians(&m).unwrap();
    assert!(pfs.iter().all(|f| in_coordinate_ideal(f, 4)));
    let check = check_sing_in_d(&singular_ideal(&pfs, &ring), 4, &Budget::unlimited()).unwrap();
    assert!(!check.contained);
}

#[test]
fn node_check_on_planes() {
    let ring = Ring::standard(&["y1", "y2", "y3"], P).unwrap();
    let check = |gens: &[&str]| {
        restrict_and_check_nodes(&Ideal::new(&ring, ring.polys(gens)), 1, &Budget::unlimited()).unwrap()
    };
    assert_eq!(check(&["y2*(y2 - y1)*(y2 - 2*y1)", "y3"]), NodeCheck::Nodes { count: 3 });
    assert_eq!(check(&["y2^2", "y3"]), NodeCheck::NotReduced { length: 2 });
    assert_eq!(check(&["y1*y2", "y3"]), NodeCheck::SingularOnBoundaryStratum);
    assert_eq!(check(&["y1", "y2", "y3"]), NodeCheck::Nodes { count: 0 });
}
