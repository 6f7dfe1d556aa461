//! One pass/fail line per acceptance criterion. Run with
//! `cargo test -p tomjerry-core --test acceptance -- --nocapture`.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use tomjerry::candidates::{
    fixtures, load_candidates_str, pfaffian_shape, project_type_i, weight_matrix, FanoCandidate, PfaffianShape,
};
use tomjerry::formats::{enumerate_formats, FailureReason, Format};
use tomjerry::groebner::{Budget, Ideal};
use tomjerry::nodecount::{jerry_nodes, tom_nodes, NodeFormulaInput};
use tomjerry::pipeline::{
    euler_by_candidate, expectation_violations, run, table_string, theorem_violations, Emit, RunConfig, RunOutput,
};
use tomjerry::polyring::{h2_coefficient, quotient_series, Poly, Ring, DEFAULT_PRIME};
use tomjerry::unproject::extrasymmetric::extrasymmetric_checks;
use tomjerry::unproject::normal_forms::{jerry_cube, minors2, tom_binomial, tom_binomial_array};
use tomjerry::unproject::{double_jerry, unproject};
use tomjerry::verify::{pfaffians, verify_case, Verdict, VerifyConfig};

type Outcome = Result<String, String>;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn int(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

fn genus_zero() -> Vec<FanoCandidate> {
    load_candidates_str(fixtures::GENUS_ZERO).unwrap()
}

fn bundled() -> Vec<FanoCandidate> {
    let mut all = genus_zero();
    all.extend(load_candidates_str(fixtures::HALF_POINTS).unwrap());
    all.extend(load_candidates_str(fixtures::COMPLETE_INTERSECTION).unwrap());
    all
}

fn passing(out: &RunOutput, candidate: &str, centre: usize) -> BTreeMap<String, (Option<u64>, Option<usize>)> {
    out.reports
        .iter()
        .filter(|r| r.candidate == candidate && r.centre_index == centre && r.verdict.is_pass())
        .map(|r| (r.format.to_string(), (r.chern_count, r.length_count)))
        .collect()
}

fn node_tables(out: &RunOutput) -> Outcome {
    let expected: [(usize, [(&str, u64); 4]); 3] = [
        (1, [("Tom2", 13), ("Tom1", 14), ("Jer45", 16), ("Jer25", 17)]),
        (2, [("Tom3", 9), ("Tom1", 10), ("Jer35", 12), ("Jer15", 13)]),
        (3, [("Tom4", 8), ("Tom2", 9), ("Jer24", 11), ("Jer14", 12)]),
    ];
    for (centre, table) in expected {
        let got = passing(out, "g0-basket-2345", centre);
        ensure!(got.len() == 4, "centre {}: {} passing formats: {got:?}", centre + 1, got.len());
        for (name, n) in table {
            let f: Format = name.parse().unwrap();
            let r = out
                .reports
                .iter()
                .find(|r| r.candidate == "g0-basket-2345" && r.centre_index == centre && r.orbit.contains(&f))
                .ok_or(format!("no case for {name}"))?;
            ensure!(
                r.verdict.is_pass() && r.chern_count == Some(n) && r.length_count == Some(n as usize),
                "centre {} {name}: {} formula {:?} length {:?}, expected {n}",
                centre + 1,
                r.verdict,
                r.chern_count,
                r.length_count
            );
        }
    }
    Ok("12 counts agree by Chern formula and Gröbner length".into())
}

fn baby_cases() -> Outcome {
    let input = |f: &str| NodeFormulaInput {
        shape: PfaffianShape { p: [2; 5], k: 5 },
        x_weights: [1; 4],
        d_weights: [1, 1, 1],
        format: f.parse().unwrap(),
    };
    let (tom, jer) = (input("Tom1"), input("Jer12"));
    ensure!(tom_nodes(&tom).ok() == Some(2), "Tom baby count {:?}", tom_nodes(&tom));
    ensure!(jerry_nodes(&jer).ok() == Some(3), "Jerry baby count {:?}", jerry_nodes(&jer));
    for (inp, c2) in [(&tom, 2), (&jer, 3)] {
        let (n, d) = inp.chern_weights().map_err(|e| e.to_string())?;
        let s = quotient_series(&n, &d);
        ensure!((s.c0.clone(), s.c1.clone(), s.c2.clone()) == (int(1), int(1), int(c2)), "series {s:?}");
    }
    Ok("2 and 3 nodes; 1+h+2h^2 and 1+h+3h^2".into())
}

fn series_coefficients() -> Outcome {
    let a = h2_coefficient(&[3, 4, 4, 5, 10], &[6, 7, 8, 8]);
    let b = h2_coefficient(&[3, 4, 4, 5, 10, 11, 12], &[6, 7, 8, 8, 9, 14]);
    ensure!(a == int(28) && b == int(34), "got {a} and {b}");
    Ok("28 and 34".into())
}

fn weight_matrices() -> Outcome {
    let c = Arc::new(genus_zero().remove(0));
    let expected = [
        (1, [9, 8, 8, 7, 6], 19, [2, 2, 3, 4, 3, 4, 5, 4, 5, 6]),
        (2, [8, 8, 7, 7, 6], 18, [2, 3, 3, 4, 3, 3, 4, 4, 5, 5]),
        (3, [8, 7, 7, 6, 6], 17, [2, 2, 3, 3, 3, 4, 4, 4, 4, 5]),
    ];
    for (i, p, k, upper) in expected {
        let cc = project_type_i(&c, i).map_err(|e| e.to_string())?;
        let s = pfaffian_shape(&cc.numerator_y).map_err(|e| e.to_string())?;
        ensure!(s == PfaffianShape { p, k }, "centre {}: shape {s:?}", i + 1);
        let m = weight_matrix(&s).map_err(|e| e.to_string())?;
        ensure!(m.upper() == upper.to_vec(), "centre {}: matrix {:?}", i + 1, m.upper());
    }
    Ok("three matrices bit-exact".into())
}

fn failure_battery(out: &RunOutput) -> Outcome {
    let here: Vec<_> = out.reports.iter().filter(|r| r.candidate == "g0-basket-2345" && r.centre_index == 1).collect();
    let verdict = |name: &str| {
        let f: Format = name.parse().unwrap();
        here.iter().find(|r| r.orbit.contains(&f)).map(|r| (r.verdict.clone(), r.attempts))
    };
    for name in ["Tom4", "Tom5", "Jer12", "Jer13", "Jer14", "Jer15", "Jer23"] {
        match verdict(name) {
            Some((Verdict::Fail(FailureReason::CollinearZeros { .. }), 0)) => {}
            v => return Err(format!("{name}: {v:?}, expected a weight-level collinear-zero failure")),
        }
    }
    match verdict("Jer24") {
        Some((Verdict::Fail(r), n)) if r.is_fishy() && n >= 1 => {}
        v => return Err(format!("Jer24: {v:?}, expected an instantiated failure")),
    }
    for name in ["Tom2", "Tom1", "Jer45", "Jer25"] {
        ensure!(matches!(verdict(name), Some((Verdict::Pass, _))), "{name}: {:?}", verdict(name));
    }
    Ok("Tom4, Tom5, Jer1i, Jer23 weight-level; Jer24 instantiated; Tom1, Tom2, Jer25, Jer45 pass".into())
}

fn theorem_property(out: &RunOutput, candidates: &[FanoCandidate]) -> Outcome {
    ensure!(out.violations.is_empty(), "violations: {:?}", out.violations);
    let with_cases: Vec<_> = out.centres.iter().filter(|c| c.complete).collect();
    ensure!(with_cases.len() == 12, "{} centres with cases", with_cases.len());
    ensure!(out.euler.values().all(|e| e.consistent), "Euler: {:?}", out.euler);
    let mut perturbed = 0;
    for (ci, c) in out.centres.iter().enumerate() {
        for k in 0..c.passing.len() {
            let mut centres = out.centres.clone();
            centres[ci].passing[k].1 += 1;
            let euler = euler_by_candidate(&centres);
            ensure!(
                !theorem_violations(&centres, &euler).is_empty(),
                "perturbing {} {} {} went unnoticed",
                c.candidate,
                c.centre,
                c.passing[k].0
            );
            perturbed += 1;
        }
    }
    ensure!(expectation_violations(candidates, &out.reports).is_empty(), "fixture counts not reproduced");
    let mut fixture_perturbed = 0;
    for (n, c) in candidates.iter().enumerate() {
        for (&centre, counts) in &c.expected_counts {
            for name in counts.keys() {
                let mut changed = candidates.to_vec();
                *changed[n].expected_counts.get_mut(&centre).unwrap().get_mut(name).unwrap() += 1;
                ensure!(
                    !expectation_violations(&changed, &out.reports).is_empty(),
                    "perturbing fixture count {} centre {} {name} went unnoticed",
                    c.id,
                    centre + 1
                );
                fixture_perturbed += 1;
            }
        }
    }
    Ok(format!(
        "{} centres hold; {perturbed} computed and {fixture_perturbed} fixture count perturbations all detected",
        with_cases.len()
    ))
}

fn normal_forms() -> Outcome {
    let p = DEFAULT_PRIME;
    let tom = tom_binomial(p).map_err(|e| e.to_string())?;
    let pf = Ideal::new(&tom.ring, pfaffians(&tom.matrix).map_err(|e| e.to_string())?);
    let minors: Vec<Poly> = minors2(&tom_binomial_array(&tom.ring, tom.ring.zero()))
        .into_iter()
        .filter(|f| f.len() == 2)
        .collect();
    ensure!(pf.same_as(&Ideal::new(&tom.ring, minors)).map_err(|e| e.to_string())?, "Tom binomials differ from minors");

    let jer = jerry_cube(p).map_err(|e| e.to_string())?;
    let pf = Ideal::new(&jer.ring, pfaffians(&jer.matrix).map_err(|e| e.to_string())?);
    // Face and diagonal binomials of the cube avoiding the starred vertex.
    let faces = jer.ring.polys(&["y1*t - z2*z3", "y2*t - z1*z3", "y3*t - z1*z2", "y1*z1 - y2*z2", "y2*z2 - y3*z3"]);
    let faces = Ideal::new(&jer.ring, faces);
    ensure!(pf.same_as(&faces).map_err(|e| e.to_string())?, "Jerry Pfaffians differ from cube binomials");
    let x = unproject(&pf, &jer.plane, 1, "s").map_err(|e| e.to_string())?;
    let hf: Vec<usize> = (0..4).map(|d| x.ideal().hilbert_function(d).unwrap()).collect();
    ensure!(hf == vec![1, 8, 27, 64], "Jerry unprojection Hilbert function {hf:?}");

    let r = extrasymmetric_checks(p, 1).map_err(|e| e.to_string())?;
    ensure!(
        r.minors_match && r.r3_multiples && r.repeats_kept && r.identity_on_variety && r.codimension == 4,
        "extrasymmetric {r:?}"
    );
    Ok("Tom binomials = minors; Jerry Pfaffians = cube binomials; extrasymmetric (i)-(iii)".into())
}

fn double_jerry_checks() -> Outcome {
    let p = DEFAULT_PRIME;
    let ring = Ring::standard(&["x1", "x2", "x3", "y1", "y2", "y3", "s", "t"], p).unwrap();
    let m = |rows: [[i64; 3]; 3]| rows.map(|r| r.map(|c| ring.constant(c)));
    let (a, b) = (m([[1, 0, 0], [0, -1, 0], [0, 0, 0]]), m([[0, 0, 0], [0, 1, 0], [0, 0, -1]]));
    let dj = double_jerry(&ring, &a, &b, [0, 1, 2], [3, 4, 5], 6, 7, &Budget::unlimited()).map_err(|e| e.to_string())?;
    let ci = Ideal::new(&ring, dj.eight[..2].to_vec());
    let diff = &dj.long - &ring.parse("s*t - x1*y1").unwrap();
    ensure!(ci.contains(&diff).unwrap(), "long equation {}", dj.long);
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..3 {
        let mut rand3 = || m(std::array::from_fn(|_| std::array::from_fn(|_| rng.gen_range(0..p as i64))));
        let (a, b) = (rand3(), rand3());
        let dj = double_jerry(&ring, &a, &b, [0, 1, 2], [3, 4, 5], 6, 7, &Budget::unlimited()).map_err(|e| e.to_string())?;
        let ideal = Ideal::new(&ring, dj.equations());
        let hf: Vec<usize> = (0..4).map(|d| ideal.hilbert_function(d).unwrap()).collect();
        ensure!(hf == vec![1, 8, 27, 64], "Hilbert function {hf:?}");
    }
    Ok("diagonal: st = x1y1 mod c.i.; random A, B: 1, 8, 27, 64".into())
}

fn determinism_and_retries(first: &RunOutput) -> Outcome {
    let candidates = genus_zero();
    let once = run(&candidates, &RunConfig { jobs: Some(1), ..RunConfig::default() }).map_err(|e| e.to_string())?;
    let twice = run(&candidates, &RunConfig { jobs: Some(2), ..RunConfig::default() }).map_err(|e| e.to_string())?;
    let subset: Vec<_> = first.rows.iter().filter(|r| r.candidate == "g0-basket-2345").cloned().collect();
    for emit in [Emit::Csv, Emit::Json] {
        let a = table_string(&once.rows, emit).map_err(|e| e.to_string())?;
        let b = table_string(&twice.rows, emit).map_err(|e| e.to_string())?;
        let c = table_string(&subset, emit).map_err(|e| e.to_string())?;
        ensure!(a == b && b == c, "{emit:?} tables differ between runs");
    }
    let c = Arc::new(candidates[0].clone());
    let mut resolved = 0;
    for centre in c.type_i_centres() {
        let cc = Arc::new(project_type_i(&c, centre).unwrap());
        let shape = pfaffian_shape(&cc.numerator_y).unwrap();
        for fc in enumerate_formats(&cc, shape).unwrap() {
            let clean = verify_case(&fc, &VerifyConfig::default()).map_err(|e| e.to_string())?;
            if !clean.verdict.is_pass() {
                continue;
            }
            let config = VerifyConfig { sabotage: 3, ..VerifyConfig::default() };
            let r = verify_case(&fc, &config).map_err(|e| e.to_string())?;
            ensure!(r.verdict.is_pass() && r.attempts == 4, "{} {}: {} after {}", r.centre_label, r.format, r.verdict, r.attempts);
            resolved += 1;
        }
    }
    Ok(format!("byte-identical CSV and JSON across runs; {resolved} sabotaged cases pass on the 4th attempt"))
}

#[test]
fn acceptance() {
    let candidates = bundled();
    let everything = run(&candidates, &RunConfig::default()).expect("bundled run");
    let results: Vec<(&str, Outcome)> = vec![
        ("1 node-count tables", node_tables(&everything)),
        ("2 baby cases", baby_cases()),
        ("3 series coefficients", series_coefficients()),
        ("4 weight matrices", weight_matrices()),
        ("5 failure battery", failure_battery(&everything)),
        ("6 theorem property", theorem_property(&everything, &candidates)),
        ("7 normal-form identities", normal_forms()),
        ("8 double Jerry", double_jerry_checks()),
        ("9 determinism and retries", determinism_and_retries(&everything)),
    ];
    let mut failed = Vec::new();
    for (name, r) in &results {
        match r {
            Ok(msg) => println!("PASS criterion {name}: {msg}"),
            Err(msg) => {
                println!("FAIL criterion {name}: {msg}");
                failed.push(*name);
            }
        }
    }
    assert!(failed.is_empty(), "failed: {failed:?}");
}
