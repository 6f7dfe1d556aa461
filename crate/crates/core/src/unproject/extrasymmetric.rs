//! The extrasymmetric `6×6` format and its one- and eight-parameter deformations.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::formats::SkewMatrix;
use crate::groebner::{GroebnerError, Ideal};
use crate::polyring::{Poly, Ring, RingError, RingRef};

use super::normal_forms::minors2;

const NAMES: [&str; 10] = ["x1", "x2", "x3", "a1", "a2", "a3", "b1", "b2", "b3", "r3"];

/// Ring on `x1..x3, a1..a3, b1..b3, r3`, all of weight one.
pub fn ring(prime: u32) -> Result<RingRef, RingError> {
    Ring::standard(&NAMES, prime)
}

/// The undeformed matrix, with `r3` multiplying `m12, m16, m26`.
pub fn deformed(ring: &RingRef, r3: &Poly) -> SkewMatrix {
    let v = |n: &str| ring.named(n);
    let upper = vec![
        r3 * &v("b3"),
        -v("b2"),
        v("x1"),
        v("a3"),
        r3 * &v("a2"),
        v("b1"),
        v("a3"),
        v("x2"),
        r3 * &v("a1"),
        v("a2"),
        v("a1"),
        v("x3"),
        -v("b3"),
        v("b2"),
        -v("b1"),
    ];
    SkewMatrix::from_upper(ring, 6, upper)
}

pub fn undeformed(ring: &RingRef) -> SkewMatrix {
    deformed(ring, &ring.one())
}

/// Generic `3×3` matrix written as symmetric plus skew.
pub fn generic_3x3(ring: &RingRef) -> [[Poly; 3]; 3] {
    let v = |n: &str| ring.named(n);
    [
        [v("x1"), v("a3") + v("b3"), v("a2") - v("b2")],
        [v("a3") - v("b3"), v("x2"), v("a1") + v("b1")],
        [v("a2") + v("b2"), v("a1") - v("b1"), v("x3")],
    ]
}

/// The eight-parameter matrix with constants `r0..r3`, `s0..s3`.
pub fn eight_parameter(ring: &RingRef, r: [u32; 4], s: [u32; 4]) -> SkewMatrix {
    let v = |n: &str| ring.named(n);
    let field = ring.field();
    let c = |a: u32, b: u32| field.mul(a, b);
    let upper = vec![
        v("b3").scale(c(r[3], s[0])),
        (-v("b2")).scale(c(r[2], s[0])),
        v("x1"),
        v("a3").scale(c(r[2], s[1])),
        v("a2").scale(c(r[3], s[1])),
        v("b1").scale(c(r[1], s[0])),
        v("a3").scale(c(r[1], s[2])),
        v("x2"),
        v("a1").scale(c(r[3], s[2])),
        v("a2").scale(c(r[1], s[3])),
        v("a1").scale(c(r[2], s[3])),
        v("x3"),
        (-v("b3")).scale(c(r[0], s[3])),
        v("b2").scale(c(r[0], s[2])),
        (-v("b1")).scale(c(r[0], s[1])),
    ];
    SkewMatrix::from_upper(ring, 6, upper)
}

/// The fifteen `4×4` Pfaffians, keyed by their (0-based) row sets.
pub fn pfaffians4(m: &SkewMatrix) -> Vec<([usize; 4], Poly)> {
    let n = m.size();
    let mut out = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            for c in b + 1..n {
                for d in c + 1..n {
                    let rows = [a, b, c, d];
                    out.push((rows, m.pfaffian(&rows)));
                }
            }
        }
    }
    out
}

/// Pairs of distinct Pfaffians equal up to sign.
pub fn repeats(pf: &[([usize; 4], Poly)]) -> Vec<([usize; 4], [usize; 4])> {
    let mut out = Vec::new();
    for (i, (ri, fi)) in pf.iter().enumerate() {
        for (rj, fj) in &pf[i + 1..] {
            if !fi.is_zero() && (fi == fj || *fi == -fj) {
                out.push((*ri, *rj));
            }
        }
    }
    out
}

/// Results of the extrasymmetric fixture checks.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtrasymmetricReport {
    /// The Pfaffians of the undeformed matrix generate the ideal of `2×2` minors.
    pub minors_match: bool,
    /// Number of repeated Pfaffians of the undeformed matrix.
    pub repeats: usize,
    /// Each `Pf_{12.i6}`, `i = 3, 4, 5`, of the deformed matrix is `r3` times another Pfaffian.
    pub r3_multiples: bool,
    /// The other three repetitions survive the deformation.
    pub repeats_kept: bool,
    /// `a1·x1 − (a2·a3·r1·s1 + b2·b3·r0·s0)` lies in the eight-parameter Pfaffian ideal.
    pub identity_on_variety: bool,
    /// Projective codimension of the eight-parameter Pfaffian ideal in the nine variables.
    pub codimension: i32,
}

pub fn extrasymmetric_checks(prime: u32, seed: u64) -> Result<ExtrasymmetricReport, GroebnerError> {
    let ring = ring(prime)?;
    let nine = ring.subring(&(0..9).collect::<Vec<_>>(), ring.order().clone());
    let m0 = undeformed(&ring);
    let pf0 = pfaffians4(&m0);
    let i_pf = Ideal::new(&ring, pf0.iter().map(|(_, f)| f.clone()));
    let i_minors = Ideal::new(&ring, minors2(&generic_3x3(&ring)));
    let minors_match = i_pf.same_as(&i_minors)?;
    let rep0 = repeats(&pf0);

    let r3 = ring.named("r3");
    let pf1 = pfaffians4(&deformed(&ring, &r3));
    let special = |i: usize| [0, 1, i, 5];
    let mut r3_multiples = true;
    for i in 2..5 {
        let f = &pf1.iter().find(|(rows, _)| *rows == special(i)).expect("all row sets present").1;
        r3_multiples &= pf1
            .iter()
            .any(|(rows, g)| *rows != special(i) && !g.is_zero() && (*f == &r3 * g || *f == -(&r3 * g)));
    }
    let touches_special = |rows: &[usize; 4]| (2..5).any(|i| *rows == special(i));
    let rep1 = repeats(&pf1);
    let kept: Vec<_> = rep0.iter().filter(|(a, b)| !touches_special(a) && !touches_special(b)).collect();
    let repeats_kept = kept.len() == 3 && kept.iter().all(|p| rep1.contains(p));

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut unit = || rng.gen_range(1..prime);
    let r = [unit(), unit(), unit(), unit()];
    let s = [unit(), unit(), unit(), unit()];
    let embed: Vec<Poly> = (0..10).map(|i| if i < 9 { nine.var(i) } else { nine.one() }).collect();
    let m2 = eight_parameter(&ring, r, s);
    let i2 = Ideal::new(&nine, pfaffians4(&m2).into_iter().map(|(_, f)| f.substitute(&nine, &embed)));
    let field = ring.field();
    let v = |n: &str| nine.named(n);
    let rhs = (&v("a2") * &v("a3")).scale(field.mul(r[1], s[1])) + (&v("b2") * &v("b3")).scale(field.mul(r[0], s[0]));
    let identity_on_variety = i2.contains(&(&v("a1") * &v("x1") - rhs))?;
    let codimension = nine.nvars() as i32 - i2.dimension()?;
    Ok(ExtrasymmetricReport {
        minors_match,
        repeats: rep0.len(),
        r3_multiples,
        repeats_kept,
        identity_on_variety,
        codimension,
    })
}
