//! Nonsingularity checks for `D ⊂ Y`: Pfaffians, the singular ideal,
//! containment of the singular locus in `D`, node counting on `D`, and
//! local analysis at coordinate points.

mod case;
mod points;

use std::collections::HashMap;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::formats::SkewMatrix;
use crate::groebner::{Budget, Buchberger, GroebnerError, Ideal, Progress};
use crate::polyring::{MonomialOrder, Poly, Ring, RingError, RingRef};

pub use case::{verify_case, CaseReport, Verdict, VerifyConfig};
pub use points::{coordinate_point_analysis, LocalClass, CoordinatePointReport};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum VerifyError {
    #[error("Pfaffian {index} is not weighted-homogeneous")]
    InhomogeneousEntry { index: usize },
    #[error("prime {prime} must exceed twice the adjunction number {k}")]
    PrimeTooSmall { prime: u32, k: u32 },
    #[error(transparent)]
    Groebner(#[from] GroebnerError),
    #[error(transparent)]
    Ring(#[from] RingError),
}

/// The five 4×4 Pfaffians of a 5×5 skew matrix; entry `i` omits index `i`.
pub fn pfaffians(m: &SkewMatrix) -> Result<Vec<Poly>, VerifyError> {
    assert_eq!(m.size(), 5, "pfaffians expects a 5x5 matrix");
    let pf = m.submaximal_pfaffians();
    for (i, f) in pf.iter().enumerate() {
        if !f.is_homogeneous() {
            return Err(VerifyError::InhomogeneousEntry { index: i + 1 });
        }
    }
    Ok(pf)
}

/// Rows: equations; columns: variables.
pub fn jacobian(eqs: &[Poly]) -> Vec<Vec<Poly>> {
    eqs.iter().map(Poly::partial_derivatives).collect()
}

/// Nonzero 3×3 minors of a matrix of polynomials, deduplicated up to scalars.
pub fn minors3(jac: &[Vec<Poly>]) -> Vec<Poly> {
    let rows = jac.len();
    let cols = jac.first().map_or(0, Vec::len);
    let mut two: HashMap<(usize, usize, usize, usize), Poly> = HashMap::new();
    for b in 0..rows {
        for c in b + 1..rows {
            for i in 0..cols {
                for j in i + 1..cols {
                    let m = &jac[b][i] * &jac[c][j] - &jac[b][j] * &jac[c][i];
                    two.insert((b, c, i, j), m);
                }
            }
        }
    }
    let mut out: Vec<Poly> = Vec::new();
    for a in 0..rows {
        for b in a + 1..rows {
            for c in b + 1..rows {
                for i in 0..cols {
                    for j in i + 1..cols {
                        for k in j + 1..cols {
                            let det = &jac[a][i] * &two[&(b, c, j, k)] - &jac[a][j] * &two[&(b, c, i, k)]
                                + &jac[a][k] * &two[&(b, c, i, j)];
                            if !det.is_zero() {
                                let det = det.monic();
                                if !out.contains(&det) {
                                    out.push(det);
                                }
                            }
                        }
                    }
                }
            }
        }
    }
    out
}

/// Ideal of the singular locus of `Y`: 3×3 minors of the Jacobian together with the Pfaffians.
pub fn singular_ideal(pfaffians: &[Poly], ring: &RingRef) -> Ideal {
    let mut gens = minors3(&jacobian(pfaffians));
    gens.extend(pfaffians.iter().filter(|f| !f.is_zero()).cloned());
    Ideal::new(ring, gens)
}

/// Outcome of the containment check `Sing Y ⊂ D`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ContainmentCheck {
    pub contained: bool,
    /// Powers `e_l` with `x_l^e_l ∈ I_sing`, when found by the truncated run.
    pub powers: Vec<Option<u32>>,
}

/// Whether every `x_l`, `l < nx`, lies in the radical of `I_sing`.
///
/// Runs a homogeneous Buchberger computation degree by degree and stops as
/// soon as a power of each `x_l` has appeared; if the basis completes first,
/// decides the rest by dehomogenising.
pub fn check_sing_in_d(i_sing: &Ideal, nx: usize, budget: &Budget) -> Result<ContainmentCheck, VerifyError> {
    let ring = i_sing.ring().clone();
    let weights = ring.weights().to_vec();
    let mut powers: Vec<Option<u32>> = vec![None; nx];
    let mut engine = Buchberger::new(&ring, i_sing.generators());
    let progress = engine.run_with_hook(budget, |b, d| {
        if b.is_unit() {
            return Progress::Stop;
        }
        for (l, slot) in powers.iter_mut().enumerate() {
            if slot.is_none() {
                let e = d / weights[l];
                if e > 0 && b.reduce(&ring.var(l).pow(e)).is_zero() {
                    // The least power of degree at most d.
                    let mut lo = e;
                    while lo > 1 && b.reduce(&ring.var(l).pow(lo - 1)).is_zero() {
                        lo -= 1;
                    }
                    *slot = Some(lo);
                }
            }
        }
        if powers.iter().all(Option::is_some) {
            Progress::Stop
        } else {
            Progress::Continue
        }
    })?;
    if engine.is_unit() {
        return Ok(ContainmentCheck { contained: true, powers });
    }
    if progress == Progress::Stop {
        return Ok(ContainmentCheck { contained: true, powers });
    }
    let gb = Ideal::new(&ring, engine.into_reduced_basis()).with_budget(*budget);
    for l in 0..nx {
        if powers[l].is_none() && !gb.radical_contains(&ring.var(l))? {
            return Ok(ContainmentCheck { contained: false, powers });
        }
    }
    Ok(ContainmentCheck { contained: true, powers })
}

/// Result of restricting the singular ideal to `D`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum NodeCheck {
    /// Zero-dimensional and reduced on `y1 ≠ 0`, empty on `y1 = 0`.
    Nodes { count: usize },
    NotIsolated,
    NotReduced { length: usize },
    SingularOnBoundaryStratum,
}

/// Generators of `I_sing · O_D` in the ring `k[y1, y2, y3]` of `D`.
///
/// Every Pfaffian lies in `I_D`, so on `D` only the derivatives in the
/// `x` directions survive and the minors are those of the 5×4 restricted
/// Jacobian.
pub fn restricted_singular_ideal(pfaffians: &[Poly], nx: usize) -> Result<Ideal, VerifyError> {
    let ring = pfaffians[0].ring().clone();
    let n = ring.nvars();
    let d_vars: Vec<usize> = (nx..n).collect();
    let d_ring = ring.subring(&d_vars, MonomialOrder::WeightedRevLex);
    let images: Vec<Poly> = (0..n).map(|v| if v < nx { d_ring.zero() } else { d_ring.var(v - nx) }).collect();
    let jac: Vec<Vec<Poly>> = pfaffians
        .iter()
        .map(|f| (0..nx).map(|l| f.derivative(l).substitute(&d_ring, &images)).collect())
        .collect();
    Ok(Ideal::new(&d_ring, minors3(&jac)))
}

/// Check (b): the restricted singular ideal is reduced and zero-dimensional
/// on the affine plane `y1 = 1`, and empty on the stratum `y1 = 0`.
pub fn restrict_and_check_nodes(
    restricted: &Ideal,
    seed: u64,
    budget: &Budget,
) -> Result<NodeCheck, VerifyError> {
    let d_ring = restricted.ring().clone();
    let restricted = restricted.clone().with_budget(*budget);
    let boundary = restricted.plus([d_ring.var(0)]);
    if boundary.dimension()? > 0 {
        return Ok(NodeCheck::SingularOnBoundaryStratum);
    }
    let patch_ring = Ring::new(&d_ring.names()[1..], &d_ring.weights()[1..], d_ring.prime())?;
    let mut images = vec![patch_ring.one()];
    images.extend((0..patch_ring.nvars()).map(|v| patch_ring.var(v)));
    let patch = Ideal::new(&patch_ring, restricted.generators().iter().map(|f| f.substitute(&patch_ring, &images)))
        .with_budget(*budget);
    match patch.dimension()? {
        -1 => return Ok(NodeCheck::Nodes { count: 0 }),
        0 => {}
        _ => return Ok(NodeCheck::NotIsolated),
    }
    let length = patch.length_0dim()?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    if patch.is_reduced_0dim(&mut rng, 5)? {
        Ok(NodeCheck::Nodes { count: length })
    } else {
        Ok(NodeCheck::NotReduced { length })
    }
}

/// Whether every polynomial lies in `(x_1, .., x_nx)`: each term involves some `x_l`.
pub fn in_coordinate_ideal(f: &Poly, nx: usize) -> bool {
    let mask = (1u32 << nx) - 1;
    f.terms().iter().all(|t| t.mono.support_mask() & mask != 0)
}
