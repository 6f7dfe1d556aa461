//! Fano candidates, Type I projections, Hilbert numerators and Pfaffian shapes.

mod intpoly;
mod io;

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use thiserror::Error;

use crate::polyring::{Ring, RingError, RingRef};

pub use intpoly::IntPoly;
pub use io::{load_candidates, load_candidates_lenient, load_candidates_str, RecordDiagnostic};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CandidateError {
    #[error("invalid basket point 1/{r}({a}): need 0 < a < r and gcd(a, r) = 1")]
    InvalidBasketPoint { r: i64, a: i64 },
    #[error("centre {index} of {id} is not a Type I centre: {reason}")]
    NotATypeICentre { id: String, index: usize, reason: String },
    #[error("centre index {index} out of range for {id}")]
    NoSuchCentre { id: String, index: usize },
    #[error("numerator of Y for centre {index} of {id} is not integral")]
    DerivationFailed { id: String, index: usize },
    #[error("numerator is not of Pfaffian codimension-3 form")]
    NoShape,
    #[error("numerator admits several Pfaffian shapes: {0:?}")]
    AmbiguousShape(Vec<[u32; 5]>),
    #[error("entry weight d_{i}{j} = {d} is not positive")]
    NonPositiveEntry { i: usize, j: usize, d: i64 },
    #[error("candidate file rejected: {}", .0.iter().map(|d| d.to_string()).collect::<Vec<_>>().join("; "))]
    Invalid(Vec<RecordDiagnostic>),
    #[error("could not read candidates: {0}")]
    Io(String),
}

/// A terminal cyclic quotient point of type `1/r(1, a, r-a)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BasketPoint {
    pub r: u32,
    pub a: u32,
}

impl BasketPoint {
    pub fn new(r: i64, a: i64) -> Result<Self, CandidateError> {
        let bad = CandidateError::InvalidBasketPoint { r, a };
        if r < 2 || a <= 0 || a >= r || gcd(r as u64, a as u64) != 1 || r > u32::MAX as i64 {
            return Err(bad);
        }
        Ok(BasketPoint { r: r as u32, a: a as u32 })
    }

    pub fn b(&self) -> u32 {
        self.r - self.a
    }

    /// Weights `(1, a, r-a)` of the plane through the point.
    pub fn plane_weights(&self) -> [u32; 3] {
        [1, self.a, self.b()]
    }
}

impl fmt::Display for BasketPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "1/{}(1,{},{})", self.r, self.a, self.b())
    }
}

pub(crate) fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FanoCandidate {
    pub id: String,
    pub genus: i64,
    pub basket: Vec<BasketPoint>,
    /// Eight ambient weights, ascending.
    pub weights: Vec<u32>,
    pub numerator_x: IntPoly,
    /// Explicit Y numerators keyed by 0-based basket index.
    pub numerator_y_overrides: BTreeMap<usize, IntPoly>,
    /// Reference node counts keyed by 0-based basket index, then format name.
    pub expected_counts: BTreeMap<usize, BTreeMap<String, u32>>,
}

impl FanoCandidate {
    /// Coefficients of `P_X(t)` up to `t^(n-1)`.
    pub fn hilbert_series(&self, n: usize) -> Vec<i64> {
        self.numerator_x.series_over(&self.weights, n)
    }

    pub fn centre(&self, index: usize) -> Result<BasketPoint, CandidateError> {
        self.basket.get(index).copied().ok_or_else(|| CandidateError::NoSuchCentre {
            id: self.id.clone(),
            index,
        })
    }

    /// Basket indices that are Type I centres.
    pub fn type_i_centres(&self) -> Vec<usize> {
        (0..self.basket.len())
            .filter(|&i| split_weights(&self.weights, self.basket[i]).is_ok())
            .collect()
    }
}

/// Removes `r`, then `1, a, r-a`, returning `(y_weights, x_weights)`.
fn split_weights(weights: &[u32], p: BasketPoint) -> Result<(Vec<u32>, Vec<u32>), String> {
    let mut y = weights.to_vec();
    remove_one(&mut y, p.r).ok_or_else(|| format!("weight {} does not occur", p.r))?;
    let mut x = y.clone();
    for w in p.plane_weights() {
        remove_one(&mut x, w).ok_or_else(|| format!("weights 1,{},{} do not all remain after removing {}", p.a, p.b(), p.r))?;
    }
    y.sort_unstable();
    x.sort_unstable();
    Ok((y, x))
}

fn remove_one(v: &mut Vec<u32>, w: u32) -> Option<()> {
    let i = v.iter().position(|&u| u == w)?;
    v.remove(i);
    Some(())
}

/// A candidate together with a chosen Type I centre: the data of `D ⊂ Y`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CentredCandidate {
    pub parent: Arc<FanoCandidate>,
    /// 0-based basket index.
    pub centre_index: usize,
    pub centre: BasketPoint,
    pub y_weights: Vec<u32>,
    pub d_weights: [u32; 3],
    pub x_weights: [u32; 4],
    pub numerator_y: IntPoly,
}

impl CentredCandidate {
    /// Ring of `Y` with variables `x1..x4, y1, y2, y3`; `I_D = (x1..x4)`.
    pub fn ring(&self, prime: u32) -> Result<RingRef, RingError> {
        let weights: Vec<u32> = self.x_weights.iter().chain(self.d_weights.iter()).copied().collect();
        Ring::new(&["x1", "x2", "x3", "x4", "y1", "y2", "y3"], &weights, prime)
    }

    /// Label such as `1/3(1,1,2)#2` with 1-based basket index.
    pub fn label(&self) -> String {
        format!("{}#{}", self.centre, self.centre_index + 1)
    }
}

/// Type I projection from the basket point at `index`.
pub fn project_type_i(c: &Arc<FanoCandidate>, index: usize) -> Result<CentredCandidate, CandidateError> {
    let centre = c.centre(index)?;
    let (y_weights, x) = split_weights(&c.weights, centre).map_err(|reason| CandidateError::NotATypeICentre {
        id: c.id.clone(),
        index,
        reason,
    })?;
    let x_weights: [u32; 4] = x.try_into().map_err(|_| CandidateError::NotATypeICentre {
        id: c.id.clone(),
        index,
        reason: "ambient space does not have eight weights".into(),
    })?;
    let numerator_y = match (derive_y_numerator(c, index), c.numerator_y_overrides.get(&index)) {
        (Ok(n), Some(o)) if &n != o => {
            log::warn!("{}: ingested numerator of Y for centre {} differs from the derived one; using the ingested one", c.id, index + 1);
            o.clone()
        }
        (Ok(n), _) => n,
        (Err(_), Some(o)) => o.clone(),
        (Err(e), None) => return Err(e),
    };
    Ok(CentredCandidate {
        parent: c.clone(),
        centre_index: index,
        centre,
        y_weights,
        d_weights: centre.plane_weights(),
        x_weights,
        numerator_y,
    })
}

/// Numerator of `P_Y` from `P_X = P_Y + t^r/(1-t^r) P_D`.
///
/// Over the common denominator this is
/// `N_Y = (N_X - t^r ∏_x (1 - t^w)) / (1 - t^r)`.
pub fn derive_y_numerator(c: &FanoCandidate, index: usize) -> Result<IntPoly, CandidateError> {
    let centre = c.centre(index)?;
    let (_, x) = split_weights(&c.weights, centre).map_err(|reason| CandidateError::NotATypeICentre {
        id: c.id.clone(),
        index,
        reason,
    })?;
    let correction = IntPoly::denominator(&x).shift(centre.r);
    c.numerator_x
        .sub(&correction)
        .div_one_minus_t_pow(centre.r)
        .ok_or_else(|| CandidateError::DerivationFailed { id: c.id.clone(), index })
}

/// Degrees of the five Pfaffians (descending) and the adjunction number.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PfaffianShape {
    pub p: [u32; 5],
    pub k: u32,
}

impl PfaffianShape {
    /// `1 - Σ t^p_i + Σ t^(k-p_i) - t^k`.
    pub fn numerator(&self) -> IntPoly {
        let mut pairs = vec![(1, 0), (-1, self.k)];
        for &p in &self.p {
            pairs.push((-1, p));
            pairs.push((1, self.k - p));
        }
        IntPoly::from_pairs(&pairs)
    }

    fn usable(&self) -> bool {
        self.p.iter().sum::<u32>() == 2 * self.k && self.p[0] + self.p[1] < self.k
    }
}

/// Recovers the unique usable Pfaffian shape of a codimension-3 numerator.
///
/// Usable means `Σ p_i = 2k` (each Pfaffian has the degree its matching of
/// entries predicts) and every entry weight `k - p_i - p_j` is positive.
pub fn pfaffian_shape(numerator: &IntPoly) -> Result<PfaffianShape, CandidateError> {
    let k = numerator.degree().ok_or(CandidateError::NoShape)?;
    if numerator.coeff(0) != 1 || numerator.coeff(k) >= 0 || k < 3 {
        return Err(CandidateError::NoShape);
    }
    let k = k as u32;
    let mut found = Vec::new();
    let mut p = [0u32; 5];
    search_shapes(numerator, k, 0, k - 1, 2 * k, &mut p, &mut found);
    match found.len() {
        0 => Err(CandidateError::NoShape),
        1 => Ok(PfaffianShape { p: found[0], k }),
        _ => Err(CandidateError::AmbiguousShape(found)),
    }
}

fn search_shapes(num: &IntPoly, k: u32, depth: usize, max: u32, rest: u32, p: &mut [u32; 5], found: &mut Vec<[u32; 5]>) {
    let left = (5 - depth) as u32;
    if depth == 5 {
        let s = PfaffianShape { p: *p, k };
        if rest == 0 && s.usable() && &s.numerator() == num {
            found.push(*p);
        }
        return;
    }
    // Remaining entries are at most `v` and at least 1.
    for v in (1..=max.min(rest.saturating_sub(left - 1))).rev() {
        if v * left < rest {
            break;
        }
        p[depth] = v;
        search_shapes(num, k, depth + 1, v, rest - v, p, found);
    }
}

/// Symmetric matrix of entry weights `d_ij = k - p_i - p_j`; diagonal is 0.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct WeightMatrix(pub [[u32; 5]; 5]);

impl WeightMatrix {
    /// Weight of entry `(i, j)`, 0-based.
    pub fn get(&self, i: usize, j: usize) -> u32 {
        self.0[i][j]
    }

    /// Upper triangle row by row: `(d12 d13 d14 d15 | d23 d24 d25 | d34 d35 | d45)`.
    pub fn upper(&self) -> Vec<u32> {
        let mut v = Vec::with_capacity(10);
        for i in 0..5 {
            for j in i + 1..5 {
                v.push(self.0[i][j]);
            }
        }
        v
    }
}

impl fmt::Display for WeightMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = (0..4)
            .map(|i| (i + 1..5).map(|j| self.0[i][j].to_string()).collect::<Vec<_>>().join(","))
            .collect();
        write!(f, "({})", rows.join(" | "))
    }
}

pub fn weight_matrix(s: &PfaffianShape) -> Result<WeightMatrix, CandidateError> {
    let mut m = [[0u32; 5]; 5];
    for i in 0..5 {
        for j in 0..5 {
            if i == j {
                continue;
            }
            let d = s.k as i64 - s.p[i] as i64 - s.p[j] as i64;
            if d <= 0 {
                return Err(CandidateError::NonPositiveEntry { i: i + 1, j: j + 1, d });
            }
            m[i][j] = d as u32;
        }
    }
    Ok(WeightMatrix(m))
}

/// Bundled candidate files.
pub mod fixtures {
    /// The genus 0 candidate with basket `{1/2, 1/3, 1/4, 1/5}`.
    pub const GENUS_ZERO: &str = include_str!("../../fixtures/genus0.json");
    /// Three candidates projecting from 1/2 points into `P(1^k, 2^m)`.
    pub const HALF_POINTS: &str = include_str!("../../fixtures/half_points.json");
    /// A candidate whose projection is a complete intersection, not Pfaffian.
    pub const COMPLETE_INTERSECTION: &str = include_str!("../../fixtures/complete_intersection.json");
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn basket_point_validation() {
        assert!(BasketPoint::new(3, 1).is_ok());
        assert!(BasketPoint::new(4, 2).is_err());
        assert!(BasketPoint::new(3, 3).is_err());
        assert!(BasketPoint::new(1, 0).is_err());
        assert_eq!(BasketPoint::new(5, 2).unwrap().to_string(), "1/5(1,2,3)");
    }

    #[test]
    fn grassmannian_section_shape() {
        let n = IntPoly::from_pairs(&[(1, 0), (-5, 2), (5, 3), (-1, 5)]);
        let s = pfaffian_shape(&n).unwrap();
        assert_eq!(s, PfaffianShape { p: [2; 5], k: 5 });
        assert!(weight_matrix(&s).unwrap().upper().iter().all(|&d| d == 1));
    }

    #[test]
    fn shapes_without_symmetric_completion() {
        let n = IntPoly::from_pairs(&[(1, 0), (-1, 2), (-1, 3), (1, 4), (-1, 7)]);
        assert_eq!(pfaffian_shape(&n), Err(CandidateError::NoShape));
        let ci = IntPoly::from_pairs(&[(1, 0), (-3, 2), (3, 4), (-1, 6)]);
        assert_eq!(pfaffian_shape(&ci), Err(CandidateError::NoShape));
    }

    #[test]
    fn non_positive_entry_is_rejected() {
        let s = PfaffianShape { p: [3, 3, 2, 2, 2], k: 6 };
        assert!(matches!(weight_matrix(&s), Err(CandidateError::NonPositiveEntry { i: 1, j: 2, d: 0 })));
    }
}
