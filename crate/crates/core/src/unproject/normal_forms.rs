//! Small Tom and Jerry matrices in normal form.

use crate::formats::SkewMatrix;
use crate::polyring::{Poly, Ring, RingError, RingRef};

/// A skew matrix together with the generators of the plane it contains.
#[derive(Clone, Debug)]
pub struct NormalForm {
    pub ring: RingRef,
    pub matrix: SkewMatrix,
    pub plane: Vec<Poly>,
    /// Weight of the unprojection variable.
    pub s_weight: u32,
}

/// Tom₁ with `m23 = m45 = 0`: row one `y1..y4`, the other entries `x1..x4`.
pub fn tom_binomial(prime: u32) -> Result<NormalForm, RingError> {
    let ring = Ring::standard(&["y1", "y2", "y3", "y4", "x1", "x2", "x3", "x4"], prime)?;
    let matrix = SkewMatrix::parse_upper(&ring, 5, &["y1", "y2", "y3", "y4", "0", "x1", "x2", "x3", "x4", "0"])?;
    let plane = ring.polys(&["x1", "x2", "x3", "x4"]);
    Ok(NormalForm { ring, matrix, plane, s_weight: 1 })
}

/// The array whose `2×2` minors are the Pfaffians of [`tom_binomial`], with `corner` in the starred slot.
pub fn tom_binomial_array(ring: &RingRef, corner: Poly) -> [[Poly; 3]; 3] {
    let v = |n: &str| ring.named(n);
    [
        [corner, v("y3"), v("y4")],
        [v("y1"), v("x1"), v("x2")],
        [v("y2"), v("x3"), v("x4")],
    ]
}

/// Jer₁₂ with `m15 = m23 = 0` and `m24 = m14`; the plane is `z1 = z2 = z3 = t = 0`.
pub fn jerry_cube(prime: u32) -> Result<NormalForm, RingError> {
    let ring = Ring::standard(&["t", "z1", "z2", "z3", "y1", "y2", "y3"], prime)?;
    let matrix = SkewMatrix::parse_upper(&ring, 5, &["t", "z1", "z2", "0", "0", "z2", "z3", "y3", "y2", "y1"])?;
    let plane = ring.polys(&["z1", "z2", "z3", "t"]);
    Ok(NormalForm { ring, matrix, plane, s_weight: 1 })
}

/// Tom₁ with symbolic tokens: row one `b, K, L, M`, then `c, e, g`, `f, λe`, `μc + νe`.
/// The plane is `c = e = f = g = 0`.
pub fn tom_tokens(prime: u32) -> Result<NormalForm, RingError> {
    let names = ["b", "K", "L", "M", "c", "e", "f", "g", "lambda", "mu", "nu"];
    let weights = [2, 2, 3, 4, 3, 4, 4, 5, 1, 3, 2];
    let ring = Ring::new(&names, &weights, prime)?;
    let matrix =
        SkewMatrix::parse_upper(&ring, 5, &["b", "K", "L", "M", "c", "e", "g", "f", "lambda*e", "mu*c + nu*e"])?;
    let plane = ring.polys(&["c", "e", "f", "g"]);
    Ok(NormalForm { ring, matrix, plane, s_weight: 3 })
}

/// All `2×2` minors of a matrix of polynomials.
pub fn minors2(m: &[[Poly; 3]; 3]) -> Vec<Poly> {
    let mut out = Vec::new();
    for r in 0..3 {
        for s in r + 1..3 {
            for c in 0..3 {
                for d in c + 1..3 {
                    out.push(&m[r][c] * &m[s][d] - &m[r][d] * &m[s][c]);
                }
            }
        }
    }
    out
}
