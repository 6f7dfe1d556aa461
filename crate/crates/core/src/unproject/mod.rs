//! Unprojection equations by linear algebra, double Jerry, and the
//! normal-form and extrasymmetric fixtures.

pub mod extrasymmetric;
pub mod normal_forms;

use std::collections::HashMap;

use thiserror::Error;

use crate::groebner::{Budget, GroebnerError, Ideal};
use crate::polyring::{DenseMatrix, Monomial, MonomialOrder, Poly, RingError, RingRef, VarImage};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum UnprojectError {
    #[error("D is not contained in Y: generator {index} of I_Y is not in I_D")]
    NotContained { index: usize },
    #[error("no consistent lift of the unprojection variable in degree {degree}")]
    NoConsistentLift { degree: u32 },
    #[error("unprojection data in degree {degree} is not unique: {dimension} independent lifts")]
    AmbiguousLift { degree: u32, dimension: usize },
    #[error("no long equation of degree {degree} in the colon ideal")]
    NoLongEquation { degree: u32 },
    #[error(transparent)]
    Groebner(#[from] GroebnerError),
    #[error(transparent)]
    Ring(#[from] RingError),
}

/// Equations of `X`: the generators of `I_Y` together with `s·x_l − g_l`.
#[derive(Clone, Debug)]
pub struct UnprojectionResult {
    /// Ring of `Y` with `s` appended as the last variable.
    pub ring: RingRef,
    pub s: usize,
    /// `g_l` in the ring of `Y`.
    pub numerators: Vec<Poly>,
    /// `I_Y` generators then `s·x_l − g_l`, in `ring`.
    pub equations: Vec<Poly>,
}

impl UnprojectionResult {
    pub fn ideal(&self) -> Ideal {
        Ideal::new(&self.ring, self.equations.clone())
    }
}

/// Tuples `(g_l)` of forms of degree `s_weight + wt x_l` with
/// `x_m·g_l ≡ x_l·g_m` modulo `I_Y`, coordinatised by standard monomials.
pub struct UnprojectionSpace {
    ideal: Ideal,
    xs: Vec<Poly>,
    degree: u32,
    /// Standard monomials of each `g_l`, with their column offset.
    blocks: Vec<(usize, Vec<Monomial>)>,
    constraints: DenseMatrix,
    trivial: Vec<Vec<u32>>,
    solutions: Vec<Vec<u32>>,
}

impl UnprojectionSpace {
    pub fn new(i_y: &Ideal, xs: &[Poly], degree: u32) -> Result<Self, UnprojectError> {
        let ring = i_y.ring().clone();
        let field = ring.field();
        let gb = i_y.groebner_basis()?.to_vec();
        let is_standard = |m: &Monomial| gb.iter().all(|g| !g.leading_monomial().unwrap().divides(m));
        let mut blocks = Vec::new();
        let mut offset = 0;
        for x in xs {
            let d = degree + x.weighted_degree()?;
            let basis: Vec<Monomial> = ring.monomials_of_degree(d).into_iter().filter(|m| is_standard(m)).collect();
            let len = basis.len();
            blocks.push((offset, basis));
            offset += len;
        }
        let cols = offset;
        // One row per (pair, monomial) of the normal form of x_m·g_l − x_l·g_m.
        let mut rows: HashMap<(usize, usize, Monomial), usize> = HashMap::new();
        let mut entries: Vec<(usize, usize, u32)> = Vec::new();
        for l in 0..xs.len() {
            for m in l + 1..xs.len() {
                for (this, other, sign) in [(l, m, 1u32), (m, l, field.neg(1))] {
                    let (off, basis) = &blocks[this];
                    for (n, b) in basis.iter().enumerate() {
                        let image = i_y.normal_form(&xs[other].mul_term(b, sign))?;
                        for t in image.terms() {
                            let next = rows.len();
                            let r = *rows.entry((l, m, t.mono)).or_insert(next);
                            entries.push((r, off + n, t.coeff));
                        }
                    }
                }
            }
        }
        let mut constraints = DenseMatrix::zeros(rows.len(), cols);
        for (r, c, v) in entries {
            constraints.set(r, c, field.add(constraints.get(r, c), v));
        }
        let solutions = constraints.nullspace(field);
        let mut space = UnprojectionSpace {
            ideal: i_y.clone(),
            xs: xs.to_vec(),
            degree,
            blocks,
            constraints,
            trivial: Vec::new(),
            solutions,
        };
        let mut trivial = Vec::new();
        for c in ring.monomials_of_degree(degree) {
            let c = Poly::monomial(&ring, c, 1);
            let g: Vec<Poly> = xs.iter().map(|x| x * &c).collect();
            trivial.push(space.coordinates(&g)?);
        }
        space.trivial = trivial;
        Ok(space)
    }

    fn coordinates(&self, g: &[Poly]) -> Result<Vec<u32>, UnprojectError> {
        let mut v = vec![0u32; self.constraints.cols()];
        for (l, gl) in g.iter().enumerate() {
            let (off, basis) = &self.blocks[l];
            for t in self.ideal.normal_form(gl)?.terms() {
                match basis.iter().position(|b| *b == t.mono) {
                    Some(n) => v[off + n] = t.coeff,
                    // Wrong degree: cannot be a solution.
                    None => return Ok(vec![u32::MAX; self.constraints.cols()]),
                }
            }
        }
        Ok(v)
    }

    fn rank(&self, vectors: &[Vec<u32>]) -> usize {
        if vectors.is_empty() {
            return 0;
        }
        DenseMatrix::from_rows(vectors).rank(self.ideal.ring().field())
    }

    /// Dimension of the solutions modulo those of the form `g_l = c·x_l`.
    pub fn dimension_mod_trivial(&self) -> usize {
        let mut all = self.trivial.clone();
        all.extend(self.solutions.iter().cloned());
        self.rank(&all) - self.rank(&self.trivial)
    }

    /// Whether `g` satisfies `x_m·g_l ≡ x_l·g_m` modulo `I_Y`.
    pub fn contains(&self, g: &[Poly]) -> Result<bool, UnprojectError> {
        let v = self.coordinates(g)?;
        if v.contains(&u32::MAX) {
            return Ok(false);
        }
        let field = self.ideal.ring().field();
        Ok((0..self.constraints.rows()).all(|r| {
            self.constraints.row(r).iter().zip(&v).fold(0, |acc, (&a, &b)| field.add(acc, field.mul(a, b))) == 0
        }))
    }

    /// Whether `g_l ≡ c·x_l` modulo `I_Y` for a single form `c`.
    pub fn is_trivial(&self, g: &[Poly]) -> Result<bool, UnprojectError> {
        let v = self.coordinates(g)?;
        if v.contains(&u32::MAX) {
            return Ok(false);
        }
        let mut all = self.trivial.clone();
        all.push(v);
        Ok(self.rank(&all) == self.rank(&self.trivial))
    }

    /// A solution that is not trivial, if any.
    pub fn nontrivial_solution(&self) -> Option<Vec<Poly>> {
        let base = self.rank(&self.trivial);
        let ring = self.ideal.ring();
        self.solutions.iter().find_map(|sol| {
            let mut all = self.trivial.clone();
            all.push(sol.clone());
            (self.rank(&all) > base).then(|| {
                self.blocks
                    .iter()
                    .map(|(off, basis)| {
                        let terms: Vec<_> = basis
                            .iter()
                            .enumerate()
                            .filter(|&(n, _)| sol[off + n] != 0)
                            .map(|(n, &b)| Poly::monomial(ring, b, sol[off + n]))
                            .collect();
                        terms.into_iter().fold(ring.zero(), |a, b| a + b)
                    })
                    .collect()
            })
        })
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn generators(&self) -> &[Poly] {
        &self.xs
    }
}

/// Unprojects `D = V(xs) ⊂ Y = V(i_y)`: a new variable `s` of weight
/// `s_weight` with `s·x_l = g_l` on `Y`.
pub fn unproject(i_y: &Ideal, xs: &[Poly], s_weight: u32, s_name: &str) -> Result<UnprojectionResult, UnprojectError> {
    let ring = i_y.ring().clone();
    let i_d = Ideal::new(&ring, xs.to_vec());
    for (index, f) in i_y.generators().iter().enumerate() {
        if !i_d.contains(f)? {
            return Err(UnprojectError::NotContained { index });
        }
    }
    let space = UnprojectionSpace::new(i_y, xs, s_weight)?;
    match space.dimension_mod_trivial() {
        0 => return Err(UnprojectError::NoConsistentLift { degree: s_weight }),
        1 => {}
        dimension => return Err(UnprojectError::AmbiguousLift { degree: s_weight, dimension }),
    }
    let numerators = space.nontrivial_solution().expect("a nontrivial solution exists");
    let ext = ring.append(&[s_name], &[s_weight], MonomialOrder::WeightedRevLex)?;
    let n = ring.nvars();
    let embed: Vec<VarImage> = (0..n).map(VarImage::Var).collect();
    let s = ext.var(n);
    let mut equations: Vec<Poly> = i_y.generators().iter().map(|f| f.remap(&ext, &embed)).collect();
    for (x, g) in xs.iter().zip(&numerators) {
        equations.push(&s * x.remap(&ext, &embed) - g.remap(&ext, &embed));
    }
    Ok(UnprojectionResult { ring: ext, s: n, numerators, equations })
}

/// Cross product of two vectors of polynomials.
pub fn cross(u: &[Poly; 3], v: &[Poly; 3]) -> [Poly; 3] {
    [
        &u[1] * &v[2] - &u[2] * &v[1],
        &u[2] * &v[0] - &u[0] * &v[2],
        &u[0] * &v[1] - &u[1] * &v[0],
    ]
}

/// The nine equations of a double Jerry unprojection.
#[derive(Clone, Debug)]
pub struct DoubleJerry {
    /// `xAy`, `xBy`, `s·y − (xA)×(xB)`, `t·x − (Ay)×(By)`.
    pub eight: Vec<Poly>,
    /// `s·t − G` with `G` free of `s` and `t`, reduced modulo the other eight.
    pub long: Poly,
}

impl DoubleJerry {
    pub fn equations(&self) -> Vec<Poly> {
        let mut all = self.eight.clone();
        all.push(self.long.clone());
        all
    }

    /// The long equation with terms cancelled greedily against monomial
    /// multiples of `xAy` and `xBy`, while this shortens it.
    pub fn sparse_long(&self) -> Poly {
        let field = self.long.ring().field();
        let ci = &self.eight[..2];
        let mut cur = self.long.clone();
        loop {
            let mut best: Option<Poly> = None;
            for g in ci {
                for u in cur.terms() {
                    for v in g.terms() {
                        let Some(m) = v.mono.quotient_of(&u.mono) else { continue };
                        let k = field.mul(u.coeff, field.inv(v.coeff));
                        let cand = &cur - &g.mul_term(&m, k);
                        if cand.len() < best.as_ref().map_or(cur.len(), Poly::len) {
                            best = Some(cand);
                        }
                    }
                }
            }
            match best {
                Some(b) => cur = b,
                None => return cur,
            }
        }
    }
}

/// Double Jerry for `3×3` matrices `a`, `b` over `ring`, with `x`, `y`, `s`, `t`
/// given as variable indices. The long equation comes from `(eight : x_1)`.
pub fn double_jerry(
    ring: &RingRef,
    a: &[[Poly; 3]; 3],
    b: &[[Poly; 3]; 3],
    x: [usize; 3],
    y: [usize; 3],
    s: usize,
    t: usize,
    budget: &Budget,
) -> Result<DoubleJerry, UnprojectError> {
    let xv: [Poly; 3] = x.map(|i| ring.var(i));
    let yv: [Poly; 3] = y.map(|i| ring.var(i));
    let row_times = |m: &[[Poly; 3]; 3]| -> [Poly; 3] {
        std::array::from_fn(|j| (0..3).fold(ring.zero(), |acc, i| acc + &xv[i] * &m[i][j]))
    };
    let times_col = |m: &[[Poly; 3]; 3]| -> [Poly; 3] {
        std::array::from_fn(|i| (0..3).fold(ring.zero(), |acc, j| acc + &m[i][j] * &yv[j]))
    };
    let (xa, xb, ay, by) = (row_times(a), row_times(b), times_col(a), times_col(b));
    let dot = |u: &[Poly; 3], v: &[Poly; 3]| (0..3).fold(ring.zero(), |acc, i| acc + &u[i] * &v[i]);
    let mut eight = vec![dot(&xa, &yv), dot(&xb, &yv)];
    let sv = ring.var(s);
    let tv = ring.var(t);
    for (yi, c) in yv.iter().zip(cross(&xa, &xb)) {
        eight.push(&sv * yi - c);
    }
    for (xi, c) in xv.iter().zip(cross(&ay, &by)) {
        eight.push(&tv * xi - c);
    }
    let i8 = Ideal::new(ring, eight.clone()).with_budget(*budget);
    let colon = i8.colon(&xv[0])?;
    let degree = ring.weights()[s] + ring.weights()[t];
    let st = ring.monomial(&unit_exponents(ring.nvars(), &[s, t]));
    // Degree-`degree` parts of both ideals, restricted to s·t and monomials free of s, t.
    let allowed = |m: &Monomial| *m == st || (m.exponent(s) == 0 && m.exponent(t) == 0);
    let colon_part = degree_part(ring, colon.groebner_basis()?, degree);
    let small_part = degree_part(ring, i8.groebner_basis()?, degree);
    let colon_allowed = restrict_to(ring, &colon_part, &allowed);
    let small_allowed = restrict_to(ring, &small_part, &allowed);
    let field = ring.field();
    let long = colon_allowed
        .into_iter()
        .find(|f| f.coefficient(&st) != 0)
        .ok_or(UnprojectError::NoLongEquation { degree })?;
    let long = long.scale(field.inv(long.coefficient(&st)));
    let long = reduce_by_echelon(&long, &small_allowed);
    Ok(DoubleJerry { eight, long })
}

fn unit_exponents(n: usize, vars: &[usize]) -> Vec<u32> {
    let mut e = vec![0u32; n];
    for &v in vars {
        e[v] += 1;
    }
    e
}

/// A basis of the degree-`d` part of the ideal generated by homogeneous `gens`.
fn degree_part(ring: &RingRef, gens: &[Poly], d: u32) -> Vec<Poly> {
    let mut out = Vec::new();
    for g in gens {
        let Ok(e) = g.weighted_degree() else { continue };
        if e > d {
            continue;
        }
        for m in ring.monomials_of_degree(d - e) {
            out.push(g.mul_term(&m, 1));
        }
    }
    out
}

/// Echelon basis of the elements of `span(polys)` supported on `allowed` monomials.
fn restrict_to(ring: &RingRef, polys: &[Poly], allowed: &dyn Fn(&Monomial) -> bool) -> Vec<Poly> {
    let field = ring.field();
    let mut monos: Vec<Monomial> = polys.iter().flat_map(|p| p.terms().iter().map(|t| t.mono)).collect();
    monos.sort_by(|a, b| ring.cmp(b, a));
    monos.dedup();
    // Forbidden monomials first, so rows pivoting later avoid them entirely.
    let (forbidden, ok): (Vec<Monomial>, Vec<Monomial>) = monos.into_iter().partition(|m| !allowed(m));
    let columns: Vec<Monomial> = forbidden.iter().chain(ok.iter()).copied().collect();
    let index: HashMap<Monomial, usize> = columns.iter().enumerate().map(|(i, m)| (*m, i)).collect();
    let mut mat = DenseMatrix::zeros(polys.len(), columns.len());
    for (r, p) in polys.iter().enumerate() {
        for t in p.terms() {
            mat.set(r, index[&t.mono], t.coeff);
        }
    }
    let pivots = mat.rref(field);
    pivots
        .iter()
        .enumerate()
        .filter(|&(_, &c)| c >= forbidden.len())
        .map(|(r, _)| {
            let terms: Vec<Poly> = (0..columns.len())
                .filter(|&c| mat.get(r, c) != 0)
                .map(|c| Poly::monomial(ring, columns[c], mat.get(r, c)))
                .collect();
            terms.into_iter().fold(ring.zero(), |a, b| a + b)
        })
        .collect()
}

/// Reduces `f` by an echelon basis: clears each basis element's leading monomial.
fn reduce_by_echelon(f: &Poly, basis: &[Poly]) -> Poly {
    let field = f.ring().field();
    let mut f = f.clone();
    for g in basis {
        let lm = g.leading_monomial().expect("nonzero basis element");
        let c = f.coefficient(&lm);
        if c != 0 {
            f = f - g.scale(field.mul(c, field.inv(g.leading_coeff())));
        }
    }
    f
}
