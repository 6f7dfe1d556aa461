use std::collections::HashMap;
use std::sync::OnceLock;

use rand::Rng;

use crate::polyring::{DenseMatrix, Monomial, MonomialOrder, Poly, RingRef, UPoly, VarImage};

use super::{Budget, Buchberger, GroebnerError};

/// Ideal in a polynomial ring, with its Gröbner basis cached on demand.
pub struct Ideal {
    ring: RingRef,
    gens: Vec<Poly>,
    budget: Budget,
    gb: OnceLock<Vec<Poly>>,
}

impl Clone for Ideal {
    fn clone(&self) -> Self {
        let gb = OnceLock::new();
        if let Some(g) = self.gb.get() {
            let _ = gb.set(g.clone());
        }
        Ideal {
            ring: self.ring.clone(),
            gens: self.gens.clone(),
            budget: self.budget,
            gb,
        }
    }
}

impl std::fmt::Debug for Ideal {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Ideal")
            .field("ring", &self.ring.to_string())
            .field("gens", &self.gens)
            .finish()
    }
}

impl Ideal {
    /// Zero generators are dropped; the rest are viewed in `ring`.
    pub fn new(ring: &RingRef, gens: impl IntoIterator<Item = Poly>) -> Ideal {
        let gens = gens
            .into_iter()
            .filter(|g| !g.is_zero())
            .map(|g| g.in_ring(ring))
            .collect();
        Ideal {
            ring: ring.clone(),
            gens,
            budget: Budget::unlimited(),
            gb: OnceLock::new(),
        }
    }

    pub fn with_budget(mut self, budget: Budget) -> Ideal {
        self.budget = budget;
        self
    }

    pub fn ring(&self) -> &RingRef {
        &self.ring
    }

    pub fn generators(&self) -> &[Poly] {
        &self.gens
    }

    pub fn budget(&self) -> Budget {
        self.budget
    }

    pub fn is_homogeneous(&self) -> bool {
        self.gens.iter().all(|g| g.is_homogeneous())
    }

    /// Sum with further generators.
    pub fn plus(&self, extra: impl IntoIterator<Item = Poly>) -> Ideal {
        let mut gens = self.gens.clone();
        gens.extend(extra);
        Ideal::new(&self.ring, gens).with_budget(self.budget)
    }

    /// Reduced Gröbner basis for the ring's term order.
    pub fn groebner_basis(&self) -> Result<&[Poly], GroebnerError> {
        if let Some(gb) = self.gb.get() {
            return Ok(gb);
        }
        let mut engine = Buchberger::new(&self.ring, &self.gens);
        engine.run(&self.budget)?;
        let basis = engine.into_reduced_basis();
        Ok(self.gb.get_or_init(|| basis))
    }

    /// The same ideal in a ring with identical variables and another order.
    pub fn in_order(&self, order: MonomialOrder) -> Ideal {
        let ring = self.ring.reordered(order);
        Ideal::new(&ring, self.gens.iter().cloned()).with_budget(self.budget)
    }

    pub fn is_unit(&self) -> Result<bool, GroebnerError> {
        Ok(self
            .groebner_basis()?
            .iter()
            .any(|g| g.leading_monomial().is_some_and(|m| m.is_one())))
    }

    pub fn normal_form(&self, f: &Poly) -> Result<Poly, GroebnerError> {
        let gb = self.groebner_basis()?;
        Ok(normal_form(&self.ring, gb, f))
    }

    pub fn contains(&self, f: &Poly) -> Result<bool, GroebnerError> {
        Ok(self.normal_form(f)?.is_zero())
    }

    pub fn contains_all(&self, fs: &[Poly]) -> Result<bool, GroebnerError> {
        for f in fs {
            if !self.contains(f)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Equality of ideals via mutual containment.
    pub fn same_as(&self, other: &Ideal) -> Result<bool, GroebnerError> {
        Ok(self.contains_all(other.generators())? && other.contains_all(self.generators())?)
    }

    pub fn leading_monomials(&self) -> Result<Vec<Monomial>, GroebnerError> {
        Ok(self
            .groebner_basis()?
            .iter()
            .filter_map(|g| g.leading_monomial())
            .collect())
    }

    /// `f ∈ √I`. For homogeneous `I` and a variable `f` this is decided by
    /// dehomogenising at `f = 1`; otherwise by the auxiliary variable trick.
    pub fn radical_contains(&self, f: &Poly) -> Result<bool, GroebnerError> {
        if f.is_zero() {
            return Ok(true);
        }
        if let Some(v) = single_variable(f) {
            if self.is_homogeneous() {
                return self.dehomogenized_at(v).is_unit();
            }
        }
        let ext = self
            .ring
            .prepend(&["_u"], &[1], MonomialOrder::WeightedRevLex)?;
        let shift: Vec<VarImage> = (0..self.ring.nvars()).map(|i| VarImage::Var(i + 1)).collect();
        let mut gens: Vec<Poly> = self.gens.iter().map(|g| g.remap(&ext, &shift)).collect();
        let u = ext.var(0);
        gens.push(ext.one() - u * f.remap(&ext, &shift));
        Ideal::new(&ext, gens).with_budget(self.budget).is_unit()
    }

    /// Image of the ideal under `x_v = 1`, in the ring without `x_v`.
    pub fn dehomogenized_at(&self, v: usize) -> Ideal {
        let keep: Vec<usize> = (0..self.ring.nvars()).filter(|&i| i != v).collect();
        let sub = self.ring.subring(&keep, MonomialOrder::WeightedRevLex);
        let images: Vec<VarImage> = (0..self.ring.nvars())
            .map(|i| match i.cmp(&v) {
                std::cmp::Ordering::Less => VarImage::Var(i),
                std::cmp::Ordering::Equal => VarImage::Const(1),
                std::cmp::Ordering::Greater => VarImage::Var(i - 1),
            })
            .collect();
        let src: Vec<Poly> = match self.gb.get() {
            Some(gb) => gb.clone(),
            None => self.gens.clone(),
        };
        Ideal::new(&sub, src.iter().map(|g| g.remap(&sub, &images))).with_budget(self.budget)
    }

    /// `(I : f)`.
    pub fn colon(&self, f: &Poly) -> Result<Ideal, GroebnerError> {
        if f.is_zero() {
            return Err(GroebnerError::ZeroPolynomial);
        }
        if let Some(v) = single_variable(f) {
            if self.is_homogeneous() {
                return self.divide_out_variable(v, Some(1));
            }
        }
        // I ∩ (f) by eliminating t from t·I + (1 − t)·f.
        let ext = self
            .ring
            .prepend(&["_t"], &[1], MonomialOrder::Elimination { block: 1 })?;
        let shift: Vec<VarImage> = (0..self.ring.nvars()).map(|i| VarImage::Var(i + 1)).collect();
        let t = ext.var(0);
        let fe = f.remap(&ext, &shift);
        let mut gens: Vec<Poly> = self.gens.iter().map(|g| &t * g.remap(&ext, &shift)).collect();
        gens.push(&(ext.one() - &t) * &fe);
        let elim = Ideal::new(&ext, gens).with_budget(self.budget);
        let back: Vec<VarImage> = std::iter::once(VarImage::Zero)
            .chain((0..self.ring.nvars()).map(VarImage::Var))
            .collect();
        let mut quotients = Vec::new();
        for g in elim.groebner_basis()? {
            if g.uses_variable(0) {
                continue;
            }
            let g = g.remap(&self.ring, &back);
            quotients.push(g.div_exact(f).expect("elements of I ∩ (f) are divisible by f"));
        }
        Ok(Ideal::new(&self.ring, quotients).with_budget(self.budget))
    }

    /// `(I : f^∞)`.
    pub fn saturate(&self, f: &Poly) -> Result<Ideal, GroebnerError> {
        if f.is_zero() {
            return Err(GroebnerError::ZeroPolynomial);
        }
        if let Some(v) = single_variable(f) {
            if self.is_homogeneous() {
                return self.divide_out_variable(v, None);
            }
        }
        let mut current = self.clone();
        loop {
            let next = current.colon(f)?;
            if current.contains_all(next.generators())? {
                return Ok(current);
            }
            current = next;
        }
    }

    /// For homogeneous ideals: a basis in weighted revlex with `v` last has
    /// the property that `v` divides a basis element iff it divides its
    /// leading term, so dividing out powers of `v` gives `(I : v^k)`.
    fn divide_out_variable(&self, v: usize, limit: Option<u32>) -> Result<Ideal, GroebnerError> {
        let n = self.ring.nvars();
        let perm: Vec<usize> = (0..n).filter(|&i| i != v).chain(std::iter::once(v)).collect();
        let prm = self.ring.subring(&perm, MonomialOrder::WeightedRevLex);
        let mut fwd = vec![VarImage::Zero; n];
        let mut back = vec![VarImage::Zero; n];
        for (new, &old) in perm.iter().enumerate() {
            fwd[old] = VarImage::Var(new);
            back[new] = VarImage::Var(old);
        }
        let moved = Ideal::new(&prm, self.gens.iter().map(|g| g.remap(&prm, &fwd))).with_budget(self.budget);
        let last = n - 1;
        let w = prm.weights()[last];
        let mut out = Vec::new();
        for g in moved.groebner_basis()? {
            let k = g.terms().iter().map(|t| t.mono.exponent(last)).min().unwrap_or(0);
            let k = limit.map_or(k, |l| k.min(l));
            let divided: Vec<_> = g
                .terms()
                .iter()
                .map(|t| crate::polyring::Term {
                    mono: t.mono.with_exponent(last, t.mono.exponent(last) - k, w),
                    coeff: t.coeff,
                })
                .collect();
            out.push(Poly::from_terms(&prm, divided).remap(&self.ring, &back));
        }
        Ok(Ideal::new(&self.ring, out).with_budget(self.budget))
    }

    /// Intersection with the subring on the variables not listed.
    pub fn eliminate(&self, vars: &[usize]) -> Result<Ideal, GroebnerError> {
        let n = self.ring.nvars();
        let rest: Vec<usize> = (0..n).filter(|i| !vars.contains(i)).collect();
        let perm: Vec<usize> = vars.iter().copied().chain(rest.iter().copied()).collect();
        let prm = self.ring.subring(&perm, MonomialOrder::Elimination { block: vars.len() });
        let mut fwd = vec![VarImage::Zero; n];
        for (new, &old) in perm.iter().enumerate() {
            fwd[old] = VarImage::Var(new);
        }
        let moved = Ideal::new(&prm, self.gens.iter().map(|g| g.remap(&prm, &fwd))).with_budget(self.budget);
        let sub = self.ring.subring(&rest, MonomialOrder::WeightedRevLex);
        let back: Vec<VarImage> = (0..n)
            .map(|i| if i < vars.len() { VarImage::Zero } else { VarImage::Var(i - vars.len()) })
            .collect();
        let block_mask: u32 = (0..vars.len()).fold(0, |m, i| m | (1 << i));
        let kept: Vec<Poly> = moved
            .groebner_basis()?
            .iter()
            .filter(|g| g.support_mask() & block_mask == 0)
            .map(|g| g.remap(&sub, &back))
            .collect();
        Ok(Ideal::new(&sub, kept).with_budget(self.budget))
    }

    /// Krull dimension of the quotient ring (−1 for the unit ideal).
    pub fn dimension(&self) -> Result<i32, GroebnerError> {
        let lms = self.leading_monomials()?;
        if lms.iter().any(|m| m.is_one()) {
            return Ok(-1);
        }
        let supports: Vec<u32> = lms.iter().map(|m| m.support_mask()).collect();
        Ok(max_independent_set(self.ring.nvars(), &supports) as i32)
    }

    /// Standard monomials of a zero-dimensional ideal.
    pub fn standard_monomials(&self) -> Result<Vec<Monomial>, GroebnerError> {
        let lms = self.leading_monomials()?;
        if lms.iter().any(|m| m.is_one()) {
            return Ok(Vec::new());
        }
        let n = self.ring.nvars();
        let mut bounds = vec![None; n];
        for m in &lms {
            let mask = m.support_mask();
            if mask.count_ones() == 1 {
                let v = mask.trailing_zeros() as usize;
                let e = m.exponent(v);
                bounds[v] = Some(bounds[v].map_or(e, |b: u32| b.min(e)));
            }
        }
        let bounds: Vec<u32> = bounds
            .into_iter()
            .collect::<Option<Vec<u32>>>()
            .ok_or(GroebnerError::NotZeroDimensional)?;
        let mut out = Vec::new();
        let mut exps = vec![0u32; n];
        self.collect_standard(0, &bounds, &lms, &mut exps, &mut out);
        out.sort_by(|a, b| self.ring.cmp(a, b));
        Ok(out)
    }

    fn collect_standard(&self, i: usize, bounds: &[u32], lms: &[Monomial], exps: &mut Vec<u32>, out: &mut Vec<Monomial>) {
        if i == bounds.len() {
            let m = self.ring.monomial(exps);
            if !lms.iter().any(|l| l.divides(&m)) {
                out.push(m);
            }
            return;
        }
        for e in 0..bounds[i] {
            exps[i] = e;
            // Prune: if the partial monomial is already divisible, so is every extension.
            let partial = self.ring.monomial(exps);
            if lms.iter().any(|l| l.divides(&partial)) {
                break;
            }
            self.collect_standard(i + 1, bounds, lms, exps, out);
        }
        exps[i] = 0;
    }

    /// Vector-space dimension of a zero-dimensional quotient.
    pub fn length_0dim(&self) -> Result<usize, GroebnerError> {
        if self.dimension()? > 0 {
            return Err(GroebnerError::NotZeroDimensional);
        }
        Ok(self.standard_monomials()?.len())
    }

    /// Reducedness of a zero-dimensional quotient: the minimal polynomial
    /// of a random linear form must be squarefree of degree equal to the
    /// length. A non-separating form is retried up to `attempts` times.
    pub fn is_reduced_0dim<R: Rng + ?Sized>(&self, rng: &mut R, attempts: usize) -> Result<bool, GroebnerError> {
        let basis = self.standard_monomials()?;
        if self.dimension()? > 0 {
            return Err(GroebnerError::NotZeroDimensional);
        }
        let len = basis.len();
        if len == 0 {
            return Ok(true);
        }
        let index: HashMap<Monomial, usize> = basis.iter().enumerate().map(|(i, m)| (*m, i)).collect();
        let field = self.ring.field();
        let p = field.characteristic();
        let gb = self.groebner_basis()?;
        let to_vec = |f: &Poly| -> Vec<u32> {
            let mut v = vec![0u32; len];
            for t in f.terms() {
                v[index[&t.mono]] = t.coeff;
            }
            v
        };
        for _ in 0..attempts.max(1) {
            let mut ell = self.ring.zero();
            for i in 0..self.ring.nvars() {
                ell = ell + self.ring.var(i).scale(rng.gen_range(1..p));
            }
            let mut power = self.ring.one();
            let mut columns = vec![to_vec(&power)];
            let minpoly = loop {
                power = normal_form(&self.ring, gb, &(&power * &ell));
                columns.push(to_vec(&power));
                let m = columns.len();
                let mut mat = DenseMatrix::zeros(len, m);
                for (j, c) in columns.iter().enumerate() {
                    for (i, &x) in c.iter().enumerate() {
                        mat.set(i, j, x);
                    }
                }
                let ker = mat.nullspace(field);
                if let Some(k) = ker.into_iter().next() {
                    break UPoly::new(k);
                }
            };
            if !minpoly.is_squarefree(field) {
                return Ok(false);
            }
            if minpoly.degree() == Some(len) {
                return Ok(true);
            }
        }
        Ok(false)
    }

    /// Number of standard monomials of weighted degree `d`.
    pub fn hilbert_function(&self, d: u32) -> Result<usize, GroebnerError> {
        let lms = self.leading_monomials()?;
        Ok(self
            .ring
            .monomials_of_degree(d)
            .into_iter()
            .filter(|m| !lms.iter().any(|l| l.divides(m)))
            .count())
    }
}

/// Remainder of `f` on division by a Gröbner basis.
pub(crate) fn normal_form(ring: &RingRef, gb: &[Poly], f: &Poly) -> Poly {
    let f = f.in_ring(ring);
    let field = ring.field();
    let lms: Vec<(Monomial, u32)> = gb
        .iter()
        .map(|g| {
            let m = g.leading_monomial().unwrap();
            (m, m.support_mask())
        })
        .collect();
    let invs: Vec<u32> = gb.iter().map(|g| field.inv(g.leading_coeff())).collect();
    let mut bucket = crate::polyring::GeoBucket::new(ring);
    bucket.add_scaled(f.terms(), 1, &Monomial::ONE);
    let mut rem = Vec::new();
    while let Some(t) = bucket.pop_leading() {
        let mask = t.mono.support_mask();
        match lms.iter().position(|(m, mk)| mk & !mask == 0 && m.divides(&t.mono)) {
            Some(k) => {
                let q = lms[k].0.quotient_of(&t.mono).unwrap();
                let c = field.mul(t.coeff, invs[k]);
                bucket.add_scaled(&gb[k].terms()[1..], field.neg(c), &q);
            }
            None => rem.push(t),
        }
    }
    Poly::from_terms(ring, rem)
}

fn single_variable(f: &Poly) -> Option<usize> {
    if f.len() != 1 {
        return None;
    }
    let m = f.terms()[0].mono;
    (m.total_degree() == 1).then(|| m.support_mask().trailing_zeros() as usize)
}

fn max_independent_set(n: usize, supports: &[u32]) -> usize {
    fn dfs(i: usize, n: usize, current: u32, size: usize, supports: &[u32], best: &mut usize) {
        if size + (n - i) <= *best {
            return;
        }
        if i == n {
            *best = size;
            return;
        }
        let with = current | (1 << i);
        if supports.iter().all(|s| s & !with != 0) {
            dfs(i + 1, n, with, size + 1, supports, best);
        }
        dfs(i + 1, n, current, size, supports, best);
    }
    let mut best = 0;
    dfs(0, n, 0, 0, supports, &mut best);
    best
}

/// Reduced Gröbner basis of `gens` with respect to `order`.
pub fn groebner_basis(ideal: &Ideal, order: MonomialOrder) -> Result<Vec<Poly>, GroebnerError> {
    if *ideal.ring().order() == order {
        return Ok(ideal.groebner_basis()?.to_vec());
    }
    Ok(ideal.in_order(order).groebner_basis()?.to_vec())
}

pub fn ideal_member(f: &Poly, ideal: &Ideal) -> Result<bool, GroebnerError> {
    ideal.contains(f)
}

pub fn radical_member(f: &Poly, ideal: &Ideal) -> Result<bool, GroebnerError> {
    ideal.radical_contains(f)
}

pub fn colon(ideal: &Ideal, f: &Poly) -> Result<Ideal, GroebnerError> {
    ideal.colon(f)
}

pub fn saturate(ideal: &Ideal, f: &Poly) -> Result<Ideal, GroebnerError> {
    ideal.saturate(f)
}

pub fn dimension(ideal: &Ideal) -> Result<i32, GroebnerError> {
    ideal.dimension()
}

pub fn length_0dim(ideal: &Ideal) -> Result<usize, GroebnerError> {
    ideal.length_0dim()
}

/// Reducedness with a deterministic generator for the random linear form.
pub fn is_reduced_0dim(ideal: &Ideal, seed: u64) -> Result<bool, GroebnerError> {
    use rand::SeedableRng;
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    ideal.is_reduced_0dim(&mut rng, 5)
}
