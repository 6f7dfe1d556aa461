use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

use rand::Rng;

use super::field::PrimeField;
use super::monomial::{Monomial, MAX_VARS};
use super::order::MonomialOrder;
use super::poly::{Poly, Term};
use super::RingError;

/// Positive integer weights, one per variable.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct WeightVector(Vec<u32>);

impl WeightVector {
    pub fn new(weights: Vec<u32>) -> Result<Self, RingError> {
        if weights.contains(&0) {
            return Err(RingError::ZeroWeight);
        }
        if weights.len() > MAX_VARS {
            return Err(RingError::TooManyVariables(weights.len()));
        }
        Ok(WeightVector(weights))
    }

    pub fn as_slice(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

/// Graded polynomial ring GF(p)[v_1..v_n] with a fixed term order.
#[derive(Debug, PartialEq, Eq, Hash)]
pub struct Ring {
    names: Vec<String>,
    weights: WeightVector,
    field: PrimeField,
    order: MonomialOrder,
}

pub type RingRef = Arc<Ring>;

impl Ring {
    pub fn new<S: AsRef<str>>(names: &[S], weights: &[u32], prime: u32) -> Result<RingRef, RingError> {
        Self::with_field(names, weights, PrimeField::new(prime)?, MonomialOrder::default())
    }

    /// All variables of weight one.
    pub fn standard<S: AsRef<str>>(names: &[S], prime: u32) -> Result<RingRef, RingError> {
        Self::new(names, &vec![1; names.len()], prime)
    }

    pub fn with_field<S: AsRef<str>>(
        names: &[S],
        weights: &[u32],
        field: PrimeField,
        order: MonomialOrder,
    ) -> Result<RingRef, RingError> {
        if names.len() != weights.len() {
            return Err(RingError::LengthMismatch {
                names: names.len(),
                weights: weights.len(),
            });
        }
        let names: Vec<String> = names.iter().map(|s| s.as_ref().to_string()).collect();
        for (i, n) in names.iter().enumerate() {
            if n.is_empty() || names[..i].contains(n) {
                return Err(RingError::BadVariableName(n.clone()));
            }
        }
        Ok(Arc::new(Ring {
            names,
            weights: WeightVector::new(weights.to_vec())?,
            field,
            order,
        }))
    }

    /// Same variables, different term order.
    pub fn reordered(&self, order: MonomialOrder) -> RingRef {
        Arc::new(Ring {
            names: self.names.clone(),
            weights: self.weights.clone(),
            field: self.field,
            order,
        })
    }

    /// New ring whose variables are `front` followed by the current ones.
    pub fn prepend<S: AsRef<str>>(&self, front: &[S], weights: &[u32], order: MonomialOrder) -> Result<RingRef, RingError> {
        let mut names: Vec<String> = front.iter().map(|s| s.as_ref().to_string()).collect();
        names.extend(self.names.iter().cloned());
        let mut w = weights.to_vec();
        w.extend_from_slice(self.weights());
        Ring::with_field(&names, &w, self.field, order)
    }

    /// New ring whose variables are the current ones followed by `back`.
    pub fn append<S: AsRef<str>>(&self, back: &[S], weights: &[u32], order: MonomialOrder) -> Result<RingRef, RingError> {
        let mut names = self.names.clone();
        names.extend(back.iter().map(|s| s.as_ref().to_string()));
        let mut w = self.weights().to_vec();
        w.extend_from_slice(weights);
        Ring::with_field(&names, &w, self.field, order)
    }

    /// Ring on the listed variables (by index), keeping weights and names.
    pub fn subring(&self, vars: &[usize], order: MonomialOrder) -> RingRef {
        let names: Vec<&str> = vars.iter().map(|&i| self.names[i].as_str()).collect();
        let w: Vec<u32> = vars.iter().map(|&i| self.weights()[i]).collect();
        Ring::with_field(&names, &w, self.field, order).expect("subring of a valid ring")
    }

    pub fn nvars(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn weights(&self) -> &[u32] {
        self.weights.as_slice()
    }

    pub fn weight_vector(&self) -> &WeightVector {
        &self.weights
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn prime(&self) -> u32 {
        self.field.characteristic()
    }

    pub fn order(&self) -> &MonomialOrder {
        &self.order
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    #[inline]
    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        self.order.compare(a, b, self.weights())
    }

    pub fn monomial(&self, exps: &[u32]) -> Monomial {
        assert_eq!(exps.len(), self.nvars(), "exponent arity");
        Monomial::from_exponents(exps, self.weights())
    }

    pub fn var_monomial(&self, i: usize) -> Monomial {
        let mut e = vec![0; self.nvars()];
        e[i] = 1;
        self.monomial(&e)
    }

    pub fn lcm(&self, a: &Monomial, b: &Monomial) -> Monomial {
        a.lcm(b, self.weights())
    }

    /// Weighted degree of a monomial recomputed from its exponents.
    pub fn degree_of(&self, m: &Monomial) -> u32 {
        (0..self.nvars()).map(|i| m.exponent(i) * self.weights()[i]).sum()
    }

    /// All monomials of weighted degree `d`, in a fixed enumeration order.
    pub fn monomials_of_degree(&self, d: u32) -> Vec<Monomial> {
        let mut out = Vec::new();
        let mut exps = vec![0u32; self.nvars()];
        self.enumerate(0, d, &mut exps, &mut out);
        out
    }

    fn enumerate(&self, i: usize, left: u32, exps: &mut Vec<u32>, out: &mut Vec<Monomial>) {
        let n = self.nvars();
        if i == n {
            if left == 0 {
                out.push(self.monomial(exps));
            }
            return;
        }
        let w = self.weights()[i];
        if i == n - 1 {
            if left.is_multiple_of(w) {
                exps[i] = left / w;
                out.push(self.monomial(exps));
                exps[i] = 0;
            }
            return;
        }
        for e in (0..=left / w).rev() {
            exps[i] = e;
            self.enumerate(i + 1, left - e * w, exps, out);
        }
        exps[i] = 0;
    }

    /// Whether any monomial of weighted degree `d` exists.
    pub fn has_monomial_of_degree(&self, d: u32) -> bool {
        // Coin-change reachability over the weights.
        let mut reach = vec![false; d as usize + 1];
        reach[0] = true;
        for &w in self.weights() {
            for s in w as usize..=d as usize {
                if reach[s - w as usize] {
                    reach[s] = true;
                }
            }
        }
        reach[d as usize]
    }

    pub fn zero(self: &RingRef) -> Poly {
        Poly::zero(self)
    }

    pub fn one(self: &RingRef) -> Poly {
        Poly::constant(self, 1)
    }

    pub fn constant(self: &RingRef, c: i64) -> Poly {
        Poly::constant(self, self.field.from_i64(c))
    }

    pub fn var(self: &RingRef, i: usize) -> Poly {
        Poly::monomial(self, self.var_monomial(i), 1)
    }

    pub fn vars(self: &RingRef) -> Vec<Poly> {
        (0..self.nvars()).map(|i| self.var(i)).collect()
    }

    /// Variable by name; panics when absent (intended for fixtures).
    pub fn named(self: &RingRef, name: &str) -> Poly {
        let i = self
            .var_index(name)
            .unwrap_or_else(|| panic!("no variable named {name}"));
        self.var(i)
    }

    /// Sum over all monomials of degree `d` with uniform random coefficients.
    pub fn general_form<R: Rng + ?Sized>(self: &RingRef, d: u32, rng: &mut R) -> Poly {
        let p = self.prime();
        let mut terms: Vec<Term> = self
            .monomials_of_degree(d)
            .into_iter()
            .filter_map(|m| {
                let c = rng.gen_range(0..p);
                (c != 0).then_some(Term { mono: m, coeff: c })
            })
            .collect();
        terms.sort_by(|a, b| self.cmp(&b.mono, &a.mono));
        Poly::from_sorted_terms(self, terms)
    }

    pub fn parse(self: &RingRef, src: &str) -> Result<Poly, RingError> {
        super::parse::parse_poly(self, src)
    }

    /// Parse many polynomials; panics on error (intended for fixtures).
    pub fn polys(self: &RingRef, srcs: &[&str]) -> Vec<Poly> {
        srcs.iter()
            .map(|s| self.parse(s).unwrap_or_else(|e| panic!("{s}: {e}")))
            .collect()
    }
}

impl fmt::Display for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({})[", self.prime())?;
        for (i, (n, w)) in self.names.iter().zip(self.weights()).enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{n}:{w}")?;
        }
        write!(f, "]")
    }
}
