use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use super::bucket::GeoBucket;
use super::monomial::Monomial;
use super::ring::{Ring, RingRef};
use super::RingError;

/// A single nonzero term.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Term {
    pub mono: Monomial,
    pub coeff: u32,
}

/// Sparse polynomial; terms are stored in strictly descending term order
/// with no zero coefficients.
#[derive(Clone)]
pub struct Poly {
    ring: RingRef,
    terms: Vec<Term>,
}

/// Image of one variable under a monomial substitution.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum VarImage {
    Zero,
    Const(u32),
    Var(usize),
}

impl Poly {
    pub fn zero(ring: &RingRef) -> Poly {
        Poly {
            ring: Arc::clone(ring),
            terms: Vec::new(),
        }
    }

    pub fn constant(ring: &RingRef, c: u32) -> Poly {
        Poly::monomial(ring, Monomial::ONE, c)
    }

    pub fn monomial(ring: &RingRef, m: Monomial, c: u32) -> Poly {
        let c = c % ring.prime();
        let terms = if c == 0 {
            Vec::new()
        } else {
            vec![Term { mono: m, coeff: c }]
        };
        Poly {
            ring: Arc::clone(ring),
            terms,
        }
    }

    /// Terms in any order; equal monomials are combined.
    pub fn from_terms(ring: &RingRef, mut terms: Vec<Term>) -> Poly {
        terms.sort_by(|a, b| ring.cmp(&b.mono, &a.mono));
        let field = ring.field();
        let mut out: Vec<Term> = Vec::with_capacity(terms.len());
        for t in terms {
            match out.last_mut() {
                Some(last) if last.mono == t.mono => last.coeff = field.add(last.coeff, t.coeff),
                _ => out.push(t),
            }
        }
        out.retain(|t| t.coeff != 0);
        Poly {
            ring: Arc::clone(ring),
            terms: out,
        }
    }

    pub(crate) fn from_sorted_terms(ring: &RingRef, terms: Vec<Term>) -> Poly {
        debug_assert!(terms.windows(2).all(|w| ring.cmp(&w[0].mono, &w[1].mono).is_gt()));
        debug_assert!(terms.iter().all(|t| t.coeff != 0));
        Poly {
            ring: Arc::clone(ring),
            terms,
        }
    }

    /// Builds from (coefficient, exponent vector) pairs.
    pub fn from_exponents(ring: &RingRef, data: &[(i64, Vec<u32>)]) -> Poly {
        let f = ring.field();
        let terms = data
            .iter()
            .map(|(c, e)| Term {
                mono: ring.monomial(e),
                coeff: f.from_i64(*c),
            })
            .collect();
        Poly::from_terms(ring, terms)
    }

    pub fn ring(&self) -> &RingRef {
        &self.ring
    }

    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.iter().all(|t| t.mono.is_one())
    }

    pub fn leading_term(&self) -> Option<&Term> {
        self.terms.first()
    }

    pub fn leading_monomial(&self) -> Option<Monomial> {
        self.terms.first().map(|t| t.mono)
    }

    pub fn leading_coeff(&self) -> u32 {
        self.terms.first().map_or(0, |t| t.coeff)
    }

    pub fn coefficient(&self, m: &Monomial) -> u32 {
        self.terms
            .iter()
            .find(|t| t.mono == *m)
            .map_or(0, |t| t.coeff)
    }

    pub fn constant_term(&self) -> u32 {
        self.coefficient(&Monomial::ONE)
    }

    fn same_ring(&self, other: &Poly) {
        assert!(
            Arc::ptr_eq(&self.ring, &other.ring) || *self.ring == *other.ring,
            "polynomials from different rings"
        );
    }

    /// Common weighted degree of all terms.
    pub fn weighted_degree(&self) -> Result<u32, RingError> {
        let first = self.terms.first().ok_or(RingError::ZeroPoly)?.mono.degree();
        if self.terms.iter().all(|t| t.mono.degree() == first) {
            Ok(first)
        } else {
            Err(RingError::NotHomogeneous)
        }
    }

    pub fn is_homogeneous(&self) -> bool {
        self.is_zero() || self.weighted_degree().is_ok()
    }

    /// Largest weighted degree of a term (0 for the zero polynomial).
    pub fn max_degree(&self) -> u32 {
        self.terms.iter().map(|t| t.mono.degree()).max().unwrap_or(0)
    }

    pub fn homogeneous_component(&self, d: u32) -> Poly {
        let terms = self
            .terms
            .iter()
            .copied()
            .filter(|t| t.mono.degree() == d)
            .collect();
        Poly::from_sorted_terms(&self.ring, terms)
    }

    /// Bitmask of variables occurring in some term.
    pub fn support_mask(&self) -> u32 {
        self.terms.iter().fold(0, |m, t| m | t.mono.support_mask())
    }

    pub fn uses_variable(&self, i: usize) -> bool {
        self.support_mask() & (1 << i) != 0
    }

    pub fn neg(&self) -> Poly {
        let f = self.ring.field();
        let terms = self
            .terms
            .iter()
            .map(|t| Term {
                mono: t.mono,
                coeff: f.neg(t.coeff),
            })
            .collect();
        Poly::from_sorted_terms(&self.ring, terms)
    }

    pub fn scale(&self, c: u32) -> Poly {
        let f = self.ring.field();
        let c = c % f.characteristic();
        if c == 0 {
            return Poly::zero(&self.ring);
        }
        let terms = self
            .terms
            .iter()
            .map(|t| Term {
                mono: t.mono,
                coeff: f.mul(t.coeff, c),
            })
            .collect();
        Poly::from_sorted_terms(&self.ring, terms)
    }

    /// Scaled to leading coefficient one (zero stays zero).
    pub fn monic(&self) -> Poly {
        match self.terms.first() {
            None => self.clone(),
            Some(t) if t.coeff == 1 => self.clone(),
            Some(t) => self.scale(self.ring.field().inv(t.coeff)),
        }
    }

    pub fn mul_term(&self, m: &Monomial, c: u32) -> Poly {
        let f = self.ring.field();
        if c.is_multiple_of(f.characteristic()) {
            return Poly::zero(&self.ring);
        }
        let terms = self
            .terms
            .iter()
            .map(|t| Term {
                mono: t.mono.mul(m),
                coeff: f.mul(t.coeff, c),
            })
            .collect();
        Poly::from_sorted_terms(&self.ring, terms)
    }

    pub fn add_poly(&self, other: &Poly) -> Poly {
        self.same_ring(other);
        let f = self.ring.field();
        let (a, b) = (&self.terms, &other.terms);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match self.ring.cmp(&a[i].mono, &b[j].mono) {
                std::cmp::Ordering::Greater => {
                    out.push(a[i]);
                    i += 1;
                }
                std::cmp::Ordering::Less => {
                    out.push(b[j]);
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    let c = f.add(a[i].coeff, b[j].coeff);
                    if c != 0 {
                        out.push(Term {
                            mono: a[i].mono,
                            coeff: c,
                        });
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        Poly::from_sorted_terms(&self.ring, out)
    }

    pub fn sub_poly(&self, other: &Poly) -> Poly {
        self.add_poly(&other.neg())
    }

    pub fn mul_poly(&self, other: &Poly) -> Poly {
        self.same_ring(other);
        if self.is_zero() || other.is_zero() {
            return Poly::zero(&self.ring);
        }
        let (small, big) = if self.len() <= other.len() {
            (self, other)
        } else {
            (other, self)
        };
        if small.len() == 1 {
            let t = small.terms[0];
            return big.mul_term(&t.mono, t.coeff);
        }
        let mut bucket = GeoBucket::new(&self.ring);
        for t in &small.terms {
            bucket.add_scaled(&big.terms, t.coeff, &t.mono);
        }
        Poly::from_sorted_terms(&self.ring, bucket.into_descending())
    }

    pub fn pow(&self, mut e: u32) -> Poly {
        let mut acc = Poly::constant(&self.ring, 1);
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul_poly(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul_poly(&base);
            }
        }
        acc
    }

    /// Partial derivative with respect to variable `i`.
    pub fn derivative(&self, i: usize) -> Poly {
        let f = self.ring.field();
        let w = self.ring.weights()[i];
        let terms = self
            .terms
            .iter()
            .filter_map(|t| {
                let e = t.mono.exponent(i);
                if e == 0 {
                    return None;
                }
                let c = f.mul(t.coeff, e % f.characteristic());
                (c != 0).then(|| Term {
                    mono: t.mono.with_exponent(i, e - 1, w),
                    coeff: c,
                })
            })
            .collect();
        Poly::from_sorted_terms(&self.ring, terms)
    }

    /// One derivative per ring variable.
    pub fn partial_derivatives(&self) -> Vec<Poly> {
        (0..self.ring.nvars()).map(|i| self.derivative(i)).collect()
    }

    /// Largest exponent of any variable.
    pub fn max_exponent(&self) -> u32 {
        let n = self.ring.nvars();
        self.terms
            .iter()
            .flat_map(|t| (0..n).map(move |i| t.mono.exponent(i)))
            .max()
            .unwrap_or(0)
    }

    /// Derivatives are faithful when every exponent is below the characteristic.
    pub fn derivatives_are_faithful(&self) -> bool {
        self.max_exponent() < self.ring.prime()
    }

    /// Ring map sending each variable to zero, a constant or a variable of `target`.
    pub fn remap(&self, target: &RingRef, images: &[VarImage]) -> Poly {
        assert_eq!(images.len(), self.ring.nvars(), "one image per variable");
        assert_eq!(target.prime(), self.ring.prime(), "same field");
        let f = target.field();
        let nt = target.nvars();
        let mut out = Vec::with_capacity(self.terms.len());
        'terms: for t in &self.terms {
            let mut coeff = t.coeff;
            let mut exps = vec![0u32; nt];
            for (i, img) in images.iter().enumerate() {
                let e = t.mono.exponent(i);
                if e == 0 {
                    continue;
                }
                match *img {
                    VarImage::Zero => continue 'terms,
                    VarImage::Const(c) => coeff = f.mul(coeff, f.pow(c, e as u64)),
                    VarImage::Var(j) => exps[j] += e,
                }
            }
            if coeff != 0 {
                out.push(Term {
                    mono: target.monomial(&exps),
                    coeff,
                });
            }
        }
        Poly::from_terms(target, out)
    }

    /// Same polynomial viewed in a ring with identical variables but
    /// possibly another order.
    pub fn in_ring(&self, target: &RingRef) -> Poly {
        assert_eq!(target.nvars(), self.ring.nvars());
        if Arc::ptr_eq(target, &self.ring) {
            return self.clone();
        }
        let images: Vec<VarImage> = (0..target.nvars()).map(VarImage::Var).collect();
        self.remap(target, &images)
    }

    /// General ring map: variable `i` goes to `images[i]` in `target`.
    pub fn substitute(&self, target: &RingRef, images: &[Poly]) -> Poly {
        assert_eq!(images.len(), self.ring.nvars());
        let mut powers: HashMap<(usize, u32), Poly> = HashMap::new();
        let mut acc = Poly::zero(target);
        let mut bucket = GeoBucket::new(target);
        for t in &self.terms {
            let mut prod = Poly::constant(target, t.coeff);
            for (i, img) in images.iter().enumerate() {
                let e = t.mono.exponent(i);
                if e == 0 {
                    continue;
                }
                let pw = powers
                    .entry((i, e))
                    .or_insert_with(|| img.pow(e))
                    .clone();
                prod = prod.mul_poly(&pw);
                if prod.is_zero() {
                    break;
                }
            }
            bucket.add_scaled(&prod.terms, 1, &Monomial::ONE);
        }
        acc.terms = bucket.into_descending();
        acc
    }

    /// Value at a point of the affine space over GF(p).
    pub fn evaluate(&self, point: &[u32]) -> u32 {
        let f = self.ring.field();
        let n = self.ring.nvars();
        self.terms.iter().fold(0, |acc, t| {
            let v = (0..n).fold(t.coeff, |v, i| {
                let e = t.mono.exponent(i);
                if e == 0 {
                    v
                } else {
                    f.mul(v, f.pow(point[i], e as u64))
                }
            });
            f.add(acc, v)
        })
    }

    /// Quotient `self / divisor` when the division is exact.
    pub fn div_exact(&self, divisor: &Poly) -> Option<Poly> {
        self.same_ring(divisor);
        let lead = *divisor.terms.first()?;
        let f = self.ring.field();
        let inv = f.inv(lead.coeff);
        let tail = &divisor.terms[1..];
        let mut bucket = GeoBucket::new(&self.ring);
        bucket.add_scaled(&self.terms, 1, &Monomial::ONE);
        let mut quotient = Vec::new();
        while let Some(t) = bucket.pop_leading() {
            let q = lead.mono.quotient_of(&t.mono)?;
            let c = f.mul(t.coeff, inv);
            quotient.push(Term { mono: q, coeff: c });
            bucket.add_scaled(tail, f.neg(c), &q);
        }
        Some(Poly::from_sorted_terms(&self.ring, quotient))
    }
}

impl PartialEq for Poly {
    fn eq(&self, other: &Poly) -> bool {
        (Arc::ptr_eq(&self.ring, &other.ring) || *self.ring == *other.ring) && self.terms == other.terms
    }
}

impl Eq for Poly {}

impl std::hash::Hash for Poly {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.terms.hash(state);
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

fn fmt_monomial(ring: &Ring, m: &Monomial) -> String {
    let mut parts = Vec::new();
    for (i, name) in ring.names().iter().enumerate() {
        match m.exponent(i) {
            0 => {}
            1 => parts.push(name.clone()),
            e => parts.push(format!("{name}^{e}")),
        }
    }
    parts.join("*")
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let field = self.ring.field();
        for (k, t) in self.terms.iter().enumerate() {
            let c = field.to_signed(t.coeff);
            let (sign, mag) = if c < 0 { ("-", -c) } else { ("+", c) };
            if k == 0 {
                if sign == "-" {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            let mono = fmt_monomial(&self.ring, &t.mono);
            match (mag, mono.is_empty()) {
                (_, true) => write!(f, "{mag}")?,
                (1, false) => write!(f, "{mono}")?,
                (_, false) => write!(f, "{mag}*{mono}")?,
            }
        }
        Ok(())
    }
}

macro_rules! binop {
    ($trait:ident, $method:ident, $impl:ident) => {
        impl $trait<&Poly> for &Poly {
            type Output = Poly;
            fn $method(self, rhs: &Poly) -> Poly {
                self.$impl(rhs)
            }
        }
        impl $trait<Poly> for Poly {
            type Output = Poly;
            fn $method(self, rhs: Poly) -> Poly {
                self.$impl(&rhs)
            }
        }
        impl $trait<&Poly> for Poly {
            type Output = Poly;
            fn $method(self, rhs: &Poly) -> Poly {
                self.$impl(rhs)
            }
        }
        impl $trait<Poly> for &Poly {
            type Output = Poly;
            fn $method(self, rhs: Poly) -> Poly {
                self.$impl(&rhs)
            }
        }
    };
}

binop!(Add, add, add_poly);
binop!(Sub, sub, sub_poly);
binop!(Mul, mul, mul_poly);

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly::neg(self)
    }
}

impl Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly::neg(&self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyring::Ring;

    #[test]
    fn weighted_degree_examples() {
        let r = Ring::new(&["x", "y"], &[1, 2], 32003).unwrap();
        assert_eq!(r.parse("x*y").unwrap().weighted_degree().unwrap(), 3);
        assert_eq!(r.parse("x^2 + y").unwrap().weighted_degree().unwrap(), 2);
        assert!(matches!(
            r.parse("x + y").unwrap().weighted_degree(),
            Err(RingError::NotHomogeneous)
        ));
        assert!(matches!(r.zero().weighted_degree(), Err(RingError::ZeroPoly)));
    }

    #[test]
    fn derivative_examples() {
        let r = Ring::new(&["x", "y"], &[1, 1], 7).unwrap();
        let f = r.parse("x^2").unwrap();
        assert_eq!(f.derivative(0), r.parse("2*x").unwrap());
        let g = r.parse("x*y").unwrap();
        assert_eq!(g.partial_derivatives(), vec![r.named("y"), r.named("x")]);
        let h = r.parse("x^7").unwrap();
        assert!(h.derivative(0).is_zero());
        assert!(!h.derivatives_are_faithful());
        assert!(f.derivatives_are_faithful());
    }

    #[test]
    fn exact_division() {
        let r = Ring::standard(&["x", "y", "z"], 32003).unwrap();
        let a = r.parse("x^2 - 3*y*z + z").unwrap();
        let b = r.parse("x*y + y^2 - 5").unwrap();
        assert_eq!((&a * &b).div_exact(&b).unwrap(), a);
        assert!((&a + &r.one()).div_exact(&r.named("y")).is_none());
    }

    #[test]
    fn remap_and_substitute_agree() {
        let r = Ring::standard(&["x", "y", "z"], 32003).unwrap();
        let s = Ring::standard(&["u", "v"], 32003).unwrap();
        let f = r.parse("x^2*y - 2*x*z^3 + y*z + 4").unwrap();
        let images = [VarImage::Var(1), VarImage::Const(3), VarImage::Var(0)];
        let polys = [s.named("v"), s.constant(3), s.named("u")];
        assert_eq!(f.remap(&s, &images), f.substitute(&s, &polys));
    }

    #[test]
    fn display_round_trip() {
        let r = Ring::standard(&["x", "y"], 32003).unwrap();
        let f = r.parse("3*x^2*y - y + 7").unwrap();
        assert_eq!(r.parse(&f.to_string()).unwrap(), f);
    }
}
