//! Geometric bucket accumulator for long sums of polynomial multiples.

use super::field::PrimeField;
use super::monomial::Monomial;
use super::poly::Term;
use super::ring::Ring;

/// Bucket `i` holds at most `4^(i+1)` terms; each bucket is kept in
/// ascending term order so the leading term is at the end.
pub(crate) struct GeoBucket<'r> {
    ring: &'r Ring,
    buckets: Vec<Vec<Term>>,
}

impl<'r> GeoBucket<'r> {
    pub fn new(ring: &'r Ring) -> Self {
        GeoBucket {
            ring,
            buckets: Vec::new(),
        }
    }

    fn capacity(i: usize) -> usize {
        4usize << (2 * i)
    }

    /// Adds `c * m * f` where `f` is given in descending order.
    pub fn add_scaled(&mut self, terms: &[Term], c: u32, m: &Monomial) {
        if c == 0 || terms.is_empty() {
            return;
        }
        let field = self.ring.field();
        let asc: Vec<Term> = terms
            .iter()
            .rev()
            .map(|t| Term {
                mono: t.mono.mul(m),
                coeff: field.mul(t.coeff, c),
            })
            .collect();
        self.insert(asc);
    }

    /// Adds terms already in ascending order.
    pub fn insert(&mut self, mut asc: Vec<Term>) {
        let mut i = 0;
        while asc.len() > Self::capacity(i) {
            i += 1;
        }
        loop {
            if i >= self.buckets.len() {
                self.buckets.resize_with(i + 1, Vec::new);
            }
            let existing = std::mem::take(&mut self.buckets[i]);
            asc = merge_ascending(self.ring, existing, asc);
            if asc.len() <= Self::capacity(i) {
                self.buckets[i] = asc;
                return;
            }
            i += 1;
        }
    }

    /// Removes and returns the leading term of the accumulated sum.
    pub fn pop_leading(&mut self) -> Option<Term> {
        let field = self.ring.field();
        loop {
            let mut best: Option<usize> = None;
            for (i, b) in self.buckets.iter().enumerate() {
                if let Some(t) = b.last() {
                    match best {
                        None => best = Some(i),
                        Some(j) => {
                            let cur = self.buckets[j].last().unwrap();
                            if self.ring.cmp(&t.mono, &cur.mono).is_gt() {
                                best = Some(i);
                            }
                        }
                    }
                }
            }
            let j = best?;
            let lead = self.buckets[j].pop().unwrap();
            let mut coeff = lead.coeff;
            for (i, b) in self.buckets.iter_mut().enumerate() {
                if i != j && b.last().is_some_and(|t| t.mono == lead.mono) {
                    coeff = field.add(coeff, b.pop().unwrap().coeff);
                }
            }
            if coeff != 0 {
                return Some(Term {
                    mono: lead.mono,
                    coeff,
                });
            }
        }
    }

    /// Drains everything into a descending term list.
    pub fn into_descending(mut self) -> Vec<Term> {
        let mut acc: Vec<Term> = Vec::new();
        for b in std::mem::take(&mut self.buckets) {
            acc = merge_ascending(self.ring, acc, b);
        }
        acc.reverse();
        acc
    }
}

/// Merges two ascending term lists, combining equal monomials.
pub(crate) fn merge_ascending(ring: &Ring, a: Vec<Term>, b: Vec<Term>) -> Vec<Term> {
    if a.is_empty() {
        return b;
    }
    if b.is_empty() {
        return a;
    }
    let field: PrimeField = ring.field();
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match ring.cmp(&a[i].mono, &b[j].mono) {
            std::cmp::Ordering::Less => {
                out.push(a[i]);
                i += 1;
            }
            std::cmp::Ordering::Greater => {
                out.push(b[j]);
                j += 1;
            }
            std::cmp::Ordering::Equal => {
                let c = field.add(a[i].coeff, b[j].coeff);
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
    out
}
