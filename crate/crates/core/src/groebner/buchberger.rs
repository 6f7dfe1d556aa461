use std::collections::BTreeMap;

use crate::polyring::{GeoBucket, Monomial, Poly, RingRef, Term};

use super::{Budget, GroebnerError};

#[derive(Clone, Copy, Debug)]
enum PairKind {
    Generator(usize),
    S(usize, usize),
}

#[derive(Clone, Debug)]
struct Pair {
    kind: PairKind,
    lcm: Monomial,
    seq: u64,
}

struct Element {
    poly: Poly,
    lm: Monomial,
    mask: u32,
    sugar: u32,
    live: bool,
}

/// Whether a degree hook wants the computation to continue.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Progress {
    Continue,
    Stop,
}

/// Incremental Buchberger computation with the sugar strategy and the
/// Gebauer–Möller pair criteria.
pub struct Buchberger {
    ring: RingRef,
    gens: Vec<Poly>,
    basis: Vec<Element>,
    queue: BTreeMap<u32, Vec<Pair>>,
    seq: u64,
    processed: usize,
    unit: bool,
}

impl Buchberger {
    /// Queues the generators; they are reduced as they come up by sugar.
    pub fn new(ring: &RingRef, gens: &[Poly]) -> Self {
        let mut b = Buchberger {
            ring: ring.clone(),
            gens: Vec::new(),
            basis: Vec::new(),
            queue: BTreeMap::new(),
            seq: 0,
            processed: 0,
            unit: false,
        };
        for g in gens {
            let g = g.in_ring(ring);
            if g.is_zero() {
                continue;
            }
            let idx = b.gens.len();
            let lcm = g.leading_monomial().unwrap();
            let sugar = g.max_degree();
            b.gens.push(g);
            b.push_pair(sugar, PairKind::Generator(idx), lcm);
        }
        b
    }

    fn push_pair(&mut self, sugar: u32, kind: PairKind, lcm: Monomial) {
        self.seq += 1;
        self.queue.entry(sugar).or_default().push(Pair {
            kind,
            lcm,
            seq: self.seq,
        });
    }

    pub fn ring(&self) -> &RingRef {
        &self.ring
    }

    pub fn is_unit(&self) -> bool {
        self.unit
    }

    pub fn is_complete(&self) -> bool {
        self.unit || self.queue.is_empty()
    }

    pub fn pairs_processed(&self) -> usize {
        self.processed
    }

    /// Sugar of the next pair to be processed.
    pub fn next_sugar(&self) -> Option<u32> {
        if self.unit {
            return None;
        }
        self.queue.keys().next().copied()
    }

    fn pop_pair(&mut self) -> Option<(u32, Pair)> {
        let (&sugar, bucket) = self.queue.iter_mut().next()?;
        let ring = &self.ring;
        let best = (0..bucket.len())
            .min_by(|&a, &b| {
                ring.cmp(&bucket[a].lcm, &bucket[b].lcm)
                    .then(bucket[a].seq.cmp(&bucket[b].seq))
            })
            .unwrap();
        let pair = bucket.swap_remove(best);
        if bucket.is_empty() {
            self.queue.remove(&sugar);
        }
        Some((sugar, pair))
    }

    fn find_reducer(&self, m: &Monomial) -> Option<usize> {
        let mask = m.support_mask();
        self.basis
            .iter()
            .position(|e| e.live && e.mask & !mask == 0 && e.lm.divides(m))
    }

    /// Fully reduces the bucket contents against the live basis.
    fn reduce_bucket(&self, mut bucket: GeoBucket<'_>, sugar: &mut u32, budget: &Budget) -> Result<Vec<Term>, GroebnerError> {
        let field = self.ring.field();
        let mut out = Vec::new();
        let mut steps = 0usize;
        while let Some(t) = bucket.pop_leading() {
            steps += 1;
            if steps.is_multiple_of(2048) {
                budget.check(self.processed)?;
            }
            match self.find_reducer(&t.mono) {
                Some(k) => {
                    let e = &self.basis[k];
                    let q = e.lm.quotient_of(&t.mono).unwrap();
                    *sugar = (*sugar).max(e.sugar + q.degree());
                    bucket.add_scaled(&e.poly.terms()[1..], field.neg(t.coeff), &q);
                }
                None => out.push(t),
            }
        }
        Ok(out)
    }

    /// Normal form of `f` with respect to the current basis.
    pub fn reduce(&self, f: &Poly) -> Poly {
        let f = f.in_ring(&self.ring);
        let mut bucket = GeoBucket::new(&self.ring);
        bucket.add_scaled(f.terms(), 1, &Monomial::ONE);
        let mut sugar = 0;
        let terms = self
            .reduce_bucket(bucket, &mut sugar, &Budget::unlimited())
            .expect("unlimited budget");
        Poly::from_terms(&self.ring, terms)
    }

    /// Processes one queued pair; returns false when nothing is left.
    pub fn step(&mut self, budget: &Budget) -> Result<bool, GroebnerError> {
        if self.unit {
            return Ok(false);
        }
        budget.check(self.processed)?;
        let Some((mut sugar, pair)) = self.pop_pair() else {
            return Ok(false);
        };
        self.processed += 1;
        let mut bucket = GeoBucket::new(&self.ring);
        match pair.kind {
            PairKind::Generator(g) => {
                bucket.add_scaled(self.gens[g].terms(), 1, &Monomial::ONE);
            }
            PairKind::S(i, j) => {
                let (a, b) = (&self.basis[i], &self.basis[j]);
                let qa = a.lm.quotient_of(&pair.lcm).unwrap();
                let qb = b.lm.quotient_of(&pair.lcm).unwrap();
                bucket.add_scaled(&a.poly.terms()[1..], 1, &qa);
                let minus_one = self.ring.field().neg(1);
                bucket.add_scaled(&b.poly.terms()[1..], minus_one, &qb);
            }
        }
        let terms = self.reduce_bucket(bucket, &mut sugar, budget)?;
        if terms.is_empty() {
            return Ok(true);
        }
        let h = Poly::from_terms(&self.ring, terms).monic();
        if h.leading_monomial().unwrap().is_one() {
            self.unit = true;
            self.basis.push(Element {
                lm: Monomial::ONE,
                mask: 0,
                sugar,
                live: true,
                poly: h,
            });
            for e in self.basis.iter_mut() {
                e.live = e.lm.is_one();
            }
            self.queue.clear();
            return Ok(true);
        }
        self.insert(h, sugar);
        Ok(true)
    }

    /// Gebauer–Möller update for a new basis element.
    fn insert(&mut self, h: Poly, sugar: u32) {
        let lm_h = h.leading_monomial().unwrap();
        let hidx = self.basis.len();
        let ring = self.ring.clone();

        // New pairs (g, lcm, coprime).
        let mut cands: Vec<(usize, Monomial, bool)> = self
            .basis
            .iter()
            .enumerate()
            .filter(|(_, e)| e.live)
            .map(|(g, e)| (g, ring.lcm(&e.lm, &lm_h), e.lm.is_coprime(&lm_h)))
            .collect();
        let mut kept: Vec<(usize, Monomial, bool)> = Vec::new();
        while let Some(c) = cands.pop() {
            let dominated = cands.iter().chain(kept.iter()).any(|q| q.1.divides(&c.1));
            if c.2 || !dominated {
                kept.push(c);
            }
        }
        kept.retain(|c| !c.2);

        // Drop old S-pairs made redundant by h.
        let basis = &self.basis;
        for bucket in self.queue.values_mut() {
            bucket.retain(|p| match p.kind {
                PairKind::Generator(_) => true,
                PairKind::S(i, j) => {
                    if !lm_h.divides(&p.lcm) {
                        return true;
                    }
                    let li = ring.lcm(&basis[i].lm, &lm_h);
                    let lj = ring.lcm(&basis[j].lm, &lm_h);
                    li == p.lcm || lj == p.lcm
                }
            });
        }
        self.queue.retain(|_, b| !b.is_empty());

        for e in self.basis.iter_mut() {
            if e.live && lm_h.divides(&e.lm) {
                e.live = false;
            }
        }
        let mut new_pairs = Vec::with_capacity(kept.len());
        for (g, lcm, _) in kept {
            let e = &self.basis[g];
            let s = (e.sugar + lcm.degree() - e.lm.degree()).max(sugar + lcm.degree() - lm_h.degree());
            new_pairs.push((s, PairKind::S(g, hidx), lcm));
        }
        // Deterministic insertion order.
        new_pairs.sort_by(|a, b| a.0.cmp(&b.0).then(ring.cmp(&a.2, &b.2)));
        self.basis.push(Element {
            mask: lm_h.support_mask(),
            lm: lm_h,
            sugar,
            live: true,
            poly: h,
        });
        for (s, kind, lcm) in new_pairs {
            self.push_pair(s, kind, lcm);
        }
    }

    /// Runs to completion.
    pub fn run(&mut self, budget: &Budget) -> Result<(), GroebnerError> {
        while self.step(budget)? {}
        Ok(())
    }

    /// Runs degree by degree. After all pairs of sugar at most `d` are
    /// processed the hook sees `d`; for homogeneous input under a
    /// degree-compatible order the basis is then complete up to degree `d`.
    pub fn run_with_hook<F>(&mut self, budget: &Budget, mut hook: F) -> Result<Progress, GroebnerError>
    where
        F: FnMut(&Buchberger, u32) -> Progress,
    {
        while let Some(level) = self.next_sugar() {
            while self.next_sugar() == Some(level) {
                self.step(budget)?;
            }
            if hook(self, level) == Progress::Stop {
                return Ok(Progress::Stop);
            }
        }
        Ok(Progress::Continue)
    }

    /// Live basis elements (a Gröbner basis once complete).
    pub fn current_basis(&self) -> Vec<Poly> {
        self.basis
            .iter()
            .filter(|e| e.live)
            .map(|e| e.poly.clone())
            .collect()
    }

    /// Reduced Gröbner basis, sorted by increasing leading monomial.
    pub fn into_reduced_basis(self) -> Vec<Poly> {
        if self.unit {
            return vec![Poly::constant(&self.ring, 1)];
        }
        let mut out: Vec<Poly> = Vec::new();
        for (k, e) in self.basis.iter().enumerate().filter(|(_, e)| e.live) {
            let lead = e.poly.terms()[0];
            let mut bucket = GeoBucket::new(&self.ring);
            bucket.add_scaled(&e.poly.terms()[1..], 1, &Monomial::ONE);
            let field = self.ring.field();
            let mut tail = Vec::new();
            while let Some(t) = bucket.pop_leading() {
                let reducer = self.basis.iter().enumerate().position(|(j, o)| {
                    j != k && o.live && o.mask & !t.mono.support_mask() == 0 && o.lm.divides(&t.mono)
                });
                match reducer {
                    Some(j) => {
                        let o = &self.basis[j];
                        let q = o.lm.quotient_of(&t.mono).unwrap();
                        bucket.add_scaled(&o.poly.terms()[1..], field.neg(t.coeff), &q);
                    }
                    None => tail.push(t),
                }
            }
            let mut terms = vec![lead];
            terms.extend(tail);
            out.push(Poly::from_terms(&self.ring, terms));
        }
        let ring = self.ring.clone();
        out.sort_by(|a, b| ring.cmp(&a.leading_monomial().unwrap(), &b.leading_monomial().unwrap()));
        out
    }
}
