use std::cmp::Ordering;

/// Largest number of variables a ring may have.
pub const MAX_VARS: usize = 32;

/// Exponent vector with its weighted degree cached.
///
/// The cached degree is relative to the grading of the ring that built the
/// monomial; monomials from different rings must not be mixed.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct Monomial {
    deg: u32,
    exps: [u8; MAX_VARS],
}

impl Monomial {
    pub const ONE: Monomial = Monomial {
        deg: 0,
        exps: [0; MAX_VARS],
    };

    pub(crate) fn from_exponents(exps: &[u32], weights: &[u32]) -> Monomial {
        assert!(exps.len() <= MAX_VARS);
        let mut m = Monomial::ONE;
        for (i, &e) in exps.iter().enumerate() {
            m.exps[i] = u8::try_from(e).expect("exponent exceeds 255");
            m.deg += e * weights[i];
        }
        m
    }

    /// Weighted degree under the grading of the owning ring.
    #[inline]
    pub fn degree(&self) -> u32 {
        self.deg
    }

    #[inline]
    pub fn exponent(&self, i: usize) -> u32 {
        self.exps[i] as u32
    }

    pub fn exponents(&self, nvars: usize) -> Vec<u32> {
        self.exps[..nvars].iter().map(|&e| e as u32).collect()
    }

    pub fn total_degree(&self) -> u32 {
        self.exps.iter().map(|&e| e as u32).sum()
    }

    pub fn is_one(&self) -> bool {
        self.exps == [0; MAX_VARS]
    }

    /// Bit `i` set iff variable `i` occurs.
    #[inline]
    pub fn support_mask(&self) -> u32 {
        let mut mask = 0u32;
        for (i, &e) in self.exps.iter().enumerate() {
            if e > 0 {
                mask |= 1 << i;
            }
        }
        mask
    }

    #[inline]
    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut out = *self;
        for i in 0..MAX_VARS {
            out.exps[i] = self.exps[i]
                .checked_add(other.exps[i])
                .expect("exponent exceeds 255");
        }
        out.deg += other.deg;
        out
    }

    #[inline]
    pub fn divides(&self, other: &Monomial) -> bool {
        self.deg <= other.deg && self.exps.iter().zip(other.exps.iter()).all(|(a, b)| a <= b)
    }

    /// `other / self` when `self` divides `other`.
    #[inline]
    pub fn quotient_of(&self, other: &Monomial) -> Option<Monomial> {
        if !self.divides(other) {
            return None;
        }
        let mut out = *other;
        for i in 0..MAX_VARS {
            out.exps[i] -= self.exps[i];
        }
        out.deg -= self.deg;
        Some(out)
    }

    pub fn lcm(&self, other: &Monomial, weights: &[u32]) -> Monomial {
        let mut out = Monomial::ONE;
        for i in 0..weights.len() {
            let e = self.exps[i].max(other.exps[i]);
            out.exps[i] = e;
            out.deg += e as u32 * weights[i];
        }
        out
    }

    pub fn is_coprime(&self, other: &Monomial) -> bool {
        self.exps
            .iter()
            .zip(other.exps.iter())
            .all(|(&a, &b)| a == 0 || b == 0)
    }

    /// Exponent of variable `i` set to `e`, degree adjusted by weight `w`.
    pub(crate) fn with_exponent(&self, i: usize, e: u32, w: u32) -> Monomial {
        let mut out = *self;
        out.deg = out.deg - self.exps[i] as u32 * w + e * w;
        out.exps[i] = u8::try_from(e).expect("exponent exceeds 255");
        out
    }
}

/// Reverse-lexicographic tie break on the variable range `lo..hi`:
/// the monomial with the smaller exponent in the last differing variable wins.
#[inline]
pub(crate) fn revlex(a: &Monomial, b: &Monomial, lo: usize, hi: usize) -> Ordering {
    for i in (lo..hi).rev() {
        match a.exps[i].cmp(&b.exps[i]) {
            Ordering::Equal => continue,
            other => return other.reverse(),
        }
    }
    Ordering::Equal
}

#[inline]
pub(crate) fn lex(a: &Monomial, b: &Monomial, n: usize) -> Ordering {
    a.exps[..n].cmp(&b.exps[..n])
}
