use std::fmt;

/// Dense integer polynomial in `t`, index = exponent.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct IntPoly(Vec<i64>);

impl IntPoly {
    pub fn new(mut coeffs: Vec<i64>) -> Self {
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        IntPoly(coeffs)
    }

    /// From `(coefficient, exponent)` pairs; repeated exponents add up.
    pub fn from_pairs(pairs: &[(i64, u32)]) -> Self {
        let top = pairs.iter().map(|&(_, e)| e as usize).max().unwrap_or(0);
        let mut c = vec![0; top + 1];
        for &(a, e) in pairs {
            c[e as usize] += a;
        }
        IntPoly::new(c)
    }

    pub fn one() -> Self {
        IntPoly(vec![1])
    }

    /// `1 - t^w`.
    pub fn one_minus_t_pow(w: u32) -> Self {
        let mut c = vec![0; w as usize + 1];
        c[0] += 1;
        c[w as usize] -= 1;
        IntPoly::new(c)
    }

    /// `∏ (1 - t^w)`.
    pub fn denominator(weights: &[u32]) -> Self {
        weights
            .iter()
            .fold(IntPoly::one(), |acc, &w| acc.mul(&IntPoly::one_minus_t_pow(w)))
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.0
    }

    pub fn coeff(&self, e: usize) -> i64 {
        self.0.get(e).copied().unwrap_or(0)
    }

    pub fn degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    /// Nonzero `(coefficient, exponent)` pairs in increasing exponent.
    pub fn pairs(&self) -> Vec<(i64, u32)> {
        self.0
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(|(e, &c)| (c, e as u32))
            .collect()
    }

    pub fn add(&self, o: &IntPoly) -> IntPoly {
        let n = self.0.len().max(o.0.len());
        IntPoly::new((0..n).map(|i| self.coeff(i) + o.coeff(i)).collect())
    }

    pub fn sub(&self, o: &IntPoly) -> IntPoly {
        let n = self.0.len().max(o.0.len());
        IntPoly::new((0..n).map(|i| self.coeff(i) - o.coeff(i)).collect())
    }

    pub fn mul(&self, o: &IntPoly) -> IntPoly {
        if self.is_zero() || o.is_zero() {
            return IntPoly::default();
        }
        let mut c = vec![0i64; self.0.len() + o.0.len() - 1];
        for (i, &a) in self.0.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in o.0.iter().enumerate() {
                c[i + j] += a * b;
            }
        }
        IntPoly::new(c)
    }

    /// `t^k * self`.
    pub fn shift(&self, k: u32) -> IntPoly {
        if self.is_zero() {
            return self.clone();
        }
        let mut c = vec![0; k as usize];
        c.extend_from_slice(&self.0);
        IntPoly(c)
    }

    /// Exact quotient by `1 - t^r`, or `None` if it does not divide.
    pub fn div_one_minus_t_pow(&self, r: u32) -> Option<IntPoly> {
        let r = r as usize;
        let Some(deg) = self.degree() else {
            return Some(IntPoly::default());
        };
        let mut q = vec![0i64; deg + 1];
        for e in 0..=deg {
            q[e] = self.coeff(e) + if e >= r { q[e - r] } else { 0 };
        }
        if deg < r {
            return q.iter().all(|&c| c == 0).then(IntPoly::default);
        }
        if q[deg - r + 1..].iter().any(|&c| c != 0) {
            return None;
        }
        q.truncate(deg - r + 1);
        Some(IntPoly::new(q))
    }

    /// First `n` coefficients of `self / ∏(1 - t^w)`.
    pub fn series_over(&self, weights: &[u32], n: usize) -> Vec<i64> {
        let mut s: Vec<i64> = (0..n).map(|e| self.coeff(e)).collect();
        for &w in weights {
            let w = w as usize;
            for e in w..n {
                s[e] += s[e - w];
            }
        }
        s
    }
}

impl fmt::Display for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let pairs = self.pairs();
        if pairs.is_empty() {
            return write!(f, "0");
        }
        for (k, (c, e)) in pairs.into_iter().enumerate() {
            let (sign, mag) = if c < 0 { ("-", -c) } else { ("+", c) };
            if k == 0 {
                if sign == "-" {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            match (mag, e) {
                (_, 0) => write!(f, "{mag}")?,
                (1, 1) => write!(f, "t")?,
                (1, _) => write!(f, "t^{e}")?,
                (_, 1) => write!(f, "{mag}*t")?,
                _ => write!(f, "{mag}*t^{e}")?,
            }
        }
        Ok(())
    }
}
