use std::fmt;

use crate::polyring::{Poly, RingError, RingRef};

/// Skew-symmetric `n×n` matrix stored by its strict upper triangle.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SkewMatrix {
    ring: RingRef,
    n: usize,
    upper: Vec<Poly>,
}

impl SkewMatrix {
    pub fn zero(ring: &RingRef, n: usize) -> Self {
        SkewMatrix { ring: ring.clone(), n, upper: vec![ring.zero(); n * (n - 1) / 2] }
    }

    /// Entries `m12 m13 .. m1n m23 .. m(n-1)n`.
    pub fn from_upper(ring: &RingRef, n: usize, entries: Vec<Poly>) -> Self {
        assert_eq!(entries.len(), n * (n - 1) / 2, "wrong number of entries for a {n}x{n} skew matrix");
        SkewMatrix { ring: ring.clone(), n, upper: entries }
    }

    /// As [`SkewMatrix::from_upper`], parsing each entry.
    pub fn parse_upper(ring: &RingRef, n: usize, entries: &[&str]) -> Result<Self, RingError> {
        let polys = entries.iter().map(|s| ring.parse(s)).collect::<Result<Vec<_>, _>>()?;
        Ok(SkewMatrix::from_upper(ring, n, polys))
    }

    pub fn ring(&self) -> &RingRef {
        &self.ring
    }

    pub fn size(&self) -> usize {
        self.n
    }

    fn index(&self, i: usize, j: usize) -> usize {
        debug_assert!(i < j && j < self.n);
        i * (2 * self.n - i - 1) / 2 + (j - i - 1)
    }

    /// Entry `(i, j)`, 0-based; the lower triangle is the negated mirror.
    pub fn get(&self, i: usize, j: usize) -> Poly {
        match i.cmp(&j) {
            std::cmp::Ordering::Less => self.upper[self.index(i, j)].clone(),
            std::cmp::Ordering::Greater => -&self.upper[self.index(j, i)],
            std::cmp::Ordering::Equal => self.ring.zero(),
        }
    }

    pub fn entry(&self, i: usize, j: usize) -> &Poly {
        &self.upper[self.index(i.min(j), i.max(j))]
    }

    pub fn set(&mut self, i: usize, j: usize, p: Poly) {
        assert_ne!(i, j, "diagonal of a skew matrix is zero");
        if i < j {
            let k = self.index(i, j);
            self.upper[k] = p;
        } else {
            let k = self.index(j, i);
            self.upper[k] = -p;
        }
    }

    pub fn upper(&self) -> &[Poly] {
        &self.upper
    }

    /// Pfaffian of the principal submatrix on `rows` (in the given order),
    /// expanded along the first row.
    pub fn pfaffian(&self, rows: &[usize]) -> Poly {
        match rows.len() {
            0 => self.ring.one(),
            n if n % 2 == 1 => self.ring.zero(),
            2 => self.get(rows[0], rows[1]),
            _ => {
                let mut acc = self.ring.zero();
                let first = rows[0];
                for k in 1..rows.len() {
                    let e = self.get(first, rows[k]);
                    if e.is_zero() {
                        continue;
                    }
                    let rest: Vec<usize> = rows[1..].iter().enumerate().filter(|&(n, _)| n + 1 != k).map(|(_, &r)| r).collect();
                    let term = e * self.pfaffian(&rest);
                    acc = if k % 2 == 1 { acc + term } else { acc - term };
                }
                acc
            }
        }
    }

    /// For odd `n`, the `n` Pfaffians with one index deleted: entry `i` omits row and column `i`.
    pub fn submaximal_pfaffians(&self) -> Vec<Poly> {
        (0..self.n)
            .map(|i| {
                let rows: Vec<usize> = (0..self.n).filter(|&r| r != i).collect();
                self.pfaffian(&rows)
            })
            .collect()
    }
}

impl fmt::Display for SkewMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.n {
            let row: Vec<String> = (i + 1..self.n).map(|j| self.entry(i, j).to_string()).collect();
            if !row.is_empty() {
                writeln!(f, "{}", row.join(" | "))?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyring::Ring;

    #[test]
    fn four_by_four_convention() {
        let r = Ring::standard(&["a", "b", "c", "d", "e", "f"], 101).unwrap();
        let m = SkewMatrix::parse_upper(&r, 4, &["a", "b", "c", "d", "e", "f"]).unwrap();
        // m12 m34 - m13 m24 + m14 m23
        assert_eq!(m.pfaffian(&[0, 1, 2, 3]), r.parse("a*f - b*e + c*d").unwrap());
        assert_eq!(m.get(2, 0), -r.named("b"));
    }

    #[test]
    fn zero_matrix() {
        let r = Ring::standard(&["a"], 101).unwrap();
        let m = SkewMatrix::zero(&r, 5);
        assert!(m.submaximal_pfaffians().iter().all(Poly::is_zero));
    }
}
