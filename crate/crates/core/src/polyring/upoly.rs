//! Dense univariate polynomials over GF(p), lowest degree first.

use super::field::PrimeField;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UPoly {
    coeffs: Vec<u32>,
}

impl UPoly {
    pub fn new(mut coeffs: Vec<u32>) -> Self {
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        UPoly { coeffs }
    }

    pub fn coeffs(&self) -> &[u32] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, with `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn derivative(&self, f: PrimeField) -> UPoly {
        let p = f.characteristic() as usize;
        UPoly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, &c)| f.mul(c, (i % p) as u32))
                .collect(),
        )
    }

    pub fn rem(&self, d: &UPoly, f: PrimeField) -> UPoly {
        let dd = d.degree().expect("division by zero polynomial");
        let inv = f.inv(d.coeffs[dd]);
        let mut r = self.coeffs.clone();
        while r.len() > dd {
            let top = *r.last().unwrap();
            if top != 0 {
                let q = f.mul(top, inv);
                let shift = r.len() - 1 - dd;
                for (i, &c) in d.coeffs.iter().enumerate() {
                    r[shift + i] = f.sub(r[shift + i], f.mul(q, c));
                }
            }
            r.pop();
        }
        UPoly::new(r)
    }

    pub fn gcd(&self, other: &UPoly, f: PrimeField) -> UPoly {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b, f);
            a = b;
            b = r;
        }
        a
    }

    /// No repeated factor over the algebraic closure: `gcd(g, g') = 1`,
    /// with `g' = 0` (a p-th power) counted as not squarefree.
    pub fn is_squarefree(&self, f: PrimeField) -> bool {
        match self.degree() {
            None => false,
            Some(0) => true,
            Some(_) => {
                let d = self.derivative(f);
                !d.is_zero() && self.gcd(&d, f).degree() == Some(0)
            }
        }
    }
}
