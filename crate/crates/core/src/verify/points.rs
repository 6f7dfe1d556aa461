use std::fmt;

use crate::candidates::gcd;
use crate::polyring::{DenseMatrix, Poly};

/// Local type of `Y` at a coordinate point.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LocalClass {
    /// Index one and nonsingular.
    SmoothPoint,
    /// Index one and singular; left to the global checks.
    SingularIndexOne,
    /// Quasismooth with terminal quotient weights modulo the index.
    QuasismoothQuotient { r: u32, weights: [u32; 3] },
    /// Hypersurface in a quotient of the four residual coordinates with an
    /// allowed weight pattern and nonzero quadratic part. Isolatedness is left
    /// to the global checks.
    HyperquotientTerminal { r: u32, weights: [u32; 4], equation: u32 },
    Nonterminal { detail: String },
    /// Local data the classifier does not recognise.
    Unrecognized { detail: String },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoordinatePointReport {
    /// Index of the coordinate variable.
    pub point: usize,
    pub name: String,
    pub weight: u32,
    pub on_d: bool,
    pub on_y: bool,
    pub class: Option<LocalClass>,
}

impl fmt::Display for LocalClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LocalClass::SmoothPoint => write!(f, "smooth"),
            LocalClass::SingularIndexOne => write!(f, "singular index one"),
            LocalClass::QuasismoothQuotient { r, weights } => {
                write!(f, "1/{r}({},{},{})", weights[0], weights[1], weights[2])
            }
            LocalClass::HyperquotientTerminal { r, weights, equation } => {
                write!(f, "1/{r}({},{},{},{};{equation})", weights[0], weights[1], weights[2], weights[3])
            }
            LocalClass::Nonterminal { detail } => write!(f, "nonterminal: {detail}"),
            LocalClass::Unrecognized { detail } => write!(f, "unrecognised: {detail}"),
        }
    }
}

/// `1/r(b1, b2, b3)` is terminal iff all `b_i` are units mod `r` and two of them sum to `0`.
fn terminal_quotient(r: u32, b: &[u32; 3]) -> bool {
    b.iter().all(|&x| gcd(x as u64, r as u64) == 1)
        && (0..3).any(|i| (i + 1..3).any(|j| (b[i] + b[j]).is_multiple_of(r)))
}

/// Patterns `1/r(1, a, -a, 0; 0)` and `1/4(1, 1, 3, 2; 2)` up to a unit rescaling.
fn terminal_hyperquotient(r: u32, b: &[u32; 4], e: u32) -> bool {
    (1..r).filter(|&u| gcd(u as u64, r as u64) == 1).any(|u| {
        let mut s: Vec<u32> = b.iter().map(|&x| x * u % r).collect();
        s.sort_unstable();
        let eq = e * u % r;
        let cyclic = eq == 0
            && s[0] == 0
            && s[1..].contains(&1)
            && s[1..].iter().all(|&x| gcd(x as u64, r as u64) == 1)
            && {
                let mut rest = s[1..].to_vec();
                let one = rest.iter().position(|&x| x == 1).unwrap();
                rest.remove(one);
                (rest[0] + rest[1]).is_multiple_of(r)
            };
        let exceptional = r == 4 && s == [1, 1, 2, 3] && eq == 2;
        cyclic || exceptional
    })
}

/// Local analysis of `V(pfaffians)` at every coordinate point of the ambient space.
///
/// Variables `0..nx` are the generators of `I_D`; the rest are coordinates of `D`.
pub fn coordinate_point_analysis(pfaffians: &[Poly], nx: usize) -> Vec<CoordinatePointReport> {
    let ring = pfaffians[0].ring().clone();
    let n = ring.nvars();
    let field = ring.field();
    (0..n)
        .map(|v| {
            let w = ring.weights()[v];
            let others: Vec<usize> = (0..n).filter(|&u| u != v).collect();
            let mut report = CoordinatePointReport {
                point: v,
                name: ring.names()[v].clone(),
                weight: w,
                on_d: v >= nx,
                on_y: true,
                class: None,
            };
            // Terms by order in the other variables once v = 1.
            let order = |t: &crate::polyring::Term| t.mono.total_degree() - t.mono.exponent(v);
            if pfaffians.iter().any(|f| f.terms().iter().any(|t| order(t) == 0)) {
                report.on_y = false;
                return report;
            }
            let mut lin = DenseMatrix::zeros(pfaffians.len(), others.len());
            for (j, f) in pfaffians.iter().enumerate() {
                for t in f.terms().iter().filter(|t| order(t) == 1) {
                    let col = others.iter().position(|&u| t.mono.exponent(u) == 1).expect("linear term");
                    lin.set(j, col, field.add(lin.get(j, col), t.coeff));
                }
            }
            let rank = lin.rank(field);
            report.class = Some(if w == 1 {
                if rank == 3 {
                    LocalClass::SmoothPoint
                } else {
                    LocalClass::SingularIndexOne
                }
            } else {
                classify(pfaffians, v, &others, &lin, rank, w)
            });
            report
        })
        .collect()
}

fn classify(pfaffians: &[Poly], v: usize, others: &[usize], lin: &DenseMatrix, rank: usize, w: u32) -> LocalClass {
    let ring = pfaffians[0].ring().clone();
    let field = ring.field();
    // Pivot columns are the eliminated coordinates.
    let mut reduced = lin.clone();
    let pivots = reduced.rref(field);
    let residual: Vec<usize> = (0..others.len()).filter(|c| !pivots.contains(c)).collect();
    let res_weights: Vec<u32> = residual.iter().map(|&c| ring.weights()[others[c]] % w).collect();
    match rank {
        3 => {
            let b: [u32; 3] = match res_weights.clone().try_into() {
                Ok(b) => b,
                Err(_) => return LocalClass::Unrecognized { detail: format!("residual weights {res_weights:?}") },
            };
            if terminal_quotient(w, &b) {
                LocalClass::QuasismoothQuotient { r: w, weights: b }
            } else {
                LocalClass::Nonterminal { detail: format!("quotient 1/{w}{b:?} is not terminal") }
            }
        }
        2 => {
            let b: [u32; 4] = match res_weights.clone().try_into() {
                Ok(b) => b,
                Err(_) => return LocalClass::Unrecognized { detail: format!("residual weights {res_weights:?}") },
            };
            // Combinations with no linear part, taken within one degree class
            // mod `w` so that each is a semi-invariant of the chart.
            // On the tangent space each eliminated coordinate is a linear form in the residual ones.
            let mut images: Vec<Poly> = (0..ring.nvars()).map(|u| ring.var(u)).collect();
            images[v] = ring.one();
            for (row, &pc) in pivots.iter().enumerate() {
                let mut e = ring.zero();
                for &c in &residual {
                    let a = reduced.get(row, c);
                    if a != 0 {
                        e = e + ring.var(others[c]).scale(field.neg(a));
                    }
                }
                images[others[pc]] = e;
            }
            let mut classes: Vec<u32> = Vec::new();
            for e in 0..w {
                let rows: Vec<usize> =
                    (0..pfaffians.len()).filter(|&j| pfaffian_degree(&pfaffians[j]) % w == e).collect();
                if rows.is_empty() {
                    continue;
                }
                let mut t = DenseMatrix::zeros(lin.cols(), rows.len());
                for (n, &j) in rows.iter().enumerate() {
                    for c in 0..lin.cols() {
                        t.set(c, n, lin.get(j, c));
                    }
                }
                let quadratic = t.nullspace(field).into_iter().any(|combo| {
                    let mut g = ring.zero();
                    for (n, &c) in combo.iter().enumerate() {
                        if c != 0 {
                            g = g + pfaffians[rows[n]].scale(c);
                        }
                    }
                    let quadratic = Poly::from_terms(
                        &ring,
                        g.terms().iter().filter(|t| t.mono.total_degree() - t.mono.exponent(v) == 2).cloned().collect(),
                    );
                    !quadratic.substitute(&ring, &images).is_zero()
                });
                if quadratic {
                    classes.push(e);
                }
            }
            let found = match classes[..] {
                [] => None,
                [e] => Some(e),
                _ => return LocalClass::Unrecognized { detail: format!("1/{w}{b:?}: equations of weights {classes:?}") },
            };
            let Some(e) = found else {
                return LocalClass::Nonterminal { detail: format!("1/{w}{b:?}: local equation has no quadratic part") };
            };
            if terminal_hyperquotient(w, &b, e) {
                LocalClass::HyperquotientTerminal { r: w, weights: b, equation: e }
            } else {
                LocalClass::Nonterminal { detail: format!("hyperquotient 1/{w}{b:?};{e} has no terminal pattern") }
            }
        }
        _ => LocalClass::Nonterminal { detail: format!("Jacobian rank {rank} at an index {w} point") },
    }
}

fn pfaffian_degree(f: &Poly) -> u32 {
    f.weighted_degree().unwrap_or(0)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn terminal_quotients() {
        assert!(terminal_quotient(3, &[1, 1, 2]));
        assert!(terminal_quotient(5, &[2, 3, 1]));
        assert!(!terminal_quotient(3, &[1, 1, 1]));
        assert!(!terminal_quotient(4, &[1, 3, 2]));
    }

    #[test]
    fn hyperquotient_patterns() {
        assert!(terminal_hyperquotient(2, &[1, 1, 1, 0], 0));
        assert!(terminal_hyperquotient(3, &[0, 2, 1, 2], 0));
        assert!(terminal_hyperquotient(4, &[1, 1, 3, 2], 2));
        assert!(terminal_hyperquotient(4, &[3, 3, 1, 2], 2));
        assert!(!terminal_hyperquotient(4, &[1, 1, 3, 2], 0));
        assert!(!terminal_hyperquotient(3, &[1, 1, 1, 0], 0));
        assert!(!terminal_hyperquotient(2, &[1, 1, 1, 0], 1));
    }
}
