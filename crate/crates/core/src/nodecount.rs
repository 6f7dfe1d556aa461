//! Closed-form node counts from `c2` of the conormal sheaf.
//!
//! The resolution of the conormal sheaf of `D ⊂ Y` gives
//! `c(N) = ∏(1 - d_i h)·∏(1 - σ_l h) / (∏(1 - a_j h)·(1 - t h))`, and the
//! number of nodes is the `h^2` coefficient divided by `a·b`, the degree
//! normalisation of `D = P(1, a, b)`.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive};
use thiserror::Error;

use crate::candidates::{CentredCandidate, PfaffianShape};
use crate::formats::Format;
use crate::polyring::h2_coefficient;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum NodeCountError {
    #[error("{format}: node count {value} is not an integer")]
    NonIntegralCount { format: Format, value: String },
    #[error("{format}: node count {value} is not positive")]
    NonPositiveCount { format: Format, value: String },
    #[error("{format}: syzygy degree {value} is not positive")]
    BadDegree { format: Format, value: i64 },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct NodeFormulaInput {
    pub shape: PfaffianShape,
    /// Degrees of the generators of `I_D`.
    pub x_weights: [u32; 4],
    /// `(1, a, b)`.
    pub d_weights: [u32; 3],
    pub format: Format,
}

impl NodeFormulaInput {
    pub fn new(c: &CentredCandidate, shape: PfaffianShape, format: Format) -> Self {
        NodeFormulaInput { shape, x_weights: c.x_weights, d_weights: c.d_weights, format }
    }

    /// Weights `(numerator, denominator)` of the Chern class quotient.
    pub fn chern_weights(&self) -> Result<(Vec<u32>, Vec<u32>), NodeCountError> {
        let k = self.shape.k as i64;
        let p = self.shape.p;
        let syzygy = |l: usize| -> Result<u32, NodeCountError> {
            let v = k - p[l] as i64;
            u32::try_from(v).ok().filter(|&s| s > 0).ok_or(NodeCountError::BadDegree { format: self.format, value: v })
        };
        let mut num: Vec<u32> = self.x_weights.to_vec();
        let mut den = Vec::new();
        match self.format {
            Format::Tom(i) => {
                let i = i as usize - 1;
                num.push(syzygy(i)?);
                den.extend((0..5).filter(|&j| j != i).map(|j| p[j]));
            }
            Format::Jerry(i, j) => {
                let (i, j) = (i as usize - 1, j as usize - 1);
                for l in (0..5).filter(|&l| l != i && l != j) {
                    num.push(syzygy(l)?);
                }
                den.extend_from_slice(&p);
                den.push(p[i] + p[j]);
            }
        }
        Ok((num, den))
    }

    /// `c2(N)` before normalisation by the degree of `D`.
    pub fn c2(&self) -> Result<BigRational, NodeCountError> {
        let (num, den) = self.chern_weights()?;
        Ok(h2_coefficient(&num, &den))
    }
}

/// Number of nodes of `Y` on `D` for a Tom or Jerry format.
pub fn node_count(input: &NodeFormulaInput) -> Result<u64, NodeCountError> {
    let value = raw_count(input)?;
    if !value.is_integer() {
        return Err(NodeCountError::NonIntegralCount { format: input.format, value: value.to_string() });
    }
    if !value.is_positive() {
        return Err(NodeCountError::NonPositiveCount { format: input.format, value: value.to_string() });
    }
    Ok(value.to_integer().to_u64().expect("node count fits in u64"))
}

pub fn tom_nodes(input: &NodeFormulaInput) -> Result<u64, NodeCountError> {
    assert!(input.format.is_tom(), "tom_nodes called with {}", input.format);
    node_count(input)
}

pub fn jerry_nodes(input: &NodeFormulaInput) -> Result<u64, NodeCountError> {
    assert!(!input.format.is_tom(), "jerry_nodes called with {}", input.format);
    node_count(input)
}

/// `h^2` coefficient divided by `a·b` without integrality checks.
pub fn raw_count(input: &NodeFormulaInput) -> Result<BigRational, NodeCountError> {
    let [_, a, b] = input.d_weights;
    Ok(input.c2()? / BigRational::from_integer(BigInt::from(a as u64 * b as u64)))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EulerConsistency {
    pub consistent: bool,
    /// Sorted pairwise differences per centre, for centres with at least two counts.
    pub differences: BTreeMap<String, Vec<u64>>,
}

impl fmt::Display for EulerConsistency {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.differences.iter().map(|(k, v)| format!("{k}: {v:?}")).collect();
        write!(f, "{} ({})", if self.consistent { "consistent" } else { "inconsistent" }, parts.join(", "))
    }
}

/// Sorted multiset of `|c_i - c_j|` over pairs.
pub fn pairwise_differences(counts: &[u64]) -> Vec<u64> {
    let mut d = Vec::new();
    for (n, &a) in counts.iter().enumerate() {
        for &b in &counts[n + 1..] {
            d.push(a.abs_diff(b));
        }
    }
    d.sort_unstable();
    d
}

/// Node counts of passing formats, grouped by centre, must give the same
/// pairwise difference multiset at every centre with at least two passes.
pub fn euler_consistency(counts_by_centre: &BTreeMap<String, Vec<u64>>) -> EulerConsistency {
    let differences: BTreeMap<String, Vec<u64>> = counts_by_centre
        .iter()
        .filter(|(_, c)| c.len() >= 2)
        .map(|(k, c)| (k.clone(), pairwise_differences(c)))
        .collect();
    let mut it = differences.values();
    let consistent = match it.next() {
        None => true,
        Some(first) => it.all(|d| d == first),
    };
    EulerConsistency { consistent, differences }
}

/// `Σ denominator weights - Σ numerator weights`, the `h^1` coefficient.
pub fn first_order_term(input: &NodeFormulaInput) -> Result<i64, NodeCountError> {
    let (num, den) = input.chern_weights()?;
    Ok(den.iter().map(|&w| w as i64).sum::<i64>() - num.iter().map(|&w| w as i64).sum::<i64>())
}

