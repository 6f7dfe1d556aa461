//! Sparse multivariate polynomials over GF(p) with weighted gradings,
//! plus exact truncated series for Chern-class bookkeeping.

mod bucket;
mod field;
mod linalg;
mod monomial;
mod order;
mod parse;
mod poly;
mod ring;
mod series;
mod upoly;

pub(crate) use bucket::GeoBucket;
pub use field::{is_prime, PrimeField, DEFAULT_PRIME};
pub use linalg::DenseMatrix;
pub use monomial::{Monomial, MAX_VARS};
pub use order::MonomialOrder;
pub use poly::{Poly, Term, VarImage};
pub use ring::{Ring, RingRef, WeightVector};
pub use series::{h2_coefficient, quotient_series, TruncatedSeries};
pub use upoly::UPoly;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RingError {
    #[error("{0} is not an odd prime below 2^31")]
    InvalidPrime(u32),
    #[error("weights must be positive")]
    ZeroWeight,
    #[error("at most {MAX_VARS} variables are supported, got {0}")]
    TooManyVariables(usize),
    #[error("{names} variable names but {weights} weights")]
    LengthMismatch { names: usize, weights: usize },
    #[error("bad or repeated variable name {0:?}")]
    BadVariableName(String),
    #[error("zero polynomial has no degree")]
    ZeroPoly,
    #[error("polynomial is not weighted-homogeneous")]
    NotHomogeneous,
    #[error("parse error: {0}")]
    Parse(String),
}
