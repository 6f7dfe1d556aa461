//! Buchberger-based ideal engine over GF(p).

mod buchberger;
mod ideal;

use std::time::{Duration, Instant};

use thiserror::Error;

pub use buchberger::{Buchberger, Progress};
pub use ideal::{
    colon, dimension, groebner_basis, ideal_member, is_reduced_0dim, length_0dim, radical_member, saturate, Ideal,
};

use crate::polyring::RingError;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GroebnerError {
    #[error("resource budget exhausted after {pairs} pairs")]
    Timeout { pairs: usize },
    #[error("ideal is not zero-dimensional")]
    NotZeroDimensional,
    #[error("operation needs a nonzero polynomial")]
    ZeroPolynomial,
    #[error("polynomials live in different rings")]
    RingMismatch,
    #[error(transparent)]
    Ring(#[from] RingError),
}

/// Limits on a single computation; exhausting one yields `Timeout`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Budget {
    pub max_pairs: Option<usize>,
    pub deadline: Option<Instant>,
}

impl Budget {
    pub fn unlimited() -> Self {
        Budget::default()
    }

    pub fn seconds(secs: f64) -> Self {
        Budget {
            max_pairs: None,
            deadline: Some(Instant::now() + Duration::from_secs_f64(secs)),
        }
    }

    pub fn pairs(n: usize) -> Self {
        Budget {
            max_pairs: Some(n),
            deadline: None,
        }
    }

    pub fn check(&self, processed: usize) -> Result<(), GroebnerError> {
        if self.max_pairs.is_some_and(|m| processed >= m) || self.deadline.is_some_and(|d| Instant::now() >= d) {
            return Err(GroebnerError::Timeout { pairs: processed });
        }
        Ok(())
    }
}
