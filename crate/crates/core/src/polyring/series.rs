use std::ops::{Div, Mul};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

/// Power series in `h` truncated after the `h^2` term, exact rationals.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncatedSeries {
    pub c0: BigRational,
    pub c1: BigRational,
    pub c2: BigRational,
}

fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

impl TruncatedSeries {
    pub fn new(c0: BigRational, c1: BigRational, c2: BigRational) -> Self {
        TruncatedSeries { c0, c1, c2 }
    }

    pub fn one() -> Self {
        TruncatedSeries::new(BigRational::one(), BigRational::zero(), BigRational::zero())
    }

    /// The factor `1 - n h`.
    pub fn linear_factor(n: i64) -> Self {
        TruncatedSeries::new(BigRational::one(), rat(-n), BigRational::zero())
    }

    /// Multiplicative inverse; requires a nonzero constant term.
    pub fn inverse(&self) -> Option<Self> {
        if self.c0.is_zero() {
            return None;
        }
        let b0 = self.c0.recip();
        let b1 = -(&self.c1 * &b0) / &self.c0;
        let b2 = -(&self.c1 * &b1 + &self.c2 * &b0) / &self.c0;
        Some(TruncatedSeries::new(b0, b1, b2))
    }

    /// `∏(1 - n_i h)` truncated.
    pub fn product_of_factors(weights: &[u32]) -> Self {
        weights
            .iter()
            .fold(TruncatedSeries::one(), |acc, &n| &acc * &TruncatedSeries::linear_factor(n as i64))
    }
}

impl Mul for &TruncatedSeries {
    type Output = TruncatedSeries;
    fn mul(self, o: &TruncatedSeries) -> TruncatedSeries {
        TruncatedSeries::new(
            &self.c0 * &o.c0,
            &self.c0 * &o.c1 + &self.c1 * &o.c0,
            &self.c0 * &o.c2 + &self.c1 * &o.c1 + &self.c2 * &o.c0,
        )
    }
}

impl Div for &TruncatedSeries {
    type Output = TruncatedSeries;
    fn div(self, o: &TruncatedSeries) -> TruncatedSeries {
        self * &o.inverse().expect("division by a series with zero constant term")
    }
}

/// The quotient series `∏(1 - n_i h) / ∏(1 - d_j h)` up to `h^2`.
pub fn quotient_series(numerator_weights: &[u32], denominator_weights: &[u32]) -> TruncatedSeries {
    &TruncatedSeries::product_of_factors(numerator_weights)
        / &TruncatedSeries::product_of_factors(denominator_weights)
}

/// Coefficient of `h^2` in `∏(1 - n_i h) / ∏(1 - d_j h)`.
pub fn h2_coefficient(numerator_weights: &[u32], denominator_weights: &[u32]) -> BigRational {
    quotient_series(numerator_weights, denominator_weights).c2
}
