use std::cmp::Ordering;

use super::monomial::{lex, revlex, Monomial};

/// Term order on monomials of a ring.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub enum MonomialOrder {
    /// Weighted degree, ties broken reverse-lexicographically.
    #[default]
    WeightedRevLex,
    /// Pure lexicographic with the first variable largest.
    Lex,
    /// Block order eliminating the first `block` variables: weighted
    /// revlex on the block decides first, then weighted revlex on the rest.
    Elimination { block: usize },
}

impl MonomialOrder {
    #[inline]
    pub fn compare(&self, a: &Monomial, b: &Monomial, weights: &[u32]) -> Ordering {
        let n = weights.len();
        match self {
            MonomialOrder::WeightedRevLex => a
                .degree()
                .cmp(&b.degree())
                .then_with(|| revlex(a, b, 0, n)),
            MonomialOrder::Lex => lex(a, b, n),
            MonomialOrder::Elimination { block } => {
                let block = (*block).min(n);
                let da: u32 = (0..block).map(|i| a.exponent(i) * weights[i]).sum();
                let db: u32 = (0..block).map(|i| b.exponent(i) * weights[i]).sum();
                da.cmp(&db)
                    .then_with(|| revlex(a, b, 0, block))
                    .then_with(|| (a.degree() - da).cmp(&(b.degree() - db)))
                    .then_with(|| revlex(a, b, block, n))
            }
        }
    }

    /// True when the leading term of a homogeneous polynomial is of maximal
    /// weighted degree, so degree-by-degree truncation is valid.
    pub fn is_degree_compatible(&self) -> bool {
        matches!(self, MonomialOrder::WeightedRevLex)
    }
}
