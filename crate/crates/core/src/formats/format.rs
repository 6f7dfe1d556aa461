use std::fmt;
use std::str::FromStr;

use thiserror::Error;

/// Which entries of the 5×5 skew matrix are constrained to lie in `I_D`.
///
/// Indices are 1-based, as in the usual names `Tom1` and `Jer45`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Format {
    /// The six entries off row and column `i` are bound.
    Tom(u8),
    /// The seven entries in rows and columns `i` and `j` are bound.
    Jerry(u8, u8),
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("unrecognised format name {0:?}; expected Tom<i> or Jer<ij>")]
pub struct FormatParseError(pub String);

impl Format {
    pub fn tom(i: u8) -> Format {
        assert!((1..=5).contains(&i), "Tom index {i} out of range");
        Format::Tom(i)
    }

    pub fn jerry(i: u8, j: u8) -> Format {
        let (i, j) = (i.min(j), i.max(j));
        assert!(1 <= i && i < j && j <= 5, "Jerry indices {i}{j} out of range");
        Format::Jerry(i, j)
    }

    /// `Tom1..Tom5` followed by `Jer12..Jer45`.
    pub fn all() -> Vec<Format> {
        let mut v: Vec<Format> = (1..=5).map(Format::Tom).collect();
        for i in 1..=5 {
            for j in i + 1..=5 {
                v.push(Format::Jerry(i, j));
            }
        }
        v
    }

    pub fn is_tom(&self) -> bool {
        matches!(self, Format::Tom(_))
    }

    /// Whether the entry at 0-based `(i, j)`, `i != j`, must lie in `I_D`.
    pub fn is_bound(&self, i: usize, j: usize) -> bool {
        debug_assert!(i != j);
        match *self {
            Format::Tom(t) => {
                let t = t as usize - 1;
                i != t && j != t
            }
            Format::Jerry(a, b) => {
                let (a, b) = (a as usize - 1, b as usize - 1);
                i == a || i == b || j == a || j == b
            }
        }
    }

    /// Upper-triangle mask in the order `12 13 14 15 23 24 25 34 35 45`.
    pub fn bound_mask(&self) -> [bool; 10] {
        let mut m = [false; 10];
        for (n, (i, j)) in upper_positions().enumerate() {
            m[n] = self.is_bound(i, j);
        }
        m
    }

    /// Image under a permutation of `{0..5}` given as 0-based images.
    pub fn permuted(&self, perm: &[usize; 5]) -> Format {
        match *self {
            Format::Tom(i) => Format::Tom(perm[i as usize - 1] as u8 + 1),
            Format::Jerry(i, j) => Format::jerry(perm[i as usize - 1] as u8 + 1, perm[j as usize - 1] as u8 + 1),
        }
    }
}

/// 0-based upper-triangle positions `(i, j)`, `i < j`, row by row.
pub fn upper_positions() -> impl Iterator<Item = (usize, usize)> {
    (0..5).flat_map(|i| (i + 1..5).map(move |j| (i, j)))
}

impl fmt::Display for Format {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Format::Tom(i) => write!(f, "Tom{i}"),
            Format::Jerry(i, j) => write!(f, "Jer{i}{j}"),
        }
    }
}

impl FromStr for Format {
    type Err = FormatParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = || FormatParseError(s.to_string());
        let lower = s.trim().to_ascii_lowercase();
        let digits = |rest: &str| -> Option<Vec<u8>> {
            rest.chars().map(|c| c.to_digit(10).map(|d| d as u8)).collect()
        };
        if let Some(rest) = lower.strip_prefix("tom") {
            match digits(rest).as_deref() {
                Some(&[i]) if (1..=5).contains(&i) => Ok(Format::Tom(i)),
                _ => Err(err()),
            }
        } else if let Some(rest) = lower.strip_prefix("jerry").or_else(|| lower.strip_prefix("jer")) {
            match digits(rest).as_deref() {
                Some(&[i, j]) if 1 <= i && i < j && j <= 5 => Ok(Format::Jerry(i, j)),
                _ => Err(err()),
            }
        } else {
            Err(err())
        }
    }
}
