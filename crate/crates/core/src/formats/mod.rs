//! Tom and Jerry formats: symmetry orbits, forced zeros, weight-level
//! failures, random instantiation and the fishy-zero battery.

mod format;
mod skew;

use std::fmt;
use std::sync::Arc;

use rand::Rng;
use sha2::{Digest, Sha256};

use crate::candidates::{weight_matrix, CandidateError, CentredCandidate, PfaffianShape, WeightMatrix};
use crate::groebner::{GroebnerError, Ideal};
use crate::polyring::{Poly, RingRef};

pub use format::{upper_positions, Format, FormatParseError};
pub use skew::SkewMatrix;

/// Why a construction fails. Variants follow the numbered list of failure
/// tests, then the downstream outcomes.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum FailureReason {
    /// (1) a variable occurs in no entry of the matrix.
    VariableMissing { var: String },
    /// (2) a variable occurs as a pure power in no entry.
    NoPurePower { var: String },
    /// (3) two zero entries share a row or column.
    CollinearZeros { first: (usize, usize), second: (usize, usize) },
    /// (4) two entries flanking a zero are proportional.
    CoincidentFlanks { zero: (usize, usize), first: (usize, usize), second: (usize, usize) },
    /// (5) an entry flanking a zero lies in the ideal of the other five.
    FlankInIdeal { zero: (usize, usize), entry: (usize, usize) },
    /// The six entries flanking a zero are not a regular sequence.
    FlanksNotRegular { zero: (usize, usize), dimension: i32 },
    /// (6) a coordinate point off `D` is not terminal.
    NonterminalOffD { point: String, detail: String },
    /// (7) a coordinate point on `D` is not terminal.
    NonterminalOnD { point: String, detail: String },
    Timeout { stage: String },
    /// The singularity checks or the node count cross-check failed.
    DownstreamSingular { detail: String },
}

impl FailureReason {
    /// Short machine-friendly tag.
    pub fn tag(&self) -> &'static str {
        match self {
            FailureReason::VariableMissing { .. } => "variable-missing",
            FailureReason::NoPurePower { .. } => "no-pure-power",
            FailureReason::CollinearZeros { .. } => "collinear-zeros",
            FailureReason::CoincidentFlanks { .. } => "coincident-flanks",
            FailureReason::FlankInIdeal { .. } => "flank-in-ideal",
            FailureReason::FlanksNotRegular { .. } => "flanks-not-regular",
            FailureReason::NonterminalOffD { .. } => "nonterminal-off-D",
            FailureReason::NonterminalOnD { .. } => "nonterminal-on-D",
            FailureReason::Timeout { .. } => "timeout",
            FailureReason::DownstreamSingular { .. } => "downstream-singular",
        }
    }

    /// Whether the reason is a fishy zero (tests (3) to (5) or the regular-sequence test).
    pub fn is_fishy(&self) -> bool {
        matches!(
            self,
            FailureReason::CollinearZeros { .. }
                | FailureReason::CoincidentFlanks { .. }
                | FailureReason::FlankInIdeal { .. }
                | FailureReason::FlanksNotRegular { .. }
        )
    }
}

fn pos((i, j): (usize, usize)) -> String {
    format!("m{}{}", i + 1, j + 1)
}

impl fmt::Display for FailureReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tag = self.tag();
        match self {
            FailureReason::VariableMissing { var } | FailureReason::NoPurePower { var } => write!(f, "{tag}: {var}"),
            FailureReason::CollinearZeros { first, second } => write!(f, "{tag}: {} = {} = 0", pos(*first), pos(*second)),
            FailureReason::CoincidentFlanks { zero, first, second } => {
                write!(f, "{tag}: {} = 0, {} ~ {}", pos(*zero), pos(*first), pos(*second))
            }
            FailureReason::FlankInIdeal { zero, entry } => write!(f, "{tag}: {} = 0, {} in ideal of the others", pos(*zero), pos(*entry)),
            FailureReason::FlanksNotRegular { zero, dimension } => {
                write!(f, "{tag}: {} = 0, flank locus of affine dimension {dimension}", pos(*zero))
            }
            FailureReason::NonterminalOffD { point, detail } | FailureReason::NonterminalOnD { point, detail } => {
                write!(f, "{tag}: {point}: {detail}")
            }
            FailureReason::Timeout { stage } => write!(f, "{tag}: {stage}"),
            FailureReason::DownstreamSingular { detail } => write!(f, "{tag}: {detail}"),
        }
    }
}

/// A format applied to a centred candidate, with everything decidable from weights.
#[derive(Clone, Debug)]
pub struct FormatCandidate {
    pub centred: Arc<CentredCandidate>,
    pub shape: PfaffianShape,
    pub weights: WeightMatrix,
    pub format: Format,
    pub bound_mask: [bool; 10],
    /// 0-based upper-triangle positions that must be zero.
    pub forced_zeros: Vec<(usize, usize)>,
    /// All formats equivalent to this one under weight symmetries.
    pub orbit: Vec<Format>,
}

impl FormatCandidate {
    pub fn new(centred: Arc<CentredCandidate>, shape: PfaffianShape, format: Format) -> Result<Self, CandidateError> {
        let weights = weight_matrix(&shape)?;
        let orbit = orbit_of(&weights, format);
        let mut fc = FormatCandidate {
            centred,
            shape,
            weights,
            format,
            bound_mask: format.bound_mask(),
            forced_zeros: Vec::new(),
            orbit,
        };
        fc.forced_zeros = forced_zero_pattern(&fc);
        Ok(fc)
    }

    /// Weights of `x1..x4, y1, y2, y3`.
    pub fn variable_weights(&self) -> [u32; 7] {
        let c = &self.centred;
        let mut w = [0; 7];
        w[..4].copy_from_slice(&c.x_weights);
        w[4..].copy_from_slice(&c.d_weights);
        w
    }

    pub fn is_bound(&self, i: usize, j: usize) -> bool {
        self.format.is_bound(i, j)
    }

    pub fn is_forced_zero(&self, i: usize, j: usize) -> bool {
        let (i, j) = (i.min(j), i.max(j));
        self.forced_zeros.contains(&(i, j))
    }
}

/// Permutations of the five indices preserving the weight matrix.
pub fn symmetry_group(w: &WeightMatrix) -> Vec<[usize; 5]> {
    let mut out = Vec::new();
    let mut perm = [0, 1, 2, 3, 4];
    permutations(&mut perm, 0, &mut |p| {
        if upper_positions().all(|(i, j)| w.get(p[i], p[j]) == w.get(i, j)) {
            out.push(*p);
        }
    });
    out.sort_unstable();
    out
}

fn permutations(p: &mut [usize; 5], k: usize, f: &mut impl FnMut(&[usize; 5])) {
    if k == 5 {
        f(p);
        return;
    }
    for i in k..5 {
        p.swap(k, i);
        permutations(p, k + 1, f);
        p.swap(k, i);
    }
}

/// Sorted orbit of `f` under the weight symmetries.
pub fn orbit_of(w: &WeightMatrix, f: Format) -> Vec<Format> {
    let mut o: Vec<Format> = symmetry_group(w).iter().map(|p| f.permuted(p)).collect();
    o.sort_unstable();
    o.dedup();
    o
}

/// One representative (the least member) per orbit, in the order Tom1..Tom5, Jer12..Jer45.
pub fn enumerate_formats(c: &Arc<CentredCandidate>, s: PfaffianShape) -> Result<Vec<FormatCandidate>, CandidateError> {
    let w = weight_matrix(&s)?;
    Format::all()
        .into_iter()
        .filter(|&f| orbit_of(&w, f)[0] == f)
        .map(|f| FormatCandidate::new(c.clone(), s, f))
        .collect()
}

fn monomial_exists(weights: &[u32], d: u32) -> bool {
    let mut reach = vec![false; d as usize + 1];
    reach[0] = true;
    for e in 1..=d as usize {
        reach[e] = weights.iter().any(|&w| (w as usize) <= e && reach[e - w as usize]);
    }
    reach[d as usize]
}

/// Whether a nonzero entry of degree `d` exists, bound to `I_D` or free.
fn entry_admissible(weights: &[u32; 7], d: u32, bound: bool) -> bool {
    if bound {
        weights[..4].iter().any(|&w| w <= d && monomial_exists(weights, d - w))
    } else {
        monomial_exists(weights, d)
    }
}

/// Positions whose degree admits no monomial (free) or no element of `I_D` (bound).
pub fn forced_zero_pattern(fc: &FormatCandidate) -> Vec<(usize, usize)> {
    let w = fc.variable_weights();
    upper_positions()
        .filter(|&(i, j)| !entry_admissible(&w, fc.weights.get(i, j), fc.is_bound(i, j)))
        .collect()
}

/// Whether variable `v` can occur in an entry of degree `d`.
fn variable_can_occur(weights: &[u32; 7], v: usize, d: u32, bound: bool) -> bool {
    let wv = weights[v];
    if wv > d {
        return false;
    }
    if !bound {
        return monomial_exists(weights, d - wv);
    }
    if v < 4 {
        return true;
    }
    weights[..4].iter().any(|&wl| wl + wv <= d && monomial_exists(weights, d - wl - wv))
}

/// Whether some entry of degree `d` may contain the pure power `v^(d/w)`.
fn pure_power_possible(weights: &[u32; 7], v: usize, d: u32, bound: bool) -> bool {
    d.is_multiple_of(weights[v]) && (!bound || v < 4)
}

/// Failures decidable from the weights alone.
pub fn weight_failures(fc: &FormatCandidate) -> Vec<FailureReason> {
    let mut out = Vec::new();
    let z = &fc.forced_zeros;
    for (n, &a) in z.iter().enumerate() {
        for &b in &z[n + 1..] {
            if a.0 == b.0 || a.0 == b.1 || a.1 == b.0 || a.1 == b.1 {
                out.push(FailureReason::CollinearZeros { first: a, second: b });
            }
        }
    }
    let w = fc.variable_weights();
    let names = ["x1", "x2", "x3", "x4", "y1", "y2", "y3"];
    let live: Vec<(u32, bool)> = upper_positions()
        .filter(|&(i, j)| !fc.is_forced_zero(i, j))
        .map(|(i, j)| (fc.weights.get(i, j), fc.is_bound(i, j)))
        .collect();
    for v in 0..7 {
        if !live.iter().any(|&(d, b)| variable_can_occur(&w, v, d, b)) {
            out.push(FailureReason::VariableMissing { var: names[v].into() });
        } else if !live.iter().any(|&(d, b)| pure_power_possible(&w, v, d, b)) {
            out.push(FailureReason::NoPurePower { var: names[v].into() });
        }
    }
    out
}

/// Random member of the format: general forms in free entries, general
/// elements of `I_D` in bound ones, zeros where forced.
pub fn instantiate<R: Rng + ?Sized>(fc: &FormatCandidate, ring: &RingRef, rng: &mut R) -> SkewMatrix {
    let w = fc.variable_weights();
    let mut m = SkewMatrix::zero(ring, 5);
    for (i, j) in upper_positions() {
        if fc.is_forced_zero(i, j) {
            continue;
        }
        let d = fc.weights.get(i, j);
        let entry = if fc.is_bound(i, j) {
            let mut e = ring.zero();
            for (l, &wl) in w[..4].iter().enumerate() {
                if wl <= d {
                    e = e + ring.var(l) * ring.general_form(d - wl, rng);
                }
            }
            e
        } else {
            ring.general_form(d, rng)
        };
        m.set(i, j, entry);
    }
    m
}

/// Zero entries that are not forced by the weights.
pub fn accidental_zeros(fc: &FormatCandidate, m: &SkewMatrix) -> Vec<(usize, usize)> {
    upper_positions()
        .filter(|&(i, j)| m.get(i, j).is_zero() && !fc.is_forced_zero(i, j))
        .collect()
}

/// Seed for one attempt of one case, derived from the master seed.
pub fn derive_seed(master: u64, candidate: &str, centre: usize, format: Format, attempt: u32) -> u64 {
    let mut h = Sha256::new();
    h.update(master.to_le_bytes());
    h.update(candidate.as_bytes());
    h.update([0]);
    h.update((centre as u64).to_le_bytes());
    h.update(format.to_string().as_bytes());
    h.update(attempt.to_le_bytes());
    let out = h.finalize();
    u64::from_le_bytes(out[..8].try_into().expect("digest has 32 bytes"))
}

/// Fishy-zero battery on every zero entry of a 5×5 skew matrix.
pub fn fishy_zero_tests(m: &SkewMatrix) -> Result<Option<FailureReason>, GroebnerError> {
    let ring = m.ring().clone();
    let zeros: Vec<(usize, usize)> = upper_positions().filter(|&(i, j)| m.get(i, j).is_zero()).collect();
    for &(a, b) in &zeros {
        let flank_pos: Vec<(usize, usize)> = [a, b]
            .iter()
            .flat_map(|&r| (0..5).filter(move |&k| k != a && k != b).map(move |k| (r.min(k), r.max(k))))
            .collect();
        let flanks: Vec<Poly> = flank_pos.iter().map(|&(i, j)| m.get(i, j)).collect();
        if let Some(n) = flanks.iter().position(Poly::is_zero) {
            return Ok(Some(FailureReason::CollinearZeros { first: (a, b), second: flank_pos[n] }));
        }
        for s in 0..6 {
            for t in s + 1..6 {
                if proportional(&flanks[s], &flanks[t]) {
                    return Ok(Some(FailureReason::CoincidentFlanks {
                        zero: (a, b),
                        first: flank_pos[s],
                        second: flank_pos[t],
                    }));
                }
            }
        }
        for s in 0..6 {
            let others: Vec<Poly> = (0..6).filter(|&t| t != s).map(|t| flanks[t].clone()).collect();
            if Ideal::new(&ring, others).contains(&flanks[s])? {
                return Ok(Some(FailureReason::FlankInIdeal { zero: (a, b), entry: flank_pos[s] }));
            }
        }
        let dimension = Ideal::new(&ring, flanks).dimension()?;
        if dimension > ring.nvars() as i32 - 6 {
            return Ok(Some(FailureReason::FlanksNotRegular { zero: (a, b), dimension }));
        }
    }
    Ok(None)
}

/// `f = c·g` for a nonzero scalar `c`.
fn proportional(f: &Poly, g: &Poly) -> bool {
    if f.len() != g.len() || f.is_zero() {
        return false;
    }
    let field = f.ring().field();
    let c = field.mul(f.leading_coeff(), field.inv(g.leading_coeff()));
    g.scale(c) == *f
}
