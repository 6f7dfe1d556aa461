//! Shared inputs for the benchmark harness.

use std::sync::Arc;

use tomjerry::candidates::{fixtures, load_candidates_str, pfaffian_shape, project_type_i};
use tomjerry::formats::{enumerate_formats, Format, FormatCandidate};

/// The orbit of `format` at basket index `centre` of the bundled genus 0 candidate.
pub fn genus_zero_case(centre: usize, format: &str) -> FormatCandidate {
    let c = Arc::new(load_candidates_str(fixtures::GENUS_ZERO).unwrap().remove(0));
    let centred = Arc::new(project_type_i(&c, centre).unwrap());
    let shape = pfaffian_shape(&centred.numerator_y).unwrap();
    let f: Format = format.parse().unwrap();
    enumerate_formats(&centred, shape).unwrap().into_iter().find(|fc| fc.orbit.contains(&f)).unwrap()
}
