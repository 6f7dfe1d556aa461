use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::io::Read;

use serde::Deserialize;
use serde_json::Value;

use super::{BasketPoint, CandidateError, FanoCandidate, IntPoly};

/// Problem with one record of a candidate file.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RecordDiagnostic {
    /// Position of the record in the file.
    pub record: usize,
    pub id: Option<String>,
    pub message: String,
}

impl fmt::Display for RecordDiagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.id {
            Some(id) => write!(f, "record {} ({}): {}", self.record, id, self.message),
            None => write!(f, "record {}: {}", self.record, self.message),
        }
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawCandidate {
    id: String,
    genus: i64,
    basket: Vec<[i64; 2]>,
    #[serde(rename = "weights_X")]
    weights_x: Vec<i64>,
    #[serde(rename = "numerator_X")]
    numerator_x: Vec<[i64; 2]>,
    #[serde(rename = "numerator_Y", default)]
    numerator_y: BTreeMap<String, Vec<[i64; 2]>>,
    #[serde(default)]
    expected_nodes: BTreeMap<String, BTreeMap<String, u32>>,
    #[serde(default)]
    #[allow(dead_code)]
    note: Option<String>,
}

/// Reads a candidate file; any bad record rejects the whole file.
pub fn load_candidates<R: Read>(mut source: R) -> Result<Vec<FanoCandidate>, CandidateError> {
    let mut text = String::new();
    source.read_to_string(&mut text).map_err(|e| CandidateError::Io(e.to_string()))?;
    load_candidates_str(&text)
}

pub fn load_candidates_str(text: &str) -> Result<Vec<FanoCandidate>, CandidateError> {
    let (out, diags) = load_candidates_lenient(text)?;
    if diags.is_empty() {
        Ok(out)
    } else {
        Err(CandidateError::Invalid(diags))
    }
}

/// Reads the valid records and reports the others; fails only when the document itself is unusable.
pub fn load_candidates_lenient(text: &str) -> Result<(Vec<FanoCandidate>, Vec<RecordDiagnostic>), CandidateError> {
    let doc: Value = serde_json::from_str(text).map_err(|e| {
        CandidateError::Invalid(vec![RecordDiagnostic { record: 0, id: None, message: format!("malformed JSON: {e}") }])
    })?;
    let records = match doc {
        Value::Array(v) => v,
        Value::Object(mut m) if m.contains_key("candidates") && m.len() == 1 => match m.remove("candidates") {
            Some(Value::Array(v)) => v,
            _ => {
                return Err(CandidateError::Invalid(vec![RecordDiagnostic {
                    record: 0,
                    id: None,
                    message: "\"candidates\" must be an array".into(),
                }]))
            }
        },
        obj @ Value::Object(_) => vec![obj],
        _ => {
            return Err(CandidateError::Invalid(vec![RecordDiagnostic {
                record: 0,
                id: None,
                message: "expected an array of candidates or a single candidate object".into(),
            }]))
        }
    };

    let mut out = Vec::new();
    let mut diags = Vec::new();
    let mut seen = BTreeSet::new();
    for (n, rec) in records.into_iter().enumerate() {
        let id = rec.get("id").and_then(Value::as_str).map(str::to_owned);
        let mut fail = |message: String| diags.push(RecordDiagnostic { record: n, id: id.clone(), message });
        match serde_json::from_value::<RawCandidate>(rec) {
            Err(e) => fail(e.to_string()),
            Ok(raw) => match validate(raw) {
                Err(msgs) => msgs.into_iter().for_each(&mut fail),
                Ok(c) => {
                    if !seen.insert(c.id.clone()) {
                        fail(format!("duplicate id {}", c.id));
                    } else {
                        out.push(c);
                    }
                }
            },
        }
    }
    Ok((out, diags))
}

fn poly_from(pairs: &[[i64; 2]], what: &str, errs: &mut Vec<String>) -> IntPoly {
    let mut ok = Vec::with_capacity(pairs.len());
    for &[c, e] in pairs {
        if !(0..=10_000).contains(&e) {
            errs.push(format!("{what}: exponent {e} out of range"));
        } else {
            ok.push((c, e as u32));
        }
    }
    IntPoly::from_pairs(&ok)
}

fn centre_key(key: &str, basket_len: usize, what: &str, errs: &mut Vec<String>) -> Option<usize> {
    match key.parse::<usize>() {
        Ok(i) if (1..=basket_len).contains(&i) => Some(i - 1),
        _ => {
            errs.push(format!("{what}: key {key:?} is not a 1-based basket index"));
            None
        }
    }
}

fn validate(raw: RawCandidate) -> Result<FanoCandidate, Vec<String>> {
    let mut errs = Vec::new();
    if raw.id.trim().is_empty() {
        errs.push("empty id".into());
    }
    if raw.genus < -2 {
        errs.push(format!("genus {} < -2", raw.genus));
    }
    let mut basket = Vec::new();
    for &[r, a] in &raw.basket {
        match BasketPoint::new(r, a) {
            Ok(p) => basket.push(p),
            Err(e) => errs.push(e.to_string()),
        }
    }
    if raw.weights_x.len() != 8 {
        errs.push(format!("weights_X has {} entries, expected 8", raw.weights_x.len()));
    }
    let mut weights = Vec::new();
    for &w in &raw.weights_x {
        if w <= 0 || w > 255 {
            errs.push(format!("weight {w} out of range"));
        } else {
            weights.push(w as u32);
        }
    }
    weights.sort_unstable();
    let numerator_x = poly_from(&raw.numerator_x, "numerator_X", &mut errs);
    if numerator_x.coeff(0) != 1 {
        errs.push("numerator_X must have constant term 1".into());
    }
    let mut numerator_y_overrides = BTreeMap::new();
    for (key, pairs) in &raw.numerator_y {
        let p = poly_from(pairs, "numerator_Y", &mut errs);
        if let Some(i) = centre_key(key, basket.len(), "numerator_Y", &mut errs) {
            numerator_y_overrides.insert(i, p);
        }
    }
    let mut expected_counts = BTreeMap::new();
    for (key, counts) in raw.expected_nodes {
        if let Some(i) = centre_key(&key, basket.len(), "expected_nodes", &mut errs) {
            expected_counts.insert(i, counts);
        }
    }
    if !errs.is_empty() {
        return Err(errs);
    }
    Ok(FanoCandidate {
        id: raw.id,
        genus: raw.genus,
        basket,
        weights,
        numerator_x,
        numerator_y_overrides,
        expected_counts,
    })
}
