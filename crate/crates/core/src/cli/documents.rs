//! Input documents and the canonical result document.
//!
//! Output goes through `serde_json::Value`, whose maps are ordered by key, so
//! the same input always prints the same bytes. Integers beyond `±2^53` are
//! written as decimal strings; [`restore_integers`] undoes that on input.

use std::io::Read;
use std::path::Path;

use serde::{Deserialize, Serialize};
use serde_json::{Map, Number, Value};

use crate::error::{Error, Result};
use crate::semigroup::{ExponentVector, MonomialSemigroup};
use crate::torusrep::TorusRep;

const SAFE_INTEGER: u64 = 1 << 53;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RepDocument {
    pub rank: usize,
    /// One weight column `m_i` per coordinate.
    pub weights: Vec<Vec<i64>>,
}

impl RepDocument {
    pub fn from_rep(rep: &TorusRep) -> Self {
        RepDocument { rank: rep.rank(), weights: rep.weight_columns().to_vec() }
    }

    pub fn to_rep(&self) -> Result<TorusRep> {
        if self.weights.is_empty() {
            return Err(Error::invalid("field `weights` is empty"));
        }
        for (i, w) in self.weights.iter().enumerate() {
            if w.len() != self.rank {
                return Err(Error::invalid(format!(
                    "field `weights[{i}]` has length {} but `rank` is {}",
                    w.len(),
                    self.rank
                )));
            }
        }
        TorusRep::from_weights(&self.weights).map_err(|e| match e {
            Error::InvalidInput(m) => Error::invalid(format!("field `weights`: {m}")),
            e => e,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GeneratorsDocument {
    pub generators: Vec<ExponentVector>,
}

impl GeneratorsDocument {
    pub fn to_semigroup(&self, dim: usize) -> Result<MonomialSemigroup> {
        for (i, g) in self.generators.iter().enumerate() {
            if g.len() != dim {
                return Err(Error::invalid(format!(
                    "field `generators[{i}]` has length {} but the representation has n = {dim}",
                    g.len()
                )));
            }
        }
        MonomialSemigroup::new(dim, self.generators.clone())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ResultDocument {
    pub command: Value,
    pub result: Value,
    pub certificate: Value,
    pub version: String,
}

impl ResultDocument {
    pub fn new(command: Value, result: Value, certificate: Value) -> Self {
        ResultDocument { command, result, certificate, version: env!("CARGO_PKG_VERSION").to_string() }
    }

    /// Pretty-printed canonical form, newline-terminated.
    pub fn render(&self) -> String {
        let v = canonical(serde_json::to_value(self).expect("documents serialize"));
        let mut s = serde_json::to_string_pretty(&v).expect("values serialize");
        s.push('\n');
        s
    }

    pub fn parse(text: &str) -> Result<Self> {
        let v: Value = serde_json::from_str(text).map_err(|e| Error::invalid(format!("result document: {e}")))?;
        serde_json::from_value(v).map_err(|e| Error::invalid(format!("result document: {e}")))
    }
}

/// Rewrites integers outside `±2^53` as strings.
pub fn canonical(v: Value) -> Value {
    match v {
        Value::Number(n) => {
            let big = match (n.as_u64(), n.as_i64()) {
                (Some(u), _) => u > SAFE_INTEGER,
                (None, Some(i)) => i.unsigned_abs() > SAFE_INTEGER,
                _ => false,
            };
            if big {
                Value::String(n.to_string())
            } else {
                Value::Number(n)
            }
        }
        Value::Array(a) => Value::Array(a.into_iter().map(canonical).collect()),
        Value::Object(m) => Value::Object(m.into_iter().map(|(k, v)| (k, canonical(v))).collect::<Map<_, _>>()),
        v => v,
    }
}

/// Inverse of [`canonical`] for every integer that fits 64 bits.
pub fn restore_integers(v: Value) -> Value {
    match v {
        Value::String(s) if is_integer_literal(&s) => {
            if let Ok(u) = s.parse::<u64>() {
                Value::Number(Number::from(u))
            } else if let Ok(i) = s.parse::<i64>() {
                Value::Number(Number::from(i))
            } else {
                Value::String(s)
            }
        }
        Value::Array(a) => Value::Array(a.into_iter().map(restore_integers).collect()),
        Value::Object(m) => Value::Object(m.into_iter().map(|(k, v)| (k, restore_integers(v))).collect::<Map<_, _>>()),
        v => v,
    }
}

fn is_integer_literal(s: &str) -> bool {
    let digits = s.strip_prefix('-').unwrap_or(s);
    !digits.is_empty() && digits.bytes().all(|b| b.is_ascii_digit())
}

/// Reads a file, or standard input for `-`.
pub fn read_text(path: &Path) -> Result<String> {
    if path.as_os_str() == "-" {
        let mut s = String::new();
        std::io::stdin()
            .read_to_string(&mut s)
            .map_err(|e| Error::invalid(format!("reading standard input: {e}")))?;
        return Ok(s);
    }
    std::fs::read_to_string(path).map_err(|e| Error::invalid(format!("reading {}: {e}", path.display())))
}

fn parse_as<T: for<'de> Deserialize<'de>>(what: &str, v: Value) -> Result<T> {
    serde_json::from_value(v).map_err(|e| Error::invalid(format!("{what}: {e}")))
}

fn parse_value(what: &str, text: &str) -> Result<Value> {
    let v: Value = serde_json::from_str(text).map_err(|e| Error::invalid(format!("{what}: {e}")))?;
    Ok(restore_integers(v))
}

/// A representation document, or a result document carrying one (`sv-rep`).
pub fn load_rep(path: &Path) -> Result<TorusRep> {
    let v = parse_value("representation document", &read_text(path)?)?;
    let (v, from_result) = unwrap_result(v, "weights");
    let v = only_keys(v, &["rank", "weights"], from_result);
    parse_as::<RepDocument>("representation document", v)?.to_rep()
}

/// A generators document, or a result document whose payload lists generators.
pub fn load_generators(path: &Path, dim: usize) -> Result<MonomialSemigroup> {
    let v = parse_value("generators document", &read_text(path)?)?;
    let (v, from_result) = unwrap_result(v, "generators");
    let v = only_keys(v, &["generators"], from_result);
    parse_as::<GeneratorsDocument>("generators document", v)?.to_semigroup(dim)
}

/// The payload of a result document that has `key`, flagged as unwrapped.
fn unwrap_result(v: Value, key: &str) -> (Value, bool) {
    match v {
        Value::Object(mut m) if m.contains_key("result") && m.contains_key("version") => {
            match m.remove("result").expect("checked") {
                inner if inner.get(key).is_some() => (inner, true),
                inner => {
                    m.insert("result".into(), inner);
                    (Value::Object(m), false)
                }
            }
        }
        v => (v, false),
    }
}

/// Drops payload fields beside the document's own when `strip` is set.
fn only_keys(v: Value, keys: &[&str], strip: bool) -> Value {
    match v {
        Value::Object(m) if strip => Value::Object(m.into_iter().filter(|(k, _)| keys.contains(&k.as_str())).collect()),
        v => v,
    }
}

pub fn load_result(path: &Path) -> Result<ResultDocument> {
    let doc = ResultDocument::parse(&read_text(path)?)?;
    Ok(ResultDocument {
        command: restore_integers(doc.command),
        result: restore_integers(doc.result),
        certificate: restore_integers(doc.certificate),
        version: doc.version,
    })
}
