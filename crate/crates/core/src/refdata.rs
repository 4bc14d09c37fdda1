//! Cited constants: known kissing numbers, published upper bounds, and
//! conjectured values. The table is compiled in from `data/reference.json`.

use std::fmt;
use std::io::Write;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Proved,
    Conjectured,
    NumericalBound,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Proved => "proved",
            Status::Conjectured => "conjectured",
            Status::NumericalBound => "numerical-bound",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Value {
    Integer(i64),
    Real(f64),
}

impl Value {
    pub fn as_f64(self) -> f64 {
        match self {
            Value::Integer(i) => i as f64,
            Value::Real(r) => r,
        }
    }
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::Integer(i) => write!(f, "{i}"),
            Value::Real(r) => write!(f, "{r}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReferenceEntry {
    pub key: String,
    pub value: Value,
    pub status: Status,
    pub citation: String,
}

static TABLE: OnceLock<Vec<ReferenceEntry>> = OnceLock::new();

pub fn entries() -> &'static [ReferenceEntry] {
    TABLE.get_or_init(|| {
        serde_json::from_str(include_str!("../data/reference.json"))
            .expect("embedded reference table is valid JSON")
    })
}

pub fn lookup(key: &str) -> Result<&'static ReferenceEntry> {
    entries()
        .iter()
        .find(|e| e.key == key)
        .ok_or_else(|| Error::UnknownKey(key.to_owned()))
}

/// The stored SDP bounds `s_d(4)` as `(d, value)`, in increasing `d`.
pub fn sdp_sequence() -> Vec<(usize, f64)> {
    let mut out: Vec<(usize, f64)> = entries()
        .iter()
        .filter_map(|e| {
            let d = e
                .key
                .strip_prefix("sdp_bound_s")?
                .strip_suffix("_dim4")?
                .parse()
                .ok()?;
            Some((d, e.value.as_f64()))
        })
        .collect();
    out.sort_by_key(|p| p.0);
    out
}

pub fn write_csv<W: Write>(mut out: W) -> std::io::Result<()> {
    writeln!(out, "key,value,status,citation")?;
    for e in entries() {
        writeln!(
            out,
            "{},{},{},\"{}\"",
            e.key,
            e.value,
            e.status,
            e.citation.replace('"', "\"\"")
        )?;
    }
    Ok(())
}
