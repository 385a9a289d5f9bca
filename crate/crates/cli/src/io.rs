// SPDX-License-Identifier: Apache-2.0

//! Matrix files and deterministic JSON output.

use std::fmt::Write as _;
use std::path::Path;

use anyhow::{bail, Context, Result};
use commexp_core::numkernel::{c, CMat};
use serde::{Deserialize, Serialize};
use serde_json::Value;
use sha2::{Digest, Sha256};

pub const MATRIX_SCHEMA: &str = "commexp-matrix/1";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Scale {
    One,
    Pi,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MatrixFile {
    #[serde(default)]
    pub schema: Option<String>,
    pub dim: usize,
    pub scale: Scale,
    pub entries: Vec<Vec<[f64; 2]>>,
}

impl MatrixFile {
    pub fn from_cmat(m: &CMat) -> MatrixFile {
        MatrixFile {
            schema: Some(MATRIX_SCHEMA.to_string()),
            dim: m.dim(),
            scale: if m.is_pi_scaled() { Scale::Pi } else { Scale::One },
            entries: m.stored_rows().iter().map(|r| r.iter().map(|z| [z.re, z.im]).collect()).collect(),
        }
    }

    pub fn to_cmat(&self) -> Result<CMat> {
        if let Some(s) = &self.schema {
            if s != MATRIX_SCHEMA {
                bail!("unsupported matrix schema {s:?}, expected {MATRIX_SCHEMA:?}");
            }
        }
        if self.dim == 0 || self.entries.len() != self.dim {
            bail!("dim is {} but entries has {} rows", self.dim, self.entries.len());
        }
        for (i, row) in self.entries.iter().enumerate() {
            if row.len() != self.dim {
                bail!("row {i} has {} entries, expected {}", row.len(), self.dim);
            }
        }
        let rows: Vec<Vec<_>> =
            self.entries.iter().map(|r| r.iter().map(|&[re, im]| c(re, im)).collect()).collect();
        let m = CMat::from_rows(&rows)?;
        Ok(match self.scale {
            Scale::One => m,
            Scale::Pi => m.into_pi_scaled(),
        })
    }

    pub fn to_json(&self) -> String {
        to_json_string(&serde_json::to_value(self).expect("matrix files serialize"))
    }
}

/// Loads a matrix file and returns it with the SHA-256 of its bytes.
pub fn load_matrix(path: &Path) -> Result<(CMat, String)> {
    let bytes = std::fs::read(path).with_context(|| format!("reading {}", path.display()))?;
    let file: MatrixFile =
        serde_json::from_slice(&bytes).with_context(|| format!("parsing {}", path.display()))?;
    let m = file.to_cmat().with_context(|| format!("validating {}", path.display()))?;
    Ok((m, sha256_hex(&bytes)))
}

pub fn write_matrix(path: &Path, m: &CMat) -> Result<()> {
    std::fs::write(path, MatrixFile::from_cmat(m).to_json()).with_context(|| format!("writing {}", path.display()))
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

/// Integral values print as `x.0`; everything else with 17 significant
/// digits, which round-trips every `f64`.
pub fn format_f64(x: f64) -> String {
    if x.fract() == 0.0 && x.abs() < 1e15 {
        format!("{x:.1}")
    } else {
        format!("{x:.16e}")
    }
}

/// Pretty JSON with two-space indentation and the float format above.
pub fn to_json_string(v: &Value) -> String {
    let mut out = String::new();
    write_value(&mut out, v, 0);
    out.push('\n');
    out
}

fn write_value(out: &mut String, v: &Value, depth: usize) {
    let pad = |out: &mut String, d: usize| out.extend(std::iter::repeat_n(' ', 2 * d));
    match v {
        Value::Null | Value::Bool(_) | Value::String(_) => out.push_str(&v.to_string()),
        Value::Number(n) => match (n.as_i64(), n.as_u64(), n.as_f64()) {
            (Some(i), _, _) => write!(out, "{i}").unwrap(),
            (_, Some(u), _) => write!(out, "{u}").unwrap(),
            (_, _, Some(f)) => out.push_str(&format_f64(f)),
            _ => out.push_str(&n.to_string()),
        },
        Value::Array(items) if items.iter().all(|x| x.is_number() || x.is_boolean() || x.is_null()) => {
            out.push('[');
            for (i, x) in items.iter().enumerate() {
                if i > 0 {
                    out.push_str(", ");
                }
                write_value(out, x, depth);
            }
            out.push(']');
        }
        Value::Array(items) => {
            out.push_str("[\n");
            for (i, x) in items.iter().enumerate() {
                pad(out, depth + 1);
                write_value(out, x, depth + 1);
                out.push_str(if i + 1 < items.len() { ",\n" } else { "\n" });
            }
            pad(out, depth);
            out.push(']');
        }
        Value::Object(map) if map.is_empty() => out.push_str("{}"),
        Value::Object(map) => {
            out.push_str("{\n");
            for (i, (k, x)) in map.iter().enumerate() {
                pad(out, depth + 1);
                out.push_str(&Value::String(k.clone()).to_string());
                out.push_str(": ");
                write_value(out, x, depth + 1);
                out.push_str(if i + 1 < map.len() { ",\n" } else { "\n" });
            }
            pad(out, depth);
            out.push('}');
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use commexp_core::families::intro_pair;

    #[test]
    fn floats_round_trip() {
        for x in [0.1, 1.0 / 3.0, -2.5e-300, 6.02214076e23, 60.0, -0.0, 1e15, 123456789.123456789] {
            let s = format_f64(x);
            assert_eq!(s.parse::<f64>().unwrap().to_bits(), x.to_bits(), "{s}");
        }
    }

    #[test]
    fn matrix_round_trip() {
        let (a, b) = intro_pair();
        for m in [a, b] {
            let text = MatrixFile::from_cmat(&m).to_json();
            let back: MatrixFile = serde_json::from_str(&text).unwrap();
            let m2 = back.to_cmat().unwrap();
            assert_eq!(m2.stored_rows(), m.stored_rows());
            assert_eq!(m2.is_pi_scaled(), m.is_pi_scaled());
        }
    }

    #[test]
    fn malformed_files_are_rejected() {
        let bad = r#"{"dim": 2, "scale": "pi", "entries": [[[0, 0]]]}"#;
        let f: MatrixFile = serde_json::from_str(bad).unwrap();
        assert!(f.to_cmat().is_err());
        let err = serde_json::from_str::<MatrixFile>("{\n\"dim\": 2,\n\"scale\": \"tau\"}").unwrap_err();
        assert_eq!(err.line(), 3);
    }
}
