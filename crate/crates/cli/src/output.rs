//! Deterministic serialization and atomic file output.

use serde::{Serialize, Serializer};
use serde_json::value::RawValue;
use std::io::Write;
use std::path::Path;
use verlinde_kit::Q;

pub const SCHEMA: &str = "v1";

/// A float serialized as `%.12e`; non-finite values become `null`.
#[derive(Debug, Clone, Copy)]
pub struct F(pub f64);

impl Serialize for F {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        if self.0.is_finite() {
            let raw = RawValue::from_string(format!("{:.12e}", self.0)).map_err(serde::ser::Error::custom)?;
            raw.serialize(s)
        } else {
            s.serialize_none()
        }
    }
}

pub fn floats(v: &[f64]) -> Vec<F> {
    v.iter().map(|&x| F(x)).collect()
}

/// Exact rational as `"p/q"` (or `"p"`).
pub fn rat(x: &Q) -> String {
    x.to_string()
}

pub fn rats(v: &[Q]) -> Vec<String> {
    v.iter().map(rat).collect()
}

pub fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable output");
    s.push('\n');
    s
}

/// Write via a temporary file in the target directory, then rename.
pub fn write_atomic(path: &Path, contents: &str) -> std::io::Result<()> {
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
    tmp.write_all(contents.as_bytes())?;
    tmp.as_file().sync_all()?;
    tmp.persist(path).map_err(|e| e.error)?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn float_format() {
        #[derive(Serialize)]
        struct T {
            a: F,
            b: F,
            c: F,
        }
        let s = serde_json::to_string(&T {
            a: F(-2.0),
            b: F(1.5e-17),
            c: F(f64::NAN),
        })
        .unwrap();
        assert_eq!(s, r#"{"a":-2.000000000000e0,"b":1.500000000000e-17,"c":null}"#);
        let v: serde_json::Value = serde_json::from_str(&s).unwrap();
        assert_eq!(v["a"].as_f64(), Some(-2.0));
    }
}
