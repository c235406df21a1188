//! Machine-readable report documents (schema version 1).
//!
//! Every integer that comes out of the algebra layer is written as a decimal
//! string, so no consumer ever rounds a length through a float.

use serde::Serialize;
use sha2::{Digest, Sha256};

pub const SCHEMA_VERSION: u32 = 1;

/// Serde helpers that write integers as decimal strings.
pub mod decimal {
    use std::fmt::Display;

    use serde::Serializer;

    pub fn serialize<T: Display, S: Serializer>(value: &T, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(value)
    }

    pub mod seq {
        use std::fmt::Display;

        use serde::ser::SerializeSeq;
        use serde::Serializer;

        pub fn serialize<T: Display, S: Serializer>(values: &[T], serializer: S) -> Result<S::Ok, S::Error> {
            let mut seq = serializer.serialize_seq(Some(values.len()))?;
            for v in values {
                seq.serialize_element(&v.to_string())?;
            }
            seq.end()
        }
    }

    pub mod option {
        use std::fmt::Display;

        use serde::Serializer;

        pub fn serialize<T: Display, S: Serializer>(value: &Option<T>, serializer: S) -> Result<S::Ok, S::Error> {
            match value {
                Some(v) => serializer.collect_str(v),
                None => serializer.serialize_none(),
            }
        }
    }
}

/// Envelope shared by every command's JSON output.
#[derive(Debug, Clone, Serialize)]
pub struct ReportDocument<T: Serialize> {
    pub schema_version: u32,
    pub tool_version: &'static str,
    pub command: String,
    pub instance_digest: Option<String>,
    pub result: T,
}

impl<T: Serialize> ReportDocument<T> {
    pub fn new(command: impl Into<String>, instance_digest: Option<String>, result: T) -> Self {
        Self {
            schema_version: SCHEMA_VERSION,
            tool_version: env!("CARGO_PKG_VERSION"),
            command: command.into(),
            instance_digest,
            result,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report types serialize infallibly")
    }
}

/// Hex SHA-256 of a canonical text form.
pub fn digest(canonical: &str) -> String {
    hex::encode(Sha256::digest(canonical.as_bytes()))
}

/// One row of a growth table.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TableRow {
    pub n: u32,
    #[serde(rename = "H", with = "decimal")]
    pub hilbert: u64,
    #[serde(rename = "IR", with = "decimal")]
    pub irreducibility: u64,
    /// `H(n) - H(n-1)`, absent at `n = 0`.
    #[serde(rename = "dH", with = "decimal::option")]
    pub hilbert_jump: Option<u64>,
}

pub fn table_rows(hilbert: &[u64], irreducibility: &[u64]) -> Vec<TableRow> {
    hilbert
        .iter()
        .zip(irreducibility)
        .enumerate()
        .map(|(n, (&h, &ir))| TableRow {
            n: n as u32,
            hilbert: h,
            irreducibility: ir,
            hilbert_jump: (n > 0).then(|| h - hilbert[n - 1]),
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn integers_are_strings() {
        let rows = table_rows(&[1, 3, 6], &[1, 2, 3]);
        let json = serde_json::to_value(&rows).unwrap();
        assert_eq!(json[0]["H"], "1");
        assert_eq!(json[0]["dH"], serde_json::Value::Null);
        assert_eq!(json[2]["dH"], "3");
        let doc = ReportDocument::new("table", Some(digest("x")), rows);
        let v: serde_json::Value = serde_json::from_str(&doc.to_json()).unwrap();
        assert_eq!(v["schema_version"], 1);
        assert_eq!(v["instance_digest"].as_str().unwrap().len(), 64);
    }
}
