//! Output records: one JSON object per line, or CSV with a header row.
//! Every big integer is carried as a decimal string; no native number type
//! is used beyond small indices.

use serde::{Deserialize, Serialize};
use serde_json::Value;
use std::collections::BTreeMap;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Json,
    Csv,
}

impl std::str::FromStr for Format {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "json" => Ok(Format::Json),
            "csv" => Ok(Format::Csv),
            other => Err(format!("unknown format: {other}")),
        }
    }
}

/// A compute/eval/factor record. Field presence depends on the object kind;
/// `None` fields are omitted from JSON and left empty in CSV.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ObjectRecord {
    pub object: String,
    pub n: u64,
    pub family: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub target: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub strategy: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub power: Option<i64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub d: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub point: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub coeffs: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub c: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub exps: Option<BTreeMap<String, i64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub phi_exps: Option<BTreeMap<String, i64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub value: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub residue: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub abs2: Option<String>,
}

impl ObjectRecord {
    pub fn new(object: &str, n: u64, family: &str) -> Self {
        ObjectRecord {
            object: object.to_string(),
            n,
            family: family.to_string(),
            target: None,
            strategy: None,
            power: None,
            d: None,
            point: None,
            coeffs: None,
            c: None,
            exps: None,
            phi_exps: None,
            value: None,
            residue: None,
            abs2: None,
        }
    }

    /// The cacheable payload: everything except bookkeeping, as canonical
    /// JSON (BTreeMap fields keep key order deterministic).
    pub fn payload(&self) -> Value {
        serde_json::to_value(self).expect("record serializes")
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct CheckRecord {
    pub check: String,
    pub n: u64,
    pub status: String,
    pub computed: String,
    pub expected: String,
    pub elapsed_ms: u64,
    pub gating: bool,
}

fn csv_escape(field: &str) -> String {
    if field.contains(',') || field.contains('"') || field.contains('\n') {
        format!("\"{}\"", field.replace('"', "\"\""))
    } else {
        field.to_string()
    }
}

pub const CHECK_CSV_HEADER: &str = "check,n,status,computed,expected,elapsed_ms,gating";

pub fn check_record_csv(r: &CheckRecord) -> String {
    format!(
        "{},{},{},{},{},{},{}",
        csv_escape(&r.check),
        r.n,
        csv_escape(&r.status),
        csv_escape(&r.computed),
        csv_escape(&r.expected),
        r.elapsed_ms,
        r.gating
    )
}

pub const OBJECT_CSV_HEADER: &str = "object,n,family,key,value";

/// Flatten an object record to `key,value` CSV rows: coefficients by index,
/// exponent maps by their index key, scalar fields by name.
pub fn object_record_csv(r: &ObjectRecord) -> Vec<String> {
    let prefix = format!(
        "{},{},{}",
        csv_escape(&r.object),
        r.n,
        csv_escape(&r.family)
    );
    let mut rows = Vec::new();
    if let Some(coeffs) = &r.coeffs {
        for (k, v) in coeffs.iter().enumerate() {
            rows.push(format!("{prefix},{k},{v}"));
        }
    }
    if let Some(c) = &r.c {
        for (k, v) in c.iter().enumerate() {
            rows.push(format!("{prefix},c{},{v}", k + 1));
        }
    }
    for (label, map) in [("exp", &r.exps), ("phi", &r.phi_exps)] {
        if let Some(map) = map {
            for (k, v) in map {
                rows.push(format!("{prefix},{label}{k},{v}"));
            }
        }
    }
    if let Some(v) = &r.value {
        rows.push(format!("{prefix},value,{}", csv_escape(v)));
    }
    if let Some(residue) = &r.residue {
        rows.push(format!(
            "{prefix},residue,{}",
            csv_escape(&residue.join(";"))
        ));
    }
    if let Some(abs2) = &r.abs2 {
        rows.push(format!("{prefix},abs2,{}", csv_escape(abs2)));
    }
    if rows.is_empty() {
        rows.push(format!("{prefix},,"));
    }
    rows
}
