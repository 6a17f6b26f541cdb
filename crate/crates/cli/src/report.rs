//! The report schema and its three renderings.
//!
//! JSON is canonical. CSV and text both use the flat column list from
//! [`Report::columns`]: the fixed fields, then one `condition.<id>` column
//! per regime condition, then one `detail.<key>` column per detail.

use serde::ser::SerializeMap;
use serde::{Serialize, Serializer};
use serde_json::Value;

use crate::CliError;

pub const SCHEMA_VERSION: &str = "1";

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Condition {
    pub id: String,
    pub status: String,
}

/// Ordered key/value pairs, serialized as a JSON object in insertion order.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct Details(pub Vec<(String, Value)>);

impl Details {
    pub fn push(&mut self, key: impl Into<String>, value: impl Into<Value>) {
        self.0.push((key.into(), value.into()));
    }

    pub fn get(&self, key: &str) -> Option<&Value> {
        self.0.iter().find(|(k, _)| k == key).map(|(_, v)| v)
    }
}

impl Serialize for Details {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut map = s.serialize_map(Some(self.0.len()))?;
        for (k, v) in &self.0 {
            map.serialize_entry(k, v)?;
        }
        map.end()
    }
}

#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct Report {
    pub schema_version: String,
    pub command: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub input_digest: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub n: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub ratio_set_size: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub oracle_size: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub born_count: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub pipeline_count: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub mode: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tau: Option<u64>,
    #[serde(rename = "S_size", skip_serializing_if = "Option::is_none")]
    pub s_size: Option<u64>,
    #[serde(rename = "M", skip_serializing_if = "Option::is_none")]
    pub m: Option<u64>,
    #[serde(rename = "N", skip_serializing_if = "Option::is_none")]
    pub big_n: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub cluster_count: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub regime_ok: Option<bool>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub conditions: Vec<Condition>,
    #[serde(skip_serializing_if = "is_empty")]
    pub details: Details,
    pub timing_ms: u64,
}

fn is_empty(d: &Details) -> bool {
    d.0.is_empty()
}

fn plain(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Null => String::new(),
        other => other.to_string(),
    }
}

impl Report {
    pub fn new(command: &str) -> Self {
        Report {
            schema_version: SCHEMA_VERSION.into(),
            command: command.into(),
            ..Report::default()
        }
    }

    /// Flat `(column, value)` pairs in a fixed order.
    pub fn columns(&self) -> Vec<(String, String)> {
        let json = serde_json::to_value(self).expect("report serializes");
        let Value::Object(obj) = json else {
            unreachable!("report is an object")
        };
        let mut out = Vec::new();
        for key in [
            "schema_version",
            "command",
            "input_digest",
            "n",
            "ratio_set_size",
            "oracle_size",
            "born_count",
            "pipeline_count",
            "mode",
            "tau",
            "S_size",
            "M",
            "N",
            "cluster_count",
            "regime_ok",
        ] {
            if let Some(v) = obj.get(key) {
                out.push((key.to_string(), plain(v)));
            }
        }
        for c in &self.conditions {
            out.push((format!("condition.{}", c.id), c.status.clone()));
        }
        for (k, v) in &self.details.0 {
            out.push((format!("detail.{k}"), plain(v)));
        }
        out.push(("timing_ms".into(), self.timing_ms.to_string()));
        out
    }

    pub fn render(&self, format: Format) -> Result<String, CliError> {
        match format {
            Format::Json => {
                let mut s = serde_json::to_string_pretty(self)
                    .map_err(|e| CliError::Invariant(format!("json: {e}")))?;
                s.push('\n');
                Ok(s)
            }
            Format::Csv => {
                let cols = self.columns();
                let mut w = csv::Writer::from_writer(Vec::new());
                let io = |e: csv::Error| CliError::Invariant(format!("csv: {e}"));
                w.write_record(cols.iter().map(|(k, _)| k)).map_err(io)?;
                w.write_record(cols.iter().map(|(_, v)| v)).map_err(io)?;
                let bytes = w
                    .into_inner()
                    .map_err(|e| CliError::Invariant(format!("csv: {e}")))?;
                Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
            }
            Format::Text => Ok(self
                .columns()
                .into_iter()
                .map(|(k, v)| format!("{k}: {v}\n"))
                .collect()),
        }
    }
}
