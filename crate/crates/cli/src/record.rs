//! Run records: CSV with `#` metadata lines, or the same fields as JSON.
//!
//! CSV layout:
//!
//! ```text
//! # command: norm
//! # version: 0.1.0
//! # timestamp: 2026-01-01T00:00:00+00:00
//! # wall_time_s: 0.25
//! # seed: 7
//! # param.N: 1000
//! # note.label: principal terms only
//! N,q,mean,stderr
//! 1000,2.0,7.49,0.07
//! ```
//!
//! Everything that varies between identical invocations lives in the `#` lines.

use std::fmt;
use std::io::{BufRead, BufReader, Read, Write};

use serde::{Deserialize, Serialize};

#[derive(Debug, thiserror::Error)]
pub enum RecordError {
    #[error("csv: {0}")]
    Csv(#[from] csv::Error),
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
    #[error("io: {0}")]
    Io(#[from] std::io::Error),
    #[error("malformed record: {0}")]
    Malformed(String),
}

/// A table cell or parameter value.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Value {
    Bool(bool),
    Int(i64),
    /// Only for integers above `i64::MAX`, such as large seeds.
    UInt(u64),
    Float(f64),
    Text(String),
    Null,
}

impl Value {
    /// Inverse of `Display`.
    pub fn parse(s: &str) -> Value {
        match s {
            "" => Value::Null,
            "true" => Value::Bool(true),
            "false" => Value::Bool(false),
            _ => {
                if let Ok(i) = s.parse::<i64>() {
                    Value::Int(i)
                } else if let Ok(u) = s.parse::<u64>() {
                    Value::UInt(u)
                } else if let Ok(f) = s.parse::<f64>() {
                    Value::Float(f)
                } else {
                    Value::Text(s.to_string())
                }
            }
        }
    }

    pub fn as_f64(&self) -> Option<f64> {
        match *self {
            Value::Float(f) => Some(f),
            Value::Int(i) => Some(i as f64),
            Value::UInt(u) => Some(u as f64),
            _ => None,
        }
    }
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::Bool(b) => write!(f, "{b}"),
            Value::Int(i) => write!(f, "{i}"),
            Value::UInt(u) => write!(f, "{u}"),
            // Debug keeps the decimal point and round-trips exactly.
            Value::Float(x) => write!(f, "{x:?}"),
            Value::Text(s) => f.write_str(s),
            Value::Null => Ok(()),
        }
    }
}

impl From<f64> for Value {
    fn from(x: f64) -> Self {
        Value::Float(x)
    }
}

impl From<u64> for Value {
    fn from(x: u64) -> Self {
        i64::try_from(x).map_or(Value::UInt(x), Value::Int)
    }
}

impl From<u32> for Value {
    fn from(x: u32) -> Self {
        Value::Int(x as i64)
    }
}

impl From<usize> for Value {
    fn from(x: usize) -> Self {
        (x as u64).into()
    }
}

impl From<bool> for Value {
    fn from(x: bool) -> Self {
        Value::Bool(x)
    }
}

impl From<&str> for Value {
    fn from(x: &str) -> Self {
        Value::Text(x.to_string())
    }
}

impl From<String> for Value {
    fn from(x: String) -> Self {
        Value::Text(x)
    }
}

impl<T: Into<Value>> From<Option<T>> for Value {
    fn from(x: Option<T>) -> Self {
        x.map_or(Value::Null, Into::into)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunRecord {
    pub command: String,
    pub version: String,
    pub timestamp: String,
    pub wall_time_s: f64,
    pub seed: Option<u64>,
    pub params: Vec<(String, Value)>,
    pub notes: Vec<(String, String)>,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Value>>,
}

impl RunRecord {
    pub fn new(command: &str, columns: &[&str]) -> Self {
        Self {
            command: command.to_string(),
            version: env!("CARGO_PKG_VERSION").to_string(),
            timestamp: String::new(),
            wall_time_s: 0.0,
            seed: None,
            params: Vec::new(),
            notes: Vec::new(),
            columns: columns.iter().map(|c| c.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn param(&mut self, name: &str, value: impl Into<Value>) -> &mut Self {
        self.params.push((name.to_string(), value.into()));
        self
    }

    pub fn note(&mut self, key: &str, text: impl Into<String>) -> &mut Self {
        self.notes.push((key.to_string(), text.into()));
        self
    }

    pub fn push_row(&mut self, row: Vec<Value>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    pub fn column(&self, name: &str) -> Option<Vec<&Value>> {
        let i = self.columns.iter().position(|c| c == name)?;
        Some(self.rows.iter().map(|r| &r[i]).collect())
    }

    pub fn write_csv<W: Write>(&self, mut out: W) -> Result<(), RecordError> {
        writeln!(out, "# command: {}", self.command)?;
        writeln!(out, "# version: {}", self.version)?;
        writeln!(out, "# timestamp: {}", self.timestamp)?;
        writeln!(out, "# wall_time_s: {:?}", self.wall_time_s)?;
        if let Some(seed) = self.seed {
            writeln!(out, "# seed: {seed}")?;
        }
        for (k, v) in &self.params {
            writeln!(out, "# param.{k}: {v}")?;
        }
        for (k, v) in &self.notes {
            writeln!(out, "# note.{k}: {v}")?;
        }
        let mut w = csv::Writer::from_writer(out);
        w.write_record(&self.columns)?;
        for row in &self.rows {
            w.write_record(row.iter().map(|v| v.to_string()))?;
        }
        w.flush()?;
        Ok(())
    }

    pub fn to_csv_string(&self) -> String {
        let mut buf = Vec::new();
        self.write_csv(&mut buf).expect("writing to memory");
        String::from_utf8(buf).expect("utf-8")
    }

    pub fn read_csv<R: Read>(input: R) -> Result<Self, RecordError> {
        let mut reader = BufReader::new(input);
        let mut rec = RunRecord::new("", &[]);
        let mut command = None;
        let mut body = String::new();
        let mut line = String::new();
        loop {
            line.clear();
            if reader.read_line(&mut line)? == 0 {
                break;
            }
            let Some(meta) = line.strip_prefix("# ") else {
                body.push_str(&line);
                break;
            };
            let meta = meta.trim_end_matches(['\n', '\r']);
            let (key, value) = meta
                .split_once(": ")
                .or_else(|| meta.strip_suffix(':').map(|k| (k, "")))
                .ok_or_else(|| RecordError::Malformed(format!("metadata line {meta:?}")))?;
            match key {
                "command" => command = Some(value.to_string()),
                "version" => rec.version = value.to_string(),
                "timestamp" => rec.timestamp = value.to_string(),
                "wall_time_s" => {
                    rec.wall_time_s = value
                        .parse()
                        .map_err(|_| RecordError::Malformed(format!("wall time {value:?}")))?
                }
                "seed" => {
                    rec.seed = Some(
                        value
                            .parse()
                            .map_err(|_| RecordError::Malformed(format!("seed {value:?}")))?,
                    )
                }
                _ => {
                    if let Some(name) = key.strip_prefix("param.") {
                        rec.params.push((name.to_string(), Value::parse(value)));
                    } else if let Some(name) = key.strip_prefix("note.") {
                        rec.notes.push((name.to_string(), value.to_string()));
                    } else {
                        return Err(RecordError::Malformed(format!("unknown key {key:?}")));
                    }
                }
            }
        }
        rec.command = command.ok_or_else(|| RecordError::Malformed("missing command".into()))?;
        reader.read_to_string(&mut body)?;
        let mut csv = csv::ReaderBuilder::new()
            .has_headers(false)
            .flexible(true)
            .from_reader(body.as_bytes());
        let mut records = csv.records();
        if let Some(header) = records.next() {
            let header = header?;
            rec.columns = header.iter().map(str::to_string).collect();
            // An empty column list is written as a blank line.
            if rec.columns == [""] {
                rec.columns.clear();
            }
        }
        for r in records {
            let r = r?;
            if r.len() != rec.columns.len() {
                return Err(RecordError::Malformed(format!(
                    "row has {} fields, header has {}",
                    r.len(),
                    rec.columns.len()
                )));
            }
            rec.rows.push(r.iter().map(Value::parse).collect());
        }
        Ok(rec)
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string_pretty(self).expect("serializable") + "\n"
    }

    pub fn read_json<R: Read>(input: R) -> Result<Self, RecordError> {
        Ok(serde_json::from_reader(input)?)
    }

    /// The CSV text without the `#` lines.
    pub fn csv_body(text: &str) -> String {
        text.lines()
            .filter(|l| !l.starts_with('#'))
            .map(|l| format!("{l}\n"))
            .collect()
    }
}
