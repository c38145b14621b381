use std::fs::File;

use anyhow::{Context, Result};
use serde::Serialize;
use serde_json::Value;

use crate::Cli;

pub enum Failure {
    /// Bad flags, malformed DSL or parameters outside the supported range.
    Usage(anyhow::Error),
    /// A computation that did not converge or was unstable.
    Numerical(anyhow::Error),
}

impl Failure {
    pub fn usage(e: impl Into<anyhow::Error>) -> Self {
        Failure::Usage(e.into())
    }
}

impl From<spodet_core::Error> for Failure {
    fn from(e: spodet_core::Error) -> Self {
        use spodet_core::Error::*;
        match e {
            Divergence(_) | NoConvergence { .. } | Singular(_) | Unstable(_) => Failure::Numerical(e.into()),
            _ => Failure::Usage(e.into()),
        }
    }
}

pub type CmdResult<T> = std::result::Result<T, Failure>;

/// Rows for the CSV file.
pub struct Table {
    pub headers: Vec<&'static str>,
    pub rows: Vec<Vec<String>>,
}

pub struct Outcome {
    pub result: Value,
    pub pass: bool,
    pub table: Option<Table>,
}

#[derive(Serialize)]
struct Report<'a> {
    tool: &'static str,
    version: &'static str,
    config: &'a Cli,
    result: &'a Value,
    pass: bool,
}

pub fn emit(cli: &Cli, outcome: &Outcome) -> Result<()> {
    let report = Report {
        tool: "spodet",
        version: env!("CARGO_PKG_VERSION"),
        config: cli,
        result: &outcome.result,
        pass: outcome.pass,
    };
    println!("{}", serde_json::to_string_pretty(&report)?);
    if let Some(path) = &cli.out {
        let file = File::create(path).with_context(|| format!("cannot create {}", path.display()))?;
        let mut w = csv::Writer::from_writer(file);
        match &outcome.table {
            Some(t) => {
                w.write_record(&t.headers)?;
                for row in &t.rows {
                    w.write_record(row)?;
                }
            }
            None => {
                // scalar results: one row of the top-level JSON fields
                let fields: Vec<(String, String)> = match &outcome.result {
                    Value::Object(m) => m.iter().map(|(k, v)| (k.clone(), flat(v))).collect(),
                    other => vec![("value".into(), flat(other))],
                };
                w.write_record(fields.iter().map(|(k, _)| k))?;
                w.write_record(fields.iter().map(|(_, v)| v))?;
            }
        }
        w.flush()?;
    }
    Ok(())
}

fn flat(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Null => String::new(),
        other => other.to_string(),
    }
}

/// CSV cell for a float, shortest round-trip form (`null` for non-finite values).
pub fn cell(x: f64) -> String {
    serde_json::to_string(&x).unwrap_or_default()
}
