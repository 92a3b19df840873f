use std::fs::File;
use std::io::{self, Write};

use rug::Float;
use serde_json::{json, Map, Value};
use thasym::numerics::float_to_decimal;
use thasym::PrecComplex;

use crate::config::{Format, RunConfig};
use crate::error::{CliError, CliResult};

/// An ordered table of string cells plus scalar summary entries.
#[derive(Debug)]
pub struct Table {
    pub command: &'static str,
    pub headers: Vec<&'static str>,
    pub rows: Vec<Vec<String>>,
    pub summary: Map<String, Value>,
    pub warnings: Vec<String>,
    /// Set when the run completed but must exit nonzero.
    pub failure: Option<CliError>,
}

impl Table {
    pub fn new(command: &'static str, headers: &[&'static str]) -> Self {
        Self { command, headers: headers.to_vec(), rows: Vec::new(), summary: Map::new(), warnings: Vec::new(), failure: None }
    }

    pub fn push(&mut self, row: Vec<String>) {
        debug_assert_eq!(row.len(), self.headers.len());
        self.rows.push(row);
    }

    pub fn summarize(&mut self, key: &str, value: impl Into<Value>) {
        self.summary.insert(key.to_string(), value.into());
    }

    pub fn warn(&mut self, msg: String) {
        self.warnings.push(msg);
    }

    fn to_json(&self, cfg: &RunConfig) -> Value {
        let rows: Vec<Value> = self
            .rows
            .iter()
            .map(|r| Value::Object(self.headers.iter().zip(r).map(|(h, c)| (h.to_string(), Value::String(c.clone()))).collect()))
            .collect();
        json!({
            "schema": "th-asym/1",
            "command": self.command,
            "config": cfg.to_json(),
            "columns": self.headers,
            "rows": rows,
            "summary": self.summary,
            "warnings": self.warnings,
        })
    }

    /// Writes the table to `--out` or standard output; summary and warnings of CSV runs go to stderr.
    pub fn emit(&self, cfg: &RunConfig) -> CliResult<()> {
        let sink: Box<dyn Write> = match &cfg.args.out {
            Some(path) => Box::new(File::create(path)?),
            None => Box::new(io::stdout().lock()),
        };
        match cfg.args.format {
            Format::Csv => {
                let mut w = csv::Writer::from_writer(sink);
                w.write_record(&self.headers)?;
                for r in &self.rows {
                    w.write_record(r)?;
                }
                w.flush()?;
                for (k, v) in &self.summary {
                    eprintln!("{k}: {}", v.as_str().map(str::to_string).unwrap_or_else(|| v.to_string()));
                }
            }
            Format::Json => {
                let mut sink = sink;
                serde_json::to_writer_pretty(&mut sink, &self.to_json(cfg)).map_err(io::Error::from)?;
                writeln!(sink)?;
            }
        }
        if !self.warnings.is_empty() {
            eprintln!("warnings: {}", self.warnings.len());
            for w in &self.warnings {
                eprintln!("warning: {w}");
            }
        }
        Ok(())
    }
}

pub fn real(x: &Float, digits: usize) -> String {
    float_to_decimal(x, digits)
}

pub fn re_im(z: &PrecComplex, digits: usize) -> [String; 2] {
    let (re, im) = z.to_decimal_strings(digits);
    [re, im]
}
