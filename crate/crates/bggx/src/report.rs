//! The uniform result envelope of every command and its three renderings.

use std::time::Duration;

use bggx_core::bgg::Status;
use serde_json::{json, Map, Value};

use crate::error::CliError;

#[derive(Clone, Copy, PartialEq, Eq, Debug, clap::ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Text,
}

/// Rows for CSV and text output. Cells are already formatted strings.
#[derive(Clone, PartialEq, Debug, Default)]
pub struct Table {
    pub headers: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new(headers: &[&str]) -> Self {
        Table {
            headers: headers.iter().map(|h| h.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push<I, S>(&mut self, row: I)
    where
        I: IntoIterator<Item = S>,
        S: ToString,
    {
        self.rows.push(row.into_iter().map(|c| c.to_string()).collect());
    }

    /// Appends the rows of `other` (same headers) to this table.
    pub fn extend(&mut self, other: Table) {
        self.rows.extend(other.rows);
    }
}

#[derive(Clone, PartialEq, Debug)]
pub struct RunReport {
    pub command: String,
    pub parameters: Map<String, Value>,
    pub status: Status,
    pub results: Value,
    pub table: Table,
    /// Free-form lines printed after the table in text mode.
    pub notes: Vec<String>,
    /// Only recorded on request, so that JSON output stays reproducible.
    pub wall_time: Option<Duration>,
}

impl RunReport {
    pub fn new(command: &str, parameters: Value) -> Self {
        let parameters = match parameters {
            Value::Object(m) => m,
            _ => Map::new(),
        };
        RunReport {
            command: command.to_string(),
            parameters,
            status: Status::Pass,
            results: Value::Null,
            table: Table::default(),
            notes: Vec::new(),
            wall_time: None,
        }
    }

    /// `0` unless some check failed.
    pub fn exit_code(&self) -> i32 {
        match self.status {
            Status::Pass | Status::Warn => 0,
            Status::Fail => 1,
        }
    }

    pub fn to_json(&self) -> Value {
        let mut obj = Map::new();
        obj.insert("command".into(), json!(self.command));
        obj.insert("parameters".into(), Value::Object(self.parameters.clone()));
        obj.insert("status".into(), json!(self.status.as_str()));
        obj.insert("results".into(), self.results.clone());
        if let Some(t) = self.wall_time {
            obj.insert("wall_time_s".into(), json!(t.as_secs_f64()));
        }
        Value::Object(obj)
    }

    pub fn render(&self, format: Format) -> Result<String, CliError> {
        match format {
            Format::Json => {
                let mut s = serde_json::to_string_pretty(&self.to_json())?;
                s.push('\n');
                Ok(s)
            }
            Format::Csv => {
                let mut w = csv::Writer::from_writer(Vec::new());
                let csv_err = |e: csv::Error| CliError::Data(e.to_string());
                w.write_record(&self.table.headers).map_err(csv_err)?;
                for row in &self.table.rows {
                    w.write_record(row).map_err(csv_err)?;
                }
                let bytes = w.into_inner().map_err(|e| CliError::Data(e.to_string()))?;
                Ok(String::from_utf8(bytes).expect("csv output is UTF-8"))
            }
            Format::Text => Ok(self.render_text()),
        }
    }

    fn render_text(&self) -> String {
        let mut out = format!("{}: {}\n", self.command, self.status.as_str());
        for (k, v) in &self.parameters {
            let v = v.as_str().map_or_else(|| v.to_string(), str::to_string);
            out.push_str(&format!("  {k} = {v}\n"));
        }
        if !self.table.headers.is_empty() {
            let cols = self.table.headers.len();
            let mut widths: Vec<usize> = self.table.headers.iter().map(|h| h.chars().count()).collect();
            for row in &self.table.rows {
                for (w, cell) in widths.iter_mut().zip(row) {
                    *w = (*w).max(cell.chars().count());
                }
            }
            let line = |cells: &[String]| -> String {
                let padded: Vec<String> = (0..cols)
                    .map(|i| {
                        let cell = cells.get(i).map_or("", String::as_str);
                        format!("{cell:<w$}", w = widths[i])
                    })
                    .collect();
                format!("{}\n", padded.join("  ").trim_end())
            };
            out.push_str(&line(&self.table.headers));
            for row in &self.table.rows {
                out.push_str(&line(row));
            }
        }
        for note in &self.notes {
            out.push_str(note);
            out.push('\n');
        }
        if let Some(t) = self.wall_time {
            out.push_str(&format!("wall time: {:.3}s\n", t.as_secs_f64()));
        }
        out
    }
}
