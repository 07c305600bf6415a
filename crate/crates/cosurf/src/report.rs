//! Machine-readable reports: one case per check, with its residual.

use std::io::Write;

use anyhow::Result;
use cosurf_core::product_integral::ConvergenceRow;
use serde::{Deserialize, Serialize};
use serde_json::Value;

pub const REPORT_SCHEMA: u32 = 1;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Case {
    pub name: String,
    pub residual: f64,
    pub tolerance: f64,
    pub pass: bool,
    #[serde(default, skip_serializing_if = "Value::is_null")]
    pub detail: Value,
}

impl Case {
    /// Passes when `residual <= tolerance`.
    pub fn within(name: impl Into<String>, residual: f64, tolerance: f64) -> Self {
        Case { name: name.into(), residual, tolerance, pass: residual <= tolerance, detail: Value::Null }
    }

    /// Exact check: residual 0 on success, 1 otherwise.
    pub fn exact(name: impl Into<String>, ok: bool) -> Self {
        Case { name: name.into(), residual: if ok { 0.0 } else { 1.0 }, tolerance: 0.0, pass: ok, detail: Value::Null }
    }

    pub fn with_detail(mut self, detail: Value) -> Self {
        self.detail = detail;
        self
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Row {
    pub n: usize,
    pub grade: usize,
    pub error: f64,
}

impl From<&ConvergenceRow> for Row {
    fn from(r: &ConvergenceRow) -> Self {
        Row { n: r.n, grade: r.grade, error: r.error }
    }
}

/// A free-form table with named columns.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Table {
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Value>>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub schema: u32,
    pub command: String,
    pub params: Value,
    pub seed: u64,
    pub cases: Vec<Case>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub rows: Vec<Row>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub table: Option<Table>,
    pub max_residual: f64,
    pub pass: bool,
}

impl Report {
    pub fn new(command: impl Into<String>, params: Value, seed: u64) -> Self {
        Report {
            schema: REPORT_SCHEMA,
            command: command.into(),
            params,
            seed,
            cases: Vec::new(),
            rows: Vec::new(),
            table: None,
            max_residual: 0.0,
            pass: false,
        }
    }

    pub fn push(&mut self, case: Case) {
        self.cases.push(case);
        self.summarize();
    }

    pub fn extend(&mut self, other: Report) {
        self.cases.extend(other.cases);
        self.rows.extend(other.rows);
        self.summarize();
    }

    fn summarize(&mut self) {
        self.max_residual = self.cases.iter().map(|c| c.residual).fold(0.0, f64::max);
        self.pass = !self.cases.is_empty() && self.cases.iter().all(|c| c.pass);
    }

    pub fn failures(&self) -> impl Iterator<Item = &Case> {
        self.cases.iter().filter(|c| !c.pass)
    }

    pub fn write_json(&self, w: impl Write) -> Result<()> {
        serde_json::to_writer_pretty(w, self)?;
        Ok(())
    }

    /// Convergence rows when present (`n,grade,error`), then the table,
    /// cases otherwise.
    pub fn write_csv(&self, w: impl Write) -> Result<()> {
        let mut out = csv::Writer::from_writer(w);
        if let (true, Some(t)) = (self.rows.is_empty(), &self.table) {
            out.write_record(&t.columns)?;
            for r in &t.rows {
                out.write_record(r.iter().map(|v| match v {
                    Value::String(s) => s.clone(),
                    v => v.to_string(),
                }))?;
            }
        } else if self.rows.is_empty() {
            out.write_record(["name", "residual", "tolerance", "pass"])?;
            for c in &self.cases {
                out.write_record([c.name.clone(), c.residual.to_string(), c.tolerance.to_string(), c.pass.to_string()])?;
            }
        } else {
            for r in &self.rows {
                out.serialize(r)?;
            }
        }
        out.flush()?;
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn summary_tracks_cases() {
        let mut r = Report::new("x", Value::Null, 0);
        assert!(!r.pass);
        r.push(Case::within("a", 1e-13, 1e-12));
        assert!(r.pass);
        r.push(Case::exact("b", false));
        assert!(!r.pass);
        assert_eq!(r.max_residual, 1.0);
        let mut buf = Vec::new();
        r.write_csv(&mut buf).unwrap();
        assert!(String::from_utf8(buf).unwrap().starts_with("name,residual"));
    }
}
