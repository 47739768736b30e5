//! Machine-readable check reports.
//!
//! Floats are written with 17 significant digits so reports round-trip exactly, and
//! field order is fixed so identical runs produce byte-identical output.

use serde::Serialize;
use serde_json::value::RawValue;

/// `x` with 17 significant digits, or `null` when not finite.
pub fn fmt_f64(x: f64) -> String {
    if x.is_finite() { format!("{x:.16e}") } else { "null".to_string() }
}

fn raw(x: f64) -> Box<RawValue> {
    RawValue::from_string(fmt_f64(x)).expect("formatted float is valid JSON")
}

#[derive(Debug, Clone, PartialEq)]
pub struct CheckRow {
    pub name: String,
    /// Name of the identity or property the check exercises.
    pub anchor: String,
    pub value: f64,
    pub tolerance: f64,
    pub pass: bool,
}

impl CheckRow {
    /// Passes when `value ≤ tolerance`.
    pub fn at_most(name: impl Into<String>, anchor: &str, value: f64, tolerance: f64) -> Self {
        Self { name: name.into(), anchor: anchor.to_string(), value, tolerance, pass: value <= tolerance }
    }

    /// Passes when `value ≥ −tolerance`.
    pub fn at_least_neg(name: impl Into<String>, anchor: &str, value: f64, tolerance: f64) -> Self {
        Self { name: name.into(), anchor: anchor.to_string(), value, tolerance, pass: value >= -tolerance }
    }

    pub fn flag(name: impl Into<String>, anchor: &str, pass: bool) -> Self {
        Self {
            name: name.into(),
            anchor: anchor.to_string(),
            value: if pass { 0.0 } else { 1.0 },
            tolerance: 0.0,
            pass,
        }
    }
}

#[derive(Debug, Clone, Default)]
pub struct Report {
    pub command: String,
    pub seed: u64,
    pub rows: Vec<CheckRow>,
    /// Command-specific payload, already serialized.
    pub data: Option<String>,
}

#[derive(Serialize)]
struct RowOut<'a> {
    name: &'a str,
    anchor: &'a str,
    value: Box<RawValue>,
    tolerance: Box<RawValue>,
    pass: bool,
}

#[derive(Serialize)]
struct Summary {
    total: usize,
    passed: usize,
    failed: usize,
}

#[derive(Serialize)]
struct ReportOut<'a> {
    command: &'a str,
    seed: u64,
    checks: Vec<RowOut<'a>>,
    summary: Summary,
    #[serde(skip_serializing_if = "Option::is_none")]
    data: Option<Box<RawValue>>,
}

impl Report {
    pub fn new(command: impl Into<String>, seed: u64) -> Self {
        Self { command: command.into(), seed, rows: Vec::new(), data: None }
    }

    pub fn push(&mut self, row: CheckRow) {
        self.rows.push(row);
    }

    pub fn passed(&self) -> usize {
        self.rows.iter().filter(|r| r.pass).count()
    }

    pub fn failed(&self) -> usize {
        self.rows.len() - self.passed()
    }

    pub fn all_pass(&self) -> bool {
        self.failed() == 0
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckRow> {
        self.rows.iter().filter(|r| !r.pass)
    }

    pub fn to_json(&self) -> String {
        let out = ReportOut {
            command: &self.command,
            seed: self.seed,
            checks: self
                .rows
                .iter()
                .map(|r| RowOut {
                    name: &r.name,
                    anchor: &r.anchor,
                    value: raw(r.value),
                    tolerance: raw(r.tolerance),
                    pass: r.pass,
                })
                .collect(),
            summary: Summary { total: self.rows.len(), passed: self.passed(), failed: self.failed() },
            data: self.data.as_ref().map(|d| RawValue::from_string(d.clone()).expect("data is valid JSON")),
        };
        serde_json::to_string_pretty(&out).expect("report serializes")
    }

    pub fn to_csv(&self) -> String {
        let mut s = String::from("name,anchor,value,tolerance,pass\n");
        for r in &self.rows {
            s.push_str(&format!(
                "\"{}\",\"{}\",{},{},{}\n",
                r.name.replace('"', "\"\""),
                r.anchor,
                fmt_f64(r.value),
                fmt_f64(r.tolerance),
                r.pass
            ));
        }
        s
    }
}
