//! Verification outcomes shared by every suite.

use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Exact,
    Numeric,
}

impl Mode {
    pub fn name(self) -> &'static str {
        match self {
            Mode::Exact => "exact",
            Mode::Numeric => "numeric",
        }
    }
}

/// One verified relation. For exact checks `residual` counts the surviving
/// nonzero terms, so zero means the identity holds exactly.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CheckReport {
    pub suite: String,
    pub relation: String,
    pub anchor: String,
    pub mode: Mode,
    pub residual: f64,
    pub tolerance: f64,
    pub pass: bool,
    pub detail: String,
}

impl CheckReport {
    pub fn exact(suite: &str, relation: &str, anchor: &str, failures: usize, detail: impl Into<String>) -> CheckReport {
        CheckReport {
            suite: suite.into(),
            relation: relation.into(),
            anchor: anchor.into(),
            mode: Mode::Exact,
            residual: failures as f64,
            tolerance: 0.0,
            pass: failures == 0,
            detail: detail.into(),
        }
    }

    pub fn numeric(suite: &str, relation: &str, anchor: &str, residual: f64, tolerance: f64, detail: impl Into<String>) -> CheckReport {
        CheckReport {
            suite: suite.into(),
            relation: relation.into(),
            anchor: anchor.into(),
            mode: Mode::Numeric,
            residual,
            tolerance,
            pass: residual.is_finite() && residual < tolerance,
            detail: detail.into(),
        }
    }

    /// Marks a check that is expected to fail (a negative control) as passing
    /// exactly when it does fail.
    pub fn expect_failure(mut self) -> CheckReport {
        self.pass = !self.pass;
        self.detail = if self.detail.is_empty() { "negative control".into() } else { format!("negative control; {}", self.detail) };
        self
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Summary {
    pub total: usize,
    pub passed: usize,
    pub failed: usize,
}

/// All rows of one run with the configuration that produced them.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunReport {
    pub version: String,
    pub seed: u64,
    pub config: std::collections::BTreeMap<String, String>,
    pub summary: Summary,
    pub rows: Vec<CheckReport>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Json,
    Csv,
    Text,
}

impl Format {
    pub fn parse(name: &str) -> Option<Format> {
        match name {
            "json" => Some(Format::Json),
            "csv" => Some(Format::Csv),
            "text" => Some(Format::Text),
            _ => None,
        }
    }
}

pub const CSV_COLUMNS: [&str; 8] = ["suite", "relation", "anchor", "mode", "residual", "tolerance", "pass", "detail"];

impl RunReport {
    pub fn new(seed: u64, config: std::collections::BTreeMap<String, String>, mut rows: Vec<CheckReport>) -> RunReport {
        rows.sort_by(|a, b| (&a.suite, &a.relation).cmp(&(&b.suite, &b.relation)));
        for r in &mut rows {
            if !r.residual.is_finite() {
                r.residual = f64::MAX;
                r.pass = false;
            }
        }
        let passed = rows.iter().filter(|r| r.pass).count();
        RunReport {
            version: env!("CARGO_PKG_VERSION").to_string(),
            seed,
            config,
            summary: Summary { total: rows.len(), passed, failed: rows.len() - passed },
            rows,
        }
    }

    pub fn all_passed(&self) -> bool {
        self.summary.failed == 0
    }

    pub fn emit(&self, format: Format) -> String {
        match format {
            Format::Json => serde_json::to_string_pretty(self).expect("report serializes") + "\n",
            Format::Csv => {
                let mut w = csv::Writer::from_writer(Vec::new());
                w.write_record(CSV_COLUMNS).expect("in-memory write");
                for r in &self.rows {
                    w.write_record([
                        r.suite.clone(),
                        r.relation.clone(),
                        r.anchor.clone(),
                        r.mode.name().to_string(),
                        format!("{:e}", r.residual),
                        format!("{:e}", r.tolerance),
                        r.pass.to_string(),
                        r.detail.clone(),
                    ])
                    .expect("in-memory write");
                }
                String::from_utf8(w.into_inner().expect("flush")).expect("utf-8")
            }
            Format::Text => {
                let mut out = String::new();
                for r in &self.rows {
                    let status = if r.pass { "PASS" } else { "FAIL" };
                    out += &format!("{status}  {:<9} {:<55} {:<7} residual={:.3e}", r.suite, r.relation, r.mode.name(), r.residual);
                    if !r.detail.is_empty() {
                        out += &format!("  [{}]", r.detail);
                    }
                    out.push('\n');
                }
                out += &format!("{} checks, {} passed, {} failed\n", self.summary.total, self.summary.passed, self.summary.failed);
                out
            }
        }
    }

    pub fn from_json(text: &str) -> Result<RunReport, serde_json::Error> {
        serde_json::from_str(text)
    }
}
