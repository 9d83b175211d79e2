use std::fmt::Write;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// One verified equality.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub lhs: String,
    pub rhs: String,
    pub pass: bool,
    /// Only recorded when timings were requested, so reports stay reproducible by default.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub wall_ms: Option<f64>,
}

/// Result of a verification run, in canonical check order.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunReport {
    pub command: String,
    pub checks: Vec<Check>,
}

#[derive(Serialize)]
struct JsonReport<'a> {
    command: &'a str,
    passed: usize,
    failed: usize,
    exit_status: i32,
    checks: &'a [Check],
}

impl RunReport {
    pub fn passed(&self) -> usize {
        self.checks.iter().filter(|c| c.pass).count()
    }

    pub fn failed(&self) -> usize {
        self.checks.len() - self.passed()
    }

    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    /// 0 when every check passed, 1 otherwise.
    pub fn exit_status(&self) -> i32 {
        if self.all_pass() {
            0
        } else {
            1
        }
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("# {}\n", self.command);
        for c in &self.checks {
            let tag = if c.pass { "PASS" } else { "FAIL" };
            let _ = write!(out, "{tag} {}: {} | {}", c.name, c.lhs, c.rhs);
            if let Some(ms) = c.wall_ms {
                let _ = write!(out, " [{ms:.1} ms]");
            }
            out.push('\n');
        }
        let _ = writeln!(out, "{} passed, {} failed", self.passed(), self.failed());
        out
    }

    pub fn to_json(&self) -> String {
        let doc = JsonReport {
            command: &self.command,
            passed: self.passed(),
            failed: self.failed(),
            exit_status: self.exit_status(),
            checks: &self.checks,
        };
        let mut text = serde_json::to_string_pretty(&doc).expect("report serializes");
        text.push('\n');
        text
    }

    /// One row per check; the `wall_ms` column appears only when some check was timed.
    pub fn to_csv(&self) -> Result<String> {
        let timed = self.checks.iter().any(|c| c.wall_ms.is_some());
        let mut writer = csv::Writer::from_writer(Vec::new());
        let csv_err = |e: csv::Error| Error::Parse(format!("csv: {e}"));
        let mut header = vec!["name", "lhs", "rhs", "pass"];
        if timed {
            header.push("wall_ms");
        }
        writer.write_record(&header).map_err(csv_err)?;
        for c in &self.checks {
            let mut row = vec![c.name.clone(), c.lhs.clone(), c.rhs.clone(), c.pass.to_string()];
            if timed {
                row.push(c.wall_ms.map(|ms| format!("{ms:.3}")).unwrap_or_default());
            }
            writer.write_record(&row).map_err(csv_err)?;
        }
        let bytes = writer.into_inner().map_err(|e| Error::Parse(format!("csv: {e}")))?;
        Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
    }
}
