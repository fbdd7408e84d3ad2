//! Equation reports.
//!
//! A report is an ordered list of named equations, each of which passed,
//! failed with both sides recorded, or was skipped because checking it would
//! need data beyond a truncation level. The text rendering is one line per
//! equation:
//!
//! ```text
//! EQ <name> @ <where> : PASS
//! EQ <name> @ <where> : FAIL(lhs=..., rhs=...)
//! EQ <name> @ <where> : TRUNCATION-EXEMPT
//! ```

use std::fmt::{self, Display, Write as _};

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "SCREAMING-KEBAB-CASE")]
pub enum Status {
    Pass,
    Fail { lhs: String, rhs: String },
    TruncationExempt,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub at: String,
    #[serde(flatten)]
    pub status: Status,
}

impl Check {
    pub fn passed(&self) -> bool {
        !matches!(self.status, Status::Fail { .. })
    }
}

impl Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "EQ {} @ {} : ", self.name, self.at)?;
        match &self.status {
            Status::Pass => write!(f, "PASS"),
            Status::Fail { lhs, rhs } => write!(f, "FAIL(lhs={lhs}, rhs={rhs})"),
            Status::TruncationExempt => write!(f, "TRUNCATION-EXEMPT"),
        }
    }
}

/// A small table attached to a report (hom counts, homology ranks, ...).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Table {
    pub name: String,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub header: Vec<(String, String)>,
    pub checks: Vec<Check>,
    pub tables: Vec<Table>,
}

impl Report {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with_header(mut self, key: impl Into<String>, value: impl ToString) -> Self {
        self.header.push((key.into(), value.to_string()));
        self
    }

    pub fn push(&mut self, name: impl Into<String>, at: impl Into<String>, status: Status) {
        self.checks.push(Check {
            name: name.into(),
            at: at.into(),
            status,
        });
    }

    pub fn pass(&mut self, name: impl Into<String>, at: impl Into<String>) {
        self.push(name, at, Status::Pass);
    }

    pub fn fail(
        &mut self,
        name: impl Into<String>,
        at: impl Into<String>,
        lhs: impl Display,
        rhs: impl Display,
    ) {
        self.push(
            name,
            at,
            Status::Fail {
                lhs: lhs.to_string(),
                rhs: rhs.to_string(),
            },
        );
    }

    pub fn exempt(&mut self, name: impl Into<String>, at: impl Into<String>) {
        self.push(name, at, Status::TruncationExempt);
    }

    /// Records `lhs == rhs`. Both sides are only rendered on failure.
    pub fn equal<T: PartialEq + Display>(
        &mut self,
        name: impl Into<String>,
        at: impl Into<String>,
        lhs: &T,
        rhs: &T,
    ) -> bool {
        let ok = lhs == rhs;
        if ok {
            self.pass(name, at);
        } else {
            self.fail(name, at, lhs, rhs);
        }
        ok
    }

    /// Records a boolean condition; `detail` describes the failure.
    pub fn holds(
        &mut self,
        name: impl Into<String>,
        at: impl Into<String>,
        ok: bool,
        detail: impl FnOnce() -> (String, String),
    ) -> bool {
        if ok {
            self.pass(name, at);
        } else {
            let (lhs, rhs) = detail();
            self.fail(name, at, lhs, rhs);
        }
        ok
    }

    /// Records an evaluation error as a failure of the named equation.
    pub fn error(&mut self, name: impl Into<String>, at: impl Into<String>, err: &crate::Error) {
        self.fail(name, at, format!("error: {err}"), "-");
    }

    pub fn extend(&mut self, other: Report) {
        self.checks.extend(other.checks);
        self.tables.extend(other.tables);
    }

    pub fn table(&mut self, table: Table) {
        self.tables.push(table);
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed())
    }

    pub fn failure_count(&self) -> usize {
        self.failures().count()
    }

    pub fn all_passed(&self) -> bool {
        self.failure_count() == 0
    }

    pub fn count(&self, pred: impl Fn(&Status) -> bool) -> usize {
        self.checks.iter().filter(|c| pred(&c.status)).count()
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for (k, v) in &self.header {
            let _ = writeln!(out, "# {k}: {v}");
        }
        for c in &self.checks {
            let _ = writeln!(out, "{c}");
        }
        for t in &self.tables {
            let _ = writeln!(out, "TABLE {}", t.name);
            let _ = writeln!(out, "  {}", t.columns.join(" | "));
            for row in &t.rows {
                let _ = writeln!(out, "  {}", row.join(" | "));
            }
        }
        let pass = self.count(|s| matches!(s, Status::Pass));
        let exempt = self.count(|s| matches!(s, Status::TruncationExempt));
        let _ = writeln!(
            out,
            "SUMMARY pass={pass} fail={} truncation-exempt={exempt}",
            self.failure_count()
        );
        out
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialise")
    }
}
