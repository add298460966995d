//! Pass/fail/skip records produced by the identity checks.

use std::fmt;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail(String),
    Skip(String),
    /// Observation recorded without asserting anything.
    Info(String),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckLine {
    pub name: String,
    pub status: Status,
}

impl fmt::Display for CheckLine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.status {
            Status::Pass => write!(f, "PASS {}", self.name),
            Status::Fail(d) => write!(f, "FAIL {}: {d}", self.name),
            Status::Skip(d) => write!(f, "SKIP {}: {d}", self.name),
            Status::Info(d) => write!(f, "INFO {}: {d}", self.name),
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Report {
    pub lines: Vec<CheckLine>,
}

impl Report {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn pass(&mut self, name: impl Into<String>) {
        self.lines.push(CheckLine { name: name.into(), status: Status::Pass });
    }

    pub fn fail(&mut self, name: impl Into<String>, detail: impl Into<String>) {
        self.lines.push(CheckLine { name: name.into(), status: Status::Fail(detail.into()) });
    }

    pub fn skip(&mut self, name: impl Into<String>, reason: impl Into<String>) {
        self.lines.push(CheckLine { name: name.into(), status: Status::Skip(reason.into()) });
    }

    pub fn info(&mut self, name: impl Into<String>, what: impl Into<String>) {
        self.lines.push(CheckLine { name: name.into(), status: Status::Info(what.into()) });
    }

    /// Record a pass when `ok`, else a failure with the lazily built detail.
    pub fn check(&mut self, name: impl Into<String>, ok: bool, detail: impl FnOnce() -> String) {
        if ok {
            self.pass(name);
        } else {
            self.fail(name, detail());
        }
    }

    /// Record the outcome of a fallible check; errors become failures.
    pub fn check_result(&mut self, name: impl Into<String>, r: crate::Result<bool>, detail: impl FnOnce() -> String) {
        match r {
            Ok(ok) => self.check(name, ok, detail),
            Err(e) => self.fail(name, e.to_string()),
        }
    }

    pub fn extend(&mut self, other: Report) {
        self.lines.extend(other.lines);
    }

    /// Prefix every line name, e.g. with the parameters of a grid point.
    pub fn prefixed(mut self, prefix: &str) -> Report {
        for l in &mut self.lines {
            l.name = format!("{prefix} {}", l.name);
        }
        self
    }

    pub fn all_passed(&self) -> bool {
        self.lines.iter().all(|l| !matches!(l.status, Status::Fail(_)))
    }

    pub fn failures(&self) -> Vec<&CheckLine> {
        self.lines.iter().filter(|l| matches!(l.status, Status::Fail(_))).collect()
    }

    pub fn count(&self, pred: impl Fn(&Status) -> bool) -> usize {
        self.lines.iter().filter(|l| pred(&l.status)).count()
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for l in &self.lines {
            writeln!(f, "{l}")?;
        }
        Ok(())
    }
}
