//! Structured outcomes of verification suites, streamed as JSON lines.

use std::io::Write;
use std::time::Instant;

use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CheckRecord {
    /// Stable identifier, `suite/check`.
    pub id: String,
    /// The relation being checked, in words.
    pub relation: String,
    pub status: Status,
    /// Dimension of the residual span; zero on success.
    pub residual: usize,
    /// Number of basis elements or samples the relation was tested on.
    pub tested: usize,
    /// Free-form certificate or diagnostic.
    pub detail: String,
    pub wall_ms: u64,
}

impl CheckRecord {
    pub fn is_ok(&self) -> bool {
        self.status != Status::Fail
    }
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct CheckReport {
    pub records: Vec<CheckRecord>,
}

/// Accumulates residuals for one check.
pub struct Check {
    id: String,
    relation: String,
    start: Instant,
    residual: usize,
    tested: usize,
    detail: Vec<String>,
}

impl Check {
    pub fn new(suite: &str, name: &str, relation: &str) -> Self {
        Check {
            id: format!("{suite}/{name}"),
            relation: relation.to_string(),
            start: Instant::now(),
            residual: 0,
            tested: 0,
            detail: Vec::new(),
        }
    }

    /// Records one tested case; `ok == false` bumps the residual and keeps a
    /// short description of the first few failures.
    pub fn case(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.tested += 1;
        if !ok {
            self.residual += 1;
            if self.detail.len() < 3 {
                self.detail.push(what());
            }
        }
    }

    /// Runs `f` over `items` in parallel; `Ok(None)` is a pass, `Ok(Some(msg))`
    /// or an error is a failure.
    pub fn cases<T: Sync>(&mut self, items: &[T], f: impl Fn(&T) -> crate::Result<Option<String>> + Sync) {
        use rayon::prelude::*;
        let outcomes: Vec<Option<String>> = items
            .par_iter()
            .map(|t| match f(t) {
                Ok(r) => r,
                Err(e) => Some(format!("error: {e}")),
            })
            .collect();
        for o in outcomes {
            let ok = o.is_none();
            self.case(ok, || o.unwrap_or_default());
        }
    }

    pub fn note(&mut self, s: impl Into<String>) {
        self.detail.push(s.into());
    }

    pub fn add_residual(&mut self, r: usize) {
        self.residual += r;
    }

    pub fn add_tested(&mut self, t: usize) {
        self.tested += t;
    }

    pub fn finish(self) -> CheckRecord {
        let status = if self.residual == 0 { Status::Pass } else { Status::Fail };
        self.finish_with(status)
    }

    pub fn finish_with(self, status: Status) -> CheckRecord {
        CheckRecord {
            id: self.id,
            relation: self.relation,
            status,
            residual: self.residual,
            tested: self.tested,
            detail: self.detail.join("; "),
            wall_ms: self.start.elapsed().as_millis() as u64,
        }
    }
}

impl CheckReport {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn push(&mut self, r: CheckRecord) {
        self.records.push(r);
    }

    pub fn extend(&mut self, o: CheckReport) {
        self.records.extend(o.records);
    }

    pub fn len(&self) -> usize {
        self.records.len()
    }

    pub fn is_empty(&self) -> bool {
        self.records.is_empty()
    }

    pub fn all_pass(&self) -> bool {
        self.records.iter().all(CheckRecord::is_ok)
    }

    pub fn get(&self, id: &str) -> Option<&CheckRecord> {
        self.records.iter().find(|r| r.id == id)
    }

    /// Sorts by identifier so parallel assembly is deterministic.
    pub fn sorted(mut self) -> Self {
        self.records.sort_by(|a, b| a.id.cmp(&b.id));
        self
    }

    pub fn write_jsonl(&self, mut w: impl Write) -> std::io::Result<()> {
        for r in &self.records {
            serde_json::to_writer(&mut w, r)?;
            writeln!(w)?;
        }
        Ok(())
    }

    pub fn read_jsonl(s: &str) -> serde_json::Result<Self> {
        let records = s.lines().filter(|l| !l.trim().is_empty()).map(serde_json::from_str).collect::<serde_json::Result<_>>()?;
        Ok(CheckReport { records })
    }

    /// The report with timing fields zeroed.
    pub fn without_timing(&self) -> Self {
        let mut r = self.clone();
        for x in &mut r.records {
            x.wall_ms = 0;
        }
        r
    }
}
