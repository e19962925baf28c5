//! Line-oriented check reports shared by the suites and the command line.

use serde::Serialize;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ReportLine {
    pub item: String,
    pub pass: bool,
    pub witness: String,
}

impl ReportLine {
    pub fn new(item: impl Into<String>, pass: bool, witness: impl Into<String>) -> Self {
        ReportLine { item: item.into(), pass, witness: witness.into() }
    }

    /// `item=<id> status=<pass|fail> witness=<...>`
    pub fn render(&self) -> String {
        format!(
            "item={} status={} witness={}",
            self.item,
            if self.pass { "pass" } else { "fail" },
            self.witness
        )
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Report {
    pub seed: u64,
    pub lines: Vec<ReportLine>,
}

impl Report {
    pub fn new(seed: u64) -> Self {
        Report { seed, lines: Vec::new() }
    }

    pub fn push(&mut self, line: ReportLine) {
        self.lines.push(line);
    }

    pub fn extend(&mut self, other: Report) {
        self.lines.extend(other.lines);
    }

    pub fn all_pass(&self) -> bool {
        self.lines.iter().all(|l| l.pass)
    }

    pub fn failures(&self) -> usize {
        self.lines.iter().filter(|l| !l.pass).count()
    }

    pub fn render(&self) -> String {
        let mut s = format!("seed={}\n", self.seed);
        for l in &self.lines {
            s.push_str(&l.render());
            s.push('\n');
        }
        s
    }
}

/// Tallies cases for one report line, keeping the first failure as witness.
#[derive(Debug, Default)]
pub struct Tally {
    pub cases: usize,
    pub failures: usize,
    first_failure: Option<String>,
}

impl Tally {
    pub fn record(&mut self, ok: bool, describe: impl FnOnce() -> String) {
        self.cases += 1;
        if !ok {
            self.failures += 1;
            if self.first_failure.is_none() {
                self.first_failure = Some(describe());
            }
        }
    }

    pub fn line(&self, item: impl Into<String>, extra: &str) -> ReportLine {
        let mut w = format!("cases={},failures={}", self.cases, self.failures);
        if !extra.is_empty() {
            w.push(',');
            w.push_str(extra);
        }
        if let Some(f) = &self.first_failure {
            w.push_str(",first=");
            w.push_str(&f.replace(' ', ""));
        }
        ReportLine::new(item, self.cases > 0 && self.failures == 0, w)
    }
}
