use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::time::{Duration, Instant};

use serde::Serialize;

use crate::config::Caps;
use crate::fuzzy::{CrispSubset, FuzzySubset};
use crate::grade::GradeChain;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Pass,
    Fail,
    PreconditionUnmet,
}

impl std::fmt::Display for Status {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::PreconditionUnmet => "precondition-unmet",
        })
    }
}

/// A subset named in a counterexample: fuzzy subsets carry their grades in
/// carrier order, crisp subsets their member ids.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WitnessSubset {
    pub label: String,
    pub carrier: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub grades: Option<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub members: Option<Vec<String>>,
}

impl WitnessSubset {
    pub fn fuzzy(label: impl Into<String>, carrier: impl Into<String>, mu: &FuzzySubset) -> Self {
        WitnessSubset { label: label.into(), carrier: carrier.into(), grades: Some(mu.labels()), members: None }
    }

    pub fn crisp(label: impl Into<String>, carrier: impl Into<String>, set: &CrispSubset, ids: &[String]) -> Self {
        WitnessSubset { label: label.into(), carrier: carrier.into(), grades: None, members: Some(set.ids(ids)) }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Counterexample {
    pub check: String,
    pub elements: Vec<String>,
    pub subsets: Vec<WitnessSubset>,
}

impl Counterexample {
    pub fn new(check: impl Into<String>) -> Self {
        Counterexample { check: check.into(), elements: Vec::new(), subsets: Vec::new() }
    }

    pub fn element(mut self, id: impl Into<String>) -> Self {
        self.elements.push(id.into());
        self
    }

    pub fn subset(mut self, s: WitnessSubset) -> Self {
        self.subsets.push(s);
        self
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CheckResult {
    pub name: String,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct VerificationReport {
    pub suite: String,
    pub instance: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub chain: Option<GradeChain>,
    pub status: Status,
    pub counterexample: Option<Counterexample>,
    pub counts: BTreeMap<String, u64>,
    pub checks: Vec<CheckResult>,
    pub notes: Vec<String>,
    /// Wall-clock time; kept out of the serialized body.
    #[serde(skip)]
    pub elapsed: Duration,
}

impl VerificationReport {
    pub fn check(&self, name: &str) -> Option<&CheckResult> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn count(&self, key: &str) -> Option<u64> {
        self.counts.get(key).copied()
    }
}

/// Accumulates checks for one suite.
pub struct ReportBuilder {
    suite: String,
    instance: String,
    chain: Option<GradeChain>,
    counts: BTreeMap<String, u64>,
    checks: Vec<CheckResult>,
    notes: Vec<String>,
    counterexample: Option<Counterexample>,
    started: Instant,
}

impl ReportBuilder {
    pub fn new(suite: impl Into<String>, instance: impl Into<String>, chain: Option<&GradeChain>) -> Self {
        ReportBuilder {
            suite: suite.into(),
            instance: instance.into(),
            chain: chain.cloned(),
            counts: BTreeMap::new(),
            checks: Vec::new(),
            notes: Vec::new(),
            counterexample: None,
            started: Instant::now(),
        }
    }

    pub fn count(&mut self, key: impl Into<String>, value: usize) -> &mut Self {
        self.counts.insert(key.into(), value as u64);
        self
    }

    pub fn note(&mut self, note: impl Into<String>) -> &mut Self {
        self.notes.push(note.into());
        self
    }

    /// Records a check; the first failing check supplies the counterexample.
    pub fn check(&mut self, name: impl Into<String>, outcome: Result<(), Counterexample>) -> &mut Self {
        let name = name.into();
        match outcome {
            Ok(()) => self.checks.push(CheckResult { name, status: Status::Pass, detail: None }),
            Err(cx) => {
                let detail = Some(cx.check.clone());
                if self.counterexample.is_none() {
                    self.counterexample = Some(cx);
                }
                self.checks.push(CheckResult { name, status: Status::Fail, detail });
            }
        }
        self
    }

    pub fn unmet(&mut self, name: impl Into<String>, reason: impl Into<String>) -> &mut Self {
        self.checks.push(CheckResult {
            name: name.into(),
            status: Status::PreconditionUnmet,
            detail: Some(reason.into()),
        });
        self
    }

    pub fn finish(self) -> VerificationReport {
        let status = if self.checks.iter().any(|c| c.status == Status::Fail) {
            Status::Fail
        } else if self.checks.iter().any(|c| c.status == Status::Pass) {
            Status::Pass
        } else {
            Status::PreconditionUnmet
        };
        VerificationReport {
            suite: self.suite,
            instance: self.instance,
            chain: self.chain,
            status,
            counterexample: self.counterexample,
            counts: self.counts,
            checks: self.checks,
            notes: self.notes,
            elapsed: self.started.elapsed(),
        }
    }
}

pub const SCALE_NOTE: &str = "grades restricted to the stated finite chain; every min/max used by the checked statements stays inside the chain";

#[derive(Debug, Clone, Serialize)]
pub struct CapsHeader {
    pub enumeration: u64,
    pub closure: u64,
    pub validation: u64,
    pub matrix_carrier: u64,
}

impl From<&Caps> for CapsHeader {
    fn from(c: &Caps) -> Self {
        CapsHeader {
            enumeration: c.enumeration,
            closure: c.closure as u64,
            validation: c.validation,
            matrix_carrier: c.matrix_carrier,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct ReportHeader {
    pub instance: String,
    pub chain: GradeChain,
    pub n: usize,
    pub caps: CapsHeader,
    pub scale: &'static str,
}

#[derive(Debug, Clone, Serialize)]
pub struct Summary {
    pub pass: usize,
    pub fail: usize,
    pub precondition_unmet: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct Timing {
    pub suite: String,
    pub elapsed_ms: f64,
}

/// A full run: header, reports, summary. Timing is rendered separately so
/// the body is reproducible byte for byte.
#[derive(Debug, Clone, Serialize)]
pub struct ReportDocument {
    pub header: ReportHeader,
    pub reports: Vec<VerificationReport>,
    pub summary: Summary,
}

impl ReportDocument {
    pub fn new(header: ReportHeader, reports: Vec<VerificationReport>) -> Self {
        let tally = |s: Status| reports.iter().filter(|r| r.status == s).count();
        let summary = Summary {
            pass: tally(Status::Pass),
            fail: tally(Status::Fail),
            precondition_unmet: tally(Status::PreconditionUnmet),
        };
        ReportDocument { header, reports, summary }
    }

    pub fn any_failed(&self) -> bool {
        self.summary.fail > 0
    }

    pub fn timing(&self) -> Vec<Timing> {
        self.reports
            .iter()
            .map(|r| Timing { suite: r.suite.clone(), elapsed_ms: r.elapsed.as_secs_f64() * 1e3 })
            .collect()
    }

    pub fn to_json(&self, with_timing: bool) -> String {
        let mut value = serde_json::to_value(self).expect("report serializes");
        if with_timing {
            value["timing"] = serde_json::to_value(self.timing()).expect("timing serializes");
        }
        let mut out = serde_json::to_string_pretty(&value).expect("report serializes");
        out.push('\n');
        out
    }

    pub fn to_text(&self, with_timing: bool) -> String {
        let mut out = String::new();
        let h = &self.header;
        let _ = writeln!(out, "instance: {}", h.instance);
        let _ = writeln!(out, "chain: {}   n: {}", h.chain, h.n);
        let _ = writeln!(
            out,
            "caps: enumeration={} closure={} validation={} matrix_carrier={}",
            h.caps.enumeration, h.caps.closure, h.caps.validation, h.caps.matrix_carrier
        );
        let _ = writeln!(out, "scale: {}", h.scale);
        out.push('\n');
        let _ = writeln!(out, "{:<22} {:<20} {:<20} counts", "suite", "instance", "status");
        for r in &self.reports {
            let counts: Vec<String> = r.counts.iter().map(|(k, v)| format!("{k}={v}")).collect();
            let _ = writeln!(out, "{:<22} {:<20} {:<20} {}", r.suite, r.instance, r.status.to_string(), counts.join(" "));
        }
        for r in &self.reports {
            out.push('\n');
            let _ = writeln!(out, "== {} [{}] on {}", r.suite, r.status, r.instance);
            if let Some(c) = &r.chain {
                let _ = writeln!(out, "   chain {c}");
            }
            for c in &r.checks {
                match &c.detail {
                    Some(d) => {
                        let _ = writeln!(out, "   {:<20} {:<40} {d}", c.status.to_string(), c.name);
                    }
                    None => {
                        let _ = writeln!(out, "   {:<20} {}", c.status.to_string(), c.name);
                    }
                }
            }
            for n in &r.notes {
                let _ = writeln!(out, "   note: {n}");
            }
            if let Some(cx) = &r.counterexample {
                let _ = writeln!(out, "   counterexample: {}", cx.check);
                if !cx.elements.is_empty() {
                    let _ = writeln!(out, "     elements: {}", cx.elements.join(" "));
                }
                for s in &cx.subsets {
                    let body = s
                        .grades
                        .as_ref()
                        .or(s.members.as_ref())
                        .map(|v| v.join(" "))
                        .unwrap_or_default();
                    let _ = writeln!(out, "     {} over {}: {}", s.label, s.carrier, body);
                }
            }
        }
        out.push('\n');
        let _ = writeln!(
            out,
            "summary: {} pass, {} fail, {} precondition-unmet",
            self.summary.pass, self.summary.fail, self.summary.precondition_unmet
        );
        if with_timing {
            out.push_str("\ntiming:\n");
            for t in self.timing() {
                let _ = writeln!(out, "  {:<22} {:>10.3} ms", t.suite, t.elapsed_ms);
            }
        }
        out
    }
}
