//! Name-resolved rendering of reports, as JSON or text.

use std::fmt::Write as _;

use serde::Serialize;

use super::{ConsistencyReport, Failure, Method, Verdict};
use crate::presentation::RefinedPresentation;

#[derive(Clone, Debug, Serialize, PartialEq)]
pub struct SectionRecord {
    pub block: usize,
    pub kind: String,
    pub generators: Vec<String>,
    pub det: String,
}

#[derive(Clone, Debug, Serialize, PartialEq)]
pub struct FailureRecord {
    pub condition: String,
    pub z: String,
    pub pair: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub left: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub right: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub section: Option<SectionRecord>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

impl FailureRecord {
    fn new(f: &Failure, p: &RefinedPresentation) -> Self {
        let name = |g: usize| if g < p.len() { p.name(g).to_string() } else { format!("x{}", g + 1) };
        FailureRecord {
            condition: f.condition.id().to_string(),
            z: name(f.z),
            pair: f.pair.iter().map(|g| name(*g)).collect(),
            left: f.left.as_ref().map(|w| p.word_string(w)),
            right: f.right.as_ref().map(|w| p.word_string(w)),
            section: f.section.as_ref().map(|s| SectionRecord {
                block: s.section.block,
                kind: s.section.kind.to_string(),
                generators: s.section.gens.iter().map(|g| name(*g)).collect(),
                det: s.det.to_string(),
            }),
            detail: f.detail.clone(),
        }
    }
}

#[derive(Clone, Debug, Serialize, PartialEq)]
pub struct ReportDocument {
    pub method: Method,
    pub verdict: Verdict,
    pub elapsed_ms: f64,
    pub steps: u64,
    pub instances: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub failing_generator: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub abort: Option<String>,
    pub failures: Vec<FailureRecord>,
}

impl ReportDocument {
    pub fn new(r: &ConsistencyReport, p: &RefinedPresentation) -> Self {
        ReportDocument {
            method: r.method,
            verdict: r.verdict,
            elapsed_ms: r.elapsed.as_secs_f64() * 1000.0,
            steps: r.steps,
            instances: r.instances,
            failing_generator: r.failing_z().map(|z| p.name(z).to_string()),
            abort: r.abort.clone(),
            failures: r.failures.iter().map(|f| FailureRecord::new(f, p)).collect(),
        }
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(
            out,
            "method {}: {} ({:.3} ms, {} steps, {} instances)",
            self.method, self.verdict, self.elapsed_ms, self.steps, self.instances
        );
        if let Some(a) = &self.abort {
            let _ = writeln!(out, "  aborted: {a}");
        }
        for f in &self.failures {
            let _ = write!(out, "  condition {} at {}", f.condition, f.z);
            if !f.pair.is_empty() {
                let _ = write!(out, " for {}", f.pair.join(" "));
            }
            if let (Some(l), Some(r)) = (&f.left, &f.right) {
                let _ = write!(out, ": {l} != {r}");
            }
            if let Some(s) = &f.section {
                let _ = write!(out, ": block {} ({}) [{}] det {}", s.block, s.kind, s.generators.join(" "), s.det);
            }
            if let Some(d) = &f.detail {
                let _ = write!(out, ": {d}");
            }
            out.push('\n');
        }
        out
    }
}
