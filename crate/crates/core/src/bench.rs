//! Timing both consistency checkers on the same inputs.

use std::fmt::Write as _;

use serde::Serialize;

use crate::consistency::{check_overlap, check_solv, CheckOptions, ConsistencyReport, Method, Mode, Verdict};
use crate::presentation::RefinedPresentation;

#[derive(Clone, Debug, Serialize, PartialEq)]
pub struct BenchRecord {
    pub input: String,
    pub gens: usize,
    pub method: Method,
    pub verdict: Verdict,
    /// Median wall-clock time over the repetitions.
    pub millis: f64,
    /// Rewrite steps of one run (identical across repetitions).
    pub steps: u64,
    /// Condition instances or overlaps evaluated.
    pub instances: u64,
}

#[derive(Clone, Debug, Serialize, PartialEq)]
pub struct BenchDocument {
    pub records: Vec<BenchRecord>,
    /// Verdicts agree across methods for every input.
    pub agree: bool,
}

pub fn run_method(p: &RefinedPresentation, method: Method, opts: CheckOptions) -> ConsistencyReport {
    match method {
        Method::Solv => check_solv(p, Mode::Incremental, opts),
        Method::Overlap => check_overlap(p, opts),
    }
}

fn median(mut xs: Vec<f64>) -> f64 {
    xs.sort_by(f64::total_cmp);
    let n = xs.len();
    if n == 0 {
        0.0
    } else if n % 2 == 1 {
        xs[n / 2]
    } else {
        (xs[n / 2 - 1] + xs[n / 2]) / 2.0
    }
}

/// One record per (input, method); repetitions run back to back.
pub fn bench_input(
    name: &str,
    p: &RefinedPresentation,
    methods: &[Method],
    reps: usize,
    opts: CheckOptions,
) -> Vec<BenchRecord> {
    let reps = reps.max(1);
    methods
        .iter()
        .map(|&method| {
            let mut times = Vec::with_capacity(reps);
            let mut last = None;
            for _ in 0..reps {
                let r = run_method(p, method, opts);
                times.push(r.elapsed.as_secs_f64() * 1000.0);
                last = Some(r);
            }
            let r = last.expect("at least one repetition");
            BenchRecord {
                input: name.to_string(),
                gens: p.len(),
                method,
                verdict: r.verdict,
                millis: median(times),
                steps: r.steps,
                instances: r.instances,
            }
        })
        .collect()
}

pub fn document(records: Vec<BenchRecord>) -> BenchDocument {
    let mut agree = true;
    for r in &records {
        if records.iter().any(|s| s.input == r.input && s.verdict != r.verdict) {
            agree = false;
        }
    }
    BenchDocument { records, agree }
}

/// A table with one row per input and time/steps columns per method.
pub fn render_table(doc: &BenchDocument) -> String {
    let mut methods: Vec<Method> = Vec::new();
    let mut inputs: Vec<(&str, usize)> = Vec::new();
    for r in &doc.records {
        if !methods.contains(&r.method) {
            methods.push(r.method);
        }
        if !inputs.iter().any(|(i, _)| *i == r.input) {
            inputs.push((&r.input, r.gens));
        }
    }
    let width = inputs.iter().map(|(i, _)| i.len()).max().unwrap_or(5).max(5);
    let mut out = String::new();
    let _ = write!(out, "{:<width$} {:>6}", "input", "#gens");
    for m in &methods {
        let _ = write!(out, " {:>12} {:>12} {:>12}", format!("{m} ms"), format!("{m} steps"), format!("{m} verdict"));
    }
    out.push('\n');
    for (input, gens) in inputs {
        let _ = write!(out, "{input:<width$} {gens:>6}");
        for m in &methods {
            match doc.records.iter().find(|r| r.input == input && r.method == *m) {
                Some(r) => {
                    let _ = write!(out, " {:>12.3} {:>12} {:>12}", r.millis, r.steps, r.verdict.to_string());
                }
                None => {
                    let _ = write!(out, " {:>12} {:>12} {:>12}", "-", "-", "-");
                }
            }
        }
        out.push('\n');
    }
    if !doc.agree {
        out.push_str("verdicts disagree\n");
    }
    out
}
