//! The `rsp` command line.
//!
//! Exit codes: 0 clean/consistent, 1 violations/inconsistent, 2 errors
//! (I/O, syntax, aborted checks, checker disagreement).

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};

use crate::bench;
use crate::collector::{restrict, Collector};
use crate::consistency::{
    check_overlap, check_solv, check_solv_with_table, CheckOptions, ConsistencyReport, Method, Mode, Verdict,
};
use crate::corpus;
use crate::presentation::{parse, parse_unchecked, parse_word, serialize, RefinedPresentation};

pub const STEP_LIMIT_VAR: &str = "RSP_STEP_LIMIT";

#[derive(Parser, Debug)]
#[command(name = "rsp", version, about = "Refined solvable presentations: normal forms and consistency checks")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum MethodArg {
    Solv,
    Overlap,
    Both,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Parse a presentation file and list support violations.
    Validate { file: PathBuf },
    /// Normal form of a word in a consistent presentation.
    Nf { file: PathBuf, word: String },
    /// Check consistency.
    Check {
        file: PathBuf,
        #[arg(long, value_enum, default_value = "solv")]
        method: MethodArg,
        #[arg(long)]
        json: bool,
    },
    /// Emit a presentation from a family such as `ut(16,2)`.
    Gen {
        family: String,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Time the checkers on family specs or presentation files.
    Bench {
        #[arg(long, num_args = 1.., required = true)]
        inputs: Vec<String>,
        #[arg(long, num_args = 1.., value_enum, default_values = ["both"])]
        methods: Vec<MethodArg>,
        #[arg(long, default_value_t = 3)]
        reps: usize,
        #[arg(long)]
        json: bool,
    },
}

/// Collector step limit from the environment, or the default.
pub fn options_from_env() -> Result<CheckOptions, String> {
    match std::env::var(STEP_LIMIT_VAR) {
        Ok(v) => v
            .trim()
            .parse::<u64>()
            .map(|step_limit| CheckOptions { step_limit })
            .map_err(|_| format!("{STEP_LIMIT_VAR} must be a positive integer, got `{v}`")),
        Err(_) => Ok(CheckOptions::default()),
    }
}

fn read(path: &Path) -> Result<String, String> {
    std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))
}

fn load(path: &Path) -> Result<RefinedPresentation, String> {
    let text = read(path)?;
    parse(&text).map_err(|e| format!("{}: {e}", path.display()))
}

/// Runs the command line with the given arguments (including the program
/// name); returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = if e.use_stderr() { write!(err, "{e}") } else { write!(out, "{e}") };
            return code;
        }
    };
    let opts = match options_from_env() {
        Ok(o) => o,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            return 2;
        }
    };
    let result = match cli.command {
        Command::Validate { file } => cmd_validate(&file, out),
        Command::Nf { file, word } => cmd_nf(&file, &word, opts, out),
        Command::Check { file, method, json } => cmd_check(&file, method, json, opts, out),
        Command::Gen { family, output } => cmd_gen(&family, output.as_deref(), out),
        Command::Bench { inputs, methods, reps, json } => cmd_bench(&inputs, &methods, reps, json, opts, out),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            2
        }
    }
}

fn cmd_validate(file: &Path, out: &mut dyn Write) -> Result<i32, String> {
    let text = read(file)?;
    let p = match parse_unchecked(&text) {
        Ok(p) => p,
        Err(e) => return Err(format!("{}: {e}", file.display())),
    };
    let violations = p.validate();
    for v in &violations {
        let _ = writeln!(out, "{v}");
    }
    if violations.is_empty() {
        let _ = writeln!(out, "ok: {} generators, {} blocks", p.len(), p.num_blocks());
        Ok(0)
    } else {
        Ok(1)
    }
}

fn cmd_nf(file: &Path, word: &str, opts: CheckOptions, out: &mut dyn Write) -> Result<i32, String> {
    let p = load(file)?;
    let w = parse_word(&p, word).map_err(|e| format!("word: {e}"))?;
    let (report, table) = check_solv_with_table(&p, Mode::Incremental, opts);
    match report.verdict {
        Verdict::Consistent => {}
        Verdict::Inconsistent => {
            let _ = write!(out, "refusing: presentation is inconsistent\n{}", report.document(&p).to_text());
            return Ok(1);
        }
        Verdict::Aborted => {
            return Err(format!("consistency check aborted: {}", report.abort.unwrap_or_default()));
        }
    }
    let c = Collector::new(restrict(&p, p.len()).expect("full"), &table).with_step_limit(opts.step_limit);
    let nf = c.collect(&w).map_err(|e| e.to_string())?;
    let _ = writeln!(out, "{}", p.word_string(&nf));
    Ok(0)
}

fn exit_for(verdicts: &[Verdict]) -> i32 {
    if verdicts.iter().all(|v| *v == Verdict::Consistent) {
        0
    } else if verdicts.iter().all(|v| *v == Verdict::Inconsistent) {
        1
    } else {
        2
    }
}

fn cmd_check(file: &Path, method: MethodArg, json: bool, opts: CheckOptions, out: &mut dyn Write) -> Result<i32, String> {
    let p = load(file)?;
    let reports: Vec<ConsistencyReport> = match method {
        MethodArg::Solv => vec![check_solv(&p, Mode::Incremental, opts)],
        MethodArg::Overlap => vec![check_overlap(&p, opts)],
        MethodArg::Both => vec![check_solv(&p, Mode::Incremental, opts), check_overlap(&p, opts)],
    };
    let verdicts: Vec<Verdict> = reports.iter().map(|r| r.verdict).collect();
    let docs: Vec<_> = reports.iter().map(|r| r.document(&p)).collect();
    let agree = verdicts.windows(2).all(|w| w[0] == w[1]);
    if json {
        let value = if method == MethodArg::Both {
            serde_json::json!({ "reports": docs, "agree": agree })
        } else {
            serde_json::to_value(&docs[0]).map_err(|e| e.to_string())?
        };
        let _ = writeln!(out, "{}", serde_json::to_string_pretty(&value).map_err(|e| e.to_string())?);
    } else {
        for d in &docs {
            let _ = write!(out, "{}", d.to_text());
        }
        if method == MethodArg::Both {
            let _ = writeln!(out, "agree: {agree}");
        }
    }
    Ok(exit_for(&verdicts))
}

fn cmd_gen(family: &str, output: Option<&Path>, out: &mut dyn Write) -> Result<i32, String> {
    let p = corpus::family(family).map_err(|e| e.to_string())?;
    let text = serialize(&p);
    match output {
        Some(path) => std::fs::write(path, text).map_err(|e| format!("{}: {e}", path.display()))?,
        None => {
            let _ = write!(out, "{text}");
        }
    }
    Ok(0)
}

/// A bench input is a presentation file if one exists at that path,
/// otherwise a family spec.
fn bench_input(spec: &str) -> Result<RefinedPresentation, String> {
    let path = Path::new(spec);
    if path.is_file() {
        return load(path);
    }
    corpus::family(spec).map_err(|e| match e {
        corpus::CorpusError::UnknownFamily(_) => format!("`{spec}` is neither a file nor a known family"),
        other => other.to_string(),
    })
}

fn cmd_bench(
    inputs: &[String],
    methods: &[MethodArg],
    reps: usize,
    json: bool,
    opts: CheckOptions,
    out: &mut dyn Write,
) -> Result<i32, String> {
    let mut ms: Vec<Method> = Vec::new();
    for m in methods {
        let add: &[Method] = match m {
            MethodArg::Solv => &[Method::Solv],
            MethodArg::Overlap => &[Method::Overlap],
            MethodArg::Both => &[Method::Solv, Method::Overlap],
        };
        for a in add {
            if !ms.contains(a) {
                ms.push(*a);
            }
        }
    }
    let mut records = Vec::new();
    for spec in inputs {
        let p = bench_input(spec)?;
        records.extend(bench::bench_input(spec, &p, &ms, reps, opts));
    }
    let doc = bench::document(records);
    if json {
        let _ = writeln!(out, "{}", serde_json::to_string_pretty(&doc).map_err(|e| e.to_string())?);
    } else {
        let _ = write!(out, "{}", bench::render_table(&doc));
    }
    let aborted = doc.records.iter().any(|r| r.verdict == Verdict::Aborted);
    Ok(if doc.agree && !aborted { 0 } else { 2 })
}
