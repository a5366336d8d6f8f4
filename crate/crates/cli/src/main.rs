//! `vague`: validate vague partitions, evaluate and invert membership
//! degrees, and replay the worked examples.
//!
//! Exit codes: 0 on success, 1 when the verdict is negative (invalid
//! partition, empty inversion, demo mismatch), 2 on usage or input errors.

use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use vague_core::measure::DEFAULT_GRID_CELLS;
use vague_core::{
    check_axioms, consistent_degree, eval_measure, incompatible, invert, judge, parse, separation, sharpness,
    validate_partition, Component, ConnectiveTriple, LevelSet, PartitionDocument, Quantity, ReportDocument,
    SampledFn, ValidationReport, VaguePartition, Witness,
};

mod demo;

#[derive(Parser)]
#[command(name = "vague", version, about = "Vague partitions and membership measures")]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Global {
    /// Connectives as `negation,tnorm,tconorm`; overrides the file's triple.
    #[arg(long, global = true)]
    triple: Option<ConnectiveTriple>,
    /// Write a machine-readable report to this path.
    #[arg(long, global = true, value_name = "PATH")]
    report: Option<PathBuf>,
    /// Grid spacing for quantities that cannot be computed exactly.
    #[arg(long, global = true, value_name = "STEP")]
    grid_step: Option<f64>,
}

#[derive(Subcommand)]
enum Command {
    /// Check the partition conditions and regularity.
    Validate { file: PathBuf },
    /// Print the judgement at `x`, or the degree of an expression.
    Eval {
        file: PathBuf,
        #[arg(long, allow_negative_numbers = true)]
        x: f64,
        #[arg(long)]
        expr: Option<String>,
    },
    /// Find the objects with the given degrees.
    Invert {
        file: PathBuf,
        #[arg(required = true, value_name = "NAME=VALUE")]
        targets: Vec<String>,
        #[arg(long, default_value_t = 0.0)]
        tol: f64,
    },
    /// Sharpness, separation or consistency.
    Measure {
        file: PathBuf,
        #[command(flatten)]
        which: Which,
    },
    /// Replay a worked example. Each demo uses its own connectives.
    Demo { name: demo::Name },
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct Which {
    #[arg(long, value_name = "X", allow_negative_numbers = true)]
    sharpness: Option<f64>,
    #[arg(long)]
    separation: bool,
    #[arg(long, num_args = 2, value_names = ["A", "B"])]
    consistency: Option<Vec<String>>,
}

/// Rounds to 12 decimals and trims trailing zeros.
pub(crate) fn num(v: f64) -> String {
    let s = format!("{v:.12}");
    let s = s.trim_end_matches('0').trim_end_matches('.');
    if s == "-0" {
        "0".into()
    } else {
        s.into()
    }
}

fn yes(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn read_document(path: &Path) -> Result<PartitionDocument> {
    let text = std::fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))?;
    PartitionDocument::parse(&text).with_context(|| format!("in {}", path.display()))
}

fn load(path: &Path, global: &Global) -> Result<(Arc<VaguePartition>, ConnectiveTriple)> {
    let doc = read_document(path)?;
    let (p, t) = doc.to_partition().with_context(|| format!("in {}", path.display()))?;
    Ok((Arc::new(p), global.triple.unwrap_or(t)))
}

fn grid_cells(p: &VaguePartition, global: &Global) -> Result<usize> {
    match global.grid_step {
        Some(h) => Ok(SampledFn::cells_for_step(p.domain(), h)?),
        None => Ok(DEFAULT_GRID_CELLS),
    }
}

fn write_report(global: &Global, report: &ReportDocument) -> Result<()> {
    if let Some(path) = &global.report {
        report.save(path)?;
    }
    Ok(())
}

fn describe_witness(w: &Witness) -> String {
    match w {
        Witness::Point { x } => format!("x = {}", num(*x)),
        Witness::Block { name, .. } => format!("block {name}"),
        Witness::BlockPoint { name, x, .. } => format!("block {name} at x = {}", num(*x)),
    }
}

fn print_validation(r: &ValidationReport) {
    for c in &r.conditions {
        if c.holds {
            println!("condition ({}): pass", c.condition);
        } else {
            let at = c.witness.as_ref().map(describe_witness).unwrap_or_default();
            println!(
                "condition ({}): FAIL at {at}: {}",
                c.condition,
                c.reason.as_deref().unwrap_or("")
            );
        }
    }
    println!("block sum range: [{}, {}]", num(r.sum_range.0), num(r.sum_range.1));
    println!("valid: {}", yes(r.valid));
    match r.regularity_witness {
        Some(x) => println!("regular: no (sum differs from 1 at x = {})", num(x)),
        None => println!("regular: yes"),
    }
}

fn cmd_validate(file: &Path, global: &Global) -> Result<u8> {
    let doc = read_document(file)?;
    let candidate = doc.candidate()?;
    // a bad triple is an input error even when the blocks are fine
    doc.triple().with_context(|| format!("in {}", file.display()))?;
    let r = validate_partition(&candidate);
    print_validation(&r);
    let mut report = ReportDocument::new();
    report.validation = Some(r.clone());
    write_report(global, &report)?;
    Ok(if r.valid { 0 } else { 1 })
}

fn cmd_eval(file: &Path, x: f64, expr: Option<&str>, global: &Global) -> Result<u8> {
    let (p, t) = load(file, global)?;
    let j = judge(&p, x)?;
    match expr {
        Some(src) => {
            let e = parse(src)?;
            println!("{}", num(eval_measure(&j, &t, &e)?));
        }
        None => {
            let parts: Vec<String> = j.degrees().map(|(n, d)| format!("{n}={}", num(d))).collect();
            println!("{}", parts.join(" "));
        }
    }
    let mut report = ReportDocument::new();
    report.membership = Some(check_axioms(&j, &t));
    report.judgement = Some(j);
    write_report(global, &report)?;
    Ok(0)
}

fn component(c: &Component) -> String {
    if c.is_point() {
        num(c.lo)
    } else {
        format!("[{}, {}]", num(c.lo), num(c.hi))
    }
}

pub(crate) fn solution_text(s: &LevelSet) -> String {
    let parts = s.components();
    match parts {
        [] => "no solution".into(),
        [c] if c.is_point() => format!("x = {}", num(c.lo)),
        _ if parts.iter().all(Component::is_point) => {
            let xs: Vec<String> = parts.iter().map(|c| num(c.lo)).collect();
            format!("x ∈ {{{}}}", xs.join(", "))
        }
        _ => {
            let xs: Vec<String> = parts
                .iter()
                .map(|c| if c.is_point() { format!("{{{}}}", num(c.lo)) } else { component(c) })
                .collect();
            format!("x ∈ {}", xs.join(" ∪ "))
        }
    }
}

fn cmd_invert(file: &Path, targets: &[String], tol: f64, global: &Global) -> Result<u8> {
    let (p, _) = load(file, global)?;
    let tv = vague_core::TargetVector::parse_pairs(targets.iter().map(String::as_str), tol)?;
    let inv = invert(&p, &tv)?;
    println!("{}", solution_text(&inv.solutions));
    if inv.solutions.is_empty() {
        for b in &inv.per_block {
            let own = if b.solutions.is_empty() {
                format!("unreachable (gap {})", num(b.gap))
            } else {
                let cs: Vec<String> = b.solutions.components().iter().map(component).collect();
                cs.join(" ∪ ")
            };
            println!(
                "  {}={}: range [{}, {}], alone {}",
                b.name,
                num(b.target),
                num(b.range.0),
                num(b.range.1),
                own
            );
        }
    }
    Ok(if inv.solutions.is_empty() { 1 } else { 0 })
}

fn how(q: &Quantity) -> String {
    match q.grid_step {
        Some(h) if !q.exact => format!("grid, step {}", num(h)),
        _ => "exact".into(),
    }
}

fn cmd_measure(file: &Path, which: &Which, global: &Global) -> Result<u8> {
    let (p, t) = load(file, global)?;
    if let Some(x) = which.sharpness {
        println!("sharpness({}) = {} (exact)", num(x), num(sharpness(&p, &t, x)?));
    } else if which.separation {
        let q = separation(&p, &t, grid_cells(&p, global)?)?;
        println!("separation = {} at x = {} ({})", num(q.value), num(q.x), how(&q));
    } else if let Some(ab) = &which.consistency {
        let (a, b) = (parse(&ab[0])?, parse(&ab[1])?);
        let cells = grid_cells(&p, global)?;
        let q = consistent_degree(&p, &t, &a, &b, cells)?;
        println!("consistency = {} at x = {} ({})", num(q.value), num(q.x), how(&q));
        println!("incompatible: {}", yes(incompatible(&p, &t, &a, &b, cells)?));
    }
    Ok(0)
}

fn run(cli: &Cli) -> Result<u8> {
    if let Some(h) = cli.global.grid_step {
        if !(h > 0.0 && h.is_finite()) {
            bail!("--grid-step must be positive, got {h}");
        }
    }
    let g = &cli.global;
    match &cli.command {
        Command::Validate { file } => cmd_validate(file, g),
        Command::Eval { file, x, expr } => cmd_eval(file, *x, expr.as_deref(), g),
        Command::Invert { file, targets, tol } => cmd_invert(file, targets, *tol, g),
        Command::Measure { file, which } => cmd_measure(file, which, g),
        Command::Demo { name } => demo::run(*name),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
