use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use pteg_core::analysis::{
    build_combined, existence_report, fastest_init, run_trajectory, shift_nonneg, slowest_init,
    verify_trajectory, AnalysisError, CombinedModel, Mode, Trajectory, Verdict,
};
use pteg_core::model::{extract_matrices, normalize, parse_model, validate, PtegModel};
use pteg_core::report::{analyze, reasons};
use pteg_core::tropical::format_number;

const INVALID: u8 = 1;
const NO_SOLUTION: u8 = 2;
const PRECONDITION: u8 = 3;

#[derive(Parser)]
#[command(
    name = "pteg",
    version,
    about = "Analyze P-time event graphs in max-plus / min-plus algebra"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check a model file for structural problems.
    Validate { model: PathBuf },
    /// Print one characteristic matrix.
    Matrices {
        model: PathBuf,
        #[arg(long, value_enum)]
        which: Which,
    },
    /// Existence test, spectral summary and extremal initial states.
    Analyze { model: PathBuf },
    /// Generate an extremal trajectory as CSV.
    Trajectory {
        model: PathBuf,
        #[arg(long, value_enum)]
        mode: ModeArg,
        #[arg(long, default_value_t = 10)]
        steps: usize,
        /// Shift the initial state so every date is nonnegative.
        #[arg(long)]
        nonneg: bool,
        /// Write the CSV here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check a CSV trajectory against the model's time windows.
    Verify {
        model: PathBuf,
        #[arg(long)]
        trajectory: PathBuf,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Which {
    #[value(name = "A")]
    A,
    #[value(name = "Blow")]
    Blow,
    #[value(name = "Bupp")]
    Bupp,
    #[value(name = "B")]
    B,
    #[value(name = "C")]
    C,
    #[value(name = "calA")]
    CalA,
    #[value(name = "calB")]
    CalB,
    #[value(name = "H")]
    H,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Fastest,
    Slowest,
}

struct Failure {
    code: u8,
    message: String,
}

fn fail(code: u8, message: impl Into<String>) -> Failure {
    Failure {
        code,
        message: message.into(),
    }
}

fn analysis_failure(e: AnalysisError) -> Failure {
    let code = match e {
        AnalysisError::NoAdmissibleCandidate => NO_SOLUTION,
        AnalysisError::NotIrreducible { .. } | AnalysisError::CouplingNotFound { .. } => {
            PRECONDITION
        }
        AnalysisError::BStarDiverges => INVALID,
        _ => PRECONDITION,
    };
    fail(code, e.to_string())
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path)
        .map_err(|e| fail(INVALID, format!("cannot read {}: {e}", path.display())))
}

fn load_model(path: &Path) -> Result<PtegModel, Failure> {
    parse_model(&read(path)?).map_err(|e| fail(INVALID, format!("{}: {e}", path.display())))
}

/// Parse, validate, normalize and compile.
fn load_combined(path: &Path) -> Result<(PtegModel, CombinedModel), Failure> {
    let model = load_model(path)?;
    let diags = validate(&model);
    if !diags.is_empty() {
        let lines: Vec<String> = diags.iter().map(|d| d.to_string()).collect();
        return Err(fail(INVALID, lines.join("\n")));
    }
    let bundle = extract_matrices(&normalize(&model)).map_err(|e| fail(INVALID, e.to_string()))?;
    let cm = build_combined(bundle).map_err(analysis_failure)?;
    Ok((model, cm))
}

fn cmd_validate(path: &Path, out: &mut impl Write) -> Result<u8, Failure> {
    let model = load_model(path)?;
    let diags = validate(&model);
    for d in &diags {
        writeln!(out, "{d}").ok();
    }
    if diags.is_empty() {
        writeln!(
            out,
            "ok: {} ({} transitions, {} places)",
            model.name,
            model.transitions.len(),
            model.places.len()
        )
        .ok();
        Ok(0)
    } else {
        Ok(INVALID)
    }
}

fn cmd_matrices(path: &Path, which: Which, out: &mut impl Write) -> Result<u8, Failure> {
    let (_, cm) = load_combined(path)?;
    let b = &cm.bundle;
    let m = match which {
        Which::A => &b.a,
        Which::Blow => &b.b_low,
        Which::Bupp => &b.b_upp,
        Which::B => &b.b,
        Which::C => &b.c,
        Which::CalA => &cm.cal_a,
        Which::CalB => &cm.cal_b,
        Which::H => &cm.h,
    };
    write!(out, "{m}").ok();
    Ok(0)
}

fn cmd_analyze(path: &Path, out: &mut impl Write) -> Result<u8, Failure> {
    let (model, cm) = load_combined(path)?;
    let report = analyze(&model.name, &cm).map_err(analysis_failure)?;
    write!(out, "{}", report.text).ok();
    if report.verdict == Verdict::NoSolution {
        return Ok(NO_SOLUTION);
    }
    if let Some(why) = report.precondition_failure {
        return Err(fail(PRECONDITION, why));
    }
    Ok(0)
}

fn join(x: &[f64]) -> String {
    x.iter()
        .map(|&v| format_number(v))
        .collect::<Vec<_>>()
        .join(",")
}

fn write_csv(
    out: &mut impl Write,
    model: &str,
    names: &[String],
    t: &Trajectory,
) -> Result<(), Failure> {
    let io_err = |e: io::Error| fail(INVALID, format!("write failed: {e}"));
    writeln!(out, "# model: {model}").map_err(io_err)?;
    writeln!(out, "# mode: {}", t.mode.as_str()).map_err(io_err)?;
    if let Some((lambda, p)) = t.period {
        writeln!(out, "# lambda: {lambda}").map_err(io_err)?;
        writeln!(out, "# period: {p}").map_err(io_err)?;
    }
    writeln!(out, "# x0: {}", join(&t.states[0])).map_err(io_err)?;
    let mut w = csv::Writer::from_writer(out);
    let csv_err = |e: csv::Error| fail(INVALID, format!("write failed: {e}"));
    let mut header = vec!["k".to_string()];
    header.extend(names.iter().cloned());
    w.write_record(&header).map_err(csv_err)?;
    for (k, x) in t.states.iter().enumerate() {
        let mut row = vec![k.to_string()];
        row.extend(x.iter().map(|&v| format_number(v)));
        w.write_record(&row).map_err(csv_err)?;
    }
    w.flush()
        .map_err(|e| fail(INVALID, format!("write failed: {e}")))?;
    Ok(())
}

fn cmd_trajectory(
    path: &Path,
    mode: ModeArg,
    steps: usize,
    nonneg: bool,
    dest: Option<&Path>,
    out: &mut impl Write,
) -> Result<u8, Failure> {
    let (model, cm) = load_combined(path)?;
    let ex = existence_report(&cm).map_err(analysis_failure)?;
    if ex.verdict == Verdict::NoSolution {
        return Err(fail(
            NO_SOLUTION,
            format!("no solution: {}", reasons(&ex).join("; ")),
        ));
    }
    let (mode, cands) = match mode {
        ModeArg::Fastest => (Mode::Fastest, fastest_init(&cm)),
        ModeArg::Slowest => (Mode::Slowest, slowest_init(&cm)),
    };
    let cand = cands.map_err(analysis_failure)?.remove(0);
    let x0 = if nonneg {
        shift_nonneg(&cand.x0)
    } else {
        cand.x0.clone()
    };
    let mut t = run_trajectory(&cm, &x0, mode, steps).map_err(analysis_failure)?;
    t.period = Some((cand.lambda, cand.period));
    match dest {
        Some(p) => {
            let mut buf = Vec::new();
            write_csv(&mut buf, &model.name, &cm.bundle.index_map, &t)?;
            fs::write(p, buf)
                .map_err(|e| fail(INVALID, format!("cannot write {}: {e}", p.display())))?;
        }
        None => write_csv(out, &model.name, &cm.bundle.index_map, &t)?,
    }
    Ok(0)
}

fn read_csv(path: &Path, names: &[String]) -> Result<Vec<Vec<f64>>, Failure> {
    let text = read(path)?;
    let mut r = csv::ReaderBuilder::new()
        .comment(Some(b'#'))
        .trim(csv::Trim::All)
        .from_reader(text.as_bytes());
    let bad = |m: String| fail(INVALID, format!("{}: {m}", path.display()));
    let header = r.headers().map_err(|e| bad(e.to_string()))?.clone();
    let mut expected = vec!["k"];
    expected.extend(names.iter().map(String::as_str));
    if header.iter().collect::<Vec<_>>() != expected {
        return Err(bad(format!(
            "columns do not match the model, expected `{}`",
            expected.join(",")
        )));
    }
    let mut states = Vec::new();
    for (row, rec) in r.records().enumerate() {
        let rec = rec.map_err(|e| bad(e.to_string()))?;
        let x: Vec<f64> = rec
            .iter()
            .skip(1)
            .map(|s| s.parse::<f64>().ok().filter(|v| v.is_finite()))
            .collect::<Option<_>>()
            .ok_or_else(|| bad(format!("row {}: expected finite numbers", row + 1)))?;
        states.push(x);
    }
    if states.is_empty() {
        return Err(bad("no states".to_string()));
    }
    Ok(states)
}

fn cmd_verify(path: &Path, csv_path: &Path, out: &mut impl Write) -> Result<u8, Failure> {
    let (_, cm) = load_combined(path)?;
    let states = read_csv(csv_path, &cm.bundle.index_map)?;
    let n = states.len();
    let violations =
        verify_trajectory(&cm.bundle, &Trajectory::custom(states)).map_err(analysis_failure)?;
    for v in &violations {
        writeln!(out, "{v}").ok();
    }
    if violations.is_empty() {
        writeln!(out, "admissible: {n} states checked").ok();
        Ok(0)
    } else {
        writeln!(out, "{} violations", violations.len()).ok();
        Ok(NO_SOLUTION)
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let stdout = io::stdout();
    let mut out = stdout.lock();
    let result = match &cli.command {
        Command::Validate { model } => cmd_validate(model, &mut out),
        Command::Matrices { model, which } => cmd_matrices(model, *which, &mut out),
        Command::Analyze { model } => cmd_analyze(model, &mut out),
        Command::Trajectory {
            model,
            mode,
            steps,
            nonneg,
            out: dest,
        } => cmd_trajectory(model, *mode, *steps, *nonneg, dest.as_deref(), &mut out),
        Command::Verify { model, trajectory } => cmd_verify(model, trajectory, &mut out),
    };
    out.flush().ok();
    match result {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
