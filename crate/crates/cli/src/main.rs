//! `qes2`: classify parameters, build and export sphere solutions, verify
//! them, and plot profiles.

mod document;
mod plot;

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::json;

use document::SolutionDocument;
use qes2_core::verify::{verify_solution, VerifyOptions};
use qes2_core::{
    admissible_c_range, build_solution, classify, compute_c0, BetaBranch, Error, ModelParams, Profile, Reason,
};

const EXIT_USAGE: u8 = 1;
const EXIT_DOMAIN: u8 = 2;
const EXIT_VERIFY: u8 = 3;

#[derive(Parser)]
#[command(name = "qes2", version, about = "Axisymmetric quasi-Einstein structures on S^2")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Decide whether (m, lambda, c, b) closes up smoothly on S^2.
    Classify {
        #[command(flatten)]
        p: Params,
        #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
        b: f64,
        #[arg(long)]
        json: bool,
    },
    /// Threshold constant c0 for m > 0.
    C0 {
        #[arg(long, allow_negative_numbers = true)]
        m: f64,
    },
    /// Admissible interval of c for fixed (m, lambda).
    Range {
        #[arg(long, allow_negative_numbers = true)]
        m: f64,
        #[arg(long, allow_negative_numbers = true)]
        lambda: f64,
        #[arg(long)]
        json: bool,
    },
    /// Build a solution and write it as JSON.
    Solve {
        #[command(flatten)]
        p: Params,
        /// Output path; stdout when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Chebyshev samples of (x1, x2) stored in the document; 0 omits the grid.
        #[arg(long, default_value_t = 513)]
        grid: usize,
    },
    /// Run the residual suite on a document or on inline parameters.
    Verify {
        /// A solution document.
        doc: Option<PathBuf>,
        #[arg(long, allow_negative_numbers = true)]
        m: Option<f64>,
        #[arg(long, allow_negative_numbers = true)]
        lambda: Option<f64>,
        #[arg(long, allow_negative_numbers = true)]
        c: Option<f64>,
        #[arg(long, default_value_t = 512)]
        grid: usize,
        /// Report path; stdout when omitted.
        #[arg(long)]
        report: Option<PathBuf>,
    },
    /// Sample B(x) on a range and write CSV and/or SVG.
    Plot {
        #[command(flatten)]
        p: Params,
        #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
        b: f64,
        /// lo:hi
        #[arg(long, default_value = "-4:4", allow_hyphen_values = true)]
        range: String,
        #[arg(long, default_value_t = 801)]
        samples: usize,
        #[arg(long)]
        svg: Option<PathBuf>,
        #[arg(long)]
        csv: Option<PathBuf>,
    },
}

#[derive(Args)]
struct Params {
    #[arg(long, allow_negative_numbers = true)]
    m: f64,
    #[arg(long, allow_negative_numbers = true)]
    lambda: f64,
    #[arg(long, allow_negative_numbers = true)]
    c: f64,
}

/// A failed command: exit code and message for stderr.
struct Failure(u8, String);

impl Failure {
    fn usage(msg: impl Into<String>) -> Self {
        Self(EXIT_USAGE, msg.into())
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::InvalidParameter(_) => Failure(EXIT_USAGE, e.to_string()),
            _ => Failure(EXIT_DOMAIN, e.to_string()),
        }
    }
}

type CmdResult = Result<(), Failure>;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_USAGE } else { 0 });
        }
    };
    let result = tol_scale().and_then(|tol| run(cli.command, tol));
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure(code, msg)) => {
            if !msg.is_empty() {
                eprintln!("qes2: {msg}");
            }
            ExitCode::from(code)
        }
    }
}

/// Tolerance multiplier from `QES2_TOL`, 1 when unset.
fn tol_scale() -> Result<f64, Failure> {
    match std::env::var("QES2_TOL") {
        Err(_) => Ok(1.0),
        Ok(s) => match s.trim().parse::<f64>() {
            Ok(v) if v.is_finite() && v > 0.0 => Ok(v),
            _ => Err(Failure::usage(format!("QES2_TOL must be a positive number, got {s:?}"))),
        },
    }
}

fn run(cmd: Command, tol: f64) -> CmdResult {
    match cmd {
        Command::Classify { p, b, json } => cmd_classify(&p, b, json),
        Command::C0 { m } => cmd_c0(m),
        Command::Range { m, lambda, json } => cmd_range(m, lambda, json),
        Command::Solve { p, out, grid } => cmd_solve(&p, out.as_deref(), grid),
        Command::Verify { doc, m, lambda, c, grid, report } => {
            cmd_verify(doc.as_deref(), (m, lambda, c), grid, report.as_deref(), tol)
        }
        Command::Plot { p, b, range, samples, svg, csv } => {
            cmd_plot(&p, b, &range, samples, svg.as_deref(), csv.as_deref())
        }
    }
}

fn check_finite(values: &[(&str, f64)]) -> CmdResult {
    for (name, v) in values {
        if !v.is_finite() {
            return Err(Failure::usage(format!("--{name} must be finite")));
        }
    }
    Ok(())
}

fn write_output(path: Option<&Path>, text: &str) -> CmdResult {
    match path {
        Some(p) => fs::write(p, text).map_err(|e| Failure::usage(format!("cannot write {}: {e}", p.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn pretty(v: &serde_json::Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("JSON values always serialise");
    s.push('\n');
    s
}

fn verdict_json(v: &qes2_core::Verdict) -> serde_json::Value {
    json!({
        "admissible": v.admissible,
        "reason": format!("{:?}", v.reason),
        "c_range": v.c_range.to_string(),
    })
}

fn cmd_classify(p: &Params, b: f64, as_json: bool) -> CmdResult {
    check_finite(&[("m", p.m), ("lambda", p.lambda), ("c", p.c), ("b", b)])?;
    let v = classify(p.m, p.lambda, p.c, b)?;
    if as_json {
        print!("{}", pretty(&verdict_json(&v)));
    } else if v.admissible {
        println!("admissible; c_range={}", v.c_range);
    } else {
        println!("not admissible ({:?}); c_range={}", v.reason, v.c_range);
    }
    match v.reason {
        Reason::Ok => Ok(()),
        Reason::MZero => Err(Failure::usage("m must be nonzero (MZero)")),
        _ => Err(Failure(EXIT_DOMAIN, String::new())),
    }
}

fn cmd_c0(m: f64) -> CmdResult {
    check_finite(&[("m", m)])?;
    if m <= 0.0 {
        return Err(Failure(EXIT_DOMAIN, format!("c0 is defined for m > 0 only, got {m}")));
    }
    let r = compute_c0(m)?;
    println!("x0={:.12} xmin={:.12} c0={:.12}", r.x0, r.xmin, r.c0);
    Ok(())
}

fn cmd_range(m: f64, lambda: f64, as_json: bool) -> CmdResult {
    check_finite(&[("m", m), ("lambda", lambda)])?;
    if m == 0.0 {
        return Err(Failure::usage("m must be nonzero (MZero)"));
    }
    let r = admissible_c_range(m, lambda)?;
    if as_json {
        print!("{}", pretty(&json!({ "m": m, "lambda": lambda, "c_range": r.to_string() })));
    } else {
        println!("{r}");
    }
    Ok(())
}

fn cmd_solve(p: &Params, out: Option<&Path>, grid: usize) -> CmdResult {
    check_finite(&[("m", p.m), ("lambda", p.lambda), ("c", p.c)])?;
    let sol = match build_solution(p.m, p.lambda, p.c) {
        Ok(sol) => sol,
        Err(Error::Inadmissible(v)) => {
            print!("{}", pretty(&verdict_json(&v)));
            return Err(Failure(EXIT_DOMAIN, format!("parameters are not admissible ({:?})", v.reason)));
        }
        Err(Error::InvalidParameter(msg)) if p.m == 0.0 => return Err(Failure::usage(msg)),
        Err(e) => return Err(e.into()),
    };
    let range = admissible_c_range(p.m, p.lambda)?;
    let doc = SolutionDocument::from_solution(&sol, range, (grid > 0).then_some(grid))?;
    write_output(out, &doc.to_string())
}

fn cmd_verify(
    doc: Option<&Path>,
    inline: (Option<f64>, Option<f64>, Option<f64>),
    grid: usize,
    report: Option<&Path>,
    tol: f64,
) -> CmdResult {
    if grid < 2 {
        return Err(Failure::usage("--grid must be at least 2"));
    }
    let sol = match (doc, inline) {
        (Some(path), (None, None, None)) => {
            let text =
                fs::read_to_string(path).map_err(|e| Failure::usage(format!("cannot read {}: {e}", path.display())))?;
            let doc = SolutionDocument::parse(&text).map_err(|e| Failure::usage(format!("{}: {e}", path.display())))?;
            doc.to_solution().map_err(|e| Failure::usage(format!("{}: {e}", path.display())))?
        }
        (None, (Some(m), Some(lambda), Some(c))) => {
            check_finite(&[("m", m), ("lambda", lambda), ("c", c)])?;
            build_solution(m, lambda, c)?
        }
        _ => return Err(Failure::usage("give either a document path or all of --m, --lambda, --c")),
    };
    let rep = verify_solution(&sol, &VerifyOptions { grid, tol_scale: tol, ..Default::default() });
    let text = pretty(&serde_json::to_value(&rep).expect("reports serialise"));
    write_output(report, &text)?;
    if rep.all_pass() {
        Ok(())
    } else {
        Err(Failure(EXIT_VERIFY, format!("failed checks: {}", rep.failures().join(", "))))
    }
}

fn parse_range(s: &str) -> Result<(f64, f64), Failure> {
    let (lo, hi) = s.split_once(':').ok_or_else(|| Failure::usage(format!("--range must be lo:hi, got {s:?}")))?;
    let parse = |t: &str| t.trim().parse::<f64>().map_err(|_| Failure::usage(format!("bad number {t:?} in --range")));
    let (lo, hi) = (parse(lo)?, parse(hi)?);
    if !(lo.is_finite() && hi.is_finite() && lo < hi) {
        return Err(Failure::usage(format!("--range needs finite lo < hi, got {s:?}")));
    }
    Ok((lo, hi))
}

fn cmd_plot(p: &Params, b: f64, range: &str, samples: usize, svg: Option<&Path>, csv: Option<&Path>) -> CmdResult {
    check_finite(&[("m", p.m), ("lambda", p.lambda), ("c", p.c), ("b", b)])?;
    let (lo, hi) = parse_range(range)?;
    if samples < 2 {
        return Err(Failure::usage("--samples must be at least 2"));
    }
    if p.m == 0.0 {
        return Err(Failure::usage("m must be nonzero (MZero)"));
    }
    let profile = Profile::new(ModelParams { m: p.m, lambda: p.lambda, b, c: p.c, beta: BetaBranch::NonClosed })?;
    let mut rows = Vec::with_capacity(samples);
    for x in qes2_core::grid::linspace(lo, hi, samples) {
        rows.push((x, profile.value(x)?));
    }
    if let Some(path) = svg {
        let title = format!("B(x) for m={}, c={}, lambda={}", p.m, p.c, p.lambda);
        write_output(Some(path), &plot::svg(&rows, &title))?;
    }
    if csv.is_some() || svg.is_none() {
        write_output(csv, &plot::csv(&rows))?;
    }
    Ok(())
}
