//! Command line front end.
//!
//! One command per process: parse the input file, run the requested
//! computation, write one report (or, for `dual`, one new input file), and
//! exit. Exit codes: 0 all checks passed, 1 some check failed, 2 bad input
//! or exhausted budget, 3 internal inconsistency.

mod commands;
mod report;

use std::io::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use qda::spec::AlgebraSpec;
use qda::Error;

use report::{footer_text, header_text, Report, Timings};

#[derive(Parser)]
#[command(
    name = "qda",
    version,
    about = "Exact computations for quadratic algebras built from R-matrices"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,

    /// Write the output to a file instead of stdout.
    #[arg(long, global = true, value_name = "FILE")]
    out: Option<PathBuf>,

    /// Include wall-clock timings in the report. Off by default so that
    /// reruns produce byte-identical output.
    #[arg(long, global = true)]
    timings: bool,

    /// Cap on matrix cells per construction; exceeding it stops the run
    /// with exit code 2 instead of thrashing.
    #[arg(long, global = true, value_name = "CELLS")]
    budget: Option<u64>,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Structural properties of the R-matrix: invertibility, symmetry,
    /// involutivity, hermiticity, the braid relation, the Hecke relation,
    /// the spectrum, and star-closure of the relations.
    Check { spec: PathBuf },

    /// Graded dimensions of the algebra, its partner from 1l + R, and its
    /// dual; optionally the full bigraded triangle with freeness flags.
    Hilbert {
        spec: PathBuf,
        #[arg(long, default_value_t = 4, value_name = "N")]
        max_degree: usize,
        /// Also compute every block with r+s <= N.
        #[arg(long)]
        bigraded: bool,
    },

    /// The two derivations on the bigraded algebra: well-definedness,
    /// vanishing squares, the degree identity, and line homology.
    Poincare {
        spec: PathBuf,
        #[arg(long, default_value_t = 4, value_name = "N")]
        max_degree: usize,
    },

    /// The Koszul complex: boundary, homology per weight, presentation
    /// exactness, and the Euler cross-check.
    Koszul {
        spec: PathBuf,
        #[arg(long, default_value_t = 4, value_name = "N")]
        max_degree: usize,
    },

    /// Compare the Koszul complex with the calculus: freeness, dual
    /// identification, surjectivity, and the boundary/codifferential square.
    Compare {
        spec: PathBuf,
        #[arg(long, default_value_t = 4, value_name = "N")]
        max_degree: usize,
    },

    /// Emit the input file describing the dual algebra (always JSON; itself
    /// a valid input for every other command).
    Dual { spec: PathBuf },
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Check { .. } => "check",
            Command::Hilbert { .. } => "hilbert",
            Command::Poincare { .. } => "poincare",
            Command::Koszul { .. } => "koszul",
            Command::Compare { .. } => "compare",
            Command::Dual { .. } => "dual",
        }
    }

    fn spec_path(&self) -> &PathBuf {
        match self {
            Command::Check { spec }
            | Command::Hilbert { spec, .. }
            | Command::Poincare { spec, .. }
            | Command::Koszul { spec, .. }
            | Command::Compare { spec, .. }
            | Command::Dual { spec } => spec,
        }
    }

    fn max_degree(&self) -> Option<usize> {
        match self {
            Command::Check { .. } | Command::Dual { .. } => None,
            Command::Hilbert { max_degree, .. }
            | Command::Poincare { max_degree, .. }
            | Command::Koszul { max_degree, .. }
            | Command::Compare { max_degree, .. } => Some(*max_degree),
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Err(msg) = init_threads() {
        eprintln!("qda: {msg}");
        return ExitCode::from(2);
    }
    match run(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("qda: {e}");
            let code = match e {
                Error::Internal(_) | Error::DivisionByZero => 3,
                _ => 2,
            };
            ExitCode::from(code)
        }
    }
}

fn init_threads() -> Result<(), String> {
    let Ok(raw) = std::env::var("QDA_THREADS") else {
        return Ok(());
    };
    let threads: usize = raw
        .parse()
        .map_err(|_| format!("QDA_THREADS must be a positive integer, got {raw:?}"))?;
    if threads == 0 {
        return Err("QDA_THREADS must be at least 1".into());
    }
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build_global()
        .map_err(|e| e.to_string())
}

fn run(cli: &Cli) -> qda::Result<bool> {
    let start = Instant::now();
    let spec = AlgebraSpec::from_path(cli.command.spec_path())?;

    if let Command::Dual { .. } = cli.command {
        let mut text = serde_json::to_string_pretty(&spec.dual().to_value())
            .expect("spec values serialize");
        text.push('\n');
        write_output(cli.out.as_deref(), &text)?;
        return Ok(true);
    }

    let (results, body, passed) = match &cli.command {
        Command::Check { .. } => {
            let r = commands::check(&spec)?;
            (to_value(&r), r.text(), r.passed())
        }
        Command::Hilbert {
            max_degree,
            bigraded,
            ..
        } => {
            let r = commands::hilbert(&spec, *max_degree, *bigraded, cli.budget)?;
            (to_value(&r), r.text(), r.passed())
        }
        Command::Poincare { max_degree, .. } => {
            let r = commands::poincare(&spec, *max_degree, cli.budget)?;
            (to_value(&r), r.text(), r.passed())
        }
        Command::Koszul { max_degree, .. } => {
            let r = commands::koszul(&spec, *max_degree, cli.budget)?;
            (to_value(&r), r.text(), r.passed())
        }
        Command::Compare { max_degree, .. } => {
            let r = commands::compare(&spec, *max_degree, cli.budget)?;
            (to_value(&r), r.text(), r.passed())
        }
        Command::Dual { .. } => unreachable!("handled above"),
    };

    let report = Report {
        tool: "qda",
        version: env!("CARGO_PKG_VERSION"),
        command: cli.command.name(),
        max_degree: cli.command.max_degree(),
        spec: spec.to_value(),
        all_checks_passed: passed,
        results,
        timings: cli
            .timings
            .then(|| Timings {
                total_ms: start.elapsed().as_millis(),
            }),
    };

    let rendered = match cli.format {
        Format::Json => report.to_json(),
        Format::Text => {
            let input_line = format!(
                "{} (n = {}, scalar = {})",
                spec.name.as_deref().unwrap_or("(unnamed)"),
                spec.n(),
                spec.mode()
            );
            let mut text = header_text(&report, &input_line);
            text.push_str(&body);
            if let Some(t) = &report.timings {
                text.push_str(&format!("total time: {} ms\n", t.total_ms));
            }
            text.push_str(&footer_text(passed));
            text
        }
    };
    write_output(cli.out.as_deref(), &rendered)?;
    Ok(passed)
}

fn to_value<T: serde::Serialize>(value: &T) -> serde_json::Value {
    serde_json::to_value(value).expect("report types serialize")
}

fn write_output(out: Option<&std::path::Path>, rendered: &str) -> qda::Result<()> {
    match out {
        Some(path) => std::fs::write(path, rendered)
            .map_err(|e| Error::Invalid(format!("cannot write {}: {e}", path.display()))),
        None => {
            let stdout = std::io::stdout();
            let mut lock = stdout.lock();
            lock.write_all(rendered.as_bytes())
                .and_then(|()| lock.flush())
                .map_err(|e| Error::Invalid(format!("cannot write to stdout: {e}")))
        }
    }
}
