//! `rmtk`: batch driver for sampling, density comparison, kernel evaluation,
//! (skew-)orthogonality checks, convergence studies and Hermitian limits.
//!
//! Exit codes: 0 pass, 2 tolerance violation, 3 invalid configuration,
//! 4 numerical failure.

mod commands;
mod config;
mod output;

use std::io::Write;
use std::path::PathBuf;
use std::time::Instant;

use clap::{Parser, Subcommand};
use serde_json::{json, Value};

use commands::{converge, density, hermitian, kernel, sample, selftest, verify};
use output::{status_name, Failure, Report, Summary, EXIT_CONFIG, EXIT_PASS, EXIT_TOLERANCE, SCHEMA_ID, SCHEMA_VERSION};

#[derive(Debug, Parser)]
#[command(name = "rmtk", version, about = "Random-matrix kernels at weak non-Hermiticity")]
struct Cli {
    /// Print a machine-readable summary on stdout
    #[arg(long, global = true)]
    json: bool,
    /// Worker threads (default: all cores)
    #[arg(long, global = true)]
    workers: Option<usize>,
    /// Flat key = value file; command-line flags take precedence
    #[arg(long, global = true, value_name = "FILE")]
    config: Option<PathBuf>,
    /// CSV output path (default: stdout unless --json is given)
    #[arg(long, short, global = true, value_name = "FILE")]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Sample spectra and write one CSV row per eigenvalue
    Sample(sample::SampleArgs),
    /// Compare empirical densities with finite-N or macroscopic densities
    DensityCompare(density::DensityArgs),
    /// Tabulate a limiting kernel element on a grid
    KernelEval(kernel::KernelArgs),
    /// Convergence of rescaled finite-N quantities to their limits
    Converge(converge::ConvergeArgs),
    /// Orthogonality and skew-orthogonality residuals
    Verify(verify::VerifyArgs),
    /// Deviation of deformed kernels from the real-line kernels as σ → 0
    HermitianLimit(hermitian::HermitianArgs),
    #[command(hide = true)]
    SpecfunSelftest(selftest::SelftestArgs),
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Sample(_) => "sample",
            Command::DensityCompare(_) => "density-compare",
            Command::KernelEval(_) => "kernel-eval",
            Command::Converge(_) => "converge",
            Command::Verify(_) => "verify",
            Command::HermitianLimit(_) => "hermitian-limit",
            Command::SpecfunSelftest(_) => "specfun-selftest",
        }
    }

    fn args_json(&self) -> Value {
        let v = match self {
            Command::Sample(a) => serde_json::to_value(a),
            Command::DensityCompare(a) => serde_json::to_value(a),
            Command::KernelEval(a) => serde_json::to_value(a),
            Command::Converge(a) => serde_json::to_value(a),
            Command::Verify(a) => serde_json::to_value(a),
            Command::HermitianLimit(a) => serde_json::to_value(a),
            Command::SpecfunSelftest(a) => serde_json::to_value(a),
        };
        v.unwrap_or(Value::Null)
    }

    fn run(&self) -> Result<Report, Failure> {
        match self {
            Command::Sample(a) => sample::run(a),
            Command::DensityCompare(a) => density::run(a),
            Command::KernelEval(a) => kernel::run(a),
            Command::Converge(a) => converge::run(a),
            Command::Verify(a) => verify::run(a),
            Command::HermitianLimit(a) => hermitian::run(a),
            Command::SpecfunSelftest(a) => selftest::run(a),
        }
    }
}

fn effective_config(cli: &Cli) -> Value {
    let mut cfg = cli.command.args_json();
    if let Value::Object(m) = &mut cfg {
        m.insert("workers".into(), json!(cli.workers));
        m.insert("out".into(), json!(cli.out));
        m.insert("config_file".into(), json!(cli.config));
    }
    cfg
}

fn print_summary(summary: &Summary) {
    let text = serde_json::to_string_pretty(summary).expect("summary serializes");
    println!("{text}");
}

/// Parse failures still get a JSON summary when --json was requested.
fn parse_failure(args: &[String], message: String) -> i32 {
    eprintln!("{message}");
    if args.iter().any(|a| a == "--json") {
        let command = config::subcommand_index(args).map(|i| args[i].clone());
        print_summary(&Summary {
            schema: SCHEMA_ID,
            schema_version: SCHEMA_VERSION,
            command,
            status: status_name(EXIT_CONFIG),
            exit_code: EXIT_CONFIG,
            config: json!({}),
            metrics: json!({}),
            output: None,
            rows: None,
            wall_time_s: 0.0,
            error: Some(message.trim().to_string()),
        });
    }
    EXIT_CONFIG
}

fn run() -> i32 {
    let raw: Vec<String> = std::env::args_os().map(|a| a.to_string_lossy().into_owned()).collect();
    let args = match config::expand(std::env::args_os().collect()) {
        Ok(a) => a,
        Err(msg) => return parse_failure(&raw, msg),
    };
    let cli = match Cli::try_parse_from(&args) {
        Ok(c) => c,
        Err(e) if !e.use_stderr() => {
            let _ = e.print();
            return EXIT_PASS;
        }
        Err(e) => return parse_failure(&args, e.render().to_string()),
    };
    let start = Instant::now();
    let outcome = match cli.workers {
        Some(0) => Err(Failure::Config("--workers must be positive".into())),
        Some(w) => rayon::ThreadPoolBuilder::new()
            .num_threads(w)
            .build()
            .map_err(|e| Failure::Config(e.to_string()))
            .and_then(|pool| pool.install(|| cli.command.run())),
        None => cli.command.run(),
    };
    let outcome = outcome.and_then(|report| {
        match &cli.out {
            Some(path) => output::write_output(path, &report.csv)?,
            None if !cli.json => std::io::stdout()
                .write_all(&report.csv)
                .map_err(|e| Failure::Config(format!("cannot write to stdout: {e}")))?,
            None => {}
        }
        Ok(report)
    });
    let elapsed = start.elapsed().as_secs_f64();
    let (code, metrics, rows, error) = match &outcome {
        Ok(r) => {
            let code = if r.passed { EXIT_PASS } else { EXIT_TOLERANCE };
            (code, Value::Object(r.metrics.clone()), Some(r.rows), None)
        }
        Err(f) => (f.exit_code(), json!({}), None, Some(f.message().to_string())),
    };
    if cli.json {
        print_summary(&Summary {
            schema: SCHEMA_ID,
            schema_version: SCHEMA_VERSION,
            command: Some(cli.command.name().to_string()),
            status: status_name(code),
            exit_code: code,
            config: effective_config(&cli),
            metrics,
            output: cli.out.as_ref().map(|p| p.display().to_string()),
            rows,
            wall_time_s: elapsed,
            error,
        });
    } else {
        match &outcome {
            Ok(r) => {
                for l in &r.lines {
                    eprintln!("{l}");
                }
                eprintln!("{}: {} in {elapsed:.2}s", cli.command.name(), status_name(code));
            }
            Err(f) => eprintln!("error: {}", f.message()),
        }
    }
    code
}

fn main() {
    std::process::exit(run());
}
