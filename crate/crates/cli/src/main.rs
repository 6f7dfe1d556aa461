use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, ValueEnum};
use tomjerry::candidates::{fixtures, load_candidates_lenient, FanoCandidate};
use tomjerry::formats::Format;
use tomjerry::pipeline::{run, write_table, CentreSelector, Emit, RunConfig};
use tomjerry::polyring::DEFAULT_PRIME;
use tomjerry::verify::VerifyConfig;

#[derive(Clone, Copy, Debug, ValueEnum)]
enum OnOff {
    On,
    Off,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum EmitArg {
    Csv,
    Json,
}

/// Verify Tom and Jerry unprojection constructions and print the Big Table.
#[derive(Debug, Parser)]
#[command(name = "tomjerry", version)]
struct Args {
    /// Candidate file (JSON); defaults to the bundled genus 0 and half-point candidates.
    #[arg(long, value_name = "FILE")]
    candidates: Option<PathBuf>,
    /// Only the candidate with this id.
    #[arg(long, value_name = "ID")]
    candidate: Option<String>,
    /// Only this centre: a 1-based basket index, or `1/r`.
    #[arg(long, value_name = "INDEX")]
    centre: Option<String>,
    /// Only the format orbit containing this format, e.g. Tom1 or Jer24.
    #[arg(long, value_name = "NAME")]
    format: Option<Format>,
    #[arg(long, default_value_t = DEFAULT_PRIME)]
    prime: u32,
    /// Master seed for the random matrices.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Extra attempts after an inconclusive random matrix.
    #[arg(long, default_value_t = 3)]
    retries: u32,
    /// Output path; standard output when absent.
    #[arg(long, value_name = "PATH")]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "csv")]
    emit: EmitArg,
    /// `off` keeps the formula counts and skips the Gröbner cross-check.
    #[arg(long, value_enum, default_value = "on")]
    verify_lengths: OnOff,
    /// Wall-clock limit per case, in seconds.
    #[arg(long, value_name = "SECONDS")]
    budget: Option<f64>,
    /// Worker threads.
    #[arg(long)]
    jobs: Option<usize>,
    /// Fill the wall-time column (the table is then no longer reproducible).
    #[arg(long)]
    timing: bool,
    /// Skip invalid candidate records instead of rejecting the file.
    #[arg(long)]
    partial: bool,
    /// Log each case to standard error.
    #[arg(short, long)]
    verbose: bool,
}

fn load(args: &Args) -> Result<Vec<FanoCandidate>> {
    let texts = match &args.candidates {
        Some(path) => {
            vec![std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?]
        }
        None => vec![fixtures::GENUS_ZERO.to_string(), fixtures::HALF_POINTS.to_string()],
    };
    let mut all = Vec::new();
    for text in texts {
        let (good, bad) = load_candidates_lenient(&text)?;
        for d in &bad {
            log::error!("{d}");
        }
        if !bad.is_empty() && !args.partial {
            bail!("{} invalid candidate record(s); rerun with --partial to skip them", bad.len());
        }
        all.extend(good);
    }
    Ok(all)
}

fn main() -> ExitCode {
    let args = Args::parse();
    let level = if args.verbose { "info" } else { "warn" };
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or(level)).init();
    match real_main(&args) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}

fn real_main(args: &Args) -> Result<u8> {
    let candidates = load(args)?;
    let config = RunConfig {
        verify: VerifyConfig {
            prime: args.prime,
            seed: args.seed,
            retries: args.retries,
            verify_lengths: matches!(args.verify_lengths, OnOff::On),
            budget_seconds: args.budget,
            sabotage: 0,
        },
        candidate: args.candidate.clone(),
        centre: args.centre.as_deref().map(str::parse::<CentreSelector>).transpose()?,
        format: args.format,
        jobs: args.jobs,
        timing: args.timing,
    };
    let output = run(&candidates, &config)?;
    let emit = match args.emit {
        EmitArg::Csv => Emit::Csv,
        EmitArg::Json => Emit::Json,
    };
    match &args.out {
        Some(path) => {
            let f = File::create(path).with_context(|| format!("creating {}", path.display()))?;
            let mut w = BufWriter::new(f);
            write_table(&output.rows, emit, &mut w)?;
            w.flush()?;
        }
        None => {
            let stdout = io::stdout();
            write_table(&output.rows, emit, stdout.lock())?;
        }
    }
    for s in &output.skipped {
        eprintln!("skipped {} {}: {}", s.candidate, s.centre, s.reason);
    }
    for (id, e) in &output.euler {
        eprintln!("euler {id}: {e}");
    }
    for r in output.reports.iter().filter(|r| r.verdict.tag() == "flagged") {
        eprintln!("flagged {} {} {}: {}", r.candidate, r.centre_label, r.format, r.verdict);
    }
    for v in &output.violations {
        eprintln!("violation: {v}");
    }
    Ok(output.exit_code() as u8)
}
