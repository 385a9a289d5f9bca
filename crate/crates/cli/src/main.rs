// SPDX-License-Identifier: Apache-2.0

//! `commexp`: verification, root finding, searches and family construction.
//!
//! Exit status: 0 when the command's claim is reproduced, 2 when it is not,
//! 1 on usage, I/O or validation errors.

mod families;
mod io;
mod report;
mod search;
mod solve_u;
mod verify;

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{Context, Result};
use clap::{Parser, Subcommand};

use report::{Outcome, ReportFile};

#[derive(Debug, Parser)]
#[command(name = "commexp", version, about = "Commuting matrix exponentials: checks, roots, searches and families")]
struct Cli {
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    report: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Relation report for a builtin pair or two matrix files.
    Verify(verify::VerifyArgs),
    /// Roots of e^u = 1 + u by branch.
    SolveU(solve_u::SolveUArgs),
    /// Exhaustive integer searches and discriminant scans.
    Search(search::SearchArgs),
    /// Construct a family member and write it to matrix files.
    Families(families::FamiliesArgs),
}

fn configure_workers() -> Result<()> {
    if let Ok(v) = std::env::var("COMMEXP_WORKERS") {
        let n: usize = v.trim().parse().with_context(|| format!("COMMEXP_WORKERS={v:?} is not a count"))?;
        rayon::ThreadPoolBuilder::new().num_threads(n).build_global().context("configuring the worker pool")?;
    }
    Ok(())
}

fn run(cli: &Cli) -> Result<bool> {
    configure_workers()?;
    let start = Instant::now();
    let outcome: Outcome = match &cli.command {
        Command::Verify(a) => verify::cmd_verify(a)?,
        Command::SolveU(a) => solve_u::cmd_solve_u(a)?,
        Command::Search(a) => search::cmd_search(a)?,
        Command::Families(a) => families::cmd_families(a)?,
    };
    let reproduced = outcome.claim.reproduced;
    let report = ReportFile::new(std::env::args().collect(), outcome, start.elapsed().as_secs_f64());
    let text = report.to_json();
    match &cli.report {
        Some(p) => std::fs::write(p, text).with_context(|| format!("writing {}", p.display()))?,
        None => print!("{text}"),
    }
    if !reproduced {
        eprintln!("claim not reproduced: {}", report.claim.statement);
        for d in report.claim.details.iter().filter(|d| d.starts_with("FAILED")) {
            eprintln!("  {d}");
        }
    }
    Ok(reproduced)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(2),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}
