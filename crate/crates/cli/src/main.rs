use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Parser, Subcommand};
use complete_core::completeness::{classify_completeness, decompose_proto_complete};
use complete_core::group::load_group_json;
use complete_core::harness::{build_catalog_file, run_report, Config, Mode};
use complete_core::{Error, Limits};

/// Classifies finite groups, rings and Lie algebras as proto-complete,
/// complete or strong-complete, and checks the criteria against brute force.
#[derive(Debug, Parser)]
#[command(name = "complete-objects", version)]
struct Cli {
    #[command(subcommand)]
    command: Option<Command>,

    /// Catalog file (JSON); the shipped catalog of groups up to order 24 when absent.
    #[arg(long, env = "COMPLETE_CATALOG", global = true)]
    catalog: Option<PathBuf>,

    /// classify, audit, oracle-crosscheck or paper-examples.
    #[arg(long, env = "COMPLETE_MODE", default_value = "classify", value_parser = parse_mode)]
    mode: Mode,

    /// Oracle bound; 2|G| per group when absent.
    #[arg(long, env = "COMPLETE_BOUND")]
    bound: Option<usize>,

    /// Catalog whose groups form the oracle universe.
    #[arg(long, env = "COMPLETE_UNIVERSE")]
    universe: Option<PathBuf>,

    /// Node budget per backtracking search.
    #[arg(long, env = "COMPLETE_BUDGET", global = true)]
    budget: Option<u64>,

    /// Worker threads.
    #[arg(long, env = "COMPLETE_JOBS")]
    jobs: Option<usize>,

    /// Largest Cayley table the engine will build.
    #[arg(long, env = "COMPLETE_CAP", global = true)]
    cap: Option<usize>,

    /// Write JSON here instead of stdout.
    #[arg(long, env = "COMPLETE_OUT", global = true)]
    out: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Regenerate the group catalog by closing the seed groups under products.
    BuildCatalog,
    /// Classify a single group file ({"cayley": ...} or {"permutations": ...}).
    Group { file: PathBuf },
}

fn parse_mode(s: &str) -> Result<Mode, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn limits(cli: &Cli) -> Limits {
    let mut l = Limits::default();
    if let Some(c) = cli.cap {
        l = l.with_cap(c);
    }
    if let Some(b) = cli.budget {
        l = l.with_budget(b);
    }
    l
}

fn emit(out: &Option<PathBuf>, text: &str) -> Result<(), String> {
    match out {
        Some(p) => std::fs::write(p, text).map_err(|e| format!("cannot write {}: {e}", p.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn pretty(v: serde_json::Result<serde_json::Value>) -> String {
    let mut s = serde_json::to_string_pretty(&v.expect("serializable")).expect("serializable");
    s.push('\n');
    s
}

/// Returns the number of failed entries.
fn run(cli: &Cli) -> Result<usize, String> {
    match &cli.command {
        Some(Command::BuildCatalog) => {
            let file = build_catalog_file(&limits(cli)).map_err(|e| e.to_string())?;
            emit(&cli.out, &pretty(serde_json::to_value(&file)))?;
            Ok(0)
        }
        Some(Command::Group { file }) => {
            let l = limits(cli);
            let text = std::fs::read_to_string(file).map_err(|e| format!("cannot read {}: {e}", file.display()))?;
            let g = Arc::new(load_group_json(&text, &l).map_err(|e| e.to_string())?);
            let mut rep = classify_completeness(&g, &l).map_err(|e| e.to_string())?;
            if rep.proto_complete.holds {
                rep.decomposition = Some(decompose_proto_complete(&g, &l).map_err(|e| e.to_string())?.record());
            }
            emit(&cli.out, &pretty(serde_json::to_value(&rep)))?;
            Ok(0)
        }
        None => {
            let config = Config {
                catalog: cli.catalog.clone(),
                mode: cli.mode,
                bound: cli.bound,
                universe: cli.universe.clone(),
                budget: cli.budget,
                jobs: cli.jobs,
                cap: cli.cap,
            };
            let report = run_report(&config).map_err(|e| e.to_string())?;
            emit(&cli.out, &report.to_json())?;
            Ok(report.failures)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(0) => ExitCode::SUCCESS,
        Ok(n) => {
            eprintln!("{n} failed entries");
            ExitCode::from(1)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
