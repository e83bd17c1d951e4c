//! Command-line front end: build graphs from JSON configs, run simulation
//! and verification tasks, and write reproducible CSV + JSON reports.
//!
//! Exit codes: 0 success, 1 a verified bound was violated, 2 invalid
//! configuration or infeasible request (nothing written), 3 partial results
//! (censored replicates or an exhausted time budget; outputs are flagged).

mod catalog_text;
mod config;
mod output;
mod tasks;
mod verify_all;

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Duration;

use clap::{Parser, Subcommand};

use config::RunConfig;
use output::{EXIT_INVALID, EXIT_OK};

#[derive(Parser)]
#[command(
    name = "range-lab",
    version,
    about = "Random-walk range laboratory: simulate walks, solve small systems exactly, \
             and verify discovery-time and range bounds on graph families"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Execute one JSON-configured task and write its reports
    Run {
        /// Path to the run configuration (JSON)
        config: PathBuf,
        /// Worker threads for replicate batches (default: all cores)
        #[arg(long)]
        threads: Option<usize>,
        /// Output directory (overrides the config's output_dir)
        #[arg(long)]
        output: Option<PathBuf>,
        /// Master seed (overrides the config's master_seed)
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Print the graph catalog with the closed forms the checks rely on
    Catalog,
    /// Run the standard verification sweep across the catalog
    VerifyAll {
        /// Wall-clock budget in seconds; leftover checks are skipped
        #[arg(long, default_value_t = 600)]
        budget: u64,
        /// Worker threads for replicate batches (default: all cores)
        #[arg(long)]
        threads: Option<usize>,
        /// Output directory
        #[arg(long, default_value = "range-lab-out")]
        output: PathBuf,
        /// Master seed for the sweep's simulations
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let code = match cli.command {
        Command::Run { config, threads, output, seed } => cmd_run(&config, threads, output, seed),
        Command::Catalog => {
            print!("{}", catalog_text::render());
            EXIT_OK
        }
        Command::VerifyAll { budget, threads, output, seed } => {
            cmd_verify_all(budget, threads, &output, seed)
        }
    };
    ExitCode::from(code)
}

fn init_threads(threads: Option<usize>) {
    if let Some(n) = threads {
        // A second initialization (tests, repeated calls) keeps the first
        // pool; that is fine because results never depend on thread count.
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    }
}

fn fail(code: u8, msg: impl std::fmt::Display) -> u8 {
    eprintln!("error: {msg}");
    code
}

fn cmd_run(
    path: &Path,
    threads: Option<usize>,
    output_flag: Option<PathBuf>,
    seed: Option<u64>,
) -> u8 {
    init_threads(threads);
    let text = match fs::read_to_string(path) {
        Ok(t) => t,
        Err(e) => return fail(EXIT_INVALID, format!("cannot read {}: {e}", path.display())),
    };
    let mut config = match RunConfig::parse(&text) {
        Ok(c) => c,
        Err(e) => return fail(EXIT_INVALID, format!("invalid configuration: {e}")),
    };
    if let Some(s) = seed {
        config.master_seed = s;
    }
    let graph = match config.graph.build() {
        Ok(g) => g,
        Err(e) => return fail(EXIT_INVALID, format!("invalid configuration: {e}")),
    };
    let out_dir = output_flag.unwrap_or_else(|| {
        PathBuf::from(config.output_dir.clone().unwrap_or_else(|| "range-lab-out".into()))
    });

    let out = match tasks::run_task(&config, &graph, config.step_cap()) {
        Ok(o) => o,
        Err(e) => return fail(EXIT_INVALID, e),
    };
    let config_value = match serde_json::to_value(&config) {
        Ok(v) => v,
        Err(e) => return fail(EXIT_INVALID, format!("config serialization: {e}")),
    };
    let written = match output::write_reports(
        &out_dir,
        "run",
        &config_value,
        Some(&graph.label()),
        config.master_seed,
        &out,
    ) {
        Ok(w) => w,
        Err(e) => return fail(EXIT_INVALID, e),
    };

    println!("graph: {}", graph.label());
    println!("wrote {}: {}", out_dir.display(), written.join(", "));
    report_lines(&out.results);
    status_line(&out);
    output::exit_code(&out)
}

fn cmd_verify_all(budget_secs: u64, threads: Option<usize>, out_dir: &Path, seed: u64) -> u8 {
    init_threads(threads);
    let step_cap = range_lab_core::walk::step_cap_from_env();
    let (out, config_value) =
        match verify_all::run(Duration::from_secs(budget_secs), seed, step_cap) {
            Ok(pair) => pair,
            Err(e) => return fail(EXIT_INVALID, e),
        };
    let written = match output::write_reports(
        out_dir,
        "verify-all",
        &config_value,
        None,
        seed,
        &out,
    ) {
        Ok(w) => w,
        Err(e) => return fail(EXIT_INVALID, e),
    };
    println!("wrote {}: {}", out_dir.display(), written.join(", "));
    report_lines(&out.results);
    status_line(&out);
    output::exit_code(&out)
}

/// Echo one line per verification report (when the task produced any).
fn report_lines(results: &serde_json::Value) {
    let Some(reports) = results.get("reports").and_then(|r| r.as_array()) else {
        return;
    };
    for r in reports {
        let pick = |k: &str| r.get(k).and_then(|v| v.as_str()).unwrap_or("?");
        println!("{:<16} {:<28} {}", pick("bound"), pick("family"), pick("verdict"));
    }
    if let Some(skipped) = results.get("skipped").and_then(|s| s.as_array()) {
        for s in skipped {
            let bound = s.get("bound").and_then(|v| v.as_str()).unwrap_or("?");
            let reason = s.get("reason").and_then(|v| v.as_str()).unwrap_or("?");
            println!("{bound:<16} skipped: {reason}");
        }
    }
}

fn status_line(out: &tasks::TaskOutput) {
    match output::exit_code(out) {
        output::EXIT_VIOLATION => println!("status: VIOLATED"),
        output::EXIT_PARTIAL => println!("status: partial"),
        _ => println!("status: ok"),
    }
}
