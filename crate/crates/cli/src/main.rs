use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use serde_json::json;

use signpat::battery::{run_battery, BatteryOptions};
use signpat::digraph::{extremal_graph, min_edges};
use signpat::pipeline::{analyze_pattern, enumerate_candidates, EnumOptions, PatternVerdict};
use signpat::realization::{search_stable_realization, SearchOptions, DEFAULT_BUDGET, DEFAULT_SEED};
use signpat::report::{ItemStatus, RunReport};
use signpat::stability::routh_hurwitz;
use signpat::{Exec, RationalPoly, SignPattern};

/// Potential stability of small sign patterns.
#[derive(Debug, Parser)]
#[command(name = "signpat", version)]
struct Cli {
    /// Worker threads for the data-parallel loops.
    #[arg(long, global = true, env = "SIGNPAT_THREADS")]
    threads: Option<usize>,

    /// Print the run report as JSON instead of text.
    #[arg(long, global = true)]
    json: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args, Clone, Copy)]
struct SearchArgs {
    /// Nelder-Mead iterations across all restarts.
    #[arg(long, default_value_t = DEFAULT_BUDGET)]
    budget: usize,

    /// Seed for the restart start points.
    #[arg(long, default_value_t = DEFAULT_SEED)]
    seed: u64,
}

impl SearchArgs {
    fn options(self) -> SearchOptions {
        SearchOptions {
            budget: self.budget,
            seed: self.seed,
            exec: Exec::Parallel,
        }
    }
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Run every filter on a sign pattern file and report the first decisive verdict.
    Analyze {
        file: PathBuf,
        /// Treat the file as a polynomial (`deg c_1 ... c_n`) and apply the Hurwitz test.
        #[arg(long)]
        polynomial: bool,
        #[command(flatten)]
        search: SearchArgs,
    },
    /// List strongly connected candidate digraphs with full minor support.
    Enumerate {
        n: usize,
        m: usize,
        /// Keep digraphs without full minor support too.
        #[arg(long)]
        all: bool,
        /// Cap on canonical labellings; the output is marked truncated when hit.
        #[arg(long)]
        budget: Option<usize>,
    },
    /// Minimum edge count of a strongly connected digraph with circumference k.
    MinEdges { n: usize, k: usize },
    /// An extremal digraph attaining the minimum edge count.
    Extremal { n: usize, k: usize },
    /// Run the reproduction battery; exits nonzero on any failure.
    VerifyPaper {
        /// Also run the n = 5 minimum and the 7-vertex closure check.
        #[arg(long)]
        long_run: bool,
        #[command(flatten)]
        search: SearchArgs,
    },
    /// Search for a certified stable rational realization of a pattern.
    SearchRealization {
        file: PathBuf,
        #[command(flatten)]
        search: SearchArgs,
    },
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn read_pattern(path: &Path) -> Result<SignPattern> {
    SignPattern::parse(&read(path)?).with_context(|| format!("parsing {}", path.display()))
}

fn info(report: &mut RunReport, name: &str, summary: String, data: serde_json::Value) {
    report.run(name, || (ItemStatus::Info, summary, data));
}

fn analyze(report: &mut RunReport, file: &Path, polynomial: bool, search: SearchArgs) -> Result<()> {
    if polynomial {
        let p = RationalPoly::parse(&read(file)?).with_context(|| format!("parsing {}", file.display()))?;
        let v = routh_hurwitz(&p);
        let hurwitz: Vec<String> = v.hurwitz.iter().map(signpat::rational_poly::format_rational).collect();
        let summary = format!("{:?}{}", v.status, v.witness_index.map_or(String::new(), |k| format!(" (Delta_{k})")));
        info(report, "routh-hurwitz", summary, json!({ "status": v.status, "hurwitz": hurwitz }));
        return Ok(());
    }
    let p = read_pattern(file)?;
    let a = analyze_pattern(&p, Some(search.options()))?;
    let mut summary = a.message.clone();
    if let Some(r) = &a.refutation {
        summary.push_str(&format!(", difference `{}`", r.difference));
    }
    for w in &a.warnings {
        summary.push_str(&format!(" [warning: {w}]"));
    }
    if a.verdict != PatternVerdict::NotPotentiallyStable {
        summary.push_str(&format!(" (seed {}, budget {})", search.seed, search.budget));
    }
    info(report, "analyze", summary, serde_json::to_value(&a)?);
    Ok(())
}

fn enumerate(report: &mut RunReport, n: usize, m: usize, all: bool, budget: Option<usize>) -> Result<()> {
    let opts = EnumOptions {
        require_full_support: !all,
        budget,
        exec: Exec::Parallel,
    };
    let e = enumerate_candidates(n, m, opts)?;
    report.truncated |= e.truncated;
    let digraphs: Vec<String> = e.digraphs.iter().map(|g| g.to_edge_list()).collect();
    let mut summary = format!(
        "{} digraphs with {n} vertices and {m} edges{}",
        e.digraphs.len(),
        if e.truncated { " (truncated by budget)" } else { "" }
    );
    for g in &digraphs {
        summary.push_str("\n\n");
        summary.push_str(g.trim_end());
    }
    info(report, "enumerate", summary, json!({ "nodes": e.nodes, "truncated": e.truncated, "digraphs": digraphs }));
    Ok(())
}

fn min_edges_cmd(report: &mut RunReport, n: usize, k: usize) -> Result<()> {
    let e = min_edges(n, k)?;
    info(report, "min-edges", e.to_string(), json!({ "n": n, "k": k, "edges": e }));
    Ok(())
}

fn extremal(report: &mut RunReport, n: usize, k: usize) -> Result<()> {
    let g = extremal_graph(n, k)?;
    let summary = format!("{} edges\n{}", g.edge_count(), g.to_edge_list().trim_end());
    info(report, "extremal", summary, json!({ "n": n, "k": k, "edges": g.edge_count(), "edge_list": g.to_edge_list() }));
    Ok(())
}

fn search_realization(report: &mut RunReport, file: &Path, search: SearchArgs) -> Result<()> {
    let p = read_pattern(file)?;
    let found = search_stable_realization(&p, search.options())?;
    let seed_note = format!("seed {}, budget {}", search.seed, search.budget);
    match found {
        Some(w) => {
            let rows: Vec<String> = w
                .matrix
                .iter()
                .map(|r| r.iter().map(signpat::rational_poly::format_rational).collect::<Vec<_>>().join(" "))
                .collect();
            let summary = format!("certified stable witness ({seed_note})\n{}", rows.join("\n"));
            info(report, "search-realization", summary, serde_json::to_value(&w)?);
        }
        None => {
            report.truncated = true;
            let summary = format!("no witness within budget ({seed_note}); inconclusive");
            info(report, "search-realization", summary, serde_json::Value::Null);
        }
    }
    Ok(())
}

fn print_text(report: &RunReport) {
    for item in &report.items {
        let tag = match item.status {
            ItemStatus::Pass => "PASS ",
            ItemStatus::Fail => "FAIL ",
            ItemStatus::Skipped => "SKIP ",
            ItemStatus::Info => "",
        };
        if report.items.len() == 1 && item.status == ItemStatus::Info {
            println!("{}", item.summary);
        } else {
            println!("{tag}{}: {}", item.name, item.summary);
        }
    }
}

fn run(cli: Cli) -> Result<RunReport> {
    if let Some(t) = cli.threads {
        if t == 0 {
            bail!("--threads must be at least 1");
        }
        #[cfg(feature = "parallel")]
        rayon::ThreadPoolBuilder::new()
            .num_threads(t)
            .build_global()
            .context("configuring the thread pool")?;
    }
    let mut report = RunReport::new(std::env::args().collect());
    match cli.command {
        Command::Analyze { file, polynomial, search } => analyze(&mut report, &file, polynomial, search)?,
        Command::Enumerate { n, m, all, budget } => enumerate(&mut report, n, m, all, budget)?,
        Command::MinEdges { n, k } => min_edges_cmd(&mut report, n, k)?,
        Command::Extremal { n, k } => extremal(&mut report, n, k)?,
        Command::VerifyPaper { long_run, search } => {
            let opts = BatteryOptions {
                long_run,
                seed: search.seed,
                search: search.options(),
                exec: Exec::Parallel,
            };
            run_battery(&mut report, opts);
        }
        Command::SearchRealization { file, search } => search_realization(&mut report, &file, search)?,
    }
    Ok(report)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let json = cli.json;
    match run(cli) {
        Ok(report) => {
            if json {
                println!("{}", report.to_json());
            } else {
                print_text(&report);
            }
            if report.passed() {
                ExitCode::SUCCESS
            } else {
                ExitCode::FAILURE
            }
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
