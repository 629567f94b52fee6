//! Command-line front end.
//!
//! Exit codes: 0 success, 1 a law failed or nothing was found, 2 bad input
//! or I/O trouble.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use crate::catalog::{builtin_catalog, load_catalog, load_matroid, save_catalog, CatalogEntry};
use crate::element_set::ElementSet;
use crate::error::{Error, Result};
use crate::exchange::{exchange_digraph, find_full_exchange, find_serial_exchange, BasisPair};
use crate::laws::{run_suite, LawConfig, LawId};
use crate::report::{self, Tally};
use crate::sweep::{rank_summary, rows_to_csv, summary_to_csv, sweep_catalog, MaxLen};

#[derive(Debug, Parser)]
#[command(name = "matroid-exchange", version, about = "Basis-exchange search and law checks for small matroids")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run law checks over a catalog and write JSONL/CSV reports.
    Verify(VerifyArgs),
    /// Search a serial or full symmetric exchange between two bases.
    Search(SearchArgs),
    /// Shortest full exchange for every disjoint pair of a catalog.
    Sweep(SweepArgs),
    /// Write the exchange digraph of two disjoint bases as Graphviz DOT.
    Graph(GraphArgs),
    /// Write the built-in catalog as a directory of matroid files.
    Export(ExportArgs),
}

#[derive(Debug, Args)]
pub struct SuiteArgs {
    /// `builtin`, a catalog directory, or a single matroid file.
    #[arg(long, default_value = "builtin")]
    pub catalog: PathBuf,
    /// Skip matroids with more elements than this (at most 14).
    #[arg(long, default_value_t = 12)]
    pub max_ground: usize,
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
    /// Sample at most this many disjoint pairs per matroid.
    #[arg(long)]
    pub pair_cap: Option<usize>,
    /// Worker threads (default: all cores).
    #[arg(long)]
    pub jobs: Option<usize>,
}

impl SuiteArgs {
    fn config(&self) -> LawConfig {
        LawConfig {
            max_ground: self.max_ground,
            pair_cap: self.pair_cap,
            seed: self.seed,
        }
    }
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[command(flatten)]
    pub suite: SuiteArgs,
    /// Comma-separated law ids, or `all`.
    #[arg(long, default_value = "all")]
    pub laws: String,
    /// Output directory for reports.jsonl and summary.csv.
    #[arg(long, default_value = "reports")]
    pub out: PathBuf,
}

#[derive(Debug, Args)]
pub struct PairArgs {
    /// A matroid file, or `builtin:NAME`.
    #[arg(long)]
    pub matroid: String,
    /// Elements of the first basis, e.g. `0,1`.
    #[arg(long = "a", value_name = "IDS")]
    pub a: String,
    /// Elements of the second basis.
    #[arg(long = "b", value_name = "IDS")]
    pub b: String,
}

#[derive(Debug, Args)]
#[group(required = true, multiple = false)]
pub struct SearchMode {
    /// Look for K serial exchanges of fresh elements.
    #[arg(long, value_name = "K")]
    pub partial: Option<usize>,
    /// Look for a full exchange of at most L steps.
    #[arg(long, value_name = "L")]
    pub full: Option<usize>,
}

#[derive(Debug, Args)]
pub struct SearchArgs {
    #[command(flatten)]
    pub pair: PairArgs,
    #[command(flatten)]
    pub mode: SearchMode,
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    #[command(flatten)]
    pub suite: SuiteArgs,
    /// Length budget: N, r, r+K or Kr.
    #[arg(long, default_value = "r+1")]
    pub max_len: String,
    /// Output directory for sweep.csv and sweep_summary.csv.
    #[arg(long, default_value = "sweep")]
    pub out: PathBuf,
}

#[derive(Debug, Args)]
pub struct GraphArgs {
    #[command(flatten)]
    pub pair: PairArgs,
    /// DOT output file; `-` for stdout.
    #[arg(long, default_value = "-")]
    pub out: PathBuf,
}

#[derive(Debug, Args)]
pub struct ExportArgs {
    #[arg(long)]
    pub out: PathBuf,
}

/// Outcome of a command that ran to completion.
enum Outcome {
    Ok,
    /// A law failed, or the search came up empty.
    Negative,
}

pub fn main() -> ExitCode {
    let cli = Cli::parse();
    run(cli)
}

pub fn run(cli: Cli) -> ExitCode {
    let result = match cli.command {
        Command::Verify(args) => verify(&args),
        Command::Search(args) => search(&args),
        Command::Sweep(args) => sweep(&args),
        Command::Graph(args) => graph(&args),
        Command::Export(args) => save_catalog(&builtin_catalog(), &args.out).map(|()| Outcome::Ok),
    };
    match result {
        Ok(Outcome::Ok) => ExitCode::SUCCESS,
        Ok(Outcome::Negative) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn with_jobs<T: Send>(jobs: Option<usize>, f: impl FnOnce() -> T + Send) -> Result<T> {
    match jobs {
        None => Ok(f()),
        Some(0) => Err(Error::Usage("--jobs must be at least 1".into())),
        Some(k) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(k)
                .build()
                .map_err(|e| Error::Usage(format!("cannot start {k} workers: {e}")))?;
            Ok(pool.install(f))
        }
    }
}

fn verify(args: &VerifyArgs) -> Result<Outcome> {
    let laws = LawId::parse_list(&args.laws)?;
    let cfg = args.suite.config();
    cfg.validate()?;
    let entries = load_catalog(&args.suite.catalog)?;
    let reports = with_jobs(args.suite.jobs, || run_suite(&entries, &laws, &cfg))??;
    report::write_reports(&reports, &args.out)?;
    for r in reports.iter().filter(|r| !r.passed()) {
        let detail = r.witness.as_ref().map(|w| w.detail.as_str()).unwrap_or("");
        println!("FAIL {} on {}: {detail}", r.law, r.matroid);
    }
    let t = Tally::of(&reports);
    println!(
        "{} reports over {} matroids: {} failed, {} vacuous, {} instances checked; written to {}",
        t.reports,
        entries.len(),
        t.failed,
        t.vacuous,
        t.instances,
        args.out.display()
    );
    Ok(if t.failed == 0 { Outcome::Ok } else { Outcome::Negative })
}

/// Parses `0,1,2` (spaces allowed, empty list allowed).
pub fn parse_ids(s: &str) -> Result<ElementSet> {
    let mut set = ElementSet::EMPTY;
    for tok in s.split(',').map(str::trim).filter(|t| !t.is_empty()) {
        let id: usize = tok
            .parse()
            .map_err(|_| Error::Usage(format!("`{tok}` is not an element id")))?;
        if id >= crate::element_set::MAX_ELEMENTS {
            return Err(Error::Usage(format!("element id {id} is too large")));
        }
        set = set.with(id);
    }
    Ok(set)
}

/// `builtin:NAME` or a matroid file.
pub fn resolve_matroid(source: &str) -> Result<CatalogEntry> {
    match source.strip_prefix("builtin:") {
        Some(name) => builtin_catalog()
            .into_iter()
            .find(|e| e.name == name)
            .ok_or_else(|| Error::Usage(format!("no built-in matroid named `{name}`"))),
        None => load_matroid(source),
    }
}

fn search(args: &SearchArgs) -> Result<Outcome> {
    let entry = resolve_matroid(&args.pair.matroid)?;
    let m = entry.matroid()?;
    let pair = BasisPair::new(&m, parse_ids(&args.pair.a)?, parse_ids(&args.pair.b)?)?;
    let found = match (args.mode.partial, args.mode.full) {
        (Some(k), _) => {
            if k == 0 || k > m.rank() {
                return Err(Error::Usage(format!("--partial must be in 1..={}", m.rank())));
            }
            find_serial_exchange(&pair, k)
        }
        (None, Some(l)) => find_full_exchange(&pair, l),
        (None, None) => unreachable!("clap requires one mode"),
    };
    match found {
        Some(seq) => {
            seq.validate(&m)?;
            let record = seq.record(&entry.name);
            println!("{}", serde_json::to_string(&record).expect("records serialize"));
            Ok(Outcome::Ok)
        }
        None => {
            eprintln!("no exchange sequence found");
            Ok(Outcome::Negative)
        }
    }
}

fn sweep(args: &SweepArgs) -> Result<Outcome> {
    let max_len: MaxLen = args.max_len.parse()?;
    let cfg = args.suite.config();
    cfg.validate()?;
    let entries = load_catalog(&args.suite.catalog)?;
    let rows = with_jobs(args.suite.jobs, || sweep_catalog(&entries, max_len, &cfg))??;
    let summary = rank_summary(&rows);
    std::fs::create_dir_all(&args.out).map_err(|e| Error::io(&args.out, e))?;
    report::write_file(&args.out.join("sweep.csv"), &rows_to_csv(&rows))?;
    report::write_file(&args.out.join("sweep_summary.csv"), &summary_to_csv(&summary))?;
    println!("rank  pairs  max_min_length  not_found   (budget {max_len})");
    for (rank, (pairs, max, missing)) in &summary {
        println!("{rank:>4}  {pairs:>5}  {max:>14}  {missing:>9}");
    }
    for row in rows.iter().filter(|r| !r.found()) {
        println!("NOT FOUND {} {}: {}", row.matroid, row.pair, row.steps);
    }
    let missing = rows.iter().any(|r| !r.found());
    Ok(if missing { Outcome::Negative } else { Outcome::Ok })
}

fn graph(args: &GraphArgs) -> Result<Outcome> {
    let entry = resolve_matroid(&args.pair.matroid)?;
    let m = entry.matroid()?;
    let pair = BasisPair::new(&m, parse_ids(&args.pair.a)?, parse_ids(&args.pair.b)?)?;
    if !pair.is_disjoint() {
        return Err(Error::NotDisjoint);
    }
    let dot = exchange_digraph(&pair).to_dot(&entry.name);
    if args.out == Path::new("-") {
        print!("{dot}");
    } else {
        report::write_file(&args.out, &dot)?;
    }
    Ok(Outcome::Ok)
}
