//! Command-line front end: `search` counts or reports occurrences,
//! `freq` builds a frequency-table file, `bench` runs the timing harness,
//! `probe` prints the block widths available on this machine.
//!
//! Exit codes: 0 success, 1 I/O or runtime failure, 2 usage error.

use std::fmt;
use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;

use clap::{ArgGroup, Args, Parser, Subcommand};

use blockmatch::bench::{emit_csv, emit_plot_data, run_benchmark, AlgorithmSpec, BenchPlan};
use blockmatch::corpus::{load_corpus, Corpus, RNG_ALGORITHM};
use blockmatch::{
    best_available, capability_probe, default_peel_factor, sbndm_search, search, BlockWidth,
    FrequencyTable, Mode, OrderKind, Pattern, SearchConfig, SearchReport,
};

#[derive(Parser)]
#[command(name = "blockmatch", version, about = "Block-parallel exact string matching")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Count (or report) occurrences of a pattern in a file
    Search(SearchArgs),
    /// Build a frequency table (256 lines "byte count") from a corpus
    Freq(FreqArgs),
    /// Run the benchmark harness and emit CSV
    Bench(BenchArgs),
    /// Print the block widths available on this machine
    Probe,
}

#[derive(Args)]
#[command(group(ArgGroup::new("pat").required(true).args(["pattern", "pattern_file"])))]
struct SearchArgs {
    /// Pattern bytes, taken verbatim
    #[arg(short, long)]
    pattern: Option<String>,
    /// Read the pattern from a file instead
    #[arg(long, value_name = "FILE")]
    pattern_file: Option<PathBuf>,
    /// Interpret the pattern as a hex byte string (e.g. 61626364)
    #[arg(long)]
    hex: bool,
    /// File to search
    #[arg(short, long, value_name = "FILE")]
    text: PathBuf,
    /// Engine: block, naive, sbndm2 or sbndm4
    #[arg(long, default_value = "block")]
    algo: String,
    /// Block width (8, 16 or 32); default: widest available
    #[arg(long)]
    width: Option<usize>,
    /// Comparison order: identity, freq, pih, pihs or auto
    #[arg(long, default_value = "auto")]
    order: String,
    /// Frequency table file (from `blockmatch freq`)
    #[arg(long, value_name = "FILE")]
    freq_table: Option<PathBuf>,
    /// Build the frequency table from the searched text itself
    #[arg(long)]
    freq_from_text: bool,
    /// Peeling factor r; default picked per order and alphabet size
    #[arg(long)]
    peel: Option<usize>,
    /// Print match positions (1-based), one per line, after the count
    #[arg(long)]
    report: bool,
}

#[derive(Args)]
struct FreqArgs {
    /// Corpus to count bytes in
    #[arg(short, long, value_name = "FILE")]
    text: PathBuf,
    /// Output file; stdout if omitted
    #[arg(short, long, value_name = "FILE")]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct BenchArgs {
    /// Corpus files; repeat for several
    #[arg(long = "corpus", value_name = "FILE", required = true)]
    corpora: Vec<PathBuf>,
    /// Comma-separated algorithms (naive, N16, N16-freq, N32-fixed, SBNDM2, ...)
    #[arg(long)]
    algos: Option<String>,
    /// Comma-separated pattern lengths; default 4,8,...,64
    #[arg(long)]
    m_list: Option<String>,
    /// Timed runs per cell
    #[arg(long, default_value_t = 30)]
    runs: usize,
    /// Patterns sampled per cell
    #[arg(long, default_value_t = 1)]
    patterns: usize,
    /// Sampling seed
    #[arg(long, default_value_t = 1)]
    seed: u64,
    /// CSV output file; stdout if omitted
    #[arg(short, long, value_name = "FILE")]
    out: Option<PathBuf>,
    /// Also write per-corpus gnuplot data files into this directory
    #[arg(long, value_name = "DIR")]
    plot_dir: Option<PathBuf>,
}

enum CliError {
    Usage(String),
    Runtime(String),
}

impl CliError {
    fn code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Runtime(_) => 1,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(m) | CliError::Runtime(m) => f.write_str(m),
        }
    }
}

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

fn runtime(msg: impl fmt::Display) -> CliError {
    CliError::Runtime(msg.to_string())
}

fn main() {
    let cli = Cli::parse();
    let result = match cli.cmd {
        Cmd::Search(args) => cmd_search(args),
        Cmd::Freq(args) => cmd_freq(args),
        Cmd::Bench(args) => cmd_bench(args),
        Cmd::Probe => cmd_probe(),
    };
    match result {
        Ok(()) => {}
        Err(e) => {
            eprintln!("error: {e}");
            std::process::exit(e.code());
        }
    }
}

fn read_pattern(args: &SearchArgs) -> Result<Pattern, CliError> {
    let raw = match (&args.pattern, &args.pattern_file) {
        (Some(lit), None) => lit.as_bytes().to_vec(),
        (None, Some(path)) => fs::read(path)
            .map_err(|e| runtime(format!("cannot read pattern file {}: {e}", path.display())))?,
        _ => unreachable!("clap group enforces exactly one source"),
    };
    let bytes = if args.hex {
        let text: Vec<u8> = raw
            .into_iter()
            .filter(|b| !b.is_ascii_whitespace())
            .collect();
        hex::decode(&text).map_err(|e| usage(format!("invalid hex pattern: {e}")))?
    } else {
        raw
    };
    Pattern::new(bytes).map_err(|e| usage(e.to_string()))
}

fn resolve_order_kind(args: &SearchArgs, have_table: bool) -> Result<OrderKind, CliError> {
    let kind = match args.order.as_str() {
        "identity" => OrderKind::Identity,
        "freq" => OrderKind::Frequency,
        "pih" => OrderKind::PiH,
        "pihs" => OrderKind::PiHs,
        "auto" => {
            if have_table {
                OrderKind::Frequency
            } else {
                OrderKind::PiH
            }
        }
        other => return Err(usage(format!("unknown order '{other}'"))),
    };
    if kind == OrderKind::Frequency && !have_table {
        return Err(usage(
            "order 'freq' requires --freq-table FILE or --freq-from-text".to_string(),
        ));
    }
    Ok(kind)
}

fn print_report(report: &SearchReport) {
    let stdout = io::stdout();
    let mut out = stdout.lock();
    writeln!(out, "{}", report.count).ok();
    if let Some(positions) = &report.positions {
        for p in positions {
            writeln!(out, "{p}").ok();
        }
    }
}

fn cmd_search(args: SearchArgs) -> Result<(), CliError> {
    let pattern = read_pattern(&args)?;
    let corpus = load_corpus(&args.text).map_err(runtime)?;
    let mode = if args.report { Mode::Report } else { Mode::Count };

    match args.algo.as_str() {
        "sbndm2" | "sbndm4" => {
            let q = if args.algo == "sbndm2" { 2 } else { 4 };
            let mut report = sbndm_search(&pattern, corpus.text(), q)
                .map_err(|e| usage(e.to_string()))?;
            if !args.report {
                report.positions = None;
            }
            print_report(&report);
            return Ok(());
        }
        "naive" | "block" => {}
        other => return Err(usage(format!("unknown algorithm '{other}'"))),
    }

    let table = if args.freq_from_text {
        Some(corpus.frequency_table())
    } else if let Some(path) = &args.freq_table {
        Some(FrequencyTable::load(path).map_err(runtime)?)
    } else {
        None
    };
    let kind = resolve_order_kind(&args, table.is_some())?;
    let order = kind
        .build(&pattern, table.as_ref())
        .map_err(|e| usage(e.to_string()))?;

    let cfg = if args.algo == "naive" {
        SearchConfig::scalar(order).with_peel(args.peel.unwrap_or(1))
    } else {
        let width = match args.width {
            None => best_available(),
            Some(alpha) => BlockWidth::from_alpha(alpha)
                .ok_or_else(|| usage(format!("unsupported width {alpha} (use 8, 16 or 32)")))?,
        };
        let r = args
            .peel
            .unwrap_or_else(|| default_peel_factor(kind, corpus.alphabet_size()));
        SearchConfig::block(width, order)
            .map_err(|e| usage(e.to_string()))?
            .with_peel(r)
    };
    let report = search(&pattern, corpus.text(), &cfg.with_mode(mode));
    print_report(&report);
    Ok(())
}

fn cmd_freq(args: FreqArgs) -> Result<(), CliError> {
    let corpus = load_corpus(&args.text).map_err(runtime)?;
    let table = corpus.frequency_table();
    match &args.output {
        Some(path) => table
            .save(path)
            .map_err(|e| runtime(format!("cannot write {}: {e}", path.display()))),
        None => table.to_writer(io::stdout().lock()).map_err(runtime),
    }
}

fn cmd_bench(args: BenchArgs) -> Result<(), CliError> {
    let corpora: Vec<Corpus> = args
        .corpora
        .iter()
        .map(|p| load_corpus(p).map_err(runtime))
        .collect::<Result<_, _>>()?;
    let mut plan = BenchPlan::new(corpora);
    plan.runs = args.runs;
    plan.patterns_per_cell = args.patterns;
    plan.seed = args.seed;
    if let Some(list) = &args.m_list {
        plan.pattern_lengths = list
            .split(',')
            .map(|s| {
                s.trim()
                    .parse::<usize>()
                    .map_err(|_| usage(format!("bad pattern length '{s}'")))
            })
            .collect::<Result<_, _>>()?;
        if plan.pattern_lengths.is_empty() {
            return Err(usage("empty --m-list"));
        }
    }
    if let Some(list) = &args.algos {
        plan.algorithms = list
            .split(',')
            .map(|s| {
                AlgorithmSpec::parse(s.trim())
                    .ok_or_else(|| usage(format!("unknown algorithm '{s}'")))
            })
            .collect::<Result<_, _>>()?;
        if plan.algorithms.is_empty() {
            return Err(usage("empty --algos"));
        }
    }
    if args.runs == 0 || args.patterns == 0 {
        return Err(usage("--runs and --patterns must be at least 1"));
    }

    eprintln!(
        "# rng={RNG_ALGORITHM} seed={} runs={} patterns-per-cell={}",
        plan.seed, plan.runs, plan.patterns_per_cell
    );
    let records = run_benchmark(&plan).map_err(runtime)?;
    match &args.out {
        Some(path) => {
            let file = fs::File::create(path)
                .map_err(|e| runtime(format!("cannot write {}: {e}", path.display())))?;
            emit_csv(&records, file).map_err(runtime)?;
        }
        None => emit_csv(&records, io::stdout().lock()).map_err(runtime)?,
    }
    if let Some(dir) = &args.plot_dir {
        emit_plot_data(&records, dir).map_err(runtime)?;
    }
    Ok(())
}

fn cmd_probe() -> Result<(), CliError> {
    for width in capability_probe() {
        println!("{width}");
    }
    Ok(())
}
