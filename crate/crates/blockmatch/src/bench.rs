//! Timing harness: algorithms × pattern lengths × corpora, repeated runs,
//! mean wall-clock times, CSV emission.
//!
//! Timing uses the monotonic wall clock (`Instant`), not CPU time; runs
//! are meant to be executed on an otherwise idle machine and are strictly
//! single-threaded. One untimed warm-up search precedes the timed runs of
//! each cell. Every cell's total occurrence count is cross-checked against
//! the brute-force oracle, and a mismatch aborts the whole run.

use std::fmt;
use std::io::{self, Write};
use std::path::Path;
use std::time::Instant;

use crate::baselines::sbndm_search;
use crate::block::BlockWidth;
use crate::corpus::{sample_patterns, Corpus, PatternSet};
use crate::matchers::{default_peel_factor, search, SearchConfig};
use crate::oracle::oracle_count;
use crate::orders::{FrequencyTable, OrderKind};
use crate::types::Pattern;

pub use crate::corpus::RNG_ALGORITHM;

/// One algorithm column of the benchmark.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AlgorithmSpec {
    /// Scalar naive search, identity order, no peeling.
    Naive,
    /// Block-parallel naive search. `peel: None` applies the default
    /// peeling policy for the corpus alphabet.
    Block {
        width: BlockWidth,
        order: OrderKind,
        peel: Option<usize>,
    },
    /// SBNDM baseline with the given q-gram size (2 or 4).
    Sbndm { q: usize },
}

impl AlgorithmSpec {
    pub fn block(width: BlockWidth, order: OrderKind) -> Self {
        AlgorithmSpec::Block {
            width,
            order,
            peel: None,
        }
    }

    /// The head-to-head set: block engines at widths 16/32 in identity,
    /// frequency, and fixed orders, plus both baselines.
    pub fn standard_set() -> Vec<AlgorithmSpec> {
        let mut algs = Vec::new();
        for width in [BlockWidth::W16, BlockWidth::W32] {
            for order in [OrderKind::Identity, OrderKind::Frequency, OrderKind::PiH] {
                algs.push(AlgorithmSpec::block(width, order));
            }
        }
        algs.push(AlgorithmSpec::Sbndm { q: 2 });
        algs.push(AlgorithmSpec::Sbndm { q: 4 });
        algs
    }

    pub fn label(&self) -> String {
        match self {
            AlgorithmSpec::Naive => "naive".to_string(),
            AlgorithmSpec::Block { width, order, .. } => {
                let suffix = match order {
                    OrderKind::Identity => "",
                    OrderKind::Frequency => "-freq",
                    OrderKind::PiH => "-fixed",
                    OrderKind::PiHs => "-fixeds",
                };
                format!("N{}{}", width.alpha(), suffix)
            }
            AlgorithmSpec::Sbndm { q } => format!("SBNDM{q}"),
        }
    }

    /// Parses a label like `naive`, `N16-freq`, `n32-fixed`, `sbndm4`.
    pub fn parse(s: &str) -> Option<AlgorithmSpec> {
        let lower = s.to_ascii_lowercase();
        match lower.as_str() {
            "naive" => return Some(AlgorithmSpec::Naive),
            "sbndm2" => return Some(AlgorithmSpec::Sbndm { q: 2 }),
            "sbndm4" => return Some(AlgorithmSpec::Sbndm { q: 4 }),
            _ => {}
        }
        let rest = lower.strip_prefix('n')?;
        let (alpha, order) = match rest.split_once('-') {
            Some((alpha, order)) => (alpha, order),
            None => (rest, ""),
        };
        let width = BlockWidth::from_alpha(alpha.parse().ok()?)?;
        let order = match order {
            "" | "identity" => OrderKind::Identity,
            "freq" => OrderKind::Frequency,
            "fixed" | "pih" => OrderKind::PiH,
            "fixeds" | "pihs" => OrderKind::PiHs,
            _ => return None,
        };
        Some(AlgorithmSpec::block(width, order))
    }
}

impl fmt::Display for AlgorithmSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label())
    }
}

/// What to run: every corpus × pattern length × algorithm cell samples
/// `patterns_per_cell` patterns and times `runs` searches over the full
/// corpus.
#[derive(Clone, Debug)]
pub struct BenchPlan {
    pub corpora: Vec<Corpus>,
    pub algorithms: Vec<AlgorithmSpec>,
    pub pattern_lengths: Vec<usize>,
    pub runs: usize,
    pub patterns_per_cell: usize,
    pub seed: u64,
}

impl BenchPlan {
    pub fn new(corpora: Vec<Corpus>) -> Self {
        BenchPlan {
            corpora,
            algorithms: AlgorithmSpec::standard_set(),
            pattern_lengths: Self::default_lengths(),
            runs: 30,
            patterns_per_cell: 1,
            seed: 1,
        }
    }

    /// `4, 8, ..., 64`.
    pub fn default_lengths() -> Vec<usize> {
        (1..=16).map(|i| i * 4).collect()
    }
}

/// One benchmark cell. `mean_ms`/`stddev_ms`/`checksum` are `None` for
/// skipped cells (e.g. an unavailable width).
#[derive(Clone, Debug, PartialEq)]
pub struct BenchRecord {
    pub corpus: String,
    pub algorithm: String,
    pub m: usize,
    pub runs: usize,
    pub mean_ms: Option<f64>,
    pub stddev_ms: Option<f64>,
    pub checksum: Option<u64>,
    pub config: String,
}

#[derive(Debug)]
pub enum BenchError {
    Corpus(crate::corpus::CorpusError),
    ChecksumMismatch {
        corpus: String,
        algorithm: String,
        m: usize,
        expected: u64,
        got: u64,
    },
}

impl fmt::Display for BenchError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BenchError::Corpus(e) => write!(f, "{e}"),
            BenchError::ChecksumMismatch {
                corpus,
                algorithm,
                m,
                expected,
                got,
            } => write!(
                f,
                "checksum mismatch on {corpus} m={m} {algorithm}: expected {expected}, got {got}"
            ),
        }
    }
}

impl std::error::Error for BenchError {}

impl From<crate::corpus::CorpusError> for BenchError {
    fn from(e: crate::corpus::CorpusError) -> Self {
        BenchError::Corpus(e)
    }
}

enum Runner {
    Engine(Vec<(Pattern, SearchConfig)>),
    Baseline { q: usize, patterns: Vec<Pattern> },
}

impl Runner {
    fn total_count(&self, corpus: &Corpus) -> u64 {
        match self {
            Runner::Engine(cases) => cases
                .iter()
                .map(|(p, cfg)| search(p, corpus.text(), cfg).count as u64)
                .sum(),
            Runner::Baseline { q, patterns } => patterns
                .iter()
                .map(|p| {
                    sbndm_search(p, corpus.text(), *q)
                        .expect("validated at construction")
                        .count as u64
                })
                .sum(),
        }
    }
}

fn build_runner(
    spec: &AlgorithmSpec,
    set: &PatternSet,
    table: &FrequencyTable,
    alphabet_size: usize,
) -> Result<(Runner, String), String> {
    match spec {
        AlgorithmSpec::Naive => {
            let cases = set
                .patterns
                .iter()
                .map(|p| {
                    let order = OrderKind::Identity.build(p, None).expect("identity");
                    (p.clone(), SearchConfig::scalar(order))
                })
                .collect();
            Ok((Runner::Engine(cases), "scalar/identity/r1".to_string()))
        }
        AlgorithmSpec::Block { width, order, peel } => {
            let r = peel.unwrap_or_else(|| default_peel_factor(*order, alphabet_size));
            let mut cases = Vec::with_capacity(set.patterns.len());
            for p in &set.patterns {
                let ord = order.build(p, Some(table)).map_err(|e| e.to_string())?;
                let cfg = SearchConfig::block(*width, ord)
                    .map_err(|e| e.to_string())?
                    .with_peel(r);
                cases.push((p.clone(), cfg));
            }
            Ok((Runner::Engine(cases), format!("w{width}/{order}/r{r}")))
        }
        AlgorithmSpec::Sbndm { q } => {
            if set.length < *q {
                return Err(format!("pattern length {} shorter than q={q}", set.length));
            }
            if *q != 2 && *q != 4 {
                return Err(format!("unsupported q {q}"));
            }
            Ok((
                Runner::Baseline {
                    q: *q,
                    patterns: set.patterns.clone(),
                },
                format!("q{q}/w64"),
            ))
        }
    }
}

/// Stable per-cell sampling seed derived from the master seed.
fn cell_seed(master: u64, corpus: &str, m: usize) -> u64 {
    // FNV-1a over the corpus label and length.
    let mut h = 0xcbf29ce484222325u64 ^ master;
    for b in corpus.bytes().chain(m.to_le_bytes()) {
        h ^= b as u64;
        h = h.wrapping_mul(0x100000001b3);
    }
    h
}

fn stats_ms(times: &[f64]) -> (f64, f64) {
    let n = times.len() as f64;
    let mean = times.iter().sum::<f64>() / n;
    let stddev = if times.len() > 1 {
        (times.iter().map(|t| (t - mean) * (t - mean)).sum::<f64>() / (n - 1.0)).sqrt()
    } else {
        0.0
    };
    (mean, stddev)
}

/// Executes the plan. For each cell the sampled patterns are searched over
/// the full corpus once untimed (warm-up), then `runs` times timed; the
/// per-cell occurrence checksum is validated against the oracle. Skipped
/// cells (unbuildable configurations) are recorded and the run continues.
pub fn run_benchmark(plan: &BenchPlan) -> Result<Vec<BenchRecord>, BenchError> {
    let mut records = Vec::new();
    for corpus in &plan.corpora {
        let table = corpus.frequency_table();
        for &m in &plan.pattern_lengths {
            let set = sample_patterns(
                corpus,
                m,
                plan.patterns_per_cell,
                cell_seed(plan.seed, corpus.name(), m),
            )?;
            let oracle_total: u64 = set
                .patterns
                .iter()
                .map(|p| oracle_count(p, corpus.text()).count as u64)
                .sum();
            for spec in &plan.algorithms {
                match build_runner(spec, &set, &table, corpus.alphabet_size()) {
                    Err(_) => records.push(BenchRecord {
                        corpus: corpus.name().to_string(),
                        algorithm: spec.label(),
                        m,
                        runs: plan.runs,
                        mean_ms: None,
                        stddev_ms: None,
                        checksum: None,
                        config: "skipped".to_string(),
                    }),
                    Ok((runner, config)) => {
                        // Warm-up, also the checksum source.
                        let checksum = runner.total_count(corpus);
                        if checksum != oracle_total {
                            return Err(BenchError::ChecksumMismatch {
                                corpus: corpus.name().to_string(),
                                algorithm: spec.label(),
                                m,
                                expected: oracle_total,
                                got: checksum,
                            });
                        }
                        let mut times = Vec::with_capacity(plan.runs);
                        for _ in 0..plan.runs {
                            let start = Instant::now();
                            let total = runner.total_count(corpus);
                            times.push(start.elapsed().as_secs_f64() * 1e3);
                            debug_assert_eq!(total, checksum);
                        }
                        let (mean, stddev) = stats_ms(&times);
                        records.push(BenchRecord {
                            corpus: corpus.name().to_string(),
                            algorithm: spec.label(),
                            m,
                            runs: plan.runs,
                            mean_ms: Some(mean),
                            stddev_ms: Some(stddev),
                            checksum: Some(checksum),
                            config,
                        });
                    }
                }
            }
        }
    }
    Ok(records)
}

/// Writes `corpus,algorithm,m,runs,mean_ms,stddev_ms,checksum,config`
/// rows sorted by (corpus, m, algorithm); skipped cells have empty time
/// and checksum fields.
pub fn emit_csv<W: Write>(records: &[BenchRecord], mut w: W) -> io::Result<()> {
    writeln!(w, "corpus,algorithm,m,runs,mean_ms,stddev_ms,checksum,config")?;
    let mut sorted: Vec<&BenchRecord> = records.iter().collect();
    sorted.sort_by(|a, b| {
        (&a.corpus, a.m, &a.algorithm).cmp(&(&b.corpus, b.m, &b.algorithm))
    });
    for r in sorted {
        let fmt_opt = |v: Option<f64>| v.map(|x| format!("{x:.6}")).unwrap_or_default();
        let checksum = r.checksum.map(|c| c.to_string()).unwrap_or_default();
        writeln!(
            w,
            "{},{},{},{},{},{},{},{}",
            r.corpus,
            r.algorithm,
            r.m,
            r.runs,
            fmt_opt(r.mean_ms),
            fmt_opt(r.stddev_ms),
            checksum,
            r.config
        )?;
    }
    Ok(())
}

/// Writes one gnuplot-friendly file per corpus into `dir`: a header line
/// `m <alg> <alg> ...` then one row per pattern length with mean times in
/// milliseconds (`-` for skipped cells).
pub fn emit_plot_data(records: &[BenchRecord], dir: impl AsRef<Path>) -> io::Result<()> {
    let dir = dir.as_ref();
    std::fs::create_dir_all(dir)?;
    let mut corpora: Vec<&str> = records.iter().map(|r| r.corpus.as_str()).collect();
    corpora.sort();
    corpora.dedup();
    let mut algorithms: Vec<&str> = records.iter().map(|r| r.algorithm.as_str()).collect();
    algorithms.sort();
    algorithms.dedup();
    for corpus in corpora {
        let mut lengths: Vec<usize> = records
            .iter()
            .filter(|r| r.corpus == corpus)
            .map(|r| r.m)
            .collect();
        lengths.sort();
        lengths.dedup();
        let mut out = std::fs::File::create(dir.join(format!("{corpus}.dat")))?;
        write!(out, "m")?;
        for alg in &algorithms {
            write!(out, " {alg}")?;
        }
        writeln!(out)?;
        for m in lengths {
            write!(out, "{m}")?;
            for alg in &algorithms {
                let cell = records
                    .iter()
                    .find(|r| r.corpus == corpus && r.m == m && r.algorithm == *alg)
                    .and_then(|r| r.mean_ms);
                match cell {
                    Some(v) => write!(out, " {v:.6}")?,
                    None => write!(out, " -")?,
                }
            }
            writeln!(out)?;
        }
    }
    Ok(())
}
