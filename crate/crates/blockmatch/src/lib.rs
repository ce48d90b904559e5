//! Block-parallel naive exact string matching.
//!
//! The core engine checks α alignments of the pattern at once (α ∈ {8,
//! 16, 32}) with a byte-vector compare per pattern position, AND-folding
//! the per-alignment survival bits and popcounting the survivors. Symbol
//! positions can be checked in any order (rarest-first frequency order,
//! or fixed orders that avoid adjacent positions), and the first `r`
//! checks per block are peeled ahead of the early-exit test.
//!
//! Also here: a scalar naive engine, SBNDM2/SBNDM4 bit-parallel baselines,
//! a brute-force oracle for differential testing, corpus/frequency-table
//! utilities, and a benchmark harness producing CSV.

pub mod baselines;
pub mod bench;
pub mod block;
pub mod corpus;
pub mod matchers;
pub mod oracle;
pub mod orders;
pub mod types;

pub use baselines::{sbndm_search, BndmTables, SbndmError};
pub use block::{best_available, block_compare, capability_probe, BlockWidth};
pub use corpus::{build_frequency_table, load_corpus, sample_patterns, Corpus, PatternSet};
pub use matchers::{
    block_naive_search, default_peel_factor, extract_positions, naive_search, search,
    ConfigError, EngineKind, Mode, SearchConfig,
};
pub use oracle::oracle_count;
pub use orders::{ComparisonOrder, FrequencyTable, OrderKind};
pub use types::{ComparisonCounts, MatchMask, Pattern, PatternError, SearchReport, Text};
