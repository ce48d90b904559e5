//! The search engines: scalar naive and block-parallel naive, both
//! parameterized by comparison order and peeling factor.
//!
//! The block engine advances α alignments per step. For a block starting
//! at alignment `i` it AND-accumulates one vector compare per pattern
//! position in order π; bit `k` of the accumulator survives iff alignment
//! `i + k` still matches every position tested so far. The first `r`
//! accumulations run unconditionally (loop peeling); from then on the
//! engine bails out of the block as soon as the accumulator is zero.
//! Occurrences per block are counted with a popcount.
//!
//! A vector compare at pattern position `j` reads α text bytes starting at
//! `i + j - 1`, so the block loop only runs while the whole block of α
//! alignments is valid (equivalently, while every read stays in bounds);
//! the remaining tail alignments are finished by the scalar engine with
//! the same order and peeling factor. No padding, no over-read.

use std::fmt;

use crate::block::{compare_mask, BlockWidth};
use crate::orders::{ComparisonOrder, OrderKind};
use crate::types::{ComparisonCounts, MatchMask, Pattern, SearchReport, Text};

/// Scalar byte-at-a-time checking or block-parallel checking of α
/// alignments at once.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EngineKind {
    Scalar,
    Block(BlockWidth),
}

impl fmt::Display for EngineKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EngineKind::Scalar => f.write_str("scalar"),
            EngineKind::Block(w) => write!(f, "w{w}"),
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Mode {
    #[default]
    Count,
    Report,
}

/// A validated engine configuration: engine, comparison order, peeling
/// factor (clamped to `1..=m` at configuration time), mode, and
/// instrumentation switch.
#[derive(Clone, Debug)]
pub struct SearchConfig {
    engine: EngineKind,
    order: ComparisonOrder,
    peel: usize,
    mode: Mode,
    instrument: bool,
}

impl SearchConfig {
    /// Scalar engine with the given order; peeling factor 1.
    pub fn scalar(order: ComparisonOrder) -> Self {
        SearchConfig {
            engine: EngineKind::Scalar,
            order,
            peel: 1,
            mode: Mode::Count,
            instrument: false,
        }
    }

    /// Block engine; fails if `width` is not available on this machine.
    /// Width problems surface here, never at search time.
    pub fn block(width: BlockWidth, order: ComparisonOrder) -> Result<Self, ConfigError> {
        if !width.is_available() {
            return Err(ConfigError::WidthUnavailable(width));
        }
        Ok(SearchConfig {
            engine: EngineKind::Block(width),
            order,
            peel: 1,
            mode: Mode::Count,
            instrument: false,
        })
    }

    /// Sets the peeling factor, clamped to `1..=m`.
    pub fn with_peel(mut self, r: usize) -> Self {
        self.peel = r.clamp(1, self.order.len());
        self
    }

    pub fn with_mode(mut self, mode: Mode) -> Self {
        self.mode = mode;
        self
    }

    pub fn instrumented(mut self, on: bool) -> Self {
        self.instrument = on;
        self
    }

    pub fn engine(&self) -> EngineKind {
        self.engine
    }

    pub fn order(&self) -> &ComparisonOrder {
        &self.order
    }

    pub fn peel(&self) -> usize {
        self.peel
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    pub fn is_instrumented(&self) -> bool {
        self.instrument
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ConfigError {
    WidthUnavailable(BlockWidth),
}

impl fmt::Display for ConfigError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ConfigError::WidthUnavailable(w) => {
                write!(f, "block width {w} is not available on this machine")
            }
        }
    }
}

impl std::error::Error for ConfigError {}

/// Peeling factor the front ends use when none is given: 5 on tiny
/// alphabets, 2 for frequency order on alphabets larger than 32, 3
/// otherwise.
pub fn default_peel_factor(order: OrderKind, alphabet_size: usize) -> usize {
    if alphabet_size <= 4 {
        5
    } else if order == OrderKind::Frequency && alphabet_size > 32 {
        2
    } else {
        3
    }
}

/// Runs the engine selected by `cfg`.
///
/// # Panics
///
/// The configured order must cover exactly the pattern's positions.
pub fn search(p: &Pattern, t: &Text, cfg: &SearchConfig) -> SearchReport {
    assert_eq!(
        cfg.order.len(),
        p.len(),
        "comparison order covers {} positions but the pattern has {}",
        cfg.order.len(),
        p.len()
    );
    let n = t.len();
    let m = p.len();
    let total = if n >= m { n - m + 1 } else { 0 };
    let mut positions = match cfg.mode {
        Mode::Report => Some(Vec::new()),
        Mode::Count => None,
    };
    let mut counts = ComparisonCounts::default();
    let count = if total == 0 {
        0
    } else {
        match cfg.engine {
            EngineKind::Scalar => scalar_scan(p, t, 0, total, cfg, &mut positions, &mut counts),
            EngineKind::Block(width) => {
                block_scan(p, t, total, width, cfg, &mut positions, &mut counts)
            }
        }
    };
    SearchReport {
        count,
        positions,
        comparisons: cfg.instrument.then_some(counts),
    }
}

/// Scalar naive search. Requires a scalar configuration.
pub fn naive_search(p: &Pattern, t: &Text, cfg: &SearchConfig) -> SearchReport {
    assert_eq!(cfg.engine, EngineKind::Scalar, "scalar engine required");
    search(p, t, cfg)
}

/// Block-parallel naive search. Requires a block configuration.
pub fn block_naive_search(p: &Pattern, t: &Text, cfg: &SearchConfig) -> SearchReport {
    assert!(
        matches!(cfg.engine, EngineKind::Block(_)),
        "block engine required"
    );
    search(p, t, cfg)
}

/// Ascending 1-based text positions of the set bits of `found` for the
/// block whose first alignment is `block_start`.
pub fn extract_positions(found: MatchMask, block_start: usize) -> Vec<usize> {
    let mut out = Vec::with_capacity(found.popcount() as usize);
    push_positions(found.bits(), block_start, &mut out);
    out
}

#[inline]
fn push_positions(mut bits: u32, base_one: usize, out: &mut Vec<usize>) {
    while bits != 0 {
        let k = bits.trailing_zeros() as usize;
        out.push(base_one + k);
        bits &= bits - 1;
    }
}

/// Checks alignments `[first, limit)` (0-based) one byte at a time in the
/// configured order. The first `peel` comparisons of every alignment run
/// unconditionally; after that the survival flag is tested after each
/// comparison.
fn scalar_scan(
    p: &Pattern,
    t: &Text,
    first: usize,
    limit: usize,
    cfg: &SearchConfig,
    positions: &mut Option<Vec<usize>>,
    counts: &mut ComparisonCounts,
) -> usize {
    let pb = p.as_bytes();
    let tb = t.as_bytes();
    let order = cfg.order.zero_based();
    let peel = cfg.peel;
    let instrument = cfg.instrument;
    let mut count = 0usize;
    for i in first..limit {
        let mut found = true;
        for (idx, &j) in order.iter().enumerate() {
            found &= tb[i + j] == pb[j];
            if instrument {
                counts.symbol += 1;
            }
            if idx + 1 >= peel && !found {
                break;
            }
        }
        if found {
            count += 1;
            if let Some(pos) = positions {
                pos.push(i + 1);
            }
        }
    }
    count
}

fn block_scan(
    p: &Pattern,
    t: &Text,
    total: usize,
    width: BlockWidth,
    cfg: &SearchConfig,
    positions: &mut Option<Vec<usize>>,
    counts: &mut ComparisonCounts,
) -> usize {
    let pb = p.as_bytes();
    let tb = t.as_bytes();
    let order = cfg.order.zero_based();
    let peel = cfg.peel;
    let instrument = cfg.instrument;
    let alpha = width.alpha();
    let full_blocks = total / alpha;
    let mut count = 0usize;
    for b in 0..full_blocks {
        let base = b * alpha;
        let mut found;
        let start_idx;
        if peel == 1 {
            // All-ones initialization; survival is tested after every
            // accumulation including the first.
            found = width.full_mask();
            start_idx = 0;
        } else {
            // Peeled form: the first accumulation initializes the mask
            // directly, without a prior AND.
            let j = order[0];
            found = compare_mask(tb, base + j, pb[j], width);
            if instrument {
                counts.block += 1;
            }
            start_idx = 1;
        }
        for (idx, &j) in order.iter().enumerate().skip(start_idx) {
            found &= compare_mask(tb, base + j, pb[j], width);
            if instrument {
                counts.block += 1;
            }
            if idx + 1 >= peel && found == 0 {
                break;
            }
        }
        if found != 0 {
            count += found.count_ones() as usize;
            if let Some(pos) = positions {
                push_positions(found, base + 1, pos);
            }
        }
    }
    // Alignments that do not fill a block are finished by the scalar
    // engine with the same order and peeling factor.
    let tail_first = full_blocks * alpha;
    if tail_first < total {
        count += scalar_scan(p, t, tail_first, total, cfg, positions, counts);
    }
    count
}

#[cfg(test)]
mod tests {
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    use super::*;
    use crate::block::capability_probe;
    use crate::oracle::oracle_count;
    use crate::orders::FrequencyTable;

    fn pat(bytes: &[u8]) -> Pattern {
        Pattern::new(bytes.to_vec()).unwrap()
    }

    fn all_orders(p: &Pattern, t: &Text) -> Vec<ComparisonOrder> {
        let table = FrequencyTable::from_bytes(t.as_bytes());
        vec![
            ComparisonOrder::identity(p.len()),
            ComparisonOrder::frequency(p, &table),
            ComparisonOrder::pi_h(p.len()),
            ComparisonOrder::pi_hs(p, crate::orders::DEFAULT_SPACE),
        ]
    }

    #[test]
    fn naive_matches_fig_example() {
        let cfg = SearchConfig::scalar(ComparisonOrder::identity(4));
        let r = naive_search(&pat(b"abcd"), &Text::from("aabcd"), &cfg);
        assert_eq!(r.count, 1);
    }

    #[test]
    fn naive_empty_text() {
        let cfg = SearchConfig::scalar(ComparisonOrder::identity(1));
        let r = naive_search(&pat(b"x"), &Text::from(""), &cfg);
        assert_eq!(r.count, 0);
    }

    #[test]
    fn naive_differential_small_alphabet() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..300 {
            let t: Vec<u8> = (0..64).map(|_| rng.gen_range(b'a'..=b'd')).collect();
            let p: Vec<u8> = (0..3).map(|_| rng.gen_range(b'a'..=b'd')).collect();
            let (p, t) = (pat(&p), Text::new(t));
            let cfg = SearchConfig::scalar(ComparisonOrder::identity(3)).with_mode(Mode::Report);
            let got = naive_search(&p, &t, &cfg);
            let want = oracle_count(&p, &t);
            assert_eq!(got.count, want.count);
            assert_eq!(got.positions, want.positions);
        }
    }

    #[test]
    fn block_matches_fig_example_padded_block() {
        // Pad so that one full width-8 block covers the occurrence.
        let t = Text::from("aabcdzzzzzzzzzzzzzz");
        let p = pat(b"abcd");
        let cfg = SearchConfig::block(BlockWidth::W8, ComparisonOrder::identity(4))
            .unwrap()
            .with_mode(Mode::Report);
        let r = block_naive_search(&p, &t, &cfg);
        assert_eq!(r.count, 1);
        assert_eq!(r.positions, Some(vec![2]));
    }

    #[test]
    fn absent_first_symbol_stops_after_peel_comparisons() {
        // 'q' never occurs: every block dies at the first survival test,
        // so exactly peel block compares run per full block and the tail
        // costs at most peel symbol comparisons per alignment.
        let n = 259;
        let m = 4;
        let t = Text::new(vec![b'a'; n]);
        let p = pat(&vec![b'q'; m]);
        for width in capability_probe() {
            let alpha = width.alpha();
            for peel in [1usize, 2, 3] {
                let cfg = SearchConfig::block(width, ComparisonOrder::identity(m))
                    .unwrap()
                    .with_peel(peel)
                    .instrumented(true);
                let r = block_naive_search(&p, &t, &cfg);
                assert_eq!(r.count, 0);
                let total = n - m + 1;
                let c = r.comparisons.unwrap();
                assert_eq!(c.block, ((total / alpha) * peel) as u64);
                assert!(c.block <= (total.div_ceil(alpha) * peel) as u64);
                assert_eq!(c.symbol, ((total % alpha) * peel) as u64);
            }
        }
    }

    #[test]
    fn block_differential_all_widths_orders_peels() {
        let mut rng = ChaCha8Rng::seed_from_u64(0xD1FF);
        let widths = capability_probe();
        for case in 0..400 {
            let sigma = [2usize, 4, 63][case % 3];
            let n = rng.gen_range(0..=300);
            let m = rng.gen_range(1..=24);
            let t: Vec<u8> = (0..n).map(|_| rng.gen_range(0..sigma) as u8 + b'a').collect();
            let p: Vec<u8> = if n >= m && rng.gen_bool(0.6) {
                let s = rng.gen_range(0..=(n - m));
                t[s..s + m].to_vec()
            } else {
                (0..m).map(|_| rng.gen_range(0..sigma) as u8 + b'a').collect()
            };
            let (p, t) = (pat(&p), Text::new(t));
            let want = oracle_count(&p, &t);
            for order in all_orders(&p, &t) {
                for &width in &widths {
                    let r = rng.gen_range(1..=m);
                    let cfg = SearchConfig::block(width, order.clone())
                        .unwrap()
                        .with_peel(r)
                        .with_mode(Mode::Report);
                    let got = block_naive_search(&p, &t, &cfg);
                    assert_eq!(got.count, want.count, "width {width} order {order} r {r}");
                    assert_eq!(got.positions, want.positions);
                }
            }
        }
    }

    #[test]
    fn order_and_width_invariance() {
        let t = Text::from("the quick brown fox jumps over the lazy dog and the quick cat");
        let p = pat(b"the");
        let mut counts = Vec::new();
        for order in all_orders(&p, &t) {
            let cfg = SearchConfig::scalar(order.clone());
            counts.push(search(&p, &t, &cfg).count);
            for width in capability_probe() {
                let cfg = SearchConfig::block(width, order.clone()).unwrap();
                counts.push(search(&p, &t, &cfg).count);
            }
        }
        assert!(counts.iter().all(|&c| c == counts[0]));
        assert_eq!(counts[0], 3);
    }

    #[test]
    fn peel_changes_work_not_results() {
        // First pattern symbol is absent from most of the text, so r=1
        // kills most blocks at the first survival test while r=m always
        // runs all four compares.
        let mut text = vec![b'm'; 64];
        text[..4].copy_from_slice(b"zaza");
        let t = Text::new(text);
        let p = pat(b"zaza");
        let m = p.len();
        let mut reports = Vec::new();
        let mut works = Vec::new();
        for r in [1, 2, 3, m] {
            let cfg = SearchConfig::block(BlockWidth::W8, ComparisonOrder::identity(m))
                .unwrap()
                .with_peel(r)
                .with_mode(Mode::Report)
                .instrumented(true);
            let rep = search(&p, &t, &cfg);
            works.push(rep.comparisons.unwrap());
            reports.push((rep.count, rep.positions));
        }
        assert!(reports.iter().all(|r| *r == reports[0]));
        // r = m does strictly more block compares than r = 1 here.
        assert!(works.last().unwrap().block > works[0].block);
    }

    #[test]
    fn peel_is_clamped_at_configuration_time() {
        let cfg = SearchConfig::scalar(ComparisonOrder::identity(3)).with_peel(100);
        assert_eq!(cfg.peel(), 3);
        let cfg = SearchConfig::scalar(ComparisonOrder::identity(3)).with_peel(0);
        assert_eq!(cfg.peel(), 1);
    }

    #[test]
    fn reporting_counting_consistency() {
        let t = Text::from("aaaaaaaaaaaaaaaaaaaaaaaaaaaaaaaaaaaaaaaa");
        let p = pat(b"aa");
        for width in capability_probe() {
            let base = SearchConfig::block(width, ComparisonOrder::identity(2)).unwrap();
            let counting = search(&p, &t, &base);
            let reporting = search(&p, &t, &base.clone().with_mode(Mode::Report));
            assert_eq!(counting.count, reporting.count);
            let pos = reporting.positions.unwrap();
            assert_eq!(pos.len(), reporting.count);
            assert!(pos.windows(2).all(|w| w[0] < w[1]));
            assert_eq!(counting.positions, None);
        }
    }

    #[test]
    fn extract_positions_examples() {
        assert_eq!(
            extract_positions(MatchMask::new(0, BlockWidth::W8), 3),
            Vec::<usize>::new()
        );
        assert_eq!(extract_positions(MatchMask::new(0b1, BlockWidth::W8), 1), vec![1]);
        assert_eq!(
            extract_positions(MatchMask::new(0b1010, BlockWidth::W8), 5),
            vec![6, 8]
        );
    }

    #[test]
    fn default_peel_policy() {
        assert_eq!(default_peel_factor(OrderKind::Frequency, 63), 2);
        assert_eq!(default_peel_factor(OrderKind::Frequency, 117), 2);
        assert_eq!(default_peel_factor(OrderKind::Frequency, 19), 3);
        assert_eq!(default_peel_factor(OrderKind::Identity, 63), 3);
        assert_eq!(default_peel_factor(OrderKind::PiH, 117), 3);
        assert_eq!(default_peel_factor(OrderKind::PiHs, 19), 3);
        for kind in OrderKind::ALL {
            assert_eq!(default_peel_factor(kind, 4), 5);
            assert_eq!(default_peel_factor(kind, 2), 5);
        }
    }

    #[test]
    fn unavailable_width_is_a_construction_error() {
        if let Some(missing) = BlockWidth::ALL.iter().find(|w| !w.is_available()) {
            assert_eq!(
                SearchConfig::block(*missing, ComparisonOrder::identity(2)).unwrap_err(),
                ConfigError::WidthUnavailable(*missing)
            );
        }
    }

    #[test]
    #[should_panic(expected = "comparison order covers")]
    fn order_length_mismatch_panics() {
        let cfg = SearchConfig::scalar(ComparisonOrder::identity(3));
        search(&pat(b"ab"), &Text::from("abab"), &cfg);
    }

    #[test]
    fn configured_matcher_is_shareable() {
        fn assert_send_sync<T: Send + Sync>() {}
        assert_send_sync::<SearchConfig>();
        assert_send_sync::<Text>();
        assert_send_sync::<Pattern>();
    }

    #[test]
    fn scalar_naive_comparisons_per_position_on_bundled_sample() {
        // ~1.08 comparisons per position is the classic figure for
        // English-like text; 1.2 is the asserted ceiling.
        let path = concat!(env!("CARGO_MANIFEST_DIR"), "/../../fixtures/english63.txt");
        let corpus = crate::corpus::load_corpus(path).unwrap();
        let set = crate::corpus::sample_patterns(&corpus, 8, 20, 0xE2E).unwrap();
        let positions = (corpus.len() - 8 + 1) as f64;
        let mut total = 0.0;
        for p in &set.patterns {
            let cfg = SearchConfig::scalar(ComparisonOrder::identity(8)).instrumented(true);
            let r = naive_search(p, corpus.text(), &cfg);
            total += r.comparisons.unwrap().symbol as f64 / positions;
        }
        let avg = total / set.patterns.len() as f64;
        assert!(avg <= 1.2, "average comparisons per position {avg:.4}");
    }
}
