//! Corpus ingestion, alphabet statistics, and deterministic pattern
//! sampling for benchmarks.

use std::fmt;
use std::fs;
use std::io;
use std::path::{Path, PathBuf};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::orders::FrequencyTable;
use crate::types::{Pattern, Text};

/// Name of the seeded generator used for pattern sampling, recorded in
/// benchmark output.
pub const RNG_ALGORITHM: &str = "chacha8";

/// A loaded corpus: raw bytes plus a label and its alphabet size.
#[derive(Clone, Debug)]
pub struct Corpus {
    name: String,
    text: Text,
    alphabet_size: usize,
}

impl Corpus {
    pub fn from_bytes(name: impl Into<String>, bytes: impl Into<Vec<u8>>) -> Self {
        let bytes = bytes.into();
        let mut present = [false; 256];
        for &b in &bytes {
            present[b as usize] = true;
        }
        Corpus {
            name: name.into(),
            text: Text::new(bytes),
            alphabet_size: present.iter().filter(|&&p| p).count(),
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn text(&self) -> &Text {
        &self.text
    }

    pub fn len(&self) -> usize {
        self.text.len()
    }

    pub fn is_empty(&self) -> bool {
        self.text.is_empty()
    }

    /// Number of distinct byte values present.
    pub fn alphabet_size(&self) -> usize {
        self.alphabet_size
    }

    pub fn frequency_table(&self) -> FrequencyTable {
        FrequencyTable::from_bytes(self.text.as_bytes())
    }
}

/// Loads a corpus verbatim; the label is the file stem.
pub fn load_corpus(path: impl AsRef<Path>) -> Result<Corpus, CorpusError> {
    let path = path.as_ref();
    let bytes = fs::read(path).map_err(|source| CorpusError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    let name = path
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| path.display().to_string());
    Ok(Corpus::from_bytes(name, bytes))
}

/// Per-byte occurrence counts over the corpus; total equals its length.
pub fn build_frequency_table(c: &Corpus) -> FrequencyTable {
    c.frequency_table()
}

/// Patterns sampled verbatim from a corpus, all of one length.
#[derive(Clone, Debug)]
pub struct PatternSet {
    pub patterns: Vec<Pattern>,
    pub length: usize,
    pub seed: u64,
    /// 1-based start index of each sampled pattern in the corpus.
    pub source_positions: Vec<usize>,
}

/// Draws `k` length-`m` substrings at uniformly random start positions
/// with a seeded generator; reproducible given `(corpus, m, k, seed)`.
pub fn sample_patterns(
    c: &Corpus,
    m: usize,
    k: usize,
    seed: u64,
) -> Result<PatternSet, CorpusError> {
    let n = c.len();
    if m == 0 {
        return Err(CorpusError::EmptyPatternLength);
    }
    if m > n {
        return Err(CorpusError::PatternLongerThanCorpus { m, n });
    }
    if k == 0 {
        return Err(CorpusError::ZeroSampleCount);
    }
    let bytes = c.text().as_bytes();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut patterns = Vec::with_capacity(k);
    let mut source_positions = Vec::with_capacity(k);
    for _ in 0..k {
        let start = rng.gen_range(0..=(n - m));
        patterns.push(Pattern::new(bytes[start..start + m].to_vec()).expect("m >= 1"));
        source_positions.push(start + 1);
    }
    Ok(PatternSet {
        patterns,
        length: m,
        seed,
        source_positions,
    })
}

#[derive(Debug)]
pub enum CorpusError {
    Io { path: PathBuf, source: io::Error },
    EmptyPatternLength,
    PatternLongerThanCorpus { m: usize, n: usize },
    ZeroSampleCount,
}

impl fmt::Display for CorpusError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CorpusError::Io { path, source } => {
                write!(f, "cannot read corpus {}: {source}", path.display())
            }
            CorpusError::EmptyPatternLength => write!(f, "pattern length must be at least 1"),
            CorpusError::PatternLongerThanCorpus { m, n } => {
                write!(f, "pattern length {m} exceeds corpus length {n}")
            }
            CorpusError::ZeroSampleCount => write!(f, "sample count must be at least 1"),
        }
    }
}

impl std::error::Error for CorpusError {}

/// Deterministic synthetic text generators, used for the checked-in
/// fixtures and for large in-test corpora.
pub mod synth {
    use super::*;
    use rand::distributions::{Distribution, WeightedIndex};

    /// Per-mille-ish weights roughly matching letter statistics of
    /// English prose, space-dominant.
    const ENGLISH_WEIGHTS: &[(u8, u32)] = &[
        (b' ', 170),
        (b'e', 95),
        (b't', 68),
        (b'a', 61),
        (b'o', 57),
        (b'i', 53),
        (b'n', 51),
        (b's', 48),
        (b'h', 46),
        (b'r', 43),
        (b'd', 32),
        (b'l', 30),
        (b'u', 21),
        (b'c', 20),
        (b'm', 18),
        (b'w', 17),
        (b'f', 16),
        (b'g', 15),
        (b'y', 14),
        (b'p', 13),
        (b'b', 11),
        (b'v', 8),
        (b'k', 6),
        (b'j', 2),
        (b'x', 2),
        (b'q', 1),
        (b'z', 1),
        (b'\n', 9),
        (b'.', 7),
        (b',', 8),
        (b'T', 3),
        (b'A', 2),
        (b'I', 2),
        (b'S', 1),
        (b'W', 1),
    ];

    /// Bytes drawn independently with the given weights.
    pub fn weighted_bytes(len: usize, weights: &[(u8, u32)], seed: u64) -> Vec<u8> {
        let dist = WeightedIndex::new(weights.iter().map(|&(_, w)| w)).expect("valid weights");
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        (0..len).map(|_| weights[dist.sample(&mut rng)].0).collect()
    }

    /// Skewed, space-dominant text resembling English prose statistics.
    pub fn english_like(len: usize, seed: u64) -> Vec<u8> {
        weighted_bytes(len, ENGLISH_WEIGHTS, seed)
    }

    /// Bytes drawn uniformly from the given alphabet.
    pub fn uniform_bytes(len: usize, alphabet: &[u8], seed: u64) -> Vec<u8> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        (0..len)
            .map(|_| alphabet[rng.gen_range(0..alphabet.len())])
            .collect()
    }

    /// Overwrites random positions until every byte of `alphabet` occurs,
    /// pinning the alphabet size exactly. Deterministic given the seed.
    pub fn cover_alphabet(buf: &mut [u8], alphabet: &[u8], seed: u64) {
        assert!(buf.len() >= alphabet.len());
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        loop {
            let mut present = [false; 256];
            for &b in buf.iter() {
                present[b as usize] = true;
            }
            let missing: Vec<u8> = alphabet
                .iter()
                .copied()
                .filter(|&b| !present[b as usize])
                .collect();
            if missing.is_empty() {
                return;
            }
            for b in missing {
                let at = rng.gen_range(0..buf.len());
                buf[at] = b;
            }
        }
    }
}
