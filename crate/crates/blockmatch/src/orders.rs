//! Comparison-order permutations and the symbol statistics behind them.
//!
//! An order π is a permutation of the pattern positions dictating the
//! sequence in which symbols are checked. Checking the rarest symbol first
//! kills non-matching alignments faster; the fixed orders avoid adjacent
//! positions to break the correlation between neighbouring characters in
//! natural language.

use std::fmt;
use std::fs::File;
use std::io::{self, BufRead, BufReader, Write};
use std::path::Path;

use crate::types::Pattern;

/// Space byte deferred to the end by the space-aware fixed order.
pub const DEFAULT_SPACE: u8 = 0x20;

/// Permutation of pattern positions. Stored 0-based for direct indexing;
/// the public view is 1-based.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComparisonOrder {
    zero_based: Vec<usize>,
}

impl ComparisonOrder {
    /// Left-to-right order `(1, 2, ..., m)`.
    pub fn identity(m: usize) -> Self {
        assert!(m >= 1, "order needs at least one position");
        ComparisonOrder {
            zero_based: (0..m).collect(),
        }
    }

    /// Positions sorted by ascending background frequency of the symbol at
    /// that position; ties broken by ascending position (stable).
    pub fn frequency(p: &Pattern, table: &FrequencyTable) -> Self {
        let bytes = p.as_bytes();
        let mut zero_based: Vec<usize> = (0..bytes.len()).collect();
        zero_based.sort_by_key(|&pos| (table.count(bytes[pos]), pos));
        ComparisonOrder { zero_based }
    }

    /// Fixed order `1, m, 4, 7, 10, ..., 3, 6, ..., 2, 5, ...`: first and
    /// last positions, then stride-3 chains starting at 4, 3, 2, skipping
    /// positions already emitted or beyond `m`.
    pub fn pi_h(m: usize) -> Self {
        assert!(m >= 1, "order needs at least one position");
        let mut candidates = Vec::with_capacity(m + 4);
        candidates.push(1);
        candidates.push(m);
        for start in [4usize, 3, 2] {
            let mut pos = start;
            while pos <= m {
                candidates.push(pos);
                pos += 3;
            }
        }
        let mut seen = vec![false; m + 1];
        let mut zero_based = Vec::with_capacity(m);
        for pos in candidates {
            if !seen[pos] {
                seen[pos] = true;
                zero_based.push(pos - 1);
            }
        }
        debug_assert_eq!(zero_based.len(), m);
        ComparisonOrder { zero_based }
    }

    /// Space-aware variant of [`ComparisonOrder::pi_h`]: all positions
    /// holding `space` move to the end (ascending); the remaining
    /// positions are traversed by rank as `pi_h` over their count.
    pub fn pi_hs(p: &Pattern, space: u8) -> Self {
        let bytes = p.as_bytes();
        let rest: Vec<usize> = (0..bytes.len()).filter(|&i| bytes[i] != space).collect();
        let spaces = (0..bytes.len()).filter(|&i| bytes[i] == space);
        let mut zero_based = Vec::with_capacity(bytes.len());
        if !rest.is_empty() {
            for &rank in ComparisonOrder::pi_h(rest.len()).zero_based() {
                zero_based.push(rest[rank]);
            }
        }
        zero_based.extend(spaces);
        ComparisonOrder { zero_based }
    }

    /// Builds an order from explicit 1-based positions, validating that
    /// they form a permutation of `1..=m`.
    pub fn from_one_based(positions: Vec<usize>) -> Result<Self, OrderError> {
        let m = positions.len();
        if m == 0 {
            return Err(OrderError::Empty);
        }
        let mut seen = vec![false; m + 1];
        for &pos in &positions {
            if pos < 1 || pos > m || seen[pos] {
                return Err(OrderError::NotAPermutation { position: pos, m });
            }
            seen[pos] = true;
        }
        Ok(ComparisonOrder {
            zero_based: positions.into_iter().map(|p| p - 1).collect(),
        })
    }

    #[inline]
    #[allow(clippy::len_without_is_empty)] // never empty by construction
    pub fn len(&self) -> usize {
        self.zero_based.len()
    }

    #[inline]
    pub fn zero_based(&self) -> &[usize] {
        &self.zero_based
    }

    pub fn one_based(&self) -> Vec<usize> {
        self.zero_based.iter().map(|&p| p + 1).collect()
    }
}

impl fmt::Display for ComparisonOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, pos) in self.zero_based.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}", pos + 1)?;
        }
        write!(f, ")")
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum OrderError {
    Empty,
    NotAPermutation { position: usize, m: usize },
    FrequencyTableRequired,
}

impl fmt::Display for OrderError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OrderError::Empty => write!(f, "order must cover at least one position"),
            OrderError::NotAPermutation { position, m } => write!(
                f,
                "position {position} is out of range or repeated; expected a permutation of 1..={m}"
            ),
            OrderError::FrequencyTableRequired => {
                write!(f, "frequency order requires a frequency table")
            }
        }
    }
}

impl std::error::Error for OrderError {}

/// Selector for the built-in order constructors.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum OrderKind {
    Identity,
    Frequency,
    PiH,
    PiHs,
}

impl OrderKind {
    pub const ALL: [OrderKind; 4] = [
        OrderKind::Identity,
        OrderKind::Frequency,
        OrderKind::PiH,
        OrderKind::PiHs,
    ];

    /// Builds the order for `p`. `Frequency` requires a table.
    pub fn build(
        self,
        p: &Pattern,
        table: Option<&FrequencyTable>,
    ) -> Result<ComparisonOrder, OrderError> {
        match self {
            OrderKind::Identity => Ok(ComparisonOrder::identity(p.len())),
            OrderKind::Frequency => table
                .map(|t| ComparisonOrder::frequency(p, t))
                .ok_or(OrderError::FrequencyTableRequired),
            OrderKind::PiH => Ok(ComparisonOrder::pi_h(p.len())),
            OrderKind::PiHs => Ok(ComparisonOrder::pi_hs(p, DEFAULT_SPACE)),
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            OrderKind::Identity => "identity",
            OrderKind::Frequency => "freq",
            OrderKind::PiH => "pih",
            OrderKind::PiHs => "pihs",
        }
    }
}

impl fmt::Display for OrderKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

/// Per-byte occurrence counts from a training corpus.
#[derive(Clone)]
pub struct FrequencyTable {
    counts: [u64; 256],
    total: u64,
}

impl FrequencyTable {
    pub fn from_counts(counts: [u64; 256]) -> Self {
        let total = counts.iter().sum();
        FrequencyTable { counts, total }
    }

    pub fn from_bytes(bytes: &[u8]) -> Self {
        let mut counts = [0u64; 256];
        for &b in bytes {
            counts[b as usize] += 1;
        }
        FrequencyTable {
            counts,
            total: bytes.len() as u64,
        }
    }

    #[inline]
    pub fn count(&self, byte: u8) -> u64 {
        self.counts[byte as usize]
    }

    #[inline]
    pub fn total(&self) -> u64 {
        self.total
    }

    /// Serializes as 256 lines of `byte_value count` (decimal).
    pub fn to_writer<W: Write>(&self, mut w: W) -> io::Result<()> {
        for (byte, count) in self.counts.iter().enumerate() {
            writeln!(w, "{byte} {count}")?;
        }
        Ok(())
    }

    /// Parses the 256-line `byte_value count` format. Every byte value
    /// must appear exactly once; malformed or extra lines are rejected.
    pub fn from_reader<R: BufRead>(r: R) -> Result<Self, FrequencyTableError> {
        let mut counts = [0u64; 256];
        let mut seen = [false; 256];
        let mut lines = 0usize;
        for (idx, line) in r.lines().enumerate() {
            let line = line.map_err(FrequencyTableError::Io)?;
            let lineno = idx + 1;
            if line.trim().is_empty() {
                return Err(FrequencyTableError::malformed(lineno, "empty line"));
            }
            let mut fields = line.split_whitespace();
            let byte = fields
                .next()
                .and_then(|f| f.parse::<u8>().ok())
                .ok_or_else(|| FrequencyTableError::malformed(lineno, "bad byte value"))?;
            let count = fields
                .next()
                .and_then(|f| f.parse::<u64>().ok())
                .ok_or_else(|| FrequencyTableError::malformed(lineno, "bad count"))?;
            if fields.next().is_some() {
                return Err(FrequencyTableError::malformed(lineno, "trailing fields"));
            }
            if seen[byte as usize] {
                return Err(FrequencyTableError::malformed(
                    lineno,
                    "duplicate byte value",
                ));
            }
            seen[byte as usize] = true;
            counts[byte as usize] = count;
            lines += 1;
        }
        if lines != 256 {
            return Err(FrequencyTableError::malformed(
                lines + 1,
                "expected 256 lines",
            ));
        }
        Ok(FrequencyTable::from_counts(counts))
    }

    pub fn save(&self, path: impl AsRef<Path>) -> io::Result<()> {
        self.to_writer(File::create(path)?)
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self, FrequencyTableError> {
        let file = File::open(path).map_err(FrequencyTableError::Io)?;
        FrequencyTable::from_reader(BufReader::new(file))
    }
}

impl fmt::Debug for FrequencyTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FrequencyTable")
            .field("total", &self.total)
            .finish()
    }
}

#[derive(Debug)]
pub enum FrequencyTableError {
    Io(io::Error),
    Malformed { line: usize, reason: &'static str },
}

impl FrequencyTableError {
    fn malformed(line: usize, reason: &'static str) -> Self {
        FrequencyTableError::Malformed { line, reason }
    }
}

impl fmt::Display for FrequencyTableError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FrequencyTableError::Io(e) => write!(f, "frequency table i/o error: {e}"),
            FrequencyTableError::Malformed { line, reason } => {
                write!(f, "frequency table line {line}: {reason}")
            }
        }
    }
}

impl std::error::Error for FrequencyTableError {}
