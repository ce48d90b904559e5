//! Shared domain types: searched text, pattern, match masks and reports.

use std::fmt;

use crate::block::BlockWidth;

/// Text being searched. Arbitrary bytes; no encoding is assumed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Text(Vec<u8>);

impl Text {
    pub fn new(bytes: impl Into<Vec<u8>>) -> Self {
        Text(bytes.into())
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.0.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    #[inline]
    pub fn as_bytes(&self) -> &[u8] {
        &self.0
    }
}

impl From<Vec<u8>> for Text {
    fn from(v: Vec<u8>) -> Self {
        Text(v)
    }
}

impl From<&[u8]> for Text {
    fn from(v: &[u8]) -> Self {
        Text(v.to_vec())
    }
}

impl From<&str> for Text {
    fn from(s: &str) -> Self {
        Text(s.as_bytes().to_vec())
    }
}

/// Pattern being searched for. Never empty.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Pattern(Vec<u8>);

impl Pattern {
    pub fn new(bytes: impl Into<Vec<u8>>) -> Result<Self, PatternError> {
        let bytes = bytes.into();
        if bytes.is_empty() {
            return Err(PatternError::Empty);
        }
        Ok(Pattern(bytes))
    }

    #[inline]
    #[allow(clippy::len_without_is_empty)] // never empty by construction
    pub fn len(&self) -> usize {
        self.0.len()
    }

    #[inline]
    pub fn as_bytes(&self) -> &[u8] {
        &self.0
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PatternError {
    Empty,
}

impl fmt::Display for PatternError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PatternError::Empty => write!(f, "pattern must contain at least one byte"),
        }
    }
}

impl std::error::Error for PatternError {}

/// Per-block equality mask: bit `k` set iff alignment `i + k` still matches.
///
/// Only the low `width` bits may be set.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct MatchMask {
    bits: u32,
    width: BlockWidth,
}

impl MatchMask {
    #[inline]
    pub fn new(bits: u32, width: BlockWidth) -> Self {
        MatchMask {
            bits: bits & width.full_mask(),
            width,
        }
    }

    #[inline]
    pub fn bits(self) -> u32 {
        self.bits
    }

    #[inline]
    pub fn width(self) -> BlockWidth {
        self.width
    }

    /// Number of set bits, i.e. surviving alignments in this block.
    #[inline]
    pub fn popcount(self) -> u32 {
        self.bits.count_ones()
    }

    #[inline]
    pub fn is_zero(self) -> bool {
        self.bits == 0
    }
}

/// Comparison-work counters filled in when a search is instrumented.
///
/// `symbol` counts single byte comparisons (scalar engine, including the
/// scalar tail of a block search). `block` counts vector compare calls,
/// each of which touches `width` bytes. The two are never mixed.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct ComparisonCounts {
    pub symbol: u64,
    pub block: u64,
}

/// Result of a search: occurrence count, optional 1-based start positions
/// (ascending), optional instrumentation counters.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchReport {
    pub count: usize,
    pub positions: Option<Vec<usize>>,
    pub comparisons: Option<ComparisonCounts>,
}

impl SearchReport {
    pub fn counting(count: usize) -> Self {
        SearchReport {
            count,
            positions: None,
            comparisons: None,
        }
    }
}
