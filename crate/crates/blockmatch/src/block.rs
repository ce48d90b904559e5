//! Width-α byte-vector comparison: compare α consecutive text bytes against
//! α copies of one pattern byte and return the equality bits as an integer.
//!
//! Width 16 maps to a 128-bit compare + movemask, width 32 to the 256-bit
//! equivalents (detected at runtime), and width 8 is a portable scalar
//! path that is always available. All widths share one contract; when the
//! hardware facility for a width is missing the scalar path computes the
//! same mask, but [`capability_probe`] reports only widths with hardware
//! backing (plus the always-present width 8) so engines can refuse
//! unaccelerated configurations up front.

use std::fmt;

use crate::types::{MatchMask, Pattern, Text};

/// Number of alignments advanced per block step.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum BlockWidth {
    W8,
    W16,
    W32,
}

impl BlockWidth {
    pub const ALL: [BlockWidth; 3] = [BlockWidth::W8, BlockWidth::W16, BlockWidth::W32];

    #[inline]
    pub fn alpha(self) -> usize {
        match self {
            BlockWidth::W8 => 8,
            BlockWidth::W16 => 16,
            BlockWidth::W32 => 32,
        }
    }

    /// All-ones mask of this width.
    #[inline]
    pub fn full_mask(self) -> u32 {
        match self {
            BlockWidth::W8 => 0xFF,
            BlockWidth::W16 => 0xFFFF,
            BlockWidth::W32 => u32::MAX,
        }
    }

    pub fn from_alpha(alpha: usize) -> Option<BlockWidth> {
        match alpha {
            8 => Some(BlockWidth::W8),
            16 => Some(BlockWidth::W16),
            32 => Some(BlockWidth::W32),
            _ => None,
        }
    }

    /// Whether this width is usable on the current machine.
    pub fn is_available(self) -> bool {
        match self {
            BlockWidth::W8 => true,
            BlockWidth::W16 => cfg!(target_arch = "x86_64"),
            BlockWidth::W32 => avx2_available(),
        }
    }
}

impl fmt::Display for BlockWidth {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.alpha())
    }
}

#[cfg(target_arch = "x86_64")]
fn avx2_available() -> bool {
    use std::sync::OnceLock;
    static AVX2: OnceLock<bool> = OnceLock::new();
    *AVX2.get_or_init(|| is_x86_feature_detected!("avx2"))
}

#[cfg(not(target_arch = "x86_64"))]
fn avx2_available() -> bool {
    false
}

/// Widths usable on this machine, ascending. Always contains width 8.
pub fn capability_probe() -> Vec<BlockWidth> {
    BlockWidth::ALL
        .into_iter()
        .filter(|w| w.is_available())
        .collect()
}

/// Widest available width.
pub fn best_available() -> BlockWidth {
    *capability_probe().last().expect("width 8 is always present")
}

/// Compares the α text bytes starting at `t[i + j - 1]` against `p[j]`
/// (both indices 1-based) and returns the mask whose bit `k` is set iff
/// `t[i + j - 1 + k] = p[j]`. Constant time regardless of how many bytes
/// match.
///
/// # Panics
///
/// The α bytes read must lie in bounds (`i + j - 2 + α <= n`) and `j`
/// must be a valid pattern position; violations are caller errors and
/// panic.
///
/// ```
/// use blockmatch::{block_compare, BlockWidth, Pattern, Text};
/// let t = Text::from("aabcdxxx");
/// let p = Pattern::new(b"abcd".to_vec()).unwrap();
/// let mask = block_compare(&t, 1, &p, 1, BlockWidth::W8);
/// assert_eq!(mask.bits(), 0b0000_0011); // t[1] and t[2] equal p[1] = 'a'
/// ```
pub fn block_compare(t: &Text, i: usize, p: &Pattern, j: usize, width: BlockWidth) -> MatchMask {
    assert!(i >= 1, "text index is 1-based");
    assert!(
        j >= 1 && j <= p.len(),
        "pattern position {j} out of range 1..={}",
        p.len()
    );
    let offset = i + j - 2;
    assert!(
        offset + width.alpha() <= t.len(),
        "block read [{}, {}) exceeds text length {}",
        offset,
        offset + width.alpha(),
        t.len()
    );
    let bits = compare_mask(t.as_bytes(), offset, p.as_bytes()[j - 1], width);
    MatchMask::new(bits, width)
}

/// Raw mask over `text[offset..offset + alpha]`; bounds are enforced by
/// slice indexing.
#[inline]
pub(crate) fn compare_mask(text: &[u8], offset: usize, byte: u8, width: BlockWidth) -> u32 {
    let window = &text[offset..offset + width.alpha()];
    match width {
        BlockWidth::W8 => scalar_mask(window, byte),
        BlockWidth::W16 => {
            #[cfg(target_arch = "x86_64")]
            {
                mask16_sse2(window, byte)
            }
            #[cfg(not(target_arch = "x86_64"))]
            {
                scalar_mask(window, byte)
            }
        }
        BlockWidth::W32 => {
            #[cfg(target_arch = "x86_64")]
            {
                if avx2_available() {
                    unsafe { mask32_avx2(window, byte) }
                } else {
                    scalar_mask(window, byte)
                }
            }
            #[cfg(not(target_arch = "x86_64"))]
            {
                scalar_mask(window, byte)
            }
        }
    }
}

#[inline]
fn scalar_mask(window: &[u8], byte: u8) -> u32 {
    let mut mask = 0u32;
    for (k, &b) in window.iter().enumerate() {
        mask |= ((b == byte) as u32) << k;
    }
    mask
}

#[cfg(target_arch = "x86_64")]
#[inline]
fn mask16_sse2(window: &[u8], byte: u8) -> u32 {
    use std::arch::x86_64::*;
    debug_assert!(window.len() >= 16);
    // SSE2 is part of the x86-64 baseline. The load is unaligned by
    // contract; the slice guarantees 16 readable bytes.
    unsafe {
        let v = _mm_loadu_si128(window.as_ptr() as *const __m128i);
        let b = _mm_set1_epi8(byte as i8);
        (_mm_movemask_epi8(_mm_cmpeq_epi8(v, b)) as u32) & 0xFFFF
    }
}

#[cfg(target_arch = "x86_64")]
#[target_feature(enable = "avx2")]
unsafe fn mask32_avx2(window: &[u8], byte: u8) -> u32 {
    use std::arch::x86_64::*;
    debug_assert!(window.len() >= 32);
    let v = _mm256_loadu_si256(window.as_ptr() as *const __m256i);
    let b = _mm256_set1_epi8(byte as i8);
    _mm256_movemask_epi8(_mm256_cmpeq_epi8(v, b)) as u32
}

#[cfg(test)]
mod tests {
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    use super::*;

    fn pat(bytes: &[u8]) -> Pattern {
        Pattern::new(bytes.to_vec()).unwrap()
    }

    // Independent bit-by-bit oracle for the mask contract.
    fn mask_oracle(t: &[u8], i: usize, p: &[u8], j: usize, alpha: usize) -> u32 {
        let mut mask = 0u32;
        for k in 0..alpha {
            if t[i + j - 2 + k] == p[j - 1] {
                mask |= 1 << k;
            }
        }
        mask
    }

    #[test]
    fn probe_always_contains_width_8() {
        let widths = capability_probe();
        assert!(widths.contains(&BlockWidth::W8));
        // Ascending and deduplicated by construction.
        let mut sorted = widths.clone();
        sorted.sort();
        sorted.dedup();
        assert_eq!(widths, sorted);
    }

    #[cfg(target_arch = "x86_64")]
    #[test]
    fn probe_reports_vector_widths_on_x86_64() {
        let widths = capability_probe();
        assert!(widths.contains(&BlockWidth::W16));
        if is_x86_feature_detected!("avx2") {
            assert!(widths.contains(&BlockWidth::W32));
            assert_eq!(best_available(), BlockWidth::W32);
        }
    }

    #[test]
    fn broadcast_all_equal() {
        let t = Text::from("aaaaaaaa");
        let m = block_compare(&t, 1, &pat(b"a"), 1, BlockWidth::W8);
        assert_eq!(m.bits(), 0b1111_1111);
    }

    #[test]
    fn no_byte_equal() {
        let t = Text::from("bbbbbbbb");
        let m = block_compare(&t, 1, &pat(b"a"), 1, BlockWidth::W8);
        assert_eq!(m.bits(), 0);
    }

    #[test]
    fn partial_match_mask() {
        let t = Text::from("aabcdxxx");
        let p = pat(b"abcd");
        let m = block_compare(&t, 1, &p, 1, BlockWidth::W8);
        assert_eq!(m.bits(), mask_oracle(t.as_bytes(), 1, p.as_bytes(), 1, 8));
        assert_eq!(m.bits(), 0b11);
    }

    #[test]
    fn nonunit_offsets() {
        // i=3, j=2 reads t[4..12) against p[2] = 'b'.
        let t = Text::from("xxxbabbbabbxx");
        let p = pat(b"ab");
        let m = block_compare(&t, 3, &p, 2, BlockWidth::W8);
        assert_eq!(m.bits(), mask_oracle(t.as_bytes(), 3, p.as_bytes(), 2, 8));
    }

    #[test]
    fn matches_oracle_on_random_inputs_all_widths() {
        let mut rng = ChaCha8Rng::seed_from_u64(0xB10C);
        for _ in 0..2000 {
            let n = rng.gen_range(32usize..96);
            let t: Vec<u8> = (0..n).map(|_| rng.gen_range(b'a'..=b'd')).collect();
            let m = rng.gen_range(1..8);
            let p: Vec<u8> = (0..m).map(|_| rng.gen_range(b'a'..=b'd')).collect();
            for width in BlockWidth::ALL {
                let alpha = width.alpha();
                let j = rng.gen_range(1..=m);
                // Largest i keeping the α-byte read in bounds.
                let max_i = (n + 2).saturating_sub(alpha + j);
                if max_i < 1 {
                    continue;
                }
                let i = rng.gen_range(1..=max_i);
                let text = Text::new(t.clone());
                let pattern = Pattern::new(p.clone()).unwrap();
                let got = block_compare(&text, i, &pattern, j, width);
                assert_eq!(got.bits(), mask_oracle(&t, i, &p, j, alpha));
                assert_eq!(got.width(), width);
            }
        }
    }

    #[test]
    fn width_independence() {
        // Low α1 bits of the α2 result equal the α1 result.
        let mut rng = ChaCha8Rng::seed_from_u64(0x71D);
        for _ in 0..500 {
            let t: Vec<u8> = (0..64).map(|_| rng.gen_range(b'a'..=b'c')).collect();
            let text = Text::new(t);
            let p = pat(&[rng.gen_range(b'a'..=b'c')]);
            let i = rng.gen_range(1..=32);
            let m8 = block_compare(&text, i, &p, 1, BlockWidth::W8).bits();
            let m16 = block_compare(&text, i, &p, 1, BlockWidth::W16).bits();
            let m32 = block_compare(&text, i, &p, 1, BlockWidth::W32).bits();
            assert_eq!(m16 & 0xFF, m8);
            assert_eq!(m32 & 0xFFFF, m16);
        }
    }

    #[test]
    #[should_panic(expected = "exceeds text length")]
    fn out_of_bounds_window_is_a_contract_violation() {
        let t = Text::from("short");
        block_compare(&t, 1, &pat(b"a"), 1, BlockWidth::W8);
    }

    #[test]
    #[should_panic(expected = "out of range")]
    fn pattern_position_out_of_range_panics() {
        let t = Text::from("aaaaaaaaaaaaaaaa");
        block_compare(&t, 1, &pat(b"ab"), 3, BlockWidth::W8);
    }
}
