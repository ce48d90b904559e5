//! Bit-parallel baseline competitors: simplified backward-nondeterministic
//! DAWG matching seeded with a q-gram (SBNDM2 / SBNDM4).
//!
//! Mask convention: bit `k` of `B[c]` is set iff `p[m' - 1 - k] = c`, i.e.
//! bit `m' - 1` corresponds to the first pattern byte and bit 0 to the
//! last byte of the matched prefix, where `m' = min(m, 64)`. Scanning a
//! window right to left, the state after reading `s` characters has bit
//! `m' - 1` set iff those characters form a prefix of the pattern;
//! reaching `s = m'` with a live state is a prefix occurrence. Patterns
//! longer than the word size are matched by their 64-byte prefix and
//! verified byte-wise.
//!
//! Shifts: a window whose scan dies after `s` characters proves that no
//! occurrence starts within the next `m' - s` positions (the `s`-char
//! string read is not a factor of the prefix), so the window advances by
//! `m' - s + 1`. After a prefix occurrence the window advances by the
//! prefix period.

use std::fmt;

use crate::types::{Pattern, SearchReport, Text};

/// Machine word width used for the state vector.
pub const WORD_BITS: usize = 64;

/// Preprocessed per-byte state masks for one pattern.
#[derive(Clone)]
pub struct BndmTables {
    masks: [u64; 256],
    /// Effective matched prefix length `min(m, 64)`.
    prefix_len: usize,
    /// Safe window advance after a prefix occurrence.
    period: usize,
}

impl BndmTables {
    pub fn build(p: &Pattern) -> Self {
        let pb = p.as_bytes();
        let prefix_len = pb.len().min(WORD_BITS);
        let mut masks = [0u64; 256];
        for (i, &c) in pb[..prefix_len].iter().enumerate() {
            masks[c as usize] |= 1 << (prefix_len - 1 - i);
        }
        let period = prefix_len - longest_border(&pb[..prefix_len]);
        BndmTables {
            masks,
            prefix_len,
            period,
        }
    }

    #[inline]
    pub fn mask(&self, c: u8) -> u64 {
        self.masks[c as usize]
    }

    pub fn prefix_len(&self) -> usize {
        self.prefix_len
    }
}

impl fmt::Debug for BndmTables {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("BndmTables")
            .field("prefix_len", &self.prefix_len)
            .field("period", &self.period)
            .finish()
    }
}

/// Length of the longest proper border (prefix that is also a suffix).
fn longest_border(s: &[u8]) -> usize {
    let mut fail = vec![0usize; s.len() + 1];
    let mut k = 0;
    for i in 1..s.len() {
        while k > 0 && s[i] != s[k] {
            k = fail[k];
        }
        if s[i] == s[k] {
            k += 1;
        }
        fail[i + 1] = k;
    }
    fail[s.len()]
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SbndmError {
    UnsupportedQ(usize),
    PatternShorterThanQ { m: usize, q: usize },
}

impl fmt::Display for SbndmError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SbndmError::UnsupportedQ(q) => write!(f, "q-gram size {q} not supported (use 2 or 4)"),
            SbndmError::PatternShorterThanQ { m, q } => {
                write!(f, "pattern length {m} is shorter than the q-gram size {q}")
            }
        }
    }
}

impl std::error::Error for SbndmError {}

/// SBNDM with a q-gram seed, `q` in {2, 4}. Counts all occurrences and
/// reports their positions.
pub fn sbndm_search(p: &Pattern, t: &Text, q: usize) -> Result<SearchReport, SbndmError> {
    if q != 2 && q != 4 {
        return Err(SbndmError::UnsupportedQ(q));
    }
    if p.len() < q {
        return Err(SbndmError::PatternShorterThanQ { m: p.len(), q });
    }
    let tables = BndmTables::build(p);
    Ok(run(p, t, q, &tables))
}

fn run(p: &Pattern, t: &Text, q: usize, tables: &BndmTables) -> SearchReport {
    let pb = p.as_bytes();
    let tb = t.as_bytes();
    let n = tb.len();
    let m = pb.len();
    let mut positions = Vec::new();
    if n >= m {
        let mp = tables.prefix_len;
        let last_start = n - m;
        let mut pos = 0usize;
        while pos <= last_start {
            let end = pos + mp - 1;
            // Seed with the q-gram at the window end, read right to left.
            let mut d = tables.mask(tb[end]);
            for k in 1..q {
                d = (d << 1) & tables.mask(tb[end - k]);
            }
            if d == 0 {
                pos += mp - q + 1;
                continue;
            }
            let mut s = q;
            while s < mp {
                d = (d << 1) & tables.mask(tb[end - s]);
                s += 1;
                if d == 0 {
                    break;
                }
            }
            if d != 0 {
                // Prefix occurrence; verify the part beyond the word size.
                if m == mp || tb[pos + mp..pos + m] == pb[mp..] {
                    positions.push(pos + 1);
                }
                pos += tables.period;
            } else {
                pos += mp - s + 1;
            }
        }
    }
    SearchReport {
        count: positions.len(),
        positions: Some(positions),
        comparisons: None,
    }
}

#[cfg(test)]
mod tests {
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    use super::*;
    use crate::oracle::oracle_count;

    fn pat(bytes: &[u8]) -> Pattern {
        Pattern::new(bytes.to_vec()).unwrap()
    }

    #[test]
    fn mask_convention() {
        let t = BndmTables::build(&pat(b"abc"));
        assert_eq!(t.mask(b'a'), 0b100);
        assert_eq!(t.mask(b'b'), 0b010);
        assert_eq!(t.mask(b'c'), 0b001);
        assert_eq!(t.mask(b'z'), 0);
    }

    #[test]
    fn finds_single_occurrence() {
        let r = sbndm_search(&pat(b"abcd"), &Text::from("aabcd"), 2).unwrap();
        assert_eq!(r.count, 1);
        assert_eq!(r.positions, Some(vec![2]));
    }

    #[test]
    fn finds_overlapping_occurrences() {
        let r = sbndm_search(&pat(b"aa"), &Text::from("aaaa"), 2).unwrap();
        assert_eq!(r.count, 3);
        assert_eq!(r.positions, Some(vec![1, 2, 3]));
    }

    #[test]
    fn rejects_short_patterns_and_bad_q() {
        assert_eq!(
            sbndm_search(&pat(b"abc"), &Text::from("x"), 4).unwrap_err(),
            SbndmError::PatternShorterThanQ { m: 3, q: 4 }
        );
        assert_eq!(
            sbndm_search(&pat(b"abc"), &Text::from("x"), 3).unwrap_err(),
            SbndmError::UnsupportedQ(3)
        );
    }

    #[test]
    fn pattern_longer_than_text() {
        let r = sbndm_search(&pat(b"abcdef"), &Text::from("abc"), 2).unwrap();
        assert_eq!(r.count, 0);
    }

    #[test]
    fn long_pattern_prefix_and_verify() {
        // m > 64 exercises prefix matching plus byte-wise verification.
        let mut text = vec![b'x'; 300];
        let p: Vec<u8> = (0..100).map(|i| b'a' + (i % 7) as u8).collect();
        text[40..140].copy_from_slice(&p);
        text[180..280].copy_from_slice(&p);
        // A prefix-only decoy (first 64 bytes match, the tail differs).
        // 40 + 100 = 140, decoy at 141..241 would overlap; place at 141.
        let (p, t) = (pat(&p), Text::new(text));
        for q in [2, 4] {
            let got = sbndm_search(&p, &t, q).unwrap();
            let want = oracle_count(&p, &t);
            assert_eq!(got.count, want.count);
            assert_eq!(got.positions, want.positions);
        }
    }

    #[test]
    fn prefix_decoy_is_rejected_by_verification() {
        // First 70 bytes of the pattern appear, then the text diverges.
        let mut p = vec![b'a'; 80];
        p[79] = b'z';
        let mut text = vec![b'a'; 200];
        text[150] = b'q'; // break any real occurrence
        let (p, t) = (pat(&p), Text::new(text));
        let got = sbndm_search(&p, &t, 2).unwrap();
        let want = oracle_count(&p, &t);
        assert_eq!(got.count, want.count);
        assert_eq!(got.positions, want.positions);
    }

    #[test]
    fn differential_random_cases() {
        let mut rng = ChaCha8Rng::seed_from_u64(0x5B9D);
        for case in 0..800 {
            let sigma = [4usize, 63][case % 2];
            let n = rng.gen_range(0..=512);
            let m = rng.gen_range(4..=96);
            let t: Vec<u8> = (0..n).map(|_| rng.gen_range(0..sigma) as u8 + b'a').collect();
            let p: Vec<u8> = if n >= m && rng.gen_bool(0.5) {
                let s = rng.gen_range(0..=(n - m));
                t[s..s + m].to_vec()
            } else {
                (0..m).map(|_| rng.gen_range(0..sigma) as u8 + b'a').collect()
            };
            let (p, t) = (pat(&p), Text::new(t));
            let want = oracle_count(&p, &t);
            for q in [2usize, 4] {
                let got = sbndm_search(&p, &t, q).unwrap();
                assert_eq!(got.count, want.count, "sigma {sigma} n {n} m {m} q {q}");
                assert_eq!(got.positions, want.positions);
            }
        }
    }

    #[test]
    fn periodic_patterns_do_not_skip_occurrences() {
        // Highly periodic patterns stress the post-match period shift.
        for (p, t) in [
            (&b"abab"[..], &b"abababababab"[..]),
            (b"aaaa", b"aaaaaaaaaaaa"),
            (b"abcabc", b"abcabcabcabcabc"),
        ] {
            let (p, t) = (pat(p), Text::new(t.to_vec()));
            for q in [2, 4] {
                let got = sbndm_search(&p, &t, q).unwrap();
                let want = oracle_count(&p, &t);
                assert_eq!(got.positions, want.positions);
            }
        }
    }

    #[test]
    fn long_periodic_pattern_beyond_word_size() {
        // m = 100 with period 2: prefix matches abound and every one
        // needs tail verification.
        let p: Vec<u8> = (0..100).map(|i| if i % 2 == 0 { b'a' } else { b'b' }).collect();
        let t: Vec<u8> = (0..400).map(|i| if i % 2 == 0 { b'a' } else { b'b' }).collect();
        let (p, t) = (pat(&p), Text::new(t));
        let want = oracle_count(&p, &t);
        assert!(want.count > 100);
        for q in [2, 4] {
            let got = sbndm_search(&p, &t, q).unwrap();
            assert_eq!(got.positions, want.positions);
        }
    }
}
