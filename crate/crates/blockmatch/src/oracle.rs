//! Brute-force reference matcher every other engine is tested against.

use crate::types::{Pattern, SearchReport, Text};

/// Counts every occurrence of `p` in `t` by a straightforward double loop
/// and always reports positions (1-based, ascending). Overlapping
/// occurrences are counted; `m > n` and `n = 0` yield count 0.
///
/// ```
/// use blockmatch::{oracle_count, Pattern, Text};
/// let report = oracle_count(&Pattern::new(b"abcd".to_vec()).unwrap(), &Text::from("aabcd"));
/// assert_eq!(report.count, 1);
/// assert_eq!(report.positions.as_deref(), Some(&[2][..]));
/// ```
pub fn oracle_count(p: &Pattern, t: &Text) -> SearchReport {
    let pb = p.as_bytes();
    let tb = t.as_bytes();
    let mut positions = Vec::new();
    if tb.len() >= pb.len() {
        for i in 0..=(tb.len() - pb.len()) {
            let mut matched = true;
            for j in 0..pb.len() {
                if tb[i + j] != pb[j] {
                    matched = false;
                    break;
                }
            }
            if matched {
                positions.push(i + 1);
            }
        }
    }
    SearchReport {
        count: positions.len(),
        positions: Some(positions),
        comparisons: None,
    }
}
