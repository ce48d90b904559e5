//! Regenerates the checked-in corpus fixtures under `fixtures/`.
//!
//! Four ~48 KB synthetic texts with pinned alphabet sizes (4, 19, 63,
//! 117), covering the corpus shapes the benchmarks care about: DNA-like
//! uniform, protein-like, English-like skewed, and a wide-alphabet
//! skewed text. Deterministic: rerunning reproduces identical files.
//!
//!     cargo run -p blockmatch --example gen_fixtures [out_dir]

use std::fs;
use std::path::{Path, PathBuf};

use blockmatch::corpus::{synth, Corpus};

const LEN: usize = 48 * 1024;

fn protein_weights() -> Vec<(u8, u32)> {
    // Rough amino-acid abundances, 19 letters (no Y).
    let table: &[(u8, u32)] = &[
        (b'L', 99),
        (b'A', 82),
        (b'G', 70),
        (b'V', 69),
        (b'E', 67),
        (b'S', 66),
        (b'K', 58),
        (b'I', 57),
        (b'D', 54),
        (b'T', 53),
        (b'R', 53),
        (b'P', 47),
        (b'N', 41),
        (b'F', 39),
        (b'Q', 38),
        (b'H', 23),
        (b'M', 22),
        (b'C', 14),
        (b'W', 11),
    ];
    table.to_vec()
}

fn english63_weights() -> Vec<(u8, u32)> {
    // Exactly 63 distinct bytes: space, newline, period, comma, a-z,
    // A-Z, digits 0-6. Space-dominant like prose.
    let mut w: Vec<(u8, u32)> = vec![(b' ', 170), (b'\n', 9), (b'.', 7), (b',', 8)];
    let lower: &[(u8, u32)] = &[
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
    ];
    w.extend_from_slice(lower);
    for c in b'A'..=b'Z' {
        w.push((c, 2));
    }
    for c in b'0'..=b'6' {
        w.push((c, 1));
    }
    w
}

fn wide117_weights() -> Vec<(u8, u32)> {
    // 117 distinct bytes: the 66 ASCII bytes below plus 51 high bytes,
    // mimicking an 8-bit-encoded natural-language text.
    let mut w = english63_weights();
    for c in b'7'..=b'9' {
        w.push((c, 1));
    }
    debug_assert_eq!(w.len(), 66);
    for c in 0xC0u8..=0xF2 {
        w.push((c, 4));
    }
    w
}

fn write_fixture(dir: &Path, name: &str, weights: &[(u8, u32)], seed: u64, sigma: usize) {
    let mut bytes = synth::weighted_bytes(LEN, weights, seed);
    let alphabet: Vec<u8> = weights.iter().map(|&(b, _)| b).collect();
    synth::cover_alphabet(&mut bytes, &alphabet, seed ^ 0xA1FA);
    let corpus = Corpus::from_bytes(name, bytes.clone());
    assert_eq!(corpus.alphabet_size(), sigma, "{name}");
    let path = dir.join(name);
    fs::write(&path, &bytes).unwrap();
    println!("{} ({} bytes, sigma {})", path.display(), bytes.len(), sigma);
}

fn main() {
    let dir = std::env::args()
        .nth(1)
        .map(PathBuf::from)
        .unwrap_or_else(|| PathBuf::from("fixtures"));
    fs::create_dir_all(&dir).unwrap();

    let dna: Vec<(u8, u32)> = b"acgt".iter().map(|&b| (b, 1)).collect();
    write_fixture(&dir, "dna4.txt", &dna, 0xD4A, 4);
    write_fixture(&dir, "protein19.txt", &protein_weights(), 0x19AA, 19);
    write_fixture(&dir, "english63.txt", &english63_weights(), 0xE63, 63);
    write_fixture(&dir, "wide117.txt", &wide117_weights(), 0x117, 117);
}
