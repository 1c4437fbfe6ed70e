#![allow(dead_code)]

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// All distinct prefixes of all patterns, including the empty string.
pub fn prefixes(patterns: &[Vec<u8>]) -> Vec<Vec<u8>> {
    let mut out: Vec<Vec<u8>> = patterns
        .iter()
        .flat_map(|p| (0..=p.len()).map(move |k| p[..k].to_vec()))
        .collect();
    out.push(Vec::new());
    out.sort();
    out.dedup();
    out
}

/// Longest suffix of `s` (strictly shorter when `proper`) that is a pattern prefix.
pub fn longest_prefix_suffix(patterns: &[Vec<u8>], s: &[u8], proper: bool) -> Vec<u8> {
    let all = prefixes(patterns);
    let start = usize::from(proper && !s.is_empty());
    (start..=s.len())
        .map(|k| &s[k..])
        .find(|suf| all.iter().any(|p| p.as_slice() == *suf))
        .unwrap_or_default()
        .to_vec()
}

pub fn is_substring(needle: &[u8], hay: &[u8]) -> bool {
    needle.is_empty() || hay.windows(needle.len()).any(|w| w == needle)
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_string(rng: &mut ChaCha8Rng, max_len: usize, alphabet: u8) -> Vec<u8> {
    let len = rng.gen_range(0..=max_len);
    (0..len)
        .map(|_| b'a' + rng.gen_range(0..alphabet))
        .collect()
}

pub fn random_patterns(
    rng: &mut ChaCha8Rng,
    max_d: usize,
    max_len: usize,
    alphabet: u8,
) -> Vec<Vec<u8>> {
    let d = rng.gen_range(0..=max_d);
    (0..d)
        .map(|_| {
            let len = rng.gen_range(1..=max_len);
            (0..len)
                .map(|_| b'a' + rng.gen_range(0..alphabet))
                .collect()
        })
        .collect()
}
