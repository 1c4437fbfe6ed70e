//! Exhaustive reference solver and naive string predicates.
//!
//! Nothing here touches the automaton or the DP, so agreement between the
//! two is independent evidence.

use crate::error::{Error, Result};

pub const MAX_INPUT_LEN: usize = 20;
pub const MAX_PATTERN_TOTAL: usize = 12;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OracleResult {
    pub feasible: bool,
    pub length: Option<usize>,
    /// Lexicographically smallest optimal witness.
    pub witness: Option<Vec<u8>>,
    /// Number of distinct optimal witnesses.
    pub optimal_count: usize,
}

/// Greedy two-pointer subsequence test.
pub fn is_subsequence(z: &[u8], x: &[u8]) -> bool {
    let mut it = x.iter();
    z.iter().all(|c| it.any(|b| b == c))
}

fn contains_substring(z: &[u8], p: &[u8]) -> bool {
    p.is_empty() || (p.len() <= z.len() && z.windows(p.len()).any(|w| w == p))
}

/// Every pattern occurs contiguously in `z`.
pub fn contains_substring_all<P: AsRef<[u8]>>(z: &[u8], patterns: &[P]) -> bool {
    patterns.iter().all(|p| contains_substring(z, p.as_ref()))
}

/// Enumerates every distinct subsequence of the shorter input that is also a
/// subsequence of the longer one and keeps the best constrained candidate.
pub fn brute_force_solve<P: AsRef<[u8]>>(
    x: &[u8],
    y: &[u8],
    patterns: &[P],
) -> Result<OracleResult> {
    if x.len() > MAX_INPUT_LEN || y.len() > MAX_INPUT_LEN {
        return Err(Error::InstanceTooLarge(format!(
            "input lengths {} and {} exceed {MAX_INPUT_LEN}",
            x.len(),
            y.len()
        )));
    }
    let r: usize = patterns.iter().map(|p| p.as_ref().len()).sum();
    if r > MAX_PATTERN_TOTAL {
        return Err(Error::InstanceTooLarge(format!(
            "total pattern length {r} exceeds {MAX_PATTERN_TOTAL}"
        )));
    }
    if let Some(i) = patterns.iter().position(|p| p.as_ref().is_empty()) {
        return Err(Error::EmptyPattern { index: i });
    }

    let (short, long) = if x.len() <= y.len() { (x, y) } else { (y, x) };
    let mut search = Search {
        short,
        long,
        patterns: patterns.iter().map(|p| p.as_ref()).collect(),
        best: None,
        count: 0,
    };
    let mut prefix = Vec::with_capacity(short.len());
    search.visit(&mut prefix, 0);

    let length = search.best.as_ref().map(Vec::len);
    Ok(OracleResult {
        feasible: length.is_some(),
        length,
        witness: search.best,
        optimal_count: search.count,
    })
}

struct Search<'a> {
    short: &'a [u8],
    long: &'a [u8],
    patterns: Vec<&'a [u8]>,
    best: Option<Vec<u8>>,
    count: usize,
}

impl Search<'_> {
    /// `prefix` is a common subsequence embedded in `short[..from]`. Each
    /// distinct extension is generated once by jumping to the first
    /// occurrence of each byte at or after `from`.
    fn visit(&mut self, prefix: &mut Vec<u8>, from: usize) {
        self.consider(prefix);
        let mut seen = [false; 256];
        for k in from..self.short.len() {
            let c = self.short[k];
            if seen[c as usize] {
                continue;
            }
            seen[c as usize] = true;
            prefix.push(c);
            if is_subsequence(prefix, self.long) {
                self.visit(prefix, k + 1);
            }
            prefix.pop();
        }
    }

    fn consider(&mut self, z: &[u8]) {
        if !contains_substring_all(z, &self.patterns) {
            return;
        }
        match &self.best {
            Some(b) if b.len() > z.len() => {}
            Some(b) if b.len() == z.len() => {
                self.count += 1;
                if z < b.as_slice() {
                    self.best = Some(z.to_vec());
                }
            }
            _ => {
                self.best = Some(z.to_vec());
                self.count = 1;
            }
        }
    }
}

/// Textbook quadratic LCS length.
pub fn lcs_length(x: &[u8], y: &[u8]) -> usize {
    let mut row = vec![0usize; y.len() + 1];
    for &a in x {
        let mut diag = 0;
        for (j, &b) in y.iter().enumerate() {
            let up = row[j + 1];
            row[j + 1] = if a == b { diag + 1 } else { up.max(row[j]) };
            diag = up;
        }
    }
    row[y.len()]
}
