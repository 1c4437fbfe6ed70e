//! Seeded growth benchmark: fixed constraint shape, doubling input sizes.

use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::automaton::{ConstraintSet, KeywordTree};
use crate::error::{Error, Result};
use crate::solver::{solve_with_tree, SolveOptions, DEFAULT_MEMORY_CAP};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BenchConfig {
    /// Input lengths; each run uses `n = m = size`.
    pub sizes: Vec<usize>,
    pub repeats: usize,
    pub d: usize,
    pub pattern_len: usize,
    pub alphabet: u8,
    pub seed: u64,
    pub memory_cap: u64,
}

impl Default for BenchConfig {
    fn default() -> Self {
        BenchConfig {
            sizes: vec![64, 128, 256],
            repeats: 3,
            d: 2,
            pattern_len: 3,
            alphabet: 4,
            seed: 0x5eed,
            memory_cap: DEFAULT_MEMORY_CAP,
        }
    }
}

impl BenchConfig {
    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidBenchConfig(msg));
        if self.sizes.is_empty() {
            return bad("no sizes given".into());
        }
        if self.sizes.contains(&0) {
            return bad("sizes must be positive".into());
        }
        if self.sizes.windows(2).any(|w| w[0] >= w[1]) {
            return bad("sizes must be strictly ascending".into());
        }
        if self.repeats == 0 {
            return bad("repeats must be at least 1".into());
        }
        if !(1..=26).contains(&self.alphabet) {
            return bad(format!("alphabet size {} outside 1..=26", self.alphabet));
        }
        if self.d > 0 && self.pattern_len == 0 {
            return bad("pattern length must be positive".into());
        }
        if self.d > 0 && self.pattern_len > self.sizes[0] {
            return bad(format!(
                "pattern length {} exceeds the smallest size {}",
                self.pattern_len, self.sizes[0]
            ));
        }
        let distinct = (self.alphabet as f64).powi(self.pattern_len as i32);
        if self.d as f64 > distinct {
            return bad(format!(
                "{} distinct patterns of length {} do not exist over {} letters",
                self.d, self.pattern_len, self.alphabet
            ));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Instance {
    pub x: Vec<u8>,
    pub y: Vec<u8>,
    pub constraints: ConstraintSet,
}

const MAX_DRAWS: usize = 10_000;

/// Deterministic in `(seed, size, repeat)`. Constraints are distinct
/// substrings of `x`, so most instances are feasible.
pub fn generate(cfg: &BenchConfig, size: usize, repeat: usize) -> Result<Instance> {
    let mut rng = ChaCha8Rng::seed_from_u64(
        cfg.seed
            ^ (size as u64).wrapping_mul(0x9e37_79b9_7f4a_7c15)
            ^ (repeat as u64).rotate_left(32),
    );
    let draw = |rng: &mut ChaCha8Rng| -> Vec<u8> {
        (0..size)
            .map(|_| b'a' + rng.gen_range(0..cfg.alphabet))
            .collect()
    };
    let x = draw(&mut rng);
    let y = draw(&mut rng);

    let mut patterns: Vec<Vec<u8>> = Vec::with_capacity(cfg.d);
    let mut draws = 0;
    while patterns.len() < cfg.d {
        draws += 1;
        if draws > MAX_DRAWS {
            return Err(Error::InvalidBenchConfig(format!(
                "could not draw {} distinct substrings of length {} from a size-{size} input",
                cfg.d, cfg.pattern_len
            )));
        }
        let start = rng.gen_range(0..=size - cfg.pattern_len);
        let p = x[start..start + cfg.pattern_len].to_vec();
        if !patterns.contains(&p) {
            patterns.push(p);
        }
    }
    let constraints = ConstraintSet::with_limit(&patterns, cfg.d.max(1))?;
    Ok(Instance { x, y, constraints })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BenchRecord {
    pub size: usize,
    pub repeat: usize,
    pub n: usize,
    pub m: usize,
    pub d: usize,
    pub r: usize,
    pub elapsed_ms: f64,
    pub live_states: usize,
    pub cell_updates: u64,
    pub feasible: bool,
    pub length: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

impl BenchRecord {
    pub const CSV_HEADER: &'static str =
        "size,repeat,n,m,d,r,elapsed_ms,live_states,cell_updates,feasible,length,error";

    pub fn to_csv(&self) -> String {
        format!(
            "{},{},{},{},{},{},{:.4},{},{},{},{},{}",
            self.size,
            self.repeat,
            self.n,
            self.m,
            self.d,
            self.r,
            self.elapsed_ms,
            self.live_states,
            self.cell_updates,
            self.feasible,
            self.length.map(|l| l.to_string()).unwrap_or_default(),
            self.error.as_deref().unwrap_or("").replace(',', ";"),
        )
    }
}

pub fn run_one(cfg: &BenchConfig, size: usize, repeat: usize) -> Result<BenchRecord> {
    let inst = generate(cfg, size, repeat)?;
    let tree = KeywordTree::build(&inst.constraints);
    let opts = SolveOptions::default().with_memory_cap(cfg.memory_cap);
    let started = Instant::now();
    let outcome = solve_with_tree(&inst.x, &inst.y, &tree, opts);
    let elapsed_ms = started.elapsed().as_secs_f64() * 1e3;
    let mut record = BenchRecord {
        size,
        repeat,
        n: inst.x.len(),
        m: inst.y.len(),
        d: inst.constraints.len(),
        r: inst.constraints.total_len(),
        elapsed_ms,
        live_states: 0,
        cell_updates: 0,
        feasible: false,
        length: None,
        error: None,
    };
    match outcome {
        Ok(res) => {
            record.live_states = res.stats.live_states;
            record.cell_updates = res.stats.cell_updates;
            record.feasible = res.feasible;
            record.length = res.length;
        }
        Err(e @ Error::MemoryCapExceeded { .. }) => record.error = Some(e.to_string()),
        Err(e) => return Err(e),
    }
    Ok(record)
}

/// One record per `(size, repeat)`, sizes outermost.
pub fn run(cfg: &BenchConfig) -> Result<Vec<BenchRecord>> {
    cfg.validate()?;
    let mut out = Vec::with_capacity(cfg.sizes.len() * cfg.repeats);
    for &size in &cfg.sizes {
        for repeat in 0..cfg.repeats {
            out.push(run_one(cfg, size, repeat)?);
        }
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SizeSummary {
    pub size: usize,
    pub median_ms: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BenchSummary {
    pub per_size: Vec<SizeSummary>,
    /// `median(size_k) / median(size_{k-1})`.
    pub step_ratios: Vec<f64>,
    /// Least-squares slope of `ln(time)` against `ln(n * m)`; 1.0 is the
    /// expected growth for a fixed constraint set.
    pub exponent: Option<f64>,
}

pub fn median(values: &mut [f64]) -> Option<f64> {
    if values.is_empty() {
        return None;
    }
    values.sort_by(f64::total_cmp);
    let mid = values.len() / 2;
    Some(if values.len() % 2 == 1 {
        values[mid]
    } else {
        (values[mid - 1] + values[mid]) / 2.0
    })
}

/// Records that hit an error are left out of the medians.
pub fn summarize(records: &[BenchRecord]) -> BenchSummary {
    let mut sizes: Vec<usize> = records.iter().map(|r| r.size).collect();
    sizes.dedup();
    let per_size: Vec<SizeSummary> = sizes
        .into_iter()
        .filter_map(|size| {
            let mut times: Vec<f64> = records
                .iter()
                .filter(|r| r.size == size && r.error.is_none())
                .map(|r| r.elapsed_ms)
                .collect();
            median(&mut times).map(|median_ms| SizeSummary { size, median_ms })
        })
        .collect();
    let step_ratios = per_size
        .windows(2)
        .map(|w| w[1].median_ms / w[0].median_ms)
        .collect();
    let points: Vec<(f64, f64)> = per_size
        .iter()
        .filter(|s| s.median_ms > 0.0)
        .map(|s| (((s.size * s.size) as f64).ln(), s.median_ms.ln()))
        .collect();
    BenchSummary {
        per_size,
        step_ratios,
        exponent: slope(&points),
    }
}

fn slope(points: &[(f64, f64)]) -> Option<f64> {
    if points.len() < 2 {
        return None;
    }
    let k = points.len() as f64;
    let mx = points.iter().map(|p| p.0).sum::<f64>() / k;
    let my = points.iter().map(|p| p.1).sum::<f64>() / k;
    let sxx: f64 = points.iter().map(|p| (p.0 - mx).powi(2)).sum();
    let sxy: f64 = points.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    (sxx > 0.0).then(|| sxy / sxx)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn generation_is_deterministic() {
        let cfg = BenchConfig::default();
        let a = generate(&cfg, 64, 1).unwrap();
        let b = generate(&cfg, 64, 1).unwrap();
        assert_eq!(a, b);
        assert_ne!(a, generate(&cfg, 64, 2).unwrap());
        assert_eq!(a.constraints.len(), 2);
        assert_eq!(a.constraints.total_len(), 6);
        assert!(a.x.iter().all(|b| (b'a'..b'a' + 4).contains(b)));
    }

    #[test]
    fn repeats_give_one_record_each() {
        let cfg = BenchConfig {
            sizes: vec![8, 16],
            repeats: 3,
            ..BenchConfig::default()
        };
        let records = run(&cfg).unwrap();
        assert_eq!(records.len(), 6);
        assert_eq!(records.iter().filter(|r| r.size == 8).count(), 3);
        let summary = summarize(&records);
        assert_eq!(summary.per_size.len(), 2);
        assert_eq!(summary.step_ratios.len(), 1);
    }

    #[test]
    fn invalid_configs() {
        let base = BenchConfig::default();
        for cfg in [
            BenchConfig {
                sizes: vec![],
                ..base.clone()
            },
            BenchConfig {
                sizes: vec![0, 4],
                ..base.clone()
            },
            BenchConfig {
                sizes: vec![8, 4],
                ..base.clone()
            },
            BenchConfig {
                repeats: 0,
                ..base.clone()
            },
            BenchConfig {
                alphabet: 0,
                ..base.clone()
            },
            BenchConfig {
                sizes: vec![2],
                ..base.clone()
            },
            BenchConfig {
                d: 5,
                pattern_len: 1,
                alphabet: 4,
                ..base.clone()
            },
        ] {
            assert!(
                matches!(run(&cfg), Err(Error::InvalidBenchConfig(_))),
                "{cfg:?}"
            );
        }
    }

    #[test]
    fn memory_cap_is_reported_per_record() {
        let cfg = BenchConfig {
            sizes: vec![8],
            repeats: 1,
            memory_cap: 1,
            ..BenchConfig::default()
        };
        let records = run(&cfg).unwrap();
        assert!(records[0].error.is_some());
        assert!(summarize(&records).per_size.is_empty());
    }

    #[test]
    fn slope_of_exact_power_law() {
        let pts: Vec<(f64, f64)> = [1.0f64, 2.0, 4.0]
            .iter()
            .map(|&x| (x.ln(), (3.0 * x).ln()))
            .collect();
        assert!((slope(&pts).unwrap() - 1.0).abs() < 1e-12);
        assert_eq!(median(&mut [3.0, 1.0, 2.0]), Some(2.0));
    }
}
