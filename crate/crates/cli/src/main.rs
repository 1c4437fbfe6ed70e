//! `mstr-lcs`: constrained longest common subsequence from the command line.
//!
//! Exit status: 0 when a constrained LCS exists, 3 when none does, 2 on any
//! usage or input error.

mod config;
mod report;

use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand};
use mstr_lcs::automaton::canonicalize_with_limit;
use mstr_lcs::bench::{self, BenchConfig, BenchRecord, BenchSummary};
use mstr_lcs::oracle::brute_force_solve;
use mstr_lcs::{solve, Canonical, ConstraintSet, KeywordTree, SolveOptions};
use serde::Serialize;

use config::{load_patterns, Format, OutputArgs, PatternArgs, RunConfig, SequenceArgs};
use report::{lossy_string, removed_names, PreprocessReport, RemovedEntry, SolveReport};

const EXIT_FEASIBLE: u8 = 0;
const EXIT_USAGE: u8 = 2;
const EXIT_INFEASIBLE: u8 = 3;

#[derive(Debug)]
pub struct CliError {
    message: String,
}

impl CliError {
    pub fn usage(message: impl Into<String>) -> Self {
        CliError {
            message: message.into(),
        }
    }
}

impl From<mstr_lcs::Error> for CliError {
    fn from(e: mstr_lcs::Error) -> Self {
        CliError::usage(e.to_string())
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "mstr-lcs",
    version,
    about = "Longest common subsequence containing every constraint as a substring"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Solve with the automaton-driven dynamic program.
    Solve {
        #[command(flatten)]
        seq: SequenceArgs,
        #[command(flatten)]
        pat: PatternArgs,
        #[command(flatten)]
        out: OutputArgs,
        /// Reconstruct one optimal subsequence.
        #[arg(long)]
        traceback: bool,
        /// Refuse runs whose table estimate exceeds this many bytes.
        #[arg(long = "memory-cap", value_name = "BYTES")]
        memory_cap: Option<u64>,
    },
    /// Solve by exhaustive search (inputs up to 20 bytes, patterns up to 12 total).
    Oracle {
        #[command(flatten)]
        seq: SequenceArgs,
        #[command(flatten)]
        pat: PatternArgs,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Time the solver on seeded random instances of growing size.
    Bench {
        /// Comma-separated input lengths, strictly ascending.
        #[arg(long, value_delimiter = ',', default_values_t = [64usize, 128, 256])]
        sizes: Vec<usize>,
        #[arg(long, default_value_t = 3)]
        repeats: usize,
        #[arg(long, default_value_t = 0x5eed)]
        seed: u64,
        /// Number of constraints.
        #[arg(long, default_value_t = 2)]
        d: usize,
        /// Length of each constraint.
        #[arg(long = "pattern-len", default_value_t = 3)]
        pattern_len: usize,
        /// Alphabet size (letters from `a`).
        #[arg(long, default_value_t = 4)]
        alphabet: u8,
        #[arg(long = "memory-cap", value_name = "BYTES")]
        memory_cap: Option<u64>,
        /// Emit CSV records instead of text or JSON.
        #[arg(long, conflicts_with = "format")]
        csv: bool,
        #[arg(long, value_enum)]
        format: Option<Format>,
    },
    /// Remove duplicate and substring constraints and report what was dropped.
    Preprocess {
        #[command(flatten)]
        pat: PatternArgs,
        #[command(flatten)]
        out: OutputArgs,
        /// Also write the keyword tree of the survivors as Graphviz dot.
        #[arg(long, value_name = "PATH")]
        dot: Option<PathBuf>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mut stdout = io::stdout().lock();
    match run(cli.command, &mut stdout) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            let _ = stdout.flush();
            eprintln!("error: {}", e.message);
            ExitCode::from(EXIT_USAGE)
        }
    }
}

fn run(command: Command, out: &mut impl Write) -> Result<u8, CliError> {
    match command {
        Command::Solve {
            seq,
            pat,
            out: fmt,
            traceback,
            memory_cap,
        } => {
            let cfg = RunConfig::resolve(&seq, &pat, &fmt, traceback, memory_cap)?;
            run_solve(&cfg, out)
        }
        Command::Oracle { seq, pat, out: fmt } => {
            let cfg = RunConfig::resolve(&seq, &pat, &fmt, false, None)?;
            run_oracle(&cfg, out)
        }
        Command::Bench {
            sizes,
            repeats,
            seed,
            d,
            pattern_len,
            alphabet,
            memory_cap,
            csv,
            format,
        } => {
            let cfg = BenchConfig {
                sizes,
                repeats,
                d,
                pattern_len,
                alphabet,
                seed,
                memory_cap: memory_cap.unwrap_or(mstr_lcs::solver::DEFAULT_MEMORY_CAP),
            };
            let style = if csv {
                BenchOutput::Csv
            } else if format == Some(Format::Json) {
                BenchOutput::Json
            } else {
                BenchOutput::Text
            };
            run_bench(&cfg, style, out)
        }
        Command::Preprocess { pat, out: fmt, dot } => run_preprocess(&pat, fmt.format, dot, out),
    }
}

fn constraints(cfg: &RunConfig) -> Result<Canonical, CliError> {
    if cfg.preprocess {
        Ok(canonicalize_with_limit(&cfg.patterns, cfg.d_limit)?)
    } else {
        Ok(Canonical {
            set: ConstraintSet::with_limit(&cfg.patterns, cfg.d_limit)?,
            removed: Vec::new(),
        })
    }
}

fn emit(report: &SolveReport, format: Format, out: &mut impl Write) -> Result<u8, CliError> {
    match format {
        Format::Text => write_out(out, &report.to_text())?,
        Format::Json => write_json(out, report)?,
    }
    Ok(if report.feasible {
        EXIT_FEASIBLE
    } else {
        EXIT_INFEASIBLE
    })
}

fn run_solve(cfg: &RunConfig, out: &mut impl Write) -> Result<u8, CliError> {
    let canon = constraints(cfg)?;
    let cs = &canon.set;
    let opts = SolveOptions::default()
        .with_traceback(cfg.traceback)
        .with_memory_cap(cfg.memory_cap);
    let res = solve(&cfg.x, &cfg.y, cs, opts)?;
    let report = SolveReport {
        source: "dp".into(),
        feasible: res.feasible,
        length: res.length.map(u64::from),
        lcs: res.witness.as_ref().map(|w| lossy_string(&w.sequence)),
        d: cs.len(),
        r: cs.total_len(),
        t: Some(res.stats.nodes),
        live_states: Some(res.stats.live_states),
        cell_updates: Some(res.stats.cell_updates),
        elapsed_ms: res.stats.elapsed.as_secs_f64() * 1e3,
        removed_constraints: removed_names(&canon.removed),
    };
    emit(&report, cfg.format, out)
}

fn run_oracle(cfg: &RunConfig, out: &mut impl Write) -> Result<u8, CliError> {
    let canon = constraints(cfg)?;
    let cs = &canon.set;
    let started = Instant::now();
    let res = brute_force_solve(&cfg.x, &cfg.y, cs.patterns())?;
    let report = SolveReport {
        source: "oracle".into(),
        feasible: res.feasible,
        length: res.length.map(|l| l as u64),
        lcs: res.witness.as_deref().map(lossy_string),
        d: cs.len(),
        r: cs.total_len(),
        t: None,
        live_states: None,
        cell_updates: None,
        elapsed_ms: started.elapsed().as_secs_f64() * 1e3,
        removed_constraints: removed_names(&canon.removed),
    };
    emit(&report, cfg.format, out)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum BenchOutput {
    Text,
    Json,
    Csv,
}

#[derive(Serialize)]
struct BenchReport<'a> {
    records: &'a [BenchRecord],
    summary: &'a BenchSummary,
}

fn run_bench(cfg: &BenchConfig, style: BenchOutput, out: &mut impl Write) -> Result<u8, CliError> {
    let records = bench::run(cfg)?;
    let summary = bench::summarize(&records);
    let ratios: Vec<String> = summary
        .step_ratios
        .iter()
        .map(|r| format!("{r:.2}"))
        .collect();
    let exponent = summary
        .exponent
        .map(|e| format!("{e:.3}"))
        .unwrap_or_else(|| "-".into());
    match style {
        BenchOutput::Json => write_json(
            out,
            &BenchReport {
                records: &records,
                summary: &summary,
            },
        )?,
        BenchOutput::Csv => {
            let mut text = format!("{}\n", BenchRecord::CSV_HEADER);
            for r in &records {
                text += &r.to_csv();
                text.push('\n');
            }
            text += &format!(
                "# step_ratios {}\n# exponent {exponent}\n",
                ratios.join(" ")
            );
            write_out(out, &text)?;
        }
        BenchOutput::Text => {
            let mut text =
                String::from("size  repeat  d  r  elapsed_ms  live_states  cell_updates  length\n");
            for r in &records {
                let length = match (&r.error, r.length) {
                    (Some(e), _) => format!("error: {e}"),
                    (None, Some(l)) => l.to_string(),
                    (None, None) => "infeasible".into(),
                };
                text += &format!(
                    "{:<5} {:<7} {:<2} {:<2} {:<11.3} {:<12} {:<13} {}\n",
                    r.size, r.repeat, r.d, r.r, r.elapsed_ms, r.live_states, r.cell_updates, length
                );
            }
            for s in &summary.per_size {
                text += &format!("median size {}: {:.3} ms\n", s.size, s.median_ms);
            }
            text += &format!(
                "step ratios: {}\nfitted exponent of time vs n*m: {exponent}\n",
                ratios.join(" ")
            );
            write_out(out, &text)?;
        }
    }
    Ok(EXIT_FEASIBLE)
}

fn run_preprocess(
    pat: &PatternArgs,
    format: Format,
    dot: Option<PathBuf>,
    out: &mut impl Write,
) -> Result<u8, CliError> {
    let patterns = load_patterns(pat)?;
    let canon = canonicalize_with_limit(&patterns, pat.d_limit)?;
    if let Some(path) = dot {
        let tree = KeywordTree::build(&canon.set);
        std::fs::write(&path, tree.to_dot())
            .map_err(|e| CliError::usage(format!("cannot write {}: {e}", path.display())))?;
    }
    let report = PreprocessReport {
        patterns: canon
            .set
            .patterns()
            .iter()
            .map(|p| lossy_string(p))
            .collect(),
        removed: canon.removed.iter().map(RemovedEntry::from).collect(),
    };
    match format {
        Format::Json => write_json(out, &report)?,
        Format::Text => {
            let mut text = String::new();
            for p in &report.patterns {
                text += p;
                text.push('\n');
            }
            write_out(out, &text)?;
            // The removal report goes to stderr so stdout stays a pattern list.
            for r in &report.removed {
                let why = if r.reason == "duplicate" {
                    "duplicate of"
                } else {
                    "substring of"
                };
                eprintln!("removed {} ({why} {})", r.pattern, r.witness);
            }
        }
    }
    Ok(EXIT_FEASIBLE)
}

fn write_out(out: &mut impl Write, text: &str) -> Result<(), CliError> {
    out.write_all(text.as_bytes())
        .map_err(|e| CliError::usage(format!("write failed: {e}")))
}

fn write_json<T: Serialize>(out: &mut impl Write, value: &T) -> Result<(), CliError> {
    let text = serde_json::to_string_pretty(value).map_err(|e| CliError::usage(e.to_string()))?;
    write_out(out, &text)?;
    write_out(out, "\n")
}
