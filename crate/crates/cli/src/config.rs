use std::ffi::OsString;
use std::fs;
use std::path::{Path, PathBuf};

use clap::{Args, ValueEnum};
use mstr_lcs::automaton::DEFAULT_CONSTRAINT_LIMIT;
use mstr_lcs::input::{parse_pattern_list, parse_sequence};
use mstr_lcs::solver::DEFAULT_MEMORY_CAP;

use crate::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

/// The two input strings.
#[derive(Debug, Clone, Args)]
pub struct SequenceArgs {
    /// First input, inline.
    #[arg(
        long = "x",
        value_name = "STR",
        required_unless_present = "x_file",
        conflicts_with = "x_file",
        allow_hyphen_values = true
    )]
    pub x: Option<OsString>,
    /// First input, read from a file (one trailing newline stripped).
    #[arg(long = "x-file", value_name = "PATH")]
    pub x_file: Option<PathBuf>,
    /// Second input, inline.
    #[arg(
        long = "y",
        value_name = "STR",
        required_unless_present = "y_file",
        conflicts_with = "y_file",
        allow_hyphen_values = true
    )]
    pub y: Option<OsString>,
    /// Second input, read from a file.
    #[arg(long = "y-file", value_name = "PATH")]
    pub y_file: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct PatternArgs {
    /// A constraint string; repeat for several.
    #[arg(
        short = 'p',
        long = "pattern",
        value_name = "STR",
        allow_hyphen_values = true
    )]
    pub patterns: Vec<OsString>,
    /// Constraint strings, one per line. Combined with any `-p` values.
    #[arg(long = "patterns-file", value_name = "PATH")]
    pub patterns_file: Option<PathBuf>,
    /// Keep duplicate and substring constraints.
    #[arg(long = "no-preprocess")]
    pub no_preprocess: bool,
    /// Maximum number of constraints after preprocessing.
    #[arg(long = "d-limit", default_value_t = DEFAULT_CONSTRAINT_LIMIT)]
    pub d_limit: usize,
}

#[derive(Debug, Clone, Args)]
pub struct OutputArgs {
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
}

/// Fully resolved inputs for `solve` and `oracle`.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub x: Vec<u8>,
    pub y: Vec<u8>,
    pub patterns: Vec<Vec<u8>>,
    pub preprocess: bool,
    pub d_limit: usize,
    pub traceback: bool,
    pub memory_cap: u64,
    pub format: Format,
}

impl RunConfig {
    pub fn resolve(
        seq: &SequenceArgs,
        pat: &PatternArgs,
        out: &OutputArgs,
        traceback: bool,
        memory_cap: Option<u64>,
    ) -> Result<Self, CliError> {
        Ok(RunConfig {
            x: load_sequence(seq.x.as_ref(), seq.x_file.as_deref())?,
            y: load_sequence(seq.y.as_ref(), seq.y_file.as_deref())?,
            patterns: load_patterns(pat)?,
            preprocess: !pat.no_preprocess,
            d_limit: pat.d_limit,
            traceback,
            memory_cap: memory_cap.unwrap_or(DEFAULT_MEMORY_CAP),
            format: out.format,
        })
    }
}

pub fn os_bytes(s: &OsString) -> Vec<u8> {
    #[cfg(unix)]
    {
        use std::os::unix::ffi::OsStrExt;
        s.as_os_str().as_bytes().to_vec()
    }
    #[cfg(not(unix))]
    {
        s.to_string_lossy().into_owned().into_bytes()
    }
}

fn read(path: &Path) -> Result<Vec<u8>, CliError> {
    fs::read(path).map_err(|e| CliError::usage(format!("cannot read {}: {e}", path.display())))
}

fn load_sequence(inline: Option<&OsString>, file: Option<&Path>) -> Result<Vec<u8>, CliError> {
    match (inline, file) {
        (Some(s), None) => Ok(os_bytes(s)),
        (None, Some(path)) => Ok(parse_sequence(&read(path)?).to_vec()),
        _ => Err(CliError::usage(
            "give exactly one of the inline and file forms for each input",
        )),
    }
}

pub fn load_patterns(pat: &PatternArgs) -> Result<Vec<Vec<u8>>, CliError> {
    let mut patterns: Vec<Vec<u8>> = pat.patterns.iter().map(os_bytes).collect();
    if let Some(path) = &pat.patterns_file {
        let parsed = parse_pattern_list(&read(path)?)
            .map_err(|e| CliError::usage(format!("{}: {e}", path.display())))?;
        patterns.extend(parsed);
    }
    Ok(patterns)
}
