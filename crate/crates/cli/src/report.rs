use mstr_lcs::{Removal, RemovalReason};
use serde::{Deserialize, Serialize};

fn lossy(bytes: &[u8]) -> String {
    String::from_utf8_lossy(bytes).into_owned()
}

/// Shared by `solve` and `oracle`. Automaton statistics are absent for the oracle.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SolveReport {
    pub source: String,
    pub feasible: bool,
    pub length: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lcs: Option<String>,
    pub d: usize,
    pub r: usize,
    pub t: Option<usize>,
    pub live_states: Option<usize>,
    pub cell_updates: Option<u64>,
    pub elapsed_ms: f64,
    pub removed_constraints: Vec<String>,
}

impl SolveReport {
    pub fn to_text(&self) -> String {
        let mut out = format!("source: {}\nfeasible: {}\n", self.source, self.feasible);
        match self.length {
            Some(l) => out += &format!("length: {l}\n"),
            None => out += "length: -\n",
        }
        if let Some(lcs) = &self.lcs {
            out += &format!("lcs: {lcs}\n");
        }
        out += &format!("d: {}\nr: {}\n", self.d, self.r);
        if let (Some(t), Some(s), Some(u)) = (self.t, self.live_states, self.cell_updates) {
            out += &format!("t: {t}\nlive_states: {s}\ncell_updates: {u}\n");
        }
        out += &format!("elapsed_ms: {:.3}\n", self.elapsed_ms);
        if !self.removed_constraints.is_empty() {
            out += &format!(
                "removed_constraints: {}\n",
                self.removed_constraints.join(" ")
            );
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RemovedEntry {
    pub pattern: String,
    /// `duplicate` or `substring`.
    pub reason: String,
    pub witness: String,
}

impl From<&Removal> for RemovedEntry {
    fn from(r: &Removal) -> Self {
        let reason = match r.reason {
            RemovalReason::Duplicate => "duplicate",
            RemovalReason::SubstringOf { .. } => "substring",
        };
        RemovedEntry {
            pattern: lossy(&r.pattern),
            reason: reason.into(),
            witness: lossy(r.witness()),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PreprocessReport {
    pub patterns: Vec<String>,
    pub removed: Vec<RemovedEntry>,
}

pub fn removed_names(removed: &[Removal]) -> Vec<String> {
    removed.iter().map(|r| lossy(&r.pattern)).collect()
}

pub fn lossy_string(bytes: &[u8]) -> String {
    lossy(bytes)
}
