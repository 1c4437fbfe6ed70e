//! Witness reconstruction from a retained table.

use crate::automaton::KeywordTree;
use crate::error::{Error, Result};
use crate::solver::{predecessor_set, DpTable};
use crate::state::{DpState, StateId};

/// One optimal constrained common subsequence.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Witness {
    pub sequence: Vec<u8>,
}

impl Witness {
    pub fn len(&self) -> usize {
        self.sequence.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sequence.is_empty()
    }
}

/// Walks back from `(n, m, start)` to the boundary.
///
/// Case order at a match cell: stay in the same state along the diagonal if
/// the value is unchanged, otherwise take the first predecessor (registry
/// order) that accounts for the value and emit the byte. At a mismatch cell
/// step up when that is strictly better, else left.
pub fn backtrack(
    table: &DpTable,
    tree: &KeywordTree,
    x: &[u8],
    y: &[u8],
    start: DpState,
) -> Result<Witness> {
    let (mut i, mut j) = (table.rows(), table.cols());
    assert_eq!(
        (i, j),
        (x.len(), y.len()),
        "table dimensions do not match the inputs"
    );
    let registry = table.registry();
    let mut state = registry
        .get(&start)
        .ok_or(Error::InconsistentTable { i, j, state: start })?;
    let inconsistent = |i, j, s: StateId| Error::InconsistentTable {
        i,
        j,
        state: registry.state(s),
    };

    let mut out = Vec::new();
    while i > 0 && j > 0 {
        let here = table
            .value(i, j, state)
            .ok_or_else(|| inconsistent(i, j, state))?;
        let c = x[i - 1];
        if c == y[j - 1] {
            if table.value(i - 1, j - 1, state) == Some(here) {
                i -= 1;
                j -= 1;
                continue;
            }
            let prev = predecessor_set(registry, tree, registry.state(state), c)
                .into_iter()
                .find(|&p| table.value(i - 1, j - 1, p).map(|v| v + 1) == Some(here))
                .ok_or_else(|| inconsistent(i, j, state))?;
            out.push(c);
            state = prev;
            i -= 1;
            j -= 1;
        } else {
            let up = table.value(i - 1, j, state);
            let left = table.value(i, j - 1, state);
            // `None` orders below every value.
            if up > left {
                i -= 1;
            } else {
                if left.is_none() {
                    return Err(inconsistent(i, j, state));
                }
                j -= 1;
            }
        }
    }
    if state != StateId(0) {
        return Err(inconsistent(i, j, state));
    }
    out.reverse();
    Ok(Witness { sequence: out })
}
