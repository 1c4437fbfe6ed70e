//! Dynamic program over cells `(i, j)` and live states `(node, mask)`.
//!
//! Each cell holds a dense slot per registered state. A slot stores `f + 1`,
//! with 0 meaning the state is unreachable at that cell, so cell merges are
//! plain element-wise maxima. Match cells are filled by forward propagation:
//! every live state of the diagonal cell relaxes its successor under the
//! matched byte.

use std::time::{Duration, Instant};

use crate::automaton::{ConstraintSet, KeywordTree};
use crate::error::{Error, Result};
use crate::state::{gamma, ConstraintMask, DpState, StateId, StateRegistry};
use crate::traceback::{backtrack, Witness};

/// Default memory cap for the table: 2 GiB.
pub const DEFAULT_MEMORY_CAP: u64 = 2 << 30;

const SLOT_BYTES: u128 = std::mem::size_of::<u32>() as u128;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SolveOptions {
    /// Retain the full table and reconstruct a witness.
    pub traceback: bool,
    pub memory_cap: u64,
}

impl Default for SolveOptions {
    fn default() -> Self {
        SolveOptions {
            traceback: false,
            memory_cap: DEFAULT_MEMORY_CAP,
        }
    }
}

impl SolveOptions {
    pub fn with_traceback(mut self, on: bool) -> Self {
        self.traceback = on;
        self
    }

    pub fn with_memory_cap(mut self, bytes: u64) -> Self {
        self.memory_cap = bytes;
        self
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct SolveStats {
    /// Automaton node count `t`.
    pub nodes: usize,
    /// Size of the live state set at the end of the run.
    pub live_states: usize,
    /// State slots written, summed over all cells.
    pub cell_updates: u64,
    pub elapsed: Duration,
}

/// Fully retained table, one slot vector per interior cell.
#[derive(Debug, Clone)]
pub struct DpTable {
    n: usize,
    m: usize,
    cells: Vec<Vec<u32>>,
    registry: StateRegistry,
}

impl DpTable {
    pub fn rows(&self) -> usize {
        self.n
    }

    pub fn cols(&self) -> usize {
        self.m
    }

    pub fn registry(&self) -> &StateRegistry {
        &self.registry
    }

    /// `f(i, j, state)`, or `None` when the state is not live there.
    /// Row 0 and column 0 are the boundary: only the start state, at 0.
    pub fn value(&self, i: usize, j: usize, state: StateId) -> Option<u32> {
        assert!(
            i <= self.n && j <= self.m,
            "cell ({i}, {j}) outside {}x{}",
            self.n,
            self.m
        );
        if i == 0 || j == 0 {
            return (state == StateId(0)).then_some(0);
        }
        decode(self.cell(i, j).get(state.index()).copied().unwrap_or(0))
    }

    /// Live states at `(i, j)` with their values, in registry order.
    pub fn live(&self, i: usize, j: usize) -> Vec<(StateId, u32)> {
        if i == 0 || j == 0 {
            return vec![(StateId(0), 0)];
        }
        self.cell(i, j)
            .iter()
            .enumerate()
            .filter_map(|(s, &v)| decode(v).map(|v| (StateId(s as u32), v)))
            .collect()
    }

    fn cell(&self, i: usize, j: usize) -> &[u32] {
        &self.cells[(i - 1) * self.m + (j - 1)]
    }
}

#[inline]
fn decode(slot: u32) -> Option<u32> {
    slot.checked_sub(1)
}

#[derive(Debug, Clone)]
pub struct SolveResult {
    pub feasible: bool,
    pub length: Option<u32>,
    pub best_state: Option<DpState>,
    pub table: Option<DpTable>,
    pub witness: Option<Witness>,
    pub stats: SolveStats,
}

/// Builds the automaton for `cs` and solves.
pub fn solve(x: &[u8], y: &[u8], cs: &ConstraintSet, opts: SolveOptions) -> Result<SolveResult> {
    let tree = KeywordTree::build(cs);
    solve_with_tree(x, y, &tree, opts)
}

/// Upper bound on table bytes for an `n x m` run over `tree`.
pub fn estimate_bytes(n: usize, m: usize, tree: &KeywordTree, traceback: bool) -> u128 {
    let d = tree.pattern_count().min(127) as u32;
    let states = (tree.node_count() as u128).saturating_mul(1u128 << d);
    let cells = if traceback {
        n as u128 * m as u128
    } else {
        2 * (m as u128 + 1)
    };
    cells.saturating_mul(states).saturating_mul(SLOT_BYTES)
}

pub fn solve_with_tree(
    x: &[u8],
    y: &[u8],
    tree: &KeywordTree,
    opts: SolveOptions,
) -> Result<SolveResult> {
    let started = Instant::now();
    let d = tree.pattern_count();
    if d > crate::automaton::MAX_CONSTRAINT_LIMIT {
        return Err(Error::TooManyConstraints {
            count: d,
            limit: crate::automaton::MAX_CONSTRAINT_LIMIT,
        });
    }
    let estimated = estimate_bytes(x.len(), y.len(), tree, opts.traceback);
    if estimated > opts.memory_cap as u128 {
        return Err(Error::MemoryCapExceeded {
            estimated_bytes: estimated,
            cap_bytes: opts.memory_cap,
        });
    }

    let mut dp = Propagator::new(tree);
    let (n, m) = (x.len(), y.len());
    let boundary = vec![1u32];
    let mut prev: Vec<Vec<u32>> = vec![boundary.clone(); m + 1];
    let mut cur: Vec<Vec<u32>> = vec![boundary.clone(); m + 1];
    let mut retained: Vec<Vec<u32>> = if opts.traceback {
        Vec::with_capacity(n * m)
    } else {
        Vec::new()
    };

    for &xi in x {
        for j in 1..=m {
            let (done, rest) = cur.split_at_mut(j);
            let out = &mut rest[0];
            if xi == y[j - 1] {
                dp.match_cell(&prev[j - 1], xi, out);
            } else {
                dp.mismatch_cell(&prev[j], &done[j - 1], out);
            }
        }
        if opts.traceback {
            retained.extend(cur[1..].iter().cloned());
        }
        std::mem::swap(&mut prev, &mut cur);
    }

    // After the swap `prev` holds row n (or the boundary row when n = 0).
    let last = &prev[m];
    let (feasible, length, best_state) = extract_answer(last, &dp.registry, d);

    let stats = SolveStats {
        nodes: tree.node_count(),
        live_states: dp.registry.len(),
        cell_updates: dp.updates,
        elapsed: Duration::ZERO,
    };
    let table = opts.traceback.then_some(DpTable {
        n,
        m,
        cells: retained,
        registry: dp.registry,
    });
    let witness = match (&table, best_state) {
        (Some(table), Some(start)) if feasible => Some(backtrack(table, tree, x, y, start)?),
        _ => None,
    };
    let stats = SolveStats {
        elapsed: started.elapsed(),
        ..stats
    };
    Ok(SolveResult {
        feasible,
        length,
        best_state,
        table,
        witness,
        stats,
    })
}

/// Forward-propagation kernel with a per-state successor cache.
struct Propagator<'t> {
    tree: &'t KeywordTree,
    registry: StateRegistry,
    /// `succ[state * cols + col]`, `u32::MAX` when not yet computed. The last
    /// column stands for every byte outside the tree alphabet.
    succ: Vec<u32>,
    cols: usize,
    updates: u64,
}

impl<'t> Propagator<'t> {
    fn new(tree: &'t KeywordTree) -> Self {
        let cols = tree.alphabet().len() + 1;
        Propagator {
            tree,
            registry: StateRegistry::new(),
            succ: vec![u32::MAX; cols],
            cols,
            updates: 0,
        }
    }

    fn successor(&mut self, state: usize, c: u8) -> usize {
        let col = self.tree.column(c).unwrap_or(self.cols - 1);
        let slot = state * self.cols + col;
        if self.succ[slot] == u32::MAX {
            let from = self.registry.state(StateId(state as u32));
            let id = self.registry.intern(gamma(self.tree, from, c));
            let needed = self.registry.len() * self.cols;
            if self.succ.len() < needed {
                self.succ.resize(needed, u32::MAX);
            }
            self.succ[slot] = id.0;
        }
        self.succ[slot] as usize
    }

    fn mismatch_cell(&mut self, up: &[u32], left: &[u32], out: &mut Vec<u32>) {
        let (long, short) = if up.len() >= left.len() {
            (up, left)
        } else {
            (left, up)
        };
        out.clear();
        out.extend_from_slice(long);
        for (o, &s) in out.iter_mut().zip(short) {
            *o = (*o).max(s);
        }
        self.updates += out.len() as u64;
    }

    fn match_cell(&mut self, diag: &[u32], c: u8, out: &mut Vec<u32>) {
        out.clear();
        out.extend_from_slice(diag);
        for (s, &v) in diag.iter().enumerate() {
            if v == 0 {
                continue;
            }
            let t = self.successor(s, c);
            if t >= out.len() {
                out.resize(t + 1, 0);
            }
            out[t] = out[t].max(v + 1);
            self.updates += 1;
        }
        self.updates += diag.len() as u64;
    }
}

/// Best full-mask state in the final cell; ties go to the smallest node id.
pub fn extract_answer(
    cell: &[u32],
    registry: &StateRegistry,
    d: usize,
) -> (bool, Option<u32>, Option<DpState>) {
    let full = ConstraintMask::full(d);
    let best = cell
        .iter()
        .enumerate()
        .filter_map(|(s, &v)| decode(v).map(|v| (registry.state(StateId(s as u32)), v)))
        .filter(|(state, _)| state.mask == full)
        .max_by(|(a, va), (b, vb)| va.cmp(vb).then(b.node.cmp(&a.node)));
    match best {
        Some((state, v)) => (true, Some(v), Some(state)),
        None => (false, None, None),
    }
}

/// Registered states that step to `target` under `c`, in registry order.
/// Liveness at a particular cell is left to the caller.
pub fn predecessor_set(
    registry: &StateRegistry,
    tree: &KeywordTree,
    target: DpState,
    c: u8,
) -> Vec<StateId> {
    registry
        .iter()
        .filter(|&(_, s)| gamma(tree, s, c) == target)
        .map(|(id, _)| id)
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cs(p: &[&str]) -> ConstraintSet {
        ConstraintSet::new(p).unwrap()
    }

    fn length(x: &str, y: &str, p: &[&str]) -> Option<u32> {
        solve(x.as_bytes(), y.as_bytes(), &cs(p), SolveOptions::default())
            .unwrap()
            .length
    }

    #[test]
    fn fixture_lengths() {
        assert_eq!(length("aaba", "aaba", &["aab", "aba", "ba"]), Some(4));
        assert_eq!(length("ab", "ba", &["ab"]), None);
        assert_eq!(length("a", "a", &["a"]), Some(1));
        assert_eq!(length("abcbdab", "bdcaba", &[]), Some(4));
    }

    #[test]
    fn empty_inputs() {
        assert_eq!(length("", "", &[]), Some(0));
        assert_eq!(length("", "abc", &[]), Some(0));
        assert_eq!(length("abc", "", &["a"]), None);
        assert_eq!(length("", "", &["a"]), None);
    }

    #[test]
    fn best_state_is_full_mask() {
        let r = solve(
            b"aaba",
            b"aaba",
            &cs(&["aab", "aba", "ba"]),
            SolveOptions::default(),
        )
        .unwrap();
        let best = r.best_state.unwrap();
        assert!(best.mask.is_full(3));
        assert!(r.table.is_none());
        assert!(r.stats.live_states >= 2);
    }

    #[test]
    fn extract_answer_on_boundary_cell() {
        let reg = StateRegistry::new();
        assert_eq!(
            extract_answer(&[1], &reg, 0),
            (true, Some(0), Some(DpState::START))
        );
        assert_eq!(extract_answer(&[1], &reg, 2), (false, None, None));
    }

    #[test]
    fn ties_prefer_smallest_node() {
        let mut reg = StateRegistry::new();
        let full = ConstraintMask::full(1);
        reg.intern(DpState::new(3, full));
        reg.intern(DpState::new(2, full));
        let (_, len, best) = extract_answer(&[0, 5, 5], &reg, 1);
        assert_eq!(len, Some(4));
        assert_eq!(best.unwrap().node, 2);
    }

    #[test]
    fn memory_cap_is_enforced() {
        let err = solve(
            b"abababab",
            b"babababa",
            &cs(&["ab"]),
            SolveOptions::default()
                .with_traceback(true)
                .with_memory_cap(64),
        )
        .unwrap_err();
        assert!(matches!(
            err,
            Error::MemoryCapExceeded { cap_bytes: 64, .. }
        ));
    }

    #[test]
    fn predecessors_on_fixture() {
        let tree = KeywordTree::from_patterns(&["aab", "aba", "ba"]);
        let mut reg = StateRegistry::new();
        let from = reg.intern(DpState::new(4, ConstraintMask::EMPTY));
        let target = DpState::new(5, ConstraintMask(6));
        reg.intern(target);
        assert_eq!(predecessor_set(&reg, &tree, target, b'a'), vec![from]);
        // No node steps to the root under 'b'.
        let root = DpState::new(0, ConstraintMask::EMPTY);
        assert!(predecessor_set(&reg, &tree, root, b'b').is_empty());
        // Outside the alphabet every mask-preserving state falls back to the root.
        assert_eq!(
            predecessor_set(&reg, &tree, root, b'z'),
            vec![StateId(0), from]
        );
    }
}
