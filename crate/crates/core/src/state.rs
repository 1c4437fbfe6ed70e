//! Constraint masks and the composite DP state `(node, mask)`.

use std::collections::HashMap;
use std::fmt;

use crate::automaton::{KeywordTree, NodeId, ROOT};
use crate::error::{Error, Result};

/// Bit `i` set means pattern `i` (0-based) already occurs in the subsequence.
#[derive(Clone, Copy, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ConstraintMask(pub u64);

impl ConstraintMask {
    pub const EMPTY: ConstraintMask = ConstraintMask(0);

    /// The mask with index `j`, i.e. the set `{i : bit i of j is set}`.
    pub fn from_index(j: u64, d: usize) -> Result<Self> {
        if j > Self::full(d).0 {
            return Err(Error::IndexOutOfRange { index: j, d });
        }
        Ok(ConstraintMask(j))
    }

    /// `2^d - 1`; for `d = 0` this is the empty mask.
    pub fn full(d: usize) -> Self {
        match d {
            0 => ConstraintMask(0),
            d if d >= 64 => ConstraintMask(u64::MAX),
            d => ConstraintMask((1u64 << d) - 1),
        }
    }

    pub fn bits(self) -> u64 {
        self.0
    }

    pub fn contains(self, pattern: usize) -> bool {
        pattern < 64 && self.0 & (1 << pattern) != 0
    }

    pub fn is_full(self, d: usize) -> bool {
        self == Self::full(d)
    }

    pub fn is_superset_of(self, other: ConstraintMask) -> bool {
        self.0 & other.0 == other.0
    }

    pub fn union(self, other: ConstraintMask) -> Self {
        ConstraintMask(self.0 | other.0)
    }

    /// Adds the given pattern indices.
    pub fn with_patterns(self, patterns: &[usize]) -> Self {
        patterns.iter().fold(self, |m, &p| {
            debug_assert!(p < 64, "pattern index {p} does not fit the mask");
            ConstraintMask(m.0 | (1 << p))
        })
    }

    pub fn count(self) -> u32 {
        self.0.count_ones()
    }

    /// Member pattern indices, ascending.
    pub fn iter(self) -> impl Iterator<Item = usize> {
        (0..64).filter(move |&i| self.0 & (1 << i) != 0)
    }
}

impl fmt::Debug for ConstraintMask {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "s_{}", self.0)
    }
}

/// The mask with index `j` over `d` constraints.
pub fn mask_from_index(j: u64, d: usize) -> Result<ConstraintMask> {
    ConstraintMask::from_index(j, d)
}

pub fn mask_union(a: ConstraintMask, b: &[usize]) -> ConstraintMask {
    a.with_patterns(b)
}

/// Automaton node reached by scanning a subsequence, plus the patterns it contains.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DpState {
    pub node: NodeId,
    pub mask: ConstraintMask,
}

impl DpState {
    pub const START: DpState = DpState {
        node: ROOT,
        mask: ConstraintMask::EMPTY,
    };

    pub fn new(node: NodeId, mask: ConstraintMask) -> Self {
        DpState { node, mask }
    }
}

/// State after appending `c`: `(δ(α, c), β ∪ O_δ(α, c))`.
pub fn gamma(tree: &KeywordTree, state: DpState, c: u8) -> DpState {
    let node = tree.next(state.node, c);
    DpState {
        node,
        mask: mask_union(state.mask, tree.output(node)),
    }
}

/// Dense, insertion-ordered ids for live states.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct StateId(pub u32);

impl StateId {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

/// Bidirectional `DpState <-> StateId` map. The start state is always id 0.
#[derive(Debug, Clone)]
pub struct StateRegistry {
    states: Vec<DpState>,
    ids: HashMap<DpState, StateId>,
}

impl Default for StateRegistry {
    fn default() -> Self {
        Self::new()
    }
}

impl StateRegistry {
    pub fn new() -> Self {
        let mut reg = StateRegistry {
            states: Vec::new(),
            ids: HashMap::new(),
        };
        reg.intern(DpState::START);
        reg
    }

    pub fn intern(&mut self, state: DpState) -> StateId {
        if let Some(&id) = self.ids.get(&state) {
            return id;
        }
        let id = StateId(u32::try_from(self.states.len()).expect("state registry overflow"));
        self.states.push(state);
        self.ids.insert(state, id);
        id
    }

    pub fn get(&self, state: &DpState) -> Option<StateId> {
        self.ids.get(state).copied()
    }

    pub fn state(&self, id: StateId) -> DpState {
        self.states[id.index()]
    }

    pub fn len(&self) -> usize {
        self.states.len()
    }

    pub fn is_empty(&self) -> bool {
        self.states.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (StateId, DpState)> + '_ {
        self.states
            .iter()
            .enumerate()
            .map(|(i, &s)| (StateId(i as u32), s))
    }
}
