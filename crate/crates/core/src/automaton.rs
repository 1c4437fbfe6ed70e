//! Keyword tree (Aho-Corasick automaton) over a constraint set.
//!
//! Nodes are numbered in preorder with children visited in ascending byte
//! order, so node ids are a pure function of the pattern set. After
//! construction every node carries its failure link, its completed output
//! set, and a row of the dense transition table over the tree alphabet.

use std::collections::{BTreeMap, VecDeque};
use std::fmt::Write as _;

use crate::error::{Error, Result};

/// Default upper bound on the number of constraints after canonicalization.
pub const DEFAULT_CONSTRAINT_LIMIT: usize = 16;

/// Hard ceiling: masks are stored in a `u64`.
pub const MAX_CONSTRAINT_LIMIT: usize = 64;

/// A validated set of non-empty constraint strings.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConstraintSet {
    patterns: Vec<Vec<u8>>,
    limit: usize,
}

impl ConstraintSet {
    /// Validates `patterns` as given, without removing duplicates or substrings.
    pub fn new<I, P>(patterns: I) -> Result<Self>
    where
        I: IntoIterator<Item = P>,
        P: AsRef<[u8]>,
    {
        Self::with_limit(patterns, DEFAULT_CONSTRAINT_LIMIT)
    }

    pub fn with_limit<I, P>(patterns: I, limit: usize) -> Result<Self>
    where
        I: IntoIterator<Item = P>,
        P: AsRef<[u8]>,
    {
        check_limit(limit)?;
        let patterns = collect_nonempty(patterns)?;
        if patterns.len() > limit {
            return Err(Error::TooManyConstraints {
                count: patterns.len(),
                limit,
            });
        }
        Ok(ConstraintSet { patterns, limit })
    }

    pub fn empty() -> Self {
        ConstraintSet {
            patterns: Vec::new(),
            limit: DEFAULT_CONSTRAINT_LIMIT,
        }
    }

    /// Removes duplicates and every pattern that is a proper substring of
    /// another, keeping survivors in their original order.
    pub fn canonicalize<I, P>(patterns: I) -> Result<Canonical>
    where
        I: IntoIterator<Item = P>,
        P: AsRef<[u8]>,
    {
        canonicalize_with_limit(patterns, DEFAULT_CONSTRAINT_LIMIT)
    }

    pub fn patterns(&self) -> &[Vec<u8>] {
        &self.patterns
    }

    pub fn pattern(&self, index: usize) -> &[u8] {
        &self.patterns[index]
    }

    /// Number of constraints `d`.
    pub fn len(&self) -> usize {
        self.patterns.len()
    }

    pub fn is_empty(&self) -> bool {
        self.patterns.is_empty()
    }

    /// Total pattern length `r`.
    pub fn total_len(&self) -> usize {
        self.patterns.iter().map(Vec::len).sum()
    }

    pub fn limit(&self) -> usize {
        self.limit
    }
}

fn check_limit(limit: usize) -> Result<()> {
    if limit > MAX_CONSTRAINT_LIMIT {
        return Err(Error::InvalidLimit { limit });
    }
    Ok(())
}

fn collect_nonempty<I, P>(patterns: I) -> Result<Vec<Vec<u8>>>
where
    I: IntoIterator<Item = P>,
    P: AsRef<[u8]>,
{
    patterns
        .into_iter()
        .enumerate()
        .map(|(index, p)| {
            let p = p.as_ref();
            if p.is_empty() {
                Err(Error::EmptyPattern { index })
            } else {
                Ok(p.to_vec())
            }
        })
        .collect()
}

/// Why a pattern was dropped during canonicalization.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RemovalReason {
    /// Identical to an earlier pattern.
    Duplicate,
    /// A proper substring of the retained pattern `superstring`.
    SubstringOf { superstring: Vec<u8> },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Removal {
    /// Position of the dropped pattern in the input list.
    pub input_index: usize,
    pub pattern: Vec<u8>,
    pub reason: RemovalReason,
}

impl Removal {
    /// The retained pattern that makes this one redundant.
    pub fn witness(&self) -> &[u8] {
        match &self.reason {
            RemovalReason::Duplicate => &self.pattern,
            RemovalReason::SubstringOf { superstring } => superstring,
        }
    }
}

/// Result of [`ConstraintSet::canonicalize`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Canonical {
    pub set: ConstraintSet,
    pub removed: Vec<Removal>,
}

pub fn canonicalize_with_limit<I, P>(patterns: I, limit: usize) -> Result<Canonical>
where
    I: IntoIterator<Item = P>,
    P: AsRef<[u8]>,
{
    check_limit(limit)?;
    let input = collect_nonempty(patterns)?;

    // Duplicates: sort a copy of the indices, keep the first occurrence.
    let mut order: Vec<usize> = (0..input.len()).collect();
    order.sort_by(|&a, &b| input[a].cmp(&input[b]).then(a.cmp(&b)));
    let mut is_duplicate = vec![false; input.len()];
    for w in order.windows(2) {
        if input[w[0]] == input[w[1]] {
            is_duplicate[w[1]] = true;
        }
    }
    let unique: Vec<usize> = (0..input.len()).filter(|&i| !is_duplicate[i]).collect();
    let unique_patterns: Vec<&[u8]> = unique.iter().map(|&i| input[i].as_slice()).collect();

    // Substrings: a terminal node is redundant when a failure link points at
    // it (it is a proper suffix of some pattern prefix) or when it has
    // children (it is a proper prefix of a longer pattern).
    let tree = KeywordTree::from_patterns(&unique_patterns);
    let mut marked = vec![false; tree.node_count()];
    for node in tree.nodes().iter().skip(1) {
        marked[node.pre] = true;
        if !node.children.is_empty() {
            marked[node.id] = true;
        }
    }
    let terminal_of: Vec<usize> = {
        let mut v = vec![0; unique.len()];
        for node in tree.nodes() {
            if let Some(p) = node.own_terminal {
                v[p] = node.id;
            }
        }
        v
    };
    let survives: Vec<bool> = terminal_of.iter().map(|&n| !marked[n]).collect();

    // Each survivor's trie path visits every pattern occurring in it.
    let mut superstring: Vec<Option<usize>> = vec![None; unique.len()];
    for (u, _) in survives.iter().enumerate().filter(|(_, &s)| s) {
        for node in tree.path(terminal_of[u]) {
            for &q in tree.output(node) {
                if q != u && superstring[q].is_none() {
                    superstring[q] = Some(u);
                }
            }
        }
    }

    // Position of each input's first occurrence within `unique`.
    let mut unique_pos = vec![0; input.len()];
    for (u, &i) in unique.iter().enumerate() {
        unique_pos[i] = u;
    }
    let mut unique_of = vec![0; input.len()];
    let mut leader = 0;
    for &i in &order {
        if !is_duplicate[i] {
            leader = unique_pos[i];
        }
        unique_of[i] = leader;
    }

    let mut removed = Vec::new();
    let mut kept = Vec::new();
    for (i, pattern) in input.iter().enumerate() {
        let u = unique_of[i];
        let reason = if survives[u] {
            if !is_duplicate[i] {
                kept.push(pattern.clone());
                continue;
            }
            RemovalReason::Duplicate
        } else {
            let sup = superstring[u].expect("every dropped pattern occurs in a survivor");
            RemovalReason::SubstringOf {
                superstring: unique_patterns[sup].to_vec(),
            }
        };
        removed.push(Removal {
            input_index: i,
            pattern: pattern.clone(),
            reason,
        });
    }

    if kept.len() > limit {
        return Err(Error::TooManyConstraints {
            count: kept.len(),
            limit,
        });
    }
    Ok(Canonical {
        set: ConstraintSet {
            patterns: kept,
            limit,
        },
        removed,
    })
}

/// Node id in a [`KeywordTree`]; the root is 0.
pub type NodeId = usize;

pub const ROOT: NodeId = 0;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TreeNode {
    pub id: NodeId,
    pub parent: Option<NodeId>,
    pub in_edge: Option<u8>,
    pub depth: usize,
    pub children: BTreeMap<u8, NodeId>,
    /// Length of the longest proper suffix of the label that is a pattern prefix.
    pub lp: usize,
    /// Failure link: the node spelling that suffix. The root links to itself.
    pub pre: NodeId,
    /// Index of the pattern spelled exactly by this node.
    pub own_terminal: Option<usize>,
    /// Indices of all patterns that are suffixes of the label, ascending.
    pub output: Vec<usize>,
}

/// Preorder-numbered trie with failure links, output sets and δ.
///
/// Immutable once built; share it freely between solver instances.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KeywordTree {
    nodes: Vec<TreeNode>,
    patterns: Vec<Vec<u8>>,
    alphabet: Vec<u8>,
    column: [u16; 256],
    delta: Vec<NodeId>,
}

const NO_COLUMN: u16 = u16::MAX;

impl KeywordTree {
    /// Builds the complete automaton: trie, failure links, output sets and δ.
    pub fn build(cs: &ConstraintSet) -> Self {
        Self::from_patterns(cs.patterns())
    }

    /// Builds over raw patterns. Patterns must be non-empty; duplicates are
    /// allowed (only the first becomes the node's own terminal, later copies
    /// still appear in output sets).
    pub fn from_patterns<P: AsRef<[u8]>>(patterns: &[P]) -> Self {
        let mut tree = Self::trie(patterns);
        tree.compute_failure_links();
        tree.complete_output_sets();
        tree.compute_delta();
        tree
    }

    /// Trie only, with preorder ids and own terminals. Failure links point at
    /// the root and output sets hold just the own terminal until the later
    /// passes run.
    pub fn trie<P: AsRef<[u8]>>(patterns: &[P]) -> Self {
        // Build with insertion ids first, then renumber in preorder.
        struct Raw {
            children: BTreeMap<u8, usize>,
            terminals: Vec<usize>,
        }
        let mut raw = vec![Raw {
            children: BTreeMap::new(),
            terminals: Vec::new(),
        }];
        for (index, p) in patterns.iter().enumerate() {
            let p = p.as_ref();
            assert!(!p.is_empty(), "keyword tree patterns must be non-empty");
            let mut cur = 0;
            for &b in p {
                cur = match raw[cur].children.get(&b) {
                    Some(&next) => next,
                    None => {
                        raw.push(Raw {
                            children: BTreeMap::new(),
                            terminals: Vec::new(),
                        });
                        let next = raw.len() - 1;
                        raw[cur].children.insert(b, next);
                        next
                    }
                };
            }
            raw[cur].terminals.push(index);
        }

        let mut nodes: Vec<TreeNode> = Vec::with_capacity(raw.len());
        // (raw id, parent preorder id, edge byte, depth)
        let mut stack: Vec<(usize, Option<NodeId>, Option<u8>, usize)> = vec![(0, None, None, 0)];
        while let Some((rid, parent, in_edge, depth)) = stack.pop() {
            let id = nodes.len();
            if let (Some(p), Some(b)) = (parent, in_edge) {
                nodes[p].children.insert(b, id);
            }
            let terminals = &raw[rid].terminals;
            nodes.push(TreeNode {
                id,
                parent,
                in_edge,
                depth,
                children: BTreeMap::new(),
                lp: 0,
                pre: ROOT,
                own_terminal: terminals.first().copied(),
                output: terminals.clone(),
            });
            for (&b, &child) in raw[rid].children.iter().rev() {
                stack.push((child, Some(id), Some(b), depth + 1));
            }
        }

        let mut alphabet: Vec<u8> = patterns
            .iter()
            .flat_map(|p| p.as_ref().iter().copied())
            .collect();
        alphabet.sort_unstable();
        alphabet.dedup();
        let mut column = [NO_COLUMN; 256];
        for (c, &b) in alphabet.iter().enumerate() {
            column[b as usize] = c as u16;
        }

        KeywordTree {
            nodes,
            patterns: patterns.iter().map(|p| p.as_ref().to_vec()).collect(),
            alphabet,
            column,
            delta: Vec::new(),
        }
    }

    /// Breadth-first failure links: the failure target of a child reached by
    /// `b` is found by following the parent's chain until some node has a
    /// `b` edge.
    pub fn compute_failure_links(&mut self) {
        let mut queue: VecDeque<NodeId> = VecDeque::new();
        self.nodes[ROOT].pre = ROOT;
        self.nodes[ROOT].lp = 0;
        let root_children: Vec<NodeId> = self.nodes[ROOT].children.values().copied().collect();
        for c in root_children {
            self.nodes[c].pre = ROOT;
            self.nodes[c].lp = 0;
            queue.push_back(c);
        }
        while let Some(u) = queue.pop_front() {
            let children: Vec<(u8, NodeId)> = self.nodes[u]
                .children
                .iter()
                .map(|(&b, &c)| (b, c))
                .collect();
            for (b, child) in children {
                let mut f = self.nodes[u].pre;
                let target = loop {
                    if let Some(&next) = self.nodes[f].children.get(&b) {
                        break next;
                    }
                    if f == ROOT {
                        break ROOT;
                    }
                    f = self.nodes[f].pre;
                };
                self.nodes[child].pre = target;
                self.nodes[child].lp = self.nodes[target].depth;
                queue.push_back(child);
            }
        }
    }

    /// `O_i = own(i) ∪ O_pre(i)`, in breadth-first order so the failure
    /// target is always complete first. Requires failure links.
    pub fn complete_output_sets(&mut self) {
        for id in self.bfs_order() {
            if id == ROOT {
                continue;
            }
            let pre = self.nodes[id].pre;
            let mut out: Vec<usize> = self.own_terminals(id);
            out.extend_from_slice(&self.nodes[pre].output);
            out.sort_unstable();
            out.dedup();
            self.nodes[id].output = out;
        }
    }

    fn own_terminals(&self, id: NodeId) -> Vec<usize> {
        match self.nodes[id].own_terminal {
            None => Vec::new(),
            Some(first) => {
                // Duplicated patterns share the node.
                let label = &self.patterns[first];
                (first..self.patterns.len())
                    .filter(|&p| self.patterns[p] == *label)
                    .collect()
            }
        }
    }

    fn compute_delta(&mut self) {
        let k = self.alphabet.len();
        let mut delta = vec![ROOT; self.nodes.len() * k];
        for id in self.bfs_order() {
            for (c, &b) in self.alphabet.iter().enumerate() {
                delta[id * k + c] = match self.nodes[id].children.get(&b) {
                    Some(&child) => child,
                    None if id == ROOT => ROOT,
                    None => delta[self.nodes[id].pre * k + c],
                };
            }
        }
        self.delta = delta;
    }

    fn bfs_order(&self) -> Vec<NodeId> {
        let mut order = Vec::with_capacity(self.nodes.len());
        order.push(ROOT);
        let mut head = 0;
        while head < order.len() {
            let u = order[head];
            head += 1;
            order.extend(self.nodes[u].children.values().copied());
        }
        order
    }

    /// The Aho-Corasick next function δ. Bytes outside the alphabet go to the root.
    #[inline]
    pub fn next(&self, node: NodeId, c: u8) -> NodeId {
        match self.column(c) {
            Some(col) => self.delta[node * self.alphabet.len() + col],
            None => ROOT,
        }
    }

    /// Column of `c` in the dense δ table, if `c` occurs in some pattern.
    #[inline]
    pub fn column(&self, c: u8) -> Option<usize> {
        match self.column[c as usize] {
            NO_COLUMN => None,
            col => Some(col as usize),
        }
    }

    pub fn nodes(&self) -> &[TreeNode] {
        &self.nodes
    }

    pub fn node(&self, id: NodeId) -> &TreeNode {
        &self.nodes[id]
    }

    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    pub fn alphabet(&self) -> &[u8] {
        &self.alphabet
    }

    pub fn patterns(&self) -> &[Vec<u8>] {
        &self.patterns
    }

    pub fn pattern_count(&self) -> usize {
        self.patterns.len()
    }

    pub fn pre(&self, id: NodeId) -> NodeId {
        self.nodes[id].pre
    }

    pub fn lp(&self, id: NodeId) -> usize {
        self.nodes[id].lp
    }

    pub fn depth(&self, id: NodeId) -> usize {
        self.nodes[id].depth
    }

    pub fn output(&self, id: NodeId) -> &[usize] {
        &self.nodes[id].output
    }

    /// `L(id)`, the string spelled from the root.
    pub fn label(&self, id: NodeId) -> Vec<u8> {
        self.path(id)
            .filter_map(|n| self.nodes[n].in_edge)
            .collect()
    }

    /// Nodes from the root down to `id`, inclusive.
    pub fn path(&self, id: NodeId) -> impl Iterator<Item = NodeId> {
        let mut up = Vec::with_capacity(self.nodes[id].depth + 1);
        let mut cur = Some(id);
        while let Some(n) = cur {
            up.push(n);
            cur = self.nodes[n].parent;
        }
        up.into_iter().rev()
    }

    /// Failure list of `id`: `pre(id), pre(pre(id)), ...` ending at the root.
    pub fn failure_list(&self, id: NodeId) -> Vec<NodeId> {
        let mut list = Vec::new();
        let mut cur = id;
        while cur != ROOT {
            cur = self.nodes[cur].pre;
            list.push(cur);
        }
        list
    }

    /// Node spelling exactly `s`, if `s` is a pattern prefix.
    pub fn find(&self, s: &[u8]) -> Option<NodeId> {
        s.iter()
            .try_fold(ROOT, |cur, b| self.nodes[cur].children.get(b).copied())
    }

    /// Graphviz rendering: solid trie edges, dashed failure links (links to
    /// the root are omitted).
    pub fn to_dot(&self) -> String {
        let mut out = String::from("digraph keyword_tree {\n    node [shape=circle];\n");
        for node in &self.nodes {
            let label = escape_dot(&self.label(node.id));
            let shape = if node.own_terminal.is_some() {
                ", shape=doublecircle"
            } else {
                ""
            };
            let _ = writeln!(
                out,
                "    n{} [label=\"{}:{}\"{}];",
                node.id, node.id, label, shape
            );
        }
        for node in &self.nodes {
            for (&b, &child) in &node.children {
                let _ = writeln!(
                    out,
                    "    n{} -> n{} [label=\"{}\"];",
                    node.id,
                    child,
                    escape_dot(&[b])
                );
            }
        }
        for node in self.nodes.iter().skip(1).filter(|n| n.pre != ROOT) {
            let _ = writeln!(out, "    n{} -> n{} [style=dashed];", node.id, node.pre);
        }
        out.push_str("}\n");
        out
    }
}

fn escape_dot(bytes: &[u8]) -> String {
    let mut s = String::new();
    for ch in String::from_utf8_lossy(bytes).chars() {
        match ch {
            '"' | '\\' => {
                s.push('\\');
                s.push(ch);
            }
            c if c.is_control() => {
                let _ = write!(s, "\\\\x{:02x}", c as u32);
            }
            c => s.push(c),
        }
    }
    s
}
