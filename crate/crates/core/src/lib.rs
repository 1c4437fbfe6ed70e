//! Longest common subsequence of two byte strings that must contain every
//! string of a constraint set as a contiguous substring.
//!
//! The constraint set is compiled into a keyword tree with failure links
//! ([`KeywordTree`]). A dynamic program over cells `(i, j)` then tracks, for
//! each live pair of automaton node and constraint mask ([`DpState`]), the
//! longest common subsequence of the two prefixes that ends in that state.
//!
//! ```
//! use mstr_lcs::{solve, ConstraintSet, SolveOptions};
//!
//! let cs = ConstraintSet::canonicalize(["aab", "aba", "ba"]).unwrap().set;
//! let res = solve(b"aaba", b"aaba", &cs, SolveOptions::default().with_traceback(true)).unwrap();
//! assert_eq!(res.length, Some(4));
//! assert_eq!(res.witness.unwrap().sequence, b"aaba");
//! ```

pub mod automaton;
pub mod bench;
mod error;
pub mod input;
pub mod oracle;
pub mod solver;
pub mod state;
pub mod traceback;

pub use automaton::{
    Canonical, ConstraintSet, KeywordTree, NodeId, Removal, RemovalReason, TreeNode,
};
pub use error::{Error, Result};
pub use solver::{solve, solve_with_tree, DpTable, SolveOptions, SolveResult, SolveStats};
pub use state::{ConstraintMask, DpState, StateId, StateRegistry};
pub use traceback::{backtrack, Witness};
