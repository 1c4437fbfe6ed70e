#![no_main]

//! Input layout: `x 0xff y 0xff patterns`, patterns newline-separated.
//! Inputs are truncated to the oracle's limits, then the DP and the
//! exhaustive search must agree and the witness must be valid.

use libfuzzer_sys::fuzz_target;
use mstr_lcs::input::parse_pattern_list;
use mstr_lcs::oracle::{
    brute_force_solve, contains_substring_all, is_subsequence, MAX_INPUT_LEN, MAX_PATTERN_TOTAL,
};
use mstr_lcs::{solve, ConstraintSet, SolveOptions};

fuzz_target!(|data: &[u8]| {
    let mut parts = data.splitn(3, |&b| b == 0xff);
    let x = parts.next().unwrap_or_default();
    let y = parts.next().unwrap_or_default();
    let (x, y) = (&x[..x.len().min(12)], &y[..y.len().min(12)]);
    let Ok(mut patterns) = parse_pattern_list(parts.next().unwrap_or_default()) else {
        return;
    };
    patterns.truncate(3);
    if patterns.iter().map(Vec::len).sum::<usize>() > MAX_PATTERN_TOTAL || x.len() > MAX_INPUT_LEN {
        return;
    }

    let cs = ConstraintSet::new(&patterns).unwrap();
    let oracle = brute_force_solve(x, y, &patterns).unwrap();
    let res = solve(x, y, &cs, SolveOptions::default().with_traceback(true)).unwrap();
    assert_eq!(res.feasible, oracle.feasible);
    assert_eq!(res.length.map(|l| l as usize), oracle.length);
    if let Some(w) = res.witness {
        assert!(is_subsequence(&w.sequence, x) && is_subsequence(&w.sequence, y));
        assert!(contains_substring_all(&w.sequence, &patterns));
        assert_eq!(Some(w.len()), oracle.length);
    }

    let canon = ConstraintSet::canonicalize(&patterns).unwrap().set;
    let again = solve(x, y, &canon, SolveOptions::default()).unwrap();
    assert_eq!(again.length, res.length);
});
