#![no_main]

//! Builds the automaton over newline-separated patterns and checks δ and the
//! output sets against a naive scan.

use libfuzzer_sys::fuzz_target;
use mstr_lcs::input::parse_pattern_list;
use mstr_lcs::KeywordTree;

fn is_prefix_of_some(patterns: &[Vec<u8>], s: &[u8]) -> bool {
    patterns.iter().any(|p| p.starts_with(s))
}

fuzz_target!(|data: &[u8]| {
    if data.len() > 256 {
        return;
    }
    let Ok(patterns) = parse_pattern_list(data) else {
        return;
    };
    let tree = KeywordTree::from_patterns(&patterns);
    let r: usize = patterns.iter().map(Vec::len).sum();
    assert!(tree.node_count() <= r + 1);

    for id in 0..tree.node_count() {
        let label = tree.label(id);
        for (j, p) in patterns.iter().enumerate() {
            assert_eq!(tree.output(id).contains(&j), label.ends_with(p));
        }
        for &c in tree.alphabet() {
            let mut s = label.clone();
            s.push(c);
            let expect = (0..=s.len())
                .map(|k| &s[k..])
                .find(|suf| is_prefix_of_some(&patterns, suf))
                .unwrap();
            assert_eq!(tree.label(tree.next(id, c)), expect);
        }
    }
});
