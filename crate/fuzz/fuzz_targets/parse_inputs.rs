#![no_main]

//! Pattern-file and sequence-file parsing, followed by canonicalization of
//! whatever parses. Nothing here may panic.

use libfuzzer_sys::fuzz_target;
use mstr_lcs::automaton::{canonicalize_with_limit, MAX_CONSTRAINT_LIMIT};
use mstr_lcs::input::{parse_pattern_list, parse_sequence};

fuzz_target!(|data: &[u8]| {
    let seq = parse_sequence(data);
    assert!(data.starts_with(seq));
    assert!(data.len() - seq.len() <= 2);

    if data.len() > 4096 {
        return;
    }
    let Ok(patterns) = parse_pattern_list(data) else {
        return;
    };
    assert!(patterns
        .iter()
        .all(|p| !p.is_empty() && !p.contains(&b'\n')));
    if let Ok(canon) = canonicalize_with_limit(&patterns, MAX_CONSTRAINT_LIMIT) {
        assert_eq!(canon.set.len() + canon.removed.len(), patterns.len());
        for r in &canon.removed {
            let w = r.witness();
            assert!(w
                .windows(r.pattern.len())
                .any(|s| s == r.pattern.as_slice()));
        }
    }
});
