//! Byte-level parsing of sequence and pattern files.

use crate::error::{Error, Result};

/// A sequence file is taken verbatim, minus one trailing `\n` or `\r\n`.
pub fn parse_sequence(data: &[u8]) -> &[u8] {
    match data.strip_suffix(b"\n") {
        Some(rest) => rest.strip_suffix(b"\r").unwrap_or(rest),
        None => data,
    }
}

/// One pattern per line. A single trailing newline is allowed; any other
/// empty line is an error. Bytes are not trimmed or decoded.
pub fn parse_pattern_list(data: &[u8]) -> Result<Vec<Vec<u8>>> {
    if data.is_empty() {
        return Ok(Vec::new());
    }
    let body = data.strip_suffix(b"\n").unwrap_or(data);
    body.split(|&b| b == b'\n')
        .enumerate()
        .map(|(index, line)| {
            if line.is_empty() {
                Err(Error::EmptyPattern { index })
            } else {
                Ok(line.to_vec())
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sequences_lose_one_newline() {
        assert_eq!(parse_sequence(b"aaba\n"), b"aaba");
        assert_eq!(parse_sequence(b"aaba"), b"aaba");
        assert_eq!(parse_sequence(b"aaba\n\n"), b"aaba\n");
        assert_eq!(parse_sequence(b"aaba\r\n"), b"aaba");
        assert_eq!(parse_sequence(b"aaba\r"), b"aaba\r");
        assert_eq!(parse_sequence(b""), b"");
    }

    #[test]
    fn pattern_lines() {
        assert_eq!(
            parse_pattern_list(b"aab\naba\nba\n").unwrap(),
            vec![b"aab".to_vec(), b"aba".to_vec(), b"ba".to_vec()]
        );
        assert_eq!(parse_pattern_list(b"x").unwrap(), vec![b"x".to_vec()]);
        assert!(parse_pattern_list(b"").unwrap().is_empty());
        assert_eq!(
            parse_pattern_list(b"a\n\nb\n").unwrap_err(),
            Error::EmptyPattern { index: 1 }
        );
        assert_eq!(
            parse_pattern_list(b"\n").unwrap_err(),
            Error::EmptyPattern { index: 0 }
        );
    }
}
