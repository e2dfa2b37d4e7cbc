//! Line-oriented text format:
//!
//! ```text
//! SLP <n> <sigma> <start>
//! ALPHABET <b1> ... <bsigma>
//! <left> <right>        (one line per variable 1..n)
//! ```

use std::fmt::Write as _;

use super::{Slp, SymbolId};
use crate::error::{Error, Result};

fn perr(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse { line, msg: msg.into() }
}

fn number<T: std::str::FromStr>(tok: &str, line: usize) -> Result<T> {
    if tok.is_empty() || !tok.bytes().all(|b| b.is_ascii_digit()) {
        return Err(perr(line, format!("expected a decimal number, found {tok:?}")));
    }
    tok.parse().map_err(|_| perr(line, format!("number {tok} out of range")))
}

pub fn parse_text(src: &str) -> Result<Slp> {
    let mut lines: Vec<&str> = src.split('\n').collect();
    if lines.last() == Some(&"") {
        lines.pop();
    }
    let lines: Vec<&str> = lines.into_iter().map(|l| l.strip_suffix('\r').unwrap_or(l)).collect();

    let header = lines.first().ok_or_else(|| perr(1, "empty input"))?;
    let tok: Vec<&str> = header.split(' ').collect();
    if tok.len() != 4 || tok[0] != "SLP" {
        return Err(perr(1, "expected `SLP <n> <sigma> <start>`"));
    }
    let n: usize = number(tok[1], 1)?;
    let sigma: usize = number(tok[2], 1)?;
    let start: u32 = number(tok[3], 1)?;

    let alpha = lines.get(1).ok_or_else(|| perr(2, "missing ALPHABET line"))?;
    let tok: Vec<&str> = alpha.split(' ').collect();
    if tok[0] != "ALPHABET" || tok.len() != sigma + 1 {
        return Err(perr(2, format!("expected `ALPHABET` followed by {sigma} byte values")));
    }
    let alphabet = tok[1..].iter().map(|t| number::<u8>(t, 2)).collect::<Result<Vec<u8>>>()?;

    if lines.len() != n + 2 {
        return Err(perr(
            lines.len().min(n + 2) + 1,
            format!("expected {} rule lines, found {}", n, lines.len().saturating_sub(2)),
        ));
    }
    let mut rules = Vec::with_capacity(n);
    for (i, line) in lines[2..].iter().enumerate() {
        let ln = i + 3;
        let tok: Vec<&str> = line.split(' ').collect();
        if tok.len() != 2 {
            return Err(perr(ln, "expected `<left> <right>`"));
        }
        rules.push((SymbolId(number(tok[0], ln)?), SymbolId(number(tok[1], ln)?)));
    }
    let slp = Slp::from_parts_unchecked(n, sigma, SymbolId(start), rules, alphabet);
    slp.validate().map_err(Error::InvalidGrammar)?;
    Ok(slp)
}

pub fn to_text(slp: &Slp) -> String {
    let mut s = String::new();
    writeln!(s, "SLP {} {} {}", slp.n(), slp.sigma(), slp.start()).unwrap();
    s.push_str("ALPHABET");
    for b in slp.alphabet() {
        write!(s, " {b}").unwrap();
    }
    s.push('\n');
    for (l, r) in slp.rules() {
        writeln!(s, "{l} {r}").unwrap();
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::slp::fixtures::grammar_b;

    #[test]
    fn round_trip() {
        let b = grammar_b();
        let text = to_text(&b);
        assert_eq!(text, "SLP 4 1 1\nALPHABET 97\n2 5\n3 5\n4 5\n5 5\n");
        assert_eq!(parse_text(&text).unwrap(), b);
    }

    #[test]
    fn strictness() {
        assert!(parse_text("SLP 1 2 1\nALPHABET 97 98\n2 3").is_ok());
        assert!(parse_text("SLP 1 2 1\nALPHABET 97 98\n2 3\n").is_ok());
        // trailing garbage
        assert!(matches!(
            parse_text("SLP 1 2 1\nALPHABET 97 98\n2 3\nextra\n"),
            Err(Error::Parse { .. })
        ));
        assert!(matches!(parse_text("SLP 1 2 1\nALPHABET 97 98\n2 3 4\n"), Err(Error::Parse { .. })));
        assert!(matches!(parse_text("SLP 1 2 1\nALPHABET 97 300\n2 3\n"), Err(Error::Parse { .. })));
        assert!(matches!(parse_text("SLP 1 2 1\nALPHABET 97\n2 3\n"), Err(Error::Parse { .. })));
        assert!(matches!(parse_text("SLP 1 2 -1\nALPHABET 97 98\n2 3\n"), Err(Error::Parse { .. })));
        assert!(matches!(parse_text(""), Err(Error::Parse { .. })));
        // syntactically fine, semantically cyclic
        assert!(matches!(
            parse_text("SLP 1 1 1\nALPHABET 97\n1 2\n"),
            Err(Error::InvalidGrammar(_))
        ));
    }
}
