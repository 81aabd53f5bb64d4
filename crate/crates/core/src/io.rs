//! Plain-text arrangement files: one line per projective line, three
//! integers separated by whitespace, `#` starts a comment.

use num_bigint::BigInt;

use crate::arrangement::{parse_line, ProjArrangement};
use crate::{Error, Result};

pub fn parse_arrangement(text: &str) -> Result<ProjArrangement> {
    let mut lines = Vec::new();
    for (no, raw) in text.lines().enumerate() {
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let parse_err = |message: String| Error::Parse { line: no + 1, message };
        let coeffs = content
            .split_whitespace()
            .map(|tok| tok.parse::<BigInt>().map_err(|_| parse_err(format!("not an integer: `{tok}`"))))
            .collect::<Result<Vec<_>>>()?;
        let coeffs: [BigInt; 3] = coeffs
            .try_into()
            .map_err(|v: Vec<BigInt>| parse_err(format!("expected 3 integers, found {}", v.len())))?;
        lines.push(parse_line(coeffs)?);
    }
    ProjArrangement::new(lines)
}

pub fn write_arrangement(arr: &ProjArrangement) -> String {
    arr.lines()
        .iter()
        .map(|l| {
            let [a, b, c] = l.coeffs();
            format!("{a} {b} {c}\n")
        })
        .collect()
}
