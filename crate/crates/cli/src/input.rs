//! The input file grammar: one rational per line, `p/q` or an integer.
//! `#` starts a comment and blank lines are skipped. Duplicates collapse.

use sha2::{Digest, Sha256};
use sumquot::{RatSet, Rational};

use crate::CliError;

pub fn parse_input(text: &str) -> Result<RatSet, CliError> {
    let mut values = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.split_once('#').map_or(raw, |(body, _)| body).trim();
        if line.is_empty() {
            continue;
        }
        let value: Rational = line
            .parse()
            .map_err(|e| CliError::Input(format!("line {}: {e}", i + 1)))?;
        values.push(value);
    }
    Ok(RatSet::from_vec(values))
}

/// The canonical text of a set: sorted, reduced, one element per line.
pub fn canonical_lines(a: &RatSet) -> String {
    a.iter()
        .map(|r| r.to_string())
        .collect::<Vec<_>>()
        .join("\n")
}

/// SHA-256 of [`canonical_lines`], lowercase hex.
pub fn input_digest(a: &RatSet) -> String {
    hex::encode(Sha256::digest(canonical_lines(a).as_bytes()))
}
