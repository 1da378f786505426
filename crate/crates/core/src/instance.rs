//! Text format for order sets.
//!
//! One linear order per line. Blank lines and lines starting with `#` are
//! skipped. If the first order line contains whitespace, every line is split
//! on whitespace into labels; otherwise every character is a label.

use std::collections::HashSet;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::order::{LinearOrder, OrderSet, Universe};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Mode {
    Tokens,
    Chars,
}

fn tokenize(line: &str, mode: Mode) -> Vec<String> {
    match mode {
        Mode::Tokens => line.split_whitespace().map(str::to_owned).collect(),
        Mode::Chars => line
            .chars()
            .filter(|c| !c.is_whitespace())
            .map(|c| c.to_string())
            .collect(),
    }
}

/// Parses an instance; the universe is the label set of the first order, in
/// the order the labels appear there.
pub fn parse_instance(text: &str) -> Result<OrderSet> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));

    let (first_no, first) = lines.next().ok_or(Error::EmptyInput)?;
    let mode = if first.chars().any(char::is_whitespace) {
        Mode::Tokens
    } else {
        Mode::Chars
    };
    let labels = tokenize(first, mode);
    let mut seen = HashSet::new();
    if !labels.iter().all(|l| seen.insert(l.as_str())) {
        return Err(Error::NotAPermutation { line: first_no });
    }
    let universe = Arc::new(Universe::new(labels)?);
    let mut set = OrderSet::new(universe.clone());
    set.insert(LinearOrder::identity(universe.len()));

    for (no, line) in lines {
        let mut seq = Vec::with_capacity(universe.len());
        for tok in tokenize(line, mode) {
            let x = universe
                .index_of(&tok)
                .ok_or(Error::UniverseMismatch { line: no })?;
            seq.push(x);
        }
        if seq.len() != universe.len() {
            return Err(Error::NotAPermutation { line: no });
        }
        let l = LinearOrder::from_seq(seq).map_err(|_| Error::NotAPermutation { line: no })?;
        if !set.insert(l) {
            return Err(Error::DuplicateOrder { line: no });
        }
    }
    Ok(set)
}

/// Renders an order set in the instance format, one order per line, with
/// optional `#` header lines.
pub fn write_instance(set: &OrderSet, header: &[String]) -> String {
    let mut out = String::new();
    for h in header {
        out.push_str("# ");
        out.push_str(h);
        out.push('\n');
    }
    let sep = if set.universe().is_compact() { "" } else { " " };
    for l in set {
        let line: Vec<&str> = l.seq().iter().map(|&x| set.universe().label(x)).collect();
        out.push_str(&line.join(sep));
        out.push('\n');
    }
    out
}
