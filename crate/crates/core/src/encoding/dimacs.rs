//! DIMACS CNF text.
//!
//! With a universe supplied, comment lines precede the header:
//!
//! ```text
//! c var <id> poset <i> pair <x> <y> <label-x> <label-y>
//! c sel <id> order <j> poset <i>
//! ```

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::order::Universe;

use super::{Cnf, Lit};

pub fn emit_dimacs(cnf: &Cnf, names: Option<&Universe>) -> String {
    let mut out = String::new();
    if let Some(u) = names {
        let vm = cnf.var_map();
        for id in 1..=vm.base_count() as Lit {
            let (i, x, y) = vm.decode(id).expect("base variable");
            let _ = writeln!(
                out,
                "c var {id} poset {i} pair {x} {y} {} {}",
                u.label(x),
                u.label(y)
            );
        }
        for s in cnf.selectors() {
            let _ = writeln!(out, "c sel {} order {} poset {}", s.var, s.order, s.poset);
        }
    }
    let _ = writeln!(out, "p cnf {} {}", cnf.num_vars(), cnf.len());
    for c in cnf.clauses() {
        for l in c {
            let _ = write!(out, "{l} ");
        }
        out.push_str("0\n");
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum VarComment {
    Relation {
        id: Lit,
        poset: usize,
        x: usize,
        y: usize,
    },
    Selector {
        id: Lit,
        order: usize,
        poset: usize,
    },
}

/// Reads back the variable map written by [`emit_dimacs`].
pub fn parse_var_comments(text: &str) -> Vec<VarComment> {
    let num = |s: Option<&str>| s.and_then(|t| t.parse::<usize>().ok());
    text.lines()
        .filter_map(|line| {
            let mut t = line.split_whitespace();
            if t.next() != Some("c") {
                return None;
            }
            match t.next()? {
                "var" => {
                    let id = num(t.next())? as Lit;
                    (t.next()? == "poset").then_some(())?;
                    let poset = num(t.next())?;
                    (t.next()? == "pair").then_some(())?;
                    Some(VarComment::Relation {
                        id,
                        poset,
                        x: num(t.next())?,
                        y: num(t.next())?,
                    })
                }
                "sel" => {
                    let id = num(t.next())? as Lit;
                    (t.next()? == "order").then_some(())?;
                    let order = num(t.next())?;
                    (t.next()? == "poset").then_some(())?;
                    Some(VarComment::Selector {
                        id,
                        order,
                        poset: num(t.next())?,
                    })
                }
                _ => None,
            }
        })
        .collect()
}

/// Parses DIMACS CNF into `(num_vars, clauses)`.
pub fn parse_dimacs(text: &str) -> Result<(usize, Vec<Vec<Lit>>)> {
    let bad = |m: &str| Error::Backend(format!("malformed DIMACS: {m}"));
    let mut header = None;
    let mut clauses = Vec::new();
    let mut current = Vec::new();
    for line in text.lines() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('c') {
            continue;
        }
        if let Some(rest) = line.strip_prefix('p') {
            let f: Vec<&str> = rest.split_whitespace().collect();
            if f.len() != 3 || f[0] != "cnf" {
                return Err(bad("header"));
            }
            let v = f[1].parse::<usize>().map_err(|_| bad("header"))?;
            let c = f[2].parse::<usize>().map_err(|_| bad("header"))?;
            header = Some((v, c));
            continue;
        }
        for tok in line.split_whitespace() {
            let l: Lit = tok.parse().map_err(|_| bad("literal"))?;
            if l == 0 {
                clauses.push(std::mem::take(&mut current));
            } else {
                current.push(l);
            }
        }
    }
    let (v, c) = header.ok_or_else(|| bad("missing header"))?;
    if !current.is_empty() || clauses.len() != c {
        return Err(bad("clause count"));
    }
    Ok((v, clauses))
}

#[cfg(test)]
mod tests {
    use super::super::{encode_axioms, Origin, VarMap};
    use super::*;

    #[test]
    fn empty_formula() {
        let cnf = Cnf::new(VarMap::new(1, 1).unwrap());
        assert_eq!(emit_dimacs(&cnf, None), "p cnf 0 0\n");
    }

    #[test]
    fn single_clause() {
        let mut cnf = Cnf::new(VarMap::new(1, 2).unwrap());
        cnf.add(vec![1, -2], Origin::Coverage);
        assert_eq!(emit_dimacs(&cnf, None), "p cnf 2 1\n1 -2 0\n");
    }

    #[test]
    fn two_element_axioms() {
        let mut cnf = Cnf::new(VarMap::new(1, 2).unwrap());
        encode_axioms(&mut cnf);
        assert_eq!(emit_dimacs(&cnf, None), "p cnf 2 1\n-1 -2 0\n");
    }

    #[test]
    fn parse_round_trip() {
        let mut cnf = Cnf::new(VarMap::new(2, 3).unwrap());
        encode_axioms(&mut cnf);
        let text = emit_dimacs(&cnf, Some(&Universe::letters(3)));
        let (v, clauses) = parse_dimacs(&text).unwrap();
        assert_eq!(v, 12);
        assert_eq!(clauses, cnf.clauses());
        assert!(parse_dimacs("1 2 0\n").is_err());
    }
}
