//! Text, JSON and DOT renderings of covers.

use std::fmt::Write as _;

use serde::Serialize;

use crate::driver::Cover;
use crate::order::OrderSet;
use crate::poset::Poset;

#[derive(Debug, Serialize)]
pub struct Report {
    pub universe: Vec<String>,
    pub k: usize,
    pub method: String,
    pub components: usize,
    pub posets: Vec<PosetReport>,
    pub stats: StatsReport,
}

#[derive(Debug, Serialize)]
pub struct PosetReport {
    pub hasse: Vec<[String; 2]>,
    pub relation: Vec<[String; 2]>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub linearizations: Option<Vec<String>>,
}

#[derive(Debug, Serialize)]
pub struct StatsReport {
    pub vars: usize,
    pub clauses: usize,
    pub queries: usize,
    pub solve_ms: f64,
}

fn labelled(p: &Poset, pairs: impl Iterator<Item = (usize, usize)>) -> Vec<[String; 2]> {
    let u = p.universe();
    pairs
        .map(|(x, y)| [u.label(x).to_owned(), u.label(y).to_owned()])
        .collect()
}

pub fn poset_report(p: &Poset, language: Option<&OrderSet>) -> PosetReport {
    PosetReport {
        hasse: labelled(p, p.transitive_reduction().edges.into_iter()),
        relation: labelled(p, p.pairs()),
        linearizations: language.map(OrderSet::sorted_strings),
    }
}

impl Report {
    /// `languages` are attached per poset when given.
    pub fn new(cover: &Cover, languages: Option<&[OrderSet]>) -> Self {
        Report {
            universe: cover.universe.labels().to_vec(),
            k: cover.k(),
            method: cover.stats.method.name().to_owned(),
            components: cover.stats.components,
            posets: cover
                .posets
                .iter()
                .enumerate()
                .map(|(i, p)| poset_report(p, languages.map(|l| &l[i])))
                .collect(),
            stats: StatsReport {
                vars: cover.stats.vars,
                clauses: cover.stats.clauses,
                queries: cover.stats.queries,
                solve_ms: cover.stats.wall.as_secs_f64() * 1e3,
            },
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "k = {}", self.k);
        for (i, p) in self.posets.iter().enumerate() {
            let edges: Vec<String> = p.hasse.iter().map(|[x, y]| format!("{x}<{y}")).collect();
            let _ = writeln!(
                out,
                "poset {i}: {}",
                if edges.is_empty() {
                    "(antichain)".to_owned()
                } else {
                    edges.join(" ")
                }
            );
            if let Some(lins) = &p.linearizations {
                let _ = writeln!(out, "  language: {}", lins.join(" "));
            }
        }
        let _ = writeln!(
            out,
            "method {}, components {}, queries {}, vars {}, clauses {}, {:.3} ms",
            self.method,
            self.components,
            self.stats.queries,
            self.stats.vars,
            self.stats.clauses,
            self.stats.solve_ms
        );
        out
    }
}

/// Hasse diagrams as one DOT digraph, one cluster per poset.
pub fn hasse_dot(posets: &[Poset]) -> String {
    let mut out = String::from("digraph hasse {\n");
    for (i, p) in posets.iter().enumerate() {
        let u = p.universe();
        let _ = writeln!(out, "  subgraph cluster_{i} {{");
        let _ = writeln!(out, "    label=\"P{i}\";");
        for x in 0..p.n() {
            let _ = writeln!(out, "    \"p{i}_{0}\" [label=\"{0}\"];", u.label(x));
        }
        for (x, y) in p.transitive_reduction().edges {
            let _ = writeln!(
                out,
                "    \"p{i}_{}\" -> \"p{i}_{}\";",
                u.label(x),
                u.label(y)
            );
        }
        out.push_str("  }\n");
    }
    out.push_str("}\n");
    out
}
