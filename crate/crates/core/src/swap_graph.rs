//! Adjacent-transposition graphs over order sets, their connected
//! components and moats.

use std::collections::VecDeque;
use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::order::{LinearOrder, OrderSet};

/// All `n - 1` orders one adjacent transposition away from `l`, with the
/// swapped pair as it appears in `l`.
pub fn swap_neighbors(l: &LinearOrder) -> Vec<(LinearOrder, (usize, usize))> {
    (0..l.len().saturating_sub(1))
        .map(|i| l.swap_at(i))
        .collect()
}

/// The pair `(x, y)` (as ordered in `a`) when `a` and `b` differ by exactly
/// one adjacent transposition.
pub fn is_swap(a: &LinearOrder, b: &LinearOrder) -> Option<(usize, usize)> {
    let (sa, sb) = (a.seq(), b.seq());
    if sa.len() != sb.len() {
        return None;
    }
    let i = sa.iter().zip(sb).position(|(x, y)| x != y)?;
    if i + 1 < sa.len() && sa[i] == sb[i + 1] && sa[i + 1] == sb[i] && sa[i + 2..] == sb[i + 2..] {
        Some((sa[i], sa[i + 1]))
    } else {
        None
    }
}

#[derive(Debug, Clone)]
pub struct SwapGraph {
    vertices: OrderSet,
    adjacency: Vec<Vec<(usize, (usize, usize))>>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComponentPartition {
    pub assignment: Vec<usize>,
    pub components: Vec<Vec<usize>>,
}

/// Orders outside a component that are one swap away from it.
pub type MoatSet = OrderSet;

impl SwapGraph {
    /// Probes each member's `n - 1` swap neighbors for membership.
    pub fn build(s: &OrderSet) -> Self {
        let adjacency = s
            .iter()
            .map(|l| {
                swap_neighbors(l)
                    .into_iter()
                    .filter_map(|(m, pair)| s.position(&m).map(|j| (j, pair)))
                    .collect()
            })
            .collect();
        SwapGraph {
            vertices: s.clone(),
            adjacency,
        }
    }

    pub fn vertices(&self) -> &OrderSet {
        &self.vertices
    }

    pub fn neighbors(&self, v: usize) -> &[(usize, (usize, usize))] {
        &self.adjacency[v]
    }

    pub fn edge_count(&self) -> usize {
        self.adjacency.iter().map(Vec::len).sum::<usize>() / 2
    }

    pub fn components(&self) -> ComponentPartition {
        let n = self.vertices.len();
        let mut assignment = vec![usize::MAX; n];
        let mut components = Vec::new();
        for start in 0..n {
            if assignment[start] != usize::MAX {
                continue;
            }
            let id = components.len();
            let mut members = vec![start];
            assignment[start] = id;
            let mut head = 0;
            while head < members.len() {
                let v = members[head];
                head += 1;
                for &(w, _) in &self.adjacency[v] {
                    if assignment[w] == usize::MAX {
                        assignment[w] = id;
                        members.push(w);
                    }
                }
            }
            members.sort_unstable();
            components.push(members);
        }
        ComponentPartition {
            assignment,
            components,
        }
    }

    /// Shortest path length in edges, `None` when disconnected.
    pub fn distance(&self, a: &LinearOrder, b: &LinearOrder) -> Result<Option<usize>> {
        let src = self.vertices.position(a).ok_or(Error::VertexNotFound)?;
        let dst = self.vertices.position(b).ok_or(Error::VertexNotFound)?;
        let mut dist = vec![usize::MAX; self.vertices.len()];
        dist[src] = 0;
        let mut queue = VecDeque::from([src]);
        while let Some(v) = queue.pop_front() {
            if v == dst {
                return Ok(Some(dist[v]));
            }
            for &(w, _) in &self.adjacency[v] {
                if dist[w] == usize::MAX {
                    dist[w] = dist[v] + 1;
                    queue.push_back(w);
                }
            }
        }
        Ok(None)
    }

    /// Undirected DOT graph with vertices named by string form and edges
    /// labelled by the swapped pair. Vertices and edges are sorted.
    pub fn to_dot(&self) -> String {
        let s = &self.vertices;
        let names: Vec<String> = s.iter().map(|l| s.render(l)).collect();
        let mut order: Vec<usize> = (0..s.len()).collect();
        order.sort_by(|&a, &b| names[a].cmp(&names[b]));
        let mut rank = vec![0; s.len()];
        for (r, &v) in order.iter().enumerate() {
            rank[v] = r;
        }
        let u = s.universe();
        let mut out = String::from("graph swap {\n");
        for &v in &order {
            let _ = writeln!(out, "  \"{}\";", names[v]);
        }
        for &v in &order {
            let mut edges: Vec<_> = self.adjacency[v]
                .iter()
                .filter(|(w, _)| rank[*w] > rank[v])
                .collect();
            edges.sort_by_key(|(w, _)| rank[*w]);
            for &(w, (x, y)) in edges {
                let _ = writeln!(
                    out,
                    "  \"{}\" -- \"{}\" [label=\"{},{}\"];",
                    names[v],
                    names[w],
                    u.label(x),
                    u.label(y)
                );
            }
        }
        out.push_str("}\n");
        out
    }
}

impl ComponentPartition {
    pub fn len(&self) -> usize {
        self.components.len()
    }

    pub fn is_empty(&self) -> bool {
        self.components.is_empty()
    }
}

/// All orders outside `component` that are one swap from some member of it.
/// `component` holds indices into `s`.
pub fn moat(component: &[usize], s: &OrderSet) -> MoatSet {
    let inside = s.subset(component);
    let mut out = OrderSet::new(s.universe().clone());
    for l in &inside {
        for (m, _) in swap_neighbors(l) {
            if !inside.contains(&m) {
                out.insert(m);
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::order::Universe;
    use std::sync::Arc;

    fn set(n: usize, orders: &[&str]) -> OrderSet {
        OrderSet::from_strs(Arc::new(Universe::letters(n)), orders)
    }

    #[test]
    fn neighbors_of_small_orders() {
        let s = set(3, &["abc"]);
        let nb = swap_neighbors(s.get(0));
        let names: Vec<_> = nb.iter().map(|(l, p)| (s.render(l), *p)).collect();
        assert_eq!(names, vec![("bac".into(), (0, 1)), ("acb".into(), (1, 2))]);

        assert!(swap_neighbors(&LinearOrder::identity(1)).is_empty());

        let s4 = set(4, &["abcd"]);
        let names: Vec<_> = swap_neighbors(s4.get(0))
            .iter()
            .map(|(l, _)| s4.render(l))
            .collect();
        assert_eq!(names, vec!["bacd", "acbd", "abdc"]);
    }

    #[test]
    fn swap_detection() {
        let s = set(4, &["abcd", "acbd"]);
        assert_eq!(is_swap(s.get(0), s.get(1)), Some((1, 2)));
        assert_eq!(is_swap(s.get(1), s.get(0)), Some((2, 1)));
        assert_eq!(is_swap(s.get(0), s.get(0)), None);
        let t = set(3, &["abc", "cba"]);
        assert_eq!(is_swap(t.get(0), t.get(1)), None);
        let t = set(4, &["abcd", "badc"]);
        assert_eq!(is_swap(t.get(0), t.get(1)), None);
    }

    #[test]
    fn graph_shapes() {
        let g = SwapGraph::build(&set(4, &["abcd", "acbd"]));
        assert_eq!(g.edge_count(), 1);
        assert_eq!(g.neighbors(0), &[(1, (1, 2))]);
        assert_eq!(g.components().len(), 1);

        let g = SwapGraph::build(&set(3, &["abc", "cba"]));
        assert_eq!(g.edge_count(), 0);
        assert_eq!(g.components().len(), 2);

        let g = SwapGraph::build(&set(3, &["abc"]));
        assert_eq!(g.edge_count(), 0);
        assert_eq!(g.components().len(), 1);
    }

    #[test]
    fn example_cover_instance_is_connected() {
        let g = SwapGraph::build(&set(5, &["abdce", "badce", "abcde", "abdec"]));
        let parts = g.components();
        assert_eq!(parts.len(), 1);
        assert_eq!(g.edge_count(), 3);
    }

    #[test]
    fn moats() {
        let s = set(3, &["abc", "bac"]);
        assert_eq!(moat(&[0, 1], &s).sorted_strings(), vec!["acb", "bca"]);

        let all = OrderSet::all_permutations(Arc::new(Universe::letters(3)));
        let everything: Vec<usize> = (0..6).collect();
        assert!(moat(&everything, &all).is_empty());

        let s = set(4, &["abcd", "acbd"]);
        assert_eq!(
            moat(&[0, 1], &s).sorted_strings(),
            vec!["abdc", "acdb", "bacd", "cabd"]
        );
    }

    #[test]
    fn distances() {
        let s = set(4, &["abcd", "acbd"]);
        let g = SwapGraph::build(&s);
        assert_eq!(g.distance(s.get(0), s.get(0)).unwrap(), Some(0));
        assert_eq!(g.distance(s.get(0), s.get(1)).unwrap(), Some(1));

        let t = set(3, &["abc", "cba"]);
        let g = SwapGraph::build(&t);
        assert_eq!(g.distance(t.get(0), t.get(1)).unwrap(), None);
        let stranger = t.universe().parse_order("bac").unwrap();
        assert!(matches!(
            g.distance(&stranger, t.get(0)),
            Err(Error::VertexNotFound)
        ));
    }

    #[test]
    fn dot_export() {
        let g = SwapGraph::build(&set(4, &["acbd", "abcd"]));
        assert_eq!(
            g.to_dot(),
            "graph swap {\n  \"abcd\";\n  \"acbd\";\n  \"abcd\" -- \"acbd\" [label=\"b,c\"];\n}\n"
        );
    }
}
