//! Strict partial orders over a [`Universe`].
//!
//! Only the strict part `<` is stored; reflexivity is implicit.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::order::{LinearOrder, OrderSet, Universe};

/// Default bound on the number of linear extensions enumerated at once.
pub const DEFAULT_EXTENSION_CAP: usize = 1_000_000;

#[derive(Clone, PartialEq, Eq)]
pub struct Poset {
    universe: Arc<Universe>,
    n: usize,
    rel: Vec<bool>,
}

/// The cover relation of a poset.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HasseDiagram {
    pub edges: Vec<(usize, usize)>,
}

impl fmt::Debug for Poset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let pairs: Vec<String> = self
            .pairs()
            .map(|(x, y)| format!("{}<{}", self.universe.label(x), self.universe.label(y)))
            .collect();
        write!(f, "Poset{{{}}}", pairs.join(", "))
    }
}

impl Poset {
    pub fn antichain(universe: Arc<Universe>) -> Self {
        let n = universe.len();
        Poset {
            universe,
            n,
            rel: vec![false; n * n],
        }
    }

    /// The total order of `l`.
    pub fn chain(universe: Arc<Universe>, l: &LinearOrder) -> Self {
        let mut p = Poset::antichain(universe);
        let seq = l.seq();
        for i in 0..seq.len() {
            for j in i + 1..seq.len() {
                p.set(seq[i], seq[j]);
            }
        }
        p
    }

    /// Builds a poset from a full strict relation, checking the axioms.
    pub fn from_matrix(universe: Arc<Universe>, rel: Vec<bool>) -> Result<Self> {
        let n = universe.len();
        assert_eq!(rel.len(), n * n);
        let p = Poset { universe, n, rel };
        p.check_axioms().map(|()| p)
    }

    /// Checks irreflexivity, antisymmetry and transitivity.
    pub fn check_axioms(&self) -> Result<()> {
        let n = self.n;
        for x in 0..n {
            if self.lt(x, x) {
                return Err(Error::CycleDetected(x, x));
            }
            for y in 0..n {
                if x != y && self.lt(x, y) && self.lt(y, x) {
                    return Err(Error::CycleDetected(x, y));
                }
            }
        }
        for x in 0..n {
            for y in 0..n {
                if !self.lt(x, y) {
                    continue;
                }
                for z in 0..n {
                    if self.lt(y, z) && !self.lt(x, z) {
                        return Err(Error::InvalidModel(format!(
                            "transitivity fails on {x}<{y}<{z}"
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn universe(&self) -> &Arc<Universe> {
        &self.universe
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn lt(&self, x: usize, y: usize) -> bool {
        self.rel[x * self.n + y]
    }

    fn set(&mut self, x: usize, y: usize) {
        self.rel[x * self.n + y] = true;
    }

    pub fn comparable(&self, x: usize, y: usize) -> bool {
        self.lt(x, y) || self.lt(y, x)
    }

    /// All pairs `(x, y)` with `x < y`, row-major.
    pub fn pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        let n = self.n;
        (0..n)
            .flat_map(move |x| (0..n).map(move |y| (x, y)))
            .filter(|&(x, y)| self.lt(x, y))
    }

    pub fn pair_count(&self) -> usize {
        self.rel.iter().filter(|&&b| b).count()
    }

    pub fn is_extension(&self, l: &LinearOrder) -> bool {
        self.pairs().all(|(x, y)| l.precedes(x, y))
    }

    pub fn transitive_reduction(&self) -> HasseDiagram {
        let n = self.n;
        let edges = self
            .pairs()
            .filter(|&(x, y)| !(0..n).any(|z| self.lt(x, z) && self.lt(z, y)))
            .collect();
        HasseDiagram { edges }
    }

    /// Unordered incomparable pairs `{x, y}`, reported with `x < y` as indices.
    pub fn incomparable_pairs(&self) -> Vec<(usize, usize)> {
        let n = self.n;
        (0..n)
            .flat_map(|x| (x + 1..n).map(move |y| (x, y)))
            .filter(|&(x, y)| !self.comparable(x, y))
            .collect()
    }

    /// Enumerates the language of the poset by repeatedly placing a
    /// currently-minimal element. Output is lexicographic in element index.
    pub fn linear_extensions(&self, cap: usize) -> Result<OrderSet> {
        let n = self.n;
        let mut preds = vec![0usize; n];
        for (_, y) in self.pairs() {
            preds[y] += 1;
        }
        let mut out = OrderSet::new(self.universe.clone());
        let mut prefix = Vec::with_capacity(n);
        let mut placed = vec![false; n];
        self.extend(&mut prefix, &mut placed, &mut preds, &mut out, cap)?;
        Ok(out)
    }

    fn extend(
        &self,
        prefix: &mut Vec<usize>,
        placed: &mut [bool],
        preds: &mut [usize],
        out: &mut OrderSet,
        cap: usize,
    ) -> Result<()> {
        let n = self.n;
        if prefix.len() == n {
            if out.len() >= cap {
                return Err(Error::CapExceeded(cap));
            }
            out.insert(LinearOrder::from_seq(prefix.clone()).expect("permutation"));
            return Ok(());
        }
        for x in 0..n {
            if placed[x] || preds[x] != 0 {
                continue;
            }
            placed[x] = true;
            prefix.push(x);
            for (y, p) in preds.iter_mut().enumerate() {
                if self.lt(x, y) {
                    *p -= 1;
                }
            }
            let r = self.extend(prefix, placed, preds, out, cap);
            for (y, p) in preds.iter_mut().enumerate() {
                if self.lt(x, y) {
                    *p += 1;
                }
            }
            prefix.pop();
            placed[x] = false;
            r?;
        }
        Ok(())
    }

    /// Hasse edges rendered with labels.
    pub fn hasse_labels(&self) -> Vec<(String, String)> {
        self.transitive_reduction()
            .edges
            .iter()
            .map(|&(x, y)| {
                (
                    self.universe.label(x).to_owned(),
                    self.universe.label(y).to_owned(),
                )
            })
            .collect()
    }
}

/// Smallest strict order containing `pairs`.
pub fn transitive_closure(pairs: &[(usize, usize)], universe: Arc<Universe>) -> Result<Poset> {
    let n = universe.len();
    let mut rel = vec![false; n * n];
    for &(x, y) in pairs {
        if x >= n || y >= n {
            return Err(Error::ElementOutOfRange {
                index: x.max(y),
                size: n,
            });
        }
        if x == y {
            return Err(Error::CycleDetected(x, y));
        }
        rel[x * n + y] = true;
    }
    // Warshall
    for z in 0..n {
        for x in 0..n {
            if !rel[x * n + z] {
                continue;
            }
            for y in 0..n {
                if rel[z * n + y] {
                    rel[x * n + y] = true;
                }
            }
        }
    }
    for x in 0..n {
        if rel[x * n + x] {
            let y = (0..n)
                .find(|&y| y != x && rel[x * n + y] && rel[y * n + x])
                .unwrap_or(x);
            return Err(Error::CycleDetected(x, y));
        }
    }
    Ok(Poset { universe, n, rel })
}

impl HasseDiagram {
    /// Recloses the cover edges into the full order.
    pub fn closure(&self, universe: Arc<Universe>) -> Result<Poset> {
        transitive_closure(&self.edges, universe)
    }
}

/// The relation shared by every order in `s`.
pub fn intersect_orders(s: &OrderSet) -> Result<Poset> {
    let first = s.iter().next().ok_or(Error::EmptySet)?;
    let mut p = Poset::chain(s.universe().clone(), first);
    let n = p.n;
    for l in s.iter().skip(1) {
        for x in 0..n {
            for y in 0..n {
                if p.rel[x * n + y] && !l.precedes(x, y) {
                    p.rel[x * n + y] = false;
                }
            }
        }
    }
    Ok(p)
}
