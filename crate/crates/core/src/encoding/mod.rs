//! CNF encoding of "is there a cover of size `k`".
//!
//! Variable `b[i][x][y]` states `x < y` in candidate poset `i`. Orders of the
//! input are never given variables of their own: `P ⊑ L` is encoded directly
//! on `P` as "no pair inverted with respect to `L` holds in `P`". That leaves
//! no variables for linear posets at all, so no totality or XOR constraints
//! for them are ever emitted.

mod clauses;
mod dimacs;
mod strategy;

pub use clauses::{
    encode_axioms, encode_coverage, encode_exclusion_moat, encode_exclusion_naive, encode_instance,
    Exclusion,
};
pub use dimacs::{emit_dimacs, parse_dimacs, parse_var_comments, VarComment};
pub use strategy::{choose_strategy, complement_size, EncodingStrategy, DEFAULT_NAIVE_CAP};

use crate::error::{Error, Result};

/// DIMACS literal: positive id or its negation.
pub type Lit = i32;

/// Maps `(poset, x, y)` with `x != y` to consecutive variable ids from 1.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct VarMap {
    k: usize,
    n: usize,
    per_poset: usize,
}

impl VarMap {
    pub fn new(k: usize, n: usize) -> Result<Self> {
        let per_poset = n * n.saturating_sub(1);
        // leave headroom below i32::MAX for selector variables
        match k.checked_mul(per_poset) {
            Some(total) if total <= i32::MAX as usize / 2 => Ok(VarMap { k, n, per_poset }),
            _ => Err(Error::Overflow { k, n }),
        }
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of base (relation) variables.
    pub fn base_count(&self) -> usize {
        self.k * self.per_poset
    }

    /// Rank of `(x, y)` among ordered pairs with `x != y`, lexicographic.
    pub fn pair_index(&self, x: usize, y: usize) -> usize {
        debug_assert!(x != y && x < self.n && y < self.n);
        x * (self.n - 1) + if y < x { y } else { y - 1 }
    }

    pub fn var(&self, poset: usize, x: usize, y: usize) -> Lit {
        debug_assert!(poset < self.k);
        (poset * self.per_poset + self.pair_index(x, y) + 1) as Lit
    }

    /// Inverse of [`VarMap::var`] over the base region.
    pub fn decode(&self, id: Lit) -> Option<(usize, usize, usize)> {
        if id < 1 || id as usize > self.base_count() {
            return None;
        }
        let raw = id as usize - 1;
        let (poset, idx) = (raw / self.per_poset, raw % self.per_poset);
        let x = idx / (self.n - 1);
        let r = idx % (self.n - 1);
        let y = if r < x { r } else { r + 1 };
        Some((poset, x, y))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Origin {
    Axiom,
    Coverage,
    Exclusion,
}

/// Coverage selector: when true, `poset` must extend to input order `order`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Selector {
    pub var: Lit,
    pub order: usize,
    pub poset: usize,
}

/// Clause database with origin tags. Variables `1..=base_count` are the
/// relation variables of `var_map`; anything above is auxiliary.
#[derive(Debug, Clone)]
pub struct Cnf {
    var_map: VarMap,
    num_vars: usize,
    clauses: Vec<Vec<Lit>>,
    origins: Vec<Origin>,
    selectors: Vec<Selector>,
}

impl Cnf {
    pub fn new(var_map: VarMap) -> Self {
        Cnf {
            var_map,
            num_vars: var_map.base_count(),
            clauses: Vec::new(),
            origins: Vec::new(),
            selectors: Vec::new(),
        }
    }

    pub fn var_map(&self) -> &VarMap {
        &self.var_map
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn clauses(&self) -> &[Vec<Lit>] {
        &self.clauses
    }

    pub fn origins(&self) -> &[Origin] {
        &self.origins
    }

    pub fn selectors(&self) -> &[Selector] {
        &self.selectors
    }

    pub fn len(&self) -> usize {
        self.clauses.len()
    }

    pub fn is_empty(&self) -> bool {
        self.clauses.is_empty()
    }

    pub fn count(&self, origin: Origin) -> usize {
        self.origins.iter().filter(|&&o| o == origin).count()
    }

    pub fn fresh_selector(&mut self, order: usize, poset: usize) -> Lit {
        self.num_vars += 1;
        let var = self.num_vars as Lit;
        self.selectors.push(Selector { var, order, poset });
        var
    }

    pub fn add(&mut self, clause: Vec<Lit>, origin: Origin) {
        debug_assert!(clause
            .iter()
            .all(|&l| l != 0 && l.unsigned_abs() as usize <= self.num_vars));
        debug_assert!(!clause.iter().any(|&l| clause.contains(&-l)));
        self.clauses.push(clause);
        self.origins.push(origin);
    }

    /// Index of the first clause falsified by `model`, where `model[v]` is
    /// the value of variable `v` (index 0 unused).
    pub fn first_falsified(&self, model: &[bool]) -> Option<usize> {
        self.clauses.iter().position(|c| {
            !c.iter().any(|&l| {
                let v = model
                    .get(l.unsigned_abs() as usize)
                    .copied()
                    .unwrap_or(false);
                if l > 0 {
                    v
                } else {
                    !v
                }
            })
        })
    }
}
