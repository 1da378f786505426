//! Universes, linear orders and sets of linear orders.
//!
//! Elements are dense indices `0..n` into a [`Universe`]; labels only matter
//! for parsing and display.

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

/// An ordered set of distinct element labels.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Universe {
    labels: Vec<String>,
    index: HashMap<String, usize>,
}

impl Universe {
    pub fn new<I, S>(labels: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let labels: Vec<String> = labels.into_iter().map(Into::into).collect();
        if labels.is_empty() {
            return Err(Error::InvalidUniverse("no elements".into()));
        }
        let mut index = HashMap::with_capacity(labels.len());
        for (i, l) in labels.iter().enumerate() {
            if l.is_empty() || l.chars().any(char::is_whitespace) {
                return Err(Error::InvalidUniverse(format!("bad label {l:?}")));
            }
            if index.insert(l.clone(), i).is_some() {
                return Err(Error::InvalidUniverse(format!("duplicate label {l:?}")));
            }
        }
        Ok(Universe { labels, index })
    }

    /// Universe `a, b, c, ...` of single lowercase letters (n ≤ 26).
    pub fn letters(n: usize) -> Self {
        assert!((1..=26).contains(&n), "letters() supports 1..=26 elements");
        Universe::new((0..n).map(|i| ((b'a' + i as u8) as char).to_string())).unwrap()
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, x: usize) -> &str {
        &self.labels[x]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.index.get(label).copied()
    }

    /// True when every label is one character, so orders print as `abcd`.
    pub fn is_compact(&self) -> bool {
        self.labels.iter().all(|l| l.chars().count() == 1)
    }

    /// String form of a sequence of elements.
    pub fn render(&self, seq: &[usize]) -> String {
        let sep = if self.is_compact() { "" } else { " " };
        seq.iter()
            .map(|&x| self.labels[x].as_str())
            .collect::<Vec<_>>()
            .join(sep)
    }

    /// Parses a string form (`abcd` or `a b c d`) into a linear order.
    pub fn parse_order(&self, s: &str) -> Result<LinearOrder> {
        let tokens: Vec<String> = if s.chars().any(char::is_whitespace) {
            s.split_whitespace().map(str::to_owned).collect()
        } else {
            s.chars().map(|c| c.to_string()).collect()
        };
        let seq = tokens
            .iter()
            .map(|t| self.index_of(t).ok_or(Error::NotAPermutation { line: 0 }))
            .collect::<Result<Vec<_>>>()?;
        LinearOrder::from_seq(seq).and_then(|l| {
            if l.len() == self.len() {
                Ok(l)
            } else {
                Err(Error::NotAPermutation { line: 0 })
            }
        })
    }
}

/// A permutation of `0..n`; position 0 holds the minimum.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LinearOrder {
    seq: Vec<usize>,
    pos: Vec<usize>,
}

impl fmt::Debug for LinearOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LinearOrder{:?}", self.seq)
    }
}

impl LinearOrder {
    pub fn from_seq(seq: Vec<usize>) -> Result<Self> {
        let n = seq.len();
        let mut pos = vec![usize::MAX; n];
        for (i, &x) in seq.iter().enumerate() {
            if x >= n || pos[x] != usize::MAX {
                return Err(Error::NotAPermutation { line: 0 });
            }
            pos[x] = i;
        }
        Ok(LinearOrder { seq, pos })
    }

    pub fn identity(n: usize) -> Self {
        LinearOrder {
            seq: (0..n).collect(),
            pos: (0..n).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.seq.len()
    }

    pub fn is_empty(&self) -> bool {
        self.seq.is_empty()
    }

    pub fn seq(&self) -> &[usize] {
        &self.seq
    }

    pub fn position(&self, x: usize) -> usize {
        self.pos[x]
    }

    /// `x` strictly before `y`.
    pub fn precedes(&self, x: usize, y: usize) -> bool {
        self.pos[x] < self.pos[y]
    }

    /// Exchanges the elements at positions `i` and `i + 1`; returns the new
    /// order and the swapped pair as it appeared in `self`.
    pub fn swap_at(&self, i: usize) -> (LinearOrder, (usize, usize)) {
        let mut next = self.clone();
        let (x, y) = (self.seq[i], self.seq[i + 1]);
        next.seq.swap(i, i + 1);
        next.pos[x] = i + 1;
        next.pos[y] = i;
        (next, (x, y))
    }

    /// Swaps two elements that occupy adjacent positions.
    pub fn apply_swap(&self, x: usize, y: usize) -> Result<LinearOrder> {
        let n = self.len();
        if x >= n || y >= n {
            return Err(Error::ElementOutOfRange {
                index: x.max(y),
                size: n,
            });
        }
        let (px, py) = (self.pos[x], self.pos[y]);
        if px.abs_diff(py) != 1 {
            return Err(Error::NotAdjacent(x, y));
        }
        Ok(self.swap_at(px.min(py)).0)
    }

    /// Kendall tau distance: pairs ordered oppositely in the two orders.
    pub fn inversion_number(&self, other: &LinearOrder) -> usize {
        debug_assert_eq!(self.len(), other.len());
        // relabel `other` by positions in `self`, then count inversions
        let ranks: Vec<usize> = other.seq.iter().map(|&x| self.pos[x]).collect();
        let mut count = 0;
        for i in 0..ranks.len() {
            for j in i + 1..ranks.len() {
                if ranks[i] > ranks[j] {
                    count += 1;
                }
            }
        }
        count
    }

    /// Ordered pairs `(x, y)` with `y` before `x`, i.e. the pairs outside
    /// this order's relation. There are exactly `n(n-1)/2` of them.
    pub fn inverted_pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        let n = self.len();
        (0..n).flat_map(move |i| (i + 1..n).map(move |j| (self.seq[j], self.seq[i])))
    }

    /// Consecutive pairs `(x, y)`: the cover relation of the order.
    pub fn covers(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.seq.windows(2).map(|w| (w[0], w[1]))
    }
}

/// A set of linear orders over one universe, in insertion order, with
/// constant-time membership by permutation.
#[derive(Debug, Clone)]
pub struct OrderSet {
    universe: Arc<Universe>,
    members: Vec<LinearOrder>,
    index: HashMap<LinearOrder, usize>,
}

impl OrderSet {
    pub fn new(universe: Arc<Universe>) -> Self {
        OrderSet {
            universe,
            members: Vec::new(),
            index: HashMap::new(),
        }
    }

    pub fn from_orders<I>(universe: Arc<Universe>, orders: I) -> Self
    where
        I: IntoIterator<Item = LinearOrder>,
    {
        let mut set = OrderSet::new(universe);
        for l in orders {
            set.insert(l);
        }
        set
    }

    /// Builds a set from string forms; panics on malformed input.
    pub fn from_strs(universe: Arc<Universe>, orders: &[&str]) -> Self {
        let parsed: Vec<_> = orders
            .iter()
            .map(|s| universe.parse_order(s).expect("valid order"))
            .collect();
        OrderSet::from_orders(universe, parsed)
    }

    /// All `n!` permutations, lexicographic.
    pub fn all_permutations(universe: Arc<Universe>) -> Self {
        let n = universe.len();
        let mut set = OrderSet::new(universe);
        for_each_permutation(n, |seq| {
            set.insert(LinearOrder::from_seq(seq.to_vec()).unwrap());
        });
        set
    }

    pub fn universe(&self) -> &Arc<Universe> {
        &self.universe
    }

    pub fn n(&self) -> usize {
        self.universe.len()
    }

    /// Returns false when the order was already present.
    pub fn insert(&mut self, l: LinearOrder) -> bool {
        assert_eq!(l.len(), self.n(), "order over a different universe");
        if self.index.contains_key(&l) {
            return false;
        }
        self.index.insert(l.clone(), self.members.len());
        self.members.push(l);
        true
    }

    pub fn contains(&self, l: &LinearOrder) -> bool {
        self.index.contains_key(l)
    }

    pub fn position(&self, l: &LinearOrder) -> Option<usize> {
        self.index.get(l).copied()
    }

    pub fn get(&self, i: usize) -> &LinearOrder {
        &self.members[i]
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, LinearOrder> {
        self.members.iter()
    }

    pub fn members(&self) -> &[LinearOrder] {
        &self.members
    }

    /// Subset given by member indices, preserving their order.
    pub fn subset(&self, indices: &[usize]) -> OrderSet {
        OrderSet::from_orders(
            self.universe.clone(),
            indices.iter().map(|&i| self.members[i].clone()),
        )
    }

    /// Members not in `other`.
    pub fn difference(&self, other: &OrderSet) -> OrderSet {
        OrderSet::from_orders(
            self.universe.clone(),
            self.iter().filter(|l| !other.contains(l)).cloned(),
        )
    }

    pub fn render(&self, l: &LinearOrder) -> String {
        self.universe.render(l.seq())
    }

    /// String forms of all members, sorted.
    pub fn sorted_strings(&self) -> Vec<String> {
        let mut v: Vec<String> = self.iter().map(|l| self.render(l)).collect();
        v.sort();
        v
    }

    pub fn is_subset(&self, other: &OrderSet) -> bool {
        self.iter().all(|l| other.contains(l))
    }
}

impl PartialEq for OrderSet {
    fn eq(&self, other: &Self) -> bool {
        self.universe.labels() == other.universe.labels()
            && self.len() == other.len()
            && self.is_subset(other)
    }
}

impl Eq for OrderSet {}

impl<'a> IntoIterator for &'a OrderSet {
    type Item = &'a LinearOrder;
    type IntoIter = std::slice::Iter<'a, LinearOrder>;

    fn into_iter(self) -> Self::IntoIter {
        self.iter()
    }
}

/// Visits every permutation of `0..n` in lexicographic order.
pub fn for_each_permutation(n: usize, mut f: impl FnMut(&[usize])) {
    let mut seq: Vec<usize> = (0..n).collect();
    loop {
        f(&seq);
        // next lexicographic permutation
        let Some(i) = (1..n).rev().find(|&i| seq[i - 1] < seq[i]) else {
            return;
        };
        let j = (i..n).rev().find(|&j| seq[j] > seq[i - 1]).unwrap();
        seq.swap(i - 1, j);
        seq[i..].reverse();
    }
}

/// `n!`, or `None` on overflow.
pub fn factorial(n: usize) -> Option<u128> {
    (1..=n as u128).try_fold(1u128, |acc, i| acc.checked_mul(i))
}
