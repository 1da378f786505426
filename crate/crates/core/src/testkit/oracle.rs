//! Exhaustive minimum cover, independent of the SAT path.
//!
//! A subset `T` of the input is the language of some poset iff the
//! intersection of `T` has language exactly `T`, because a poset is the
//! intersection of its own language. All such subsets are collected, only
//! inclusion-maximal ones are kept, and the smallest union-exact selection
//! is found by iterative deepening.

use crate::error::{Error, Result};
use crate::order::OrderSet;
use crate::poset::{intersect_orders, Poset};

pub const DEFAULT_ORACLE_CAP: usize = 12;

#[derive(Debug, Clone, Copy)]
pub struct OracleLimits {
    pub max_orders: usize,
}

impl Default for OracleLimits {
    fn default() -> Self {
        OracleLimits {
            max_orders: DEFAULT_ORACLE_CAP,
        }
    }
}

fn is_language(s: &OrderSet, mask: u32) -> Option<Poset> {
    let members: Vec<usize> = (0..s.len()).filter(|&i| mask >> i & 1 == 1).collect();
    let t = s.subset(&members);
    let p = intersect_orders(&t).ok()?;
    // a larger language cannot equal t, so cap the enumeration at |t|
    let lang = p.linear_extensions(t.len()).ok()?;
    (lang == t).then_some(p)
}

fn search(
    cands: &[(u32, Poset)],
    full: u32,
    depth: usize,
    covered: u32,
    picked: &mut Vec<usize>,
) -> bool {
    if covered == full {
        return true;
    }
    if depth == 0 {
        return false;
    }
    // the lowest uncovered order must be covered by this pick
    let low = (!covered & full).trailing_zeros();
    for (i, (mask, _)) in cands.iter().enumerate() {
        if mask >> low & 1 == 0 {
            continue;
        }
        picked.push(i);
        if search(cands, full, depth - 1, covered | mask, picked) {
            return true;
        }
        picked.pop();
    }
    false
}

/// Minimum cover size and one witness cover.
pub fn min_cover_bruteforce(s: &OrderSet, limits: OracleLimits) -> Result<(usize, Vec<Poset>)> {
    let m = s.len();
    if m == 0 {
        return Err(Error::EmptySet);
    }
    if m > limits.max_orders || m > 31 {
        return Err(Error::OracleCapExceeded {
            size: m,
            cap: limits.max_orders,
        });
    }
    let full = (1u32 << m) - 1;
    let all: Vec<(u32, Poset)> = (1..=full)
        .filter_map(|mask| is_language(s, mask).map(|p| (mask, p)))
        .collect();
    let maximal: Vec<(u32, Poset)> = all
        .iter()
        .filter(|(a, _)| !all.iter().any(|(b, _)| b != a && b & a == *a))
        .cloned()
        .collect();
    for k in 1..=m {
        let mut picked = Vec::new();
        if search(&maximal, full, k, 0, &mut picked) {
            let witness = picked.iter().map(|&i| maximal[i].1.clone()).collect();
            return Ok((k, witness));
        }
    }
    unreachable!("singletons are always languages")
}
