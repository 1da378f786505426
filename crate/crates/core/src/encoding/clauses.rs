use crate::error::{Error, Result};
use crate::order::{factorial, for_each_permutation, LinearOrder, OrderSet};

use super::{Cnf, Lit, Origin, VarMap};

/// Which orders the candidate posets must not extend to.
#[derive(Debug, Clone, Copy)]
pub enum Exclusion<'a> {
    /// Exactly these orders; must be disjoint from the input.
    Moat(&'a OrderSet),
    /// Every permutation outside `keep`, refused above `cap` orders.
    Naive { keep: &'a OrderSet, cap: u64 },
}

/// Antisymmetry (one binary clause per unordered pair) and transitivity (one
/// ternary clause per ordered distinct triple) for every candidate poset.
pub fn encode_axioms(cnf: &mut Cnf) {
    let vm = *cnf.var_map();
    let n = vm.n();
    for i in 0..vm.k() {
        for x in 0..n {
            for y in x + 1..n {
                cnf.add(vec![-vm.var(i, x, y), -vm.var(i, y, x)], Origin::Axiom);
            }
        }
        for x in 0..n {
            for y in 0..n {
                if y == x {
                    continue;
                }
                for z in 0..n {
                    if z == x || z == y {
                        continue;
                    }
                    cnf.add(
                        vec![-vm.var(i, x, y), -vm.var(i, y, z), vm.var(i, x, z)],
                        Origin::Axiom,
                    );
                }
            }
        }
    }
}

/// Every order of `orders` extends some candidate poset.
///
/// `P ⊑ L` holds iff no pair inverted with respect to `L` is in `P`. With
/// `k > 1` each (order, poset) choice gets a selector `s` implying that
/// conjunction, and one clause asks for some selector per order. With `k = 1`
/// the conjunction is emitted as unit clauses.
pub fn encode_coverage(orders: &OrderSet, cnf: &mut Cnf) {
    let vm = *cnf.var_map();
    assert_eq!(orders.n(), vm.n());
    for (j, l) in orders.iter().enumerate() {
        if vm.k() == 1 {
            for (x, y) in l.inverted_pairs() {
                cnf.add(vec![-vm.var(0, x, y)], Origin::Coverage);
            }
            continue;
        }
        let mut any = Vec::with_capacity(vm.k());
        for i in 0..vm.k() {
            let s = cnf.fresh_selector(j, i);
            for (x, y) in l.inverted_pairs() {
                cnf.add(vec![-s, -vm.var(i, x, y)], Origin::Coverage);
            }
            any.push(s);
        }
        cnf.add(any, Origin::Coverage);
    }
}

fn exclude(l: &LinearOrder, cnf: &mut Cnf) {
    let vm = *cnf.var_map();
    for i in 0..vm.k() {
        let clause: Vec<Lit> = l.inverted_pairs().map(|(x, y)| vm.var(i, x, y)).collect();
        cnf.add(clause, Origin::Exclusion);
    }
}

/// No candidate poset extends to any member of `moat`: each must contain
/// some pair that the member orders the other way.
pub fn encode_exclusion_moat(moat: &OrderSet, cnf: &mut Cnf) {
    for l in moat {
        exclude(l, cnf);
    }
}

/// No candidate poset extends to any permutation outside `keep`.
pub fn encode_exclusion_naive(keep: &OrderSet, cap: u64, cnf: &mut Cnf) -> Result<()> {
    let n = keep.n();
    let complement = factorial(n).map(|f| f - keep.len() as u128);
    match complement {
        Some(c) if c <= cap as u128 => {}
        c => {
            return Err(Error::NaiveCapExceeded {
                complement: c.unwrap_or(u128::MAX),
                cap,
            })
        }
    }
    for_each_permutation(n, |seq| {
        let l = LinearOrder::from_seq(seq.to_vec()).expect("permutation");
        if !keep.contains(&l) {
            exclude(&l, cnf);
        }
    });
    Ok(())
}

/// Full formula for a cover of `orders` with `k` posets.
pub fn encode_instance(orders: &OrderSet, exclusion: Exclusion<'_>, k: usize) -> Result<Cnf> {
    let mut cnf = Cnf::new(VarMap::new(k, orders.n())?);
    encode_axioms(&mut cnf);
    encode_coverage(orders, &mut cnf);
    match exclusion {
        Exclusion::Moat(m) => {
            debug_assert!(m.iter().all(|l| !orders.contains(l)));
            encode_exclusion_moat(m, &mut cnf);
        }
        Exclusion::Naive { keep, cap } => encode_exclusion_naive(keep, cap, &mut cnf)?,
    }
    Ok(cnf)
}
