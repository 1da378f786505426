use std::collections::BTreeSet;
use std::sync::Arc;

use proptest::prelude::*;

use posetcov::driver::{single_poset_cover, solve, verify_cover, SolveOptions};
use posetcov::encoding::{
    emit_dimacs, encode_instance, parse_dimacs, parse_var_comments, Exclusion, Origin, VarComment,
};
use posetcov::poset::{intersect_orders, transitive_closure, DEFAULT_EXTENSION_CAP};
use posetcov::swap_graph::{moat, swap_neighbors, SwapGraph};
use posetcov::testkit::{min_cover_bruteforce, random_poset, OracleLimits};
use posetcov::{LinearOrder, OrderSet, Poset, Universe};

fn order(n: usize) -> impl Strategy<Value = LinearOrder> {
    Just((0..n).collect::<Vec<_>>())
        .prop_shuffle()
        .prop_map(|s| LinearOrder::from_seq(s).unwrap())
}

fn order_set(n: std::ops::RangeInclusive<usize>, max_m: usize) -> impl Strategy<Value = OrderSet> {
    n.prop_flat_map(move |n| {
        prop::collection::vec(order(n), 1..=max_m)
            .prop_map(move |ls| OrderSet::from_orders(Arc::new(Universe::letters(n)), ls))
    })
}

fn poset(max_n: usize) -> impl Strategy<Value = Poset> {
    (1..=max_n, 0.0..=1.0f64, any::<u64>()).prop_map(|(n, d, seed)| random_poset(n, d, seed))
}

fn by_brute_force(p: &Poset) -> BTreeSet<LinearOrder> {
    let all = OrderSet::all_permutations(p.universe().clone());
    all.iter().filter(|l| p.is_extension(l)).cloned().collect()
}

fn as_set(s: &OrderSet) -> BTreeSet<LinearOrder> {
    s.iter().cloned().collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn closure_is_idempotent(p in poset(7)) {
        let pairs: Vec<_> = p.pairs().collect();
        let q = transitive_closure(&pairs, p.universe().clone()).unwrap();
        prop_assert!(q == p);
    }

    #[test]
    fn reduction_round_trips_and_is_minimal(p in poset(7)) {
        let h = p.transitive_reduction();
        prop_assert!(h.closure(p.universe().clone()).unwrap() == p);
        for skip in 0..h.edges.len() {
            let fewer: Vec<_> = h.edges.iter().enumerate()
                .filter(|&(i, _)| i != skip).map(|(_, &e)| e).collect();
            let q = transitive_closure(&fewer, p.universe().clone()).unwrap();
            prop_assert!(q != p);
        }
    }

    #[test]
    fn language_matches_filtering_all_permutations(p in poset(5)) {
        let lang = p.linear_extensions(DEFAULT_EXTENSION_CAP).unwrap();
        prop_assert_eq!(as_set(&lang), by_brute_force(&p));
    }

    #[test]
    fn poset_is_intersection_of_its_extensions(p in poset(6)) {
        let lang = p.linear_extensions(DEFAULT_EXTENSION_CAP).unwrap();
        prop_assert!(intersect_orders(&lang).unwrap() == p);
    }

    #[test]
    fn inversion_number_is_a_metric(a in order(6), b in order(6), c in order(6)) {
        prop_assert_eq!(a.inversion_number(&a), 0);
        prop_assert_eq!(a.inversion_number(&b), b.inversion_number(&a));
        prop_assert_eq!(a.inversion_number(&b) == 0, a == b);
        prop_assert!(a.inversion_number(&c) <= a.inversion_number(&b) + b.inversion_number(&c));
    }

    #[test]
    fn one_swap_moves_inversion_number_by_one(a in order(6), r in order(6)) {
        let d = a.inversion_number(&r) as i64;
        for (b, (x, y)) in swap_neighbors(&a) {
            prop_assert!((b.inversion_number(&r) as i64 - d).abs() == 1);
            prop_assert_eq!(b.position(x), a.position(y));
        }
    }

    #[test]
    fn language_is_connected_and_geodesic(p in poset(5), i in any::<usize>(), j in any::<usize>()) {
        let lang = p.linear_extensions(DEFAULT_EXTENSION_CAP).unwrap();
        let g = SwapGraph::build(&lang);
        prop_assert_eq!(g.components().len(), 1);
        let a = lang.get(i % lang.len());
        let b = lang.get(j % lang.len());
        prop_assert_eq!(g.distance(a, b).unwrap(), Some(a.inversion_number(b)));
    }

    #[test]
    fn moat_is_disjoint_and_adjacent(s in order_set(2..=5, 12)) {
        let g = SwapGraph::build(&s);
        let parts = g.components();
        for comp in &parts.components {
            let m = moat(comp, &s);
            let inside = s.subset(comp);
            for l in &m {
                prop_assert!(!s.contains(l));
                prop_assert!(inside.iter().any(|v| posetcov::swap_graph::is_swap(v, l).is_some()));
            }
            for v in &inside {
                for (w, _) in swap_neighbors(v) {
                    prop_assert!(inside.contains(&w) || m.contains(&w));
                }
            }
        }
        let total: usize = parts.components.iter().map(Vec::len).sum();
        prop_assert_eq!(total, s.len());
    }

    #[test]
    fn fast_path_agrees_with_extension_check(s in order_set(1..=5, 10)) {
        let p = intersect_orders(&s).unwrap();
        let exact = as_set(&p.linear_extensions(DEFAULT_EXTENSION_CAP).unwrap()) == as_set(&s);
        match single_poset_cover(&s) {
            Some(q) => {
                prop_assert!(exact);
                prop_assert!(q == p);
            }
            None => prop_assert!(!exact),
        }
    }

    #[test]
    fn dimacs_comments_round_trip(s in order_set(2..=4, 6), k in 1usize..=3) {
        let moat_set = union_moat(&s);
        let cnf = encode_instance(&s, Exclusion::Moat(&moat_set), k).unwrap();
        let text = emit_dimacs(&cnf, Some(s.universe()));
        let (vars, clauses) = parse_dimacs(&text).unwrap();
        prop_assert_eq!(vars, cnf.num_vars());
        prop_assert_eq!(clauses.as_slice(), cnf.clauses());
        let vm = cnf.var_map();
        let mut relation = 0;
        for c in parse_var_comments(&text) {
            match c {
                VarComment::Relation { id, poset, x, y } => {
                    relation += 1;
                    prop_assert_eq!(vm.decode(id), Some((poset, x, y)));
                    prop_assert_eq!(vm.var(poset, x, y), id);
                }
                VarComment::Selector { id, order, poset } => {
                    prop_assert!(cnf.selectors().iter().any(|sel|
                        sel.var == id && sel.order == order && sel.poset == poset));
                }
            }
        }
        prop_assert_eq!(relation, vm.base_count());
    }
}

fn union_moat(s: &OrderSet) -> OrderSet {
    let g = SwapGraph::build(s);
    posetcov::driver::union_moat(s, &g)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn oracle_cover_is_exact_and_matches_solver(s in order_set(1..=4, 7)) {
        let (k, posets) = min_cover_bruteforce(&s, OracleLimits::default()).unwrap();
        prop_assert_eq!(posets.len(), k);
        prop_assert!(verify_cover(&posets, &s, DEFAULT_EXTENSION_CAP).unwrap());
        let cover = solve(&s, &SolveOptions::default()).unwrap();
        prop_assert_eq!(cover.k(), k);
    }
}

/// Decodes `bits` into `k` relation matrices and checks the cover semantics
/// directly: valid posets, each input order extends one, no excluded order
/// extends any.
fn semantically_valid(bits: u64, s: &OrderSet, excluded: &[LinearOrder], k: usize) -> bool {
    let n = s.n();
    let u = s.universe().clone();
    let mut posets = Vec::new();
    let mut bit = 0;
    for _ in 0..k {
        let mut rel = vec![false; n * n];
        for x in 0..n {
            for y in 0..n {
                if x != y {
                    rel[x * n + y] = bits >> bit & 1 == 1;
                    bit += 1;
                }
            }
        }
        match Poset::from_matrix(u.clone(), rel) {
            Ok(p) => posets.push(p),
            Err(_) => return false,
        }
    }
    s.iter().all(|l| posets.iter().any(|p| p.is_extension(l)))
        && excluded
            .iter()
            .all(|l| posets.iter().all(|p| !p.is_extension(l)))
}

/// Relation variables each selector forces false.
fn selector_implications(cnf: &posetcov::encoding::Cnf) -> Vec<(usize, Vec<usize>)> {
    cnf.selectors()
        .iter()
        .map(|sel| {
            let vars = cnf
                .clauses()
                .iter()
                .filter(|c| c.len() == 2 && c[0] == -sel.var)
                .map(|c| (-c[1]) as usize)
                .collect();
            (sel.var as usize, vars)
        })
        .collect()
}

/// Selectors only occur negatively in implications and positively in the
/// per-order disjunction, so a base assignment extends to a model iff it
/// does with every selector set as high as its implications allow.
fn satisfiable_with_best_selectors(
    bits: u64,
    cnf: &posetcov::encoding::Cnf,
    implications: &[(usize, Vec<usize>)],
) -> bool {
    let base = cnf.var_map().base_count();
    let mut model = vec![false; cnf.num_vars() + 1];
    for (v, slot) in model.iter_mut().enumerate().take(base + 1).skip(1) {
        *slot = bits >> (v - 1) & 1 == 1;
    }
    for (sel, vars) in implications {
        model[*sel] = vars.iter().all(|&v| !model[v]);
    }
    cnf.first_falsified(&model).is_none()
}

#[test]
fn encoding_is_sound_and_complete_by_enumeration() {
    let mut checked = 0;
    for n in 1..=3usize {
        let u = Arc::new(Universe::letters(n));
        let all = OrderSet::all_permutations(u.clone());
        // every nonempty subset of the n! orders
        for mask in 1u32..(1 << all.len()) {
            let members: Vec<usize> = (0..all.len()).filter(|&i| mask >> i & 1 == 1).collect();
            let s = all.subset(&members);
            let g = SwapGraph::build(&s);
            let m = posetcov::driver::union_moat(&s, &g);
            let complement = all.difference(&s);
            for k in 1..=2usize {
                let variants: [(Exclusion<'_>, &OrderSet); 2] = [
                    (Exclusion::Moat(&m), &m),
                    (Exclusion::Naive { keep: &s, cap: 10 }, &complement),
                ];
                for (exclusion, excluded) in variants {
                    let cnf = encode_instance(&s, exclusion, k).unwrap();
                    let base = cnf.var_map().base_count();
                    let excluded: Vec<LinearOrder> = excluded.iter().cloned().collect();
                    let implications = selector_implications(&cnf);
                    for bits in 0u64..(1 << base) {
                        assert_eq!(
                            satisfiable_with_best_selectors(bits, &cnf, &implications),
                            semantically_valid(bits, &s, &excluded, k),
                            "n={n} mask={mask:b} k={k} bits={bits:b}"
                        );
                        checked += 1;
                    }
                }
            }
        }
    }
    assert!(checked > 0);
}

#[test]
fn clause_counts_follow_formulas() {
    for n in 1..=5usize {
        for k in 1..=3usize {
            for seed in 0..3u64 {
                let m = [1usize, 3, 7][seed as usize].min(factorial(n));
                let s = posetcov::testkit::gen_instance(&posetcov::testkit::GenSpec {
                    n,
                    m,
                    connected: seed % 2 == 0,
                    seed,
                    density: None,
                })
                .unwrap();
                let moat_set = union_moat(&s);
                let cnf = encode_instance(&s, Exclusion::Moat(&moat_set), k).unwrap();
                let pairs = n * (n - 1) / 2;
                let triples = n * (n - 1) * n.saturating_sub(2);
                assert_eq!(cnf.count(Origin::Axiom), k * (pairs + triples));
                let coverage = if k == 1 {
                    s.len() * pairs
                } else {
                    s.len() * (k * pairs + 1)
                };
                assert_eq!(cnf.count(Origin::Coverage), coverage);
                assert_eq!(cnf.count(Origin::Exclusion), moat_set.len() * k);
                let selectors = if k == 1 { 0 } else { s.len() * k };
                assert_eq!(cnf.num_vars(), k * n * (n - 1) + selectors);
            }
        }
    }
}

fn factorial(n: usize) -> usize {
    (1..=n).product()
}
