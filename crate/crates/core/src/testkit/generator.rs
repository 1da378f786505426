//! Seeded instance generation.
//!
//! Connected instances grow from one uniform permutation by repeatedly adding
//! an unvisited swap neighbor of a uniformly chosen member that still has
//! one. This guarantees a single swap-graph component but does not sample
//! connected sets uniformly.

use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::order::{factorial, for_each_permutation, LinearOrder, OrderSet, Universe};
use crate::poset::{transitive_closure, Poset};
use crate::swap_graph::swap_neighbors;

#[derive(Debug, Clone, PartialEq)]
pub struct GenSpec {
    pub n: usize,
    pub m: usize,
    pub connected: bool,
    pub seed: u64,
    pub density: Option<f64>,
}

impl GenSpec {
    /// One-line description for instance file headers.
    pub fn header(&self) -> String {
        let mut s = format!(
            "posetcov gen n={} m={} connected={} seed={}",
            self.n, self.m, self.connected, self.seed
        );
        if let Some(d) = self.density {
            s.push_str(&format!(" density={d}"));
        }
        s
    }
}

/// Letters for up to 26 elements, `e1 .. en` beyond.
pub fn universe_of_size(n: usize) -> Arc<Universe> {
    if n <= 26 {
        Arc::new(Universe::letters(n))
    } else {
        Arc::new(Universe::new((1..=n).map(|i| format!("e{i}"))).unwrap())
    }
}

fn random_order(n: usize, rng: &mut ChaCha8Rng) -> LinearOrder {
    let mut seq: Vec<usize> = (0..n).collect();
    seq.shuffle(rng);
    LinearOrder::from_seq(seq).unwrap()
}

/// A random poset: forward pairs of a random permutation, each kept with
/// probability `density`, then closed.
pub fn random_poset(n: usize, density: f64, seed: u64) -> Poset {
    let density = density.clamp(0.0, 1.0);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let topo = random_order(n, &mut rng);
    let seq = topo.seq();
    let mut pairs = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if rng.gen_bool(density) {
                pairs.push((seq[i], seq[j]));
            }
        }
    }
    transitive_closure(&pairs, universe_of_size(n)).expect("forward pairs are acyclic")
}

/// The full language of a random poset.
pub fn gen_poset_language(n: usize, density: f64, seed: u64, cap: usize) -> Result<OrderSet> {
    random_poset(n, density, seed).linear_extensions(cap)
}

pub fn gen_instance(spec: &GenSpec) -> Result<OrderSet> {
    let n = spec.n;
    if n == 0 {
        return Err(Error::InvalidUniverse("no elements".into()));
    }
    let total = factorial(n);
    if spec.m == 0 || total.is_some_and(|f| spec.m as u128 > f) {
        return Err(Error::SizeExceedsFactorial { n, m: spec.m });
    }
    let universe = universe_of_size(n);
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let mut set = OrderSet::new(universe.clone());

    if spec.connected {
        set.insert(random_order(n, &mut rng));
        while set.len() < spec.m {
            let open: Vec<usize> = (0..set.len())
                .filter(|&i| {
                    swap_neighbors(set.get(i))
                        .iter()
                        .any(|(l, _)| !set.contains(l))
                })
                .collect();
            let &i = open
                .choose(&mut rng)
                .expect("m <= n! leaves an open member");
            let fresh: Vec<LinearOrder> = swap_neighbors(set.get(i))
                .into_iter()
                .map(|(l, _)| l)
                .filter(|l| !set.contains(l))
                .collect();
            let next = fresh.choose(&mut rng).unwrap().clone();
            set.insert(next);
        }
    } else if total.is_some_and(|f| f <= 40_320 && spec.m as u128 * 2 > f) {
        // dense request: shuffle all permutations
        let mut all = Vec::new();
        for_each_permutation(n, |seq| {
            all.push(LinearOrder::from_seq(seq.to_vec()).unwrap())
        });
        all.shuffle(&mut rng);
        all.truncate(spec.m);
        set = OrderSet::from_orders(universe, all);
    } else {
        while set.len() < spec.m {
            set.insert(random_order(n, &mut rng));
        }
    }
    Ok(set)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::swap_graph::SwapGraph;

    #[test]
    fn density_extremes() {
        assert_eq!(random_poset(5, 0.0, 1).pair_count(), 0);
        assert_eq!(random_poset(5, 1.0, 1).pair_count(), 10);
    }

    #[test]
    fn random_poset_is_valid_and_deterministic() {
        let p = random_poset(4, 0.5, 42);
        p.check_axioms().unwrap();
        assert_eq!(p, random_poset(4, 0.5, 42));
    }

    #[test]
    fn size_limits() {
        let spec = GenSpec {
            n: 3,
            m: 7,
            connected: false,
            seed: 0,
            density: None,
        };
        assert!(matches!(
            gen_instance(&spec),
            Err(Error::SizeExceedsFactorial { .. })
        ));
        let spec = GenSpec {
            n: 3,
            m: 1,
            connected: true,
            seed: 0,
            density: None,
        };
        let s = gen_instance(&spec).unwrap();
        assert_eq!(s.len(), 1);
        assert_eq!(SwapGraph::build(&s).components().len(), 1);
    }

    #[test]
    fn connected_growth_yields_one_component() {
        for seed in 0..20 {
            let spec = GenSpec {
                n: 4,
                m: 5,
                connected: true,
                seed,
                density: None,
            };
            let s = gen_instance(&spec).unwrap();
            assert_eq!(s.len(), 5);
            assert_eq!(SwapGraph::build(&s).components().len(), 1);
        }
        let spec = GenSpec {
            n: 3,
            m: 6,
            connected: true,
            seed: 3,
            density: None,
        };
        assert_eq!(gen_instance(&spec).unwrap().len(), 6);
    }

    #[test]
    fn generation_is_deterministic() {
        for connected in [true, false] {
            let spec = GenSpec {
                n: 6,
                m: 20,
                connected,
                seed: 99,
                density: None,
            };
            let a = gen_instance(&spec).unwrap();
            let b = gen_instance(&spec).unwrap();
            assert_eq!(a.members(), b.members());
        }
    }

    #[test]
    fn dense_unconnected_request() {
        let spec = GenSpec {
            n: 3,
            m: 6,
            connected: false,
            seed: 5,
            density: None,
        };
        assert_eq!(gen_instance(&spec).unwrap().len(), 6);
    }
}
