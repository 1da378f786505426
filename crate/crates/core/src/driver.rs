//! Solving the cover problem end to end.
//!
//! The input is split into connected components of its swap graph. Each
//! component first gets the polynomial single-poset check; otherwise cover
//! sizes `k = 2, 3, ...` are encoded and queried until one is satisfiable.
//! Every poset of an exact cover has a connected language, so it lives inside
//! one component and the per-component minima add up to the global minimum.

use std::sync::Arc;
use std::time::{Duration, Instant};

use rayon::prelude::*;

use crate::backend::{BackendFactory, BatsatBackend, SatOutcome, SolverBackend};
use crate::encoding::{
    choose_strategy, complement_size, encode_instance, Cnf, EncodingStrategy, Exclusion, VarMap,
    DEFAULT_NAIVE_CAP,
};
use crate::error::{Error, Result};
use crate::order::{OrderSet, Universe};
use crate::poset::{intersect_orders, Poset, DEFAULT_EXTENSION_CAP};
use crate::swap_graph::{moat, MoatSet, SwapGraph};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum Method {
    #[default]
    Auto,
    Moat,
    Naive,
}

#[derive(Debug, Clone)]
pub struct SolveOptions {
    pub method: Method,
    /// Solve each swap-graph component separately.
    pub divide: bool,
    pub max_k: Option<usize>,
    pub timeout_per_query: Option<Duration>,
    /// Budget for the whole solve, across all queries.
    pub global_timeout: Option<Duration>,
    pub verify: bool,
    pub naive_cap: u64,
    pub extension_cap: usize,
    /// Worker threads for components; `None` uses the global pool.
    pub jobs: Option<usize>,
}

impl Default for SolveOptions {
    fn default() -> Self {
        SolveOptions {
            method: Method::Auto,
            divide: true,
            max_k: None,
            timeout_per_query: Some(Duration::from_secs(900)),
            global_timeout: None,
            verify: true,
            naive_cap: DEFAULT_NAIVE_CAP,
            extension_cap: DEFAULT_EXTENSION_CAP,
            jobs: None,
        }
    }
}

/// How a cover (or one part of it) was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum MethodUsed {
    SinglePoset,
    Moat,
    Naive,
    Mixed,
}

impl MethodUsed {
    pub fn name(self) -> &'static str {
        match self {
            MethodUsed::SinglePoset => "single",
            MethodUsed::Moat => "moat",
            MethodUsed::Naive => "naive",
            MethodUsed::Mixed => "mixed",
        }
    }

    fn combine(parts: impl IntoIterator<Item = MethodUsed>) -> MethodUsed {
        let mut acc: Option<MethodUsed> = None;
        let mut saw_single = false;
        for m in parts {
            if m == MethodUsed::SinglePoset {
                saw_single = true;
                continue;
            }
            acc = match acc {
                None => Some(m),
                Some(a) if a == m => Some(a),
                Some(_) => Some(MethodUsed::Mixed),
            };
        }
        match acc {
            Some(m) => m,
            None if saw_single => MethodUsed::SinglePoset,
            None => MethodUsed::Moat,
        }
    }
}

impl From<EncodingStrategy> for MethodUsed {
    fn from(s: EncodingStrategy) -> Self {
        match s {
            EncodingStrategy::Moat => MethodUsed::Moat,
            EncodingStrategy::Naive => MethodUsed::Naive,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolveStats {
    /// Variables and clauses summed over every query issued.
    pub vars: usize,
    pub clauses: usize,
    pub queries: usize,
    pub wall: Duration,
    pub method: MethodUsed,
    pub components: usize,
}

#[derive(Debug, Clone)]
pub struct Cover {
    pub universe: Arc<Universe>,
    pub posets: Vec<Poset>,
    /// Filled in when the cover was verified.
    pub languages: Option<Vec<OrderSet>>,
    pub stats: SolveStats,
}

impl Cover {
    pub fn k(&self) -> usize {
        self.posets.len()
    }
}

/// The unique poset whose language is exactly `s`, if there is one.
///
/// The candidate is the intersection of all members. Its language equals `s`
/// iff swapping any consecutive pair that the candidate leaves incomparable
/// stays inside `s`.
pub fn single_poset_cover(s: &OrderSet) -> Option<Poset> {
    let p = intersect_orders(s).ok()?;
    for l in s {
        for (x, y) in l.covers() {
            if !p.comparable(x, y) {
                let swapped = l.apply_swap(x, y).expect("consecutive elements");
                if !s.contains(&swapped) {
                    return None;
                }
            }
        }
    }
    Some(p)
}

/// Reads `k` posets off a model of the relation variables.
pub fn decode_model(model: &[bool], vm: &VarMap, universe: &Arc<Universe>) -> Result<Vec<Poset>> {
    let n = vm.n();
    if model.len() <= vm.base_count() {
        return Err(Error::InvalidModel(
            "model does not assign every base variable".into(),
        ));
    }
    (0..vm.k())
        .map(|i| {
            let mut rel = vec![false; n * n];
            for x in 0..n {
                for y in 0..n {
                    if x != y {
                        rel[x * n + y] = model[vm.var(i, x, y) as usize];
                    }
                }
            }
            Poset::from_matrix(universe.clone(), rel)
                .map_err(|e| Error::InvalidModel(format!("poset {i}: {e}")))
        })
        .collect()
}

/// Per-poset languages when their union is exactly `s`, `None` otherwise.
pub fn cover_languages(
    posets: &[Poset],
    s: &OrderSet,
    cap: usize,
) -> Result<Option<Vec<OrderSet>>> {
    let mut langs = Vec::with_capacity(posets.len());
    let mut union = OrderSet::new(s.universe().clone());
    for p in posets {
        let lang = p.linear_extensions(cap)?;
        for l in &lang {
            if !s.contains(l) {
                return Ok(None);
            }
            union.insert(l.clone());
        }
        langs.push(lang);
    }
    Ok((union.len() == s.len()).then_some(langs))
}

/// True iff the languages of `posets` union to exactly `s`.
pub fn verify_cover(posets: &[Poset], s: &OrderSet, cap: usize) -> Result<bool> {
    cover_languages(posets, s, cap).map(|l| l.is_some())
}

/// Result of solving one part of the input.
#[derive(Debug, Clone)]
pub struct PartCover {
    pub posets: Vec<Poset>,
    pub method: MethodUsed,
    pub queries: usize,
    pub vars: usize,
    pub clauses: usize,
}

fn part_strategy(part: &OrderSet, moat: &MoatSet, opts: &SolveOptions) -> EncodingStrategy {
    match opts.method {
        Method::Moat => EncodingStrategy::Moat,
        Method::Naive => EncodingStrategy::Naive,
        Method::Auto => choose_strategy(moat.len(), part.len(), part.n(), opts.naive_cap),
    }
}

/// Minimum cover of `part`, excluding `moat_for_encoding` (which must be
/// disjoint from the full input) or, under the naive method, every order
/// outside `part`.
pub fn solve_component(
    part: &OrderSet,
    moat_for_encoding: &MoatSet,
    opts: &SolveOptions,
    backend: &mut dyn SolverBackend,
    deadline: Option<Instant>,
) -> Result<PartCover> {
    if part.is_empty() {
        return Err(Error::EmptySet);
    }
    if let Some(p) = single_poset_cover(part) {
        return Ok(PartCover {
            posets: vec![p],
            method: MethodUsed::SinglePoset,
            queries: 0,
            vars: 0,
            clauses: 0,
        });
    }
    let strategy = part_strategy(part, moat_for_encoding, opts);
    if strategy == EncodingStrategy::Naive {
        let complement = complement_size(part.len(), part.n());
        if complement.is_none_or(|c| c > opts.naive_cap as u128) {
            return Err(Error::NaiveCapExceeded {
                complement: complement.unwrap_or(u128::MAX),
                cap: opts.naive_cap,
            });
        }
    }
    let upper = part.len();
    let limit = opts.max_k.unwrap_or(upper).min(upper);
    let mut out = PartCover {
        posets: Vec::new(),
        method: strategy.into(),
        queries: 0,
        vars: 0,
        clauses: 0,
    };
    // k = 1 is settled by the single-poset check
    for k in 2..=limit {
        if k == upper {
            // every smaller k failed; one chain per order is a cover
            out.posets = part
                .iter()
                .map(|l| Poset::chain(part.universe().clone(), l))
                .collect();
            return Ok(out);
        }
        let exclusion = match strategy {
            EncodingStrategy::Moat => Exclusion::Moat(moat_for_encoding),
            EncodingStrategy::Naive => Exclusion::Naive {
                keep: part,
                cap: opts.naive_cap,
            },
        };
        let cnf = encode_instance(part, exclusion, k)?;
        out.queries += 1;
        out.vars += cnf.num_vars();
        out.clauses += cnf.len();
        let query_deadline = match (opts.timeout_per_query, deadline) {
            (Some(t), Some(d)) => Some((Instant::now() + t).min(d)),
            (Some(t), None) => Some(Instant::now() + t),
            (None, d) => d,
        };
        match backend.solve(&cnf, query_deadline)? {
            SatOutcome::Unsat => continue,
            SatOutcome::Timeout => return Err(Error::QueryTimeout { k }),
            SatOutcome::Sat(model) => {
                if let Some(clause) = cnf.first_falsified(&model) {
                    return Err(Error::BackendUnsound { clause });
                }
                let posets = decode_model(&model, cnf.var_map(), part.universe())?;
                // at the minimal k no candidate can be idle
                for (i, p) in posets.iter().enumerate() {
                    if !part.iter().any(|l| p.is_extension(l)) {
                        return Err(Error::InvalidModel(format!(
                            "poset {i} extends to no input order"
                        )));
                    }
                }
                out.posets = posets;
                return Ok(out);
            }
        }
    }
    Err(Error::KMaxExceeded { max_k: limit })
}

/// Union of the moats of every component of `graph`, minus `s`.
pub fn union_moat(s: &OrderSet, graph: &SwapGraph) -> MoatSet {
    let mut out = OrderSet::new(s.universe().clone());
    for members in &graph.components().components {
        for l in &moat(members, s) {
            out.insert(l.clone());
        }
    }
    out.difference(s)
}

/// The formula asking for a cover of all of `s` with `k` posets, with the
/// exclusion method picked as in an undivided solve.
pub fn encode_whole(
    s: &OrderSet,
    k: usize,
    opts: &SolveOptions,
) -> Result<(Cnf, EncodingStrategy)> {
    let m = union_moat(s, &SwapGraph::build(s));
    let strategy = part_strategy(s, &m, opts);
    let exclusion = match strategy {
        EncodingStrategy::Moat => Exclusion::Moat(&m),
        EncodingStrategy::Naive => Exclusion::Naive {
            keep: s,
            cap: opts.naive_cap,
        },
    };
    Ok((encode_instance(s, exclusion, k)?, strategy))
}

/// Minimum cover of `s` with the built-in SAT backend.
pub fn solve(s: &OrderSet, opts: &SolveOptions) -> Result<Cover> {
    solve_with(s, opts, &BatsatBackend::factory())
}

pub fn solve_with(
    s: &OrderSet,
    opts: &SolveOptions,
    factory: &dyn BackendFactory,
) -> Result<Cover> {
    if s.is_empty() {
        return Err(Error::EmptySet);
    }
    if opts.max_k == Some(0) {
        return Err(Error::KMaxExceeded { max_k: 0 });
    }
    let start = Instant::now();
    let deadline = opts.global_timeout.map(|t| start + t);
    let graph = SwapGraph::build(s);
    let partition = graph.components();

    // components ordered by their smallest member's string form
    let mut comps: Vec<(String, Vec<usize>)> = partition
        .components
        .iter()
        .map(|c| {
            let key = c.iter().map(|&v| s.render(s.get(v))).min().unwrap();
            (key, c.clone())
        })
        .collect();
    comps.sort();

    let parts: Vec<PartCover> = if opts.divide {
        let work = || {
            comps
                .par_iter()
                .enumerate()
                .map(|(index, (_, members))| {
                    let part = s.subset(members);
                    let m = moat(members, s).difference(s);
                    let mut backend = factory.create();
                    solve_component(&part, &m, opts, backend.as_mut(), deadline).map_err(|e| {
                        Error::Component {
                            index,
                            source: Box::new(e),
                        }
                    })
                })
                .collect::<Vec<_>>()
        };
        let results = match opts.jobs {
            Some(j) => rayon::ThreadPoolBuilder::new()
                .num_threads(j.max(1))
                .build()
                .map_err(|e| Error::Backend(e.to_string()))?
                .install(work),
            None => work(),
        };
        results.into_iter().collect::<Result<_>>()?
    } else {
        let whole_moat = union_moat(s, &graph);
        let mut backend = factory.create();
        vec![solve_component(
            s,
            &whole_moat,
            opts,
            backend.as_mut(),
            deadline,
        )?]
    };

    let stats = SolveStats {
        vars: parts.iter().map(|p| p.vars).sum(),
        clauses: parts.iter().map(|p| p.clauses).sum(),
        queries: parts.iter().map(|p| p.queries).sum(),
        wall: Duration::ZERO,
        method: MethodUsed::combine(parts.iter().map(|p| p.method)),
        components: partition.len(),
    };
    let posets: Vec<Poset> = parts.into_iter().flat_map(|p| p.posets).collect();
    let languages = if opts.verify {
        match cover_languages(&posets, s, opts.extension_cap)? {
            Some(l) => Some(l),
            None => return Err(Error::VerificationFailed),
        }
    } else {
        None
    };
    Ok(Cover {
        universe: s.universe().clone(),
        posets,
        languages,
        stats: SolveStats {
            wall: start.elapsed(),
            ..stats
        },
    })
}
