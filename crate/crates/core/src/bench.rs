//! Timeout grids over generated instances.

use std::fmt::Write as _;
use std::ops::RangeInclusive;
use std::time::Duration;

use rayon::prelude::*;

use crate::driver::{solve, SolveOptions};
use crate::error::{Error, Result};
use crate::order::factorial;
use crate::testkit::{gen_instance, GenSpec};

#[derive(Debug, Clone)]
pub struct BenchSpec {
    pub n_range: RangeInclusive<usize>,
    pub m_range: RangeInclusive<usize>,
    pub trials: usize,
    pub timeout: Duration,
    pub seed: u64,
    pub connected: bool,
    pub jobs: Option<usize>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct BenchRow {
    pub n: usize,
    pub m: usize,
    pub trials: usize,
    pub solved: usize,
    pub timeouts: usize,
    /// Over solved trials only.
    pub median_ms: Option<f64>,
}

enum Trial {
    Solved(f64),
    Timeout,
    Failed,
}

fn splitmix(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Seed for one trial, stable across runs and scheduling.
pub fn trial_seed(seed: u64, n: usize, m: usize, trial: usize) -> u64 {
    splitmix(seed ^ splitmix(((n as u64) << 48) ^ ((m as u64) << 24) ^ trial as u64))
}

fn median(mut v: Vec<f64>) -> Option<f64> {
    if v.is_empty() {
        return None;
    }
    v.sort_by(f64::total_cmp);
    let mid = v.len() / 2;
    Some(if v.len() % 2 == 1 {
        v[mid]
    } else {
        (v[mid - 1] + v[mid]) / 2.0
    })
}

fn run_trial(spec: &BenchSpec, n: usize, m: usize, t: usize) -> Trial {
    let gen = GenSpec {
        n,
        m,
        connected: spec.connected,
        seed: trial_seed(spec.seed, n, m, t),
        density: None,
    };
    let Ok(orders) = gen_instance(&gen) else {
        return Trial::Failed;
    };
    let opts = SolveOptions {
        timeout_per_query: Some(spec.timeout),
        global_timeout: Some(spec.timeout),
        ..SolveOptions::default()
    };
    match solve(&orders, &opts) {
        Ok(cover) => Trial::Solved(cover.stats.wall.as_secs_f64() * 1e3),
        Err(e) if matches!(e.root(), Error::QueryTimeout { .. }) => Trial::Timeout,
        Err(_) => Trial::Failed,
    }
}

/// One row per `(n, m)` cell; cells with `m > n!` are skipped.
pub fn run_bench(spec: &BenchSpec) -> Result<Vec<BenchRow>> {
    if spec.trials == 0 {
        return Err(Error::InvalidArgument("trials must be at least 1".into()));
    }
    let cells: Vec<(usize, usize)> = spec
        .n_range
        .clone()
        .flat_map(|n| spec.m_range.clone().map(move |m| (n, m)))
        .filter(|&(n, m)| n >= 1 && m >= 1 && factorial(n).is_none_or(|f| m as u128 <= f))
        .collect();
    let run = || {
        cells
            .iter()
            .map(|&(n, m)| {
                let outcomes: Vec<Trial> = (0..spec.trials)
                    .into_par_iter()
                    .map(|t| run_trial(spec, n, m, t))
                    .collect();
                let times: Vec<f64> = outcomes
                    .iter()
                    .filter_map(|o| match o {
                        Trial::Solved(ms) => Some(*ms),
                        _ => None,
                    })
                    .collect();
                BenchRow {
                    n,
                    m,
                    trials: spec.trials,
                    solved: times.len(),
                    timeouts: outcomes
                        .iter()
                        .filter(|o| matches!(o, Trial::Timeout))
                        .count(),
                    median_ms: median(times),
                }
            })
            .collect::<Vec<_>>()
    };
    match spec.jobs {
        Some(j) => Ok(rayon::ThreadPoolBuilder::new()
            .num_threads(j.max(1))
            .build()
            .map_err(|e| Error::InvalidArgument(e.to_string()))?
            .install(run)),
        None => Ok(run()),
    }
}

pub const CSV_HEADER: &str = "n,m,trials,solved,timeouts,median_ms";

pub fn to_csv(rows: &[BenchRow]) -> String {
    let mut out = String::from(CSV_HEADER);
    out.push('\n');
    for r in rows {
        let median = r.median_ms.map(|m| format!("{m:.3}")).unwrap_or_default();
        let _ = writeln!(
            out,
            "{},{},{},{},{},{}",
            r.n, r.m, r.trials, r.solved, r.timeouts, median
        );
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec(trials: usize) -> BenchSpec {
        BenchSpec {
            n_range: 3..=3,
            m_range: 2..=4,
            trials,
            timeout: Duration::from_secs(60),
            seed: 1,
            connected: true,
            jobs: Some(2),
        }
    }

    #[test]
    fn tiny_grid_has_no_timeouts() {
        let rows = run_bench(&spec(5)).unwrap();
        assert_eq!(rows.len(), 3);
        assert_eq!(rows.iter().map(|r| r.trials).sum::<usize>(), 15);
        assert!(rows.iter().all(|r| r.timeouts == 0 && r.solved == 5));
        let csv = to_csv(&rows);
        assert!(csv.starts_with("n,m,trials,solved,timeouts,median_ms\n3,2,5,5,0,"));
    }

    #[test]
    fn zero_trials_rejected() {
        assert!(matches!(
            run_bench(&spec(0)),
            Err(Error::InvalidArgument(_))
        ));
    }

    #[test]
    fn impossible_cells_skipped() {
        let s = BenchSpec {
            n_range: 2..=2,
            m_range: 1..=5,
            ..spec(1)
        };
        let rows = run_bench(&s).unwrap();
        assert_eq!(rows.iter().map(|r| r.m).collect::<Vec<_>>(), vec![1, 2]);
    }

    #[test]
    fn medians() {
        assert_eq!(median(vec![]), None);
        assert_eq!(median(vec![3.0, 1.0, 2.0]), Some(2.0));
        assert_eq!(median(vec![4.0, 1.0]), Some(2.5));
    }
}
