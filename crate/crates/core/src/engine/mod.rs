//! Exact counting of self-avoiding walks, directed walks on quotients and
//! event-annotated walks.

mod cycles;
mod events;
mod forest;
mod local;
mod search;

use num_bigint::BigUint;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

pub use cycles::{build_cycle_family, CycleFamily};
pub use events::{count_with_events, event_profile, lambda_upper, EventProfile, EventQuery};

use crate::error::{Error, Result};
use crate::export::decimal;
use crate::graph::{GraphHandle, VertexKey};
use crate::quotient::QuotientGraph;
use local::LocalGraph;
use search::{overflow, Walker};

/// Out-neighbor view shared by graphs and quotient multigraphs.
pub trait Adjacency: Sync {
    fn name(&self) -> String;
    fn root(&self) -> VertexKey;
    /// Out-neighbors with multiplicities; loops appear as the vertex itself.
    fn adjacent(&self, v: &VertexKey) -> Result<Vec<(VertexKey, u32)>>;
    fn directed(&self) -> bool;
}

impl Adjacency for GraphHandle {
    fn name(&self) -> String {
        self.id().to_string()
    }

    fn root(&self) -> VertexKey {
        self.origin()
    }

    fn adjacent(&self, v: &VertexKey) -> Result<Vec<(VertexKey, u32)>> {
        Ok(self
            .neighbors(v)?
            .into_iter()
            .map(|n| (n.target, n.multiplicity))
            .collect())
    }

    fn directed(&self) -> bool {
        false
    }
}

impl Adjacency for QuotientGraph {
    fn name(&self) -> String {
        self.id()
    }

    fn root(&self) -> VertexKey {
        self.base().clone()
    }

    fn adjacent(&self, v: &VertexKey) -> Result<Vec<(VertexKey, u32)>> {
        Ok(self
            .out_edges(v)?
            .into_iter()
            .map(|e| (e.target, e.multiplicity))
            .collect())
    }

    fn directed(&self) -> bool {
        true
    }
}

/// How forests are counted.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Strategy {
    /// Closed recursion on free presentations, search otherwise.
    #[default]
    Auto,
    /// Always enumerate walks one by one.
    Enumerate,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EngineConfig {
    pub workers: usize,
    /// Largest number of vertices materialized around the start vertex.
    pub max_vertices: usize,
    pub strategy: Strategy,
}

impl Default for EngineConfig {
    fn default() -> Self {
        EngineConfig {
            workers: std::thread::available_parallelism().map_or(1, |n| n.get()),
            max_vertices: 4_000_000,
            strategy: Strategy::Auto,
        }
    }
}

impl EngineConfig {
    pub fn with_workers(workers: usize) -> Self {
        EngineConfig {
            workers: workers.max(1),
            ..Self::default()
        }
    }

    pub(crate) fn install<T: Send>(&self, f: impl FnOnce() -> Result<T> + Send) -> Result<T> {
        if self.workers <= 1 {
            return f();
        }
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(self.workers)
            .build()
            .map_err(|e| Error::Parameter(format!("cannot start workers: {e}")))?;
        pool.install(f)
    }
}

/// Exact counts `σ_0, …, σ_N` from one start vertex.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WalkCounts {
    pub graph: String,
    pub start: VertexKey,
    pub directed: bool,
    #[serde(with = "decimal")]
    pub counts: Vec<BigUint>,
    /// The `n_max` asked for; larger than `max_n()` when truncated.
    pub requested: usize,
    pub truncated: bool,
}

impl WalkCounts {
    pub fn max_n(&self) -> usize {
        self.counts.len() - 1
    }

    pub fn get(&self, n: usize) -> Option<&BigUint> {
        self.counts.get(n)
    }

    /// `σ_n^{1/n}` for `n ≥ 1`.
    pub fn root(&self, n: usize) -> Option<f64> {
        if n == 0 {
            return None;
        }
        self.counts.get(n).map(|c| nth_root(c, n))
    }

    /// `(n, σ_n^{1/n})` for every computed `n ≥ 1`.
    pub fn roots(&self) -> Vec<(usize, f64)> {
        (1..self.counts.len()).map(|n| (n, nth_root(&self.counts[n], n))).collect()
    }
}

/// `c^{1/n}` in binary floating point.
pub fn nth_root(c: &BigUint, n: usize) -> f64 {
    if c.is_zero() {
        return 0.0;
    }
    let bits = c.bits();
    if bits < 1000 {
        c.to_f64().unwrap_or(f64::INFINITY).powf(1.0 / n as f64)
    } else {
        let shift = bits - 900;
        let top = (c >> shift).to_f64().unwrap_or(f64::INFINITY);
        ((top.ln() + shift as f64 * std::f64::consts::LN_2) / n as f64).exp()
    }
}

struct Plain {
    counts: Vec<u128>,
}

impl Walker for Plain {
    fn enter(&mut self, _: u32, _: usize) -> bool {
        true
    }

    fn leave(&mut self, _: u32, _: usize) {}

    fn record(&mut self, depth: usize, weight: u128) -> Result<()> {
        self.counts[depth] = self.counts[depth].checked_add(weight).ok_or_else(overflow)?;
        Ok(())
    }

    fn leaf_shortcut(&self) -> bool {
        true
    }
}

pub(crate) fn sum_counts(parts: impl IntoIterator<Item = Vec<u128>>, len: usize) -> Vec<BigUint> {
    let mut total = vec![BigUint::zero(); len];
    for part in parts {
        for (t, c) in total.iter_mut().zip(part) {
            *t += c;
        }
    }
    total
}

fn count_from<A: Adjacency + ?Sized>(
    adj: &A,
    v0: &VertexKey,
    n_max: usize,
    config: &EngineConfig,
) -> Result<WalkCounts> {
    let local = LocalGraph::build(adj, v0, n_max, config.max_vertices)?;
    let n = local.radius.min(n_max);
    let len = n + 1;
    let parts = config.install(|| {
        search::run(&local, n, config.workers, || Plain {
            counts: vec![0; len],
        })
    })?;
    Ok(WalkCounts {
        graph: adj.name(),
        start: v0.clone(),
        directed: adj.directed(),
        counts: sum_counts(parts.into_iter().map(|p| p.counts), len),
        requested: n_max,
        truncated: n < n_max,
    })
}

/// Number of `n`-step SAWs from `v0` for every `n ≤ n_max`; parallel edges
/// give distinct walks.
pub fn count_saws(
    g: &GraphHandle,
    v0: &VertexKey,
    n_max: usize,
    config: &EngineConfig,
) -> Result<WalkCounts> {
    g.validate_key(v0)?;
    if config.strategy == Strategy::Auto && g.is_forest() {
        return forest::count(g, v0, n_max);
    }
    count_from(g, v0, n_max, config)
}

/// Number of `n`-step directed SAWs from the base orbit of the quotient.
pub fn count_directed_saws(
    q: &QuotientGraph,
    n_max: usize,
    config: &EngineConfig,
) -> Result<WalkCounts> {
    count_from(q, q.base(), n_max, config)
}

/// Number of `n`-step walks (not necessarily self-avoiding) from the root,
/// loops included.
pub fn count_walks<A: Adjacency + ?Sized>(adj: &A, n_max: usize) -> Result<Vec<BigUint>> {
    let root = adj.root();
    let local = LocalGraph::build(adj, &root, n_max, usize::MAX)?;
    let mut ways = vec![BigUint::zero(); local.len()];
    ways[0] = BigUint::from(1u32);
    let mut totals = vec![BigUint::from(1u32)];
    for _ in 0..n_max {
        let mut next = vec![BigUint::zero(); local.len()];
        for v in 0..local.len() {
            if ways[v].is_zero() {
                continue;
            }
            if local.loops[v] > 0 {
                next[v] += &ways[v] * local.loops[v];
            }
            for &(w, mult) in local.out(v as u32) {
                next[w as usize] += &ways[v] * mult;
            }
        }
        ways = next;
        totals.push(ways.iter().sum());
    }
    Ok(totals)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::catalog;
    use crate::quotient::{build_quotient, SubgroupAction};

    fn counts(name: &str, n: usize, workers: usize) -> Vec<u64> {
        let g = catalog(name).unwrap();
        let cfg = EngineConfig {
            workers,
            strategy: Strategy::Enumerate,
            ..EngineConfig::default()
        };
        count_saws(&g, &g.origin(), n, &cfg)
            .unwrap()
            .counts
            .iter()
            .map(|c| c.to_u64().unwrap())
            .collect()
    }

    #[test]
    fn small_counts() {
        assert_eq!(counts("zd(2)", 5, 1), [1, 4, 12, 36, 100, 284]);
        assert_eq!(counts("ladder", 3, 1), [1, 3, 6, 12]);
        assert_eq!(counts("zd(1)", 4, 1), [1, 2, 2, 2, 2]);
    }

    #[test]
    fn worker_count_does_not_matter() {
        assert_eq!(counts("zd(2)", 9, 1), counts("zd(2)", 9, 3));
        assert_eq!(counts("square-octagon", 10, 1), counts("square-octagon", 10, 4));
    }

    #[test]
    fn forest_recursion_matches_search() {
        let g = catalog("tree(4)").unwrap();
        let dp = count_saws(&g, &g.origin(), 10, &EngineConfig::with_workers(1)).unwrap();
        assert_eq!(dp.counts.iter().map(|c| c.to_u64().unwrap()).collect::<Vec<_>>(), counts("tree(4)", 10, 1));
    }

    #[test]
    fn budget_truncates() {
        let g = catalog("zd(2)").unwrap();
        let cfg = EngineConfig {
            workers: 1,
            max_vertices: 30,
            strategy: Strategy::Auto,
        };
        let c = count_saws(&g, &g.origin(), 8, &cfg).unwrap();
        assert!(c.truncated);
        assert_eq!(c.max_n(), 3);
        assert_eq!(c.counts[3], BigUint::from(36u32));
    }

    #[test]
    fn directed_counts_on_small_quotients() {
        let g = catalog("zd(1)").unwrap();
        let q = build_quotient(&g, &SubgroupAction::sublattice(&[vec![2]]).unwrap()).unwrap();
        let c = count_directed_saws(&q, 3, &EngineConfig::with_workers(1)).unwrap();
        assert_eq!(c.counts, [1u32, 2, 0, 0].map(BigUint::from));
        let q = build_quotient(&g, &SubgroupAction::sublattice(&[vec![4]]).unwrap()).unwrap();
        let c = count_directed_saws(&q, 5, &EngineConfig::with_workers(2)).unwrap();
        assert_eq!(c.counts, [1u32, 2, 2, 2, 0, 0].map(BigUint::from));
    }

    #[test]
    fn walk_counts_include_loops() {
        let g = catalog("zd(1)").unwrap();
        let q = build_quotient(&g, &SubgroupAction::sublattice(&[vec![1]]).unwrap()).unwrap();
        assert_eq!(count_walks(&q, 3).unwrap(), [1u32, 2, 4, 8].map(BigUint::from));
        assert_eq!(count_walks(&g, 3).unwrap(), [1u32, 2, 4, 8].map(BigUint::from));
    }

    #[test]
    fn roots() {
        assert_eq!(nth_root(&BigUint::from(1024u32), 10), 2.0);
        let big = BigUint::from(3u32).pow(2000);
        assert!((nth_root(&big, 2000) - 3.0).abs() < 1e-9);
        assert_eq!(nth_root(&BigUint::zero(), 3), 0.0);
    }
}
