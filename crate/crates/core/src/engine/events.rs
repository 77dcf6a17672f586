//! Counts `σ⃗_n(r, E_k^m)` of directed SAWs on which the pattern event occurs
//! at no more than `r` steps.
//!
//! `E_k` occurs at step `j ≥ 1` of a walk when some cycle of the family rooted at
//! the walk's `j`-th vertex has at least `k` of its vertices among the walk
//! vertices `j-m, …, j+m` (clipped to the walk). Without a window (`m` =
//! `None`) the whole walk counts. Growing the walk only enlarges windows, so
//! the number of occurrences is monotone and walks are pruned as soon as it
//! exceeds `r`.

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

use super::local::LocalGraph;
use super::search::{self, overflow, Walker};
use super::{nth_root, CycleFamily, EngineConfig};
use crate::error::{Error, Result};
use crate::export::decimal;
use crate::quotient::QuotientGraph;

const NONE: u32 = u32::MAX;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EventQuery {
    pub k: usize,
    /// Window half-width; `None` for the unwindowed event `E_k`.
    pub m: Option<usize>,
    /// Largest occurrence count tabulated.
    pub r_max: usize,
}

/// `σ⃗_n(r, E_k^m)` for `n ≤ n_max` and `r ≤ r_max`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EventProfile {
    pub quotient: String,
    pub query: EventQuery,
    /// `counts[n][r]`
    #[serde(with = "decimal::nested")]
    pub counts: Vec<Vec<BigUint>>,
    pub requested: usize,
    pub truncated: bool,
}

impl EventProfile {
    pub fn max_n(&self) -> usize {
        self.counts.len() - 1
    }

    pub fn get(&self, n: usize, r: usize) -> Option<&BigUint> {
        self.counts.get(n)?.get(r)
    }

    /// Upper estimates `σ⃗_n(0, E_k)^{1/n}` of `λ_k`, for `n ≥ 1`.
    pub fn lambdas(&self) -> Vec<(usize, f64)> {
        (1..self.counts.len())
            .map(|n| (n, nth_root(&self.counts[n][0], n)))
            .collect()
    }
}

struct Shared {
    // cycles rooted at each local vertex, as local ids (NONE outside the ball)
    cycles: Vec<Vec<Vec<u32>>>,
    // owners[x]: other vertices with a rooted cycle through x
    owners: Vec<Vec<u32>>,
    k: usize,
    m: usize,
    r_max: usize,
}

struct EventWalker<'a> {
    shared: &'a Shared,
    pos: Vec<u32>,
    walk: Vec<u32>,
    occurred: Vec<bool>,
    occ: usize,
    flips: Vec<(usize, usize)>,
    counts: Vec<Vec<u128>>,
}

impl EventWalker<'_> {
    fn occurs(&self, j: usize, d: usize) -> bool {
        let s = self.shared;
        let lo = j.saturating_sub(s.m) as u32;
        let hi = d.min(j.saturating_add(s.m)) as u32;
        s.cycles[self.walk[j] as usize].iter().any(|cycle| {
            cycle
                .iter()
                .filter(|&&y| y != NONE && {
                    let p = self.pos[y as usize];
                    p != NONE && lo <= p && p <= hi
                })
                .count()
                >= s.k
        })
    }

    fn check(&mut self, j: usize, d: usize) {
        // steps are numbered 1..=n; the start vertex is not a step
        if j > 0 && !self.occurred[j] && self.occurs(j, d) {
            self.occurred[j] = true;
            self.occ += 1;
            self.flips.push((d, j));
        }
    }
}

impl Walker for EventWalker<'_> {
    fn enter(&mut self, v: u32, depth: usize) -> bool {
        self.pos[v as usize] = depth as u32;
        self.walk.push(v);
        self.check(depth, depth);
        for &o in &self.shared.owners[v as usize] {
            let j = self.pos[o as usize];
            if j != NONE && depth <= (j as usize).saturating_add(self.shared.m) {
                self.check(j as usize, depth);
            }
        }
        self.occ <= self.shared.r_max
    }

    fn leave(&mut self, v: u32, depth: usize) {
        while let Some(&(d, j)) = self.flips.last() {
            if d != depth {
                break;
            }
            self.flips.pop();
            self.occurred[j] = false;
            self.occ -= 1;
        }
        self.pos[v as usize] = NONE;
        self.walk.pop();
    }

    fn record(&mut self, depth: usize, weight: u128) -> Result<()> {
        let slot = &mut self.counts[depth][self.occ];
        *slot = slot.checked_add(weight).ok_or_else(overflow)?;
        Ok(())
    }
}

fn check_query(family: &CycleFamily, query: &EventQuery) -> Result<()> {
    if query.k == 0 || query.k > family.length {
        return Err(Error::Parameter(format!(
            "event threshold k = {} must lie in 1..={}",
            query.k, family.length
        )));
    }
    Ok(())
}

/// Computes `σ⃗_n(r, E_k^m)` for all `n ≤ n_max`, `r ≤ r_max` in one search.
pub fn event_profile(
    q: &QuotientGraph,
    family: &CycleFamily,
    query: EventQuery,
    n_max: usize,
    config: &EngineConfig,
) -> Result<EventProfile> {
    check_query(family, &query)?;
    let local = LocalGraph::build(q, q.base(), n_max, config.max_vertices)?;
    let n = local.radius.min(n_max);
    if !family.covers_radius(n) {
        return Err(Error::Parameter(format!(
            "cycle family covers radius {:?}, walks of length {n} need more",
            family.radius
        )));
    }
    let mut cycles = Vec::with_capacity(local.len());
    for key in &local.keys {
        let rooted = family.cycles_at(key).ok_or_else(|| {
            Error::Parameter(format!("cycle family does not cover orbit {key}"))
        })?;
        cycles.push(
            rooted
                .iter()
                .map(|c| c.iter().map(|x| local.id_of(x).unwrap_or(NONE)).collect())
                .collect::<Vec<Vec<u32>>>(),
        );
    }
    let mut owners = vec![Vec::new(); local.len()];
    for (o, rooted) in cycles.iter().enumerate() {
        for cycle in rooted {
            for &x in cycle {
                if x != NONE && x as usize != o {
                    owners[x as usize].push(o as u32);
                }
            }
        }
    }
    for list in &mut owners {
        list.sort_unstable();
        list.dedup();
    }
    let shared = Shared {
        cycles,
        owners,
        k: query.k,
        m: query.m.unwrap_or(usize::MAX),
        r_max: query.r_max,
    };
    let width = query.r_max + 1;
    let parts = config.install(|| {
        search::run(&local, n, config.workers, || EventWalker {
            shared: &shared,
            pos: vec![NONE; local.len()],
            walk: Vec::with_capacity(n + 1),
            occurred: vec![false; n + 1],
            occ: 0,
            flips: Vec::new(),
            counts: vec![vec![0; width]; n + 1],
        })
    })?;
    let mut exact = vec![vec![BigUint::default(); width]; n + 1];
    for p in parts {
        for (row, prow) in exact.iter_mut().zip(p.counts) {
            for (c, x) in row.iter_mut().zip(prow) {
                *c += x;
            }
        }
    }
    // cumulative in r
    for row in &mut exact {
        for r in 1..width {
            let prev = row[r - 1].clone();
            row[r] += prev;
        }
    }
    Ok(EventProfile {
        quotient: q.id(),
        query,
        counts: exact,
        requested: n_max,
        truncated: n < n_max,
    })
}

/// `σ⃗_n(r, E_k^m)` from the base orbit.
pub fn count_with_events(
    q: &QuotientGraph,
    family: &CycleFamily,
    k: usize,
    m: Option<usize>,
    r: usize,
    n: usize,
    config: &EngineConfig,
) -> Result<BigUint> {
    let p = event_profile(q, family, EventQuery { k, m, r_max: r }, n, config)?;
    if p.truncated {
        return Err(Error::Parameter(format!(
            "walks of length {n} exceed the vertex budget"
        )));
    }
    Ok(p.counts[n][r].clone())
}

/// The upper bound `σ⃗_n(0, E_k)^{1/n}` on `λ_k`.
pub fn lambda_upper(
    q: &QuotientGraph,
    family: &CycleFamily,
    k: usize,
    n: usize,
    config: &EngineConfig,
) -> Result<f64> {
    if n == 0 {
        return Err(Error::Parameter("lambda_upper needs n >= 1".into()));
    }
    let c = count_with_events(q, family, k, None, 0, n, config)?;
    Ok(nth_root(&c, n))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::engine::{build_cycle_family, count_directed_saws};
    use crate::graph::catalog;
    use crate::quotient::{build_quotient, SubgroupAction};

    fn setup(graph: &str, rows: &[Vec<i64>]) -> (QuotientGraph, CycleFamily) {
        let g = catalog(graph).unwrap();
        let q = build_quotient(&g, &SubgroupAction::sublattice(rows).unwrap()).unwrap();
        let f = build_cycle_family(&q, &q.classify_type().unwrap(), 12).unwrap();
        (q, f)
    }

    #[test]
    fn triangle_events() {
        let (q, f) = setup("zd(1)", &[vec![3]]);
        let cfg = EngineConfig::with_workers(1);
        assert_eq!(count_with_events(&q, &f, 3, Some(3), 0, 2, &cfg).unwrap(), BigUint::ZERO);
        assert_eq!(count_with_events(&q, &f, 3, None, 0, 1, &cfg).unwrap(), BigUint::from(2u32));
        assert_eq!(lambda_upper(&q, &f, 3, 6, &cfg).unwrap(), 0.0);
        assert!(count_with_events(&q, &f, 4, None, 0, 1, &cfg).is_err());
    }

    #[test]
    fn large_r_imposes_nothing() {
        let (q, f) = setup("zd(2)", &[vec![2, 0], vec![0, 2]]);
        let cfg = EngineConfig::with_workers(2);
        let plain = count_directed_saws(&q, 4, &cfg).unwrap();
        for n in 0..=4 {
            let c = count_with_events(&q, &f, 2, Some(1), n, n, &cfg).unwrap();
            assert_eq!(&c, plain.get(n).unwrap());
        }
        for n in 1..=4 {
            assert_eq!(count_with_events(&q, &f, 1, None, 0, n, &cfg).unwrap(), BigUint::ZERO);
        }
    }

    #[test]
    fn workers_agree() {
        let (q, f) = setup("zd(2)", &[vec![3, 0], vec![0, 3]]);
        let query = EventQuery {
            k: 3,
            m: Some(2),
            r_max: 3,
        };
        let one = event_profile(&q, &f, query, 8, &EngineConfig::with_workers(1)).unwrap();
        let four = event_profile(&q, &f, query, 8, &EngineConfig::with_workers(4)).unwrap();
        assert_eq!(one, four);
    }
}
