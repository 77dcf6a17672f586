//! Certified lower bounds `b_n ≤ μ(G)`.

use num_bigint::BigUint;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::engine::{nth_root, EngineConfig};
use crate::error::{Error, Result};
use crate::graph::GraphHandle;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Provenance {
    Bridge,
    Degree,
    Constant,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BoundEntry {
    pub n: usize,
    pub value: f64,
    pub provenance: Provenance,
}

/// `b_1, …, b_N`, non-decreasing once regularized.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LowerBoundSequence {
    pub graph: String,
    pub entries: Vec<BoundEntry>,
}

impl LowerBoundSequence {
    pub fn constant(graph: impl Into<String>, value: f64, n_max: usize, provenance: Provenance) -> Self {
        LowerBoundSequence {
            graph: graph.into(),
            entries: (1..=n_max)
                .map(|n| BoundEntry {
                    n,
                    value,
                    provenance,
                })
                .collect(),
        }
    }

    /// `b_n` for `1 ≤ n ≤ max_n()`.
    pub fn get(&self, n: usize) -> Option<f64> {
        n.checked_sub(1)
            .and_then(|i| self.entries.get(i))
            .map(|e| e.value)
    }

    pub fn max_n(&self) -> usize {
        self.entries.len()
    }

    pub fn values(&self) -> Vec<f64> {
        self.entries.iter().map(|e| e.value).collect()
    }

    /// Running maximum; an entry raised to an earlier value inherits that
    /// entry's provenance.
    pub fn regularized(mut self) -> Self {
        for i in 1..self.entries.len() {
            if self.entries[i].value < self.entries[i - 1].value {
                self.entries[i].value = self.entries[i - 1].value;
                self.entries[i].provenance = self.entries[i - 1].provenance;
            }
        }
        self
    }

    pub fn is_non_decreasing(&self) -> bool {
        self.entries.windows(2).all(|w| w[0].value <= w[1].value)
    }
}

/// Running maximum of a sequence.
pub fn monotone_regularize(values: &[f64]) -> Vec<f64> {
    let mut best = f64::NEG_INFINITY;
    values
        .iter()
        .map(|&v| {
            best = best.max(v);
            best
        })
        .collect()
}

/// `√(Δ−1)`, a lower bound on μ for infinite, connected, simple,
/// vertex-transitive graphs of degree Δ.
pub fn degree_bound(g: &GraphHandle) -> Result<f64> {
    if !g.is_simple() {
        return Err(Error::BoundRefused(format!(
            "{} has loops or parallel edges",
            g.id()
        )));
    }
    degree_bound_value(g.degree())
}

pub fn degree_bound_value(degree: u32) -> Result<f64> {
    if degree < 2 {
        return Err(Error::BoundRefused(format!("degree {degree} is below 2")));
    }
    Ok(((degree - 1) as f64).sqrt())
}

/// Number `β_n` of `n`-step bridges from the origin of Z^d for `n ≤ n_max`
/// (`β_0 = 1`): SAWs whose first step increases the first coordinate and
/// whose later vertices satisfy `x_1(w_0) < x_1(w_i) ≤ x_1(w_n)`.
pub fn bridge_counts(d: usize, n_max: usize, config: &EngineConfig) -> Result<Vec<BigUint>> {
    if d == 0 {
        return Err(Error::Parameter("dimension must be at least 1".into()));
    }
    let side = 2 * n_max + 1;
    let cells = side
        .checked_pow(d as u32)
        .filter(|&c| c <= config.max_vertices.max(1 << 16))
        .ok_or_else(|| Error::Parameter(format!("bridge box for d = {d}, n = {n_max} is too large")))?;
    let mut counts = vec![BigUint::from(1u32)];
    if n_max == 0 {
        return Ok(counts);
    }
    let strides: Vec<usize> = (0..d).map(|i| side.pow(i as u32)).collect();
    let origin: usize = strides.iter().map(|s| s * n_max).sum();
    let first = origin + strides[0];
    // second-step branches run in parallel
    let moves: Vec<(usize, bool)> = (0..d).flat_map(|i| [(i, true), (i, false)]).collect();
    let search = Bridge {
        d,
        n: n_max,
        strides: &strides,
    };
    let branches: Vec<Option<(usize, bool)>> = if n_max >= 2 {
        moves.iter().map(|&m| Some(m)).collect()
    } else {
        vec![None]
    };
    let parts: Vec<Vec<u128>> = config.install(|| {
        Ok(branches
            .par_iter()
            .map(|branch| {
                let mut visited = vec![false; cells];
                let mut tally = vec![0u128; n_max + 1];
                visited[origin] = true;
                visited[first] = true;
                match branch {
                    None => tally[1] += 1,
                    Some((axis, up)) => {
                        if *axis == 0 && !*up {
                            // back to x1 = 0 is not allowed
                            return tally;
                        }
                        let next = if *up { first + strides[*axis] } else { first - strides[*axis] };
                        if visited[next] {
                            return tally;
                        }
                        let x1 = if *axis == 0 { 2 } else { 1 };
                        visited[next] = true;
                        search.go(&mut visited, &mut tally, next, 2, x1, x1);
                    }
                }
                tally
            })
            .collect())
    })?;
    let mut total = vec![0u128; n_max + 1];
    for p in parts {
        for (t, x) in total.iter_mut().zip(p) {
            *t += x;
        }
    }
    if n_max >= 2 {
        total[1] = 1;
    }
    counts.extend(total.into_iter().skip(1).map(BigUint::from));
    Ok(counts)
}

struct Bridge<'a> {
    d: usize,
    n: usize,
    strides: &'a [usize],
}

impl Bridge<'_> {
    /// At `v` after `depth` steps with first coordinate `x1` and running
    /// maximum `top` (both relative to the origin).
    fn go(&self, visited: &mut [bool], tally: &mut [u128], v: usize, depth: usize, x1: i64, top: i64) {
        if x1 == top {
            tally[depth] += 1;
        }
        if depth == self.n {
            return;
        }
        for axis in 0..self.d {
            for up in [true, false] {
                let (w, y1) = if up {
                    (v + self.strides[axis], x1 + (axis == 0) as i64)
                } else {
                    (v - self.strides[axis], x1 - (axis == 0) as i64)
                };
                if y1 <= 0 || visited[w] {
                    continue;
                }
                visited[w] = true;
                self.go(visited, tally, w, depth + 1, y1, top.max(y1));
                visited[w] = false;
            }
        }
    }
}

/// `b_n = β_n^{1/n}` on Z^d, regularized.
pub fn bridge_bounds(d: usize, n_max: usize, config: &EngineConfig) -> Result<LowerBoundSequence> {
    let beta = bridge_counts(d, n_max, config)?;
    Ok(LowerBoundSequence {
        graph: format!("zd({d})"),
        entries: (1..=n_max)
            .map(|n| BoundEntry {
                n,
                value: nth_root(&beta[n], n),
                provenance: Provenance::Bridge,
            })
            .collect(),
    }
    .regularized())
}

/// Dimension `d` when `g` is the catalog lattice Z^d.
pub fn zd_dimension(g: &GraphHandle) -> Option<usize> {
    g.id()
        .strip_prefix("zd(")
        .and_then(|s| s.strip_suffix(')'))
        .and_then(|d| d.parse().ok())
        .filter(|_| g.as_lattice().is_some())
}

/// Bridge bounds on Z^d, the degree bound on other simple graphs.
pub fn auto_bounds(g: &GraphHandle, n_max: usize, config: &EngineConfig) -> Result<LowerBoundSequence> {
    match zd_dimension(g) {
        Some(d) => bridge_bounds(d, n_max, config),
        None => Ok(LowerBoundSequence::constant(
            g.id(),
            degree_bound(g)?,
            n_max,
            Provenance::Degree,
        )),
    }
}
