//! Partitioned depth-first search over self-avoiding walks of a [`LocalGraph`].

use rayon::prelude::*;

use super::local::LocalGraph;
use crate::error::{Error, Result};

/// Per-walk bookkeeping driven by [`run`].
pub(crate) trait Walker: Send {
    /// Called after `v` is appended at position `depth`. Returning `false`
    /// prunes the walk (and all its extensions); `leave` is still called.
    fn enter(&mut self, v: u32, depth: usize) -> bool;
    fn leave(&mut self, v: u32, depth: usize);
    /// Adds `weight` walks ending at the current vertex at length `depth`.
    fn record(&mut self, depth: usize, weight: u128) -> Result<()>;
    /// When true, the final step is counted without entering the endpoints.
    fn leaf_shortcut(&self) -> bool {
        false
    }
}

pub(crate) fn overflow() -> Error {
    Error::Overflow("counting walks (exceeds 128 bits)".into())
}

struct Dfs<'a, W: Walker> {
    g: &'a LocalGraph,
    visited: Vec<bool>,
    walker: W,
    n: usize,
}

impl<W: Walker> Dfs<'_, W> {
    fn go(&mut self, v: u32, depth: usize, weight: u128) -> Result<()> {
        self.walker.record(depth, weight)?;
        if depth == self.n {
            return Ok(());
        }
        let g = self.g;
        if depth + 1 == self.n && self.walker.leaf_shortcut() {
            let mut sum: u128 = 0;
            for &(w, mult) in g.out(v) {
                if !self.visited[w as usize] {
                    sum = sum.checked_add(mult as u128).ok_or_else(overflow)?;
                }
            }
            if sum > 0 {
                let total = sum.checked_mul(weight).ok_or_else(overflow)?;
                self.walker.record(self.n, total)?;
            }
            return Ok(());
        }
        for &(w, mult) in g.out(v) {
            if self.visited[w as usize] {
                continue;
            }
            let next = weight.checked_mul(mult as u128).ok_or_else(overflow)?;
            self.visited[w as usize] = true;
            if self.walker.enter(w, depth + 1) {
                self.go(w, depth + 1, next)?;
            }
            self.walker.leave(w, depth + 1);
            self.visited[w as usize] = false;
        }
        Ok(())
    }
}

/// Self-avoiding vertex paths of exactly `len` steps from `root` with their weights.
fn prefixes(g: &LocalGraph, root: u32, len: usize) -> Vec<(Vec<u32>, u128)> {
    let mut out = Vec::new();
    let mut path = vec![root];
    fn rec(g: &LocalGraph, path: &mut Vec<u32>, len: usize, w: u128, out: &mut Vec<(Vec<u32>, u128)>) {
        if path.len() == len + 1 {
            out.push((path.clone(), w));
            return;
        }
        let v = *path.last().unwrap();
        for &(x, mult) in g.out(v) {
            if !path.contains(&x) {
                path.push(x);
                rec(g, path, len, w.saturating_mul(mult as u128), out);
                path.pop();
            }
        }
    }
    rec(g, &mut path, len, 1, &mut out);
    out
}

/// Runs the search for walks of length at most `n` from vertex 0, splitting
/// the work by short prefixes across the current rayon pool. Each task owns
/// its walker; walkers are returned in prefix order so that reductions are
/// independent of scheduling.
pub(crate) fn run<W, F>(g: &LocalGraph, n: usize, workers: usize, make: F) -> Result<Vec<W>>
where
    W: Walker,
    F: Fn() -> W + Sync,
{
    let n = n.min(g.radius);
    let mut split = 0;
    if workers > 1 {
        split = 1;
        while split < n && split < 6 && prefixes(g, 0, split).len() < 16 * workers {
            split += 1;
        }
        if split >= n {
            split = 0;
        }
    }
    let head = {
        let mut dfs = Dfs {
            g,
            visited: vec![false; g.len()],
            walker: make(),
            n: if split == 0 { n } else { split - 1 },
        };
        dfs.visited[0] = true;
        if dfs.walker.enter(0, 0) {
            dfs.go(0, 0, 1)?;
        }
        dfs.walker.leave(0, 0);
        dfs.walker
    };
    if split == 0 {
        return Ok(vec![head]);
    }
    let tasks = prefixes(g, 0, split);
    let results: Vec<Result<W>> = tasks
        .par_iter()
        .map(|(path, weight)| {
            let mut dfs = Dfs {
                g,
                visited: vec![false; g.len()],
                walker: make(),
                n,
            };
            let mut alive = true;
            let mut entered = 0;
            for (d, &v) in path.iter().enumerate() {
                dfs.visited[v as usize] = true;
                entered += 1;
                if !dfs.walker.enter(v, d) {
                    alive = false;
                    break;
                }
            }
            if alive {
                let w = if *weight == u128::MAX {
                    return Err(overflow());
                } else {
                    *weight
                };
                dfs.go(path[split], split, w)?;
            }
            for d in (0..entered).rev() {
                dfs.walker.leave(path[d], d);
            }
            Ok(dfs.walker)
        })
        .collect();
    let mut out = vec![head];
    for r in results {
        out.push(r?);
    }
    Ok(out)
}
