//! Integer row-echelon (Hermite normal form) reduction of translation sublattices.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A sublattice of Z^d in Hermite normal form.
///
/// Rows are in echelon form with strictly increasing pivot columns, positive
/// pivots, and entries above each pivot reduced into `[0, pivot)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Hnf {
    dimension: usize,
    rows: Vec<Vec<i64>>,
    pivots: Vec<usize>,
}

fn overflow() -> Error {
    Error::Overflow("reducing a sublattice basis".into())
}

fn floor_div(a: i128, b: i128) -> i128 {
    let q = a / b;
    if (a % b != 0) && ((a < 0) != (b < 0)) {
        q - 1
    } else {
        q
    }
}

impl Hnf {
    /// Reduces the lattice spanned by `generators` (each of length `dimension`).
    pub fn new(generators: &[Vec<i64>], dimension: usize) -> Result<Self> {
        if let Some(bad) = generators.iter().find(|g| g.len() != dimension) {
            return Err(Error::InvalidAction(format!(
                "generator {:?} has length {}, expected {dimension}",
                bad,
                bad.len()
            )));
        }
        let mut m: Vec<Vec<i128>> = generators
            .iter()
            .map(|g| g.iter().map(|&x| x as i128).collect())
            .collect();
        let mut pivots = Vec::new();
        let mut r = 0;
        for col in 0..dimension {
            if r == m.len() {
                break;
            }
            loop {
                // smallest nonzero |entry| at or below row r becomes the pivot candidate
                let best = (r..m.len())
                    .filter(|&i| m[i][col] != 0)
                    .min_by_key(|&i| m[i][col].abs());
                let Some(best) = best else { break };
                m.swap(r, best);
                let mut done = true;
                for i in r + 1..m.len() {
                    if m[i][col] != 0 {
                        let q = m[i][col] / m[r][col];
                        for c in 0..dimension {
                            m[i][c] = m[i][c]
                                .checked_sub(q.checked_mul(m[r][c]).ok_or_else(overflow)?)
                                .ok_or_else(overflow)?;
                        }
                        if m[i][col] != 0 {
                            done = false;
                        }
                    }
                }
                if done {
                    break;
                }
            }
            if m[r][col] == 0 {
                continue;
            }
            if m[r][col] < 0 {
                for x in m[r].iter_mut() {
                    *x = -*x;
                }
            }
            for i in 0..r {
                let q = floor_div(m[i][col], m[r][col]);
                if q != 0 {
                    for c in 0..dimension {
                        m[i][c] = m[i][c]
                            .checked_sub(q.checked_mul(m[r][c]).ok_or_else(overflow)?)
                            .ok_or_else(overflow)?;
                    }
                }
            }
            pivots.push(col);
            r += 1;
        }
        m.truncate(r);
        let rows = m
            .into_iter()
            .map(|row| {
                row.into_iter()
                    .map(|x| i64::try_from(x).map_err(|_| overflow()))
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Hnf {
            dimension,
            rows,
            pivots,
        })
    }

    pub fn dimension(&self) -> usize {
        self.dimension
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[Vec<i64>] {
        &self.rows
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn is_full_rank(&self) -> bool {
        self.rank() == self.dimension
    }

    /// Index [Z^d : L] for full-rank lattices, `None` otherwise.
    pub fn index(&self) -> Option<u64> {
        if !self.is_full_rank() {
            return None;
        }
        self.pivots
            .iter()
            .zip(&self.rows)
            .try_fold(1u64, |acc, (&p, row)| acc.checked_mul(row[p] as u64))
    }

    /// Canonical coset representative of `x + L`.
    pub fn reduce(&self, x: &[i64]) -> Result<Vec<i64>> {
        let mut out: Vec<i128> = x.iter().map(|&v| v as i128).collect();
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            let q = floor_div(out[p], row[p] as i128);
            if q != 0 {
                for (o, &b) in out.iter_mut().zip(row) {
                    *o -= q * b as i128;
                }
            }
        }
        out.into_iter()
            .map(|v| i64::try_from(v).map_err(|_| overflow()))
            .collect()
    }

    /// Whether `x` lies in the lattice.
    pub fn contains(&self, x: &[i64]) -> Result<bool> {
        Ok(self.reduce(x)?.iter().all(|&v| v == 0))
    }
}
