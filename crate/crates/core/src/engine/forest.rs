//! SAW counts on Cayley graphs of free products, where SAWs are exactly the
//! non-backtracking walks and so correspond to reduced words.

use num_bigint::BigUint;
use num_traits::Zero;

use super::WalkCounts;
use crate::error::{Error, Result};
use crate::graph::{GraphHandle, VertexKey};

pub(super) fn count(g: &GraphHandle, v0: &VertexKey, n_max: usize) -> Result<WalkCounts> {
    let c = g
        .as_cayley()
        .filter(|c| c.is_free())
        .ok_or_else(|| Error::Parameter(format!("{} is not a free presentation", g.id())))?;
    let inverses = &c.presentation().inverses;
    let k = inverses.len();
    // ending[s]: reduced words of the current length whose last letter is s
    let mut ending = vec![BigUint::from(1u32); k];
    let mut counts = vec![BigUint::from(1u32)];
    if n_max >= 1 {
        counts.push(BigUint::from(k));
    }
    for _ in 2..=n_max {
        let total: BigUint = ending.iter().sum();
        let next: Vec<BigUint> = (0..k)
            .map(|t| &total - &ending[inverses[t] as usize])
            .collect();
        ending = next;
        counts.push(ending.iter().fold(BigUint::zero(), |a, b| a + b));
    }
    Ok(WalkCounts {
        graph: g.id().to_string(),
        start: v0.clone(),
        directed: false,
        counts,
        requested: n_max,
        truncated: false,
    })
}
