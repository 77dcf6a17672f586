use serde::{Deserialize, Serialize};

use super::QuotientGraph;
use crate::error::{Error, Result};
use crate::graph::{Step, VertexKey, Walk};

/// One directed edge of a quotient walk: the target orbit and the label of
/// the edge among the `|∂v ∩ w̄|` parallel edges towards it.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct DirectedStep {
    pub to: VertexKey,
    pub label: u32,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct DirectedWalk {
    pub start: VertexKey,
    pub steps: Vec<DirectedStep>,
}

impl DirectedWalk {
    pub fn empty(start: VertexKey) -> Self {
        DirectedWalk {
            start,
            steps: Vec::new(),
        }
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    pub fn vertices(&self) -> impl Iterator<Item = &VertexKey> {
        std::iter::once(&self.start).chain(self.steps.iter().map(|s| &s.to))
    }

    pub fn is_self_avoiding(&self) -> bool {
        let mut seen = std::collections::HashSet::new();
        self.vertices().all(|v| seen.insert(v))
    }
}

impl QuotientGraph {
    /// The unique walk from `base` whose projection is `dwalk`.
    ///
    /// At every vertex the parallel edges into a target orbit are numbered in
    /// neighbor order, so the label of a quotient edge picks one concrete edge.
    pub fn lift(&self, base: &VertexKey, dwalk: &DirectedWalk) -> Result<Walk> {
        if self.orbit_of(base)? != dwalk.start {
            return Err(Error::InvalidVertex {
                key: base.to_string(),
                reason: format!("not in orbit {}", dwalk.start),
            });
        }
        let mut x = base.clone();
        let mut steps = Vec::with_capacity(dwalk.len());
        for step in &dwalk.steps {
            let mut seen = 0u32;
            let mut chosen = None;
            for nb in self.graph.neighbors(&x)? {
                if self.orbit_of(&nb.target)? != step.to {
                    continue;
                }
                if chosen.is_none() && step.label < seen + nb.multiplicity {
                    chosen = Some(Step {
                        to: nb.target.clone(),
                        parallel: step.label - seen,
                    });
                }
                seen += nb.multiplicity;
            }
            let next = chosen.ok_or_else(|| Error::InvalidLabel {
                label: step.label,
                available: seen,
                at: format!("{x} -> {}", step.to),
            })?;
            x = next.to.clone();
            steps.push(next);
        }
        Ok(Walk {
            start: base.clone(),
            steps,
        })
    }

    /// Image of a walk in G under the orbit map, with edge labels conserved.
    pub fn project(&self, walk: &Walk) -> Result<DirectedWalk> {
        let start = self.orbit_of(&walk.start)?;
        let mut x = walk.start.clone();
        let mut steps = Vec::with_capacity(walk.len());
        for step in &walk.steps {
            let target_orbit = self.orbit_of(&step.to)?;
            let mut label = None;
            let mut seen = 0u32;
            for nb in self.graph.neighbors(&x)? {
                if self.orbit_of(&nb.target)? != target_orbit {
                    continue;
                }
                if nb.target == step.to {
                    if step.parallel >= nb.multiplicity {
                        return Err(Error::InvalidLabel {
                            label: step.parallel,
                            available: nb.multiplicity,
                            at: format!("{x} -> {}", step.to),
                        });
                    }
                    label = Some(seen + step.parallel);
                    break;
                }
                seen += nb.multiplicity;
            }
            let label = label.ok_or_else(|| Error::InvalidVertex {
                key: step.to.to_string(),
                reason: format!("not adjacent to {x}"),
            })?;
            steps.push(DirectedStep {
                to: target_orbit,
                label,
            });
            x = step.to.clone();
        }
        Ok(DirectedWalk { start, steps })
    }
}
