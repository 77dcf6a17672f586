use std::collections::{BTreeMap, HashSet, VecDeque};

use serde::{Deserialize, Serialize};

use super::{Neighbor, VertexKey};
use crate::error::{Error, Result};
use crate::quotient::Hnf;

/// `parallel` undirected edges between `(from, x)` and `(to, x + offset)` for every `x`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LatticeEdge {
    pub from: u32,
    pub to: u32,
    pub offset: Vec<i64>,
    pub parallel: u32,
}

impl LatticeEdge {
    pub fn new(from: u32, to: u32, offset: Vec<i64>, parallel: u32) -> Self {
        LatticeEdge {
            from,
            to,
            offset,
            parallel,
        }
    }
}

/// Raw description of a periodic graph: `cells` vertices per fundamental
/// domain of Z^`dimension`, joined by translation-invariant edge families.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PeriodicLatticeSpec {
    pub dimension: usize,
    pub cells: u32,
    pub edges: Vec<LatticeEdge>,
}

/// Validated periodic graph with precomputed per-cell neighbor templates.
#[derive(Clone, Debug)]
pub struct PeriodicLattice {
    spec: PeriodicLatticeSpec,
    // per cell: (target cell, offset delta, multiplicity), sorted by (cell, delta)
    templates: Vec<Vec<(u32, Vec<i64>, u32)>>,
    degree: u32,
}

const TRANSITIVITY_RADIUS: usize = 3;

impl PeriodicLattice {
    pub fn new(spec: PeriodicLatticeSpec) -> Result<Self> {
        let d = spec.dimension;
        if d == 0 {
            return Err(Error::InvalidSpec("dimension must be at least 1".into()));
        }
        if spec.cells == 0 {
            return Err(Error::InvalidSpec("at least one cell is required".into()));
        }
        let mut merged: Vec<BTreeMap<(u32, Vec<i64>), u32>> = vec![BTreeMap::new(); spec.cells as usize];
        for e in &spec.edges {
            if e.from >= spec.cells || e.to >= spec.cells {
                return Err(Error::InvalidSpec(format!(
                    "edge {}->{} references a cell outside 0..{}",
                    e.from, e.to, spec.cells
                )));
            }
            if e.offset.len() != d {
                return Err(Error::InvalidSpec(format!(
                    "edge offset {:?} does not have dimension {d}",
                    e.offset
                )));
            }
            if e.parallel == 0 {
                return Err(Error::InvalidSpec("parallel_count must be positive".into()));
            }
            if e.from == e.to && e.offset.iter().all(|&x| x == 0) {
                return Err(Error::Loop(format!("cell {}", e.from)));
            }
            let neg: Vec<i64> = e
                .offset
                .iter()
                .map(|&x| x.checked_neg().ok_or_else(|| Error::Overflow("negating an offset".into())))
                .collect::<Result<_>>()?;
            *merged[e.from as usize]
                .entry((e.to, e.offset.clone()))
                .or_insert(0) += e.parallel;
            *merged[e.to as usize].entry((e.from, neg)).or_insert(0) += e.parallel;
        }
        let templates: Vec<Vec<(u32, Vec<i64>, u32)>> = merged
            .into_iter()
            .map(|m| m.into_iter().map(|((c, o), p)| (c, o, p)).collect())
            .collect();
        let degrees: Vec<u32> = templates
            .iter()
            .map(|t| t.iter().map(|(_, _, p)| p).sum())
            .collect();
        let degree = degrees[0];
        if degree == 0 {
            return Err(Error::InvalidSpec("vertices have no edges".into()));
        }
        if degrees.iter().any(|&x| x != degree) {
            return Err(Error::NotTransitive(format!("cell degrees differ: {degrees:?}")));
        }
        let lattice = PeriodicLattice {
            spec,
            templates,
            degree,
        };
        lattice.check_connected()?;
        lattice.check_ball_profiles()?;
        Ok(lattice)
    }

    pub fn spec(&self) -> &PeriodicLatticeSpec {
        &self.spec
    }

    pub fn dimension(&self) -> usize {
        self.spec.dimension
    }

    pub fn cells(&self) -> u32 {
        self.spec.cells
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn origin(&self) -> VertexKey {
        VertexKey::lattice(0, vec![0; self.spec.dimension])
    }

    pub fn is_simple(&self) -> bool {
        self.templates
            .iter()
            .all(|t| t.iter().all(|&(_, _, p)| p == 1))
    }

    pub fn validate_key(&self, v: &VertexKey) -> Result<()> {
        match v {
            VertexKey::Lattice { cell, offset }
                if *cell < self.spec.cells && offset.len() == self.spec.dimension =>
            {
                Ok(())
            }
            _ => Err(Error::InvalidVertex {
                key: v.to_string(),
                reason: format!(
                    "expected a lattice key with cell < {} and {} coordinates",
                    self.spec.cells, self.spec.dimension
                ),
            }),
        }
    }

    pub fn neighbors(&self, v: &VertexKey) -> Result<Vec<Neighbor>> {
        self.validate_key(v)?;
        let VertexKey::Lattice { cell, offset } = v else {
            unreachable!()
        };
        self.templates[*cell as usize]
            .iter()
            .enumerate()
            .map(|(label, (c, delta, mult))| {
                Ok(Neighbor {
                    target: VertexKey::lattice(*c, add_offsets(offset, delta)?),
                    label: label as u32,
                    multiplicity: *mult,
                })
            })
            .collect()
    }

    /// Translates a vertex by `t`; the cell is unchanged.
    pub fn translate(&self, v: &VertexKey, t: &[i64]) -> Result<VertexKey> {
        self.validate_key(v)?;
        let VertexKey::Lattice { cell, offset } = v else {
            unreachable!()
        };
        Ok(VertexKey::lattice(*cell, add_offsets(offset, t)?))
    }

    pub(crate) fn with_chord(&self, u: &VertexKey, w: &VertexKey) -> Result<Self> {
        let (
            VertexKey::Lattice {
                cell: cu,
                offset: ou,
            },
            VertexKey::Lattice {
                cell: cw,
                offset: ow,
            },
        ) = (u, w)
        else {
            unreachable!("keys validated by caller")
        };
        let delta = ow
            .iter()
            .zip(ou)
            .map(|(a, b)| a.checked_sub(*b).ok_or_else(|| Error::Overflow("chord offset".into())))
            .collect::<Result<Vec<_>>>()?;
        let mut spec = self.spec.clone();
        spec.edges.push(LatticeEdge::new(*cu, *cw, delta, 1));
        PeriodicLattice::new(spec)
    }

    fn ball_size(&self, start: &VertexKey, radius: usize) -> Result<Vec<usize>> {
        let mut seen = HashSet::new();
        seen.insert(start.clone());
        let mut frontier = vec![start.clone()];
        let mut sizes = vec![1];
        for _ in 0..radius {
            let mut next = Vec::new();
            for v in &frontier {
                for nb in self.neighbors(v)? {
                    if seen.insert(nb.target.clone()) {
                        next.push(nb.target);
                    }
                }
            }
            sizes.push(seen.len());
            frontier = next;
        }
        Ok(sizes)
    }

    fn check_ball_profiles(&self) -> Result<()> {
        let d = self.spec.dimension;
        let reference = self.ball_size(&self.origin(), TRANSITIVITY_RADIUS)?;
        for c in 1..self.spec.cells {
            let sizes = self.ball_size(&VertexKey::lattice(c, vec![0; d]), TRANSITIVITY_RADIUS)?;
            if sizes != reference {
                return Err(Error::NotTransitive(format!(
                    "ball sizes from cell {c} are {sizes:?}, from cell 0 {reference:?}"
                )));
            }
        }
        Ok(())
    }

    /// Every cell must be reachable and the cell-0 translates reached must generate Z^d.
    fn check_connected(&self) -> Result<()> {
        let d = self.spec.dimension;
        let radius = 4 * self.spec.cells as usize + 4;
        let mut seen = HashSet::new();
        let origin = self.origin();
        seen.insert(origin.clone());
        let mut queue = VecDeque::from([(origin, 0usize)]);
        let mut cells_seen = vec![false; self.spec.cells as usize];
        let mut translates = Vec::new();
        while let Some((v, dist)) = queue.pop_front() {
            if let VertexKey::Lattice { cell, offset } = &v {
                cells_seen[*cell as usize] = true;
                if *cell == 0 && offset.iter().any(|&x| x != 0) {
                    translates.push(offset.clone());
                }
            }
            if dist == radius {
                continue;
            }
            for nb in self.neighbors(&v)? {
                if seen.insert(nb.target.clone()) {
                    queue.push_back((nb.target, dist + 1));
                }
            }
        }
        if let Some(c) = cells_seen.iter().position(|&s| !s) {
            return Err(Error::InvalidSpec(format!("cell {c} is not connected to cell 0")));
        }
        let hnf = Hnf::new(&translates, d)?;
        if hnf.index() != Some(1) {
            return Err(Error::InvalidSpec(
                "graph is disconnected: translations reached from the origin do not generate Z^d"
                    .into(),
            ));
        }
        Ok(())
    }
}

fn add_offsets(a: &[i64], b: &[i64]) -> Result<Vec<i64>> {
    a.iter()
        .zip(b)
        .map(|(x, y)| {
            x.checked_add(*y)
                .ok_or_else(|| Error::Overflow("translating a lattice offset".into()))
        })
        .collect()
}
