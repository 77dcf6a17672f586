//! Directed quotient multigraphs `G / A0`.

mod action;
mod derived;
mod hnf;
mod walks;

use std::collections::{BTreeMap, HashMap, VecDeque};

use serde::{Deserialize, Serialize};

pub use action::SubgroupAction;
pub use derived::DerivedGraph;
pub use hnf::Hnf;
pub use walks::{DirectedStep, DirectedWalk};

use crate::error::{Error, Result};
use crate::graph::{GraphHandle, VertexKey};

/// Orbits farther than this from the base orbit are not tabulated for
/// quotients with infinitely many orbits.
pub const PROBE_RADIUS: usize = 8;

/// Hard cap on tabulated orbits for finite quotients.
pub const MAX_ORBITS: usize = 1 << 20;

/// Search radius for the shortest same-orbit walk.
pub const MAX_TYPE_RADIUS: usize = 64;

/// `multiplicity` directed edges towards orbit `target`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrbitEdge {
    pub target: VertexKey,
    pub multiplicity: u32,
}

/// Shortest SAW in G between two distinct vertices of a common orbit.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TypeReport {
    #[serde(rename = "type")]
    pub kind: u8,
    /// `ℓ̄`, also the length of the shortest cycle of the quotient.
    pub length: usize,
    /// Vertex sequence of the witness walk in G.
    pub witness: Vec<VertexKey>,
}

/// The directed quotient multigraph: one vertex per orbit and
/// `|∂v ∩ w̄|` directed edges from `v̄` to `w̄`.
#[derive(Clone, Debug)]
pub struct QuotientGraph {
    graph: GraphHandle,
    action: SubgroupAction,
    base: VertexKey,
    orbit_count: Option<usize>,
    table: BTreeMap<VertexKey, Vec<OrbitEdge>>,
}

pub fn build_quotient(g: &GraphHandle, a: &SubgroupAction) -> Result<QuotientGraph> {
    QuotientGraph::new(g, a)
}

impl QuotientGraph {
    pub fn new(g: &GraphHandle, a: &SubgroupAction) -> Result<Self> {
        a.check_on(g)?;
        let base = a.orbit_of(g, &g.origin())?;
        let mut q = QuotientGraph {
            graph: g.clone(),
            action: a.clone(),
            base: base.clone(),
            orbit_count: a.orbit_count(g),
            table: BTreeMap::new(),
        };
        let mut queue = VecDeque::from([(base, 0usize)]);
        let mut table = BTreeMap::new();
        while let Some((v, d)) = queue.pop_front() {
            if table.contains_key(&v) {
                continue;
            }
            let edges = q.edges_from(&a.representative(g, &v)?)?;
            let total: u32 = edges.iter().map(|e| e.multiplicity).sum();
            debug_assert_eq!(total, g.degree());
            if q.orbit_count.is_some() || d < PROBE_RADIUS {
                for e in &edges {
                    if !table.contains_key(&e.target) {
                        queue.push_back((e.target.clone(), d + 1));
                    }
                }
            }
            table.insert(v, edges);
            if table.len() > MAX_ORBITS {
                return Err(Error::InfiniteQuotient(format!(
                    "more than {MAX_ORBITS} orbits"
                )));
            }
        }
        if let Some(n) = q.orbit_count {
            if n != table.len() {
                return Err(Error::InvalidAction(format!(
                    "expected {n} orbits, reached {}",
                    table.len()
                )));
            }
        }
        q.table = table;
        Ok(q)
    }

    /// Grouped out-edges of the orbit of the G-vertex `v`, computed from `v`.
    fn edges_from(&self, v: &VertexKey) -> Result<Vec<OrbitEdge>> {
        let mut grouped: BTreeMap<VertexKey, u32> = BTreeMap::new();
        for nb in self.graph.neighbors(v)? {
            *grouped.entry(self.orbit_of(&nb.target)?).or_default() += nb.multiplicity;
        }
        Ok(grouped
            .into_iter()
            .map(|(target, multiplicity)| OrbitEdge {
                target,
                multiplicity,
            })
            .collect())
    }

    pub fn graph(&self) -> &GraphHandle {
        &self.graph
    }

    pub fn action(&self) -> &SubgroupAction {
        &self.action
    }

    pub fn id(&self) -> String {
        format!("{}/{}", self.graph.id(), self.action)
    }

    /// Orbit of the graph's origin.
    pub fn base(&self) -> &VertexKey {
        &self.base
    }

    /// Common out-degree of the orbit vertices (equals the degree of G).
    pub fn degree(&self) -> u32 {
        self.graph.degree()
    }

    pub fn orbit_count(&self) -> Option<usize> {
        self.orbit_count
    }

    pub fn is_finite(&self) -> bool {
        self.orbit_count.is_some()
    }

    /// Tabulated orbits: all of them for finite quotients, otherwise those
    /// within [`PROBE_RADIUS`] of the base orbit.
    pub fn orbits(&self) -> Vec<VertexKey> {
        self.table.keys().cloned().collect()
    }

    pub fn orbit_of(&self, v: &VertexKey) -> Result<VertexKey> {
        self.graph.validate_key(v)?;
        self.action.orbit_of(&self.graph, v)
    }

    /// Canonical G-vertex of an orbit.
    pub fn representative(&self, orbit: &VertexKey) -> Result<VertexKey> {
        let rep = self.action.representative(&self.graph, orbit)?;
        if &self.orbit_of(&rep)? != orbit {
            return Err(Error::InvalidVertex {
                key: orbit.to_string(),
                reason: "not a canonical orbit key".into(),
            });
        }
        Ok(rep)
    }

    /// Directed out-edges of an orbit vertex, loops included.
    pub fn out_edges(&self, orbit: &VertexKey) -> Result<Vec<OrbitEdge>> {
        match self.table.get(orbit) {
            Some(edges) => Ok(edges.clone()),
            None => self.edges_from(&self.representative(orbit)?),
        }
    }

    /// `|∂v ∩ w̄|` for any `v ∈ v̄`.
    pub fn multiplicity(&self, from: &VertexKey, to: &VertexKey) -> Result<u32> {
        Ok(self
            .out_edges(from)?
            .iter()
            .find(|e| &e.target == to)
            .map_or(0, |e| e.multiplicity))
    }

    /// Checks that every G-vertex within `radius` of the base representative
    /// sees the tabulated multiplicities of its orbit.
    pub fn check_representative_independence(&self, radius: usize) -> Result<bool> {
        let start = self.representative(&self.base)?;
        for v in self.graph.ball(&start, radius)? {
            if self.edges_from(&v)? != self.out_edges(&self.orbit_of(&v)?)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Whether `|∂v ∩ w̄| = |∂w ∩ v̄|` for all tabulated orbit pairs.
    ///
    /// For infinite quotients only pairs inside the probe window are compared.
    pub fn check_symmetry(&self) -> bool {
        self.table.iter().all(|(v, edges)| {
            edges.iter().all(|e| match self.table.get(&e.target) {
                Some(back) => {
                    let reverse = back.iter().find(|b| &b.target == v).map_or(0, |b| b.multiplicity);
                    reverse == e.multiplicity
                }
                None => true,
            })
        })
    }

    /// Type of the action, witnessed from the base orbit representative.
    pub fn classify_type(&self) -> Result<TypeReport> {
        self.classify_type_from(&self.representative(&self.base)?)
    }

    /// Type of the action, witnessed by a shortest walk from `v`.
    pub fn classify_type_from(&self, v: &VertexKey) -> Result<TypeReport> {
        let home = self.orbit_of(v)?;
        let mut parent: HashMap<VertexKey, VertexKey> = HashMap::new();
        let mut queue = VecDeque::from([(v.clone(), 0usize)]);
        parent.insert(v.clone(), v.clone());
        while let Some((u, d)) = queue.pop_front() {
            if d >= MAX_TYPE_RADIUS {
                break;
            }
            for nb in self.graph.neighbors(&u)? {
                let w = nb.target;
                if parent.contains_key(&w) {
                    continue;
                }
                parent.insert(w.clone(), u.clone());
                if self.orbit_of(&w)? == home {
                    let mut witness = vec![w.clone()];
                    let mut x = w;
                    while &x != v {
                        x = parent[&x].clone();
                        witness.push(x.clone());
                    }
                    witness.reverse();
                    let length = witness.len() - 1;
                    return Ok(TypeReport {
                        kind: length.min(3) as u8,
                        length,
                        witness,
                    });
                }
                queue.push_back((w, d + 1));
            }
        }
        // a loop in the quotient means an adjacent orbit mate, found above
        Err(Error::InvalidAction(format!(
            "no orbit mate of {v} within distance {MAX_TYPE_RADIUS}"
        )))
    }

    /// The undirected graph underlying the quotient: simple (`Ḡ₀`) or with
    /// multiplicities and loops retained (requires a symmetric action).
    pub fn derive_undirected(&self, keep_multiplicity: bool) -> Result<GraphHandle> {
        DerivedGraph::handle(self.clone(), keep_multiplicity)
    }

    /// Serializable summary over the tabulated orbits.
    pub fn summary(&self) -> Result<QuotientSummary> {
        let orbits = self.orbits();
        let index: HashMap<&VertexKey, usize> =
            orbits.iter().enumerate().map(|(i, o)| (o, i)).collect();
        let mut matrix = vec![vec![0u32; orbits.len()]; orbits.len()];
        let mut loops = vec![0u32; orbits.len()];
        for (i, o) in orbits.iter().enumerate() {
            for e in &self.table[o] {
                if &e.target == o {
                    loops[i] = e.multiplicity;
                } else if let Some(&j) = index.get(&e.target) {
                    matrix[i][j] = e.multiplicity;
                }
            }
        }
        Ok(QuotientSummary {
            graph: self.graph.id().to_string(),
            action: self.action.to_string(),
            degree: self.degree(),
            orbit_count: self.orbit_count,
            truncated: !self.is_finite(),
            orbits: orbits.iter().map(|o| o.to_string()).collect(),
            matrix,
            loops,
            symmetric: self.check_symmetry(),
            type_report: self.classify_type()?,
        })
    }

    #[cfg(test)]
    pub(crate) fn table_mut(&mut self) -> &mut BTreeMap<VertexKey, Vec<OrbitEdge>> {
        &mut self.table
    }
}

/// Quotient as reported by the CLI: orbit list, directed multiplicity matrix
/// (off-diagonal), loop vector and type report.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct QuotientSummary {
    pub graph: String,
    pub action: String,
    pub degree: u32,
    pub orbit_count: Option<usize>,
    /// True when only a probe window of an infinite quotient is listed.
    pub truncated: bool,
    pub orbits: Vec<String>,
    pub matrix: Vec<Vec<u32>>,
    pub loops: Vec<u32>,
    pub symmetric: bool,
    pub type_report: TypeReport,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::catalog;

    fn zk(k: i64) -> QuotientGraph {
        let g = catalog("zd(1)").unwrap();
        build_quotient(&g, &SubgroupAction::sublattice(&[vec![k]]).unwrap()).unwrap()
    }

    #[test]
    fn z_mod_two_and_one() {
        let q = zk(2);
        assert_eq!(q.orbit_count(), Some(2));
        let s = q.summary().unwrap();
        assert_eq!(s.matrix, vec![vec![0, 2], vec![2, 0]]);
        assert_eq!(s.loops, vec![0, 0]);

        let q = zk(1);
        let s = q.summary().unwrap();
        assert_eq!(s.orbits.len(), 1);
        assert_eq!(s.loops, vec![2]);
        assert_eq!(s.type_report.kind, 1);
    }

    #[test]
    fn types_of_z_quotients() {
        for (k, t) in [(1, 1), (2, 2), (3, 3), (5, 3)] {
            let r = zk(k).classify_type().unwrap();
            assert_eq!((r.kind, r.length), (t, k as usize));
            assert_eq!(r.witness.len(), k as usize + 1);
        }
    }

    #[test]
    fn tree_with_end_levels() {
        let g = catalog("tree-with-end(3)").unwrap();
        let q = build_quotient(&g, &SubgroupAction::catalog("child-swap").unwrap()).unwrap();
        assert_eq!(q.orbit_count(), None);
        let level = |h: i64| VertexKey::lattice(0, vec![h]);
        assert_eq!(q.multiplicity(&level(0), &level(1)).unwrap(), 2);
        assert_eq!(q.multiplicity(&level(1), &level(0)).unwrap(), 1);
        assert_eq!(q.multiplicity(&level(40), &level(41)).unwrap(), 2);
        assert!(!q.check_symmetry());
        assert!(q.check_representative_independence(4).unwrap());
        assert_eq!(q.classify_type().unwrap().length, 2);
    }

    #[test]
    fn corrupted_table_is_detected() {
        let g = catalog("zd(2)").unwrap();
        let a = SubgroupAction::sublattice(&[vec![2, 0], vec![0, 2]]).unwrap();
        let mut q = build_quotient(&g, &a).unwrap();
        assert!(q.check_representative_independence(4).unwrap());
        let base = q.base().clone();
        q.table_mut().get_mut(&base).unwrap()[0].multiplicity += 1;
        assert!(!q.check_representative_independence(4).unwrap());
    }

    #[test]
    fn action_must_fit_graph() {
        let g = catalog("zd(2)").unwrap();
        let a = SubgroupAction::sublattice(&[vec![3]]).unwrap();
        assert!(matches!(build_quotient(&g, &a), Err(Error::InvalidAction(_))));
        let t = catalog("tree(3)").unwrap();
        let swap = SubgroupAction::catalog("child-swap").unwrap();
        assert!(matches!(build_quotient(&t, &swap), Err(Error::InvalidAction(_))));
    }

    #[test]
    fn type_is_the_same_from_every_orbit() {
        let g = catalog("square-octagon").unwrap();
        let a = SubgroupAction::sublattice(&[vec![2, 0], vec![0, 2]]).unwrap();
        let q = build_quotient(&g, &a).unwrap();
        let lengths: Vec<usize> = q
            .orbits()
            .iter()
            .map(|o| q.classify_type_from(&q.representative(o).unwrap()).unwrap().length)
            .collect();
        assert!(lengths.windows(2).all(|w| w[0] == w[1]), "{lengths:?}");
    }
}
