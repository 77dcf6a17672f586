//! Locally finite vertex-transitive graphs behind a uniform neighbor interface.
//!
//! Every graph is addressed through a [`GraphHandle`]: an immutable, cheaply
//! clonable handle whose [`GraphHandle::neighbors`] returns a deterministic,
//! label-stable list of adjacent vertices with edge multiplicities.

mod cayley;
mod catalog;
mod iso;
mod key;
mod lattice;
mod spec_file;

use std::collections::{BTreeSet, HashSet, VecDeque};
use std::sync::Arc;

pub use cayley::{CayleyGraph, GroupPresentation};
pub use catalog::{catalog, CATALOG_NAMES};
pub use iso::balls_isomorphic;
pub use key::VertexKey;
pub use lattice::{LatticeEdge, PeriodicLattice, PeriodicLatticeSpec};
pub use spec_file::{parse_graph_spec, GraphSpecFile};

use crate::error::{Error, Result};
use crate::quotient::DerivedGraph;

/// One entry of a neighbor list.
///
/// `label` is the position of the entry in the list; the `multiplicity`
/// parallel edges towards `target` carry parallel indices `0..multiplicity`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Neighbor {
    pub target: VertexKey,
    pub label: u32,
    pub multiplicity: u32,
}

/// A single step of a walk: the vertex moved to and which parallel edge was used.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Step {
    pub to: VertexKey,
    pub parallel: u32,
}

/// A walk on a graph, given by its start vertex and its steps.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Walk {
    pub start: VertexKey,
    pub steps: Vec<Step>,
}

impl Walk {
    pub fn empty(start: VertexKey) -> Self {
        Walk {
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

    /// Vertices visited in order, starting vertex included.
    pub fn vertices(&self) -> impl Iterator<Item = &VertexKey> {
        std::iter::once(&self.start).chain(self.steps.iter().map(|s| &s.to))
    }

    pub fn is_self_avoiding(&self) -> bool {
        let mut seen = HashSet::with_capacity(self.steps.len() + 1);
        self.vertices().all(|v| seen.insert(v))
    }
}

pub(crate) enum GraphKind {
    Lattice(PeriodicLattice),
    Cayley(CayleyGraph),
    Derived(DerivedGraph),
}

struct GraphInner {
    id: String,
    degree: u32,
    kind: GraphKind,
}

/// Immutable handle to a locally finite graph.
#[derive(Clone)]
pub struct GraphHandle {
    inner: Arc<GraphInner>,
}

impl std::fmt::Debug for GraphHandle {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("GraphHandle")
            .field("id", &self.inner.id)
            .field("degree", &self.inner.degree)
            .finish()
    }
}

impl GraphHandle {
    pub(crate) fn new(id: impl Into<String>, degree: u32, kind: GraphKind) -> Self {
        GraphHandle {
            inner: Arc::new(GraphInner {
                id: id.into(),
                degree,
                kind,
            }),
        }
    }

    pub fn from_lattice(id: impl Into<String>, lattice: PeriodicLattice) -> Self {
        let degree = lattice.degree();
        Self::new(id, degree, GraphKind::Lattice(lattice))
    }

    pub fn from_cayley(id: impl Into<String>, cayley: CayleyGraph) -> Self {
        let degree = cayley.degree();
        Self::new(id, degree, GraphKind::Cayley(cayley))
    }

    pub fn id(&self) -> &str {
        &self.inner.id
    }

    /// Common vertex degree, counting parallel edges (and loops, for derived graphs).
    pub fn degree(&self) -> u32 {
        self.inner.degree
    }

    pub fn as_lattice(&self) -> Option<&PeriodicLattice> {
        match &self.inner.kind {
            GraphKind::Lattice(l) => Some(l),
            _ => None,
        }
    }

    pub fn as_cayley(&self) -> Option<&CayleyGraph> {
        match &self.inner.kind {
            GraphKind::Cayley(c) => Some(c),
            _ => None,
        }
    }

    /// Short tag naming the construction behind this handle.
    pub fn source(&self) -> &'static str {
        match &self.inner.kind {
            GraphKind::Lattice(_) => "lattice",
            GraphKind::Cayley(c) if c.extra_generators().is_empty() => "presentation",
            GraphKind::Cayley(_) => "augmented",
            GraphKind::Derived(_) => "derived",
        }
    }

    /// The distinguished base vertex.
    pub fn origin(&self) -> VertexKey {
        match &self.inner.kind {
            GraphKind::Lattice(l) => l.origin(),
            GraphKind::Cayley(_) => VertexKey::identity(),
            GraphKind::Derived(d) => d.origin(),
        }
    }

    pub fn validate_key(&self, v: &VertexKey) -> Result<()> {
        match &self.inner.kind {
            GraphKind::Lattice(l) => l.validate_key(v),
            GraphKind::Cayley(c) => c.validate_key(v),
            GraphKind::Derived(d) => d.validate_key(v),
        }
    }

    /// Adjacent vertices in deterministic order with stable labels.
    pub fn neighbors(&self, v: &VertexKey) -> Result<Vec<Neighbor>> {
        match &self.inner.kind {
            GraphKind::Lattice(l) => l.neighbors(v),
            GraphKind::Cayley(c) => c.neighbors(v),
            GraphKind::Derived(d) => d.neighbors(v),
        }
    }

    /// True when the graph has neither loops nor parallel edges.
    pub fn is_simple(&self) -> bool {
        match &self.inner.kind {
            GraphKind::Lattice(l) => l.is_simple(),
            GraphKind::Cayley(c) => c.is_simple(),
            GraphKind::Derived(d) => d.is_simple(),
        }
    }

    /// True when the graph is known to contain no cycles at all.
    ///
    /// Only free products of cyclic groups of order 2 or infinite order with
    /// no further relators qualify; other graphs report `false`.
    pub fn is_forest(&self) -> bool {
        match &self.inner.kind {
            GraphKind::Cayley(c) => c.is_free(),
            _ => false,
        }
    }

    /// Vertices at graph distance at most `radius` from `v`, in key order.
    pub fn ball(&self, v: &VertexKey, radius: usize) -> Result<Vec<VertexKey>> {
        Ok(self
            .ball_layers(v, radius)?
            .into_iter()
            .flatten()
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect())
    }

    /// Breadth-first layers: `layers[d]` holds the vertices at distance exactly `d`.
    pub fn ball_layers(&self, v: &VertexKey, radius: usize) -> Result<Vec<Vec<VertexKey>>> {
        self.validate_key(v)?;
        let mut seen: HashSet<VertexKey> = HashSet::new();
        seen.insert(v.clone());
        let mut layers = vec![vec![v.clone()]];
        let mut queue = VecDeque::new();
        for d in 0..radius {
            queue.extend(layers[d].iter().cloned());
            let mut next = Vec::new();
            while let Some(u) = queue.pop_front() {
                for nb in self.neighbors(&u)? {
                    if seen.insert(nb.target.clone()) {
                        next.push(nb.target);
                    }
                }
            }
            layers.push(next);
        }
        Ok(layers)
    }

    /// Adds the orbit of the chord `(u, w)` under the graph's translation or
    /// word symmetry, one new edge per image.
    pub fn augment(&self, chord: (&VertexKey, &VertexKey)) -> Result<GraphHandle> {
        let (u, w) = chord;
        self.validate_key(u)?;
        self.validate_key(w)?;
        if u == w {
            return Err(Error::Loop(u.to_string()));
        }
        let id = format!("{}+[{} -- {}]", self.id(), u, w);
        match &self.inner.kind {
            GraphKind::Lattice(l) => Ok(GraphHandle::from_lattice(id, l.with_chord(u, w)?)),
            GraphKind::Cayley(c) => Ok(GraphHandle::from_cayley(id, c.with_chord(u, w)?)),
            GraphKind::Derived(_) => Err(Error::InvalidSpec(
                "augmentation of derived quotient graphs is not supported".into(),
            )),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn z2_origin_has_four_unit_neighbors() {
        let g = catalog("zd(2)").unwrap();
        let nb = g.neighbors(&g.origin()).unwrap();
        assert_eq!(nb.len(), 4);
        assert!(nb.iter().all(|n| n.multiplicity == 1));
        let targets: Vec<String> = nb.iter().map(|n| n.target.to_string()).collect();
        assert_eq!(targets, ["0@-1,0", "0@0,-1", "0@0,1", "0@1,0"]);
        assert_eq!(
            nb.iter().map(|n| n.label).collect::<Vec<_>>(),
            [0, 1, 2, 3]
        );
    }

    #[test]
    fn ball_sizes() {
        let z2 = catalog("zd(2)").unwrap();
        assert_eq!(z2.ball(&z2.origin(), 0).unwrap().len(), 1);
        assert_eq!(z2.ball(&z2.origin(), 2).unwrap().len(), 13);
        let t3 = catalog("tree(3)").unwrap();
        assert_eq!(t3.ball(&t3.origin(), 2).unwrap().len(), 10);
        assert_eq!(t3.neighbors(&t3.origin()).unwrap().len(), 3);
    }

    #[test]
    fn ladder_has_two_rails_and_a_rung() {
        let g = catalog("ladder").unwrap();
        let nb = g.neighbors(&g.origin()).unwrap();
        assert_eq!(nb.len(), 3);
        assert_eq!(g.degree(), 3);
    }

    #[test]
    fn augment_examples() {
        let z2 = catalog("zd(2)").unwrap();
        let o = z2.origin();
        let diag: VertexKey = "0@1,1".parse().unwrap();
        let tri = z2.augment((&o, &diag)).unwrap();
        assert_eq!(tri.degree(), 6);
        assert_eq!(tri.neighbors(&o).unwrap().len(), 6);

        let z1 = catalog("zd(1)").unwrap();
        let two: VertexKey = "0@2".parse().unwrap();
        assert_eq!(z1.augment((&z1.origin(), &two)).unwrap().degree(), 4);

        let ladder = catalog("ladder").unwrap();
        let rung_end: VertexKey = "1@0".parse().unwrap();
        let doubled = ladder.augment((&ladder.origin(), &rung_end)).unwrap();
        assert_eq!(doubled.degree(), 4);
        let nb = doubled.neighbors(&doubled.origin()).unwrap();
        let total: u32 = nb.iter().map(|n| n.multiplicity).sum();
        assert_eq!(total, 4);
        assert!(nb.iter().any(|n| n.target == rung_end && n.multiplicity == 2));
        assert!(!doubled.is_simple());
    }

    #[test]
    fn augment_rejects_loops() {
        let z2 = catalog("zd(2)").unwrap();
        let o = z2.origin();
        assert!(matches!(z2.augment((&o, &o)), Err(Error::Loop(_))));
    }

    #[test]
    fn invalid_keys_are_rejected() {
        let z2 = catalog("zd(2)").unwrap();
        let bad: VertexKey = "0@1".parse().unwrap();
        assert!(matches!(
            z2.neighbors(&bad),
            Err(Error::InvalidVertex { .. })
        ));
        let t = catalog("tree(3)").unwrap();
        assert!(t.neighbors(&"0@0,0".parse().unwrap()).is_err());
        // a non-reduced word is not a canonical key
        assert!(t.neighbors(&"w:1.1".parse().unwrap()).is_err());
    }

    #[test]
    fn walk_self_avoidance() {
        let o: VertexKey = "0@0".parse().unwrap();
        let mut w = Walk::empty(o.clone());
        assert!(w.is_self_avoiding());
        w.steps.push(Step {
            to: "0@1".parse().unwrap(),
            parallel: 0,
        });
        w.steps.push(Step { to: o, parallel: 0 });
        assert!(!w.is_self_avoiding());
        assert_eq!(w.len(), 2);
    }
}
