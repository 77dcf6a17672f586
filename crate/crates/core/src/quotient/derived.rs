use super::QuotientGraph;
use crate::error::{Error, Result};
use crate::graph::{GraphHandle, GraphKind, Neighbor, VertexKey};

/// Undirected graph on the orbits of a quotient.
///
/// The simple form joins distinct orbits that share an edge. The multigraph
/// form keeps `|∂v ∩ w̄|` parallel edges and lists a loop orbit once with its
/// directed loop count as multiplicity.
#[derive(Clone, Debug)]
pub struct DerivedGraph {
    quotient: QuotientGraph,
    multigraph: bool,
}

impl DerivedGraph {
    pub(crate) fn handle(quotient: QuotientGraph, multigraph: bool) -> Result<GraphHandle> {
        if multigraph && !quotient.check_symmetry() {
            return Err(Error::SymmetryRequired);
        }
        let form = if multigraph { "multigraph" } else { "simple" };
        let id = format!("{}[{form}]", quotient.id());
        let d = DerivedGraph {
            quotient,
            multigraph,
        };
        let degree = d
            .neighbors(&d.origin())?
            .iter()
            .map(|n| n.multiplicity)
            .sum();
        Ok(GraphHandle::new(id, degree, GraphKind::Derived(d)))
    }

    pub fn quotient(&self) -> &QuotientGraph {
        &self.quotient
    }

    pub fn origin(&self) -> VertexKey {
        self.quotient.base().clone()
    }

    pub fn validate_key(&self, v: &VertexKey) -> Result<()> {
        self.quotient.representative(v).map(|_| ())
    }

    pub fn neighbors(&self, v: &VertexKey) -> Result<Vec<Neighbor>> {
        let edges = self.quotient.out_edges(v)?;
        Ok(edges
            .into_iter()
            .filter(|e| self.multigraph || &e.target != v)
            .enumerate()
            .map(|(i, e)| Neighbor {
                target: e.target,
                label: i as u32,
                multiplicity: if self.multigraph { e.multiplicity } else { 1 },
            })
            .collect())
    }

    pub fn is_simple(&self) -> bool {
        if !self.multigraph {
            return true;
        }
        self.quotient.orbits().iter().all(|o| {
            self.quotient
                .out_edges(o)
                .map(|es| es.iter().all(|e| &e.target != o && e.multiplicity == 1))
                .unwrap_or(false)
        })
    }
}

#[cfg(test)]
mod tests {
    use crate::error::Error;
    use crate::graph::catalog;
    use crate::quotient::{build_quotient, SubgroupAction};

    #[test]
    fn z_mod_two_multigraph() {
        let g = catalog("zd(1)").unwrap();
        let q = build_quotient(&g, &SubgroupAction::sublattice(&[vec![2]]).unwrap()).unwrap();
        let d = q.derive_undirected(true).unwrap();
        let nb = d.neighbors(&d.origin()).unwrap();
        assert_eq!(nb.len(), 1);
        assert_eq!(nb[0].multiplicity, 2);
        assert!(!d.is_simple());
        assert_eq!(q.derive_undirected(false).unwrap().degree(), 1);
    }

    #[test]
    fn z_mod_three_is_a_triangle() {
        let g = catalog("zd(1)").unwrap();
        let q = build_quotient(&g, &SubgroupAction::sublattice(&[vec![3]]).unwrap()).unwrap();
        let d = q.derive_undirected(false).unwrap();
        assert_eq!(d.ball(&d.origin(), 3).unwrap().len(), 3);
        assert_eq!(d.degree(), 2);
        assert!(d.is_simple());
    }

    #[test]
    fn asymmetric_multigraph_is_refused() {
        let g = catalog("tree-with-end(3)").unwrap();
        let q = build_quotient(&g, &SubgroupAction::catalog("child-swap").unwrap()).unwrap();
        assert_eq!(q.derive_undirected(true).unwrap_err(), Error::SymmetryRequired);
        assert_eq!(q.derive_undirected(false).unwrap().degree(), 2);
    }
}
