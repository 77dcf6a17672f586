use std::collections::{BTreeSet, HashSet, VecDeque};

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::graph::VertexKey;
use crate::quotient::{QuotientGraph, TypeReport};

/// Directed `ℓ̄`-cycles rooted at one orbit vertex, as orbit sequences
/// starting with that orbit.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrbitCycles {
    pub orbit: VertexKey,
    pub cycles: Vec<Vec<VertexKey>>,
}

/// For each orbit vertex `w̄`, every directed cycle of length `ℓ̄` through
/// `w̄` whose lift from a representative is a SAW of G ending in `w̄`.
///
/// Parallel edges are not distinguished; only cycle vertices matter for
/// the events.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CycleFamily {
    pub length: usize,
    /// The base walk `ℓ_{v0}` in G.
    pub base_walk: Vec<VertexKey>,
    /// Sorted by orbit.
    pub orbits: Vec<OrbitCycles>,
    /// Radius (in the quotient) around the base orbit that is covered, or
    /// `None` when every orbit is covered.
    pub radius: Option<usize>,
}

impl CycleFamily {
    pub fn cycles_at(&self, orbit: &VertexKey) -> Option<&[Vec<VertexKey>]> {
        self.orbits
            .binary_search_by(|o| o.orbit.cmp(orbit))
            .ok()
            .map(|i| self.orbits[i].cycles.as_slice())
    }

    pub fn covers_radius(&self, radius: usize) -> bool {
        self.radius.is_none_or(|r| r >= radius)
    }

    pub fn member_count(&self) -> usize {
        self.orbits.iter().map(|o| o.cycles.len()).sum()
    }
}

pub fn build_cycle_family(
    q: &QuotientGraph,
    report: &TypeReport,
    radius: usize,
) -> Result<CycleFamily> {
    let orbits: Vec<VertexKey> = if q.is_finite() {
        q.orbits()
    } else {
        let mut seen = HashSet::from([q.base().clone()]);
        let mut queue = VecDeque::from([(q.base().clone(), 0)]);
        let mut out = Vec::new();
        while let Some((v, d)) = queue.pop_front() {
            if d < radius {
                for e in q.out_edges(&v)? {
                    if seen.insert(e.target.clone()) {
                        queue.push_back((e.target, d + 1));
                    }
                }
            }
            out.push(v);
        }
        out.sort();
        out
    };
    let mut family = Vec::with_capacity(orbits.len());
    for orbit in orbits {
        let cycles = cycles_at(q, &orbit, report.length)?;
        family.push(OrbitCycles { orbit, cycles });
    }
    Ok(CycleFamily {
        length: report.length,
        base_walk: report.witness.clone(),
        orbits: family,
        radius: if q.is_finite() { None } else { Some(radius) },
    })
}

fn cycles_at(q: &QuotientGraph, orbit: &VertexKey, length: usize) -> Result<Vec<Vec<VertexKey>>> {
    let start = q.representative(orbit)?;
    let mut found = BTreeSet::new();
    let mut path = vec![start];
    fn rec(
        q: &QuotientGraph,
        orbit: &VertexKey,
        length: usize,
        path: &mut Vec<VertexKey>,
        found: &mut BTreeSet<Vec<VertexKey>>,
    ) -> Result<()> {
        let v = path.last().unwrap().clone();
        for nb in q.graph().neighbors(&v)? {
            if path.contains(&nb.target) {
                continue;
            }
            if path.len() == length {
                if &q.orbit_of(&nb.target)? == orbit {
                    let seq = path.iter().map(|x| q.orbit_of(x)).collect::<Result<Vec<_>>>()?;
                    found.insert(seq);
                }
            } else {
                path.push(nb.target);
                rec(q, orbit, length, path, found)?;
                path.pop();
            }
        }
        Ok(())
    }
    rec(q, orbit, length, &mut path, &mut found)?;
    Ok(found.into_iter().collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::catalog;
    use crate::quotient::{build_quotient, SubgroupAction};

    fn family(graph: &str, rows: &[Vec<i64>]) -> CycleFamily {
        let g = catalog(graph).unwrap();
        let q = build_quotient(&g, &SubgroupAction::sublattice(rows).unwrap()).unwrap();
        build_cycle_family(&q, &q.classify_type().unwrap(), 4).unwrap()
    }

    #[test]
    fn triangle_has_both_orientations() {
        let f = family("zd(1)", &[vec![3]]);
        assert_eq!(f.length, 3);
        assert_eq!(f.orbits.len(), 3);
        assert!(f.orbits.iter().all(|o| o.cycles.len() == 2));
        assert!(f.covers_radius(100));
    }

    #[test]
    fn torus_two_by_two() {
        let f = family("zd(2)", &[vec![2, 0], vec![0, 2]]);
        assert_eq!(f.length, 2);
        assert_eq!(f.orbits.len(), 4);
        assert!(f.orbits.iter().all(|o| o.cycles.len() == 2));
    }

    #[test]
    fn tree_with_end_up_down() {
        let g = catalog("tree-with-end(3)").unwrap();
        let q = build_quotient(&g, &SubgroupAction::catalog("child-swap").unwrap()).unwrap();
        let f = build_cycle_family(&q, &q.classify_type().unwrap(), 3).unwrap();
        assert_eq!(f.length, 2);
        let level = |h: i64| VertexKey::lattice(0, vec![h]);
        assert_eq!(f.cycles_at(&level(0)).unwrap(), &[vec![level(0), level(-1)]]);
        assert_eq!(f.orbits.len(), 7);
        assert!(!f.covers_radius(4));
    }
}
