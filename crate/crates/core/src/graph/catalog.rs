use super::{CayleyGraph, GraphHandle, LatticeEdge, PeriodicLattice, PeriodicLatticeSpec};
use crate::error::{Error, Result};

/// Stable catalog entry names (parameterized entries shown with a placeholder).
pub const CATALOG_NAMES: &[&str] = &[
    "zd(d)",
    "ladder",
    "square-octagon",
    "tree(D)",
    "tree-with-end(D)",
];

/// Looks up a catalog graph.
///
/// Parameterized entries accept both `zd(2)` and `zd:2` spellings.
pub fn catalog(name: &str) -> Result<GraphHandle> {
    let name = name.trim();
    let unknown = || Error::Catalog(name.to_string());
    let (base, param) = split_param(name).ok_or_else(unknown)?;
    match (base, param) {
        ("zd", Some(d)) if d >= 1 => zd(d),
        ("ladder", None) => ladder(),
        ("square-octagon", None) => square_octagon(),
        ("tree", Some(k)) if k >= 2 => Ok(GraphHandle::from_cayley(
            format!("tree({k})"),
            CayleyGraph::tree(k, false)?,
        )),
        ("tree-with-end", Some(k)) if k >= 2 => Ok(GraphHandle::from_cayley(
            format!("tree-with-end({k})"),
            CayleyGraph::tree(k, true)?,
        )),
        _ => Err(unknown()),
    }
}

fn split_param(name: &str) -> Option<(&str, Option<usize>)> {
    if let Some((base, rest)) = name.split_once('(') {
        let p = rest.strip_suffix(')')?.trim().parse().ok()?;
        return Some((base.trim(), Some(p)));
    }
    if let Some((base, p)) = name.split_once(':') {
        return Some((base.trim(), Some(p.trim().parse().ok()?)));
    }
    Some((name, None))
}

fn zd(d: usize) -> Result<GraphHandle> {
    let edges = (0..d)
        .map(|i| {
            let mut e = vec![0; d];
            e[i] = 1;
            LatticeEdge::new(0, 0, e, 1)
        })
        .collect();
    let spec = PeriodicLatticeSpec {
        dimension: d,
        cells: 1,
        edges,
    };
    Ok(GraphHandle::from_lattice(format!("zd({d})"), PeriodicLattice::new(spec)?))
}

/// Two rails (cells 0 and 1) along Z joined by rungs.
fn ladder() -> Result<GraphHandle> {
    let spec = PeriodicLatticeSpec {
        dimension: 1,
        cells: 2,
        edges: vec![
            LatticeEdge::new(0, 0, vec![1], 1),
            LatticeEdge::new(1, 1, vec![1], 1),
            LatticeEdge::new(0, 1, vec![0], 1),
        ],
    };
    Ok(GraphHandle::from_lattice("ladder", PeriodicLattice::new(spec)?))
}

/// The (4, 8^2) lattice: one axis-parallel square per fundamental domain with
/// corners 0=BL, 1=BR, 2=TR, 3=TL, and diagonal edges TR(x)-BL(x+e1),
/// TL(x)-BR(x+e2) between squares.
///
/// Edge families correspond to the generators of `<s1, s2, s3 | s1^2, s2^2,
/// s3^2, (s1 s2)^2, (s1 s3 s2 s3)^2>`: s1 horizontal (0-1, 3-2), s2 vertical
/// (0-3, 1-2), s3 diagonal.
fn square_octagon() -> Result<GraphHandle> {
    let spec = PeriodicLatticeSpec {
        dimension: 2,
        cells: 4,
        edges: vec![
            LatticeEdge::new(0, 1, vec![0, 0], 1),
            LatticeEdge::new(3, 2, vec![0, 0], 1),
            LatticeEdge::new(0, 3, vec![0, 0], 1),
            LatticeEdge::new(1, 2, vec![0, 0], 1),
            LatticeEdge::new(2, 0, vec![1, 0], 1),
            LatticeEdge::new(3, 1, vec![0, 1], 1),
        ],
    };
    Ok(GraphHandle::from_lattice(
        "square-octagon",
        PeriodicLattice::new(spec)?,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::VertexKey;

    #[test]
    fn documented_degrees() {
        assert_eq!(catalog("square-octagon").unwrap().degree(), 3);
        assert_eq!(catalog("ladder").unwrap().degree(), 3);
        assert_eq!(catalog("zd(2)").unwrap().degree(), 4);
        assert_eq!(catalog("zd:3").unwrap().degree(), 6);
        assert_eq!(catalog("tree(4)").unwrap().degree(), 4);
        assert_eq!(catalog("tree-with-end:3").unwrap().degree(), 3);
    }

    #[test]
    fn unknown_names() {
        for bad in ["hexagonal", "zd(0)", "zd(x)", "tree(1)", "ladder(2)", "zd"] {
            assert!(matches!(catalog(bad), Err(Error::Catalog(_))), "{bad}");
        }
    }

    /// s1 s3 s2 s3 s1 s3 s2 s3 is an octagon; s2 s3 s2 s3 translates by (1, 1).
    #[test]
    fn square_octagon_matches_presentation() {
        let g = catalog("square-octagon").unwrap();
        // generator of the edge between two adjacent vertices
        let gen = |a: &VertexKey, b: &VertexKey| -> usize {
            let (VertexKey::Lattice { cell: ca, offset: oa }, VertexKey::Lattice { cell: cb, offset: ob }) =
                (a, b)
            else {
                unreachable!()
            };
            let same = oa == ob;
            match (ca.min(cb), ca.max(cb), same) {
                (0, 1, true) | (2, 3, true) => 1,
                (0, 3, true) | (1, 2, true) => 2,
                _ => 3,
            }
        };
        let walk = |start: VertexKey, word: &[usize]| -> VertexKey {
            word.iter().fold(start, |v, &s| {
                let nb = g.neighbors(&v).unwrap();
                let hits: Vec<_> = nb.iter().filter(|n| gen(&v, &n.target) == s).collect();
                assert_eq!(hits.len(), 1);
                hits[0].target.clone()
            })
        };
        for cell in 0..4 {
            let v = VertexKey::lattice(cell, vec![3, -2]);
            assert_eq!(walk(v.clone(), &[1, 3, 2, 3, 1, 3, 2, 3]), v);
            assert_eq!(walk(v.clone(), &[1, 2, 1, 2]), v);
            for s in 1..=3 {
                assert_eq!(walk(v.clone(), &[s, s]), v);
            }
            let VertexKey::Lattice { offset, .. } = walk(v.clone(), &[2, 3, 2, 3]) else {
                unreachable!()
            };
            let shift = [offset[0] - 3, offset[1] + 2];
            assert!(shift == [1, 1] || shift == [-1, -1], "{shift:?}");
        }
    }
}
