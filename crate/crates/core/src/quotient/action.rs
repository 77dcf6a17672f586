use std::fmt;

use serde::{Deserialize, Serialize};

use super::Hnf;
use crate::error::{Error, Result};
use crate::graph::{GraphHandle, VertexKey};

/// A subgroup of automorphisms whose orbits form the quotient's vertices.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum SubgroupAction {
    /// Translations by a sublattice of Z^d acting on a periodic lattice.
    Sublattice { basis: Hnf },
    /// On a tree with a distinguished end: the normal subgroup generated by
    /// swapping two children of a vertex, optionally together with the shift
    /// of a vertex to its ancestor `shift` generations up.
    ChildSwap { shift: Option<u32> },
}

impl SubgroupAction {
    pub fn sublattice(rows: &[Vec<i64>]) -> Result<Self> {
        let dimension = rows.first().map(Vec::len).ok_or_else(|| {
            Error::InvalidAction("a sublattice needs at least one generator".into())
        })?;
        let basis = Hnf::new(rows, dimension)?;
        if basis.rank() == 0 {
            return Err(Error::InvalidAction(
                "trivial action: every sublattice generator is zero".into(),
            ));
        }
        Ok(SubgroupAction::Sublattice { basis })
    }

    /// Parses semicolon-separated rows of whitespace- or comma-separated integers,
    /// e.g. `"2 0; 0 2"`.
    pub fn parse_rows(text: &str) -> Result<Vec<Vec<i64>>> {
        text.split(';')
            .map(str::trim)
            .filter(|r| !r.is_empty())
            .map(|row| {
                row.split(|c: char| c == ',' || c.is_whitespace())
                    .filter(|t| !t.is_empty())
                    .map(|t| {
                        t.parse::<i64>()
                            .map_err(|_| Error::Parse(format!("bad sublattice entry `{t}`")))
                    })
                    .collect()
            })
            .collect()
    }

    /// Named catalog actions: `child-swap` and `child-swap-shift:k`.
    pub fn catalog(name: &str) -> Result<Self> {
        let name = name.trim();
        if name == "child-swap" {
            return Ok(SubgroupAction::ChildSwap { shift: None });
        }
        let k = name
            .strip_prefix("child-swap-shift:")
            .or_else(|| {
                name.strip_prefix("child-swap-shift(")
                    .and_then(|r| r.strip_suffix(')'))
            })
            .and_then(|k| k.trim().parse::<u32>().ok())
            .ok_or_else(|| Error::InvalidAction(format!("unknown catalog action `{name}`")))?;
        Ok(SubgroupAction::ChildSwap {
            shift: if k == 0 { None } else { Some(k) },
        })
    }

    /// Finite orbit count, or `None` when there are infinitely many orbits.
    pub(crate) fn orbit_count(&self, g: &GraphHandle) -> Option<usize> {
        match self {
            SubgroupAction::Sublattice { basis } => {
                let cells = g.as_lattice()?.cells() as u64;
                basis.index().map(|i| (i * cells) as usize)
            }
            SubgroupAction::ChildSwap { shift } => shift.map(|k| k as usize),
        }
    }

    /// Checks that the action is defined on `g` and consists of automorphisms.
    pub(crate) fn check_on(&self, g: &GraphHandle) -> Result<()> {
        match self {
            SubgroupAction::Sublattice { basis } => {
                let lattice = g.as_lattice().ok_or_else(|| {
                    Error::InvalidAction(format!("{} is not a periodic lattice", g.id()))
                })?;
                if lattice.dimension() != basis.dimension() {
                    return Err(Error::InvalidAction(format!(
                        "sublattice has dimension {}, graph has dimension {}",
                        basis.dimension(),
                        lattice.dimension()
                    )));
                }
                for t in basis.rows() {
                    for cell in 0..lattice.cells() {
                        let start = VertexKey::lattice(cell, vec![0; lattice.dimension()]);
                        for v in g.ball(&start, 2)? {
                            let moved: Vec<VertexKey> = g
                                .neighbors(&v)?
                                .iter()
                                .map(|n| lattice.translate(&n.target, t))
                                .collect::<Result<_>>()?;
                            let image = g.neighbors(&lattice.translate(&v, t)?)?;
                            if image.iter().map(|n| &n.target).ne(moved.iter()) {
                                return Err(Error::InvalidAction(format!(
                                    "translation by {t:?} does not preserve edges at {v}"
                                )));
                            }
                        }
                    }
                }
                Ok(())
            }
            SubgroupAction::ChildSwap { .. } => {
                let c = g.as_cayley().filter(|c| c.has_distinguished_end() && c.is_free());
                match c {
                    Some(c) if c.degree() >= 3 => Ok(()),
                    _ => Err(Error::InvalidAction(format!(
                        "child-swap actions need a tree-with-end of degree at least 3, got {}",
                        g.id()
                    ))),
                }
            }
        }
    }

    pub(crate) fn orbit_of(&self, g: &GraphHandle, v: &VertexKey) -> Result<VertexKey> {
        match (self, v) {
            (SubgroupAction::Sublattice { basis }, VertexKey::Lattice { cell, offset }) => {
                Ok(VertexKey::lattice(*cell, basis.reduce(offset)?))
            }
            (SubgroupAction::ChildSwap { shift }, VertexKey::Word { letters }) => {
                let cayley = g.as_cayley().expect("checked at build time");
                let level = cayley.level(letters)?;
                let level = match shift {
                    Some(k) => level.rem_euclid(*k as i64),
                    None => level,
                };
                Ok(VertexKey::lattice(0, vec![level]))
            }
            _ => Err(Error::InvalidVertex {
                key: v.to_string(),
                reason: "key kind does not match the action".into(),
            }),
        }
    }

    pub(crate) fn representative(&self, g: &GraphHandle, orbit: &VertexKey) -> Result<VertexKey> {
        match (self, orbit) {
            (SubgroupAction::Sublattice { .. }, VertexKey::Lattice { .. }) => Ok(orbit.clone()),
            (SubgroupAction::ChildSwap { .. }, VertexKey::Lattice { cell: 0, offset })
                if offset.len() == 1 =>
            {
                let cayley = g.as_cayley().expect("checked at build time");
                Ok(VertexKey::word(cayley.level_representative(offset[0])))
            }
            _ => Err(Error::InvalidVertex {
                key: orbit.to_string(),
                reason: "not an orbit key of this action".into(),
            }),
        }
    }
}

impl fmt::Display for SubgroupAction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SubgroupAction::Sublattice { basis } => {
                let rows: Vec<String> = basis
                    .rows()
                    .iter()
                    .map(|r| r.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" "))
                    .collect();
                write!(f, "sublattice[{}]", rows.join("; "))
            }
            SubgroupAction::ChildSwap { shift: None } => f.write_str("child-swap"),
            SubgroupAction::ChildSwap { shift: Some(k) } => write!(f, "child-swap-shift:{k}"),
        }
    }
}
