//! Graph-spec files.
//!
//! A spec file is TOML with a `kind` field. Lattice specs:
//!
//! ```toml
//! kind = "lattice"
//! dimension = 2
//! cells = 1
//! # each edge: i j offset... parallel_count
//! edges = [[0, 0, 1, 0, 1], [0, 0, 0, 1, 1]]
//! ```
//!
//! Cayley specs name the generators, their inverses, relators and a
//! non-lengthening rewriting system; words are space-separated generator names:
//!
//! ```toml
//! kind = "cayley"
//! generators = ["a", "A", "b", "B"]
//! inverses = ["A", "a", "B", "b"]
//! relators = ["a b A B"]
//! rules = [["b a", "a b"], ["b A", "A b"], ["B a", "a B"], ["B A", "A B"]]
//! ```

use serde::Deserialize;

use super::{CayleyGraph, GraphHandle, GroupPresentation, LatticeEdge, PeriodicLattice, PeriodicLatticeSpec};
use crate::error::{Error, Result};

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawSpec {
    kind: String,
    dimension: Option<usize>,
    cells: Option<u32>,
    edges: Option<Vec<Vec<i64>>>,
    generators: Option<Vec<String>>,
    inverses: Option<Vec<String>>,
    relators: Option<Vec<String>>,
    rules: Option<Vec<[String; 2]>>,
}

/// Parsed contents of a graph-spec file.
#[derive(Clone, Debug, PartialEq)]
pub enum GraphSpecFile {
    Lattice(PeriodicLatticeSpec),
    Cayley(GroupPresentation),
}

impl GraphSpecFile {
    pub fn build(&self, id: impl Into<String>) -> Result<GraphHandle> {
        match self {
            GraphSpecFile::Lattice(spec) => Ok(GraphHandle::from_lattice(
                id,
                PeriodicLattice::new(spec.clone())?,
            )),
            GraphSpecFile::Cayley(p) => Ok(GraphHandle::from_cayley(id, CayleyGraph::new(p.clone())?)),
        }
    }

    /// Renders back to the file format.
    pub fn render(&self) -> String {
        let mut out = String::new();
        match self {
            GraphSpecFile::Lattice(spec) => {
                out.push_str("kind = \"lattice\"\n");
                out.push_str(&format!("dimension = {}\n", spec.dimension));
                out.push_str(&format!("cells = {}\n", spec.cells));
                out.push_str("edges = [\n");
                for e in &spec.edges {
                    let mut fields = vec![e.from as i64, e.to as i64];
                    fields.extend(&e.offset);
                    fields.push(e.parallel as i64);
                    let row: Vec<String> = fields.iter().map(|x| x.to_string()).collect();
                    out.push_str(&format!("  [{}],\n", row.join(", ")));
                }
                out.push_str("]\n");
            }
            GraphSpecFile::Cayley(p) => {
                let word = |w: &[u16]| -> String {
                    w.iter()
                        .map(|&s| p.names[s as usize].as_str())
                        .collect::<Vec<_>>()
                        .join(" ")
                };
                let quoted = |items: Vec<String>| -> String {
                    items
                        .iter()
                        .map(|s| format!("{s:?}"))
                        .collect::<Vec<_>>()
                        .join(", ")
                };
                out.push_str("kind = \"cayley\"\n");
                out.push_str(&format!("generators = [{}]\n", quoted(p.names.clone())));
                let inv = p.inverses.iter().map(|&i| p.names[i as usize].clone()).collect();
                out.push_str(&format!("inverses = [{}]\n", quoted(inv)));
                let rel = p.relators.iter().map(|r| word(r)).collect();
                out.push_str(&format!("relators = [{}]\n", quoted(rel)));
                let rules: Vec<String> = p
                    .rules
                    .iter()
                    .map(|(l, r)| format!("[{:?}, {:?}]", word(l), word(r)))
                    .collect();
                out.push_str(&format!("rules = [{}]\n", rules.join(", ")));
            }
        }
        out
    }
}

pub fn parse_graph_spec(text: &str) -> Result<GraphSpecFile> {
    let raw: RawSpec = toml::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    match raw.kind.as_str() {
        "lattice" => {
            let missing = |f: &str| Error::InvalidSpec(format!("lattice spec is missing `{f}`"));
            let dimension = raw.dimension.ok_or_else(|| missing("dimension"))?;
            let cells = raw.cells.ok_or_else(|| missing("cells"))?;
            let edges = raw
                .edges
                .ok_or_else(|| missing("edges"))?
                .into_iter()
                .map(|row| {
                    if row.len() != dimension + 3 {
                        return Err(Error::InvalidSpec(format!(
                            "edge {row:?} must have {} entries (i j offset... parallel_count)",
                            dimension + 3
                        )));
                    }
                    let idx = |x: i64| {
                        u32::try_from(x).map_err(|_| Error::InvalidSpec(format!("bad index {x} in edge {row:?}")))
                    };
                    Ok(LatticeEdge::new(
                        idx(row[0])?,
                        idx(row[1])?,
                        row[2..2 + dimension].to_vec(),
                        idx(row[2 + dimension])?,
                    ))
                })
                .collect::<Result<Vec<_>>>()?;
            Ok(GraphSpecFile::Lattice(PeriodicLatticeSpec {
                dimension,
                cells,
                edges,
            }))
        }
        "cayley" => {
            let names = raw
                .generators
                .ok_or_else(|| Error::InvalidSpec("cayley spec is missing `generators`".into()))?;
            let lookup = |name: &str| -> Result<u16> {
                names
                    .iter()
                    .position(|n| n == name)
                    .map(|i| i as u16)
                    .ok_or_else(|| Error::InvalidSpec(format!("unknown generator `{name}`")))
            };
            let word = |w: &str| -> Result<Vec<u16>> { w.split_whitespace().map(lookup).collect() };
            let inverses = match raw.inverses {
                Some(inv) => inv.iter().map(|n| lookup(n)).collect::<Result<Vec<_>>>()?,
                None => (0..names.len() as u16).collect(),
            };
            let relators = raw
                .relators
                .unwrap_or_default()
                .iter()
                .map(|r| word(r))
                .collect::<Result<Vec<_>>>()?;
            let rules = raw
                .rules
                .unwrap_or_default()
                .iter()
                .map(|[l, r]| Ok((word(l)?, word(r)?)))
                .collect::<Result<Vec<_>>>()?;
            Ok(GraphSpecFile::Cayley(GroupPresentation {
                names,
                inverses,
                relators,
                rules,
            }))
        }
        other => Err(Error::InvalidSpec(format!("unknown kind `{other}`"))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const Z2_CAYLEY: &str = r#"
kind = "cayley"
generators = ["a", "A", "b", "B"]
inverses = ["A", "a", "B", "b"]
relators = ["a b A B"]
rules = [["b a", "a b"], ["b A", "A b"], ["B a", "a B"], ["B A", "A B"]]
"#;

    #[test]
    fn lattice_file() {
        let text = "kind = \"lattice\"\ndimension = 1\ncells = 2\nedges = [[0, 0, 1, 1], [1, 1, 1, 1], [0, 1, 0, 1]]\n";
        let spec = parse_graph_spec(text).unwrap();
        let g = spec.build("ladder-file").unwrap();
        assert_eq!(g.degree(), 3);
        assert_eq!(parse_graph_spec(&spec.render()).unwrap(), spec);
    }

    #[test]
    fn cayley_file() {
        let spec = parse_graph_spec(Z2_CAYLEY).unwrap();
        let g = spec.build("z2-cayley").unwrap();
        assert_eq!(g.degree(), 4);
        assert_eq!(parse_graph_spec(&spec.render()).unwrap(), spec);
    }

    #[test]
    fn malformed_files() {
        assert!(parse_graph_spec("kind = \"lattice\"\ndimension = 1\ncells = 1\nedges = [[0, 0, 1]]").is_err());
        assert!(parse_graph_spec("kind = \"hyperbolic\"").is_err());
        assert!(parse_graph_spec("kind = \"lattice\"\nbogus = 1").is_err());
        assert!(parse_graph_spec("kind = \"cayley\"\ngenerators = [\"a\"]\nrelators = [\"b\"]").is_err());
    }
}
