use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::Error;

/// Canonical identifier of a vertex.
///
/// Lattice vertices are a cell index inside the fundamental domain plus an
/// integer translation vector. Cayley-graph vertices are reduced words over
/// generator indices. Equal keys denote equal vertices.
///
/// The text form is `cell@x1,x2,...` for lattice keys and `w:i.j.k` for
/// words (`w:` alone is the identity).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum VertexKey {
    Lattice { cell: u32, offset: Vec<i64> },
    Word { letters: Vec<u16> },
}

impl VertexKey {
    pub fn lattice(cell: u32, offset: Vec<i64>) -> Self {
        VertexKey::Lattice { cell, offset }
    }

    pub fn word(letters: Vec<u16>) -> Self {
        VertexKey::Word { letters }
    }

    pub fn identity() -> Self {
        VertexKey::Word {
            letters: Vec::new(),
        }
    }
}

impl fmt::Display for VertexKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            VertexKey::Lattice { cell, offset } => {
                write!(f, "{cell}@")?;
                for (i, x) in offset.iter().enumerate() {
                    if i > 0 {
                        f.write_str(",")?;
                    }
                    write!(f, "{x}")?;
                }
                Ok(())
            }
            VertexKey::Word { letters } => {
                f.write_str("w:")?;
                for (i, x) in letters.iter().enumerate() {
                    if i > 0 {
                        f.write_str(".")?;
                    }
                    write!(f, "{x}")?;
                }
                Ok(())
            }
        }
    }
}

impl FromStr for VertexKey {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = |reason: &str| Error::Parse(format!("vertex key `{s}`: {reason}"));
        let s = s.trim();
        if let Some(rest) = s.strip_prefix("w:") {
            let letters = if rest.is_empty() {
                Vec::new()
            } else {
                rest.split('.')
                    .map(|t| t.trim().parse::<u16>().map_err(|_| bad("bad letter")))
                    .collect::<Result<Vec<_>, _>>()?
            };
            return Ok(VertexKey::Word { letters });
        }
        let (cell, rest) = s.split_once('@').ok_or_else(|| bad("expected `cell@offset`"))?;
        let cell = cell.trim().parse::<u32>().map_err(|_| bad("bad cell index"))?;
        let offset = if rest.trim().is_empty() {
            Vec::new()
        } else {
            rest.split(',')
                .map(|t| t.trim().parse::<i64>().map_err(|_| bad("bad offset")))
                .collect::<Result<Vec<_>, _>>()?
        };
        Ok(VertexKey::Lattice { cell, offset })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn any_key() -> impl Strategy<Value = VertexKey> {
        prop_oneof![
            (0u32..8, prop::collection::vec(any::<i64>(), 0..4))
                .prop_map(|(cell, offset)| VertexKey::Lattice { cell, offset }),
            prop::collection::vec(any::<u16>(), 0..10).prop_map(|letters| VertexKey::Word { letters }),
        ]
    }

    proptest! {
        #[test]
        fn text_and_json_round_trip(k in any_key()) {
            let text = k.to_string();
            prop_assert_eq!(&text.parse::<VertexKey>().unwrap(), &k);
            let json = serde_json::to_string(&k).unwrap();
            let back: VertexKey = serde_json::from_str(&json).unwrap();
            prop_assert_eq!(serde_json::to_string(&back).unwrap(), json);
            prop_assert_eq!(back, k);
        }
    }

    #[test]
    fn parse_errors() {
        assert!("x".parse::<VertexKey>().is_err());
        assert!("0@a".parse::<VertexKey>().is_err());
        assert!("w:1.x".parse::<VertexKey>().is_err());
        assert_eq!("w:".parse::<VertexKey>().unwrap(), VertexKey::identity());
        assert_eq!(
            "2@".parse::<VertexKey>().unwrap(),
            VertexKey::lattice(2, vec![])
        );
    }
}
