use std::collections::{HashSet, VecDeque};

use serde::{Deserialize, Serialize};

use super::{Neighbor, VertexKey};
use crate::error::{Error, Result};

/// A finite presentation with a user-supplied rewriting system.
///
/// Generator `i` has formal inverse `inverses[i]` (an involution when
/// `inverses[i] == i`). Free cancellation `s s^-1 -> e` is always applied;
/// `rules` must not lengthen words.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupPresentation {
    pub names: Vec<String>,
    pub inverses: Vec<u16>,
    pub relators: Vec<Vec<u16>>,
    pub rules: Vec<(Vec<u16>, Vec<u16>)>,
}

impl GroupPresentation {
    /// Free product of `n` cyclic groups of order two.
    pub fn involutions(n: usize) -> Self {
        GroupPresentation {
            names: (0..n).map(|i| format!("a{i}")).collect(),
            inverses: (0..n as u16).collect(),
            relators: Vec::new(),
            rules: Vec::new(),
        }
    }

    pub fn generator_count(&self) -> usize {
        self.names.len()
    }

    fn check(&self) -> Result<()> {
        let n = self.names.len();
        if n == 0 {
            return Err(Error::InvalidSpec("presentation has no generators".into()));
        }
        if self.inverses.len() != n {
            return Err(Error::InvalidSpec("one inverse per generator is required".into()));
        }
        for (i, &j) in self.inverses.iter().enumerate() {
            if j as usize >= n || self.inverses[j as usize] as usize != i {
                return Err(Error::InvalidSpec(format!(
                    "inverse table is not an involution at generator {i}"
                )));
            }
        }
        let in_range = |w: &[u16]| w.iter().all(|&x| (x as usize) < n);
        if !self.relators.iter().all(|r| in_range(r)) {
            return Err(Error::InvalidSpec("relator uses an unknown generator".into()));
        }
        for (lhs, rhs) in &self.rules {
            if lhs.is_empty() || !in_range(lhs) || !in_range(rhs) {
                return Err(Error::InvalidSpec("malformed rewrite rule".into()));
            }
            if rhs.len() > lhs.len() {
                return Err(Error::InvalidSpec(format!(
                    "rewrite rule {lhs:?} -> {rhs:?} lengthens words"
                )));
            }
        }
        Ok(())
    }

    pub fn invert(&self, word: &[u16]) -> Vec<u16> {
        word.iter()
            .rev()
            .map(|&s| self.inverses[s as usize])
            .collect()
    }

    /// Rewrites `word` to normal form by repeatedly applying free cancellation
    /// and the rules at the leftmost possible position.
    pub fn normal_form(&self, word: &[u16]) -> Result<Vec<u16>> {
        let mut w = word.to_vec();
        let cap = 10_000 + 100 * w.len() * w.len();
        for _ in 0..cap {
            if !self.rewrite_once(&mut w) {
                return Ok(w);
            }
        }
        Err(Error::RewriteDiverged(word.len()))
    }

    fn rewrite_once(&self, w: &mut Vec<u16>) -> bool {
        for i in 0..w.len() {
            if i + 1 < w.len() && w[i + 1] == self.inverses[w[i] as usize] {
                w.drain(i..i + 2);
                return true;
            }
            for (lhs, rhs) in &self.rules {
                if w[i..].starts_with(lhs) {
                    w.splice(i..i + lhs.len(), rhs.iter().copied());
                    return true;
                }
            }
        }
        false
    }
}

/// Cayley graph `g ~ g s` of a presented group, optionally augmented with
/// extra generator words.
#[derive(Clone, Debug)]
pub struct CayleyGraph {
    presentation: GroupPresentation,
    extras: Vec<Vec<u16>>,
    // generator words used for neighbors, in label order
    moves: Vec<Vec<u16>>,
    distinguished_end: bool,
    simple: bool,
    degree: u32,
}

/// Radius to which rewriting consistency is checked at construction.
pub const VALIDATION_RADIUS: usize = 8;

impl CayleyGraph {
    pub fn new(presentation: GroupPresentation) -> Result<Self> {
        Self::with_validation(presentation, VALIDATION_RADIUS)
    }

    pub fn with_validation(presentation: GroupPresentation, radius: usize) -> Result<Self> {
        presentation.check()?;
        let g = Self::assemble(presentation, Vec::new(), false)?;
        g.validate(radius)?;
        Ok(g)
    }

    /// Regular tree of degree `degree` with the end fixed by the ray
    /// `a0 a1 a0 a1 ...` singled out.
    pub(crate) fn tree(degree: usize, with_end: bool) -> Result<Self> {
        if degree < 2 {
            return Err(Error::InvalidSpec("tree degree must be at least 2".into()));
        }
        Self::assemble(GroupPresentation::involutions(degree), Vec::new(), with_end)
    }

    fn assemble(
        presentation: GroupPresentation,
        extras: Vec<Vec<u16>>,
        distinguished_end: bool,
    ) -> Result<Self> {
        let mut moves: Vec<Vec<u16>> = (0..presentation.generator_count() as u16)
            .map(|s| vec![s])
            .collect();
        for x in &extras {
            moves.push(x.clone());
            let inv = presentation.invert(x);
            if !presentation.normal_form(&[x.as_slice(), x.as_slice()].concat())?.is_empty() {
                moves.push(presentation.normal_form(&inv)?);
            }
        }
        let mut g = CayleyGraph {
            presentation,
            extras,
            moves,
            distinguished_end,
            simple: true,
            degree: 0,
        };
        let nb = g.neighbors(&VertexKey::identity())?;
        g.degree = nb.iter().map(|n| n.multiplicity).sum();
        g.simple = nb.len() == g.moves.len();
        Ok(g)
    }

    pub fn presentation(&self) -> &GroupPresentation {
        &self.presentation
    }

    pub fn extra_generators(&self) -> &[Vec<u16>] {
        &self.extras
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn is_simple(&self) -> bool {
        self.simple
    }

    pub fn has_distinguished_end(&self) -> bool {
        self.distinguished_end
    }

    /// Free product of cyclic groups with nothing but free cancellation.
    pub fn is_free(&self) -> bool {
        self.presentation.relators.is_empty()
            && self.presentation.rules.is_empty()
            && self.extras.is_empty()
    }

    pub fn validate_key(&self, v: &VertexKey) -> Result<()> {
        let bad = |reason: &str| Error::InvalidVertex {
            key: v.to_string(),
            reason: reason.into(),
        };
        match v {
            VertexKey::Word { letters } => {
                let n = self.presentation.generator_count();
                if letters.iter().any(|&l| l as usize >= n) {
                    return Err(bad("letter out of range"));
                }
                if self.presentation.normal_form(letters)? != *letters {
                    return Err(bad("word is not in normal form"));
                }
                Ok(())
            }
            _ => Err(bad("expected a word key")),
        }
    }

    fn product(&self, a: &[u16], b: &[u16]) -> Result<Vec<u16>> {
        let mut w = Vec::with_capacity(a.len() + b.len());
        w.extend_from_slice(a);
        w.extend_from_slice(b);
        self.presentation.normal_form(&w)
    }

    pub fn neighbors(&self, v: &VertexKey) -> Result<Vec<Neighbor>> {
        self.validate_key(v)?;
        let VertexKey::Word { letters } = v else {
            unreachable!()
        };
        let mut out: Vec<Neighbor> = Vec::with_capacity(self.moves.len());
        for m in &self.moves {
            let target = VertexKey::word(self.product(letters, m)?);
            if &target == v {
                return Err(Error::InvalidSpec(format!(
                    "generator word {m:?} is the identity"
                )));
            }
            match out.iter_mut().find(|n| n.target == target) {
                Some(n) => n.multiplicity += 1,
                None => out.push(Neighbor {
                    target,
                    label: out.len() as u32,
                    multiplicity: 1,
                }),
            }
        }
        Ok(out)
    }

    pub(crate) fn with_chord(&self, u: &VertexKey, w: &VertexKey) -> Result<Self> {
        let (VertexKey::Word { letters: a }, VertexKey::Word { letters: b }) = (u, w) else {
            unreachable!("keys validated by caller")
        };
        let x = self.product(&self.presentation.invert(a), b)?;
        let mut extras = self.extras.clone();
        extras.push(x);
        Self::assemble(self.presentation.clone(), extras, self.distinguished_end)
    }

    /// Checks on a ball that relators close up and generator inverses cancel.
    pub fn validate(&self, radius: usize) -> Result<()> {
        let mut seen = HashSet::new();
        let id = VertexKey::identity();
        seen.insert(id.clone());
        let mut queue = VecDeque::from([(id, 0usize)]);
        while let Some((v, d)) = queue.pop_front() {
            let VertexKey::Word { letters } = &v else {
                unreachable!()
            };
            for rel in &self.presentation.relators {
                if self.product(letters, rel)? != *letters {
                    return Err(Error::InvalidSpec(format!(
                        "relator {rel:?} does not close up at {v}: rewriting system is inconsistent"
                    )));
                }
            }
            for s in 0..self.presentation.generator_count() as u16 {
                let there = self.product(letters, &[s])?;
                let back = self.product(&there, &[self.presentation.inverses[s as usize]])?;
                if back != *letters {
                    return Err(Error::InvalidSpec(format!(
                        "generator {s} and its inverse do not cancel at {v}"
                    )));
                }
                if self.presentation.normal_form(&there)? != there {
                    return Err(Error::InvalidSpec(format!("normal form not idempotent at {v}")));
                }
                if d < radius {
                    let key = VertexKey::word(there);
                    if seen.insert(key.clone()) {
                        queue.push_back((key, d + 1));
                    }
                }
            }
        }
        Ok(())
    }

    /// Signed generation index relative to the distinguished end: the
    /// neighbor towards the end has level one less, the others one more.
    pub fn level(&self, letters: &[u16]) -> Result<i64> {
        if !self.distinguished_end {
            return Err(Error::InvalidAction("graph has no distinguished end".into()));
        }
        let common = letters
            .iter()
            .enumerate()
            .take_while(|&(i, &l)| l == (i % 2) as u16)
            .count();
        Ok(letters.len() as i64 - 2 * common as i64)
    }

    /// A vertex at the given level.
    pub fn level_representative(&self, level: i64) -> Vec<u16> {
        if level <= 0 {
            (0..(-level) as usize).map(|i| (i % 2) as u16).collect()
        } else {
            // a1 a0 a1 a0 ... leaves the end ray at the first letter
            (0..level as usize).map(|i| ((i + 1) % 2) as u16).collect()
        }
    }
}
