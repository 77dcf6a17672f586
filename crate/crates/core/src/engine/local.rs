use std::collections::HashMap;

use super::Adjacency;
use crate::error::Result;
use crate::graph::VertexKey;

/// A ball around a root, materialized with dense ids for fast search.
///
/// Vertices at the outer radius are kept but not expanded, so walks of
/// length up to `radius` from the root never leave the table.
pub(crate) struct LocalGraph {
    pub keys: Vec<VertexKey>,
    index: HashMap<VertexKey, u32>,
    offsets: Vec<u32>,
    // (target, multiplicity), loops excluded
    edges: Vec<(u32, u32)>,
    pub loops: Vec<u32>,
    pub radius: usize,
}

impl LocalGraph {
    /// Grows the ball layer by layer; stops early (with a smaller radius)
    /// once the next layer would exceed `max_vertices`.
    pub fn build<A: Adjacency + ?Sized>(
        adj: &A,
        root: &VertexKey,
        radius: usize,
        max_vertices: usize,
    ) -> Result<LocalGraph> {
        let mut index: HashMap<VertexKey, u32> = HashMap::new();
        let mut keys = vec![root.clone()];
        index.insert(root.clone(), 0);
        let mut lists: Vec<Vec<(u32, u32)>> = Vec::new();
        let mut loops = Vec::new();
        let mut layer_start = 0usize;
        let mut reached = 0usize;
        while reached < radius {
            let layer_end = keys.len();
            let mut new_keys = Vec::new();
            let mut new_lists = Vec::new();
            let mut new_loops = Vec::new();
            let mut fresh: HashMap<VertexKey, u32> = HashMap::new();
            for v in layer_start..layer_end {
                let mut list = Vec::new();
                let mut self_loops = 0;
                for (w, mult) in adj.adjacent(&keys[v])? {
                    if w == keys[v] {
                        self_loops += mult;
                        continue;
                    }
                    let id = match index.get(&w).or_else(|| fresh.get(&w)) {
                        Some(&id) => id,
                        None => {
                            let id = (layer_end + new_keys.len()) as u32;
                            fresh.insert(w.clone(), id);
                            new_keys.push(w);
                            id
                        }
                    };
                    list.push((id, mult));
                }
                new_lists.push(list);
                new_loops.push(self_loops);
            }
            if layer_end + new_keys.len() > max_vertices {
                break;
            }
            lists.extend(new_lists);
            loops.extend(new_loops);
            reached += 1;
            keys.extend(new_keys);
            index.extend(fresh);
            layer_start = layer_end;
        }
        // outer layer: not expanded
        lists.resize(keys.len(), Vec::new());
        loops.resize(keys.len(), 0);
        let mut offsets = Vec::with_capacity(keys.len() + 1);
        let mut edges = Vec::new();
        offsets.push(0);
        for list in lists {
            edges.extend(list);
            offsets.push(edges.len() as u32);
        }
        Ok(LocalGraph {
            keys,
            index,
            offsets,
            edges,
            loops,
            radius: reached,
        })
    }

    pub fn len(&self) -> usize {
        self.keys.len()
    }

    /// Non-loop out-edges of `v` as (target, multiplicity).
    #[inline]
    pub fn out(&self, v: u32) -> &[(u32, u32)] {
        let v = v as usize;
        &self.edges[self.offsets[v] as usize..self.offsets[v + 1] as usize]
    }

    pub fn id_of(&self, key: &VertexKey) -> Option<u32> {
        self.index.get(key).copied()
    }
}
