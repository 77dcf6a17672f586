use std::collections::HashMap;

use petgraph::algo::is_isomorphic_matching;
use petgraph::graph::UnGraph;

use super::{GraphHandle, VertexKey};
use crate::error::Result;

/// Induced ball as a petgraph graph: node weight = distance from the root,
/// edge weight = multiplicity.
fn ball_graph(g: &GraphHandle, root: &VertexKey, radius: usize) -> Result<UnGraph<usize, u32>> {
    let layers = g.ball_layers(root, radius)?;
    let mut graph = UnGraph::new_undirected();
    let mut index = HashMap::new();
    for (d, layer) in layers.iter().enumerate() {
        for v in layer {
            index.insert(v.clone(), graph.add_node(d));
        }
    }
    for layer in &layers {
        for v in layer {
            let a = index[v];
            for nb in g.neighbors(v)? {
                if let Some(&b) = index.get(&nb.target) {
                    if a <= b {
                        graph.add_edge(a, b, nb.multiplicity);
                    }
                }
            }
        }
    }
    Ok(graph)
}

/// Whether the radius-`radius` balls around `a` in `ga` and `b` in `gb` are
/// isomorphic as rooted multigraphs.
pub fn balls_isomorphic(
    ga: &GraphHandle,
    a: &VertexKey,
    gb: &GraphHandle,
    b: &VertexKey,
    radius: usize,
) -> Result<bool> {
    let x = ball_graph(ga, a, radius)?;
    let y = ball_graph(gb, b, radius)?;
    if x.node_count() != y.node_count() || x.edge_count() != y.edge_count() {
        return Ok(false);
    }
    Ok(is_isomorphic_matching(&x, &y, |p, q| p == q, |p, q| p == q))
}
