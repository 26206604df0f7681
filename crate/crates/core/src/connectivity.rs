//! Vertex connectivity via Menger's theorem: the minimum over non-adjacent
//! pairs of the number of internally vertex-disjoint paths, computed as a
//! unit-capacity max-flow on the split-node graph.

use std::collections::VecDeque;

use crate::error::{Error, Result};
use crate::exec::{self, Execution};
use crate::graph::{DiGraph, NodeId};

const INF: i32 = i32::MAX / 4;

/// Size of a minimum vertex cut of an undirected graph.
///
/// Complete graphs (no cut exists) return `n - 1`; disconnected graphs
/// return 0.
pub fn vertex_connectivity(g: &DiGraph) -> Result<usize> {
    vertex_connectivity_with(g, Execution::default())
}

pub fn vertex_connectivity_with(g: &DiGraph, exec: Execution) -> Result<usize> {
    if g.is_directed() {
        return Err(Error::RequiresUndirected);
    }
    let n = g.n();
    if n <= 1 {
        return Ok(0);
    }
    if !g.is_weakly_connected() {
        return Ok(0);
    }
    let pairs: Vec<(NodeId, NodeId)> = (0..n)
        .flat_map(|s| (s + 1..n).map(move |t| (s, t)))
        .filter(|&(s, t)| !g.has_edge(s, t))
        .collect();
    if pairs.is_empty() {
        return Ok(n - 1);
    }
    let flows = exec::map_slice(exec, &pairs, |&(s, t)| local_connectivity(g, s, t));
    Ok(flows.into_iter().min().unwrap_or(n - 1))
}

/// Maximum number of internally vertex-disjoint `s`-`t` paths for
/// non-adjacent `s`, `t`.
fn local_connectivity(g: &DiGraph, s: NodeId, t: NodeId) -> usize {
    let n = g.n();
    // node v -> (in = 2v, out = 2v + 1)
    let size = 2 * n;
    let mut cap = vec![vec![0i32; size]; size];
    for v in 0..n {
        cap[2 * v][2 * v + 1] = if v == s || v == t { INF } else { 1 };
    }
    for (u, v) in g.edges() {
        cap[2 * u + 1][2 * v] = INF;
    }
    let source = 2 * s + 1;
    let sink = 2 * t;
    let mut flow = 0;
    loop {
        let mut parent = vec![usize::MAX; size];
        parent[source] = source;
        let mut queue = VecDeque::from([source]);
        while let Some(u) = queue.pop_front() {
            if u == sink {
                break;
            }
            for v in 0..size {
                if parent[v] == usize::MAX && cap[u][v] > 0 {
                    parent[v] = u;
                    queue.push_back(v);
                }
            }
        }
        if parent[sink] == usize::MAX {
            return flow;
        }
        // Every augmenting path crosses at least one unit split arc, so the
        // bottleneck is always 1.
        let mut v = sink;
        while v != source {
            let u = parent[v];
            cap[u][v] -= 1;
            cap[v][u] += 1;
            v = u;
        }
        flow += 1;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{complete, path, prop1_graph, star};

    #[test]
    fn reference_values() {
        assert_eq!(vertex_connectivity(&complete(5).unwrap()).unwrap(), 4);
        assert_eq!(vertex_connectivity(&star(5).unwrap()).unwrap(), 1);
        assert_eq!(vertex_connectivity(&path(4).unwrap()).unwrap(), 1);
        assert_eq!(vertex_connectivity(&prop1_graph(10, 1).unwrap()).unwrap(), 5);
        assert_eq!(vertex_connectivity(&complete(1).unwrap()).unwrap(), 0);
    }

    #[test]
    fn disconnected_is_zero() {
        let g = complete(3).unwrap().disjoint_union(&complete(3).unwrap());
        assert_eq!(vertex_connectivity(&g).unwrap(), 0);
    }

    #[test]
    fn directed_input_is_rejected() {
        let g = DiGraph::from_edges(3, true, [(0, 1)]).unwrap();
        assert!(matches!(vertex_connectivity(&g), Err(Error::RequiresUndirected)));
    }

    #[test]
    fn prop1_connectivity_formula() {
        for (n, f) in [(6, 1), (8, 2), (10, 1), (10, 2), (12, 3), (9, 1), (11, 2)] {
            let g = prop1_graph(n, f).unwrap();
            assert_eq!(vertex_connectivity(&g).unwrap(), n / 2 + f - 1, "n={n} f={f}");
        }
    }
}
