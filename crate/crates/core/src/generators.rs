//! Exact generators for the reference graph families.
//!
//! Node layouts are fixed so that generated graphs are reproducible
//! bit-for-bit; each family documents its layout.

use rand::Rng;

use crate::error::{Error, Result};
use crate::graph::{DiGraph, NodeId};

/// Undirected complete graph on `n` nodes.
pub fn complete(n: usize) -> Result<DiGraph> {
    if n == 0 {
        return Err(Error::invalid("complete graph needs n >= 1"));
    }
    let edges = (0..n).flat_map(|j| (j + 1..n).map(move |i| (j, i)));
    DiGraph::from_edges(n, false, edges)
}

/// Undirected star: center 0, leaves `1..n`.
pub fn star(n: usize) -> Result<DiGraph> {
    if n == 0 {
        return Err(Error::invalid("star needs n >= 1"));
    }
    DiGraph::from_edges(n, false, (1..n).map(|leaf| (0, leaf)))
}

/// Undirected path `0 - 1 - ... - n-1`.
pub fn path(n: usize) -> Result<DiGraph> {
    if n == 0 {
        return Err(Error::invalid("path needs n >= 1"));
    }
    DiGraph::from_edges(n, false, (1..n).map(|i| (i - 1, i)))
}

/// Directed path `0 -> 1 -> ... -> n-1`.
pub fn directed_path(n: usize) -> Result<DiGraph> {
    if n == 0 {
        return Err(Error::invalid("path needs n >= 1"));
    }
    DiGraph::from_edges(n, true, (1..n).map(|i| (i - 1, i)))
}

/// Node layout of [`prop1_graph`]: block A is `0..a_len`, block B follows.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Prop1Layout {
    pub a_len: usize,
    pub b_len: usize,
}

impl Prop1Layout {
    pub fn new(n: usize) -> Self {
        Prop1Layout {
            a_len: n / 2,
            b_len: n - n / 2,
        }
    }

    pub fn a(&self) -> impl Iterator<Item = NodeId> {
        0..self.a_len
    }

    pub fn b(&self) -> impl Iterator<Item = NodeId> {
        self.a_len..self.a_len + self.b_len
    }
}

/// Two cliques of `floor(n/2)` and `ceil(n/2)` nodes joined by circulant
/// cross edges: `a_i` is joined to `b_i, ..., b_{i+f-1}` (indices modulo
/// `|B|`). Every A-node gets exactly `f` B-neighbors; every B-node gets at
/// most `f` A-neighbors (exactly `f` when `n` is even).
///
/// The vertex connectivity is `floor(n/2) + f - 1`, yet W-MSR with
/// parameter `2f` freezes when A and B start at different values.
pub fn prop1_graph(n: usize, f: usize) -> Result<DiGraph> {
    if f == 0 {
        return Err(Error::invalid("prop1 graph needs f >= 1"));
    }
    if n < 2 * f + 2 {
        return Err(Error::invalid(format!(
            "prop1 graph needs n >= 2f + 2 (n = {n}, f = {f})"
        )));
    }
    let layout = Prop1Layout::new(n);
    let mut edges = Vec::new();
    for block in [layout.a().collect::<Vec<_>>(), layout.b().collect()] {
        for (k, &u) in block.iter().enumerate() {
            edges.extend(block[k + 1..].iter().map(|&v| (u, v)));
        }
    }
    for i in 0..layout.a_len {
        for k in 0..f {
            let b = layout.a_len + (i + k) % layout.b_len;
            edges.push((i, b));
        }
    }
    DiGraph::from_edges(n, false, edges)
}

/// Node layout of [`fig1_tight_graph`]: `S1 = 0..2f`, `S2a = 2f..4f`,
/// `S2b = 4f..6f`, `S3 = 6f..8f`, then `a = 8f` and `b = 8f + 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Fig1Layout {
    pub f: usize,
    pub a: NodeId,
    pub b: NodeId,
}

impl Fig1Layout {
    pub fn new(f: usize) -> Self {
        Fig1Layout {
            f,
            a: 8 * f,
            b: 8 * f + 1,
        }
    }

    pub fn n(&self) -> usize {
        8 * self.f + 2
    }

    pub fn s1(&self) -> std::ops::Range<NodeId> {
        0..2 * self.f
    }

    pub fn s2a(&self) -> std::ops::Range<NodeId> {
        2 * self.f..4 * self.f
    }

    pub fn s2b(&self) -> std::ops::Range<NodeId> {
        4 * self.f..6 * self.f
    }

    pub fn s2(&self) -> std::ops::Range<NodeId> {
        2 * self.f..6 * self.f
    }

    pub fn s3(&self) -> std::ops::Range<NodeId> {
        6 * self.f..8 * self.f
    }
}

/// The `2f`-robust graph on which W-MSR with parameter `2f` can fail.
///
/// Cliques S1 (2f), S2 (4f) and S3 (2f); every S1-node is joined to all of
/// S2a, every S3-node to all of S2b. Node `a` has directed in-edges from all
/// of S1 and node `b` from all of S3; neither has out-edges.
pub fn fig1_tight_graph(f: usize) -> Result<DiGraph> {
    if f == 0 {
        return Err(Error::invalid("fig1 tight graph needs f >= 1"));
    }
    let layout = Fig1Layout::new(f);
    let mut undirected = Vec::new();
    for block in [layout.s1(), layout.s2(), layout.s3()] {
        for u in block.clone() {
            undirected.extend((u + 1..block.end).map(|v| (u, v)));
        }
    }
    for u in layout.s1() {
        undirected.extend(layout.s2a().map(|v| (u, v)));
    }
    for u in layout.s3() {
        undirected.extend(layout.s2b().map(|v| (u, v)));
    }
    let mut edges: Vec<(NodeId, NodeId)> = undirected
        .iter()
        .flat_map(|&(u, v)| [(u, v), (v, u)])
        .collect();
    edges.extend(layout.s1().map(|u| (u, layout.a)));
    edges.extend(layout.s3().map(|u| (u, layout.b)));
    DiGraph::from_edges(layout.n(), true, edges)
}

/// Label used for node `id` of [`prop4_graph`] in the published drawing
/// (labels run 1..=8).
pub fn prop4_label(id: NodeId) -> usize {
    id + 1
}

/// Node id carrying drawing label `label` (1..=8) in [`prop4_graph`].
pub fn prop4_node(label: usize) -> NodeId {
    assert!((1..=8).contains(&label), "prop4 labels are 1..=8");
    label - 1
}

/// Fixed 8-node undirected graph (labels 1..=8 map to ids 0..=7): a clique on
/// 1..5, node 6 ~ {2,3,4}, node 7 ~ {3,4,5}, node 8 ~ {3,4,6,7}.
///
/// Strongly 3-robust, yet `X(G) <= 2`.
pub fn prop4_graph() -> DiGraph {
    let mut edges = Vec::new();
    for u in 1..=5 {
        edges.extend((u + 1..=5).map(|v| (u, v)));
    }
    edges.extend([2, 3, 4].map(|v| (v, 6)));
    edges.extend([3, 4, 5].map(|v| (v, 7)));
    edges.extend([3, 4, 6, 7].map(|v| (v, 8)));
    DiGraph::from_edges(
        8,
        false,
        edges.into_iter().map(|(u, v)| (prop4_node(u), prop4_node(v))),
    )
    .expect("static prop4 edge list is valid")
}

/// Erdős–Rényi `G(n, p)`. Directed graphs draw each ordered pair
/// independently; undirected graphs draw each unordered pair.
pub fn gnp<R: Rng + ?Sized>(n: usize, p: f64, directed: bool, rng: &mut R) -> Result<DiGraph> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::invalid(format!("edge probability {p} outside [0, 1]")));
    }
    let mut edges = Vec::new();
    for j in 0..n {
        for i in 0..n {
            if i == j || (!directed && i < j) {
                continue;
            }
            if rng.gen_bool(p) {
                edges.push((j, i));
            }
        }
    }
    DiGraph::from_edges(n, directed, edges)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_families() {
        let k3 = complete(3).unwrap();
        assert_eq!(k3.n(), 3);
        assert_eq!(k3.edge_count(), 6);

        let s = star(4).unwrap();
        assert_eq!(s.in_degree(0), 3);
        assert!((1..4).all(|leaf| s.in_adj(leaf) == [0]));

        let k1 = complete(1).unwrap();
        assert_eq!(k1.n(), 1);
        assert_eq!(k1.edge_count(), 0);

        assert!(complete(0).is_err());
        assert!(star(0).is_err());
    }

    #[test]
    fn prop1_cross_edges() {
        let g = prop1_graph(10, 1).unwrap();
        let layout = Prop1Layout::new(10);
        for a in layout.a() {
            let cross = g.in_adj(a).iter().filter(|&&v| v >= layout.a_len).count();
            assert_eq!(cross, 1);
        }
        for b in layout.b() {
            let cross = g.in_adj(b).iter().filter(|&&v| v < layout.a_len).count();
            assert!(cross <= 1);
        }
        assert_eq!(g.min_in_degree(), 5);
    }

    #[test]
    fn prop1_odd_n_has_at_most_f_on_b_side() {
        for (n, f) in [(9, 2), (11, 3), (7, 1), (13, 2)] {
            let g = prop1_graph(n, f).unwrap();
            let layout = Prop1Layout::new(n);
            for a in layout.a() {
                let cross = g.in_adj(a).iter().filter(|&&v| v >= layout.a_len).count();
                assert_eq!(cross, f, "n={n} f={f}");
            }
            for b in layout.b() {
                let cross = g.in_adj(b).iter().filter(|&&v| v < layout.a_len).count();
                assert!(cross <= f, "n={n} f={f}");
            }
        }
    }

    #[test]
    fn prop1_min_degree_even_n() {
        for (n, f) in [(6, 1), (8, 2), (10, 1), (12, 3), (14, 2)] {
            let g = prop1_graph(n, f).unwrap();
            assert_eq!(g.min_in_degree(), n / 2 + f - 1, "n={n} f={f}");
        }
    }

    #[test]
    fn prop1_rejects_bad_parameters() {
        assert!(prop1_graph(3, 1).is_err());
        assert!(prop1_graph(10, 0).is_err());
        assert!(prop1_graph(4, 1).is_ok());
    }

    #[test]
    fn fig1_shape() {
        for f in 1..=3 {
            let g = fig1_tight_graph(f).unwrap();
            let l = Fig1Layout::new(f);
            assert_eq!(g.n(), 8 * f + 2);
            for node in [l.a, l.b] {
                assert_eq!(g.in_degree(node), 2 * f);
                assert_eq!(g.out_degree(node), 0);
            }
            assert_eq!(g.in_adj(l.b), l.s3().collect::<Vec<_>>());
        }
        assert!(fig1_tight_graph(0).is_err());
    }

    #[test]
    fn prop4_shape() {
        let g = prop4_graph();
        assert_eq!(g.n(), 8);
        assert_eq!(g.in_degree(prop4_node(8)), 4);
        let nbrs: Vec<usize> = g.in_adj(prop4_node(8)).iter().map(|&v| prop4_label(v)).collect();
        assert_eq!(nbrs, vec![3, 4, 6, 7]);
        assert_eq!(g.undirected_edges().count(), 10 + 3 + 3 + 4);
    }

    #[test]
    fn gnp_extremes() {
        let mut rng = rand::rngs::mock::StepRng::new(0, 1);
        let g = gnp(6, 1.0, false, &mut rng).unwrap();
        assert_eq!(g, complete(6).unwrap());
        let e = gnp(6, 0.0, true, &mut rng).unwrap();
        assert_eq!(e.edge_count(), 0);
        assert!(gnp(3, 1.5, true, &mut rng).is_err());
    }
}
