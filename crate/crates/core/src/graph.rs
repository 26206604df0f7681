//! Influence graphs and node sets.
//!
//! An edge `(j, i)` means node `i` hears node `j`: `j` is an in-neighbor of
//! `i`. Undirected graphs are stored as the symmetric closure of their edges,
//! so every query below works on in-neighborhoods regardless of the flag.

use std::collections::{BTreeSet, VecDeque};

use crate::error::{Error, Result};

pub type NodeId = usize;

/// A set of node ids.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct NodeSet(BTreeSet<NodeId>);

impl NodeSet {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_mask(mask: u64) -> Self {
        let mut set = BTreeSet::new();
        let mut m = mask;
        while m != 0 {
            let bit = m.trailing_zeros() as usize;
            set.insert(bit);
            m &= m - 1;
        }
        NodeSet(set)
    }

    /// Bitmask form; every member must be below 64.
    pub fn to_mask(&self) -> u64 {
        self.0.iter().fold(0u64, |acc, &v| {
            debug_assert!(v < 64);
            acc | (1u64 << v)
        })
    }

    pub fn insert(&mut self, node: NodeId) -> bool {
        self.0.insert(node)
    }

    pub fn contains(&self, node: NodeId) -> bool {
        self.0.contains(&node)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = NodeId> + '_ {
        self.0.iter().copied()
    }

    pub fn max(&self) -> Option<NodeId> {
        self.0.last().copied()
    }

    /// Fails if any member is not a node of a graph with `n` nodes.
    pub fn check_within(&self, n: usize) -> Result<()> {
        match self.max() {
            Some(node) if node >= n => Err(Error::NodeOutOfRange { node, n }),
            _ => Ok(()),
        }
    }

    pub fn to_vec(&self) -> Vec<NodeId> {
        self.0.iter().copied().collect()
    }
}

impl FromIterator<NodeId> for NodeSet {
    fn from_iter<I: IntoIterator<Item = NodeId>>(iter: I) -> Self {
        NodeSet(iter.into_iter().collect())
    }
}

impl<'a> IntoIterator for &'a NodeSet {
    type Item = &'a NodeId;
    type IntoIter = std::collections::btree_set::Iter<'a, NodeId>;

    fn into_iter(self) -> Self::IntoIter {
        self.0.iter()
    }
}

/// Directed influence graph on nodes `0..n`. Immutable once built.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiGraph {
    n: usize,
    directed: bool,
    edges: BTreeSet<(NodeId, NodeId)>,
    in_adj: Vec<Vec<NodeId>>,
    out_adj: Vec<Vec<NodeId>>,
}

impl DiGraph {
    /// Graph with `n` nodes and no edges.
    pub fn empty(n: usize, directed: bool) -> Self {
        DiGraph {
            n,
            directed,
            edges: BTreeSet::new(),
            in_adj: vec![Vec::new(); n],
            out_adj: vec![Vec::new(); n],
        }
    }

    /// Builds a graph from `(j, i)` pairs. For undirected graphs each pair is
    /// added in both orientations; duplicates collapse.
    pub fn from_edges<I>(n: usize, directed: bool, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (NodeId, NodeId)>,
    {
        let mut set = BTreeSet::new();
        for (j, i) in edges {
            for node in [j, i] {
                if node >= n {
                    return Err(Error::NodeOutOfRange { node, n });
                }
            }
            if j == i {
                return Err(Error::SelfLoop(j));
            }
            set.insert((j, i));
            if !directed {
                set.insert((i, j));
            }
        }
        Ok(Self::from_edge_set(n, directed, set))
    }

    fn from_edge_set(n: usize, directed: bool, edges: BTreeSet<(NodeId, NodeId)>) -> Self {
        let mut in_adj = vec![Vec::new(); n];
        let mut out_adj = vec![Vec::new(); n];
        // BTreeSet order keeps both adjacency lists sorted.
        for &(j, i) in &edges {
            out_adj[j].push(i);
        }
        for &(j, i) in &edges {
            in_adj[i].push(j);
        }
        for list in &mut in_adj {
            list.sort_unstable();
        }
        DiGraph {
            n,
            directed,
            edges,
            in_adj,
            out_adj,
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn is_directed(&self) -> bool {
        self.directed
    }

    /// All stored `(j, i)` records; undirected edges appear twice.
    pub fn edges(&self) -> impl Iterator<Item = (NodeId, NodeId)> + '_ {
        self.edges.iter().copied()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Undirected edges listed once as `(low, high)`. Only meaningful when
    /// the graph is undirected.
    pub fn undirected_edges(&self) -> impl Iterator<Item = (NodeId, NodeId)> + '_ {
        self.edges.iter().copied().filter(|&(j, i)| j < i)
    }

    pub fn has_edge(&self, from: NodeId, to: NodeId) -> bool {
        self.edges.contains(&(from, to))
    }

    fn check_node(&self, node: NodeId) -> Result<()> {
        if node < self.n {
            Ok(())
        } else {
            Err(Error::NodeOutOfRange { node, n: self.n })
        }
    }

    /// Nodes that node `i` hears from.
    pub fn in_neighbors(&self, i: NodeId) -> Result<NodeSet> {
        self.check_node(i)?;
        Ok(self.in_adj[i].iter().copied().collect())
    }

    /// Sorted in-neighbor slice. Panics on an out-of-range node.
    pub fn in_adj(&self, i: NodeId) -> &[NodeId] {
        &self.in_adj[i]
    }

    /// Sorted out-neighbor slice. Panics on an out-of-range node.
    pub fn out_adj(&self, j: NodeId) -> &[NodeId] {
        &self.out_adj[j]
    }

    pub fn in_degree(&self, i: NodeId) -> usize {
        self.in_adj[i].len()
    }

    pub fn out_degree(&self, i: NodeId) -> usize {
        self.out_adj[i].len()
    }

    /// Minimum in-degree; 0 for the empty graph.
    pub fn min_in_degree(&self) -> usize {
        self.in_adj.iter().map(Vec::len).min().unwrap_or(0)
    }

    /// In-neighborhoods as bitmasks. Requires `n <= 64`.
    pub fn in_masks(&self) -> Result<Vec<u64>> {
        if self.n > 64 {
            return Err(Error::TooLarge {
                what: "bitmask view",
                n: self.n,
                limit: 64,
            });
        }
        Ok(self
            .in_adj
            .iter()
            .map(|list| list.iter().fold(0u64, |m, &j| m | (1u64 << j)))
            .collect())
    }

    /// Copy of the graph with the given `(j, i)` records dropped. The result
    /// is flagged directed unless the removal keeps the edge set symmetric.
    pub fn without_edges(&self, removed: &[(NodeId, NodeId)]) -> DiGraph {
        let mut edges = self.edges.clone();
        for e in removed {
            edges.remove(e);
        }
        let symmetric = edges.iter().all(|&(j, i)| edges.contains(&(i, j)));
        Self::from_edge_set(self.n, self.directed || !symmetric, edges)
    }

    /// Copy of the graph extended by `extra` isolated nodes.
    pub fn with_extra_nodes(&self, extra: usize) -> DiGraph {
        Self::from_edge_set(self.n + extra, self.directed, self.edges.clone())
    }

    /// Copy of the graph with additional `(j, i)` records. Respects the
    /// undirected flag of `self` unless `force_directed` is set.
    pub fn with_edges<I>(&self, extra: I, force_directed: bool) -> Result<DiGraph>
    where
        I: IntoIterator<Item = (NodeId, NodeId)>,
    {
        let directed = self.directed || force_directed;
        let mut edges = self.edges.clone();
        for (j, i) in extra {
            self.check_node(j)?;
            self.check_node(i)?;
            if j == i {
                return Err(Error::SelfLoop(j));
            }
            edges.insert((j, i));
            if !directed {
                edges.insert((i, j));
            }
        }
        Ok(Self::from_edge_set(self.n, directed, edges))
    }

    /// Disjoint union; nodes of `other` are shifted by `self.n()`.
    pub fn disjoint_union(&self, other: &DiGraph) -> DiGraph {
        let offset = self.n;
        let edges = self
            .edges
            .iter()
            .copied()
            .chain(other.edges.iter().map(|&(j, i)| (j + offset, i + offset)))
            .collect();
        Self::from_edge_set(
            self.n + other.n,
            self.directed || other.directed,
            edges,
        )
    }

    /// True when every node reaches every other ignoring edge direction.
    /// The empty graph and single nodes count as connected.
    pub fn is_weakly_connected(&self) -> bool {
        if self.n <= 1 {
            return true;
        }
        let mut seen = vec![false; self.n];
        let mut queue = VecDeque::from([0]);
        seen[0] = true;
        let mut count = 1;
        while let Some(v) = queue.pop_front() {
            for &u in self.in_adj[v].iter().chain(self.out_adj[v].iter()) {
                if !seen[u] {
                    seen[u] = true;
                    count += 1;
                    queue.push_back(u);
                }
            }
        }
        count == self.n
    }

    /// Hop distances from `source` following out-edges; `None` if unreachable.
    pub fn bfs_distances(&self, source: NodeId) -> Result<Vec<Option<usize>>> {
        self.check_node(source)?;
        let mut dist = vec![None; self.n];
        dist[source] = Some(0);
        let mut queue = VecDeque::from([source]);
        while let Some(v) = queue.pop_front() {
            let d = dist[v].unwrap_or(0);
            for &u in &self.out_adj[v] {
                if dist[u].is_none() {
                    dist[u] = Some(d + 1);
                    queue.push_back(u);
                }
            }
        }
        Ok(dist)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{complete, fig1_tight_graph, Fig1Layout};

    #[test]
    fn complete_graph_in_neighbors() {
        let k5 = complete(5).unwrap();
        let nbrs = k5.in_neighbors(0).unwrap();
        assert_eq!(nbrs.to_vec(), vec![1, 2, 3, 4]);
    }

    #[test]
    fn fig1_node_a_hears_only_s1() {
        let g = fig1_tight_graph(1).unwrap();
        let layout = Fig1Layout::new(1);
        let nbrs = g.in_neighbors(layout.a).unwrap();
        assert_eq!(nbrs.to_vec(), layout.s1().collect::<Vec<_>>());
        assert_eq!(nbrs.len(), 2);
    }

    #[test]
    fn isolated_nodes_have_no_neighbors() {
        let g = DiGraph::empty(2, false);
        assert!(g.in_neighbors(0).unwrap().is_empty());
    }

    #[test]
    fn out_of_range_node_is_rejected() {
        let g = DiGraph::empty(2, false);
        assert!(matches!(
            g.in_neighbors(2),
            Err(Error::NodeOutOfRange { node: 2, n: 2 })
        ));
        assert!(DiGraph::from_edges(2, true, [(0, 5)]).is_err());
    }

    #[test]
    fn self_loops_are_rejected() {
        assert!(matches!(
            DiGraph::from_edges(3, false, [(1, 1)]),
            Err(Error::SelfLoop(1))
        ));
    }

    #[test]
    fn undirected_storage_is_symmetric() {
        let g = DiGraph::from_edges(3, false, [(0, 1), (2, 1)]).unwrap();
        for (j, i) in g.edges() {
            assert!(g.has_edge(i, j));
        }
        assert_eq!(g.edge_count(), 4);
        assert_eq!(g.undirected_edges().collect::<Vec<_>>(), vec![(0, 1), (1, 2)]);
    }

    #[test]
    fn removing_one_orientation_makes_graph_directed() {
        let g = complete(3).unwrap();
        let h = g.without_edges(&[(0, 1)]);
        assert!(h.is_directed());
        assert!(!h.has_edge(0, 1));
        assert!(h.has_edge(1, 0));
        assert!(!g.is_directed());
    }

    #[test]
    fn node_set_mask_round_trip() {
        let s: NodeSet = [0, 3, 7].into_iter().collect();
        assert_eq!(s.to_mask(), 0b1000_1001);
        assert_eq!(NodeSet::from_mask(s.to_mask()), s);
    }
}
