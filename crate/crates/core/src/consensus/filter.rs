use std::cmp::Ordering;

use crate::graph::NodeId;

/// Result of the W-MSR trimming rule for one node at one step.
#[derive(Clone, Debug, PartialEq)]
pub struct Filtered {
    /// Neighbors whose values enter the update, in input order.
    pub kept: Vec<(NodeId, f64)>,
    /// Neighbors whose values were discarded, in input order.
    pub removed: Vec<NodeId>,
}

/// W-MSR trimming: among neighbor values strictly above `own`, drop the `f`
/// largest (all of them if fewer than `f`); likewise for values strictly
/// below. Values equal to `own` always stay. Among equal boundary values the
/// lowest node id goes first.
pub fn wmsr_filter(own: f64, neighbors: &[(NodeId, f64)], f: usize) -> Filtered {
    let mut above: Vec<usize> = (0..neighbors.len())
        .filter(|&k| neighbors[k].1.total_cmp(&own) == Ordering::Greater)
        .collect();
    let mut below: Vec<usize> = (0..neighbors.len())
        .filter(|&k| neighbors[k].1.total_cmp(&own) == Ordering::Less)
        .collect();
    above.sort_by(|&a, &b| {
        neighbors[b]
            .1
            .total_cmp(&neighbors[a].1)
            .then(neighbors[a].0.cmp(&neighbors[b].0))
    });
    below.sort_by(|&a, &b| {
        neighbors[a]
            .1
            .total_cmp(&neighbors[b].1)
            .then(neighbors[a].0.cmp(&neighbors[b].0))
    });
    let mut drop = vec![false; neighbors.len()];
    for &k in above.iter().take(f).chain(below.iter().take(f)) {
        drop[k] = true;
    }
    let mut kept = Vec::with_capacity(neighbors.len());
    let mut removed = Vec::new();
    for (k, &(node, value)) in neighbors.iter().enumerate() {
        if drop[k] {
            removed.push(node);
        } else {
            kept.push((node, value));
        }
    }
    Filtered { kept, removed }
}
