//! Incremental construction of r-robust graphs.
//!
//! Adding a node that hears at least `r` existing nodes preserves
//! r-robustness, so growing from an r-robust seed (for example `K_{2r-1}`,
//! the smallest complete r-robust graph) yields r-robust graphs of any size.
//! Choosing the attachments with probability proportional to degree gives
//! the preferential-attachment model of scale-free networks.

use rand::distributions::{Distribution, WeightedIndex};
use rand::seq::index;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{DiGraph, NodeId, NodeSet};

/// How a new node is wired to its chosen neighbors.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Link {
    /// Undirected edges (both orientations).
    #[default]
    Undirected,
    /// Only edges from the chosen nodes into the new node. The result is a
    /// directed graph.
    Incoming,
}

/// Returns `g` plus node `g.n()` joined to `neighbors`.
pub fn add_node(g: &DiGraph, neighbors: &NodeSet, link: Link) -> Result<DiGraph> {
    if neighbors.is_empty() {
        return Err(Error::EmptySet);
    }
    neighbors.check_within(g.n())?;
    let new = g.n();
    let grown = g.with_extra_nodes(1);
    grown.with_edges(neighbors.iter().map(|j| (j, new)), link == Link::Incoming)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum AttachMode {
    /// `r` distinct existing nodes, uniformly at random.
    Uniform,
    /// `r` distinct existing nodes drawn one after another with probability
    /// proportional to current degree (undirected) or in+out degree
    /// (directed), without replacement.
    PreferentialAttachment,
    /// Neighbor lists for the added nodes, in order.
    ExplicitList { lists: Vec<Vec<NodeId>> },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GrowthPolicy {
    pub r: usize,
    pub mode: AttachMode,
    pub seed: u64,
    #[serde(default)]
    pub link: Link,
}

impl GrowthPolicy {
    pub fn new(r: usize, mode: AttachMode, seed: u64) -> Self {
        GrowthPolicy {
            r,
            mode,
            seed,
            link: Link::Undirected,
        }
    }
}

/// Degree weights used by preferential attachment.
pub fn attachment_weights(g: &DiGraph) -> Vec<f64> {
    (0..g.n())
        .map(|v| {
            let deg = if g.is_directed() {
                g.in_degree(v) + g.out_degree(v)
            } else {
                g.in_degree(v)
            };
            deg as f64
        })
        .collect()
}

/// Draws `r` distinct nodes of `g` with probability proportional to degree,
/// sequentially without replacement. When every remaining candidate has
/// zero degree the draw falls back to uniform among them.
pub fn preferential_sample<R: Rng + ?Sized>(g: &DiGraph, r: usize, rng: &mut R) -> Result<Vec<NodeId>> {
    if r > g.n() {
        return Err(Error::invalid(format!(
            "cannot attach to {r} distinct nodes of a {}-node graph",
            g.n()
        )));
    }
    let mut weights = attachment_weights(g);
    let mut chosen = Vec::with_capacity(r);
    for _ in 0..r {
        let pick = if weights.iter().any(|&w| w > 0.0) {
            WeightedIndex::new(&weights)
                .map_err(|e| Error::invalid(e.to_string()))?
                .sample(rng)
        } else {
            let open: Vec<NodeId> = (0..g.n()).filter(|v| !chosen.contains(v)).collect();
            open[rng.gen_range(0..open.len())]
        };
        weights[pick] = 0.0;
        chosen.push(pick);
    }
    Ok(chosen)
}

/// Every graph of the growth sequence, starting with the seed graph and
/// ending with `target_n` nodes. Deterministic in `(seed_graph, policy,
/// target_n)`.
pub fn grow_trace(seed_graph: &DiGraph, policy: &GrowthPolicy, target_n: usize) -> Result<Vec<DiGraph>> {
    if policy.r == 0 {
        return Err(Error::invalid("growth needs r >= 1"));
    }
    if target_n < seed_graph.n() {
        return Err(Error::invalid(format!(
            "target size {target_n} is below the seed size {}",
            seed_graph.n()
        )));
    }
    let additions = target_n - seed_graph.n();
    if let AttachMode::ExplicitList { lists } = &policy.mode {
        if lists.len() < additions {
            return Err(Error::invalid(format!(
                "explicit attachment lists cover {} of {additions} new nodes",
                lists.len()
            )));
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(policy.seed);
    let mut trace = Vec::with_capacity(additions + 1);
    trace.push(seed_graph.clone());
    for step in 0..additions {
        let g = trace.last().expect("trace starts with the seed");
        if policy.r > g.n() {
            return Err(Error::invalid(format!(
                "r = {} exceeds the {} existing nodes at growth step {step}",
                policy.r,
                g.n()
            )));
        }
        let neighbors: NodeSet = match &policy.mode {
            AttachMode::Uniform => index::sample(&mut rng, g.n(), policy.r).into_iter().collect(),
            AttachMode::PreferentialAttachment => preferential_sample(g, policy.r, &mut rng)?.into_iter().collect(),
            AttachMode::ExplicitList { lists } => {
                let set: NodeSet = lists[step].iter().copied().collect();
                if set.len() < policy.r {
                    return Err(Error::invalid(format!(
                        "explicit list for growth step {step} names {} distinct nodes, r = {}",
                        set.len(),
                        policy.r
                    )));
                }
                set
            }
        };
        let next = add_node(g, &neighbors, policy.link)?;
        trace.push(next);
    }
    Ok(trace)
}

/// Final graph of [`grow_trace`].
pub fn grow(seed_graph: &DiGraph, policy: &GrowthPolicy, target_n: usize) -> Result<DiGraph> {
    Ok(grow_trace(seed_graph, policy, target_n)?
        .pop()
        .expect("trace is never empty"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::complete;
    use crate::robustness::{has_spanning_tree, is_r_robust, max_robustness};

    fn set(nodes: &[usize]) -> NodeSet {
        nodes.iter().copied().collect()
    }

    #[test]
    fn add_node_examples() {
        let k5 = complete(5).unwrap();
        let g = add_node(&k5, &set(&[0, 2, 4]), Link::Undirected).unwrap();
        assert_eq!(g.n(), 6);
        assert!(max_robustness(&g).unwrap() >= 3);
        assert_eq!(k5.n(), 5);

        let weak = add_node(&k5, &set(&[0, 1]), Link::Undirected).unwrap();
        assert!(!is_r_robust(&weak, 3).unwrap());

        let tri = add_node(&complete(3).unwrap(), &set(&[1]), Link::Undirected).unwrap();
        assert!(is_r_robust(&tri, 1).unwrap());
    }

    #[test]
    fn incoming_link_is_directed() {
        let g = add_node(&complete(3).unwrap(), &set(&[0, 1]), Link::Incoming).unwrap();
        assert!(g.is_directed());
        assert_eq!(g.in_degree(3), 2);
        assert_eq!(g.out_degree(3), 0);
    }

    #[test]
    fn add_node_errors() {
        let k3 = complete(3).unwrap();
        assert!(matches!(add_node(&k3, &NodeSet::new(), Link::Undirected), Err(Error::EmptySet)));
        assert!(matches!(
            add_node(&k3, &set(&[7]), Link::Undirected),
            Err(Error::NodeOutOfRange { node: 7, .. })
        ));
    }

    #[test]
    fn grow_examples() {
        let g = grow(&complete(5).unwrap(), &GrowthPolicy::new(3, AttachMode::Uniform, 1), 10).unwrap();
        assert_eq!(g.n(), 10);
        assert!(is_r_robust(&g, 3).unwrap());

        let pa = grow(
            &complete(3).unwrap(),
            &GrowthPolicy::new(1, AttachMode::PreferentialAttachment, 9),
            12,
        )
        .unwrap();
        assert!(has_spanning_tree(&pa));

        let k4 = complete(4).unwrap();
        assert_eq!(grow(&k4, &GrowthPolicy::new(2, AttachMode::Uniform, 0), 4).unwrap(), k4);
    }

    #[test]
    fn grow_errors() {
        let k3 = complete(3).unwrap();
        assert!(grow(&k3, &GrowthPolicy::new(2, AttachMode::Uniform, 0), 2).is_err());
        assert!(grow(&k3, &GrowthPolicy::new(4, AttachMode::Uniform, 0), 6).is_err());
        assert!(grow(&k3, &GrowthPolicy::new(0, AttachMode::Uniform, 0), 6).is_err());
        let short = AttachMode::ExplicitList { lists: vec![vec![0, 1]] };
        assert!(grow(&k3, &GrowthPolicy::new(2, short, 0), 5).is_err());
        let thin = AttachMode::ExplicitList { lists: vec![vec![0, 0]] };
        assert!(grow(&k3, &GrowthPolicy::new(2, thin, 0), 4).is_err());
    }

    #[test]
    fn explicit_lists_are_followed() {
        let mode = AttachMode::ExplicitList {
            lists: vec![vec![0, 1], vec![2, 3]],
        };
        let g = grow(&complete(3).unwrap(), &GrowthPolicy::new(2, mode, 0), 5).unwrap();
        assert_eq!(g.in_adj(3), [0, 1, 4]);
        assert_eq!(g.in_adj(4), [2, 3]);
    }

    #[test]
    fn growth_is_deterministic() {
        let seed = complete(4).unwrap();
        for mode in [AttachMode::Uniform, AttachMode::PreferentialAttachment] {
            let policy = GrowthPolicy::new(2, mode, 77);
            assert_eq!(grow(&seed, &policy, 15).unwrap(), grow(&seed, &policy, 15).unwrap());
        }
    }

    #[test]
    fn zero_degree_candidates_fall_back_to_uniform() {
        let g = DiGraph::empty(3, false);
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let mut picks = preferential_sample(&g, 3, &mut rng).unwrap();
        picks.sort_unstable();
        assert_eq!(picks, vec![0, 1, 2]);
    }
}
