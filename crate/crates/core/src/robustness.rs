//! Exact checkers for reachability, robustness and locality properties.
//!
//! The exhaustive checkers work on bitmask subsets. For every subset `S` they
//! compute its *reach level*, `max_{i in S} |V_i \ S|`: `S` is r-reachable
//! exactly when its level is at least `r`. Questions about pairs of disjoint
//! subsets are then answered with one submask-fold over the `2^n` table
//! instead of walking all `3^n` ordered pairs.

use serde::{Deserialize, Serialize};

use crate::connectivity::vertex_connectivity_with;
use crate::error::{Error, Result};
use crate::exec::{self, CheckOptions};
use crate::extended::Extended;
use crate::graph::{DiGraph, NodeSet};

/// `true` iff some member of `s` has at least `r` in-neighbors outside `s`.
pub fn is_r_reachable(g: &DiGraph, s: &NodeSet, r: usize) -> Result<bool> {
    if s.is_empty() {
        return Err(Error::EmptySet);
    }
    if r == 0 {
        return Err(Error::invalid("reachability needs r >= 1"));
    }
    s.check_within(g.n())?;
    Ok(s.iter().any(|i| {
        g.in_adj(i).iter().filter(|&&j| !s.contains(j)).count() >= r
    }))
}

/// `true` iff every node outside `s` has at most `f` in-neighbors in `s`.
/// Members of `s` that are not nodes of `g` are ignored.
pub fn is_f_local(g: &DiGraph, s: &NodeSet, f: usize) -> bool {
    (0..g.n())
        .filter(|&i| !s.contains(i))
        .all(|i| g.in_adj(i).iter().filter(|&&j| s.contains(j)).count() <= f)
}

/// `true` iff some node reaches every node along influence edges.
pub fn has_spanning_tree(g: &DiGraph) -> bool {
    let n = g.n();
    if n == 0 {
        return true;
    }
    (0..n).any(|root| {
        g.bfs_distances(root)
            .map(|d| d.iter().all(Option::is_some))
            .unwrap_or(false)
    })
}

fn guard(g: &DiGraph, opts: &CheckOptions, what: &'static str) -> Result<Vec<u64>> {
    if g.n() > opts.max_n {
        return Err(Error::TooLarge {
            what,
            n: g.n(),
            limit: opts.max_n,
        });
    }
    g.in_masks()
}

fn full_mask(n: usize) -> u64 {
    if n == 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

fn reach_level(in_masks: &[u64], s: u64) -> u8 {
    let mut best = 0u32;
    let mut m = s;
    while m != 0 {
        let i = m.trailing_zeros() as usize;
        best = best.max((in_masks[i] & !s).count_ones());
        m &= m - 1;
    }
    best as u8
}

/// Reach level of every subset, indexed by mask.
fn level_table(in_masks: &[u64], opts: &CheckOptions) -> Vec<u8> {
    let n = in_masks.len();
    exec::map_range(opts.exec, 0..1u64 << n, |s| reach_level(in_masks, s))
}

/// Exhaustive r-robustness test.
pub fn is_r_robust(g: &DiGraph, r: usize) -> Result<bool> {
    is_r_robust_with(g, r, &CheckOptions::default())
}

pub fn is_r_robust_with(g: &DiGraph, r: usize, opts: &CheckOptions) -> Result<bool> {
    if r == 0 {
        return Err(Error::invalid("robustness needs r >= 1"));
    }
    let masks = guard(g, opts, "r-robustness check")?;
    let n = g.n();
    let levels = level_table(&masks, opts);
    let stuck = |s: u64| s != 0 && (levels[s as usize] as usize) < r;
    // has_stuck[m]: some nonempty submask of m is not r-reachable
    let mut has_stuck: Vec<bool> = exec::map_range(opts.exec, 0..1u64 << n, stuck);
    exec::fold_submasks(opts.exec, &mut has_stuck, n, |a, b| a || b);
    let full = full_mask(n);
    let violated = exec::reduce_range(
        opts.exec,
        0..1u64 << n,
        false,
        |s| stuck(s) && has_stuck[(full ^ s) as usize],
        |a, b| a || b,
    );
    Ok(!violated)
}

/// Largest `r` for which the graph is r-robust; 0 if it is not even
/// 1-robust. Graphs with fewer than two nodes have no disjoint pair and
/// report 0 by convention.
pub fn max_robustness(g: &DiGraph) -> Result<usize> {
    max_robustness_with(g, &CheckOptions::default())
}

pub fn max_robustness_with(g: &DiGraph, opts: &CheckOptions) -> Result<usize> {
    let masks = guard(g, opts, "robustness computation")?;
    let n = g.n();
    if n < 2 {
        return Ok(0);
    }
    let levels = level_table(&masks, opts);
    // min_level[m]: smallest level of a nonempty submask of m
    let mut min_level: Vec<u8> = exec::map_range(opts.exec, 0..1u64 << n, |s| {
        if s == 0 {
            u8::MAX
        } else {
            levels[s as usize]
        }
    });
    exec::fold_submasks(opts.exec, &mut min_level, n, u8::min);
    let full = full_mask(n);
    let best = exec::reduce_range(
        opts.exec,
        1..full,
        u8::MAX,
        |s| levels[s as usize].max(min_level[(full ^ s) as usize]),
        u8::min,
    );
    Ok(best as usize)
}

/// A pair of nonempty disjoint subsets, neither of which is r-reachable,
/// or `None` when the graph is r-robust.
///
/// Among all such pairs the one with the largest combined size is returned;
/// ties go to the smaller first-set mask, then the smaller second-set mask,
/// and the first set is always the one with the smaller mask.
pub fn non_robust_witness(g: &DiGraph, r: usize) -> Result<Option<(NodeSet, NodeSet)>> {
    non_robust_witness_with(g, r, &CheckOptions::default())
}

pub fn non_robust_witness_with(
    g: &DiGraph,
    r: usize,
    opts: &CheckOptions,
) -> Result<Option<(NodeSet, NodeSet)>> {
    if r == 0 {
        return Err(Error::invalid("robustness needs r >= 1"));
    }
    let masks = guard(g, opts, "robustness witness search")?;
    let n = g.n();
    let levels = level_table(&masks, opts);
    let stuck = |s: u64| s != 0 && (levels[s as usize] as usize) < r;
    // largest stuck submask; 0 means none
    let mut largest: Vec<u64> = exec::map_range(opts.exec, 0..1u64 << n, |s| if stuck(s) { s } else { 0 });
    exec::fold_submasks(opts.exec, &mut largest, n, better_subset);
    let full = full_mask(n);
    let best = exec::reduce_range(
        opts.exec,
        0..1u64 << n,
        None,
        |s| {
            let other = largest[(full ^ s) as usize];
            (stuck(s) && other != 0).then_some((s.min(other), s.max(other)))
        },
        better_pair,
    );
    Ok(best.map(|(a, b)| (NodeSet::from_mask(a), NodeSet::from_mask(b))))
}

fn better_subset(a: u64, b: u64) -> u64 {
    match a.count_ones().cmp(&b.count_ones()) {
        std::cmp::Ordering::Greater => a,
        std::cmp::Ordering::Less => b,
        std::cmp::Ordering::Equal => a.min(b),
    }
}

fn better_pair(a: Option<(u64, u64)>, b: Option<(u64, u64)>) -> Option<(u64, u64)> {
    match (a, b) {
        (None, x) | (x, None) => x,
        (Some(x), Some(y)) => {
            let size = |p: (u64, u64)| (p.0 | p.1).count_ones();
            let key_x = (std::cmp::Reverse(size(x)), x.0, x.1);
            let key_y = (std::cmp::Reverse(size(y)), y.0, y.1);
            Some(if key_x <= key_y { x } else { y })
        }
    }
}

/// Exhaustive strong r-robustness test: every nonempty subset is r-reachable
/// or has a member adjacent to every node outside it.
pub fn is_strongly_r_robust(g: &DiGraph, r: usize) -> Result<bool> {
    is_strongly_r_robust_with(g, r, &CheckOptions::default())
}

pub fn is_strongly_r_robust_with(g: &DiGraph, r: usize, opts: &CheckOptions) -> Result<bool> {
    if r == 0 {
        return Err(Error::invalid("strong robustness needs r >= 1"));
    }
    Ok(max_strong_robustness_with(g, opts)?.exceeds(r - 1))
}

/// Largest `r` for which the graph is strongly r-robust. Infinite when every
/// subset that fails reachability is covered by one of its members (complete
/// graphs, for instance).
pub fn max_strong_robustness(g: &DiGraph) -> Result<Extended> {
    max_strong_robustness_with(g, &CheckOptions::default())
}

pub fn max_strong_robustness_with(g: &DiGraph, opts: &CheckOptions) -> Result<Extended> {
    let masks = guard(g, opts, "strong robustness computation")?;
    let n = g.n();
    let full = full_mask(n);
    let worst = exec::reduce_range(
        opts.exec,
        1..1u64 << n,
        u32::MAX,
        |s| {
            let outside = full ^ s;
            let mut m = s;
            while m != 0 {
                let i = m.trailing_zeros() as usize;
                if outside & !masks[i] == 0 {
                    return u32::MAX;
                }
                m &= m - 1;
            }
            reach_level(&masks, s) as u32
        },
        u32::min,
    );
    Ok(if worst == u32::MAX {
        Extended::Infinite
    } else {
        Extended::Finite(worst as usize)
    })
}

/// Every f-local subset of the nodes (including the empty set), in mask
/// order.
pub fn f_local_sets(g: &DiGraph, f: usize) -> Result<Vec<NodeSet>> {
    f_local_sets_with(g, f, &CheckOptions::default())
}

pub fn f_local_sets_with(g: &DiGraph, f: usize, opts: &CheckOptions) -> Result<Vec<NodeSet>> {
    let masks = guard(g, opts, "f-local set enumeration")?;
    let n = g.n();
    let full = full_mask(n);
    let keep = exec::map_range(opts.exec, 0..1u64 << n, |s| {
        let mut outside = full ^ s;
        while outside != 0 {
            let i = outside.trailing_zeros() as usize;
            if (masks[i] & s).count_ones() as usize > f {
                return None;
            }
            outside &= outside - 1;
        }
        Some(s)
    });
    Ok(keep.into_iter().flatten().map(NodeSet::from_mask).collect())
}

/// Structural summary of a graph.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RobustnessReport {
    pub n: usize,
    pub max_robust_r: usize,
    pub max_strong_robust_r: Extended,
    /// Vertex connectivity; `None` for directed graphs.
    pub connectivity: Option<usize>,
    pub min_degree: usize,
}

/// Computes every field of [`RobustnessReport`].
pub fn analyze(g: &DiGraph) -> Result<RobustnessReport> {
    analyze_with(g, &CheckOptions::default())
}

pub fn analyze_with(g: &DiGraph, opts: &CheckOptions) -> Result<RobustnessReport> {
    let connectivity = if g.is_directed() {
        None
    } else {
        Some(vertex_connectivity_with(g, opts.exec)?)
    };
    Ok(RobustnessReport {
        n: g.n(),
        max_robust_r: max_robustness_with(g, opts)?,
        max_strong_robust_r: max_strong_robustness_with(g, opts)?,
        connectivity,
        min_degree: g.min_in_degree(),
    })
}
