//! Brute-force reference implementations.
//!
//! Each function is a literal translation of the definition it checks, with
//! no pruning, no bitmask tables and no code shared with the optimized
//! checkers beyond [`DiGraph::has_edge`]. They exist to cross-check the fast
//! paths and are only practical for very small graphs (`n <= 10` or so).

use crate::graph::DiGraph;

fn members(n: usize, s: u64) -> impl Iterator<Item = usize> {
    (0..n).filter(move |&i| s & (1 << i) != 0)
}

/// `exists i in S : |V_i \ S| >= r`
pub fn is_r_reachable(g: &DiGraph, s: u64, r: usize) -> bool {
    let n = g.n();
    members(n, s).any(|i| {
        (0..n)
            .filter(|&j| s & (1 << j) == 0 && g.has_edge(j, i))
            .count()
            >= r
    })
}

/// Walks all `3^n` assignments of nodes to (neither, S1, S2), examining
/// each unordered pair of nonempty disjoint subsets once.
pub fn is_r_robust(g: &DiGraph, r: usize) -> bool {
    let n = g.n();
    let total = 3u64.pow(n as u32);
    for code in 0..total {
        let (mut s1, mut s2) = (0u64, 0u64);
        let mut c = code;
        for i in 0..n {
            match c % 3 {
                1 => s1 |= 1 << i,
                2 => s2 |= 1 << i,
                _ => {}
            }
            c /= 3;
        }
        if s1 == 0 || s2 == 0 {
            continue;
        }
        // unordered: the lowest labelled node belongs to S1
        if (s1 | s2).trailing_zeros() != s1.trailing_zeros() {
            continue;
        }
        if !is_r_reachable(g, s1, r) && !is_r_reachable(g, s2, r) {
            return false;
        }
    }
    true
}

/// Largest `r` with [`is_r_robust`] true, scanning `r = 1, 2, ...`.
pub fn max_robustness(g: &DiGraph) -> usize {
    if g.n() < 2 {
        return 0;
    }
    let mut r = 0;
    while r < g.n() && is_r_robust(g, r + 1) {
        r += 1;
    }
    r
}

/// For every nonempty `S`: `S` is r-reachable, or some `i in S` hears every
/// node of `V \ S`.
pub fn is_strongly_r_robust(g: &DiGraph, r: usize) -> bool {
    let n = g.n();
    for s in 1u64..(1 << n) {
        if is_r_reachable(g, s, r) {
            continue;
        }
        let covered = members(n, s).any(|i| {
            (0..n)
                .filter(|&j| s & (1 << j) == 0)
                .all(|j| g.has_edge(j, i))
        });
        if !covered {
            return false;
        }
    }
    true
}

/// `|V_i ∩ S| <= f` for every `i` outside `S`.
pub fn is_f_local(g: &DiGraph, s: u64, f: usize) -> bool {
    let n = g.n();
    (0..n).filter(|&i| s & (1 << i) == 0).all(|i| {
        members(n, s).filter(|&j| g.has_edge(j, i)).count() <= f
    })
}

/// Transitive closure by repeated relaxation, then look for a universal root.
pub fn has_spanning_tree(g: &DiGraph) -> bool {
    let n = g.n();
    if n == 0 {
        return true;
    }
    let mut reach = vec![vec![false; n]; n];
    for (i, row) in reach.iter_mut().enumerate() {
        row[i] = true;
        for (j, cell) in row.iter_mut().enumerate() {
            if g.has_edge(i, j) {
                *cell = true;
            }
        }
    }
    #[allow(clippy::needless_range_loop)]
    for k in 0..n {
        for i in 0..n {
            if reach[i][k] {
                for j in 0..n {
                    if reach[k][j] {
                        reach[i][j] = true;
                    }
                }
            }
        }
    }
    reach.iter().any(|row| row.iter().all(|&x| x))
}

fn connected_without(g: &DiGraph, removed: u64) -> bool {
    let n = g.n();
    let alive: Vec<usize> = (0..n).filter(|&v| removed & (1 << v) == 0).collect();
    let Some(&start) = alive.first() else {
        return true;
    };
    let mut seen = removed | (1 << start);
    let mut stack = vec![start];
    while let Some(v) = stack.pop() {
        for u in 0..n {
            if seen & (1 << u) == 0 && (g.has_edge(v, u) || g.has_edge(u, v)) {
                seen |= 1 << u;
                stack.push(u);
            }
        }
    }
    alive.iter().all(|&v| seen & (1 << v) != 0)
}

/// Smallest vertex set whose removal disconnects the graph, by increasing
/// size; `n - 1` when no such set exists.
pub fn vertex_connectivity(g: &DiGraph) -> usize {
    let n = g.n();
    if n <= 1 {
        return 0;
    }
    for k in 0..n.saturating_sub(1) {
        for cut in 0u64..(1 << n) {
            if cut.count_ones() as usize == k && !connected_without(g, cut) {
                return k;
            }
        }
    }
    n - 1
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{complete, star};

    #[test]
    fn oracle_sanity() {
        let k5 = complete(5).unwrap();
        assert!(is_r_robust(&k5, 3));
        assert!(!is_r_robust(&k5, 4));
        assert_eq!(max_robustness(&k5), 3);
        assert_eq!(vertex_connectivity(&k5), 4);
        assert_eq!(vertex_connectivity(&star(5).unwrap()), 1);
        assert!(is_strongly_r_robust(&k5, 9));
        assert!(!is_strongly_r_robust(&star(5).unwrap(), 2));
    }
}
