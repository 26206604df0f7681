//! Certified propagation: reliable broadcast from a trusted source when the
//! faulty nodes form an f-local set.
//!
//! Nodes that hear the source accept its value directly. Every other normal
//! node accepts a value once `f + 1` distinct in-neighbors have sent it that
//! identical value, then relays it forever. Counting is cumulative across
//! rounds and each sender counts once per value.
//!
//! Also home to `X(G)`, the smallest number of neighbors of `v` strictly
//! closer to `s` over non-adjacent pairs `(v, s)`.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::consensus::{Adversary, AdversaryStrategy, DEFAULT_CLAMP};
use crate::error::{Error, Result};
use crate::exec::{self, CheckOptions};
use crate::extended::Extended;
use crate::graph::{DiGraph, NodeId, NodeSet};
use crate::robustness::{f_local_sets_with, is_strongly_r_robust_with};

/// One acceptance event.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Acceptance {
    pub round: usize,
    pub node: NodeId,
    pub accepted_value: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct CpaOutcome {
    pub source: NodeId,
    pub malicious: NodeSet,
    /// Normal nodes holding the true value at the end, source included.
    pub accepted: NodeSet,
    /// Normal nodes that accepted anything else. Empty whenever the faulty
    /// set is f-local.
    pub misled: NodeSet,
    /// Last round in which some node accepted (0 if only the source's
    /// neighbors, or nobody, did).
    pub rounds: usize,
    /// Acceptances in order; the source appears first at round 0.
    pub log: Vec<Acceptance>,
    /// Every normal node accepted the true value.
    pub success: bool,
}

/// Runs CPA to quiescence.
///
/// Round 0: the source's out-neighbors accept. Round `r >= 1`: every node
/// that accepted in an earlier round relays its value, faulty nodes send
/// what `strategy` dictates for step `r - 1`, and receivers update their
/// counts. The run stops after the first round with no new acceptance.
pub fn cpa_run(
    g: &DiGraph,
    source: NodeId,
    f: usize,
    malicious: &NodeSet,
    strategy: &AdversaryStrategy,
    true_value: f64,
) -> Result<CpaOutcome> {
    let n = g.n();
    if source >= n {
        return Err(Error::NodeOutOfRange { node: source, n });
    }
    malicious.check_within(n)?;
    if malicious.contains(source) {
        return Err(Error::invalid(format!("source {source} cannot be malicious")));
    }
    for i in (0..n).filter(|&i| !malicious.contains(i)) {
        let count = g.in_adj(i).iter().filter(|&&j| malicious.contains(j)).count();
        if count > f {
            return Err(Error::NotFLocal { f, step: 0, node: i, count });
        }
    }
    if !true_value.is_finite() {
        return Err(Error::invalid("broadcast value must be finite"));
    }

    let initial = vec![0.0; n];
    let adversary = Adversary::new(strategy, &initial, DEFAULT_CLAMP);
    let mut committed: Vec<Option<f64>> = vec![None; n];
    let mut log = Vec::new();
    committed[source] = Some(true_value);
    log.push(Acceptance { round: 0, node: source, accepted_value: true_value });
    for &i in g.out_adj(source) {
        if !malicious.contains(i) {
            committed[i] = Some(true_value);
            log.push(Acceptance { round: 0, node: i, accepted_value: true_value });
        }
    }

    // heard[i][value bits] = distinct senders
    let mut heard: Vec<BTreeMap<u64, BTreeSet<NodeId>>> = vec![BTreeMap::new(); n];
    let mut rounds = 0;
    for round in 1..=n {
        let senders: Vec<(NodeId, f64)> = (0..n)
            .filter_map(|j| committed[j].map(|v| (j, v)))
            .collect();
        for &(j, v) in &senders {
            for &i in g.out_adj(j) {
                heard[i].entry(v.to_bits()).or_default().insert(j);
            }
        }
        for j in malicious.iter() {
            for &i in g.out_adj(j) {
                let lie = adversary.sent(round - 1, j, i)?;
                heard[i].entry(lie.to_bits()).or_default().insert(j);
            }
        }
        let mut fresh = Vec::new();
        for i in (0..n).filter(|&i| committed[i].is_none() && !malicious.contains(i)) {
            // at most one value can reach f + 1 senders when the faulty set is
            // f-local; otherwise prefer the best supported, then the smallest bits
            let best = heard[i]
                .iter()
                .filter(|(_, who)| who.len() > f)
                .max_by(|a, b| a.1.len().cmp(&b.1.len()).then(b.0.cmp(a.0)));
            if let Some((&bits, _)) = best {
                fresh.push((i, f64::from_bits(bits)));
            }
        }
        if fresh.is_empty() {
            break;
        }
        rounds = round;
        for (i, v) in fresh {
            committed[i] = Some(v);
            log.push(Acceptance { round, node: i, accepted_value: v });
        }
    }

    let normal = (0..n).filter(|&i| !malicious.contains(i));
    let accepted: NodeSet = normal
        .clone()
        .filter(|&i| committed[i].is_some_and(|v| v.to_bits() == true_value.to_bits()))
        .collect();
    let misled: NodeSet = normal
        .clone()
        .filter(|&i| committed[i].is_some_and(|v| v.to_bits() != true_value.to_bits()))
        .collect();
    let success = accepted.len() == normal.count();
    Ok(CpaOutcome {
        source,
        malicious: malicious.clone(),
        accepted,
        misled,
        rounds,
        log,
        success,
    })
}

/// CPA from `source` against every f-local faulty set that spares the
/// source, in mask order.
pub fn cpa_sweep(
    g: &DiGraph,
    source: NodeId,
    f: usize,
    strategy: &AdversaryStrategy,
    true_value: f64,
    opts: &CheckOptions,
) -> Result<Vec<CpaOutcome>> {
    let sets: Vec<NodeSet> = f_local_sets_with(g, f, opts)?
        .into_iter()
        .filter(|s| !s.contains(source))
        .collect();
    exec::map_slice(opts.exec, &sets, |s| cpa_run(g, source, f, s, strategy, true_value))
        .into_iter()
        .collect()
}

/// Aggregate of a sweep.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SweepSummary {
    pub source: NodeId,
    pub f: usize,
    pub cases: usize,
    pub successes: usize,
    /// Runs in which some normal node accepted a wrong value.
    pub misled_runs: usize,
    pub max_rounds: usize,
    /// Faulty sets under which the broadcast did not reach everyone.
    pub failures: Vec<Vec<NodeId>>,
    pub all_succeeded: bool,
}

impl SweepSummary {
    pub fn from_outcomes(source: NodeId, f: usize, outcomes: &[CpaOutcome]) -> Self {
        let failures: Vec<Vec<NodeId>> = outcomes
            .iter()
            .filter(|o| !o.success)
            .map(|o| o.malicious.to_vec())
            .collect();
        SweepSummary {
            source,
            f,
            cases: outcomes.len(),
            successes: outcomes.len() - failures.len(),
            misled_runs: outcomes.iter().filter(|o| !o.misled.is_empty()).count(),
            max_rounds: outcomes.iter().map(|o| o.rounds).max().unwrap_or(0),
            all_succeeded: failures.is_empty(),
            failures,
        }
    }
}

fn require_connected_undirected(g: &DiGraph) -> Result<()> {
    if g.is_directed() {
        return Err(Error::RequiresUndirected);
    }
    if !g.is_weakly_connected() {
        return Err(Error::Disconnected);
    }
    Ok(())
}

fn x_from(g: &DiGraph, v: NodeId, dist: &[Option<usize>]) -> usize {
    let dv = dist[v].expect("connected graph");
    g.in_adj(v)
        .iter()
        .filter(|&&u| dist[u].expect("connected graph") < dv)
        .count()
}

/// Number of neighbors of `v` strictly closer (in hops) to `s` than `v`.
pub fn x_metric(g: &DiGraph, v: NodeId, s: NodeId) -> Result<usize> {
    require_connected_undirected(g)?;
    if v >= g.n() {
        return Err(Error::NodeOutOfRange { node: v, n: g.n() });
    }
    let dist = g.bfs_distances(s)?;
    Ok(x_from(g, v, &dist))
}

/// Minimizing pair of [`x_graph`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct XWitness {
    pub v: NodeId,
    pub s: NodeId,
    pub x: usize,
}

/// `X(G)` with the pair attaining it (smallest `s`, then smallest `v`), or
/// `None` when every pair is adjacent.
pub fn x_graph_witness(g: &DiGraph) -> Result<Option<XWitness>> {
    require_connected_undirected(g)?;
    let mut best: Option<XWitness> = None;
    for s in 0..g.n() {
        let dist = g.bfs_distances(s)?;
        for v in (0..g.n()).filter(|&v| v != s && !g.has_edge(s, v)) {
            let x = x_from(g, v, &dist);
            if best.is_none_or(|b| x < b.x) {
                best = Some(XWitness { v, s, x });
            }
        }
    }
    Ok(best)
}

/// `X(G)`; infinite when no non-adjacent pair exists.
pub fn x_graph(g: &DiGraph) -> Result<Extended> {
    Ok(x_graph_witness(g)?.map_or(Extended::Infinite, |w| Extended::Finite(w.x)))
}

/// Which of the two sufficient conditions for CPA with parameter `f` hold.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CpaSufficiency {
    pub f: usize,
    pub x_graph: Extended,
    pub x_exceeds_2f: bool,
    pub strongly_2f1_robust: bool,
}

pub fn cpa_sufficiency_report(g: &DiGraph, f: usize) -> Result<CpaSufficiency> {
    cpa_sufficiency_report_with(g, f, &CheckOptions::default())
}

pub fn cpa_sufficiency_report_with(g: &DiGraph, f: usize, opts: &CheckOptions) -> Result<CpaSufficiency> {
    let x = x_graph(g)?;
    Ok(CpaSufficiency {
        f,
        x_graph: x,
        x_exceeds_2f: x.exceeds(2 * f),
        strongly_2f1_robust: is_strongly_r_robust_with(g, 2 * f + 1, opts)?,
    })
}

/// Acceptance log as CSV with columns `round,node,accepted_value`.
pub fn cpa_log_csv(outcome: &CpaOutcome) -> Result<Vec<u8>> {
    let mut w = csv::Writer::from_writer(Vec::new());
    for entry in &outcome.log {
        w.serialize(entry)?;
    }
    Ok(w.into_inner().map_err(|e| e.into_error())?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::consensus::{StrategyKind, ThreatModel};
    use crate::generators::{complete, path, prop4_graph, prop4_node};

    const TRUTH: f64 = 1.0;

    fn liar() -> AdversaryStrategy {
        AdversaryStrategy::constant(-1.0)
    }

    #[test]
    fn flooding_with_f_zero() {
        let g = path(6).unwrap();
        let out = cpa_run(&g, 2, 0, &NodeSet::new(), &liar(), TRUTH).unwrap();
        assert!(out.success);
        assert_eq!(out.accepted.len(), 6);
        assert_eq!(out.rounds, 2);
    }

    #[test]
    fn single_path_cannot_certify() {
        let g = path(3).unwrap();
        let out = cpa_run(&g, 0, 1, &NodeSet::new(), &liar(), TRUTH).unwrap();
        assert!(!out.success);
        assert!(!out.accepted.contains(2));
        assert!(out.accepted.contains(1));
    }

    #[test]
    fn prop4_survives_every_single_liar() {
        let g = prop4_graph();
        let source = prop4_node(1);
        let strategies = [
            liar(),
            AdversaryStrategy::new(StrategyKind::Random { low: 0.0, high: 2.0 }, ThreatModel::Byzantine, 1),
        ];
        for strategy in &strategies {
            let outcomes = cpa_sweep(&g, source, 1, strategy, TRUTH, &CheckOptions::default()).unwrap();
            assert!(outcomes.len() > 1);
            for o in &outcomes {
                assert!(o.success, "failed with faulty {:?}", o.malicious);
                assert!(o.misled.is_empty());
                assert!(o.rounds <= g.n());
            }
        }
    }

    #[test]
    fn crowded_liars_are_rejected_and_local_ones_mislead_nobody() {
        // node 3 would hear both liars, more than f = 1 allows
        let g = DiGraph::from_edges(4, false, [(0, 1), (0, 2), (1, 3), (2, 3), (0, 3)]).unwrap();
        let liars: NodeSet = [1, 2].into_iter().collect();
        assert!(cpa_run(&g, 0, 1, &liars, &liar(), TRUTH).is_err());
        let g = DiGraph::from_edges(5, false, [(0, 1), (0, 2), (1, 4), (2, 4), (3, 4), (0, 3)]).unwrap();
        let out = cpa_run(&g, 0, 2, &liars, &liar(), TRUTH).unwrap();
        assert!(out.misled.is_empty());
    }

    #[test]
    fn run_rejections() {
        let g = complete(4).unwrap();
        let src: NodeSet = [0].into_iter().collect();
        assert!(cpa_run(&g, 0, 1, &src, &liar(), TRUTH).is_err());
        assert!(cpa_run(&g, 9, 1, &NodeSet::new(), &liar(), TRUTH).is_err());
        let pair: NodeSet = [1, 2].into_iter().collect();
        assert!(matches!(cpa_run(&g, 0, 1, &pair, &liar(), TRUTH), Err(Error::NotFLocal { .. })));
    }

    #[test]
    fn x_examples() {
        let g = prop4_graph();
        assert_eq!(x_metric(&g, prop4_node(8), prop4_node(1)).unwrap(), 2);
        assert!(!x_graph(&g).unwrap().exceeds(2));

        let p = path(3).unwrap();
        assert_eq!(x_metric(&p, 2, 0).unwrap(), 1);
        assert_eq!(x_graph(&p).unwrap(), Extended::Finite(1));
        assert_eq!(x_graph_witness(&p).unwrap(), Some(XWitness { v: 2, s: 0, x: 1 }));

        assert_eq!(x_graph(&complete(5).unwrap()).unwrap(), Extended::Infinite);
        assert!(matches!(
            x_graph(&complete(2).unwrap().disjoint_union(&complete(2).unwrap())),
            Err(Error::Disconnected)
        ));
        assert!(matches!(
            x_graph(&DiGraph::from_edges(2, true, [(0, 1)]).unwrap()),
            Err(Error::RequiresUndirected)
        ));
    }

    #[test]
    fn sufficiency_reports() {
        let r = cpa_sufficiency_report(&prop4_graph(), 1).unwrap();
        assert!(!r.x_exceeds_2f && r.strongly_2f1_robust);
        let r = cpa_sufficiency_report(&complete(6).unwrap(), 1).unwrap();
        assert!(r.x_exceeds_2f && r.strongly_2f1_robust);
        let r = cpa_sufficiency_report(&path(5).unwrap(), 1).unwrap();
        assert!(!r.x_exceeds_2f && !r.strongly_2f1_robust);
    }

    #[test]
    fn log_csv_shape() {
        let out = cpa_run(&path(3).unwrap(), 0, 0, &NodeSet::new(), &liar(), 7.5).unwrap();
        let text = String::from_utf8(cpa_log_csv(&out).unwrap()).unwrap();
        assert_eq!(text, "round,node,accepted_value\n0,0,7.5\n0,1,7.5\n1,2,7.5\n");
    }
}
