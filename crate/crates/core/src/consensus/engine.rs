use super::adversary::Adversary;
use super::filter::wmsr_filter;
use super::scenario::{Outcome, Scenario, Trajectory, Verdict};
use super::weights::{ResolvedWeights, WeightPolicy};
use crate::error::{Error, Result};
use crate::exec::{self, CheckOptions, Execution};
use crate::graph::{DiGraph, NodeId, NodeSet};
use crate::robustness::non_robust_witness_with;

/// One synchronous step's output.
#[derive(Clone, Debug, PartialEq)]
pub struct StepResult {
    /// Next state. Faulty entries are copied from the input; the caller
    /// replaces them with whatever the adversary does next.
    pub next: Vec<f64>,
    /// Neighbors each normal node discarded (zero for faulty nodes).
    pub removed: Vec<usize>,
}

/// One W-MSR step on `g`. `transmit(sender, receiver)` supplies the value a
/// faulty sender delivers to a receiver.
pub fn wmsr_step<F>(
    values: &[f64],
    g: &DiGraph,
    f: usize,
    faulty: &NodeSet,
    weights: &WeightPolicy,
    step: usize,
    transmit: F,
) -> Result<StepResult>
where
    F: Fn(NodeId, NodeId) -> Result<f64>,
{
    weights.validate()?;
    step_with(values, g, f, faulty, &weights.resolve(g.n()), step, transmit)
}

fn step_with<F>(
    values: &[f64],
    g: &DiGraph,
    f: usize,
    faulty: &NodeSet,
    weights: &ResolvedWeights,
    step: usize,
    transmit: F,
) -> Result<StepResult>
where
    F: Fn(NodeId, NodeId) -> Result<f64>,
{
    let n = g.n();
    if values.len() != n {
        return Err(Error::invalid(format!("{} values for {n} nodes", values.len())));
    }
    let mut next = values.to_vec();
    let mut removed = vec![0; n];
    let mut heard = Vec::new();
    let mut row = Vec::new();
    for i in (0..n).filter(|&i| !faulty.contains(i)) {
        heard.clear();
        for &j in g.in_adj(i) {
            let v = if faulty.contains(j) { transmit(j, i)? } else { values[j] };
            heard.push((j, v));
        }
        let own = values[i];
        let filtered = wmsr_filter(own, &heard, f);
        weights.row(i, &filtered.kept, step, &mut row)?;
        let (mut lo, mut hi) = (own, own);
        let mut x = own;
        for (&(_, v), &w) in filtered.kept.iter().zip(&row) {
            x += w * (v - own);
            lo = lo.min(v);
            hi = hi.max(v);
        }
        // a convex combination lies in the hull of its inputs; pin rounding
        // error to it so fixed points stay exact
        let x = x.clamp(lo, hi);
        if !x.is_finite() {
            return Err(Error::NonFinite { node: i, step: step + 1 });
        }
        next[i] = x;
        removed[i] = filtered.removed.len();
    }
    Ok(StepResult { next, removed })
}

fn normal_range(values: &[f64], faulty: &NodeSet) -> (f64, f64) {
    values
        .iter()
        .enumerate()
        .filter(|(i, _)| !faulty.contains(*i))
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), (_, &v)| (lo.min(v), hi.max(v)))
}

/// Runs a scenario to a verdict, checking the safety invariants after every
/// step.
pub fn simulate(sc: &Scenario) -> Result<(Trajectory, Verdict)> {
    sc.validate()?;
    let n = sc.n();
    let faulty = &sc.malicious;
    let adversary = Adversary::new(&sc.strategy, &sc.initial_values, sc.clamp);
    let weights = sc.weights.resolve(n);

    let mut state = sc.initial_values.clone();
    for j in faulty.iter() {
        state[j] = adversary.nominal(0, j)?;
    }
    let (m0, big_m0) = normal_range(&state, faulty);
    let mut traj = Trajectory {
        values: vec![state],
        removed_count: vec![vec![0; n]],
        max_normal: vec![big_m0],
        min_normal: vec![m0],
        phi: vec![big_m0 - m0],
    };

    let horizon = sc.effective_horizon(big_m0 - m0);
    let mut outcome = None;
    let mut unchanged = 0;
    let mut t = 0;
    if big_m0 - m0 < sc.tol {
        outcome = Some(Outcome::Converged { value: midpoint(m0, big_m0) });
    }
    while outcome.is_none() && t < horizon {
        let cur = traj.values.last().expect("trajectory has a first row");
        let StepResult { mut next, removed } = step_with(
            cur,
            sc.topology.at(t),
            sc.f,
            faulty,
            &weights,
            t,
            |j, i| adversary.sent(t, j, i),
        )?;
        for j in faulty.iter() {
            next[j] = adversary.nominal(t + 1, j)?;
        }
        let (lo, hi) = normal_range(&next, faulty);
        let (prev_lo, prev_hi) = (traj.min_normal[t], traj.max_normal[t]);
        if lo < prev_lo || hi > prev_hi {
            return Err(Error::InvariantViolation {
                step: t + 1,
                reason: format!("normal range [{lo}, {hi}] escaped [{prev_lo}, {prev_hi}]"),
            });
        }
        let phi = hi - lo;
        unchanged = if phi == traj.phi[t] { unchanged + 1 } else { 0 };
        traj.values.push(next);
        traj.removed_count.push(removed);
        traj.max_normal.push(hi);
        traj.min_normal.push(lo);
        traj.phi.push(phi);
        t += 1;
        if phi < sc.tol {
            outcome = Some(Outcome::Converged { value: midpoint(lo, hi) });
        } else if unchanged >= sc.stall_window {
            outcome = Some(Outcome::Stalled);
        }
    }

    let last = traj.values.last().expect("trajectory has a first row");
    let (lo, hi) = normal_range(last, faulty);
    let verdict = Verdict {
        outcome: outcome.unwrap_or(Outcome::Timeout),
        steps_used: t,
        safe: lo >= m0 && hi <= big_m0,
        phi_final: hi - lo,
        min_normal_initial: m0,
        max_normal_initial: big_m0,
    };
    Ok((traj, verdict))
}

fn midpoint(lo: f64, hi: f64) -> f64 {
    lo + (hi - lo) / 2.0
}

/// Runs many scenarios, in parallel when `exec` allows. Each run keeps its
/// own state, so results match a sequential loop exactly.
pub fn simulate_batch(scenarios: &[Scenario], exec: Execution) -> Vec<Result<Verdict>> {
    exec::map_slice(exec, scenarios, |sc| simulate(sc).map(|(_, v)| v))
}

/// A scenario that cannot reach consensus on `g` with parameter `f`, or
/// `None` if `g` is (f+1)-robust.
///
/// The two disjoint subsets that are not (f+1)-reachable start at 0 and 1,
/// every other node at 0.5, and nobody is faulty. Each node of either subset
/// hears at most `f` outside values, all strictly on one side, so it
/// discards them and never moves.
pub fn necessity_demo(g: &DiGraph, f: usize) -> Result<Option<Scenario>> {
    necessity_demo_with(g, f, &CheckOptions::default())
}

pub fn necessity_demo_with(g: &DiGraph, f: usize, opts: &CheckOptions) -> Result<Option<Scenario>> {
    let Some((low, high)) = non_robust_witness_with(g, f + 1, opts)? else {
        return Ok(None);
    };
    let initial = (0..g.n())
        .map(|i| {
            if low.contains(i) {
                0.0
            } else if high.contains(i) {
                1.0
            } else {
                0.5
            }
        })
        .collect();
    Ok(Some(Scenario::new(g.clone(), f, initial)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::consensus::{AdversaryStrategy, StrategyKind, ThreatModel, Topology};
    use crate::generators::{complete, fig1_tight_graph, prop1_graph, Fig1Layout, Prop1Layout};

    fn set(nodes: impl IntoIterator<Item = usize>) -> NodeSet {
        nodes.into_iter().collect()
    }

    fn no_adversary(_: NodeId, _: NodeId) -> Result<f64> {
        unreachable!("no faulty nodes")
    }

    #[test]
    fn equal_weight_step() {
        let g = DiGraph::from_edges(2, true, [(1, 0)]).unwrap();
        let out = wmsr_step(&[0.0, 1.0], &g, 0, &NodeSet::new(), &WeightPolicy::EqualWeights, 0, no_adversary).unwrap();
        assert_eq!(out.next, vec![0.5, 1.0]);
    }

    #[test]
    fn agreement_is_a_fixed_point() {
        let g = complete(6).unwrap();
        let v = vec![0.1 + 0.2; 6];
        let out = wmsr_step(&v, &g, 1, &NodeSet::new(), &WeightPolicy::EqualWeights, 0, no_adversary).unwrap();
        assert_eq!(out.next, v);
    }

    #[test]
    fn two_cliques_do_not_move() {
        let g = prop1_graph(10, 1).unwrap();
        let layout = Prop1Layout::new(10);
        let mut v = vec![1.0; 10];
        for a in layout.a() {
            v[a] = 0.0;
        }
        let out = wmsr_step(&v, &g, 1, &NodeSet::new(), &WeightPolicy::EqualWeights, 0, no_adversary).unwrap();
        assert_eq!(out.next, v);
        assert!(out.removed.iter().all(|&r| r == 1));
    }

    #[test]
    fn faulty_values_come_from_transmit() {
        let g = complete(3).unwrap();
        let out = wmsr_step(&[0.0, 0.0, 9.0], &g, 0, &set([2]), &WeightPolicy::EqualWeights, 0, |_, i| {
            Ok(if i == 0 { 3.0 } else { 6.0 })
        })
        .unwrap();
        assert_eq!(out.next, vec![1.0, 2.0, 9.0]);
    }

    #[test]
    fn k5_with_a_constant_liar_converges_safely() {
        let sc = Scenario::new(complete(5).unwrap(), 1, vec![0.0, 1.0, 2.0, 3.0, 4.0])
            .with_adversary(set([0]), AdversaryStrategy::constant(100.0));
        let (traj, verdict) = simulate(&sc).unwrap();
        let Outcome::Converged { value } = verdict.outcome else {
            panic!("expected convergence, got {verdict:?}");
        };
        assert!(verdict.safe);
        assert!((1.0..=4.0).contains(&value));
        assert!(traj.values.iter().all(|row| row[0] == 100.0));
        assert_eq!(traj.steps(), verdict.steps_used);
    }

    #[test]
    fn two_cliques_stall() {
        let g = prop1_graph(10, 1).unwrap();
        let layout = Prop1Layout::new(10);
        let mut v = vec![1.0; 10];
        for a in layout.a() {
            v[a] = 0.0;
        }
        let (traj, verdict) = simulate(&Scenario::new(g, 1, v)).unwrap();
        assert_eq!(verdict.outcome, Outcome::Stalled);
        assert!(traj.phi.iter().all(|&p| p == 1.0));
        assert_eq!(verdict.steps_used, 25);
    }

    #[test]
    fn tight_graph_scenario_stalls() {
        let layout = Fig1Layout::new(1);
        let g = fig1_tight_graph(1).unwrap();
        let (s1, s3) = (layout.s1().start, layout.s3().start);
        let mut v = vec![0.5; layout.n()];
        v[layout.a] = 0.0;
        v[layout.b] = 1.0;
        let sc = Scenario::new(g, 1, v).with_adversary(set([s1, s3]), AdversaryStrategy::hold([(s1, 0.0), (s3, 1.0)]));
        let (traj, verdict) = simulate(&sc).unwrap();
        assert_eq!(verdict.outcome, Outcome::Stalled);
        for row in &traj.values {
            assert_eq!(row[layout.a], 0.0);
            assert_eq!(row[layout.b], 1.0);
        }
    }

    #[test]
    fn determinism() {
        let strategy = AdversaryStrategy::new(StrategyKind::Random { low: -5.0, high: 5.0 }, ThreatModel::Byzantine, 3);
        let sc = Scenario::new(complete(7).unwrap(), 1, (0..7).map(|i| i as f64).collect())
            .with_adversary(set([3]), strategy);
        assert_eq!(simulate(&sc).unwrap(), simulate(&sc).unwrap());
    }

    #[test]
    fn periodic_schedule_with_idle_steps_converges() {
        let sc = Scenario {
            topology: Topology::Periodic(vec![complete(5).unwrap(), DiGraph::empty(5, false)]),
            ..Scenario::new(complete(5).unwrap(), 1, vec![0.0, 1.0, 2.0, 3.0, 4.0])
        }
        .with_adversary(set([4]), AdversaryStrategy::constant(-50.0));
        let (traj, verdict) = simulate(&sc).unwrap();
        assert!(verdict.outcome.is_converged() && verdict.safe);
        assert_eq!(traj.values[1][..4], traj.values[2][..4]);
    }

    #[test]
    fn rejections() {
        let k4 = complete(4).unwrap();
        let base = Scenario::new(k4.clone(), 1, vec![0.0; 4]);
        let two = base.clone().with_adversary(set([0, 1]), AdversaryStrategy::default());
        assert!(matches!(simulate(&two), Err(Error::NotFLocal { f: 1, step: 0, .. })));
        let periodic = Scenario {
            topology: Topology::Periodic(vec![DiGraph::empty(4, false), k4.clone()]),
            ..two.clone()
        };
        assert!(matches!(simulate(&periodic), Err(Error::NotFLocal { step: 1, .. })));
        assert!(simulate(&Scenario::new(k4.clone(), 1, vec![0.0; 3])).is_err());
        assert!(simulate(&Scenario::new(k4.clone(), 1, vec![0.0, f64::NAN, 0.0, 0.0])).is_err());
        let all_bad = Scenario::new(k4, 4, vec![0.0; 4]).with_adversary(set(0..4), AdversaryStrategy::default());
        assert!(simulate(&all_bad).is_err());
    }

    #[test]
    fn necessity_examples() {
        let g = prop1_graph(10, 1).unwrap();
        let sc = necessity_demo(&g, 1).unwrap().unwrap();
        let layout = Prop1Layout::new(10);
        for a in layout.a() {
            assert_eq!(sc.initial_values[a], 0.0);
        }
        for b in layout.b() {
            assert_eq!(sc.initial_values[b], 1.0);
        }
        assert_eq!(simulate(&sc).unwrap().1.outcome, Outcome::Stalled);

        assert!(necessity_demo(&complete(5).unwrap(), 1).unwrap().is_none());

        let triangles = complete(3).unwrap().disjoint_union(&complete(3).unwrap());
        let sc = necessity_demo(&triangles, 0).unwrap().unwrap();
        assert_eq!(simulate(&sc).unwrap().1.outcome, Outcome::Stalled);
    }

    #[test]
    fn batch_matches_sequential() {
        let scenarios: Vec<_> = (0..6)
            .map(|k| {
                Scenario::new(complete(5).unwrap(), 1, (0..5).map(|i| (i * k) as f64).collect())
                    .with_adversary(set([k % 5]), AdversaryStrategy::constant(k as f64 * 10.0))
            })
            .collect();
        let seq = simulate_batch(&scenarios, Execution::Sequential);
        let par = simulate_batch(&scenarios, Execution::Parallel);
        for (a, b) in seq.iter().zip(&par) {
            assert_eq!(a.as_ref().unwrap(), b.as_ref().unwrap());
        }
    }
}
