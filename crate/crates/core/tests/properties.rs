use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use robustnet::broadcast::cpa_run;
use robustnet::connectivity::{vertex_connectivity, vertex_connectivity_with};
use robustnet::consensus::{simulate, AdversaryStrategy, Scenario, StrategyKind, ThreatModel};
use robustnet::construction::{grow_trace, AttachMode, GrowthPolicy};
use robustnet::generators::{complete, gnp};
use robustnet::robustness::{
    f_local_sets, f_local_sets_with, has_spanning_tree, is_r_robust, is_r_robust_with, is_strongly_r_robust,
    max_robustness, max_robustness_with, max_strong_robustness, max_strong_robustness_with,
};
use robustnet::{oracle, CheckOptions, DiGraph, Execution, Extended, NodeSet};

fn small_graph() -> impl Strategy<Value = DiGraph> {
    (1usize..=7, 0.1f64..0.95, any::<bool>(), any::<u64>()).prop_map(|(n, p, directed, seed)| {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        gnp(n, p, directed, &mut rng).unwrap()
    })
}

fn oracle_max_strong(g: &DiGraph) -> Extended {
    // beyond n every set is either reachable at all levels or never
    let limit = g.n() + 1;
    let mut r = 0;
    while r < limit && oracle::is_strongly_r_robust(g, r + 1) {
        r += 1;
    }
    if r == limit {
        Extended::Infinite
    } else {
        Extended::Finite(r)
    }
}

fn strategy_for(kind: u8, seed: u64) -> AdversaryStrategy {
    let (kind, model) = match kind % 4 {
        0 => (StrategyKind::Constant { value: 3.0 }, ThreatModel::Malicious),
        1 => (StrategyKind::Ramp { start: -2.0, slope: 0.5 }, ThreatModel::Malicious),
        2 => (StrategyKind::Random { low: -5.0, high: 5.0 }, ThreatModel::Malicious),
        _ => (StrategyKind::Random { low: -5.0, high: 5.0 }, ThreatModel::Byzantine),
    };
    AdversaryStrategy::new(kind, model, seed)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn checkers_agree_with_the_oracle(g in small_graph()) {
        let n = g.n();
        for r in 1..=n + 1 {
            prop_assert_eq!(is_r_robust(&g, r).unwrap(), oracle::is_r_robust(&g, r), "r = {}", r);
            prop_assert_eq!(is_strongly_r_robust(&g, r).unwrap(), oracle::is_strongly_r_robust(&g, r), "r = {}", r);
        }
        prop_assert_eq!(max_robustness(&g).unwrap(), oracle::max_robustness(&g));
        prop_assert_eq!(max_strong_robustness(&g).unwrap(), oracle_max_strong(&g));
        prop_assert_eq!(has_spanning_tree(&g), oracle::has_spanning_tree(&g));
        if !g.is_directed() {
            prop_assert_eq!(vertex_connectivity(&g).unwrap(), oracle::vertex_connectivity(&g));
        }
        for f in 0..n {
            let sets = f_local_sets(&g, f).unwrap();
            let expected: Vec<u64> = (0..1u64 << n).filter(|&s| oracle::is_f_local(&g, s, f)).collect();
            prop_assert_eq!(sets.iter().map(NodeSet::to_mask).collect::<Vec<_>>(), expected);
        }
    }

    #[test]
    fn robustness_is_monotone_in_r(g in small_graph()) {
        let n = g.n();
        for r in 1..=n {
            if is_r_robust(&g, r + 1).unwrap() {
                prop_assert!(is_r_robust(&g, r).unwrap());
            }
            if is_strongly_r_robust(&g, r + 1).unwrap() {
                prop_assert!(is_strongly_r_robust(&g, r).unwrap());
            }
        }
    }

    #[test]
    fn strong_implies_standard_when_2r_le_n(g in small_graph()) {
        let n = g.n();
        for r in (1..=n).filter(|r| 2 * r <= n) {
            if is_strongly_r_robust(&g, r).unwrap() {
                prop_assert!(is_r_robust(&g, r).unwrap(), "r = {}", r);
            }
        }
    }

    #[test]
    fn robustness_is_bounded_by_min_in_degree(g in small_graph()) {
        prop_assume!(g.n() >= 2);
        prop_assert!(max_robustness(&g).unwrap() <= g.min_in_degree().max(1));
    }

    #[test]
    fn removing_an_edge_never_helps(g in small_graph(), pick in any::<prop::sample::Index>()) {
        let edges: Vec<_> = if g.is_directed() { g.edges().collect() } else { g.undirected_edges().collect() };
        prop_assume!(!edges.is_empty());
        let e = edges[pick.index(edges.len())];
        let h = g.without_edges(&[e, (e.1, e.0)][..if g.is_directed() { 1 } else { 2 }]);
        prop_assert!(max_robustness(&h).unwrap() <= max_robustness(&g).unwrap());
        prop_assert!(max_strong_robustness(&h).unwrap() <= max_strong_robustness(&g).unwrap());
        if !g.is_directed() {
            prop_assert!(vertex_connectivity(&h).unwrap() <= vertex_connectivity(&g).unwrap());
        }
    }

    #[test]
    fn one_robust_graphs_have_a_spanning_tree(g in small_graph()) {
        if is_r_robust(&g, 1).unwrap() {
            prop_assert!(has_spanning_tree(&g));
        }
    }

    #[test]
    fn sequential_and_parallel_agree(g in small_graph()) {
        let seq = CheckOptions { exec: Execution::Sequential, ..CheckOptions::default() };
        let par = CheckOptions { exec: Execution::Parallel, ..CheckOptions::default() };
        prop_assert_eq!(max_robustness_with(&g, &seq).unwrap(), max_robustness_with(&g, &par).unwrap());
        prop_assert_eq!(max_strong_robustness_with(&g, &seq).unwrap(), max_strong_robustness_with(&g, &par).unwrap());
        prop_assert_eq!(is_r_robust_with(&g, 2, &seq).unwrap(), is_r_robust_with(&g, 2, &par).unwrap());
        prop_assert_eq!(f_local_sets_with(&g, 1, &seq).unwrap(), f_local_sets_with(&g, 1, &par).unwrap());
        if !g.is_directed() {
            prop_assert_eq!(
                vertex_connectivity_with(&g, Execution::Sequential).unwrap(),
                vertex_connectivity_with(&g, Execution::Parallel).unwrap()
            );
        }
    }

    #[test]
    fn wmsr_stays_in_the_normal_hull(
        g in small_graph(),
        f in 0usize..3,
        pick in any::<prop::sample::Index>(),
        values in prop::collection::vec(-10.0f64..10.0, 7),
        kind in any::<u8>(),
        seed in any::<u64>(),
    ) {
        let sets = f_local_sets(&g, f).unwrap();
        let bad = sets[pick.index(sets.len())].clone();
        prop_assume!(bad.len() < g.n());
        let mut sc = Scenario::new(g.clone(), f, values[..g.n()].to_vec())
            .with_adversary(bad, strategy_for(kind, seed));
        sc.horizon = Some(200);
        let (traj, verdict) = simulate(&sc).unwrap();
        prop_assert!(verdict.safe);
        for t in 0..traj.phi.len() {
            prop_assert!(traj.max_normal[t] <= verdict.max_normal_initial);
            prop_assert!(traj.min_normal[t] >= verdict.min_normal_initial);
        }
        let (again, verdict_again) = simulate(&sc).unwrap();
        prop_assert_eq!(traj, again);
        prop_assert_eq!(verdict, verdict_again);
    }

    #[test]
    fn cpa_never_misleads_under_f_local_faults(
        g in small_graph(),
        f in 0usize..3,
        pick in any::<prop::sample::Index>(),
        kind in any::<u8>(),
        seed in any::<u64>(),
    ) {
        let source = 0;
        let sets: Vec<NodeSet> = f_local_sets(&g, f).unwrap().into_iter().filter(|s| !s.contains(source)).collect();
        let bad = &sets[pick.index(sets.len())];
        let out = cpa_run(&g, source, f, bad, &strategy_for(kind, seed), 1.0).unwrap();
        prop_assert!(out.misled.is_empty());
        prop_assert!(out.accepted.contains(source));
        for i in out.accepted.iter() {
            prop_assert!(!bad.contains(i));
        }
    }

    #[test]
    fn growth_from_a_robust_seed_stays_robust(r in 1usize..=3, extra in 1usize..=4, seed in any::<u64>(), pref in any::<bool>()) {
        let mode = if pref { AttachMode::PreferentialAttachment } else { AttachMode::Uniform };
        let base = complete(2 * r - 1).unwrap();
        let trace = grow_trace(&base, &GrowthPolicy::new(r, mode, seed), base.n() + extra).unwrap();
        for g in &trace {
            prop_assert!(is_r_robust(g, r).unwrap(), "n = {}", g.n());
        }
    }
}

#[test]
fn strong_robustness_can_exceed_standard_once_2r_passes_n() {
    let k5 = complete(5).unwrap();
    assert!(is_strongly_r_robust(&k5, 4).unwrap());
    assert!(!is_r_robust(&k5, 4).unwrap());
    assert_eq!(max_robustness(&k5).unwrap(), 3);
}
