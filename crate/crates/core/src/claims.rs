//! The reproducible experiment suite.
//!
//! Each claim is a self-contained experiment with a fixed pass criterion.
//! All randomness comes from one ChaCha stream per claim, derived from the
//! run seed, so a claim's verdict and detail string are reproducible.

use std::time::{Duration, Instant};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::broadcast::{cpa_sweep, x_graph, x_graph_witness, x_metric};
use crate::connectivity::vertex_connectivity;
use crate::consensus::{
    necessity_demo, simulate, AdversaryStrategy, Outcome, Scenario, StrategyKind, ThreatModel,
};
use crate::construction::{grow, grow_trace, preferential_sample, attachment_weights, AttachMode, GrowthPolicy};
use crate::error::Result;
use crate::exec::{self, CheckOptions, Execution};
use crate::generators::{
    complete, fig1_tight_graph, gnp, prop1_graph, prop4_graph, prop4_label, prop4_node, Fig1Layout,
    Prop1Layout,
};
use crate::graph::{DiGraph, NodeId, NodeSet};
use crate::oracle;
use crate::robustness::{
    f_local_sets, has_spanning_tree, is_f_local, is_r_reachable, is_r_robust, is_r_robust_with,
    is_strongly_r_robust, is_strongly_r_robust_with, max_robustness, max_robustness_with,
};

/// Seed used when none is given.
pub const DEFAULT_SEED: u64 = 20_130_401;

pub const CLAIM_COUNT: u8 = 10;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ClaimResult {
    pub id: u8,
    pub name: String,
    pub passed: bool,
    pub detail: String,
    /// Wall-clock time; left out of serialized results so they stay
    /// byte-for-byte reproducible.
    #[serde(skip)]
    pub elapsed_ms: u128,
}

impl ClaimResult {
    pub fn line(&self) -> String {
        format!(
            "[{}] claim {:>2}: {} ({} ms) -- {}",
            if self.passed { "PASS" } else { "FAIL" },
            self.id,
            self.name,
            self.elapsed_ms,
            self.detail
        )
    }
}

pub fn claim_name(id: u8) -> Option<&'static str> {
    Some(match id {
        1 => "two-clique graph: connectivity 5 but only 1-robust; W-MSR stalls",
        2 => "3-robust graphs: W-MSR converges safely under every 1-local adversary",
        3 => "tight graph: 2-robust, yet W-MSR with f = 1 stalls",
        4 => "non-(f+1)-robust graphs admit a scenario that never converges",
        5 => "the normal value range never widens",
        6 => "robustness predicates are monotone and survive bounded edge removal",
        7 => "1-robust graphs contain a rooted spanning tree",
        8 => "growth keeps graphs r-robust; preferential draws follow degree",
        9 => "CPA succeeds on strongly 3-robust and X(G) > 2 graphs",
        10 => "optimized checkers agree with brute-force oracles",
        _ => return None,
    })
}

/// Collects failed checks of one claim.
#[derive(Default)]
struct Checks {
    failures: Vec<String>,
    notes: Vec<String>,
}

impl Checks {
    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        if !ok {
            self.failures.push(what());
        }
    }

    fn note(&mut self, s: impl Into<String>) {
        self.notes.push(s.into());
    }

    fn within(&mut self, elapsed: Duration, limit: Duration) {
        self.check(elapsed <= limit, || format!("took {elapsed:?}, limit {limit:?}"));
    }

    fn finish(self, id: u8, elapsed: Duration) -> ClaimResult {
        let passed = self.failures.is_empty();
        let mut detail = self.notes.join("; ");
        if !passed {
            let shown: Vec<&str> = self.failures.iter().take(5).map(String::as_str).collect();
            let more = self.failures.len().saturating_sub(shown.len());
            detail = format!(
                "{} failure(s): {}{}{}",
                self.failures.len(),
                shown.join(" | "),
                if more > 0 { format!(" | ... {more} more") } else { String::new() },
                if detail.is_empty() { String::new() } else { format!("; {detail}") }
            );
        }
        ClaimResult {
            id,
            name: claim_name(id).unwrap_or("unknown").to_string(),
            passed,
            detail,
            elapsed_ms: elapsed.as_millis(),
        }
    }
}

fn rng_for(seed: u64, id: u8) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(id as u64);
    rng
}

/// Runs one claim. Unknown ids produce a failed result.
pub fn run_claim(id: u8, seed: u64) -> ClaimResult {
    let start = Instant::now();
    let mut c = Checks::default();
    let mut rng = rng_for(seed, id);
    let outcome = match id {
        1 => claim_two_cliques(&mut c),
        2 => claim_sufficiency(&mut c, &mut rng),
        3 => claim_tight_graph(&mut c),
        4 => claim_necessity(&mut c),
        5 => claim_safety(&mut c, &mut rng),
        6 => claim_monotonicity(&mut c, &mut rng),
        7 => claim_spanning_tree(&mut c, &mut rng),
        8 => claim_growth(&mut c, &mut rng),
        9 => claim_cpa(&mut c, &mut rng),
        10 => claim_oracles(&mut c, &mut rng),
        _ => {
            c.check(false, || format!("no claim with id {id}"));
            Ok(())
        }
    };
    if let Err(e) = outcome {
        c.check(false, || format!("error: {e}"));
    }
    let elapsed = start.elapsed();
    let limit = match id {
        1 | 3 => Some(Duration::from_secs(5)),
        9 => Some(Duration::from_secs(10)),
        2 | 5 => Some(Duration::from_secs(120)),
        _ => None,
    };
    if let Some(limit) = limit {
        c.within(elapsed, limit);
    }
    c.finish(id, elapsed)
}

/// Runs every claim in order.
pub fn run_all(seed: u64) -> Vec<ClaimResult> {
    (1..=CLAIM_COUNT).map(|id| run_claim(id, seed)).collect()
}

fn two_clique_values(layout: &Prop1Layout, n: usize) -> Vec<f64> {
    let mut v = vec![1.0; n];
    for a in layout.a() {
        v[a] = 0.0;
    }
    v
}

fn claim_two_cliques(c: &mut Checks) -> Result<()> {
    let (n, f) = (10, 1);
    let g = prop1_graph(n, f)?;
    let kappa = vertex_connectivity(&g)?;
    let degree = g.min_in_degree();
    let r = max_robustness(&g)?;
    c.check(kappa == n / 2 + f - 1, || format!("connectivity {kappa}, expected {}", n / 2 + f - 1));
    c.check(degree == 5, || format!("min degree {degree}, expected 5"));
    c.check(r == 1, || format!("max robustness {r}, expected 1"));
    let (traj, verdict) = simulate(&Scenario::new(g, f, two_clique_values(&Prop1Layout::new(n), n)))?;
    c.check(verdict.outcome == Outcome::Stalled, || format!("outcome {}", verdict.outcome.label()));
    c.check(traj.phi.iter().all(|&p| p == 1.0), || "spread moved away from 1".into());
    c.note(format!("kappa={kappa} min_degree={degree} r={r} {} after {} steps", verdict.outcome.label(), verdict.steps_used));
    Ok(())
}

fn battery() -> Vec<(&'static str, AdversaryStrategy)> {
    let random = |seed| AdversaryStrategy::new(StrategyKind::Random { low: -10.0, high: 10.0 }, ThreatModel::Malicious, seed);
    vec![
        ("constant", AdversaryStrategy::constant(100.0)),
        ("ramp", AdversaryStrategy::new(StrategyKind::Ramp { start: -5.0, slope: 0.5 }, ThreatModel::Malicious, 0)),
        ("random-1", random(1)),
        ("random-2", random(2)),
        ("random-3", random(3)),
        (
            "byzantine-random",
            AdversaryStrategy::new(StrategyKind::Random { low: -10.0, high: 10.0 }, ThreatModel::Byzantine, 4),
        ),
    ]
}

fn claim_sufficiency(c: &mut Checks, rng: &mut ChaCha8Rng) -> Result<()> {
    let f = 1;
    let grown = grow(&complete(5)?, &GrowthPolicy::new(3, AttachMode::Uniform, rng.gen()), 10)?;
    let graphs = [("K5", complete(5)?), ("K7", complete(7)?), ("grown-10", grown)];
    let mut scenarios = Vec::new();
    for (name, g) in &graphs {
        c.check(is_r_robust(g, 2 * f + 1)?, || format!("{name} is not 3-robust"));
        let inits: Vec<Vec<f64>> = (0..3).map(|_| (0..g.n()).map(|_| rng.gen::<f64>()).collect()).collect();
        let sets: Vec<NodeSet> = f_local_sets(g, f)?.into_iter().filter(|s| s.len() < g.n()).collect();
        for set in &sets {
            for (label, strategy) in battery() {
                for init in &inits {
                    let sc = Scenario::new(g.clone(), f, init.clone()).with_adversary(set.clone(), strategy.clone());
                    scenarios.push((format!("{name} faulty={:?} {label}", set.to_vec()), sc));
                }
            }
        }
    }
    let results = exec::map_slice(Execution::Parallel, &scenarios, |(_, sc)| simulate(sc).map(|(_, v)| v));
    let mut converged = 0;
    for ((label, _), res) in scenarios.iter().zip(results) {
        let v = res?;
        let ok = v.outcome.is_converged() && v.safe;
        converged += ok as usize;
        c.check(ok, || format!("{label}: {} safe={}", v.outcome.label(), v.safe));
    }
    c.note(format!("{converged}/{} runs converged safely", scenarios.len()));
    Ok(())
}

fn claim_tight_graph(c: &mut Checks) -> Result<()> {
    let layout = Fig1Layout::new(1);
    let g = fig1_tight_graph(1)?;
    let r = max_robustness(&g)?;
    c.check(r == 2, || format!("max robustness {r}, expected 2"));
    let (s1, s3) = (layout.s1().start, layout.s3().start);
    let mut init = vec![0.5; layout.n()];
    init[layout.a] = 0.0;
    init[layout.b] = 1.0;
    let faulty: NodeSet = [s1, s3].into_iter().collect();
    let sc = Scenario {
        stall_window: 1000,
        ..Scenario::new(g, 1, init).with_adversary(faulty, AdversaryStrategy::hold([(s1, 0.0), (s3, 1.0)]))
    };
    let (traj, verdict) = simulate(&sc)?;
    c.check(verdict.outcome == Outcome::Stalled, || format!("outcome {}", verdict.outcome.label()));
    c.check(traj.steps() >= 1000, || format!("only {} steps", traj.steps()));
    let frozen = traj
        .values
        .iter()
        .all(|row| row[layout.a].to_bits() == 0.0f64.to_bits() && row[layout.b].to_bits() == 1.0f64.to_bits());
    c.check(frozen, || "a or b changed".into());
    c.note(format!("r={r} {} after {} steps, a and b frozen", verdict.outcome.label(), traj.steps()));
    Ok(())
}

fn claim_necessity(c: &mut Checks) -> Result<()> {
    let g = prop1_graph(10, 1)?;
    match necessity_demo(&g, 1)? {
        Some(sc) => {
            let (_, v) = simulate(&sc)?;
            c.check(v.outcome == Outcome::Stalled, || format!("witness outcome {}", v.outcome.label()));
            c.note(format!("two-clique witness {}", v.outcome.label()));
        }
        None => c.check(false, || "no witness for the two-clique graph".into()),
    }
    let none = necessity_demo(&complete(5)?, 1)?.is_none();
    c.check(none, || "K5 produced a witness".into());
    Ok(())
}

fn random_strategy(rng: &mut ChaCha8Rng, n: usize) -> AdversaryStrategy {
    let model = if rng.gen_bool(0.5) { ThreatModel::Malicious } else { ThreatModel::Byzantine };
    let kind = match rng.gen_range(0..4) {
        0 => StrategyKind::Constant { value: rng.gen_range(-5.0..5.0) },
        1 => StrategyKind::Ramp { start: rng.gen_range(-2.0..2.0), slope: rng.gen_range(-0.5..0.5) },
        2 => StrategyKind::Random { low: -3.0, high: 4.0 },
        _ => StrategyKind::CustomScript {
            values: (0..n)
                .map(|j| (j, (0..rng.gen_range(1..6)).map(|_| rng.gen_range(-1.0..2.0)).collect()))
                .collect(),
        },
    };
    AdversaryStrategy::new(kind, model, rng.gen())
}

fn claim_safety(c: &mut Checks, rng: &mut ChaCha8Rng) -> Result<()> {
    let mut scenarios = Vec::new();
    while scenarios.len() < 500 {
        let n = rng.gen_range(2..=12);
        let g = gnp(n, rng.gen_range(0.2..0.95), rng.gen_bool(0.5), rng)?;
        let f = rng.gen_range(0..=2);
        let sets: Vec<NodeSet> = f_local_sets(&g, f)?.into_iter().filter(|s| s.len() < n).collect();
        let faulty = sets.choose(rng).cloned().unwrap_or_default();
        let init = (0..n).map(|_| rng.gen_range(0.0..1.0)).collect();
        let strategy = random_strategy(rng, n);
        scenarios.push(Scenario::new(g, f, init).with_adversary(faulty, strategy));
    }
    let results = exec::map_slice(Execution::Parallel, &scenarios, simulate);
    let (mut converged, mut stalled, mut timeout) = (0, 0, 0);
    for (k, res) in results.into_iter().enumerate() {
        let (traj, v) = res?;
        let monotone = traj.max_normal.windows(2).all(|w| w[1] <= w[0]) && traj.min_normal.windows(2).all(|w| w[1] >= w[0]);
        c.check(monotone, || format!("scenario {k}: normal range widened"));
        match v.outcome {
            Outcome::Converged { value } => {
                converged += 1;
                let (lo, hi) = (v.min_normal_initial - 1e-9, v.max_normal_initial + 1e-9);
                c.check((lo..=hi).contains(&value), || format!("scenario {k}: value {value} outside initial range"));
                let last = traj.values.last().expect("nonempty");
                let inside = scenarios[k].normal_nodes().all(|i| (lo..=hi).contains(&last[i]));
                c.check(inside, || format!("scenario {k}: a final normal value left the initial range"));
            }
            Outcome::Stalled => stalled += 1,
            Outcome::Timeout => timeout += 1,
        }
    }
    c.note(format!(
        "{} scenarios: {converged} converged, {stalled} stalled, {timeout} timed out; invariants held",
        scenarios.len()
    ));
    Ok(())
}

fn random_graph(rng: &mut ChaCha8Rng, n_max: usize) -> Result<DiGraph> {
    let n = rng.gen_range(1..=n_max);
    gnp(n, rng.gen_range(0.1..1.0), rng.gen_bool(0.5), rng)
}

fn random_subset(rng: &mut ChaCha8Rng, n: usize) -> NodeSet {
    loop {
        let s: NodeSet = (0..n).filter(|_| rng.gen_bool(0.5)).collect();
        if !s.is_empty() {
            return s;
        }
    }
}

/// Removes up to `k` random incoming edges at every node.
fn drop_in_edges(g: &DiGraph, k: usize, rng: &mut ChaCha8Rng) -> DiGraph {
    let mut removed = Vec::new();
    for i in 0..g.n() {
        let mut ins = g.in_adj(i).to_vec();
        ins.shuffle(rng);
        let take = rng.gen_range(0..=k.min(ins.len()));
        removed.extend(ins[..take].iter().map(|&j| (j, i)));
    }
    g.without_edges(&removed)
}

fn claim_monotonicity(c: &mut Checks, rng: &mut ChaCha8Rng) -> Result<()> {
    let mut implications = 0;
    for k in 0..200 {
        let g = random_graph(rng, 10)?;
        let n = g.n();
        for r in 1..=n {
            let (a, b) = (is_r_robust(&g, r + 1)?, is_r_robust(&g, r)?);
            c.check(!a || b, || format!("graph {k}: {}-robust but not {r}-robust", r + 1));
            let (a, b) = (is_strongly_r_robust(&g, r + 1)?, is_strongly_r_robust(&g, r)?);
            c.check(!a || b, || format!("graph {k}: strongly {}-robust but not strongly {r}-robust", r + 1));
            implications += 2;
        }
        if n > 0 {
            for _ in 0..10 {
                let s = random_subset(rng, n);
                for r in 1..=n {
                    let (a, b) = (is_r_reachable(&g, &s, r + 1)?, is_r_reachable(&g, &s, r)?);
                    c.check(!a || b, || format!("graph {k}: set {:?} {}-reachable but not {r}-reachable", s.to_vec(), r + 1));
                    implications += 1;
                }
            }
        }
    }
    let mut trials = 0;
    let mut attempts = 0;
    while trials < 100 && attempts < 100_000 {
        attempts += 1;
        let n = rng.gen_range(4..=10);
        let g = gnp(n, rng.gen_range(0.6..1.0), rng.gen_bool(0.5), rng)?;
        let r = max_robustness(&g)?;
        if r < 2 {
            continue;
        }
        let k = rng.gen_range(1..r);
        let thinned = drop_in_edges(&g, k, rng);
        c.check(is_r_robust(&thinned, r - k)?, || format!("trial {trials}: {r}-robust graph lost {}-robustness after removing <= {k} in-edges per node", r - k));
        trials += 1;
    }
    c.check(trials == 100, || format!("only {trials} edge-removal trials found"));
    c.note(format!("{implications} monotonicity implications on 200 graphs; {trials} edge-removal trials"));
    Ok(())
}

fn claim_spanning_tree(c: &mut Checks, rng: &mut ChaCha8Rng) -> Result<()> {
    let mut robust = 0;
    for k in 0..200 {
        let g = random_graph(rng, 10)?;
        if g.n() >= 2 && is_r_robust(&g, 1)? {
            robust += 1;
            c.check(has_spanning_tree(&g), || format!("graph {k}: 1-robust without a spanning tree"));
        }
        c.check(has_spanning_tree(&g) == oracle::has_spanning_tree(&g), || format!("graph {k}: spanning tree check disagrees with closure"));
    }
    c.note(format!("{robust} of 200 graphs 1-robust, all with spanning trees"));
    Ok(())
}

fn claim_growth(c: &mut Checks, rng: &mut ChaCha8Rng) -> Result<()> {
    let setups: [(usize, usize); 4] = [(2, 3), (2, 4), (2, 5), (3, 5)];
    let mut checked = 0;
    for trace_id in 0..50 {
        let (r, seed_n) = setups[trace_id % setups.len()];
        let mode = if trace_id % 2 == 0 { AttachMode::Uniform } else { AttachMode::PreferentialAttachment };
        let policy = GrowthPolicy::new(r, mode, rng.gen());
        for (step, g) in grow_trace(&complete(seed_n)?, &policy, 12)?.iter().enumerate() {
            c.check(is_r_robust(g, r)?, || format!("trace {trace_id} (r={r}, seed K{seed_n}) not {r}-robust at step {step}"));
            checked += 1;
        }
    }

    let g = grow(&complete(3)?, &GrowthPolicy::new(2, AttachMode::PreferentialAttachment, rng.gen()), 12)?;
    let weights = attachment_weights(&g);
    let total: f64 = weights.iter().sum();
    let draws = 10_000;
    let mut counts = vec![0usize; g.n()];
    for _ in 0..draws {
        counts[preferential_sample(&g, 1, rng)?[0]] += 1;
    }
    let mut worst: f64 = 0.0;
    for (v, (&count, &w)) in counts.iter().zip(&weights).enumerate() {
        let p = w / total;
        let expected = draws as f64 * p;
        let se = (draws as f64 * p * (1.0 - p)).sqrt();
        let z = if se > 0.0 { (count as f64 - expected).abs() / se } else { (count as f64 - expected).abs() };
        worst = worst.max(z);
        c.check(z <= 3.0, || format!("node {v}: {count} draws, expected {expected:.1} (z = {z:.2})"));
    }
    c.note(format!("{checked} intermediate graphs r-robust; preferential draws max |z| = {worst:.2}"));
    Ok(())
}

fn cpa_strategies() -> [AdversaryStrategy; 2] {
    [
        // every liar pushes the same fake value
        AdversaryStrategy::constant(-1.0),
        AdversaryStrategy::new(StrategyKind::Random { low: -4.0, high: 4.0 }, ThreatModel::Byzantine, 9),
    ]
}

fn sweep_all(g: &DiGraph, sources: impl Iterator<Item = NodeId>, f: usize) -> Result<(usize, Vec<String>)> {
    let mut cases = 0;
    let mut bad = Vec::new();
    for source in sources {
        for strategy in &cpa_strategies() {
            for o in cpa_sweep(g, source, f, strategy, 1.0, &CheckOptions::default())? {
                cases += 1;
                if !o.success || !o.misled.is_empty() {
                    bad.push(format!("source {source} faulty {:?}", o.malicious.to_vec()));
                }
            }
        }
    }
    Ok((cases, bad))
}

fn claim_cpa(c: &mut Checks, rng: &mut ChaCha8Rng) -> Result<()> {
    let g = prop4_graph();
    let (v, s) = (prop4_node(8), prop4_node(1));
    let x_pair = x_metric(&g, v, s)?;
    let xg = x_graph(&g)?;
    c.check(x_pair == 2, || format!("X(8, 1) = {x_pair}, expected 2"));
    c.check(!xg.exceeds(2), || format!("X(G) = {xg}, expected at most 2"));
    c.check(is_strongly_r_robust(&g, 3)?, || "not strongly 3-robust".into());
    let (cases, bad) = sweep_all(&g, std::iter::once(s), 1)?;
    for b in &bad {
        c.check(false, || format!("8-node graph: {b}"));
    }

    let mut found = 0;
    let mut random_cases = 0;
    let mut attempts = 0;
    while found < 12 && attempts < 10_000 {
        attempts += 1;
        let n = rng.gen_range(5..=9);
        let h = gnp(n, rng.gen_range(0.7..0.95), false, rng)?;
        if !h.is_weakly_connected() || !x_graph(&h)?.exceeds(2) {
            continue;
        }
        found += 1;
        let (cases, bad) = sweep_all(&h, 0..n, 1)?;
        random_cases += cases;
        for b in &bad {
            c.check(false, || format!("random graph {found} (X(G) = {}): {b}", x_graph(&h).map(|x| x.to_string()).unwrap_or_default()));
        }
    }
    c.check(found == 12, || format!("only {found} random graphs with X(G) > 2"));
    let witness = x_graph_witness(&g)?
        .map(|w| format!(" at (v={}, s={})", prop4_label(w.v), prop4_label(w.s)))
        .unwrap_or_default();
    c.note(format!(
        "X(8,1)={x_pair} X(G)={xg}{witness}; {cases} CPA runs on the 8-node graph, {random_cases} on {found} random X(G)>2 graphs"
    ));
    Ok(())
}

fn claim_oracles(c: &mut Checks, rng: &mut ChaCha8Rng) -> Result<()> {
    let seq = CheckOptions::sequential();
    let par = CheckOptions { exec: Execution::Parallel, ..CheckOptions::default() };
    let mut comparisons = 0;
    for k in 0..100 {
        let g = random_graph(rng, 8)?;
        let n = g.n();
        let fast = max_robustness(&g)?;
        c.check(fast == oracle::max_robustness(&g), || format!("graph {k}: max robustness {fast} vs oracle {}", oracle::max_robustness(&g)));
        c.check(max_robustness_with(&g, &seq)? == max_robustness_with(&g, &par)?, || format!("graph {k}: sequential and parallel disagree"));
        for r in 1..=n + 1 {
            let a = is_r_robust_with(&g, r, &seq)?;
            c.check(a == oracle::is_r_robust(&g, r), || format!("graph {k}: {r}-robust disagrees"));
            let b = is_strongly_r_robust_with(&g, r, &par)?;
            c.check(b == oracle::is_strongly_r_robust(&g, r), || format!("graph {k}: strongly {r}-robust disagrees"));
            comparisons += 2;
        }
        for s in 0..(1u64 << n) {
            let set = NodeSet::from_mask(s);
            for f in 0..3 {
                c.check(is_f_local(&g, &set, f) == oracle::is_f_local(&g, s, f), || format!("graph {k}: {f}-local disagrees on {s:#b}"));
            }
            if s != 0 {
                for r in 1..=n.max(1) {
                    c.check(is_r_reachable(&g, &set, r)? == oracle::is_r_reachable(&g, s, r), || format!("graph {k}: {r}-reachable disagrees on {s:#b}"));
                }
            }
            comparisons += 1;
        }
        c.check(has_spanning_tree(&g) == oracle::has_spanning_tree(&g), || format!("graph {k}: spanning tree disagrees"));
        if !g.is_directed() {
            let kappa = vertex_connectivity(&g)?;
            c.check(kappa == oracle::vertex_connectivity(&g), || format!("graph {k}: connectivity {kappa} vs oracle {}", oracle::vertex_connectivity(&g)));
        }
    }
    c.note(format!("100 graphs (n <= 8), {comparisons}+ predicate comparisons"));
    Ok(())
}
