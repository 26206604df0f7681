use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use robustnet::broadcast::cpa_sweep;
use robustnet::consensus::{simulate_batch, AdversaryStrategy, Scenario};
use robustnet::generators::{complete, gnp};
use robustnet::robustness::{f_local_sets_with, is_r_robust_with, max_robustness_with, max_strong_robustness_with};
use robustnet::{CheckOptions, DiGraph, Execution, NodeSet};
use std::hint::black_box;

const MODES: [(&str, Execution); 2] = [("sequential", Execution::Sequential), ("parallel", Execution::Parallel)];

fn opts(exec: Execution) -> CheckOptions {
    CheckOptions {
        exec,
        ..CheckOptions::default()
    }
}

fn random_graph(n: usize, seed: u64) -> DiGraph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    gnp(n, 0.6, false, &mut rng).unwrap()
}

fn robustness(c: &mut Criterion) {
    let mut group = c.benchmark_group("robustness");
    group.sample_size(10);
    for n in [12, 16] {
        let g = random_graph(n, n as u64);
        for (name, exec) in MODES {
            let o = opts(exec);
            group.bench_with_input(BenchmarkId::new(format!("is_3_robust/{name}"), n), &g, |b, g| {
                b.iter(|| is_r_robust_with(black_box(g), 3, &o).unwrap())
            });
            group.bench_with_input(BenchmarkId::new(format!("max_robustness/{name}"), n), &g, |b, g| {
                b.iter(|| max_robustness_with(black_box(g), &o).unwrap())
            });
            group.bench_with_input(BenchmarkId::new(format!("max_strong_robustness/{name}"), n), &g, |b, g| {
                b.iter(|| max_strong_robustness_with(black_box(g), &o).unwrap())
            });
            group.bench_with_input(BenchmarkId::new(format!("f_local_sets/{name}"), n), &g, |b, g| {
                b.iter(|| f_local_sets_with(black_box(g), 2, &o).unwrap())
            });
        }
    }
    group.finish();
}

fn consensus(c: &mut Criterion) {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let g = complete(9).unwrap();
    let scenarios: Vec<Scenario> = (0..64)
        .map(|k| {
            let init = (0..9).map(|_| rng.gen_range(-1.0..1.0)).collect();
            let bad: NodeSet = [k % 9, (k + 4) % 9].into_iter().collect();
            Scenario::new(g.clone(), 2, init).with_adversary(bad, AdversaryStrategy::constant(5.0))
        })
        .collect();
    let mut group = c.benchmark_group("simulate_batch");
    group.sample_size(10);
    for (name, exec) in MODES {
        group.bench_function(name, |b| b.iter(|| simulate_batch(black_box(&scenarios), exec)));
    }
    group.finish();
}

fn broadcast(c: &mut Criterion) {
    let g = complete(12).unwrap();
    let lie = AdversaryStrategy::constant(-1.0);
    let mut group = c.benchmark_group("cpa_sweep");
    group.sample_size(10);
    for (name, exec) in MODES {
        let o = opts(exec);
        group.bench_function(name, |b| b.iter(|| cpa_sweep(black_box(&g), 0, 2, &lie, 1.0, &o).unwrap()));
    }
    group.finish();
}

criterion_group!(benches, robustness, consensus, broadcast);
criterion_main!(benches);
