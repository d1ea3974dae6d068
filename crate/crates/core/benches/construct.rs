//! Greedy construction and the exact hop audit, on the default rayon pool
//! and on a single-thread pool.

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use hopset_core::audit::{hop_diameter, HopMode};
use hopset_core::constructions::greedy_hopset;
use hopset_core::generate::random_graph;
use hopset_core::RoutingOracle;

fn pools() -> Vec<(&'static str, rayon::ThreadPool)> {
    vec![
        ("rayon", rayon::ThreadPoolBuilder::new().build().unwrap()),
        ("sequential", rayon::ThreadPoolBuilder::new().num_threads(1).build().unwrap()),
    ]
}

fn construct(c: &mut Criterion) {
    let mut group = c.benchmark_group("greedy");
    group.sample_size(10);
    for n in [100usize, 200] {
        let g = random_graph(n, 3 * n, false, 10, 1).unwrap();
        for (name, pool) in pools() {
            group.bench_with_input(BenchmarkId::new(name, n), &g, |b, g| {
                b.iter(|| {
                    pool.install(|| {
                        let o = RoutingOracle::build(g, 0).unwrap();
                        greedy_hopset(&o).unwrap().0.len()
                    })
                })
            });
        }
    }
    group.finish();
}

fn audit(c: &mut Criterion) {
    let mut group = c.benchmark_group("hop_diameter");
    group.sample_size(10);
    let n = 300;
    let g = random_graph(n, 3 * n, false, 10, 2).unwrap();
    let h = greedy_hopset(&RoutingOracle::build(&g, 0).unwrap()).unwrap().0;
    for (name, pool) in pools() {
        group.bench_function(BenchmarkId::new(name, n), |b| {
            b.iter(|| pool.install(|| hop_diameter(&g, &h, HopMode::Exact, 0).unwrap().beta))
        });
    }
    group.finish();
}

criterion_group!(benches, construct, audit);
criterion_main!(benches);
