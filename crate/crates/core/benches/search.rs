//! Parallel against sequential execution for the oracle and the suites.

use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use rainbow_forge::exec::Execution;
use rainbow_forge::oracle::{self, OracleConfig};
use rainbow_forge::suites;

const STRATEGIES: [(&str, Execution); 2] = [("sequential", Execution::Sequential), ("parallel", Execution::Parallel)];

fn oracle_decisions(c: &mut Criterion) {
    let mut group = c.benchmark_group("oracle");
    group.sample_size(10);
    // (6, 2) at 12 colors is a full refutation; (7, 2) at 13 finds a witness.
    for (n, colors, symmetry) in [(6, 12, false), (7, 13, true)] {
        for (name, exec) in STRATEGIES {
            let cfg = OracleConfig { exec, vertex_symmetry: symmetry, ..OracleConfig::default() };
            group.bench_with_input(BenchmarkId::new(name, format!("n{n}-c{colors}")), &cfg, |b, cfg| {
                b.iter(|| oracle::exists_coloring_without_rainbow(black_box(n), 2, colors, cfg).unwrap().nodes)
            });
        }
    }
    group.finish();
}

fn suite_runs(c: &mut Criterion) {
    let mut group = c.benchmark_group("suites");
    group.sample_size(10);
    for (name, exec) in STRATEGIES {
        group.bench_function(BenchmarkId::new(name, "l4"), |b| b.iter(|| suites::matching_triangle_sweep(exec).cases));
        group.bench_function(BenchmarkId::new(name, "sparse-2000"), |b| b.iter(|| suites::sparse_suite(black_box(1), 2_000, exec).cases));
        group.bench_function(BenchmarkId::new(name, "finder-8-2"), |b| {
            b.iter(|| suites::finder_threshold(black_box(1), 200, 8, 2, exec).cases)
        });
    }
    group.finish();
}

criterion_group!(benches, oracle_decisions, suite_runs);
criterion_main!(benches);
