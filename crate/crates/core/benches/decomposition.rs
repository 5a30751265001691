use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use rookdecomp::decomposition::{build_table_with, rook_equivalence_check, DEFAULT_MAX_TABLE_N};
use rookdecomp::Execution;

const MODES: [(&str, Execution); 2] = [
    ("sequential", Execution::Sequential),
    ("parallel", Execution::Parallel),
];

fn table(c: &mut Criterion) {
    let mut group = c.benchmark_group("build_table");
    group.sample_size(10);
    for n in [30u32, 45] {
        for (name, mode) in MODES {
            group.bench_with_input(BenchmarkId::new(name, n), &n, |b, &n| {
                b.iter(|| build_table_with(n, DEFAULT_MAX_TABLE_N, mode).unwrap())
            });
        }
    }
    group.finish();
}

fn rook_sweep(c: &mut Criterion) {
    let mut group = c.benchmark_group("rook_equivalence");
    group.sample_size(10);
    for (name, mode) in MODES {
        group.bench_with_input(BenchmarkId::new(name, 25), &25u32, |b, &n| {
            b.iter(|| rook_equivalence_check(n, mode))
        });
    }
    group.finish();
}

criterion_group!(benches, table, rook_sweep);
criterion_main!(benches);
