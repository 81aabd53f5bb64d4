use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use milnor_core::catalog;
use milnor_core::par::Execution;
use milnor_core::report::report_with;

const MODES: [(&str, Execution); 2] =
    [("sequential", Execution::Sequential), ("parallel", Execution::Parallel)];

fn report_large(c: &mut Criterion) {
    let mut group = c.benchmark_group("report");
    group.sample_size(10);
    for (label, arr) in [
        ("generic-30", catalog::generic(30).unwrap()),
        ("near-pencil-36", catalog::near_pencil(36).unwrap()),
    ] {
        for (mode, exec) in MODES {
            group.bench_with_input(BenchmarkId::new(mode, label), &arr, |b, arr| {
                b.iter(|| report_with(arr, exec).unwrap())
            });
        }
    }
    group.finish();
}

fn catalog_sweep(c: &mut Criterion) {
    let members = catalog::members(12);
    let mut group = c.benchmark_group("catalog-sweep");
    for (mode, exec) in MODES {
        group.bench_function(mode, |b| {
            b.iter(|| {
                milnor_core::par::map(exec, &members, |(_, a)| {
                    report_with(a, Execution::Sequential).unwrap().primes.len()
                })
            })
        });
    }
    group.finish();
}

criterion_group!(benches, report_large, catalog_sweep);
criterion_main!(benches);
