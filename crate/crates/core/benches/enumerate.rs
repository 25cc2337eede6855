use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use fano_core::{enumerate_all_with, ground_truth, Strategy};

fn bench_enumerate(c: &mut Criterion) {
    let mut group = c.benchmark_group("enumerate");
    group.sample_size(20);
    for rho in [2usize, 3] {
        let truth = ground_truth(rho, false).expect("embedded table");
        let primitive = rho == 3;
        for (name, strategy) in [("sequential", Strategy::Sequential), ("parallel", Strategy::Parallel)] {
            group.bench_with_input(BenchmarkId::new(name, rho), &rho, |b, &rho| {
                b.iter(|| enumerate_all_with(black_box(rho), primitive, strategy, &truth).expect("enumeration"))
            });
        }
    }
    group.finish();
}

criterion_group!(benches, bench_enumerate);
criterion_main!(benches);
