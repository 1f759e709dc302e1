//! Cost of the closed-form tables and of assembling the generalized
//! upper bound from its candidate terms.

use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use genpack::{bounds, PackingInstance};

fn bound_benches(c: &mut Criterion) {
    let mut group = c.benchmark_group("bounds");

    group.bench_function("triple numbers 3..=99", |b| {
        b.iter(|| {
            (3..=99usize)
                .map(|v| bounds::ordinary_triple_number(black_box(v)).0)
                .sum::<usize>()
        })
    });

    group.bench_function("quadruple numbers 4..=99", |b| {
        b.iter(|| {
            (4..=99usize)
                .map(|v| bounds::ordinary_quadruple_number(black_box(v)))
                .sum::<usize>()
        })
    });

    let instances: Vec<PackingInstance> = [
        (vec![13, 8], vec![3, 1]),
        (vec![8, 7, 7], vec![2, 1, 1]),
        (vec![6, 12], vec![2, 2]),
        (vec![9, 9, 9, 9], vec![1, 1, 1, 1]),
    ]
    .into_iter()
    .map(|(v, k)| PackingInstance::new(v, k, 2, 1).unwrap())
    .collect();

    group.bench_function("upper bound, one per family", |b| {
        b.iter(|| {
            instances
                .iter()
                .map(|inst| bounds::generalized_upper_bound(black_box(inst)).value)
                .sum::<usize>()
        })
    });

    group.bench_function("known numbers, one per family", |b| {
        b.iter(|| {
            instances
                .iter()
                .filter_map(|inst| bounds::known_packing_number(black_box(inst)))
                .map(|r| r.value)
                .sum::<usize>()
        })
    });

    group.finish();
}

criterion_group!(benches, bound_benches);
criterion_main!(benches);
