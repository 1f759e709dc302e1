//! How fast the verifier walks admissible tuples, on stored fixtures and
//! on the largest packing the factorization route produces.

use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use genpack::{catalogue, construct, PackingInstance};

fn verify_benches(c: &mut Criterion) {
    let mut group = c.benchmark_group("verify");

    group.bench_function("catalogue verify_all", |b| {
        b.iter(|| black_box(catalogue::verify_all()).all_pass())
    });

    let soma = catalogue::lookup("soma-2-6").unwrap().packing().unwrap();
    group.bench_function("36-block array fixture", |b| {
        b.iter(|| black_box(&soma).verify().unwrap().valid)
    });

    let inst = PackingInstance::new(vec![20, 20], vec![2, 1], 2, 1).unwrap();
    let large = construct::construct_max(&inst).unwrap().into_packing();
    group.bench_function("190-block factorization", |b| {
        b.iter(|| black_box(&large).verify().unwrap().valid)
    });

    group.finish();
}

criterion_group!(benches, verify_benches);
criterion_main!(benches);
