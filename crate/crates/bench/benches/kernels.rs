use aont_bench::{dense, range7};
use aont_core::search::{exists_strong_in, SearchConfig};
use aont_core::{Direction, Field, TransformArray};
use criterion::{black_box, criterion_group, criterion_main, Criterion};

fn determinant(c: &mut Criterion) {
    let m = dense(251, 32);
    c.bench_function("determinant 32x32 GF(251)", |b| b.iter(|| black_box(&m).determinant().unwrap()));
}

fn submatrix_scan(c: &mut Criterion) {
    let m = range7();
    c.bench_function("all 2x2 minors of range7", |b| {
        b.iter(|| black_box(&m).all_submatrices_invertible(2, None).unwrap())
    });
}

fn brute_force(c: &mut Criterion) {
    let a = TransformArray::from_linear(&range7(), Direction::Inverse).unwrap();
    let mut group = c.benchmark_group("brute force");
    group.sample_size(10);
    group.bench_function("verify_range(1, 2) on range7", |b| b.iter(|| a.verify_range(1, 2).unwrap()));
    group.finish();
}

fn search(c: &mut Criterion) {
    let f = Field::from_order(5).unwrap();
    let config = SearchConfig::default();
    let mut group = c.benchmark_group("search");
    group.sample_size(10);
    group.bench_function("exists_strong q=5 s=4", |b| b.iter(|| exists_strong_in(&f, 4, 2, &config).unwrap()));
    group.finish();
}

criterion_group!(kernels, determinant, submatrix_scan, brute_force, search);
criterion_main!(kernels);
