use std::hint::black_box;
use std::sync::Arc;

use criterion::{criterion_group, criterion_main, Criterion};

use dglie_core::dga::truncated_poly_dga;
use dglie_core::hkr::{hkr_report, u1, TruncationSpec};
use dglie_core::linf::{mc_residue, q_from_dgla, twist_coder};
use dglie_core::random::{end_v, random_mc, random_polydiff, random_polyvec, rng};

fn brackets(c: &mut Criterion) {
    let mut r = rng(1);
    let a = random_polyvec(3, 1, 3, 6, &mut r);
    let b = random_polyvec(3, 1, 3, 6, &mut r);
    c.bench_function("schouten n=3 bivectors", |bn| bn.iter(|| black_box(&a).schouten(black_box(&b))));
    c.bench_function("u1 n=3 bivector", |bn| bn.iter(|| u1(black_box(&a))));

    let f = random_polydiff(2, 1, 2, 2, 4, &mut r);
    let g = random_polydiff(2, 1, 2, 2, 4, &mut r);
    c.bench_function("gerstenhaber n=2 p=1", |bn| bn.iter(|| black_box(&f).gerstenhaber(black_box(&g))));
    c.bench_function("hochschild n=2 p=1", |bn| bn.iter(|| black_box(&f).hochschild_d()));
}

fn maurer_cartan(c: &mut Criterion) {
    let mut r = rng(2);
    let g = end_v();
    let coeffs = Arc::new(truncated_poly_dga(&[0], 4).unwrap());
    let a = q_from_dgla(&g, coeffs.clone()).unwrap();
    let omega = random_mc(&g, &coeffs, &mut r).unwrap().expect("end_v is unobstructed");
    c.bench_function("mc residue end_v hbar^4", |bn| bn.iter(|| mc_residue(&a, black_box(&omega)).unwrap()));
    c.bench_function("twist end_v hbar^4", |bn| bn.iter(|| twist_coder(&a, black_box(&omega), false).unwrap()));
}

fn cohomology(c: &mut Criterion) {
    let spec = TruncationSpec::new(2, 2, 2, -1, 1).unwrap();
    let mut group = c.benchmark_group("hkr");
    group.sample_size(10);
    group.bench_function("report n=2 degree 2 order 2", |bn| bn.iter(|| hkr_report(black_box(&spec)).unwrap()));
    group.finish();
}

criterion_group!(benches, brackets, maurer_cartan, cohomology);
criterion_main!(benches);
