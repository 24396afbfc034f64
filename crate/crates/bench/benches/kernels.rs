use criterion::{criterion_group, criterion_main, BatchSize, Criterion};
use std::hint::black_box;

use btk_core::apsieve;
use btk_core::kloosterman::DirectKloosterman;
use btk_core::{KloostermanTable, PrimeModulus, SmoothWeight};

fn bench_table_build(c: &mut Criterion) {
    let q = PrimeModulus::new(10007).unwrap();
    c.bench_function("table_build_q10007", |b| {
        b.iter(|| KloostermanTable::build(black_box(&q)).unwrap())
    });
}

fn bench_direct_eval(c: &mut Criterion) {
    let q = PrimeModulus::new(10007).unwrap();
    let direct = DirectKloosterman::new(&q);
    c.bench_function("direct_eval_q10007", |b| {
        let mut a = 1i64;
        b.iter(|| {
            a = a % 10006 + 1;
            black_box(direct.eval(black_box(a), 1))
        })
    });
}

fn bench_residue_sieve(c: &mut Criterion) {
    c.bench_function("residue_counts_1e7_q101", |b| {
        b.iter(|| apsieve::residue_counts(black_box(10_000_000), black_box(101)))
    });
}

fn bench_phi_hat(c: &mut Criterion) {
    let w = SmoothWeight::with_standard_width(1.0e8).unwrap();
    c.bench_function("phi_hat", |b| {
        b.iter_batched(
            || 1.0 / 10007.0,
            |xi| black_box(w.phi_hat(black_box(xi))),
            BatchSize::SmallInput,
        )
    });
}

criterion_group!(kernels, bench_table_build, bench_direct_eval, bench_residue_sieve, bench_phi_hat);
criterion_main!(kernels);
