use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use purespin::fock::{kernel_eigenvalue, nystrom_spectrum, NystromConfig};
use purespin::spinor::random_pure_spinor;
use purespin::tolerance::RANK_TOL;
use purespin::{build_gamma_rep, null_plane_of, Chirality, Signature};

fn gamma_reps(c: &mut Criterion) {
    let mut g = c.benchmark_group("build_gamma_rep");
    for n in 1..=6 {
        g.bench_with_input(BenchmarkId::from_parameter(n), &n, |b, &n| {
            b.iter(|| build_gamma_rep(black_box(n), Signature::euclidean(n)).unwrap())
        });
    }
    g.finish();
}

fn null_planes(c: &mut Criterion) {
    let mut g = c.benchmark_group("null_plane_of");
    for n in [2, 4, 5] {
        let rep = build_gamma_rep(n, Signature::euclidean(n)).unwrap();
        let psi = random_pure_spinor(&rep, Chirality::Plus, 7).unwrap();
        g.bench_with_input(BenchmarkId::from_parameter(n), &n, |b, _| {
            b.iter(|| null_plane_of(black_box(&psi), &rep, RANK_TOL).unwrap())
        });
    }
    g.finish();
}

fn fock(c: &mut Criterion) {
    c.bench_function("kernel_eigenvalue/n=10", |b| b.iter(|| kernel_eigenvalue(black_box(10), 64).unwrap()));
    let mut g = c.benchmark_group("nystrom_spectrum");
    g.sample_size(10);
    for grid in [8, 12] {
        g.bench_with_input(BenchmarkId::from_parameter(grid), &grid, |b, &grid| {
            b.iter(|| nystrom_spectrum(&NystromConfig::new(grid, 1)).unwrap())
        });
    }
    g.finish();
}

criterion_group!(benches, gamma_reps, null_planes, fock);
criterion_main!(benches);
