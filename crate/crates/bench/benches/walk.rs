use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use std::hint::black_box;

use ctqw_bench::{equal, generic};
use ctqw_core::{amplitude_even, distribution, lattice, spectral, LimitLaw, Method};

fn single_amplitude(c: &mut Criterion) {
    let params = generic();
    let mut group = c.benchmark_group("amplitude_even");
    for t in [10.0, 100.0, 500.0] {
        group.bench_with_input(BenchmarkId::from_parameter(t), &t, |b, &t| {
            b.iter(|| amplitude_even(&params, black_box(7), t).unwrap())
        });
    }
    group.finish();
}

fn distributions(c: &mut Criterion) {
    let mut group = c.benchmark_group("distribution");
    group.sample_size(10);
    let t = 50.0;
    let p = generic();
    let r = p.light_cone_radius(t);
    group.bench_function("quadrature", |b| {
        b.iter(|| distribution(&p, t, r, Method::FourierQuadrature).unwrap())
    });
    group.bench_function("lattice", |b| b.iter(|| lattice::evolve_on_lattice(&p, t, r).unwrap()));
    let q = equal();
    let rq = q.light_cone_radius(500.0);
    group.bench_function("bessel_t500", |b| b.iter(|| distribution(&q, 500.0, rq, Method::Bessel).unwrap()));
    group.finish();
}

fn eigendecomposition(c: &mut Criterion) {
    let mut group = c.benchmark_group("tridiagonal_eigen");
    group.sample_size(10);
    for radius in [50usize, 200] {
        let h = lattice::build_hamiltonian(&generic(), radius).unwrap();
        let diag = vec![0.0; h.dim()];
        group.bench_with_input(BenchmarkId::from_parameter(radius), &radius, |b, _| {
            b.iter(|| lattice::tridiagonal_eigen(&diag, h.couplings()).unwrap())
        });
    }
    group.finish();
}

fn spectral_and_limit(c: &mut Criterion) {
    let p = generic();
    c.bench_function("k_branches", |b| b.iter(|| spectral::k_branches(&p, black_box(0.2)).unwrap()));
    let law = LimitLaw::from_params(&p);
    c.bench_function("limit_cdf", |b| b.iter(|| law.cdf(black_box(0.3))));
}

criterion_group!(benches, single_amplitude, distributions, eigendecomposition, spectral_and_limit);
criterion_main!(benches);
