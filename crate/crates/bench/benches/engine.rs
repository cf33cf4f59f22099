use criterion::{black_box, criterion_group, criterion_main, Criterion};
use fbasis_core::basis::{bj_identity_check, build_family, certify_rank, reduction_sweep};
use fbasis_core::lattice::{schur_monomial_rank, vacuum_expectation_series};
use fbasis_core::lrcoeff::lr_series;
use fbasis_core::{FreeFermionLattice, GaussianRational, YFrac};

fn basis(c: &mut Criterion) {
    let mut g = c.benchmark_group("basis");
    g.sample_size(10);
    g.bench_function("build_family n=3", |b| b.iter(|| build_family(black_box(3)).unwrap()));
    g.bench_function("bj_identity n=4", |b| b.iter(|| bj_identity_check(black_box(4)).unwrap()));
    g.bench_function("reduction_sweep n=3", |b| b.iter(|| reduction_sweep(black_box(3)).unwrap()));
    g.bench_function("certify_rank n=3", |b| b.iter(|| certify_rank(black_box(3), &[1, 2]).unwrap()));
    g.finish();
}

fn lr(c: &mut Criterion) {
    let mut g = c.benchmark_group("lr");
    g.sample_size(10);
    g.bench_function("lr_series l=2 cap=6", |b| b.iter(|| lr_series(black_box(2), 6)));
    g.finish();
}

fn lattice(c: &mut Criterion) {
    let mut g = c.benchmark_group("lattice");
    g.sample_size(10);
    let sym = FreeFermionLattice::<YFrac>::symbolic();
    g.bench_function("vacuum expectation z^4 symbolic", |b| b.iter(|| vacuum_expectation_series(&sym, black_box(4))));
    let num = FreeFermionLattice::at(GaussianRational::from_int(3)).unwrap();
    let x = num.fock_panel().swap_remove(1).1;
    g.bench_function("hstar series order 3", |b| b.iter(|| num.hstar_series(black_box(&x), 3)));
    g.bench_function("monomial rank w=3", |b| b.iter(|| schur_monomial_rank(black_box(3), GaussianRational::from_int(3)).unwrap()));
    g.finish();
}

criterion_group!(benches, basis, lr, lattice);
criterion_main!(benches);
