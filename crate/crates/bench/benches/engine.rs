use std::hint::black_box;

use calg_bench::{linking_sequence, maximal_square, quadric_ci, twisted_cubic};
use calg_core::cotangent::cotangent_modules;
use calg_core::koszul_tate::minimal_resolvent;
use calg_core::linkage::link;
use calg_core::modules::{residue_field_betti, resolve, PresentedModule};
use calg_core::series::{alpha_coefficients, deviations_from_betti_table, odd_alpha_coefficients};
use calg_core::Base;
use criterion::{criterion_group, criterion_main, Criterion};

fn groebner(c: &mut Criterion) {
    c.bench_function("groebner/quadric_ci", |b| {
        b.iter(|| {
            let i = quadric_ci();
            black_box(i.groebner_basis().len())
        })
    });
}

fn resolutions(c: &mut Criterion) {
    let tc = twisted_cubic();
    let m = PresentedModule::cyclic(&Base::Poly(tc.ring().clone()), &tc).unwrap();
    c.bench_function("resolve/twisted_cubic", |b| {
        b.iter(|| resolve(black_box(&m), 6).unwrap())
    });
    let m2 = maximal_square();
    c.bench_function("residue_field_betti/m2_to_8", |b| {
        b.iter(|| residue_field_betti(black_box(&m2), 8).unwrap())
    });
}

fn resolvents(c: &mut Criterion) {
    let tc = twisted_cubic();
    c.bench_function("resolvent/twisted_cubic_d5", |b| {
        b.iter(|| minimal_resolvent(black_box(&tc), 5).unwrap())
    });
    let m2 = maximal_square();
    c.bench_function("cotangent/m2_d6", |b| {
        b.iter(|| cotangent_modules(black_box(&m2), 6).unwrap())
    });
}

fn series(c: &mut Criterion) {
    let m2 = maximal_square();
    let eps = deviations_from_betti_table(&residue_field_betti(&m2, 12).unwrap()).unwrap();
    c.bench_function("series/alpha_m2", |b| {
        b.iter(|| {
            alpha_coefficients(black_box(&eps), 24).unwrap();
            odd_alpha_coefficients(black_box(&eps), 17).unwrap()
        })
    });
}

fn linkage(c: &mut Criterion) {
    let m2 = maximal_square();
    let xs = linking_sequence(&m2);
    c.bench_function("link/m2_via_x2_y3", |b| {
        b.iter(|| link(black_box(&m2), &xs).unwrap())
    });
}

criterion_group! {
    name = engine;
    config = Criterion::default().sample_size(10);
    targets = groebner, resolutions, resolvents, series, linkage
}
criterion_main!(engine);
