//! Criterion benchmarks for the hot paths: enumeration, mod-2 linear
//! algebra, Smith normal form, exact volumes, and operadic composition.

use criterion::{criterion_group, criterion_main, Criterion};
use permop_core::complex::{build_cact, order_complex};
use permop_core::geometry::cact_cell_volume;
use permop_core::homology::gf2_betti;
use permop_core::operad::dyer_lashof_right;
use permop_core::seq::{build_j_n, NrSequence};
use permop_core::snf::smith_normal_form;
use permop_core::tree::{enumerate_trees, t_sigma};
use std::hint::black_box;

fn bench_tree_enumeration(c: &mut Criterion) {
    let labels: Vec<u32> = (1..=4).collect();
    c.bench_function("enumerate_trees n=4", |b| {
        b.iter(|| enumerate_trees(black_box(&labels)).unwrap().len())
    });
}

fn bench_poset_build(c: &mut Criterion) {
    c.bench_function("build_j_n n=4", |b| b.iter(|| build_j_n(black_box(4)).unwrap()));
}

fn bench_gf2_homology(c: &mut Criterion) {
    let cx = build_cact(4).unwrap();
    c.bench_function("gf2_betti cact n=4", |b| {
        b.iter(|| gf2_betti(black_box(&cx.f_vector()), black_box(cx.boundary2())))
    });
}

fn bench_smith(c: &mut Criterion) {
    let cx = build_cact(3).unwrap();
    let oc = order_complex(cx.face_poset());
    let boundaries = oc.boundaries();
    c.bench_function("smith_normal_form order-complex d2 n=3", |b| {
        b.iter(|| smith_normal_form(black_box(&boundaries[2])).unwrap())
    });
}

fn bench_volume(c: &mut Criterion) {
    let sigma = NrSequence::parse("4321").unwrap();
    let tops = t_sigma(&sigma, Some(3)).unwrap();
    c.bench_function("cact_cell_volume 15 tops n=4", |b| {
        b.iter(|| {
            tops.iter()
                .map(|t| cact_cell_volume(black_box(t)))
                .fold(num_rational::BigRational::from_integer(0.into()), |a, v| a + v)
        })
    });
}

fn bench_compose(c: &mut Criterion) {
    c.bench_function("dyer_lashof_right n=5", |b| {
        b.iter(|| dyer_lashof_right(black_box(5)).unwrap().len())
    });
}

criterion_group!(
    benches,
    bench_tree_enumeration,
    bench_poset_build,
    bench_gf2_homology,
    bench_smith,
    bench_volume,
    bench_compose
);
criterion_main!(benches);
