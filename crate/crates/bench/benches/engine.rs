use std::time::Duration;

use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};

use freefield_core::bounds::norm_estimate;
use freefield_core::fermion_mode;
use freefield_core::realizations::{Realization, RealizationParams, Role, Variant};
use freefield_core::scalar::{int, rat};
use freefield_core::superalg::{abstract_gram, psd_check, AlgebraKind, LowestWeightData, Presentation};
use freefield_core::verify::{check_relations, oracle_compare};
use freefield_core::walgebra::catalog::{identity_check, IDENTITY_NAMES};
use freefield_core::walgebra::lambda::{BracketKind, MinimalData};
use freefield_core::walgebra::load_named;
use freefield_core::{FieldContent, HalfInt};

fn modes(c: &mut Criterion) {
    let mut group = c.benchmark_group("modes");
    group.measurement_time(Duration::from_secs(3));
    for variant in [Variant::Bs, Variant::Unitary] {
        let p = RealizationParams::ns(variant, rat(1, 2));
        group.bench_function(BenchmarkId::new("L_-2 L_-1 G_-1/2 Ω", variant), |b| {
            b.iter(|| {
                let mut r = Realization::new(p.clone()).unwrap();
                let v = r.apply(Role::G, HalfInt::from_twice(-1), &r.vacuum()).unwrap();
                let v = r.apply(Role::L, HalfInt::from_int(-1), &v).unwrap();
                black_box(r.apply(Role::L, HalfInt::from_int(-2), &v).unwrap())
            })
        });
    }
    group.finish();
}

fn relations(c: &mut Criterion) {
    let mut group = c.benchmark_group("relations");
    group.sample_size(10).measurement_time(Duration::from_secs(5));
    let ns = RealizationParams::ns(Variant::Bs, rat(1, 2));
    let n2 = RealizationParams::n2(Variant::Unitary, rat(1, 2)).with_eta(int(1)).with_omega(int(1));
    group.bench_function("ns bs window 2 cutoff 3", |b| b.iter(|| black_box(check_relations(&ns, 2, HalfInt::from_int(3)).unwrap())));
    group.bench_function("n2 unitary window 2 cutoff 3", |b| b.iter(|| black_box(check_relations(&n2, 2, HalfInt::from_int(3)).unwrap())));
    group.finish();
}

fn gram(c: &mut Criterion) {
    let mut group = c.benchmark_group("gram");
    group.sample_size(10).measurement_time(Duration::from_secs(5));
    for tw in [4, 6, 8] {
        let level = HalfInt::from_twice(tw);
        group.bench_with_input(BenchmarkId::new("ns vacuum psd c=3/2", level), &level, |b, &level| {
            let pres = Presentation::new(AlgebraKind::Ns, rat(3, 2));
            let lw = LowestWeightData::vacuum(rat(3, 2));
            b.iter(|| black_box(psd_check(&abstract_gram(&pres, &lw, level)).unwrap()))
        });
    }
    let p = RealizationParams::ns(Variant::Unitary, rat(1, 2)).with_eta(rat(1, 2));
    group.bench_function("oracle ns unitary level 2", |b| b.iter(|| black_box(oracle_compare(&p, HalfInt::from_int(2)).unwrap())));
    group.finish();
}

fn walgebra(c: &mut Criterion) {
    let mut group = c.benchmark_group("walgebra");
    group.bench_function("identities", |b| b.iter(|| IDENTITY_NAMES.iter().all(|n| identity_check(n).unwrap().verified())));
    group.bench_function("load spo_2_3", |b| b.iter(|| black_box(load_named("spo_2_3").unwrap())));
    let d = MinimalData::new(load_named("spo_2_3").unwrap()).unwrap();
    let (u, v) = (d.natural.basis[0].clone(), d.natural.basis[1].clone());
    group.bench_function("JJ bracket spo_2_3", |b| b.iter(|| black_box(d.lambda_bracket(BracketKind::JJ, &u, &v, None).unwrap())));
    group.finish();
}

fn norms(c: &mut Criterion) {
    let mut group = c.benchmark_group("norm_estimate");
    group.sample_size(10);
    for cutoff in [3, 5] {
        let op = fermion_mode(FieldContent::N2, 0, HalfInt::from_twice(1)).unwrap();
        group.bench_with_input(BenchmarkId::new("fermion n2", cutoff), &cutoff, |b, &cutoff| {
            b.iter(|| black_box(norm_estimate(&op, HalfInt::from_int(cutoff)).unwrap()))
        });
    }
    group.finish();
}

criterion_group!(benches, modes, relations, gram, walgebra, norms);
criterion_main!(benches);
