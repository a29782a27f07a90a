use std::hint::black_box;

use beauville_core::dsl::{parse, render_json, run_suite, Suite};
use beauville_core::exact::{int, CstPoly};
use beauville_core::llv::{build_primed_dictionary, build_triple, verify_verbitsky, FourClassModel, FourierOpMap, Generators};
use beauville_core::{jacobian, k3};
use criterion::{criterion_group, criterion_main, Criterion};

fn llv(c: &mut Criterion) {
    let model = FourClassModel::standard(2, &int(-3), 4).unwrap();
    c.bench_function("verbitsky_dim10", |b| {
        b.iter(|| verify_verbitsky(&Generators::<CstPoly>::new(black_box(&model)).unwrap()))
    });
    let g = Generators::<CstPoly>::new(&FourClassModel::standard(12, &int(1), 0).unwrap()).unwrap();
    c.bench_function("triple_g12", |b| {
        b.iter(|| {
            let dict = build_primed_dictionary(&g, -1).unwrap();
            build_triple(12, &dict, &FourierOpMap::new(-1, 1).unwrap()).unwrap()
        })
    });
}

fn motive_and_jacobian(c: &mut Criterion) {
    c.bench_function("k3_verify_all", |b| b.iter(|| k3::verify_all().unwrap()));
    c.bench_function("genus3_obstruction", |b| b.iter(|| jacobian::genus3_obstruction().unwrap()));
    c.bench_function("genus_ge4_g8", |b| b.iter(|| jacobian::genus_ge4(black_box(8)).unwrap()));
}

fn dsl(c: &mut Criterion) {
    let src = "(theta + (1/2 - b)*(psi1 + psi2))^5 - [K(1, 2), K(2, 3)] o F";
    c.bench_function("parse_print", |b| b.iter(|| parse(black_box(src)).unwrap().to_string()));
    let sel = [Suite::Llv { hdim: 6, t: int(1), trials: 2, seed: 1 }];
    c.bench_function("llv_report_json", |b| b.iter(|| render_json(&run_suite(&sel, false).unwrap())));
}

criterion_group!(benches, llv, motive_and_jacobian, dsl);
criterion_main!(benches);
