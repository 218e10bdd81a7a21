use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use sutured_bench::compose_fixtures;
use sutured_core::gluing::{compose_iso, glue_corpus, pants_iso, self_glue_iso};
use sutured_core::statespace::StateSpace;
use sutured_core::surface::surface_fgp;
use sutured_core::Grading;

fn state_space(c: &mut Criterion) {
    let f = surface_fgp(2, 4);
    c.bench_function("build F_{2,4} with actions", |b| {
        b.iter(|| StateSpace::build(black_box(&f), &Grading::tensor()).unwrap().bimodule().unwrap())
    });
}

fn self_glue(c: &mut Criterion) {
    let mut group = c.benchmark_group("self_glue_iso");
    for inst in glue_corpus() {
        group.bench_function(inst.name, |b| {
            b.iter(|| self_glue_iso(black_box(&inst.surface), inst.first, inst.second, &Grading::tensor()).unwrap())
        });
    }
    group.finish();
}

fn compose(c: &mut Criterion) {
    let mut group = c.benchmark_group("compose_iso");
    group.sample_size(10);
    for (name, fp, f) in compose_fixtures() {
        group.bench_function(name, |b| b.iter(|| compose_iso(black_box(&fp), black_box(&f), &Grading::tensor()).unwrap()));
    }
    group.finish();
}

fn pants(c: &mut Criterion) {
    c.bench_function("pants_iso p = 4", |b| b.iter(|| pants_iso(black_box(4), &Grading::tensor()).unwrap()));
}

criterion_group!(benches, state_space, self_glue, compose, pants);
criterion_main!(benches);
