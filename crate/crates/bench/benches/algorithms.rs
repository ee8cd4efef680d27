use criterion::{black_box, criterion_group, criterion_main, Criterion};
use srlab::congruence::all_congruences;
use srlab::enumerate::{enumerate_size, lattices};
use srlab::{canonicalize, examples, Mode};

fn enumeration(c: &mut Criterion) {
    c.bench_function("lattices n=6", |b| b.iter(|| lattices(black_box(6))));
    c.bench_function("enumerate n=4", |b| b.iter(|| enumerate_size(black_box(4), Mode::Fast).unwrap()));
}

fn canonical_forms(c: &mut Criterion) {
    let pool: Vec<_> = enumerate_size(5, Mode::Fast).unwrap().into_iter().map(|e| e.algebra).collect();
    c.bench_function("canonicalize all of size 5", |b| {
        b.iter(|| pool.iter().for_each(|s| drop(black_box(canonicalize(black_box(s)).unwrap()))))
    });
}

fn congruence_lattices(c: &mut Criterion) {
    let luk = examples::lukasiewicz_pair(9, 5).unwrap();
    c.bench_function("all_congruences luk9-5", |b| b.iter(|| all_congruences(black_box(&luk)).unwrap()));
    let diamond = examples::diamond();
    c.bench_function("all_congruences diamond", |b| b.iter(|| all_congruences(black_box(&diamond)).unwrap()));
}

criterion_group!(benches, enumeration, canonical_forms, congruence_lattices);
criterion_main!(benches);
