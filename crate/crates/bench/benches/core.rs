use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use divlie_core::autos::{conjugate, conjugate_via_jacobian};
use divlie_core::closure::{bracket_closure, div0_generators};
use divlie_core::random::{random_derivation, random_tame, seeded};
use divlie_core::{enumerate_basis, BasisSpec, SpanSpace};

fn bracket(c: &mut Criterion) {
    let mut rng = seeded(1);
    let pairs: Vec<_> = (0..64)
        .map(|_| (random_derivation(&mut rng, 3, 4, 4), random_derivation(&mut rng, 3, 4, 4)))
        .collect();
    c.bench_function("bracket n=3 deg<=4", |b| {
        b.iter(|| {
            for (d, e) in &pairs {
                black_box(d.bracket(e).unwrap());
            }
        })
    });
}

fn closure(c: &mut Criterion) {
    let mut g = c.benchmark_group("closure");
    g.sample_size(10);
    for n in [2, 3] {
        let gens = div0_generators(n);
        g.bench_function(format!("div0 generators n={n} D=4"), |b| {
            b.iter(|| black_box(bracket_closure(&gens, 4).unwrap()))
        });
    }
    g.finish();
}

fn reduction(c: &mut Criterion) {
    let basis = enumerate_basis(&BasisSpec::divc(3, 4));
    c.bench_function("reduce divc basis n=3 D=4", |b| {
        b.iter(|| black_box(SpanSpace::reduce(3, &basis).unwrap()))
    });
}

fn conjugation(c: &mut Criterion) {
    let mut g = c.benchmark_group("conjugate");
    let mut rng = seeded(2);
    let inputs: Vec<_> = (0..16)
        .map(|_| (random_tame(&mut rng, 2, 4, 3, 4), random_derivation(&mut rng, 2, 3, 3)))
        .collect();
    g.bench_function("substitution n=2", |b| {
        b.iter(|| {
            for (s, d) in &inputs {
                black_box(conjugate(s, d).unwrap());
            }
        })
    });
    g.bench_function("jacobian n=2", |b| {
        b.iter(|| {
            for (s, d) in &inputs {
                black_box(conjugate_via_jacobian(s, d).unwrap());
            }
        })
    });
    g.finish();
}

criterion_group!(benches, bracket, closure, reduction, conjugation);
criterion_main!(benches);
