use criterion::{criterion_group, criterion_main, Criterion};
use p1hall::sheaf::{extensions, hall_number, hom_count};
use p1hall::suite::{self, Universe};
use p1hall::{HallElement, Indecomposable, SheafClass};
use std::hint::black_box;

fn sheaf(s: &str) -> SheafClass {
    s.parse().unwrap()
}

fn counts(c: &mut Criterion) {
    let (f, a, b) = (sheaf("O(0)+O(2)+T0(1)"), sheaf("O(1)+T0(1)"), sheaf("O(1)"));
    c.bench_function("hall_number rank 2", |bench| {
        bench.iter(|| hall_number(black_box(&f), black_box(&a), black_box(&b)))
    });
    let (a, b) = (sheaf("T0(2)+Tinf(1)+C(2)"), sheaf("O(-1)+T0(1)"));
    c.bench_function("extensions mixed", |bench| {
        bench.iter(|| extensions(black_box(&a), black_box(&b)))
    });
    c.bench_function("hom_count line bundles", |bench| {
        bench.iter(|| hom_count(black_box(Indecomposable::LineBundle(-3)), black_box(Indecomposable::LineBundle(5))))
    });
}

fn products(c: &mut Criterion) {
    let x: HallElement = "[O(0)] + 2*[T0(1)] - [C(2)]".parse().unwrap();
    let y: HallElement = "[O(1)] + [Tinf(2)] + 1/2*[T0(1)+C(1)]".parse().unwrap();
    c.bench_function("star", |bench| bench.iter(|| black_box(&x).star(black_box(&y))));
    c.bench_function("bracket", |bench| bench.iter(|| black_box(&x).bracket(black_box(&y))));
    let z: HallElement = "[O(0)+O(1)+T0(1)]".parse().unwrap();
    c.bench_function("coproduct", |bench| bench.iter(|| black_box(&z).coproduct()));
}

fn suites(c: &mut Criterion) {
    let u = Universe { max_rank: 2, max_weight: 2, max_cyclic: 2 };
    let mut group = c.benchmark_group("suites");
    group.sample_size(10);
    group.bench_function("associativity weight 2", |bench| bench.iter(|| suite::associativity(black_box(&u))));
    group.bench_function("bialgebra weight 2", |bench| bench.iter(|| suite::bialgebra(black_box(&u))));
    group.finish();
}

criterion_group!(benches, counts, products, suites);
criterion_main!(benches);
