use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use gammatri::clustermodels::type_a_subdivision;
use gammatri::coxgamma::gamma_triangle_types;
use gammatri::serieslab::{g_closed, Kind};
use gammatri::triangles::gamma_triangle_from_h;
use gammatri::CoxeterType;

fn transforms(c: &mut Criterion) {
    let a6 = type_a_subdivision(6).unwrap();
    let h = a6.sphere().triangles().unwrap().h;
    c.bench_function("gamma_triangle_from_h A6", |b| {
        b.iter(|| gamma_triangle_from_h(black_box(&h), 6).unwrap())
    });
    c.bench_function("sphere triangles A5", |b| {
        let sub = type_a_subdivision(5).unwrap();
        b.iter(|| black_box(&sub).sphere().triangles().unwrap())
    });
}

fn cluster(c: &mut Criterion) {
    c.bench_function("diagram sum E8", |b| {
        b.iter(|| gamma_triangle_types(black_box(&[CoxeterType::E8])).unwrap())
    });
    c.bench_function("g_D closed form to t^24", |b| b.iter(|| g_closed(Kind::D, black_box(24)).unwrap()));
}

criterion_group! {
    name = benches;
    config = Criterion::default().sample_size(10);
    targets = transforms, cluster
}
criterion_main!(benches);
