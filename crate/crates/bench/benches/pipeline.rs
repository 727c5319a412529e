use criterion::{black_box, criterion_group, criterion_main, Criterion};

use k3smooth::groebner::saturate_irrelevant;
use k3smooth::pipeline::jacobian_ideal;
use k3smooth::resolution::free_resolution;
use k3smooth::{analyze_quartic, parse_polynomial, Polynomial, RingContext};

const QUARTICS: [(&str, &str); 4] = [
    ("cusp_chain", "x*y^3 + y*z^3 + t^4"),
    ("koszul", "t^4 + x^3*y - x*y^3"),
    ("three_points", "t^4 + x^2*y^2 + x^2*z^2 + y^2*z^2"),
    ("fermat", "x^4 + y^4 + z^4 + t^4"),
];

fn quartic(s: &str) -> Polynomial {
    parse_polynomial(s, &RingContext::p3()).unwrap()
}

fn groebner(c: &mut Criterion) {
    let mut g = c.benchmark_group("groebner_basis");
    for (name, f) in QUARTICS {
        let j = jacobian_ideal(&quartic(f)).unwrap();
        g.bench_function(name, |b| b.iter(|| black_box(&j).groebner_basis()));
    }
    g.finish();
}

fn saturation(c: &mut Criterion) {
    let mut g = c.benchmark_group("saturate_irrelevant");
    for (name, f) in QUARTICS {
        let j = jacobian_ideal(&quartic(f)).unwrap();
        g.bench_function(name, |b| b.iter(|| saturate_irrelevant(black_box(&j)).unwrap()));
    }
    g.finish();
}

fn resolution(c: &mut Criterion) {
    let mut g = c.benchmark_group("free_resolution");
    for (name, f) in QUARTICS {
        let sat = saturate_irrelevant(&jacobian_ideal(&quartic(f)).unwrap()).unwrap();
        g.bench_function(name, |b| b.iter(|| free_resolution(black_box(&sat)).unwrap()));
    }
    g.finish();
}

fn pipeline(c: &mut Criterion) {
    let mut g = c.benchmark_group("analyze_quartic");
    g.sample_size(10);
    for (name, f) in QUARTICS {
        let f = quartic(f);
        g.bench_function(name, |b| b.iter(|| analyze_quartic(black_box(&f)).unwrap()));
    }
    g.finish();
}

criterion_group!(benches, groebner, saturation, resolution, pipeline);
criterion_main!(benches);
