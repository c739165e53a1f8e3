use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};
use weylosc::derivatives::derivative;
use weylosc::oracle::{spectral_certify, trace_pair_all, RadialSymbol};
use weylosc::symbol::applicable_methods;
use weylosc::{cr, eval, eval_with, MethodChoice};
use weylosc_bench::points;

fn methods(c: &mut Criterion) {
    let mut g = c.benchmark_group("eval");
    for (name, p) in points() {
        for m in applicable_methods(&p) {
            if eval_with(&p, m).map_or(true, |r| !r.in_validity_domain) {
                continue;
            }
            g.bench_with_input(BenchmarkId::new(m.name(), name), &p, |b, p| {
                b.iter(|| eval_with(black_box(p), m).unwrap())
            });
        }
        g.bench_with_input(BenchmarkId::new("auto", name), &p, |b, p| {
            b.iter(|| eval(black_box(p), MethodChoice::Auto).unwrap())
        });
    }
    g.finish();
}

fn derivatives(c: &mut Criterion) {
    let mut g = c.benchmark_group("derivative");
    let (_, p) = points()[1];
    for n in [1, 5, 20] {
        g.bench_with_input(BenchmarkId::from_parameter(n), &n, |b, &n| b.iter(|| derivative(black_box(&p), n).unwrap()));
    }
    g.finish();
}

fn pairing(c: &mut Criterion) {
    let mut g = c.benchmark_group("oracle");
    g.sample_size(10);
    g.bench_function("trace_pair_all d2 N10", |b| {
        let f = RadialSymbol::resolvent(2, cr(-1.0), MethodChoice::Auto).unwrap();
        b.iter(|| trace_pair_all(&f, 2, 10).unwrap())
    });
    g.bench_function("spectral_certify d1 N10", |b| b.iter(|| spectral_certify(1, cr(0.0), 10, 1e-6).unwrap()));
    g.finish();
}

criterion_group!(benches, methods, derivatives, pairing);
criterion_main!(benches);
