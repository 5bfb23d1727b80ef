use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use kamcap::{Interval, TailNorms, Var};
use kamcap_bench::dense_series;

fn intervals(c: &mut Criterion) {
    let a = Interval::hull(0.3, 0.30001);
    let b = Interval::hull(-1.7, -1.69);
    c.bench_function("interval mul_add", |bch| bch.iter(|| black_box(a) * black_box(b) + black_box(a)));
    c.bench_function("interval div", |bch| bch.iter(|| black_box(a).checked_div(black_box(b)).unwrap()));
    c.bench_function("interval exp", |bch| bch.iter(|| black_box(a).exp().unwrap()));
}

fn series(c: &mut Criterion) {
    let f = dense_series(2, 8);
    let g = dense_series(2, 8);
    let w = Interval::hull(0.580904973, 0.580904974);
    c.bench_function("series product deg 8", |bch| bch.iter(|| black_box(&f).mul(black_box(&g))));
    c.bench_function("series bracket deg 8", |bch| bch.iter(|| black_box(&f).poisson(black_box(&g))));
    c.bench_function("homological solve deg 8", |bch| {
        bch.iter(|| black_box(&f).without_averages().gamma(w, 1e-12).unwrap())
    });
    let x = dense_series(0, 6).without_averages().derivative(Var::Theta);
    c.bench_function("lie series deg 6 on deg 8", |bch| {
        bch.iter(|| {
            let mut tail = TailNorms::new(4);
            black_box(&x).lie_series(black_box(&f), 6, 48, &mut tail)
        })
    });
}

criterion_group!(benches, intervals, series);
criterion_main!(benches);
