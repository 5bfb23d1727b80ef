use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use kamcap::contfrac::diophantine_gamma;
use kamcap::estimator::{estimate, prove, EstimatorConfig};
use kamcap::normalizer::{kam_step, normalize, NormalizerConfig};
use kamcap_bench::{h0, noble_pair};

fn explicit(c: &mut Criterion) {
    let h = h0("0.0005", 4);
    let cfg = NormalizerConfig::default();
    let mut g = c.benchmark_group("normalizer");
    g.sample_size(10);
    g.bench_function("first step R_I=4", |b| b.iter(|| kam_step(black_box(&h), 1, &cfg).unwrap()));
    g.bench_function("four steps R_I=4", |b| b.iter(|| normalize(black_box(&h), &cfg, None).unwrap()));
    g.finish();
}

fn estimates(c: &mut Criterion) {
    let led = normalize(&h0("0.0005", 4), &NormalizerConfig::default(), None).unwrap().ledger;
    let gamma = diophantine_gamma(noble_pair().noble_surd()).unwrap();
    let mut g = c.benchmark_group("estimator");
    g.sample_size(10);
    g.bench_function("estimate R_II=300", |b| b.iter(|| estimate(black_box(&led), &EstimatorConfig::new(300)).unwrap()));
    g.bench_function("prove R_II=300", |b| b.iter(|| prove(black_box(&led), &EstimatorConfig::new(300), gamma).unwrap()));
    g.finish();
}

criterion_group!(benches, explicit, estimates);
criterion_main!(benches);
