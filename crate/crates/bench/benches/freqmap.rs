use std::f64::consts::TAU;
use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use kamcap::freqmap::{naff_frequency, FieldModel, Integrator};
use rustfft::num_complex::Complex64;

fn orbits(c: &mut Criterion) {
    let model = FieldModel::new(0.004, true, 0.35).unwrap();
    let integ = Integrator::new(&model, 64, 0.0);
    let mut g = c.benchmark_group("freqmap");
    g.sample_size(10);
    g.bench_function("orbit 4097 periods", |b| b.iter(|| integ.integrate(black_box(0.356), 0.0, 4096)));
    let tone: Vec<Complex64> = (0..(1 << 15) + 1).map(|n| Complex64::from_polar(1.0, TAU * 0.58 * n as f64)).collect();
    g.bench_function("naff 32769 samples", |b| b.iter(|| naff_frequency(black_box(&tone)).unwrap()));
    g.finish();
}

criterion_group!(benches, orbits);
criterion_main!(benches);
