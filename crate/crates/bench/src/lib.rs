//! Shared inputs for the benchmarks.

use kamcap::model::{build_h0, ModelConfig, NewtonConfig};
use kamcap::{Coef, HamiltonianState, Interval, RationalPair, TFSeries};

pub fn noble_pair() -> RationalPair {
    RationalPair::new("43/74".parse().unwrap(), "18/31".parse().unwrap())
}

/// `H^(0)` at `Ψ = 0.35`, `ω = ω_D`.
pub fn h0(eps: &str, r_i: usize) -> HamiltonianState {
    let cfg = ModelConfig::new(
        Interval::from_decimal(eps).unwrap(),
        Interval::from_decimal("0.35").unwrap(),
        noble_pair().noble_enclosure(),
        r_i,
    );
    build_h0(&cfg, &NewtonConfig::default()).unwrap().0
}

/// A dense series with every harmonic of degree `≤ deg` and powers `≤ lmax`.
pub fn dense_series(lmax: u32, deg: i32) -> TFSeries {
    let mut terms = Vec::new();
    for l in 0..=lmax {
        for k1 in 0..=deg {
            for k2 in -deg..=deg {
                if k1.abs() + k2.abs() > deg {
                    continue;
                }
                let x = 1.0 / (1 + l as i32 + k1 + k2.abs()) as f64;
                terms.push((l, k1, k2, Coef { cos: Interval::point(x), sin: Interval::point(-0.5 * x) }));
            }
        }
    }
    TFSeries::from_terms(terms)
}
