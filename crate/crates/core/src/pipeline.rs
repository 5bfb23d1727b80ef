//! Model, explicit normalization and estimates chained in memory.

use crate::contfrac::{diophantine_gamma, RationalPair};
use crate::error::Result;
use crate::estimator::{hypothesis_of, prove, Certificate, EstimatorConfig};
use crate::model::{build_h0, ModelConfig, NewtonConfig, NewtonOutcome};
use crate::normalizer::{normalize, Normalization, NormalizerConfig};

#[derive(Clone, Debug)]
pub struct PipelineConfig {
    pub model: ModelConfig,
    pub noble: RationalPair,
    pub newton: NewtonConfig,
    pub normalizer: NormalizerConfig,
    pub estimator: EstimatorConfig,
}

#[derive(Clone, Debug)]
pub struct PipelineOutcome {
    pub newton: NewtonOutcome,
    pub normalization: Option<Normalization>,
    pub certificate: Certificate,
}

/// Runs every stage. A hypothesis that fails in the explicit stage yields a `NOT-PROVED`
/// certificate; malformed input and a failed Newton search are errors.
pub fn run(cfg: &PipelineConfig) -> Result<PipelineOutcome> {
    let gamma = diophantine_gamma(cfg.noble.noble_surd())?;
    let (h0, newton) = build_h0(&cfg.model, &cfg.newton)?;
    let dims = (cfg.model.r_i, cfg.estimator.r_ii, cfg.model.k, cfg.model.lmax);
    let normalization = match normalize(&h0, &cfg.normalizer, None) {
        Ok(n) => n,
        Err(e) => {
            let certificate = Certificate::failed(dims, h0.omega, hypothesis_of(e)?);
            return Ok(PipelineOutcome { newton, normalization: None, certificate });
        }
    };
    let certificate = prove(&normalization.ledger, &cfg.estimator, gamma)?;
    Ok(PipelineOutcome { newton, normalization: Some(normalization), certificate })
}
