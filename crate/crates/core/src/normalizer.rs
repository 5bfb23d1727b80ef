//! Explicit Kolmogorov normalization in interval arithmetic, steps `r = 1..=R_I`.

use std::io::Write;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::interval::Interval;
use crate::ledger::{ExplicitLedger, GenBounds, NormTable};
use crate::tfseries::{HamiltonianState, TFSeries, Var};

#[derive(Clone, Copy, Debug)]
pub struct NormalizerConfig {
    /// Smallest accepted small divisor `|k1ω + k2|`.
    pub min_divisor: f64,
    /// Trigonometric degree cap; `2K·R_I` when `None`.
    pub trunc: Option<u32>,
}

impl Default for NormalizerConfig {
    fn default() -> Self {
        NormalizerConfig { min_divisor: 1e-12, trunc: None }
    }
}

/// Everything produced by one normalization step.
#[derive(Clone, Debug)]
pub struct StepArtifacts {
    pub r: usize,
    pub x: TFSeries,
    pub xi: Interval,
    pub chi2: TFSeries,
    pub c: Interval,
    pub bounds: GenBounds,
    /// The removed `f̂_1^(r,r)`.
    pub target: TFSeries,
    /// `‖f_0^(r-1,r)‖`
    pub d0_norm: Interval,
    /// Norms of the intermediate Hamiltonian `Ĥ^(r)`.
    pub hat_norms: NormTable,
}

/// `C^(r) = Σ_{s≤r} ∂²ψψ⟨h₂^(s)⟩` and `ξ = -⟨f_1^(r)⟩ / C^(r)`.
pub fn solve_translation(h: &HamiltonianState, r: usize) -> Result<(Interval, Interval)> {
    let c: Interval = (0..=r.min(h.r_i)).map(|s| h.blocks[s].average(2).scale_int(2)).sum();
    if c.contains_zero() {
        return Err(Error::Nondegenerate { step: r, what: "C" });
    }
    let f1 = h.blocks.get(r).map(|b| b.average(1)).unwrap_or(Interval::ZERO);
    if f1 == Interval::ZERO {
        return Ok((Interval::ZERO, c));
    }
    Ok((-f1.checked_div(c)?, c))
}

/// `‖f_l^(s)‖` for every `l ≤ lmax`, `s ≤ R_I`.
pub fn norm_table(h: &HamiltonianState) -> NormTable {
    (0..=h.lmax)
        .map(|l| h.blocks.iter().map(|b| b.norm_l(l)).collect())
        .collect()
}

fn without_part(h: &HamiltonianState, l: u32, s: usize) -> HamiltonianState {
    let mut out = h.clone();
    out.blocks[s] = out.blocks[s].filter(|k| k.l != l);
    out
}

/// One step: `X = -Γ f_0^(r-1,r)`, then the translation `ξθ`, then `χ₂ = -Γ f̂_1^(r,r)`.
pub fn kam_step(h: &HamiltonianState, r: usize, cfg: &NormalizerConfig) -> Result<(HamiltonianState, StepArtifacts)> {
    assert!(r >= 1 && r <= h.r_i);
    let trunc = cfg.trunc.unwrap_or_else(|| h.default_trunc());
    let omega = h.omega;

    let d0 = h.block(0, r).without_averages();
    let d0_norm = d0.norm();
    let x = d0.gamma(omega, cfg.min_divisor)?.neg();
    let h1 = without_part(h, 0, r);
    let h1 = if x.is_empty() { h1 } else { h1.lie_transform_homological(&x, &d0, r, trunc) };

    let (xi, c) = solve_translation(&h1, r)?;
    let hat = if xi == Interval::ZERO && h1.blocks[r].average(1) == Interval::ZERO {
        h1
    } else {
        h1.translate_cancelling(xi, r)
    };
    let hat_norms = norm_table(&hat);

    let target = hat.block(1, r).without_averages();
    let chi2 = target.gamma(omega, cfg.min_divisor)?.neg();
    let h2 = without_part(&hat, 1, r);
    let next = if chi2.is_empty() { h2 } else { h2.lie_transform_homological(&chi2, &target, r, trunc) };

    let bounds = GenBounds {
        g11: x.derivative(Var::Theta).norm(),
        g12: xi.abs(),
        g21: chi2.derivative(Var::Theta).norm(),
        g22: chi2.derivative(Var::Psi).norm(),
    };
    let art = StepArtifacts { r, x, xi, chi2, c, bounds, target, d0_norm, hat_norms };
    Ok((next, art))
}

/// One JSON-lines diagnostic record per step.
#[derive(Serialize)]
struct StepRecord {
    step: usize,
    g11: [f64; 2],
    g12: [f64; 2],
    g21: [f64; 2],
    g22: [f64; 2],
    c: [f64; 2],
    xi: [f64; 2],
    d0_norm: [f64; 2],
    target_norm: [f64; 2],
    max_width: f64,
    terms: usize,
}

fn pair(x: Interval) -> [f64; 2] {
    [x.lo(), x.hi()]
}

/// Result of the explicit stage.
#[derive(Clone, Debug)]
pub struct Normalization {
    pub state: HamiltonianState,
    pub ledger: ExplicitLedger,
    pub steps: Vec<StepArtifacts>,
}

/// Runs steps `1..=R_I` from `H^(0)` and collects the ledger; each step is logged as
/// one JSON object per line when `log` is given.
pub fn normalize(h0: &HamiltonianState, cfg: &NormalizerConfig, mut log: Option<&mut dyn Write>) -> Result<Normalization> {
    let mut ledger = ExplicitLedger::new(h0.r_i, h0.lmax, h0.k, h0.omega);
    let mut h = h0.clone();
    let mut steps = Vec::with_capacity(h0.r_i);
    for r in 1..=h0.r_i {
        ledger.h[r - 1] = norm_table(&h);
        let (next, art) = kam_step(&h, r, cfg)?;
        ledger.g[r] = art.bounds;
        ledger.c[r] = art.c;
        ledger.hat[r] = art.hat_norms.clone();
        if let Some(w) = log.as_deref_mut() {
            let rec = StepRecord {
                step: r,
                g11: pair(art.bounds.g11),
                g12: pair(art.bounds.g12),
                g21: pair(art.bounds.g21),
                g22: pair(art.bounds.g22),
                c: pair(art.c),
                xi: pair(art.xi),
                d0_norm: pair(art.d0_norm),
                target_norm: pair(art.target.norm()),
                max_width: next.blocks.iter().map(|b| b.max_width()).fold(0.0, f64::max),
                terms: next.blocks.iter().map(|b| b.len()).sum(),
            };
            let line = serde_json::to_string(&rec).expect("plain record");
            writeln!(w, "{line}").map_err(|source| Error::Io { path: "step log".into(), source })?;
        }
        steps.push(art);
        h = next;
    }
    ledger.h[h0.r_i] = norm_table(&h);
    ledger.tail = h.tail.0.iter().map(|x| x.upper()).collect();
    ledger.tail.resize(h0.lmax as usize + 1, Interval::ZERO);
    let frozen: Interval = h.blocks.iter().map(|b| b.average(2).scale_int(2)).sum();
    ledger.m = Interval::point(frozen.mig());
    Ok(Normalization { state: h, ledger, steps })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{build_equilibrium, build_h0, ModelConfig, NewtonConfig};
    use crate::tfseries::Coef;

    fn dec(s: &str) -> Interval {
        Interval::from_decimal(s).unwrap()
    }

    fn unperturbed(r_i: usize) -> HamiltonianState {
        let (w, h) = build_equilibrium(dec("0.35"));
        HamiltonianState::from_series(w, 4, 3, r_i, &h)
    }

    #[test]
    fn translation_of_zero_average_is_zero() {
        let h = unperturbed(3);
        let (xi, c) = solve_translation(&h, 1).unwrap();
        assert_eq!(xi, Interval::ZERO);
        assert!(c.contains(-0.891875));
    }

    #[test]
    fn translation_sign() {
        let mut h = unperturbed(3);
        h.blocks[1] = TFSeries::cos_term(1, 0, 0, Interval::point(0.01));
        let (xi, c) = solve_translation(&h, 1).unwrap();
        assert!(xi.lo() > 0.0);
        assert!((xi * c + Interval::point(0.01)).contains_zero());
    }

    #[test]
    fn degenerate_c_is_reported() {
        let mut h = HamiltonianState::new(Interval::point(0.6), 4, 3, 2);
        h.blocks[1] = TFSeries::cos_term(1, 0, 0, Interval::point(0.01));
        assert!(matches!(solve_translation(&h, 1), Err(Error::Nondegenerate { step: 1, .. })));
    }

    #[test]
    fn unperturbed_run_has_zero_ledger() {
        let h = unperturbed(4);
        let n = normalize(&h, &NormalizerConfig::default(), None).unwrap();
        for r in 1..=4 {
            assert_eq!(n.ledger.g[r], GenBounds::default());
        }
        for l in 0..2 {
            for s in 0..=4 {
                assert_eq!(n.ledger.h[4][l][s], Interval::ZERO);
            }
        }
        assert!(n.ledger.m.contains(0.891875) || (n.ledger.m.lo() - 0.891875).abs() < 1e-15);
        assert_eq!(n.state.blocks, h.blocks);
    }

    #[test]
    fn normalized_hamiltonian_is_a_fixed_point() {
        let mut h = unperturbed(3);
        h.blocks[2] = TFSeries::cos_term(2, 1, -1, Interval::point(0.001));
        let (next, art) = kam_step(&h, 1, &NormalizerConfig::default()).unwrap();
        assert!(art.x.is_empty() && art.chi2.is_empty());
        assert_eq!(art.xi, Interval::ZERO);
        assert_eq!(next.blocks, h.blocks);
    }

    fn perturbed(eps: &str, r_i: usize) -> HamiltonianState {
        let omega = crate::contfrac::RationalPair::new("43/74".parse().unwrap(), "18/31".parse().unwrap())
            .noble_enclosure();
        let cfg = ModelConfig::new(dec(eps), dec("0.35"), omega, r_i);
        build_h0(&cfg, &NewtonConfig::default()).unwrap().0
    }

    #[test]
    fn step_removes_the_order_r_perturbation() {
        let h = perturbed("0.003", 4);
        let cfg = NormalizerConfig::default();
        let mut cur = h;
        for r in 1..=4 {
            let (next, art) = kam_step(&cur, r, &cfg).unwrap();
            for s in 1..=r {
                assert!(next.block(0, s).encloses_zero(), "D0 at r={r}, s={s}");
                assert!(next.block(1, s).encloses_zero(), "D1 at r={r}, s={s}");
            }
            assert!(art.bounds.g11.lo() >= 0.0);
            // X ∈ P_{0,rK}, χ₂ ∈ P_{1,rK}
            assert!(art.x.max_degree() <= 3 * r as u32 && art.x.max_l().unwrap_or(0) == 0);
            assert!(art.chi2.max_degree() <= 3 * r as u32 && art.chi2.max_l().unwrap_or(1) == 1);
            for s in 0..=next.r_i {
                assert!(next.blocks[s].max_degree() <= 3 * s as u32, "class at s={s}");
            }
            assert_eq!(next.omega, cur.omega);
            cur = next;
        }
    }

    #[test]
    fn homological_equations_hold() {
        let h = perturbed("0.003", 3);
        let cfg = NormalizerConfig::default();
        let (_, art) = kam_step(&h, 1, &cfg).unwrap();
        let d0 = h.block(0, 1).without_averages();
        assert!(art.x.lie_derivative_linear(h.omega).add(&d0).encloses_zero());
        assert!(art.chi2.lie_derivative_linear(h.omega).add(&art.target).encloses_zero());
        assert!(art.target.average(1) == Interval::ZERO);
    }

    #[test]
    fn first_step_cancels_the_order_one_average() {
        let mut h = unperturbed(3);
        h.blocks[1] = TFSeries::from_terms([
            (1, 0, 0, Coef::cos(Interval::point(0.002))),
            (0, 2, -1, Coef::cos(Interval::point(0.001))),
        ]);
        let (next, art) = kam_step(&h, 1, &NormalizerConfig::default()).unwrap();
        assert!(art.xi.lo() > 0.0);
        assert_eq!(next.blocks[1].average(1), Interval::ZERO);
        assert!(next.block(1, 1).encloses_zero());
    }

    #[test]
    fn ledger_matches_steps_and_logs() {
        let h = perturbed("0.001", 3);
        let mut buf = Vec::new();
        let n = normalize(&h, &NormalizerConfig::default(), Some(&mut buf)).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert_eq!(text.lines().count(), 3);
        let first: serde_json::Value = serde_json::from_str(text.lines().next().unwrap()).unwrap();
        assert_eq!(first["step"], 1);
        for (i, art) in n.steps.iter().enumerate() {
            assert_eq!(n.ledger.g[i + 1], art.bounds);
        }
        assert!(n.ledger.g[1].g11.lo() > 0.0);
        assert!(n.ledger.m.lo() > 0.8);
        let back = ExplicitLedger::parse("x", &n.ledger.to_text()).unwrap();
        assert_eq!(back, n.ledger);
    }

    #[test]
    fn perturbation_decreases_over_steps() {
        let h = perturbed("0.0005", 6);
        let n = normalize(&h, &NormalizerConfig::default(), None).unwrap();
        let d: Vec<f64> = n.steps.iter().map(|a| a.d0_norm.hi()).collect();
        assert!(d[5] < d[1], "{d:?}");
    }
}
