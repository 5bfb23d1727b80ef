//! The field-line Hamiltonian `H(ψ) + ε v(θ, φ)`, its control term, and the
//! construction of the normalization input `H^(0)`.

use crate::error::{Error, Result};
use crate::interval::Interval;
use crate::tfseries::{Coef, HamiltonianState, TFSeries, TailNorms, Var};

/// Taylor coefficients of `H(ψ) = ψ - 3/4 ψ² + 1/3 ψ³ - 1/16 ψ⁴`.
pub fn h_coefficients() -> [Interval; 5] {
    [
        Interval::ZERO,
        Interval::ONE,
        Interval::point(-0.75),
        Interval::ONE.div_int(3),
        Interval::point(-0.0625),
    ]
}

/// `1/q(ψ) = (2-ψ)(2-2ψ+ψ²)/4`, the unperturbed rotation number.
pub fn inverse_safety_factor(psi: f64) -> f64 {
    (2.0 - psi) * (2.0 - 2.0 * psi + psi * psi) / 4.0
}

/// `H′(ψ)` in floating point.
pub fn h_prime(psi: f64) -> f64 {
    1.0 - 1.5 * psi + psi * psi - 0.25 * psi * psi * psi
}

/// `H″(ψ)` in floating point.
pub fn h_second(psi: f64) -> f64 {
    -1.5 + 2.0 * psi - 0.75 * psi * psi
}

/// Action `ψ ∈ (0, 1)` where `q(ψ) = q_value`, found by bisection (`1/q` is decreasing there).
pub fn resonant_surface(q_value: f64) -> Option<f64> {
    let target = 1.0 / q_value;
    let (mut a, mut b) = (0.0f64, 1.0f64);
    if !(inverse_safety_factor(b) <= target && target <= inverse_safety_factor(a)) {
        return None;
    }
    for _ in 0..200 {
        let m = 0.5 * (a + b);
        if inverse_safety_factor(m) > target {
            a = m;
        } else {
            b = m;
        }
    }
    Some(0.5 * (a + b))
}

#[derive(Clone, Debug)]
pub struct ModelConfig {
    pub epsilon: Interval,
    pub psi: Interval,
    pub omega_target: Interval,
    pub k: u32,
    pub lmax: u32,
    pub r_i: usize,
}

impl ModelConfig {
    pub fn new(epsilon: Interval, psi: Interval, omega_target: Interval, r_i: usize) -> Self {
        ModelConfig { epsilon, psi, omega_target, k: 3, lmax: 4, r_i }
    }

    pub fn validate(&self) -> Result<()> {
        if self.epsilon.lo() < 0.0 {
            return Err(Error::Invalid("epsilon must be nonnegative".into()));
        }
        if !(self.psi.lo() > 0.0 && self.psi.hi() < 1.0) {
            return Err(Error::Invalid("Psi must lie in (0, 1)".into()));
        }
        if self.r_i == 0 {
            return Err(Error::Invalid("R_I must be at least 1".into()));
        }
        for k1 in 1..=self.k as i32 {
            for k2 in -(self.k as i32)..=self.k as i32 {
                let d = self.omega_target * Interval::from(k1) + Interval::from(k2);
                if d.contains_zero() {
                    return Err(Error::Resonance { k1, k2 });
                }
            }
        }
        Ok(())
    }

    fn max_degree(&self) -> u32 {
        self.r_i as u32 * self.k
    }
}

#[derive(Clone, Copy, Debug)]
pub struct NewtonConfig {
    pub dx: f64,
    pub xi_tol: f64,
    pub max_iters: usize,
}

impl Default for NewtonConfig {
    fn default() -> Self {
        NewtonConfig { dx: 1e-3, xi_tol: 1e-8, max_iters: 30 }
    }
}

/// Expands `H(Ψ + ψ)`: returns `ω̃ = H′(Ψ)` and the averages `h_l ψ^l`, `l = 2..4`.
pub fn build_equilibrium(psi: Interval) -> (Interval, TFSeries) {
    let a = h_coefficients();
    let mut shifted = [Interval::ZERO; 5];
    for (l, slot) in shifted.iter_mut().enumerate() {
        let mut acc = Interval::ZERO;
        let mut binom: u64 = 1;
        for n in l..5 {
            acc += a[n].scale_int(binom) * psi.powi((n - l) as u32);
            binom = binom * (n + 1) as u64 / (n + 1 - l) as u64;
        }
        *slot = acc;
    }
    let h = TFSeries::from_terms((2..5).map(|l| (l as u32, 0, 0, Coef::cos(shifted[l]))));
    (shifted[1], h)
}

/// `ε [cos(2θ-φ) + cos(3θ-2φ)]`.
pub fn build_perturbation(epsilon: Interval) -> TFSeries {
    if epsilon == Interval::ZERO {
        return TFSeries::zero();
    }
    TFSeries::from_terms([(0, 2, -1, Coef::cos(epsilon)), (0, 3, -2, Coef::cos(epsilon))])
}

/// Smallest divisor accepted by the model-stage homological equations.
const MIN_DIVISOR: f64 = 1e-12;

/// Control term `f = -½ ∂²ψψh₂ (∂θ Γ_ω̃ v)²` with its constant part dropped.
pub fn build_control(omega_tilde: Interval, h: &TFSeries, v: &TFSeries) -> Result<TFSeries> {
    let h2 = h.average(2);
    let t = v.gamma(omega_tilde, MIN_DIVISOR)?.derivative(Var::Theta);
    // -½ (2 h₂) T² = -h₂ T²
    Ok(t.mul(&t).scale(-h2).without_averages())
}

/// Intermediate pieces of `H_c` that do not depend on `ξ`.
struct Stage {
    h: TFSeries,
    t_powers: Vec<TFSeries>,
    f: TFSeries,
    omega_tilde: Interval,
}

fn stage(cfg: &ModelConfig) -> Result<Stage> {
    let (omega_tilde, h) = build_equilibrium(cfg.psi);
    let v = build_perturbation(cfg.epsilon);
    let f = build_control(omega_tilde, &h, &v)?;
    let x = v.gamma(omega_tilde, MIN_DIVISOR)?.neg();
    let t = x.derivative(Var::Theta);
    let mut t_powers = vec![TFSeries::cos_term(0, 0, 0, Interval::ONE)];
    let mut tail = TailNorms::default();
    for j in 1..=cfg.lmax {
        let next = t_powers[j as usize - 1].mul_truncated(&t, cfg.max_degree(), &mut tail);
        t_powers.push(next);
    }
    Ok(Stage { h, t_powers, f, omega_tilde })
}

/// `exp(L_X)(H̃ + f) - (ω̃ψ + P) = h(ψ + ∂θX) + f` with `X = -Γ_ω̃ v`; the perturbation cancels.
fn after_first_transform(st: &Stage) -> TFSeries {
    let mut out = st.f.clone();
    for &(k, c) in st.h.terms() {
        let l = k.l;
        let mut binom: u64 = 1;
        for j in 0..=l {
            // C(l,j) T^j ψ^(l-j)
            let piece = raise_psi(&st.t_powers[j as usize], l - j).scale(c.cos.scale_int(binom));
            out = out.add(&piece);
            binom = binom * (l - j) as u64 / (j + 1) as u64;
        }
    }
    out.without_constant()
}

fn raise_psi(g: &TFSeries, by: u32) -> TFSeries {
    TFSeries::from_terms(g.terms().iter().map(|&(k, c)| (k.l + by, k.h.k1, k.h.k2, c)))
}

/// Flat remainder `G` of `H_c = ω_D ψ + P + G` for a given action shift `ξ`.
fn hc_remainder(cfg: &ModelConfig, st: &Stage, xi: Interval) -> Result<TFSeries> {
    let a = after_first_transform(st).translate_psi(xi).without_constant();
    // Linear part ω̃ψ + P = ω_Dψ + P + (ω̃ - ω_D)ψ.
    let a = a.add(&TFSeries::cos_term(1, 0, 0, st.omega_tilde - cfg.omega_target));
    let k = cfg.k;
    let z = a.filter(|key| key.l == 1 && !key.h.is_zero() && key.h.degree() <= k);
    let rest = a.sub(&z);
    let chi2 = z.gamma(cfg.omega_target, MIN_DIVISOR)?.neg();
    let mut tail = TailNorms::default();
    let trunc = cfg.max_degree();
    let max_terms = 8 * cfg.r_i + 40;
    let floor = 1e-60;
    // exp(L_χ)(ω_Dψ + P + Z) = ω_Dψ + P + Σ_{j≥1} j/(j+1)! L^j Z
    let mut out = TFSeries::zero();
    let mut term = z.clone();
    for j in 1..max_terms {
        term = chi2.poisson_truncated(&term, trunc, &mut tail).div_int(j as u64);
        if term.is_empty() || term.norm().hi() < floor {
            break;
        }
        // term = L^j Z / j!
        out = out.add(&term.scale(Interval::from_int(j as i64)).div_int(j as u64 + 1));
    }
    let mut term = rest.clone();
    out = out.add(&rest);
    for j in 1..max_terms {
        term = chi2.poisson_truncated(&term, trunc, &mut tail).div_int(j as u64);
        if term.is_empty() || term.norm().hi() < floor {
            break;
        }
        out = out.add(&term);
    }
    Ok(out.without_constant())
}

/// `B(ξ) = ⟨∂ψ H_c⟩` at `ψ = 0`.
fn linear_average(cfg: &ModelConfig, st: &Stage, xi: f64) -> Result<f64> {
    let g = hc_remainder(cfg, st, Interval::point(xi))?;
    Ok((cfg.omega_target + g.average(1)).mid())
}

#[derive(Clone, Copy, Debug)]
pub struct NewtonOutcome {
    pub xi: f64,
    pub iterations: usize,
    pub residual: f64,
}

/// Finds the action shift `ξ` that places the torus of frequency `ω_D` at `ψ = 0`.
pub fn newton_xi_init(cfg: &ModelConfig, newton: &NewtonConfig) -> Result<NewtonOutcome> {
    cfg.validate()?;
    let st = stage(cfg)?;
    let (omega_tilde, h) = build_equilibrium(cfg.psi);
    let h2 = h.average(2).scale_int(2).mid();
    let target = cfg.omega_target.mid();
    let mut xi = (target - omega_tilde.mid()) / h2;
    for it in 1..=newton.max_iters {
        let b = linear_average(cfg, &st, xi)?;
        let step = if xi != 0.0 { xi * newton.dx } else { newton.dx };
        let b2 = linear_average(cfg, &st, xi + step)?;
        let slope = (b2 - b) / step;
        if slope == 0.0 || !slope.is_finite() {
            return Err(Error::Newton("zero finite-difference slope".into()));
        }
        let delta = (target - b) / slope;
        xi += delta;
        if delta.abs() < newton.xi_tol {
            let residual = linear_average(cfg, &st, xi)? - target;
            return Ok(NewtonOutcome { xi, iterations: it, residual });
        }
    }
    Err(Error::Newton(format!("no convergence after {} iterations", newton.max_iters)))
}

/// Builds `H^(0)` for a given shift `ξ`: the order blocks of `H_c` truncated at degree `R_I·K`.
pub fn build_h0_with_xi(cfg: &ModelConfig, xi: f64) -> Result<HamiltonianState> {
    cfg.validate()?;
    let st = stage(cfg)?;
    let g = hc_remainder(cfg, &st, Interval::point(xi))?;
    Ok(HamiltonianState::from_series(cfg.omega_target, cfg.lmax, cfg.k, cfg.r_i, &g))
}

/// Runs the Newton stage and builds `H^(0)`.
pub fn build_h0(cfg: &ModelConfig, newton: &NewtonConfig) -> Result<(HamiltonianState, NewtonOutcome)> {
    let n = newton_xi_init(cfg, newton)?;
    Ok((build_h0_with_xi(cfg, n.xi)?, n))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dec(s: &str) -> Interval {
        Interval::from_decimal(s).unwrap()
    }

    fn omega_d() -> Interval {
        let s5 = Interval::point(5.0).sqrt().unwrap();
        let sigma = (s5 + Interval::ONE).ldexp(-1);
        (Interval::point(43.0) + sigma * Interval::point(18.0))
            .checked_div(Interval::point(74.0) + sigma * Interval::point(31.0))
            .unwrap()
    }

    #[test]
    fn safety_factor_values() {
        assert_eq!(inverse_safety_factor(0.0), 1.0);
        assert!((inverse_safety_factor(0.35) - 0.58678125).abs() < 1e-15);
        assert!((h_prime(0.35) - 0.58678125).abs() < 1e-15);
        let r32 = resonant_surface(1.5).unwrap();
        let r2 = resonant_surface(2.0).unwrap();
        assert!((r32 - 0.266).abs() < 1e-3, "{r32}");
        assert!((r2 - 0.456).abs() < 1e-3, "{r2}");
    }

    #[test]
    fn equilibrium_at_035() {
        let (w, h) = build_equilibrium(dec("0.35"));
        assert!(w.contains(0.58678125));
        assert!(w.width() < 1e-15);
        assert!(h.average(2).contains(-0.4459375));
        // h₃ = 1/3 - 1/4·Ψ·... = H'''(Ψ)/6 with H''' = 2 - 1.5ψ
        assert!((h.average(3).mid() - (2.0 - 1.5 * 0.35) / 6.0).abs() < 1e-15);
        assert!(h.average(4).contains(-0.0625));
    }

    #[test]
    fn perturbation_and_norm() {
        assert!(build_perturbation(Interval::ZERO).is_empty());
        let v = build_perturbation(dec("0.003"));
        assert!(v.get(0, 2, -1).cos.contains(0.003));
        assert!(v.get(0, 3, -2).cos.contains(0.003));
        assert!(v.norm().contains(0.006) || (v.norm().mid() - 0.006).abs() < 1e-17);
    }

    #[test]
    fn control_term_harmonics_and_values() {
        let (w, h) = build_equilibrium(dec("0.35"));
        assert!(build_control(w, &h, &TFSeries::zero()).unwrap().is_empty());
        let eps = 0.003;
        let f = build_control(w, &h, &build_perturbation(Interval::point(eps))).unwrap();
        let mut keys: Vec<(i32, i32)> = f.terms().iter().map(|(k, _)| (k.h.k1, k.h.k2)).collect();
        keys.sort();
        assert_eq!(keys, vec![(1, -1), (4, -2), (5, -3), (6, -4)]);
        // Independent expansion: ∂θΓv = ε[2 cos A/a + 3 cos B/b].
        let a = 2.0 * 0.58678125 - 1.0;
        let b = 3.0 * 0.58678125 - 2.0;
        let pre = 0.891875 / 2.0 * eps * eps;
        let want = [
            ((4, -2), pre * 2.0 / (a * a)),
            ((6, -4), pre * 9.0 / (2.0 * b * b)),
            ((5, -3), pre * 6.0 / (a * b)),
            ((1, -1), pre * 6.0 / (a * b)),
        ];
        for ((k1, k2), x) in want {
            let c = f.get(0, k1, k2);
            assert!((c.cos.mid() - x).abs() < 1e-12 * x.abs(), "({k1},{k2}) {:?} vs {x}", c.cos);
            assert_eq!(c.sin, Interval::ZERO);
        }
    }

    #[test]
    fn newton_seed_and_fixed_point() {
        let w = omega_d();
        let seed = (w.mid() - 0.58678125) / h_second(0.35);
        assert!((seed - 0.006589).abs() < 1e-6, "{seed}");
        let (wt, _) = build_equilibrium(dec("0.35"));
        let cfg = ModelConfig::new(Interval::ZERO, dec("0.35"), wt, 4);
        let n = newton_xi_init(&cfg, &NewtonConfig::default()).unwrap();
        assert!(n.xi.abs() < 1e-12, "{n:?}");
    }

    #[test]
    fn newton_converges_quickly() {
        let cfg = ModelConfig::new(dec("0.003"), dec("0.35"), omega_d(), 6);
        let n = newton_xi_init(&cfg, &NewtonConfig::default()).unwrap();
        assert!(n.iterations <= 3, "{n:?}");
        assert!(n.residual.abs() < 1e-9, "{n:?}");
    }

    #[test]
    fn unperturbed_h0_is_recentred_polynomial() {
        let (wt, _) = build_equilibrium(dec("0.35"));
        let cfg = ModelConfig::new(Interval::ZERO, dec("0.35"), wt, 4);
        let h0 = build_h0_with_xi(&cfg, 0.0).unwrap();
        assert!(h0.blocks.iter().all(|b| b.terms().iter().all(|(k, _)| k.h.is_zero())));
        assert!(h0.block(2, 0).average(2).contains(-0.4459375));
    }

    #[test]
    fn h0_blocks_respect_their_classes() {
        let cfg = ModelConfig::new(dec("0.003"), dec("0.35"), omega_d(), 6);
        let (h0, _) = build_h0(&cfg, &NewtonConfig::default()).unwrap();
        for (s, b) in h0.blocks.iter().enumerate() {
            for (k, _) in b.terms() {
                assert!(k.h.degree() <= s as u32 * 3);
                assert!(k.l <= 4);
            }
        }
        // The shift puts the ω_D torus at ψ = 0.
        let lin = h0.block(1, 1).average(1);
        assert!(lin.mag() < 1e-8, "{lin:?}");
    }
}
