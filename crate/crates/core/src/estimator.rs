//! Majorant iteration from `R_I` to `R_II` and the final KAM inequality `λ < λ*`.
//!
//! All majorants are upper bounds kept as [`Ext`] values, so orders in the hundreds or
//! thousands never underflow. Steps `r ≤ R_I` use the explicit ledger; orders `s ≤ R_I`
//! always carry the explicit norms.

use std::fmt;
use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::interval::{Ext, Interval, IntervalError};
use crate::ledger::ExplicitLedger;

/// Dense `[l][s]` majorants, `s = 0..=R_II`.
pub type Layer = Vec<Vec<Ext>>;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct EstimatorConfig {
    pub r_ii: usize,
    /// Used for `a_1` when every step-1 generator vanishes.
    pub a_floor: f64,
}

impl EstimatorConfig {
    pub fn new(r_ii: usize) -> Self {
        EstimatorConfig { r_ii, a_floor: 1e-9 }
    }
}

/// Generator constants of one step as upper bounds.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct GenMajorants {
    pub g11: Ext,
    pub g12: Ext,
    pub g21: Ext,
    pub g22: Ext,
}

/// `(E_r, ζ_r, a_r)` after step `r`, with the generator constants used there.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct StepParams {
    pub r: usize,
    pub g: GenMajorants,
    pub e: Ext,
    pub zeta: Ext,
    pub a: Ext,
}

/// Lower bound on `|k1ω + k2|` over `0 < max(|k1|,|k2|) ≤ n`, extended one `k1` at a time.
#[derive(Clone, Debug)]
struct DivisorScan {
    omega: Interval,
    next_k1: i64,
    alpha: Interval,
}

impl DivisorScan {
    fn new(omega: Interval) -> Self {
        DivisorScan { omega, next_k1: 1, alpha: Interval::ONE }
    }

    fn extend_to(&mut self, n: i64) -> Result<Interval> {
        while self.next_k1 <= n {
            let k1 = self.next_k1;
            let centre = (k1 as f64 * self.omega.mid()).floor() as i64;
            for m in [centre, centre + 1] {
                if m.abs() > n {
                    continue;
                }
                let d = (Interval::from_int(k1) * self.omega - Interval::from_int(m)).abs();
                if d.contains_zero() {
                    return Err(Error::Resonance { k1: k1 as i32, k2: -m as i32 });
                }
                self.alpha = self.alpha.min(d);
            }
            self.next_k1 += 1;
        }
        Ok(self.alpha)
    }
}

/// `α_r = min |k1ω + k2|` over `0 < max(|k1|,|k2|) ≤ rK`.
pub fn alpha_of(omega: Interval, r: usize, k: u32) -> Result<Interval> {
    DivisorScan::new(omega).extend_to(r as i64 * k as i64)
}

fn binomial(n: usize, k: usize) -> u64 {
    (0..k).fold(1u64, |acc, i| acc * (n - i) as u64 / (i as u64 + 1))
}

fn div_count(x: Ext, j: usize) -> Ext {
    x.div(Ext::from_f64(j as f64)).expect("positive count")
}

fn upper(x: Interval) -> Ext {
    Ext::from_interval(x).upper()
}

/// Contributions of `exp(L_χ1)`: `f̂_{l-j}^(s+jr) += C(l,j) (𝒢₁₁+𝒢₁₂)^j f_l^(s)`.
///
/// Targets at orders `≤ horizon` are skipped; `f̂_0^(r)` is reset first.
pub fn propagate_chi1(h: &Layer, g1: Ext, r: usize, horizon: usize) -> Layer {
    let mut hat = h.clone();
    let r_ii = h[0].len() - 1;
    let lmax = h.len() - 1;
    hat[0][r] = Ext::ZERO;
    if g1.is_zero() {
        return hat;
    }
    let powers: Vec<Ext> = (0..=lmax).map(|j| g1.powi(j as u64)).collect();
    for l in 1..=lmax {
        for s in 0..=r_ii {
            let x = h[l][s];
            if x.is_zero() {
                continue;
            }
            for j in 1..=l {
                let t = s + j * r;
                if t > r_ii {
                    break;
                }
                if t <= horizon {
                    continue;
                }
                let add = x.mul(powers[j]).scale_int(binomial(l, j));
                hat[l - j][t] = hat[l - j][t].add(add);
            }
        }
    }
    hat
}

/// Contributions of `exp(L_χ2)` with `‖∂θχ₂‖ ≤ 𝒢₂₁`, `‖∂ψχ₂‖ ≤ 𝒢₂₂`.
///
/// Targets at orders `≤ horizon` are skipped; `f_1^(r)` is reset first.
pub fn propagate_chi2(hat: &Layer, g21: Ext, g22: Ext, r: usize, k: u32, horizon: usize) -> Layer {
    let mut out = hat.clone();
    let r_ii = hat[0].len() - 1;
    let lmax = hat.len() - 1;
    out[1][r] = Ext::ZERO;
    if g21.is_zero() && g22.is_zero() {
        return out;
    }
    let factor = |l: usize, order: usize| g21.scale_int(l as u64).add(g22.scale_int((order as u64) * k as u64));
    for l in 0..=lmax {
        for s in 0..=r_ii {
            let x = hat[l][s];
            if x.is_zero() {
                continue;
            }
            let (target_l, first_i, lw) = if l == 1 && s == r {
                (1, 1, 1)
            } else if s <= r {
                if l < 2 {
                    continue;
                }
                (l, 0, l)
            } else {
                (l, 1, l)
            };
            let mut prod = x;
            let mut j = 1;
            loop {
                let t = if l == 1 && s == r { (j + 1) * r } else { s + j * r };
                if t > r_ii {
                    break;
                }
                let i = first_i + j - 1;
                let order = if l == 1 && s == r { (i + 1) * r } else { s + i * r };
                prod = div_count(prod.mul(factor(lw, order)), j);
                if prod.is_zero() {
                    break;
                }
                if t > horizon {
                    out[target_l][t] = out[target_l][t].add(prod);
                }
                j += 1;
            }
        }
    }
    out
}

/// Output of the majorant iteration.
#[derive(Clone, Debug)]
pub struct Estimate {
    pub r_i: usize,
    pub r_ii: usize,
    pub lmax: u32,
    pub k: u32,
    /// Majorants of `f_l^(R_II,s)`, `s ≤ R_II`.
    pub layer: Layer,
    pub params: Vec<StepParams>,
    /// Lower bound on `|C|` for `s ≤ R_I`, carried over from the ledger.
    pub m_frozen: Interval,
    /// Lower bound on `|∂²ψψ⟨h₂⟩|` used by the last step.
    pub m_last: Interval,
    pub alpha: Interval,
    pub a_floor_used: bool,
}

impl Estimate {
    pub fn last(&self) -> StepParams {
        *self.params.last().expect("at least one step")
    }
}

fn check_ledger(led: &ExplicitLedger, r_ii: usize) -> Result<()> {
    if led.r_i < 1 || r_ii < led.r_i {
        return Err(Error::Invalid(format!("need R_II ≥ R_I ≥ 1, got R_I = {}, R_II = {r_ii}", led.r_i)));
    }
    if led.h.len() != led.r_i + 1 || led.hat.len() != led.r_i + 1 || led.g.len() != led.r_i + 1 {
        return Err(Error::Invalid("ledger tables do not match R_I".into()));
    }
    Ok(())
}

fn explicit_layer(table: &[Vec<Interval>], lmax: usize, r_ii: usize) -> Layer {
    let mut out = vec![vec![Ext::ZERO; r_ii + 1]; lmax + 1];
    for (l, row) in table.iter().enumerate().take(lmax + 1) {
        for (s, x) in row.iter().enumerate().take(r_ii + 1) {
            out[l][s] = upper(*x);
        }
    }
    out
}

fn overwrite(layer: &mut Layer, table: &[Vec<Interval>], upto: usize) {
    for (l, row) in table.iter().enumerate() {
        for (s, x) in row.iter().enumerate().take(upto + 1) {
            layer[l][s] = upper(*x);
        }
    }
}

/// Shared engine. Orders `s ≤ horizon` take explicit values; `visit` sees `(r, f̂^(r), f^(r))`.
fn iterate(
    led: &ExplicitLedger,
    cfg: &EstimatorConfig,
    horizon: usize,
    mut visit: impl FnMut(usize, &Layer, &Layer),
) -> Result<Estimate> {
    check_ledger(led, cfg.r_ii)?;
    let (r_i, r_ii, k) = (led.r_i, cfg.r_ii, led.k);
    let lmax = led.lmax as usize;
    let mut h = explicit_layer(&led.h[0], lmax, r_ii);
    let mut avg = vec![Ext::ZERO; r_ii + 1];
    let mut scan = DivisorScan::new(led.omega);
    let mut alpha = Interval::ONE;
    let m_frozen = led.m;
    let mut m_last = m_frozen;
    let mut params: Vec<StepParams> = Vec::with_capacity(r_ii);
    let mut a_floor_used = false;
    for r in 1..=r_ii {
        let explicit_g = r <= r_i;
        let rk = r as u64 * k as u64;
        if !explicit_g {
            alpha = scan.extend_to(rk as i64)?;
        }
        let alpha_lo = Ext::from_f64(alpha.lo());
        let mut g = if explicit_g {
            let b = led.g[r];
            GenMajorants { g11: upper(b.g11), g12: upper(b.g12), g21: upper(b.g21), g22: upper(b.g22) }
        } else {
            let tail: Ext = (r_i + 1..=r).fold(Ext::ZERO, |acc, s| acc.add(h[2][s]));
            let m = m_frozen - tail.scale_int(2).to_interval()?;
            if !(m.lo() > 0.0) {
                return Err(Error::Nondegenerate { step: r, what: "m" });
            }
            m_last = m;
            GenMajorants {
                g11: h[0][r].scale_int(rk).div(alpha_lo)?,
                g12: avg[r].div(Ext::from_f64(m.lo()))?,
                ..Default::default()
            }
        };
        let g1 = g.g11.add(g.g12);
        let mut hat = propagate_chi1(&h, g1, r, horizon);
        if r <= horizon {
            overwrite(&mut hat, &led.hat[r], horizon);
        }
        if !explicit_g {
            g.g21 = hat[1][r].scale_int(rk).div(alpha_lo)?;
            g.g22 = hat[1][r].div(alpha_lo)?;
        }
        let mut next = propagate_chi2(&hat, g.g21, g.g22, r, k, horizon);
        if r <= horizon {
            overwrite(&mut next, &led.h[r], horizon);
        }
        if r == r_i {
            avg = next[1].clone();
        } else if r > r_i {
            for s in r + 1..=r_ii {
                avg[s] = if s < 2 * r { avg[s].add(g.g11.scale_int(2).mul(h[2][s - r])).min(next[1][s]) } else { next[1][s] };
            }
        }
        let step = if r == 1 {
            let mut a = g.g22.scale_int(k as u64).max(g.g21).upper();
            if a.is_zero() {
                a = Ext::from_f64(cfg.a_floor);
                a_floor_used = true;
            }
            let mut e = Ext::ZERO;
            for row in hat.iter() {
                for (s, x) in row.iter().enumerate().take(r_i + lmax + 1) {
                    e = e.max(x.div(a.powi(s as u64))?);
                }
            }
            StepParams { r, g, e: e.upper(), zeta: Ext::ONE, a }
        } else {
            update_params(params.last().expect("step 1 done"), g, r, r_i, led.lmax, k)?
        };
        params.push(step);
        visit(r, &hat, &next);
        h = next;
    }
    Ok(Estimate { r_i, r_ii, lmax: led.lmax, k, layer: h, params, m_frozen, m_last, alpha, a_floor_used })
}

/// Two-stage update of `(E, ζ, a)` at step `r ≥ 2`.
pub fn update_params(prev: &StepParams, g: GenMajorants, r: usize, r_i: usize, lmax: u32, k: u32) -> Result<StepParams> {
    let one = Ext::ONE;
    let g1 = g.g11.add(g.g12);
    let g2 = g.g22.scale_int(r as u64 * k as u64).max(g.g21);
    let z1 = g1.mul(prev.zeta).div(prev.a.powi(r as u64))?;
    let (e, zeta, a) = if r <= r_i {
        let e = prev.e.mul(one.add(z1).powi(lmax as u64)).upper();
        let z2 = g2.div(prev.a.powi(r as u64))?;
        let zeta = prev.zeta.mul(one.add(z2)).upper();
        let a = prev.a.mul(one.add(z2).root(r as u64)?).upper();
        (e, zeta, a)
    } else {
        let a_hat = prev.a.mul(one.add(z1.scale_int(lmax as u64)).root(r as u64)?).upper();
        let z2 = g2.scale_int(lmax as u64 + 1).div(a_hat.powi(r as u64))?;
        let a = a_hat.mul(one.add(z2).root(r as u64)?).upper();
        (prev.e, prev.zeta, a)
    };
    Ok(StepParams { r, g, e, zeta, a })
}

/// Runs the iteration from the ledger up to `R_II`.
pub fn estimate(led: &ExplicitLedger, cfg: &EstimatorConfig) -> Result<Estimate> {
    iterate(led, cfg, led.r_i, |_, _, _| {})
}

/// An explicit norm that exceeds its recursive majorant.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Violation {
    pub r: usize,
    pub l: usize,
    pub s: usize,
    pub hat: bool,
    pub explicit: Interval,
    pub majorant: Ext,
}

/// Result of comparing recursive majorants with explicit norms.
#[derive(Clone, Debug, Default)]
pub struct CrossCheck {
    pub compared: usize,
    pub violations: Vec<Violation>,
}

/// Reruns steps `1..=R_I` with every order estimated recursively from `H^(0)` and the
/// explicit generator constants, and checks that each majorant bounds the explicit norm.
pub fn cross_validate(led: &ExplicitLedger) -> Result<CrossCheck> {
    let mut out = CrossCheck::default();
    let cfg = EstimatorConfig::new(led.r_i);
    iterate(led, &cfg, 0, |r, hat, h| {
        for (tables, is_hat, layer) in [(&led.hat, true, hat), (&led.h, false, h)] {
            for (l, row) in tables[r].iter().enumerate() {
                for (s, x) in row.iter().enumerate() {
                    out.compared += 1;
                    if layer[l][s].hi_f64() < x.hi() {
                        out.violations.push(Violation { r, l, s, hat: is_hat, explicit: *x, majorant: layer[l][s] });
                    }
                }
            }
        }
    })?;
    Ok(out)
}

/// `q^(n+1) / (1 - q)` for `q < 1`.
pub fn geometric_tail(q: Ext, n: usize) -> Result<Ext> {
    let qi = q.to_interval()?;
    let gap = Interval::ONE - qi;
    if !(gap.lo() > 0.0) {
        return Err(Error::Convergence(format!("ratio {qi} is not below 1")));
    }
    Ok(q.powi(n as u64 + 1).div(Ext::from_interval(gap))?)
}

/// Intermediate constants of the smallness threshold.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Threshold {
    pub a_bar: Interval,
    pub b_bar: Interval,
    pub w_bar: Interval,
    pub z_bar: Interval,
    /// `ln λ*`.
    pub ln_lambda_star: Interval,
}

impl Threshold {
    pub fn lambda_star(&self) -> Result<Ext> {
        Ok(Ext::exp(self.ln_lambda_star)?)
    }

    pub fn log10_lambda_star(&self) -> Interval {
        self.ln_lambda_star.checked_div(ln10()).expect("ln 10 > 0")
    }
}

fn ln10() -> Interval {
    Interval::from_int(10).ln().expect("positive")
}

/// The threshold `λ*` of the KAM theorem.
pub fn lambda_star(rho: Interval, sigma: Interval, e: Interval, gamma: Interval, m: Interval, tau: u32) -> Result<Threshold> {
    for (name, x) in [("rho", rho), ("sigma", sigma), ("E", e), ("gamma", gamma), ("m", m)] {
        if !(x.lo() > 0.0) {
            return Err(Error::Invalid(format!("{name} must be positive, got {x}")));
        }
    }
    let euler = Interval::e();
    let two = Interval::from_int(2);
    let pi2_3 = Interval::pi().sqr().div_int(3);
    let tau_i = Interval::from_int(tau as i64);
    let e_pi = pi2_3.exp()?;
    let ee = e.checked_mul(e_pi)?;
    // (τ/(eσ))^τ
    let ratio = tau_i.checked_div(euler * sigma)?;
    let a_bar = ee.checked_div(gamma)?.checked_mul(ratio.powi(tau))?;
    let b_bar = (Interval::ONE + a_bar.checked_div(euler * rho * sigma)?).checked_mul(ee.checked_div(m * rho)?)?;
    let w_raw = euler.sqr().checked_div(rho)?.checked_mul(a_bar.checked_div(euler * sigma)? + b_bar)?;
    let w_bar = w_raw.max(two);
    let z_bar = (two * euler * a_bar).checked_div(rho * sigma)?.max(two);
    let first = -(Interval::from_int(25 + 9 * tau as i64) * Interval::from_int(20).ln()?)
        - two * w_bar.ln()?
        - two * z_bar.ln()?;
    let inner = m.checked_mul(rho.sqr())?.checked_div(ee)?;
    let second = Interval::from_int(9).ln()? + two * inner.ln()?;
    Ok(Threshold { a_bar, b_bar, w_bar, z_bar, ln_lambda_star: first.min(second) })
}

/// `σ = 4/(K·R_II)`.
pub fn sigma_rule(k: u32, r_ii: usize) -> Interval {
    Interval::from_int(4).div_int(k as u64 * r_ii as u64)
}

/// Inputs and outcome of the final inequality.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ProofParams {
    pub rho: Interval,
    pub sigma: Interval,
    /// `a_{R_II}·e^{2Kσ}`.
    pub ratio: Ext,
    pub lambda: Ext,
    pub e: Interval,
    pub gamma: Interval,
    pub tau: u32,
    pub m: Interval,
    pub threshold: Threshold,
    pub lambda_star: Ext,
}

/// A hypothesis of the theorem that could not be verified.
#[derive(Clone, Debug, PartialEq)]
pub enum Hypothesis {
    /// A small divisor is not separated from zero.
    Resonance { k1: i32, k2: i32 },
    /// The twist `|∂²ψψ⟨h₂⟩|` is not bounded below by a positive `m`.
    Nondegeneracy { step: usize, what: String },
    /// `a_{R_II}·e^{2Kσ} < 1` fails.
    Convergence(String),
    /// `λ < λ*` fails.
    Smallness { log10_lambda: f64, log10_lambda_star: f64 },
    /// A normalized block of order `≤ R_II` is not zero.
    Normalization { l: usize, s: usize },
    /// A bound left the representable range.
    Range(String),
}

impl fmt::Display for Hypothesis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Hypothesis::Resonance { k1, k2 } => write!(f, "diophantine: divisor |{k1}ω + {k2}| not separated from 0"),
            Hypothesis::Nondegeneracy { step, what } => write!(f, "nondegeneracy: {what} not bounded away from 0 at step {step}"),
            Hypothesis::Convergence(m) => write!(f, "convergence: {m}"),
            Hypothesis::Smallness { log10_lambda, log10_lambda_star } => {
                write!(f, "smallness: log10 λ ≈ {log10_lambda:.3} is not below log10 λ* ≈ {log10_lambda_star:.3}")
            }
            Hypothesis::Normalization { l, s } => write!(f, "normal form: majorant of f_{l} at order {s} is not zero"),
            Hypothesis::Range(m) => write!(f, "range: {m}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum Verdict {
    Proved,
    NotProved(Hypothesis),
}

impl Verdict {
    pub fn is_proved(&self) -> bool {
        matches!(self, Verdict::Proved)
    }
}

/// Everything the proof run produced.
#[derive(Clone, Debug)]
pub struct Certificate {
    pub r_i: usize,
    pub r_ii: usize,
    pub k: u32,
    pub lmax: u32,
    pub omega: Interval,
    pub last: Option<StepParams>,
    pub params: Option<ProofParams>,
    pub a_floor_used: bool,
    pub verdict: Verdict,
}

fn log10_of(x: Ext) -> f64 {
    x.ln().map(|l| l.mid() / std::f64::consts::LN_10).unwrap_or(f64::NEG_INFINITY)
}

impl Certificate {
    pub fn to_text(&self) -> String {
        let mut out = String::from("KAM CERTIFICATE v1\n");
        let _ = writeln!(out, "RI {} RII {} K {} LMAX {}", self.r_i, self.r_ii, self.k, self.lmax);
        let _ = writeln!(out, "OMEGA {}", self.omega);
        if let Some(p) = self.last {
            let _ = writeln!(out, "E_RII {}", p.e);
            let _ = writeln!(out, "ZETA_RII {}", p.zeta);
            let _ = writeln!(out, "A_RII {}", p.a);
        }
        if self.a_floor_used {
            out.push_str("NOTE a_1 floor used\n");
        }
        if let Some(p) = &self.params {
            let _ = writeln!(out, "RHO {}", p.rho);
            let _ = writeln!(out, "SIGMA {}", p.sigma);
            let _ = writeln!(out, "RATIO {}", p.ratio);
            let _ = writeln!(out, "E {}", p.e);
            let _ = writeln!(out, "LAMBDA {}", p.lambda);
            let _ = writeln!(out, "GAMMA {}", p.gamma);
            let _ = writeln!(out, "TAU {}", p.tau);
            let _ = writeln!(out, "M {}", p.m);
            let _ = writeln!(out, "ABAR {}", p.threshold.a_bar);
            let _ = writeln!(out, "BBAR {}", p.threshold.b_bar);
            let _ = writeln!(out, "WBAR {}", p.threshold.w_bar);
            let _ = writeln!(out, "ZBAR {}", p.threshold.z_bar);
            let _ = writeln!(out, "LAMBDA_STAR {}", p.lambda_star);
            let _ = writeln!(out, "LOG10_LAMBDA {:.4}", log10_of(p.lambda));
            let _ = writeln!(out, "LOG10_LAMBDA_STAR {}", p.threshold.log10_lambda_star());
        }
        match &self.verdict {
            Verdict::Proved => out.push_str("VERDICT PROVED\n"),
            Verdict::NotProved(h) => {
                out.push_str("VERDICT NOT-PROVED\n");
                let _ = writeln!(out, "FAILED {h}");
            }
        }
        out
    }
}

/// The hypothesis behind a proof-stage error; other errors are passed back.
pub fn hypothesis_of(e: Error) -> std::result::Result<Hypothesis, Error> {
    match e {
        Error::Resonance { k1, k2 } => Ok(Hypothesis::Resonance { k1, k2 }),
        Error::Nondegenerate { step, what } => Ok(Hypothesis::Nondegeneracy { step, what: what.into() }),
        Error::Convergence(m) => Ok(Hypothesis::Convergence(m)),
        Error::Interval(e @ (IntervalError::Overflow(_) | IntervalError::DivisionByZero | IntervalError::Domain(_))) => {
            Ok(Hypothesis::Range(e.to_string()))
        }
        other => Err(other),
    }
}

/// Theorem inputs from a finished iteration.
pub fn proof_params(est: &Estimate, gamma: Interval, tau: u32) -> Result<ProofParams> {
    let last = est.last();
    let sigma = sigma_rule(est.k, est.r_ii);
    let weight = Ext::exp(sigma.scale_int(2 * est.k as u64))?;
    let ratio = last.a.mul(weight);
    if !ratio.certainly_below_one() {
        return Err(Error::Convergence(format!("a·e^(2Kσ) = {ratio} is not below 1")));
    }
    let tail = geometric_tail(ratio, est.r_ii)?;
    let e_tail = last.e.mul(tail);
    let mut e_max = Ext::ZERO;
    for l in 2..=est.lmax as usize {
        let mut w = Ext::ONE;
        let mut sum = Ext::ZERO;
        for x in &est.layer[l] {
            sum = sum.add(x.mul(w));
            w = w.mul(weight);
        }
        e_max = e_max.max(sum.div(last.zeta.powi(l as u64))?.add(e_tail));
    }
    let e = e_max.upper();
    let lambda = e_tail.div(e)?;
    let rho = Interval::ONE.checked_div(last.zeta.to_interval()?.scale_int(2))?;
    let a_tail = geometric_tail(last.a, est.r_ii)?;
    let mut loss = last.e.mul(last.zeta.powi(2)).mul(a_tail);
    for s in est.r_i + 1..=est.r_ii {
        loss = loss.add(est.layer[2][s]);
    }
    let m = est.m_frozen - loss.scale_int(2).to_interval()?;
    if !(m.lo() > 0.0) {
        return Err(Error::Nondegenerate { step: est.r_ii, what: "m" });
    }
    let m = Interval::point(m.lo());
    let threshold = lambda_star(rho, sigma, e.to_interval()?, gamma, m, tau)?;
    Ok(ProofParams {
        rho,
        sigma,
        ratio,
        lambda,
        e: e.to_interval()?,
        gamma,
        tau,
        m,
        threshold,
        lambda_star: threshold.lambda_star()?,
    })
}

impl Certificate {
    /// A certificate for a run that stopped before the iteration.
    pub fn failed(led_dims: (usize, usize, u32, u32), omega: Interval, h: Hypothesis) -> Self {
        let (r_i, r_ii, k, lmax) = led_dims;
        Certificate {
            r_i,
            r_ii,
            k,
            lmax,
            omega,
            last: None,
            params: None,
            a_floor_used: false,
            verdict: Verdict::NotProved(h),
        }
    }
}

/// Iterates, forms the theorem inputs, and decides `λ < λ*`.
///
/// Failed hypotheses become a `NOT-PROVED` verdict; only invalid input is an error.
pub fn prove(led: &ExplicitLedger, cfg: &EstimatorConfig, gamma: Interval) -> Result<Certificate> {
    let mut cert = Certificate {
        r_i: led.r_i,
        r_ii: cfg.r_ii,
        k: led.k,
        lmax: led.lmax,
        omega: led.omega,
        last: None,
        params: None,
        a_floor_used: false,
        verdict: Verdict::Proved,
    };
    let est = match estimate(led, cfg) {
        Ok(est) => est,
        Err(e) => {
            cert.verdict = Verdict::NotProved(hypothesis_of(e)?);
            return Ok(cert);
        }
    };
    cert.last = Some(est.last());
    cert.a_floor_used = est.a_floor_used;
    for l in 0..=1 {
        if let Some(s) = est.layer[l].iter().position(|x| !x.is_zero()) {
            cert.verdict = Verdict::NotProved(Hypothesis::Normalization { l, s });
            return Ok(cert);
        }
    }
    let params = match proof_params(&est, gamma, 1) {
        Ok(p) => p,
        Err(e) => {
            cert.verdict = Verdict::NotProved(hypothesis_of(e)?);
            return Ok(cert);
        }
    };
    if !params.lambda.certainly_lt(params.lambda_star) {
        cert.verdict = Verdict::NotProved(Hypothesis::Smallness {
            log10_lambda: log10_of(params.lambda),
            log10_lambda_star: params.threshold.log10_lambda_star().mid(),
        });
    }
    cert.params = Some(params);
    Ok(cert)
}
