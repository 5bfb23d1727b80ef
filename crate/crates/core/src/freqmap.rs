//! Frequency-map analysis in plain floating point: a symplectic splitting integrator,
//! windowed frequency extraction, plateau detection and the noble mediant.

use std::f64::consts::TAU;
use std::fmt::Write as _;

use rayon::prelude::*;
use rustfft::num_complex::Complex64;
use rustfft::FftPlanner;

use crate::contfrac::{simplest_in, Rational};
use crate::error::Result;
use crate::interval::Interval;
use crate::model::{build_control, build_equilibrium, build_perturbation, h_prime};

/// The angle part `ε v + f` as `Σ c cos(k1θ + k2φ) + s sin(k1θ + k2φ)`.
#[derive(Clone, Debug, PartialEq)]
pub struct FieldModel {
    pub harmonics: Vec<(i32, i32, f64, f64)>,
}

impl FieldModel {
    /// The perturbation, plus the control term built at `psi_control` when asked.
    pub fn new(eps: f64, with_control: bool, psi_control: f64) -> Result<Self> {
        let e = Interval::point(eps);
        let v = build_perturbation(e);
        let mut series = v.clone();
        if with_control && eps != 0.0 {
            let (omega_tilde, h) = build_equilibrium(Interval::point(psi_control));
            series = series.add(&build_control(omega_tilde, &h, &v)?);
        }
        let harmonics = series
            .terms()
            .iter()
            .filter(|(k, _)| k.l == 0)
            .map(|&(k, c)| (k.h.k1, k.h.k2, c.cos.mid(), c.sin.mid()))
            .collect();
        Ok(FieldModel { harmonics })
    }

    pub fn potential(&self, theta: f64, phi: f64) -> f64 {
        self.harmonics
            .iter()
            .map(|&(k1, k2, c, s)| {
                let a = k1 as f64 * theta + k2 as f64 * phi;
                c * a.cos() + s * a.sin()
            })
            .sum()
    }

    /// `∂θ` of the potential.
    pub fn dtheta(&self, theta: f64, phi: f64) -> f64 {
        self.harmonics
            .iter()
            .map(|&(k1, k2, c, s)| {
                let a = k1 as f64 * theta + k2 as f64 * phi;
                k1 as f64 * (s * a.cos() - c * a.sin())
            })
            .sum()
    }
}

/// Sampled quantity whose rotation number is measured.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Observable {
    /// `e^{iθ}`
    #[default]
    Phase,
    /// `√(2ψ) e^{iθ}`
    Action,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct OrbitConfig {
    pub eps: f64,
    pub with_control: bool,
    /// Action at which the control term is designed.
    pub psi_control: f64,
    pub periods: usize,
    pub substeps: usize,
    pub observable: Observable,
}

impl Default for OrbitConfig {
    fn default() -> Self {
        OrbitConfig {
            eps: 0.0,
            with_control: false,
            psi_control: 0.35,
            periods: (1 << 15) + 1,
            substeps: 64,
            observable: Observable::Phase,
        }
    }
}

/// One sample per period, taken at `φ = φ₀ + 2πn`.
#[derive(Clone, Debug, PartialEq)]
pub struct Orbit {
    /// Unwrapped angle.
    pub theta: Vec<f64>,
    pub psi: Vec<f64>,
    /// The action left `[0, 1]`; sampling stopped there.
    pub escaped: bool,
}

/// Strang splitting `kick(τ/2) drift(τ) kick(τ/2)` of `H(ψ) + P + V(θ, φ)`.
///
/// Kicks are merged between substeps. For each substep the `φ`-dependent factors of
/// `∂θV` are tabulated, so a kick costs one `sin_cos` and a short Horner sum in `e^{iθ}`.
#[derive(Clone, Debug)]
pub struct Integrator {
    substeps: usize,
    tau: f64,
    /// `table[m][k1]` with `∂θV(θ, φ_m) = Re Σ table[m][k1] e^{i k1 θ}`.
    table: Vec<Vec<Complex64>>,
}

impl Integrator {
    pub fn new(model: &FieldModel, substeps: usize, phi0: f64) -> Self {
        assert!(substeps >= 1);
        let tau = TAU / substeps as f64;
        let kmax = model.harmonics.iter().map(|h| h.0.max(0) as usize).max().unwrap_or(0);
        let table = (0..substeps)
            .map(|m| {
                let phi = phi0 + tau * m as f64;
                let mut row = vec![Complex64::new(0.0, 0.0); kmax + 1];
                for &(k1, k2, c, s) in &model.harmonics {
                    if k1 <= 0 {
                        continue;
                    }
                    // k1 (s cos a - c sin a) = Re[k1 (s + ic) e^{ia}]
                    let w = Complex64::from_polar(1.0, k2 as f64 * phi);
                    row[k1 as usize] += Complex64::new(s, c) * w * k1 as f64;
                }
                row
            })
            .collect();
        Integrator { substeps, tau, table }
    }

    fn force(&self, theta: f64, m: usize) -> f64 {
        let row = &self.table[m];
        if row.len() <= 1 {
            return 0.0;
        }
        let (s, c) = theta.sin_cos();
        let z = Complex64::new(c, s);
        let mut acc = row[row.len() - 1];
        for k in (1..row.len() - 1).rev() {
            acc = acc * z + row[k];
        }
        (acc * z).re
    }

    /// One full substep from `φ_m` to `φ_{m+1}`, as a map of `(θ, ψ)`.
    pub fn step(&self, theta: f64, psi: f64, m: usize) -> (f64, f64) {
        let half = 0.5 * self.tau;
        let psi = psi - half * self.force(theta, m % self.substeps);
        let theta = theta + self.tau * h_prime(psi);
        let psi = psi - half * self.force(theta, (m + 1) % self.substeps);
        (theta, psi)
    }

    pub fn integrate(&self, psi0: f64, theta0: f64, periods: usize) -> Orbit {
        let mut theta = theta0.rem_euclid(TAU);
        let mut winding = ((theta0 - theta) / TAU).round();
        let mut psi = psi0;
        let mut out = Orbit { theta: vec![theta0], psi: vec![psi0], escaped: false };
        psi -= 0.5 * self.tau * self.force(theta, 0);
        for n in 1..=periods {
            for m in 0..self.substeps {
                theta += self.tau * h_prime(psi);
                let next = (m + 1) % self.substeps;
                let last = n == periods && next == 0;
                let w = if last { 0.5 * self.tau } else { self.tau };
                if theta >= TAU {
                    let turns = (theta / TAU).floor();
                    theta -= turns * TAU;
                    winding += turns;
                } else if theta < 0.0 {
                    let turns = (theta / TAU).floor();
                    theta -= turns * TAU;
                    winding += turns;
                }
                let synced = psi - 0.5 * self.tau * self.force(theta, next);
                psi -= w * self.force(theta, next);
                if next == 0 {
                    if !(0.0..=1.0).contains(&synced) {
                        out.escaped = true;
                        return out;
                    }
                    out.theta.push(theta + TAU * winding);
                    out.psi.push(synced);
                }
            }
        }
        out
    }
}

pub fn integrate_orbit(psi0: f64, theta0: f64, phi0: f64, cfg: &OrbitConfig) -> Result<Orbit> {
    let model = FieldModel::new(cfg.eps, cfg.with_control, cfg.psi_control)?;
    Ok(Integrator::new(&model, cfg.substeps, phi0).integrate(psi0, theta0, cfg.periods))
}

pub fn signal(orbit: &Orbit, obs: Observable) -> Vec<Complex64> {
    orbit
        .theta
        .iter()
        .zip(&orbit.psi)
        .map(|(&t, &p)| {
            let r = match obs {
                Observable::Phase => 1.0,
                Observable::Action => (2.0 * p).max(0.0).sqrt(),
            };
            Complex64::from_polar(r, t)
        })
        .collect()
}

/// Dominant frequency in cycles per sample, in `[0, 1)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Frequency {
    pub omega: f64,
    /// Peak of the windowed correlation over the window mass.
    pub amplitude: f64,
}

const MIN_SAMPLES: usize = 256;
const FLAT: f64 = 1e-3;

fn hann(n: usize) -> Vec<f64> {
    (0..n).map(|i| 0.5 * (1.0 - (TAU * i as f64 / (n - 1) as f64).cos())).collect()
}

/// `|Σ s_n w_n e^{-2πiνn}|`.
fn correlation(weighted: &[Complex64], nu: f64) -> f64 {
    let step = Complex64::from_polar(1.0, -TAU * nu);
    let mut rot = Complex64::new(1.0, 0.0);
    let mut acc = Complex64::new(0.0, 0.0);
    for (i, &x) in weighted.iter().enumerate() {
        acc += x * rot;
        rot *= step;
        if i % 1024 == 1023 {
            rot = Complex64::from_polar(1.0, -TAU * nu * (i + 1) as f64);
        }
    }
    acc.norm()
}

/// Hann-windowed correlation maximized on an FFT grid, then by golden section.
pub fn naff_frequency(samples: &[Complex64]) -> Option<Frequency> {
    let n = samples.len();
    if n < MIN_SAMPLES {
        return None;
    }
    let w = hann(n);
    let mass: f64 = w.iter().sum();
    let weighted: Vec<Complex64> = samples.iter().zip(&w).map(|(s, w)| s * w).collect();
    let size = (2 * n).next_power_of_two();
    let mut buf = weighted.clone();
    buf.resize(size, Complex64::new(0.0, 0.0));
    FftPlanner::new().plan_fft_forward(size).process(&mut buf);
    let (k, peak) = buf
        .iter()
        .enumerate()
        .map(|(k, x)| (k, x.norm()))
        .fold((0, -1.0), |best, cur| if cur.1 > best.1 { cur } else { best });
    let scale = samples.iter().map(|s| s.norm()).fold(0.0, f64::max).max(f64::MIN_POSITIVE);
    if peak / (mass * scale) < FLAT {
        return None;
    }
    let g = 0.5 * (5f64.sqrt() - 1.0);
    let (mut a, mut b) = ((k as f64 - 1.0) / size as f64, (k as f64 + 1.0) / size as f64);
    let mut c = b - g * (b - a);
    let mut d = a + g * (b - a);
    let (mut fc, mut fd) = (correlation(&weighted, c), correlation(&weighted, d));
    while b - a > 1e-13 {
        if fc > fd {
            b = d;
            d = c;
            fd = fc;
            c = b - g * (b - a);
            fc = correlation(&weighted, c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + g * (b - a);
            fd = correlation(&weighted, d);
        }
    }
    let nu = 0.5 * (a + b);
    let amplitude = (correlation(&weighted, nu) / (mass * scale)).min(1.0);
    Some(Frequency { omega: nu.rem_euclid(1.0), amplitude })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Flag {
    Regular,
    Plateau,
    ChaoticSuspect,
}

impl Flag {
    pub fn as_str(self) -> &'static str {
        match self {
            Flag::Regular => "regular",
            Flag::Plateau => "plateau",
            Flag::ChaoticSuspect => "chaotic-suspect",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct OrbitSample {
    pub psi0: f64,
    /// `NaN` when no frequency could be extracted.
    pub omega: f64,
    pub amplitude: f64,
    /// Difference between the frequencies of the two halves of the orbit.
    pub drift: f64,
    pub flag: Flag,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FamConfig {
    pub orbit: OrbitConfig,
    pub from: f64,
    pub to: f64,
    pub count: usize,
    /// Two-window drift above which an orbit is flagged.
    pub drift_tol: f64,
}

pub fn grid(from: f64, to: f64, count: usize) -> Vec<f64> {
    match count {
        0 => Vec::new(),
        1 => vec![from],
        _ => (0..count).map(|i| from + (to - from) * i as f64 / (count - 1) as f64).collect(),
    }
}

/// Frequency, amplitude and drift of one orbit.
pub fn analyse_orbit(integrator: &Integrator, psi0: f64, cfg: &OrbitConfig, drift_tol: f64) -> OrbitSample {
    let orbit = integrator.integrate(psi0, 0.0, cfg.periods);
    let sig = signal(&orbit, cfg.observable);
    let full = naff_frequency(&sig);
    let half = sig.len() / 2;
    let drift = match (naff_frequency(&sig[..half]), naff_frequency(&sig[half..])) {
        (Some(a), Some(b)) => (a.omega - b.omega).abs(),
        _ => f64::INFINITY,
    };
    match full {
        Some(f) if !orbit.escaped => OrbitSample {
            psi0,
            omega: f.omega,
            amplitude: f.amplitude,
            drift,
            flag: if drift > drift_tol { Flag::ChaoticSuspect } else { Flag::Regular },
        },
        _ => OrbitSample { psi0, omega: f64::NAN, amplitude: 0.0, drift, flag: Flag::ChaoticSuspect },
    }
}

/// One sample per grid point, in grid order; plateau flags are not set here.
pub fn build_fam(cfg: &FamConfig) -> Result<Vec<OrbitSample>> {
    let model = FieldModel::new(cfg.orbit.eps, cfg.orbit.with_control, cfg.orbit.psi_control)?;
    let integrator = Integrator::new(&model, cfg.orbit.substeps, 0.0);
    Ok(grid(cfg.from, cfg.to, cfg.count)
        .into_par_iter()
        .map(|psi0| analyse_orbit(&integrator, psi0, &cfg.orbit, cfg.drift_tol))
        .collect())
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Plateau {
    pub ratio: Rational,
    /// Inclusive sample range.
    pub first: usize,
    pub last: usize,
    pub psi_from: f64,
    pub psi_to: f64,
}

/// Maximal runs of at least three samples whose frequencies agree within `tol`.
pub fn detect_plateaus(samples: &[OrbitSample], tol: f64) -> Vec<Plateau> {
    let mut out = Vec::new();
    let mut i = 0;
    while i < samples.len() {
        if !samples[i].omega.is_finite() {
            i += 1;
            continue;
        }
        let (mut lo, mut hi) = (samples[i].omega, samples[i].omega);
        let mut j = i;
        while j + 1 < samples.len() {
            let w = samples[j + 1].omega;
            if !w.is_finite() || hi.max(w) - lo.min(w) > tol {
                break;
            }
            lo = lo.min(w);
            hi = hi.max(w);
            j += 1;
        }
        if j - i + 1 >= 3 {
            let mid = 0.5 * (lo + hi);
            out.push(Plateau {
                ratio: simplest_in(mid - tol, mid + tol),
                first: i,
                last: j,
                psi_from: samples[i].psi0,
                psi_to: samples[j].psi0,
            });
            i = j + 1;
        } else {
            i += 1;
        }
    }
    out
}

pub fn mark_plateaus(samples: &mut [OrbitSample], plateaus: &[Plateau]) {
    for p in plateaus {
        for s in &mut samples[p.first..=p.last] {
            s.flag = Flag::Plateau;
        }
    }
}

/// Longest run of consecutive samples outside every plateau with strictly monotone
/// frequency, if it has at least `min_len` samples.
pub fn regular_branch(samples: &[OrbitSample], plateaus: &[Plateau], min_len: usize) -> Option<(usize, usize)> {
    let mut in_plateau = vec![false; samples.len()];
    for p in plateaus {
        in_plateau[p.first..=p.last].iter_mut().for_each(|x| *x = true);
    }
    let ok = |i: usize| !in_plateau[i] && samples[i].omega.is_finite();
    let mut best: Option<(usize, usize)> = None;
    let mut consider = |a: usize, b: usize| {
        if b + 1 - a >= min_len && best.map_or(true, |(x, y)| b - a > y - x) {
            best = Some((a, b));
        }
    };
    let mut start = 0;
    let mut dir = 0i8;
    for i in 0..samples.len() {
        if !ok(i) {
            if i > start {
                consider(start, i - 1);
            }
            start = i + 1;
            dir = 0;
            continue;
        }
        if i == start {
            continue;
        }
        let d = samples[i].omega - samples[i - 1].omega;
        let sd = if d > 0.0 { 1 } else if d < 0.0 { -1 } else { 0 };
        if sd == 0 || (dir != 0 && sd != dir) {
            consider(start, i - 1);
            start = if sd == 0 { i } else { i - 1 };
            dir = if sd == 0 { 0 } else { sd };
        } else {
            dir = sd;
        }
    }
    if start < samples.len() {
        consider(start, samples.len() - 1);
    }
    best
}

pub fn to_csv(samples: &[OrbitSample]) -> String {
    let mut out = String::from("psi0,omega,amplitude,flag\n");
    for s in samples {
        let _ = writeln!(out, "{},{},{},{}", s.psi0, s.omega, s.amplitude, s.flag.as_str());
    }
    out
}

/// A gnuplot script that plots `omega` against `psi0` from the CSV.
pub fn gnuplot_script(csv: &str, png: &str, title: &str) -> String {
    format!(
        "set terminal pngcairo size 1000,700\n\
         set output '{png}'\n\
         set datafile separator ','\n\
         set key autotitle columnhead\n\
         set title '{title}'\n\
         set xlabel 'psi_0'\n\
         set ylabel 'omega'\n\
         plot '{csv}' using 1:2 with points pt 7 ps 0.5 title 'frequency'\n"
    )
}

/// Closed form used by tests: the rotation number of the unperturbed flow.
pub fn integrable_frequency(psi: f64) -> f64 {
    h_prime(psi)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tone(nu: f64, n: usize) -> Vec<Complex64> {
        (0..n).map(|i| Complex64::from_polar(1.0, TAU * nu * i as f64)).collect()
    }

    #[test]
    fn pure_tone() {
        let f = naff_frequency(&tone(0.58, 1 << 15)).unwrap();
        assert!((f.omega - 0.58).abs() < 1e-9, "{f:?}");
        assert!((f.amplitude - 1.0).abs() < 1e-6);
    }

    #[test]
    fn larger_tone_wins() {
        let a = tone(0.31, 4096);
        let b = tone(0.72, 4096);
        let s: Vec<Complex64> = a.iter().zip(&b).map(|(x, y)| x * 0.4 + y).collect();
        let f = naff_frequency(&s).unwrap();
        assert!((f.omega - 0.72).abs() < 1e-7, "{f:?}");
    }

    #[test]
    fn short_or_flat_signals_have_no_frequency() {
        assert!(naff_frequency(&tone(0.2, 100)).is_none());
        assert!(naff_frequency(&vec![Complex64::new(0.0, 0.0); 1024]).is_none());
    }

    #[test]
    fn hann_error_decays_fast() {
        // Frequency error on a two-tone signal shrinks much faster than 1/T.
        let err = |n: usize| {
            let s: Vec<Complex64> = tone(0.4, n).iter().zip(tone(0.43, n)).map(|(x, y)| x + y * 0.3).collect();
            (naff_frequency(&s).unwrap().omega - 0.4).abs()
        };
        let (e1, e2) = (err(1 << 10), err(1 << 11));
        assert!(e2 < e1 / 8.0 || e2 < 1e-12, "{e1:e} {e2:e}");
    }

    #[test]
    fn integrable_orbit_rotates_uniformly() {
        let cfg = OrbitConfig { periods: 1 << 10, ..Default::default() };
        let o = integrate_orbit(0.35, 0.0, 0.0, &cfg).unwrap();
        assert_eq!(o.theta.len(), (1 << 10) + 1);
        assert!(o.psi.iter().all(|&p| p == 0.35));
        let per = (o.theta[1 << 10] - o.theta[0]) / (TAU * (1 << 10) as f64);
        assert!((per - 0.58678125).abs() < 1e-12, "{per}");
        let f = naff_frequency(&signal(&o, Observable::Phase)).unwrap();
        assert!((f.omega - 0.58678125).abs() < 1e-8);
        assert_eq!(integrable_frequency(0.35), 0.58678125);
    }

    #[test]
    fn kick_matches_direct_derivative() {
        let m = FieldModel::new(0.004, true, 0.35).unwrap();
        assert!(m.harmonics.len() > 2);
        let integ = Integrator::new(&m, 8, 0.0);
        for &(t, k) in &[(0.3, 0usize), (2.0, 3), (5.5, 7)] {
            let phi = TAU * k as f64 / 8.0;
            assert!((integ.force(t, k) - m.dtheta(t, phi)).abs() < 1e-14);
        }
        let h = 1e-6;
        let fd = (m.potential(1.0 + h, 0.2) - m.potential(1.0 - h, 0.2)) / (2.0 * h);
        assert!((fd - m.dtheta(1.0, 0.2)).abs() < 1e-9);
    }

    #[test]
    fn step_is_area_preserving() {
        let m = FieldModel::new(0.004, true, 0.35).unwrap();
        let integ = Integrator::new(&m, 16, 0.0);
        let h = 1e-6;
        for &(t, p, k) in &[(0.1, 0.35, 0usize), (4.0, 0.33, 5), (2.2, 0.37, 11)] {
            let (a1, b1) = integ.step(t + h, p, k);
            let (a0, b0) = integ.step(t - h, p, k);
            let (c1, d1) = integ.step(t, p + h, k);
            let (c0, d0) = integ.step(t, p - h, k);
            let det = ((a1 - a0) * (d1 - d0) - (c1 - c0) * (b1 - b0)) / (4.0 * h * h);
            assert!((det - 1.0).abs() < 1e-6, "{det}");
        }
    }

    #[test]
    fn splitting_error_is_second_order() {
        let at = |sub: usize| {
            let cfg = OrbitConfig { eps: 0.004, with_control: true, periods: 20, substeps: sub, ..Default::default() };
            let o = integrate_orbit(0.355, 0.0, 0.0, &cfg).unwrap();
            (o.theta[20], o.psi[20])
        };
        let (a, b, c) = (at(16), at(32), at(64));
        let ratio = (a.0 - b.0).abs() / (b.0 - c.0).abs();
        assert!((ratio - 4.0).abs() < 0.5, "{ratio}");
        let ratio = (a.1 - b.1).abs() / (b.1 - c.1).abs();
        assert!((ratio - 4.0).abs() < 0.5, "{ratio}");
    }

    fn synthetic(omegas: &[f64]) -> Vec<OrbitSample> {
        omegas
            .iter()
            .enumerate()
            .map(|(i, &w)| OrbitSample { psi0: i as f64, omega: w, amplitude: 1.0, drift: 0.0, flag: Flag::Regular })
            .collect()
    }

    #[test]
    fn constant_map_is_one_plateau() {
        let s = synthetic(&[0.5; 10]);
        let p = detect_plateaus(&s, 1e-6);
        assert_eq!(p.len(), 1);
        assert_eq!((p[0].first, p[0].last), (0, 9));
        assert_eq!(p[0].ratio, Rational::new(1, 2).unwrap());
        assert!(regular_branch(&s, &p, 3).is_none());
    }

    #[test]
    fn monotone_map_has_no_plateau() {
        let w: Vec<f64> = (0..30).map(|i| 0.6 - 1e-4 * i as f64).collect();
        let s = synthetic(&w);
        let p = detect_plateaus(&s, 1e-6);
        assert!(p.is_empty());
        assert_eq!(regular_branch(&s, &p, 20), Some((0, 29)));
    }

    #[test]
    fn plateau_splits_branch() {
        let mut w: Vec<f64> = (0..25).map(|i| 0.59 - 1e-4 * i as f64).collect();
        w.extend([18.0 / 31.0; 4]);
        w.extend((0..10).map(|i| 0.58 - 1e-4 * i as f64));
        let mut s = synthetic(&w);
        let p = detect_plateaus(&s, 1e-6);
        assert_eq!(p.len(), 1);
        assert_eq!(p[0].ratio, Rational::new(18, 31).unwrap());
        mark_plateaus(&mut s, &p);
        assert_eq!(s[26].flag, Flag::Plateau);
        assert_eq!(regular_branch(&s, &p, 20), Some((0, 24)));
        assert!(to_csv(&s).lines().nth(27).unwrap().ends_with(",plateau"));
    }

    #[test]
    fn fam_is_deterministic_and_ordered() {
        let cfg = FamConfig {
            orbit: OrbitConfig { eps: 0.001, with_control: true, periods: 600, ..Default::default() },
            from: 0.34,
            to: 0.36,
            count: 5,
            drift_tol: 1e-4,
        };
        let a = build_fam(&cfg).unwrap();
        let b = build_fam(&cfg).unwrap();
        assert_eq!(a.len(), 5);
        assert_eq!(to_csv(&a), to_csv(&b));
        assert!(a.windows(2).all(|w| w[0].psi0 < w[1].psi0));
    }

    #[test]
    fn gnuplot_mentions_files() {
        let g = gnuplot_script("fam.csv", "fam.png", "scan");
        assert!(g.contains("'fam.csv'") && g.contains("'fam.png'"));
    }

    #[test]
    fn nyquist_tone() {
        let f = naff_frequency(&tone(0.5, 512)).unwrap();
        assert!((f.omega - 0.5).abs() < 1e-9);
    }
}
