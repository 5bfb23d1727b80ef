//! Taylor–Fourier polynomials `Σ ψ^l [c cos(k1θ+k2φ) + s sin(k1θ+k2φ)]`
//! with interval coefficients.
//!
//! Harmonics are stored on the half lattice `k1 > 0` or `k1 = 0, k2 ≥ 0`;
//! the mirror harmonic is folded in with `sin(-x) = -sin(x)`.

mod product;
mod state;

use std::fmt;

use crate::error::{Error, Result};
use crate::interval::Interval;

pub use state::{Generator, HamiltonianState};

/// Wavenumber pair of `k1θ + k2φ`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Harmonic {
    pub k1: i32,
    pub k2: i32,
}

impl Harmonic {
    pub const ZERO: Harmonic = Harmonic { k1: 0, k2: 0 };

    /// Canonical representative and whether the sign of the angle was flipped.
    #[inline]
    pub fn canonical(k1: i32, k2: i32) -> (Harmonic, bool) {
        if k1 < 0 || (k1 == 0 && k2 < 0) {
            (Harmonic { k1: -k1, k2: -k2 }, true)
        } else {
            (Harmonic { k1, k2 }, false)
        }
    }

    #[inline]
    pub fn degree(self) -> u32 {
        self.k1.unsigned_abs().max(self.k2.unsigned_abs())
    }

    #[inline]
    pub fn is_zero(self) -> bool {
        self.k1 == 0 && self.k2 == 0
    }

    /// Enclosure of `k1·ω + k2`.
    pub fn divisor(self, omega: Interval) -> Interval {
        omega * Interval::from(self.k1) + Interval::from(self.k2)
    }
}

/// Storage key: power of `ψ` and canonical harmonic.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Key {
    pub l: u32,
    pub h: Harmonic,
}

impl Key {
    pub fn new(l: u32, k1: i32, k2: i32) -> Key {
        let (h, flipped) = Harmonic::canonical(k1, k2);
        assert!(!flipped, "non-canonical harmonic ({k1}, {k2})");
        Key { l, h }
    }
}

/// Coefficients of `cos` and `sin` for one harmonic.
#[derive(Clone, Copy, Debug, PartialEq, Default)]
pub struct Coef {
    pub cos: Interval,
    pub sin: Interval,
}

impl Coef {
    pub const ZERO: Coef = Coef { cos: Interval::ZERO, sin: Interval::ZERO };

    pub fn cos(c: Interval) -> Coef {
        Coef { cos: c, sin: Interval::ZERO }
    }

    pub fn sin(s: Interval) -> Coef {
        Coef { cos: Interval::ZERO, sin: s }
    }

    /// Modulus `√(c² + s²)`, the contribution of the pair to the exponential-basis ℓ¹ norm.
    pub fn modulus(self) -> Interval {
        if self.sin == Interval::ZERO {
            return self.cos.abs();
        }
        if self.cos == Interval::ZERO {
            return self.sin.abs();
        }
        (self.cos.sqr() + self.sin.sqr())
            .sqrt()
            .expect("sum of squares is nonnegative")
    }

    fn scaled(self, c: Interval) -> Coef {
        Coef { cos: self.cos * c, sin: self.sin * c }
    }

    fn is_exact_zero(self) -> bool {
        self.cos == Interval::ZERO && self.sin == Interval::ZERO
    }
}

impl std::ops::Add for Coef {
    type Output = Coef;
    fn add(self, o: Coef) -> Coef {
        Coef { cos: self.cos + o.cos, sin: self.sin + o.sin }
    }
}

/// Differentiation variable.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Var {
    Theta,
    Phi,
    Psi,
}

/// Per-`l` accumulators for the norms of discarded terms.
#[derive(Clone, Debug, PartialEq, Default)]
pub struct TailNorms(pub Vec<Interval>);

impl TailNorms {
    pub fn new(lmax: u32) -> Self {
        TailNorms(vec![Interval::ZERO; lmax as usize + 1])
    }

    pub fn add(&mut self, l: u32, x: Interval) {
        let l = l as usize;
        if self.0.len() <= l {
            self.0.resize(l + 1, Interval::ZERO);
        }
        self.0[l] += x.upper();
    }

    pub fn merge(&mut self, other: &TailNorms) {
        for (l, x) in other.0.iter().enumerate() {
            self.add(l as u32, *x);
        }
    }

    pub fn total(&self) -> Interval {
        self.0.iter().copied().sum()
    }
}

/// Sparse Taylor–Fourier polynomial sorted by `(l, k1, k2)`.
#[derive(Clone, Default, PartialEq)]
pub struct TFSeries {
    terms: Vec<(Key, Coef)>,
}

impl fmt::Debug for TFSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_map().entries(self.terms.iter().map(|(k, c)| ((k.l, k.h.k1, k.h.k2), c))).finish()
    }
}

impl TFSeries {
    pub fn zero() -> Self {
        TFSeries { terms: Vec::new() }
    }

    /// Builds a series from arbitrary `(l, k1, k2, coef)` entries; duplicates are summed.
    pub fn from_terms<I: IntoIterator<Item = (u32, i32, i32, Coef)>>(it: I) -> Self {
        let mut v: Vec<(Key, Coef)> = it
            .into_iter()
            .map(|(l, k1, k2, c)| {
                let (h, flipped) = Harmonic::canonical(k1, k2);
                let mut c = c;
                if flipped {
                    c.sin = -c.sin;
                }
                if h.is_zero() {
                    c.sin = Interval::ZERO;
                }
                (Key { l, h }, c)
            })
            .collect();
        v.sort_by_key(|(k, _)| *k);
        let mut terms: Vec<(Key, Coef)> = Vec::with_capacity(v.len());
        for (k, c) in v {
            match terms.last_mut() {
                Some((lk, lc)) if *lk == k => *lc = *lc + c,
                _ => terms.push((k, c)),
            }
        }
        TFSeries { terms }
    }

    /// Trusted constructor from sorted canonical entries.
    pub(crate) fn from_sorted(terms: Vec<(Key, Coef)>) -> Self {
        debug_assert!(terms.windows(2).all(|w| w[0].0 < w[1].0));
        TFSeries { terms }
    }

    pub fn cos_term(l: u32, k1: i32, k2: i32, c: Interval) -> Self {
        Self::from_terms([(l, k1, k2, Coef::cos(c))])
    }

    pub fn sin_term(l: u32, k1: i32, k2: i32, s: Interval) -> Self {
        Self::from_terms([(l, k1, k2, Coef::sin(s))])
    }

    pub fn terms(&self) -> &[(Key, Coef)] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn get(&self, l: u32, k1: i32, k2: i32) -> Coef {
        let (h, flipped) = Harmonic::canonical(k1, k2);
        match self.terms.binary_search_by_key(&Key { l, h }, |(k, _)| *k) {
            Ok(i) => {
                let mut c = self.terms[i].1;
                if flipped {
                    c.sin = -c.sin;
                }
                c
            }
            Err(_) => Coef::ZERO,
        }
    }

    /// The average `⟨g⟩` of the `ψ^l` part, i.e. the `(0,0)` cosine coefficient.
    pub fn average(&self, l: u32) -> Interval {
        self.get(l, 0, 0).cos
    }

    pub fn max_l(&self) -> Option<u32> {
        self.terms.iter().map(|(k, _)| k.l).max()
    }

    pub fn max_degree(&self) -> u32 {
        self.terms.iter().map(|(k, _)| k.h.degree()).max().unwrap_or(0)
    }

    /// Terms whose key satisfies `pred`.
    pub fn filter<F: Fn(Key) -> bool>(&self, pred: F) -> Self {
        TFSeries::from_sorted(self.terms.iter().filter(|(k, _)| pred(*k)).copied().collect())
    }

    /// Part of degree `l` in `ψ`.
    pub fn part_l(&self, l: u32) -> Self {
        self.filter(|k| k.l == l)
    }

    pub fn without_averages(&self) -> Self {
        self.filter(|k| !k.h.is_zero())
    }

    /// Terms with `l ≥ 1` plus the nonconstant `l = 0` terms.
    pub fn without_constant(&self) -> Self {
        self.filter(|k| k.l > 0 || !k.h.is_zero())
    }

    /// Drops harmonics of degree above `d`; their norms go to `tail`.
    pub fn truncate(&self, d: u32, tail: &mut TailNorms) -> Self {
        let mut kept = Vec::with_capacity(self.terms.len());
        for &(k, c) in &self.terms {
            if k.h.degree() <= d {
                kept.push((k, c));
            } else {
                tail.add(k.l, c.modulus());
            }
        }
        TFSeries::from_sorted(kept)
    }

    pub fn scale(&self, c: Interval) -> Self {
        TFSeries::from_sorted(self.terms.iter().map(|&(k, v)| (k, v.scaled(c))).collect())
    }

    pub fn neg(&self) -> Self {
        TFSeries::from_sorted(
            self.terms
                .iter()
                .map(|&(k, v)| (k, Coef { cos: -v.cos, sin: -v.sin }))
                .collect(),
        )
    }

    /// `a + c·b`, merged in key order.
    pub fn add_scaled(&self, b: &TFSeries, c: Interval) -> Self {
        let mut out = Vec::with_capacity(self.terms.len() + b.terms.len());
        let (mut i, mut j) = (0, 0);
        while i < self.terms.len() || j < b.terms.len() {
            let take_a = j == b.terms.len() || (i < self.terms.len() && self.terms[i].0 <= b.terms[j].0);
            let take_b = i == self.terms.len() || (j < b.terms.len() && b.terms[j].0 <= self.terms[i].0);
            if take_a && take_b {
                out.push((self.terms[i].0, self.terms[i].1 + b.terms[j].1.scaled(c)));
                i += 1;
                j += 1;
            } else if take_a {
                out.push(self.terms[i]);
                i += 1;
            } else {
                out.push((b.terms[j].0, b.terms[j].1.scaled(c)));
                j += 1;
            }
        }
        TFSeries::from_sorted(out)
    }

    pub fn add(&self, b: &TFSeries) -> Self {
        self.add_scaled(b, Interval::ONE)
    }

    pub fn sub(&self, b: &TFSeries) -> Self {
        self.add_scaled(b, -Interval::ONE)
    }

    /// Term-wise derivative.
    pub fn derivative(&self, var: Var) -> Self {
        let terms = self
            .terms
            .iter()
            .filter_map(|&(k, c)| {
                let factor = match var {
                    Var::Theta => k.h.k1,
                    Var::Phi => k.h.k2,
                    Var::Psi => {
                        if k.l == 0 {
                            return None;
                        }
                        let f = Interval::from(k.l as i32);
                        return Some((Key { l: k.l - 1, h: k.h }, c.scaled(f)));
                    }
                };
                if factor == 0 {
                    return None;
                }
                let f = Interval::from(factor);
                // d/dx [c cos + s sin] = k (s cos - c sin)
                Some((k, Coef { cos: c.sin * f, sin: -(c.cos * f) }))
            })
            .collect();
        TFSeries::from_sorted(terms)
    }

    /// `ω ∂θ g + ∂φ g`.
    pub fn lie_derivative_linear(&self, omega: Interval) -> Self {
        let terms = self
            .terms
            .iter()
            .filter(|(k, _)| !k.h.is_zero())
            .map(|&(k, c)| {
                let d = k.h.divisor(omega);
                (k, Coef { cos: c.sin * d, sin: -(c.cos * d) })
            })
            .collect();
        TFSeries::from_sorted(terms)
    }

    /// Solution of the homological equation: `Γ g` with `(ω∂θ + ∂φ) Γ g = g - ⟨g⟩`.
    ///
    /// Averages are ignored. Every divisor must stay at least `min_divisor` away from zero.
    pub fn gamma(&self, omega: Interval, min_divisor: f64) -> Result<Self> {
        let mut terms = Vec::with_capacity(self.terms.len());
        for &(k, c) in &self.terms {
            if k.h.is_zero() {
                continue;
            }
            let d = k.h.divisor(omega);
            if d.contains_zero() || d.mig() < min_divisor {
                return Err(Error::Resonance { k1: k.h.k1, k2: k.h.k2 });
            }
            // D[A cos + B sin] = d (B cos - A sin) = c cos + s sin  =>  A = -s/d, B = c/d
            let a = (-c.sin).checked_div(d)?;
            let b = c.cos.checked_div(d)?;
            terms.push((k, Coef { cos: a, sin: b }));
        }
        Ok(TFSeries::from_sorted(terms))
    }

    /// Norm `Σ |c_{l,0,0}| + Σ_{k≠0} √(c² + s²)` as an enclosure.
    pub fn norm(&self) -> Interval {
        self.terms
            .iter()
            .map(|&(k, c)| if k.h.is_zero() { c.cos.abs() } else { c.modulus() })
            .sum()
    }

    /// Norm of the `ψ^l` part.
    pub fn norm_l(&self, l: u32) -> Interval {
        self.terms
            .iter()
            .filter(|(k, _)| k.l == l)
            .map(|&(k, c)| if k.h.is_zero() { c.cos.abs() } else { c.modulus() })
            .sum()
    }

    /// Drops entries whose coefficients are exactly zero.
    pub fn prune(&self) -> Self {
        self.filter_coef(|c| !c.is_exact_zero())
    }

    fn filter_coef<F: Fn(Coef) -> bool>(&self, pred: F) -> Self {
        TFSeries::from_sorted(self.terms.iter().filter(|(_, c)| pred(*c)).copied().collect())
    }

    /// Translation `ψ → ψ + ξ`: `ψ^l ↦ Σ_j C(l,j) ξ^j ψ^(l-j)`.
    pub fn translate_psi(&self, xi: Interval) -> Self {
        let mut entries = Vec::new();
        for &(k, c) in &self.terms {
            let mut binom: u64 = 1;
            for j in 0..=k.l {
                let f = xi.powi(j).scale_int(binom);
                entries.push((k.l - j, k.h.k1, k.h.k2, c.scaled(f)));
                binom = binom * (k.l - j) as u64 / (j + 1) as u64;
            }
        }
        TFSeries::from_terms(entries)
    }

    /// Point evaluation at the coefficient midpoints.
    pub fn eval(&self, psi: f64, theta: f64, phi: f64) -> f64 {
        self.terms
            .iter()
            .map(|&(k, c)| {
                let a = k.h.k1 as f64 * theta + k.h.k2 as f64 * phi;
                psi.powi(k.l as i32) * (c.cos.mid() * a.cos() + c.sin.mid() * a.sin())
            })
            .sum()
    }

    /// True when every coefficient interval contains zero.
    pub fn encloses_zero(&self) -> bool {
        self.terms.iter().all(|(_, c)| c.cos.contains_zero() && c.sin.contains_zero())
    }

    /// True when each coefficient of `self` encloses the matching coefficient of `other`.
    pub fn encloses(&self, other: &TFSeries) -> bool {
        let keys: Vec<Key> = self.terms.iter().chain(other.terms.iter()).map(|(k, _)| *k).collect();
        keys.into_iter().all(|k| {
            let a = self.get(k.l, k.h.k1, k.h.k2);
            let b = other.get(k.l, k.h.k1, k.h.k2);
            a.cos.encloses(b.cos) && a.sin.encloses(b.sin)
        })
    }

    /// Largest coefficient width, a measure of accumulated rounding.
    pub fn max_width(&self) -> f64 {
        self.terms
            .iter()
            .map(|(_, c)| c.cos.width().max(c.sin.width()))
            .fold(0.0, f64::max)
    }
}
