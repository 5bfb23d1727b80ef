//! Products, Poisson brackets and Lie series.

use super::{Coef, Harmonic, Key, TFSeries, TailNorms, Var};
use crate::interval::Interval;

/// Dense accumulator over `(l, k1 ∈ [0, n1], k2 ∈ [-n2, n2])`.
struct Accumulator {
    n1: i32,
    n2: i32,
    cells: Vec<Coef>,
    touched: Vec<bool>,
}

impl Accumulator {
    fn new(lmax: u32, n1: i32, n2: i32) -> Self {
        let size = (lmax as usize + 1) * (n1 as usize + 1) * (2 * n2 as usize + 1);
        Accumulator { n1, n2, cells: vec![Coef::ZERO; size], touched: vec![false; size] }
    }

    #[inline]
    fn index(&self, l: u32, h: Harmonic) -> usize {
        let w2 = 2 * self.n2 as usize + 1;
        ((l as usize * (self.n1 as usize + 1)) + h.k1 as usize) * w2 + (h.k2 + self.n2) as usize
    }

    #[inline]
    fn add(&mut self, l: u32, k1: i32, k2: i32, cos: Interval, sin: Interval) {
        let (h, flipped) = Harmonic::canonical(k1, k2);
        let i = self.index(l, h);
        let cell = &mut self.cells[i];
        cell.cos += cos;
        if !h.is_zero() {
            cell.sin += if flipped { -sin } else { sin };
        }
        self.touched[i] = true;
    }

    fn finish(self, lmax: u32, max_degree: u32, tail: &mut TailNorms) -> TFSeries {
        let w2 = 2 * self.n2 + 1;
        let mut out = Vec::new();
        for l in 0..=lmax {
            for k1 in 0..=self.n1 {
                for k2 in -self.n2..=self.n2 {
                    if k1 == 0 && k2 < 0 {
                        continue;
                    }
                    let h = Harmonic { k1, k2 };
                    let i = ((l as usize * (self.n1 as usize + 1)) + k1 as usize) * w2 as usize
                        + (k2 + self.n2) as usize;
                    if !self.touched[i] {
                        continue;
                    }
                    let c = self.cells[i];
                    if h.degree() > max_degree {
                        tail.add(l, c.modulus());
                    } else {
                        out.push((Key { l, h }, c));
                    }
                }
            }
        }
        TFSeries::from_sorted(out)
    }
}

fn extents(s: &TFSeries) -> (u32, i32, i32) {
    let mut l = 0;
    let mut n1 = 0;
    let mut n2 = 0;
    for (k, _) in s.terms() {
        l = l.max(k.l);
        n1 = n1.max(k.h.k1);
        n2 = n2.max(k.h.k2.abs());
    }
    (l, n1, n2)
}

impl TFSeries {
    /// Product of two series; harmonics above `max_degree` are dropped into `tail`.
    pub fn mul_truncated(&self, other: &TFSeries, max_degree: u32, tail: &mut TailNorms) -> TFSeries {
        if self.is_empty() || other.is_empty() {
            return TFSeries::zero();
        }
        let (la, a1, a2) = extents(self);
        let (lb, b1, b2) = extents(other);
        let lmax = la + lb;
        let mut acc = Accumulator::new(lmax, a1 + b1, a2 + b2);
        let half = Interval::point(0.5);
        for &(ka, ca) in self.terms() {
            for &(kb, cb) in other.terms() {
                let l = ka.l + kb.l;
                let (p1, p2) = (ka.h.k1, ka.h.k2);
                let (q1, q2) = (kb.h.k1, kb.h.k2);
                let cc = ca.cos * cb.cos;
                let ss = ca.sin * cb.sin;
                let cs = ca.cos * cb.sin;
                let sc = ca.sin * cb.cos;
                // cos A cos B = ½[cos(A+B) + cos(A-B)], sin A sin B = ½[cos(A-B) - cos(A+B)],
                // cos A sin B = ½[sin(A+B) - sin(A-B)], sin A cos B = ½[sin(A+B) + sin(A-B)].
                acc.add(l, p1 + q1, p2 + q2, (cc - ss) * half, (cs + sc) * half);
                acc.add(l, p1 - q1, p2 - q2, (cc + ss) * half, (sc - cs) * half);
            }
        }
        acc.finish(lmax, max_degree, tail)
    }

    pub fn mul(&self, other: &TFSeries) -> TFSeries {
        self.mul_truncated(other, u32::MAX, &mut TailNorms::default())
    }

    /// Poisson bracket `L_F G = ∂θF ∂ψG - ∂θG ∂ψF` for series independent of `P`.
    pub fn poisson_truncated(&self, g: &TFSeries, max_degree: u32, tail: &mut TailNorms) -> TFSeries {
        let a = self.derivative(Var::Theta).mul_truncated(&g.derivative(Var::Psi), max_degree, tail);
        let b = g.derivative(Var::Theta).mul_truncated(&self.derivative(Var::Psi), max_degree, tail);
        a.sub(&b)
    }

    pub fn poisson(&self, g: &TFSeries) -> TFSeries {
        self.poisson_truncated(g, u32::MAX, &mut TailNorms::default())
    }

    /// `L_F(ωψ + P) = ω∂θF + ∂φF`.
    pub fn poisson_linear(&self, omega: Interval) -> TFSeries {
        self.lie_derivative_linear(omega)
    }

    /// The terms `g, L g, L²g/2!, …, L^(n-1) g/(n-1)!` of `exp(L_gen) g`, stopping early once a term vanishes.
    pub fn lie_series_terms(&self, g: &TFSeries, n: usize, max_degree: u32, tail: &mut TailNorms) -> Vec<TFSeries> {
        let mut out = Vec::with_capacity(n);
        if n == 0 {
            return out;
        }
        out.push(g.clone());
        for j in 1..n {
            let prev = out.last().expect("nonempty");
            let next = self.poisson_truncated(prev, max_degree, tail).div_int(j as u64);
            if next.is_empty() {
                break;
            }
            out.push(next);
        }
        out
    }

    /// Full sum `exp(L_gen) g` truncated to `n` terms.
    pub fn lie_series(&self, g: &TFSeries, n: usize, max_degree: u32, tail: &mut TailNorms) -> TFSeries {
        self.lie_series_terms(g, n, max_degree, tail)
            .iter()
            .fold(TFSeries::zero(), |acc, t| acc.add(t))
    }

    pub fn div_int(&self, n: u64) -> TFSeries {
        if n == 1 {
            return self.clone();
        }
        TFSeries::from_sorted(
            self.terms()
                .iter()
                .map(|&(k, c)| (k, Coef { cos: c.cos.div_int(n), sin: c.sin.div_int(n) }))
                .collect(),
        )
    }
}
