//! Hamiltonians `ωψ + P + Σ_s H^(s)` with terms grouped by perturbative order `s`.

use super::{Coef, Key, TFSeries, TailNorms, Var};
use crate::interval::Interval;

/// Generating function of a Lie transform.
#[derive(Clone, Debug)]
pub enum Generator {
    /// A function of the angles only.
    Angles(TFSeries),
    /// `ξ θ`: the exact translation `ψ → ψ + ξ`.
    Translation(Interval),
    /// Any Taylor–Fourier series.
    Series(TFSeries),
}

/// Frequency `ω` kept apart from the order blocks; the coefficient of `P` is 1.
#[derive(Clone, Debug, PartialEq)]
pub struct HamiltonianState {
    pub omega: Interval,
    /// `blocks[s]` holds every term of order `s`, mixed in `l`.
    pub blocks: Vec<TFSeries>,
    pub lmax: u32,
    pub k: u32,
    pub r_i: usize,
    pub tail: TailNorms,
}

impl HamiltonianState {
    pub fn new(omega: Interval, lmax: u32, k: u32, r_i: usize) -> Self {
        HamiltonianState {
            omega,
            blocks: vec![TFSeries::zero(); r_i + 1],
            lmax,
            k,
            r_i,
            tail: TailNorms::new(lmax),
        }
    }

    /// Default degree cap `2K·R_I`.
    pub fn default_trunc(&self) -> u32 {
        2 * self.k * self.r_i as u32
    }

    /// The block `f_l^(s)`.
    pub fn block(&self, l: u32, s: usize) -> TFSeries {
        self.blocks.get(s).map(|b| b.part_l(l)).unwrap_or_default()
    }

    /// Adds `g` to order `s`; beyond `R_I` it only feeds the tail.
    pub fn add_to_order(&mut self, s: usize, g: &TFSeries) {
        if s <= self.r_i {
            self.blocks[s] = self.blocks[s].add(g);
        } else {
            for l in 0..=self.lmax {
                self.tail.add(l, g.norm_l(l));
            }
        }
    }

    /// Every stored term regardless of order.
    pub fn flatten(&self) -> TFSeries {
        self.blocks.iter().fold(TFSeries::zero(), |acc, b| acc.add(b))
    }

    /// `exp(L_gen) H` for a generator of order `gen_order`.
    ///
    /// Contributions of `L^j` acting on order `s` land at order `s + j·gen_order`;
    /// orders beyond `R_I` are not formed. The linear part `ωψ + P` is transformed
    /// literally; constants are dropped.
    pub fn lie_transform(&self, gen: &Generator, gen_order: usize, trunc: u32) -> HamiltonianState {
        let mut out = self.clone();
        out.blocks = vec![TFSeries::zero(); self.r_i + 1];
        let mut tail = self.tail.clone();
        match gen {
            Generator::Translation(xi) => {
                for (s, b) in self.blocks.iter().enumerate() {
                    for &(k, c) in b.terms() {
                        let one = TFSeries::from_sorted(vec![(k, c)]);
                        // ψ^l → Σ_j C(l,j) ξ^j ψ^(l-j), the j-th piece at order s + j·r.
                        let shifted = one.translate_psi(*xi);
                        for j in 0..=k.l {
                            let piece = shifted.part_l(k.l - j);
                            add_or_tail(&mut out.blocks, &mut tail, s + j as usize * gen_order, &piece, self.r_i);
                        }
                    }
                }
            }
            Generator::Angles(x) | Generator::Series(x) => {
                assert!(gen_order > 0 || matches!(gen, Generator::Angles(_)));
                self.transform_blocks(x, gen_order, trunc, &mut out.blocks, &mut tail);
                // exp(L_X)(ωψ + P) - (ωψ + P) = Σ_{m≥0} L^m(DX)/(m+1)!
                let mut term = x.lie_derivative_linear(self.omega);
                let mut m = 0usize;
                while !term.is_empty() && (m + 1) * gen_order <= self.r_i {
                    add_or_tail(&mut out.blocks, &mut tail, (m + 1) * gen_order, &term, self.r_i);
                    m += 1;
                    term = x.poisson_truncated(&term, trunc, &mut tail).div_int(m as u64 + 1);
                }
            }
        }
        for b in out.blocks.iter_mut() {
            *b = b.without_constant();
        }
        out.tail = tail;
        out
    }

    /// `exp(L_χ) H` for `χ` solving `Dχ = -T`, where the target `T` has already been
    /// removed from order `gen_order`.
    ///
    /// The linear part and the target combine into `Σ_{j≥1} j/(j+1)! L^j T`.
    pub fn lie_transform_homological(
        &self,
        chi: &TFSeries,
        target: &TFSeries,
        gen_order: usize,
        trunc: u32,
    ) -> HamiltonianState {
        assert!(gen_order > 0);
        let mut out = self.clone();
        out.blocks = vec![TFSeries::zero(); self.r_i + 1];
        let mut tail = self.tail.clone();
        self.transform_blocks(chi, gen_order, trunc, &mut out.blocks, &mut tail);
        let mut term = target.clone();
        let mut j = 1usize;
        while (j + 1) * gen_order <= self.r_i {
            term = chi.poisson_truncated(&term, trunc, &mut tail).div_int(j as u64);
            if term.is_empty() {
                break;
            }
            let piece = term.scale(Interval::from_int(j as i64)).div_int(j as u64 + 1);
            add_or_tail(&mut out.blocks, &mut tail, (j + 1) * gen_order, &piece, self.r_i);
            j += 1;
        }
        for b in out.blocks.iter_mut() {
            *b = b.without_constant();
        }
        out.tail = tail;
        out
    }

    /// Translation `ψ → ψ + ξ` generated by `ξθ` of order `gen_order`, where `ξ` cancels
    /// the `ψ`-linear average of that order against `Σ_{s ≤ gen_order} ∂²ψψ⟨h₂^(s)⟩`.
    ///
    /// The pieces `2ξ⟨h₂^(s)⟩ψ`, `s ≤ gen_order`, and the cancelled average are removed together.
    pub fn translate_cancelling(&self, xi: Interval, gen_order: usize) -> HamiltonianState {
        let mut out = self.clone();
        out.blocks = vec![TFSeries::zero(); self.r_i + 1];
        let mut tail = self.tail.clone();
        for (s, b) in self.blocks.iter().enumerate() {
            for &(k, c) in b.terms() {
                if s == gen_order && k.l == 1 && k.h.is_zero() {
                    continue;
                }
                let shifted = TFSeries::from_sorted(vec![(k, c)]).translate_psi(xi);
                for j in 0..=k.l {
                    if j == 1 && k.l == 2 && k.h.is_zero() && s <= gen_order {
                        continue;
                    }
                    let piece = shifted.part_l(k.l - j);
                    add_or_tail(&mut out.blocks, &mut tail, s + j as usize * gen_order, &piece, self.r_i);
                }
            }
        }
        for b in out.blocks.iter_mut() {
            *b = b.without_constant();
        }
        out.tail = tail;
        out
    }

    /// Sends `L^j g / j!` for every block `g` of order `s` to order `s + j·gen_order`.
    fn transform_blocks(
        &self,
        x: &TFSeries,
        gen_order: usize,
        trunc: u32,
        blocks: &mut [TFSeries],
        tail: &mut TailNorms,
    ) {
        for (s, b) in self.blocks.iter().enumerate() {
            let mut term = b.clone();
            let mut j = 0usize;
            loop {
                add_or_tail(blocks, tail, s + j * gen_order, &term, self.r_i);
                j += 1;
                if gen_order > 0 && s + j * gen_order > self.r_i {
                    break;
                }
                term = x.poisson_truncated(&term, trunc, tail).div_int(j as u64);
                if term.is_empty() {
                    break;
                }
            }
        }
    }

    /// Sorts a series into orders `s = ⌈deg/K⌉`. Averages with `l ≥ 2` go to order 0,
    /// the `ψ`-linear average to order 1, constants are dropped, and orders above `R_I`
    /// feed the tail.
    pub fn from_series(omega: Interval, lmax: u32, k: u32, r_i: usize, g: &TFSeries) -> Self {
        let mut state = HamiltonianState::new(omega, lmax, k, r_i);
        let mut per_order: Vec<Vec<(Key, Coef)>> = vec![Vec::new(); r_i + 1];
        for &(key, c) in g.terms() {
            let d = key.h.degree();
            let s = if d == 0 {
                match key.l {
                    0 => continue,
                    1 => 1,
                    _ => 0,
                }
            } else {
                d.div_ceil(k) as usize
            };
            if s > r_i {
                state.tail.add(key.l, c.modulus());
                continue;
            }
            per_order[s].push((key, c));
        }
        for (s, v) in per_order.into_iter().enumerate() {
            state.blocks[s] = TFSeries::from_sorted(v);
        }
        state
    }

    /// Largest trigonometric degree over all blocks.
    pub fn max_degree(&self) -> u32 {
        self.blocks.iter().map(|b| b.max_degree()).max().unwrap_or(0)
    }

    /// `∂θ` applied block-wise; convenience for checks.
    pub fn derivative(&self, var: Var) -> Vec<TFSeries> {
        self.blocks.iter().map(|b| b.derivative(var)).collect()
    }
}

fn add_or_tail(blocks: &mut [TFSeries], tail: &mut TailNorms, s: usize, g: &TFSeries, r_i: usize) {
    if s <= r_i {
        blocks[s] = blocks[s].add(g);
    } else {
        for (k, c) in g.terms() {
            let m = if k.h.is_zero() { c.cos.abs() } else { c.modulus() };
            tail.add(k.l, m);
        }
    }
}
