//! Algebraic identities of the Taylor–Fourier algebra on random small series.

use kamcap::{Coef, Generator, HamiltonianState, Interval, TFSeries, TailNorms, Var};
use proptest::prelude::*;

fn coef() -> impl Strategy<Value = Coef> {
    (-1.0f64..1.0, -1.0f64..1.0).prop_map(|(c, s)| Coef { cos: Interval::point(c), sin: Interval::point(s) })
}

fn series(lmax: u32, deg: i32, n: usize) -> impl Strategy<Value = TFSeries> {
    prop::collection::vec((0..=lmax, 0..=deg, -deg..=deg, coef()), 0..n)
        .prop_map(|v| TFSeries::from_terms(v))
}

fn angles(deg: i32, n: usize) -> impl Strategy<Value = TFSeries> {
    series(0, deg, n).prop_map(|s| s.without_averages())
}

fn close(a: &TFSeries, b: &TFSeries, tol: f64) -> bool {
    let d = a.sub(b);
    d.terms().iter().all(|(_, c)| c.cos.mag() <= tol && c.sin.mag() <= tol)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn bracket_is_antisymmetric(f in series(2, 3, 6), g in series(2, 3, 6)) {
        let a = f.poisson(&g);
        let b = g.poisson(&f).neg();
        prop_assert!(a.sub(&b).encloses_zero());
    }

    #[test]
    fn jacobi_identity(f in series(1, 2, 4), g in series(1, 2, 4), h in series(1, 2, 4)) {
        let t1 = f.poisson(&g.poisson(&h));
        let t2 = g.poisson(&h.poisson(&f));
        let t3 = h.poisson(&f.poisson(&g));
        prop_assert!(t1.add(&t2).add(&t3).encloses_zero());
    }

    #[test]
    fn homological_residual_encloses_zero(g in series(3, 4, 8), w in 0.55f64..0.6) {
        let omega = Interval::hull(w, w + 1e-12);
        let g = g.without_averages();
        let sol = g.gamma(omega, 1e-9).unwrap();
        // (ω∂θ + ∂φ)(-Γg) + g ∋ 0
        prop_assert!(sol.neg().lie_derivative_linear(omega).add(&g).encloses_zero());
    }

    #[test]
    fn lie_transform_degree_bound(h in series(4, 3, 6), x in angles(2, 4)) {
        // R_h = 1, R_g = 1 in units of K = 3.
        let mut tail = TailNorms::default();
        let t = x.lie_series(&h, 10, u32::MAX, &mut tail);
        prop_assert!(t.max_degree() <= (1 + 4) * 3);
    }

    #[test]
    fn product_commutes(a in series(2, 3, 6), b in series(2, 3, 6)) {
        prop_assert!(a.mul(&b).sub(&b.mul(&a)).encloses_zero());
    }

    #[test]
    fn leibniz_rule(a in series(2, 3, 5), b in series(2, 3, 5)) {
        let lhs = a.mul(&b).derivative(Var::Theta);
        let rhs = a.derivative(Var::Theta).mul(&b).add(&a.mul(&b.derivative(Var::Theta)));
        prop_assert!(close(&lhs, &rhs, 1e-12));
    }

    #[test]
    fn bracket_norm_bound_for_angle_generator(g in series(3, 3, 6), x in angles(2, 4)) {
        // ‖L_X g‖ ≤ l ‖∂θX‖ ‖g‖ for g of degree l in ψ.
        let lx = x.poisson(&g);
        let dx = x.derivative(Var::Theta).norm();
        let bound = (dx * g.norm()).scale_int(3);
        prop_assert!(lx.norm().lo() <= bound.hi());
    }

    #[test]
    fn forward_then_backward_transform_encloses_original(
        b0 in series(4, 0, 3), b1 in series(4, 3, 6), x in angles(3, 3), xi in -0.05f64..0.05,
    ) {
        let mut h = HamiltonianState::new(Interval::point(0.58), 4, 3, 4);
        h.blocks[0] = b0.filter(|k| k.l >= 2);
        h.blocks[1] = b1.without_constant();
        let x = x.scale(Interval::point(0.1));
        let f = h.lie_transform(&Generator::Angles(x.clone()), 1, 24);
        let back = f.lie_transform(&Generator::Angles(x.neg()), 1, 24);
        for s in 0..=h.r_i {
            prop_assert!(back.blocks[s].encloses(&h.blocks[s]));
        }
        let xi = Interval::point(xi);
        let f = h.lie_transform(&Generator::Translation(xi), 1, 24);
        let back = f.lie_transform(&Generator::Translation(-xi), 1, 24);
        for s in 0..=h.r_i {
            prop_assert!(back.blocks[s].encloses(&h.blocks[s]));
        }
    }
}
