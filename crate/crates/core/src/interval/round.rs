//! Directed rounding of single operations via error-free transformations.

// Below this magnitude the fma residual of a product may itself underflow.
const TINY: f64 = 2.004168360008973e-292; // 2^-969

#[inline]
fn two_sum_err(a: f64, b: f64, s: f64) -> f64 {
    let bb = s - a;
    (a - (s - bb)) + (b - bb)
}

#[inline]
pub fn add_down(a: f64, b: f64) -> f64 {
    let s = a + b;
    if !s.is_finite() {
        return s.next_down();
    }
    if two_sum_err(a, b, s) < 0.0 {
        s.next_down()
    } else {
        s
    }
}

#[inline]
pub fn add_up(a: f64, b: f64) -> f64 {
    let s = a + b;
    if !s.is_finite() {
        return s.next_up();
    }
    if two_sum_err(a, b, s) > 0.0 {
        s.next_up()
    } else {
        s
    }
}

/// Sign of `exact(a*b) - fl(a*b)`, or `None` when the residual is unreliable.
#[inline]
fn mul_residual(a: f64, b: f64, p: f64) -> Option<f64> {
    if a == 0.0 || b == 0.0 {
        return Some(0.0);
    }
    if !p.is_finite() || p.abs() < TINY {
        return None;
    }
    Some(a.mul_add(b, -p))
}

#[inline]
pub fn mul_down(a: f64, b: f64) -> f64 {
    let p = a * b;
    match mul_residual(a, b, p) {
        Some(r) if r >= 0.0 => p,
        _ => p.next_down(),
    }
}

#[inline]
pub fn mul_up(a: f64, b: f64) -> f64 {
    let p = a * b;
    match mul_residual(a, b, p) {
        Some(r) if r <= 0.0 => p,
        _ => p.next_up(),
    }
}

/// Sign of `exact(a/b) - fl(a/b)`, or `None` when it cannot be decided cheaply.
#[inline]
fn div_residual(a: f64, b: f64, q: f64) -> Option<f64> {
    if a == 0.0 {
        return Some(0.0);
    }
    if !q.is_finite() || q.abs() < TINY || a.abs() < TINY || b.abs() < TINY || b.is_infinite() {
        return None;
    }
    // a - q*b is exact; the quotient error has the sign of r/b.
    let r = (-q).mul_add(b, a);
    Some(if b > 0.0 { r } else { -r })
}

#[inline]
pub fn div_down(a: f64, b: f64) -> f64 {
    let q = a / b;
    match div_residual(a, b, q) {
        Some(r) if r >= 0.0 => q,
        _ => q.next_down(),
    }
}

#[inline]
pub fn div_up(a: f64, b: f64) -> f64 {
    let q = a / b;
    match div_residual(a, b, q) {
        Some(r) if r <= 0.0 => q,
        _ => q.next_up(),
    }
}

#[inline]
pub fn sqrt_down(x: f64) -> f64 {
    let s = x.sqrt();
    if s == 0.0 || !s.is_finite() || x < TINY {
        return s.next_down().max(0.0);
    }
    if (-s).mul_add(s, x) >= 0.0 {
        s
    } else {
        s.next_down()
    }
}

#[inline]
pub fn sqrt_up(x: f64) -> f64 {
    let s = x.sqrt();
    if x == 0.0 {
        return 0.0;
    }
    if !s.is_finite() || x < TINY {
        return s.next_up();
    }
    if (-s).mul_add(s, x) <= 0.0 {
        s
    } else {
        s.next_up()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exact_sum_is_not_widened() {
        assert_eq!(add_down(0.5, 0.25), 0.75);
        assert_eq!(add_up(0.5, 0.25), 0.75);
    }

    #[test]
    fn inexact_sum_brackets() {
        let (lo, hi) = (add_down(1.0, 1e-30), add_up(1.0, 1e-30));
        assert_eq!(lo, 1.0);
        assert_eq!(hi, 1.0f64.next_up());
        let (lo, hi) = (add_down(1.0, -1e-30), add_up(1.0, -1e-30));
        assert_eq!(lo, 1.0f64.next_down());
        assert_eq!(hi, 1.0);
    }

    #[test]
    fn product_and_quotient_bracket() {
        assert!(mul_down(0.1, 0.1) < mul_up(0.1, 0.1));
        assert_eq!(mul_down(3.0, 0.5), 1.5);
        assert!(div_down(1.0, 3.0) < div_up(1.0, 3.0));
        assert!(div_down(-1.0, 3.0) < div_up(-1.0, 3.0));
        assert_eq!(div_up(1.0, -4.0), -0.25);
    }

    #[test]
    fn sqrt_bracket() {
        assert_eq!(sqrt_down(4.0), 2.0);
        assert_eq!(sqrt_up(4.0), 2.0);
        assert!(sqrt_down(2.0) < sqrt_up(2.0));
        assert_eq!(sqrt_up(0.0), 0.0);
    }

    #[test]
    fn overflow_goes_outward() {
        assert_eq!(add_down(f64::MAX, f64::MAX), f64::MAX);
        assert_eq!(add_up(f64::MAX, f64::MAX), f64::INFINITY);
        assert_eq!(mul_up(f64::MAX, 2.0), f64::INFINITY);
    }

    #[test]
    fn underflow_goes_outward() {
        let t = 1e-200;
        assert!(mul_down(t, t) < 0.0 || mul_down(t, t) == 0.0);
        assert!(mul_up(t, t) > 0.0);
    }
}
