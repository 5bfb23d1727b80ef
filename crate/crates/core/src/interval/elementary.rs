//! Elementary functions with explicit truncation remainders.

use super::round::{mul_down, mul_up, sqrt_down, sqrt_up};
use super::{Interval, IntervalError, Result};

const EXP_TERMS: u32 = 22;
const ATANH_TERMS: u32 = 24;

/// `x^n` for `x ≥ 0`, rounded down (`up = false`) or up.
fn pow_nonneg(x: f64, n: u32, up: bool) -> f64 {
    let mul = if up { mul_up } else { mul_down };
    let mut base = x;
    let mut acc = 1.0;
    let mut k = n;
    while k > 0 {
        if k & 1 == 1 {
            acc = mul(acc, base);
        }
        k >>= 1;
        if k > 0 {
            base = mul(base, base);
        }
    }
    acc
}

/// Enclosure of `exp(t)` for `|t| ≤ 1/2` by its Taylor polynomial plus the Lagrange remainder.
fn exp_small(t: Interval) -> Interval {
    let mut sum = Interval::ONE;
    let mut term = Interval::ONE;
    for k in 1..=EXP_TERMS {
        term = (term * t).div_int(k as u64);
        sum += term;
    }
    // |R| ≤ |t|^(N+1)/(N+1)! · e^|t| ≤ 2|t|^(N+1)/(N+1)!
    let mut rem = Interval::point(2.0);
    let a = Interval::point(t.mag());
    for k in 1..=EXP_TERMS + 1 {
        rem = (rem * a).div_int(k as u64);
    }
    sum + Interval::symmetric(rem.hi())
}

/// Enclosure of `exp(x)` at a single point.
fn exp_point(x: f64) -> Result<Interval> {
    if x == 0.0 {
        return Ok(Interval::ONE);
    }
    if x > 709.0 {
        return Err(IntervalError::Overflow("exp"));
    }
    if x < -745.0 {
        return Ok(Interval::raw(0.0, f64::from_bits(1)));
    }
    let mut m = 0;
    while x.abs() / 2f64.powi(m) > 0.5 {
        m += 1;
    }
    // Division by a power of two is exact for |x| ≥ 1/2.
    let t = Interval::point(x / 2f64.powi(m));
    let mut y = exp_small(t);
    for _ in 0..m {
        y = y.sqr();
    }
    y.checked("exp")
}

/// Enclosure of `atanh(u) = Σ u^(2k+1)/(2k+1)` for `|u| ≤ 0.35`.
fn atanh_small(u: Interval) -> Interval {
    let u2 = u.sqr();
    let mut power = u;
    let mut sum = Interval::ZERO;
    for k in 0..ATANH_TERMS {
        sum += power.div_int(2 * k as u64 + 1);
        power *= u2;
    }
    // Tail ≤ |u|^(2N+1)/((2N+1)(1-u²))
    let a = u.mag();
    let tail = Interval::point(pow_nonneg(a, 2 * ATANH_TERMS + 1, true))
        .div_int(2 * ATANH_TERMS as u64 + 1)
        .checked_div(Interval::ONE - Interval::point(a).sqr())
        .expect("|u| < 1");
    sum + Interval::symmetric(tail.hi())
}

/// `ln 2 = 2 atanh(1/3)`.
pub fn ln2() -> Interval {
    let third = Interval::ONE.div_int(3);
    atanh_small(third).ldexp(1)
}

/// Enclosure of `ln(x)` at a single positive point.
fn ln_point(x: f64) -> Interval {
    if x == 1.0 {
        return Interval::ZERO;
    }
    // x = f·2^e with f in [1/√2, √2).
    let (mut f, mut e) = frexp(x);
    if f < std::f64::consts::FRAC_1_SQRT_2 {
        f *= 2.0;
        e -= 1;
    }
    let fi = Interval::point(f);
    // f - 1 is exact by Sterbenz.
    let u = Interval::point(f - 1.0)
        .checked_div(fi + Interval::ONE)
        .expect("positive denominator");
    let lnf = atanh_small(u).ldexp(1);
    if e == 0 {
        lnf
    } else {
        ln2() * Interval::from_int(e as i64) + lnf
    }
}

/// `x = f·2^e` with `f` in `[1/2, 1)`.
pub(super) fn frexp(x: f64) -> (f64, i32) {
    let bits = x.to_bits();
    let exp_bits = ((bits >> 52) & 0x7ff) as i32;
    if exp_bits == 0 {
        let (f, e) = frexp(x * 2f64.powi(64));
        return (f, e - 64);
    }
    let f = f64::from_bits((bits & !(0x7ffu64 << 52)) | (1022u64 << 52));
    (f, exp_bits - 1022)
}

impl Interval {
    /// `x^n` for a nonnegative integer exponent.
    pub fn powi(self, n: u32) -> Interval {
        if n == 0 {
            return Interval::ONE;
        }
        let (lo, hi) = (self.lo(), self.hi());
        if lo >= 0.0 {
            return Interval::raw(pow_nonneg(lo, n, false), pow_nonneg(hi, n, true));
        }
        if hi <= 0.0 {
            let a = (-self).powi(n);
            return if n % 2 == 0 { a } else { -a };
        }
        if n % 2 == 0 {
            Interval::raw(0.0, pow_nonneg(lo.abs().max(hi), n, true))
        } else {
            Interval::raw(-pow_nonneg(-lo, n, true), pow_nonneg(hi, n, true))
        }
    }

    pub fn sqrt(self) -> Result<Interval> {
        if self.lo() < 0.0 {
            return Err(IntervalError::Domain("sqrt"));
        }
        Ok(Interval::raw(sqrt_down(self.lo()), sqrt_up(self.hi())))
    }

    /// Real `n`-th root of a nonnegative interval.
    pub fn root(self, n: u32) -> Result<Interval> {
        if n == 0 || self.lo() < 0.0 {
            return Err(IntervalError::Domain("root"));
        }
        if n == 1 {
            return Ok(self);
        }
        let lo = if self.lo() == 0.0 {
            0.0
        } else {
            let mut y = self.lo().powf(1.0 / n as f64);
            while pow_nonneg(y, n, true) > self.lo() {
                y = y.next_down();
            }
            y
        };
        let mut y = self.hi().powf(1.0 / n as f64);
        while pow_nonneg(y, n, false) < self.hi() {
            y = y.next_up();
        }
        Ok(Interval::raw(lo, y))
    }

    pub fn exp(self) -> Result<Interval> {
        let lo = exp_point(self.lo())?;
        let hi = exp_point(self.hi())?;
        Ok(Interval::raw(lo.lo(), hi.hi()))
    }

    pub fn ln(self) -> Result<Interval> {
        if !(self.lo() > 0.0) {
            return Err(IntervalError::Domain("ln"));
        }
        Ok(Interval::raw(ln_point(self.lo()).lo(), ln_point(self.hi()).hi()))
    }

    /// `ln(1 + x)`, accurate for small `x`.
    pub fn ln_1p(self) -> Result<Interval> {
        if !(self.lo() > -1.0) {
            return Err(IntervalError::Domain("ln_1p"));
        }
        if self.mag() > 0.25 {
            return (Interval::ONE + self).ln();
        }
        // ln(1+x) = 2 atanh(x/(2+x)), monotone in x.
        let f = |x: f64| {
            let xi = Interval::point(x);
            let u = xi
                .checked_div(Interval::point(2.0) + xi)
                .expect("positive denominator");
            atanh_small(u).ldexp(1)
        };
        Ok(Interval::raw(f(self.lo()).lo(), f(self.hi()).hi()))
    }

    /// `x^y` for positive `x`, via `exp(y ln x)`.
    pub fn pow(self, y: Interval) -> Result<Interval> {
        (y * self.ln()?).exp()
    }

    pub fn pi() -> Interval {
        let p = std::f64::consts::PI;
        // The double nearest to π lies below π.
        Interval::raw(p, p.next_up())
    }

    pub fn e() -> Interval {
        exp_point(1.0).expect("finite")
    }
}
