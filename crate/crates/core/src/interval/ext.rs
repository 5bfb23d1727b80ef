//! Nonnegative intervals with an unbounded binary exponent.
//!
//! Majorants such as `E ζ^l a^s` for `s` in the hundreds fall far outside the range
//! of `f64`. An [`Ext`] stores `[lo, hi]·2^e` with `hi` normalized to `[1/2, 1)`.

use std::cmp::Ordering;
use std::fmt;

use super::elementary::{frexp, ln2};
use super::round::{add_down, add_up, div_down, div_up, mul_down, mul_up};
use super::{Interval, IntervalError, Result};

/// The set `[lo·2^e, hi·2^e]` with `0 ≤ lo ≤ hi`.
#[derive(Clone, Copy, PartialEq)]
pub struct Ext {
    lo: f64,
    hi: f64,
    e: i64,
}

/// `2^n` for `-1022 ≤ n ≤ 1023`.
fn pow2(n: i64) -> f64 {
    debug_assert!((-1022..=1023).contains(&n));
    f64::from_bits(((n + 1023) as u64) << 52)
}

/// `x·2^d` rounded toward zero when the result is subnormal, so it stays a lower bound.
fn scale_down(x: f64, d: i64) -> f64 {
    if x == 0.0 {
        return 0.0;
    }
    let (f, k) = frexp(x);
    let n = k as i64 + d;
    if n < -1021 {
        0.0
    } else if n > 1024 {
        f64::MAX
    } else {
        f * 2.0 * pow2(n - 1)
    }
}

/// `x·2^d` rounded away from zero.
fn scale_up(x: f64, d: i64) -> f64 {
    if x == 0.0 {
        return 0.0;
    }
    let (f, k) = frexp(x);
    let n = k as i64 + d;
    if n < -1021 {
        f64::MIN_POSITIVE
    } else if n > 1024 {
        f64::INFINITY
    } else {
        f * 2.0 * pow2(n - 1)
    }
}

/// Orders `m1·2^e1` against `m2·2^e2` for nonnegative finite mantissas.
fn cmp_val(m1: f64, e1: i64, m2: f64, e2: i64) -> Ordering {
    match (m1 == 0.0, m2 == 0.0) {
        (true, true) => return Ordering::Equal,
        (true, false) => return Ordering::Less,
        (false, true) => return Ordering::Greater,
        _ => {}
    }
    let (f1, k1) = frexp(m1);
    let (f2, k2) = frexp(m2);
    (e1 + k1 as i64, f1).partial_cmp(&(e2 + k2 as i64, f2)).expect("finite")
}

impl Ext {
    pub const ZERO: Ext = Ext { lo: 0.0, hi: 0.0, e: 0 };
    pub const ONE: Ext = Ext { lo: 0.5, hi: 0.5, e: 1 };

    fn normalize(lo: f64, hi: f64, e: i64) -> Ext {
        debug_assert!(0.0 <= lo && lo <= hi && hi.is_finite(), "{lo} {hi}");
        if hi == 0.0 {
            return Ext::ZERO;
        }
        let (f, k) = frexp(hi);
        Ext { lo: scale_down(lo, -(k as i64)), hi: f, e: e + k as i64 }
    }

    /// The exact value of a nonnegative double.
    pub fn from_f64(x: f64) -> Ext {
        assert!(x >= 0.0 && x.is_finite(), "Ext::from_f64({x})");
        Ext::normalize(x, x, 0)
    }

    /// The nonnegative part of `x`.
    pub fn from_interval(x: Interval) -> Ext {
        Ext::normalize(x.lo().max(0.0), x.hi().max(0.0), 0)
    }

    /// Lower endpoint of `lo` and upper endpoint of `hi`.
    pub fn span(lo: Ext, hi: Ext) -> Ext {
        if hi.hi == 0.0 {
            return Ext::ZERO;
        }
        let l = scale_down(lo.lo, lo.e - hi.e);
        Ext { lo: l.min(hi.hi), hi: hi.hi, e: hi.e }
    }

    pub fn is_zero(self) -> bool {
        self.hi == 0.0
    }

    /// Whether every element is positive.
    pub fn is_positive(self) -> bool {
        self.lo > 0.0
    }

    /// The single point at the upper endpoint.
    pub fn upper(self) -> Ext {
        Ext { lo: self.hi, ..self }
    }

    /// `[0, hi]`.
    pub fn hull_zero(self) -> Ext {
        Ext { lo: 0.0, ..self }
    }

    /// Upper endpoint as a double, `+∞` if it exceeds the range.
    pub fn hi_f64(self) -> f64 {
        scale_up(self.hi, self.e)
    }

    /// Lower endpoint as a double, `0` if it falls below the normal range.
    pub fn lo_f64(self) -> f64 {
        scale_down(self.lo, self.e)
    }

    /// Conversion back to an ordinary interval.
    pub fn to_interval(self) -> Result<Interval> {
        let hi = self.hi_f64();
        if !hi.is_finite() {
            return Err(IntervalError::Overflow("extended-range conversion"));
        }
        Interval::new(self.lo_f64(), hi)
    }

    /// `self.hi < other.lo`.
    pub fn certainly_lt(self, other: Ext) -> bool {
        cmp_val(self.hi, self.e, other.lo, other.e) == Ordering::Less
    }

    /// `self.hi < 1`.
    pub fn certainly_below_one(self) -> bool {
        self.certainly_lt(Ext::ONE)
    }

    pub fn max(self, other: Ext) -> Ext {
        let lo = if cmp_val(self.lo, self.e, other.lo, other.e) == Ordering::Less { other } else { self };
        let hi = if cmp_val(self.hi, self.e, other.hi, other.e) == Ordering::Less { other } else { self };
        Ext::span(lo, hi)
    }

    pub fn min(self, other: Ext) -> Ext {
        let lo = if cmp_val(self.lo, self.e, other.lo, other.e) == Ordering::Less { self } else { other };
        let hi = if cmp_val(self.hi, self.e, other.hi, other.e) == Ordering::Less { self } else { other };
        Ext::span(lo, hi)
    }

    pub fn add(self, other: Ext) -> Ext {
        if self.is_zero() {
            return other;
        }
        if other.is_zero() {
            return self;
        }
        let (big, small) = if self.e >= other.e { (self, other) } else { (other, self) };
        let d = small.e - big.e;
        let hi = add_up(big.hi, scale_up(small.hi, d));
        let lo = add_down(big.lo, scale_down(small.lo, d));
        Ext::normalize(lo, hi, big.e)
    }

    pub fn mul(self, other: Ext) -> Ext {
        if self.is_zero() || other.is_zero() {
            return Ext::ZERO;
        }
        Ext::normalize(mul_down(self.lo, other.lo), mul_up(self.hi, other.hi), self.e + other.e)
    }

    pub fn div(self, other: Ext) -> Result<Ext> {
        if !other.is_positive() {
            return Err(IntervalError::DivisionByZero);
        }
        if self.is_zero() {
            return Ok(Ext::ZERO);
        }
        let hi = div_up(self.hi, other.lo);
        if !hi.is_finite() {
            return Err(IntervalError::Overflow("extended-range division"));
        }
        Ok(Ext::normalize(div_down(self.lo, other.hi), hi, self.e - other.e))
    }

    pub fn scale_int(self, n: u64) -> Ext {
        assert!(n < 1 << 53);
        self.mul(Ext::from_f64(n as f64))
    }

    pub fn powi(self, mut n: u64) -> Ext {
        let mut base = self;
        let mut acc = Ext::ONE;
        while n > 0 {
            if n & 1 == 1 {
                acc = acc.mul(base);
            }
            n >>= 1;
            if n > 0 {
                base = base.mul(base);
            }
        }
        acc
    }

    /// `ln` of a positive set.
    pub fn ln(self) -> Result<Interval> {
        if !self.is_positive() {
            return Err(IntervalError::Domain("ln"));
        }
        let m = Interval::new(self.lo, self.hi)?.ln()?;
        Ok(m + ln2() * Interval::from_int(self.e))
    }

    /// `e^y` for any finite `y`.
    pub fn exp(y: Interval) -> Result<Ext> {
        let l2 = ln2();
        let at = |x: f64| -> Result<Ext> {
            let k = (x / l2.mid()).floor();
            if !k.is_finite() || k.abs() > 1e15 {
                return Err(IntervalError::Overflow("extended-range exp"));
            }
            let r = (Interval::point(x) - l2 * Interval::point(k)).exp()?;
            Ok(Ext::normalize(r.lo(), r.hi(), k as i64))
        };
        Ok(Ext::span(at(y.lo())?, at(y.hi())?))
    }

    /// `self^p` for `p > 0`.
    pub fn pow(self, p: Interval) -> Result<Ext> {
        if !(p.lo() > 0.0) {
            return Err(IntervalError::Domain("pow"));
        }
        if self.is_zero() || self == Ext::ONE {
            return Ok(self);
        }
        if !self.is_positive() {
            return Ok(Ext::exp(p * self.upper().ln()?)?.hull_zero());
        }
        Ext::exp(p * self.ln()?)
    }

    /// `self^(1/n)`.
    pub fn root(self, n: u64) -> Result<Ext> {
        self.pow(Interval::ONE.div_int(n))
    }
}

impl Default for Ext {
    fn default() -> Self {
        Ext::ZERO
    }
}

/// Human-readable scientific notation, rounded outward in the sixth digit.
fn sci(m: f64, e: i64, up: bool) -> String {
    if m == 0.0 {
        return "0".into();
    }
    let l = m.log10() + e as f64 * std::f64::consts::LOG10_2;
    let mut ex = l.floor();
    let mut mant = 10f64.powf(l - ex);
    mant = if up { (mant * 1e5).ceil() / 1e5 } else { (mant * 1e5).floor() / 1e5 };
    if mant >= 10.0 {
        mant /= 10.0;
        ex += 1.0;
    }
    if mant < 1.0 {
        mant *= 10.0;
        ex -= 1.0;
    }
    format!("{mant:.5}e{ex}")
}

impl fmt::Display for Ext {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.to_interval() {
            Ok(x) if self.lo_f64() > 0.0 || self.lo == 0.0 => write!(f, "{x}"),
            _ => write!(f, "{} {}", sci(self.lo, self.e, false), sci(self.hi, self.e, true)),
        }
    }
}

impl fmt::Debug for Ext {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Ext[{}]", self)
    }
}
