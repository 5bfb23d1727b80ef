//! Outward-rounded interval arithmetic on `f64` endpoints.
//!
//! Every operation returns an enclosure of the exact real result. Directed
//! rounding is obtained from error-free transformations: the round-to-nearest
//! result is kept when the residual is zero and nudged by one ulp otherwise.

mod decimal;
mod elementary;
mod ext;
mod round;

use std::fmt;
use std::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};

pub use ext::Ext;
pub use decimal::{lower_endpoint_text, upper_endpoint_text};
use round::{add_down, add_up, div_down, div_up, mul_down, mul_up};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum IntervalError {
    #[error("malformed decimal literal `{0}`")]
    Parse(String),
    #[error("division by an interval containing zero")]
    DivisionByZero,
    #[error("argument outside the domain of {0}")]
    Domain(&'static str),
    #[error("non-finite endpoint in {0}")]
    Overflow(&'static str),
    #[error("inverted endpoints: {lo} > {hi}")]
    Inverted { lo: f64, hi: f64 },
}

pub type Result<T> = std::result::Result<T, IntervalError>;

/// Closed interval `[lo, hi]`.
#[derive(Clone, Copy, PartialEq)]
pub struct Interval {
    lo: f64,
    hi: f64,
}

impl Interval {
    pub const ZERO: Interval = Interval { lo: 0.0, hi: 0.0 };
    pub const ONE: Interval = Interval { lo: 1.0, hi: 1.0 };

    pub fn new(lo: f64, hi: f64) -> Result<Self> {
        if lo.is_nan() || hi.is_nan() || lo > hi {
            return Err(IntervalError::Inverted { lo, hi });
        }
        if !lo.is_finite() || !hi.is_finite() {
            return Err(IntervalError::Overflow("Interval::new"));
        }
        Ok(Interval { lo, hi })
    }

    /// Degenerate interval `[x, x]`. Panics on non-finite input.
    pub fn point(x: f64) -> Self {
        assert!(x.is_finite(), "Interval::point({x})");
        Interval { lo: x, hi: x }
    }

    /// Unchecked constructor used internally once the endpoints are known to be ordered.
    #[inline]
    pub(crate) fn raw(lo: f64, hi: f64) -> Self {
        debug_assert!(!(lo > hi), "raw({lo}, {hi})");
        Interval { lo, hi }
    }

    /// Exact integer, widened if it is not representable.
    pub fn from_int(n: i64) -> Self {
        let x = n as f64;
        if x.abs() < 9007199254740992.0 {
            return Interval::point(x);
        }
        Interval::raw(x.next_down(), x.next_up())
    }

    /// Tightest interval containing the exact value of a decimal literal.
    pub fn from_decimal(text: &str) -> Result<Self> {
        decimal::enclose(text)
    }

    pub fn hull(a: f64, b: f64) -> Self {
        Interval::raw(a.min(b), a.max(b))
    }

    #[inline]
    pub fn lo(self) -> f64 {
        self.lo
    }

    #[inline]
    pub fn hi(self) -> f64 {
        self.hi
    }

    pub fn mid(self) -> f64 {
        if self.lo == self.hi {
            return self.lo;
        }
        let m = 0.5 * self.lo + 0.5 * self.hi;
        m.clamp(self.lo, self.hi)
    }

    /// Upper bound of `hi - lo`.
    pub fn width(self) -> f64 {
        add_up(self.hi, -self.lo)
    }

    pub fn contains(self, x: f64) -> bool {
        self.lo <= x && x <= self.hi
    }

    pub fn contains_zero(self) -> bool {
        self.contains(0.0)
    }

    pub fn encloses(self, other: Interval) -> bool {
        self.lo <= other.lo && other.hi <= self.hi
    }

    pub fn is_point(self) -> bool {
        self.lo == self.hi
    }

    pub fn is_finite(self) -> bool {
        self.lo.is_finite() && self.hi.is_finite()
    }

    /// Returns `self` if both endpoints are finite.
    pub fn checked(self, what: &'static str) -> Result<Self> {
        if self.is_finite() {
            Ok(self)
        } else {
            Err(IntervalError::Overflow(what))
        }
    }

    /// Largest absolute value in the interval.
    pub fn mag(self) -> f64 {
        self.lo.abs().max(self.hi.abs())
    }

    /// Smallest absolute value in the interval.
    pub fn mig(self) -> f64 {
        if self.contains_zero() {
            0.0
        } else {
            self.lo.abs().min(self.hi.abs())
        }
    }

    pub fn abs(self) -> Self {
        Interval::raw(self.mig(), self.mag())
    }

    pub fn min(self, other: Interval) -> Self {
        Interval::raw(self.lo.min(other.lo), self.hi.min(other.hi))
    }

    pub fn max(self, other: Interval) -> Self {
        Interval::raw(self.lo.max(other.lo), self.hi.max(other.hi))
    }

    /// Union hull of two intervals.
    pub fn join(self, other: Interval) -> Self {
        Interval::raw(self.lo.min(other.lo), self.hi.max(other.hi))
    }

    /// Intersection with `[0, inf)`; used for quantities known to be nonnegative.
    pub fn clip_nonneg(self) -> Self {
        Interval::raw(self.lo.max(0.0), self.hi.max(0.0))
    }

    /// Interval `[0, hi]` used to bound a norm from above only.
    pub fn upper(self) -> Self {
        Interval::raw(0.0_f64.min(self.hi), self.hi)
    }

    /// Symmetric interval `[-r, r]`.
    pub fn symmetric(r: f64) -> Self {
        let r = r.abs();
        Interval::raw(-r, r)
    }

    pub fn sqr(self) -> Self {
        let a = self.abs();
        Interval::raw(mul_down(a.lo, a.lo), mul_up(a.hi, a.hi))
    }

    pub fn recip(self) -> Result<Self> {
        Interval::ONE.checked_div(self)
    }

    pub fn checked_div(self, b: Interval) -> Result<Self> {
        if b.contains_zero() {
            return Err(IntervalError::DivisionByZero);
        }
        let c = [
            (self.lo, b.lo),
            (self.lo, b.hi),
            (self.hi, b.lo),
            (self.hi, b.hi),
        ];
        let lo = c.iter().map(|&(x, y)| div_down(x, y)).fold(f64::INFINITY, f64::min);
        let hi = c.iter().map(|&(x, y)| div_up(x, y)).fold(f64::NEG_INFINITY, f64::max);
        Ok(Interval::raw(lo, hi))
    }

    pub fn checked_add(self, b: Interval) -> Result<Self> {
        (self + b).checked("add")
    }

    pub fn checked_sub(self, b: Interval) -> Result<Self> {
        (self - b).checked("sub")
    }

    pub fn checked_mul(self, b: Interval) -> Result<Self> {
        (self * b).checked("mul")
    }

    /// Multiplication by an exact nonnegative integer such as a binomial coefficient.
    pub fn scale_int(self, n: u64) -> Self {
        self * Interval::from_int(n as i64)
    }

    /// Multiplication by `2^e`, exact unless the result leaves the normal range.
    pub fn ldexp(self, e: i32) -> Self {
        let f = 2f64.powi(e);
        self * Interval::point(f)
    }

    /// Division by an exact positive integer.
    pub fn div_int(self, n: u64) -> Self {
        assert!(n > 0);
        self.checked_div(Interval::from_int(n as i64)).expect("nonzero divisor")
    }

    pub fn ge_zero_certain(self) -> bool {
        self.lo >= 0.0
    }

    /// True when every element of `self` is strictly below every element of `other`.
    pub fn certainly_lt(self, other: Interval) -> bool {
        self.hi < other.lo
    }
}

impl Default for Interval {
    fn default() -> Self {
        Interval::ZERO
    }
}

impl From<i32> for Interval {
    fn from(n: i32) -> Self {
        Interval::point(n as f64)
    }
}

impl fmt::Debug for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{:e}, {:e}]", self.lo, self.hi)
    }
}

/// Two decimal endpoints separated by a space; parsing the text back never shrinks the interval.
impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {}", lower_endpoint_text(self.lo), upper_endpoint_text(self.hi))
    }
}

impl std::str::FromStr for Interval {
    type Err = IntervalError;

    /// Parses either a single decimal or a pair `lo hi`.
    fn from_str(s: &str) -> Result<Self> {
        let mut it = s.split_whitespace();
        let a = it.next().ok_or_else(|| IntervalError::Parse(s.to_string()))?;
        let lo = Interval::from_decimal(a)?;
        match it.next() {
            None => Ok(lo),
            Some(b) => {
                if it.next().is_some() {
                    return Err(IntervalError::Parse(s.to_string()));
                }
                let hi = Interval::from_decimal(b)?;
                Interval::new(lo.lo, hi.hi)
            }
        }
    }
}

impl Neg for Interval {
    type Output = Interval;
    #[inline]
    fn neg(self) -> Interval {
        Interval::raw(-self.hi, -self.lo)
    }
}

impl Add for Interval {
    type Output = Interval;
    #[inline]
    fn add(self, b: Interval) -> Interval {
        Interval::raw(add_down(self.lo, b.lo), add_up(self.hi, b.hi))
    }
}

impl Sub for Interval {
    type Output = Interval;
    #[inline]
    fn sub(self, b: Interval) -> Interval {
        Interval::raw(add_down(self.lo, -b.hi), add_up(self.hi, -b.lo))
    }
}

impl Mul for Interval {
    type Output = Interval;
    #[inline]
    fn mul(self, b: Interval) -> Interval {
        let (a0, a1, b0, b1) = (self.lo, self.hi, b.lo, b.hi);
        if a0 >= 0.0 && b0 >= 0.0 {
            return Interval::raw(mul_down(a0, b0), mul_up(a1, b1));
        }
        if a0 == a1 && b0 == b1 {
            return Interval::raw(mul_down(a0, b0), mul_up(a0, b0));
        }
        let lo = mul_down(a0, b0)
            .min(mul_down(a0, b1))
            .min(mul_down(a1, b0))
            .min(mul_down(a1, b1));
        let hi = mul_up(a0, b0)
            .max(mul_up(a0, b1))
            .max(mul_up(a1, b0))
            .max(mul_up(a1, b1));
        Interval::raw(lo, hi)
    }
}

impl AddAssign for Interval {
    #[inline]
    fn add_assign(&mut self, b: Interval) {
        *self = *self + b;
    }
}

impl SubAssign for Interval {
    #[inline]
    fn sub_assign(&mut self, b: Interval) {
        *self = *self - b;
    }
}

impl MulAssign for Interval {
    #[inline]
    fn mul_assign(&mut self, b: Interval) {
        *self = *self * b;
    }
}

impl std::iter::Sum for Interval {
    fn sum<I: Iterator<Item = Interval>>(iter: I) -> Interval {
        iter.fold(Interval::ZERO, |acc, x| acc + x)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn iv(lo: f64, hi: f64) -> Interval {
        Interval::new(lo, hi).unwrap()
    }

    #[test]
    fn add_encloses_endpoints() {
        let r = iv(1.0, 2.0) + iv(3.0, 4.0);
        assert!(r.encloses(iv(4.0, 6.0)));
    }

    #[test]
    fn mixed_sign_product() {
        let r = iv(-1.0, 2.0) * iv(3.0, 4.0);
        assert!(r.encloses(iv(-4.0, 8.0)));
        assert!(r.lo() >= -4.0 && r.hi() <= 8.0);
    }

    #[test]
    fn third_is_strictly_enclosed() {
        let r = Interval::ONE.checked_div(Interval::point(3.0)).unwrap();
        assert!(r.lo() < r.hi());
        assert_eq!(r.hi(), r.lo().next_up());
    }

    #[test]
    fn exact_operations_stay_points() {
        assert!((Interval::point(0.5) + Interval::point(0.25)).is_point());
        assert!((Interval::point(3.0) * Interval::point(7.0)).is_point());
        assert!(Interval::point(1.0).checked_div(Interval::point(4.0)).unwrap().is_point());
    }

    #[test]
    fn division_by_zero_interval() {
        assert_eq!(
            Interval::ONE.checked_div(iv(-1.0, 1.0)),
            Err(IntervalError::DivisionByZero)
        );
    }

    #[test]
    fn overflow_is_reported() {
        let big = Interval::point(f64::MAX);
        assert!(big.checked_add(big).is_err());
        assert!(big.checked_mul(big).is_err());
        assert!(Interval::new(0.0, f64::INFINITY).is_err());
    }

    #[test]
    fn sqr_of_straddling_interval_is_nonnegative() {
        let r = iv(-2.0, 1.0).sqr();
        assert_eq!(r.lo(), 0.0);
        assert_eq!(r.hi(), 4.0);
    }

    #[test]
    fn mag_and_mig() {
        assert_eq!(iv(-3.0, 2.0).mag(), 3.0);
        assert_eq!(iv(-3.0, 2.0).mig(), 0.0);
        assert_eq!(iv(-3.0, -2.0).mig(), 2.0);
    }

    #[test]
    fn display_round_trip_does_not_shrink() {
        let x = Interval::from_decimal("0.35").unwrap();
        let y: Interval = x.to_string().parse().unwrap();
        assert!(y.encloses(x));
        assert_eq!(x, y);
    }
}
