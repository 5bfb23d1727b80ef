//! Rationals, continued fractions and noble frequencies.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use num_integer::Integer;

use crate::error::{Error, Result};
use crate::interval::Interval;

/// Reduced fraction with positive denominator.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Rational {
    pub num: i64,
    pub den: i64,
}

impl Rational {
    pub fn new(num: i64, den: i64) -> Result<Self> {
        if den == 0 {
            return Err(Error::Invalid("zero denominator".into()));
        }
        let g = num.gcd(&den);
        let s = if den < 0 { -1 } else { 1 };
        Ok(Rational { num: s * num / g, den: s * den / g })
    }

    pub fn value(self) -> f64 {
        self.num as f64 / self.den as f64
    }

    pub fn enclosure(self) -> Interval {
        Interval::from_int(self.num)
            .checked_div(Interval::from_int(self.den))
            .expect("positive denominator")
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.num, self.den)
    }
}

impl FromStr for Rational {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Invalid(format!("expected a fraction n/d, got `{s}`"));
        let (n, d) = s.trim().split_once('/').ok_or_else(bad)?;
        let n: i64 = n.trim().parse().map_err(|_| bad())?;
        let d: i64 = d.trim().parse().map_err(|_| bad())?;
        Rational::new(n, d)
    }
}

/// The fraction of smallest denominator in `[lo, hi]`, by descent of the Stern–Brocot tree.
pub fn simplest_in(lo: f64, hi: f64) -> Rational {
    assert!(lo <= hi && lo.is_finite() && hi.is_finite());
    let fl = lo.floor();
    if fl + 1.0 <= hi || fl == lo {
        let n = if fl == lo { fl } else { fl + 1.0 };
        return Rational { num: n as i64, den: 1 };
    }
    // lo and hi share the integer part; recurse on the reciprocals of the fractional parts.
    let inner = simplest_in(1.0 / (hi - fl), 1.0 / (lo - fl));
    Rational::new(fl as i64 * inner.num + inner.den, inner.num).expect("nonzero")
}

/// The golden ratio `σ = (1 + √5)/2` as an enclosure.
pub fn golden() -> Interval {
    (Interval::point(5.0).sqrt().expect("positive") + Interval::ONE).ldexp(-1)
}

/// Adjacent fractions `n1/d1`, `n2/d2` whose golden mediant defines a noble frequency.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RationalPair {
    pub first: Rational,
    pub second: Rational,
}

impl RationalPair {
    pub fn new(first: Rational, second: Rational) -> Self {
        RationalPair { first, second }
    }

    /// `|n1 d2 - n2 d1| = 1`.
    pub fn is_adjacent(self) -> bool {
        (self.first.num * self.second.den - self.second.num * self.first.den).abs() == 1
    }

    /// `(n1 + σ n2)/(d1 + σ d2)` as an enclosure.
    pub fn noble_enclosure(self) -> Interval {
        let s = golden();
        (Interval::from_int(self.first.num) + s * Interval::from_int(self.second.num))
            .checked_div(Interval::from_int(self.first.den) + s * Interval::from_int(self.second.den))
            .expect("positive denominator")
    }

    /// The same number in exact form `(A + B√5)/C`.
    pub fn noble_surd(self) -> QuadraticSurd {
        let (n1, d1) = (self.first.num as i128, self.first.den as i128);
        let (n2, d2) = (self.second.num as i128, self.second.den as i128);
        // ((2n1+n2) + n2√5)/((2d1+d2) + d2√5), times the conjugate of the denominator.
        let (a, b) = (2 * n1 + n2, n2);
        let (c, d) = (2 * d1 + d2, d2);
        QuadraticSurd::new(a * c - 5 * b * d, b * c - a * d, c * c - 5 * d * d)
    }
}

impl fmt::Display for RationalPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {}", self.first, self.second)
    }
}

/// Golden mediant in floating point.
pub fn noble_mediant(pair: RationalPair) -> f64 {
    let s = (1.0 + 5f64.sqrt()) / 2.0;
    (pair.first.num as f64 + s * pair.second.num as f64) / (pair.first.den as f64 + s * pair.second.den as f64)
}

/// `(a + b√5)/c` with integer `a, b, c`, `c ≠ 0`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct QuadraticSurd {
    pub a: i128,
    pub b: i128,
    pub c: i128,
}

/// Sign of `t - √n` for `n ≥ 0`.
fn cmp_sqrt(t: i128, n: i128) -> Ordering {
    if t < 0 {
        return if n == 0 && t == 0 { Ordering::Equal } else { Ordering::Less };
    }
    (t * t).cmp(&n)
}

/// Continued fraction `[a0; a1, …, a_{m-1}, (period)…]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ContinuedFraction {
    pub preperiod: Vec<i128>,
    pub period: Vec<i128>,
}

impl ContinuedFraction {
    /// Partial quotient `a_n`.
    pub fn term(&self, n: usize) -> i128 {
        if n < self.preperiod.len() {
            self.preperiod[n]
        } else {
            self.period[(n - self.preperiod.len()) % self.period.len()]
        }
    }

    /// `max_{n ≥ 1} a_n`.
    pub fn max_tail_term(&self) -> i128 {
        self.preperiod.iter().skip(1).chain(self.period.iter()).copied().max().unwrap_or(0)
    }

    /// Convergents `p_n/q_n` for `n < count`.
    pub fn convergents(&self, count: usize) -> Vec<(i128, i128)> {
        let (mut p0, mut q0, mut p1, mut q1) = (1i128, 0i128, self.term(0), 1i128);
        let mut out = vec![(p1, q1)];
        for n in 1..count {
            let a = self.term(n);
            let (p2, q2) = (a * p1 + p0, a * q1 + q0);
            out.push((p2, q2));
            (p0, q0, p1, q1) = (p1, q1, p2, q2);
        }
        out
    }
}

impl QuadraticSurd {
    pub fn new(a: i128, b: i128, c: i128) -> Self {
        assert!(c != 0);
        let g = a.gcd(&b).gcd(&c);
        let s = if c < 0 { -1 } else { 1 };
        QuadraticSurd { a: s * a / g, b: s * b / g, c: s * c / g }
    }

    pub fn value(self) -> f64 {
        (self.a as f64 + self.b as f64 * 5f64.sqrt()) / self.c as f64
    }

    pub fn enclosure(self) -> Interval {
        let r5 = Interval::point(5.0).sqrt().expect("positive");
        (Interval::from_int(self.a as i64) + Interval::from_int(self.b as i64) * r5)
            .checked_div(Interval::from_int(self.c as i64))
            .expect("nonzero")
    }

    /// Exact periodic continued fraction (Lagrange).
    pub fn continued_fraction(self) -> Result<ContinuedFraction> {
        if self.b == 0 {
            return Err(Error::Invalid("rational number has a finite continued fraction".into()));
        }
        // Write x = (P + √N)/Q with Q | N - P².
        let (mut p, mut q, bb) = if self.b > 0 { (self.a, self.c, self.b) } else { (-self.a, -self.c, -self.b) };
        let mut n = 5 * bb * bb;
        if (n - p * p) % q != 0 {
            let aq = q.abs();
            p *= aq;
            n *= q * q;
            q *= aq;
        }
        let mut seen: HashMap<(i128, i128), usize> = HashMap::new();
        let mut terms = Vec::new();
        for _ in 0..10_000 {
            if let Some(&start) = seen.get(&(p, q)) {
                return Ok(ContinuedFraction {
                    preperiod: terms[..start].to_vec(),
                    period: terms[start..].to_vec(),
                });
            }
            seen.insert((p, q), terms.len());
            let a = floor_surd(p, n, q);
            terms.push(a);
            p = a * q - p;
            q = (n - p * p) / q;
        }
        Err(Error::Precision("continued fraction period not found".into()))
    }
}

/// `⌊(p + √n)/q⌋`, exactly.
fn floor_surd(p: i128, n: i128, q: i128) -> i128 {
    let x = (p as f64 + (n as f64).sqrt()) / q as f64;
    let mut a = x.floor() as i128;
    // a ≤ x  ⇔  a q - p ≤ √n (q > 0) or a q - p ≥ √n (q < 0)
    let le = |a: i128| {
        let t = a * q - p;
        let c = cmp_sqrt(t, n);
        if q > 0 { c != Ordering::Greater } else { c != Ordering::Less }
    };
    while !le(a) {
        a -= 1;
    }
    while le(a + 1) {
        a += 1;
    }
    a
}

/// Diophantine constant for `τ = 1`: `|k1ω + k2| ≥ γ/(|k1| + |k2|)` for all `(k1, k2) ≠ 0`.
///
/// Returns an enclosure of `min_q q‖qω‖`, which is admissible since `q ≤ |k1| + |k2|`.
/// Denominators below the horizon `q_N` are scanned; beyond it the best-approximation
/// bound `q‖qω‖ > 1/(a_{n+1} + 2)` for `q_n ≤ q < q_{n+1}` covers the periodic tail.
pub fn diophantine_gamma(omega: QuadraticSurd) -> Result<Interval> {
    let cf = omega.continued_fraction()?;
    let horizon_index = cf.preperiod.len() + cf.period.len() + 1;
    let tail_max = cf.period.iter().copied().max().expect("nonempty period");
    let tail = Interval::ONE.div_int((tail_max + 2) as u64);
    let horizon = cf.convergents(horizon_index + 1)[horizon_index].1;
    let w = omega.enclosure();
    let mut gamma = tail;
    for q in 1..horizon as i64 {
        let center = (q as f64 * w.mid()).round() as i64;
        let qi = Interval::from_int(q);
        for p in [center - 1, center, center + 1] {
            let dist = (qi * w - Interval::from_int(p)).abs();
            if dist.contains_zero() {
                return Err(Error::Precision(format!("cannot separate ω from {p}/{q}")));
            }
            gamma = gamma.min(dist * qi);
        }
    }
    Ok(gamma)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64, d: i64) -> Rational {
        Rational::new(n, d).unwrap()
    }

    #[test]
    fn fractions_reduce() {
        assert_eq!(r(6, -4), Rational { num: -3, den: 2 });
        assert_eq!("43/74".parse::<Rational>().unwrap(), r(43, 74));
        assert!("43".parse::<Rational>().is_err());
    }

    #[test]
    fn simplest_fraction() {
        assert_eq!(simplest_in(0.5806, 0.5807), r(18, 31));
        assert_eq!(simplest_in(0.58139, 0.58140), r(25, 43));
        assert_eq!(simplest_in(0.3, 0.4), r(1, 3));
        assert_eq!(simplest_in(2.0, 2.5), r(2, 1));
    }

    #[test]
    fn noble_mediants() {
        let p = RationalPair::new(r(43, 74), r(18, 31));
        assert!(p.is_adjacent());
        assert!((noble_mediant(p) - 0.580905).abs() < 1e-6);
        let s = (1.0 + 5f64.sqrt()) / 2.0;
        let g = noble_mediant(RationalPair::new(r(0, 1), r(1, 1)));
        assert!((g - 1.0 / s).abs() < 1e-15);
        assert!((g - 0.6180339887).abs() < 1e-10);
        let h = noble_mediant(RationalPair::new(r(1, 2), r(1, 1)));
        assert!((h - (1.0 + s) / (2.0 + s)).abs() < 1e-15);
        assert!((h - 0.723607).abs() < 1e-6);
    }

    #[test]
    fn surd_matches_mediant() {
        let p = RationalPair::new(r(43, 74), r(18, 31));
        let x = p.noble_surd();
        assert!((x.value() - noble_mediant(p)).abs() < 1e-14);
        assert!(x.enclosure().contains(noble_mediant(p)) || (x.enclosure().mid() - noble_mediant(p)).abs() < 1e-15);
        assert!(p.noble_enclosure().width() < 1e-14);
    }

    #[test]
    fn noble_continued_fraction_ends_in_ones() {
        let x = RationalPair::new(r(43, 74), r(18, 31)).noble_surd();
        let cf = x.continued_fraction().unwrap();
        assert_eq!(cf.period, vec![1]);
        assert_eq!(cf.term(0), 0);
        assert_eq!(cf.preperiod, vec![0, 1, 1, 2, 1, 1, 2, 3]);
        assert_eq!(cf.max_tail_term(), 3);
        let conv = cf.convergents(12);
        assert!(conv.contains(&(18, 31)) && conv.contains(&(61, 105)));
    }

    #[test]
    fn golden_mean_convergents() {
        let g = QuadraticSurd::new(-1, 1, 2);
        let cf = g.continued_fraction().unwrap();
        assert_eq!(cf.preperiod, vec![0]);
        assert_eq!(cf.period, vec![1]);
        let w = g.value();
        for (p, q) in cf.convergents(25).into_iter().skip(3) {
            let v = q as f64 * (q as f64 * w - p as f64).abs();
            assert!((v - 1.0 / 5f64.sqrt()).abs() < 0.05, "{p}/{q}: {v}");
        }
    }

    #[test]
    fn sqrt_five_is_periodic() {
        let cf = QuadraticSurd::new(0, 1, 1).continued_fraction().unwrap();
        assert_eq!(cf.preperiod, vec![2]);
        assert_eq!(cf.period, vec![4]);
    }

    #[test]
    fn gamma_for_noble_target() {
        let x = RationalPair::new(r(43, 74), r(18, 31)).noble_surd();
        let g = diophantine_gamma(x).unwrap();
        assert!((g.mid() - 0.24999).abs() <= 5e-4);
        assert!(g.width() < 1e-12);
        let w = x.value();
        for k1 in -200i64..=200 {
            for k2 in -200i64..=200 {
                if (k1, k2) != (0, 0) {
                    let lhs = (k1.abs() + k2.abs()) as f64 * (k1 as f64 * w + k2 as f64).abs();
                    assert!(lhs >= g.lo(), "({k1}, {k2})");
                }
            }
        }
    }
}
