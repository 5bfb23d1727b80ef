//! Exact decimal input and non-shrinking decimal output of interval endpoints.

use std::cmp::Ordering;

use num_bigint::BigUint;

use super::{Interval, IntervalError, Result};

/// A decimal literal as `(negative, digits, exp10)`, meaning `±digits·10^exp10`.
struct Decimal {
    negative: bool,
    digits: BigUint,
    exp10: i64,
}

fn parse_decimal(text: &str) -> Option<Decimal> {
    let t = text.trim();
    let (negative, body) = match t.as_bytes().first()? {
        b'-' => (true, &t[1..]),
        b'+' => (false, &t[1..]),
        _ => (false, t),
    };
    let (mantissa, exponent) = match body.find(['e', 'E']) {
        Some(i) => (&body[..i], Some(&body[i + 1..])),
        None => (body, None),
    };
    let (int_part, frac_part) = match mantissa.find('.') {
        Some(i) => (&mantissa[..i], &mantissa[i + 1..]),
        None => (mantissa, ""),
    };
    if int_part.is_empty() && frac_part.is_empty() {
        return None;
    }
    if !int_part.bytes().chain(frac_part.bytes()).all(|b| b.is_ascii_digit()) {
        return None;
    }
    let mut exp10: i64 = match exponent {
        Some(e) => {
            let digits = e.strip_prefix(['+', '-']).unwrap_or(e);
            if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) || digits.len() > 6 {
                return None;
            }
            e.parse().ok()?
        }
        None => 0,
    };
    exp10 -= frac_part.len() as i64;
    let all: String = int_part.chars().chain(frac_part.chars()).collect();
    let digits = BigUint::parse_bytes(all.as_bytes(), 10)?;
    Some(Decimal { negative, digits, exp10 })
}

/// Splits a finite nonzero `|x|` into `(m, e)` with `|x| = m·2^e`.
fn decompose(x: f64) -> (u64, i64) {
    let bits = x.abs().to_bits();
    let exp_bits = ((bits >> 52) & 0x7ff) as i64;
    let frac = bits & ((1u64 << 52) - 1);
    if exp_bits == 0 {
        (frac, -1074)
    } else {
        (frac | (1u64 << 52), exp_bits - 1075)
    }
}

/// Exact comparison of `digits·10^exp10` with `|x|`.
fn cmp_magnitude(digits: &BigUint, exp10: i64, x: f64) -> Ordering {
    if x == 0.0 {
        return if digits.bits() == 0 { Ordering::Equal } else { Ordering::Greater };
    }
    if digits.bits() == 0 {
        return Ordering::Less;
    }
    let (m, e2) = decompose(x);
    let mut lhs = digits.clone();
    let mut rhs = BigUint::from(m);
    let ten = BigUint::from(10u32);
    if exp10 >= 0 {
        lhs *= ten.pow(exp10 as u32);
    } else {
        rhs *= ten.pow((-exp10) as u32);
    }
    if e2 >= 0 {
        rhs <<= e2 as usize;
    } else {
        lhs <<= (-e2) as usize;
    }
    lhs.cmp(&rhs)
}

/// Exact comparison of a decimal with a float.
fn cmp_decimal(d: &Decimal, x: f64) -> Ordering {
    let zero = d.digits.bits() == 0;
    let d_neg = d.negative && !zero;
    match (d_neg, x < 0.0) {
        (false, true) => Ordering::Greater,
        (true, false) => {
            if x == 0.0 || !zero {
                Ordering::Less
            } else {
                Ordering::Equal
            }
        }
        (false, false) => cmp_magnitude(&d.digits, d.exp10, x),
        (true, true) => cmp_magnitude(&d.digits, d.exp10, x).reverse(),
    }
}

pub(super) fn enclose(text: &str) -> Result<Interval> {
    let err = || IntervalError::Parse(text.to_string());
    let d = parse_decimal(text).ok_or_else(err)?;
    let normalized = text.trim().replace(['E'], "e");
    let x: f64 = normalized.parse().map_err(|_| err())?;
    if !x.is_finite() {
        return Err(IntervalError::Overflow("decimal literal"));
    }
    if d.exp10 < -2000 && d.digits.bits() > 0 {
        // Far below the subnormal range: enclose by the signed smallest step.
        let t = f64::from_bits(1);
        return Ok(if d.negative { Interval::raw(-t, 0.0) } else { Interval::raw(0.0, t) });
    }
    Ok(match cmp_decimal(&d, x) {
        Ordering::Equal => Interval::raw(x, x),
        Ordering::Greater => Interval::raw(x, x.next_up()),
        Ordering::Less => Interval::raw(x.next_down(), x),
    })
}

/// Parses `digits e exp` strings produced by the formatter.
fn parse_own(s: &str) -> Decimal {
    parse_decimal(s).expect("formatter output parses")
}

/// Adds `delta` (±1) to the last digit of a 17-digit scientific representation.
fn bump_last_digit(sci: &str, delta: i64) -> String {
    let (mant, exp) = sci.split_once('e').expect("scientific form");
    let negative = mant.starts_with('-');
    let mant = mant.trim_start_matches('-');
    let digits: String = mant.chars().filter(|c| *c != '.').collect();
    let frac_len = mant.split_once('.').map_or(0, |(_, f)| f.len()) as i64;
    let exp: i64 = exp.parse().expect("exponent");
    let n: i128 = digits.parse::<i128>().expect("digits") + delta as i128;
    format!("{}{}e{}", if negative { "-" } else { "" }, n, exp - frac_len)
}

/// Decimal text `D` with `x ≤ D < next_up(x)`, so that rounding `D` down returns `x`.
pub fn lower_endpoint_text(x: f64) -> String {
    endpoint_text(x, Ordering::Greater)
}

/// Decimal text `D` with `next_down(x) < D ≤ x`, so that rounding `D` up returns `x`.
pub fn upper_endpoint_text(x: f64) -> String {
    endpoint_text(x, Ordering::Less)
}

fn endpoint_text(x: f64, side: Ordering) -> String {
    assert!(x.is_finite(), "endpoint_text({x})");
    if x == 0.0 {
        return "0".to_string();
    }
    let shortest = format!("{x:e}");
    let c = cmp_decimal(&parse_own(&shortest), x);
    if c == Ordering::Equal || c == side {
        return shortest;
    }
    let long = format!("{x:.16e}");
    let c = cmp_decimal(&parse_own(&long), x);
    let out = if c == Ordering::Equal || c == side {
        long
    } else {
        // Move one unit in the 17th digit toward `side`; that unit is below one ulp.
        let toward_larger_magnitude = (side == Ordering::Greater) == (x > 0.0);
        bump_last_digit(&long, if toward_larger_magnitude { 1 } else { -1 })
    };
    debug_assert!({
        let c = cmp_decimal(&parse_own(&out), x);
        c == Ordering::Equal || c == side
    });
    out
}
