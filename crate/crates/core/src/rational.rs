//! Scalar type and small helpers around it.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// Arbitrary-precision rational, always kept in lowest terms with a positive
/// denominator.
pub type Rational = num_rational::BigRational;

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn frac(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// Parses `"p/q"` or `"p"`. Rejects a zero denominator instead of panicking.
pub fn parse(s: &str) -> Option<Rational> {
    let s = s.trim();
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let num: BigInt = num.parse().ok()?;
    let den: BigInt = den.parse().ok()?;
    if den.is_zero() {
        return None;
    }
    Some(Rational::new(num, den))
}

/// `"p/q"`, or `"p"` when the denominator is 1.
pub fn format(r: &Rational) -> String {
    r.to_string()
}

pub fn is_negative_integer(r: &Rational) -> bool {
    r.is_integer() && r.is_negative()
}

/// True when numerator and denominator are coprime and the denominator is positive.
pub fn is_canonical(r: &Rational) -> bool {
    r.denom().is_positive() && r.numer().gcd(r.denom()).is_one()
}

/// Decimal approximation with `digits` places, computed from the exact value.
pub fn to_decimal(r: &Rational, digits: usize) -> String {
    let scale = BigInt::from(10u32).pow(digits as u32);
    let scaled = r * Rational::from_integer(scale.clone());
    // round half away from zero
    let half = frac(1, 2);
    let rounded = if scaled.is_negative() {
        -((-scaled) + half).floor()
    } else {
        (scaled + half).floor()
    };
    let n = rounded.to_integer();
    let neg = n.is_negative();
    let mut s = n.abs().to_string();
    if digits == 0 {
        return if neg { format!("-{s}") } else { s };
    }
    while s.len() <= digits {
        s.insert(0, '0');
    }
    let point = s.len() - digits;
    s.insert(point, '.');
    if neg {
        s.insert(0, '-');
    }
    s
}
