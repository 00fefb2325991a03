//! Exact rational scalars and the handful of integer helpers the algebra needs.

use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Arbitrary-precision rational, always kept in lowest terms with a positive
/// denominator.
pub type Scalar = BigRational;

pub fn int(v: i64) -> Scalar {
    Scalar::from_integer(BigInt::from(v))
}

pub fn ratio(num: i64, den: i64) -> Scalar {
    Scalar::new(BigInt::from(num), BigInt::from(den))
}

pub fn factorial(k: usize) -> BigInt {
    (1..=k).fold(BigInt::one(), |acc, i| acc * BigInt::from(i))
}

pub fn factorial_q(k: usize) -> Scalar {
    Scalar::from_integer(factorial(k))
}

pub fn binomial(n: usize, k: usize) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u64, |acc, i| acc * (n - i) as u64 / (i + 1) as u64)
}

/// `+1` or `-1` as a scalar.
pub fn sign(s: i8) -> Scalar {
    if s < 0 {
        -Scalar::one()
    } else {
        Scalar::one()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ParseScalarError {
    #[error("empty value")]
    Empty,
    #[error("zero denominator")]
    ZeroDenominator,
    #[error("malformed rational {0:?}")]
    Malformed(String),
}

/// Parses `"a"` or `"a/b"` with optional leading sign on the numerator.
pub fn parse_scalar(text: &str) -> Result<Scalar, ParseScalarError> {
    let text = text.trim();
    if text.is_empty() {
        return Err(ParseScalarError::Empty);
    }
    let (num, den) = match text.split_once('/') {
        Some((a, b)) => (a.trim(), b.trim()),
        None => (text, "1"),
    };
    let malformed = || ParseScalarError::Malformed(text.to_string());
    let num = BigInt::from_str(num).map_err(|_| malformed())?;
    if den.starts_with(['+', '-']) {
        return Err(malformed());
    }
    let den = BigInt::from_str(den).map_err(|_| malformed())?;
    if den.is_zero() {
        return Err(ParseScalarError::ZeroDenominator);
    }
    Ok(Scalar::new(num, den))
}

/// Canonical `"numerator/denominator"` rendering.
pub fn format_scalar(value: &Scalar) -> String {
    format!("{}/{}", value.numer(), value.denom())
}

/// Renders a scalar as an `f64` (lossy; for display only).
pub fn to_f64(value: &Scalar) -> f64 {
    let (num, den) = (value.numer(), value.denom());
    // Scale down very large operands to keep the division in range.
    let bits = num.bits().max(den.bits());
    if bits < 1000 {
        return big_to_f64(num) / big_to_f64(den);
    }
    let shift = bits - 900;
    big_to_f64(&(num >> shift)) / big_to_f64(&(den >> shift))
}

fn big_to_f64(v: &BigInt) -> f64 {
    let magnitude: f64 = v
        .abs()
        .to_u64_digits()
        .1
        .iter()
        .rev()
        .fold(0.0, |acc, &d| acc * 18446744073709551616.0 + d as f64);
    if v.is_negative() {
        -magnitude
    } else {
        magnitude
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_forms() {
        assert_eq!(parse_scalar("3").unwrap(), int(3));
        assert_eq!(parse_scalar("-6/4").unwrap(), ratio(-3, 2));
        assert_eq!(parse_scalar(" 0/7 ").unwrap(), int(0));
        assert_eq!(parse_scalar("1/0"), Err(ParseScalarError::ZeroDenominator));
        assert!(matches!(parse_scalar("1/-2"), Err(ParseScalarError::Malformed(_))));
        assert!(matches!(parse_scalar("x"), Err(ParseScalarError::Malformed(_))));
        assert_eq!(parse_scalar(""), Err(ParseScalarError::Empty));
    }

    #[test]
    fn format_is_reduced() {
        assert_eq!(format_scalar(&ratio(4, -6)), "-2/3");
        assert_eq!(format_scalar(&int(5)), "5/1");
    }

    #[test]
    fn binomials_and_factorials() {
        assert_eq!(binomial(6, 3), 20);
        assert_eq!(binomial(3, 4), 0);
        assert_eq!(factorial(5), BigInt::from(120));
        assert_eq!(factorial(0), BigInt::from(1));
    }

    #[test]
    fn float_rendering() {
        assert!((to_f64(&ratio(1, 3)) - 1.0 / 3.0).abs() < 1e-15);
        assert_eq!(to_f64(&int(-7)), -7.0);
    }
}
