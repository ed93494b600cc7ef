//! Exact rational numbers and the handful of helpers the rest of the crate
//! needs on top of `num-rational`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::{Error, Result};

pub type Rational = num_rational::BigRational;

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn frac(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Parses `"a/b"` or an integer. Decimals are rejected.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let t = s.trim();
    let err = |msg: &str| Error::Parse { pos: 0, msg: format!("{msg}: {s:?}") };
    if t.is_empty() {
        return Err(err("empty rational"));
    }
    let parse_int = |x: &str| -> Result<BigInt> {
        let x = x.trim();
        let digits = x.strip_prefix('-').unwrap_or(x);
        if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
            return Err(err("expected an integer or a/b"));
        }
        x.parse::<BigInt>().map_err(|_| err("expected an integer or a/b"))
    };
    match t.split_once('/') {
        Some((n, d)) => {
            let n = parse_int(n)?;
            let d = parse_int(d)?;
            if d.is_zero() {
                return Err(err("zero denominator"));
            }
            Ok(Rational::new(n, d))
        }
        None => Ok(Rational::from_integer(parse_int(t)?)),
    }
}

/// `"a/b"` in lowest terms, or just `"a"` for integers.
pub fn format_rational(c: &Rational) -> String {
    if c.is_integer() {
        c.numer().to_string()
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

pub fn ceil(c: &Rational) -> BigInt {
    c.ceil().to_integer()
}

pub fn floor(c: &Rational) -> BigInt {
    c.floor().to_integer()
}

/// Representative of `c` modulo 1 in the half-open interval (0, 1].
pub fn class_of(c: &Rational) -> Rational {
    c - Rational::from_integer(ceil(c)) + Rational::one()
}

/// Numerator and denominator as `i128`, for hot loops.
pub(crate) fn to_i128_pair(c: &Rational) -> Result<(i128, i128)> {
    match (c.numer().to_i128(), c.denom().to_i128()) {
        (Some(n), Some(d)) => Ok((n, d)),
        _ => Err(Error::Overflow),
    }
}

pub fn lcm_of_denominators<'a>(it: impl IntoIterator<Item = &'a Rational>) -> BigInt {
    it.into_iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()))
}

pub(crate) fn is_positive(c: &Rational) -> bool {
    c.is_positive()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_format() {
        assert_eq!(parse_rational("5/6").unwrap(), frac(5, 6));
        assert_eq!(parse_rational(" 10/4 ").unwrap(), frac(5, 2));
        assert_eq!(parse_rational("3").unwrap(), int(3));
        assert!(parse_rational("0.5").is_err());
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("").is_err());
        assert_eq!(format_rational(&frac(10, 4)), "5/2");
        assert_eq!(format_rational(&int(7)), "7");
    }

    #[test]
    fn classes() {
        assert_eq!(class_of(&frac(11, 6)), frac(5, 6));
        assert_eq!(class_of(&int(3)), int(1));
        assert_eq!(class_of(&frac(1, 2)), frac(1, 2));
        assert_eq!(ceil(&frac(7, 3)), BigInt::from(3));
        assert_eq!(floor(&frac(7, 3)), BigInt::from(2));
    }
}
