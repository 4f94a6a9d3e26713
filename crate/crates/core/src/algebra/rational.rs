use num::{BigInt, BigRational, One, Zero};

use crate::error::{Error, Result};

/// Shorthand for `numer/denom` as an exact rational. Panics on a zero denominator.
pub fn rational(numer: i64, denom: i64) -> BigRational {
    BigRational::new(BigInt::from(numer), BigInt::from(denom))
}

pub fn rational_from_int<T: Into<BigInt>>(value: T) -> BigRational {
    BigRational::from_integer(value.into())
}

/// Parses `"p/q"` or `"p"` (surrounding whitespace allowed). Denominators of
/// zero are rejected instead of panicking.
pub fn parse_rational(text: &str) -> Result<BigRational> {
    let bad = || Error::InvalidRational(text.to_string());
    let trimmed = text.trim();
    let (numer, denom) = match trimmed.split_once('/') {
        Some((p, q)) => (p.trim(), q.trim()),
        None => (trimmed, "1"),
    };
    let numer: BigInt = numer.parse().map_err(|_| bad())?;
    let denom: BigInt = denom.parse().map_err(|_| bad())?;
    if denom.is_zero() {
        return Err(bad());
    }
    Ok(BigRational::new(numer, denom))
}

/// `"p/q"`, or `"p"` when the denominator is one.
pub fn format_rational(value: &BigRational) -> String {
    if value.denom().is_one() {
        value.numer().to_string()
    } else {
        format!("{}/{}", value.numer(), value.denom())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_format() {
        assert_eq!(parse_rational("6/4").unwrap(), rational(3, 2));
        assert_eq!(parse_rational(" -7 ").unwrap(), rational(-7, 1));
        assert_eq!(parse_rational("3/-6").unwrap(), rational(-1, 2));
        assert_eq!(format_rational(&rational(3, 2)), "3/2");
        assert_eq!(format_rational(&rational(-8, 4)), "-2");
        assert_eq!(format_rational(&rational(0, 5)), "0");
    }

    #[test]
    fn parse_rejects_garbage() {
        for bad in ["", "1/0", "a/2", "1.5", "1/2/3"] {
            assert!(parse_rational(bad).is_err(), "{bad:?} should not parse");
        }
    }

    #[test]
    fn normalized_after_arithmetic() {
        let x = rational(2, 6) + rational(1, 6);
        assert_eq!(x.numer(), &BigInt::from(1));
        assert_eq!(x.denom(), &BigInt::from(2));
        let y = rational(3, 4) * rational(-4, 3);
        assert_eq!(format_rational(&y), "-1");
    }
}
