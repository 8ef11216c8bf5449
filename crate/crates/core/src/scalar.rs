//! Exact rational scalars.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

pub type Rational = num_rational::BigRational;

pub fn rat(numer: i64, denom: i64) -> Rational {
    Rational::new(BigInt::from(numer), BigInt::from(denom))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Parses `p`, `-p`, or `p/q` with `q != 0`. Decimal points are rejected.
pub fn parse_rational(text: &str) -> Result<Rational> {
    let text = text.trim();
    let (num, den) = match text.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (text, "1"),
    };
    let parse = |s: &str| s.parse::<BigInt>().map_err(|_| Error::Parse(format!("invalid rational `{text}`")));
    let num = parse(num)?;
    let den = parse(den)?;
    if den.is_zero() {
        return Err(Error::Parse(format!("zero denominator in `{text}`")));
    }
    Ok(Rational::new(num, den))
}

pub fn format_rational(q: &Rational) -> String {
    q.to_string()
}

pub fn factorial_inverse(k: usize) -> Rational {
    let mut f = BigInt::one();
    for i in 2..=k {
        f *= BigInt::from(i);
    }
    Rational::new(BigInt::one(), f)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_format_round_trip() {
        for text in ["0", "3", "-1/2", "6/4", "-12/8"] {
            let q = parse_rational(text).unwrap();
            assert_eq!(parse_rational(&format_rational(&q)).unwrap(), q);
        }
        assert_eq!(parse_rational("6/4").unwrap(), rat(3, 2));
        assert_eq!(format_rational(&rat(-6, 4)), "-3/2");
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("0.5").is_err());
    }

    #[test]
    fn inverse_factorials() {
        assert_eq!(factorial_inverse(0), int(1));
        assert_eq!(factorial_inverse(4), rat(1, 24));
    }
}
