//! Parsing of the `"p/q"` rational wire format.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

pub type Rational = BigRational;

pub fn parse_rational(s: &str) -> Result<BigRational, String> {
    let s = s.trim();
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let n: BigInt = n.parse().map_err(|_| format!("invalid rational {s:?}"))?;
    let d: BigInt = d.parse().map_err(|_| format!("invalid rational {s:?}"))?;
    if d.is_zero() {
        return Err(format!("zero denominator in {s:?}"));
    }
    Ok(BigRational::new(n, d))
}

/// Parses `"p/q"` into a reduced small fraction.
pub fn parse_small_fraction(s: &str) -> Result<num_rational::Ratio<i64>, String> {
    let s = s.trim();
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let n: i64 = n.parse().map_err(|_| format!("invalid fraction {s:?}"))?;
    let d: i64 = d.parse().map_err(|_| format!("invalid fraction {s:?}"))?;
    if d == 0 {
        return Err(format!("zero denominator in {s:?}"));
    }
    Ok(num_rational::Ratio::new(n, d))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses() {
        assert_eq!(parse_rational("6/-4").unwrap(), BigRational::new((-3).into(), 2.into()));
        assert_eq!(parse_rational(" 7 ").unwrap(), BigRational::from_integer(7.into()));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("a/b").is_err());
        assert_eq!(parse_small_fraction("2/4").unwrap(), num_rational::Ratio::new(1, 2));
    }
}
