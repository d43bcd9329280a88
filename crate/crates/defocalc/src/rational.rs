//! Exact rational scalars and their "p/q" text form.
//!
//! The scalar type is `num`'s arbitrary-precision rational, which already
//! keeps values in lowest terms with a positive denominator. This module adds
//! the text conventions used by every file format and report: `p/q`, or just
//! `p` when the denominator is one.

use num::bigint::BigInt;
use num::rational::BigRational;
use num::traits::{One, Zero};

use crate::{Error, Result};

pub type Rat = BigRational;

/// Integer as a rational.
pub fn rat(n: i64) -> Rat {
    BigRational::from_integer(BigInt::from(n))
}

/// `n/d` as a rational, normalized. Panics on d = 0; use [`parse_rat`] for
/// untrusted input.
pub fn rat_frac(n: i64, d: i64) -> Rat {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// Lowest-terms text form: "p/q", or "p" when q = 1.
pub fn format_rat(r: &Rat) -> String {
    r.to_string()
}

/// Parses "p", "-p", or "p/q". Zero denominators are an error, never a panic.
pub fn parse_rat(s: &str) -> Result<Rat> {
    let s = s.trim();
    let (num_s, den_s) = match s.split_once('/') {
        Some((a, b)) => (a.trim(), Some(b.trim())),
        None => (s, None),
    };
    let numer: BigInt = num_s
        .parse()
        .map_err(|_| Error::Parse(format!("bad rational {s:?}")))?;
    let denom: BigInt = match den_s {
        Some(d) => d
            .parse()
            .map_err(|_| Error::Parse(format!("bad rational {s:?}")))?,
        None => BigInt::one(),
    };
    if denom.is_zero() {
        return Err(Error::Parse(format!("zero denominator in {s:?}")));
    }
    Ok(BigRational::new(numer, denom))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trips_and_normalization() {
        assert_eq!(format_rat(&rat_frac(4, 6)), "2/3");
        assert_eq!(format_rat(&rat_frac(-4, 6)), "-2/3");
        assert_eq!(format_rat(&rat_frac(4, -6)), "-2/3");
        assert_eq!(format_rat(&rat(7)), "7");
        assert_eq!(parse_rat("2/3").unwrap(), rat_frac(2, 3));
        assert_eq!(parse_rat(" -14 / 21 ").unwrap(), rat_frac(-2, 3));
        assert_eq!(parse_rat("5").unwrap(), rat(5));
        assert!(parse_rat("1/0").is_err());
        assert!(parse_rat("x").is_err());
        assert!(parse_rat("1/2/3").is_err());
    }
}
