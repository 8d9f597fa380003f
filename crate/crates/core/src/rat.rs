//! Exact rational helpers: construction, parsing, and the fixed `p/q`
//! rendering used by every CSV/JSON surface of this crate.

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Rational from an integer.
pub fn rat_int(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// Rational `p/q` (q != 0).
pub fn rat(p: i64, q: i64) -> BigRational {
    BigRational::new(BigInt::from(p), BigInt::from(q))
}

/// Render as `p/q` with an explicit positive denominator, e.g. `-3/4`, `1/1`.
/// Fixed format: machine-parseable and stable across runs.
pub fn rat_str(x: &BigRational) -> String {
    format!("{}/{}", x.numer(), x.denom())
}

/// Decimal rendering with six fractional digits (for human-facing columns;
/// the exact value always travels alongside as `p/q`).
pub fn rat_dec(x: &BigRational) -> String {
    // Exact scaled division keeps this deterministic even when the value
    // does not fit in an f64.
    let scaled = (x * rat_int(1_000_000)).round();
    let micros = scaled.to_integer();
    let neg = micros.is_negative();
    let abs = micros.abs();
    let million = BigInt::from(1_000_000);
    let (int_part, frac_part) = (abs.clone() / &million, abs % &million);
    format!(
        "{}{}.{:06}",
        if neg { "-" } else { "" },
        int_part,
        frac_part.to_u64().unwrap_or(0)
    )
}

/// Parse `p`, `p/q`, or `-p/q` into an exact rational.
pub fn parse_rat(text: &str) -> Result<BigRational> {
    let s = text.trim();
    let mk_err = || Error::Parse(format!("expected rational `p` or `p/q`, got {:?}", s));
    if let Some((p, q)) = s.split_once('/') {
        let num: BigInt = p.trim().parse().map_err(|_| mk_err())?;
        let den: BigInt = q.trim().parse().map_err(|_| mk_err())?;
        if den.is_zero() {
            return Err(Error::Parse(format!("zero denominator in {:?}", s)));
        }
        Ok(BigRational::new(num, den))
    } else {
        let num: BigInt = s.parse().map_err(|_| mk_err())?;
        Ok(BigRational::from_integer(num))
    }
}

/// Midpoint of two rationals.
pub fn midpoint(a: &BigRational, b: &BigRational) -> BigRational {
    (a + b) / rat_int(2)
}

/// True if `x` is an integer.
pub fn is_integer(x: &BigRational) -> bool {
    x.denom().is_one()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn renders_with_explicit_denominator() {
        assert_eq!(rat_str(&rat(1, 2)), "1/2");
        assert_eq!(rat_str(&rat_int(3)), "3/1");
        assert_eq!(rat_str(&rat(-2, 4)), "-1/2");
    }

    #[test]
    fn decimal_is_fixed_width() {
        assert_eq!(rat_dec(&rat(1, 2)), "0.500000");
        assert_eq!(rat_dec(&rat(-1, 3)), "-0.333333");
        assert_eq!(rat_dec(&rat_int(2)), "2.000000");
    }

    #[test]
    fn parses_both_forms() {
        assert_eq!(parse_rat("3/6").unwrap(), rat(1, 2));
        assert_eq!(parse_rat("-4").unwrap(), rat_int(-4));
        assert_eq!(parse_rat(" 7 / 2 ").unwrap(), rat(7, 2));
        assert!(parse_rat("1/0").is_err());
        assert!(parse_rat("x").is_err());
    }
}
