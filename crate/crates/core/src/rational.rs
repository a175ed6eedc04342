//! Exact rational scalars and their textual form.

use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{CactiError, Result};

/// The scalar field used throughout the crate.
pub type Q = BigRational;

pub fn q(n: i64) -> Q { Q::from_integer(BigInt::from(n)) }

pub fn q_frac(n: i64, d: i64) -> Q { Q::new(BigInt::from(n), BigInt::from(d)) }

pub fn zero() -> Q { Q::zero() }

pub fn one() -> Q { Q::one() }

/// Parses `"p"`, `"-p"` or `"p/q"`.
pub fn parse_q(s: &str) -> Result<Q> {
  let s = s.trim();
  let bad = || CactiError::Parse { pos: 0, msg: format!("invalid rational `{s}`") };
  match s.split_once('/') {
    Some((n, d)) => {
      let n = BigInt::from_str(n.trim()).map_err(|_| bad())?;
      let d = BigInt::from_str(d.trim()).map_err(|_| bad())?;
      if d.is_zero() {
        return Err(bad());
      }
      Ok(Q::new(n, d))
    },
    None => Ok(Q::from_integer(BigInt::from_str(s).map_err(|_| bad())?)),
  }
}

/// Canonical text: integers without denominator, otherwise `p/q` in lowest terms.
pub fn format_q(x: &Q) -> String {
  if x.is_integer() {
    x.numer().to_string()
  } else {
    let (n, d) = (x.numer(), x.denom());
    if d.is_negative() {
      format!("{}/{}", -n, -d)
    } else {
      format!("{n}/{d}")
    }
  }
}

#[cfg(test)]
mod tests {
  use super::*;

  #[test]
  fn parse_and_format() {
    assert_eq!(parse_q("3").unwrap(), q(3));
    assert_eq!(parse_q(" -6/4 ").unwrap(), q_frac(-3, 2));
    assert_eq!(format_q(&q_frac(-6, 4)), "-3/2");
    assert_eq!(format_q(&q(7)), "7");
    assert!(parse_q("1/0").is_err());
    assert!(parse_q("x").is_err());
  }
}
