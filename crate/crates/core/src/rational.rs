//! Small helpers on exact rationals.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::error::{AdeleError, Result};

/// Nonnegative generator of the subgroup `aℤ + bℤ` of ℚ.
///
/// For reduced `a = p/q`, `b = r/s` this is `gcd(p·s, r·q) / (q·s)`.
pub fn rgcd(a: &BigRational, b: &BigRational) -> BigRational {
    if a.is_zero() {
        return b.abs();
    }
    if b.is_zero() {
        return a.abs();
    }
    let num = (a.numer() * b.denom()).gcd(&(b.numer() * a.denom()));
    BigRational::new(num, a.denom() * b.denom())
}

/// `q - floor(q)`, the representative of `q` in `[0, 1)`.
pub fn frac_mod_one(q: &BigRational) -> BigRational {
    q - q.floor()
}

/// Parses `p/q`, `p`, or `-p/q`.
pub fn parse_rational(s: &str) -> Result<BigRational> {
    let s = s.trim();
    let bad = || AdeleError::Parse(format!("not a rational literal: {s:?}"));
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let num: BigInt = num.parse().map_err(|_| bad())?;
    let den: BigInt = den.parse().map_err(|_| bad())?;
    if den.is_zero() {
        return Err(AdeleError::Parse(format!("zero denominator in {s:?}")));
    }
    Ok(BigRational::new(num, den))
}

/// Formats a rational as `p/q`, or `p` for integers.
pub fn format_rational(q: &BigRational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}
