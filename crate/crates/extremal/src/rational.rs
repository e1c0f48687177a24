//! The sole scalar type of the library: arbitrary-precision rationals.
//!
//! Rationals cross the CLI boundary as canonical lowest-terms strings,
//! `"p/q"` with the sign on `p`, or a bare integer when `q = 1`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;

use crate::error::{Error, Result};

pub type Rational = BigRational;

/// Shorthand for small literal rationals in code and tests.
pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn rat_int(num: i64) -> Rational {
    Rational::from(BigInt::from(num))
}

/// Canonical string form: lowest terms, `p/q` or plain `p`.
pub fn format_rational(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let (num_str, den_str) = match s.split_once('/') {
        Some((n, d)) => (n, d),
        None => (s, "1"),
    };
    let num: BigInt = num_str
        .parse()
        .map_err(|_| Error::invalid(format!("cannot parse rational numerator in {s:?}")))?;
    let den: BigInt = den_str
        .parse()
        .map_err(|_| Error::invalid(format!("cannot parse rational denominator in {s:?}")))?;
    if den == BigInt::from(0) {
        return Err(Error::invalid(format!("zero denominator in {s:?}")));
    }
    Ok(Rational::new(num, den))
}

/// Serde helper: emit a rational as its canonical string.
pub fn serialize_rational<S: serde::Serializer>(
    r: &Rational,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&format_rational(r))
}

/// Serde helper for optional rationals; `None` stays `null`.
pub fn serialize_opt_rational<S: serde::Serializer>(
    r: &Option<Rational>,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    match r {
        Some(v) => s.serialize_some(&format_rational(v)),
        None => s.serialize_none(),
    }
}
