//! Arbitrary-precision rationals and their canonical text form.
//!
//! Values are always kept reduced with a positive denominator (the
//! underlying `BigRational` maintains that invariant on every operation).
//! The text form is `"p/q"`, shortened to `"p"` when the denominator is 1;
//! that form is used everywhere rationals appear in JSON.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use std::fmt;
use std::str::FromStr;

pub type Rat = num_rational::BigRational;

/// `n/d` as a reduced rational. Panics on `d == 0`.
pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

pub fn rat_int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

pub fn format_rat(r: &Rat) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("malformed rational {input:?}: {reason}")]
pub struct ParseRatError {
    pub input: String,
    pub reason: String,
}

impl ParseRatError {
    fn new(input: &str, reason: &str) -> Self {
        ParseRatError { input: input.to_string(), reason: reason.to_string() }
    }
}

pub fn parse_rat(s: &str) -> Result<Rat, ParseRatError> {
    let s = s.trim();
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n, Some(d)),
        None => (s, None),
    };
    let n = BigInt::from_str(num.trim())
        .map_err(|e| ParseRatError::new(s, &format!("bad numerator: {e}")))?;
    let d = match den {
        Some(d) => BigInt::from_str(d.trim())
            .map_err(|e| ParseRatError::new(s, &format!("bad denominator: {e}")))?,
        None => BigInt::one(),
    };
    if d.is_zero() {
        return Err(ParseRatError::new(s, "zero denominator"));
    }
    Ok(Rat::new(n, d))
}

/// Fixed-point decimal rendering with `digits` fractional places, rounding
/// half away from zero. Independent of float formatting, so output is
/// byte-stable across platforms.
pub fn decimal_string(r: &Rat, digits: u32) -> String {
    let scale = BigInt::from(10u32).pow(digits);
    let scaled = r * Rat::from_integer(scale.clone());
    let (num, den) = (scaled.numer().clone(), scaled.denom().clone());
    let doubled = BigInt::from(2) * &num + if num.is_negative() { -&den } else { den.clone() };
    let rounded = doubled / (BigInt::from(2) * den);
    let neg = rounded.is_negative();
    let abs = rounded.abs();
    let (int_part, frac_part) = (&abs / &scale, &abs % &scale);
    let mut out = String::new();
    if neg && !(int_part.is_zero() && frac_part.is_zero()) {
        out.push('-');
    }
    out.push_str(&int_part.to_string());
    if digits > 0 {
        let frac = frac_part.to_string();
        out.push('.');
        for _ in frac.len()..digits as usize {
            out.push('0');
        }
        out.push_str(&frac);
    }
    out
}

/// Serde adapter: rationals as `"p/q"` strings.
pub mod serde_rat {
    use super::*;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(r: &Rat, ser: S) -> Result<S::Ok, S::Error> {
        ser.serialize_str(&format_rat(r))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(de: D) -> Result<Rat, D::Error> {
        let s = String::deserialize(de)?;
        parse_rat(&s).map_err(serde::de::Error::custom)
    }
}

/// Serde adapter: sequences of rationals as string lists.
pub mod serde_rat_vec {
    use super::*;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &[Rat], ser: S) -> Result<S::Ok, S::Error> {
        ser.collect_seq(v.iter().map(format_rat))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(de: D) -> Result<Vec<Rat>, D::Error> {
        let strs = Vec::<String>::deserialize(de)?;
        strs.iter().map(|s| parse_rat(s).map_err(serde::de::Error::custom)).collect()
    }
}

/// Wrapper for displaying a rational in canonical text form.
pub struct DisplayRat<'a>(pub &'a Rat);

impl fmt::Display for DisplayRat<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_rat(self.0))
    }
}
