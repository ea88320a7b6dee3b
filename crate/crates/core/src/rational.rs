//! Exact rational scalars and their textual forms.
//!
//! Every geometric predicate in this crate runs on [`Rational`], an
//! arbitrary-precision fraction kept in lowest terms with a positive
//! denominator. Text forms accepted on input are integers (`-7`), fractions
//! (`3/5`) and finite decimals (`-0.125`); output is always the canonical
//! `p` or `p/q` form.

use std::fmt;

use num::{BigInt, BigRational, One, Signed, Zero};
use thiserror::Error;

pub type Rational = BigRational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseRationalError {
    #[error("empty number")]
    Empty,
    #[error("invalid number `{0}`")]
    Invalid(String),
    #[error("zero denominator in `{0}`")]
    ZeroDenominator(String),
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// `n/d` reduced. Panics on `d == 0`.
pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn zero() -> Rational {
    Rational::zero()
}

pub fn one() -> Rational {
    Rational::one()
}

pub fn half() -> Rational {
    rat(1, 2)
}

pub fn parse_rational(text: &str) -> Result<Rational, ParseRationalError> {
    let s = text.trim();
    if s.is_empty() {
        return Err(ParseRationalError::Empty);
    }
    if let Some((num, den)) = s.split_once('/') {
        let n = parse_integer(num).ok_or_else(|| ParseRationalError::Invalid(s.into()))?;
        let d = parse_unsigned(den).ok_or_else(|| ParseRationalError::Invalid(s.into()))?;
        if d.is_zero() {
            return Err(ParseRationalError::ZeroDenominator(s.into()));
        }
        return Ok(Rational::new(n, d));
    }
    if let Some((whole, frac)) = s.split_once('.') {
        let (negative, whole) = match whole.strip_prefix('-') {
            Some(rest) => (true, rest),
            None => (false, whole.strip_prefix('+').unwrap_or(whole)),
        };
        if whole.is_empty() && frac.is_empty() {
            return Err(ParseRationalError::Invalid(s.into()));
        }
        let digits_ok = |p: &str| p.bytes().all(|b| b.is_ascii_digit());
        if !digits_ok(whole) || !digits_ok(frac) {
            return Err(ParseRationalError::Invalid(s.into()));
        }
        let mut joined = String::with_capacity(whole.len() + frac.len() + 1);
        joined.push_str(whole);
        joined.push_str(frac);
        let mut n: BigInt = if joined.is_empty() { BigInt::zero() } else { joined.parse().unwrap() };
        if negative {
            n = -n;
        }
        let d = num::pow(BigInt::from(10), frac.len());
        return Ok(Rational::new(n, d));
    }
    parse_integer(s)
        .map(Rational::from_integer)
        .ok_or_else(|| ParseRationalError::Invalid(s.into()))
}

fn parse_integer(s: &str) -> Option<BigInt> {
    let body = s.strip_prefix('-').or_else(|| s.strip_prefix('+')).unwrap_or(s);
    if body.is_empty() || !body.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    s.parse().ok()
}

fn parse_unsigned(s: &str) -> Option<BigInt> {
    if s.is_empty() || !s.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    s.parse().ok()
}

/// Canonical text: `p` for integers, `p/q` otherwise.
pub fn format_rational(r: &Rational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Lossy conversion used only for plot output.
pub fn to_f64(r: &Rational) -> f64 {
    use num::ToPrimitive;
    r.to_f64().unwrap_or(f64::NAN)
}

pub fn sign(r: &Rational) -> i32 {
    if r.is_positive() {
        1
    } else if r.is_negative() {
        -1
    } else {
        0
    }
}

/// Display adaptor for canonical rational text.
pub struct Canonical<'a>(pub &'a Rational);

impl fmt::Display for Canonical<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_rational(self.0))
    }
}

/// Serde adaptors writing rationals as canonical strings.
pub mod serde_rational {
    use super::*;
    use serde::{de::Error as _, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(r: &Rational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&format_rational(r))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rational, D::Error> {
        let text = String::deserialize(d)?;
        parse_rational(&text).map_err(D::Error::custom)
    }
}

pub mod serde_rational_array {
    use super::*;
    use serde::{de::Error as _, ser::SerializeSeq, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer, const N: usize>(v: &[Rational; N], s: S) -> Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(N))?;
        for r in v {
            seq.serialize_element(&format_rational(r))?;
        }
        seq.end()
    }

    pub fn deserialize<'de, D: Deserializer<'de>, const N: usize>(d: D) -> Result<[Rational; N], D::Error> {
        let items = Vec::<String>::deserialize(d)?;
        if items.len() != N {
            return Err(D::Error::custom(format!("expected {N} coordinates, got {}", items.len())));
        }
        let parsed = items
            .iter()
            .map(|t| parse_rational(t))
            .collect::<Result<Vec<_>, _>>()
            .map_err(D::Error::custom)?;
        Ok(parsed.try_into().expect("length checked"))
    }
}

/// `Vec<[Rational; N]>` as nested string arrays.
pub mod serde_rational_arrays {
    use super::*;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    #[derive(Serialize, Deserialize)]
    #[serde(transparent)]
    struct Row<const N: usize>(#[serde(with = "super::serde_rational_array")] [Rational; N]);

    pub fn serialize<S: Serializer, const N: usize>(v: &[[Rational; N]], s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(v.iter().map(|r| Row(r.clone())))
    }

    pub fn deserialize<'de, D: Deserializer<'de>, const N: usize>(d: D) -> Result<Vec<[Rational; N]>, D::Error> {
        Ok(Vec::<Row<N>>::deserialize(d)?.into_iter().map(|r| r.0).collect())
    }
}
