//! Exact scalar types: possibility degrees, utilities and kappa ranks.
//!
//! Every quantity is an arbitrary-precision rational (or an extended
//! integer for ranks). Nothing in this crate compares numbers with a
//! tolerance.

use std::fmt;
use std::ops::Add;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{de, Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum NumberError {
    #[error("malformed number `{0}`")]
    Malformed(String),
    #[error("zero denominator in `{0}`")]
    ZeroDenominator(String),
    #[error("degree {0} is outside [0, 1]")]
    DegreeOutOfRange(String),
    #[error("utility {0} is negative")]
    NegativeUtility(String),
    #[error("kappa rank `{0}` is not a non-negative integer or `inf`")]
    BadRank(String),
}

/// Parses `"3"`, `"0.51"`, `"-2.5"` or `"51/100"` into an exact rational.
pub fn parse_rational(text: &str) -> Result<BigRational, NumberError> {
    let s = text.trim();
    let malformed = || NumberError::Malformed(text.to_string());
    if let Some((num, den)) = s.split_once('/') {
        let num = parse_integer(num.trim()).ok_or_else(malformed)?;
        let den = parse_integer(den.trim()).ok_or_else(malformed)?;
        if den.is_zero() {
            return Err(NumberError::ZeroDenominator(text.to_string()));
        }
        return Ok(BigRational::new(num, den));
    }
    let (negative, body) = match s.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, s.strip_prefix('+').unwrap_or(s)),
    };
    let (int_part, frac_part) = body.split_once('.').unwrap_or((body, ""));
    if int_part.is_empty() && frac_part.is_empty() {
        return Err(malformed());
    }
    let all_digits = |p: &str| p.bytes().all(|b| b.is_ascii_digit());
    if !all_digits(int_part)
        || !all_digits(frac_part)
        || (body.contains('.') && frac_part.is_empty())
    {
        return Err(malformed());
    }
    let digits = format!("{int_part}{frac_part}");
    let numer: BigInt = digits.parse().map_err(|_| malformed())?;
    let denom = num_traits::pow(BigInt::from(10), frac_part.len());
    let value = BigRational::new(numer, denom);
    Ok(if negative { -value } else { value })
}

fn parse_integer(s: &str) -> Option<BigInt> {
    let digits = s.strip_prefix('-').unwrap_or(s);
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    s.parse().ok()
}

/// Shortest exact decimal when the expansion terminates, `p/q` otherwise.
pub fn render_rational(value: &BigRational) -> String {
    match terminating_decimal(value) {
        Some(decimal) => decimal,
        None => format!("{}/{}", value.numer(), value.denom()),
    }
}

/// `p/q` followed by the decimal expansion when it terminates.
pub fn render_rational_long(value: &BigRational) -> String {
    let fraction = if value.is_integer() {
        value.numer().to_string()
    } else {
        format!("{}/{}", value.numer(), value.denom())
    };
    match terminating_decimal(value) {
        Some(decimal) if decimal != fraction => format!("{fraction} ({decimal})"),
        _ => fraction,
    }
}

fn terminating_decimal(value: &BigRational) -> Option<String> {
    let mut den = value.denom().clone();
    let two = BigInt::from(2);
    let five = BigInt::from(5);
    let mut twos = 0usize;
    let mut fives = 0usize;
    while den.is_even() {
        den /= &two;
        twos += 1;
    }
    while (&den % &five).is_zero() {
        den /= &five;
        fives += 1;
    }
    if !den.is_one() {
        return None;
    }
    let places = twos.max(fives);
    let scaled = value * BigRational::from_integer(num_traits::pow(BigInt::from(10), places));
    debug_assert!(scaled.is_integer());
    let digits = scaled.numer().abs().to_string();
    let sign = if value.is_negative() { "-" } else { "" };
    if places == 0 {
        return Some(format!("{sign}{digits}"));
    }
    let padded = format!("{digits:0>width$}", width = places + 1);
    let (int_part, frac_part) = padded.split_at(padded.len() - places);
    Some(format!("{sign}{int_part}.{frac_part}"))
}

/// A possibility degree in `[0, 1]`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Degree(BigRational);

impl Degree {
    pub fn new(value: BigRational) -> Result<Self, NumberError> {
        if value.is_negative() || value > BigRational::one() {
            return Err(NumberError::DegreeOutOfRange(render_rational(&value)));
        }
        Ok(Degree(value))
    }

    /// Convenience constructor for `numer / denom`.
    pub fn ratio(numer: i64, denom: i64) -> Result<Self, NumberError> {
        if denom == 0 {
            return Err(NumberError::ZeroDenominator(format!("{numer}/{denom}")));
        }
        Self::new(BigRational::new(numer.into(), denom.into()))
    }

    pub fn zero() -> Self {
        Degree(BigRational::zero())
    }

    pub fn one() -> Self {
        Degree(BigRational::one())
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.0.is_one()
    }

    /// `1 - x`.
    pub fn complement(&self) -> Self {
        Degree(BigRational::one() - &self.0)
    }

    pub fn value(&self) -> &BigRational {
        &self.0
    }

    pub fn into_inner(self) -> BigRational {
        self.0
    }
}

/// A non-negative utility.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Utility(BigRational);

impl Utility {
    pub fn new(value: BigRational) -> Result<Self, NumberError> {
        if value.is_negative() {
            return Err(NumberError::NegativeUtility(render_rational(&value)));
        }
        Ok(Utility(value))
    }

    pub fn ratio(numer: i64, denom: i64) -> Result<Self, NumberError> {
        if denom == 0 {
            return Err(NumberError::ZeroDenominator(format!("{numer}/{denom}")));
        }
        Self::new(BigRational::new(numer.into(), denom.into()))
    }

    pub fn integer(value: u64) -> Self {
        Utility(BigRational::from_integer(value.into()))
    }

    pub fn zero() -> Self {
        Utility(BigRational::zero())
    }

    pub fn value(&self) -> &BigRational {
        &self.0
    }

    /// True when the utility lies on the qualitative scale `[0, 1]`.
    pub fn is_unit(&self) -> bool {
        self.0 <= BigRational::one()
    }

    /// Reads a `[0, 1]` utility as a degree on the commensurate scale.
    pub fn as_degree(&self) -> Option<Degree> {
        Degree::new(self.0.clone()).ok()
    }
}

/// Kappa rank: a non-negative integer or `+inf`.
///
/// `Finite` sorts before `Infinite`, so the derived order treats infinity as
/// the largest rank.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum KappaRank {
    Finite(u64),
    Infinite,
}

impl KappaRank {
    pub const ZERO: KappaRank = KappaRank::Finite(0);

    pub fn is_finite(self) -> bool {
        matches!(self, KappaRank::Finite(_))
    }

    pub fn finite(self) -> Option<u64> {
        match self {
            KappaRank::Finite(k) => Some(k),
            KappaRank::Infinite => None,
        }
    }

    /// Saturating addition; anything plus infinity is infinity.
    pub fn saturating_add(self, other: KappaRank) -> KappaRank {
        match (self, other) {
            (KappaRank::Finite(a), KappaRank::Finite(b)) => a
                .checked_add(b)
                .map_or(KappaRank::Infinite, KappaRank::Finite),
            _ => KappaRank::Infinite,
        }
    }
}

impl Add for KappaRank {
    type Output = KappaRank;

    fn add(self, other: KappaRank) -> KappaRank {
        self.saturating_add(other)
    }
}

impl From<u64> for KappaRank {
    fn from(k: u64) -> Self {
        KappaRank::Finite(k)
    }
}

macro_rules! rational_text_impls {
    ($ty:ident, $ctor:path) => {
        impl FromStr for $ty {
            type Err = NumberError;

            fn from_str(s: &str) -> Result<Self, Self::Err> {
                $ctor(parse_rational(s)?)
            }
        }

        impl fmt::Display for $ty {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str(&render_rational(&self.0))
            }
        }

        impl fmt::Debug for $ty {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                write!(f, "{}({})", stringify!($ty), render_rational(&self.0))
            }
        }

        impl Serialize for $ty {
            fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
                serializer.serialize_str(&self.to_string())
            }
        }

        impl<'de> Deserialize<'de> for $ty {
            fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
                let text = String::deserialize(deserializer)?;
                text.parse().map_err(de::Error::custom)
            }
        }
    };
}

rational_text_impls!(Degree, Degree::new);
rational_text_impls!(Utility, Utility::new);

impl FromStr for KappaRank {
    type Err = NumberError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let t = s.trim();
        if t.eq_ignore_ascii_case("inf") || t == "∞" || t == "+inf" {
            return Ok(KappaRank::Infinite);
        }
        t.parse::<u64>()
            .map(KappaRank::Finite)
            .map_err(|_| NumberError::BadRank(s.to_string()))
    }
}

impl fmt::Display for KappaRank {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            KappaRank::Finite(k) => write!(f, "{k}"),
            KappaRank::Infinite => f.write_str("inf"),
        }
    }
}

impl fmt::Debug for KappaRank {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "κ{self}")
    }
}

impl Serialize for KappaRank {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for KappaRank {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let text = String::deserialize(deserializer)?;
        text.parse().map_err(de::Error::custom)
    }
}

/// Lossy view for reporting only; never used in a comparison.
pub fn approx_f64(value: &BigRational) -> f64 {
    value.to_f64().unwrap_or(f64::NAN)
}
