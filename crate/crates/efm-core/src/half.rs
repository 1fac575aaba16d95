//! Exact half-integers and weight vectors.
//!
//! A half-integer is stored as its double, so `HalfInt(3)` is 3/2 and
//! `HalfInt(-4)` is -2. Weights are vectors of half-integers; all
//! coordinates of a weight attached to a module with parameter `kappa2`
//! share the parity of `kappa2`.

use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::EfmError;

/// An exact half-integer, stored doubled.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct HalfInt(i64);

impl HalfInt {
    pub const ZERO: HalfInt = HalfInt(0);

    /// Builds from the doubled value: `from_doubled(3)` is 3/2.
    pub fn from_doubled(d: i64) -> Self {
        HalfInt(d)
    }

    pub fn from_int(n: i64) -> Self {
        HalfInt(2 * n)
    }

    pub fn doubled(self) -> i64 {
        self.0
    }

    pub fn is_integer(self) -> bool {
        self.0 % 2 == 0
    }

    /// The integer value, or `None` for a proper half-integer.
    pub fn as_int(self) -> Option<i64> {
        if self.is_integer() {
            Some(self.0 / 2)
        } else {
            None
        }
    }

    pub fn abs(self) -> Self {
        HalfInt(self.0.abs())
    }

    pub fn is_positive(self) -> bool {
        self.0 > 0
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }

    pub fn to_rational(self) -> BigRational {
        BigRational::new(BigInt::from(self.0), BigInt::from(2))
    }

    /// Parses "5/2", "-3/2", "4" or "-1".
    pub fn parse(s: &str) -> Result<Self, EfmError> {
        let s = s.trim();
        let bad = || EfmError::InvalidParameters(format!("cannot parse half-integer `{s}`"));
        if let Some((num, den)) = s.split_once('/') {
            if den.trim() != "2" {
                return Err(bad());
            }
            let n: i64 = num.trim().parse().map_err(|_| bad())?;
            Ok(HalfInt(n))
        } else {
            let n: i64 = s.parse().map_err(|_| bad())?;
            Ok(HalfInt::from_int(n))
        }
    }
}

impl Add for HalfInt {
    type Output = HalfInt;
    fn add(self, rhs: HalfInt) -> HalfInt {
        HalfInt(self.0 + rhs.0)
    }
}

impl Sub for HalfInt {
    type Output = HalfInt;
    fn sub(self, rhs: HalfInt) -> HalfInt {
        HalfInt(self.0 - rhs.0)
    }
}

impl Neg for HalfInt {
    type Output = HalfInt;
    fn neg(self) -> HalfInt {
        HalfInt(-self.0)
    }
}

impl fmt::Display for HalfInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0 % 2 == 0 {
            write!(f, "{}", self.0 / 2)
        } else {
            write!(f, "{}/2", self.0)
        }
    }
}

// Half-integers serialize to their display string ("5/2", "-3").
impl Serialize for HalfInt {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for HalfInt {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        HalfInt::parse(&s).map_err(D::Error::custom)
    }
}

impl fmt::Debug for HalfInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// A weight: the joint eigenvalue vector of y_1..y_n.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Weight(pub Vec<HalfInt>);

impl Weight {
    pub fn from_doubled(d: Vec<i64>) -> Self {
        Weight(d.into_iter().map(HalfInt::from_doubled).collect())
    }

    pub fn from_ints(v: &[i64]) -> Self {
        Weight(v.iter().map(|&n| HalfInt::from_int(n)).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn coord(&self, i: usize) -> HalfInt {
        self.0[i - 1]
    }

    pub fn doubled(&self) -> Vec<i64> {
        self.0.iter().map(|h| h.doubled()).collect()
    }

    /// All coordinates satisfy 2*zeta_i == kappa2 (mod 2).
    pub fn parity_matches(&self, kappa2: i64) -> bool {
        self.0.iter().all(|h| (h.doubled() - kappa2) % 2 == 0)
    }

    /// Parses "[0,-1,-2,1]" or "[1/2,-5/2,-7/2]".
    pub fn parse(s: &str) -> Result<Self, EfmError> {
        let s = s.trim();
        let inner = s
            .strip_prefix('[')
            .and_then(|t| t.strip_suffix(']'))
            .ok_or_else(|| {
                EfmError::InvalidParameters(format!("weight must be bracketed: `{s}`"))
            })?;
        let inner = inner.trim();
        if inner.is_empty() {
            return Ok(Weight(Vec::new()));
        }
        inner
            .split(',')
            .map(HalfInt::parse)
            .collect::<Result<Vec<_>, _>>()
            .map(Weight)
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, h) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{h}")?;
        }
        write!(f, "]")
    }
}

impl fmt::Debug for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

// Canonical JSON form is {"doubled": [...]}; an array of strings like
// ["5/2", "-3"] is accepted on input.
impl Serialize for Weight {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = serializer.serialize_struct("Weight", 1)?;
        st.serialize_field("doubled", &self.doubled())?;
        st.end()
    }
}

impl<'de> Deserialize<'de> for Weight {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Repr {
            Doubled { doubled: Vec<i64> },
            Strings(Vec<String>),
        }
        match Repr::deserialize(deserializer)? {
            Repr::Doubled { doubled } => Ok(Weight::from_doubled(doubled)),
            Repr::Strings(v) => v
                .iter()
                .map(|s| HalfInt::parse(s).map_err(D::Error::custom))
                .collect::<Result<Vec<_>, _>>()
                .map(Weight),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn display_and_parse() {
        assert_eq!(HalfInt::from_doubled(5).to_string(), "5/2");
        assert_eq!(HalfInt::from_doubled(-4).to_string(), "-2");
        assert_eq!(HalfInt::parse("5/2").unwrap(), HalfInt::from_doubled(5));
        assert_eq!(HalfInt::parse("-3").unwrap(), HalfInt::from_int(-3));
        assert!(HalfInt::parse("1/3").is_err());
    }

    #[test]
    fn weight_parse_roundtrip() {
        let w = Weight::parse("[1/2,-5/2,-7/2]").unwrap();
        assert_eq!(w.doubled(), vec![1, -5, -7]);
        assert_eq!(w.to_string(), "[1/2,-5/2,-7/2]");
        let v = Weight::parse("[0,-1,-2,1,-5,-6,-4]").unwrap();
        assert_eq!(v.coord(4), HalfInt::from_int(1));
    }

    #[test]
    fn weight_json_forms() {
        let w = Weight::from_doubled(vec![1, -5]);
        let js = serde_json::to_string(&w).unwrap();
        assert_eq!(js, r#"{"doubled":[1,-5]}"#);
        let back: Weight = serde_json::from_str(&js).unwrap();
        assert_eq!(back, w);
        let alt: Weight = serde_json::from_str(r#"["1/2","-5/2"]"#).unwrap();
        assert_eq!(alt, w);
    }

    #[test]
    fn parity() {
        let w = Weight::from_doubled(vec![1, -5, -7]);
        assert!(w.parity_matches(-1));
        assert!(!w.parity_matches(-2));
    }
}
