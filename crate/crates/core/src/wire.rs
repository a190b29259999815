//! JSON encoding of arbitrary-precision integers.
//!
//! Values with magnitude below 2^53 round-trip through an f64, so they are
//! emitted as plain JSON numbers; anything larger becomes a decimal string.
//! Readers accept both forms.

use std::fmt;
use std::str::FromStr;

use num::bigint::BigInt;
use num::{BigUint, ToPrimitive};
use serde::de::{self, Visitor};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

const SAFE_LIMIT: i64 = 1 << 53;

pub fn serialize_bigint<S: Serializer>(v: &BigInt, ser: S) -> Result<S::Ok, S::Error> {
    match v.to_i64() {
        Some(small) if small.abs() < SAFE_LIMIT => ser.serialize_i64(small),
        _ => ser.serialize_str(&v.to_string()),
    }
}

struct BigIntVisitor;

impl<'de> Visitor<'de> for BigIntVisitor {
    type Value = BigInt;

    fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
        f.write_str("an integer or a decimal string")
    }

    fn visit_i64<E: de::Error>(self, v: i64) -> Result<BigInt, E> {
        Ok(BigInt::from(v))
    }

    fn visit_u64<E: de::Error>(self, v: u64) -> Result<BigInt, E> {
        Ok(BigInt::from(v))
    }

    fn visit_str<E: de::Error>(self, v: &str) -> Result<BigInt, E> {
        BigInt::from_str(v).map_err(|_| E::custom(format!("not an integer: {v:?}")))
    }
}

pub fn deserialize_bigint<'de, D: Deserializer<'de>>(de: D) -> Result<BigInt, D::Error> {
    de.deserialize_any(BigIntVisitor)
}

/// Wrapper for a single arbitrary-precision integer in JSON position.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JsonInt(pub BigInt);

impl Serialize for JsonInt {
    fn serialize<S: Serializer>(&self, ser: S) -> Result<S::Ok, S::Error> {
        serialize_bigint(&self.0, ser)
    }
}

impl<'de> Deserialize<'de> for JsonInt {
    fn deserialize<D: Deserializer<'de>>(de: D) -> Result<Self, D::Error> {
        deserialize_bigint(de).map(JsonInt)
    }
}

/// `#[serde(with = "crate::wire::biguint_repr")]` for unsigned counts and bounds.
pub mod biguint_repr {
    use super::*;

    pub fn serialize<S: Serializer>(v: &BigUint, ser: S) -> Result<S::Ok, S::Error> {
        serialize_bigint(&BigInt::from(v.clone()), ser)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(de: D) -> Result<BigUint, D::Error> {
        let v = deserialize_bigint(de)?;
        v.to_biguint()
            .ok_or_else(|| de::Error::custom("expected a non-negative integer"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num::Num;

    #[test]
    fn small_values_stay_numbers() {
        let v = JsonInt(BigInt::from(-42));
        assert_eq!(serde_json::to_string(&v).unwrap(), "-42");
        let back: JsonInt = serde_json::from_str("-42").unwrap();
        assert_eq!(back, v);
    }

    #[test]
    fn large_values_become_strings() {
        let big = BigInt::from_str_radix("123456789012345678901234567890", 10).unwrap();
        let v = JsonInt(big.clone());
        let text = serde_json::to_string(&v).unwrap();
        assert_eq!(text, "\"123456789012345678901234567890\"");
        let back: JsonInt = serde_json::from_str(&text).unwrap();
        assert_eq!(back.0, big);
    }

    #[test]
    fn boundary_is_exact() {
        let at_limit = BigInt::from(1i64 << 53);
        let text = serde_json::to_string(&JsonInt(at_limit)).unwrap();
        assert!(text.starts_with('"'));
        let below = BigInt::from((1i64 << 53) - 1);
        let text = serde_json::to_string(&JsonInt(below)).unwrap();
        assert!(!text.starts_with('"'));
    }
}
