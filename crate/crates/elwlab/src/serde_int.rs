//! JSON codec for arbitrary-precision integers.
//!
//! Values with magnitude at most `2^53 - 1` serialize as JSON numbers;
//! anything larger becomes a decimal string, so lossy (double-based) JSON
//! consumers never see an integer they would silently round. Deserialization
//! accepts either form.

use num_bigint::{BigInt, BigUint};
use num_traits::ToPrimitive;
use serde::de::{self, Visitor};
use serde::{Deserializer, Serializer};
use std::fmt;

/// Largest integer magnitude that survives a round-trip through an f64.
pub const MAX_SAFE_INTEGER: u64 = (1 << 53) - 1;

pub mod bigint {
    use super::*;

    pub fn serialize<S: Serializer>(v: &BigInt, s: S) -> Result<S::Ok, S::Error> {
        match v.to_i64() {
            Some(small) if small.unsigned_abs() <= MAX_SAFE_INTEGER => s.serialize_i64(small),
            _ => s.serialize_str(&v.to_string()),
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigInt, D::Error> {
        d.deserialize_any(BigIntVisitor)
    }
}

pub mod bigint_opt {
    use super::*;
    use serde::{Deserialize, Serialize};

    #[derive(Serialize, Deserialize)]
    struct Wrap(#[serde(with = "super::bigint")] BigInt);

    pub fn serialize<S: Serializer>(v: &Option<BigInt>, s: S) -> Result<S::Ok, S::Error> {
        v.clone().map(Wrap).serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<BigInt>, D::Error> {
        Ok(Option::<Wrap>::deserialize(d)?.map(|w| w.0))
    }
}

pub fn serialize_biguint<S: Serializer>(v: &BigUint, s: S) -> Result<S::Ok, S::Error> {
    match v.to_u64() {
        Some(small) if small <= MAX_SAFE_INTEGER => s.serialize_u64(small),
        _ => s.serialize_str(&v.to_string()),
    }
}

pub fn deserialize_biguint<'de, D: Deserializer<'de>>(d: D) -> Result<BigUint, D::Error> {
    let v = d.deserialize_any(BigIntVisitor)?;
    v.to_biguint()
        .ok_or_else(|| de::Error::custom(format!("expected a nonnegative integer, got {v}")))
}

struct BigIntVisitor;

impl Visitor<'_> for BigIntVisitor {
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

    fn visit_f64<E: de::Error>(self, v: f64) -> Result<BigInt, E> {
        // json numbers outside i64/u64 arrive as f64; only exact integers pass
        if v.fract() == 0.0 && v.abs() <= MAX_SAFE_INTEGER as f64 {
            Ok(BigInt::from(v as i64))
        } else {
            Err(E::custom(format!(
                "{v} is not an exactly-representable integer"
            )))
        }
    }

    fn visit_str<E: de::Error>(self, v: &str) -> Result<BigInt, E> {
        v.parse::<BigInt>()
            .map_err(|_| E::custom(format!("invalid integer literal {v:?}")))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde::{Deserialize, Serialize};

    #[derive(Serialize, Deserialize, PartialEq, Debug)]
    struct Holder(#[serde(with = "bigint")] BigInt);

    #[test]
    fn small_values_stay_numbers() {
        let v = Holder(BigInt::from(-42));
        assert_eq!(serde_json::to_string(&v).unwrap(), "-42");
        let max = Holder(BigInt::from(MAX_SAFE_INTEGER));
        assert_eq!(serde_json::to_string(&max).unwrap(), "9007199254740991");
    }

    #[test]
    fn big_values_become_strings() {
        let v = Holder(BigInt::from(MAX_SAFE_INTEGER) + 1);
        assert_eq!(serde_json::to_string(&v).unwrap(), "\"9007199254740992\"");
        let back: Holder = serde_json::from_str("\"9007199254740992\"").unwrap();
        assert_eq!(back, v);
    }

    #[test]
    fn round_trip_both_forms() {
        for s in ["0", "-1", "\"123456789012345678901234567890\"", "7"] {
            let h: Holder = serde_json::from_str(s).unwrap();
            let again: Holder = serde_json::from_str(&serde_json::to_string(&h).unwrap()).unwrap();
            assert_eq!(h, again);
        }
    }
}
