//! Serde helpers for exact integers.
//!
//! Values up to 2^53 are written as JSON numbers; larger values are written as
//! decimal strings so that consumers parsing numbers as doubles stay exact.
//! Both forms are accepted when reading.

use serde::de::{self, Deserializer, Visitor};
use serde::ser::{SerializeSeq, Serializer};
use serde::Deserialize;

pub const MAX_SAFE: u128 = 1 << 53;

pub fn serialize<S: Serializer>(v: &u128, s: S) -> Result<S::Ok, S::Error> {
    if *v <= MAX_SAFE {
        s.serialize_u64(*v as u64)
    } else {
        s.serialize_str(&v.to_string())
    }
}

struct ExactVisitor;

impl<'de> Visitor<'de> for ExactVisitor {
    type Value = u128;

    fn expecting(&self, f: &mut std::fmt::Formatter) -> std::fmt::Result {
        f.write_str("a non-negative integer or a decimal string")
    }

    fn visit_u64<E: de::Error>(self, v: u64) -> Result<u128, E> {
        Ok(v as u128)
    }

    fn visit_u128<E: de::Error>(self, v: u128) -> Result<u128, E> {
        Ok(v)
    }

    fn visit_i64<E: de::Error>(self, v: i64) -> Result<u128, E> {
        u128::try_from(v).map_err(|_| E::custom("negative value"))
    }

    fn visit_str<E: de::Error>(self, v: &str) -> Result<u128, E> {
        v.parse().map_err(E::custom)
    }
}

pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<u128, D::Error> {
    d.deserialize_any(ExactVisitor)
}

/// Same encoding for `Option<u128>`.
pub mod option {
    use super::*;

    pub fn serialize<S: Serializer>(v: &Option<u128>, s: S) -> Result<S::Ok, S::Error> {
        match v {
            Some(x) => super::serialize(x, s),
            None => s.serialize_none(),
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<u128>, D::Error> {
        #[derive(Deserialize)]
        struct Wrap(#[serde(with = "super")] u128);
        Ok(Option::<Wrap>::deserialize(d)?.map(|w| w.0))
    }
}

/// Same encoding for lists of `(a, b)` pairs.
pub mod pairs {
    use super::*;

    #[derive(serde::Serialize, Deserialize)]
    struct Pair(#[serde(with = "super")] u128, #[serde(with = "super")] u128);

    pub fn serialize<S: Serializer>(v: &[(u128, u128)], s: S) -> Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(v.len()))?;
        for &(a, b) in v {
            seq.serialize_element(&Pair(a, b))?;
        }
        seq.end()
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<(u128, u128)>, D::Error> {
        Ok(Vec::<Pair>::deserialize(d)?.into_iter().map(|p| (p.0, p.1)).collect())
    }
}

#[cfg(test)]
mod tests {
    use serde::{Deserialize, Serialize};

    #[derive(Debug, PartialEq, Serialize, Deserialize)]
    struct Rec {
        #[serde(with = "super")]
        v: u128,
        #[serde(with = "super::option")]
        o: Option<u128>,
        #[serde(with = "super::pairs")]
        p: Vec<(u128, u128)>,
    }

    #[test]
    fn small_as_number_large_as_string() {
        let r = Rec { v: 91, o: Some(1 << 60), p: vec![(7, 13), (1 << 54, 2)] };
        let s = serde_json::to_string(&r).unwrap();
        assert_eq!(s, r#"{"v":91,"o":"1152921504606846976","p":[[7,13],["18014398509481984",2]]}"#);
        assert_eq!(serde_json::from_str::<Rec>(&s).unwrap(), r);
        let none = Rec { v: 1 << 53, o: None, p: vec![] };
        let s = serde_json::to_string(&none).unwrap();
        assert_eq!(s, r#"{"v":9007199254740992,"o":null,"p":[]}"#);
        assert_eq!(serde_json::from_str::<Rec>(&s).unwrap(), none);
    }
}
