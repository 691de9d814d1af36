//! Serde adapters: big integers as decimal strings.

use num_bigint::BigInt;
use serde::{de, Deserialize, Deserializer, Serializer};

#[derive(Deserialize)]
#[serde(untagged)]
pub enum IntRepr {
    Str(String),
    Int(i64),
}

pub fn to_bigint<E: de::Error>(r: IntRepr) -> Result<BigInt, E> {
    match r {
        IntRepr::Int(v) => Ok(BigInt::from(v)),
        IntRepr::Str(s) => s
            .trim()
            .parse::<BigInt>()
            .map_err(|_| E::custom(format!("bad integer {s:?}"))),
    }
}

pub mod bigint {
    use super::*;

    pub fn serialize<S: Serializer>(v: &BigInt, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&v.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigInt, D::Error> {
        to_bigint(IntRepr::deserialize(d)?)
    }
}
