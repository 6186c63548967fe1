//! Exact numbers serialize as decimal strings.

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::ser::{SerializeSeq, Serializer};

pub fn int<S: Serializer>(x: &BigInt, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&x.to_string())
}

pub fn opt_int<S: Serializer>(x: &Option<BigInt>, s: S) -> Result<S::Ok, S::Error> {
    match x {
        Some(v) => s.serialize_str(&v.to_string()),
        None => s.serialize_none(),
    }
}

pub fn ints<S: Serializer>(xs: &[BigInt], s: S) -> Result<S::Ok, S::Error> {
    let mut seq = s.serialize_seq(Some(xs.len()))?;
    for x in xs {
        seq.serialize_element(&x.to_string())?;
    }
    seq.end()
}

pub fn rational<S: Serializer>(x: &BigRational, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&x.to_string())
}

pub fn opt_rational<S: Serializer>(x: &Option<BigRational>, s: S) -> Result<S::Ok, S::Error> {
    match x {
        Some(v) => s.serialize_str(&v.to_string()),
        None => s.serialize_none(),
    }
}

pub fn rationals<S: Serializer>(xs: &[BigRational], s: S) -> Result<S::Ok, S::Error> {
    let mut seq = s.serialize_seq(Some(xs.len()))?;
    for x in xs {
        seq.serialize_element(&x.to_string())?;
    }
    seq.end()
}

/// Integers given either as JSON numbers or as decimal strings.
pub fn de_ints<'de, D: serde::Deserializer<'de>>(d: D) -> Result<Vec<BigInt>, D::Error> {
    use serde::de::Error;
    let vals: Vec<serde_json::Value> = serde::Deserialize::deserialize(d)?;
    vals.iter()
        .map(|v| match v {
            serde_json::Value::Number(n) if n.is_i64() => Ok(BigInt::from(n.as_i64().unwrap())),
            serde_json::Value::String(s) => s.trim().parse().map_err(|_| D::Error::custom(format!("bad integer {s:?}"))),
            other => Err(D::Error::custom(format!("expected integer, got {other}"))),
        })
        .collect()
}
