//! JSON encoding of exact integers: numbers when they fit in `i64`, strings otherwise.

use num_bigint::BigInt;
use serde_json::Value;

use crate::intlat::IntMatrix;

pub fn int(x: &BigInt) -> Value {
    match i64::try_from(x) {
        Ok(v) => Value::from(v),
        Err(_) => Value::String(x.to_string()),
    }
}

pub fn vector(v: &[BigInt]) -> Value {
    Value::Array(v.iter().map(int).collect())
}

pub fn matrix(m: &IntMatrix) -> Value {
    Value::Array((0..m.rows()).map(|i| vector(m.row(i))).collect())
}
