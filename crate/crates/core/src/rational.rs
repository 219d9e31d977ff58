//! Rational numbers in JSON: integers as numbers, everything else as "p/q".

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::exact::Q;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum RatValue {
    Int(i64),
    Text(String),
}

impl RatValue {
    pub fn to_q(&self) -> Result<Q, String> {
        match self {
            RatValue::Int(n) => Ok(Q::from_integer(BigInt::from(*n))),
            RatValue::Text(s) => parse_rational(s),
        }
    }

    pub fn from_q(v: &Q) -> Self {
        match (v.is_integer(), v.numer().to_i64()) {
            (true, Some(n)) => RatValue::Int(n),
            _ => RatValue::Text(v.to_string()),
        }
    }
}

pub fn parse_rational(s: &str) -> Result<Q, String> {
    let s = s.trim();
    let bad = || format!("not a rational: {s:?}");
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(format!("zero denominator in {s:?}"));
            }
            Ok(Q::new(n, d))
        }
        None => Ok(Q::from_integer(s.parse().map_err(|_| bad())?)),
    }
}

pub fn parse_list(s: &str) -> Result<Vec<Q>, String> {
    s.split(',').map(parse_rational).collect()
}

pub fn to_json(v: &Q) -> Value {
    match (v.is_integer(), v.numer().to_i64()) {
        (true, Some(n)) => Value::from(n),
        _ => Value::from(v.to_string()),
    }
}

pub fn list_to_json(v: &[Q]) -> Value {
    Value::Array(v.iter().map(to_json).collect())
}

pub fn list_from(values: &[RatValue]) -> Result<Vec<Q>, String> {
    values.iter().map(RatValue::to_q).collect()
}
