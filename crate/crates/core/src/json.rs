//! JSON encoding of exact integers and rationals.
//!
//! Integers that fit in an `i64` are written as JSON numbers, larger ones as
//! decimal strings. Both forms are accepted when reading.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use serde_json::Value;

use crate::error::{Error, Result};

pub fn int_to_json(n: &BigInt) -> Value {
    match n.to_i64() {
        Some(v) => Value::from(v),
        None => Value::from(n.to_string()),
    }
}

pub fn int_from_json(v: &Value) -> Result<BigInt> {
    match v {
        Value::Number(num) => num
            .as_i64()
            .map(BigInt::from)
            .or_else(|| num.as_u64().map(BigInt::from))
            .ok_or_else(|| Error::InvalidInput(format!("not an integer: {num}"))),
        Value::String(s) => s.parse::<BigInt>().map_err(|_| Error::InvalidInput(format!("not an integer: {s:?}"))),
        other => Err(Error::InvalidInput(format!("expected an integer, got {other}"))),
    }
}

pub fn rational_to_json(r: &BigRational) -> Value {
    Value::Array(vec![int_to_json(r.numer()), int_to_json(r.denom())])
}

pub fn rational_from_json(v: &Value) -> Result<BigRational> {
    let pair = v
        .as_array()
        .filter(|a| a.len() == 2)
        .ok_or_else(|| Error::InvalidInput(format!("expected [num, den], got {v}")))?;
    let num = int_from_json(&pair[0])?;
    let den = int_from_json(&pair[1])?;
    if den.is_zero() {
        return Err(Error::DivisionByZero);
    }
    Ok(BigRational::new(num, den))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn big_integers_round_trip_as_strings() {
        let big: BigInt = "123456789012345678901234567890".parse().unwrap();
        let v = int_to_json(&big);
        assert!(v.is_string());
        assert_eq!(int_from_json(&v).unwrap(), big);
        assert_eq!(int_to_json(&BigInt::from(-7)), Value::from(-7));
    }

    #[test]
    fn rationals_are_reduced_on_read() {
        let v: Value = serde_json::from_str("[4, -6]").unwrap();
        assert_eq!(rational_from_json(&v).unwrap(), crate::arith::rational(-2, 3));
        let zero_den: Value = serde_json::from_str("[1, 0]").unwrap();
        assert_eq!(rational_from_json(&zero_den), Err(Error::DivisionByZero));
    }
}
