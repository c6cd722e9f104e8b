//! Small serde helpers shared by the JSON document formats.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::ToPrimitive;
use serde::Serializer;

/// Integers that fit in `i64` are written as JSON numbers, larger ones as strings.
pub fn big_as_number<S: Serializer>(x: &BigInt, s: S) -> Result<S::Ok, S::Error> {
    match x.to_i64() {
        Some(v) => s.serialize_i64(v),
        None => s.serialize_str(&x.to_string()),
    }
}

/// Rationals are written as `"p/q"`, or `"p"` when integral.
pub fn rational_as_string<S: Serializer>(x: &BigRational, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&x.to_string())
}

pub fn parse_rational(s: &str) -> crate::Result<BigRational> {
    s.trim()
        .parse::<BigRational>()
        .map_err(|e| crate::Error::Parse(format!("{s:?}: {e}")))
}
