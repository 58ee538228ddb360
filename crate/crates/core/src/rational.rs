//! Exact rationals and big integers at the JSON boundary.
//!
//! A rational serialises as `{"num": …, "den": …}`. Components that fit in
//! 64 bits are JSON numbers; larger ones are decimal strings.

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::ser::SerializeStruct;
use serde::Serializer;

pub type Ratio = BigRational;

pub fn ratio(num: impl Into<BigInt>, den: impl Into<BigInt>) -> Ratio {
    BigRational::new(num.into(), den.into())
}

pub fn ratio_u(num: &BigUint, den: &BigUint) -> Ratio {
    BigRational::new(BigInt::from(num.clone()), BigInt::from(den.clone()))
}

pub fn to_f64(r: &Ratio) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

pub fn zero() -> Ratio {
    Ratio::zero()
}

pub fn one() -> Ratio {
    Ratio::one()
}

fn serialize_int<S: SerializeStruct>(
    st: &mut S,
    key: &'static str,
    v: &BigInt,
) -> Result<(), S::Error> {
    match v.to_i64() {
        Some(x) => st.serialize_field(key, &x),
        None => st.serialize_field(key, &v.to_string()),
    }
}

pub fn serialize<S: Serializer>(r: &Ratio, s: S) -> Result<S::Ok, S::Error> {
    let mut st = s.serialize_struct("Rational", 2)?;
    serialize_int(&mut st, "num", r.numer())?;
    serialize_int(&mut st, "den", r.denom())?;
    st.end()
}

pub fn serialize_opt<S: Serializer>(r: &Option<Ratio>, s: S) -> Result<S::Ok, S::Error> {
    match r {
        Some(r) => serialize(r, s),
        None => s.serialize_none(),
    }
}

/// Serializes a borrowed ratio as `{num, den}`.
#[derive(serde::Serialize)]
pub struct RatioJson<'a>(#[serde(serialize_with = "serialize")] pub &'a Ratio);

pub fn serialize_vec<S: Serializer>(v: &[Ratio], s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(RatioJson))
}

pub fn serialize_opt_vec<S: Serializer>(v: &Option<Vec<Ratio>>, s: S) -> Result<S::Ok, S::Error> {
    match v {
        Some(v) => serialize_vec(v, s),
        None => s.serialize_none(),
    }
}

/// Big integers as JSON numbers when they fit in `u64`, strings otherwise.
pub fn serialize_biguint<S: Serializer>(v: &BigUint, s: S) -> Result<S::Ok, S::Error> {
    match v.to_u64() {
        Some(x) => s.serialize_u64(x),
        None => s.serialize_str(&v.to_string()),
    }
}
