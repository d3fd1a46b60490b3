use std::fmt::Debug;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num::{BigInt, BigRational, One, Signed, ToPrimitive, Zero};
use serde_json::Value;

use crate::error::{Error, Result};

pub type Rational = BigRational;

/// Denominator used when turning floats into exact rationals.
const RATIONALIZE_SCALE: i64 = 1_000_000_000_000;

/// Ordered field used by the polyhedral routines.
///
/// `f64` compares against a small absolute epsilon; [`Rational`] is exact.
pub trait Scalar:
    Clone
    + Debug
    + PartialEq
    + PartialOrd
    + Send
    + Sync
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
{
    const MODE: &'static str;

    fn zero() -> Self;
    fn one() -> Self;
    fn from_f64(x: f64) -> Self;
    fn to_f64(&self) -> f64;
    fn abs(&self) -> Self;
    /// Pivot / comparison tolerance.
    fn eps() -> Self;

    fn is_zero_tol(&self) -> bool {
        self.abs() <= Self::eps()
    }
    fn is_pos(&self) -> bool {
        *self > Self::eps()
    }
    fn is_neg(&self) -> bool {
        *self < -Self::eps()
    }

    fn to_json(&self) -> Value;
    fn from_json(v: &Value) -> Result<Self>;
}

impl Scalar for f64 {
    const MODE: &'static str = "float";

    fn zero() -> Self {
        0.0
    }
    fn one() -> Self {
        1.0
    }
    fn from_f64(x: f64) -> Self {
        x
    }
    fn to_f64(&self) -> f64 {
        *self
    }
    fn abs(&self) -> Self {
        f64::abs(*self)
    }
    fn eps() -> Self {
        1e-11
    }
    fn to_json(&self) -> Value {
        Value::from(*self)
    }
    fn from_json(v: &Value) -> Result<Self> {
        match v {
            Value::Number(n) => n.as_f64().filter(|x| x.is_finite()),
            Value::String(s) => parse_rational(s).ok().map(|r| Scalar::to_f64(&r)),
            _ => None,
        }
        .ok_or_else(|| Error::input(format!("expected a finite number, got {v}")))
    }
}

impl Scalar for Rational {
    const MODE: &'static str = "rational";

    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    /// Rounds to the nearest multiple of 1e-12.
    fn from_f64(x: f64) -> Self {
        let scaled = (x * RATIONALIZE_SCALE as f64).round();
        let numer = BigInt::from(scaled as i128);
        BigRational::new(numer, BigInt::from(RATIONALIZE_SCALE))
    }
    fn to_f64(&self) -> f64 {
        ToPrimitive::to_f64(self).unwrap_or(f64::NAN)
    }
    fn abs(&self) -> Self {
        Signed::abs(self)
    }
    fn eps() -> Self {
        Zero::zero()
    }
    fn is_zero_tol(&self) -> bool {
        Zero::is_zero(self)
    }
    fn is_pos(&self) -> bool {
        Signed::is_positive(self)
    }
    fn is_neg(&self) -> bool {
        Signed::is_negative(self)
    }
    fn to_json(&self) -> Value {
        Value::String(self.to_string())
    }
    fn from_json(v: &Value) -> Result<Self> {
        match v {
            Value::Number(n) if n.is_i64() => Ok(BigRational::from_integer(n.as_i64().unwrap().into())),
            Value::Number(n) => n
                .as_f64()
                .filter(|x| x.is_finite())
                .map(<Rational as Scalar>::from_f64)
                .ok_or_else(|| Error::input(format!("bad number {n}"))),
            Value::String(s) => parse_rational(s),
            _ => Err(Error::input(format!("expected a rational, got {v}"))),
        }
    }
}

/// Parses `"p/q"` or `"p"` with integer `p`, `q`.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let bad = || Error::input(format!("cannot parse rational {s:?}"));
    let (p, q) = match s.trim().split_once('/') {
        Some((p, q)) => (p.trim(), q.trim()),
        None => (s.trim(), "1"),
    };
    let p: BigInt = p.parse().map_err(|_| bad())?;
    let q: BigInt = q.parse().map_err(|_| bad())?;
    if Zero::is_zero(&q) {
        return Err(bad());
    }
    Ok(BigRational::new(p, q))
}
