//! Numeric parameter values and the small field abstraction shared by the
//! exact (`BigRational`) and floating-point evaluation paths.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Serialize, Serializer};

use crate::scalar::{ratio_to_f64, Scalar};

/// Ordered field used by character evaluation.
pub trait Real:
    Clone
    + fmt::Debug
    + PartialOrd
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
{
    fn zero() -> Self;
    fn one() -> Self;
    fn from_ratio(c: &BigRational) -> Self;
    fn to_f64(&self) -> f64;
    fn is_zero(&self) -> bool;
    fn abs(&self) -> Self;
    /// Evaluate an exact scalar at the parameters `(q, r)`.
    fn eval(s: &Scalar, q: &Self, r: &Self) -> Option<Self>;

    /// Replace a value that is zero up to round-off by an exact zero. `scale`
    /// is the magnitude of the terms that produced it. Exact fields never snap.
    fn snap(self, _scale: &Self, _tol: f64) -> Self {
        self
    }

    fn from_i64(n: i64) -> Self {
        Self::from_ratio(&BigRational::from_integer(BigInt::from(n)))
    }

    fn powi(&self, e: i64) -> Self {
        let mut base = if e < 0 {
            Self::one() / self.clone()
        } else {
            self.clone()
        };
        let mut n = e.unsigned_abs();
        let mut acc = Self::one();
        while n > 0 {
            if n & 1 == 1 {
                acc = acc * base.clone();
            }
            base = base.clone() * base;
            n >>= 1;
        }
        acc
    }
}

impl Real for f64 {
    fn zero() -> Self {
        0.0
    }
    fn one() -> Self {
        1.0
    }
    fn from_ratio(c: &BigRational) -> Self {
        ratio_to_f64(c)
    }
    fn to_f64(&self) -> f64 {
        *self
    }
    fn is_zero(&self) -> bool {
        *self == 0.0
    }
    fn abs(&self) -> Self {
        f64::abs(*self)
    }
    fn eval(s: &Scalar, q: &Self, r: &Self) -> Option<Self> {
        s.eval_f64(*q, *r)
    }
    fn powi(&self, e: i64) -> Self {
        f64::powi(*self, e as i32)
    }
    fn snap(self, scale: &Self, tol: f64) -> Self {
        if f64::abs(self) <= tol * (1.0 + f64::abs(*scale)) {
            0.0
        } else {
            self
        }
    }
}

impl Real for BigRational {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn from_ratio(c: &BigRational) -> Self {
        c.clone()
    }
    fn to_f64(&self) -> f64 {
        ratio_to_f64(self)
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn abs(&self) -> Self {
        Signed::abs(self)
    }
    fn eval(s: &Scalar, q: &Self, r: &Self) -> Option<Self> {
        s.eval_exact(q, r)
    }
}

/// A numeric parameter: exact rational (from `1/2`-style input) or float.
#[derive(Clone, Debug, PartialEq)]
pub enum ParamValue {
    Exact(BigRational),
    Float(f64),
}

impl ParamValue {
    pub fn exact(n: i64, d: i64) -> Self {
        ParamValue::Exact(BigRational::new(n.into(), d.into()))
    }

    pub fn to_f64(&self) -> f64 {
        match self {
            ParamValue::Exact(r) => ratio_to_f64(r),
            ParamValue::Float(x) => *x,
        }
    }

    pub fn as_exact(&self) -> Option<&BigRational> {
        match self {
            ParamValue::Exact(r) => Some(r),
            ParamValue::Float(_) => None,
        }
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, ParamValue::Exact(_))
    }

    /// Exact rational reading of the value. Floats are converted through
    /// their shortest decimal representation.
    pub fn to_rational(&self) -> BigRational {
        match self {
            ParamValue::Exact(r) => r.clone(),
            ParamValue::Float(x) => decimal_to_rational(&format!("{x}")).unwrap_or_else(|| {
                BigRational::from_float(*x).unwrap_or_else(<BigRational as Zero>::zero)
            }),
        }
    }
}

impl From<f64> for ParamValue {
    fn from(x: f64) -> Self {
        ParamValue::Float(x)
    }
}

impl From<BigRational> for ParamValue {
    fn from(x: BigRational) -> Self {
        ParamValue::Exact(x)
    }
}

impl fmt::Display for ParamValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ParamValue::Exact(r) => write!(f, "{r}"),
            ParamValue::Float(x) => write!(f, "{x}"),
        }
    }
}

impl Serialize for ParamValue {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("cannot parse numeric parameter `{0}`")]
pub struct ParamParseError(pub String);

impl FromStr for ParamValue {
    type Err = ParamParseError;

    /// `3`, `-2/7` parse exactly; anything with a decimal point or exponent is a float.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let t = s.trim();
        let err = || ParamParseError(s.to_string());
        if let Some((n, d)) = t.split_once('/') {
            let n: BigInt = n.trim().parse().map_err(|_| err())?;
            let d: BigInt = d.trim().parse().map_err(|_| err())?;
            if d.is_zero() {
                return Err(err());
            }
            return Ok(ParamValue::Exact(BigRational::new(n, d)));
        }
        if let Ok(n) = t.parse::<BigInt>() {
            return Ok(ParamValue::Exact(BigRational::from_integer(n)));
        }
        let x: f64 = t.parse().map_err(|_| err())?;
        if !x.is_finite() {
            return Err(err());
        }
        Ok(ParamValue::Float(x))
    }
}

/// Parse a plain decimal literal such as `0.125` into an exact rational.
pub fn decimal_to_rational(s: &str) -> Option<BigRational> {
    let s = s.trim();
    if s.contains(['e', 'E']) {
        return None;
    }
    let (neg, body) = match s.strip_prefix('-') {
        Some(b) => (true, b),
        None => (false, s),
    };
    let (int, frac) = body.split_once('.').unwrap_or((body, ""));
    let digits = format!("{int}{frac}");
    let n: BigInt = digits.parse().ok()?;
    let d = num_traits::pow(BigInt::from(10), frac.len());
    let v = BigRational::new(n, d);
    Some(if neg { -v } else { v })
}

/// Numeric parameters of an algebra instance.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Params {
    pub q: ParamValue,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub r: Option<ParamValue>,
}

impl Params {
    pub fn q_only(q: impl Into<ParamValue>) -> Self {
        Params {
            q: q.into(),
            r: None,
        }
    }

    pub fn q_f64(&self) -> f64 {
        self.q.to_f64()
    }

    pub fn r_f64(&self) -> f64 {
        self.r.as_ref().map(|r| r.to_f64()).unwrap_or(0.0)
    }

    /// Both parameters exact (missing `r` counts as exact zero).
    pub fn exact(&self) -> Option<(BigRational, BigRational)> {
        let q = self.q.as_exact()?.clone();
        let r = match &self.r {
            Some(r) => r.as_exact()?.clone(),
            None => <BigRational as Zero>::zero(),
        };
        Some((q, r))
    }

    pub fn is_exact(&self) -> bool {
        self.exact().is_some()
    }

    /// Evaluate a scalar at these parameters in floating point.
    pub fn eval_f64(&self, s: &Scalar) -> f64 {
        s.eval_f64(self.q_f64(), self.r_f64())
            .expect("structure constants are finite at admissible parameters")
    }

    /// Parameters lifted into a field `T`.
    pub fn lift<T: Real>(&self) -> (T, T) {
        match self.exact() {
            Some((q, r)) => (T::from_ratio(&q), T::from_ratio(&r)),
            None => (
                T::from_ratio(&self.q.to_rational()),
                T::from_ratio(&self.r.as_ref().map(|r| r.to_rational()).unwrap_or_default()),
            ),
        }
    }
}
