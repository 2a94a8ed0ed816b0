use std::fmt::{self, Debug, Display};
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::ser::SerializeMap;
use serde::{Deserialize, Serialize, Serializer};

use super::determinant;
use super::matrix::SquareMatrix;
use crate::error::{Error, Result};

/// Relative tolerance used whenever two floating-point results are compared.
pub const FLOAT_REL_TOL: f64 = 1e-9;

/// Arithmetic mode of a whole computation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Exact,
    F64,
}

impl Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Mode::Exact => f.write_str("exact"),
            Mode::F64 => f.write_str("f64"),
        }
    }
}

/// The field all partition-function quantities live in.
///
/// Two implementations exist: [`BigRational`] for exact work and
/// [`Complex64`] for floating point. A single computation never mixes them;
/// the mode is fixed by the type parameter.
pub trait Scalar:
    Clone
    + Debug
    + PartialEq
    + Send
    + Sync
    + 'static
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
    + for<'a> Add<&'a Self, Output = Self>
    + for<'a> Sub<&'a Self, Output = Self>
    + for<'a> Mul<&'a Self, Output = Self>
    + for<'a> Div<&'a Self, Output = Self>
{
    const MODE: Mode;

    fn from_i64(v: i64) -> Self;

    /// `num / den`; `den` must be non-zero.
    fn from_ratio(num: i64, den: i64) -> Self;

    fn from_bigint(v: &BigInt) -> Self;

    fn from_rational(v: &BigRational) -> Self;

    /// Always true in exact mode.
    fn is_finite(&self) -> bool;

    /// Modulus as a double, for pivoting and reporting.
    fn magnitude(&self) -> f64;

    /// Exact equality in exact mode, relative agreement within
    /// [`FLOAT_REL_TOL`] in float mode.
    fn agrees_with(&self, other: &Self) -> bool;

    fn to_value(&self) -> Value;

    /// Converts a mode-tagged value into this mode. Exact mode refuses
    /// floating-point values.
    fn from_value(v: &Value) -> Result<Self>;

    /// Mode-specific determinant kernel. Use [`determinant`](super::determinant)
    /// rather than calling this directly.
    fn determinant_kernel(m: &SquareMatrix<Self>) -> Result<Self>;

    fn recip(&self) -> Self {
        Self::one() / self.clone()
    }

    /// `self^k` for small non-negative `k`.
    fn powi(&self, k: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..k {
            acc = acc * self;
        }
        acc
    }
}

impl Scalar for BigRational {
    const MODE: Mode = Mode::Exact;

    fn from_i64(v: i64) -> Self {
        BigRational::from_integer(BigInt::from(v))
    }

    fn from_ratio(num: i64, den: i64) -> Self {
        assert!(den != 0, "zero denominator");
        BigRational::new(BigInt::from(num), BigInt::from(den))
    }

    fn from_bigint(v: &BigInt) -> Self {
        BigRational::from_integer(v.clone())
    }

    fn from_rational(v: &BigRational) -> Self {
        v.clone()
    }

    fn is_finite(&self) -> bool {
        true
    }

    fn magnitude(&self) -> f64 {
        self.abs().to_f64().unwrap_or(f64::INFINITY)
    }

    fn agrees_with(&self, other: &Self) -> bool {
        self == other
    }

    fn to_value(&self) -> Value {
        Value::Exact(self.clone())
    }

    fn from_value(v: &Value) -> Result<Self> {
        match v {
            Value::Exact(q) => Ok(q.clone()),
            Value::Float(z) => Err(Error::InvalidInput(format!("floating-point value {z} in exact mode"))),
        }
    }

    fn determinant_kernel(m: &SquareMatrix<Self>) -> Result<Self> {
        Ok(determinant::bareiss(m))
    }
}

impl Scalar for Complex64 {
    const MODE: Mode = Mode::F64;

    fn from_i64(v: i64) -> Self {
        Complex64::new(v as f64, 0.0)
    }

    fn from_ratio(num: i64, den: i64) -> Self {
        assert!(den != 0, "zero denominator");
        Complex64::new(num as f64 / den as f64, 0.0)
    }

    fn from_bigint(v: &BigInt) -> Self {
        Complex64::new(v.to_f64().unwrap_or(f64::INFINITY), 0.0)
    }

    fn from_rational(v: &BigRational) -> Self {
        Complex64::new(v.to_f64().unwrap_or(f64::NAN), 0.0)
    }

    fn is_finite(&self) -> bool {
        self.re.is_finite() && self.im.is_finite()
    }

    fn magnitude(&self) -> f64 {
        self.norm()
    }

    fn agrees_with(&self, other: &Self) -> bool {
        let scale = self.norm().max(other.norm());
        if scale == 0.0 {
            return true;
        }
        (self - other).norm() <= FLOAT_REL_TOL * scale
    }

    fn to_value(&self) -> Value {
        Value::Float(*self)
    }

    fn from_value(v: &Value) -> Result<Self> {
        Ok(match v {
            Value::Exact(q) => Self::from_rational(q),
            Value::Float(z) => *z,
        })
    }

    fn determinant_kernel(m: &SquareMatrix<Self>) -> Result<Self> {
        determinant::partial_pivot_lu(m)
    }
}

/// A mode-tagged scalar, used where results leave the generic code
/// (reports, JSON output).
#[derive(Debug, Clone, PartialEq)]
pub enum Value {
    Exact(BigRational),
    Float(Complex64),
}

impl Value {
    pub fn mode(&self) -> Mode {
        match self {
            Value::Exact(_) => Mode::Exact,
            Value::Float(_) => Mode::F64,
        }
    }

    pub fn magnitude(&self) -> f64 {
        match self {
            Value::Exact(q) => q.magnitude(),
            Value::Float(z) => z.norm(),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Value::Exact(q) => q.is_zero(),
            Value::Float(z) => z.is_zero(),
        }
    }
}

impl Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::Exact(q) => write!(f, "{q}"),
            Value::Float(z) if z.im == 0.0 => write!(f, "{:e}", z.re),
            Value::Float(z) if z.im.is_nan() => write!(f, "{:e}+NaNi", z.re),
            Value::Float(z) => write!(f, "{:e}{:+e}i", z.re, z.im),
        }
    }
}

/// Exact values serialize as `{"num": "...", "den": "..."}` (canonical,
/// positive denominator); floats as `{"re": x, "im": y}`.
impl Serialize for Value {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut map = serializer.serialize_map(Some(2))?;
        match self {
            Value::Exact(q) => {
                map.serialize_entry("num", &q.numer().to_string())?;
                map.serialize_entry("den", &q.denom().to_string())?;
            }
            Value::Float(z) => {
                map.serialize_entry("re", &z.re)?;
                map.serialize_entry("im", &z.im)?;
            }
        }
        map.end()
    }
}
