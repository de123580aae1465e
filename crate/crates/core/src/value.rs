//! Scalars in [0,1], either exact rationals or floats.

use std::cmp::Ordering;
use std::fmt;

use serde::de::{self, Deserializer, Visitor};
use serde::{Deserialize, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::rational::Rational;

/// Comparison tolerance for float-mode values.
pub const FLOAT_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Exact,
    Float,
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mode::Exact => "exact",
            Mode::Float => "float",
        })
    }
}

/// A truth value. Float equality is up to [`FLOAT_TOL`]; values of
/// different modes are never equal.
#[derive(Clone)]
pub enum Value {
    Exact(Rational),
    Float(f64),
}

impl Value {
    pub fn exact(r: Rational) -> Result<Self> {
        if r.is_negative() || r > Rational::one() {
            return Err(Error::OutOfRange(r.to_string()));
        }
        Ok(Value::Exact(r))
    }

    /// Floats within [`FLOAT_TOL`] of the unit interval are clamped into it.
    pub fn float(x: f64) -> Result<Self> {
        if !(-FLOAT_TOL..=1.0 + FLOAT_TOL).contains(&x) {
            return Err(Error::OutOfRange(x.to_string()));
        }
        Ok(Value::Float(x.clamp(0.0, 1.0)))
    }

    /// Shorthand for `p/q`; panics when out of range.
    pub fn ratio(p: i64, q: i64) -> Self {
        Self::exact(Rational::new(p, q)).expect("ratio out of [0,1]")
    }

    pub fn zero(mode: Mode) -> Self {
        match mode {
            Mode::Exact => Value::Exact(Rational::zero()),
            Mode::Float => Value::Float(0.0),
        }
    }

    pub fn one(mode: Mode) -> Self {
        match mode {
            Mode::Exact => Value::Exact(Rational::one()),
            Mode::Float => Value::Float(1.0),
        }
    }

    pub fn mode(&self) -> Mode {
        match self {
            Value::Exact(_) => Mode::Exact,
            Value::Float(_) => Mode::Float,
        }
    }

    pub fn as_exact(&self) -> Option<&Rational> {
        match self {
            Value::Exact(r) => Some(r),
            Value::Float(_) => None,
        }
    }

    pub fn to_f64(&self) -> f64 {
        match self {
            Value::Exact(r) => r.to_f64(),
            Value::Float(x) => *x,
        }
    }

    /// Converts to float mode.
    pub fn to_float(&self) -> Value {
        Value::Float(self.to_f64())
    }

    pub fn is_one(&self) -> bool {
        match self {
            Value::Exact(r) => r.is_one(),
            Value::Float(x) => (1.0 - x).abs() <= FLOAT_TOL,
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Value::Exact(r) => r.is_zero(),
            Value::Float(x) => x.abs() <= FLOAT_TOL,
        }
    }

    pub fn try_cmp(&self, other: &Value) -> Result<Ordering> {
        match (self, other) {
            (Value::Exact(a), Value::Exact(b)) => Ok(a.cmp(b)),
            (Value::Float(a), Value::Float(b)) => Ok(if (a - b).abs() <= FLOAT_TOL {
                Ordering::Equal
            } else if a < b {
                Ordering::Less
            } else {
                Ordering::Greater
            }),
            _ => Err(Error::ModeMismatch),
        }
    }

    pub fn le(&self, other: &Value) -> Result<bool> {
        Ok(self.try_cmp(other)? != Ordering::Greater)
    }

    pub fn lt(&self, other: &Value) -> Result<bool> {
        Ok(self.try_cmp(other)? == Ordering::Less)
    }

    pub fn ge(&self, other: &Value) -> Result<bool> {
        other.le(self)
    }

    pub fn min(&self, other: &Value) -> Result<Value> {
        Ok(if self.le(other)? { self.clone() } else { other.clone() })
    }

    pub fn max(&self, other: &Value) -> Result<Value> {
        Ok(if self.ge(other)? { self.clone() } else { other.clone() })
    }
}

impl PartialEq for Value {
    fn eq(&self, other: &Self) -> bool {
        matches!(self.try_cmp(other), Ok(Ordering::Equal))
    }
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::Exact(r) => write!(f, "{r}"),
            Value::Float(x) => write!(f, "{x}"),
        }
    }
}

impl fmt::Debug for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Serialize for Value {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Value::Exact(r) => s.serialize_str(&r.to_string()),
            Value::Float(x) => s.serialize_f64(*x),
        }
    }
}

impl<'de> Deserialize<'de> for Value {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        struct V;
        impl<'de> Visitor<'de> for V {
            type Value = Value;
            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                f.write_str("a \"p/q\" string or a number in [0,1]")
            }
            fn visit_str<E: de::Error>(self, s: &str) -> std::result::Result<Value, E> {
                let r: Rational = s.parse().map_err(E::custom)?;
                Value::exact(r).map_err(E::custom)
            }
            fn visit_f64<E: de::Error>(self, x: f64) -> std::result::Result<Value, E> {
                Value::float(x).map_err(E::custom)
            }
            fn visit_u64<E: de::Error>(self, x: u64) -> std::result::Result<Value, E> {
                Value::float(x as f64).map_err(E::custom)
            }
            fn visit_i64<E: de::Error>(self, x: i64) -> std::result::Result<Value, E> {
                Value::float(x as f64).map_err(E::custom)
            }
        }
        d.deserialize_any(V)
    }
}

/// A value of [−∞, 0] produced by additive generators.
#[derive(Debug, Clone, PartialEq)]
pub enum Extended {
    NegInfinity,
    Exact(Rational),
    Float(f64),
}

impl Extended {
    pub fn add(&self, other: &Extended) -> Result<Extended> {
        match (self, other) {
            (Extended::NegInfinity, _) | (_, Extended::NegInfinity) => Ok(Extended::NegInfinity),
            (Extended::Exact(a), Extended::Exact(b)) => Ok(Extended::Exact(a.add(b))),
            (Extended::Float(a), Extended::Float(b)) => Ok(Extended::Float(a + b)),
            _ => Err(Error::ModeMismatch),
        }
    }

    pub fn to_f64(&self) -> f64 {
        match self {
            Extended::NegInfinity => f64::NEG_INFINITY,
            Extended::Exact(r) => r.to_f64(),
            Extended::Float(x) => *x,
        }
    }
}

/// Joins `values` (the empty join is 0).
pub fn sup<'a>(mode: Mode, values: impl IntoIterator<Item = &'a Value>) -> Result<Value> {
    let mut acc = Value::zero(mode);
    for v in values {
        if v.try_cmp(&acc)? == Ordering::Greater {
            acc = v.clone();
        }
    }
    Ok(acc)
}

/// Meets `values` (the empty meet is 1).
pub fn inf<'a>(mode: Mode, values: impl IntoIterator<Item = &'a Value>) -> Result<Value> {
    let mut acc = Value::one(mode);
    for v in values {
        if v.try_cmp(&acc)? == Ordering::Less {
            acc = v.clone();
        }
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn range_and_modes() {
        assert!(Value::exact(Rational::new(3, 2)).is_err());
        assert!(Value::float(-0.1).is_err());
        assert_eq!(Value::float(1.0 + 1e-13).unwrap().to_f64(), 1.0);
        assert_eq!(Value::ratio(1, 2).try_cmp(&Value::Float(0.5)), Err(Error::ModeMismatch));
        assert_ne!(Value::ratio(1, 2), Value::Float(0.5));
        assert_eq!(Value::Float(0.3), Value::Float(0.1 + 0.2));
    }

    #[test]
    fn serde_round_trip() {
        let v: Vec<Value> = serde_json::from_str(r#"["1/3", 0.5, 1]"#).unwrap();
        assert_eq!(v[0], Value::ratio(1, 3));
        assert_eq!(v[1], Value::Float(0.5));
        assert_eq!(v[2], Value::Float(1.0));
        assert_eq!(serde_json::to_string(&v[0]).unwrap(), "\"1/3\"");
    }

    #[test]
    fn empty_sup_and_inf() {
        assert!(sup(Mode::Exact, []).unwrap().is_zero());
        assert!(inf(Mode::Exact, []).unwrap().is_one());
    }

    #[test]
    fn neg_infinity_absorbs() {
        let a = Extended::Exact(Rational::new(-1, 2));
        assert_eq!(a.add(&Extended::NegInfinity).unwrap(), Extended::NegInfinity);
        assert_eq!(a.add(&a).unwrap(), Extended::Exact(Rational::from_integer(-1)));
    }
}
