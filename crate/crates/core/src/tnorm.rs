//! Continuous t-norms and their residua.
//!
//! Every continuous t-norm is Gödel, Product, Łukasiewicz, or an ordinal sum
//! of Product/Łukasiewicz copies on disjoint subintervals with `min`
//! elsewhere. The arithmetic is written once over [`Scalar`] so the exact and
//! float modes share a kernel.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::grid::ValueGrid;
use crate::rational::Rational;
use crate::value::{Extended, Mode, Value};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum InnerKind {
    Product,
    Lukasiewicz,
}

/// An ordinal-sum summand: a rescaled copy of `inner` on `[lo, hi]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Block {
    pub lo: Rational,
    pub hi: Rational,
    pub inner: InnerKind,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum TNorm {
    Godel,
    Product,
    Lukasiewicz,
    OrdinalSum(Vec<Block>),
}

/// Field operations shared by exact and float evaluation.
pub(crate) trait Scalar: Clone + PartialOrd {
    fn zero() -> Self;
    fn one() -> Self;
    fn add(&self, o: &Self) -> Self;
    fn sub(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    fn div(&self, o: &Self) -> Self;
    fn from_q(q: &Rational) -> Self;
}

impl Scalar for Rational {
    fn zero() -> Self {
        Rational::zero()
    }
    fn one() -> Self {
        Rational::one()
    }
    fn add(&self, o: &Self) -> Self {
        Rational::add(self, o)
    }
    fn sub(&self, o: &Self) -> Self {
        Rational::sub(self, o)
    }
    fn mul(&self, o: &Self) -> Self {
        Rational::mul(self, o)
    }
    fn div(&self, o: &Self) -> Self {
        Rational::div(self, o)
    }
    fn from_q(q: &Rational) -> Self {
        q.clone()
    }
}

impl Scalar for f64 {
    fn zero() -> Self {
        0.0
    }
    fn one() -> Self {
        1.0
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn div(&self, o: &Self) -> Self {
        self / o
    }
    fn from_q(q: &Rational) -> Self {
        q.to_f64()
    }
}

fn smin<S: Scalar>(a: &S, b: &S) -> S {
    if a <= b {
        a.clone()
    } else {
        b.clone()
    }
}

fn smax<S: Scalar>(a: &S, b: &S) -> S {
    if a >= b {
        a.clone()
    } else {
        b.clone()
    }
}

fn luk_conj<S: Scalar>(x: &S, y: &S) -> S {
    smax(&S::zero(), &x.add(y).sub(&S::one()))
}

fn luk_imp<S: Scalar>(x: &S, y: &S) -> S {
    smin(&S::one(), &S::one().sub(x).add(y))
}

impl Block {
    fn bounds<S: Scalar>(&self) -> (S, S) {
        (S::from_q(&self.lo), S::from_q(&self.hi))
    }

    fn interior<S: Scalar>(&self, x: &S) -> bool {
        let (lo, hi) = self.bounds::<S>();
        lo < *x && *x < hi
    }

    fn conj<S: Scalar>(&self, x: &S, y: &S) -> S {
        let (lo, hi) = self.bounds::<S>();
        match self.inner {
            InnerKind::Lukasiewicz => smax(&lo, &x.add(y).sub(&hi)),
            InnerKind::Product => lo.add(&x.sub(&lo).mul(&y.sub(&lo)).div(&hi.sub(&lo))),
        }
    }

    /// Residuum for `lo <= y < x <= hi`.
    fn imp<S: Scalar>(&self, x: &S, y: &S) -> S {
        let (lo, hi) = self.bounds::<S>();
        match self.inner {
            InnerKind::Lukasiewicz => smin(&hi, &hi.sub(x).add(y)),
            InnerKind::Product => lo.add(&hi.sub(&lo).mul(&y.sub(&lo)).div(&x.sub(&lo))),
        }
    }
}

impl TNorm {
    /// Validates an ordinal sum: blocks sorted, nondegenerate, inside [0,1]
    /// and with disjoint interiors.
    pub fn ordinal_sum(blocks: Vec<Block>) -> Result<TNorm> {
        for (i, b) in blocks.iter().enumerate() {
            if b.lo.is_negative() || b.hi > Rational::one() || b.lo >= b.hi {
                return Err(Error::InvalidTNorm(format!("bad block [{}, {}]", b.lo, b.hi)));
            }
            if i > 0 && blocks[i - 1].hi > b.lo {
                return Err(Error::InvalidTNorm(format!(
                    "blocks overlap or are unsorted at [{}, {}]",
                    b.lo, b.hi
                )));
            }
        }
        Ok(TNorm::OrdinalSum(blocks))
    }

    /// True when some computation needs Product arithmetic.
    pub fn has_product(&self) -> bool {
        match self {
            TNorm::Product => true,
            TNorm::OrdinalSum(bs) => bs.iter().any(|b| b.inner == InnerKind::Product),
            _ => false,
        }
    }

    pub(crate) fn conj_s<S: Scalar>(&self, x: &S, y: &S) -> S {
        match self {
            TNorm::Godel => smin(x, y),
            TNorm::Product => x.mul(y),
            TNorm::Lukasiewicz => luk_conj(x, y),
            TNorm::OrdinalSum(bs) => {
                for b in bs {
                    if b.interior(x) && b.interior(y) {
                        return b.conj(x, y);
                    }
                }
                smin(x, y)
            }
        }
    }

    pub(crate) fn imp_s<S: Scalar>(&self, x: &S, y: &S) -> S {
        if x <= y {
            return S::one();
        }
        match self {
            TNorm::Godel => y.clone(),
            TNorm::Product => y.div(x),
            TNorm::Lukasiewicz => luk_imp(x, y),
            TNorm::OrdinalSum(bs) => {
                for b in bs {
                    let (lo, hi) = b.bounds::<S>();
                    if lo <= *y && *x <= hi {
                        return b.imp(x, y);
                    }
                }
                y.clone()
            }
        }
    }

    /// Least `z` with `z ⊗ a >= r`, or `None` when `r > a`.
    pub(crate) fn least_factor_s<S: Scalar>(&self, a: &S, r: &S) -> Option<S> {
        if r > a {
            return None;
        }
        if *r <= S::zero() {
            return Some(S::zero());
        }
        Some(match self {
            TNorm::Godel => r.clone(),
            TNorm::Product => r.div(a),
            TNorm::Lukasiewicz => S::one().add(r).sub(a),
            TNorm::OrdinalSum(bs) => {
                for b in bs {
                    let (lo, hi) = b.bounds::<S>();
                    if b.interior(a) && lo < *r {
                        return Some(match b.inner {
                            InnerKind::Lukasiewicz => r.add(&hi).sub(a),
                            InnerKind::Product => {
                                lo.add(&r.sub(&lo).mul(&hi.sub(&lo)).div(&a.sub(&lo)))
                            }
                        });
                    }
                }
                r.clone()
            }
        })
    }

    pub fn conj(&self, x: &Value, y: &Value) -> Result<Value> {
        match (x, y) {
            (Value::Exact(a), Value::Exact(b)) => Ok(Value::Exact(self.conj_s(a, b))),
            (Value::Float(a), Value::Float(b)) => Value::float(self.conj_s(a, b)),
            _ => Err(Error::ModeMismatch),
        }
    }

    pub fn imp(&self, x: &Value, y: &Value) -> Result<Value> {
        match (x, y) {
            (Value::Exact(a), Value::Exact(b)) => Ok(Value::Exact(self.imp_s(a, b))),
            (Value::Float(a), Value::Float(b)) => Value::float(self.imp_s(a, b)),
            _ => Err(Error::ModeMismatch),
        }
    }

    /// Least `z` with `z ⊗ a >= r`; `None` when `r > a`.
    pub fn least_factor(&self, a: &Value, r: &Value) -> Result<Option<Value>> {
        match (a, r) {
            (Value::Exact(a), Value::Exact(r)) => Ok(self.least_factor_s(a, r).map(Value::Exact)),
            (Value::Float(a), Value::Float(r)) => {
                self.least_factor_s(a, r).map(Value::float).transpose()
            }
            _ => Err(Error::ModeMismatch),
        }
    }

    /// `x ⊗ … ⊗ x` with `n >= 1` factors.
    pub fn power(&self, x: &Value, n: u32) -> Result<Value> {
        if n == 0 {
            return Err(Error::Shape("power needs n >= 1".into()));
        }
        let mut acc = x.clone();
        for _ in 1..n {
            acc = self.conj(&acc, x)?;
        }
        Ok(acc)
    }

    pub fn idempotents(&self, grid: &ValueGrid) -> Vec<Value> {
        grid.values()
            .filter(|x| self.conj(x, x).map(|y| y == *x).unwrap_or(false))
            .collect()
    }

    /// The Archimedean base kind this t-norm is isomorphic to, if any.
    fn archimedean_kind(&self) -> Option<InnerKind> {
        match self {
            TNorm::Product => Some(InnerKind::Product),
            TNorm::Lukasiewicz => Some(InnerKind::Lukasiewicz),
            TNorm::OrdinalSum(bs)
                if bs.len() == 1 && bs[0].lo.is_zero() && bs[0].hi.is_one() =>
            {
                Some(bs[0].inner)
            }
            _ => None,
        }
    }

    pub fn is_archimedean(&self) -> bool {
        self.archimedean_kind().is_some()
    }

    /// True iff there is at most one Łukasiewicz-type summand and it starts at 0.
    pub fn continuous_off_diagonal(&self) -> bool {
        match self {
            TNorm::OrdinalSum(bs) => {
                let luk: Vec<&Block> =
                    bs.iter().filter(|b| b.inner == InnerKind::Lukasiewicz).collect();
                luk.is_empty() || (luk.len() == 1 && luk[0].lo.is_zero())
            }
            _ => true,
        }
    }

    /// The additive generator: `ln x` for Product, `x - 1` for Łukasiewicz.
    pub fn generator_eval(&self, x: &Value) -> Result<Extended> {
        match (self.archimedean_kind(), x) {
            (None, _) => Err(Error::NotArchimedean(self.to_string())),
            (Some(InnerKind::Product), Value::Exact(_)) => Err(Error::Inexact("ln")),
            (Some(InnerKind::Product), Value::Float(v)) => Ok(if *v <= 0.0 {
                Extended::NegInfinity
            } else {
                Extended::Float(v.ln())
            }),
            (Some(InnerKind::Lukasiewicz), Value::Exact(r)) => {
                Ok(Extended::Exact(r.sub(&Rational::one())))
            }
            (Some(InnerKind::Lukasiewicz), Value::Float(v)) => Ok(Extended::Float(v - 1.0)),
        }
    }

    /// The pseudo-inverse of the generator: its inverse on `[t(0), 0]`, and 0
    /// below `t(0)`.
    pub fn pseudo_inverse(&self, u: &Extended) -> Result<Value> {
        let kind = self
            .archimedean_kind()
            .ok_or_else(|| Error::NotArchimedean(self.to_string()))?;
        let positive = match u {
            Extended::NegInfinity => false,
            Extended::Exact(r) => r > &Rational::zero(),
            Extended::Float(x) => *x > crate::value::FLOAT_TOL,
        };
        if positive {
            return Err(Error::OutOfRange(format!("{u:?}")));
        }
        match (kind, u) {
            (InnerKind::Product, Extended::NegInfinity) => Ok(Value::Float(0.0)),
            (InnerKind::Product, Extended::Exact(_)) => Err(Error::Inexact("exp")),
            (InnerKind::Product, Extended::Float(x)) => Value::float(x.min(0.0).exp()),
            (InnerKind::Lukasiewicz, Extended::NegInfinity) => Ok(Value::Exact(Rational::zero())),
            (InnerKind::Lukasiewicz, Extended::Exact(r)) => {
                let v = r.add(&Rational::one());
                Ok(Value::Exact(if v.is_negative() { Rational::zero() } else { v }))
            }
            (InnerKind::Lukasiewicz, Extended::Float(x)) => Value::float((x + 1.0).clamp(0.0, 1.0)),
        }
    }

    /// Mode in which this t-norm's generator can be evaluated.
    pub fn generator_mode(&self) -> Option<Mode> {
        match self.archimedean_kind()? {
            InnerKind::Product => Some(Mode::Float),
            InnerKind::Lukasiewicz => Some(Mode::Exact),
        }
    }
}

impl fmt::Display for InnerKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            InnerKind::Product => "product",
            InnerKind::Lukasiewicz => "lukasiewicz",
        })
    }
}

impl fmt::Display for TNorm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TNorm::Godel => f.write_str("godel"),
            TNorm::Product => f.write_str("product"),
            TNorm::Lukasiewicz => f.write_str("lukasiewicz"),
            TNorm::OrdinalSum(bs) => {
                f.write_str("ordinal[")?;
                for (i, b) in bs.iter().enumerate() {
                    if i > 0 {
                        f.write_str(",")?;
                    }
                    write!(f, "({},{},{})", b.lo, b.hi, b.inner)?;
                }
                f.write_str("]")
            }
        }
    }
}

impl FromStr for TNorm {
    type Err = Error;

    /// Parses `godel`, `product`, `lukasiewicz` or
    /// `ordinal[(lo,hi,inner),...]`.
    fn from_str(s: &str) -> Result<TNorm> {
        let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let lower = t.to_ascii_lowercase();
        match lower.as_str() {
            "godel" | "goedel" | "min" => return Ok(TNorm::Godel),
            "product" => return Ok(TNorm::Product),
            "lukasiewicz" => return Ok(TNorm::Lukasiewicz),
            _ => {}
        }
        let body = lower
            .strip_prefix("ordinal[")
            .and_then(|r| r.strip_suffix(']'))
            .ok_or_else(|| Error::Parse(format!("unknown t-norm `{s}`")))?;
        let mut blocks = Vec::new();
        let mut rest = body;
        while !rest.is_empty() {
            let inner = rest
                .strip_prefix('(')
                .ok_or_else(|| Error::Parse(format!("expected `(` in `{s}`")))?;
            let close = inner
                .find(')')
                .ok_or_else(|| Error::Parse(format!("unclosed block in `{s}`")))?;
            let parts: Vec<&str> = inner[..close].split(',').collect();
            if parts.len() != 3 {
                return Err(Error::Parse(format!("block needs (lo,hi,inner) in `{s}`")));
            }
            let q = |p: &str| p.parse::<Rational>().map_err(|e| Error::Parse(e.to_string()));
            let kind = match parts[2] {
                "product" => InnerKind::Product,
                "lukasiewicz" => InnerKind::Lukasiewicz,
                other => return Err(Error::Parse(format!("unknown block kind `{other}`"))),
            };
            blocks.push(Block { lo: q(parts[0])?, hi: q(parts[1])?, inner: kind });
            rest = &inner[close + 1..];
            rest = rest.strip_prefix(',').unwrap_or(rest);
        }
        TNorm::ordinal_sum(blocks)
    }
}
