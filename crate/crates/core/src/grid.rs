//! Finite sets of rationals closed under a t-norm and its residuum.

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use crate::error::{Error, Result};
use crate::rational::Rational;
use crate::tnorm::TNorm;
use crate::value::Value;

pub const DEFAULT_CAP: usize = 4096;

/// A finite sub-algebra of `([0,1], ⊗, →)` on which exact evaluation is
/// total. Conjunction and implication are tabulated by point index.
#[derive(Clone)]
pub struct ValueGrid {
    points: Vec<Rational>,
    tnorm: TNorm,
    index: HashMap<Rational, usize>,
    conj: Vec<usize>,
    imp: Vec<usize>,
}

fn normalize(points: impl IntoIterator<Item = Rational>) -> Result<Vec<Rational>> {
    let set: BTreeSet<Rational> = points.into_iter().collect();
    let pts: Vec<Rational> = set.into_iter().collect();
    if pts.iter().any(|p| p.is_negative() || *p > Rational::one()) {
        return Err(Error::InvalidGrid("points must lie in [0,1]".into()));
    }
    if !pts.first().is_some_and(Rational::is_zero) || !pts.last().is_some_and(Rational::is_one) {
        return Err(Error::InvalidGrid("grid must contain 0 and 1".into()));
    }
    Ok(pts)
}

impl ValueGrid {
    /// Checks closure, reporting the first failing `(x, y, op)` in
    /// ascending order of `x`, then `y`, with `conj` before `imp`.
    pub fn validate(points: impl IntoIterator<Item = Rational>, t: &TNorm) -> Result<ValueGrid> {
        let pts = normalize(points)?;
        let index: HashMap<Rational, usize> =
            pts.iter().cloned().enumerate().map(|(i, p)| (p, i)).collect();
        let n = pts.len();
        let mut conj = vec![0; n * n];
        let mut imp = vec![0; n * n];
        for i in 0..n {
            for j in 0..n {
                let (x, y) = (&pts[i], &pts[j]);
                for (op, table, v) in [
                    ("conj", &mut conj, t.conj_s(x, y)),
                    ("imp", &mut imp, t.imp_s(x, y)),
                ] {
                    match index.get(&v) {
                        Some(&k) => table[i * n + j] = k,
                        None => {
                            return Err(Error::NotClosed {
                                x: x.to_string(),
                                y: y.to_string(),
                                op,
                                value: v.to_string(),
                            })
                        }
                    }
                }
            }
        }
        Ok(ValueGrid { points: pts, tnorm: t.clone(), index, conj, imp })
    }

    /// Least closed superset of `seed`, failing once it would exceed `cap`
    /// points.
    pub fn closure(
        seed: impl IntoIterator<Item = Rational>,
        t: &TNorm,
        cap: usize,
    ) -> Result<ValueGrid> {
        let mut set: BTreeSet<Rational> = seed.into_iter().collect();
        set.insert(Rational::zero());
        set.insert(Rational::one());
        loop {
            let pts: Vec<Rational> = set.iter().cloned().collect();
            let mut grew = false;
            for x in &pts {
                for y in &pts {
                    for v in [t.conj_s(x, y), t.imp_s(x, y)] {
                        if set.insert(v) {
                            grew = true;
                            if set.len() > cap {
                                return Err(Error::CapExceeded(cap));
                            }
                        }
                    }
                }
            }
            if !grew {
                return ValueGrid::validate(set, t);
            }
        }
    }

    /// `{0, 1/n, …, 1}` under Łukasiewicz.
    pub fn lukasiewicz(n: i64) -> ValueGrid {
        Self::validate((0..=n).map(|k| Rational::new(k, n)), &TNorm::Lukasiewicz)
            .expect("uniform grids are Łukasiewicz-closed")
    }

    /// Any set containing 0 and 1 is closed under Gödel.
    pub fn godel(points: impl IntoIterator<Item = Rational>) -> Result<ValueGrid> {
        Self::validate(points, &TNorm::Godel)
    }

    pub fn tnorm(&self) -> &TNorm {
        &self.tnorm
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn points(&self) -> &[Rational] {
        &self.points
    }

    pub fn point(&self, i: usize) -> Value {
        Value::Exact(self.points[i].clone())
    }

    pub fn values(&self) -> impl Iterator<Item = Value> + '_ {
        self.points.iter().map(|p| Value::Exact(p.clone()))
    }

    pub fn index_of(&self, v: &Value) -> Option<usize> {
        v.as_exact().and_then(|r| self.index.get(r).copied())
    }

    pub fn contains(&self, v: &Value) -> bool {
        self.index_of(v).is_some()
    }

    pub fn conj_idx(&self, i: usize, j: usize) -> usize {
        self.conj[i * self.points.len() + j]
    }

    pub fn imp_idx(&self, i: usize, j: usize) -> usize {
        self.imp[i * self.points.len() + j]
    }

    /// Parses `{0, 1/3, 2/3, 1}`.
    pub fn parse(s: &str, t: &TNorm) -> Result<ValueGrid> {
        Self::validate(parse_points(s)?, t)
    }
}

/// Parses the textual point list `{p, q, …}` without validating closure.
pub fn parse_points(s: &str) -> Result<Vec<Rational>> {
    let body = s
        .trim()
        .strip_prefix('{')
        .and_then(|r| r.strip_suffix('}'))
        .ok_or_else(|| Error::Parse(format!("grid must look like {{0, 1/2, 1}}: `{s}`")))?;
    body.split(',')
        .filter(|p| !p.trim().is_empty())
        .map(|p| p.parse::<Rational>().map_err(|e| Error::Parse(e.to_string())))
        .collect()
}

impl fmt::Display for ValueGrid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, p) in self.points.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{p}")?;
        }
        f.write_str("}")
    }
}

impl fmt::Debug for ValueGrid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ValueGrid({self} under {})", self.tnorm)
    }
}

impl PartialEq for ValueGrid {
    fn eq(&self, other: &Self) -> bool {
        self.points == other.points && self.tnorm == other.tnorm
    }
}
