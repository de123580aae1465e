//! Finite [0,1]-enriched categories, [0,1]-relations and distributors.
//!
//! A relation `r: X → Y` is an `|X| × |Y|` matrix `r(x, y)`. Weights are
//! relations `X → ⋆` and coweights relations `⋆ → X`, so the presheaf
//! calculus reuses [`compose`], [`residual_left`] and [`residual_right`].

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::grid::{ValueGrid, DEFAULT_CAP};
use crate::poset::FinitePoset;
use crate::rational::Rational;
use crate::tnorm::TNorm;
use crate::value::{Mode, Value};

#[derive(Clone, PartialEq)]
pub struct Rel {
    rows: usize,
    cols: usize,
    mode: Mode,
    data: Vec<Value>,
}

impl Rel {
    pub fn new(rows: usize, cols: usize, mode: Mode, data: Vec<Value>) -> Result<Rel> {
        if data.len() != rows * cols {
            return Err(Error::Shape(format!(
                "{} entries for a {rows}x{cols} relation",
                data.len()
            )));
        }
        if data.iter().any(|v| v.mode() != mode) {
            return Err(Error::ModeMismatch);
        }
        Ok(Rel { rows, cols, mode, data })
    }

    pub fn from_rows(mode: Mode, rows: Vec<Vec<Value>>) -> Result<Rel> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::Shape("ragged matrix".into()));
        }
        Rel::new(r, c, mode, rows.into_iter().flatten().collect())
    }

    pub fn constant(rows: usize, cols: usize, v: Value) -> Rel {
        Rel { rows, cols, mode: v.mode(), data: vec![v; rows * cols] }
    }

    /// The identity relation of a discrete carrier.
    pub fn identity(n: usize, mode: Mode) -> Rel {
        let mut r = Rel::constant(n, n, Value::zero(mode));
        for i in 0..n {
            r.data[i * n + i] = Value::one(mode);
        }
        r
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    pub fn get(&self, i: usize, j: usize) -> &Value {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Value) -> Result<()> {
        if v.mode() != self.mode {
            return Err(Error::ModeMismatch);
        }
        self.data[i * self.cols + j] = v;
        Ok(())
    }

    pub fn row(&self, i: usize) -> &[Value] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<Value> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn entries(&self) -> &[Value] {
        &self.data
    }

    pub fn to_rows(&self) -> Vec<Vec<Value>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> Rel {
        let mut data = Vec::with_capacity(self.data.len());
        for j in 0..self.cols {
            for i in 0..self.rows {
                data.push(self.get(i, j).clone());
            }
        }
        Rel { rows: self.cols, cols: self.rows, mode: self.mode, data }
    }

    /// Entrywise order.
    pub fn le(&self, other: &Rel) -> Result<bool> {
        self.same_shape(other)?;
        for (a, b) in self.data.iter().zip(&other.data) {
            if !a.le(b)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    fn same_shape(&self, other: &Rel) -> Result<()> {
        if (self.rows, self.cols) != (other.rows, other.cols) {
            return Err(Error::Shape(format!(
                "{}x{} vs {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        if self.mode != other.mode {
            return Err(Error::ModeMismatch);
        }
        Ok(())
    }
}

impl fmt::Debug for Rel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.to_rows()).finish()
    }
}

fn check_mode(a: &Rel, b: &Rel) -> Result<()> {
    if a.mode != b.mode {
        Err(Error::ModeMismatch)
    } else {
        Ok(())
    }
}

/// `(s ∘ r)(x, z) = sup_y s(y, z) ⊗ r(x, y)` for `r: X → Y`, `s: Y → Z`.
pub fn compose(t: &TNorm, s: &Rel, r: &Rel) -> Result<Rel> {
    if r.cols != s.rows {
        return Err(Error::Shape(format!("compose: middle {} vs {}", r.cols, s.rows)));
    }
    check_mode(s, r)?;
    let mut data = Vec::with_capacity(r.rows * s.cols);
    for x in 0..r.rows {
        for z in 0..s.cols {
            let mut acc = Value::zero(r.mode);
            for y in 0..r.cols {
                acc = acc.max(&t.conj(s.get(y, z), r.get(x, y))?)?;
            }
            data.push(acc);
        }
    }
    Ok(Rel { rows: r.rows, cols: s.cols, mode: r.mode, data })
}

/// `(t ↙ r)(y, z) = inf_x r(x, y) → t(x, z)` for `t: X → Z`, `r: X → Y`.
pub fn residual_left(tn: &TNorm, t: &Rel, r: &Rel) -> Result<Rel> {
    if t.rows != r.rows {
        return Err(Error::Shape(format!("residual_left: sources {} vs {}", t.rows, r.rows)));
    }
    check_mode(t, r)?;
    let mut data = Vec::with_capacity(r.cols * t.cols);
    for y in 0..r.cols {
        for z in 0..t.cols {
            let mut acc = Value::one(t.mode);
            for x in 0..t.rows {
                acc = acc.min(&tn.imp(r.get(x, y), t.get(x, z))?)?;
            }
            data.push(acc);
        }
    }
    Ok(Rel { rows: r.cols, cols: t.cols, mode: t.mode, data })
}

/// `(s ↘ t)(x, y) = inf_z s(y, z) → t(x, z)` for `s: Y → Z`, `t: X → Z`.
pub fn residual_right(tn: &TNorm, s: &Rel, t: &Rel) -> Result<Rel> {
    if s.cols != t.cols {
        return Err(Error::Shape(format!("residual_right: targets {} vs {}", s.cols, t.cols)));
    }
    check_mode(s, t)?;
    let mut data = Vec::with_capacity(t.rows * s.rows);
    for x in 0..t.rows {
        for y in 0..s.rows {
            let mut acc = Value::one(t.mode);
            for z in 0..t.cols {
                acc = acc.min(&tn.imp(s.get(y, z), t.get(x, z))?)?;
            }
            data.push(acc);
        }
    }
    Ok(Rel { rows: t.rows, cols: s.rows, mode: t.mode, data })
}

/// The first failing category axiom.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Violation {
    NotSquare { rows: usize, cols: usize },
    Reflexivity { x: usize, value: String },
    Transitivity { x: usize, y: usize, z: usize, composite: String, direct: String },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::NotSquare { rows, cols } => write!(f, "hom is {rows}x{cols}, not square"),
            Violation::Reflexivity { x, value } => write!(f, "hom({x},{x}) = {value} != 1"),
            Violation::Transitivity { x, y, z, composite, direct } => write!(
                f,
                "hom({y},{z}) (x) hom({x},{y}) = {composite} > hom({x},{z}) = {direct}"
            ),
        }
    }
}

/// Checks reflexivity, then transitivity over `(x, y, z)` in lexicographic
/// order. Float entries get the comparison tolerance as slack.
pub fn validate(t: &TNorm, hom: &Rel) -> std::result::Result<(), Violation> {
    let n = hom.rows;
    if hom.cols != n {
        return Err(Violation::NotSquare { rows: hom.rows, cols: hom.cols });
    }
    for x in 0..n {
        if !hom.get(x, x).is_one() {
            return Err(Violation::Reflexivity { x, value: hom.get(x, x).to_string() });
        }
    }
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                let c = t.conj(hom.get(y, z), hom.get(x, y)).expect("uniform mode");
                if !c.le(hom.get(x, z)).expect("uniform mode") {
                    return Err(Violation::Transitivity {
                        x,
                        y,
                        z,
                        composite: c.to_string(),
                        direct: hom.get(x, z).to_string(),
                    });
                }
            }
        }
    }
    Ok(())
}

/// Default labels: `a`, `b`, … then `x26`, `x27`, ….
pub fn default_names(n: usize) -> Vec<String> {
    (0..n)
        .map(|i| {
            if i < 26 {
                ((b'a' + i as u8) as char).to_string()
            } else {
                format!("x{i}")
            }
        })
        .collect()
}

#[derive(Clone)]
pub struct EnrichedCategory {
    tnorm: TNorm,
    grid: Option<ValueGrid>,
    names: Vec<String>,
    hom: Rel,
}

impl fmt::Debug for EnrichedCategory {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("EnrichedCategory")
            .field("tnorm", &self.tnorm.to_string())
            .field("names", &self.names)
            .field("hom", &self.hom)
            .finish()
    }
}

impl PartialEq for EnrichedCategory {
    fn eq(&self, other: &Self) -> bool {
        self.tnorm == other.tnorm && self.hom == other.hom
    }
}

impl EnrichedCategory {
    pub fn new(tnorm: TNorm, hom: Rel) -> Result<Self> {
        validate(&tnorm, &hom).map_err(Error::NotACategory)?;
        let names = default_names(hom.rows);
        Ok(EnrichedCategory { tnorm, grid: None, names, hom })
    }

    pub fn from_rows(tnorm: TNorm, rows: Vec<Vec<Value>>) -> Result<Self> {
        let mode = rows.first().and_then(|r| r.first()).map_or(Mode::Exact, Value::mode);
        Self::new(tnorm, Rel::from_rows(mode, rows)?)
    }

    pub fn with_names(mut self, names: Vec<String>) -> Result<Self> {
        if names.len() != self.n() {
            return Err(Error::Shape(format!("{} names for {} elements", names.len(), self.n())));
        }
        let mut sorted = names.clone();
        sorted.sort();
        sorted.dedup();
        if sorted.len() != names.len() {
            return Err(Error::Shape("duplicate element names".into()));
        }
        self.names = names;
        Ok(self)
    }

    /// Attaches a grid; every hom value must be a grid point.
    pub fn with_grid(mut self, grid: ValueGrid) -> Result<Self> {
        if grid.tnorm() != &self.tnorm {
            return Err(Error::InvalidGrid(format!(
                "grid is closed under {}, category uses {}",
                grid.tnorm(),
                self.tnorm
            )));
        }
        if let Some(v) = self.hom.entries().iter().find(|v| !grid.contains(v)) {
            return Err(Error::InvalidGrid(format!("hom value {v} is not in {grid}")));
        }
        self.grid = Some(grid);
        Ok(self)
    }

    pub fn discrete(tnorm: TNorm, n: usize, mode: Mode) -> Self {
        EnrichedCategory { tnorm, grid: None, names: default_names(n), hom: Rel::identity(n, mode) }
    }

    /// The one-object category `⋆`.
    pub fn terminal(tnorm: TNorm, mode: Mode) -> Self {
        Self::discrete(tnorm, 1, mode)
    }

    /// The grid itself as a category: objects are grid points and
    /// `hom(x, y) = x → y`.
    pub fn from_grid(grid: &ValueGrid) -> Self {
        let t = grid.tnorm().clone();
        let n = grid.len();
        let mut data = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                data.push(grid.point(grid.imp_idx(i, j)));
            }
        }
        let hom = Rel { rows: n, cols: n, mode: Mode::Exact, data };
        EnrichedCategory {
            tnorm: t,
            grid: Some(grid.clone()),
            names: grid.points().iter().map(Rational::to_string).collect(),
            hom,
        }
    }

    pub fn n(&self) -> usize {
        self.hom.rows
    }

    pub fn tnorm(&self) -> &TNorm {
        &self.tnorm
    }

    pub fn grid(&self) -> Option<&ValueGrid> {
        self.grid.as_ref()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn mode(&self) -> Mode {
        self.hom.mode
    }

    pub fn hom(&self, x: usize, y: usize) -> &Value {
        self.hom.get(x, y)
    }

    pub fn hom_rel(&self) -> &Rel {
        &self.hom
    }

    pub fn conj(&self, a: &Value, b: &Value) -> Result<Value> {
        self.tnorm.conj(a, b)
    }

    pub fn imp(&self, a: &Value, b: &Value) -> Result<Value> {
        self.tnorm.imp(a, b)
    }

    pub fn zero(&self) -> Value {
        Value::zero(self.mode())
    }

    pub fn one(&self) -> Value {
        Value::one(self.mode())
    }

    /// The declared grid, or else the closure of `{0, 1}` and the hom values.
    pub fn value_grid(&self) -> Result<ValueGrid> {
        if let Some(g) = &self.grid {
            return Ok(g.clone());
        }
        if self.mode() != Mode::Exact {
            return Err(Error::Unsupported("grid semantics need exact mode".into()));
        }
        let seed = self.hom.entries().iter().filter_map(|v| v.as_exact().cloned());
        ValueGrid::closure(seed, &self.tnorm, DEFAULT_CAP)
    }

    /// `x ⊑ y` iff `hom(x, y) = 1`.
    pub fn underlying_order(&self) -> FinitePoset {
        let n = self.n();
        let leq = (0..n).map(|x| (0..n).map(|y| self.hom(x, y).is_one()).collect()).collect();
        FinitePoset::new(leq).expect("underlying order of a category is a preorder")
    }

    pub fn is_isomorphic_elements(&self, x: usize, y: usize) -> bool {
        self.hom(x, y).is_one() && self.hom(y, x).is_one()
    }

    pub fn is_separated(&self) -> bool {
        (0..self.n()).all(|x| (0..x).all(|y| !self.is_isomorphic_elements(x, y)))
    }

    pub fn opposite(&self) -> Self {
        EnrichedCategory {
            tnorm: self.tnorm.clone(),
            grid: self.grid.clone(),
            names: self.names.clone(),
            hom: self.hom.transpose(),
        }
    }

    /// `S(x, y) = min(hom(x, y), hom(y, x))`.
    pub fn symmetrize(&self) -> Self {
        let n = self.n();
        let mut hom = self.hom.clone();
        for x in 0..n {
            for y in 0..n {
                hom.data[x * n + y] = self.hom(x, y).min(self.hom(y, x)).expect("uniform mode");
            }
        }
        EnrichedCategory { hom, ..self.clone() }
    }

    /// Full subcategory on `elems` (in the given order).
    pub fn restrict(&self, elems: &[usize]) -> Self {
        let k = elems.len();
        let mut data = Vec::with_capacity(k * k);
        for &x in elems {
            for &y in elems {
                data.push(self.hom(x, y).clone());
            }
        }
        EnrichedCategory {
            tnorm: self.tnorm.clone(),
            grid: self.grid.clone(),
            names: elems.iter().map(|&i| self.names[i].clone()).collect(),
            hom: Rel { rows: k, cols: k, mode: self.mode(), data },
        }
    }

    /// Merges isomorphic elements, keeping least indices as representatives.
    /// Returns the quotient and the projection onto its elements.
    pub fn separated_quotient(&self) -> (Self, Vec<usize>) {
        let n = self.n();
        let mut reps: Vec<usize> = Vec::new();
        let mut proj = vec![0; n];
        for x in 0..n {
            match reps.iter().position(|&r| self.is_isomorphic_elements(r, x)) {
                Some(k) => proj[x] = k,
                None => {
                    proj[x] = reps.len();
                    reps.push(x);
                }
            }
        }
        (self.restrict(&reps), proj)
    }

    /// An isomorphism `self → other` as an index map, by backtracking.
    pub fn find_isomorphism(&self, other: &Self) -> Option<Vec<usize>> {
        let n = self.n();
        if n != other.n() || self.tnorm != other.tnorm || self.mode() != other.mode() {
            return None;
        }
        let mut map = Vec::with_capacity(n);
        let mut used = vec![false; n];
        fn go(
            a: &EnrichedCategory,
            b: &EnrichedCategory,
            map: &mut Vec<usize>,
            used: &mut [bool],
        ) -> bool {
            let i = map.len();
            if i == a.n() {
                return true;
            }
            for j in 0..b.n() {
                if used[j] {
                    continue;
                }
                let ok = (0..i).all(|k| {
                    a.hom(i, k) == b.hom(j, map[k]) && a.hom(k, i) == b.hom(map[k], j)
                }) && a.hom(i, i) == b.hom(j, j);
                if ok {
                    used[j] = true;
                    map.push(j);
                    if go(a, b, map, used) {
                        return true;
                    }
                    map.pop();
                    used[j] = false;
                }
            }
            false
        }
        go(self, other, &mut map, &mut used).then_some(map)
    }

    /// Every functor `self → target`, in lexicographic order of images.
    pub fn functors_to(&self, target: &Self, bound: usize) -> Result<Vec<Vec<usize>>> {
        let mut out = Vec::new();
        let mut map = Vec::with_capacity(self.n());
        fn go(
            x: &EnrichedCategory,
            y: &EnrichedCategory,
            map: &mut Vec<usize>,
            out: &mut Vec<Vec<usize>>,
            bound: usize,
        ) -> Result<()> {
            let i = map.len();
            if i == x.n() {
                if out.len() >= bound {
                    return Err(Error::BoundExceeded {
                        needed: out.len() as u128 + 1,
                        bound: bound as u128,
                    });
                }
                out.push(map.clone());
                return Ok(());
            }
            for j in 0..y.n() {
                let ok = (0..i).all(|k| {
                    x.hom(i, k).le(y.hom(j, map[k])).unwrap_or(false)
                        && x.hom(k, i).le(y.hom(map[k], j)).unwrap_or(false)
                });
                if ok {
                    map.push(j);
                    go(x, y, map, out, bound)?;
                    map.pop();
                }
            }
            Ok(())
        }
        if self.mode() != target.mode() {
            return Err(Error::ModeMismatch);
        }
        go(self, target, &mut map, &mut out, bound)?;
        Ok(out)
    }
}

/// The category `[X, Y]` of functors with `hom(f, g) = inf_x Y(f x, g x)`.
pub fn hom_category(
    x: &EnrichedCategory,
    y: &EnrichedCategory,
    bound: usize,
) -> Result<(EnrichedCategory, Vec<Vec<usize>>)> {
    if x.tnorm != y.tnorm {
        return Err(Error::InvalidTNorm("categories use different t-norms".into()));
    }
    let fs = x.functors_to(y, bound)?;
    let k = fs.len();
    let mut data = Vec::with_capacity(k * k);
    for f in &fs {
        for g in &fs {
            data.push(crate::value::inf(
                y.mode(),
                &(0..x.n()).map(|i| y.hom(f[i], g[i]).clone()).collect::<Vec<_>>(),
            )?);
        }
    }
    let names = fs
        .iter()
        .map(|f| format!("[{}]", f.iter().map(|&i| y.name(i)).collect::<Vec<_>>().join(",")))
        .collect();
    let cat = EnrichedCategory::new(x.tnorm.clone(), Rel::new(k, k, y.mode(), data)?)?
        .with_names(names)?;
    let cat = match y.grid() {
        Some(g) => cat.with_grid(g.clone())?,
        None => cat,
    };
    Ok((cat, fs))
}

/// A functor between two categories, borrowing both.
#[derive(Clone, Debug)]
pub struct EnrichedFunctor<'a> {
    source: &'a EnrichedCategory,
    target: &'a EnrichedCategory,
    map: Vec<usize>,
}

impl<'a> EnrichedFunctor<'a> {
    pub fn new(
        source: &'a EnrichedCategory,
        target: &'a EnrichedCategory,
        map: Vec<usize>,
    ) -> Result<Self> {
        if map.len() != source.n() || map.iter().any(|&j| j >= target.n()) {
            return Err(Error::Shape("functor map does not fit the carriers".into()));
        }
        if source.tnorm != target.tnorm {
            return Err(Error::InvalidTNorm("functor between different t-norms".into()));
        }
        for x in 0..source.n() {
            for y in 0..source.n() {
                if !source.hom(x, y).le(target.hom(map[x], map[y]))? {
                    return Err(Error::NotAFunctor { x, y });
                }
            }
        }
        Ok(EnrichedFunctor { source, target, map })
    }

    pub fn identity(x: &'a EnrichedCategory) -> Self {
        EnrichedFunctor { source: x, target: x, map: (0..x.n()).collect() }
    }

    pub fn source(&self) -> &'a EnrichedCategory {
        self.source
    }

    pub fn target(&self) -> &'a EnrichedCategory {
        self.target
    }

    pub fn map(&self) -> &[usize] {
        &self.map
    }

    pub fn apply(&self, x: usize) -> usize {
        self.map[x]
    }

    /// `f_*(x, y) = Y(f x, y)`.
    pub fn graph(&self) -> Distributor {
        let (m, n) = (self.source.n(), self.target.n());
        let mut data = Vec::with_capacity(m * n);
        for x in 0..m {
            for y in 0..n {
                data.push(self.target.hom(self.map[x], y).clone());
            }
        }
        Distributor(Rel { rows: m, cols: n, mode: self.target.mode(), data })
    }

    /// `f^*(y, x) = Y(y, f x)`.
    pub fn cograph(&self) -> Distributor {
        let (m, n) = (self.source.n(), self.target.n());
        let mut data = Vec::with_capacity(m * n);
        for y in 0..n {
            for x in 0..m {
                data.push(self.target.hom(y, self.map[x]).clone());
            }
        }
        Distributor(Rel { rows: n, cols: m, mode: self.target.mode(), data })
    }

    /// `f^* ∘ f_* = X`.
    pub fn is_fully_faithful(&self) -> Result<bool> {
        let c = compose(self.source.tnorm(), self.cograph().rel(), self.graph().rel())?;
        Ok(&c == self.source.hom_rel())
    }
}

/// A relation `φ: X ⇸ Y` with `φ(x2, y) ⊗ X(x1, x2) <= φ(x1, y)` and
/// `Y(y1, y2) ⊗ φ(x, y1) <= φ(x, y2)`.
#[derive(Clone, Debug, PartialEq)]
pub struct Distributor(Rel);

impl Distributor {
    pub fn new(x: &EnrichedCategory, y: &EnrichedCategory, rel: Rel) -> Result<Self> {
        if rel.rows != x.n() || rel.cols != y.n() {
            return Err(Error::Shape("distributor does not fit the carriers".into()));
        }
        let t = x.tnorm();
        for a in 0..x.n() {
            for b in 0..y.n() {
                for c in 0..x.n() {
                    if !t.conj(rel.get(c, b), x.hom(a, c))?.le(rel.get(a, b))? {
                        return Err(Error::NotADistributor(vec![a, c, b]));
                    }
                }
                for c in 0..y.n() {
                    if !t.conj(y.hom(b, c), rel.get(a, b))?.le(rel.get(a, c))? {
                        return Err(Error::NotADistributor(vec![a, b, c]));
                    }
                }
            }
        }
        Ok(Distributor(rel))
    }

    pub fn rel(&self) -> &Rel {
        &self.0
    }

    pub fn into_rel(self) -> Rel {
        self.0
    }
}

/// `ψ: X ⇸ Y` is left adjoint to `φ: Y ⇸ X` iff `X <= φ ∘ ψ` and
/// `ψ ∘ φ <= Y`.
pub fn adjoint_pair_check(
    x: &EnrichedCategory,
    y: &EnrichedCategory,
    psi: &Rel,
    phi: &Rel,
) -> Result<bool> {
    let t = x.tnorm();
    Ok(x.hom_rel().le(&compose(t, phi, psi)?)? && compose(t, psi, phi)?.le(y.hom_rel())?)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(p: i64, d: i64) -> Value {
        Value::ratio(p, d)
    }

    fn a2() -> EnrichedCategory {
        EnrichedCategory::from_rows(TNorm::Lukasiewicz, vec![vec![q(1, 1), q(2, 3)], vec![q(0, 1), q(1, 1)]])
            .unwrap()
    }

    fn d2() -> EnrichedCategory {
        EnrichedCategory::discrete(TNorm::Lukasiewicz, 2, Mode::Exact)
    }

    #[test]
    fn validate_examples() {
        assert!(validate(&TNorm::Godel, &Rel::identity(2, Mode::Exact)).is_ok());
        assert!(validate(&TNorm::Lukasiewicz, a2().hom_rel()).is_ok());
        let one = q(1, 1);
        let zero = q(0, 1);
        let bad = Rel::from_rows(
            Mode::Exact,
            vec![
                vec![one.clone(), one.clone(), zero.clone()],
                vec![zero.clone(), one.clone(), one.clone()],
                vec![zero.clone(), zero.clone(), one.clone()],
            ],
        )
        .unwrap();
        assert_eq!(
            validate(&TNorm::Godel, &bad),
            Err(Violation::Transitivity { x: 0, y: 1, z: 2, composite: "1".into(), direct: "0".into() })
        );
    }

    #[test]
    fn compose_examples() {
        let x = a2();
        let t = x.tnorm();
        let h = x.hom_rel();
        assert_eq!(&compose(t, h, &Rel::identity(2, Mode::Exact)).unwrap(), h);
        // y(b) as X → ⋆ after y†(a) as ⋆ → X.
        let yb = Rel::new(2, 1, Mode::Exact, x.hom_rel().column(1)).unwrap();
        let ya = Rel::new(1, 2, Mode::Exact, x.hom_rel().row(0).to_vec()).unwrap();
        assert_eq!(compose(t, &yb, &ya).unwrap().get(0, 0), &q(2, 3));
        let z = Rel::constant(2, 2, q(0, 1));
        assert_eq!(compose(t, h, &z).unwrap(), z);
    }

    #[test]
    fn residual_examples() {
        let x = d2();
        let t = x.tnorm();
        let phi = Rel::new(2, 1, Mode::Exact, vec![q(1, 1), q(0, 1)]).unwrap();
        let ub = residual_left(t, x.hom_rel(), &phi).unwrap();
        assert_eq!(ub.row(0), &[q(1, 1), q(0, 1)]);
        let h = a2();
        assert_eq!(&residual_left(t, h.hom_rel(), &Rel::identity(2, Mode::Exact)).unwrap(), h.hom_rel());
    }

    /// Every 2×2 relation over {0,1/2,1}.
    fn all_rels() -> Vec<Rel> {
        let g = [q(0, 1), q(1, 2), q(1, 1)];
        let mut out = Vec::new();
        for code in 0..81 {
            let mut c = code;
            let mut d = Vec::new();
            for _ in 0..4 {
                d.push(g[c % 3].clone());
                c /= 3;
            }
            out.push(Rel::new(2, 2, Mode::Exact, d).unwrap());
        }
        out
    }

    #[test]
    fn residual_galois_exhaustive() {
        for t in [TNorm::Lukasiewicz, TNorm::Godel] {
            let rels = all_rels();
            for r in rels.iter().step_by(4) {
                for s in rels.iter().step_by(3) {
                    for u in rels.iter().step_by(5) {
                        let a = s.le(&residual_left(&t, u, r).unwrap()).unwrap();
                        let b = compose(&t, s, r).unwrap().le(u).unwrap();
                        let c = r.le(&residual_right(&t, s, u).unwrap()).unwrap();
                        assert_eq!(a, b);
                        assert_eq!(b, c);
                    }
                }
            }
        }
    }

    #[test]
    fn compose_associative_exhaustive() {
        let t = TNorm::Lukasiewicz;
        let rels = all_rels();
        let id = Rel::identity(2, Mode::Exact);
        for a in rels.iter().step_by(2) {
            assert_eq!(&compose(&t, a, &id).unwrap(), a);
            assert_eq!(&compose(&t, &id, a).unwrap(), a);
            for b in rels.iter().step_by(7) {
                for c in rels.iter().step_by(11) {
                    let l = compose(&t, &compose(&t, c, b).unwrap(), a).unwrap();
                    let r = compose(&t, c, &compose(&t, b, a).unwrap()).unwrap();
                    assert_eq!(l, r);
                }
            }
        }
    }

    #[test]
    fn functor_examples() {
        let x = d2();
        let id = EnrichedFunctor::identity(&x);
        assert_eq!(id.graph().rel(), x.hom_rel());
        assert!(id.is_fully_faithful().unwrap());
        let c = EnrichedFunctor::new(&x, &x, vec![0, 0]).unwrap();
        assert_eq!(c.graph().rel().row(1), x.hom_rel().column(0).as_slice());
        assert!(!c.is_fully_faithful().unwrap());
        assert!(adjoint_pair_check(&x, &x, c.graph().rel(), c.cograph().rel()).unwrap());
        let a = a2();
        assert!(matches!(EnrichedFunctor::new(&a, &x, vec![0, 1]), Err(Error::NotAFunctor { .. })));
    }

    #[test]
    fn adjoint_pair_examples() {
        let x = a2();
        let star = EnrichedCategory::terminal(TNorm::Lukasiewicz, Mode::Exact);
        let ya = Rel::new(2, 1, Mode::Exact, x.hom_rel().column(0)).unwrap();
        let cya = Rel::new(1, 2, Mode::Exact, x.hom_rel().row(0).to_vec()).unwrap();
        assert!(adjoint_pair_check(&star, &x, &cya, &ya).unwrap());
        let d = d2();
        let psi = Rel::new(1, 2, Mode::Exact, vec![q(1, 1), q(1, 1)]).unwrap();
        let phi = Rel::new(2, 1, Mode::Exact, vec![q(1, 1), q(1, 1)]).unwrap();
        assert!(!adjoint_pair_check(&star, &d, &psi, &phi).unwrap());
    }

    #[test]
    fn derived_structures() {
        let x = a2();
        let o = x.underlying_order();
        assert!(o.leq(0, 0) && o.leq(1, 1) && !o.leq(0, 1) && !o.leq(1, 0));
        assert!(x.is_separated());
        assert_eq!(x.opposite().opposite(), x);
        let twin = EnrichedCategory::from_rows(TNorm::Godel, vec![vec![q(1, 1), q(1, 1)], vec![q(1, 1), q(1, 1)]])
            .unwrap();
        assert!(!twin.is_separated());
        let (quot, proj) = twin.separated_quotient();
        assert_eq!(quot.n(), 1);
        assert_eq!(proj, vec![0, 0]);
        assert_eq!(x.symmetrize().hom(0, 1), &q(0, 1));
    }

    #[test]
    fn hom_category_examples() {
        let d = d2();
        let (h, fs) = hom_category(&d, &d, 100).unwrap();
        assert_eq!(fs.len(), 4);
        // hom(f, g) = 1 iff f = g on a discrete target.
        for i in 0..4 {
            for j in 0..4 {
                assert_eq!(h.hom(i, j).is_one(), i == j);
            }
        }
        let star = EnrichedCategory::terminal(TNorm::Lukasiewicz, Mode::Exact);
        let x = a2();
        let (sx, _) = hom_category(&star, &x, 100).unwrap();
        assert!(sx.find_isomorphism(&x).is_some());
        assert!(matches!(hom_category(&d, &d, 3), Err(Error::BoundExceeded { .. })));
    }
}
