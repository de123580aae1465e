//! Weights and coweights: Yoneda, presheaf homs, weighted colimits and
//! limits, tensors, Kan extensions and the Isbell adjunction.
//!
//! A weight `φ` of `X` is stored as the relation `X → ⋆`, a coweight as
//! `⋆ → X`, and every operation is one of [`compose`], [`residual_left`] or
//! [`residual_right`] applied to those relations.

use serde::Serialize;

use crate::cat::{compose, residual_left, residual_right, EnrichedCategory, EnrichedFunctor, Rel};
use crate::error::{Error, Result};
use crate::grid::ValueGrid;
use crate::value::{Mode, Value};

pub const DEFAULT_BOUND: u128 = 1_000_000;

/// A contravariant presheaf: `φ(x2) ⊗ X(x1, x2) <= φ(x1)`.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(transparent)]
pub struct Weight(Vec<Value>);

/// A covariant presheaf: `X(y1, y2) ⊗ ψ(y1) <= ψ(y2)`.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(transparent)]
pub struct Coweight(Vec<Value>);

impl Weight {
    pub fn values(&self) -> &[Value] {
        &self.0
    }

    pub fn get(&self, x: usize) -> &Value {
        &self.0[x]
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn to_rel(&self, mode: Mode) -> Rel {
        Rel::new(self.0.len(), 1, mode, self.0.clone()).expect("weight entries share a mode")
    }

    fn from_rel(r: Rel) -> Weight {
        Weight(r.column(0))
    }
}

impl Coweight {
    pub fn values(&self) -> &[Value] {
        &self.0
    }

    pub fn get(&self, x: usize) -> &Value {
        &self.0[x]
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn to_rel(&self, mode: Mode) -> Rel {
        Rel::new(1, self.0.len(), mode, self.0.clone()).expect("coweight entries share a mode")
    }

    fn from_rel(r: Rel) -> Coweight {
        Coweight(r.row(0).to_vec())
    }
}

/// `|grid|^n`, saturating.
pub fn candidate_count(grid_len: usize, n: usize) -> u128 {
    (grid_len as u128).checked_pow(n as u32).unwrap_or(u128::MAX)
}

impl EnrichedCategory {
    fn check_vector(&self, values: &[Value]) -> Result<()> {
        if values.len() != self.n() {
            return Err(Error::BaseMismatch { expected: self.n(), found: values.len() });
        }
        if values.iter().any(|v| v.mode() != self.mode()) {
            return Err(Error::ModeMismatch);
        }
        Ok(())
    }

    pub fn weight(&self, values: Vec<Value>) -> Result<Weight> {
        self.check_vector(&values)?;
        for x1 in 0..self.n() {
            for x2 in 0..self.n() {
                if !self.conj(&values[x2], self.hom(x1, x2))?.le(&values[x1])? {
                    return Err(Error::NotAWeight { x1, x2 });
                }
            }
        }
        Ok(Weight(values))
    }

    pub fn coweight(&self, values: Vec<Value>) -> Result<Coweight> {
        self.check_vector(&values)?;
        for y1 in 0..self.n() {
            for y2 in 0..self.n() {
                if !self.conj(self.hom(y1, y2), &values[y1])?.le(&values[y2])? {
                    return Err(Error::NotACoweight { y1, y2 });
                }
            }
        }
        Ok(Coweight(values))
    }

    fn check_weight(&self, w: &Weight) -> Result<()> {
        self.check_vector(&w.0)
    }

    fn check_coweight(&self, w: &Coweight) -> Result<()> {
        self.check_vector(&w.0)
    }

    /// `y(a) = X(−, a)`.
    pub fn yoneda(&self, a: usize) -> Weight {
        Weight(self.hom_rel().column(a))
    }

    /// `y†(a) = X(a, −)`.
    pub fn coyoneda(&self, a: usize) -> Coweight {
        Coweight(self.hom_rel().row(a).to_vec())
    }

    /// `sub(φ1, φ2) = inf_x φ1(x) → φ2(x)`, the hom of the presheaf category.
    pub fn sub(&self, a: &Weight, b: &Weight) -> Result<Value> {
        self.check_weight(a)?;
        self.check_weight(b)?;
        let m = self.mode();
        Ok(residual_left(self.tnorm(), &b.to_rel(m), &a.to_rel(m))?.get(0, 0).clone())
    }

    /// `inf_y ψ2(y) → ψ1(y)`, the hom of the copresheaf category (order
    /// reversed).
    pub fn cosub(&self, a: &Coweight, b: &Coweight) -> Result<Value> {
        self.check_coweight(a)?;
        self.check_coweight(b)?;
        let m = self.mode();
        Ok(residual_right(self.tnorm(), &b.to_rel(m), &a.to_rel(m))?.get(0, 0).clone())
    }

    /// `φ ∘ ψ = sup_x φ(x) ⊗ ψ(x)`.
    pub fn pairing(&self, phi: &Weight, psi: &Coweight) -> Result<Value> {
        self.check_weight(phi)?;
        self.check_coweight(psi)?;
        let m = self.mode();
        Ok(compose(self.tnorm(), &phi.to_rel(m), &psi.to_rel(m))?.get(0, 0).clone())
    }

    /// `ub φ = X ↙ φ`.
    pub fn isbell_ub(&self, phi: &Weight) -> Result<Coweight> {
        self.check_weight(phi)?;
        Ok(Coweight::from_rel(residual_left(
            self.tnorm(),
            self.hom_rel(),
            &phi.to_rel(self.mode()),
        )?))
    }

    /// `lb ψ = ψ ↘ X`.
    pub fn isbell_lb(&self, psi: &Coweight) -> Result<Weight> {
        self.check_coweight(psi)?;
        Ok(Weight::from_rel(residual_right(
            self.tnorm(),
            &psi.to_rel(self.mode()),
            self.hom_rel(),
        )?))
    }

    /// Least `c` with `X(c, −) = X ↙ φ`.
    pub fn colim(&self, phi: &Weight) -> Result<Option<usize>> {
        let ub = self.isbell_ub(phi)?;
        Ok((0..self.n()).find(|&c| self.hom_rel().row(c) == ub.values()))
    }

    /// Least `c` with `X(−, c) = ψ ↘ X`.
    pub fn lim(&self, psi: &Coweight) -> Result<Option<usize>> {
        let lb = self.isbell_lb(psi)?;
        Ok((0..self.n()).find(|&c| self.hom_rel().column(c) == lb.values()))
    }

    /// Least `t` with `X(t, y) = r → X(x, y)` for all `y`.
    pub fn tensor(&self, r: &Value, x: usize) -> Result<Option<usize>> {
        let profile: Vec<Value> =
            (0..self.n()).map(|y| self.imp(r, self.hom(x, y))).collect::<Result<_>>()?;
        Ok((0..self.n()).find(|&t| self.hom_rel().row(t) == profile.as_slice()))
    }

    /// Least `c` with `X(x, c) = r → X(x, y)` for all `x`.
    pub fn cotensor(&self, r: &Value, y: usize) -> Result<Option<usize>> {
        let profile: Vec<Value> =
            (0..self.n()).map(|x| self.imp(r, self.hom(x, y))).collect::<Result<_>>()?;
        Ok((0..self.n()).find(|&c| self.hom_rel().column(c) == profile))
    }

    /// Order-complete, tensored and cotensored, with tensors taken over the
    /// category's grid.
    pub fn is_cocomplete_over_grid(&self) -> Result<bool> {
        if self.mode() != Mode::Exact {
            return Err(Error::Unsupported("grid cocompleteness needs exact mode".into()));
        }
        if !self.underlying_order().is_complete() {
            return Ok(false);
        }
        let grid = self.value_grid()?;
        for r in grid.values() {
            for x in 0..self.n() {
                if self.tensor(&r, x)?.is_none() || self.cotensor(&r, x)?.is_none() {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// All weights with values in `grid`, in lexicographic order of grid
    /// indices. Fails when `|grid|^n` exceeds `bound`.
    pub fn grid_weights(&self, grid: &ValueGrid, bound: u128) -> Result<Vec<Weight>> {
        self.grid_vectors(grid, bound, true)
            .map(|vs| vs.into_iter().map(Weight).collect())
    }

    pub fn grid_coweights(&self, grid: &ValueGrid, bound: u128) -> Result<Vec<Coweight>> {
        self.grid_vectors(grid, bound, false)
            .map(|vs| vs.into_iter().map(Coweight).collect())
    }

    fn grid_vectors(&self, grid: &ValueGrid, bound: u128, contra: bool) -> Result<Vec<Vec<Value>>> {
        let needed = candidate_count(grid.len(), self.n());
        if needed > bound {
            return Err(Error::BoundExceeded { needed, bound });
        }
        let n = self.n();
        let hom: Vec<usize> = self
            .hom_rel()
            .entries()
            .iter()
            .map(|v| grid.index_of(v).ok_or_else(|| Error::InvalidGrid(format!("{v} not in {grid}"))))
            .collect::<Result<_>>()?;
        // For a weight: φ(j) ⊗ X(i, j) <= φ(i); for a coweight: X(i, j) ⊗ ψ(i) <= ψ(j).
        let ok = |a: usize, b: usize, va: usize, vb: usize| {
            if contra {
                grid.conj_idx(vb, hom[a * n + b]) <= va && grid.conj_idx(va, hom[b * n + a]) <= vb
            } else {
                grid.conj_idx(hom[a * n + b], va) <= vb && grid.conj_idx(hom[b * n + a], vb) <= va
            }
        };
        let mut out = Vec::new();
        let mut cur: Vec<usize> = Vec::with_capacity(n);
        fn go(
            n: usize,
            k: usize,
            cur: &mut Vec<usize>,
            out: &mut Vec<Vec<usize>>,
            ok: &dyn Fn(usize, usize, usize, usize) -> bool,
        ) {
            let i = cur.len();
            if i == n {
                out.push(cur.clone());
                return;
            }
            for v in 0..k {
                if (0..i).all(|j| ok(i, j, v, cur[j])) {
                    cur.push(v);
                    go(n, k, cur, out, ok);
                    cur.pop();
                }
            }
        }
        let mut idx = Vec::new();
        go(n, grid.len(), &mut cur, &mut idx, &ok);
        for v in idx {
            out.push(v.into_iter().map(|i| grid.point(i)).collect());
        }
        Ok(out)
    }
}

/// Kan extensions along a functor `f: X → Y`.
impl<'a> EnrichedFunctor<'a> {
    /// `f_∃(φ) = φ ∘ f^*`.
    pub fn exists(&self, phi: &Weight) -> Result<Weight> {
        self.source().check_weight(phi)?;
        let m = self.source().mode();
        Ok(Weight::from_rel(compose(self.source().tnorm(), &phi.to_rel(m), self.cograph().rel())?))
    }

    /// `f^{-1}(γ) = γ ∘ f_*`.
    pub fn inverse(&self, gamma: &Weight) -> Result<Weight> {
        self.target().check_weight(gamma)?;
        let m = self.source().mode();
        Ok(Weight::from_rel(compose(self.source().tnorm(), &gamma.to_rel(m), self.graph().rel())?))
    }

    /// `f_∀(φ) = φ ↙ f_*`.
    pub fn forall(&self, phi: &Weight) -> Result<Weight> {
        self.source().check_weight(phi)?;
        let m = self.source().mode();
        Ok(Weight::from_rel(residual_left(self.source().tnorm(), &phi.to_rel(m), self.graph().rel())?))
    }

    /// Restriction of a coweight of `Y`: `f^* ∘ ψ`.
    pub fn inverse_coweight(&self, psi: &Coweight) -> Result<Coweight> {
        self.target().check_coweight(psi)?;
        let m = self.source().mode();
        Ok(Coweight::from_rel(compose(self.source().tnorm(), self.cograph().rel(), &psi.to_rel(m))?))
    }

    /// `f†_∀(ψ) = f^* ↘ ψ`.
    pub fn dag_forall(&self, psi: &Coweight) -> Result<Coweight> {
        self.source().check_coweight(psi)?;
        let m = self.source().mode();
        Ok(Coweight::from_rel(residual_right(self.source().tnorm(), self.cograph().rel(), &psi.to_rel(m))?))
    }

    /// `f†_∃(ψ) = f_* ∘ ψ`.
    pub fn dag_exists(&self, psi: &Coweight) -> Result<Coweight> {
        self.source().check_coweight(psi)?;
        let m = self.source().mode();
        Ok(Coweight::from_rel(compose(self.source().tnorm(), self.graph().rel(), &psi.to_rel(m))?))
    }
}

/// `colim_φ f`: the colimit of `φ ∘ f^*` in the target of `f`.
pub fn weighted_colim(phi: &Weight, f: &EnrichedFunctor) -> Result<Option<usize>> {
    f.target().colim(&f.exists(phi)?)
}

/// The category of all grid weights of `x` with `hom = sub`, together with
/// the weights in carrier order.
pub fn presheaf_category(
    x: &EnrichedCategory,
    grid: &ValueGrid,
    bound: u128,
) -> Result<(EnrichedCategory, Vec<Weight>)> {
    let ws = x.grid_weights(grid, bound)?;
    let k = ws.len();
    let mut data = Vec::with_capacity(k * k);
    for a in &ws {
        for b in &ws {
            data.push(x.sub(a, b)?);
        }
    }
    let names = ws
        .iter()
        .map(|w| format!("({})", w.values().iter().map(Value::to_string).collect::<Vec<_>>().join(",")))
        .collect();
    let p = EnrichedCategory::new(x.tnorm().clone(), Rel::new(k, k, x.mode(), data)?)?
        .with_names(names)?
        .with_grid(grid.clone())?;
    Ok((p, ws))
}
