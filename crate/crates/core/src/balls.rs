//! Formal balls `(x, r)` ordered by `(x, r) ⊑ (y, s) ⟺ r <= s ⊗ X(x, y)`,
//! directed joins, the way-below distributor and the continuity checks
//! built on it.

use std::fmt::Write as _;

use serde::Serialize;

use crate::cat::{EnrichedCategory, Rel};
use crate::error::{Error, Result};
use crate::grid::ValueGrid;
use crate::presheaf::Weight;
use crate::value::{inf, Mode, Value};

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FormalBall {
    pub center: usize,
    pub radius: Value,
}

impl FormalBall {
    pub fn new(center: usize, radius: Value) -> Self {
        FormalBall { center, radius }
    }
}

pub fn ball_leq(x: &EnrichedCategory, a: &FormalBall, b: &FormalBall) -> Result<bool> {
    a.radius.le(&x.conj(&b.radius, x.hom(a.center, b.center))?)
}

fn check_balls(x: &EnrichedCategory, balls: &[FormalBall]) -> Result<()> {
    if x.mode() != Mode::Exact {
        return Err(Error::Unsupported("ball joins need exact mode".into()));
    }
    for b in balls {
        if b.center >= x.n() {
            return Err(Error::OutOfRange(format!("center {}", b.center)));
        }
    }
    Ok(())
}

/// Radii that can occur as bounds of `balls`: the grid, the input radii,
/// the least `t` with `t ⊗ X(x_i, z) >= r_i`, and `s ⊗ X(x, y)`.
pub fn candidate_radii(
    x: &EnrichedCategory,
    balls: &[FormalBall],
    grid: &ValueGrid,
) -> Result<Vec<Value>> {
    let mut out: Vec<Value> = grid.values().collect();
    for b in balls {
        out.push(b.radius.clone());
        for z in 0..x.n() {
            if let Some(t) = x.tnorm().least_factor(x.hom(b.center, z), &b.radius)? {
                out.push(t);
            }
            for y in 0..x.n() {
                out.push(x.conj(&b.radius, x.hom(y, z))?);
            }
        }
    }
    out.sort_by(|a, b| a.try_cmp(b).expect("exact"));
    out.dedup();
    Ok(out)
}

fn upper_bounds(
    x: &EnrichedCategory,
    balls: &[FormalBall],
    radii: &[Value],
) -> Result<Vec<FormalBall>> {
    let mut out = Vec::new();
    for z in 0..x.n() {
        for t in radii {
            let u = FormalBall::new(z, t.clone());
            let mut ok = true;
            for b in balls {
                if !ball_leq(x, b, &u)? {
                    ok = false;
                    break;
                }
            }
            if ok {
                out.push(u);
            }
        }
    }
    Ok(out)
}

/// Nonempty, and every pair has an upper bound among carrier × candidate
/// radii.
pub fn directed_check(x: &EnrichedCategory, balls: &[FormalBall], grid: &ValueGrid) -> Result<bool> {
    check_balls(x, balls)?;
    if balls.is_empty() {
        return Ok(false);
    }
    let radii = candidate_radii(x, balls, grid)?;
    for i in 0..balls.len() {
        for j in i + 1..balls.len() {
            if upper_bounds(x, &[balls[i].clone(), balls[j].clone()], &radii)?.is_empty() {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Least upper bound among carrier × candidate radii, first in (center,
/// radius) order. `Ok(None)` when there is no least one; `NotDirected`
/// when the family fails [`directed_check`].
pub fn directed_join(
    x: &EnrichedCategory,
    balls: &[FormalBall],
    grid: &ValueGrid,
) -> Result<Option<FormalBall>> {
    if !directed_check(x, balls, grid)? {
        return Err(Error::NotDirected);
    }
    let radii = candidate_radii(x, balls, grid)?;
    let ubs = upper_bounds(x, balls, &radii)?;
    for u in &ubs {
        let mut least = true;
        for v in &ubs {
            if !ball_leq(x, u, v)? {
                least = false;
                break;
            }
        }
        if least {
            return Ok(Some(u.clone()));
        }
    }
    Ok(None)
}

/// `𝔴(y, x) = inf (X(x, colim φ) → φ(y))` over the grid ideals `φ` that
/// have a colimit. Entry `(y, x)` of the result.
pub fn way_below_distributor(x: &EnrichedCategory, bound: u128) -> Result<Rel> {
    let ideals: Vec<(Weight, usize)> = x
        .grid_ideals(bound)?
        .into_iter()
        .filter_map(|phi| match x.colim(&phi) {
            Ok(Some(c)) => Some(Ok((phi, c))),
            Ok(None) => None,
            Err(e) => Some(Err(e)),
        })
        .collect::<Result<_>>()?;
    let n = x.n();
    let mut data = Vec::with_capacity(n * n);
    for y in 0..n {
        for xx in 0..n {
            let terms = ideals
                .iter()
                .map(|(phi, c)| x.imp(x.hom(xx, *c), phi.get(y)))
                .collect::<Result<Vec<_>>>()?;
            data.push(inf(x.mode(), &terms)?);
        }
    }
    Rel::new(n, n, x.mode(), data)
}

/// `𝔴(−, a) = X(−, a)`.
pub fn is_compact(x: &EnrichedCategory, a: usize, bound: u128) -> Result<bool> {
    let w = way_below_distributor(x, bound)?;
    Ok(w.column(a) == x.yoneda(a).values())
}

/// Every `𝔴(−, x)` is an ideal with colimit isomorphic to `x`.
pub fn is_continuous_enriched(x: &EnrichedCategory, bound: u128) -> Result<bool> {
    let w = way_below_distributor(x, bound)?;
    for a in 0..x.n() {
        let phi = x.weight(w.column(a))?;
        if !x.is_ideal(&phi)?.holds {
            return Ok(false);
        }
        match x.colim(&phi)? {
            Some(c) if x.is_isomorphic_elements(c, a) => {}
            _ => return Ok(false),
        }
    }
    Ok(true)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct WayBelow {
    pub holds: bool,
    /// The formula is only a characterization for Archimedean t-norms.
    pub heuristic: bool,
}

/// `(x, r) ≪ (y, s) ⟺ r < s ⊗ 𝔴(x, y)`; a radius-0 ball is way below
/// every ball of positive radius.
pub fn ball_way_below(
    x: &EnrichedCategory,
    w: &Rel,
    a: &FormalBall,
    b: &FormalBall,
) -> Result<WayBelow> {
    let heuristic = !x.tnorm().is_archimedean();
    let holds = if a.radius.is_zero() {
        !b.radius.is_zero()
    } else {
        a.radius.lt(&x.conj(&b.radius, w.get(a.center, b.center))?)?
    };
    Ok(WayBelow { holds, heuristic })
}

/// For each `x`, `𝔱(−, x) = inf_φ (X(x, colim φ) → φ(−))` over grid weights
/// with a colimit must have `x` as a colimit. Returns the first failing `x`.
pub fn cd_enriched_witness(x: &EnrichedCategory, bound: u128) -> Result<Option<usize>> {
    let grid = x.value_grid()?;
    let mut with_colim = Vec::new();
    for phi in x.grid_weights(&grid, bound)? {
        if let Some(c) = x.colim(&phi)? {
            with_colim.push((phi, c));
        }
    }
    for a in 0..x.n() {
        let mut vals = Vec::with_capacity(x.n());
        for y in 0..x.n() {
            let terms = with_colim
                .iter()
                .map(|(phi, c)| x.imp(x.hom(a, *c), phi.get(y)))
                .collect::<Result<Vec<_>>>()?;
            vals.push(inf(x.mode(), &terms)?);
        }
        let t = x.weight(vals)?;
        match x.colim(&t)? {
            Some(c) if x.is_isomorphic_elements(c, a) => {}
            _ => return Ok(Some(a)),
        }
    }
    Ok(None)
}

pub fn is_completely_distributive_enriched(x: &EnrichedCategory, bound: u128) -> Result<bool> {
    Ok(cd_enriched_witness(x, bound)?.is_none())
}

/// All balls with grid radii, centers in element order.
pub fn grid_balls(x: &EnrichedCategory, grid: &ValueGrid) -> Vec<FormalBall> {
    (0..x.n()).flat_map(|c| grid.values().map(move |r| FormalBall::new(c, r))).collect()
}

/// The grid-radius ball preorder as DOT, one edge per covering pair.
pub fn ball_poset_dot(x: &EnrichedCategory, grid: &ValueGrid) -> Result<String> {
    let balls = grid_balls(x, grid);
    let m = balls.len();
    let mut leq = vec![false; m * m];
    for i in 0..m {
        for j in 0..m {
            leq[i * m + j] = ball_leq(x, &balls[i], &balls[j])?;
        }
    }
    let lt = |i: usize, j: usize| leq[i * m + j] && !leq[j * m + i];
    let label = |b: &FormalBall| format!("{}@{}", x.name(b.center), b.radius);
    let mut out = String::from("digraph {\n");
    for b in &balls {
        writeln!(out, "  \"{}\";", label(b)).expect("string write");
    }
    for i in 0..m {
        for j in 0..m {
            if lt(i, j) && !(0..m).any(|k| lt(i, k) && lt(k, j)) {
                writeln!(out, "  \"{}\" -> \"{}\";", label(&balls[i]), label(&balls[j]))
                    .expect("string write");
            }
        }
    }
    out.push_str("}\n");
    Ok(out)
}
