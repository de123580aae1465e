//! Law checks at grid scale: the KZ inequality of the presheaf monad,
//! modules over the value quantale, negation duality and conical filters.

use rand::Rng;
use serde::Serialize;

use crate::cat::EnrichedCategory;
use crate::error::{Error, Result};
use crate::grid::ValueGrid;
use crate::poset::FinitePoset;
use crate::presheaf::{candidate_count, Weight};
use crate::random::Rng64;
use crate::tnorm::TNorm;
use crate::value::{sup, Value};

// ---------------------------------------------------------------- KZ

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct KzReport {
    pub pairs: usize,
    /// `(φ, γ)` indices where `sup_x φ(x) ⊗ sub(γ, y(x)) > sub(γ, φ)`.
    pub violations: Vec<(usize, usize)>,
    /// Per `φ`: equality held for every `γ`.
    pub equality: Vec<bool>,
    /// Per `φ`: accepted by `is_cauchy`.
    pub cauchy: Vec<bool>,
}

impl KzReport {
    pub fn inequality_holds(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn consistent_with_cauchy(&self) -> bool {
        self.equality == self.cauchy
    }
}

/// `sup_x φ(x) ⊗ sub(γ, y(x))`, the left side of the KZ inequality.
pub fn kz_lhs(x: &EnrichedCategory, phi: &Weight, gamma: &Weight) -> Result<Value> {
    let terms = (0..x.n())
        .map(|a| x.conj(phi.get(a), &x.sub(gamma, &x.yoneda(a))?))
        .collect::<Result<Vec<_>>>()?;
    sup(x.mode(), &terms)
}

pub fn kz_check(x: &EnrichedCategory, phis: &[Weight], gammas: &[Weight]) -> Result<KzReport> {
    let mut report = KzReport {
        pairs: phis.len() * gammas.len(),
        violations: Vec::new(),
        equality: Vec::with_capacity(phis.len()),
        cauchy: Vec::with_capacity(phis.len()),
    };
    for (i, phi) in phis.iter().enumerate() {
        let mut eq = true;
        for (j, gamma) in gammas.iter().enumerate() {
            let lhs = kz_lhs(x, phi, gamma)?;
            let rhs = x.sub(gamma, phi)?;
            if !lhs.le(&rhs)? {
                report.violations.push((i, j));
            }
            eq &= lhs == rhs;
        }
        report.equality.push(eq);
        report.cauchy.push(x.is_cauchy(phi)?.is_some());
    }
    Ok(report)
}

// ---------------------------------------------------------------- modules

/// A complete lattice with an action of the grid: `table[r * n + x] = r ⊗ x`.
#[derive(Debug, Clone, PartialEq)]
pub struct ModuleAction {
    lattice: FinitePoset,
    grid: ValueGrid,
    table: Vec<usize>,
}

impl ModuleAction {
    pub fn new(lattice: FinitePoset, grid: ValueGrid, table: Vec<usize>) -> Result<Self> {
        let n = lattice.n();
        let bad = |m: String| Err(Error::InvalidAction(m));
        if table.len() != grid.len() * n || table.iter().any(|&v| v >= n) {
            return bad("action table has the wrong shape".into());
        }
        if !lattice.is_antisymmetric() || !lattice.is_complete() {
            return bad("carrier is not a complete lattice".into());
        }
        let m = ModuleAction { lattice, grid, table };
        let (k, top, bot) = (m.grid.len(), m.grid.len() - 1, m.lattice.bottom().expect("complete"));
        for x in 0..n {
            if m.act(top, x) != x {
                return bad(format!("1 does not act as identity at {x}"));
            }
            if m.act(0, x) != bot {
                return bad(format!("0 does not act as bottom at {x}"));
            }
            for r in 0..k {
                for s in 0..k {
                    if m.act(s, m.act(r, x)) != m.act(m.grid.conj_idx(s, r), x) {
                        return bad(format!("s(rx) != (sr)x at r={r}, s={s}, x={x}"));
                    }
                    if r <= s && !m.lattice.leq(m.act(r, x), m.act(s, x)) {
                        return bad(format!("action not monotone in the scalar at {x}"));
                    }
                }
            }
        }
        for r in 0..k {
            if m.act(r, bot) != bot {
                return bad(format!("scalar {r} does not fix bottom"));
            }
            for x in 0..n {
                for y in 0..n {
                    let j = m.lattice.join(&[x, y]).expect("lattice");
                    let jr = m.lattice.join(&[m.act(r, x), m.act(r, y)]).expect("lattice");
                    if m.act(r, j) != jr {
                        return bad(format!("scalar {r} does not preserve the join of {x}, {y}"));
                    }
                }
            }
        }
        Ok(m)
    }

    pub fn lattice(&self) -> &FinitePoset {
        &self.lattice
    }

    pub fn grid(&self) -> &ValueGrid {
        &self.grid
    }

    /// `r ⊗ x` for grid index `r`.
    pub fn act(&self, r: usize, x: usize) -> usize {
        self.table[r * self.lattice.n() + x]
    }

    /// `max { r : r ⊗ x <= y }` as a grid index.
    pub fn hom_index(&self, x: usize, y: usize) -> usize {
        (0..self.grid.len())
            .rev()
            .find(|&r| self.lattice.leq(self.act(r, x), y))
            .expect("0 acts as bottom")
    }
}

pub fn module_to_category(m: &ModuleAction) -> Result<EnrichedCategory> {
    let n = m.lattice.n();
    let rows = (0..n)
        .map(|x| (0..n).map(|y| m.grid.point(m.hom_index(x, y))).collect())
        .collect();
    EnrichedCategory::from_rows(m.grid.tnorm().clone(), rows)?.with_grid(m.grid.clone())
}

/// The underlying order with `r ⊗ x` the tensor of `x` by `r`.
pub fn category_to_module(a: &EnrichedCategory) -> Result<ModuleAction> {
    if !a.is_separated() {
        return Err(Error::InvalidAction("category is not separated".into()));
    }
    let grid = a.value_grid()?;
    let mut table = Vec::with_capacity(grid.len() * a.n());
    for r in grid.values() {
        for x in 0..a.n() {
            table.push(
                a.tensor(&r, x)?
                    .ok_or_else(|| Error::InvalidAction(format!("no tensor {r} ⊗ {}", a.name(x))))?,
            );
        }
    }
    ModuleAction::new(a.underlying_order(), grid, table)
}

/// A random submodule of `grid^k` with pointwise action: the closure of a
/// few random vectors under joins and scalars. Returns `None` when the
/// closure exceeds `max_size` elements.
pub fn random_module(
    rng: &mut Rng64,
    grid: &ValueGrid,
    k: usize,
    max_size: usize,
) -> Option<ModuleAction> {
    let g = grid.len();
    let mut elems: Vec<Vec<usize>> = vec![vec![0; k]];
    for _ in 0..rng.gen_range(1..=2) {
        elems.push((0..k).map(|_| rng.gen_range(0..g)).collect());
    }
    loop {
        let mut next = elems.clone();
        for a in &elems {
            for b in &elems {
                let j: Vec<usize> = a.iter().zip(b).map(|(p, q)| *p.max(q)).collect();
                if !next.contains(&j) {
                    next.push(j);
                }
            }
            for r in 0..g {
                let v: Vec<usize> = a.iter().map(|&p| grid.conj_idx(r, p)).collect();
                if !next.contains(&v) {
                    next.push(v);
                }
            }
        }
        if next.len() > max_size {
            return None;
        }
        if next.len() == elems.len() {
            break;
        }
        elems = next;
    }
    let n = elems.len();
    let leq = (0..n)
        .map(|i| (0..n).map(|j| elems[i].iter().zip(&elems[j]).all(|(p, q)| p <= q)).collect())
        .collect();
    let lattice = FinitePoset::new(leq).ok()?;
    let mut table = Vec::with_capacity(g * n);
    for r in 0..g {
        for a in &elems {
            let v: Vec<usize> = a.iter().map(|&p| grid.conj_idx(r, p)).collect();
            table.push(elems.iter().position(|e| *e == v).expect("closed"));
        }
    }
    ModuleAction::new(lattice, grid.clone(), table).ok()
}

// ---------------------------------------------------------------- negation

/// The first point `x` with `(x → 0) → 0 != x`.
pub fn negation_duality_check(points: &[Value], t: &TNorm) -> Result<Option<Value>> {
    for x in points {
        let zero = Value::zero(x.mode());
        if t.imp(&t.imp(x, &zero)?, &zero)? != *x {
            return Ok(Some(x.clone()));
        }
    }
    Ok(None)
}

// ---------------------------------------------------------------- conical filters

/// A map `grid^n → grid` on grid-valued arguments. Generated filters are
/// `λ ↦ max_{ξ∈D} sub(ξ, λ)` for a finite set `D` directed in the order of
/// coweights (every pair has a pointwise lower bound in `D`).
#[derive(Debug, Clone, PartialEq)]
pub struct ConicalFilter {
    n: usize,
    grid: ValueGrid,
    kind: FilterKind,
}

#[derive(Debug, Clone, PartialEq)]
enum FilterKind {
    Generated(Vec<Vec<usize>>),
    /// Values on every argument, in mixed-radix order of grid indices.
    Tabulated(Vec<usize>),
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CfViolation {
    pub axiom: &'static str,
    pub lambda: Vec<Value>,
    pub mu: Option<Vec<Value>>,
    pub r: Option<Value>,
}

fn decode(code: usize, n: usize, g: usize) -> Vec<usize> {
    let mut v = vec![0; n];
    let mut c = code;
    for slot in v.iter_mut().rev() {
        *slot = c % g;
        c /= g;
    }
    v
}

fn encode(v: &[usize], g: usize) -> usize {
    v.iter().fold(0, |acc, &i| acc * g + i)
}

impl ConicalFilter {
    pub fn generated(grid: &ValueGrid, n: usize, generators: &[Vec<Value>]) -> Result<Self> {
        let idx = generators
            .iter()
            .map(|g| {
                if g.len() != n {
                    return Err(Error::InvalidFilter(format!("generator of length {}", g.len())));
                }
                g.iter()
                    .map(|v| {
                        grid.index_of(v)
                            .ok_or_else(|| Error::InvalidFilter(format!("{v} is not a grid point")))
                    })
                    .collect()
            })
            .collect::<Result<Vec<Vec<usize>>>>()?;
        Self::from_indices(grid, n, idx)
    }

    fn from_indices(grid: &ValueGrid, n: usize, idx: Vec<Vec<usize>>) -> Result<Self> {
        if idx.is_empty() {
            return Err(Error::InvalidFilter("no generators".into()));
        }
        for a in &idx {
            for b in &idx {
                let below = |c: &Vec<usize>| c.iter().zip(a).all(|(p, q)| p <= q)
                    && c.iter().zip(b).all(|(p, q)| p <= q);
                if !idx.iter().any(below) {
                    return Err(Error::InvalidFilter("generators are not directed".into()));
                }
            }
        }
        Ok(ConicalFilter { n, grid: grid.clone(), kind: FilterKind::Generated(idx) })
    }

    /// Tabulates `f` on all of `grid^n`.
    pub fn tabulate(grid: &ValueGrid, n: usize, f: impl Fn(&[usize]) -> usize) -> Self {
        let g = grid.len();
        let table = (0..g.pow(n as u32)).map(|c| f(&decode(c, n, g))).collect();
        ConicalFilter { n, grid: grid.clone(), kind: FilterKind::Tabulated(table) }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn is_generated(&self) -> bool {
        matches!(self.kind, FilterKind::Generated(_))
    }

    fn sub_idx(&self, a: &[usize], b: &[usize]) -> usize {
        a.iter()
            .zip(b)
            .map(|(&p, &q)| self.grid.imp_idx(p, q))
            .min()
            .unwrap_or(self.grid.len() - 1)
    }

    /// Evaluation on grid indices.
    pub fn eval_idx(&self, lambda: &[usize]) -> usize {
        match &self.kind {
            FilterKind::Generated(d) => {
                d.iter().map(|xi| self.sub_idx(xi, lambda)).max().expect("nonempty")
            }
            FilterKind::Tabulated(t) => t[encode(lambda, self.grid.len())],
        }
    }

    pub fn eval(&self, lambda: &[Value]) -> Result<Value> {
        let idx = lambda
            .iter()
            .map(|v| {
                self.grid
                    .index_of(v)
                    .ok_or_else(|| Error::InvalidFilter(format!("{v} is not a grid point")))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(self.grid.point(self.eval_idx(&idx)))
    }

    /// `λ ↦ r → 𝔉(λ)`, tabulated.
    pub fn residual(&self, r: usize) -> ConicalFilter {
        Self::tabulate(&self.grid, self.n, |l| self.grid.imp_idx(r, self.eval_idx(l)))
    }

    /// The pointwise least generator, which represents a generated filter.
    fn least_generator(&self) -> Option<Vec<usize>> {
        match &self.kind {
            FilterKind::Generated(d) => d
                .iter()
                .find(|a| d.iter().all(|b| a.iter().zip(b).all(|(p, q)| p <= q)))
                .cloned(),
            FilterKind::Tabulated(_) => None,
        }
    }
}

/// First failing axiom among CF1–CF4, checked on all grid arguments.
/// Fails when `|grid|^n` exceeds `bound`.
pub fn conical_filter_check(f: &ConicalFilter, bound: u128) -> Result<Option<CfViolation>> {
    let g = f.grid.len();
    let needed = candidate_count(g, f.n);
    if needed > bound {
        return Err(Error::BoundExceeded { needed, bound });
    }
    let args: Vec<Vec<usize>> = (0..g.pow(f.n as u32)).map(|c| decode(c, f.n, g)).collect();
    let vals: Vec<usize> = args.iter().map(|l| f.eval_idx(l)).collect();
    let pts = |v: &[usize]| v.iter().map(|&i| f.grid.point(i)).collect::<Vec<_>>();
    let top = g - 1;
    for (i, l) in args.iter().enumerate() {
        for (j, m) in args.iter().enumerate() {
            let viol = |axiom| CfViolation { axiom, lambda: pts(l), mu: Some(pts(m)), r: None };
            if f.sub_idx(l, m) > f.grid.imp_idx(vals[i], vals[j]) {
                return Ok(Some(viol("CF1")));
            }
        }
    }
    let ones = vec![top; f.n];
    if f.eval_idx(&ones) != top {
        return Ok(Some(CfViolation { axiom: "CF2", lambda: pts(&ones), mu: None, r: None }));
    }
    for (i, l) in args.iter().enumerate() {
        for (j, m) in args.iter().enumerate() {
            let meet: Vec<usize> = l.iter().zip(m).map(|(p, q)| *p.min(q)).collect();
            if vals[i].min(vals[j]) != f.eval_idx(&meet) {
                return Ok(Some(CfViolation {
                    axiom: "CF3",
                    lambda: pts(l),
                    mu: Some(pts(m)),
                    r: None,
                }));
            }
        }
    }
    for r in 0..g {
        for (i, l) in args.iter().enumerate() {
            if vals[i] > r {
                let rl: Vec<usize> = l.iter().map(|&p| f.grid.imp_idx(r, p)).collect();
                if f.eval_idx(&rl) != top {
                    return Ok(Some(CfViolation {
                        axiom: "CF4",
                        lambda: pts(l),
                        mu: None,
                        r: Some(f.grid.point(r)),
                    }));
                }
            }
        }
    }
    Ok(None)
}

/// `k(𝓕)(λ) = max_ξ min_j (ξ(j) → 𝔉_j(λ))` for the meta-filter generated by
/// `meta` over the explicit filter set `filters`.
pub fn kowalsky_eval(filters: &[ConicalFilter], meta: &[Vec<usize>], lambda: &[usize]) -> usize {
    let grid = &filters[0].grid;
    meta.iter()
        .map(|xi| {
            filters
                .iter()
                .zip(xi)
                .map(|(f, &r)| grid.imp_idx(r, f.eval_idx(lambda)))
                .min()
                .unwrap_or(grid.len() - 1)
        })
        .max()
        .expect("nonempty meta generators")
}

/// The Kowalsky sum of the meta-filter generated by `meta` (grid indices,
/// one per filter). Generated inputs give a generated result: with `m_j`
/// the least generator of `𝔉_j`, each `ξ` contributes `sup_j ξ(j) ⊗ m_j`.
pub fn kowalsky_sum(filters: &[ConicalFilter], meta: &[Vec<usize>]) -> Result<ConicalFilter> {
    let first = filters.first().ok_or_else(|| Error::InvalidFilter("empty filter set".into()))?;
    if filters.iter().any(|f| f.n != first.n || f.grid != first.grid) {
        return Err(Error::InvalidFilter("filters on different carriers".into()));
    }
    if meta.iter().any(|xi| xi.len() != filters.len()) {
        return Err(Error::InvalidFilter("meta generator length mismatch".into()));
    }
    let k = filters.len();
    ConicalFilter::from_indices(&first.grid, k, meta.to_vec())?;
    let grid = &first.grid;
    let least: Option<Vec<Vec<usize>>> = filters.iter().map(|f| f.least_generator()).collect();
    match least {
        Some(ms) => {
            let gens = meta
                .iter()
                .map(|xi| {
                    (0..first.n)
                        .map(|x| (0..k).map(|j| grid.conj_idx(xi[j], ms[j][x])).max().unwrap_or(0))
                        .collect()
                })
                .collect();
            ConicalFilter::from_indices(grid, first.n, gens)
        }
        None => Ok(ConicalFilter::tabulate(grid, first.n, |l| kowalsky_eval(filters, meta, l))),
    }
}

/// All tabulated filters on a one-point set that satisfy CF1–CF4.
pub fn one_point_filters(grid: &ValueGrid) -> Vec<ConicalFilter> {
    let g = grid.len();
    let mut out = Vec::new();
    for code in 0..g.pow(g as u32) {
        let table = decode(code, g, g);
        let f = ConicalFilter { n: 1, grid: grid.clone(), kind: FilterKind::Tabulated(table) };
        if conical_filter_check(&f, u128::MAX).expect("unbounded").is_none() {
            out.push(f);
        }
    }
    out
}

/// A one-point filter `𝔉` and scalar `r` with `r → 𝔉` not a conical filter.
pub fn residual_filter_witness(grid: &ValueGrid) -> Option<(ConicalFilter, Value, CfViolation)> {
    for f in one_point_filters(grid) {
        for r in 0..grid.len() {
            if let Some(v) = conical_filter_check(&f.residual(r), u128::MAX).expect("unbounded") {
                return Some((f, grid.point(r), v));
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presheaf::DEFAULT_BOUND;
    use crate::random;
    use crate::rational::Rational;
    use crate::value::Mode;

    fn r(p: i64, q: i64) -> Value {
        Value::ratio(p, q)
    }

    #[test]
    fn kz_examples() {
        let d2 = EnrichedCategory::discrete(TNorm::Lukasiewicz, 2, Mode::Exact);
        let phi = d2.weight(vec![r(1, 1), r(1, 1)]).unwrap();
        let gamma = d2.weight(vec![r(1, 1), r(0, 1)]).unwrap();
        assert!(kz_lhs(&d2, &phi, &gamma).unwrap().is_one());
        assert!(d2.sub(&gamma, &phi).unwrap().is_one());
        let g = ValueGrid::lukasiewicz(2);
        let all = d2.grid_weights(&g, DEFAULT_BOUND).unwrap();
        let rep = kz_check(&d2, &all, &all).unwrap();
        assert!(rep.inequality_holds());
        assert!(rep.consistent_with_cauchy());
    }

    #[test]
    fn module_examples() {
        let g = ValueGrid::lukasiewicz(4);
        let v = EnrichedCategory::from_grid(&g);
        let m = category_to_module(&v).unwrap();
        for i in 0..g.len() {
            for j in 0..g.len() {
                assert_eq!(m.act(i, j), g.conj_idx(i, j));
            }
        }
        assert_eq!(module_to_category(&m).unwrap(), v);
        let one = ModuleAction::new(FinitePoset::chain(1), g.clone(), vec![0; g.len()]).unwrap();
        assert_eq!(module_to_category(&one).unwrap().n(), 1);
    }

    #[test]
    fn random_modules_round_trip() {
        let mut rng = random::rng(5);
        let mut seen = 0;
        while seen < 20 {
            let g = if seen % 2 == 0 { ValueGrid::lukasiewicz(2) } else { random::godel_grid(&mut rng, 2) };
            let Some(m) = random_module(&mut rng, &g, 2, 5) else { continue };
            let c = module_to_category(&m).unwrap();
            assert!(c.is_separated());
            assert!(c.is_cocomplete_over_grid().unwrap());
            assert_eq!(category_to_module(&c).unwrap(), m);
            assert_eq!(module_to_category(&category_to_module(&c).unwrap()).unwrap(), c);
            seen += 1;
        }
    }

    #[test]
    fn negation_examples() {
        let luka = ValueGrid::lukasiewicz(3);
        assert_eq!(negation_duality_check(&luka.values().collect::<Vec<_>>(), &TNorm::Lukasiewicz).unwrap(), None);
        let pts = [r(0, 1), r(1, 2), r(1, 1)];
        assert_eq!(negation_duality_check(&pts, &TNorm::Godel).unwrap(), Some(r(1, 2)));
        assert_eq!(negation_duality_check(&pts, &TNorm::Product).unwrap(), Some(r(1, 2)));
    }

    #[test]
    fn principal_filters_pass() {
        let g = ValueGrid::lukasiewicz(3);
        let f = ConicalFilter::generated(&g, 2, &[vec![r(1, 3), r(1, 1)]]).unwrap();
        assert_eq!(conical_filter_check(&f, DEFAULT_BOUND).unwrap(), None);
        assert!(ConicalFilter::generated(&g, 2, &[vec![r(0, 1), r(1, 1)], vec![r(1, 1), r(0, 1)]]).is_err());
    }

    #[test]
    fn kowalsky_closed_form_matches_direct() {
        let g = ValueGrid::lukasiewicz(3);
        let f1 = ConicalFilter::generated(&g, 2, &[vec![r(1, 3), r(1, 1)], vec![r(0, 1), r(1, 3)]]).unwrap();
        let f2 = ConicalFilter::generated(&g, 2, &[vec![r(2, 3), r(0, 1)]]).unwrap();
        let fs = [f1.clone(), f2];
        let meta = vec![vec![2, 1], vec![1, 1]];
        let k = kowalsky_sum(&fs, &meta).unwrap();
        assert!(k.is_generated());
        for c in 0..16 {
            let l = decode(c, 2, 4);
            assert_eq!(k.eval_idx(&l), kowalsky_eval(&fs, &meta, &l));
        }
        assert_eq!(conical_filter_check(&k, DEFAULT_BOUND).unwrap(), None);
        let principal = kowalsky_sum(&fs, &[vec![3, 0]]).unwrap();
        for c in 0..16 {
            let l = decode(c, 2, 4);
            assert_eq!(principal.eval_idx(&l), f1.eval_idx(&l));
        }
    }

    #[test]
    fn residual_leaves_filters_only_for_interior_block() {
        let t: TNorm = "ordinal[(1/4,1/2,lukasiewicz)]".parse().unwrap();
        let pts = [(0, 1), (1, 4), (3, 8), (1, 2), (1, 1)].map(|(p, q)| Rational::new(p, q));
        let g = ValueGrid::validate(pts, &t).unwrap();
        let (f, rr, v) = residual_filter_witness(&g).expect("witness");
        let ri = g.index_of(&rr).unwrap();
        // The same failure through the Kowalsky sum of the meta-filter at ξ = r.
        let k = kowalsky_sum(&[f.clone()], &[vec![ri]]).unwrap();
        assert_eq!(conical_filter_check(&k, DEFAULT_BOUND).unwrap(), Some(v));
        for g in [ValueGrid::lukasiewicz(4), ValueGrid::godel([0, 1, 2, 3, 4].map(|k| Rational::new(k, 4))).unwrap()] {
            assert!(residual_filter_witness(&g).is_none());
        }
    }
}
