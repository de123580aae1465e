//! Weight classes: representable, Cauchy, ideal, conically flat and flat.
//! Also Cauchy completion and Smyth completeness at grid resolution.
//!
//! Ideals use non-strict thresholds. On a finite carrier the strict
//! quantifiers over `r < 1` and `s < φ(x)` reduce to comparisons with the
//! largest admissible threshold, so [`EnrichedCategory::is_ideal`] checks
//! `φ(x) = 1`, `X(x1, x) >= φ(x1)` directly, while
//! [`EnrichedCategory::is_ideal_sweep`] runs the strict form over every
//! threshold drawn from the values present.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::cat::EnrichedCategory;
use crate::error::{Error, Result};
use crate::grid::{ValueGrid, DEFAULT_CAP};
use crate::presheaf::{Coweight, Weight};
use crate::random;
use crate::rational::Rational;
use crate::value::{sup, Mode, Value};

/// Random coweights added to the generator family when exhaustive
/// enumeration is over the bound.
pub const FLAT_SAMPLES: usize = 1000;

/// Denominator of the uniform `p` samples used when no finite grid exists.
const SAMPLE_DENOM: i64 = 20;

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Witness {
    /// `sup φ < 1`.
    NotInhabited { max: Value },
    /// No `x` with `φ(x) = 1` bounding both `x1` and `x2`.
    Pair { x1: usize, x2: usize },
    /// Strict thresholds with no element above them.
    Thresholds { x1: usize, x2: usize, r: Value, s1: Value, s2: Value },
    /// The canonical left-adjoint candidate `X ↙ φ` fails.
    NotAdjoint { candidate: Coweight, pairing: Value, violation: Option<(usize, usize)> },
    /// `(p1 ⊗ φ(x1)) ∧ (p2 ⊗ φ(x2)) ≠ sup_x (…) ⊗ φ(x)`.
    Ghk { x1: usize, x2: usize, p1: Value, p2: Value, lhs: Value, rhs: Value },
    /// `φ ∘ (r → ψ) ≠ r → (φ ∘ ψ)`.
    Cotensor { r: Value, coweight: Coweight, lhs: Value, rhs: Value },
    /// Flatness needs conical flatness first.
    NotConicallyFlat,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Family {
    Exhaustive,
    Sampled,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Verdict {
    pub holds: bool,
    pub witness: Option<Witness>,
    /// Parameters were sampled rather than covering every breakpoint.
    pub approximate: bool,
}

impl Verdict {
    fn pass(approximate: bool) -> Self {
        Verdict { holds: true, witness: None, approximate }
    }

    fn fail(w: Witness, approximate: bool) -> Self {
        Verdict { holds: false, witness: Some(w), approximate }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FlatVerdict {
    #[serde(flatten)]
    pub verdict: Verdict,
    pub family: Family,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Flags {
    pub representable: bool,
    pub cauchy: bool,
    pub ideal: bool,
    pub conically_flat: bool,
    pub flat: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct WeightClassReport {
    pub weight: Weight,
    pub flags: Flags,
    pub representing: Option<String>,
    pub left_adjoint: Option<Coweight>,
    pub ideal: Verdict,
    pub cauchy: Option<Witness>,
    pub conically_flat: Verdict,
    pub flat: FlatVerdict,
}

impl Flags {
    /// The first broken implication of the class hierarchy, if any.
    pub fn chain_violation(&self) -> Option<&'static str> {
        let rules = [
            (self.representable, self.cauchy, "representable => cauchy"),
            (self.cauchy, self.ideal, "cauchy => ideal"),
            (self.cauchy, self.flat, "cauchy => flat"),
            (self.flat, self.conically_flat, "flat => conically_flat"),
        ];
        rules.into_iter().find(|(a, b, _)| *a && !*b).map(|(_, _, m)| m)
    }
}

fn sample_points(mode: Mode) -> Vec<Value> {
    (0..=SAMPLE_DENOM)
        .map(|k| match mode {
            Mode::Exact => Value::ratio(k, SAMPLE_DENOM),
            Mode::Float => Value::Float(k as f64 / SAMPLE_DENOM as f64),
        })
        .collect()
}

fn sorted_values(mut v: Vec<Value>) -> Vec<Value> {
    v.sort_by(|a, b| a.try_cmp(b).expect("single mode"));
    v.dedup();
    v
}

impl EnrichedCategory {
    /// Least `a` with `φ = y(a)`.
    pub fn is_representable(&self, phi: &Weight) -> Option<usize> {
        (0..self.n()).find(|&a| self.yoneda(a) == *phi)
    }

    /// The left adjoint `ψ = X ↙ φ` when `φ` is a Cauchy weight.
    pub fn is_cauchy(&self, phi: &Weight) -> Result<Option<Coweight>> {
        self.cauchy_check(phi).map(|r| r.ok())
    }

    fn cauchy_check(&self, phi: &Weight) -> Result<std::result::Result<Coweight, Witness>> {
        let psi = self.isbell_ub(phi)?;
        let pairing = self.pairing(phi, &psi)?;
        let mut violation = None;
        'outer: for x in 0..self.n() {
            for y in 0..self.n() {
                if !self.conj(psi.get(y), phi.get(x))?.le(self.hom(x, y))? {
                    violation = Some((x, y));
                    break 'outer;
                }
            }
        }
        if pairing.is_one() && violation.is_none() {
            Ok(Ok(psi))
        } else {
            Ok(Err(Witness::NotAdjoint { candidate: psi, pairing, violation }))
        }
    }

    fn max_value(&self, phi: &Weight) -> Result<Value> {
        sup(self.mode(), phi.values())
    }

    /// `max φ = 1` and every pair `x1, x2` has some `x` with `φ(x) = 1`,
    /// `X(x1, x) >= φ(x1)` and `X(x2, x) >= φ(x2)`.
    pub fn is_ideal(&self, phi: &Weight) -> Result<Verdict> {
        let max = self.max_value(phi)?;
        if !max.is_one() {
            return Ok(Verdict::fail(Witness::NotInhabited { max }, false));
        }
        let tops: Vec<usize> = (0..self.n()).filter(|&x| phi.get(x).is_one()).collect();
        for x1 in 0..self.n() {
            for x2 in 0..self.n() {
                let mut found = false;
                for &x in &tops {
                    if self.hom(x1, x).ge(phi.get(x1))? && self.hom(x2, x).ge(phi.get(x2))? {
                        found = true;
                        break;
                    }
                }
                if !found {
                    return Ok(Verdict::fail(Witness::Pair { x1, x2 }, false));
                }
            }
        }
        Ok(Verdict::pass(false))
    }

    /// The strict-threshold form: `sup φ = 1`, and whenever `r < 1`,
    /// `s1 < φ(x1)`, `s2 < φ(x2)` there is `x` with `r < φ(x)`,
    /// `s1 < X(x1, x)`, `s2 < X(x2, x)`. Thresholds range over `0`, the
    /// values of `φ` and the hom values.
    pub fn is_ideal_sweep(&self, phi: &Weight) -> Result<Verdict> {
        let max = self.max_value(phi)?;
        if !max.is_one() {
            return Ok(Verdict::fail(Witness::NotInhabited { max }, false));
        }
        let mut ts = vec![self.zero()];
        ts.extend(phi.values().iter().cloned());
        ts.extend(self.hom_rel().entries().iter().cloned());
        let ts = sorted_values(ts);
        let below = |bound: &Value| -> Result<Vec<&Value>> {
            let mut out = Vec::new();
            for t in &ts {
                if t.lt(bound)? {
                    out.push(t);
                }
            }
            Ok(out)
        };
        let rs = below(&self.one())?;
        for x1 in 0..self.n() {
            let s1s = below(phi.get(x1))?;
            for x2 in 0..self.n() {
                let s2s = below(phi.get(x2))?;
                for r in &rs {
                    for s1 in &s1s {
                        for s2 in &s2s {
                            let mut found = false;
                            for x in 0..self.n() {
                                if r.lt(phi.get(x))?
                                    && s1.lt(self.hom(x1, x))?
                                    && s2.lt(self.hom(x2, x))?
                                {
                                    found = true;
                                    break;
                                }
                            }
                            if !found {
                                return Ok(Verdict::fail(
                                    Witness::Thresholds {
                                        x1,
                                        x2,
                                        r: (*r).clone(),
                                        s1: (*s1).clone(),
                                        s2: (*s2).clone(),
                                    },
                                    false,
                                ));
                            }
                        }
                    }
                }
            }
        }
        Ok(Verdict::pass(false))
    }

    /// Grid containing the homs and the values of `φ`, or `None` when the
    /// closure is infinite or the mode is float.
    fn grid_with(&self, extra: &[Value]) -> Option<ValueGrid> {
        if self.mode() != Mode::Exact {
            return None;
        }
        let base = self.value_grid().ok()?;
        let mut seed: Vec<Rational> = base.points().to_vec();
        seed.extend(extra.iter().filter_map(|v| v.as_exact().cloned()));
        if extra.iter().all(|v| base.contains(v)) {
            return Some(base);
        }
        ValueGrid::closure(seed, self.tnorm(), DEFAULT_CAP).ok()
    }

    /// Grid points, or samples plus the values present when no grid exists.
    fn breakpoints(&self, phi: &Weight) -> (Vec<Value>, bool) {
        match self.grid_with(phi.values()) {
            Some(g) => (g.values().collect(), false),
            None => {
                let mut v = sample_points(self.mode());
                v.extend(phi.values().iter().cloned());
                v.extend(self.hom_rel().entries().iter().cloned());
                (sorted_values(v), true)
            }
        }
    }

    /// `max φ = 1` and
    /// `(p1 ⊗ φ(x1)) ∧ (p2 ⊗ φ(x2)) = sup_x ((p1 ⊗ X(x1,x)) ∧ (p2 ⊗ X(x2,x))) ⊗ φ(x)`
    /// for all `x1, x2` and all breakpoints `p1, p2`.
    pub fn is_conically_flat(&self, phi: &Weight) -> Result<Verdict> {
        let (ps, approximate) = self.breakpoints(phi);
        let max = self.max_value(phi)?;
        if !max.is_one() {
            return Ok(Verdict::fail(Witness::NotInhabited { max }, approximate));
        }
        let n = self.n();
        for x1 in 0..n {
            for x2 in 0..n {
                for p1 in &ps {
                    for p2 in &ps {
                        let lhs = self.conj(p1, phi.get(x1))?.min(&self.conj(p2, phi.get(x2))?)?;
                        let mut rhs = self.zero();
                        for x in 0..n {
                            let m = self
                                .conj(p1, self.hom(x1, x))?
                                .min(&self.conj(p2, self.hom(x2, x))?)?;
                            rhs = rhs.max(&self.conj(&m, phi.get(x))?)?;
                        }
                        if lhs != rhs {
                            return Ok(Verdict::fail(
                                Witness::Ghk {
                                    x1,
                                    x2,
                                    p1: p1.clone(),
                                    p2: p2.clone(),
                                    lhs,
                                    rhs,
                                },
                                approximate,
                            ));
                        }
                    }
                }
            }
        }
        Ok(Verdict::pass(approximate))
    }

    /// Coweights for the cotensor condition: every grid coweight when that
    /// is within `bound`, else `p ⊗ y†(x)` for breakpoints `p` plus
    /// [`FLAT_SAMPLES`] seeded random grid coweights.
    pub fn flat_test_family(
        &self,
        phi: &Weight,
        bound: u128,
        seed: u64,
    ) -> Result<(Vec<Coweight>, Family)> {
        if let Some(g) = self.grid_with(phi.values()) {
            match self.grid_coweights(&g, bound) {
                Ok(all) => return Ok((all, Family::Exhaustive)),
                Err(Error::BoundExceeded { .. }) => {}
                Err(e) => return Err(e),
            }
        }
        let (ps, _) = self.breakpoints(phi);
        let mut fam = Vec::new();
        for x in 0..self.n() {
            let row = self.coyoneda(x);
            for p in &ps {
                let vals = row.values().iter().map(|v| self.conj(p, v)).collect::<Result<_>>()?;
                fam.push(self.coweight(vals)?);
            }
        }
        if let Some(g) = self.grid_with(phi.values()) {
            let mut rng = random::rng(seed);
            for _ in 0..FLAT_SAMPLES {
                fam.push(random::coweight(&mut rng, self, &g));
            }
        }
        Ok((fam, Family::Sampled))
    }

    /// Conically flat and `φ ∘ (r → ψ) = r → (φ ∘ ψ)` for every breakpoint
    /// `r` and every coweight `ψ` of [`Self::flat_test_family`].
    pub fn is_flat(&self, phi: &Weight, bound: u128, seed: u64) -> Result<FlatVerdict> {
        let conical = self.is_conically_flat(phi)?;
        let (family, kind) = self.flat_test_family(phi, bound, seed)?;
        let approximate = conical.approximate || kind == Family::Sampled;
        if !conical.holds {
            return Ok(FlatVerdict {
                verdict: Verdict::fail(Witness::NotConicallyFlat, approximate),
                family: kind,
            });
        }
        let (rs, _) = self.breakpoints(phi);
        for psi in &family {
            let pair = self.pairing(phi, psi)?;
            for r in &rs {
                let cot = psi.values().iter().map(|v| self.imp(r, v)).collect::<Result<_>>()?;
                let cot = self.coweight(cot)?;
                let lhs = self.pairing(phi, &cot)?;
                let rhs = self.imp(r, &pair)?;
                if lhs != rhs {
                    return Ok(FlatVerdict {
                        verdict: Verdict::fail(
                            Witness::Cotensor { r: r.clone(), coweight: psi.clone(), lhs, rhs },
                            approximate,
                        ),
                        family: kind,
                    });
                }
            }
        }
        Ok(FlatVerdict { verdict: Verdict::pass(approximate), family: kind })
    }

    /// All five classes with witnesses. Fails if the verdicts break the
    /// implication chain.
    pub fn classify(&self, phi: &Weight, bound: u128, seed: u64) -> Result<WeightClassReport> {
        let representable = self.is_representable(phi);
        let cauchy = self.cauchy_check(phi)?;
        let ideal = self.is_ideal(phi)?;
        let conically_flat = self.is_conically_flat(phi)?;
        let flat = self.is_flat(phi, bound, seed)?;
        let flags = Flags {
            representable: representable.is_some(),
            cauchy: cauchy.is_ok(),
            ideal: ideal.holds,
            conically_flat: conically_flat.holds,
            flat: flat.verdict.holds,
        };
        if let Some(rule) = flags.chain_violation() {
            if !flat.verdict.approximate {
                return Err(Error::Unsupported(format!("inconsistent verdicts: {rule} fails")));
            }
        }
        let (left_adjoint, cauchy_witness) = match cauchy {
            Ok(psi) => (Some(psi), None),
            Err(w) => (None, Some(w)),
        };
        Ok(WeightClassReport {
            weight: phi.clone(),
            flags,
            representing: representable.map(|a| self.name(a).to_string()),
            left_adjoint,
            ideal,
            cauchy: cauchy_witness,
            conically_flat,
            flat,
        })
    }

    /// Isomorphism classes of Cauchy grid weights with `hom = sub`, and the
    /// embedding sending `x` to the class of `y(x)`.
    pub fn cauchy_completion(&self, bound: u128) -> Result<(EnrichedCategory, Vec<usize>)> {
        let grid = self.value_grid()?;
        let mut reps: Vec<Weight> = Vec::new();
        let representables = (0..self.n()).map(|x| self.yoneda(x));
        for phi in representables.chain(self.grid_weights(&grid, bound)?) {
            if self.is_cauchy(&phi)?.is_none() {
                continue;
            }
            let mut seen = false;
            for r in &reps {
                if self.sub(r, &phi)?.is_one() && self.sub(&phi, r)?.is_one() {
                    seen = true;
                    break;
                }
            }
            if !seen {
                reps.push(phi);
            }
        }
        let mut rows = Vec::with_capacity(reps.len());
        for a in &reps {
            rows.push(reps.iter().map(|b| self.sub(a, b)).collect::<Result<Vec<_>>>()?);
        }
        let mut embedding = Vec::with_capacity(self.n());
        for x in 0..self.n() {
            let y = self.yoneda(x);
            let mut class = None;
            for (k, r) in reps.iter().enumerate() {
                if self.sub(r, &y)?.is_one() && self.sub(&y, r)?.is_one() {
                    class = Some(k);
                    break;
                }
            }
            embedding.push(class.expect("representables are Cauchy"));
        }
        let mut names: Vec<Option<String>> = vec![None; reps.len()];
        for x in 0..self.n() {
            names[embedding[x]].get_or_insert_with(|| self.name(x).to_string());
        }
        let taken: BTreeSet<String> = names.iter().flatten().cloned().collect();
        let mut fresh = (0..).map(|k| format!("c{k}")).filter(|s| !taken.contains(s));
        let names = names
            .into_iter()
            .map(|n| n.unwrap_or_else(|| fresh.next().expect("infinite")))
            .collect();
        let cat = EnrichedCategory::from_rows(self.tnorm().clone(), rows)?
            .with_names(names)?
            .with_grid(grid)?;
        Ok((cat, embedding))
    }

    /// Grid weights that pass [`Self::is_ideal`].
    pub fn grid_ideals(&self, bound: u128) -> Result<Vec<Weight>> {
        let grid = self.value_grid()?;
        let mut out = Vec::new();
        for phi in self.grid_weights(&grid, bound)? {
            if self.is_ideal(&phi)?.holds {
                out.push(phi);
            }
        }
        Ok(out)
    }

    /// Separated, and every grid ideal is representable.
    pub fn is_smyth_complete(&self, bound: u128) -> Result<bool> {
        if !self.is_separated() {
            return Ok(false);
        }
        Ok(self.grid_ideals(bound)?.iter().all(|phi| self.is_representable(phi).is_some()))
    }

    /// Every grid ideal is a Cauchy weight.
    pub fn is_smyth_completable(&self, bound: u128) -> Result<bool> {
        for phi in self.grid_ideals(bound)? {
            if self.is_cauchy(&phi)?.is_none() {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presheaf::DEFAULT_BOUND;
    use crate::tnorm::TNorm;

    fn r(p: i64, q: i64) -> Value {
        Value::ratio(p, q)
    }

    fn g5() -> EnrichedCategory {
        let g = ValueGrid::godel([0, 1, 2, 3, 4].map(|k| Rational::new(k, 4))).unwrap();
        EnrichedCategory::from_grid(&g)
    }

    fn g5_phi(x: &EnrichedCategory) -> Weight {
        x.weight(vec![r(1, 1), r(1, 1), r(1, 2), r(1, 2), r(1, 2)]).unwrap()
    }

    fn d2() -> EnrichedCategory {
        EnrichedCategory::discrete(TNorm::Lukasiewicz, 2, Mode::Exact)
    }

    fn a2() -> EnrichedCategory {
        EnrichedCategory::from_rows(
            TNorm::Lukasiewicz,
            vec![vec![r(1, 1), r(2, 3)], vec![r(0, 1), r(1, 1)]],
        )
        .unwrap()
    }

    #[test]
    fn g5_fixture() {
        let x = g5();
        let phi = g5_phi(&x);
        assert_eq!(x.is_representable(&phi), None);
        assert!(x.is_cauchy(&phi).unwrap().is_none());
        let ideal = x.is_ideal(&phi).unwrap();
        assert!(!ideal.holds);
        assert_eq!(ideal.witness, Some(Witness::Pair { x1: 0, x2: 2 }));
        assert!(!x.is_ideal_sweep(&phi).unwrap().holds);
        assert!(x.is_conically_flat(&phi).unwrap().holds);
        let flat = x.is_flat(&phi, DEFAULT_BOUND, 0).unwrap();
        assert!(!flat.verdict.holds);
        assert_eq!(flat.family, Family::Exhaustive);
        let rep = x.classify(&phi, DEFAULT_BOUND, 0).unwrap();
        assert_eq!(
            rep.flags,
            Flags { representable: false, cauchy: false, ideal: false, conically_flat: true, flat: false }
        );
    }

    #[test]
    fn g5_named_witnesses() {
        let x = g5();
        let phi = g5_phi(&x);
        // The pair (1, 0) from the fixture: elements 4 and 0.
        let tops = [0usize, 1];
        assert!(tops.iter().all(|&t| x.hom(4, t).lt(phi.get(4)).unwrap()));
        // r = 1/2, ψ = y†(1/2) breaks the cotensor identity.
        let psi = x.coyoneda(2);
        let half = r(1, 2);
        let cot = x
            .coweight(psi.values().iter().map(|v| x.imp(&half, v).unwrap()).collect())
            .unwrap();
        assert_eq!(x.pairing(&phi, &cot).unwrap(), r(1, 2));
        assert_eq!(x.imp(&half, &x.pairing(&phi, &psi).unwrap()).unwrap(), r(1, 1));
    }

    #[test]
    fn d2_all_false() {
        let x = d2();
        let phi = x.weight(vec![r(1, 1), r(1, 1)]).unwrap();
        let rep = x.classify(&phi, DEFAULT_BOUND, 0).unwrap();
        assert_eq!(
            rep.flags,
            Flags { representable: false, cauchy: false, ideal: false, conically_flat: false, flat: false }
        );
        assert_eq!(rep.ideal.witness, Some(Witness::Pair { x1: 0, x2: 1 }));
        match rep.conically_flat.witness {
            Some(Witness::Ghk { x1: 0, x2: 1, p1, p2, lhs, rhs }) => {
                assert!(p1.is_one() && p2.is_one() && lhs.is_one() && rhs.is_zero());
            }
            other => panic!("{other:?}"),
        }
        match rep.cauchy {
            Some(Witness::NotAdjoint { candidate, pairing, .. }) => {
                assert_eq!(candidate.values(), &[r(0, 1), r(0, 1)]);
                assert!(pairing.is_zero());
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn representables_are_everything() {
        let x = a2();
        for a in 0..2 {
            let rep = x.classify(&x.yoneda(a), DEFAULT_BOUND, 0).unwrap();
            assert_eq!(
                rep.flags,
                Flags { representable: true, cauchy: true, ideal: true, conically_flat: true, flat: true }
            );
            assert_eq!(rep.left_adjoint.unwrap(), x.coyoneda(a));
        }
        assert_eq!(x.is_cauchy(&x.yoneda(1)).unwrap().unwrap().values(), &[r(0, 1), r(1, 1)]);
    }

    #[test]
    fn completion_examples() {
        let x = a2();
        let (c, e) = x.cauchy_completion(DEFAULT_BOUND).unwrap();
        assert_eq!(c, x);
        assert_eq!(e, vec![0, 1]);
        let twins = EnrichedCategory::from_rows(TNorm::Godel, vec![vec![r(1, 1); 2]; 2]).unwrap();
        let (c, e) = twins.cauchy_completion(DEFAULT_BOUND).unwrap();
        assert_eq!(c.n(), 1);
        assert_eq!(e, vec![0, 0]);
        let (cc, _) = c.cauchy_completion(DEFAULT_BOUND).unwrap();
        assert!(cc.find_isomorphism(&c).is_some());
        assert!(d2().is_smyth_complete(DEFAULT_BOUND).unwrap());
        assert!(d2().is_smyth_completable(DEFAULT_BOUND).unwrap());
        assert!(!twins.is_smyth_complete(DEFAULT_BOUND).unwrap());
    }

    #[test]
    fn sweep_matches_nonstrict_on_random_categories() {
        let mut rng = random::rng(11);
        for k in 0..40 {
            let g = if k % 2 == 0 { ValueGrid::lukasiewicz(4) } else { random::godel_grid(&mut rng, 3) };
            let x = random::category(&mut rng, &g, 1 + k % 4, 0.5);
            for phi in x.grid_weights(&g, DEFAULT_BOUND).unwrap() {
                let a = x.is_ideal(&phi).unwrap().holds;
                assert_eq!(a, x.is_ideal_sweep(&phi).unwrap().holds);
                assert_eq!(a, x.is_representable(&phi).is_some());
            }
        }
    }

    /// Every category on `n` points with hom values in `grid`.
    fn all_categories(grid: &ValueGrid, n: usize) -> Vec<EnrichedCategory> {
        let off: Vec<(usize, usize)> =
            (0..n).flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j))).collect();
        let k = grid.len();
        let mut out = Vec::new();
        for code in 0..k.pow(off.len() as u32) {
            let mut rows = vec![vec![Value::one(Mode::Exact); n]; n];
            let mut c = code;
            for &(i, j) in &off {
                rows[i][j] = grid.point(c % k);
                c /= k;
            }
            if let Ok(x) = EnrichedCategory::from_rows(grid.tnorm().clone(), rows) {
                out.push(x.with_grid(grid.clone()).unwrap());
            }
        }
        out
    }

    #[test]
    fn archimedean_coincidence_small() {
        let g = ValueGrid::lukasiewicz(3);
        for n in 1..=3 {
            for x in all_categories(&g, n) {
                for phi in x.grid_weights(&g, DEFAULT_BOUND).unwrap() {
                    let i = x.is_ideal(&phi).unwrap().holds;
                    let c = x.is_conically_flat(&phi).unwrap().holds;
                    let f = x.is_flat(&phi, DEFAULT_BOUND, 0).unwrap().verdict.holds;
                    assert!(i == c && c == f, "{x:?} {phi:?}: ideal {i} conical {c} flat {f}");
                }
            }
        }
    }
}
