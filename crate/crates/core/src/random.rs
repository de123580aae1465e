//! Seeded generators for categories, weights, functors and families.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::cat::{compose, EnrichedCategory, EnrichedFunctor, Rel};
use crate::error::Result;
use crate::grid::ValueGrid;
use crate::presheaf::{Coweight, Weight};
use crate::rational::Rational;
use crate::value::{Mode, Value};

pub type Rng64 = ChaCha8Rng;

pub fn rng(seed: u64) -> Rng64 {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A random grid point.
pub fn grid_value(rng: &mut Rng64, grid: &ValueGrid) -> Value {
    grid.point(rng.gen_range(0..grid.len()))
}

/// A random category on `n` points with hom values in `grid`. Off-diagonal
/// entries are 0 with probability `zero_bias`, otherwise uniform, and the
/// matrix is then closed under composition.
pub fn category(rng: &mut Rng64, grid: &ValueGrid, n: usize, zero_bias: f64) -> EnrichedCategory {
    let t = grid.tnorm();
    let mut data = Vec::with_capacity(n * n);
    for i in 0..n {
        for j in 0..n {
            data.push(if i == j {
                Value::one(Mode::Exact)
            } else if rng.gen_bool(zero_bias) {
                Value::zero(Mode::Exact)
            } else {
                grid_value(rng, grid)
            });
        }
    }
    let mut hom = Rel::new(n, n, Mode::Exact, data).expect("square");
    loop {
        let sq = compose(t, &hom, &hom).expect("same shape");
        if sq.le(&hom).expect("same shape") {
            break;
        }
        let joined: Vec<Value> = hom
            .entries()
            .iter()
            .zip(sq.entries())
            .map(|(a, b)| a.max(b).expect("exact"))
            .collect();
        hom = Rel::new(n, n, Mode::Exact, joined).expect("square");
    }
    EnrichedCategory::new(t.clone(), hom)
        .and_then(|c| c.with_grid(grid.clone()))
        .expect("closed matrix is a category")
}

/// A random weight: a random grid vector closed downward along the homs.
pub fn weight(rng: &mut Rng64, x: &EnrichedCategory, grid: &ValueGrid) -> Weight {
    let raw: Vec<Value> = (0..x.n()).map(|_| grid_value(rng, grid)).collect();
    let vals = (0..x.n())
        .map(|i| {
            let mut acc = raw[i].clone();
            for j in 0..x.n() {
                acc = acc.max(&x.conj(&raw[j], x.hom(i, j)).expect("exact")).expect("exact");
            }
            acc
        })
        .collect();
    x.weight(vals).expect("closure is a weight")
}

/// A random coweight, dually.
pub fn coweight(rng: &mut Rng64, x: &EnrichedCategory, grid: &ValueGrid) -> Coweight {
    let raw: Vec<Value> = (0..x.n()).map(|_| grid_value(rng, grid)).collect();
    let vals = (0..x.n())
        .map(|j| {
            let mut acc = raw[j].clone();
            for i in 0..x.n() {
                acc = acc.max(&x.conj(x.hom(i, j), &raw[i]).expect("exact")).expect("exact");
            }
            acc
        })
        .collect();
    x.coweight(vals).expect("closure is a coweight")
}

/// A uniformly chosen functor `x → y`.
pub fn functor<'a>(
    rng: &mut Rng64,
    x: &'a EnrichedCategory,
    y: &'a EnrichedCategory,
) -> Result<EnrichedFunctor<'a>> {
    let all = x.functors_to(y, 1 << 20)?;
    let m = all.choose(rng).expect("constant maps are functors").clone();
    EnrichedFunctor::new(x, y, m)
}

/// A Gödel grid with up to `k` random interior points of denominator <= 8.
pub fn godel_grid(rng: &mut Rng64, k: usize) -> ValueGrid {
    let mut pts = vec![Rational::zero(), Rational::one()];
    for _ in 0..rng.gen_range(1..=k) {
        let d = rng.gen_range(2..=8);
        pts.push(Rational::new(rng.gen_range(1..d), d));
    }
    ValueGrid::godel(pts).expect("any set with 0 and 1 is Gödel-closed")
}

/// A random subset of `0..n` of the given size, sorted.
pub fn subset(rng: &mut Rng64, n: usize, size: usize) -> Vec<usize> {
    let mut v: Vec<usize> = (0..n).collect();
    v.shuffle(rng);
    v.truncate(size);
    v.sort_unstable();
    v
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tnorm::TNorm;

    #[test]
    fn reproducible() {
        let g = ValueGrid::lukasiewicz(6);
        let a = category(&mut rng(7), &g, 5, 0.5);
        let b = category(&mut rng(7), &g, 5, 0.5);
        assert_eq!(a, b);
        assert_eq!(a.tnorm(), &TNorm::Lukasiewicz);
    }

    #[test]
    fn generated_objects_validate() {
        let mut r = rng(1);
        for n in 1..6 {
            let g = godel_grid(&mut r, 3);
            let x = category(&mut r, &g, n, 0.4);
            for _ in 0..20 {
                let _ = weight(&mut r, &x, &g);
                let _ = coweight(&mut r, &x, &g);
            }
            let f = functor(&mut r, &x, &x).unwrap();
            assert_eq!(f.map().len(), n);
        }
    }
}
