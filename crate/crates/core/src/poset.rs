//! Finite preorders and lattices: adjunctions, totally-below and way-below,
//! complete distributivity, primes and coprimes.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A reflexive, transitive relation on `0..n`. Antisymmetry is optional.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "PosetData", into = "PosetData")]
pub struct FinitePoset {
    n: usize,
    leq: Vec<bool>,
    antisymmetric: bool,
}

#[derive(Serialize, Deserialize)]
struct PosetData {
    n: usize,
    leq: Vec<Vec<bool>>,
}

impl TryFrom<PosetData> for FinitePoset {
    type Error = Error;
    fn try_from(d: PosetData) -> Result<Self> {
        if d.leq.len() != d.n {
            return Err(Error::Shape(format!("n = {} but {} rows", d.n, d.leq.len())));
        }
        FinitePoset::new(d.leq)
    }
}

impl From<FinitePoset> for PosetData {
    fn from(p: FinitePoset) -> Self {
        PosetData { n: p.n, leq: p.to_rows() }
    }
}

impl FinitePoset {
    pub fn new(leq: Vec<Vec<bool>>) -> Result<Self> {
        let n = leq.len();
        if leq.iter().any(|r| r.len() != n) {
            return Err(Error::Shape("order relation must be square".into()));
        }
        let flat: Vec<bool> = leq.into_iter().flatten().collect();
        let at = |i: usize, j: usize| flat[i * n + j];
        for i in 0..n {
            if !at(i, i) {
                return Err(Error::Parse(format!("order is not reflexive at {i}")));
            }
            for j in 0..n {
                for k in 0..n {
                    if at(i, j) && at(j, k) && !at(i, k) {
                        return Err(Error::Parse(format!("order is not transitive at ({i},{j},{k})")));
                    }
                }
            }
        }
        let antisymmetric = (0..n).all(|i| (0..i).all(|j| !(at(i, j) && at(j, i))));
        Ok(FinitePoset { n, leq: flat, antisymmetric })
    }

    /// The order generated by the covering pairs `(lower, upper)`.
    pub fn from_covers(n: usize, covers: &[(usize, usize)]) -> Self {
        let mut m = vec![vec![false; n]; n];
        for (i, row) in m.iter_mut().enumerate() {
            row[i] = true;
        }
        for &(a, b) in covers {
            m[a][b] = true;
        }
        for k in 0..n {
            for i in 0..n {
                for j in 0..n {
                    if m[i][k] && m[k][j] {
                        m[i][j] = true;
                    }
                }
            }
        }
        FinitePoset::new(m).expect("transitive closure of covers is a preorder")
    }

    pub fn chain(n: usize) -> Self {
        let covers: Vec<(usize, usize)> = (1..n).map(|i| (i - 1, i)).collect();
        Self::from_covers(n, &covers)
    }

    /// Subsets of `0..k` ordered by inclusion, encoded as bitmasks.
    pub fn powerset(k: usize) -> Self {
        let n = 1usize << k;
        let leq = (0..n).map(|a| (0..n).map(|b| a & !b == 0).collect()).collect();
        FinitePoset::new(leq).expect("inclusion is an order")
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn leq(&self, i: usize, j: usize) -> bool {
        self.leq[i * self.n + j]
    }

    pub fn is_antisymmetric(&self) -> bool {
        self.antisymmetric
    }

    pub fn to_rows(&self) -> Vec<Vec<bool>> {
        (0..self.n).map(|i| (0..self.n).map(|j| self.leq(i, j)).collect()).collect()
    }

    pub fn opposite(&self) -> Self {
        let leq = (0..self.n).map(|i| (0..self.n).map(|j| self.leq(j, i)).collect()).collect();
        FinitePoset::new(leq).expect("opposite of a preorder")
    }

    pub fn is_monotone(&self, target: &FinitePoset, f: &[usize]) -> bool {
        (0..self.n).all(|i| (0..self.n).all(|j| !self.leq(i, j) || target.leq(f[i], f[j])))
    }

    /// A least element of `set` (least index among equivalent ones).
    pub fn least_of(&self, set: &[usize]) -> Option<usize> {
        set.iter().copied().find(|&m| set.iter().all(|&s| self.leq(m, s)))
    }

    pub fn greatest_of(&self, set: &[usize]) -> Option<usize> {
        set.iter().copied().find(|&m| set.iter().all(|&s| self.leq(s, m)))
    }

    pub fn upper_bounds(&self, set: &[usize]) -> Vec<usize> {
        (0..self.n).filter(|&u| set.iter().all(|&s| self.leq(s, u))).collect()
    }

    pub fn lower_bounds(&self, set: &[usize]) -> Vec<usize> {
        (0..self.n).filter(|&u| set.iter().all(|&s| self.leq(u, s))).collect()
    }

    pub fn join(&self, set: &[usize]) -> Option<usize> {
        self.least_of(&self.upper_bounds(set))
    }

    pub fn meet(&self, set: &[usize]) -> Option<usize> {
        self.greatest_of(&self.lower_bounds(set))
    }

    fn join_mask(&self, mask: u64) -> Option<usize> {
        let set: Vec<usize> = (0..self.n).filter(|&i| mask >> i & 1 == 1).collect();
        self.join(&set)
    }

    /// Every subset has a join (equivalently, every subset has a meet).
    pub fn is_complete(&self) -> bool {
        self.n > 0
            && self.join(&[]).is_some()
            && (0..self.n).all(|a| (0..a).all(|b| self.join(&[a, b]).is_some()))
    }

    /// A complete lattice: complete and antisymmetric.
    pub fn is_lattice(&self) -> bool {
        self.antisymmetric && self.is_complete()
    }

    pub fn bottom(&self) -> Option<usize> {
        self.join(&[])
    }

    pub fn top(&self) -> Option<usize> {
        self.meet(&[])
    }

    /// Down-closed subsets as bitmasks, ascending.
    pub fn lower_sets(&self) -> Vec<u64> {
        assert!(self.n < 64, "lower_sets needs fewer than 64 elements");
        (0u64..1 << self.n)
            .filter(|&m| {
                (0..self.n).all(|i| {
                    m >> i & 1 == 0 || (0..self.n).all(|j| !self.leq(j, i) || m >> j & 1 == 1)
                })
            })
            .collect()
    }

    fn lattice(&self) -> &Self {
        assert!(self.is_lattice(), "operation needs a complete lattice");
        self
    }

    /// `x ◁ y`: every `A` with `y <= sup A` meets `↑x`. Equivalently, `y` is
    /// not below the join of everything outside `↑x`.
    pub fn totally_below(&self, x: usize, y: usize) -> bool {
        let l = self.lattice();
        let outside: Vec<usize> = (0..l.n).filter(|&a| !l.leq(x, a)).collect();
        let s = l.join(&outside).expect("complete");
        !l.leq(y, s)
    }

    /// `x ≪ y`: every directed `A` with `y <= sup A` meets `↑x`. A finite
    /// directed set has a greatest element, so only principal sets matter.
    pub fn way_below(&self, x: usize, y: usize) -> bool {
        let l = self.lattice();
        (0..l.n).all(|m| !l.leq(y, m) || l.leq(x, m))
    }

    /// `x = sup{z : z ◁ x}` for every `x`.
    pub fn is_completely_distributive(&self) -> bool {
        let l = self.lattice();
        (0..l.n).all(|x| {
            let below: Vec<usize> = (0..l.n).filter(|&z| l.totally_below(z, x)).collect();
            l.join(&below) == Some(x)
        })
    }

    /// `x = sup{z : z ≪ x}` for every `x`.
    pub fn is_continuous_lattice(&self) -> bool {
        let l = self.lattice();
        (0..l.n).all(|x| {
            let below: Vec<usize> = (0..l.n).filter(|&z| l.way_below(z, x)).collect();
            l.join(&below) == Some(x)
        })
    }

    /// `sup ⋂ A_i = inf_i sup A_i` for every family of lower sets. All
    /// families are tried when there are at most 16 lower sets; otherwise
    /// pairs and the empty family, which suffice by induction.
    pub fn cd_law_holds(&self) -> bool {
        let l = self.lattice();
        let all = (1u64 << l.n) - 1;
        let lows = l.lower_sets();
        let sups: Vec<usize> = lows.iter().map(|&m| l.join_mask(m).expect("complete")).collect();
        let check = |fam: &[usize]| {
            let inter = fam.iter().fold(all, |acc, &i| acc & lows[i]);
            let lhs = l.join_mask(inter).expect("complete");
            let rhs = l.meet(&fam.iter().map(|&i| sups[i]).collect::<Vec<_>>()).expect("complete");
            lhs == rhs
        };
        if lows.len() <= 16 {
            (0u32..1 << lows.len()).all(|f| {
                let fam: Vec<usize> = (0..lows.len()).filter(|&i| f >> i & 1 == 1).collect();
                check(&fam)
            })
        } else {
            check(&[]) && (0..lows.len()).all(|i| (0..=i).all(|j| check(&[i, j])))
        }
    }

    /// Coprimes under the binary definition: `x <= a ∨ b` implies
    /// `x <= a` or `x <= b`. The bottom element always qualifies.
    pub fn coprimes(&self) -> Vec<usize> {
        let l = self.lattice();
        (0..l.n)
            .filter(|&x| {
                (0..l.n).all(|a| {
                    (0..l.n).all(|b| {
                        let j = l.join(&[a, b]).expect("complete");
                        !l.leq(x, j) || l.leq(x, a) || l.leq(x, b)
                    })
                })
            })
            .collect()
    }

    /// Coprimes that also satisfy the nullary case, i.e. excluding bottom.
    pub fn coprimes_nonzero(&self) -> Vec<usize> {
        let bot = self.lattice().bottom();
        self.coprimes().into_iter().filter(|&x| Some(x) != bot).collect()
    }

    pub fn primes(&self) -> Vec<usize> {
        self.opposite().coprimes()
    }

    pub fn primes_nonzero(&self) -> Vec<usize> {
        self.opposite().coprimes_nonzero()
    }

    /// Every element is the join of the coprimes below it.
    pub fn has_enough_coprimes(&self) -> bool {
        let l = self.lattice();
        let cps = l.coprimes();
        (0..l.n).all(|x| {
            let below: Vec<usize> = cps.iter().copied().filter(|&c| l.leq(c, x)).collect();
            l.join(&below) == Some(x)
        })
    }
}

/// `f ⊣ g`: `f(x) <= y` iff `x <= g(y)`, for `f: P → Q` and `g: Q → P`.
pub fn galois_check(f: &[usize], g: &[usize], p: &FinitePoset, q: &FinitePoset) -> bool {
    (0..p.n()).all(|x| (0..q.n()).all(|y| q.leq(f[x], y) == p.leq(x, g[y])))
}

/// The left adjoint of `g: Q → P`: `f(x)` is a least element of
/// `{y : x <= g(y)}`.
pub fn left_adjoint_of(g: &[usize], p: &FinitePoset, q: &FinitePoset) -> Option<Vec<usize>> {
    if !q.is_monotone(p, g) {
        return None;
    }
    (0..p.n())
        .map(|x| {
            let pre: Vec<usize> = (0..q.n()).filter(|&y| p.leq(x, g[y])).collect();
            q.least_of(&pre)
        })
        .collect()
}

/// The right adjoint of `f: P → Q`: `g(y)` is a greatest element of
/// `{x : f(x) <= y}`.
pub fn right_adjoint_of(f: &[usize], p: &FinitePoset, q: &FinitePoset) -> Option<Vec<usize>> {
    if !p.is_monotone(q, f) {
        return None;
    }
    (0..q.n())
        .map(|y| {
            let pre: Vec<usize> = (0..p.n()).filter(|&x| q.leq(f[x], y)).collect();
            p.greatest_of(&pre)
        })
        .collect()
}

/// A named lattice from the catalog.
#[derive(Debug, Clone)]
pub struct NamedLattice {
    pub name: &'static str,
    pub lattice: FinitePoset,
}

/// All lattices with at most five elements, up to isomorphism. Element 0 is
/// the bottom and the last element the top.
pub fn small_lattices() -> Vec<NamedLattice> {
    let table: [(&str, usize, &[(usize, usize)]); 10] = [
        ("C1", 1, &[]),
        ("C2", 2, &[(0, 1)]),
        ("C3", 3, &[(0, 1), (1, 2)]),
        ("C4", 4, &[(0, 1), (1, 2), (2, 3)]),
        ("B2", 4, &[(0, 1), (0, 2), (1, 3), (2, 3)]),
        ("C5", 5, &[(0, 1), (1, 2), (2, 3), (3, 4)]),
        ("M3", 5, &[(0, 1), (0, 2), (0, 3), (1, 4), (2, 4), (3, 4)]),
        ("N5", 5, &[(0, 1), (1, 2), (2, 4), (0, 3), (3, 4)]),
        ("1+B2", 5, &[(0, 1), (1, 2), (1, 3), (2, 4), (3, 4)]),
        ("B2+1", 5, &[(0, 1), (0, 2), (1, 3), (2, 3), (3, 4)]),
    ];
    table
        .iter()
        .map(|&(name, n, covers)| NamedLattice { name, lattice: FinitePoset::from_covers(n, covers) })
        .collect()
}

pub fn lattice_by_name(name: &str) -> Option<FinitePoset> {
    small_lattices().into_iter().find(|l| l.name == name).map(|l| l.lattice)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m3() -> FinitePoset {
        lattice_by_name("M3").unwrap()
    }

    /// All subsets of `0..n` as index vectors.
    fn subsets(n: usize) -> Vec<Vec<usize>> {
        (0u32..1 << n).map(|m| (0..n).filter(|&i| m >> i & 1 == 1).collect()).collect()
    }

    fn brute_totally_below(l: &FinitePoset, x: usize, y: usize) -> bool {
        subsets(l.n()).iter().all(|a| {
            let s = l.join(a).unwrap();
            !l.leq(y, s) || a.iter().any(|&e| l.leq(x, e))
        })
    }

    fn is_directed(l: &FinitePoset, a: &[usize]) -> bool {
        !a.is_empty()
            && a.iter().all(|&i| a.iter().all(|&j| a.iter().any(|&k| l.leq(i, k) && l.leq(j, k))))
    }

    fn brute_way_below(l: &FinitePoset, x: usize, y: usize) -> bool {
        subsets(l.n()).iter().filter(|a| is_directed(l, a)).all(|a| {
            let s = l.join(a).unwrap();
            !l.leq(y, s) || a.iter().any(|&e| l.leq(x, e))
        })
    }

    #[test]
    fn galois_examples() {
        let c = FinitePoset::chain(2);
        assert!(galois_check(&[0, 1], &[0, 1], &c, &c));
        // const 1 ⊣ const 1 fails at (x, y) = (0, 0): 1 > 0 yet 0 <= 1.
        assert!(!galois_check(&[1, 1], &[1, 1], &c, &c));
        // const 0 ⊣ const 1 holds: both sides are always true.
        assert!(galois_check(&[0, 0], &[1, 1], &c, &c));
        assert!(!galois_check(&[1, 1], &[0, 0], &c, &c));
    }

    #[test]
    fn left_adjoint_examples() {
        let c = FinitePoset::chain(3);
        assert_eq!(left_adjoint_of(&[0, 1, 2], &c, &c), Some(vec![0, 1, 2]));
        let anti = FinitePoset::new(vec![vec![true, false], vec![false, true]]).unwrap();
        assert_eq!(left_adjoint_of(&[0, 0], &anti, &anti), None);
    }

    #[test]
    fn closure_is_left_adjoint_to_inclusion() {
        // Closed subsets of {0,1,2}: an intersection-closed family with the top.
        let closed: Vec<usize> = vec![0b000, 0b001, 0b011, 0b100, 0b111];
        let pow = FinitePoset::powerset(3);
        let sub = FinitePoset::new(
            closed.iter().map(|&a| closed.iter().map(|&b| a & !b == 0).collect()).collect(),
        )
        .unwrap();
        let f = left_adjoint_of(&closed, &pow, &sub).expect("closure exists");
        for s in 0..8 {
            let expect = closed.iter().copied().filter(|&c| s & !c == 0).min_by_key(|c| c.count_ones()).unwrap();
            assert_eq!(closed[f[s]], expect);
        }
        assert!(galois_check(&f, &closed, &pow, &sub));
    }

    #[test]
    fn adjoints_preserve_joins_and_meets() {
        for nl in small_lattices() {
            let l = &nl.lattice;
            let n = l.n();
            // Every monotone self-map with a right adjoint.
            let mut f = vec![0; n];
            loop {
                if let Some(g) = right_adjoint_of(&f, l, l) {
                    assert!(galois_check(&f, &g, l, l));
                    for a in subsets(n) {
                        let fa: Vec<usize> = a.iter().map(|&i| f[i]).collect();
                        assert_eq!(Some(f[l.join(&a).unwrap()]), l.join(&fa));
                        let ga: Vec<usize> = a.iter().map(|&i| g[i]).collect();
                        assert_eq!(Some(g[l.meet(&a).unwrap()]), l.meet(&ga));
                    }
                }
                let mut i = 0;
                while i < n && f[i] == n - 1 {
                    f[i] = 0;
                    i += 1;
                }
                if i == n {
                    break;
                }
                f[i] += 1;
            }
        }
    }

    #[test]
    fn totally_below_examples() {
        let c = FinitePoset::chain(3);
        assert!(c.totally_below(0, 2));
        assert!(c.totally_below(1, 1));
        assert!(!c.totally_below(0, 0));
        assert!(!m3().totally_below(1, 4));
    }

    #[test]
    fn relations_match_brute_force() {
        for nl in small_lattices() {
            let l = &nl.lattice;
            for x in 0..l.n() {
                for y in 0..l.n() {
                    assert_eq!(l.totally_below(x, y), brute_totally_below(l, x, y), "{} {x} {y}", nl.name);
                    assert_eq!(l.way_below(x, y), brute_way_below(l, x, y));
                    assert_eq!(l.way_below(x, y), l.leq(x, y));
                    if l.totally_below(x, y) {
                        assert!(l.leq(x, y));
                        for a in 0..l.n() {
                            for b in 0..l.n() {
                                if l.leq(a, x) && l.leq(y, b) {
                                    assert!(l.totally_below(a, b));
                                }
                            }
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn cd_examples() {
        let m = m3();
        assert!(!m.is_completely_distributive());
        assert!(m.is_continuous_lattice());
        assert!(!m.has_enough_coprimes());
        assert!(FinitePoset::chain(4).is_completely_distributive());
        assert!(FinitePoset::powerset(2).is_completely_distributive());
        assert!(!lattice_by_name("N5").unwrap().is_completely_distributive());
    }

    #[test]
    fn coprime_examples() {
        let c = FinitePoset::chain(3);
        assert_eq!(c.coprimes(), vec![0, 1, 2]);
        assert_eq!(c.coprimes_nonzero(), vec![1, 2]);
        assert_eq!(m3().coprimes(), vec![0]);
        assert_eq!(lattice_by_name("B2").unwrap().coprimes(), vec![0, 1, 2]);
        assert_eq!(lattice_by_name("B2").unwrap().primes(), vec![1, 2, 3]);
    }

    /// Brute-force enumeration of every partial order on `n` points that is
    /// a lattice, reduced up to isomorphism by permutation search.
    fn enumerate_lattices(n: usize) -> Vec<FinitePoset> {
        let pairs: Vec<(usize, usize)> =
            (0..n).flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j))).collect();
        let mut found: Vec<FinitePoset> = Vec::new();
        for mask in 0u64..1 << pairs.len() {
            let mut m = vec![vec![false; n]; n];
            for (i, row) in m.iter_mut().enumerate() {
                row[i] = true;
            }
            for (k, &(i, j)) in pairs.iter().enumerate() {
                if mask >> k & 1 == 1 {
                    m[i][j] = true;
                }
            }
            let Ok(p) = FinitePoset::new(m) else { continue };
            if !p.is_lattice() || found.iter().any(|q| isomorphic(q, &p)) {
                continue;
            }
            found.push(p);
        }
        found
    }

    fn isomorphic(a: &FinitePoset, b: &FinitePoset) -> bool {
        fn perms(n: usize) -> Vec<Vec<usize>> {
            if n == 0 {
                return vec![vec![]];
            }
            let mut out = Vec::new();
            for p in perms(n - 1) {
                for i in 0..n {
                    let mut q = p.clone();
                    q.insert(i, n - 1);
                    out.push(q);
                }
            }
            out
        }
        a.n() == b.n()
            && perms(a.n()).iter().any(|p| {
                (0..a.n()).all(|i| (0..a.n()).all(|j| a.leq(i, j) == b.leq(p[i], p[j])))
            })
    }

    #[test]
    fn catalog_matches_enumeration() {
        let cat = small_lattices();
        let mut total = 0;
        for n in 1..=5 {
            let found = enumerate_lattices(n);
            total += found.len();
            let of_size: Vec<&NamedLattice> = cat.iter().filter(|l| l.lattice.n() == n).collect();
            assert_eq!(found.len(), of_size.len(), "size {n}");
            for f in &found {
                assert!(of_size.iter().any(|l| isomorphic(&l.lattice, f)));
            }
        }
        assert_eq!(total, 10);
    }

    #[test]
    fn poset_json() {
        let p: FinitePoset = serde_json::from_str(r#"{"n":2,"leq":[[true,true],[false,true]]}"#).unwrap();
        assert_eq!(p, FinitePoset::chain(2));
        assert_eq!(serde_json::to_string(&p).unwrap(), r#"{"n":2,"leq":[[true,true],[false,true]]}"#);
        assert!(serde_json::from_str::<FinitePoset>(r#"{"n":2,"leq":[[true,false],[false,false]]}"#).is_err());
    }
}
