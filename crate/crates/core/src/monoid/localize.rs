use serde::Serialize;

use crate::error::{Error, Result};

use super::affine::{AffineMonoid, Membership};
use super::finite::FiniteCommMonoid;

/// What is made invertible: multiplication by `p`, or one element.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum Inverted<E> {
    P(u64),
    Element(E),
}

/// `M[1/p]` or `M[−x]` of a finite monoid, as fractions `(m, k)` meaning
/// `m / p^k` or `m − k·x`.
///
/// `(m, k) ~ (m′, k′)` iff `p^{k′+t} m = p^{k+t} m′` (resp. `m + (k′+t)x =
/// m′ + (k+t)x`) for some `t`; once the two sides agree they stay equal, and
/// both have entered their cycles by `t = |M|`, so testing `t = |M|` decides.
#[derive(Debug, Clone)]
pub struct FiniteLocalization {
    base: FiniteCommMonoid,
    inverted: Inverted<usize>,
    levels: usize,
    /// `class_of[k][m]` for `k ≤ levels`
    class_of: Vec<Vec<usize>>,
    representatives: Vec<(usize, usize)>,
    quotient: FiniteCommMonoid,
}

impl FiniteLocalization {
    pub fn new(base: &FiniteCommMonoid, inverted: Inverted<usize>) -> Result<Self> {
        match inverted {
            Inverted::P(p) if p < 2 => return Err(Error::malformed("p must be at least 2")),
            Inverted::Element(x) if x >= base.size() => {
                return Err(Error::NotMember(format!(
                    "element {x} of a monoid of size {}",
                    base.size()
                )))
            }
            _ => {}
        }
        let levels = base.size();
        let mut loc = FiniteLocalization {
            base: base.clone(),
            inverted,
            levels,
            class_of: vec![vec![usize::MAX; base.size()]; levels + 1],
            representatives: Vec::new(),
            quotient: FiniteCommMonoid::cyclic_group(1),
        };
        for k in 0..=levels {
            for m in base.elements() {
                let found = loc.representatives.iter().position(|&r| loc.pair_equal(r, (m, k)));
                let c = found.unwrap_or_else(|| {
                    loc.representatives.push((m, k));
                    loc.representatives.len() - 1
                });
                loc.class_of[k][m] = c;
            }
        }
        let n = loc.representatives.len();
        let mut table = vec![vec![0; n]; n];
        for a in 0..n {
            for b in 0..n {
                let s = loc.add_pairs(loc.representatives[a], loc.representatives[b]);
                table[a][b] = loc.class(s);
            }
        }
        let zero = loc.class((base.zero(), 0));
        loc.quotient = FiniteCommMonoid::new(table, zero)?;
        Ok(loc)
    }

    fn shift(&self, m: usize, k: usize) -> usize {
        match self.inverted {
            Inverted::P(p) => {
                let mut x = m;
                for _ in 0..k {
                    x = self.base.times(p, x);
                }
                x
            }
            Inverted::Element(e) => self.base.add(m, self.base.times(k as u64, e)),
        }
    }

    pub fn pair_equal(&self, (m, k): (usize, usize), (m2, k2): (usize, usize)) -> bool {
        let t = self.base.size();
        self.shift(m, k2 + t) == self.shift(m2, k + t)
    }

    pub fn add_pairs(&self, (m, k): (usize, usize), (m2, k2): (usize, usize)) -> (usize, usize) {
        match self.inverted {
            Inverted::P(_) => (self.base.add(self.shift(m, k2), self.shift(m2, k)), k + k2),
            Inverted::Element(_) => (self.base.add(m, m2), k + k2),
        }
    }

    /// Class index of a pair at any level.
    pub fn class(&self, (m, k): (usize, usize)) -> usize {
        if k <= self.levels {
            return self.class_of[k][m];
        }
        self.representatives
            .iter()
            .position(|&r| self.pair_equal(r, (m, k)))
            .expect("every class has a representative of level at most |M|")
    }

    pub fn base(&self) -> &FiniteCommMonoid {
        &self.base
    }

    pub fn inverted(&self) -> &Inverted<usize> {
        &self.inverted
    }

    /// The localization as a finite monoid on class indices.
    pub fn monoid(&self) -> &FiniteCommMonoid {
        &self.quotient
    }

    pub fn representatives(&self) -> &[(usize, usize)] {
        &self.representatives
    }

    /// The canonical map `M → M[…]`, `m ↦ (m, 0)`.
    pub fn unit_map(&self) -> Vec<usize> {
        self.base.elements().map(|m| self.class((m, 0))).collect()
    }
}

/// The colimit of `M →p M →p …` computed as the stable image `S = p^N M`
/// (`N = |M|`), on which multiplication by `p` is a bijection `σ`. Level `k`
/// maps to `S` by `m ↦ σ^{−k}(p^N m)`.
#[derive(Debug, Clone)]
pub struct StableImage {
    pub elements: Vec<usize>,
    pub monoid: FiniteCommMonoid,
    sigma_inverse: Vec<usize>,
    base: FiniteCommMonoid,
    p: u64,
}

impl StableImage {
    pub fn new(base: &FiniteCommMonoid, p: u64) -> Result<Self> {
        let n = base.size();
        let to_s = |m: usize| (0..n).fold(m, |x, _| base.times(p, x));
        let mut elements: Vec<usize> = base.elements().map(to_s).collect();
        elements.sort_unstable();
        elements.dedup();
        let index = |m: usize| elements.binary_search(&m).expect("closed under addition");
        let table = elements
            .iter()
            .map(|&a| elements.iter().map(|&b| index(base.add(a, b))).collect())
            .collect();
        let monoid = FiniteCommMonoid::new(table, index(base.zero()))?;
        let mut sigma_inverse = vec![usize::MAX; elements.len()];
        for (i, &s) in elements.iter().enumerate() {
            sigma_inverse[index(base.times(p, s))] = i;
        }
        if sigma_inverse.contains(&usize::MAX) {
            return Err(Error::malformed(
                "multiplication by p is not bijective on the stable image",
            ));
        }
        Ok(StableImage {
            elements: elements.clone(),
            monoid,
            sigma_inverse,
            base: base.clone(),
            p,
        })
    }

    /// Image in `S` (as an index) of `m` placed at level `k`.
    pub fn image(&self, m: usize, k: usize) -> usize {
        let n = self.base.size();
        let top = (0..n).fold(m, |x, _| self.base.times(self.p, x));
        let mut i = self.elements.binary_search(&top).expect("in stable image");
        for _ in 0..k {
            i = self.sigma_inverse[i];
        }
        i
    }
}

/// Whether the fraction construction and the stable-image colimit agree: the
/// map `(m, k) ↦ σ^{−k}(p^N m)` is well defined on classes, bijective and
/// additive.
pub fn fractions_match_colimit(loc: &FiniteLocalization, colim: &StableImage) -> bool {
    let q = loc.monoid();
    if q.size() != colim.monoid.size() {
        return false;
    }
    let mut f = vec![usize::MAX; q.size()];
    for k in 0..=loc.levels {
        for m in loc.base.elements() {
            let c = loc.class((m, k));
            let img = colim.image(m, k);
            if f[c] == usize::MAX {
                f[c] = img;
            } else if f[c] != img {
                return false;
            }
        }
    }
    let mut seen = vec![false; q.size()];
    for &v in &f {
        if v == usize::MAX || std::mem::replace(&mut seen[v], true) {
            return false;
        }
    }
    super::finite::is_hom(q, &colim.monoid, &f)
}

/// `M[1/p]` or `M[−x]` of an affine monoid. Elements are pairs `(v, k)`;
/// since `ℤ^d` is torsion free, equality is exact integer arithmetic.
#[derive(Debug, Clone)]
pub struct AffineLocalization {
    base: AffineMonoid,
    inverted: Inverted<Vec<i64>>,
}

pub type AffinePair = (Vec<i64>, u32);

impl AffineLocalization {
    pub fn new(base: &AffineMonoid, inverted: Inverted<Vec<i64>>, bound: usize) -> Result<Self> {
        match &inverted {
            Inverted::P(p) if *p < 2 => return Err(Error::malformed("p must be at least 2")),
            Inverted::Element(x) => {
                if x.len() != base.rank() {
                    return Err(Error::malformed("element has the wrong rank"));
                }
                if !matches!(base.membership(x, bound), Membership::Member(_)) {
                    return Err(Error::NotMember(format!("{x:?} in the affine monoid")));
                }
            }
            _ => {}
        }
        Ok(AffineLocalization {
            base: base.clone(),
            inverted,
        })
    }

    pub fn base(&self) -> &AffineMonoid {
        &self.base
    }

    pub fn inverted(&self) -> &Inverted<Vec<i64>> {
        &self.inverted
    }

    fn scaled(&self, v: &[i64], k: u32) -> Vec<i128> {
        match &self.inverted {
            Inverted::P(p) => {
                let f = i128::from(*p as i64).pow(k);
                v.iter().map(|&x| i128::from(x) * f).collect()
            }
            Inverted::Element(_) => v.iter().map(|&x| i128::from(x)).collect(),
        }
    }

    /// Value of `(v, k)` with the inverted part moved to the other side:
    /// compared through `p^{k′} v = p^k v′` or `v + k′x = v′ + kx`.
    pub fn equal(&self, (v, k): &AffinePair, (w, l): &AffinePair) -> bool {
        match &self.inverted {
            Inverted::P(_) => self.scaled(v, *l) == self.scaled(w, *k),
            Inverted::Element(x) => {
                let lhs: Vec<i64> = v.iter().zip(x).map(|(a, b)| a + i64::from(*l) * b).collect();
                let rhs: Vec<i64> = w.iter().zip(x).map(|(a, b)| a + i64::from(*k) * b).collect();
                lhs == rhs
            }
        }
    }

    pub fn add(&self, (v, k): &AffinePair, (w, l): &AffinePair) -> AffinePair {
        match &self.inverted {
            Inverted::P(p) => {
                let pk = (*p as i64).pow(*k);
                let pl = (*p as i64).pow(*l);
                (v.iter().zip(w).map(|(a, b)| a * pl + b * pk).collect(), k + l)
            }
            Inverted::Element(_) => (v.iter().zip(w).map(|(a, b)| a + b).collect(), k + l),
        }
    }

    /// The difference `v − k·x` as a vector of `ℤ^d` (element datum), which
    /// identifies `M[−x]` with a submonoid of `M^gp`.
    pub fn as_vector(&self, (v, k): &AffinePair) -> Option<Vec<i64>> {
        match &self.inverted {
            Inverted::Element(x) => Some(v.iter().zip(x).map(|(a, b)| a - i64::from(*k) * b).collect()),
            Inverted::P(_) => None,
        }
    }

    /// For the element datum: certificates `(g, n, z)` with `n·x = g + Σ zᵢ gᵢ`,
    /// so `−g = z − n·x` lies in `M[−x]` for every generator `g`. `None` if
    /// some generator has no certificate within `bound`.
    pub fn inverse_certificates(&self, bound: usize) -> Option<Vec<(Vec<i64>, u64, Vec<u64>)>> {
        let Inverted::Element(x) = &self.inverted else {
            return None;
        };
        let mut out = Vec::new();
        for g in self.base.generators() {
            let cert = (1..=bound as u64).find_map(|n| {
                let target: Vec<i64> = x.iter().zip(g).map(|(a, b)| n as i64 * a - b).collect();
                match self.base.membership(&target, bound) {
                    Membership::Member(z) => Some((g.clone(), n, z)),
                    _ => None,
                }
            })?;
            out.push(cert);
        }
        Some(out)
    }
}

#[derive(Debug, Clone)]
pub enum LocalizedMonoid {
    Finite(FiniteLocalization),
    Affine(AffineLocalization),
}
