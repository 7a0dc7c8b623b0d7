//! Permutations of `{0, …, n−1}` and small enumerated permutation groups.
//!
//! Composition applies the right operand first: `(a * b)(x) = a(b(x))`.
//! Every serialized form and every derived construction follows that rule.

use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt;
use std::ops::Mul;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::is_prime;

/// Default bound on enumerated group orders.
pub const DEFAULT_ORDER_BOUND: usize = 10_000;

/// Largest degree for which [`Permutation::pth_root`] builds an explicit witness.
pub const DEFAULT_WITNESS_BOUND: usize = 10_000;

/// A bijection of `{0, …, n−1}`, stored as its image array.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct Permutation {
    images: Vec<usize>,
}

impl TryFrom<Vec<usize>> for Permutation {
    type Error = Error;

    fn try_from(images: Vec<usize>) -> Result<Self> {
        Permutation::new(images)
    }
}

impl From<Permutation> for Vec<usize> {
    fn from(p: Permutation) -> Self {
        p.images
    }
}

impl Permutation {
    pub fn new(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &x in &images {
            if x >= n || seen[x] {
                return Err(Error::malformed(format!("{images:?} is not a permutation of 0..{n}")));
            }
            seen[x] = true;
        }
        Ok(Permutation { images })
    }

    pub fn identity(n: usize) -> Self {
        Permutation {
            images: (0..n).collect(),
        }
    }

    pub fn transposition(n: usize, a: usize, b: usize) -> Self {
        let mut images: Vec<usize> = (0..n).collect();
        images.swap(a, b);
        Permutation { images }
    }

    /// Builds a permutation of degree `n` from disjoint cycles.
    pub fn from_cycles(n: usize, cycles: &[&[usize]]) -> Result<Self> {
        let mut images: Vec<usize> = (0..n).collect();
        let mut touched = vec![false; n];
        for cycle in cycles {
            for (k, &x) in cycle.iter().enumerate() {
                if x >= n || touched[x] {
                    return Err(Error::malformed(format!("bad cycle {cycle:?} in degree {n}")));
                }
                touched[x] = true;
                images[x] = cycle[(k + 1) % cycle.len()];
            }
        }
        Ok(Permutation { images })
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    #[inline]
    pub fn apply(&self, x: usize) -> usize {
        self.images[x]
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| i == x)
    }

    /// `self ∘ other`: apply `other`, then `self`.
    pub fn compose(&self, other: &Permutation) -> Result<Permutation> {
        if self.degree() != other.degree() {
            return Err(Error::DegreeMismatch {
                left: self.degree(),
                right: other.degree(),
            });
        }
        Ok(self.compose_unchecked(other))
    }

    fn compose_unchecked(&self, other: &Permutation) -> Permutation {
        Permutation {
            images: other.images.iter().map(|&x| self.images[x]).collect(),
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut images = vec![0; self.degree()];
        for (i, &x) in self.images.iter().enumerate() {
            images[x] = i;
        }
        Permutation { images }
    }

    pub fn pow(&self, k: usize) -> Permutation {
        let mut acc = Permutation::identity(self.degree());
        let mut base = self.clone();
        let mut e = k;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.compose_unchecked(&base);
            }
            base = base.compose_unchecked(&base);
            e >>= 1;
        }
        acc
    }

    pub fn commutes_with(&self, other: &Permutation) -> bool {
        self.degree() == other.degree() && self.compose_unchecked(other) == other.compose_unchecked(self)
    }

    /// `g ∘ self ∘ g⁻¹`.
    pub fn conjugate_by(&self, g: &Permutation) -> Permutation {
        g.compose_unchecked(self).compose_unchecked(&g.inverse())
    }

    /// Nontrivial cycles, each starting at its smallest point, ordered by that point.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut cycle = vec![start];
            seen[start] = true;
            let mut x = self.images[start];
            while x != start {
                seen[x] = true;
                cycle.push(x);
                x = self.images[x];
            }
            if cycle.len() > 1 {
                out.push(cycle);
            }
        }
        out
    }

    pub fn fixed_points(&self) -> Vec<usize> {
        (0..self.degree()).filter(|&i| self.images[i] == i).collect()
    }

    pub fn cycle_type(&self) -> CycleType {
        let mut lengths: Vec<usize> = self.cycles().iter().map(Vec::len).collect();
        lengths.sort_unstable_by(|a, b| b.cmp(a));
        CycleType {
            lengths,
            fixed_points: self.fixed_points().len(),
        }
    }

    pub fn cycle_decomposition(&self) -> CycleDecomposition {
        CycleDecomposition {
            cycle_type: self.cycle_type(),
            cycles: self.cycles(),
            fixed_points: self.fixed_points(),
        }
    }

    /// `(−1)^(n − number of orbits)`.
    pub fn sign(&self) -> i8 {
        let orbits = self.cycles().len() + self.fixed_points().len();
        if (self.degree() - orbits).is_multiple_of(2) {
            1
        } else {
            -1
        }
    }

    /// `c` copies of `self` side by side: `i + n·k ↦ self(i) + n·k`.
    pub fn block_diagonal_embed(&self, copies: usize) -> Result<Permutation> {
        if copies == 0 {
            return Err(Error::malformed("block_diagonal_embed needs at least one copy"));
        }
        let n = self.degree();
        let images = (0..copies)
            .flat_map(|k| self.images.iter().map(move |&x| x + n * k))
            .collect();
        Ok(Permutation { images })
    }

    /// Block sum: `self` on the first `n` points, `other` shifted onto the rest.
    pub fn direct_sum(&self, other: &Permutation) -> Permutation {
        let n = self.degree();
        let images = self
            .images
            .iter()
            .copied()
            .chain(other.images.iter().map(|&x| x + n))
            .collect();
        Permutation { images }
    }

    /// Grid transpose of an `a × b` grid: position `i + a·j ↦ j + b·i`.
    pub fn grid_transpose(a: usize, b: usize) -> Result<Permutation> {
        if a == 0 || b == 0 {
            return Err(Error::malformed("grid dimensions must be positive"));
        }
        let mut images = vec![0; a * b];
        for j in 0..b {
            for i in 0..a {
                images[i + a * j] = j + b * i;
            }
        }
        Ok(Permutation { images })
    }

    /// Decides whether some `r` has `r^q = self` in the symmetric group, via
    /// the cycle-type criterion, and constructs a witness when it does.
    pub fn pth_root(&self, q: usize) -> Result<RootReport> {
        self.pth_root_bounded(q, DEFAULT_WITNESS_BOUND)
    }

    pub fn pth_root_bounded(&self, q: usize, witness_bound: usize) -> Result<RootReport> {
        if !is_prime(q as u64) {
            return Err(Error::malformed(format!("root exponent {q} is not prime")));
        }
        let mut by_len: HashMap<usize, Vec<Vec<usize>>> = HashMap::new();
        for c in self.cycles() {
            by_len.entry(c.len()).or_default().push(c);
        }
        let exists = by_len.iter().all(|(&m, cs)| m % q != 0 || cs.len() % q == 0);
        if !exists || self.degree() > witness_bound {
            return Ok(RootReport { exists, witness: None });
        }
        let mut images: Vec<usize> = (0..self.degree()).collect();
        let mut lens: Vec<_> = by_len.keys().copied().collect();
        lens.sort_unstable();
        for m in lens {
            let cs = &by_len[&m];
            if m % q != 0 {
                // q is invertible mod m; the cycle is a power of itself.
                let s = (1..m).find(|s| (s * q) % m == 1).unwrap_or(1);
                for c in cs {
                    for k in 0..m {
                        images[c[k]] = c[(k + s) % m];
                    }
                }
            } else {
                // Interleave q cycles of length m into one cycle of length qm.
                for group in cs.chunks(q) {
                    let merged: Vec<usize> = (0..m).flat_map(|k| group.iter().map(move |c| c[k])).collect();
                    let len = merged.len();
                    for t in 0..len {
                        images[merged[t]] = merged[(t + 1) % len];
                    }
                }
            }
        }
        let witness = Permutation { images };
        debug_assert_eq!(&witness.pow(q), self);
        if &witness.pow(q) != self {
            return Err(Error::malformed("root construction failed verification"));
        }
        Ok(RootReport {
            exists: true,
            witness: Some(witness),
        })
    }

    /// Returns a conjugator `g` with `g ∘ self ∘ g⁻¹ = other` when the cycle
    /// types agree.
    pub fn conjugator_to(&self, other: &Permutation) -> Result<Option<Permutation>> {
        if self.degree() != other.degree() {
            return Err(Error::DegreeMismatch {
                left: self.degree(),
                right: other.degree(),
            });
        }
        if self.cycle_type() != other.cycle_type() {
            return Ok(None);
        }
        let mut mine = self.cycles();
        let mut theirs = other.cycles();
        mine.sort_by_key(|c| std::cmp::Reverse(c.len()));
        theirs.sort_by_key(|c| std::cmp::Reverse(c.len()));
        let mut images = vec![usize::MAX; self.degree()];
        for (a, b) in mine.iter().zip(&theirs) {
            for (&x, &y) in a.iter().zip(b) {
                images[x] = y;
            }
        }
        for (x, y) in self.fixed_points().into_iter().zip(other.fixed_points()) {
            images[x] = y;
        }
        let g = Permutation::new(images)?;
        if &self.conjugate_by(&g) != other {
            return Err(Error::malformed("conjugator construction failed verification"));
        }
        Ok(Some(g))
    }

    pub fn are_conjugate(&self, other: &Permutation) -> Result<bool> {
        Ok(self.conjugator_to(other)?.is_some())
    }
}

impl Mul for &Permutation {
    type Output = Permutation;

    /// Panics on degree mismatch; use [`Permutation::compose`] for a checked version.
    fn mul(self, rhs: &Permutation) -> Permutation {
        self.compose(rhs).expect("degree mismatch in permutation product")
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return write!(f, "()");
        }
        for c in cycles {
            let body: Vec<String> = c.iter().map(usize::to_string).collect();
            write!(f, "({})", body.join(" "))?;
        }
        Ok(())
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self} in S_{}", self.degree())
    }
}

/// Multiset of nontrivial cycle lengths (descending) and the fixed-point count.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CycleType {
    pub lengths: Vec<usize>,
    pub fixed_points: usize,
}

impl CycleType {
    pub fn degree(&self) -> usize {
        self.lengths.iter().sum::<usize>() + self.fixed_points
    }

    pub fn only_three_cycles(&self) -> bool {
        self.lengths.iter().all(|&l| l == 3)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CycleDecomposition {
    pub cycle_type: CycleType,
    pub cycles: Vec<Vec<usize>>,
    pub fixed_points: Vec<usize>,
}

impl CycleDecomposition {
    /// Reassembles the permutation from its cycles.
    pub fn to_permutation(&self) -> Permutation {
        let n = self.cycle_type.degree();
        let refs: Vec<&[usize]> = self.cycles.iter().map(Vec::as_slice).collect();
        Permutation::from_cycles(n, &refs).expect("decomposition cycles are disjoint")
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RootReport {
    pub exists: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Permutation>,
}

/// A permutation group given by generators, optionally fully enumerated.
#[derive(Clone, Serialize, Deserialize)]
pub struct PermGroup {
    degree: usize,
    generators: Vec<Permutation>,
    #[serde(skip)]
    elements: Option<Vec<Permutation>>,
    #[serde(skip)]
    lookup: Option<HashMap<Permutation, usize>>,
}

impl fmt::Debug for PermGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("PermGroup")
            .field("degree", &self.degree)
            .field("generators", &self.generators)
            .field("order", &self.elements.as_ref().map(Vec::len))
            .finish()
    }
}

impl PermGroup {
    /// Unenumerated group from generators; all generators must share `degree`.
    pub fn from_generators(degree: usize, generators: Vec<Permutation>) -> Result<Self> {
        if let Some(g) = generators.iter().find(|g| g.degree() != degree) {
            return Err(Error::DegreeMismatch {
                left: degree,
                right: g.degree(),
            });
        }
        Ok(PermGroup {
            degree,
            generators,
            elements: None,
            lookup: None,
        })
    }

    /// Enumerates the closure of `generators`, failing once it exceeds `order_bound`.
    pub fn generate(degree: usize, generators: Vec<Permutation>, order_bound: usize) -> Result<Self> {
        let mut group = PermGroup::from_generators(degree, generators)?;
        group.enumerate(order_bound)?;
        Ok(group)
    }

    pub fn enumerate(&mut self, order_bound: usize) -> Result<()> {
        if self.elements.is_some() {
            return Ok(());
        }
        let id = Permutation::identity(self.degree);
        let mut lookup = HashMap::new();
        let mut elements = vec![id.clone()];
        lookup.insert(id, 0);
        let mut queue = VecDeque::from([0usize]);
        while let Some(i) = queue.pop_front() {
            for g in &self.generators {
                let h = elements[i].compose_unchecked(g);
                if !lookup.contains_key(&h) {
                    if elements.len() >= order_bound {
                        return Err(Error::TooLarge { bound: order_bound });
                    }
                    lookup.insert(h.clone(), elements.len());
                    queue.push_back(elements.len());
                    elements.push(h);
                }
            }
        }
        self.elements = Some(elements);
        self.lookup = Some(lookup);
        Ok(())
    }

    pub fn symmetric(n: usize, order_bound: usize) -> Result<Self> {
        let mut gens = Vec::new();
        if n >= 2 {
            gens.push(Permutation::transposition(n, 0, 1));
            let cycle: Vec<usize> = (0..n).collect();
            gens.push(Permutation::from_cycles(n, &[&cycle])?);
        }
        PermGroup::generate(n, gens, order_bound)
    }

    /// `A_n`, generated by the 3-cycles `(0 1 k)`.
    pub fn alternating(n: usize, order_bound: usize) -> Result<Self> {
        let gens = (2..n)
            .map(|k| Permutation::from_cycles(n, &[&[0, 1, k]]))
            .collect::<Result<Vec<_>>>()?;
        PermGroup::generate(n, gens, order_bound)
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    pub fn is_enumerated(&self) -> bool {
        self.elements.is_some()
    }

    fn require_elements(&self) -> &[Permutation] {
        self.elements
            .as_deref()
            .expect("operation requires an enumerated group")
    }

    pub fn elements(&self) -> Option<&[Permutation]> {
        self.elements.as_deref()
    }

    pub fn order(&self) -> Option<usize> {
        self.elements.as_ref().map(Vec::len)
    }

    pub fn contains(&self, p: &Permutation) -> bool {
        self.lookup
            .as_ref()
            .expect("operation requires an enumerated group")
            .contains_key(p)
    }

    pub fn index_of(&self, p: &Permutation) -> Option<usize> {
        self.lookup.as_ref().and_then(|l| l.get(p).copied())
    }

    pub fn is_abelian(&self) -> bool {
        self.generators
            .iter()
            .enumerate()
            .all(|(i, a)| self.generators[i + 1..].iter().all(|b| a.commutes_with(b)))
    }

    /// Whether every element is closed under products and inverses; a
    /// consistency check on enumeration.
    pub fn is_closed(&self) -> bool {
        let elems = self.require_elements();
        elems.iter().all(|a| {
            self.contains(&a.inverse()) && self.generators.iter().all(|g| self.contains(&a.compose_unchecked(g)))
        })
    }

    /// `[G, G]` as the normal closure of generator commutators.
    pub fn commutator_subgroup(&self) -> Result<PermGroup> {
        let bound = self.order().unwrap_or(DEFAULT_ORDER_BOUND).max(1);
        let mut gens: Vec<Permutation> = Vec::new();
        for a in &self.generators {
            for b in &self.generators {
                let c = a
                    .compose_unchecked(b)
                    .compose_unchecked(&a.inverse())
                    .compose_unchecked(&b.inverse());
                if !c.is_identity() && !gens.contains(&c) {
                    gens.push(c);
                }
            }
        }
        let mut sub = PermGroup::generate(self.degree, gens, bound)?;
        loop {
            let mut added = false;
            let current = sub.generators.clone();
            for h in &current {
                for g in &self.generators {
                    let c = h.conjugate_by(g);
                    if !sub.contains(&c) {
                        let mut gens = sub.generators.clone();
                        gens.push(c);
                        sub = PermGroup::generate(self.degree, gens, bound)?;
                        added = true;
                    }
                }
            }
            if !added {
                return Ok(sub);
            }
        }
    }

    /// `G ⊵ [G,G] ⊵ …` until the order stops dropping. The stable term is
    /// included once.
    pub fn derived_series(&self) -> Result<Vec<PermGroup>> {
        let mut series = vec![self.clone()];
        loop {
            let last = series.last().expect("series is nonempty");
            let next = last.commutator_subgroup()?;
            let stable = next.order() == last.order();
            if stable {
                return Ok(series);
            }
            series.push(next);
        }
    }

    pub fn perfect_core(&self) -> Result<PermGroup> {
        Ok(self
            .derived_series()?
            .pop()
            .expect("series contains at least the group"))
    }

    pub fn is_perfect(&self) -> Result<bool> {
        Ok(self.commutator_subgroup()?.order() == self.order())
    }

    pub fn is_hypoabelian(&self) -> Result<bool> {
        Ok(self.perfect_core()?.order() == Some(1))
    }

    /// Whether `self` is a normal subgroup of `ambient`.
    pub fn is_normal_in(&self, ambient: &PermGroup) -> bool {
        self.generators.iter().all(|h| ambient.contains(h))
            && self
                .generators
                .iter()
                .all(|h| ambient.generators.iter().all(|g| self.contains(&h.conjugate_by(g))))
    }

    /// The set of elements, for comparisons.
    pub fn element_set(&self) -> HashSet<Permutation> {
        self.require_elements().iter().cloned().collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn perm(images: &[usize]) -> Permutation {
        Permutation::new(images.to_vec()).unwrap()
    }

    fn cyc(n: usize, cycles: &[&[usize]]) -> Permutation {
        Permutation::from_cycles(n, cycles).unwrap()
    }

    fn all_perms(n: usize) -> Vec<Permutation> {
        PermGroup::symmetric(n, 10_000).unwrap().elements().unwrap().to_vec()
    }

    #[test]
    fn rejects_non_bijections() {
        assert!(Permutation::new(vec![0, 0]).is_err());
        assert!(Permutation::new(vec![2, 0]).is_err());
        assert!(serde_json::from_str::<Permutation>("[1,1,0]").is_err());
        let p: Permutation = serde_json::from_str("[1,0,2]").unwrap();
        assert_eq!(serde_json::to_string(&p).unwrap(), "[1,0,2]");
    }

    #[test]
    fn composition_applies_right_first() {
        let a = cyc(3, &[&[0, 1]]);
        let b = cyc(3, &[&[1, 2]]);
        // b sends 1 -> 2, then a fixes 2
        assert_eq!((&a * &b).apply(1), 2);
        assert_eq!((&a * &b).apply(0), 1);
    }

    #[test]
    fn cycle_decomposition_examples() {
        let id = Permutation::identity(5).cycle_decomposition();
        assert!(id.cycles.is_empty());
        assert_eq!(id.cycle_type.fixed_points, 5);

        let p = perm(&[0, 4, 1, 5, 2, 6, 3, 7]);
        let d = p.cycle_decomposition();
        assert_eq!(d.cycles, vec![vec![1, 4, 2], vec![3, 5, 6]]);
        assert_eq!(d.fixed_points, vec![0, 7]);
        assert_eq!(d.to_permutation(), p);

        assert_eq!(perm(&[1, 0]).cycles(), vec![vec![0, 1]]);
    }

    #[test]
    fn sign_examples() {
        assert_eq!(Permutation::identity(4).sign(), 1);
        assert_eq!(perm(&[1, 0]).sign(), -1);
        assert_eq!(Permutation::grid_transpose(2, 4).unwrap().sign(), 1);
    }

    #[test]
    fn block_diagonal_examples() {
        let t = perm(&[1, 0]);
        assert_eq!(t.block_diagonal_embed(2).unwrap(), cyc(4, &[&[0, 1], &[2, 3]]));
        assert!(Permutation::identity(3).block_diagonal_embed(5).unwrap().is_identity());
        assert_eq!(
            cyc(3, &[&[0, 1, 2]]).block_diagonal_embed(2).unwrap(),
            cyc(6, &[&[0, 1, 2], &[3, 4, 5]])
        );
        assert!(t.block_diagonal_embed(0).is_err());
    }

    #[test]
    fn grid_transpose_examples() {
        assert!(Permutation::grid_transpose(1, 6).unwrap().is_identity());
        let g = Permutation::grid_transpose(2, 4).unwrap();
        assert_eq!(g.images(), &[0, 4, 1, 5, 2, 6, 3, 7]);
        assert_eq!(
            g.cycle_type(),
            CycleType {
                lengths: vec![3, 3],
                fixed_points: 2
            }
        );
        let g3 = Permutation::grid_transpose(3, 9).unwrap();
        assert_eq!(g3.degree(), 27);
        assert!(g3.cycle_type().only_three_cycles());
        assert_eq!(g3.sign(), 1);
    }

    #[test]
    fn pth_root_examples() {
        let id = Permutation::identity(4);
        let r = id.pth_root(3).unwrap();
        assert!(r.exists);
        assert!(r.witness.unwrap().is_identity());

        assert!(!perm(&[1, 0]).pth_root(2).unwrap().exists);

        let double = cyc(4, &[&[0, 1], &[2, 3]]);
        let r = double.pth_root(2).unwrap();
        assert_eq!(r.witness, Some(cyc(4, &[&[0, 2, 1, 3]])));

        assert!(perm(&[1, 0]).pth_root(4).is_err());
    }

    #[test]
    fn conjugacy_examples() {
        let a = cyc(4, &[&[0, 1]]);
        let b = cyc(4, &[&[2, 3]]);
        let g = a.conjugator_to(&b).unwrap().unwrap();
        assert_eq!(a.conjugate_by(&g), b);
        assert!(!cyc(3, &[&[0, 1]]).are_conjugate(&cyc(3, &[&[0, 1, 2]])).unwrap());
        let p = cyc(5, &[&[0, 3], &[1, 2, 4]]);
        assert!(p.conjugator_to(&p).unwrap().unwrap().is_identity());
        assert!(a.are_conjugate(&Permutation::identity(3)).is_err());
    }

    #[test]
    fn group_generation() {
        let g = PermGroup::generate(2, vec![perm(&[1, 0])], 10).unwrap();
        assert_eq!(g.order(), Some(2));
        let s3 = PermGroup::generate(3, vec![cyc(3, &[&[0, 1]]), cyc(3, &[&[0, 1, 2]])], 10).unwrap();
        assert_eq!(s3.order(), Some(6));
        assert!(s3.is_closed());
        // <(0 1 2), (0 1)(3 4)> has order 6
        let gens = vec![cyc(5, &[&[0, 1, 2]]), cyc(5, &[&[0, 1], &[3, 4]])];
        assert_eq!(PermGroup::generate(5, gens.clone(), 10).unwrap().order(), Some(6));
        assert!(matches!(
            PermGroup::generate(5, gens, 5),
            Err(Error::TooLarge { bound: 5 })
        ));
        let a5 = PermGroup::alternating(5, 10);
        assert!(matches!(a5, Err(Error::TooLarge { bound: 10 })));
    }

    #[test]
    fn derived_series_examples() {
        let s4 = PermGroup::symmetric(4, 100).unwrap();
        let orders: Vec<_> = s4
            .derived_series()
            .unwrap()
            .iter()
            .map(|g| g.order().unwrap())
            .collect();
        assert_eq!(orders, vec![24, 12, 4, 1]);
        assert!(s4.is_hypoabelian().unwrap());
        assert_eq!(s4.perfect_core().unwrap().order(), Some(1));

        let z4 = PermGroup::generate(4, vec![cyc(4, &[&[0, 1, 2, 3]])], 100).unwrap();
        let orders: Vec<_> = z4
            .derived_series()
            .unwrap()
            .iter()
            .map(|g| g.order().unwrap())
            .collect();
        assert_eq!(orders, vec![4, 1]);

        let a5 = PermGroup::alternating(5, 100).unwrap();
        assert_eq!(a5.order(), Some(60));
        assert!(a5.is_perfect().unwrap());
        assert!(!a5.is_hypoabelian().unwrap());
        assert_eq!(a5.perfect_core().unwrap().order(), Some(60));
    }

    #[test]
    fn a8_is_perfect_and_contains_grid_transpose() {
        let a8 = PermGroup::alternating(8, 40_320).unwrap();
        assert_eq!(a8.order(), Some(20_160));
        assert!(a8.contains(&Permutation::grid_transpose(2, 4).unwrap()));
        assert!(a8.is_perfect().unwrap());
    }

    #[test]
    fn derived_terms_are_normal_and_decreasing() {
        let s4 = PermGroup::symmetric(4, 100).unwrap();
        let series = s4.derived_series().unwrap();
        for w in series.windows(2) {
            assert!(w[1].order() < w[0].order());
            assert!(w[1].is_normal_in(&w[0]));
        }
    }

    #[test]
    fn grid_transpose_of_p_by_p_squared_is_even_three_cycles() {
        for p in [2usize, 3] {
            let g = Permutation::grid_transpose(p, p * p).unwrap();
            assert!(g.cycle_type().only_three_cycles(), "p = {p}");
            assert_eq!(g.sign(), 1);
        }
    }

    #[test]
    fn root_criterion_matches_brute_force() {
        for n in 1..=7 {
            let perms = all_perms(n);
            for q in [2usize, 3] {
                let powers: HashSet<Permutation> = perms.iter().map(|r| r.pow(q)).collect();
                for p in &perms {
                    let report = p.pth_root(q).unwrap();
                    assert_eq!(report.exists, powers.contains(p), "{p:?}, q = {q}");
                    if let Some(w) = report.witness {
                        assert_eq!(&w.pow(q), p);
                    }
                }
            }
        }
    }

    #[test]
    fn conjugacy_matches_brute_force() {
        for n in 1..=6 {
            let perms = all_perms(n);
            let classes: Vec<HashSet<Permutation>> = perms
                .iter()
                .map(|p| perms.iter().map(|g| p.conjugate_by(g)).collect())
                .collect();
            for (i, p) in perms.iter().enumerate() {
                for r in &perms {
                    assert_eq!(p.are_conjugate(r).unwrap(), classes[i].contains(r));
                }
            }
        }
    }

    fn arb_perm(max_n: usize) -> impl Strategy<Value = Permutation> {
        (1..=max_n)
            .prop_flat_map(|n| Just((0..n).collect::<Vec<_>>()).prop_shuffle())
            .prop_map(|v| Permutation::new(v).unwrap())
    }

    fn arb_pair(max_n: usize) -> impl Strategy<Value = (Permutation, Permutation)> {
        (1..=max_n).prop_flat_map(|n| {
            let v: Vec<usize> = (0..n).collect();
            (Just(v.clone()).prop_shuffle(), Just(v).prop_shuffle())
                .prop_map(|(a, b)| (Permutation::new(a).unwrap(), Permutation::new(b).unwrap()))
        })
    }

    proptest! {
        #[test]
        fn inverse_composes_to_identity(p in arb_perm(12)) {
            prop_assert!((&p * &p.inverse()).is_identity());
            prop_assert!((&p.inverse() * &p).is_identity());
        }

        #[test]
        fn decomposition_reassembles(p in arb_perm(12)) {
            let d = p.cycle_decomposition();
            prop_assert_eq!(d.cycle_type.degree(), p.degree());
            prop_assert_eq!(d.to_permutation(), p);
        }

        #[test]
        fn grid_transposes_are_mutually_inverse(a in 1usize..7, b in 1usize..7) {
            let ab = Permutation::grid_transpose(a, b).unwrap();
            let ba = Permutation::grid_transpose(b, a).unwrap();
            prop_assert!((&ba * &ab).is_identity());
        }

        #[test]
        fn sign_is_multiplicative((a, b) in arb_pair(9)) {
            prop_assert_eq!((&a * &b).sign(), a.sign() * b.sign());
        }

        #[test]
        fn block_embedding_is_an_injective_homomorphism((a, b) in arb_pair(6), c in 1usize..4) {
            let ea = a.block_diagonal_embed(c).unwrap();
            let eb = b.block_diagonal_embed(c).unwrap();
            prop_assert_eq!((&a * &b).block_diagonal_embed(c).unwrap(), &ea * &eb);
            prop_assert_eq!(ea == eb, a == b);
            prop_assert_eq!(ea.commutes_with(&eb), a.commutes_with(&b));
            prop_assert_eq!(ea.sign(), a.sign().pow(c as u32));
        }
    }
}
