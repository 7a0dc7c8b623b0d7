//! Finite groups as multiplication tables.
//!
//! Used by the ρ-structure verifiers and as the input of the bar complex.
//! The JSON form mirrors the finite-monoid format: `{size, table, identity}`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::perm::{PermGroup, Permutation};

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "GroupData", into = "GroupData")]
pub struct FiniteGroup {
    size: usize,
    table: Vec<usize>,
    inverses: Vec<usize>,
    identity: usize,
}

#[derive(Serialize, Deserialize)]
struct GroupData {
    size: usize,
    table: Vec<Vec<usize>>,
    identity: usize,
}

impl TryFrom<GroupData> for FiniteGroup {
    type Error = Error;

    fn try_from(d: GroupData) -> Result<Self> {
        if d.table.len() != d.size || d.table.iter().any(|r| r.len() != d.size) {
            return Err(Error::malformed("group table must be size × size"));
        }
        FiniteGroup::from_table(d.table.concat(), d.identity)
    }
}

impl From<FiniteGroup> for GroupData {
    fn from(g: FiniteGroup) -> Self {
        GroupData {
            size: g.size,
            table: g.table.chunks(g.size.max(1)).map(<[usize]>::to_vec).collect(),
            identity: g.identity,
        }
    }
}

impl FiniteGroup {
    /// Builds a group from a row-major table, checking every axiom exhaustively.
    pub fn from_table(table: Vec<usize>, identity: usize) -> Result<Self> {
        let size = (table.len() as f64).sqrt().round() as usize;
        if size * size != table.len() || size == 0 || identity >= size {
            return Err(Error::malformed("group table is not a nonempty square"));
        }
        if table.iter().any(|&x| x >= size) {
            return Err(Error::malformed("group table entry out of range"));
        }
        let m = |a: usize, b: usize| table[a * size + b];
        for a in 0..size {
            if m(identity, a) != a || m(a, identity) != a {
                return Err(Error::malformed(format!("identity law fails at {a}")));
            }
        }
        for a in 0..size {
            for b in 0..size {
                for c in 0..size {
                    if m(m(a, b), c) != m(a, m(b, c)) {
                        return Err(Error::malformed(format!("associativity fails at ({a}, {b}, {c})")));
                    }
                }
            }
        }
        let mut inverses = vec![usize::MAX; size];
        for a in 0..size {
            match (0..size).find(|&b| m(a, b) == identity) {
                Some(b) => inverses[a] = b,
                None => return Err(Error::malformed(format!("{a} has no inverse"))),
            }
        }
        Ok(FiniteGroup {
            size,
            table,
            inverses,
            identity,
        })
    }

    pub fn trivial() -> Self {
        FiniteGroup::from_table(vec![0], 0).expect("trivial group")
    }

    pub fn cyclic(n: usize) -> Self {
        let table = (0..n * n).map(|k| (k / n + k % n) % n).collect();
        FiniteGroup::from_table(table, 0).expect("cyclic group")
    }

    /// Table of an enumerated permutation group; element `i` is `elements()[i]`.
    pub fn from_perm_group(group: &PermGroup) -> Result<Self> {
        let elems = group
            .elements()
            .ok_or_else(|| Error::malformed("permutation group is not enumerated"))?;
        let n = elems.len();
        let mut table = Vec::with_capacity(n * n);
        for a in elems {
            for b in elems {
                let ab = a.compose(b)?;
                table.push(group.index_of(&ab).expect("closed under products"));
            }
        }
        let id = group
            .index_of(&Permutation::identity(group.degree()))
            .expect("identity is enumerated");
        FiniteGroup::from_table(table, id)
    }

    /// `G × H` with element `(g, h)` at index `g * |H| + h`.
    pub fn direct_product(&self, other: &FiniteGroup) -> FiniteGroup {
        let (n, m) = (self.size, other.size);
        let mut table = Vec::with_capacity(n * m * n * m);
        for a in 0..n * m {
            for b in 0..n * m {
                let g = self.mul(a / m, b / m);
                let h = other.mul(a % m, b % m);
                table.push(g * m + h);
            }
        }
        FiniteGroup::from_table(table, self.identity * m + other.identity).expect("product of groups")
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.size + b]
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inverses[a]
    }

    pub fn pow(&self, a: usize, k: usize) -> usize {
        (0..k).fold(self.identity, |acc, _| self.mul(acc, a))
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.size
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.size).all(|a| (0..a).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    /// Whether `x ↦ x^p` is a bijection.
    pub fn power_map_bijective(&self, p: usize) -> bool {
        let mut hit = vec![false; self.size];
        for a in 0..self.size {
            hit[self.pow(a, p)] = true;
        }
        hit.into_iter().all(|h| h)
    }

    /// Least common multiple of element orders.
    pub fn exponent(&self) -> usize {
        (0..self.size).fold(1, |acc, a| {
            let mut k = 1;
            let mut x = a;
            while x != self.identity {
                x = self.mul(x, a);
                k += 1;
            }
            num_integer::lcm(acc, k)
        })
    }

    /// Whether `f` (a table `G → H`) is a homomorphism.
    pub fn is_hom_to(&self, target: &FiniteGroup, f: &[usize]) -> bool {
        f.len() == self.size
            && f.iter().all(|&x| x < target.size)
            && (0..self.size).all(|a| (0..self.size).all(|b| f[self.mul(a, b)] == target.mul(f[a], f[b])))
    }

    /// Every homomorphism `self → target`, found by extending generator images.
    pub fn homomorphisms_to(&self, target: &FiniteGroup) -> Vec<Vec<usize>> {
        let gens = self.generating_set();
        let mut out = Vec::new();
        let mut images = vec![0usize; gens.len()];
        loop {
            if let Some(f) = self.extend(&gens, &images, target) {
                out.push(f);
            }
            // next tuple of generator images
            let mut k = 0;
            loop {
                if k == images.len() {
                    out.sort();
                    out.dedup();
                    return out;
                }
                images[k] += 1;
                if images[k] < target.size {
                    break;
                }
                images[k] = 0;
                k += 1;
            }
        }
    }

    fn extend(&self, gens: &[usize], images: &[usize], target: &FiniteGroup) -> Option<Vec<usize>> {
        let mut f = vec![usize::MAX; self.size];
        f[self.identity] = target.identity;
        let mut frontier = vec![self.identity];
        while let Some(x) = frontier.pop() {
            for (&g, &img) in gens.iter().zip(images) {
                let y = self.mul(x, g);
                let fy = target.mul(f[x], img);
                if f[y] == usize::MAX {
                    f[y] = fy;
                    frontier.push(y);
                } else if f[y] != fy {
                    return None;
                }
            }
        }
        self.is_hom_to(target, &f).then_some(f)
    }

    /// A small generating set, chosen greedily.
    pub fn generating_set(&self) -> Vec<usize> {
        let mut gens = Vec::new();
        let mut span = vec![false; self.size];
        span[self.identity] = true;
        let mut count = 1;
        for a in 0..self.size {
            if span[a] {
                continue;
            }
            gens.push(a);
            let mut members: Vec<usize> = vec![self.identity];
            let mut seen = vec![false; self.size];
            seen[self.identity] = true;
            let mut i = 0;
            while i < members.len() {
                for &g in &gens {
                    let y = self.mul(members[i], g);
                    if !seen[y] {
                        seen[y] = true;
                        members.push(y);
                    }
                }
                i += 1;
            }
            span = seen;
            count = members.len();
            if count == self.size {
                break;
            }
        }
        debug_assert!(count == self.size || self.size == 1);
        gens
    }
}

/// Every group of order at most 8, one per isomorphism class, with a name.
pub fn groups_up_to_order_8() -> Vec<(String, FiniteGroup)> {
    let c = FiniteGroup::cyclic;
    let mut out = vec![("1".to_string(), FiniteGroup::trivial())];
    for n in 2..=8 {
        out.push((format!("Z{n}"), c(n)));
    }
    out.push(("Z2xZ2".into(), c(2).direct_product(&c(2))));
    out.push(("S3".into(), symmetric(3)));
    out.push(("Z4xZ2".into(), c(4).direct_product(&c(2))));
    out.push(("Z2xZ2xZ2".into(), c(2).direct_product(&c(2)).direct_product(&c(2))));
    let d4 = PermGroup::generate(
        4,
        vec![
            Permutation::from_cycles(4, &[&[0, 1, 2, 3]]).expect("4-cycle"),
            Permutation::from_cycles(4, &[&[1, 3]]).expect("reflection"),
        ],
        100,
    )
    .expect("D4 is small");
    out.push(("D4".into(), FiniteGroup::from_perm_group(&d4).expect("D4 table")));
    out.push(("Q8".into(), quaternion()));
    out.sort_by_key(|(_, g)| g.size());
    out
}

/// `Σ_n` as a table, with elements in the enumeration order of [`PermGroup::symmetric`].
pub fn symmetric(n: usize) -> FiniteGroup {
    let s = PermGroup::symmetric(n, 100_000).expect("small symmetric group");
    FiniteGroup::from_perm_group(&s).expect("symmetric group table")
}

/// Quaternion group: index `2k + s` encodes `(−1)^s · u_k` with `u = (1, i, j, k)`.
fn quaternion() -> FiniteGroup {
    // unit products u_a u_b = sign * u_c
    const PROD: [[(usize, usize); 4]; 4] = [
        [(0, 0), (1, 0), (2, 0), (3, 0)],
        [(1, 0), (0, 1), (3, 0), (2, 1)],
        [(2, 0), (3, 1), (0, 1), (1, 0)],
        [(3, 0), (2, 0), (1, 1), (0, 1)],
    ];
    let mut table = Vec::with_capacity(64);
    for x in 0..8 {
        for y in 0..8 {
            let (c, s) = PROD[x / 2][y / 2];
            table.push(2 * c + (s + x % 2 + y % 2) % 2);
        }
    }
    FiniteGroup::from_table(table, 0).expect("Q8")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn catalog_has_fourteen_distinct_groups() {
        let groups = groups_up_to_order_8();
        assert_eq!(groups.len(), 14);
        // element-order statistics separate all classes of order <= 8
        let mut sigs: Vec<(usize, bool, Vec<usize>)> = groups
            .iter()
            .map(|(_, g)| {
                let mut orders: Vec<usize> = g
                    .elements()
                    .map(|a| (1..=g.size()).find(|&k| g.pow(a, k) == g.identity()).unwrap())
                    .collect();
                orders.sort();
                (g.size(), g.is_abelian(), orders)
            })
            .collect();
        sigs.sort();
        sigs.dedup();
        assert_eq!(sigs.len(), 14);
    }

    #[test]
    fn q8_is_nonabelian_with_one_involution() {
        let q = quaternion();
        assert!(!q.is_abelian());
        let involutions = q.elements().filter(|&a| a != 0 && q.mul(a, a) == 0).count();
        assert_eq!(involutions, 1);
    }

    #[test]
    fn homomorphism_counts() {
        let z2 = FiniteGroup::cyclic(2);
        let z4 = FiniteGroup::cyclic(4);
        assert_eq!(z4.homomorphisms_to(&z2).len(), 2);
        assert_eq!(z2.homomorphisms_to(&z4).len(), 2);
        let v4 = z2.direct_product(&z2);
        assert_eq!(v4.homomorphisms_to(&v4).len(), 16);
        assert_eq!(symmetric(3).homomorphisms_to(&symmetric(3)).len(), 10);
    }

    #[test]
    fn table_round_trips_through_json() {
        let g = symmetric(3);
        let s = serde_json::to_string(&g).unwrap();
        let back: FiniteGroup = serde_json::from_str(&s).unwrap();
        assert_eq!(back, g);
        let bad = r#"{"size":2,"table":[[0,1],[1,1]],"identity":0}"#;
        assert!(serde_json::from_str::<FiniteGroup>(bad).is_err());
    }
}
