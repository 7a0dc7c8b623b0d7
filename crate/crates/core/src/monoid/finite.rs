use std::collections::HashSet;
use std::sync::OnceLock;

use rand::seq::SliceRandom;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A finite commutative monoid given by its addition table.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "FiniteData", into = "FiniteData")]
pub struct FiniteCommMonoid {
    table: Vec<Vec<usize>>,
    zero: usize,
}

#[derive(Serialize, Deserialize)]
struct FiniteData {
    size: usize,
    table: Vec<Vec<usize>>,
    zero: usize,
}

impl TryFrom<FiniteData> for FiniteCommMonoid {
    type Error = Error;

    fn try_from(d: FiniteData) -> Result<Self> {
        if d.table.len() != d.size {
            return Err(Error::malformed(format!(
                "table has {} rows but size is {}",
                d.table.len(),
                d.size
            )));
        }
        FiniteCommMonoid::new(d.table, d.zero)
    }
}

impl From<FiniteCommMonoid> for FiniteData {
    fn from(m: FiniteCommMonoid) -> Self {
        FiniteData {
            size: m.size(),
            table: m.table,
            zero: m.zero,
        }
    }
}

impl FiniteCommMonoid {
    /// Validates commutativity, associativity and the unit law exhaustively.
    pub fn new(table: Vec<Vec<usize>>, zero: usize) -> Result<Self> {
        let n = table.len();
        if n == 0 {
            return Err(Error::malformed("a monoid has at least one element"));
        }
        if table.iter().any(|r| r.len() != n || r.iter().any(|&x| x >= n)) {
            return Err(Error::malformed(
                "addition table must be square with entries in 0..size",
            ));
        }
        if zero >= n {
            return Err(Error::malformed("zero index out of range"));
        }
        for a in 0..n {
            if table[zero][a] != a {
                return Err(Error::malformed(format!("zero is not neutral for {a}")));
            }
            for b in 0..n {
                if table[a][b] != table[b][a] {
                    return Err(Error::malformed(format!("{a} + {b} is not commutative")));
                }
                for c in 0..n {
                    if table[table[a][b]][c] != table[a][table[b][c]] {
                        return Err(Error::malformed(format!("({a} + {b}) + {c} is not associative")));
                    }
                }
            }
        }
        Ok(FiniteCommMonoid { table, zero })
    }

    /// `ℤ/n` under addition.
    pub fn cyclic_group(n: usize) -> Self {
        let table = (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect();
        FiniteCommMonoid { table, zero: 0 }
    }

    /// `{0, a}` with `a + a = a`.
    pub fn idempotent_pair() -> Self {
        FiniteCommMonoid {
            table: vec![vec![0, 1], vec![1, 1]],
            zero: 0,
        }
    }

    /// `{0, 1, …, w}` with sums capped at `w`.
    pub fn truncated_naturals(w: usize) -> Self {
        let table = (0..=w).map(|a| (0..=w).map(|b| (a + b).min(w)).collect()).collect();
        FiniteCommMonoid { table, zero: 0 }
    }

    pub fn size(&self) -> usize {
        self.table.len()
    }

    pub fn zero(&self) -> usize {
        self.zero
    }

    pub fn table(&self) -> &[Vec<usize>] {
        &self.table
    }

    pub fn add(&self, a: usize, b: usize) -> usize {
        self.table[a][b]
    }

    /// `n · a`.
    pub fn times(&self, n: u64, a: usize) -> usize {
        let mut acc = self.zero;
        let mut base = a;
        let mut n = n;
        while n > 0 {
            if n & 1 == 1 {
                acc = self.add(acc, base);
            }
            base = self.add(base, base);
            n >>= 1;
        }
        acc
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.size()
    }

    pub fn nonzero(&self) -> impl Iterator<Item = usize> + '_ {
        self.elements().filter(move |&a| a != self.zero)
    }

    pub fn is_group(&self) -> bool {
        self.elements()
            .all(|a| self.elements().any(|b| self.add(a, b) == self.zero))
    }

    /// Multiplication by `p` is a bijection.
    pub fn times_is_bijective(&self, p: u64) -> bool {
        let image: HashSet<usize> = self.elements().map(|a| self.times(p, a)).collect();
        image.len() == self.size()
    }

    /// `A × B`, with `(a, b)` at index `a · |B| + b`.
    pub fn product(&self, other: &FiniteCommMonoid) -> FiniteCommMonoid {
        let (n, m) = (self.size(), other.size());
        let table = (0..n * m)
            .map(|x| {
                (0..n * m)
                    .map(|y| self.add(x / m, y / m) * m + other.add(x % m, y % m))
                    .collect()
            })
            .collect();
        FiniteCommMonoid {
            table,
            zero: self.zero * m + other.zero,
        }
    }

    /// Table after renaming element `a` to `perm[a]`.
    pub fn relabel(&self, perm: &[usize]) -> FiniteCommMonoid {
        let n = self.size();
        let mut table = vec![vec![0; n]; n];
        for a in 0..n {
            for b in 0..n {
                table[perm[a]][perm[b]] = perm[self.add(a, b)];
            }
        }
        FiniteCommMonoid {
            table,
            zero: perm[self.zero],
        }
    }

    /// A canonical relabeling: zero first, then the lexicographically least
    /// table over all orderings of the remaining elements.
    pub fn canonical(&self) -> FiniteCommMonoid {
        let n = self.size();
        let rest: Vec<usize> = self.nonzero().collect();
        let mut best: Option<FiniteCommMonoid> = None;
        for_each_permutation(&rest, &mut |order| {
            let mut perm = vec![0; n];
            perm[self.zero] = 0;
            for (k, &a) in order.iter().enumerate() {
                perm[a] = k + 1;
            }
            let cand = self.relabel(&perm);
            if best.as_ref().is_none_or(|b| cand.table < b.table) {
                best = Some(cand);
            }
        });
        best.expect("at least one ordering")
    }

    pub fn is_isomorphic(&self, other: &FiniteCommMonoid) -> bool {
        self.size() == other.size() && self.canonical() == other.canonical()
    }

    /// An explicit isomorphism `self → other`, if one exists.
    pub fn isomorphism_to(&self, other: &FiniteCommMonoid) -> Option<Vec<usize>> {
        if self.size() != other.size() {
            return None;
        }
        let rest: Vec<usize> = other.nonzero().collect();
        let mut found = None;
        let src: Vec<usize> = self.nonzero().collect();
        for_each_permutation(&rest, &mut |order| {
            if found.is_some() {
                return;
            }
            let mut f = vec![0; self.size()];
            f[self.zero] = other.zero;
            for (&a, &b) in src.iter().zip(order) {
                f[a] = b;
            }
            if is_hom(self, other, &f) {
                found = Some(f);
            }
        });
        found
    }

    /// A uniformly chosen monoid from the catalog of sizes `1..=max_size`
    /// (at most 6), with its non-zero elements randomly relabeled.
    pub fn random<R: Rng>(rng: &mut R, max_size: usize) -> FiniteCommMonoid {
        let pool: Vec<&FiniteCommMonoid> = (1..=max_size.clamp(1, 6)).flat_map(|n| catalog(n).iter()).collect();
        let m = pool[rng.gen_range(0..pool.len())];
        let mut perm: Vec<usize> = (0..m.size()).collect();
        perm[1..].shuffle(rng);
        m.relabel(&perm)
    }
}

/// Whether `f` is a monoid homomorphism `a → b`.
pub fn is_hom(a: &FiniteCommMonoid, b: &FiniteCommMonoid, f: &[usize]) -> bool {
    f.len() == a.size()
        && f[a.zero()] == b.zero()
        && a.elements()
            .all(|x| a.elements().all(|y| f[a.add(x, y)] == b.add(f[x], f[y])))
}

fn for_each_permutation(items: &[usize], visit: &mut impl FnMut(&[usize])) {
    fn rec(items: &mut Vec<usize>, k: usize, visit: &mut impl FnMut(&[usize])) {
        if k == items.len() {
            visit(items);
            return;
        }
        for i in k..items.len() {
            items.swap(k, i);
            rec(items, k + 1, visit);
            items.swap(k, i);
        }
    }
    rec(&mut items.to_vec(), 0, visit);
}

/// All commutative monoids of size `n` up to isomorphism, in canonical form.
///
/// Supported for `n ≤ 6`; the counts are 1, 2, 5, 19, 78, 421.
pub fn catalog(n: usize) -> &'static [FiniteCommMonoid] {
    static CATALOGS: OnceLock<Vec<Vec<FiniteCommMonoid>>> = OnceLock::new();
    let all = CATALOGS.get_or_init(|| (0..=6).map(enumerate_up_to_iso).collect());
    all.get(n).map_or(&[], Vec::as_slice)
}

fn enumerate_up_to_iso(n: usize) -> Vec<FiniteCommMonoid> {
    if n == 0 {
        return Vec::new();
    }
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    let mut table = vec![vec![usize::MAX; n]; n];
    for a in 0..n {
        table[0][a] = a;
        table[a][0] = a;
    }
    let cells: Vec<(usize, usize)> = (1..n).flat_map(|a| (a..n).map(move |b| (a, b))).collect();
    fill(&mut table, &cells, 0, &mut |t| {
        let m = FiniteCommMonoid {
            table: t.to_vec(),
            zero: 0,
        };
        let c = m.canonical();
        if seen.insert(c.table.clone()) {
            out.push(c);
        }
    });
    out.sort_by(|a, b| a.table.cmp(&b.table));
    out
}

fn fill(table: &mut [Vec<usize>], cells: &[(usize, usize)], k: usize, emit: &mut impl FnMut(&[Vec<usize>])) {
    if k == cells.len() {
        emit(table);
        return;
    }
    let n = table.len();
    let (a, b) = cells[k];
    for v in 0..n {
        table[a][b] = v;
        table[b][a] = v;
        if associative_so_far(table) {
            fill(table, cells, k + 1, emit);
        }
    }
    table[a][b] = usize::MAX;
    table[b][a] = usize::MAX;
}

fn associative_so_far(t: &[Vec<usize>]) -> bool {
    let n = t.len();
    for x in 0..n {
        for y in 0..n {
            let xy = t[x][y];
            if xy == usize::MAX {
                continue;
            }
            for z in 0..n {
                let yz = t[y][z];
                if yz == usize::MAX {
                    continue;
                }
                let (l, r) = (t[xy][z], t[x][yz]);
                if l != usize::MAX && r != usize::MAX && l != r {
                    return false;
                }
            }
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn catalog_counts() {
        let counts: Vec<usize> = (1..=6).map(|n| catalog(n).len()).collect();
        assert_eq!(counts, vec![1, 2, 5, 19, 78, 421]);
    }

    #[test]
    fn construction_rejects_bad_tables() {
        assert!(FiniteCommMonoid::new(vec![vec![0, 1], vec![0, 1]], 0).is_err());
        assert!(FiniteCommMonoid::new(vec![vec![0, 1], vec![1, 0]], 1).is_err());
        // (1 + 1) + 2 = 1 but 1 + (1 + 2) = 2
        let t = vec![vec![0, 1, 2], vec![1, 2, 1], vec![2, 1, 1]];
        assert!(FiniteCommMonoid::new(t, 0).is_err());
    }

    #[test]
    fn json_round_trip() {
        let m = FiniteCommMonoid::idempotent_pair();
        let text = serde_json::to_string(&m).unwrap();
        assert_eq!(text, r#"{"size":2,"table":[[0,1],[1,1]],"zero":0}"#);
        assert_eq!(serde_json::from_str::<FiniteCommMonoid>(&text).unwrap(), m);
    }

    #[test]
    fn random_relabeling_preserves_isomorphism_type() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..20 {
            let m = FiniteCommMonoid::random(&mut rng, 5);
            let f = m
                .isomorphism_to(&m.canonical())
                .expect("isomorphic to its canonical form");
            assert!(is_hom(&m, &m.canonical(), &f));
        }
    }

    #[test]
    fn product_is_componentwise() {
        let a = FiniteCommMonoid::cyclic_group(2);
        let b = FiniteCommMonoid::idempotent_pair();
        let ab = a.product(&b);
        assert_eq!(ab.size(), 4);
        // (a, b) is stored at 2a + b: (1, 1) + (1, 0) = (0, 1).
        assert_eq!(ab.add(3, 2), 1);
        assert!(!ab.is_group());
    }
}
