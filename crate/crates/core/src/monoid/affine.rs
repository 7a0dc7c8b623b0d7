use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

use super::lp::{clear_denominators, feasible, rational};

/// The submonoid of `ℤ^d` of `ℕ`-linear combinations of finitely many
/// generators.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "AffineData", into = "AffineData")]
pub struct AffineMonoid {
    rank: usize,
    generators: Vec<Vec<i64>>,
}

#[derive(Serialize, Deserialize)]
struct AffineData {
    rank: usize,
    generators: Vec<Vec<i64>>,
}

impl TryFrom<AffineData> for AffineMonoid {
    type Error = Error;

    fn try_from(d: AffineData) -> Result<Self> {
        AffineMonoid::new(d.rank, d.generators)
    }
}

impl From<AffineMonoid> for AffineData {
    fn from(m: AffineMonoid) -> Self {
        AffineData {
            rank: m.rank,
            generators: m.generators,
        }
    }
}

/// Outcome of a bounded membership search.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum Membership {
    /// Coefficients `z` with `Σ zᵢ gᵢ = v`.
    Member(Vec<u64>),
    /// `v` is not even in the rational cone of the generators (exact).
    OutsideCone,
    /// No representation with at most `bound` generator summands.
    Exhausted { bound: usize },
}

impl AffineMonoid {
    pub fn new(rank: usize, generators: Vec<Vec<i64>>) -> Result<Self> {
        if generators.iter().any(|g| g.len() != rank) {
            return Err(Error::malformed(format!("every generator must have length {rank}")));
        }
        Ok(AffineMonoid { rank, generators })
    }

    /// `ℕ^d`.
    pub fn free(rank: usize) -> Self {
        let generators = (0..rank)
            .map(|i| (0..rank).map(|j| i64::from(i == j)).collect())
            .collect();
        AffineMonoid { rank, generators }
    }

    /// `ℤ^d` as a monoid, generated by `±eᵢ`.
    pub fn lattice(rank: usize) -> Self {
        let mut generators = Vec::new();
        for i in 0..rank {
            for s in [1, -1] {
                generators.push((0..rank).map(|j| if i == j { s } else { 0 }).collect());
            }
        }
        AffineMonoid { rank, generators }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn generators(&self) -> &[Vec<i64>] {
        &self.generators
    }

    pub fn zero(&self) -> Vec<i64> {
        vec![0; self.rank]
    }

    /// Generators other than the zero vector.
    pub fn nonzero_generators(&self) -> Vec<Vec<i64>> {
        self.generators
            .iter()
            .filter(|g| g.iter().any(|&x| x != 0))
            .cloned()
            .collect()
    }

    pub fn combine(&self, coeffs: &[u64]) -> Vec<i64> {
        let mut v = self.zero();
        for (g, &c) in self.generators.iter().zip(coeffs) {
            for (x, y) in v.iter_mut().zip(g) {
                *x += c as i64 * y;
            }
        }
        v
    }

    /// Whether `v` lies in the rational cone spanned by the generators.
    pub fn in_cone(&self, v: &[i64]) -> bool {
        let k = self.generators.len();
        let a: Vec<Vec<_>> = (0..self.rank)
            .map(|i| (0..k).map(|j| rational(self.generators[j][i])).collect())
            .collect();
        let b: Vec<_> = v.iter().map(|&x| rational(x)).collect();
        feasible(&a, &b, k).is_some()
    }

    /// Searches for `v = Σ zᵢ gᵢ` with `Σ zᵢ ≤ bound`, breadth first, so the
    /// certificate found uses the fewest summands.
    pub fn membership(&self, v: &[i64], bound: usize) -> Membership {
        if v.iter().all(|&x| x == 0) {
            return Membership::Member(vec![0; self.generators.len()]);
        }
        if !self.in_cone(v) {
            return Membership::OutsideCone;
        }
        let mut parent: HashMap<Vec<i64>, Option<(Vec<i64>, usize)>> = HashMap::new();
        parent.insert(self.zero(), None);
        let mut layer = vec![self.zero()];
        for _ in 0..bound {
            let mut next = Vec::new();
            for u in &layer {
                for (i, g) in self.generators.iter().enumerate() {
                    let w: Vec<i64> = u.iter().zip(g).map(|(a, b)| a + b).collect();
                    if parent.contains_key(&w) {
                        continue;
                    }
                    parent.insert(w.clone(), Some((u.clone(), i)));
                    if w == v {
                        let mut coeffs = vec![0u64; self.generators.len()];
                        let mut cur = w;
                        while let Some(Some((prev, i))) = parent.get(&cur) {
                            coeffs[*i] += 1;
                            cur = prev.clone();
                        }
                        return Membership::Member(coeffs);
                    }
                    next.push(w);
                }
            }
            layer = next;
        }
        Membership::Exhausted { bound }
    }

    /// An integer functional `φ ≥ 0` on every generator with `φ(x) = 0` and
    /// `φ(y) > 0`, proving that `n·x − y ∉ M` for every `n`.
    pub fn separating_functional(&self, x: &[i64], y: &[i64]) -> Option<Vec<i64>> {
        // variables: φ⁺ (d), φ⁻ (d), slack per generator (k), slack for y (1)
        let d = self.rank;
        let k = self.generators.len();
        let vars = 2 * d + k + 1;
        let mut a = Vec::new();
        let mut b = Vec::new();
        let phi_row = |v: &[i64]| -> Vec<_> {
            let mut row = vec![rational(0); vars];
            for (i, &c) in v.iter().enumerate() {
                row[i] = rational(c);
                row[d + i] = rational(-c);
            }
            row
        };
        for (j, g) in self.generators.iter().enumerate() {
            let mut row = phi_row(g);
            row[2 * d + j] = rational(-1);
            a.push(row);
            b.push(rational(0));
        }
        a.push(phi_row(x));
        b.push(rational(0));
        let mut row = phi_row(y);
        row[vars - 1] = rational(-1);
        a.push(row);
        b.push(rational(1));
        let sol = feasible(&a, &b, vars)?;
        let phi: Vec<_> = (0..d).map(|i| &sol[i] - &sol[d + i]).collect();
        let scaled = clear_signed(&phi);
        scaled.into_iter().map(|v| v.to_i64()).collect()
    }

    /// A nontrivial relation `Σ cᵢ gᵢ = 0` among nonzero generators, if any.
    pub fn zero_relation(&self) -> Option<Vec<u64>> {
        let gens = self.nonzero_generators();
        let k = gens.len();
        if k == 0 {
            return None;
        }
        let mut a: Vec<Vec<_>> = (0..self.rank)
            .map(|i| (0..k).map(|j| rational(gens[j][i])).collect())
            .collect();
        a.push(vec![rational(1); k]);
        let mut b = vec![rational(0); self.rank];
        b.push(rational(1));
        let sol = feasible(&a, &b, k)?;
        clear_denominators(&sol).into_iter().map(|v| v.to_u64()).collect()
    }
}

fn clear_signed(x: &[num_rational::BigRational]) -> Vec<BigInt> {
    use num_integer::Integer;
    use num_traits::{One, Zero};
    let lcm = x.iter().fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
    let ints: Vec<BigInt> = x.iter().map(|q| q.numer() * (&lcm / q.denom())).collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, v| acc.gcd(v));
    if g.is_zero() {
        ints
    } else {
        ints.into_iter().map(|v| v / &g).collect()
    }
}

pub(crate) fn dot(a: &[i64], b: &[i64]) -> i64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}
