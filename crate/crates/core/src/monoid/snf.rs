use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// `U · A · V = D` with `U`, `V` unimodular and `D` diagonal with
/// `d₁ | d₂ | …`, all nonnegative.
#[derive(Debug, Clone)]
pub struct SmithForm {
    pub diagonal: Vec<BigInt>,
    pub u: Vec<Vec<BigInt>>,
    pub v: Vec<Vec<BigInt>>,
}

fn identity(n: usize) -> Vec<Vec<BigInt>> {
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| if i == j { BigInt::one() } else { BigInt::zero() })
                .collect()
        })
        .collect()
}

fn row_op(m: &mut [Vec<BigInt>], target: usize, source: usize, q: &BigInt) {
    // row[target] -= q · row[source]
    let src = m[source].clone();
    for (x, y) in m[target].iter_mut().zip(&src) {
        *x -= q * y;
    }
}

fn col_op(m: &mut [Vec<BigInt>], target: usize, source: usize, q: &BigInt) {
    for row in m.iter_mut() {
        let y = row[source].clone();
        row[target] -= q * y;
    }
}

fn swap_cols(m: &mut [Vec<BigInt>], a: usize, b: usize) {
    for row in m.iter_mut() {
        row.swap(a, b);
    }
}

/// Smith normal form of an `m × n` integer matrix.
pub fn smith_normal_form(a: &[Vec<i64>], cols: usize) -> SmithForm {
    let rows = a.len();
    // short rows are padded with zeros
    let mut d: Vec<Vec<BigInt>> = a
        .iter()
        .map(|r| {
            (0..cols)
                .map(|j| BigInt::from(r.get(j).copied().unwrap_or(0)))
                .collect()
        })
        .collect();
    let mut u = identity(rows);
    let mut v = identity(cols);
    let mut t = 0;
    while t < rows.min(cols) {
        // pivot: smallest nonzero absolute value in the remaining block
        let pivot = (t..rows)
            .flat_map(|i| (t..cols).map(move |j| (i, j)))
            .filter(|&(i, j)| !d[i][j].is_zero())
            .min_by(|&(a, b), &(c, e)| d[a][b].abs().cmp(&d[c][e].abs()));
        let Some((pi, pj)) = pivot else { break };
        d.swap(t, pi);
        u.swap(t, pi);
        swap_cols(&mut d, t, pj);
        swap_cols(&mut v, t, pj);

        let mut clean = true;
        for i in t + 1..rows {
            if !d[i][t].is_zero() {
                let q = d[i][t].div_floor(&d[t][t]);
                row_op(&mut d, i, t, &q);
                row_op(&mut u, i, t, &q);
                clean &= d[i][t].is_zero();
            }
        }
        for j in t + 1..cols {
            if !d[t][j].is_zero() {
                let q = d[t][j].div_floor(&d[t][t]);
                col_op(&mut d, j, t, &q);
                col_op(&mut v, j, t, &q);
                clean &= d[t][j].is_zero();
            }
        }
        if !clean {
            continue;
        }
        // divisibility: fold a non-divisible entry into the pivot row
        let bad = (t + 1..rows)
            .flat_map(|i| (t + 1..cols).map(move |j| (i, j)))
            .find(|&(i, j)| !(&d[i][j] % &d[t][t]).is_zero());
        if let Some((i, _)) = bad {
            let minus_one = -BigInt::one();
            row_op(&mut d, t, i, &minus_one);
            row_op(&mut u, t, i, &minus_one);
            continue;
        }
        if d[t][t].is_negative() {
            for x in d[t].iter_mut() {
                *x = -x.clone();
            }
            for x in u[t].iter_mut() {
                *x = -x.clone();
            }
        }
        t += 1;
    }
    let diagonal = (0..rows.min(cols)).map(|i| d[i][i].clone()).collect();
    SmithForm { diagonal, u, v }
}

/// `ℤ^rank ⊕ ⊕ ℤ/dᵢ` with `d₁ | d₂ | …` and every `dᵢ > 1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FGAbelianGroup {
    pub rank: usize,
    pub torsion: Vec<u64>,
}

impl FGAbelianGroup {
    pub fn trivial() -> Self {
        FGAbelianGroup {
            rank: 0,
            torsion: Vec::new(),
        }
    }

    pub fn is_trivial(&self) -> bool {
        self.rank == 0 && self.torsion.is_empty()
    }

    /// Order, when finite.
    pub fn order(&self) -> Option<u64> {
        (self.rank == 0).then(|| self.torsion.iter().product())
    }
}

/// The cokernel `ℤ^n / (row span of relations)` with coordinates for each
/// standard basis vector.
#[derive(Debug, Clone)]
pub struct Cokernel {
    pub group: FGAbelianGroup,
    /// Per retained coordinate: modulus (0 for free coordinates).
    moduli: Vec<u64>,
    /// Position in `0..n` of each retained coordinate.
    positions: Vec<usize>,
    v: Vec<Vec<BigInt>>,
}

impl Cokernel {
    pub fn new(relations: &[Vec<i64>], n: usize) -> Result<Self> {
        let snf = smith_normal_form(relations, n);
        let mut moduli = Vec::new();
        let mut positions = Vec::new();
        let mut torsion = Vec::new();
        let mut rank = 0;
        for j in 0..n {
            let d = snf.diagonal.get(j).cloned().unwrap_or_else(BigInt::zero);
            if d.is_one() {
                continue;
            }
            if d.is_zero() {
                rank += 1;
                moduli.push(0);
            } else {
                let m = d.to_u64().ok_or(Error::TooLarge {
                    bound: u64::MAX as usize,
                })?;
                torsion.push(m);
                moduli.push(m);
            }
            positions.push(j);
        }
        // torsion coordinates first, in divisibility order, then free ones
        let mut order: Vec<usize> = (0..moduli.len()).collect();
        order.sort_by_key(|&k| (moduli[k] == 0, positions[k]));
        let moduli = order.iter().map(|&k| moduli[k]).collect();
        let positions = order.iter().map(|&k| positions[k]).collect();
        Ok(Cokernel {
            group: FGAbelianGroup { rank, torsion },
            moduli,
            positions,
            v: snf.v,
        })
    }

    /// Coordinates of the class of `x ∈ ℤ^n`: torsion parts reduced, free
    /// parts exact.
    pub fn coordinates(&self, x: &[i64]) -> Vec<BigInt> {
        self.positions
            .iter()
            .zip(&self.moduli)
            .map(|(&j, &m)| {
                let c: BigInt = x.iter().zip(&self.v).map(|(&xi, row)| BigInt::from(xi) * &row[j]).sum();
                if m == 0 {
                    c
                } else {
                    c.mod_floor(&BigInt::from(m))
                }
            })
            .collect()
    }
}

/// Rank of the subgroup of `ℤ^d` spanned by `vectors`, with coordinates of
/// vectors lying in it.
#[derive(Debug, Clone)]
pub struct Lattice {
    pub rank: usize,
    diagonal: Vec<BigInt>,
    v: Vec<Vec<BigInt>>,
    dim: usize,
}

impl Lattice {
    pub fn span(vectors: &[Vec<i64>], dim: usize) -> Self {
        let snf = smith_normal_form(vectors, dim);
        let rank = snf.diagonal.iter().filter(|d| !d.is_zero()).count();
        Lattice {
            rank,
            diagonal: snf.diagonal,
            v: snf.v,
            dim,
        }
    }

    /// Coordinates of `x` in a basis of the lattice, or `None` when `x` is not
    /// in it.
    pub fn coordinates(&self, x: &[i64]) -> Option<Vec<BigInt>> {
        let mut out = Vec::with_capacity(self.rank);
        for j in 0..self.dim {
            let c: BigInt = x.iter().zip(&self.v).map(|(&xi, row)| BigInt::from(xi) * &row[j]).sum();
            if j < self.rank {
                let d = &self.diagonal[j];
                if !(&c % d).is_zero() {
                    return None;
                }
                out.push(c / d);
            } else if !c.is_zero() {
                return None;
            }
        }
        Some(out)
    }

    pub fn contains(&self, x: &[i64]) -> bool {
        self.coordinates(x).is_some()
    }
}
