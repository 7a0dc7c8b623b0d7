use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use crate::error::{Error, Result};
use crate::group::FiniteGroup;
use crate::linalg::{Echelon, Insert, NormalForms, PrimeField, ReducedEchelon, Row, Sparse};

use super::bar::{BarComplex, Budget};

/// Homology of one degree: chosen cycle representatives and the projection
/// from chains onto their span.
#[derive(Debug, Clone)]
pub struct DegreeHomology {
    /// Cycles whose classes form a basis of `H_n`.
    pub representatives: Vec<Sparse>,
    /// Row-major `dim C_n × dim H_n` table of `π(eₜ)`.
    projection: Vec<u8>,
    /// Generated by boundaries: `π(b) = 0` is asserted on demand.
    boundaries: NormalForms,
}

/// A basis of `H_*(G; F_p)` through degree `D` together with the chain-level
/// projection `π : C_n → H_n`.
///
/// `π` is defined on every chain, vanishes on boundaries and sends the chosen
/// representatives to the standard basis, so it is a chain map onto the
/// homology with zero differential.
#[derive(Debug, Clone)]
pub struct HomologyBasis {
    bar: BarComplex,
    top: usize,
    degrees: Vec<DegreeHomology>,
}

impl HomologyBasis {
    /// Computes the basis under the default [`Budget`].
    pub fn compute(group: &FiniteGroup, p: u32, top: usize) -> Result<Self> {
        Self::compute_with_budget(group, p, top, &Budget::default())
    }

    /// Like [`HomologyBasis::compute`], shared through a process-wide memo
    /// keyed by `(G, p, D)`.
    pub fn cached(group: &FiniteGroup, p: u32, top: usize) -> Result<Arc<Self>> {
        type Memo = Mutex<HashMap<(FiniteGroup, u32, usize), Arc<HomologyBasis>>>;
        static MEMO: OnceLock<Memo> = OnceLock::new();
        let memo = MEMO.get_or_init(Default::default);
        let key = (group.clone(), p, top);
        if let Some(hit) = memo.lock().expect("memo lock").get(&key) {
            return Ok(Arc::clone(hit));
        }
        let basis = Arc::new(Self::compute(group, p, top)?);
        memo.lock().expect("memo lock").insert(key, Arc::clone(&basis));
        Ok(basis)
    }

    pub fn compute_with_budget(group: &FiniteGroup, p: u32, top: usize, budget: &Budget) -> Result<Self> {
        budget.check(group, top)?;
        let field = PrimeField::new(p)?;
        let bar = BarComplex::new(group.clone(), field);

        // kernels[n] spans Z_n; images[n] gives normal forms modulo B_n.
        let mut kernels: Vec<Vec<Sparse>> = vec![vec![Sparse::from([(0, 1)])]];
        let mut images: Vec<NormalForms> = Vec::with_capacity(top + 1);
        for n in 1..=top + 1 {
            let (image, kernel) = boundary_image(&bar, n, n <= top);
            images.push(image);
            if n <= top {
                kernels.push(kernel);
            }
        }

        let mut degrees = Vec::with_capacity(top + 1);
        for (n, (cycles, image)) in kernels.into_iter().zip(images).enumerate() {
            degrees.push(degree_homology(&bar, n, cycles, image)?);
        }
        Ok(HomologyBasis { bar, top, degrees })
    }

    pub fn bar(&self) -> &BarComplex {
        &self.bar
    }

    pub fn group(&self) -> &FiniteGroup {
        self.bar.group()
    }

    pub fn field(&self) -> PrimeField {
        self.bar.field()
    }

    pub fn top_degree(&self) -> usize {
        self.top
    }

    /// `dim H_n` for `n ≤ D`.
    pub fn dim(&self, n: usize) -> usize {
        self.degrees[n].representatives.len()
    }

    pub fn dims(&self) -> Vec<usize> {
        (0..=self.top).map(|n| self.dim(n)).collect()
    }

    pub fn representatives(&self, n: usize) -> &[Sparse] {
        &self.degrees[n].representatives
    }

    /// `π(eₜ)` for the basis tuple with index `t`.
    pub fn project_unit(&self, n: usize, t: usize) -> &[u8] {
        let h = self.dim(n);
        &self.degrees[n].projection[t * h..(t + 1) * h]
    }

    /// `π(c)` in coordinates of the representative basis.
    pub fn project(&self, n: usize, chain: &Sparse) -> Vec<u32> {
        let field = self.field();
        let mut out = vec![0u32; self.dim(n)];
        for (&t, &c) in chain {
            for (o, &v) in out.iter_mut().zip(self.project_unit(n, t)) {
                *o = field.add(*o, field.mul(c, u32::from(v)));
            }
        }
        out
    }

    /// Whether `chain` is a boundary (requires that it is a cycle).
    pub fn is_boundary(&self, n: usize, chain: &Sparse) -> bool {
        self.degrees[n].boundaries.normal_form(chain).is_zero()
    }
}

/// Normal forms modulo `im ∂_n ⊆ C_{n−1}` and, when asked, a basis of
/// `ker ∂_n`.
fn boundary_image(bar: &BarComplex, n: usize, want_kernel: bool) -> (NormalForms, Vec<Sparse>) {
    let field = bar.field();
    let target = bar.dim(n - 1);
    let source = bar.dim(n);
    if !want_kernel {
        let mut ech = ReducedEchelon::new(field, target);
        for col in 0..source {
            ech.insert(&bar.boundary_of_index(n, col));
        }
        return (ech.normal_forms(), Vec::new());
    }
    let mut ech = Echelon::new(field, target);
    let mut kernel = Vec::new();
    for col in 0..source {
        let image = bar.boundary_of_index(n, col);
        let row = Row::from_sparse(field, target, &image);
        let tag = want_kernel.then(|| {
            let mut t = Row::zeros(field, source);
            t.set(col, 1);
            t
        });
        if let Insert::Dependent(Some(t)) = ech.insert(row, tag) {
            kernel.push(t.to_sparse());
        }
    }
    (ech.normal_forms(), kernel)
}

fn degree_homology(bar: &BarComplex, n: usize, cycles: Vec<Sparse>, nf: NormalForms) -> Result<DegreeHomology> {
    let field = bar.field();
    let free = nf.free_columns().len();

    // Keep cycles whose classes are independent modulo boundaries.
    let mut classes = Echelon::new(field, free);
    let mut representatives = Vec::new();
    let mut forms = Vec::new();
    for z in cycles {
        let form = nf.normal_form(&z);
        if let Insert::Pivot(_) = classes.insert(form.clone(), None) {
            representatives.push(z);
            forms.push(form);
        }
    }
    let h = representatives.len();

    // π(v) = (NF(v) restricted to the class pivots) · (U restricted)^{-1}
    let pivots = classes.pivot_columns().to_vec();
    let restricted: Vec<Vec<u32>> = forms
        .iter()
        .map(|f| pivots.iter().map(|&q| f.get(q)).collect())
        .collect();
    let inverse =
        invert(field, &restricted).ok_or_else(|| Error::NotInvertible("homology representative matrix".into()))?;

    let dim = bar.dim(n);
    let mut projection = vec![0u8; dim * h];
    if h > 0 {
        for t in 0..dim {
            let entries: Vec<u32> = pivots.iter().map(|&q| nf.unit_entry(t, q)).collect();
            if entries.iter().all(|&e| e == 0) {
                continue;
            }
            for j in 0..h {
                let mut acc = 0;
                for (k, &e) in entries.iter().enumerate() {
                    acc = field.add(acc, field.mul(e, inverse[k][j]));
                }
                projection[t * h + j] = acc as u8;
            }
        }
    }
    Ok(DegreeHomology {
        representatives,
        projection,
        boundaries: nf,
    })
}

/// Inverse of a square matrix over `F_p`, by Gauss–Jordan.
pub(crate) fn invert(field: PrimeField, m: &[Vec<u32>]) -> Option<Vec<Vec<u32>>> {
    let n = m.len();
    let mut a: Vec<Vec<u32>> = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| u32::from(i == j)));
            r
        })
        .collect();
    for col in 0..n {
        let piv = (col..n).find(|&r| a[r][col] != 0)?;
        a.swap(col, piv);
        let inv = field.inv(a[col][col]);
        for x in a[col].iter_mut() {
            *x = field.mul(*x, inv);
        }
        for r in 0..n {
            if r != col && a[r][col] != 0 {
                let c = field.neg(a[r][col]);
                let pivot_row = a[col].clone();
                for (x, y) in a[r].iter_mut().zip(&pivot_row) {
                    *x = field.add(*x, field.mul(c, *y));
                }
            }
        }
    }
    Some(a.into_iter().map(|r| r[n..].to_vec()).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::symmetric;

    #[test]
    fn cyclic_groups_have_one_class_per_degree_at_their_prime() {
        for (q, p) in [(2, 2), (3, 3), (4, 2), (5, 5)] {
            let basis = HomologyBasis::compute(&FiniteGroup::cyclic(q), p, 3).unwrap();
            assert_eq!(basis.dims(), vec![1, 1, 1, 1], "Z/{q} at p={p}");
        }
        let basis = HomologyBasis::compute(&FiniteGroup::cyclic(3), 2, 3).unwrap();
        assert_eq!(basis.dims(), vec![1, 0, 0, 0]);
    }

    #[test]
    fn s3_mod_2_and_mod_3() {
        let s3 = symmetric(3);
        assert_eq!(HomologyBasis::compute(&s3, 2, 4).unwrap().dims(), vec![1, 1, 1, 1, 1]);
        // H_n(S_3; F_3) is F_3 in degrees ≡ 0, 3 mod 4
        assert_eq!(HomologyBasis::compute(&s3, 3, 4).unwrap().dims(), vec![1, 0, 0, 1, 1]);
    }

    #[test]
    fn projection_kills_boundaries_and_fixes_representatives() {
        let basis = HomologyBasis::compute(&symmetric(3), 2, 3).unwrap();
        let bar = basis.bar();
        for n in 0..=3 {
            for (k, z) in basis.representatives(n).iter().enumerate() {
                let mut expect = vec![0; basis.dim(n)];
                expect[k] = 1;
                assert_eq!(basis.project(n, z), expect);
                assert!(!basis.is_boundary(n, z));
            }
            for idx in 0..bar.dim(n + 1) {
                let b = bar.boundary_of_index(n + 1, idx);
                assert!(basis.project(n, &b).iter().all(|&x| x == 0));
            }
        }
    }

    #[test]
    fn invert_small() {
        let f = PrimeField::new(5).unwrap();
        let m = vec![vec![1, 2], vec![3, 4]];
        let inv = invert(f, &m).unwrap();
        assert_eq!(crate::linalg::matmul(f, &m, &inv), vec![vec![1, 0], vec![0, 1]]);
        assert!(invert(f, &[vec![1, 2], vec![2, 4]]).is_none());
    }
}
