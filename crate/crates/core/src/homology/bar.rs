use crate::error::{Error, Result};
use crate::group::FiniteGroup;
use crate::linalg::{add_term, PrimeField, Sparse};

/// Size limits for bar complex computations.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Budget {
    pub max_group_order: usize,
    pub max_degree: usize,
    /// Bound on the number of normalized tuples in the top chain module
    /// (degree `D + 1`), which dominates the cost.
    pub max_tuples: usize,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            max_group_order: 24,
            max_degree: 4,
            max_tuples: 300_000,
        }
    }
}

impl Budget {
    /// Checks that homology of `group` through degree `top` fits.
    pub fn check(&self, group: &FiniteGroup, top: usize) -> Result<()> {
        let base = group.size() - 1;
        let largest = (0..=self.max_degree)
            .take_while(|&d| base.checked_pow(d as u32 + 1).is_some_and(|t| t <= self.max_tuples))
            .last();
        let fits = group.size() <= self.max_group_order
            && top <= self.max_degree
            && base.checked_pow(top as u32 + 1).is_some_and(|t| t <= self.max_tuples);
        if fits {
            return Ok(());
        }
        Err(Error::Budget {
            what: format!("bar homology of a group of order {} through degree {top}", group.size()),
            largest_feasible: match largest {
                Some(d) if group.size() <= self.max_group_order => format!("D = {d}"),
                _ => "none".to_string(),
            },
        })
    }
}

/// The normalized bar complex `[g₁|…|gₙ]`, `gᵢ ≠ e`, with trivial `F_p`
/// coefficients.
///
/// Tuples are indexed in base `|G| − 1` with `g₁` as the most significant digit.
#[derive(Debug, Clone)]
pub struct BarComplex {
    group: FiniteGroup,
    field: PrimeField,
    /// non-identity elements, in increasing order
    nonid: Vec<usize>,
    /// element -> digit, or usize::MAX for the identity
    digit: Vec<usize>,
}

impl BarComplex {
    pub fn new(group: FiniteGroup, field: PrimeField) -> Self {
        let nonid: Vec<usize> = group.elements().filter(|&g| g != group.identity()).collect();
        let mut digit = vec![usize::MAX; group.size()];
        for (k, &g) in nonid.iter().enumerate() {
            digit[g] = k;
        }
        BarComplex {
            group,
            field,
            nonid,
            digit,
        }
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    /// Number of normalized `n`-tuples.
    pub fn dim(&self, n: usize) -> usize {
        self.nonid.len().pow(n as u32)
    }

    pub fn decode(&self, n: usize, mut index: usize) -> Vec<usize> {
        let b = self.nonid.len();
        let mut out = vec![0; n];
        for slot in out.iter_mut().rev() {
            *slot = self.nonid[index % b];
            index /= b;
        }
        out
    }

    /// Index of a tuple, or `None` when some entry is the identity (a
    /// degenerate simplex, zero in the normalized complex).
    pub fn encode(&self, tuple: &[usize]) -> Option<usize> {
        let b = self.nonid.len();
        let mut index = 0;
        for &g in tuple {
            let d = self.digit[g];
            if d == usize::MAX {
                return None;
            }
            index = index * b + d;
        }
        Some(index)
    }

    /// `∂[g₁|…|gₙ] = [g₂|…|gₙ] + Σ (−1)^i [… |gᵢgᵢ₊₁| …] + (−1)^n [g₁|…|gₙ₋₁]`.
    pub fn boundary_of_tuple(&self, tuple: &[usize]) -> Sparse {
        let n = tuple.len();
        let mut out = Sparse::new();
        if n == 0 {
            return out;
        }
        let mut face = Vec::with_capacity(n - 1);
        for i in 0..=n {
            face.clear();
            if i == 0 {
                face.extend_from_slice(&tuple[1..]);
            } else if i == n {
                face.extend_from_slice(&tuple[..n - 1]);
            } else {
                face.extend_from_slice(&tuple[..i - 1]);
                face.push(self.group.mul(tuple[i - 1], tuple[i]));
                face.extend_from_slice(&tuple[i + 1..]);
            }
            if let Some(idx) = self.encode(&face) {
                add_term(self.field, &mut out, idx, self.field.sign(i));
            }
        }
        out
    }

    pub fn boundary_of_index(&self, n: usize, index: usize) -> Sparse {
        self.boundary_of_tuple(&self.decode(n, index))
    }

    pub fn boundary(&self, n: usize, chain: &Sparse) -> Sparse {
        let mut out = Sparse::new();
        for (&idx, &c) in chain {
            for (j, d) in self.boundary_of_index(n, idx) {
                add_term(self.field, &mut out, j, self.field.mul(c, d));
            }
        }
        out
    }

    /// Adds `coeff · [tuple]` to `chain`, dropping degenerate tuples.
    pub fn add_tuple(&self, chain: &mut Sparse, tuple: &[usize], coeff: u32) {
        if let Some(idx) = self.encode(tuple) {
            add_term(self.field, chain, idx, coeff);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::symmetric;

    #[test]
    fn boundary_squares_to_zero() {
        let f2 = PrimeField::new(2).unwrap();
        let f3 = PrimeField::new(3).unwrap();
        for (g, field) in [
            (symmetric(3), f2),
            (symmetric(3), f3),
            (FiniteGroup::cyclic(4), f2),
            (FiniteGroup::cyclic(3), f3),
        ] {
            let bar = BarComplex::new(g, field);
            for n in 1..=4 {
                for idx in 0..bar.dim(n) {
                    let d = bar.boundary_of_index(n, idx);
                    assert!(bar.boundary(n - 1, &d).is_empty());
                }
            }
        }
    }

    #[test]
    fn encode_decode_round_trip() {
        let bar = BarComplex::new(symmetric(3), PrimeField::new(2).unwrap());
        for idx in 0..bar.dim(3) {
            assert_eq!(bar.encode(&bar.decode(3, idx)), Some(idx));
        }
        assert_eq!(bar.encode(&[0]), None);
    }

    #[test]
    fn budget_reports_largest_feasible_degree() {
        let budget = Budget::default();
        let s4 = symmetric(4);
        assert!(budget.check(&s4, 3).is_ok());
        match budget.check(&s4, 4) {
            Err(Error::Budget { largest_feasible, .. }) => assert_eq!(largest_feasible, "D = 3"),
            other => panic!("expected budget error, got {other:?}"),
        }
        assert!(budget.check(&FiniteGroup::cyclic(2), 4).is_ok());
    }
}
