use crate::error::Result;
use crate::linalg::{rank, PrimeField};

/// `H_n(ℤ/q; F_p)` for `n ≤ top` from the periodic resolution
/// `… → ℤ[C_q] --N--> ℤ[C_q] --(t−1)--> ℤ[C_q] → ℤ`, independent of the bar
/// complex.
///
/// Tensoring with `F_p` applies the augmentation to each differential.
pub fn periodic_homology_dims(q: usize, p: u32, top: usize) -> Result<Vec<usize>> {
    let field = PrimeField::new(p)?;
    // group ring elements as coefficient vectors over t^0..t^{q-1}
    let mut t_minus_one = vec![0i64; q];
    t_minus_one[0] -= 1;
    t_minus_one[1 % q] += 1;
    let norm = vec![1i64; q];
    let augment = |x: &[i64]| field.reduce(x.iter().sum());
    // rank of d_n : P_n ⊗ F_p → P_{n-1} ⊗ F_p, each a 1×1 matrix
    let rank_of = |n: usize| -> usize {
        if n == 0 {
            return 0;
        }
        let entry = if n % 2 == 1 {
            augment(&t_minus_one)
        } else {
            augment(&norm)
        };
        rank(field, 1, &[vec![entry]])
    };
    Ok((0..=top).map(|n| 1 - rank_of(n) - rank_of(n + 1)).collect())
}
