//! Exact feasibility for `A x = b, x ≥ 0` over the rationals, by phase-one
//! simplex with Bland's rule.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// A nonnegative solution of `A x = b`, if one exists.
pub fn feasible(a: &[Vec<BigRational>], b: &[BigRational], vars: usize) -> Option<Vec<BigRational>> {
    let m = a.len();
    // tableau over [x | artificials | rhs], rows normalized to b ≥ 0
    let width = vars + m + 1;
    let mut t: Vec<Vec<BigRational>> = Vec::with_capacity(m + 1);
    for (i, (row, rhs)) in a.iter().zip(b).enumerate() {
        let flip = rhs.is_negative();
        let mut r = vec![BigRational::zero(); width];
        for (j, x) in row.iter().enumerate() {
            r[j] = if flip { -x.clone() } else { x.clone() };
        }
        r[vars + i] = BigRational::one();
        r[width - 1] = if flip { -rhs.clone() } else { rhs.clone() };
        t.push(r);
    }
    // objective: minimize the sum of artificials, stored as reduced costs
    let mut obj = vec![BigRational::zero(); width];
    for r in &t {
        for j in 0..vars {
            obj[j] -= &r[j];
        }
        obj[width - 1] -= &r[width - 1];
    }
    let mut basis: Vec<usize> = (vars..vars + m).collect();

    while let Some(enter) = (0..vars + m).find(|&j| obj[j].is_negative()) {
        let mut leave: Option<(usize, BigRational)> = None;
        for (i, r) in t.iter().enumerate() {
            if r[enter].is_positive() {
                let ratio = &r[width - 1] / &r[enter];
                let better = match &leave {
                    None => true,
                    Some((k, best)) => ratio < *best || (ratio == *best && basis[i] < basis[*k]),
                };
                if better {
                    leave = Some((i, ratio));
                }
            }
        }
        let (row, _) = leave?;
        let piv = t[row][enter].clone();
        for x in t[row].iter_mut() {
            *x /= &piv;
        }
        let pivot_row = t[row].clone();
        for (i, r) in t.iter_mut().enumerate() {
            if i != row && !r[enter].is_zero() {
                let f = r[enter].clone();
                for (x, y) in r.iter_mut().zip(&pivot_row) {
                    *x -= &f * y;
                }
            }
        }
        if !obj[enter].is_zero() {
            let f = obj[enter].clone();
            for (x, y) in obj.iter_mut().zip(&pivot_row) {
                *x -= &f * y;
            }
        }
        basis[row] = enter;
    }
    if !obj[width - 1].is_zero() {
        return None;
    }
    let mut x = vec![BigRational::zero(); vars];
    for (i, &j) in basis.iter().enumerate() {
        if j < vars {
            x[j] = t[i][width - 1].clone();
        }
    }
    Some(x)
}

/// Scales a nonnegative rational vector to the primitive integer vector on
/// the same ray.
pub fn clear_denominators(x: &[BigRational]) -> Vec<BigInt> {
    let lcm = x.iter().fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
    let ints: Vec<BigInt> = x.iter().map(|q| q.numer() * (&lcm / q.denom())).collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, v| acc.gcd(v));
    if g.is_zero() {
        ints
    } else {
        ints.into_iter().map(|v| v / &g).collect()
    }
}

pub fn rational(x: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(x))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mat(rows: &[&[i64]]) -> Vec<Vec<BigRational>> {
        rows.iter().map(|r| r.iter().map(|&x| rational(x)).collect()).collect()
    }

    #[test]
    fn finds_a_nonnegative_solution() {
        // x + y = 3, x − y = 1
        let a = mat(&[&[1, 1], &[1, -1]]);
        let x = feasible(&a, &[rational(3), rational(1)], 2).unwrap();
        assert_eq!(x, vec![rational(2), rational(1)]);
    }

    #[test]
    fn detects_infeasibility() {
        // x + y = −1 has no nonnegative solution
        let a = mat(&[&[1, 1]]);
        assert!(feasible(&a, &[rational(-1)], 2).is_none());
        // x − y = 0, x + y = 1, x = 1 is infeasible
        let a = mat(&[&[1, -1], &[1, 1], &[1, 0]]);
        assert!(feasible(&a, &[rational(0), rational(1), rational(1)], 2).is_none());
    }

    #[test]
    fn denominators_clear_to_primitive_vectors() {
        let x = vec![
            BigRational::new(1.into(), 2.into()),
            BigRational::new(1.into(), 3.into()),
            rational(0),
        ];
        assert_eq!(
            clear_denominators(&x),
            vec![BigInt::from(3), BigInt::from(2), BigInt::from(0)]
        );
    }
}
