//! Exact linear algebra over prime fields `F_p`.
//!
//! Rows are dense but packed: `p = 2` uses a bitset, odd primes one byte per
//! entry. Elimination never leaves the field, so there is no floating point
//! anywhere in the crate.

use std::collections::BTreeMap;

use crate::error::{Error, Result};

/// A prime field `F_p` with `p < 256`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PrimeField {
    p: u32,
}

impl PrimeField {
    pub fn new(p: u32) -> Result<Self> {
        if !(2..256).contains(&p) || !is_prime(p as u64) {
            return Err(Error::malformed(format!("{p} is not a prime below 256")));
        }
        Ok(PrimeField { p })
    }

    #[inline]
    pub fn p(self) -> u32 {
        self.p
    }

    #[inline]
    pub fn reduce(self, x: i64) -> u32 {
        x.rem_euclid(self.p as i64) as u32
    }

    #[inline]
    pub fn add(self, a: u32, b: u32) -> u32 {
        (a + b) % self.p
    }

    #[inline]
    pub fn sub(self, a: u32, b: u32) -> u32 {
        (a + self.p - b) % self.p
    }

    #[inline]
    pub fn mul(self, a: u32, b: u32) -> u32 {
        (a * b) % self.p
    }

    #[inline]
    pub fn neg(self, a: u32) -> u32 {
        (self.p - a) % self.p
    }

    pub fn inv(self, a: u32) -> u32 {
        assert!(!a.is_multiple_of(self.p), "inverse of zero in F_{}", self.p);
        // Fermat: a^(p-2)
        self.pow(a, self.p - 2)
    }

    pub fn pow(self, a: u32, mut e: u32) -> u32 {
        let mut base = a % self.p;
        let mut acc = 1 % self.p;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// `(-1)^k` as a field element.
    #[inline]
    pub fn sign(self, k: usize) -> u32 {
        if k.is_multiple_of(2) {
            1
        } else {
            self.p - 1
        }
    }
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Sparse vector: index to nonzero coefficient.
pub type Sparse = BTreeMap<usize, u32>;

/// Adds `coeff * e_index` to `v`, dropping the entry when it cancels.
pub fn add_term(field: PrimeField, v: &mut Sparse, index: usize, coeff: u32) {
    let coeff = coeff % field.p();
    if coeff == 0 {
        return;
    }
    let entry = v.entry(index).or_insert(0);
    *entry = field.add(*entry, coeff);
    if *entry == 0 {
        v.remove(&index);
    }
}

/// Adds `scale * w` to `v`.
pub fn add_scaled(field: PrimeField, v: &mut Sparse, scale: u32, w: &Sparse) {
    for (&i, &c) in w {
        add_term(field, v, i, field.mul(scale, c));
    }
}

/// `a += s * b` with the modulus known at compile time, which lets the loop
/// vectorize.
#[inline]
fn axpy<const P: u16>(a: &mut [u8], s: u16, b: &[u8]) {
    for (x, &y) in a.iter_mut().zip(b) {
        *x = ((*x as u16 + s * y as u16) % P) as u8;
    }
}

/// A dense row over `F_p`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Row {
    Bits { len: usize, words: Vec<u64> },
    Elems { p: u32, data: Vec<u8> },
}

impl Row {
    pub fn zeros(field: PrimeField, len: usize) -> Self {
        if field.p() == 2 {
            Row::Bits {
                len,
                words: vec![0; len.div_ceil(64)],
            }
        } else {
            Row::Elems {
                p: field.p(),
                data: vec![0; len],
            }
        }
    }

    pub fn from_sparse(field: PrimeField, len: usize, v: &Sparse) -> Self {
        let mut row = Row::zeros(field, len);
        for (&i, &c) in v {
            row.set(i, c);
        }
        row
    }

    pub fn len(&self) -> usize {
        match self {
            Row::Bits { len, .. } => *len,
            Row::Elems { data, .. } => data.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    #[inline]
    pub fn get(&self, i: usize) -> u32 {
        match self {
            Row::Bits { words, .. } => ((words[i / 64] >> (i % 64)) & 1) as u32,
            Row::Elems { data, .. } => data[i] as u32,
        }
    }

    #[inline]
    pub fn set(&mut self, i: usize, value: u32) {
        match self {
            Row::Bits { words, .. } => {
                let bit = 1u64 << (i % 64);
                if value % 2 == 1 {
                    words[i / 64] |= bit;
                } else {
                    words[i / 64] &= !bit;
                }
            }
            Row::Elems { p, data } => data[i] = (value % *p) as u8,
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Row::Bits { words, .. } => words.iter().all(|&w| w == 0),
            Row::Elems { data, .. } => data.iter().all(|&x| x == 0),
        }
    }

    /// First nonzero position at or after `start`.
    pub fn first_nonzero_from(&self, start: usize) -> Option<usize> {
        match self {
            Row::Bits { len, words } => {
                if start >= *len {
                    return None;
                }
                let mut w = start / 64;
                let mut word = words[w] & (!0u64 << (start % 64));
                loop {
                    if word != 0 {
                        let i = w * 64 + word.trailing_zeros() as usize;
                        return (i < *len).then_some(i);
                    }
                    w += 1;
                    if w >= words.len() {
                        return None;
                    }
                    word = words[w];
                }
            }
            Row::Elems { data, .. } => data[start.min(data.len())..]
                .iter()
                .position(|&x| x != 0)
                .map(|k| k + start),
        }
    }

    /// `self += scale * other`.
    pub fn add_scaled(&mut self, scale: u32, other: &Row) {
        match (self, other) {
            (Row::Bits { words, .. }, Row::Bits { words: o, .. }) => {
                if scale % 2 == 1 {
                    for (a, b) in words.iter_mut().zip(o) {
                        *a ^= *b;
                    }
                }
            }
            (Row::Elems { p, data }, Row::Elems { data: o, .. }) => {
                let s = (scale % *p) as u16;
                if s == 0 {
                    return;
                }
                match *p {
                    3 => axpy::<3>(data, s, o),
                    5 => axpy::<5>(data, s, o),
                    7 => axpy::<7>(data, s, o),
                    p => {
                        let p = p as u16;
                        for (a, &b) in data.iter_mut().zip(o) {
                            *a = ((*a as u16 + s * b as u16) % p) as u8;
                        }
                    }
                }
            }
            _ => panic!("mixed row representations"),
        }
    }

    pub fn scale(&mut self, scale: u32) {
        match self {
            Row::Bits { words, .. } => {
                if scale.is_multiple_of(2) {
                    words.iter_mut().for_each(|w| *w = 0);
                }
            }
            Row::Elems { p, data } => {
                let p = *p as u16;
                let s = (scale % p as u32) as u16;
                for a in data.iter_mut() {
                    *a = ((*a as u16 * s) % p) as u8;
                }
            }
        }
    }

    /// Nonzero entries in increasing position.
    pub fn nonzeros(&self) -> Vec<(usize, u32)> {
        let mut out = Vec::new();
        let mut i = 0;
        while let Some(j) = self.first_nonzero_from(i) {
            out.push((j, self.get(j)));
            i = j + 1;
        }
        out
    }

    pub fn to_sparse(&self) -> Sparse {
        self.nonzeros().into_iter().collect()
    }
}

/// Outcome of inserting a vector into an [`Echelon`].
#[derive(Debug, Clone)]
pub enum Insert {
    /// The vector was independent; it now owns this pivot column.
    Pivot(usize),
    /// The vector reduced to zero. Carries the accumulated tag, which for
    /// identity tags is a linear dependency among the inserted vectors.
    Dependent(Option<Row>),
}

/// Incrementally built row echelon form.
///
/// Each stored row has leading entry 1 at its pivot and zeros before it.
/// Optional tags ride along with every row operation, which is how kernels
/// and solution coefficients are recovered.
#[derive(Debug, Clone)]
pub struct Echelon {
    field: PrimeField,
    dim: usize,
    rows: Vec<Row>,
    tags: Vec<Option<Row>>,
    pivot_cols: Vec<usize>,
    row_of_col: Vec<u32>,
}

const NO_ROW: u32 = u32::MAX;

impl Echelon {
    pub fn new(field: PrimeField, dim: usize) -> Self {
        Echelon {
            field,
            dim,
            rows: Vec::new(),
            tags: Vec::new(),
            pivot_cols: Vec::new(),
            row_of_col: vec![NO_ROW; dim],
        }
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn is_pivot(&self, col: usize) -> bool {
        self.row_of_col[col] != NO_ROW
    }

    pub fn pivot_columns(&self) -> &[usize] {
        &self.pivot_cols
    }

    pub fn rows(&self) -> &[Row] {
        &self.rows
    }

    pub fn tag(&self, row: usize) -> Option<&Row> {
        self.tags[row].as_ref()
    }

    /// Reduces `v` in place against the stored rows, mirroring every
    /// operation on `tag`.
    pub fn reduce(&self, v: &mut Row, mut tag: Option<&mut Row>) {
        let mut cursor = 0;
        while let Some(col) = v.first_nonzero_from(cursor) {
            let r = self.row_of_col[col];
            if r == NO_ROW {
                cursor = col + 1;
                continue;
            }
            let r = r as usize;
            let c = self.field.neg(v.get(col));
            v.add_scaled(c, &self.rows[r]);
            if let (Some(t), Some(rt)) = (tag.as_deref_mut(), self.tags[r].as_ref()) {
                t.add_scaled(c, rt);
            }
            cursor = col + 1;
        }
    }

    /// Whether `v` lies in the row space.
    pub fn contains(&self, v: &Row) -> bool {
        let mut v = v.clone();
        self.reduce(&mut v, None);
        v.is_zero()
    }

    pub fn insert(&mut self, mut v: Row, mut tag: Option<Row>) -> Insert {
        debug_assert_eq!(v.len(), self.dim);
        self.reduce(&mut v, tag.as_mut());
        match v.first_nonzero_from(0) {
            None => Insert::Dependent(tag),
            Some(col) => {
                let inv = self.field.inv(v.get(col));
                v.scale(inv);
                if let Some(t) = tag.as_mut() {
                    t.scale(inv);
                }
                self.row_of_col[col] = self.rows.len() as u32;
                self.rows.push(v);
                self.tags.push(tag);
                self.pivot_cols.push(col);
                Insert::Pivot(col)
            }
        }
    }

    /// Normal forms modulo the row space, expressed on the non-pivot columns.
    pub fn normal_forms(&self) -> NormalForms {
        let np_cols: Vec<usize> = (0..self.dim).filter(|&c| !self.is_pivot(c)).collect();
        let mut np_pos = vec![usize::MAX; self.dim];
        for (k, &c) in np_cols.iter().enumerate() {
            np_pos[c] = k;
        }
        // Back substitution from the highest pivot down; reduced[r] holds the
        // fully reduced row r restricted to non-pivot columns.
        let mut order: Vec<usize> = (0..self.rows.len()).collect();
        order.sort_by_key(|&r| std::cmp::Reverse(self.pivot_cols[r]));
        let mut reduced: Vec<Option<Row>> = vec![None; self.rows.len()];
        for &r in &order {
            let row = &self.rows[r];
            let mut out = Row::zeros(self.field, np_cols.len());
            let mut cursor = self.pivot_cols[r] + 1;
            while let Some(c) = row.first_nonzero_from(cursor) {
                let coeff = row.get(c);
                let other = self.row_of_col[c];
                if other == NO_ROW {
                    let k = np_pos[c];
                    out.set(k, self.field.add(out.get(k), coeff));
                } else {
                    let red = reduced[other as usize]
                        .as_ref()
                        .expect("higher pivots are reduced first");
                    // NF(e_c) = -(tail of row c)
                    out.add_scaled(self.field.neg(coeff), red);
                }
                cursor = c + 1;
            }
            reduced[r] = Some(out);
        }
        NormalForms {
            field: self.field,
            np_cols,
            np_pos,
            row_of_col: self.row_of_col.clone(),
            reduced: reduced.into_iter().map(|r| r.expect("all rows reduced")).collect(),
        }
    }
}

/// Reduced row echelon form of a span of sparse vectors.
///
/// Every stored row is zero in the pivot columns of the others, so reducing
/// a sparse vector costs one row operation per pivot in its support. Suited to
/// spans of many sparse vectors with no bookkeeping of combinations.
#[derive(Debug, Clone)]
pub struct ReducedEchelon {
    field: PrimeField,
    dim: usize,
    rows: Vec<Row>,
    pivot_cols: Vec<usize>,
    row_of_col: Vec<u32>,
}

impl ReducedEchelon {
    pub fn new(field: PrimeField, dim: usize) -> Self {
        ReducedEchelon {
            field,
            dim,
            rows: Vec::new(),
            pivot_cols: Vec::new(),
            row_of_col: vec![NO_ROW; dim],
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Adds `v` to the span; returns whether the rank grew.
    pub fn insert(&mut self, v: &Sparse) -> bool {
        let field = self.field;
        let mut row = Row::from_sparse(field, self.dim, v);
        for &col in v.keys() {
            let r = self.row_of_col[col];
            if r != NO_ROW {
                let c = row.get(col);
                if c != 0 {
                    row.add_scaled(field.neg(c), &self.rows[r as usize]);
                }
            }
        }
        let Some(col) = row.first_nonzero_from(0) else {
            return false;
        };
        row.scale(field.inv(row.get(col)));
        for other in self.rows.iter_mut() {
            let c = other.get(col);
            if c != 0 {
                other.add_scaled(field.neg(c), &row);
            }
        }
        self.row_of_col[col] = self.rows.len() as u32;
        self.rows.push(row);
        self.pivot_cols.push(col);
        true
    }

    pub fn normal_forms(&self) -> NormalForms {
        let np_cols: Vec<usize> = (0..self.dim).filter(|&c| self.row_of_col[c] == NO_ROW).collect();
        let mut np_pos = vec![usize::MAX; self.dim];
        for (k, &c) in np_cols.iter().enumerate() {
            np_pos[c] = k;
        }
        let reduced = self
            .rows
            .iter()
            .map(|row| {
                let mut out = Row::zeros(self.field, np_cols.len());
                for (c, coeff) in row.nonzeros() {
                    if np_pos[c] != usize::MAX {
                        out.set(np_pos[c], coeff);
                    }
                }
                out
            })
            .collect();
        NormalForms {
            field: self.field,
            np_cols,
            np_pos,
            row_of_col: self.row_of_col.clone(),
            reduced,
        }
    }
}

/// Fast normal forms modulo a subspace, built by [`Echelon::normal_forms`].
#[derive(Debug, Clone)]
pub struct NormalForms {
    field: PrimeField,
    np_cols: Vec<usize>,
    np_pos: Vec<usize>,
    row_of_col: Vec<u32>,
    reduced: Vec<Row>,
}

impl NormalForms {
    /// Columns not used as pivots; the coordinates of every normal form.
    pub fn free_columns(&self) -> &[usize] {
        &self.np_cols
    }

    pub fn free_position(&self, col: usize) -> Option<usize> {
        let k = self.np_pos[col];
        (k != usize::MAX).then_some(k)
    }

    /// The unique representative of `v` modulo the subspace that is supported
    /// on free columns.
    pub fn normal_form(&self, v: &Sparse) -> Row {
        let mut out = Row::zeros(self.field, self.np_cols.len());
        for (&c, &coeff) in v {
            let r = self.row_of_col[c];
            if r == NO_ROW {
                let k = self.np_pos[c];
                out.set(k, self.field.add(out.get(k), coeff));
            } else {
                // e_c = row_c - (tail of row_c), and row_c is zero mod the subspace
                out.add_scaled(self.field.neg(coeff), &self.reduced[r as usize]);
            }
        }
        out
    }

    /// Coordinate `free_index` of the normal form of the unit vector `e_col`.
    pub fn unit_entry(&self, col: usize, free_index: usize) -> u32 {
        let r = self.row_of_col[col];
        if r == NO_ROW {
            u32::from(self.np_pos[col] == free_index)
        } else {
            self.field.neg(self.reduced[r as usize].get(free_index))
        }
    }
}

/// Rank of a family of dense vectors.
pub fn rank(field: PrimeField, dim: usize, vectors: &[Vec<u32>]) -> usize {
    let mut ech = Echelon::new(field, dim);
    for v in vectors {
        let mut row = Row::zeros(field, dim);
        for (i, &c) in v.iter().enumerate() {
            row.set(i, c % field.p());
        }
        ech.insert(row, None);
    }
    ech.rank()
}

/// Solves `sum_i c_i * vectors[i] = target`, returning some solution if one exists.
pub fn solve(field: PrimeField, dim: usize, vectors: &[Vec<u32>], target: &[u32]) -> Option<Vec<u32>> {
    let n = vectors.len();
    let mut ech = Echelon::new(field, dim);
    for (i, v) in vectors.iter().enumerate() {
        let mut row = Row::zeros(field, dim);
        for (j, &c) in v.iter().enumerate() {
            row.set(j, c % field.p());
        }
        let mut tag = Row::zeros(field, n.max(1));
        if n > 0 {
            tag.set(i, 1);
        }
        ech.insert(row, Some(tag));
    }
    let mut t = Row::zeros(field, dim);
    for (j, &c) in target.iter().enumerate() {
        t.set(j, c % field.p());
    }
    let mut acc = Row::zeros(field, n.max(1));
    ech.reduce(&mut t, Some(&mut acc));
    if !t.is_zero() {
        return None;
    }
    // target - sum(acc_i v_i) = 0, hence the solution is -acc.
    Some((0..n).map(|i| field.neg(acc.get(i))).collect())
}

/// Matrix product over `F_p` of dense row-major matrices.
pub fn matmul(field: PrimeField, a: &[Vec<u32>], b: &[Vec<u32>]) -> Vec<Vec<u32>> {
    let inner = b.len();
    let cols = b.first().map_or(0, Vec::len);
    a.iter()
        .map(|row| {
            (0..cols)
                .map(|j| (0..inner).fold(0, |acc, k| field.add(acc, field.mul(row[k], b[k][j]))))
                .collect()
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(p: u32) -> PrimeField {
        PrimeField::new(p).unwrap()
    }

    #[test]
    fn specialized_axpy_matches_generic() {
        for p in [3u32, 5, 7, 11] {
            let field = f(p);
            let a: Vec<u32> = (0..40).map(|i| (i * 7 + 3) % p).collect();
            let b: Vec<u32> = (0..40).map(|i| (i * i + 1) % p).collect();
            for s in 0..p {
                let mut row = Row::from_sparse(field, 40, &a.iter().copied().enumerate().collect());
                row.add_scaled(
                    s,
                    &Row::from_sparse(field, 40, &b.iter().copied().enumerate().collect()),
                );
                for i in 0..40 {
                    assert_eq!(row.get(i), field.add(a[i], field.mul(s, b[i])), "p = {p}, s = {s}");
                }
            }
        }
    }

    #[test]
    fn field_arithmetic() {
        let f5 = f(5);
        assert_eq!(f5.inv(2), 3);
        assert_eq!(f5.mul(4, 4), 1);
        assert_eq!(f5.sign(3), 4);
        assert!(PrimeField::new(4).is_err());
    }

    #[test]
    fn rank_of_dependent_family() {
        let vs = vec![vec![1, 1, 0], vec![0, 1, 1], vec![1, 0, 1]];
        assert_eq!(rank(f(2), 3, &vs), 2);
        assert_eq!(rank(f(3), 3, &vs), 3);
    }

    #[test]
    fn solve_recovers_combination() {
        let field = f(3);
        let vs = vec![vec![1, 2, 0], vec![0, 1, 1]];
        let target = vec![2, 0, 2]; // 2*v0 + 2*v1 = (2, 6, 2) = (2, 0, 2)
        let c = solve(field, 3, &vs, &target).unwrap();
        for j in 0..3 {
            let s = (0..2).fold(0, |acc, i| field.add(acc, field.mul(c[i], vs[i][j])));
            assert_eq!(s, target[j]);
        }
        assert!(solve(field, 3, &vs, &[1, 0, 0]).is_none());
    }

    #[test]
    fn dependent_insert_yields_kernel_vector() {
        let field = f(2);
        let cols = [vec![1u32, 1], vec![0, 1], vec![1, 0]];
        let mut ech = Echelon::new(field, 2);
        let mut kernel = None;
        for (i, c) in cols.iter().enumerate() {
            let mut row = Row::zeros(field, 2);
            c.iter().enumerate().for_each(|(j, &x)| row.set(j, x));
            let mut tag = Row::zeros(field, 3);
            tag.set(i, 1);
            if let Insert::Dependent(t) = ech.insert(row, Some(tag)) {
                kernel = t;
            }
        }
        assert_eq!(kernel.unwrap().nonzeros(), vec![(0, 1), (1, 1), (2, 1)]);
    }

    #[test]
    fn normal_forms_vanish_on_subspace() {
        let field = f(3);
        let mut ech = Echelon::new(field, 4);
        let gens: Vec<Sparse> = vec![
            [(0, 1), (2, 2)].into_iter().collect(),
            [(1, 1), (2, 1), (3, 1)].into_iter().collect(),
        ];
        for g in &gens {
            ech.insert(Row::from_sparse(field, 4, g), None);
        }
        let nf = ech.normal_forms();
        for g in &gens {
            assert!(nf.normal_form(g).is_zero());
        }
        let mut v: Sparse = [(2, 1)].into_iter().collect();
        let base = nf.normal_form(&v);
        add_scaled(field, &mut v, 2, &gens[0]);
        assert_eq!(nf.normal_form(&v), base);
        for col in 0..4 {
            let unit: Sparse = [(col, 1)].into_iter().collect();
            let row = nf.normal_form(&unit);
            for k in 0..nf.free_columns().len() {
                assert_eq!(row.get(k), nf.unit_entry(col, k));
            }
        }
    }

    #[test]
    fn normal_forms_follow_chained_pivots() {
        let field = f(3);
        let mut ech = Echelon::new(field, 3);
        ech.insert(
            Row::from_sparse(field, 3, &[(0, 1), (1, 1)].into_iter().collect()),
            None,
        );
        ech.insert(
            Row::from_sparse(field, 3, &[(1, 1), (2, 1)].into_iter().collect()),
            None,
        );
        let nf = ech.normal_forms();
        // e0 = -e1 = e2 modulo the span
        assert_eq!(nf.normal_form(&[(0, 1)].into_iter().collect()).get(0), 1);
        assert_eq!(nf.normal_form(&[(1, 1)].into_iter().collect()).get(0), 2);
    }
}
