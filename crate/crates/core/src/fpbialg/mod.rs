//! Truncated graded bialgebras over `F_p` with a component-weight grading.
//!
//! Weights are natural numbers truncated at a window `W`, or elements of a
//! finite commutative monoid given by its addition table. Products are
//! defined only when both the degree and the weight stay inside the
//! truncation. The comultiplication is diagonal in weight.

mod axioms;
mod formal;
mod frobenius;

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{add_scaled, add_term, PrimeField, Sparse};

pub use axioms::{check_axioms, AxiomReport, CheckOutcome};
pub use formal::{Monomial, Poly};
pub use frobenius::{
    colimit_along_frobenius, frobenius, frobenius_nilpotence, grouplikes, is_weakly_primitive, verify_phi_formula,
    ColimitDegree, ColimitReport, DegreeZeroClass, GrouplikeReport, NilpotenceEntry, NilpotenceReport, NilpotenceStage,
    PhiMethod, PhiVerdict,
};

/// A homogeneous or inhomogeneous linear combination of basis elements.
pub type Element = Sparse;

/// An element of `H ⊗ H`.
pub type Tensor2 = BTreeMap<(usize, usize), u32>;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BasisElement {
    pub name: String,
    pub degree: usize,
    pub weight: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "BialgebraData", into = "BialgebraData")]
pub struct GradedBialgebra {
    field: PrimeField,
    top: usize,
    window: usize,
    weight_table: Option<Vec<Vec<usize>>>,
    basis: Vec<BasisElement>,
    mult: BTreeMap<(usize, usize), Element>,
    comult: Vec<Vec<(usize, usize, u32)>>,
    unit: Element,
    counit: Vec<u32>,
}

#[derive(Serialize, Deserialize)]
struct BialgebraData {
    p: u32,
    #[serde(rename = "D")]
    top: usize,
    #[serde(rename = "W")]
    window: usize,
    basis: Vec<BasisElement>,
    mult: Vec<(usize, usize, Vec<(usize, i64)>)>,
    comult: Vec<(usize, Vec<(usize, usize, i64)>)>,
    unit: Vec<(usize, i64)>,
    counit: Vec<(usize, i64)>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    weight_table: Option<Vec<Vec<usize>>>,
}

impl TryFrom<BialgebraData> for GradedBialgebra {
    type Error = Error;

    fn try_from(d: BialgebraData) -> Result<Self> {
        let mut h = GradedBialgebra::new(d.p, d.top, d.window, d.basis, d.weight_table)?;
        let field = h.field;
        let n = h.dim();
        let check = |i: usize| -> Result<usize> {
            if i < n {
                Ok(i)
            } else {
                Err(Error::malformed(format!("basis index {i} out of range")))
            }
        };
        for (i, j, terms) in d.mult {
            let mut v = Element::new();
            for (k, c) in terms {
                add_term(field, &mut v, check(k)?, field.reduce(c));
            }
            h.set_product(check(i)?, check(j)?, v);
        }
        for (i, terms) in d.comult {
            let mut t = Vec::new();
            for (j, k, c) in terms {
                t.push((check(j)?, check(k)?, field.reduce(c)));
            }
            h.set_coproduct(check(i)?, t);
        }
        let mut unit = Element::new();
        for (i, c) in d.unit {
            add_term(field, &mut unit, check(i)?, field.reduce(c));
        }
        h.set_unit(unit);
        let mut counit = vec![0; n];
        for (i, c) in d.counit {
            counit[check(i)?] = field.reduce(c);
        }
        h.set_counit(counit);
        Ok(h)
    }
}

impl From<GradedBialgebra> for BialgebraData {
    fn from(h: GradedBialgebra) -> Self {
        let lift = |v: &Element| v.iter().map(|(&k, &c)| (k, i64::from(c))).collect::<Vec<_>>();
        BialgebraData {
            p: h.field.p(),
            top: h.top,
            window: h.window,
            mult: h.mult.iter().map(|(&(i, j), v)| (i, j, lift(v))).collect(),
            comult: h
                .comult
                .iter()
                .enumerate()
                .map(|(i, t)| (i, t.iter().map(|&(j, k, c)| (j, k, i64::from(c))).collect()))
                .collect(),
            unit: lift(&h.unit),
            counit: h
                .counit
                .iter()
                .enumerate()
                .filter(|(_, &c)| c != 0)
                .map(|(i, &c)| (i, i64::from(c)))
                .collect(),
            weight_table: h.weight_table,
            basis: h.basis,
        }
    }
}

impl GradedBialgebra {
    /// An empty structure on the given basis; fill in with the setters.
    pub fn new(
        p: u32,
        top: usize,
        window: usize,
        basis: Vec<BasisElement>,
        weight_table: Option<Vec<Vec<usize>>>,
    ) -> Result<Self> {
        let field = PrimeField::new(p)?;
        if let Some(t) = &weight_table {
            let m = t.len();
            if m == 0 || t.iter().any(|r| r.len() != m || r.iter().any(|&x| x >= m)) {
                return Err(Error::malformed("weight table must be a square table on 0..size"));
            }
        }
        let window = match &weight_table {
            Some(t) => t.len() - 1,
            None => window,
        };
        for b in &basis {
            if b.degree > top {
                return Err(Error::malformed(format!("{} has degree above D = {top}", b.name)));
            }
            if b.weight > window {
                return Err(Error::malformed(format!("{} has weight above W = {window}", b.name)));
            }
        }
        let n = basis.len();
        Ok(GradedBialgebra {
            field,
            top,
            window,
            weight_table,
            basis,
            mult: BTreeMap::new(),
            comult: vec![Vec::new(); n],
            unit: Element::new(),
            counit: vec![0; n],
        })
    }

    pub fn set_product(&mut self, i: usize, j: usize, value: Element) {
        if value.is_empty() {
            self.mult.remove(&(i, j));
        } else {
            self.mult.insert((i, j), value);
        }
    }

    pub fn set_coproduct(&mut self, i: usize, terms: Vec<(usize, usize, u32)>) {
        let mut t = Tensor2::new();
        for (j, k, c) in terms {
            let e = t.entry((j, k)).or_insert(0);
            *e = self.field.add(*e, c);
        }
        self.comult[i] = t
            .into_iter()
            .filter(|&(_, c)| c != 0)
            .map(|((j, k), c)| (j, k, c))
            .collect();
    }

    pub fn set_unit(&mut self, unit: Element) {
        self.unit = unit;
    }

    pub fn set_counit(&mut self, counit: Vec<u32>) {
        self.counit = counit;
    }

    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("bialgebra serializes")
    }

    pub fn p(&self) -> u32 {
        self.field.p()
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    /// Degree truncation `D`.
    pub fn top_degree(&self) -> usize {
        self.top
    }

    /// Weight window `W`.
    pub fn window(&self) -> usize {
        self.window
    }

    pub fn weight_table(&self) -> Option<&[Vec<usize>]> {
        self.weight_table.as_deref()
    }

    pub fn basis(&self) -> &[BasisElement] {
        &self.basis
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn degree(&self, i: usize) -> usize {
        self.basis[i].degree
    }

    pub fn weight(&self, i: usize) -> usize {
        self.basis[i].weight
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.basis.iter().position(|b| b.name == name)
    }

    pub fn unit(&self) -> &Element {
        &self.unit
    }

    /// Index of the unit when it is a single basis element.
    pub fn unit_index(&self) -> Option<usize> {
        match self.unit.iter().collect::<Vec<_>>()[..] {
            [(&i, &1)] => Some(i),
            _ => None,
        }
    }

    pub fn counit_of(&self, i: usize) -> u32 {
        self.counit[i]
    }

    /// `a + b` in the weight monoid, or the untruncated sum as `Err` when it
    /// leaves the window.
    pub fn add_weights(&self, a: usize, b: usize) -> std::result::Result<usize, usize> {
        match &self.weight_table {
            Some(t) => Ok(t[a][b]),
            None if a + b <= self.window => Ok(a + b),
            None => Err(a + b),
        }
    }

    /// `m · w` in the weight monoid (`Err` as in [`Self::add_weights`]).
    pub fn scale_weight(&self, m: usize, w: usize) -> std::result::Result<usize, usize> {
        match &self.weight_table {
            Some(t) => {
                let zero = self.zero_weight();
                Ok((0..m).fold(zero, |acc, _| t[acc][w]))
            }
            None if m * w <= self.window => Ok(m * w),
            None => Err(m * w),
        }
    }

    /// The neutral weight: `0`, or the identity of the weight table.
    pub fn zero_weight(&self) -> usize {
        match &self.weight_table {
            Some(t) => (0..t.len()).find(|&e| (0..t.len()).all(|x| t[e][x] == x)).unwrap_or(0),
            None => 0,
        }
    }

    /// `(−1)^{|i||j|}`, trivial when `p = 2`.
    pub fn koszul(&self, i: usize, j: usize) -> u32 {
        self.field.sign(self.degree(i) * self.degree(j))
    }

    /// Whether `i · j` lies inside the truncation.
    pub fn product_defined(&self, i: usize, j: usize) -> bool {
        self.degree(i) + self.degree(j) <= self.top && self.add_weights(self.weight(i), self.weight(j)).is_ok()
    }

    fn check_product(&self, i: usize, j: usize) -> Result<()> {
        let degree = self.degree(i) + self.degree(j);
        if degree > self.top {
            return Err(Error::DegreeOverflow { degree, top: self.top });
        }
        if let Err(weight) = self.add_weights(self.weight(i), self.weight(j)) {
            return Err(Error::Truncation {
                weight,
                window: self.window,
            });
        }
        Ok(())
    }

    pub fn mul_basis(&self, i: usize, j: usize) -> Result<Element> {
        self.check_product(i, j)?;
        Ok(self.mult.get(&(i, j)).cloned().unwrap_or_default())
    }

    pub fn mul(&self, x: &Element, y: &Element) -> Result<Element> {
        let mut out = Element::new();
        for (&i, &a) in x {
            for (&j, &b) in y {
                add_scaled(self.field, &mut out, self.field.mul(a, b), &self.mul_basis(i, j)?);
            }
        }
        Ok(out)
    }

    pub fn comul_basis(&self, i: usize) -> &[(usize, usize, u32)] {
        &self.comult[i]
    }

    pub fn comul(&self, x: &Element) -> Tensor2 {
        let mut out = Tensor2::new();
        for (&i, &a) in x {
            for &(j, k, c) in &self.comult[i] {
                add_tensor(self.field, &mut out, (j, k), self.field.mul(a, c));
            }
        }
        out
    }

    pub fn counit(&self, x: &Element) -> u32 {
        x.iter().fold(0, |acc, (&i, &c)| {
            self.field.add(acc, self.field.mul(c, self.counit[i]))
        })
    }

    /// `(degree, weight)` of a nonzero homogeneous element.
    pub fn homogeneity(&self, x: &Element) -> Result<(usize, usize)> {
        let mut it = x.keys();
        let first = *it
            .next()
            .ok_or_else(|| Error::malformed("zero element has no degree"))?;
        let dw = (self.degree(first), self.weight(first));
        if it.any(|&i| (self.degree(i), self.weight(i)) != dw) {
            return Err(Error::malformed("element is not homogeneous"));
        }
        Ok(dw)
    }

    /// Basis indices of a `(degree, weight)` slice.
    pub fn slice(&self, degree: usize, weight: usize) -> Vec<usize> {
        (0..self.dim())
            .filter(|&i| self.degree(i) == degree && self.weight(i) == weight)
            .collect()
    }

    /// Distinct weights present in the basis, in increasing order.
    pub fn weights(&self) -> Vec<usize> {
        let mut w: Vec<usize> = self.basis.iter().map(|b| b.weight).collect();
        w.sort_unstable();
        w.dedup();
        w
    }

    /// Parses an element written as `name` or `c*name + c*name`.
    pub fn parse_element(&self, text: &str) -> Result<Element> {
        let mut out = Element::new();
        for term in text.split('+').map(str::trim).filter(|t| !t.is_empty()) {
            let (coeff, name) = match term.split_once('*') {
                Some((c, n)) => (
                    c.trim()
                        .parse::<i64>()
                        .map_err(|_| Error::malformed(format!("bad coefficient in `{term}`")))?,
                    n.trim(),
                ),
                None => (1, term),
            };
            let i = self
                .index_of(name)
                .ok_or_else(|| Error::malformed(format!("unknown basis element `{name}`")))?;
            add_term(self.field, &mut out, i, self.field.reduce(coeff));
        }
        Ok(out)
    }

    pub fn format_element(&self, x: &Element) -> String {
        if x.is_empty() {
            return "0".into();
        }
        x.iter()
            .map(|(&i, &c)| {
                if c == 1 {
                    self.basis[i].name.clone()
                } else {
                    format!("{c}*{}", self.basis[i].name)
                }
            })
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

pub(crate) fn add_tensor(field: PrimeField, t: &mut Tensor2, key: (usize, usize), c: u32) {
    if c == 0 {
        return;
    }
    let e = t.entry(key).or_insert(0);
    *e = field.add(*e, c);
    if *e == 0 {
        t.remove(&key);
    }
}

/// `F_p` in degree 0, weight 0.
pub fn trivial_bialgebra(p: u32) -> Result<GradedBialgebra> {
    let basis = vec![BasisElement {
        name: "1".into(),
        degree: 0,
        weight: 0,
    }];
    let mut h = GradedBialgebra::new(p, 0, 0, basis, None)?;
    h.set_product(0, 0, Element::from([(0, 1)]));
    h.set_coproduct(0, vec![(0, 0, 1)]);
    h.set_unit(Element::from([(0, 1)]));
    h.set_counit(vec![1]);
    Ok(h)
}

/// Monoid algebra `F_p[M]` of a finite commutative monoid, in degree 0 with
/// each element as its own weight.
pub fn monoid_algebra(table: &[Vec<usize>], p: u32) -> Result<GradedBialgebra> {
    let n = table.len();
    let basis = (0..n)
        .map(|m| BasisElement {
            name: format!("[{m}]"),
            degree: 0,
            weight: m,
        })
        .collect();
    let mut h = GradedBialgebra::new(p, 0, n.saturating_sub(1), basis, Some(table.to_vec()))?;
    let zero = h.zero_weight();
    for a in 0..n {
        for b in 0..n {
            h.set_product(a, b, Element::from([(table[a][b], 1)]));
        }
        h.set_coproduct(a, vec![(a, a, 1)]);
    }
    h.set_unit(Element::from([(zero, 1)]));
    h.set_counit(vec![1; n]);
    Ok(h)
}

fn binomial_mod(field: PrimeField, n: usize, k: usize) -> u32 {
    let mut row = vec![1u32];
    for _ in 0..n {
        let mut next = vec![1u32; row.len() + 1];
        for i in 1..row.len() {
            next[i] = field.add(row[i - 1], row[i]);
        }
        row = next;
    }
    row.get(k).copied().unwrap_or(0)
}

/// `F_p[y]` with `y` primitive of even degree `gen_degree`, truncated at `D`.
pub fn polynomial_bialgebra(p: u32, gen_degree: usize, top: usize) -> Result<GradedBialgebra> {
    if gen_degree == 0 || gen_degree % 2 == 1 {
        return Err(Error::malformed("polynomial generator must have positive even degree"));
    }
    let field = PrimeField::new(p)?;
    let count = top / gen_degree + 1;
    let basis = (0..count)
        .map(|k| BasisElement {
            name: match k {
                0 => "1".into(),
                1 => "y".into(),
                _ => format!("y^{k}"),
            },
            degree: k * gen_degree,
            weight: 0,
        })
        .collect();
    let mut h = GradedBialgebra::new(p, top, 0, basis, None)?;
    for a in 0..count {
        for b in 0..count - a {
            h.set_product(a, b, Element::from([(a + b, 1)]));
        }
        let terms = (0..=a).map(|i| (i, a - i, binomial_mod(field, a, i))).collect();
        h.set_coproduct(a, terms);
    }
    h.set_unit(Element::from([(0, 1)]));
    let mut counit = vec![0; count];
    counit[0] = 1;
    h.set_counit(counit);
    Ok(h)
}

/// `Λ[y]` with `y` primitive of odd degree `gen_degree`.
pub fn exterior_bialgebra(p: u32, gen_degree: usize) -> Result<GradedBialgebra> {
    if gen_degree.is_multiple_of(2) {
        return Err(Error::malformed("exterior generator must have odd degree"));
    }
    let basis = vec![
        BasisElement {
            name: "1".into(),
            degree: 0,
            weight: 0,
        },
        BasisElement {
            name: "y".into(),
            degree: gen_degree,
            weight: 0,
        },
    ];
    let mut h = GradedBialgebra::new(p, 2 * gen_degree, 0, basis, None)?;
    h.set_product(0, 0, Element::from([(0, 1)]));
    h.set_product(0, 1, Element::from([(1, 1)]));
    h.set_product(1, 0, Element::from([(1, 1)]));
    h.set_coproduct(0, vec![(0, 0, 1)]);
    h.set_coproduct(1, vec![(1, 0, 1), (0, 1, 1)]);
    h.set_unit(Element::from([(0, 1)]));
    h.set_counit(vec![1, 0]);
    Ok(h)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn json_round_trip() {
        let h = polynomial_bialgebra(3, 2, 6).unwrap();
        let back = GradedBialgebra::from_json(&h.to_json()).unwrap();
        assert_eq!(h, back);
        let m = monoid_algebra(&[vec![0, 1], vec![1, 1]], 2).unwrap();
        assert_eq!(m, GradedBialgebra::from_json(&m.to_json()).unwrap());
    }

    #[test]
    fn malformed_files_are_rejected() {
        let bad = r#"{"p":4,"D":0,"W":0,"basis":[],"mult":[],"comult":[],"unit":[],"counit":[]}"#;
        assert!(GradedBialgebra::from_json(bad).is_err());
        let bad = r#"{"p":2,"D":0,"W":0,"basis":[{"name":"1","degree":0,"weight":0}],
            "mult":[[0,0,[[3,1]]]],"comult":[],"unit":[],"counit":[]}"#;
        assert!(GradedBialgebra::from_json(bad).is_err());
    }

    #[test]
    fn truncation_errors() {
        let h = polynomial_bialgebra(2, 2, 4).unwrap();
        assert!(matches!(
            h.mul_basis(1, 2),
            Err(Error::DegreeOverflow { degree: 6, top: 4 })
        ));
        assert_eq!(h.mul_basis(1, 1).unwrap(), Element::from([(2, 1)]));
    }

    #[test]
    fn parse_and_format() {
        let h = polynomial_bialgebra(3, 2, 4).unwrap();
        let x = h.parse_element("2*y + 1").unwrap();
        assert_eq!(h.format_element(&x), "1 + 2*y");
        assert!(h.parse_element("z").is_err());
    }
}
