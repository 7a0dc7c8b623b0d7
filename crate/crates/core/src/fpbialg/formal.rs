//! The free graded-commutative algebra `Sym(H)` on the basis of a truncated
//! bialgebra, with the comultiplication extended multiplicatively.
//!
//! Evaluation `Sym(H) → H` is a bialgebra map wherever it is defined, so an
//! identity that holds formally holds in `H`, including beyond the weight
//! window where `H` has no data. The unit basis element is identified with
//! the empty monomial.

use std::collections::{BTreeMap, HashMap};

use crate::error::{Error, Result};

use super::{Element, GradedBialgebra};

/// Sorted generator indices.
pub type Monomial = Vec<usize>;

/// A formal polynomial: monomial ↦ nonzero coefficient.
pub type Poly = BTreeMap<Monomial, u32>;

type PolyPair = BTreeMap<(Monomial, Monomial), u32>;

pub(crate) struct Formal<'a> {
    h: &'a GradedBialgebra,
    unit: Option<usize>,
    phi_memo: HashMap<(usize, Monomial), Poly>,
}

impl<'a> Formal<'a> {
    pub(crate) fn new(h: &'a GradedBialgebra) -> Self {
        Formal {
            h,
            unit: h.unit_index(),
            phi_memo: HashMap::new(),
        }
    }

    fn odd(&self, g: usize) -> bool {
        self.h.p() != 2 && self.h.degree(g) % 2 == 1
    }

    /// Sorts `factors` into a monomial, returning the Koszul sign, or `None`
    /// when an odd generator repeats (odd `p`).
    fn canonical(&self, mut factors: Vec<usize>) -> Option<(Monomial, u32)> {
        if let Some(u) = self.unit {
            factors.retain(|&g| g != u);
        }
        let mut swaps = 0usize;
        for i in 0..factors.len() {
            for j in i + 1..factors.len() {
                if factors[j] < factors[i] && self.odd(factors[i]) && self.odd(factors[j]) {
                    swaps += 1;
                }
            }
        }
        factors.sort_unstable();
        if factors.windows(2).any(|w| w[0] == w[1] && self.odd(w[0])) {
            return None;
        }
        Some((factors, self.h.field().sign(swaps)))
    }

    pub(crate) fn degree(&self, m: &[usize]) -> usize {
        m.iter().map(|&g| self.h.degree(g)).sum()
    }

    fn add(&self, p: &mut Poly, m: Monomial, c: u32) {
        let f = self.h.field();
        if c == 0 {
            return;
        }
        let e = p.entry(m.clone()).or_insert(0);
        *e = f.add(*e, c);
        if *e == 0 {
            p.remove(&m);
        }
    }

    pub(crate) fn from_element(&self, x: &Element) -> Poly {
        let mut out = Poly::new();
        for (&i, &c) in x {
            if let Some((m, s)) = self.canonical(vec![i]) {
                self.add(&mut out, m, self.h.field().mul(c, s));
            }
        }
        out
    }

    pub(crate) fn mul(&self, x: &Poly, y: &Poly) -> Poly {
        let f = self.h.field();
        let mut out = Poly::new();
        for (a, &ca) in x {
            for (b, &cb) in y {
                let mut factors = a.clone();
                factors.extend_from_slice(b);
                if let Some((m, s)) = self.canonical(factors) {
                    self.add(&mut out, m, f.mul(f.mul(ca, cb), s));
                }
            }
        }
        out
    }

    pub(crate) fn scale(&self, x: &Poly, c: u32) -> Poly {
        let f = self.h.field();
        x.iter()
            .filter_map(|(m, &v)| {
                let v = f.mul(v, c);
                (v != 0).then(|| (m.clone(), v))
            })
            .collect()
    }

    pub(crate) fn sub(&self, x: &Poly, y: &Poly) -> Poly {
        let f = self.h.field();
        let mut out = x.clone();
        for (m, &c) in y {
            self.add(&mut out, m.clone(), f.neg(c));
        }
        out
    }

    /// `Δ` of a monomial in `Sym ⊗ Sym`, with `(a⊗b)(c⊗d) = (−1)^{|b||c|} ac⊗bd`.
    fn coproduct(&self, m: &[usize]) -> PolyPair {
        let f = self.h.field();
        let mut acc = PolyPair::from([((Vec::new(), Vec::new()), 1)]);
        for &g in m {
            let mut next = PolyPair::new();
            for ((a, b), &c) in &acc {
                for &(j, k, d) in self.h.comul_basis(g) {
                    let Some((left, s1)) = self.canonical([a.as_slice(), &[j]].concat()) else {
                        continue;
                    };
                    let Some((right, s2)) = self.canonical([b.as_slice(), &[k]].concat()) else {
                        continue;
                    };
                    let twist = f.sign(self.degree(b) * self.h.degree(j));
                    let coeff = f.mul(f.mul(c, d), f.mul(f.mul(s1, s2), twist));
                    if coeff != 0 {
                        let key = (left, right);
                        let e = next.entry(key.clone()).or_insert(0);
                        *e = f.add(*e, coeff);
                        if *e == 0 {
                            next.remove(&key);
                        }
                    }
                }
            }
            acc = next;
        }
        acc
    }

    /// `Φ_m = μ ∘ (id ⊗ Φ_{m−1}) ∘ Δ`, with `Φ_1 = id` and `Φ_0 = ηε`.
    pub(crate) fn phi_monomial(&mut self, m: usize, mono: &Monomial) -> Poly {
        if m == 1 {
            return Poly::from([(mono.clone(), 1)]);
        }
        if m == 0 {
            let f = self.h.field();
            let eps = mono.iter().fold(1, |acc, &g| f.mul(acc, self.h.counit_of(g)));
            return if eps == 0 {
                Poly::new()
            } else {
                Poly::from([(Vec::new(), eps)])
            };
        }
        let key = (m, mono.clone());
        if let Some(hit) = self.phi_memo.get(&key) {
            return hit.clone();
        }
        let f = self.h.field();
        let mut out = Poly::new();
        for ((a, b), c) in self.coproduct(mono) {
            let rest = self.phi_monomial(m - 1, &b);
            let term = self.mul(&Poly::from([(a, 1)]), &rest);
            for (mm, v) in term {
                self.add(&mut out, mm, f.mul(c, v));
            }
        }
        self.phi_memo.insert(key, out.clone());
        out
    }

    pub(crate) fn phi(&mut self, m: usize, x: &Poly) -> Poly {
        let f = self.h.field();
        let mut out = Poly::new();
        for (mono, &c) in x {
            for (mm, v) in self.phi_monomial(m, mono) {
                self.add(&mut out, mm, f.mul(c, v));
            }
        }
        out
    }

    pub(crate) fn power(&self, x: &Poly, k: usize) -> Poly {
        (0..k).fold(Poly::from([(Vec::new(), 1)]), |acc, _| self.mul(&acc, x))
    }

    /// Untruncated weight of a monomial; `Err` carries nothing for table weights
    /// since those never leave the window.
    pub(crate) fn weight(&self, m: &[usize]) -> usize {
        match self.h.weight_table() {
            Some(t) => m.iter().fold(self.h.zero_weight(), |acc, &g| t[acc][self.h.weight(g)]),
            None => m.iter().map(|&g| self.h.weight(g)).sum(),
        }
    }

    /// Evaluates a polynomial in `H`; fails when a term with nonzero
    /// coefficient leaves the truncation.
    pub(crate) fn evaluate(&self, x: &Poly) -> Result<Element> {
        let h = self.h;
        let f = h.field();
        let mut out = Element::new();
        for (mono, &c) in x {
            let weight = self.weight(mono);
            if h.weight_table().is_none() && weight > h.window() {
                return Err(Error::Truncation {
                    weight,
                    window: h.window(),
                });
            }
            let degree = self.degree(mono);
            if degree > h.top_degree() {
                return Err(Error::DegreeOverflow {
                    degree,
                    top: h.top_degree(),
                });
            }
            let mut value = h.unit().clone();
            for &g in mono {
                value = h.mul(&value, &Element::from([(g, 1)]))?;
            }
            crate::linalg::add_scaled(f, &mut out, c, &value);
        }
        Ok(out)
    }
}
