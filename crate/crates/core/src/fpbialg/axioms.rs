use std::collections::BTreeMap;

use serde::Serialize;

use super::{add_tensor, Element, GradedBialgebra, Tensor2};

const MAX_WITNESSES: usize = 5;

/// Result of one family of checks.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CheckOutcome {
    pub name: &'static str,
    pub checked: usize,
    pub failed: usize,
    /// The first few offending cases.
    pub witnesses: Vec<String>,
}

impl CheckOutcome {
    fn new(name: &'static str) -> Self {
        CheckOutcome {
            name,
            checked: 0,
            failed: 0,
            witnesses: Vec::new(),
        }
    }

    fn record(&mut self, ok: bool, witness: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok {
            self.failed += 1;
            if self.witnesses.len() < MAX_WITNESSES {
                self.witnesses.push(witness());
            }
        }
    }

    pub fn passed(&self) -> bool {
        self.failed == 0
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AxiomReport {
    pub passed: bool,
    pub checks: Vec<CheckOutcome>,
}

impl AxiomReport {
    pub fn check(&self, name: &str) -> Option<&CheckOutcome> {
        self.checks.iter().find(|c| c.name == name)
    }
}

type Tensor3 = BTreeMap<(usize, usize, usize), u32>;

/// Verifies every bialgebra axiom on all basis pairs and triples that stay
/// inside the truncation.
pub fn check_axioms(h: &GradedBialgebra) -> AxiomReport {
    let n = h.dim();
    let f = h.field();
    let name = |i: usize| h.basis()[i].name.clone();
    let unit_vec = |i: usize| Element::from([(i, 1)]);

    let mut unit = CheckOutcome::new("unit");
    let unit_ok = match h.homogeneity(h.unit()) {
        Ok((d, w)) => d == 0 && w == h.zero_weight(),
        Err(_) => false,
    };
    unit.record(unit_ok, || {
        "unit is not a nonzero element of degree 0 and neutral weight".into()
    });
    if unit_ok {
        for i in 0..n {
            let x = unit_vec(i);
            let left = h.mul(h.unit(), &x);
            let right = h.mul(&x, h.unit());
            unit.record(
                left.as_ref().ok() == Some(&x) && right.as_ref().ok() == Some(&x),
                || format!("1·{0} or {0}·1 differs from {0}", name(i)),
            );
        }
    }

    let mut grading = CheckOutcome::new("multiplication grading");
    for i in 0..n {
        for j in 0..n {
            if !h.product_defined(i, j) {
                continue;
            }
            let w = h.add_weights(h.weight(i), h.weight(j)).ok();
            let prod = h.mul_basis(i, j).unwrap_or_default();
            let ok = prod
                .keys()
                .all(|&k| h.degree(k) == h.degree(i) + h.degree(j) && Some(h.weight(k)) == w);
            grading.record(ok, || {
                format!("{}·{} leaves its (degree, weight) slice", name(i), name(j))
            });
        }
    }

    let mut assoc = CheckOutcome::new("associativity");
    for i in 0..n {
        for j in 0..n {
            if !h.product_defined(i, j) {
                continue;
            }
            for k in 0..n {
                let w = h.add_weights(h.weight(i), h.weight(j)).ok();
                let defined = h.degree(i) + h.degree(j) + h.degree(k) <= h.top_degree()
                    && w.is_some_and(|w| h.add_weights(w, h.weight(k)).is_ok());
                if !defined {
                    continue;
                }
                let ij = h.mul_basis(i, j).unwrap_or_default();
                let jk = h.mul(&unit_vec(j), &unit_vec(k));
                let lhs = h.mul(&ij, &unit_vec(k));
                let rhs = jk.and_then(|jk| h.mul(&unit_vec(i), &jk));
                let ok = matches!((&lhs, &rhs), (Ok(a), Ok(b)) if a == b);
                assoc.record(ok, || {
                    format!(
                        "({}·{})·{} ≠ {}·({}·{})",
                        name(i),
                        name(j),
                        name(k),
                        name(i),
                        name(j),
                        name(k)
                    )
                });
            }
        }
    }

    let mut comm = CheckOutcome::new("graded commutativity");
    for i in 0..n {
        for j in i..n {
            if !h.product_defined(i, j) {
                continue;
            }
            let ij = h.mul_basis(i, j).unwrap_or_default();
            let mut ji = h.mul_basis(j, i).unwrap_or_default();
            let s = h.koszul(i, j);
            ji.values_mut().for_each(|c| *c = f.mul(*c, s));
            comm.record(ij == ji, || {
                format!("{}·{} ≠ ±{}·{}", name(i), name(j), name(j), name(i))
            });
        }
    }

    let mut co_grading = CheckOutcome::new("comultiplication grading");
    for i in 0..n {
        let ok = h.comul_basis(i).iter().all(|&(j, k, _)| {
            h.degree(j) + h.degree(k) == h.degree(i) && h.weight(j) == h.weight(i) && h.weight(k) == h.weight(i)
        });
        co_grading.record(ok, || format!("Δ{} has a term outside its degree or weight", name(i)));
    }

    let mut counit = CheckOutcome::new("counit");
    for i in 0..n {
        let mut left = Element::new();
        let mut right = Element::new();
        for &(j, k, c) in h.comul_basis(i) {
            crate::linalg::add_term(f, &mut left, k, f.mul(c, h.counit_of(j)));
            crate::linalg::add_term(f, &mut right, j, f.mul(c, h.counit_of(k)));
        }
        let x = unit_vec(i);
        counit.record(left == x && right == x, || {
            format!("(ε⊗id)Δ{0} or (id⊗ε)Δ{0} differs from {0}", name(i))
        });
        if h.degree(i) > 0 {
            counit.record(h.counit_of(i) == 0, || format!("ε({}) ≠ 0 in positive degree", name(i)));
        }
    }

    let mut coassoc = CheckOutcome::new("coassociativity");
    for i in 0..n {
        let mut lhs = Tensor3::new();
        let mut rhs = Tensor3::new();
        for &(j, k, c) in h.comul_basis(i) {
            for &(a, b, d) in h.comul_basis(j) {
                add3(h, &mut lhs, (a, b, k), f.mul(c, d));
            }
            for &(a, b, d) in h.comul_basis(k) {
                add3(h, &mut rhs, (j, a, b), f.mul(c, d));
            }
        }
        coassoc.record(lhs == rhs, || format!("(Δ⊗id)Δ{0} ≠ (id⊗Δ)Δ{0}", name(i)));
    }

    let mut cocomm = CheckOutcome::new("graded cocommutativity");
    for i in 0..n {
        let delta: Tensor2 = h.comul(&unit_vec(i));
        let mut twisted = Tensor2::new();
        for (&(j, k), &c) in &delta {
            add_tensor(f, &mut twisted, (k, j), f.mul(c, h.koszul(j, k)));
        }
        cocomm.record(delta == twisted, || format!("τΔ{0} ≠ Δ{0}", name(i)));
    }

    let mut compat = CheckOutcome::new("bialgebra compatibility");
    let mut counit_mult = CheckOutcome::new("counit multiplicativity");
    counit_mult.record(h.counit(h.unit()) == 1, || "ε(1) ≠ 1".into());
    let mut unit_delta = Tensor2::new();
    for (&a, &c) in h.unit() {
        for (&b, &d) in h.unit() {
            add_tensor(f, &mut unit_delta, (a, b), f.mul(c, d));
        }
    }
    compat.record(h.comul(h.unit()) == unit_delta, || "Δ(1) ≠ 1⊗1".into());
    for i in 0..n {
        for j in 0..n {
            if !h.product_defined(i, j) {
                continue;
            }
            let prod = h.mul_basis(i, j).unwrap_or_default();
            let lhs = h.comul(&prod);
            let rhs = product_of_coproducts(h, i, j);
            let ok = matches!(&rhs, Ok(r) if *r == lhs);
            compat.record(ok, || format!("Δ({0}·{1}) ≠ Δ{0}·Δ{1}", name(i), name(j)));
            let eps = h.counit(&prod);
            counit_mult.record(eps == f.mul(h.counit_of(i), h.counit_of(j)), || {
                format!("ε({0}·{1}) ≠ ε({0})ε({1})", name(i), name(j))
            });
        }
    }

    let checks = vec![
        unit,
        grading,
        assoc,
        comm,
        co_grading,
        counit,
        coassoc,
        cocomm,
        compat,
        counit_mult,
    ];
    AxiomReport {
        passed: checks.iter().all(CheckOutcome::passed),
        checks,
    }
}

fn add3(h: &GradedBialgebra, t: &mut Tensor3, key: (usize, usize, usize), c: u32) {
    if c == 0 {
        return;
    }
    let f = h.field();
    let e = t.entry(key).or_insert(0);
    *e = f.add(*e, c);
    if *e == 0 {
        t.remove(&key);
    }
}

/// `Δ(eᵢ)·Δ(eⱼ)` in `H ⊗ H` with `(a⊗b)(c⊗d) = (−1)^{|b||c|} ac ⊗ bd`.
pub(crate) fn product_of_coproducts(h: &GradedBialgebra, i: usize, j: usize) -> crate::error::Result<Tensor2> {
    let f = h.field();
    let mut out = Tensor2::new();
    for &(a, b, c) in h.comul_basis(i) {
        for &(x, y, d) in h.comul_basis(j) {
            let left = h.mul_basis(a, x)?;
            let right = h.mul_basis(b, y)?;
            let coeff = f.mul(f.mul(c, d), h.koszul(b, x));
            for (&u, &cu) in &left {
                for (&v, &cv) in &right {
                    add_tensor(f, &mut out, (u, v), f.mul(coeff, f.mul(cu, cv)));
                }
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fpbialg::{exterior_bialgebra, monoid_algebra, polynomial_bialgebra, trivial_bialgebra};

    #[test]
    fn standard_examples_pass() {
        assert!(check_axioms(&trivial_bialgebra(2).unwrap()).passed);
        assert!(check_axioms(&trivial_bialgebra(5).unwrap()).passed);
        for p in [2, 3, 5] {
            let r = check_axioms(&polynomial_bialgebra(p, 2, 4).unwrap());
            assert!(r.passed, "{r:?}");
            assert!(check_axioms(&exterior_bialgebra(p, 1).unwrap()).passed);
        }
        let m = monoid_algebra(&[vec![0, 1], vec![1, 1]], 2).unwrap();
        assert!(check_axioms(&m).passed);
    }

    #[test]
    fn corrupted_constant_is_located() {
        let mut h = polynomial_bialgebra(3, 2, 4).unwrap();
        h.set_coproduct(2, vec![(2, 0, 1), (1, 1, 1), (0, 2, 1)]);
        let r = check_axioms(&h);
        assert!(!r.passed);
        let compat = r.check("bialgebra compatibility").unwrap();
        assert!(!compat.passed());
        assert!(compat.witnesses.iter().any(|w| w.contains("Δ(y·y)")), "{compat:?}");
    }

    #[test]
    fn odd_square_breaks_commutativity_for_odd_p() {
        let basis = ["1", "y", "y2"]
            .iter()
            .enumerate()
            .map(|(d, n)| crate::fpbialg::BasisElement {
                name: n.to_string(),
                degree: d,
                weight: 0,
            })
            .collect();
        let mut h = GradedBialgebra::new(3, 2, 0, basis, None).unwrap();
        for (i, j) in [(0, 0), (0, 1), (1, 0), (0, 2), (2, 0), (1, 1)] {
            h.set_product(i, j, Element::from([(i + j, 1)]));
        }
        h.set_unit(Element::from([(0, 1)]));
        h.set_counit(vec![1, 0, 0]);
        let r = check_axioms(&h);
        let comm = r.check("graded commutativity").unwrap();
        assert_eq!(comm.failed, 1);
        assert!(comm.witnesses[0].starts_with("y·y"));
    }
}
