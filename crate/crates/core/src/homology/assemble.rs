use std::sync::Arc;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::fpbialg::{BasisElement, Element, GradedBialgebra};
use crate::group::FiniteGroup;
use crate::linalg::add_term;
use crate::perm::{PermGroup, Permutation};

use super::basis::HomologyBasis;
use super::products::{aw_coproduct, shuffle_product};

struct Component {
    perms: Vec<Permutation>,
    basis: Arc<HomologyBasis>,
    /// `offset[d]`: global index of the first class of `H_d(Σ_n)`
    offset: Vec<usize>,
}

fn symmetric_component(n: usize, p: u32, top: usize) -> Result<(Vec<Permutation>, Arc<HomologyBasis>)> {
    let group = PermGroup::symmetric(n, 1_000)?;
    let perms = group.elements().expect("enumerated").to_vec();
    let table = FiniteGroup::from_perm_group(&group)?;
    Ok((perms, HomologyBasis::cached(&table, p, top)?))
}

/// Name of class `k` of `H_d(Σ_n)`: `[n]` in degree 0, otherwise `e{d}.{k}[n]`.
pub fn class_name(n: usize, degree: usize, k: usize) -> String {
    if degree == 0 && k == 0 {
        format!("[{n}]")
    } else {
        format!("e{degree}.{k}[{n}]")
    }
}

/// The truncated bialgebra `H_*(⊔_{n≤N} BΣ_n; F_p)` in degrees `≤ D`, with
/// `H_*(BΣ_n)` in weight `n`.
///
/// The product of classes on components `a` and `b` is the shuffle of their
/// representatives pushed into `Σ_{a+b}` along the block sum, then projected
/// to homology. The coproduct is Alexander–Whitney on each component.
pub fn assemble_fin_bialgebra(big_n: usize, top: usize, p: u32) -> Result<GradedBialgebra> {
    let mut components: Vec<Component> = Vec::with_capacity(big_n + 1);
    let mut basis = Vec::new();
    for n in 0..=big_n {
        let (perms, hb) = symmetric_component(n, p, top)?;
        let mut offset = Vec::with_capacity(top + 1);
        for d in 0..=top {
            offset.push(basis.len());
            for k in 0..hb.dim(d) {
                basis.push(BasisElement {
                    name: class_name(n, d, k),
                    degree: d,
                    weight: n,
                });
            }
        }
        components.push(Component {
            perms,
            basis: hb,
            offset,
        });
    }

    let mut h = GradedBialgebra::new(p, top, big_n, basis, None)?;
    let field = h.field();

    for a in 0..=big_n {
        for b in 0..=big_n - a {
            let (ca, cb, cs) = (&components[a], &components[b], &components[a + b]);
            let index = |perm: &Permutation| -> Result<usize> {
                cs.perms
                    .iter()
                    .position(|q| q == perm)
                    .ok_or_else(|| Error::NotMember(format!("{perm:?} in Σ_{}", a + b)))
            };
            let left: Vec<usize> = ca
                .perms
                .iter()
                .map(|s| index(&s.direct_sum(&Permutation::identity(b))))
                .collect::<Result<_>>()?;
            let right: Vec<usize> = cb
                .perms
                .iter()
                .map(|t| index(&Permutation::identity(a).direct_sum(t)))
                .collect::<Result<_>>()?;
            for i in 0..=top {
                for j in 0..=top - i {
                    for (x, zx) in ca.basis.representatives(i).iter().enumerate() {
                        for (y, zy) in cb.basis.representatives(j).iter().enumerate() {
                            let chain = shuffle_product(
                                (ca.basis.bar(), zx, &left),
                                (cb.basis.bar(), zy, &right),
                                (i, j),
                                cs.basis.bar(),
                            );
                            let coords = cs.basis.project(i + j, &chain);
                            let mut value = Element::new();
                            for (k, c) in coords.into_iter().enumerate() {
                                add_term(field, &mut value, cs.offset[i + j] + k, c);
                            }
                            h.set_product(ca.offset[i] + x, cb.offset[j] + y, value);
                        }
                    }
                }
            }
        }
    }

    let mut counit = vec![0; h.dim()];
    for c in &components {
        let coproduct = aw_coproduct(&c.basis);
        for (d, classes) in coproduct.iter().enumerate() {
            for (k, terms) in classes.iter().enumerate() {
                let global = terms
                    .iter()
                    .map(|t| (c.offset[t.left.0] + t.left.1, c.offset[t.right.0] + t.right.1, t.coeff))
                    .collect();
                h.set_coproduct(c.offset[d] + k, global);
            }
        }
        counit[c.offset[0]] = 1;
    }
    h.set_counit(counit);
    h.set_unit(Element::from([(components[0].offset[0], 1)]));
    Ok(h)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HomologyRow {
    pub group: String,
    pub p: u32,
    pub degree: usize,
    pub dim: usize,
}

/// Rows `(group, p, degree, dim)` for one computed basis.
pub fn homology_rows(group: &str, basis: &HomologyBasis) -> Vec<HomologyRow> {
    basis
        .dims()
        .into_iter()
        .enumerate()
        .map(|(degree, dim)| HomologyRow {
            group: group.to_string(),
            p: basis.field().p(),
            degree,
            dim,
        })
        .collect()
}

pub fn homology_csv(rows: &[HomologyRow]) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    for r in rows {
        w.serialize(r).map_err(|e| Error::malformed(e.to_string()))?;
    }
    let bytes = w.into_inner().map_err(|e| Error::malformed(e.to_string()))?;
    Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
}
