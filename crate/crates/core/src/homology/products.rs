use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::linalg::{add_term, rank, PrimeField, Sparse};

use super::bar::BarComplex;
use super::basis::HomologyBasis;

/// A chain in `C_a ⊗ C_b`, keyed by the pair of tuple indices.
pub type TensorChain = BTreeMap<(usize, usize), u32>;

/// Sign of the `(a, b)`-shuffle that places the first block at `positions`.
fn shuffle_sign(positions: &[usize]) -> usize {
    // inversions: each first-block entry passes the second-block entries before it
    positions.iter().enumerate().map(|(i, &pos)| pos - i).sum()
}

/// All increasing `a`-subsets of `0..a+b`.
fn shuffles(a: usize, b: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, a + b, a, &mut Vec::with_capacity(a), &mut out);
    out
}

/// Eilenberg–Zilber shuffle of `x ∈ C_a(A)` and `y ∈ C_b(B)` pushed into
/// `C_{a+b}(T)` along maps `f : A → T`, `g : B → T` whose images commute.
///
/// With `T = A × B` and the coordinate inclusions this is the cross product;
/// composing with a homomorphism out of `A × B` gives its induced map.
pub fn shuffle_product(
    (xa, x, f): (&BarComplex, &Sparse, &[usize]),
    (yb, y, g): (&BarComplex, &Sparse, &[usize]),
    (a, b): (usize, usize),
    target: &BarComplex,
) -> Sparse {
    let field = target.field();
    let mut out = Sparse::new();
    let all = shuffles(a, b);
    let mut tuple = vec![0; a + b];
    for (&i, &ci) in x {
        let u = xa.decode(a, i);
        for (&j, &cj) in y {
            let v = yb.decode(b, j);
            let coeff = field.mul(ci, cj);
            for positions in &all {
                let (mut ui, mut vi) = (0, 0);
                for (k, slot) in tuple.iter_mut().enumerate() {
                    if ui < a && positions[ui] == k {
                        *slot = f[u[ui]];
                        ui += 1;
                    } else {
                        *slot = g[v[vi]];
                        vi += 1;
                    }
                }
                let c = field.mul(coeff, field.sign(shuffle_sign(positions)));
                target.add_tuple(&mut out, &tuple, c);
            }
        }
    }
    out
}

/// Alexander–Whitney diagonal `[g₁|…|gₙ] ↦ Σᵢ [g₁|…|gᵢ] ⊗ [gᵢ₊₁|…|gₙ]`,
/// returned per splitting degree `i`.
pub fn aw_diagonal(bar: &BarComplex, n: usize, chain: &Sparse) -> Vec<TensorChain> {
    let field = bar.field();
    let mut out = vec![TensorChain::new(); n + 1];
    for (&t, &c) in chain {
        let tuple = bar.decode(n, t);
        for (i, slot) in out.iter_mut().enumerate() {
            let front = bar.encode(&tuple[..i]).expect("normalized");
            let back = bar.encode(&tuple[i..]).expect("normalized");
            let e = slot.entry((front, back)).or_insert(0);
            *e = field.add(*e, c);
            if *e == 0 {
                slot.remove(&(front, back));
            }
        }
    }
    out
}

/// Alexander–Whitney map `C(A × B) → C(A) ⊗ C(B)` for `product = A × B`
/// with the index layout of [`FiniteGroup::direct_product`].
pub fn aw_product(
    product: &BarComplex,
    left: &BarComplex,
    right: &BarComplex,
    n: usize,
    chain: &Sparse,
) -> Vec<TensorChain> {
    let field = product.field();
    let hb = right.group().size();
    let mut out = vec![TensorChain::new(); n + 1];
    for (&t, &c) in chain {
        let tuple = product.decode(n, t);
        for (i, slot) in out.iter_mut().enumerate() {
            let front: Vec<usize> = tuple[..i].iter().map(|&g| g / hb).collect();
            let back: Vec<usize> = tuple[i..].iter().map(|&g| g % hb).collect();
            if let (Some(f), Some(b)) = (left.encode(&front), right.encode(&back)) {
                let e = slot.entry((f, b)).or_insert(0);
                *e = field.add(*e, c);
                if *e == 0 {
                    slot.remove(&(f, b));
                }
            }
        }
    }
    out
}

/// Projects a tensor chain in `C_i ⊗ C_j` to `H_i ⊗ H_j`, as a row-major
/// `dim H_i × dim H_j` matrix.
pub fn project_tensor(
    left: &HomologyBasis,
    right: &HomologyBasis,
    (i, j): (usize, usize),
    chain: &TensorChain,
) -> Vec<u32> {
    let field = left.field();
    let (hi, hj) = (left.dim(i), right.dim(j));
    let mut out = vec![0u32; hi * hj];
    for (&(s, t), &c) in chain {
        let ps = left.project_unit(i, s);
        let pt = right.project_unit(j, t);
        for (a, &u) in ps.iter().enumerate() {
            if u == 0 {
                continue;
            }
            for (b, &v) in pt.iter().enumerate() {
                if v != 0 {
                    let k = a * hj + b;
                    out[k] = field.add(out[k], field.mul(c, u32::from(u) * u32::from(v)));
                }
            }
        }
    }
    out
}

/// A chain map between bar complexes induced by a group homomorphism, stored
/// as per-degree sparse matrices (one column per source tuple).
#[derive(Debug, Clone)]
pub struct ChainMap {
    columns: Vec<Vec<Sparse>>,
}

impl ChainMap {
    /// `[g₁|…|gₙ] ↦ [f g₁|…|f gₙ]` in degrees `0..=top`; checks `∂f = f∂`.
    pub fn from_homomorphism(source: &BarComplex, target: &BarComplex, f: &[usize], top: usize) -> Result<Self> {
        if !source.group().is_hom_to(target.group(), f) {
            return Err(Error::malformed("map is not a group homomorphism"));
        }
        let mut columns = Vec::with_capacity(top + 1);
        for n in 0..=top {
            let col: Vec<Sparse> = (0..source.dim(n))
                .map(|t| {
                    let image: Vec<usize> = source.decode(n, t).into_iter().map(|g| f[g]).collect();
                    let mut out = Sparse::new();
                    target.add_tuple(&mut out, &image, 1);
                    out
                })
                .collect();
            columns.push(col);
        }
        let map = ChainMap { columns };
        for n in 1..=top {
            for t in 0..source.dim(n) {
                let lhs = target.boundary(n, &map.columns[n][t]);
                let rhs = map.apply(n - 1, &source.boundary_of_index(n, t), target.field());
                if lhs != rhs {
                    return Err(Error::malformed(format!(
                        "induced map does not commute with the boundary in degree {n}"
                    )));
                }
            }
        }
        Ok(map)
    }

    pub fn apply(&self, n: usize, chain: &Sparse, field: PrimeField) -> Sparse {
        let mut out = Sparse::new();
        for (&t, &c) in chain {
            for (&s, &d) in &self.columns[n][t] {
                add_term(field, &mut out, s, field.mul(c, d));
            }
        }
        out
    }
}

/// Matrices of a map on homology: `matrices[n][j]` is the image of the
/// `j`-th basis class of `H_n` of the source.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InducedMap {
    pub matrices: Vec<Vec<Vec<u32>>>,
}

impl InducedMap {
    /// `self ∘ other`.
    pub fn compose(&self, other: &InducedMap, field: PrimeField) -> InducedMap {
        let matrices = self
            .matrices
            .iter()
            .zip(&other.matrices)
            .map(|(outer, inner)| {
                inner
                    .iter()
                    .map(|col| {
                        let dim = outer.first().map_or(0, Vec::len);
                        let mut out = vec![0; dim];
                        for (k, &c) in col.iter().enumerate() {
                            for (o, &v) in out.iter_mut().zip(&outer[k]) {
                                *o = field.add(*o, field.mul(c, v));
                            }
                        }
                        out
                    })
                    .collect()
            })
            .collect();
        InducedMap { matrices }
    }
}

fn check_compatible(source: &HomologyBasis, target: &HomologyBasis) -> Result<()> {
    if source.top_degree() != target.top_degree() || source.field() != target.field() {
        return Err(Error::malformed(format!(
            "truncation mismatch: (D = {}, p = {}) vs (D = {}, p = {})",
            source.top_degree(),
            source.field().p(),
            target.top_degree(),
            target.field().p()
        )));
    }
    Ok(())
}

/// Map on homology induced by a homomorphism `f`, given as its value table.
pub fn induced_map(f: &[usize], source: &HomologyBasis, target: &HomologyBasis) -> Result<InducedMap> {
    check_compatible(source, target)?;
    let top = source.top_degree();
    let chain = ChainMap::from_homomorphism(source.bar(), target.bar(), f, top)?;
    let field = source.field();
    let matrices = (0..=top)
        .map(|n| {
            source
                .representatives(n)
                .iter()
                .map(|z| target.project(n, &chain.apply(n, z, field)))
                .collect()
        })
        .collect();
    Ok(InducedMap { matrices })
}

/// Homology of `G × H` with its classes identified with cross products.
#[derive(Debug, Clone)]
pub struct KunnethProduct {
    pub basis: HomologyBasis,
    /// Per degree `n`: the pairs `(a, i, j)` of a class `i ∈ H_a(G)` and
    /// `j ∈ H_{n−a}(H)`, in the order used by `cross`.
    pub pairs: Vec<Vec<(usize, usize, usize)>>,
    /// Per degree: `π(x_i × y_j)` in the product basis, one row per pair.
    pub cross: Vec<Vec<Vec<u32>>>,
}

/// The cross product `H_*(G) ⊗ H_*(H) → H_*(G × H)` via the shuffle map.
///
/// Checks that it is an isomorphism in every degree (Künneth over a field)
/// and that Alexander–Whitney splits it on homology.
pub fn kunneth_product(h1: &HomologyBasis, h2: &HomologyBasis) -> Result<KunnethProduct> {
    check_compatible(h1, h2)?;
    let top = h1.top_degree();
    let field = h1.field();
    let (g, h) = (h1.group(), h2.group());
    let product_group = g.direct_product(h);
    let basis = HomologyBasis::compute(&product_group, field.p(), top)?;
    let hs = h.size();
    let left: Vec<usize> = g.elements().map(|a| a * hs + h.identity()).collect();
    let right: Vec<usize> = h.elements().map(|b| g.identity() * hs + b).collect();

    let mut pairs = Vec::with_capacity(top + 1);
    let mut cross = Vec::with_capacity(top + 1);
    for n in 0..=top {
        let mut ps = Vec::new();
        let mut rows = Vec::new();
        for a in 0..=n {
            for (i, x) in h1.representatives(a).iter().enumerate() {
                for (j, y) in h2.representatives(n - a).iter().enumerate() {
                    let chain = shuffle_product((h1.bar(), x, &left), (h2.bar(), y, &right), (a, n - a), basis.bar());
                    // AW ∘ EZ is the identity on chains; check it on homology
                    let split = aw_product(basis.bar(), h1.bar(), h2.bar(), n, &chain);
                    for (b, piece) in split.iter().enumerate() {
                        let m = project_tensor(h1, h2, (b, n - b), piece);
                        let expect: Vec<u32> = (0..m.len())
                            .map(|k| u32::from(b == a && k == i * h2.dim(n - a) + j))
                            .collect();
                        if m != expect {
                            return Err(Error::malformed(format!(
                                "Alexander–Whitney does not split the cross product in degree {n}"
                            )));
                        }
                    }
                    ps.push((a, i, j));
                    rows.push(basis.project(n, &chain));
                }
            }
        }
        if rows.len() != basis.dim(n) || rank(field, basis.dim(n), &rows) != rows.len() {
            return Err(Error::malformed(format!("Künneth fails in degree {n}")));
        }
        pairs.push(ps);
        cross.push(rows);
    }
    Ok(KunnethProduct { basis, pairs, cross })
}

/// One comultiplication term: `coeff · (class i of H_a) ⊗ (class j of H_b)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub struct CoproductTerm {
    pub left: (usize, usize),
    pub right: (usize, usize),
    pub coeff: u32,
}

/// The coproduct on `H_*(G)` induced by the diagonal, through Alexander–Whitney.
/// Entry `[n][k]` lists `Δ` of the `k`-th class of `H_n`.
pub fn aw_coproduct(h: &HomologyBasis) -> Vec<Vec<Vec<CoproductTerm>>> {
    (0..=h.top_degree())
        .map(|n| {
            h.representatives(n)
                .iter()
                .map(|z| {
                    let mut terms = Vec::new();
                    for (a, piece) in aw_diagonal(h.bar(), n, z).iter().enumerate() {
                        let b = n - a;
                        let m = project_tensor(h, h, (a, b), piece);
                        let hb = h.dim(b);
                        for (k, &c) in m.iter().enumerate() {
                            if c != 0 {
                                terms.push(CoproductTerm {
                                    left: (a, k / hb),
                                    right: (b, k % hb),
                                    coeff: c,
                                });
                            }
                        }
                    }
                    terms
                })
                .collect()
        })
        .collect()
}
