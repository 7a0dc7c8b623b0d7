use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

use super::affine::{dot, AffineMonoid, Membership};
use super::finite::{is_hom, FiniteCommMonoid};
use super::localize::{AffineLocalization, FiniteLocalization, Inverted, LocalizedMonoid, StableImage};
use super::snf::{Cokernel, FGAbelianGroup, Lattice};

/// A finite table monoid or an affine monoid.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum CommMonoid {
    Finite(FiniteCommMonoid),
    Affine(AffineMonoid),
}

/// An element of a [`CommMonoid`]: a table index or a vector.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum MonoidElement {
    Finite(usize),
    Affine(Vec<i64>),
}

/// Default bound on generator summands in affine searches.
pub const DEFAULT_BOUND: usize = 12;

#[derive(Debug, Clone, Serialize)]
pub struct GroupCompletion {
    pub group: FGAbelianGroup,
    /// Coordinates of the image of each element (finite) or generator
    /// (affine), torsion coordinates first.
    #[serde(serialize_with = "exact_integers")]
    pub unit: Vec<Vec<BigInt>>,
}

/// `M → M^gp`.
///
/// Finite `M`: the free abelian group on the elements modulo `[a] + [b] =
/// [a + b]`. Affine `M`: the subgroup of `ℤ^d` spanned by the generators,
/// which is free.
pub fn group_completion(m: &CommMonoid) -> Result<GroupCompletion> {
    match m {
        CommMonoid::Finite(f) => {
            let n = f.size();
            let mut relations = Vec::new();
            for a in 0..n {
                for b in a..n {
                    let mut r = vec![0i64; n];
                    r[a] += 1;
                    r[b] += 1;
                    r[f.add(a, b)] -= 1;
                    relations.push(r);
                }
            }
            let coker = Cokernel::new(&relations, n)?;
            let unit = (0..n)
                .map(|a| {
                    let mut e = vec![0i64; n];
                    e[a] = 1;
                    coker.coordinates(&e)
                })
                .collect();
            Ok(GroupCompletion {
                group: coker.group.clone(),
                unit,
            })
        }
        CommMonoid::Affine(a) => {
            let lattice = Lattice::span(a.generators(), a.rank());
            let unit = a
                .generators()
                .iter()
                .map(|g| lattice.coordinates(g).expect("generator lies in its span"))
                .collect();
            Ok(GroupCompletion {
                group: FGAbelianGroup {
                    rank: lattice.rank,
                    torsion: Vec::new(),
                },
                unit,
            })
        }
    }
}

/// Writes each integer as a JSON number, or as a decimal string when it does
/// not fit in 64 bits.
fn exact_integers<S: serde::Serializer>(rows: &[Vec<BigInt>], s: S) -> std::result::Result<S::Ok, S::Error> {
    use num_traits::ToPrimitive;
    let values: Vec<Vec<serde_json::Value>> = rows
        .iter()
        .map(|r| {
            r.iter()
                .map(|x| x.to_i64().map_or_else(|| x.to_string().into(), Into::into))
                .collect()
        })
        .collect();
    values.serialize(s)
}

pub fn invert_p(m: &CommMonoid, p: u64) -> Result<LocalizedMonoid> {
    match m {
        CommMonoid::Finite(f) => Ok(LocalizedMonoid::Finite(FiniteLocalization::new(f, Inverted::P(p))?)),
        CommMonoid::Affine(a) => Ok(LocalizedMonoid::Affine(AffineLocalization::new(
            a,
            Inverted::P(p),
            DEFAULT_BOUND,
        )?)),
    }
}

pub fn localize_at_element(m: &CommMonoid, x: &MonoidElement) -> Result<LocalizedMonoid> {
    match (m, x) {
        (CommMonoid::Finite(f), MonoidElement::Finite(i)) => Ok(LocalizedMonoid::Finite(FiniteLocalization::new(
            f,
            Inverted::Element(*i),
        )?)),
        (CommMonoid::Affine(a), MonoidElement::Affine(v)) => Ok(LocalizedMonoid::Affine(AffineLocalization::new(
            a,
            Inverted::Element(v.clone()),
            DEFAULT_BOUND,
        )?)),
        _ => Err(Error::malformed("element does not match the monoid representation")),
    }
}

/// `n·x = y + z`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MonogenicCertificate {
    pub x: MonoidElement,
    pub y: MonoidElement,
    pub n: u64,
    /// The element `z` (finite) or its generator coefficients (affine).
    pub z: Vec<u64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum NotMonogenic {
    /// No `n` works for this pair (finite, checked exhaustively).
    Pair { x: usize, y: usize },
    /// `φ ≥ 0` on the generators, `φ(x) = 0 < φ(y)`, so `n·x − y ∉ M`.
    Functional { x: Vec<i64>, y: Vec<i64>, phi: Vec<i64> },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum LocallyMonogenic {
    Yes(Vec<MonogenicCertificate>),
    No(NotMonogenic),
    Unknown { bound: usize },
}

impl LocallyMonogenic {
    pub fn is_yes(&self) -> bool {
        matches!(self, LocallyMonogenic::Yes(_))
    }
}

/// Whether every pair of nonzero elements has `n·x = y + z`.
///
/// For affine `M` it suffices to check pairs of nonzero generators: if `x`
/// involves a generator `g` and `nⱼ g − hⱼ ∈ M` for every generator `hⱼ`, then
/// `y = Σ bⱼ hⱼ` gives `(Σ bⱼ nⱼ) x − y ∈ M`.
pub fn is_locally_monogenic(m: &CommMonoid, bound: usize) -> LocallyMonogenic {
    match m {
        CommMonoid::Finite(f) => {
            let mut certs = Vec::new();
            for x in f.nonzero() {
                for y in f.nonzero() {
                    // n·x cycles with preperiod + period at most |M|
                    let found = (1..=f.size() as u64).find_map(|n| {
                        let nx = f.times(n, x);
                        f.elements().find(|&z| f.add(y, z) == nx).map(|z| (n, z))
                    });
                    match found {
                        Some((n, z)) => certs.push(MonogenicCertificate {
                            x: MonoidElement::Finite(x),
                            y: MonoidElement::Finite(y),
                            n,
                            z: vec![z as u64],
                        }),
                        None => return LocallyMonogenic::No(NotMonogenic::Pair { x, y }),
                    }
                }
            }
            LocallyMonogenic::Yes(certs)
        }
        CommMonoid::Affine(a) => {
            let gens = a.nonzero_generators();
            let mut certs = Vec::new();
            let mut unknown = false;
            for x in &gens {
                for y in &gens {
                    if let Some(phi) = a.separating_functional(x, y) {
                        return LocallyMonogenic::No(NotMonogenic::Functional {
                            x: x.clone(),
                            y: y.clone(),
                            phi,
                        });
                    }
                    let found = (1..=bound as u64).find_map(|n| {
                        let target: Vec<i64> = x.iter().zip(y).map(|(a, b)| n as i64 * a - b).collect();
                        match a.membership(&target, bound) {
                            Membership::Member(z) => Some((n, z)),
                            _ => None,
                        }
                    });
                    match found {
                        Some((n, z)) => certs.push(MonogenicCertificate {
                            x: MonoidElement::Affine(x.clone()),
                            y: MonoidElement::Affine(y.clone()),
                            n,
                            z,
                        }),
                        None => unknown = true,
                    }
                }
            }
            if unknown {
                LocallyMonogenic::Unknown { bound }
            } else {
                LocallyMonogenic::Yes(certs)
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IsolatedZero {
    pub isolated: bool,
    /// `x + y = 0` with `x, y ≠ 0`: table indices (finite) or generator
    /// coefficients of a nontrivial relation (affine).
    pub witness: Option<Vec<u64>>,
}

/// Whether `x + y = 0` forces `x = y = 0`.
///
/// Affine case: a nonzero sum of nonzero generators vanishes iff the linear
/// program `Σ λᵢ gᵢ = 0, Σ λᵢ = 1, λ ≥ 0` is feasible; a rational solution
/// scales to an integer relation.
pub fn is_zero_isolated(m: &CommMonoid) -> IsolatedZero {
    match m {
        CommMonoid::Finite(f) => finite_zero_isolated(f),
        CommMonoid::Affine(a) => match a.zero_relation() {
            Some(c) => IsolatedZero {
                isolated: false,
                witness: Some(c),
            },
            None => IsolatedZero {
                isolated: true,
                witness: None,
            },
        },
    }
}

pub fn finite_zero_isolated(f: &FiniteCommMonoid) -> IsolatedZero {
    for x in f.nonzero() {
        for y in f.nonzero() {
            if f.add(x, y) == f.zero() {
                return IsolatedZero {
                    isolated: false,
                    witness: Some(vec![x as u64, y as u64]),
                };
            }
        }
    }
    IsolatedZero {
        isolated: true,
        witness: None,
    }
}

/// A homomorphism: a full value table between finite monoids, or an integer
/// matrix `ℤ^{d_A} → ℤ^{d_C}` between affine monoids.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", content = "images", rename_all = "lowercase")]
pub enum MonoidHom {
    Finite(Vec<usize>),
    /// Rows of the matrix; column `j` is the image of `e_j`.
    Affine(Vec<Vec<i64>>),
}

impl MonoidHom {
    /// Checks additivity and unit preservation (finite), or that generators
    /// land in the target (affine, within `bound`).
    pub fn validate(&self, source: &CommMonoid, target: &CommMonoid, bound: usize) -> Result<()> {
        match (self, source, target) {
            (MonoidHom::Finite(f), CommMonoid::Finite(a), CommMonoid::Finite(c)) => {
                if !is_hom(a, c, f) {
                    return Err(Error::malformed("table is not a monoid homomorphism"));
                }
                Ok(())
            }
            (MonoidHom::Affine(mat), CommMonoid::Affine(a), CommMonoid::Affine(c)) => {
                if mat.len() != c.rank() || mat.iter().any(|r| r.len() != a.rank()) {
                    return Err(Error::malformed("matrix shape does not match the ranks"));
                }
                for g in a.generators() {
                    let img = self.apply_affine(g);
                    if !matches!(c.membership(&img, bound), Membership::Member(_)) {
                        return Err(Error::malformed(format!(
                            "image {img:?} of {g:?} not found in the target"
                        )));
                    }
                }
                Ok(())
            }
            _ => Err(Error::malformed(
                "homomorphism does not match the monoid representations",
            )),
        }
    }

    pub fn apply_affine(&self, v: &[i64]) -> Vec<i64> {
        match self {
            MonoidHom::Affine(mat) => mat.iter().map(|r| dot(r, v)).collect(),
            MonoidHom::Finite(_) => panic!("apply_affine on a table homomorphism"),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct FiberProduct {
    pub monoid: CommMonoid,
    /// Finite: the pair `(a, b)` behind each element. Affine: the generators
    /// are the vectors `(a, b) ∈ ℤ^{d_A + d_B}`.
    pub pairs: Vec<(usize, usize)>,
    /// Affine only: whether the bounded Hilbert-basis search found every
    /// minimal solution up to the bound (always true for finite inputs).
    pub bound: Option<usize>,
}

/// `A ×_C B = {(a, b) : f(a) = g(b)}`.
///
/// Affine case: the solutions `(λ, μ) ∈ ℕ^{k_A + k_B}` of `f(Σ λ g) = g(Σ μ h)`
/// form a monoid whose minimal nonzero elements generate it; those with
/// `Σλ + Σμ ≤ bound` are found by enumeration.
pub fn fiber_product(
    (a, f): (&CommMonoid, &MonoidHom),
    (b, g): (&CommMonoid, &MonoidHom),
    bound: usize,
) -> Result<FiberProduct> {
    match (a, b, f, g) {
        (CommMonoid::Finite(fa), CommMonoid::Finite(fb), MonoidHom::Finite(tf), MonoidHom::Finite(tg)) => {
            let pairs: Vec<(usize, usize)> = fa
                .elements()
                .flat_map(|x| fb.elements().map(move |y| (x, y)))
                .filter(|&(x, y)| tf[x] == tg[y])
                .collect();
            let index = |p: (usize, usize)| pairs.iter().position(|&q| q == p).expect("closed under addition");
            let table = pairs
                .iter()
                .map(|&(x, y)| {
                    pairs
                        .iter()
                        .map(|&(u, v)| index((fa.add(x, u), fb.add(y, v))))
                        .collect()
                })
                .collect();
            let zero = index((fa.zero(), fb.zero()));
            Ok(FiberProduct {
                monoid: CommMonoid::Finite(FiniteCommMonoid::new(table, zero)?),
                pairs,
                bound: None,
            })
        }
        (CommMonoid::Affine(aa), CommMonoid::Affine(ab), MonoidHom::Affine(_), MonoidHom::Affine(_)) => {
            let ka = aa.generators().len();
            let kb = ab.generators().len();
            let fa: Vec<Vec<i64>> = aa.generators().iter().map(|v| f.apply_affine(v)).collect();
            let gb: Vec<Vec<i64>> = ab.generators().iter().map(|v| g.apply_affine(v)).collect();
            let dc = fa.first().or(gb.first()).map_or(0, Vec::len);
            // columns of the kernel system f(λ) − g(μ) = 0
            let cols: Vec<Vec<i64>> = fa
                .iter()
                .cloned()
                .chain(gb.iter().map(|v| v.iter().map(|x| -x).collect()))
                .collect();
            let minimal = minimal_solutions(&cols, dc, ka + kb, bound);
            let mut gens: Vec<Vec<i64>> = minimal
                .iter()
                .map(|sol| {
                    let x = aa.combine(&sol[..ka]);
                    let y = ab.combine(&sol[ka..]);
                    x.into_iter().chain(y).collect()
                })
                .collect();
            gens.sort();
            gens.dedup();
            Ok(FiberProduct {
                monoid: CommMonoid::Affine(AffineMonoid::new(aa.rank() + ab.rank(), gens)?),
                pairs: Vec::new(),
                bound: Some(bound),
            })
        }
        _ => Err(Error::malformed(
            "fiber product needs two finite or two affine homomorphisms",
        )),
    }
}

/// Minimal nonzero `x ∈ ℕ^k` with `Σ xⱼ colⱼ = 0` and `Σ xⱼ ≤ bound`.
fn minimal_solutions(cols: &[Vec<i64>], dim: usize, k: usize, bound: usize) -> Vec<Vec<u64>> {
    let mut found: Vec<Vec<u64>> = Vec::new();
    for total in 1..=bound {
        let mut x = vec![0u64; k];
        compositions(total, 0, &mut x, &mut |x| {
            let mut s = vec![0i64; dim];
            for (c, &m) in cols.iter().zip(x.iter()) {
                for (a, b) in s.iter_mut().zip(c) {
                    *a += m as i64 * b;
                }
            }
            if s.iter().all(|&v| v == 0) && !found.iter().any(|f| f.iter().zip(x.iter()).all(|(a, b)| a <= b)) {
                found.push(x.to_vec());
            }
        });
    }
    found
}

fn compositions(total: usize, i: usize, x: &mut [u64], visit: &mut impl FnMut(&[u64])) {
    if i + 1 == x.len() {
        x[i] = total as u64;
        visit(x);
        x[i] = 0;
        return;
    }
    if x.is_empty() {
        return;
    }
    for v in 0..=total {
        x[i] = v as u64;
        compositions(total - v, i + 1, x, visit);
    }
    x[i] = 0;
}

#[derive(Debug, Clone, Serialize)]
pub struct ElementCheck {
    pub x: MonoidElement,
    /// `M[−x]` is a group and the canonical map to `M^gp` is bijective.
    pub isomorphic: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct PullbackReport {
    /// The pullback of `M[1/p] → M^gp[1/p] ← M^gp[1/p]` projects isomorphically
    /// onto `M[1/p]`.
    pub collapse: bool,
    pub locally_monogenic: LocallyMonogenic,
    /// `None` when skipped (not locally monogenic).
    pub invert_anything: Option<Vec<ElementCheck>>,
}

impl PullbackReport {
    pub fn passed(&self) -> bool {
        self.collapse
            && self
                .invert_anything
                .as_ref()
                .is_none_or(|v| v.iter().all(|c| c.isomorphic))
    }
}

/// Discrete consequences of the group-completion pullback square: the
/// square collapses onto `M[1/p]`, and for locally monogenic `M`, `M[−x] ≅
/// M^gp` for every nonzero `x` (every element for finite `M`, every nonzero
/// generator for affine `M`).
pub fn pi0_pullback_check(m: &CommMonoid, p: u64, bound: usize) -> Result<PullbackReport> {
    let locally_monogenic = is_locally_monogenic(m, bound);
    if let LocallyMonogenic::Unknown { bound } = locally_monogenic {
        return Err(Error::Unknown {
            what: "locally monogenic verdict".into(),
            bound,
        });
    }
    let collapse = match m {
        CommMonoid::Finite(f) => finite_collapse(f, p)?,
        CommMonoid::Affine(a) => affine_collapse(a, p, bound)?,
    };
    let invert_anything = if locally_monogenic.is_yes() {
        let checks = match m {
            CommMonoid::Finite(f) => f
                .nonzero()
                .map(|x| {
                    Ok(ElementCheck {
                        x: MonoidElement::Finite(x),
                        isomorphic: finite_invert_anything(f, x)?,
                    })
                })
                .collect::<Result<Vec<_>>>()?,
            CommMonoid::Affine(a) => a
                .nonzero_generators()
                .into_iter()
                .map(|x| {
                    let iso = affine_invert_anything(a, &x, bound)?;
                    Ok(ElementCheck {
                        x: MonoidElement::Affine(x),
                        isomorphic: iso,
                    })
                })
                .collect::<Result<Vec<_>>>()?,
        };
        Some(checks)
    } else {
        None
    };
    Ok(PullbackReport {
        collapse,
        locally_monogenic,
        invert_anything,
    })
}

/// `M[−x] → M^gp`, `(m, k) ↦ u(m) − k·u(x)`, is a bijective homomorphism
/// onto a group.
pub fn finite_invert_anything(f: &FiniteCommMonoid, x: usize) -> Result<bool> {
    let loc = FiniteLocalization::new(f, Inverted::Element(x))?;
    let q = loc.monoid();
    if !q.is_group() {
        return Ok(false);
    }
    let gc = group_completion(&CommMonoid::Finite(f.clone()))?;
    let order = gc.group.order().expect("finite monoids complete to finite groups");
    if order != q.size() as u64 {
        return Ok(false);
    }
    let moduli: Vec<u64> = gc.group.torsion.clone();
    let image = |(m, k): (usize, usize)| -> Vec<BigInt> {
        gc.unit[m]
            .iter()
            .zip(&gc.unit[x])
            .zip(&moduli)
            .map(|((a, b), &d)| {
                let v: BigInt = a - BigInt::from(k) * b;
                let d = BigInt::from(d);
                ((v % &d) + &d) % &d
            })
            .collect()
    };
    let images: Vec<Vec<BigInt>> = loc.representatives().iter().map(|&r| image(r)).collect();
    let mut sorted = images.clone();
    sorted.sort();
    sorted.dedup();
    if sorted.len() != images.len() {
        return Ok(false);
    }
    // additivity on classes
    for a in 0..q.size() {
        for b in 0..q.size() {
            let sum: Vec<BigInt> = images[a]
                .iter()
                .zip(&images[b])
                .zip(&moduli)
                .map(|((u, v), &d)| (u + v) % BigInt::from(d))
                .collect();
            if sum != images[q.add(a, b)] {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// `M[−x] = M − ℕx ⊆ ℤ^d` is a group iff every generator has an inverse
/// certificate, and then it is all of `M^gp`.
pub fn affine_invert_anything(a: &AffineMonoid, x: &[i64], bound: usize) -> Result<bool> {
    let loc = AffineLocalization::new(a, Inverted::Element(x.to_vec()), bound)?;
    let Some(certs) = loc.inverse_certificates(bound) else {
        return Ok(false);
    };
    // each certificate: −g = Σ zᵢ gᵢ − n·x
    for (g, n, z) in &certs {
        let lhs: Vec<i64> = a.combine(z).iter().zip(x).map(|(s, xi)| s - *n as i64 * xi).collect();
        if lhs.iter().zip(g).any(|(u, v)| u + v != 0) {
            return Ok(false);
        }
    }
    // M[−x] contains M and every −g, hence the subgroup M^gp they generate
    Ok(true)
}

fn finite_collapse(f: &FiniteCommMonoid, p: u64) -> Result<bool> {
    let loc = FiniteLocalization::new(f, Inverted::P(p))?;
    let mp = loc.monoid().clone();
    // M^gp[1/p]: the completion is a finite group; localize its table
    let gp_table = finite_group_table(f)?;
    let gp_loc = FiniteLocalization::new(&gp_table.0, Inverted::P(p))?;
    let gpp = gp_loc.monoid().clone();
    // the map M[1/p] → M^gp[1/p] induced by the unit
    let unit = &gp_table.1;
    let map: Vec<usize> = loc
        .representatives()
        .iter()
        .map(|&(m, k)| gp_loc.class((unit[m], k)))
        .collect();
    if !is_hom(&mp, &gpp, &map) {
        return Ok(false);
    }
    let identity: Vec<usize> = gpp.elements().collect();
    let fp = fiber_product(
        (&CommMonoid::Finite(mp.clone()), &MonoidHom::Finite(map)),
        (&CommMonoid::Finite(gpp), &MonoidHom::Finite(identity)),
        0,
    )?;
    // first projection is a bijection onto M[1/p]
    let mut firsts: Vec<usize> = fp.pairs.iter().map(|&(a, _)| a).collect();
    firsts.sort_unstable();
    Ok(firsts == mp.elements().collect::<Vec<_>>())
}

/// `M^gp` as a finite table, with the unit map.
pub fn finite_group_table(f: &FiniteCommMonoid) -> Result<(FiniteCommMonoid, Vec<usize>)> {
    let gc = group_completion(&CommMonoid::Finite(f.clone()))?;
    let moduli = gc.group.torsion.clone();
    let order: u64 = moduli.iter().product();
    let decode = |mut i: u64| -> Vec<u64> {
        moduli
            .iter()
            .map(|&d| {
                let c = i % d;
                i /= d;
                c
            })
            .collect()
    };
    let encode = |c: &[u64]| -> usize {
        let mut i = 0u64;
        for (&x, &d) in c.iter().zip(&moduli).rev() {
            i = i * d + x;
        }
        i as usize
    };
    let n = order as usize;
    let table = (0..n)
        .map(|a| {
            let ca = decode(a as u64);
            (0..n)
                .map(|b| {
                    let cb = decode(b as u64);
                    let s: Vec<u64> = ca.iter().zip(&cb).zip(&moduli).map(|((x, y), d)| (x + y) % d).collect();
                    encode(&s)
                })
                .collect()
        })
        .collect();
    let unit = gc
        .unit
        .iter()
        .map(|c| {
            let v: Vec<u64> = c
                .iter()
                .map(|x| {
                    let r: BigInt = x.clone();
                    u64::try_from(r).expect("reduced coordinates are nonnegative")
                })
                .collect();
            encode(&v)
        })
        .collect();
    Ok((FiniteCommMonoid::new(table, 0)?, unit))
}

/// Affine case: `M^gp[1/p] = M^gp ⊗ ℤ[1/p]` is torsion free, so the collapse
/// amounts to `M[1/p] → M^gp[1/p]` being injective. Checked on fractions
/// `v/p^k` with `v` a sum of at most two generators and `k ≤ 2`.
fn affine_collapse(a: &AffineMonoid, p: u64, bound: usize) -> Result<bool> {
    let loc = AffineLocalization::new(a, Inverted::P(p), bound)?;
    let gens = a.generators();
    let mut samples: Vec<(Vec<i64>, u32)> = Vec::new();
    for k in 0..=2u32 {
        samples.push((a.zero(), k));
        for (i, g) in gens.iter().enumerate() {
            samples.push((g.clone(), k));
            for h in &gens[i..] {
                samples.push((g.iter().zip(h).map(|(x, y)| x + y).collect(), k));
            }
        }
    }
    let gp = Lattice::span(gens, a.rank());
    for (u, k) in &samples {
        for (v, l) in &samples {
            // equal images in M^gp[1/p] must come from equal fractions
            let same_image = {
                let pl = (p as i64).pow(*l);
                let pk = (p as i64).pow(*k);
                let lhs: Vec<i64> = u.iter().map(|x| x * pl).collect();
                let rhs: Vec<i64> = v.iter().map(|x| x * pk).collect();
                gp.coordinates(&lhs) == gp.coordinates(&rhs)
            };
            if same_image != loc.equal(&(u.clone(), *k), &(v.clone(), *l)) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// The stable-image colimit and the fraction construction agree (finite `M`).
pub fn colimit_oracle(f: &FiniteCommMonoid, p: u64) -> Result<bool> {
    let loc = FiniteLocalization::new(f, Inverted::P(p))?;
    let colim = StableImage::new(f, p)?;
    Ok(super::localize::fractions_match_colimit(&loc, &colim))
}
