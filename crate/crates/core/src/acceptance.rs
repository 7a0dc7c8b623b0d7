//! The nine acceptance checks, each returning a pass/fail line with the
//! evidence it rests on and the time it took against its budget.

use std::collections::BTreeMap;
use std::time::{Duration, Instant};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::Result;
use crate::fpbialg::{
    check_axioms, colimit_along_frobenius, frobenius_nilpotence, is_weakly_primitive, verify_phi_formula,
};
use crate::group::FiniteGroup;
use crate::homology::{assemble_fin_bialgebra, periodic_homology_dims, HomologyBasis};
use crate::monoid::{
    catalog, colimit_oracle, finite_invert_anything, finite_zero_isolated, is_locally_monogenic,
    locally_monogenic_corpus, pi0_pullback_check, AffineLocalization, AffineMonoid, CommMonoid, FiniteCommMonoid,
    FiniteLocalization, Inverted, DEFAULT_BOUND,
};
use crate::perm::{PermGroup, Permutation};
use crate::structure::rho_exhaustion;
use crate::telescope::{AbelianVerdict, DirectSystem};

#[derive(Debug, Clone, Serialize)]
pub struct CriterionResult {
    pub id: usize,
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
    pub elapsed_ms: u128,
    pub budget_ms: u128,
    /// The CLI invocation that reproduces the check.
    pub command: &'static str,
}

impl CriterionResult {
    pub fn line(&self) -> String {
        format!(
            "criterion {} [{}] {}: {} ({} ms of {} ms)",
            self.id,
            if self.passed { "PASS" } else { "FAIL" },
            self.name,
            self.detail,
            self.elapsed_ms,
            self.budget_ms
        )
    }
}

pub struct Criterion {
    pub id: usize,
    pub name: &'static str,
    pub budget: Duration,
    pub command: &'static str,
    check: fn() -> Result<(bool, String)>,
}

impl Criterion {
    pub fn run(&self) -> CriterionResult {
        let start = Instant::now();
        let outcome = (self.check)();
        let elapsed = start.elapsed();
        let (ok, detail) = match outcome {
            Ok(r) => r,
            Err(e) => (false, format!("error: {e}")),
        };
        CriterionResult {
            id: self.id,
            name: self.name,
            passed: ok && elapsed <= self.budget,
            detail,
            elapsed_ms: elapsed.as_millis(),
            budget_ms: self.budget.as_millis(),
            command: self.command,
        }
    }
}

pub fn criteria() -> Vec<Criterion> {
    let s = Duration::from_secs;
    vec![
        Criterion {
            id: 1,
            name: "grid transpose is a product of 3-cycles in a perfect A_8",
            budget: s(1),
            command: "pperfect acceptance --only 1",
            check: grid_transpose_cycles,
        },
        Criterion {
            id: 2,
            name: "symmetric telescopes are not abelian",
            budget: s(1),
            command: "pperfect telescope abelian --p 2 --max-level 2",
            check: telescope_nonabelian,
        },
        Criterion {
            id: 3,
            name: "hypoabelian certificates",
            budget: s(1),
            command: "pperfect acceptance --only 3",
            check: hypoabelian_certificates,
        },
        Criterion {
            id: 4,
            name: "rho structures on groups of order at most 8",
            budget: s(60),
            command: "pperfect structure exhaust --p 2",
            check: rho_exhaustion_check,
        },
        Criterion {
            id: 5,
            name: "discrete localization oracle",
            budget: s(60),
            command: "pperfect acceptance --only 5",
            check: localization_oracle,
        },
        Criterion {
            id: 6,
            name: "locally monogenic monoids invert to their group completion",
            budget: s(60),
            command: "pperfect acceptance --only 6",
            check: invert_anything,
        },
        Criterion {
            id: 7,
            name: "bar homology of cyclic groups matches the periodic resolution",
            budget: s(30),
            command: "pperfect homology cyclic --q 2 --D 4",
            check: bar_homology_oracle,
        },
        Criterion {
            id: 8,
            name: "assembled bialgebra pipeline",
            budget: s(600),
            command: "pperfect pipeline fin-frobenius --N 4 --D 3 --p 2",
            check: pipeline,
        },
        Criterion {
            id: 9,
            name: "degree-0 colimit matches the localized weight monoid",
            budget: s(60),
            command: "pperfect pipeline weights --N 4 --D 3 --p 2",
            check: weight_consistency,
        },
    ]
}

pub fn run_all() -> Vec<CriterionResult> {
    criteria().iter().map(Criterion::run).collect()
}

fn grid_transpose_cycles() -> Result<(bool, String)> {
    let mut ok = true;
    let mut notes = Vec::new();
    for p in [2usize, 3] {
        let t = Permutation::grid_transpose(p, p * p)?;
        let ct = t.cycle_type();
        let good = ct.only_three_cycles() && t.sign() == 1;
        ok &= good;
        notes.push(format!("p={p}: cycles {:?}, sign {}", ct.lengths, t.sign()));
        if p == 2 {
            let a8 = PermGroup::alternating(8, 30_000)?;
            let inside = a8.contains(&t);
            let perfect = a8.is_perfect()?;
            ok &= inside && perfect && a8.order() == Some(20_160);
            notes.push(format!("in A_8: {inside}, A_8 perfect: {perfect}"));
        }
    }
    Ok((ok, notes.join("; ")))
}

fn telescope_nonabelian() -> Result<(bool, String)> {
    let mut ok = true;
    let mut notes = Vec::new();
    for p in [2usize, 3] {
        let sys = DirectSystem::symmetric_tower(p)?;
        match sys.abelianness_probe(2)? {
            AbelianVerdict::NonAbelian { level, left, right } => {
                // the witness must persist
                let (l, r) = (sys.stabilize(&left, level + 2)?, sys.stabilize(&right, level + 2)?);
                ok &= level <= 2 && !l.value.commutes_with(&r.value);
                notes.push(format!("p={p}: {} and {} at level {level}", left.value, right.value));
            }
            AbelianVerdict::AbelianUpTo { .. } => {
                ok = false;
                notes.push(format!("p={p}: no witness"));
            }
        }
    }
    Ok((ok, notes.join("; ")))
}

/// Determinant of a permutation matrix by fraction-free elimination.
fn permutation_matrix_det(perm: &Permutation) -> i64 {
    let n = perm.degree();
    let mut m: Vec<Vec<i64>> = (0..n)
        .map(|i| (0..n).map(|j| i64::from(perm.apply(j) == i)).collect())
        .collect();
    let mut sign = 1;
    let mut prev = 1;
    for k in 0..n {
        let Some(pivot) = (k..n).find(|&i| m[i][k] != 0) else {
            return 0;
        };
        if pivot != k {
            m.swap(pivot, k);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
            }
            m[i][k] = 0;
        }
        prev = m[k][k];
    }
    sign * m[n - 1][n - 1]
}

fn hypoabelian_certificates() -> Result<(bool, String)> {
    let s4 = PermGroup::symmetric(4, 100)?;
    let orders: Vec<usize> = s4.derived_series()?.iter().filter_map(PermGroup::order).collect();
    let a5 = PermGroup::alternating(5, 100)?;
    let core = a5.perfect_core()?;
    let core_is_a5 = core.order() == a5.order() && core.element_set() == a5.element_set();
    let det = permutation_matrix_det(&Permutation::grid_transpose(2, 4)?);
    let ok = orders == [24, 12, 4, 1] && core_is_a5 && det == 1;
    Ok((
        ok,
        format!("derived series of S_4 {orders:?}; perfect core of A_5 is A_5: {core_is_a5}; det = {det}"),
    ))
}

fn rho_exhaustion_check() -> Result<(bool, String)> {
    let rows = rho_exhaustion(2)?;
    let nonempty: Vec<&str> = rows.iter().filter(|r| r.found > 0).map(|r| r.group.as_str()).collect();
    let ok = rows.len() == 14 && rows.iter().all(|r| r.passed());
    Ok((
        ok,
        format!("{} groups; ρ found on {nonempty:?}, all canonical", rows.len()),
    ))
}

fn localization_oracle() -> Result<(bool, String)> {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let mut failures = Vec::new();
    let mut by_size = BTreeMap::new();
    for trial in 0..200 {
        let m = FiniteCommMonoid::random(&mut rng, 6);
        *by_size.entry(m.size()).or_insert(0) += 1;
        for p in [2u64, 3] {
            let loc = FiniteLocalization::new(&m, Inverted::P(p))?;
            let colim = colimit_oracle(&m, p)?;
            let perfect = loc.monoid().times_is_bijective(p);
            let isolated = !finite_zero_isolated(&m).isolated || finite_zero_isolated(loc.monoid()).isolated;
            if !(colim && perfect && isolated) {
                failures.push((trial, p));
            }
        }
    }
    Ok((
        failures.is_empty(),
        format!("400 localizations, sizes {by_size:?}, failures {failures:?}"),
    ))
}

fn invert_anything() -> Result<(bool, String)> {
    let n = pi0_pullback_check(&CommMonoid::Affine(AffineMonoid::free(1)), 2, DEFAULT_BOUND)?;
    let mut ok = n.passed() && n.invert_anything.is_some();
    let corpus = locally_monogenic_corpus();
    let mut affine_fail = Vec::new();
    for (name, m) in &corpus {
        let r = pi0_pullback_check(&CommMonoid::Affine(m.clone()), 2, DEFAULT_BOUND)?;
        if !(r.passed() && r.locally_monogenic.is_yes()) {
            affine_fail.push(name.clone());
        }
    }
    ok &= corpus.len() >= 20 && affine_fail.is_empty();
    let mut finite_checked = 0;
    let mut finite_fail = 0;
    for size in 1..=6 {
        for m in catalog(size) {
            if is_locally_monogenic(&CommMonoid::Finite(m.clone()), 1).is_yes() {
                finite_checked += 1;
                let mut good = true;
                for x in m.nonzero() {
                    good &= finite_invert_anything(m, x)?;
                }
                if !good {
                    finite_fail += 1;
                }
            }
        }
    }
    ok &= finite_fail == 0;
    Ok((
        ok,
        format!(
            "N passes; {} affine monoids (failures {affine_fail:?}); {finite_checked} locally monogenic finite monoids up to size 6 (failures {finite_fail})",
            corpus.len()
        ),
    ))
}

fn bar_homology_oracle() -> Result<(bool, String)> {
    let mut ok = true;
    let mut notes = Vec::new();
    for (q, d) in [(2usize, 4usize), (3, 3)] {
        let bar = HomologyBasis::compute(&FiniteGroup::cyclic(q), q as u32, d)?.dims();
        let oracle = periodic_homology_dims(q, q as u32, d)?;
        ok &= bar == oracle && bar.iter().all(|&x| x == 1);
        notes.push(format!("Z/{q} up to {d}: {bar:?}"));
    }
    Ok((ok, notes.join("; ")))
}

fn pipeline() -> Result<(bool, String)> {
    let h = assemble_fin_bialgebra(4, 3, 2)?;
    let axioms = check_axioms(&h).passed;
    let mut weakly_primitive = true;
    let mut phi = true;
    let mut positive = 0;
    for i in 0..h.dim() {
        if h.degree(i) == 0 {
            continue;
        }
        positive += 1;
        let x = std::iter::once((i, 1)).collect();
        match is_weakly_primitive(&h, &x)? {
            Some(alpha) => {
                // the grouplike of x's component
                let expected = h.index_of(&format!("[{}]", h.weight(i)));
                weakly_primitive &= expected.is_some_and(|j| alpha.len() == 1 && alpha.get(&j) == Some(&1));
            }
            None => weakly_primitive = false,
        }
        for m in [2, 3] {
            phi &= verify_phi_formula(&h, &x, m)?.holds;
        }
    }
    let nilpotent = frobenius_nilpotence(&h)?.all_vanish();
    let colimit = colimit_along_frobenius(&h)?;
    let dims = colimit.dims();
    let vanishing = dims.len() == 4 && dims[1..].iter().all(|&d| d == 0);
    let ok = axioms && weakly_primitive && phi && nilpotent && vanishing && degree_zero_matches(&colimit)?;
    Ok((
        ok,
        format!(
            "dim {}, axioms {axioms}, {positive} positive-degree classes weakly primitive {weakly_primitive}, Φ formula {phi}, nilpotent {nilpotent}, colimit dims {dims:?}",
            h.dim()
        ),
    ))
}

/// Degree-0 colimit classes versus `ℕ[1/p]` restricted to the window: the
/// class of weight `w` goes to the fraction `w/1`, and the map must be a
/// bijection onto `{w/1 : w ≤ W}` with distinct fractions.
fn degree_zero_matches(colimit: &crate::fpbialg::ColimitReport) -> Result<bool> {
    let classes = &colimit.degrees[0].classes;
    let loc = AffineLocalization::new(&AffineMonoid::free(1), Inverted::P(u64::from(colimit.p)), DEFAULT_BOUND)?;
    let fractions: Vec<(Vec<i64>, u32)> = classes.iter().map(|c| (vec![c.weight as i64], 0)).collect();
    let distinct = fractions
        .iter()
        .enumerate()
        .all(|(i, a)| fractions[i + 1..].iter().all(|b| !loc.equal(a, b)));
    let mut weights: Vec<usize> = classes.iter().map(|c| c.weight).collect();
    weights.sort_unstable();
    Ok(distinct && weights == (0..=colimit.window).collect::<Vec<_>>())
}

fn weight_consistency() -> Result<(bool, String)> {
    let h = assemble_fin_bialgebra(4, 3, 2)?;
    let colimit = colimit_along_frobenius(&h)?;
    let ok = degree_zero_matches(&colimit)?;
    let weights: Vec<usize> = colimit.degrees[0].classes.iter().map(|c| c.weight).collect();
    // the truncated table {0, …, 4} collapses under p, so the window is
    // compared inside ℕ[1/p] instead
    let truncated = FiniteLocalization::new(&FiniteCommMonoid::truncated_naturals(colimit.window), Inverted::P(2))?;
    Ok((
        ok,
        format!(
            "window W = {}; colimit classes at weights {weights:?} ↦ distinct dyadic fractions w/1; the capped table localizes to {} class(es)",
            colimit.window,
            truncated.monoid().size()
        ),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn determinant_matches_sign() {
        for p in [
            Permutation::grid_transpose(2, 4).unwrap(),
            Permutation::grid_transpose(2, 3).unwrap(),
            Permutation::transposition(5, 1, 3),
            Permutation::identity(4),
        ] {
            assert_eq!(permutation_matrix_det(&p), i64::from(p.sign()));
        }
    }
}
