//! Morphisms `ρ: G^p → G` with a diagonal identity and symmetric up to
//! conjugation, and their module analogue for a group acting on an abelian
//! group. Such a `ρ` forces `G` abelian and uniquely `p`-divisible; the
//! verifiers here check conditions and conclusion separately so that a
//! violation would be visible.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::group::FiniteGroup;

/// `ρ` stored by its coordinate endomorphisms `ρᵢ(g) = ρ(1, …, g, …, 1)`,
/// so `ρ(g₁, …, g_p) = ρ₁(g₁) ⋯ ρ_p(g_p)`. `k_sigma[i]` is the conjugating
/// element for the transposition `(i i+1)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct RhoCandidate {
    pub p: usize,
    pub coordinates: Vec<Vec<usize>>,
    pub k_sigma: Vec<usize>,
}

/// Budget on `|End(G)|^p` for [`search_rho`].
pub const SEARCH_BOUND: usize = 20_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Counterexample {
    pub condition: String,
    pub elements: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RhoGroupVerdict {
    pub diagonal: bool,
    pub symmetric: bool,
    pub conditions_hold: bool,
    pub abelian: bool,
    pub uniquely_divisible: bool,
    pub conclusion_holds: bool,
    pub counterexample: Option<Counterexample>,
}

impl RhoCandidate {
    pub fn evaluate(&self, g: &FiniteGroup, args: &[usize]) -> usize {
        self.coordinates
            .iter()
            .zip(args)
            .fold(g.identity(), |acc, (rho, &x)| g.mul(acc, rho[x]))
    }

    /// Checks the encoding: `p` endomorphisms with pairwise commuting images
    /// and one conjugating element per adjacent transposition.
    fn validate(&self, target: &FiniteGroup, source: &FiniteGroup) -> Result<()> {
        if self.p < 2 || self.coordinates.len() != self.p || self.k_sigma.len() != self.p - 1 {
            return Err(Error::malformed(
                "candidate needs p ≥ 2 coordinates and p − 1 witnesses",
            ));
        }
        if self.k_sigma.iter().any(|&k| k >= target.size()) {
            return Err(Error::malformed("conjugating element out of range"));
        }
        for rho in &self.coordinates {
            if !source.is_hom_to(target, rho) {
                return Err(Error::malformed("coordinate map is not a homomorphism"));
            }
        }
        for (i, a) in self.coordinates.iter().enumerate() {
            for b in &self.coordinates[i + 1..] {
                if !images_commute(target, a, b) {
                    return Err(Error::malformed("coordinate images do not commute"));
                }
            }
        }
        Ok(())
    }
}

fn images_commute(g: &FiniteGroup, a: &[usize], b: &[usize]) -> bool {
    a.iter().all(|&x| b.iter().all(|&y| g.mul(x, y) == g.mul(y, x)))
}

fn conjugate(g: &FiniteGroup, k: usize, x: usize) -> usize {
    g.mul(g.mul(k, x), g.inv(k))
}

/// Condition (2) for one permutation `σ` of the slots and one `k`: the
/// element in slot `j` lands in slot `σ(j)`, so `ρ∘σ = k ρ k⁻¹` reads
/// `ρ_{σ(j)}(x) = k ρ_j(x) k⁻¹`.
fn twisted_by(g: &FiniteGroup, coords: &[Vec<usize>], sigma: &[usize], k: usize) -> Option<(usize, usize)> {
    for (j, rho) in coords.iter().enumerate() {
        for x in g.elements() {
            if coords[sigma[j]][x] != conjugate(g, k, rho[x]) {
                return Some((j, x));
            }
        }
    }
    None
}

fn transposition(p: usize, i: usize) -> Vec<usize> {
    let mut s: Vec<usize> = (0..p).collect();
    s.swap(i, i + 1);
    s
}

/// Checks the diagonal identity `ρ(g, …, g) = g`, symmetry up to
/// conjugation on the adjacent transpositions (which generate `Σ_p`), and
/// then whether `G` is abelian with `g ↦ g^p` bijective.
pub fn verify_rho_group(g: &FiniteGroup, rho: &RhoCandidate) -> Result<RhoGroupVerdict> {
    rho.validate(g, g)?;
    let mut counterexample = None;
    let diagonal_fail = g.elements().find(|&x| rho.evaluate(g, &vec![x; rho.p]) != x);
    if let Some(x) = diagonal_fail {
        counterexample = Some(Counterexample {
            condition: "diagonal".into(),
            elements: vec![x],
        });
    }
    let mut symmetric = true;
    for (i, &k) in rho.k_sigma.iter().enumerate() {
        if let Some((j, x)) = twisted_by(g, &rho.coordinates, &transposition(rho.p, i), k) {
            symmetric = false;
            counterexample.get_or_insert(Counterexample {
                condition: format!("transposition ({i} {})", i + 1),
                elements: vec![j, x],
            });
        }
    }
    let diagonal = diagonal_fail.is_none();
    let abelian = g.is_abelian();
    let uniquely_divisible = g.power_map_bijective(rho.p);
    let conditions_hold = diagonal && symmetric;
    if conditions_hold && !(abelian && uniquely_divisible) {
        let witness = g
            .elements()
            .flat_map(|a| g.elements().map(move |b| (a, b)))
            .find(|&(a, b)| g.mul(a, b) != g.mul(b, a))
            .map(|(a, b)| vec![a, b]);
        counterexample = Some(Counterexample {
            condition: "conclusion".into(),
            elements: witness.unwrap_or_default(),
        });
    }
    Ok(RhoGroupVerdict {
        diagonal,
        symmetric,
        conditions_hold,
        abelian,
        uniquely_divisible,
        conclusion_holds: abelian && uniquely_divisible,
        counterexample,
    })
}

/// Every `ρ` satisfying both conditions, each with the least valid
/// conjugating element per transposition.
pub fn search_rho(g: &FiniteGroup, p: usize) -> Result<Vec<RhoCandidate>> {
    if p < 2 {
        return Err(Error::malformed("p must be at least 2"));
    }
    let ends = g.homomorphisms_to(g);
    let work = ends.len().checked_pow(p as u32).unwrap_or(usize::MAX);
    if work > SEARCH_BOUND {
        return Err(Error::Budget {
            what: format!("{work} coordinate tuples for p = {p}"),
            largest_feasible: format!("{SEARCH_BOUND}"),
        });
    }
    let mut found = Vec::new();
    let mut tuple: Vec<usize> = Vec::with_capacity(p);
    search(g, p, &ends, &mut tuple, &mut found);
    Ok(found)
}

fn search(g: &FiniteGroup, p: usize, ends: &[Vec<usize>], tuple: &mut Vec<usize>, found: &mut Vec<RhoCandidate>) {
    if tuple.len() == p {
        let coords: Vec<Vec<usize>> = tuple.iter().map(|&i| ends[i].clone()).collect();
        let diagonal = g.elements().all(|x| {
            let v = coords.iter().fold(g.identity(), |acc, rho| g.mul(acc, rho[x]));
            v == x
        });
        if !diagonal {
            return;
        }
        let mut k_sigma = Vec::with_capacity(p - 1);
        for i in 0..p - 1 {
            let sigma = transposition(p, i);
            match g.elements().find(|&k| twisted_by(g, &coords, &sigma, k).is_none()) {
                Some(k) => k_sigma.push(k),
                None => return,
            }
        }
        found.push(RhoCandidate {
            p,
            coordinates: coords,
            k_sigma,
        });
        return;
    }
    for (i, e) in ends.iter().enumerate() {
        if tuple.iter().all(|&j| images_commute(g, &ends[j], e)) {
            tuple.push(i);
            search(g, p, ends, tuple, found);
            tuple.pop();
        }
    }
}

/// `ρ(a₁, …, a_p) = p⁻¹(a₁ + … + a_p)`, with `p⁻¹` taken modulo the exponent.
pub fn canonical_rho(a: &FiniteGroup, p: usize) -> Result<RhoCandidate> {
    if p < 2 {
        return Err(Error::malformed("p must be at least 2"));
    }
    if !a.is_abelian() {
        return Err(Error::malformed("canonical ρ needs an abelian group"));
    }
    let e = a.exponent();
    let u = (1..=e)
        .find(|u| (u * p) % e == 1 % e)
        .ok_or_else(|| Error::NotInvertible(format!("{p} is not invertible on a group of exponent {e}")))?;
    let coord: Vec<usize> = a.elements().map(|x| a.pow(x, u)).collect();
    Ok(RhoCandidate {
        p,
        coordinates: vec![coord; p],
        k_sigma: vec![a.identity(); p - 1],
    })
}

/// A group `G` acting on an abelian group `A` by automorphisms;
/// `action[g][a]` is `g·a`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GModule {
    pub group: FiniteGroup,
    pub module: FiniteGroup,
    pub action: Vec<Vec<usize>>,
}

impl GModule {
    pub fn new(group: FiniteGroup, module: FiniteGroup, action: Vec<Vec<usize>>) -> Result<Self> {
        if !module.is_abelian() {
            return Err(Error::malformed("the module must be abelian"));
        }
        if action.len() != group.size() {
            return Err(Error::malformed("one action row per group element"));
        }
        for row in &action {
            if !module.is_hom_to(&module, row) || !is_bijection(row) {
                return Err(Error::malformed("each group element must act by an automorphism"));
            }
        }
        if action[group.identity()] != module.elements().collect::<Vec<_>>() {
            return Err(Error::malformed("the identity must act trivially"));
        }
        for g in group.elements() {
            for h in group.elements() {
                let gh = &action[group.mul(g, h)];
                if module.elements().any(|a| gh[a] != action[g][action[h][a]]) {
                    return Err(Error::malformed(format!("action is not compatible at ({g}, {h})")));
                }
            }
        }
        Ok(GModule { group, module, action })
    }

    pub fn trivial_action(group: FiniteGroup, module: FiniteGroup) -> Self {
        let row: Vec<usize> = module.elements().collect();
        let action = vec![row; group.size()];
        GModule { group, module, action }
    }

    pub fn is_trivial(&self) -> bool {
        self.action
            .iter()
            .all(|row| row.iter().enumerate().all(|(a, &b)| a == b))
    }
}

fn is_bijection(row: &[usize]) -> bool {
    let mut seen = vec![false; row.len()];
    row.iter()
        .all(|&x| x < row.len() && !std::mem::replace(&mut seen[x], true))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RhoActionVerdict {
    pub diagonal: bool,
    pub symmetric: bool,
    pub conditions_hold: bool,
    pub uniquely_divisible: bool,
    /// Present when equivariance was requested.
    pub equivariant: Option<bool>,
    pub action_trivial: bool,
    pub conclusion_holds: bool,
    pub counterexample: Option<Counterexample>,
}

/// `ρ: A^p → A` with `ρ(a, …, a) = a` and `ρ∘σ = k_σ·ρ` (`k_σ ∈ G` acting).
///
/// Equivariance means `ρ(g₁a₁, …, g_p a_p) = τ(g₁, …, g_p)·ρ(a₁, …, a_p)`
/// for a morphism `τ: G^p → G` with `τ(g, …, g) = g`. When `G` is uniquely
/// `p`-divisible, `τ = p⁻¹Σ` is used; otherwise every `τ` with coordinates in
/// `End(G)` is tried. With equivariance the action must be trivial.
pub fn verify_rho_action(m: &GModule, rho: &RhoCandidate, equivariant: bool) -> Result<RhoActionVerdict> {
    let a = &m.module;
    let g = &m.group;
    rho.validate(a, a)?;
    if rho.k_sigma.iter().any(|&k| k >= g.size()) {
        return Err(Error::malformed(
            "conjugating element out of range for the acting group",
        ));
    }
    if equivariant && !g.is_abelian() {
        return Err(Error::malformed("equivariance is defined for abelian acting groups"));
    }
    let mut counterexample = None;
    let diagonal_fail = a.elements().find(|&x| rho.evaluate(a, &vec![x; rho.p]) != x);
    if let Some(x) = diagonal_fail {
        counterexample = Some(Counterexample {
            condition: "diagonal".into(),
            elements: vec![x],
        });
    }
    let mut symmetric = true;
    for (i, &k) in rho.k_sigma.iter().enumerate() {
        let sigma = transposition(rho.p, i);
        for (j, coord) in rho.coordinates.iter().enumerate() {
            if let Some(x) = a
                .elements()
                .find(|&x| rho.coordinates[sigma[j]][x] != m.action[k][coord[x]])
            {
                symmetric = false;
                counterexample.get_or_insert(Counterexample {
                    condition: format!("transposition ({i} {})", i + 1),
                    elements: vec![j, x],
                });
            }
        }
    }
    let equivariance = equivariant.then(|| equivariance_holds(m, rho));
    let diagonal = diagonal_fail.is_none();
    let conditions_hold = diagonal && symmetric;
    let uniquely_divisible = a.power_map_bijective(rho.p);
    let action_trivial = m.is_trivial();
    let conclusion_holds = uniquely_divisible && (equivariance != Some(true) || action_trivial);
    if conditions_hold && !conclusion_holds {
        counterexample = Some(Counterexample {
            condition: "conclusion".into(),
            elements: Vec::new(),
        });
    }
    Ok(RhoActionVerdict {
        diagonal,
        symmetric,
        conditions_hold,
        uniquely_divisible,
        equivariant: equivariance,
        action_trivial,
        conclusion_holds,
        counterexample,
    })
}

fn equivariance_holds(m: &GModule, rho: &RhoCandidate) -> bool {
    let g = &m.group;
    let slot_ok = |tau: &[usize], j: usize| {
        g.elements().all(|h| {
            m.module
                .elements()
                .all(|x| rho.coordinates[j][m.action[h][x]] == m.action[tau[h]][rho.coordinates[j][x]])
        })
    };
    if let Ok(canon) = canonical_rho(g, rho.p) {
        if g.power_map_bijective(rho.p) {
            return (0..rho.p).all(|j| slot_ok(&canon.coordinates[j], j));
        }
    }
    // per slot, the endomorphisms τⱼ compatible with ρⱼ; then Σ τⱼ = id
    let ends = g.homomorphisms_to(g);
    let options: Vec<Vec<&Vec<usize>>> = (0..rho.p)
        .map(|j| ends.iter().filter(|t| slot_ok(t, j)).collect())
        .collect();
    let mut idx = vec![0usize; rho.p];
    if options.iter().any(Vec::is_empty) {
        return false;
    }
    loop {
        let diagonal = g.elements().all(|h| {
            let v = idx
                .iter()
                .enumerate()
                .fold(g.identity(), |acc, (j, &i)| g.mul(acc, options[j][i][h]));
            v == h
        });
        if diagonal {
            return true;
        }
        let mut k = 0;
        loop {
            if k == rho.p {
                return false;
            }
            idx[k] += 1;
            if idx[k] < options[k].len() {
                break;
            }
            idx[k] = 0;
            k += 1;
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct ExhaustionRow {
    pub group: String,
    pub order: usize,
    pub abelian: bool,
    pub found: usize,
    /// Nonempty exactly when abelian of order prime to `p`.
    pub predicted_nonempty: bool,
    pub all_canonical: bool,
    pub conclusions_hold: bool,
}

impl ExhaustionRow {
    pub fn passed(&self) -> bool {
        (self.found > 0) == self.predicted_nonempty && self.all_canonical && self.conclusions_hold
    }
}

/// Runs [`search_rho`] on every group of order at most 8.
pub fn rho_exhaustion(p: usize) -> Result<Vec<ExhaustionRow>> {
    crate::group::groups_up_to_order_8()
        .into_iter()
        .map(|(name, g)| {
            let found = search_rho(&g, p)?;
            let canonical = canonical_rho(&g, p).ok();
            let all_canonical = found
                .iter()
                .all(|r| canonical.as_ref().is_some_and(|c| c.coordinates == r.coordinates));
            let mut conclusions_hold = true;
            for r in &found {
                let v = verify_rho_group(&g, r)?;
                conclusions_hold &= v.conditions_hold && v.conclusion_holds;
            }
            Ok(ExhaustionRow {
                order: g.size(),
                abelian: g.is_abelian(),
                found: found.len(),
                predicted_nonempty: g.is_abelian() && g.size() % p != 0,
                all_canonical,
                conclusions_hold,
                group: name,
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::symmetric;
    use crate::perm::PermGroup;

    fn scalar(n: usize, p: usize, c: usize) -> RhoCandidate {
        let coord: Vec<usize> = (0..n).map(|x| (c * x) % n).collect();
        RhoCandidate {
            p,
            coordinates: vec![coord; p],
            k_sigma: vec![0; p - 1],
        }
    }

    #[test]
    fn scalar_rhos_on_cyclic_groups() {
        let v = verify_rho_group(&FiniteGroup::cyclic(3), &scalar(3, 2, 2)).unwrap();
        assert!(v.conditions_hold && v.conclusion_holds && v.counterexample.is_none());
        let v = verify_rho_group(&FiniteGroup::cyclic(5), &scalar(5, 2, 3)).unwrap();
        assert!(v.conditions_hold && v.conclusion_holds);
        let v = verify_rho_group(&FiniteGroup::trivial(), &scalar(1, 3, 0)).unwrap();
        assert!(v.conditions_hold && v.conclusion_holds);
        // ρ(a, b) = a + b fails the diagonal identity on ℤ/3
        let v = verify_rho_group(&FiniteGroup::cyclic(3), &scalar(3, 2, 1)).unwrap();
        assert!(!v.diagonal && v.counterexample.unwrap().condition == "diagonal");
    }

    #[test]
    fn malformed_candidates_are_rejected() {
        let mut bad = scalar(3, 2, 2);
        bad.coordinates[0] = vec![0, 2, 2];
        assert!(verify_rho_group(&FiniteGroup::cyclic(3), &bad).is_err());
        let s3 = symmetric(3);
        let ends = s3.homomorphisms_to(&s3);
        let id = ends
            .iter()
            .find(|f| f.iter().enumerate().all(|(a, &b)| a == b))
            .unwrap();
        let rho = RhoCandidate {
            p: 2,
            coordinates: vec![id.clone(), id.clone()],
            k_sigma: vec![0],
        };
        assert!(verify_rho_group(&s3, &rho).is_err());
    }

    #[test]
    fn searches() {
        assert!(search_rho(&FiniteGroup::cyclic(2), 2).unwrap().is_empty());
        assert!(search_rho(&symmetric(3), 2).unwrap().is_empty());
        let z3 = search_rho(&FiniteGroup::cyclic(3), 2).unwrap();
        assert_eq!(z3, vec![scalar(3, 2, 2)]);
        let z5 = search_rho(&FiniteGroup::cyclic(5), 3).unwrap();
        assert_eq!(z5, vec![scalar(5, 3, 2)]);
    }

    #[test]
    fn canonical_choices() {
        assert_eq!(canonical_rho(&FiniteGroup::cyclic(3), 2).unwrap(), scalar(3, 2, 2));
        assert_eq!(canonical_rho(&FiniteGroup::cyclic(5), 3).unwrap(), scalar(5, 3, 2));
        assert_eq!(canonical_rho(&FiniteGroup::trivial(), 7).unwrap(), scalar(1, 7, 0));
        assert!(matches!(
            canonical_rho(&FiniteGroup::cyclic(4), 2),
            Err(Error::NotInvertible(_))
        ));
    }

    #[test]
    fn exhaustion_up_to_order_8() {
        let rows = rho_exhaustion(2).unwrap();
        assert_eq!(rows.len(), 14);
        assert!(rows.iter().all(ExhaustionRow::passed));
        let nonempty: Vec<&str> = rows.iter().filter(|r| r.found > 0).map(|r| r.group.as_str()).collect();
        assert_eq!(nonempty, vec!["1", "Z3", "Z5", "Z7"]);
    }

    #[test]
    fn transpositions_suffice_for_small_p() {
        // full Σ_p check: every σ has some k with ρ_{σ(j)} = k ρ_j k⁻¹
        for p in 2..=3 {
            for (_, g) in crate::group::groups_up_to_order_8()
                .into_iter()
                .filter(|(_, g)| g.size() <= 6)
            {
                let ends = g.homomorphisms_to(&g);
                let sym = PermGroup::symmetric(p, 10).unwrap();
                let perms: Vec<Vec<usize>> = sym.elements().unwrap().iter().map(|s| s.images().to_vec()).collect();
                let mut tuple = vec![0usize; p];
                loop {
                    let coords: Vec<Vec<usize>> = tuple.iter().map(|&i| ends[i].clone()).collect();
                    let by_generators = (0..p - 1).all(|i| {
                        g.elements()
                            .any(|k| twisted_by(&g, &coords, &transposition(p, i), k).is_none())
                    });
                    let full = perms
                        .iter()
                        .all(|s| g.elements().any(|k| twisted_by(&g, &coords, s, k).is_none()));
                    assert_eq!(by_generators, full);
                    let mut k = 0;
                    while k < p {
                        tuple[k] += 1;
                        if tuple[k] < ends.len() {
                            break;
                        }
                        tuple[k] = 0;
                        k += 1;
                    }
                    if k == p {
                        break;
                    }
                }
            }
        }
    }

    #[test]
    fn actions() {
        let z3 = FiniteGroup::cyclic(3);
        let rho = canonical_rho(&z3, 2).unwrap();
        let triv = GModule::trivial_action(FiniteGroup::trivial(), z3.clone());
        let v = verify_rho_action(&triv, &rho, true).unwrap();
        assert!(v.conditions_hold && v.conclusion_holds && v.equivariant == Some(true));

        let sign = GModule::new(FiniteGroup::cyclic(2), z3.clone(), vec![vec![0, 1, 2], vec![0, 2, 1]]).unwrap();
        let v = verify_rho_action(&sign, &rho, true).unwrap();
        assert!(v.conditions_hold && v.equivariant == Some(false) && !v.action_trivial && v.conclusion_holds);

        let z5 = FiniteGroup::cyclic(5);
        let on5 = GModule::trivial_action(FiniteGroup::cyclic(3), z5.clone());
        let v = verify_rho_action(&on5, &canonical_rho(&z5, 2).unwrap(), true).unwrap();
        assert!(v.conditions_hold && v.equivariant == Some(true) && v.action_trivial && v.conclusion_holds);
    }

    #[test]
    fn equivariant_rho_forces_trivial_actions() {
        // every action of ℤ/2 or ℤ/3 on ℤ/5 by automorphisms
        let z5 = FiniteGroup::cyclic(5);
        let rho = canonical_rho(&z5, 2).unwrap();
        for n in [2usize, 3, 4] {
            let g = FiniteGroup::cyclic(n);
            for u in 1..5usize {
                let action: Vec<Vec<usize>> = (0..n)
                    .map(|h| (0..5).map(|x| (x * u.pow(h as u32)) % 5).collect())
                    .collect();
                let Ok(m) = GModule::new(g.clone(), z5.clone(), action) else {
                    continue;
                };
                let v = verify_rho_action(&m, &rho, true).unwrap();
                if v.conditions_hold && v.equivariant == Some(true) {
                    assert!(v.action_trivial);
                }
                assert!(v.conclusion_holds);
            }
        }
    }

    #[test]
    fn bad_actions_are_rejected() {
        let z3 = FiniteGroup::cyclic(3);
        assert!(GModule::new(FiniteGroup::cyclic(2), z3.clone(), vec![vec![0, 2, 1], vec![0, 1, 2]]).is_err());
        assert!(GModule::new(
            FiniteGroup::cyclic(3),
            z3,
            vec![vec![0, 1, 2], vec![0, 2, 1], vec![0, 2, 1]]
        )
        .is_err());
    }
}
