//! Direct systems of permutation groups along block-diagonal embeddings,
//! probed level by level. The colimit is never built: injective transitions
//! make equality and commutation at a common level decisive.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::perm::{CycleType, PermGroup, Permutation, DEFAULT_ORDER_BOUND};

/// Default level caps: `Σ_{2^6}` and `Σ_{3^4}`.
pub fn default_max_level(p: usize) -> usize {
    if p == 2 {
        6
    } else {
        4
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum LevelGroups {
    /// The full symmetric group at every level.
    Symmetric,
    /// The same group at every level, given by generators of degree
    /// `base_degree` (the transition must then be the identity, `copies = 1`).
    Constant { generators: Vec<Permutation> },
}

/// Level `k` acts on `base_degree · copies^k` points; the transition to
/// level `k + 1` places `copies` side-by-side copies.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DirectSystem {
    pub p: usize,
    pub base_degree: usize,
    pub copies: usize,
    pub groups: LevelGroups,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct TelescopeElement {
    pub level: usize,
    pub value: Permutation,
}

impl TelescopeElement {
    pub fn new(level: usize, value: Permutation) -> Self {
        TelescopeElement { level, value }
    }
}

impl DirectSystem {
    /// `Σ_1 → Σ_p → Σ_{p²} → …` along `c = p` diagonal copies.
    pub fn symmetric_tower(p: usize) -> Result<Self> {
        if p < 2 {
            return Err(Error::malformed("p must be at least 2"));
        }
        Ok(DirectSystem {
            p,
            base_degree: 1,
            copies: p,
            groups: LevelGroups::Symmetric,
        })
    }

    /// A constant system with identity transitions.
    pub fn constant(degree: usize, generators: Vec<Permutation>) -> Result<Self> {
        if generators.iter().any(|g| g.degree() != degree) {
            return Err(Error::malformed(format!("generators must have degree {degree}")));
        }
        Ok(DirectSystem {
            p: 1,
            base_degree: degree,
            copies: 1,
            groups: LevelGroups::Constant { generators },
        })
    }

    pub fn degree(&self, level: usize) -> usize {
        self.base_degree * self.copies.pow(level as u32)
    }

    /// Generators at a level: adjacent transpositions for the symmetric
    /// tower, the given generators for a constant system.
    pub fn generators(&self, level: usize) -> Vec<Permutation> {
        match &self.groups {
            LevelGroups::Symmetric => {
                let n = self.degree(level);
                (0..n.saturating_sub(1))
                    .map(|i| Permutation::transposition(n, i, i + 1))
                    .collect()
            }
            LevelGroups::Constant { generators } => generators.clone(),
        }
    }

    pub fn contains(&self, e: &TelescopeElement) -> Result<bool> {
        if e.value.degree() != self.degree(e.level) {
            return Ok(false);
        }
        match &self.groups {
            LevelGroups::Symmetric => Ok(true),
            LevelGroups::Constant { generators } => {
                let g = PermGroup::generate(self.base_degree, generators.clone(), DEFAULT_ORDER_BOUND)?;
                Ok(g.contains(&e.value))
            }
        }
    }

    pub fn transition(&self, value: &Permutation) -> Permutation {
        value.block_diagonal_embed(self.copies).expect("copies is positive")
    }

    /// Checks on levels `0..levels` that each transition is injective on the
    /// level's generators and their products, and that two steps agree with
    /// one step of `copies²` blocks.
    pub fn verify_transitions(&self, levels: usize) -> Result<()> {
        for k in 0..levels {
            let gens = self.generators(k);
            let mut samples = gens.clone();
            for a in &gens {
                for b in &gens {
                    samples.push(a * b);
                }
            }
            for s in &samples {
                let once = self.transition(s);
                if once.is_identity() != s.is_identity() {
                    return Err(Error::malformed(format!("transition at level {k} is not injective")));
                }
                let twice = self.transition(&once);
                let direct = s.block_diagonal_embed(self.copies * self.copies).expect("positive");
                if twice != direct {
                    return Err(Error::malformed(format!("transitions at level {k} do not compose")));
                }
            }
        }
        Ok(())
    }

    pub fn stabilize(&self, e: &TelescopeElement, target: usize) -> Result<TelescopeElement> {
        if target < e.level {
            return Err(Error::malformed(format!(
                "cannot stabilize from level {} down to {target}",
                e.level
            )));
        }
        let mut value = e.value.clone();
        for _ in e.level..target {
            value = self.transition(&value);
        }
        Ok(TelescopeElement::new(target, value))
    }

    /// Equality in the colimit, decided at the common level.
    pub fn colimit_equal(&self, a: &TelescopeElement, b: &TelescopeElement) -> Result<bool> {
        let level = a.level.max(b.level);
        Ok(self.stabilize(a, level)?.value == self.stabilize(b, level)?.value)
    }

    /// Scans levels `0..=max_level`, comparing every generator introduced so
    /// far (stabilized) with every other. A non-commuting pair persists
    /// at all later levels, so the first one found is final.
    pub fn abelianness_probe(&self, max_level: usize) -> Result<AbelianVerdict> {
        if max_level < 1 {
            return Err(Error::malformed("max_level must be at least 1"));
        }
        let mut pool: Vec<TelescopeElement> = Vec::new();
        for level in 0..=max_level {
            // this level's own generators first, then the stabilized older ones
            let mut next: Vec<TelescopeElement> = self
                .generators(level)
                .into_iter()
                .map(|g| TelescopeElement::new(level, g))
                .collect();
            for e in &pool {
                next.push(self.stabilize(e, level)?);
            }
            pool = next;
            for (i, a) in pool.iter().enumerate() {
                for b in &pool[i + 1..] {
                    if !a.value.commutes_with(&b.value) {
                        return Ok(AbelianVerdict::NonAbelian {
                            level,
                            left: a.clone(),
                            right: b.clone(),
                        });
                    }
                }
            }
        }
        Ok(AbelianVerdict::AbelianUpTo { max_level })
    }

    /// For each level from `e.level` to `max_level`: whether the stabilized
    /// value has a `q`-th root in the level group (cycle-type criterion,
    /// symmetric tower only), and whether its restrictions to the blocks of
    /// the original level are pairwise conjugate.
    pub fn divisibility_probe(
        &self,
        e: &TelescopeElement,
        q: usize,
        max_level: usize,
    ) -> Result<Vec<DivisibilityRecord>> {
        if max_level < e.level {
            return Err(Error::malformed("max_level must be at least the element's level"));
        }
        if !matches!(self.groups, LevelGroups::Symmetric) {
            return Err(Error::malformed("divisibility is probed on symmetric towers only"));
        }
        let block = self.degree(e.level);
        (e.level..=max_level)
            .map(|level| {
                let v = self.stabilize(e, level)?.value;
                let root = v.pth_root(q)?;
                let factors = block_factors(&v, block);
                let conjugate_blocks = match factors.split_first() {
                    Some((first, rest)) => {
                        let mut all = true;
                        for f in rest {
                            all &= first.are_conjugate(f)?;
                        }
                        all
                    }
                    None => true,
                };
                Ok(DivisibilityRecord {
                    level,
                    degree: v.degree(),
                    cycle_type: v.cycle_type(),
                    has_root: root.exists,
                    witness: root.witness,
                    nontrivial_blocks: factors.len(),
                    conjugate_blocks,
                })
            })
            .collect()
    }
}

/// Nontrivial restrictions of `v` to consecutive blocks of `block` points,
/// each extended by the identity.
fn block_factors(v: &Permutation, block: usize) -> Vec<Permutation> {
    let n = v.degree();
    (0..n / block)
        .filter_map(|b| {
            let range = b * block..(b + 1) * block;
            if range.clone().all(|x| v.apply(x) == x) {
                return None;
            }
            let images = (0..n)
                .map(|x| if range.contains(&x) { v.apply(x) } else { x })
                .collect();
            Some(Permutation::new(images).expect("blocks are invariant"))
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum AbelianVerdict {
    NonAbelian {
        level: usize,
        left: TelescopeElement,
        right: TelescopeElement,
    },
    AbelianUpTo {
        max_level: usize,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DivisibilityRecord {
    pub level: usize,
    pub degree: usize,
    pub cycle_type: CycleType,
    pub has_root: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Permutation>,
    pub nontrivial_blocks: usize,
    pub conjugate_blocks: bool,
}
