//! Commutative monoids: finite tables and affine submonoids of `ℤ^d`.

mod affine;
mod corpus;
mod finite;
mod localize;
mod lp;
mod ops;
mod snf;

pub use affine::{AffineMonoid, Membership};
pub use corpus::{locally_monogenic_corpus, non_monogenic_corpus};
pub use finite::{catalog, is_hom, FiniteCommMonoid};
pub use localize::{
    fractions_match_colimit, AffineLocalization, AffinePair, FiniteLocalization, Inverted, LocalizedMonoid, StableImage,
};
pub use lp::feasible;
pub use ops::*;
pub use snf::{smith_normal_form, Cokernel, FGAbelianGroup, Lattice, SmithForm};
