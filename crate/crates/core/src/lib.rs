//! Exact computations around p-perfect commutative monoids: permutation
//! groups and their telescopes, finite and affine monoids with localization,
//! ρ-structures, truncated graded bialgebras over 𝔽_p, and bar-complex
//! homology of finite groups.
//!
//! ```
//! use pperfect::perm::Permutation;
//!
//! let t = Permutation::grid_transpose(2, 4).unwrap();
//! assert_eq!(t.cycle_type().lengths, vec![3, 3]);
//! ```

pub mod acceptance;
pub mod error;
pub mod fpbialg;
pub mod group;
pub mod homology;
pub mod linalg;
pub mod monoid;
pub mod perm;
pub mod structure;
pub mod telescope;

pub use error::{Error, Result};

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/permutations.md")]
    mod permutations {}
    #[doc = include_str!("../../../book/src/telescope.md")]
    mod telescope {}
    #[doc = include_str!("../../../book/src/monoids.md")]
    mod monoids {}
    #[doc = include_str!("../../../book/src/structure.md")]
    mod structure {}
    #[doc = include_str!("../../../book/src/bialgebras.md")]
    mod bialgebras {}
    #[doc = include_str!("../../../book/src/homology.md")]
    mod homology {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}
