//! Mod-`p` homology of finite groups via the normalized bar complex.

mod assemble;
mod bar;
mod basis;
mod periodic;
mod products;

pub use assemble::{assemble_fin_bialgebra, class_name, homology_csv, homology_rows, HomologyRow};
pub use bar::{BarComplex, Budget};
pub use basis::{DegreeHomology, HomologyBasis};
pub use periodic::periodic_homology_dims;
pub use products::{
    aw_coproduct, aw_diagonal, aw_product, induced_map, kunneth_product, project_tensor, shuffle_product, ChainMap,
    CoproductTerm, InducedMap, KunnethProduct, TensorChain,
};
