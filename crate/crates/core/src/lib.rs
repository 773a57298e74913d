//! Modules, involution modules and switch cographs.

pub mod error;
pub mod gen;
pub mod imd;
pub mod modular;
pub mod oracles;
pub mod solvers;
pub mod structure;
pub mod switch_cograph;
pub mod switch_ops;
pub mod vertex_set;

pub use error::{Error, Result};
pub use imd::{
    enumerate_involution_modules_from_tree, find_forbidden_pattern, imd_tree, imd_tree_with_pivot, is_involution_module,
    CrossingFamilyTree, Direction, ImdLabel,
};
pub use modular::{binary_cotree, enumerate_modules_from_tree, is_module, modular_decomposition, MdKind, RootedDecompTree};
pub use structure::{Color, ColorInvolution, Graph, TwoStructure};
pub use switch_cograph::{binary_imdt, is_switch_cograph, BinaryImdt, ForbiddenWitness};
pub use switch_ops::{seidel_switch, switch_at_pivot, switch_colors, ExtendedColorTable};
pub use vertex_set::VertexSet;
