//! ν-trees, ν-paths and the ν-Tamari lattices, with the bijections from dominant pipe dreams.

mod lattice;
mod operations;
mod tree;

pub use lattice::{BitSet, NuPath, NuTamari, TamariFamily};
pub use operations::all_trees;
pub use tree::{in_region, nu_compatible, phi, psi, psi_inverse, region, NuTree, Point};
