//! Reconstruction of binary images from two orthogonal projections plus
//! per-block gray values.
//!
//! The crate is `no_std` (it needs `alloc`). All coordinates are Cartesian
//! and 1-based: cell `(p, q)` is column `p`, row `q`, and `(1, 1)` is the
//! lower-left cell. Blocks are addressed by their lower-left corner.
//!
//! * [`model`] holds the instance and image types and constraint checking.
//! * [`subsolvers`] solves the single-gray-level restrictions.
//! * [`solver`] is the exact polynomial reconstruction for `k = 2`, `ε = 0`
//!   together with the uniqueness test.
//! * [`switches`] implements the local-switch catalog and total-variation
//!   descent.
//! * [`hardness`] builds 1-in-3-SAT circuit boards and the block-size lifting.
//! * [`oracle`] is an exhaustive reference solver for small instances.

#![no_std]

extern crate alloc;

pub mod block;
pub mod flow;
pub mod hardness;
pub mod model;
pub mod oracle;
pub mod solver;
pub mod subsolvers;
pub mod switches;

mod search;

pub use block::{classify_block, BlockType};
pub use model::{
    degrade, make_exact_instance, perturb_instance, random_phantom, validate_instance,
    verify_solution, BinaryImage, GrayImage, Instance, InstanceError, VerificationReport,
};
pub use solver::{check_unique, solve_dr, DrError};

/// A lattice point `(x, y)`, 1-based.
pub type Point = (usize, usize);
