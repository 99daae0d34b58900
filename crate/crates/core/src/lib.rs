//! Finite permutation groups, exact linear algebra over GF(p), modular
//! representations, and the characteristic subgroups and maximal-subgroup
//! machinery built on them.
//!
//! The crate is `no_std` with `alloc`. Points are 0-based internally and
//! 1-based in cycle notation. Products compose left to right:
//! `(a * b)(x) = b(a(x))`.

#![no_std]

extern crate alloc;

pub mod affine;
pub mod arith;
pub mod atlas;
mod chain;
pub mod corpus;
pub mod criteria;
pub mod error;
pub mod gf;
pub mod gfpoly;
pub mod group;
pub mod hom;
pub mod maximals;
pub mod modrep;
pub mod perm;
pub mod structure;
pub mod verify;

pub use affine::{affine_semidirect_product, restrict_to_submodule, AffineGroup, SplitInfo};
pub use error::{Error, Result};
pub use gf::{solve_linear, GFMatrix, GFVector, Subspace};
pub use group::{Bounds, PermGroup, SubgroupHandle};
pub use hom::{coset_action, direct_product, hom_from_images, quotient, DirectProduct, Homomorphism};
pub use modrep::{factor_module, CompositionFactor, FactorModule, FactorTag, FpModule, Irreducibility, SubmoduleBasis};
pub use perm::Permutation;
pub use verify::{run_verification, VerificationReport};
