//! Homological algebra over finite-dimensional quiver algebras over `F_p`.
//!
//! The crate covers exact linear algebra, presented path algebras and their
//! modules, syzygies and relative dimensions, bounded complexes, and level
//! certificates that can be checked independently of how they were built.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod algebra;
pub mod complexes;
pub mod error;
pub mod homological;
pub mod levels;
pub mod linalg;
pub mod module;
pub mod sampling;

pub use algebra::{load_algebra, Algebra, AlgebraPresentation, Arrow, Path, RelationTerm};
pub use error::{Error, Result};
pub use linalg::{Fp, LinalgError, Matrix, Modulus};
pub use module::{Module, ModuleMap};
