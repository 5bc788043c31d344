//! Exact-arithmetic engine for finite reflection-rotation groups: cyclotomic
//! scalars, exact linear algebra, a matrix-group engine with base and strong
//! generating sets, the full catalog of the classification's group families,
//! structural analysis, and the assembly/decomposition correspondence for
//! reducible groups.

pub mod analysis;
pub mod assembly;
pub mod catalog;
pub mod cyclo;
pub mod error;
pub mod jsonio;
pub mod linalg;
pub mod matgroup;
pub mod perm;
pub mod verify;
pub mod witt;

pub use cyclo::Cyclo;
pub use error::{Error, Result};
pub use linalg::{CycloMatrix, CycloVector};
pub use matgroup::{GroupElement, MatrixGroup};
