//! Kac–Moody root data: real roots, a height-truncated Kac–Moody algebra
//! with exact structure constants, divided-power adjoint operators,
//! invariant subspaces and rank-2 commutation checks.

use thiserror::Error;

use crate::cartan::GcmError;

pub mod algebra;
pub mod checks;
pub mod lattice;
pub mod linalg;
pub mod operators;
pub mod rank2;
pub mod roots;

pub use algebra::{build_algebra, build_algebra_capped, Elem, Generator, KmAlgebra};
pub use roots::{check_enumeration, positive_real_roots, RealRoot, RealRootTable};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum KmError {
    #[error("invalid cartan matrix: {0}")]
    InvalidGcm(#[from] GcmError),
    #[error("window too large: {0}")]
    WindowTooLarge(String),
    #[error("window exceeded: {0}")]
    WindowExceeded(String),
    #[error("carrier not invariant: {0}")]
    NotInvariant(String),
    #[error("not a rank-2 cartan matrix of finite type: {0}")]
    NotRankTwoFinite(String),
}
