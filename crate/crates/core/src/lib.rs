//! Finite-dimensional complex associative algebras, their involutions and
//! trivolutions (conjugate-linear anti-homomorphisms with τ³ = τ).

pub mod algebra;
pub mod duality;
pub mod error;
pub mod instances;
pub mod io;
pub mod linalg;
pub mod search;
pub mod spectra;
pub mod starmap;
pub mod suite;
pub mod trivolution;
pub mod unitization;

pub use algebra::{Algebra, AlgebraId, Element, NormKind, Subspace, SubspaceFlags};
pub use error::{Error, Result};
pub use linalg::{CMatrix, CVector, Tolerance, C64};
pub use starmap::{AdjointMode, AlgMap, DualVector, Multiplicativity};
