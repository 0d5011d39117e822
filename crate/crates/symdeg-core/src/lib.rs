//! Exact combinatorics of symmetric type-A quivers and their symplectic and
//! orthogonal representations.
//!
//! The crate decides degenerations between self-dual representation classes
//! through the Hom order, constructs explicit degeneration chains made of
//! isotropic reductions carrying one-parameter-subgroup certificates, and
//! cross-checks everything against an exact-rational matrix oracle.

pub mod ar;
pub mod chain;
pub mod error;
pub mod generic;
pub mod matrix;
pub mod quiver;
pub mod rep;
pub mod selftest;

pub use ar::{ArQuiver, PathDirection, Rectangle, SectionalPath};
pub use chain::{build_chain, hasse, validate_chain, Chain, ChainStep, Poset, StepKind};
pub use error::{ChainError, GenericOpError, MatrixError, QuiverError, RepError};
pub use generic::{
    can_embed_isotropically, generic_epsilon_subquotient, generic_kernel, generic_quotient,
    GenQuotResult, IsotropicAnswer,
};
pub use quiver::{Direction, DimVector, Interval, SymmetricQuiver};
pub use rep::{
    delta, ext_dim, hom_dim, hom_dim_linear, is_delta_fixed, is_epsilon_admissible, leq_hom,
    nabla_rep, EpsilonContext, HomTable, RepClass,
};
