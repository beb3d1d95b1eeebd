//! Exact computation in free nonassociative algebras over the rationals.
//!
//! The crate builds the skew-symmetric family `f_m`, the skew-symmetrization of
//! one-variable elements, and the bracket words of the free alternative
//! superalgebra on one odd generator, and decides membership in T-ideals of
//! varieties (associative, alternative, flexible, ...) component by component
//! with exact rational row reduction. Positive answers come with certificates
//! that can be re-expanded without the solver.

pub mod config;
pub mod error;
pub mod fm;
pub mod linalg;
pub mod magma;
pub mod symmetrize;
pub mod variety;
pub mod verification;

pub use config::Config;
pub use error::{Error, Result};
pub use magma::{MagmaWord, MultiPoly, Multidegree, VarId};

/// Exact rational scalar.
pub type Coefficient = num_rational::BigRational;
