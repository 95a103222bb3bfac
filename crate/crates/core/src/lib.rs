//! Exact computations for finite-dimensional left Leibniz algebras over the
//! rationals and prime fields.

pub mod algebra;
pub mod corpus;
pub mod derivations;
pub mod error;
pub mod linalg;
pub mod oracle;
pub mod scalar;
pub mod series;
pub mod structure;
pub mod subinvariance;
pub mod theorems;

pub use algebra::{LeibnizAlgebra, Quotient, Side, SubalgebraView, TableBuilder};
pub use error::{Error, Result};
pub use linalg::{Matrix, Subspace, Vector};
pub use scalar::{Field, Scalar};
