//! Exact structure theory for Lie algebras and reductive homogeneous
//! spaces, with decision procedures for constant-length Killing fields.

pub mod algebra;
pub mod corpus;
pub mod homspace;
pub mod linalg;
pub mod poly;
pub mod report;
pub mod scalar;
pub mod spectral;
pub mod theorems;

pub use algebra::{Declared, LeviReport, LieAlgebra, LieError, SimpleIdeal};
pub use linalg::{Matrix, Subspace, Vector};
pub use poly::RationalPolynomial;
pub use scalar::Scalar;
