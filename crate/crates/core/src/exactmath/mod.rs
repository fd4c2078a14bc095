//! Exact scalars and deterministic linear algebra.
//!
//! Everything here is generic over [`Field`]; the crate root provides the
//! concrete aliases used by the rest of the library.

mod echelon;
mod field;
mod matrix;
mod poly;
mod sparse;

pub use echelon::{echelonize, nullspace, span, subspace_contains, EchelonBuilder, NullspaceBuilder, SubspaceBasis};
pub use field::{is_prime, ExactScalar, Field, FieldSpec, NumField, PrimeField};
pub use matrix::DenseMatrix;
pub use poly::{truncated_poly_multiply, Polynomial};
pub use sparse::SparseEliminator;
