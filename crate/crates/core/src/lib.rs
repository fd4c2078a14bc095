//! Exact computation of unipotent completions of groups and the surrounding
//! finite-group machinery.
//!
//! * [`exactmath`]: prime fields, rationals, echelon forms, truncated polynomials
//! * [`groups`]: finite groups from specs, subgroup closure, central series,
//!   quotients, section search
//! * [`groupalgebra`]: augmentation-ideal filtrations of group algebras,
//!   grouplike elements and completion profiles
//! * [`laurent`]: the infinite cyclic group through binomial polynomials and
//!   the shift matrices `(1+T)^k`
//! * [`cohomology`]: normalized bar cohomology, inflation and tower colimits

pub mod cohomology;
pub mod error;
pub mod exactmath;
pub mod groupalgebra;
pub mod groups;
pub mod laurent;

pub use error::{Error, Result};

/// Arbitrary-precision rational scalar.
pub type Q = num_rational::BigRational;
/// The rational numbers as a [`exactmath::Field`].
pub type Rationals = exactmath::NumField<Q>;
pub type Fp = exactmath::PrimeField;
pub type FpMatrix = exactmath::DenseMatrix<Fp>;
pub type QMatrix = exactmath::DenseMatrix<Rationals>;
pub type FpSubspace = exactmath::SubspaceBasis<Fp>;
pub type RationalPolynomial = exactmath::Polynomial<Q>;
