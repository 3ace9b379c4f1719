//! Combinatorial and homological invariants of quasitoric manifolds and
//! moment-angle complexes.
//!
//! The crate covers h-vectors of simple polytopes, homology of moment-angle
//! complexes through the stable splitting into full subcomplexes, cohomology
//! rings of quasitoric manifolds over prime fields and the rationals, the
//! p-local splitting of their suspensions, and homological certificates for the
//! (non-)triviality of the projection `Z_{K(P)} -> M`.
//!
//! All arithmetic is exact. Linear algebra is generic over [`scalar::Field`];
//! the aliases below name the concrete scalar and matrix types used at the
//! public boundary.

pub mod algebra;
pub mod complex;
pub mod error;
pub mod fixtures;
pub mod homology;
pub mod matrix;
pub mod moment_angle;
pub mod projection;
pub mod quasitoric;
pub mod scalar;
pub mod snf;
pub mod splitting;

pub use complex::{PolytopeDual, SimplicialComplex};
pub use error::{Error, Result};
pub use homology::GradedHomology;
pub use scalar::{Coefficients, Field, Scalar, Zp};

pub type Integer = num_bigint::BigInt;
pub type Rational = num_rational::BigRational;

pub type F2 = Zp<2>;
pub type F3 = Zp<3>;
pub type F5 = Zp<5>;
pub type F7 = Zp<7>;

pub type IntegerMatrix = matrix::Matrix<Integer>;
pub type RationalMatrix = matrix::Matrix<Rational>;
pub type F2Matrix = matrix::Matrix<F2>;

pub type SnfResult = snf::SnfResult<Integer>;
