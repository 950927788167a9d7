//! Exact computations for the general linear Lie superalgebra gl(m|n):
//! root data and the typicality polynomial, straightening in the enveloping
//! algebra, and Kac modules over finite fields.

pub mod error;
pub mod fq;
pub mod matrix;
pub mod modrep;
pub mod poly;
pub mod rootdata;
pub mod scalar;
pub mod superpbw;

pub use error::{Error, Result};
pub use fq::{artin_schreier_solve, fq_make, FqElement, FqField};
pub use matrix::{Matrix, Subspace};
pub use modrep::{GModule, PChar};
pub use rootdata::{OddPair, Shape, Weight};
pub use scalar::{FieldScalar, Scalar};

pub type Integer = num_bigint::BigInt;
pub type Rational = num_rational::BigRational;

pub type RationalWeight = Weight<Rational>;
pub type ModWeight = Weight<FqElement>;
pub type IntPoly = poly::Poly<Integer>;
pub type IntPbwElement = superpbw::PbwElement<Integer>;
pub type RationalMatrix = Matrix<Rational>;
pub type FqMatrix = Matrix<FqElement>;
