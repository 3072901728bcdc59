//! Exact colored Jones polynomials of Mazur doubles, their degree
//! quasi-polynomials, and the surface and crossing-number arithmetic built
//! on them.
//!
//! Polynomial and degree code is generic over the coefficient type; the
//! aliases below fix the types used throughout.
pub mod bracket;
pub mod crossing;
pub mod degrees;
pub mod error;
pub mod knotdata;
pub mod laurent;
pub mod mazur;
pub mod surfaces;
pub mod symbols;

pub use error::{Error, Result};

/// Integer Laurent polynomial in `q^(1/4)`.
pub type IntPoly = laurent::Laurent<num_bigint::BigInt>;
/// Laurent polynomial with big rational coefficients.
pub type RatPoly = laurent::Laurent<num_rational::BigRational>;
/// Quotient of two rational Laurent polynomials.
pub type RatFraction = laurent::LaurentFraction<num_rational::BigRational>;
/// Degrees and degree coefficients.
pub type Degree = num_rational::Rational64;
/// Degree quasi-polynomial with machine rationals.
pub type DegreeQuasi = degrees::QuasiQuadratic<Degree>;
