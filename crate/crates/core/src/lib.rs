//! Exact computations with root data, Tits groups and splitting invariants of
//! maximal tori for twisted endoscopy, with matrix oracles for `SL(n)`.
//!
//! Coefficients are generic: anything implementing [`coeffs::Coefficient`]
//! (a field's unit group, or free symbols) can be used for torus coordinates,
//! and [`coeffs::Field`] for matrices. The aliases below name the common choices.

pub mod cli;
pub mod coeffs;
pub mod error;
pub mod factors;
pub mod matoracle;
pub mod report;
pub mod rootdata;
pub mod scenario;
pub mod splitting;
pub mod suites;
pub mod tits;

pub use error::{Error, Result};

/// ℚ.
pub type Rational = num_rational::BigRational;
/// ℚ(√5).
pub type QSqrt5 = coeffs::Quad<5>;
/// ℚ(i).
pub type QI = coeffs::Quad<-1>;
/// 𝔽₅.
pub type F5 = coeffs::Fp<5>;
pub type RationalMatrix = matoracle::Matrix<Rational>;
pub type RationalTorus = tits::TorusElement<Rational>;
pub type RationalTits = tits::TitsElement<Rational>;
pub type SymbolicTits = tits::TitsElement<coeffs::Monomial>;
