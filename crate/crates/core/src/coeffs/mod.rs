//! Exact coefficient groups and local quadratic sign characters.

mod field;
mod fp;
mod hilbert;
mod monomial;
mod quad;
mod sample;

pub use field::{rat, Coefficient, Field, Galois};
pub use fp::Fp;
pub use hilbert::{hilbert_symbol, is_local_square, quad_norm_sign, relevant_primes, LocalPlace, Place};
pub use monomial::{Monomial, SymbolAction};
pub use quad::Quad;
pub use sample::{small_rational, ExplicitField};
