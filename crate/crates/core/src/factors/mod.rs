//! Endoscopic sign data, the sign formulas for changes of a-data, and the formal
//! calculus of transfer-factor exponents.

mod calculus;
mod signs;

pub use calculus::{build_factor_expression, chi_invariance_check, delta_d_via_inverse_chi, FactorExpression, Term, Variant};
pub use signs::{
    adata_change_sign, comes_from_h, delta_i_ratio, gamma_orbits, half_on_r3, random_b, EndoscopicSignDatum, Phase,
};
