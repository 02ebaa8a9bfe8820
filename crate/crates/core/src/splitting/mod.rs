//! a-data, descent data and the splitting cocycles, untwisted and twisted.

mod adata;
mod cocycle;
mod descent;
mod realized;

pub use adata::{restricted_action, ADatum, Flavor, OrbitTable, SymbolOrbit};
pub use cocycle::{
    check_cocycle_relation, check_nn_prime, compare_fixed_vs_twisted, fixed_coords, include_fixed, lambda_twisted,
    lambda_untwisted, m_values, n_prime, n_prime_simple, nn_prime_expected, verify_borel_independence, x_prime,
    Ambient, BorelWitness, FixedVsTwisted, NnPrime, SplittingCocycle,
};
pub use descent::DescentDatum;
pub use realized::{
    change_splitting, lambda_realized, matrix_borel_independence, matrix_fixed_vs_twisted,
    matrix_fixed_vs_twisted_cocycles, matrix_nn_prime, orthogonal_decomposition, realize_twisted, realize_untwisted,
    Realization,
};
