//! Explicit `SL(n)` matrices over exact fields, used as ground truth for the
//! abstract models.

mod appendix;
mod context;
mod fixed;
mod matrix;
pub mod sl2;

pub use appendix::verify_appendix;
pub use context::{derive_j_signs, SlContext};
pub use fixed::FixedGroup;
pub use matrix::Matrix;
