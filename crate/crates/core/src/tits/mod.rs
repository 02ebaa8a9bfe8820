//! The torus `𝐓` in simple-coroot coordinates and the Tits model of its normalizer.

mod group;
mod torus;

pub use group::{x_of, TitsElement, TitsGroup};
pub use torus::TorusElement;
