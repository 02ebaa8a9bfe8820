//! Root data of simply-connected semisimple groups, Weyl groups, pinned
//! automorphisms and restricted roots.

mod automorphism;
mod datum;
mod json;
mod restricted;
mod steinberg;
mod weyl;

pub use automorphism::PinnedAutomorphism;
pub use datum::{Family, Root, RootDatum};
pub use json::{parse_perm, parse_word, DatumSpec, ThetaSpec};
pub use restricted::{LeviComponent, LeviKind, RestrictedRoot, RestrictedRootSystem, RootType};
pub use steinberg::{all_passed, CheckResult};
pub use weyl::{RootAutomorphism, WeylElement};
