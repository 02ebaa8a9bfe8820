use std::fmt;

use serde::{Serialize, Serializer};

use crate::coeffs::Coefficient;
use crate::rootdata::{PinnedAutomorphism, RootAutomorphism, RootDatum};

/// A point of the simply-connected torus, `∏ c_i^{α_i∨}`, stored by its coordinates `c_i`.
#[derive(Clone, Debug, PartialEq)]
pub struct TorusElement<C> {
    coords: Vec<C>,
}

impl<C: Coefficient> TorusElement<C> {
    pub fn identity(rank: usize) -> Self {
        TorusElement { coords: vec![C::one(); rank] }
    }

    pub fn from_coords(coords: Vec<C>) -> Self {
        TorusElement { coords }
    }

    pub fn coords(&self) -> &[C] {
        &self.coords
    }

    pub fn rank(&self) -> usize {
        self.coords.len()
    }

    /// `c^λ` for a cocharacter `λ` in simple-coroot coordinates.
    pub fn cocharacter(c: &C, lambda: &[i64]) -> Self {
        TorusElement { coords: lambda.iter().map(|&e| c.power(e)).collect() }
    }

    /// `(-1)^λ`.
    pub fn sign(lambda: &[i64]) -> Self {
        Self::cocharacter(&C::minus_one(), lambda)
    }

    pub fn is_identity(&self) -> bool {
        self.coords.iter().all(Coefficient::is_one)
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.rank(), other.rank(), "torus rank mismatch");
        TorusElement { coords: self.coords.iter().zip(&other.coords).map(|(a, b)| a.prod(b)).collect() }
    }

    pub fn inv(&self) -> Self {
        TorusElement { coords: self.coords.iter().map(Coefficient::inverse).collect() }
    }

    pub fn pow(&self, e: i64) -> Self {
        TorusElement { coords: self.coords.iter().map(|c| c.power(e)).collect() }
    }

    /// Action of an automorphism of the root system through its action on coroots.
    pub fn act(&self, datum: &RootDatum, zeta: &RootAutomorphism) -> Self {
        let m = datum.coroot_matrix(zeta);
        let coords = (0..self.rank())
            .map(|i| (0..self.rank()).fold(C::one(), |acc, j| acc.prod(&self.coords[j].power(m[i][j]))))
            .collect();
        TorusElement { coords }
    }

    /// Action of a pinned diagram automorphism (permutes coordinates).
    pub fn diagram(&self, theta: &PinnedAutomorphism) -> Self {
        let mut coords = self.coords.clone();
        for (i, c) in self.coords.iter().enumerate() {
            coords[theta.perm()[i]] = c.clone();
        }
        TorusElement { coords }
    }

    /// Field action on the coordinates alone.
    pub fn field_act(&self, action: &C::Action) -> Self {
        TorusElement { coords: self.coords.iter().map(|c| c.act(action)).collect() }
    }

    /// The Galois action `σ_𝐓 ∘ (field action)`.
    pub fn galois(&self, sigma: &PinnedAutomorphism, action: &C::Action) -> Self {
        self.field_act(action).diagram(sigma)
    }
}

impl<C: fmt::Display> fmt::Display for TorusElement<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let items: Vec<String> = self.coords.iter().map(|c| c.to_string()).collect();
        write!(f, "[{}]", items.join(", "))
    }
}

impl<C: fmt::Display> Serialize for TorusElement<C> {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(self.coords.iter().map(|c| c.to_string()))
    }
}
