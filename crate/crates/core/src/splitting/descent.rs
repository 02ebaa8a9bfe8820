use std::fmt;

use crate::coeffs::Coefficient;
use crate::error::{Error, Result};
use crate::rootdata::{PinnedAutomorphism, RootAutomorphism, RootDatum, WeylElement};
use crate::tits::{TitsElement, TitsGroup, TorusElement};

/// `Γ = ℤ/N` acting through a generator `g` with `σ_T(g) = ω_T(g) ⋊ σ_𝐓(g)`.
/// The field action of `g` is carried separately, since it depends on the coefficients.
#[derive(Clone, PartialEq, Eq)]
pub struct DescentDatum {
    order: usize,
    omega: WeylElement,
    sigma: PinnedAutomorphism,
}

impl fmt::Debug for DescentDatum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Z/{} with ω_T = {:?}, σ_𝐓 = {:?}", self.order, self.omega, self.sigma.perm())
    }
}

impl DescentDatum {
    pub fn new(datum: &RootDatum, order: usize, omega: WeylElement, sigma: PinnedAutomorphism) -> Result<Self> {
        if !(1..=12).contains(&order) {
            return Err(Error::InvalidDescent(format!("order {order} outside 1..=12")));
        }
        if omega.perm().len() != datum.num_roots() || sigma.perm().len() != datum.rank() {
            return Err(Error::RankMismatch { expected: datum.rank(), found: sigma.perm().len() });
        }
        let d = DescentDatum { order, omega, sigma };
        let (w, s) = d.power(datum, order);
        if !w.is_identity() || !s.is_identity() {
            return Err(Error::InvalidDescent(format!(
                "(ω_T ⋊ σ_𝐓)^{order} = ({:?}, {:?}) is not the identity",
                w,
                s.perm()
            )));
        }
        Ok(d)
    }

    pub fn trivial(datum: &RootDatum) -> Self {
        DescentDatum { order: 1, omega: datum.weyl_identity(), sigma: PinnedAutomorphism::identity(datum) }
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn omega(&self) -> &WeylElement {
        &self.omega
    }

    pub fn sigma(&self) -> &PinnedAutomorphism {
        &self.sigma
    }

    /// `(ω_T(g^k), σ_𝐓(g^k))`, the `k`-th power in `Ω ⋊ Aut`.
    pub fn power(&self, datum: &RootDatum, k: usize) -> (WeylElement, PinnedAutomorphism) {
        let mut w = datum.weyl_identity();
        let mut s = PinnedAutomorphism::identity(datum);
        for _ in 0..k {
            // (w, s)·(ω, σ) = (w·s(ω), s∘σ)
            w = datum.weyl_mul(&w, &s.apply_weyl(datum, &self.omega));
            s = s.compose(&self.sigma);
        }
        (w, s)
    }

    /// `σ_T(g^k)` acting on roots.
    pub fn sigma_t(&self, datum: &RootDatum, k: usize) -> RootAutomorphism {
        let (w, s) = self.power(datum, k);
        RootAutomorphism::from(&w).compose(s.root_automorphism())
    }

    pub fn omega_t(&self, datum: &RootDatum, k: usize) -> WeylElement {
        self.power(datum, k).0
    }

    /// Whether every `σ_T` commutes with `θ`.
    pub fn commutes_with(&self, datum: &RootDatum, theta: &PinnedAutomorphism) -> bool {
        let z = self.sigma_t(datum, 1);
        let t = theta.root_automorphism();
        z.compose(t) == t.compose(&z)
    }

    /// `g^k` acting on `N(𝐓)(k̄)`.
    pub fn act_tits<C: Coefficient>(
        &self,
        group: &TitsGroup<'_>,
        action: &C::Action,
        k: usize,
        x: &TitsElement<C>,
    ) -> TitsElement<C> {
        (0..k).fold(x.clone(), |acc, _| group.galois(&self.sigma, action, &acc))
    }

    /// `g^k` acting on `𝐓(k̄)`.
    pub fn act_torus<C: Coefficient>(&self, action: &C::Action, k: usize, t: &TorusElement<C>) -> TorusElement<C> {
        (0..k).fold(t.clone(), |acc, _| acc.galois(&self.sigma, action))
    }

    /// The descent datum after changing the Borel subgroup by `μ`: `σ_T′ = μ⁻¹ σ_T μ`.
    pub fn conjugate(&self, datum: &RootDatum, mu: &WeylElement) -> Self {
        let mu_inv = datum.weyl_inv(mu);
        let omega = datum.weyl_mul(&datum.weyl_mul(&mu_inv, &self.omega), &self.sigma.apply_weyl(datum, mu));
        DescentDatum { order: self.order, omega, sigma: self.sigma.clone() }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootdata::Family;

    #[test]
    fn powers_and_validation() {
        let d = RootDatum::build(&[(Family::A, 2)]).unwrap();
        let w0 = d.longest_element();
        let flip = PinnedAutomorphism::flip(&d).unwrap();
        assert!(DescentDatum::new(&d, 2, w0.clone(), PinnedAutomorphism::identity(&d)).is_ok());
        assert!(DescentDatum::new(&d, 2, w0.clone(), flip.clone()).is_ok());
        assert!(DescentDatum::new(&d, 3, w0.clone(), flip.clone()).is_err());
        let s1 = d.simple_reflection(0);
        // (s₁ ⋊ flip)² = (s₁s₂, 1), which has order 3
        assert!(DescentDatum::new(&d, 2, s1.clone(), flip.clone()).is_err());
        assert!(DescentDatum::new(&d, 6, s1, flip.clone()).is_ok());
        // σ_T = ω₀ ⋊ flip acts as -1 on roots
        let dd = DescentDatum::new(&d, 2, w0, flip).unwrap();
        let z = dd.sigma_t(&d, 1);
        assert!((0..d.num_roots()).all(|k| z.apply(k) == d.negate(k)));
    }
}
