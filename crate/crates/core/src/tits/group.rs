use std::fmt;

use serde::ser::SerializeTuple;
use serde::{Serialize, Serializer};

use super::torus::TorusElement;
use crate::coeffs::Coefficient;
use crate::error::{Error, Result};
use crate::rootdata::{PinnedAutomorphism, RootAutomorphism, RootDatum, WeylElement};

/// `t·n(ω)`: an element of the torus normalizer in Tits normal form.
#[derive(Clone, Debug, PartialEq)]
pub struct TitsElement<C> {
    pub torus_part: TorusElement<C>,
    pub weyl_part: WeylElement,
}

impl<C: fmt::Display> fmt::Display for TitsElement<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {:?})", self.torus_part, self.weyl_part.word_one_based())
    }
}

impl<C: fmt::Display> Serialize for TitsElement<C> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut t = s.serialize_tuple(2)?;
        t.serialize_element(&self.torus_part)?;
        t.serialize_element(&self.weyl_part.word_one_based())?;
        t.end()
    }
}

/// Multiplication in `N(𝐓)` for a fixed root datum, with lifts
/// `n(α_i) = ξ_i([[0,1],[-1,0]])`.
#[derive(Clone, Copy, Debug)]
pub struct TitsGroup<'a> {
    datum: &'a RootDatum,
}

impl<'a> TitsGroup<'a> {
    pub fn new(datum: &'a RootDatum) -> Self {
        TitsGroup { datum }
    }

    pub fn datum(&self) -> &'a RootDatum {
        self.datum
    }

    pub fn identity<C: Coefficient>(&self) -> TitsElement<C> {
        self.torus(TorusElement::identity(self.datum.rank()))
    }

    pub fn torus<C: Coefficient>(&self, t: TorusElement<C>) -> TitsElement<C> {
        TitsElement { torus_part: t, weyl_part: self.datum.weyl_identity() }
    }

    /// `n(ω)`.
    pub fn lift<C: Coefficient>(&self, w: &WeylElement) -> TitsElement<C> {
        TitsElement { torus_part: TorusElement::identity(self.datum.rank()), weyl_part: w.clone() }
    }

    pub fn simple_lift<C: Coefficient>(&self, i: usize) -> TitsElement<C> {
        self.lift(&self.datum.simple_reflection(i))
    }

    /// Product of simple lifts along an arbitrary word.
    pub fn word<C: Coefficient>(&self, word: &[usize]) -> TitsElement<C> {
        word.iter().fold(self.identity(), |acc, &i| self.mul(&acc, &self.simple_lift(i)))
    }

    /// `c(ω₁, ω₂) = n(ω₁)n(ω₂)n(ω₁ω₂)⁻¹`, the product of `(-1)^{δ∨}` over `R(ω₁) ∖ R(ω₁ω₂)`.
    pub fn cocycle<C: Coefficient>(&self, w1: &WeylElement, w2: &WeylElement) -> TorusElement<C> {
        let w12 = self.datum.weyl_mul(w1, w2);
        let r12 = self.datum.inversion_set(&w12);
        let mut lambda = vec![0; self.datum.rank()];
        for d in self.datum.inversion_set(w1) {
            if !r12.contains(&d) {
                for (l, c) in lambda.iter_mut().zip(&self.datum.root(d).coroot) {
                    *l += c;
                }
            }
        }
        TorusElement::sign(&lambda)
    }

    pub fn mul<C: Coefficient>(&self, x: &TitsElement<C>, y: &TitsElement<C>) -> TitsElement<C> {
        let w1 = RootAutomorphism::from(&x.weyl_part);
        let t = x
            .torus_part
            .mul(&y.torus_part.act(self.datum, &w1))
            .mul(&self.cocycle(&x.weyl_part, &y.weyl_part));
        TitsElement { torus_part: t, weyl_part: self.datum.weyl_mul(&x.weyl_part, &y.weyl_part) }
    }

    pub fn inv<C: Coefficient>(&self, x: &TitsElement<C>) -> TitsElement<C> {
        let wi = self.datum.weyl_inv(&x.weyl_part);
        let c: TorusElement<C> = self.cocycle(&x.weyl_part, &wi);
        let s = x.torus_part.mul(&c).inv().act(self.datum, &RootAutomorphism::from(&wi));
        TitsElement { torus_part: s, weyl_part: wi }
    }

    pub fn pow<C: Coefficient>(&self, x: &TitsElement<C>, k: usize) -> TitsElement<C> {
        (0..k).fold(self.identity(), |acc, _| self.mul(&acc, x))
    }

    /// Right multiplication by `n(α_i)` through the length rule alone:
    /// `n(ω)n(s_i) = n(ωs_i)` when the length goes up, and
    /// `(-1)^{(ωs_i)α_i∨} n(ωs_i)` when it goes down.
    pub fn mul_simple_stepwise<C: Coefficient>(&self, x: &TitsElement<C>, i: usize) -> TitsElement<C> {
        let d = self.datum;
        let s = d.simple_reflection(i);
        let ws = d.weyl_mul(&x.weyl_part, &s);
        let mut t = x.torus_part.clone();
        if ws.length() < x.weyl_part.length() {
            let root = ws.apply(d.simple(i));
            t = t.mul(&TorusElement::sign(&d.root(root).coroot));
        }
        TitsElement { torus_part: t, weyl_part: ws }
    }

    /// Pinned automorphism: `θ(t·n(ω)) = θ(t)·n(θ(ω))`.
    pub fn theta<C: Coefficient>(&self, theta: &PinnedAutomorphism, x: &TitsElement<C>) -> TitsElement<C> {
        TitsElement { torus_part: x.torus_part.diagram(theta), weyl_part: theta.apply_weyl(self.datum, &x.weyl_part) }
    }

    pub fn is_theta_fixed<C: Coefficient>(&self, theta: &PinnedAutomorphism, x: &TitsElement<C>) -> bool {
        self.theta(theta, x) == *x
    }

    /// Galois action `σ = σ_𝐓 ∘ (field action)`; the lifts `n(ω)` are defined over the prime field.
    pub fn galois<C: Coefficient>(
        &self,
        sigma: &PinnedAutomorphism,
        action: &C::Action,
        x: &TitsElement<C>,
    ) -> TitsElement<C> {
        TitsElement {
            torus_part: x.torus_part.galois(sigma, action),
            weyl_part: sigma.apply_weyl(self.datum, &x.weyl_part),
        }
    }
}

/// `x(ζ) = ∏_{α ∈ R(ζ)} a_α^{α∨}`, where `values[k]` is `a` at root `k`.
pub fn x_of<C: Coefficient>(datum: &RootDatum, zeta: &RootAutomorphism, values: &[C]) -> Result<TorusElement<C>> {
    if values.len() != datum.num_roots() {
        return Err(Error::InvalidAData(format!("expected {} values, found {}", datum.num_roots(), values.len())));
    }
    Ok(datum.inversion_set_of(zeta).into_iter().fold(TorusElement::identity(datum.rank()), |acc, a| {
        acc.mul(&TorusElement::cocharacter(&values[a], &datum.root(a).coroot))
    }))
}

#[cfg(test)]
mod tests {
    use num_rational::BigRational;
    use proptest::prelude::*;

    use super::*;
    use crate::coeffs::rat;
    use crate::rootdata::Family;

    type Q = BigRational;

    fn datum(f: Family, n: usize) -> RootDatum {
        RootDatum::build(&[(f, n)]).unwrap()
    }

    #[test]
    fn simple_lift_squares_to_sign() {
        let d = datum(Family::A, 1);
        let g = TitsGroup::new(&d);
        let n: TitsElement<Q> = g.simple_lift(0);
        let sq = g.mul(&n, &n);
        assert_eq!(sq.torus_part.coords(), &[rat(-1, 1)]);
        assert!(sq.weyl_part.is_identity());
    }

    #[test]
    fn a2_longest_from_both_words() {
        let d = datum(Family::A, 2);
        let g = TitsGroup::new(&d);
        let a: TitsElement<Q> = g.word(&[0, 1, 0]);
        let b: TitsElement<Q> = g.word(&[1, 0, 1]);
        assert_eq!(a, b);
        assert_eq!(a, g.lift(&d.longest_element()));
    }

    #[test]
    fn inverse_and_stepwise_agree() {
        for (f, n) in [(Family::A, 3), (Family::B, 3), (Family::C, 3), (Family::D, 4)] {
            let d = datum(f, n);
            let g = TitsGroup::new(&d);
            for w in d.weyl_elements().iter().step_by(7) {
                let x: TitsElement<Q> = TitsElement {
                    torus_part: TorusElement::from_coords((1..=d.rank() as i64).map(|k| rat(k, 3)).collect()),
                    weyl_part: w.clone(),
                };
                assert!(g.mul(&x, &g.inv(&x)) == g.identity());
                assert!(g.mul(&g.inv(&x), &x) == g.identity());
                for i in 0..d.rank() {
                    assert_eq!(g.mul(&x, &g.simple_lift(i)), g.mul_simple_stepwise(&x, i));
                }
            }
        }
    }

    #[test]
    fn x_of_longest_a2() {
        let d = datum(Family::A, 2);
        let (a, b) = (rat(3, 1), rat(5, 7));
        // twisted: a at α₁, α₂ and b at α₁+α₂; odd extension to negatives
        let mut vals = vec![a.clone(), a.clone(), b.clone()];
        vals.extend(vals.clone().into_iter().map(|v| -v));
        let t = x_of(&d, &RootAutomorphism::from(&d.longest_element()), &vals).unwrap();
        assert_eq!(t.coords(), &[a.clone() * b.clone(), a.clone() * b.clone()]);
        let s1 = RootAutomorphism::from(&d.simple_reflection(0));
        assert_eq!(x_of(&d, &s1, &vals).unwrap().coords(), &[a, rat(1, 1)]);
        assert!(x_of(&d, &s1, &vals[..3]).is_err());
    }

    fn word_strategy(rank: usize) -> impl Strategy<Value = Vec<usize>> {
        proptest::collection::vec(0..rank, 0..12)
    }

    proptest! {
        #[test]
        fn associativity_b3(u in word_strategy(3), v in word_strategy(3), w in word_strategy(3)) {
            let d = datum(Family::B, 3);
            let g = TitsGroup::new(&d);
            let (x, y, z): (TitsElement<Q>, TitsElement<Q>, TitsElement<Q>) = (g.word(&u), g.word(&v), g.word(&w));
            prop_assert_eq!(g.mul(&g.mul(&x, &y), &z), g.mul(&x, &g.mul(&y, &z)));
        }

        #[test]
        fn word_product_matches_stepwise(u in word_strategy(4)) {
            let d = datum(Family::D, 4);
            let g = TitsGroup::new(&d);
            let stepwise = u.iter().fold(g.identity::<Q>(), |acc, &i| g.mul_simple_stepwise(&acc, i));
            prop_assert_eq!(g.word::<Q>(&u), stepwise);
        }
    }
}
