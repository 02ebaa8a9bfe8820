//! Random elements of explicit coefficient fields with prescribed Galois behaviour.

use std::fmt::Display;

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::Rng;

use super::field::{Field, Galois};
use super::fp::Fp;
use super::quad::Quad;

/// A nonzero rational of small height.
pub fn small_rational<R: Rng + ?Sized>(rng: &mut R) -> BigRational {
    let mut n = rng.gen_range(-9i64..=8);
    if n >= 0 {
        n += 1;
    }
    BigRational::new(BigInt::from(n), BigInt::from(rng.gen_range(1i64..=4)))
}

/// A field in which a-data can be given explicit values.
pub trait ExplicitField: Field + Display {
    /// A random `x ≠ 0` with `σ^m(x) = χ·x`, `σ` acting through `action`; `None` when no such `x` exists.
    fn sample_eigen<R: Rng + ?Sized>(rng: &mut R, action: &Self::Action, m: usize, chi: i64) -> Option<Self>;

    /// A random nonzero element of the base field.
    fn sample_base<R: Rng + ?Sized>(rng: &mut R) -> Self {
        Self::from_rational(&small_rational(rng)).expect("base field contains small rationals")
    }

    /// A random nonzero element of the whole field.
    fn sample_any<R: Rng + ?Sized>(rng: &mut R) -> Self;

    fn action_is_trivial(action: &Self::Action) -> bool;
}

impl ExplicitField for BigRational {
    fn sample_eigen<R: Rng + ?Sized>(rng: &mut R, _: &(), _: usize, chi: i64) -> Option<Self> {
        (chi == 1).then(|| small_rational(rng))
    }
    fn sample_any<R: Rng + ?Sized>(rng: &mut R) -> Self {
        small_rational(rng)
    }
    fn action_is_trivial(_: &()) -> bool {
        true
    }
}

impl<const D: i64> ExplicitField for Quad<D> {
    fn sample_eigen<R: Rng + ?Sized>(rng: &mut R, action: &bool, m: usize, chi: i64) -> Option<Self> {
        let conj = Quad::<D>::sqrt().act_pow(action, m) != Quad::<D>::sqrt();
        match (conj, chi) {
            (false, 1) => Some(Self::sample_any(rng)),
            (true, 1) => Some(Quad::rational(small_rational(rng))),
            (true, -1) => Some(Quad::new(BigRational::from_integer(0.into()), small_rational(rng))),
            _ => None,
        }
    }
    fn sample_any<R: Rng + ?Sized>(rng: &mut R) -> Self {
        let b = if rng.gen_bool(0.7) { small_rational(rng) } else { BigRational::from_integer(0.into()) };
        Quad::new(small_rational(rng), b)
    }
    fn action_is_trivial(action: &bool) -> bool {
        !*action
    }
}

impl<const P: u64> ExplicitField for Fp<P> {
    fn sample_eigen<R: Rng + ?Sized>(rng: &mut R, _: &(), _: usize, chi: i64) -> Option<Self> {
        (chi == 1 || P == 2).then(|| Self::sample_any(rng))
    }
    fn sample_any<R: Rng + ?Sized>(rng: &mut R) -> Self {
        Fp::new(rng.gen_range(1..P) as i64)
    }
    fn action_is_trivial(_: &()) -> bool {
        true
    }
}

#[cfg(test)]
mod tests {
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    use super::*;

    #[test]
    fn eigenvectors_behave() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..20 {
            let x = Quad::<5>::sample_eigen(&mut rng, &true, 1, -1).unwrap();
            assert_eq!(x.conj(), -x.clone());
            let y = Quad::<5>::sample_eigen(&mut rng, &true, 3, 1).unwrap();
            assert!(y.is_rational());
        }
        assert!(Quad::<5>::sample_eigen(&mut rng, &true, 2, -1).is_none());
        assert!(BigRational::sample_eigen(&mut rng, &(), 1, -1).is_none());
    }
}
