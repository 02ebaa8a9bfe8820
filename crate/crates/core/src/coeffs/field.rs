//! Scalar traits shared by the torus, Tits-group and matrix layers.
//!
//! [`Coefficient`] is the multiplicative group a torus coordinate lives in
//! (a field's unit group, or the free symbolic group of [`Monomial`]).
//! [`Field`] is what the matrix oracle needs on top of that.
//!
//! [`Monomial`]: super::Monomial

use std::fmt::Debug;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

/// A type carrying an action of a cyclic Galois group through a generator.
pub trait Galois: Clone {
    /// How the generator acts; applied `k` times for the `k`-th power.
    type Action: Clone + Debug + PartialEq;

    fn act(&self, action: &Self::Action) -> Self;

    fn act_pow(&self, action: &Self::Action, k: usize) -> Self {
        let mut x = self.clone();
        for _ in 0..k {
            x = x.act(action);
        }
        x
    }
}

/// Abelian group of torus coordinates, containing `-1` and `2`.
pub trait Coefficient: Clone + PartialEq + Debug + Galois {
    fn one() -> Self;
    fn prod(&self, other: &Self) -> Self;
    fn inverse(&self) -> Self;
    fn minus_one() -> Self;
    fn two() -> Self;

    fn is_one(&self) -> bool {
        *self == Self::one()
    }

    fn negate(&self) -> Self {
        self.prod(&Self::minus_one())
    }

    fn power(&self, e: i64) -> Self {
        let base = if e < 0 { self.inverse() } else { self.clone() };
        let mut n = e.unsigned_abs();
        let mut acc = Self::one();
        let mut sq = base;
        while n > 0 {
            if n & 1 == 1 {
                acc = acc.prod(&sq);
            }
            sq = sq.prod(&sq);
            n >>= 1;
        }
        acc
    }

    fn half() -> Self {
        Self::two().inverse()
    }
}

/// An exact field usable for matrix arithmetic.
pub trait Field:
    Clone
    + PartialEq
    + Debug
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
    + Galois
{
    /// 0 for characteristic zero.
    fn characteristic() -> u64;
    fn from_i64(n: i64) -> Self;
    fn from_rational(q: &BigRational) -> Option<Self>;
    fn try_inv(&self) -> Option<Self>;

    fn half_checked() -> Option<Self> {
        Self::from_i64(2).try_inv()
    }

    /// The identity action of the Galois generator.
    fn trivial_action() -> Self::Action;
}

impl<F: Field> Coefficient for F {
    fn one() -> Self {
        <F as One>::one()
    }
    fn prod(&self, other: &Self) -> Self {
        self.clone() * other.clone()
    }
    fn inverse(&self) -> Self {
        self.try_inv().expect("torus coordinate must be invertible")
    }
    fn minus_one() -> Self {
        F::from_i64(-1)
    }
    fn two() -> Self {
        F::from_i64(2)
    }
}

impl Galois for BigRational {
    type Action = ();
    fn act(&self, _: &()) -> Self {
        self.clone()
    }
}

impl Field for BigRational {
    fn characteristic() -> u64 {
        0
    }
    fn from_i64(n: i64) -> Self {
        BigRational::from_integer(BigInt::from(n))
    }
    fn from_rational(q: &BigRational) -> Option<Self> {
        Some(q.clone())
    }
    fn try_inv(&self) -> Option<Self> {
        if self.is_zero() {
            None
        } else {
            Some(self.recip())
        }
    }
    fn trivial_action() {}
}

/// Shorthand for building rationals in tests and examples.
pub fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}
