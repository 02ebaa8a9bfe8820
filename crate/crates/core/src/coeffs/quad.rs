//! The quadratic field `ℚ(√D)` with its nontrivial automorphism `√D ↦ -√D`.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::field::{Field, Galois};

/// `a + b√D` with rational `a`, `b`. `D` must be a squarefree integer other than 0, 1.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Quad<const D: i64> {
    pub a: BigRational,
    pub b: BigRational,
}

impl<const D: i64> Quad<D> {
    pub fn new(a: BigRational, b: BigRational) -> Self {
        Quad { a, b }
    }

    pub fn rational(a: BigRational) -> Self {
        Quad { a, b: BigRational::zero() }
    }

    /// `√D` itself.
    pub fn sqrt() -> Self {
        Quad { a: BigRational::zero(), b: BigRational::one() }
    }

    pub fn conj(&self) -> Self {
        Quad { a: self.a.clone(), b: -self.b.clone() }
    }

    pub fn norm(&self) -> BigRational {
        &self.a * &self.a - d_rat(D) * &self.b * &self.b
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    pub fn discriminant() -> i64 {
        D
    }
}

fn d_rat(d: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(d))
}

impl<const D: i64> fmt::Debug for Quad<D> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl<const D: i64> fmt::Display for Quad<D> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.a.is_zero(), self.b.is_zero()) {
            (_, true) => write!(f, "{}", self.a),
            (true, false) => write!(f, "{}*sqrt({D})", self.b),
            (false, false) => {
                let sign = if self.b.is_negative() { "-" } else { "+" };
                write!(f, "{}{sign}{}*sqrt({D})", self.a, self.b.abs())
            }
        }
    }
}

impl<const D: i64> Add for Quad<D> {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        Quad { a: self.a + o.a, b: self.b + o.b }
    }
}

impl<const D: i64> Sub for Quad<D> {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        Quad { a: self.a - o.a, b: self.b - o.b }
    }
}

impl<const D: i64> Mul for Quad<D> {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        let a = &self.a * &o.a + d_rat(D) * &self.b * &o.b;
        let b = &self.a * &o.b + &self.b * &o.a;
        Quad { a, b }
    }
}

impl<const D: i64> Div for Quad<D> {
    type Output = Self;
    fn div(self, o: Self) -> Self {
        self * o.try_inv().expect("division by zero in quadratic field")
    }
}

impl<const D: i64> Neg for Quad<D> {
    type Output = Self;
    fn neg(self) -> Self {
        Quad { a: -self.a, b: -self.b }
    }
}

impl<const D: i64> Zero for Quad<D> {
    fn zero() -> Self {
        Quad { a: BigRational::zero(), b: BigRational::zero() }
    }
    fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }
}

impl<const D: i64> One for Quad<D> {
    fn one() -> Self {
        Quad { a: BigRational::one(), b: BigRational::zero() }
    }
}

impl<const D: i64> Galois for Quad<D> {
    /// `true` means the generator acts by `√D ↦ -√D`.
    type Action = bool;
    fn act(&self, conjugate: &bool) -> Self {
        if *conjugate {
            self.conj()
        } else {
            self.clone()
        }
    }
}

impl<const D: i64> Field for Quad<D> {
    fn characteristic() -> u64 {
        0
    }
    fn from_i64(n: i64) -> Self {
        Quad::rational(d_rat(n))
    }
    fn from_rational(q: &BigRational) -> Option<Self> {
        Some(Quad::rational(q.clone()))
    }
    fn try_inv(&self) -> Option<Self> {
        let n = self.norm();
        if n.is_zero() {
            return None;
        }
        Some(Quad { a: &self.a / &n, b: -&self.b / &n })
    }
    fn trivial_action() -> bool {
        false
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeffs::field::rat;

    type Q5 = Quad<5>;

    #[test]
    fn sqrt_squares_to_d() {
        assert_eq!(Q5::sqrt() * Q5::sqrt(), Q5::from_i64(5));
        assert_eq!(Quad::<-1>::sqrt() * Quad::<-1>::sqrt(), Quad::<-1>::from_i64(-1));
    }

    #[test]
    fn inverse_and_conjugation() {
        let x = Q5::new(rat(3, 2), rat(-1, 3));
        assert_eq!(x.clone() * x.try_inv().unwrap(), Q5::one());
        assert_eq!((x.clone() * x.conj()).b, rat(0, 1));
        assert_eq!(x.act(&true).act(&true), x);
        assert!(Q5::zero().try_inv().is_none());
    }
}
