//! Hilbert symbols over ℚ and the norm-residue sign of a quadratic extension.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A place of ℚ.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Place {
    Real,
    Padic(u64),
}

impl fmt::Display for Place {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Place::Real => write!(f, "real"),
            Place::Padic(p) => write!(f, "{p}"),
        }
    }
}

impl std::str::FromStr for Place {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        if s.eq_ignore_ascii_case("real") || s == "inf" {
            return Ok(Place::Real);
        }
        let p: u64 = s.parse().map_err(|_| Error::Parse {
            field: "place".into(),
            message: format!("expected `real` or a prime, got `{s}`"),
        })?;
        if !is_prime(p) {
            return Err(Error::Parse { field: "place".into(), message: format!("{p} is not prime") });
        }
        Ok(Place::Padic(p))
    }
}

pub(crate) fn is_prime(p: u64) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| p % d != 0)
}

/// Integer in the same square class as `q` (numerator times denominator).
fn square_class_integer(q: &BigRational) -> BigInt {
    q.numer() * q.denom()
}

fn split_valuation(n: &BigInt, p: u64) -> (u64, BigInt) {
    let p = BigInt::from(p);
    let mut v = 0;
    let mut u = n.clone();
    while !u.is_zero() && u.mod_floor(&p).is_zero() {
        u /= &p;
        v += 1;
    }
    (v, u)
}

/// Legendre symbol of a unit `u` modulo an odd prime.
fn legendre(u: &BigInt, p: u64) -> i8 {
    let pb = BigInt::from(p);
    let r = u.mod_floor(&pb).modpow(&BigInt::from((p - 1) / 2), &pb);
    if r.is_one() {
        1
    } else {
        -1
    }
}

fn mod8(u: &BigInt) -> u64 {
    u.mod_floor(&BigInt::from(8)).to_u64().unwrap()
}

/// `(a, b)_v`: `1` iff `a` is a norm from `ℚ_v(√b)`.
pub fn hilbert_symbol(a: &BigRational, b: &BigRational, place: Place) -> Result<i8> {
    if a.is_zero() || b.is_zero() {
        return Err(Error::ZeroInput("hilbert symbol arguments"));
    }
    Ok(match place {
        Place::Real => {
            if a.is_negative() && b.is_negative() {
                -1
            } else {
                1
            }
        }
        Place::Padic(2) => {
            let (alpha, u) = split_valuation(&square_class_integer(a), 2);
            let (beta, v) = split_valuation(&square_class_integer(b), 2);
            let (u, v) = (mod8(&u), mod8(&v));
            let eps = |x: u64| ((x - 1) / 2) % 2;
            let omega = |x: u64| ((x * x - 1) / 8) % 2;
            let e = eps(u) * eps(v) + alpha * omega(v) + beta * omega(u);
            if e % 2 == 0 {
                1
            } else {
                -1
            }
        }
        Place::Padic(p) => {
            let (alpha, u) = split_valuation(&square_class_integer(a), p);
            let (beta, v) = split_valuation(&square_class_integer(b), p);
            let eps = (p - 1) / 2;
            let mut s: i8 = if (alpha * beta * eps) % 2 == 0 { 1 } else { -1 };
            if beta % 2 == 1 {
                s *= legendre(&u, p);
            }
            if alpha % 2 == 1 {
                s *= legendre(&v, p);
            }
            s
        }
    })
}

/// Whether `x` is a square in `ℚ_v`.
pub fn is_local_square(x: &BigRational, place: Place) -> Result<bool> {
    if x.is_zero() {
        return Err(Error::ZeroInput("square test"));
    }
    let n = square_class_integer(x);
    Ok(match place {
        Place::Real => n.is_positive(),
        Place::Padic(p) => {
            let (v, u) = split_valuation(&n, p);
            v % 2 == 0
                && if p == 2 {
                    mod8(&u) == 1
                } else {
                    legendre(&u, p) == 1
                }
        }
    })
}

/// A place together with a quadratic extension `ℚ_v(√d)/ℚ_v`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LocalPlace {
    pub place: Place,
    /// Standard square-class representative of `d`.
    pub d: i64,
}

impl LocalPlace {
    /// Rejects `d` that is a square at the place.
    pub fn new(place: Place, d: &BigRational) -> Result<Self> {
        if is_local_square(d, place)? {
            return Err(Error::SquareDiscriminant { d: d.to_string(), place: place.to_string() });
        }
        Ok(LocalPlace { place, d: standard_representative(d, place) })
    }

    pub fn real() -> Self {
        LocalPlace { place: Place::Real, d: -1 }
    }

    pub fn discriminant(&self) -> BigRational {
        BigRational::from_integer(BigInt::from(self.d))
    }
}

/// Representatives: `{±1}` at ∞; `{1, u, p, up}` (u the least non-residue) for odd p;
/// `{±1, ±3, ±2, ±6}` at 2 (as 1,3,5,7 and 2,6,10,14).
fn standard_representative(d: &BigRational, place: Place) -> i64 {
    let n = square_class_integer(d);
    match place {
        Place::Real => {
            if n.is_negative() {
                -1
            } else {
                1
            }
        }
        Place::Padic(2) => {
            let (v, u) = split_valuation(&n, 2);
            let r = mod8(&u) as i64;
            if v % 2 == 0 {
                r
            } else {
                2 * r
            }
        }
        Place::Padic(p) => {
            let (v, u) = split_valuation(&n, p);
            let nonres = (2..p).find(|&x| legendre(&BigInt::from(x), p) == -1).unwrap_or(1) as i64;
            let unit = if legendre(&u, p) == 1 { 1 } else { nonres };
            if v % 2 == 0 {
                unit
            } else {
                unit * p as i64
            }
        }
    }
}

/// The quadratic character of `ℚ_v(√d)/ℚ_v` evaluated at `x`.
pub fn quad_norm_sign(x: &BigRational, place: &LocalPlace) -> Result<i8> {
    if x.is_zero() {
        return Err(Error::ZeroInput("norm sign argument"));
    }
    let d = place.discriminant();
    if is_local_square(&d, place.place)? {
        return Err(Error::SquareDiscriminant { d: d.to_string(), place: place.place.to_string() });
    }
    hilbert_symbol(x, &d, place.place)
}

/// Primes at which `(a, b)_p` can be nontrivial.
pub fn relevant_primes(a: &BigRational, b: &BigRational) -> Vec<u64> {
    let mut primes = vec![2u64];
    for n in [a.numer(), a.denom(), b.numer(), b.denom()] {
        let mut m = n.abs().to_u64().expect("small rational expected");
        let mut f = 2;
        while m > 1 && f * f <= m {
            while m % f == 0 {
                primes.push(f);
                m /= f;
            }
            f += 1;
        }
        if m > 1 {
            primes.push(m);
        }
    }
    primes.sort_unstable();
    primes.dedup();
    primes
}
