use std::collections::HashMap;
use std::fmt;
use std::sync::{Mutex, OnceLock};

use super::matrix::Matrix;
use super::sl2;
use crate::coeffs::{Coefficient, Field};
use crate::error::{Error, Result};
use crate::rootdata::{Family, PinnedAutomorphism, RootDatum, WeylElement};
use crate::tits::{TitsElement, TorusElement};

/// `SL(n)` with its standard pinning (upper triangular `𝐁`, diagonal `𝐓`,
/// `X_{α_i} = E_{i,i+1}`) and the pinned outer automorphism
/// `θ(g) = J·g⁻ᵀ·J⁻¹`.
#[derive(Clone)]
pub struct SlContext<F> {
    n: usize,
    datum: RootDatum,
    theta: PinnedAutomorphism,
    signs: Vec<i64>,
    j: Matrix<F>,
    j_inv: Matrix<F>,
}

impl<F: Field + fmt::Display> fmt::Debug for SlContext<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SL({}) with J signs {:?}", self.n, self.signs)
    }
}

/// Signs `s_k` with `J = Σ s_k E_{k, n-1-k}` making `θ` preserve the pinning,
/// normalised by `s_0 = 1`. Found by exhaustive search over rational matrices.
pub fn derive_j_signs(n: usize) -> Result<Vec<i64>> {
    static CACHE: OnceLock<Mutex<HashMap<usize, Vec<i64>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(s) = cache.lock().unwrap().get(&n) {
        return Ok(s.clone());
    }
    let s = search_j_signs(n)?;
    cache.lock().unwrap().insert(n, s.clone());
    Ok(s)
}

fn search_j_signs(n: usize) -> Result<Vec<i64>> {
    if !(2..=12).contains(&n) {
        return Err(Error::UnsupportedType { family: "A".into(), rank: n.saturating_sub(1) });
    }
    type Q = num_rational::BigRational;
    let mut found = Vec::new();
    for mask in 0..(1u32 << (n - 1)) {
        let signs: Vec<i64> =
            std::iter::once(1).chain((1..n).map(|k| if mask >> (k - 1) & 1 == 1 { -1 } else { 1 })).collect();
        let j = antidiagonal::<Q>(&signs);
        let j_inv = j.inverse()?;
        let theta = |g: &Matrix<Q>| j.mul(&g.inverse().unwrap().transpose()).mul(&j_inv);
        let ok = (0..n - 1).all(|i| {
            let k = n - 2 - i;
            [sl2::upper(Q::from_i64(1)), sl2::lower(Q::from_i64(1))]
                .iter()
                .all(|g| theta(&embed_sl2(n, i, g)) == embed_sl2(n, k, g))
        });
        if ok {
            found.push(signs);
        }
    }
    match found.len() {
        1 => Ok(found.pop().unwrap()),
        k => Err(Error::Matrix(format!("{k} sign patterns preserve the pinning of SL({n})"))),
    }
}

fn antidiagonal<F: Field>(signs: &[i64]) -> Matrix<F> {
    let n = signs.len();
    Matrix::from_fn(n, n, |i, j| if i + j == n - 1 { F::from_i64(signs[i]) } else { F::zero() })
}

fn embed_sl2<F: Field>(n: usize, i: usize, g: &Matrix<F>) -> Matrix<F> {
    g.embed(n, i)
}

impl<F: Field> SlContext<F> {
    pub fn new(n: usize) -> Result<Self> {
        let signs = derive_j_signs(n)?;
        let datum = RootDatum::build(&[(Family::A, n - 1)])?;
        let theta = PinnedAutomorphism::flip(&datum)?;
        let j = antidiagonal(&signs);
        let j_inv = j.inverse()?;
        Ok(SlContext { n, datum, theta, signs, j, j_inv })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn datum(&self) -> &RootDatum {
        &self.datum
    }

    /// The diagram automorphism induced by `θ`.
    pub fn theta(&self) -> &PinnedAutomorphism {
        &self.theta
    }

    pub fn j(&self) -> &Matrix<F> {
        &self.j
    }

    pub fn j_signs(&self) -> &[i64] {
        &self.signs
    }

    /// `ξ_i(g)`: `g` placed at rows and columns `i, i+1`.
    pub fn xi(&self, i: usize, g: &Matrix<F>) -> Matrix<F> {
        embed_sl2(self.n, i, g)
    }

    /// `n(α_i) = ξ_i([[0,1],[-1,0]])`.
    pub fn simple_lift(&self, i: usize) -> Matrix<F> {
        self.xi(i, &sl2::weyl_rep())
    }

    /// `n(ω)` as the product of simple lifts along the canonical word.
    pub fn weyl(&self, w: &WeylElement) -> Matrix<F> {
        w.word().iter().fold(Matrix::identity(self.n), |acc, &i| acc.mul(&self.simple_lift(i)))
    }

    fn check_rank(&self, r: usize) -> Result<()> {
        if r != self.n - 1 {
            return Err(Error::RankMismatch { expected: self.n - 1, found: r });
        }
        Ok(())
    }

    /// `∏ c_i^{α_i∨} = diag(c_1, c_2/c_1, …, 1/c_{n-1})`.
    pub fn torus(&self, t: &TorusElement<F>) -> Result<Matrix<F>> {
        self.check_rank(t.rank())?;
        let c = t.coords();
        let entries: Vec<F> = (0..self.n)
            .map(|k| {
                let num = if k < self.n - 1 { c[k].clone() } else { F::one() };
                if k == 0 {
                    num
                } else {
                    num * c[k - 1].inverse()
                }
            })
            .collect();
        Ok(Matrix::diagonal(&entries))
    }

    /// Inverse of [`Self::torus`] on diagonal matrices of determinant one.
    pub fn torus_coords(&self, m: &Matrix<F>) -> Result<TorusElement<F>> {
        if m.rows() != self.n || !m.is_diagonal() {
            return Err(Error::Matrix("expected a diagonal matrix".into()));
        }
        if m.det() != F::one() {
            return Err(Error::Matrix("diagonal matrix is not in SL(n)".into()));
        }
        let d = m.diag_entries();
        let mut acc = F::one();
        let coords = d[..self.n - 1]
            .iter()
            .map(|x| {
                acc = acc.clone() * x.clone();
                acc.clone()
            })
            .collect();
        Ok(TorusElement::from_coords(coords))
    }

    pub fn realize(&self, x: &TitsElement<F>) -> Result<Matrix<F>> {
        Ok(self.torus(&x.torus_part)?.mul(&self.weyl(&x.weyl_part)))
    }

    /// `θ(g) = J·g⁻ᵀ·J⁻¹`.
    pub fn theta_matrix(&self, g: &Matrix<F>) -> Result<Matrix<F>> {
        Ok(self.j.mul(&g.inverse()?.transpose()).mul(&self.j_inv))
    }

    pub fn is_theta_fixed(&self, g: &Matrix<F>) -> Result<bool> {
        Ok(self.theta_matrix(g)? == *g)
    }
}
