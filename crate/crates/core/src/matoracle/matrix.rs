use std::fmt;
use std::ops::{Index, IndexMut};

use serde::{Serialize, Serializer};

use crate::coeffs::Field;
use crate::error::{Error, Result};

/// Dense matrix over an exact field, row-major.
#[derive(Clone, PartialEq)]
pub struct Matrix<F> {
    rows: usize,
    cols: usize,
    data: Vec<F>,
}

impl<F: Field> Matrix<F> {
    pub fn from_fn(rows: usize, cols: usize, f: impl Fn(usize, usize) -> F) -> Self {
        let data = (0..rows * cols).map(|k| f(k / cols, k % cols)).collect();
        Matrix { rows, cols, data }
    }

    pub fn from_rows(rows: Vec<Vec<F>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        Matrix { rows: r, cols: c, data: rows.into_iter().flatten().collect() }
    }

    /// Rows of small integers, for literals in tests and fixed matrices.
    pub fn from_ints(rows: &[&[i64]]) -> Self {
        Self::from_rows(rows.iter().map(|r| r.iter().map(|&x| F::from_i64(x)).collect()).collect())
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, n, |i, j| if i == j { F::one() } else { F::zero() })
    }

    pub fn zero(rows: usize, cols: usize) -> Self {
        Self::from_fn(rows, cols, |_, _| F::zero())
    }

    pub fn diagonal(entries: &[F]) -> Self {
        let n = entries.len();
        Self::from_fn(n, n, |i, j| if i == j { entries[i].clone() } else { F::zero() })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn row(&self, i: usize) -> &[F] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<F>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "dimension mismatch in product");
        Self::from_fn(self.rows, other.cols, |i, j| {
            (0..self.cols).fold(F::zero(), |acc, k| acc + self[(i, k)].clone() * other[(k, j)].clone())
        })
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a.clone() + b.clone()).collect(),
        }
    }

    pub fn scale(&self, c: &F) -> Self {
        self.map(|x| c.clone() * x.clone())
    }

    pub fn map(&self, f: impl Fn(&F) -> F) -> Self {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(f).collect() }
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)].clone())
    }

    /// Entrywise Galois action.
    pub fn galois(&self, action: &F::Action) -> Self {
        self.map(|x| x.act(action))
    }

    fn eliminate(&self, rhs: Option<&Self>) -> Option<(F, Option<Self>)> {
        assert!(self.is_square(), "elimination needs a square matrix");
        let n = self.rows;
        let mut a = self.to_rows();
        let mut b = rhs.map(Matrix::to_rows);
        let mut det = F::one();
        for c in 0..n {
            let p = (c..n).find(|&r| !a[r][c].is_zero())?;
            if p != c {
                a.swap(p, c);
                if let Some(b) = b.as_mut() {
                    b.swap(p, c);
                }
                det = -det;
            }
            let piv = a[c][c].clone();
            det = det * piv.clone();
            let inv = piv.try_inv()?;
            for x in a[c].iter_mut() {
                *x = x.clone() * inv.clone();
            }
            if let Some(b) = b.as_mut() {
                for x in b[c].iter_mut() {
                    *x = x.clone() * inv.clone();
                }
            }
            for r in 0..n {
                if r != c && !a[r][c].is_zero() {
                    let f = a[r][c].clone();
                    for k in 0..n {
                        let v = a[c][k].clone();
                        a[r][k] = a[r][k].clone() - f.clone() * v;
                    }
                    if let Some(b) = b.as_mut() {
                        for k in 0..b[c].len() {
                            let v = b[c][k].clone();
                            b[r][k] = b[r][k].clone() - f.clone() * v;
                        }
                    }
                }
            }
        }
        Some((det, b.map(Matrix::from_rows)))
    }

    pub fn det(&self) -> F {
        self.eliminate(None).map_or_else(F::zero, |(d, _)| d)
    }

    pub fn try_inverse(&self) -> Option<Self> {
        self.eliminate(Some(&Self::identity(self.rows))).and_then(|(_, b)| b)
    }

    pub fn inverse(&self) -> Result<Self> {
        self.try_inverse().ok_or_else(|| Error::Matrix("singular matrix".into()))
    }

    pub fn is_diagonal(&self) -> bool {
        (0..self.rows).all(|i| (0..self.cols).all(|j| i == j || self[(i, j)].is_zero()))
    }

    pub fn diag_entries(&self) -> Vec<F> {
        (0..self.rows.min(self.cols)).map(|i| self[(i, i)].clone()).collect()
    }

    pub fn is_identity(&self) -> bool {
        self.is_square() && *self == Self::identity(self.rows)
    }

    /// `self` placed as a block at `(offset, offset)` inside the `n × n` identity.
    pub fn embed(&self, n: usize, offset: usize) -> Self {
        assert!(offset + self.rows <= n && self.is_square());
        Self::from_fn(n, n, |i, j| {
            if (offset..offset + self.rows).contains(&i) && (offset..offset + self.rows).contains(&j) {
                self[(i - offset, j - offset)].clone()
            } else if i == j {
                F::one()
            } else {
                F::zero()
            }
        })
    }
}

impl<F> Index<(usize, usize)> for Matrix<F> {
    type Output = F;
    fn index(&self, (i, j): (usize, usize)) -> &F {
        &self.data[i * self.cols + j]
    }
}

impl<F> IndexMut<(usize, usize)> for Matrix<F> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut F {
        &mut self.data[i * self.cols + j]
    }
}

impl<F: fmt::Display> fmt::Display for Matrix<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|j| self.data[i * self.cols + j].to_string()).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

impl<F: fmt::Display> fmt::Debug for Matrix<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl<F: fmt::Display> Serialize for Matrix<F> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let rows: Vec<Vec<String>> = (0..self.rows)
            .map(|i| (0..self.cols).map(|j| self.data[i * self.cols + j].to_string()).collect())
            .collect();
        rows.serialize(s)
    }
}

#[cfg(test)]
mod tests {
    use num_rational::BigRational;
    use proptest::prelude::*;

    use super::*;
    use crate::coeffs::{rat, Fp};

    type M = Matrix<BigRational>;

    #[test]
    fn inverse_and_det() {
        let m = M::from_ints(&[&[2, 1, 0], &[1, 3, 1], &[0, 1, 4]]);
        assert_eq!(m.det(), rat(18, 1));
        assert!(m.mul(&m.inverse().unwrap()).is_identity());
        assert!(M::from_ints(&[&[1, 2], &[2, 4]]).try_inverse().is_none());
        assert_eq!(serde_json::to_string(&M::diagonal(&[rat(1, 2), rat(-3, 1)])).unwrap(), r#"[["1/2","0"],["0","-3"]]"#);
    }

    #[test]
    fn works_over_finite_fields() {
        let m = Matrix::<Fp<5>>::from_ints(&[&[1, 2], &[3, 4]]);
        assert_eq!(m.det(), Fp::new(-2));
        assert!(m.mul(&m.inverse().unwrap()).is_identity());
    }

    proptest! {
        #[test]
        fn det_is_multiplicative(a in proptest::collection::vec(-5i64..5, 9), b in proptest::collection::vec(-5i64..5, 9)) {
            let ma = M::from_fn(3, 3, |i, j| rat(a[3 * i + j], 1));
            let mb = M::from_fn(3, 3, |i, j| rat(b[3 * i + j], 1));
            prop_assert_eq!(ma.mul(&mb).det(), ma.det() * mb.det());
        }
    }
}
