//! `SL(2)`, `GL(2)` and the adjoint representation on `sl(2)`.

use super::matrix::Matrix;
use crate::coeffs::Field;
use crate::error::{Error, Result};

/// `[[0,1],[-1,0]]`.
pub fn weyl_rep<F: Field>() -> Matrix<F> {
    Matrix::from_ints(&[&[0, 1], &[-1, 0]])
}

pub fn upper<F: Field>(x: F) -> Matrix<F> {
    Matrix::from_rows(vec![vec![F::one(), x], vec![F::zero(), F::one()]])
}

pub fn lower<F: Field>(x: F) -> Matrix<F> {
    Matrix::from_rows(vec![vec![F::one(), F::zero()], vec![x, F::one()]])
}

pub fn diag2<F: Field>(x: F, y: F) -> Matrix<F> {
    Matrix::diagonal(&[x, y])
}

fn entries<F: Field>(g: &Matrix<F>) -> Result<[F; 4]> {
    if g.rows() != 2 || g.cols() != 2 {
        return Err(Error::Matrix(format!("expected a 2×2 matrix, got {}×{}", g.rows(), g.cols())));
    }
    Ok([g[(0, 0)].clone(), g[(0, 1)].clone(), g[(1, 0)].clone(), g[(1, 1)].clone()])
}

fn ad_raw<F: Field>(g: &Matrix<F>) -> Result<Matrix<F>> {
    let [a, b, c, d] = entries(g)?;
    let two = F::from_i64(2);
    Ok(Matrix::from_rows(vec![
        vec![a.clone() * a.clone(), two.clone() * a.clone() * b.clone(), b.clone() * b.clone()],
        vec![a.clone() * c.clone(), a.clone() * d.clone() + b.clone() * c.clone(), b.clone() * d.clone()],
        vec![c.clone() * c.clone(), two * c.clone() * d.clone(), d.clone() * d],
    ]))
}

/// Adjoint action of `g ∈ SL(2)` in the basis `(X, H, Y)`, `X = [[0,-1],[0,0]]`.
pub fn ad<F: Field>(g: &Matrix<F>) -> Result<Matrix<F>> {
    let m = ad_raw(g)?;
    if g.det() != F::one() {
        return Err(Error::Matrix("ad expects a unimodular matrix".into()));
    }
    Ok(m)
}

/// The same for `g ∈ GL(2)`; scalars act trivially, so this factors through `PGL(2)`.
pub fn ad_gl<F: Field>(g: &Matrix<F>) -> Result<Matrix<F>> {
    let m = ad_raw(g)?;
    let inv = g.det().try_inv().ok_or_else(|| Error::Matrix("ad of a singular matrix".into()))?;
    Ok(m.scale(&inv))
}

fn rescale<F: Field>(m: Matrix<F>) -> Result<Matrix<F>> {
    let half = F::half_checked().ok_or(Error::CharacteristicTwo)?;
    let d = [F::one(), F::from_i64(2), F::from_i64(2)];
    let dinv = [F::one(), half.clone(), half];
    Ok(Matrix::from_fn(3, 3, |i, j| d[i].clone() * m[(i, j)].clone() * dinv[j].clone()))
}

/// `ad` conjugated by `diag(1,2,2)`: the version whose unipotent images carry no signs.
pub fn adprime<F: Field>(g: &Matrix<F>) -> Result<Matrix<F>> {
    rescale(ad(g)?)
}

pub fn adprime_gl<F: Field>(g: &Matrix<F>) -> Result<Matrix<F>> {
    rescale(ad_gl(g)?)
}

#[cfg(test)]
mod tests {
    use num_rational::BigRational;

    use super::*;
    use crate::coeffs::{rat, Fp};

    type M = Matrix<BigRational>;

    #[test]
    fn adprime_of_unipotent_and_weyl() {
        let x = rat(3, 7);
        let u = adprime(&upper(x.clone())).unwrap();
        let want = M::from_rows(vec![
            vec![rat(1, 1), x.clone(), x.clone() * x.clone() / rat(2, 1)],
            vec![rat(0, 1), rat(1, 1), x],
            vec![rat(0, 1), rat(0, 1), rat(1, 1)],
        ]);
        assert_eq!(u, want);
        let n = adprime(&weyl_rep::<BigRational>()).unwrap();
        assert_eq!(
            n,
            M::from_rows(vec![
                vec![rat(0, 1), rat(0, 1), rat(1, 2)],
                vec![rat(0, 1), rat(-1, 1), rat(0, 1)],
                vec![rat(2, 1), rat(0, 1), rat(0, 1)],
            ])
        );
    }

    #[test]
    fn ad_is_a_homomorphism() {
        let g = M::from_ints(&[&[2, 1], &[3, 2]]);
        let h = M::from_ints(&[&[1, -1], &[1, 0]]);
        assert_eq!(ad(&g.mul(&h)).unwrap(), ad(&g).unwrap().mul(&ad(&h).unwrap()));
        assert_eq!(ad(&g).unwrap()[(0, 1)], rat(2 * 2 * 1, 1));
        assert!(ad(&M::from_ints(&[&[2, 0], &[0, 1]])).is_err());
        let s = M::from_ints(&[&[3, 0], &[0, 3]]);
        assert!(ad_gl(&s).unwrap().is_identity());
    }

    #[test]
    fn adprime_needs_a_half() {
        assert!(adprime(&weyl_rep::<Fp<5>>()).is_ok());
        assert!(matches!(adprime(&weyl_rep::<Fp<2>>()), Err(Error::CharacteristicTwo)));
    }
}
