//! Pieces of the fixed-point group `G^θ ⊂ SL(n)`: the rank-one maps `φ_β`
//! attached to restricted roots and the lifts `n′(ω)` of `ω ∈ Ω^θ`.

use super::context::SlContext;
use super::matrix::Matrix;
use super::sl2;
use crate::coeffs::Field;
use crate::error::{Error, Result};
use crate::rootdata::{LeviKind, RestrictedRootSystem, WeylElement};

pub struct FixedGroup<'a, F> {
    ctx: &'a SlContext<F>,
    rrs: RestrictedRootSystem,
    kinds: Vec<(LeviKind, Vec<Vec<usize>>)>,
    conjugators: Vec<Option<(Vec<usize>, usize)>>,
}

impl<'a, F: Field> FixedGroup<'a, F> {
    pub fn new(ctx: &'a SlContext<F>) -> Result<Self> {
        let rrs = RestrictedRootSystem::restrict(ctx.datum(), ctx.theta())?;
        let kinds = (0..rrs.rank())
            .map(|o| rrs.levi_component(rrs.simple(o)).map(|m| (m.kind, m.components)))
            .collect::<Result<_>>()?;
        let group = rrs.restricted_weyl_group();
        let conjugators = (0..rrs.num_roots())
            .map(|gamma| {
                group.iter().find_map(|(perm, word)| {
                    (0..rrs.rank()).find(|&o| perm[rrs.simple(o)] == gamma).map(|o| (word.clone(), o))
                })
            })
            .collect();
        Ok(FixedGroup { ctx, rrs, kinds, conjugators })
    }

    pub fn context(&self) -> &SlContext<F> {
        self.ctx
    }

    pub fn restricted(&self) -> &RestrictedRootSystem {
        &self.rrs
    }

    pub fn simple_kind(&self, o: usize) -> LeviKind {
        self.kinds[o].0
    }

    /// `φ_β` for the simple restricted root of orbit `o`. On A1-type Levis `g`
    /// must lie in `SL(2)`; on A2-type Levis `g ∈ GL(2)` acts through `PGL(2)`.
    pub fn phi_simple(&self, o: usize, g: &Matrix<F>) -> Result<Matrix<F>> {
        let n = self.ctx.n();
        let (kind, comps) = &self.kinds[o];
        match kind {
            LeviKind::A1 => {
                if g.det() != F::one() {
                    return Err(Error::Matrix("φ on an A1-type Levi needs det g = 1".into()));
                }
                Ok(comps.iter().fold(Matrix::identity(n), |acc, c| acc.mul(&self.ctx.xi(c[0], g))))
            }
            LeviKind::A2 => {
                let block = sl2::adprime_gl(g)?;
                Ok(comps.iter().fold(Matrix::identity(n), |acc, c| acc.mul(&block.embed(n, c[0]))))
            }
            LeviKind::Other => Err(Error::InvalidRealization(format!("Levi of orbit {o} is not of type A1 or A2"))),
        }
    }

    pub fn n_prime_simple(&self, o: usize) -> Result<Matrix<F>> {
        self.phi_simple(o, &sl2::weyl_rep())
    }

    /// Product of `n′(s_β)` along a word in the simple restricted reflections.
    pub fn n_prime_word(&self, word: &[usize]) -> Result<Matrix<F>> {
        word.iter().try_fold(Matrix::identity(self.ctx.n()), |acc, &o| Ok(acc.mul(&self.n_prime_simple(o)?)))
    }

    /// `n′(ω)` for `ω ∈ Ω^θ`, along a reduced restricted word.
    pub fn n_prime(&self, w: &WeylElement) -> Result<Matrix<F>> {
        self.n_prime_word(&self.rrs.restricted_word(w)?)
    }

    /// A shortest word `u` and a simple orbit `o` with `u(β_o) = γ`.
    pub fn conjugator(&self, gamma: usize) -> Option<(Vec<usize>, usize)> {
        self.conjugators.get(gamma).cloned().flatten()
    }

    /// Kind of the Levi attached to `γ` (that of any simple root conjugate to it).
    pub fn kind(&self, gamma: usize) -> Result<LeviKind> {
        let (_, o) = self.conjugator(gamma).ok_or_else(|| Error::NotSimpleRestricted(self.rrs.label(gamma)))?;
        Ok(self.simple_kind(o))
    }

    /// `φ_γ = Int(n′(u)) ∘ φ_β` for `γ = u(β)`.
    pub fn phi(&self, gamma: usize, g: &Matrix<F>) -> Result<Matrix<F>> {
        if !self.rrs.is_indivisible(gamma) {
            return Err(Error::InvalidRealization(format!("{} is divisible", self.rrs.label(gamma))));
        }
        let (word, o) = self.conjugator(gamma).ok_or_else(|| Error::NotSimpleRestricted(self.rrs.label(gamma)))?;
        let u = self.n_prime_word(&word)?;
        Ok(u.mul(&self.phi_simple(o, g)?).mul(&u.inverse()?))
    }
}

#[cfg(test)]
mod tests {
    use num_rational::BigRational;

    use super::*;
    use crate::coeffs::rat;

    type Q = BigRational;

    #[test]
    fn images_are_theta_fixed() {
        for n in 3..=6 {
            let ctx = SlContext::<Q>::new(n).unwrap();
            let fx = FixedGroup::new(&ctx).unwrap();
            let r = fx.restricted();
            let samples = [sl2::upper(rat(2, 3)), sl2::lower(rat(-5, 1)), sl2::weyl_rep(), sl2::diag2(rat(3, 1), rat(1, 3))];
            for gamma in (0..r.num_roots()).filter(|&k| r.is_indivisible(k)) {
                for g in &samples {
                    let m = fx.phi(gamma, g).unwrap();
                    assert!(ctx.is_theta_fixed(&m).unwrap(), "SL({n}) φ_{}", r.label(gamma));
                }
            }
        }
    }

    #[test]
    fn coroots_read_from_phi() {
        for n in 3..=6 {
            let ctx = SlContext::<Q>::new(n).unwrap();
            let fx = FixedGroup::new(&ctx).unwrap();
            let r = fx.restricted();
            for gamma in (0..r.num_roots()).filter(|&k| r.is_indivisible(k)) {
                let m = fx.phi(gamma, &sl2::diag2(rat(2, 1), rat(1, 2))).unwrap();
                let t = ctx.torus_coords(&m).unwrap();
                let want: Vec<Q> = r.gtheta_coroot(gamma).unwrap().iter().map(|&e| num_traits::Pow::pow(rat(2, 1), e as i32)).collect();
                assert_eq!(t.coords(), &want[..], "SL({n}) {}", r.label(gamma));
            }
        }
    }
}
