//! Pinned (diagram) automorphisms of a based root datum.

use super::datum::RootDatum;
use super::weyl::{RootAutomorphism, WeylElement};
use crate::error::{Error, Result};

/// A diagram automorphism `θ`, given by its permutation of simple roots.
///
/// On simply-connected data it permutes the fundamental weights and the
/// simple coroots, so both lattice actions are permutation matrices.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PinnedAutomorphism {
    perm: Vec<usize>,
    order: usize,
    root_perm: RootAutomorphism,
}

fn order_of(perm: &[usize]) -> usize {
    let mut order = 1;
    let mut cur = perm.to_vec();
    while cur.iter().enumerate().any(|(i, &p)| i != p) {
        cur = cur.iter().map(|&k| perm[k]).collect();
        order += 1;
    }
    order
}

impl PinnedAutomorphism {
    /// `perm[i]` is the image of simple root `i` (0-based).
    pub fn new(datum: &RootDatum, perm: Vec<usize>) -> Result<Self> {
        let r = datum.rank();
        if perm.len() != r {
            return Err(Error::InvalidAutomorphism(format!(
                "permutation has length {} but rank is {r}",
                perm.len()
            )));
        }
        let mut seen = vec![false; r];
        for &p in &perm {
            if p >= r || std::mem::replace(&mut seen[p], true) {
                return Err(Error::InvalidAutomorphism(format!("{perm:?} is not a permutation")));
            }
        }
        let c = datum.cartan();
        for i in 0..r {
            for j in 0..r {
                if c[perm[i]][perm[j]] != c[i][j] {
                    return Err(Error::InvalidAutomorphism(format!(
                        "{:?} does not preserve the Cartan matrix",
                        perm.iter().map(|p| p + 1).collect::<Vec<_>>()
                    )));
                }
            }
        }
        let root_perm = RootAutomorphism {
            perm: datum
                .roots()
                .iter()
                .map(|root| {
                    let mut img = vec![0; r];
                    for (i, &c) in root.coeffs.iter().enumerate() {
                        img[perm[i]] = c;
                    }
                    datum.find(&img).expect("diagram automorphism maps roots to roots")
                })
                .collect(),
        };
        let order = order_of(&perm);
        Ok(PinnedAutomorphism { perm, order, root_perm })
    }

    pub fn identity(datum: &RootDatum) -> Self {
        Self::new(datum, (0..datum.rank()).collect()).expect("identity is valid")
    }

    /// The nontrivial involution of an irreducible diagram of type `A_n` (n ≥ 2)
    /// or `D_n`, or the diagram flip on every such component.
    pub fn flip(datum: &RootDatum) -> Result<Self> {
        let mut perm: Vec<usize> = (0..datum.rank()).collect();
        let mut off = 0;
        for &(fam, n) in datum.components() {
            match fam {
                super::Family::A => {
                    for i in 0..n {
                        perm[off + i] = off + n - 1 - i;
                    }
                }
                super::Family::D => {
                    perm[off + n - 2] = off + n - 1;
                    perm[off + n - 1] = off + n - 2;
                }
                _ => {}
            }
            off += n;
        }
        Self::new(datum, perm)
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &Self) -> Self {
        let perm: Vec<usize> = other.perm.iter().map(|&k| self.perm[k]).collect();
        let root_perm = self.root_perm.compose(&other.root_perm);
        let order = order_of(&perm);
        PinnedAutomorphism { perm, order, root_perm }
    }

    pub fn pow(&self, k: usize) -> Self {
        let id = PinnedAutomorphism {
            perm: (0..self.perm.len()).collect(),
            order: 1,
            root_perm: RootAutomorphism { perm: (0..self.root_perm.perm.len()).collect() },
        };
        (0..k % self.order).fold(id, |acc, _| self.compose(&acc))
    }

    pub fn inverse(&self) -> Self {
        self.pow(self.order - 1)
    }

    pub fn perm(&self) -> &[usize] {
        &self.perm
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn is_identity(&self) -> bool {
        self.order == 1
    }

    pub fn root_automorphism(&self) -> &RootAutomorphism {
        &self.root_perm
    }

    pub fn apply_root(&self, k: usize) -> usize {
        self.root_perm.apply(k)
    }

    /// Action on cocharacter (simple-coroot) coordinates.
    pub fn apply_cocharacter(&self, lambda: &[i64]) -> Vec<i64> {
        let mut out = vec![0; lambda.len()];
        for (i, &c) in lambda.iter().enumerate() {
            out[self.perm[i]] = c;
        }
        out
    }

    /// Action on character (fundamental-weight) coordinates; also a permutation.
    pub fn apply_character(&self, lambda: &[i64]) -> Vec<i64> {
        self.apply_cocharacter(lambda)
    }

    /// `θ w θ⁻¹`.
    pub fn apply_weyl(&self, datum: &RootDatum, w: &WeylElement) -> WeylElement {
        let inv = self.root_perm.inverse();
        let p = self.root_perm.compose(&RootAutomorphism::from(w)).compose(&inv);
        datum.weyl_from_perm(p.perm)
    }

    pub fn fixes_weyl(&self, datum: &RootDatum, w: &WeylElement) -> bool {
        self.apply_weyl(datum, w) == *w
    }

    /// `Ω^θ`.
    pub fn fixed_weyl_elements(&self, datum: &RootDatum) -> Vec<WeylElement> {
        datum.weyl_elements().into_iter().filter(|w| self.fixes_weyl(datum, w)).collect()
    }

    /// Orbits of `θ` on simple-root indices, ordered by least element.
    pub fn simple_orbits(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.perm.len()];
        let mut out = Vec::new();
        for i in 0..self.perm.len() {
            if seen[i] {
                continue;
            }
            let mut orbit = vec![i];
            seen[i] = true;
            let mut j = self.perm[i];
            while j != i {
                seen[j] = true;
                orbit.push(j);
                j = self.perm[j];
            }
            orbit.sort_unstable();
            out.push(orbit);
        }
        out
    }

    /// The θ-orbit of a root.
    pub fn root_orbit(&self, k: usize) -> Vec<usize> {
        let mut orbit = vec![k];
        let mut j = self.apply_root(k);
        while j != k {
            orbit.push(j);
            j = self.apply_root(j);
        }
        orbit.sort_unstable();
        orbit
    }

    /// `N(λ)`: sum over the θ-orbit of a cocharacter.
    pub fn norm_cocharacter(&self, lambda: &[i64]) -> Vec<i64> {
        let mut orbit = vec![lambda.to_vec()];
        loop {
            let next = self.apply_cocharacter(orbit.last().unwrap());
            if next == lambda {
                break;
            }
            orbit.push(next);
        }
        let mut out = vec![0; lambda.len()];
        for v in orbit {
            for (o, x) in out.iter_mut().zip(v) {
                *o += x;
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootdata::Family;

    #[test]
    fn flips_and_orders() {
        let a2 = RootDatum::build(&[(Family::A, 2)]).unwrap();
        let t = PinnedAutomorphism::flip(&a2).unwrap();
        assert_eq!(t.perm(), &[1, 0]);
        assert_eq!(t.order(), 2);
        let d4 = RootDatum::build(&[(Family::D, 4)]).unwrap();
        let tri = PinnedAutomorphism::new(&d4, vec![2, 1, 3, 0]).unwrap();
        assert_eq!(tri.order(), 3);
        assert!(PinnedAutomorphism::new(&d4, vec![1, 0, 2, 3]).is_err());
        let b3 = RootDatum::build(&[(Family::B, 3)]).unwrap();
        assert!(PinnedAutomorphism::new(&b3, vec![2, 1, 0]).is_err());
    }

    #[test]
    fn preserves_positivity() {
        let d = RootDatum::build(&[(Family::A, 5)]).unwrap();
        let t = PinnedAutomorphism::flip(&d).unwrap();
        for k in d.positive_roots() {
            assert!(d.is_positive(t.apply_root(k)));
        }
    }

    #[test]
    fn fixed_weyl_group_of_a2_flip() {
        let d = RootDatum::build(&[(Family::A, 2)]).unwrap();
        let t = PinnedAutomorphism::flip(&d).unwrap();
        let fixed = t.fixed_weyl_elements(&d);
        assert_eq!(fixed, vec![d.weyl_identity(), d.longest_element()]);
    }
}
