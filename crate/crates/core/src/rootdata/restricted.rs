//! Restriction of roots to the fixed torus `T^θ` and the structure of the
//! resulting (possibly non-reduced) root system.

use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt;

use num_rational::Ratio;
use serde::Serialize;

use super::automorphism::PinnedAutomorphism;
use super::datum::RootDatum;
use super::weyl::WeylElement;
use crate::error::{Error, Result};

/// Types of restricted roots, by which multiples are also restricted roots.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum RootType {
    /// Neither `2β` nor `½β` is a restricted root.
    R1,
    /// `2β` is a restricted root.
    R2,
    /// `½β` is a restricted root.
    R3,
}

#[derive(Clone, Debug)]
pub struct RestrictedRoot {
    /// Coordinates in the simple restricted roots (one per θ-orbit of simple roots).
    pub coeffs: Vec<i64>,
    pub kind: RootType,
    /// The θ-orbit of roots restricting to this one.
    pub preimage: Vec<usize>,
}

impl RestrictedRoot {
    pub fn is_positive(&self) -> bool {
        self.coeffs.iter().all(|&c| c >= 0)
    }
}

/// `R_res(G, T)` together with the quotient map `π`.
///
/// The character lattice of `T^θ` is the coinvariant lattice `X*(T)/(θ-1)X*(T)`.
/// For simply-connected data `θ` permutes the fundamental weights, so the
/// coinvariants are free on the θ-orbits and a restricted root is determined
/// by its coordinates in the images of the simple roots.
#[derive(Clone, Debug)]
pub struct RestrictedRootSystem {
    datum: RootDatum,
    theta: PinnedAutomorphism,
    simple_orbits: Vec<Vec<usize>>,
    roots: Vec<RestrictedRoot>,
    npos: usize,
    res_of: Vec<usize>,
    index: HashMap<Vec<i64>, usize>,
}

impl fmt::Display for RestrictedRootSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let items: Vec<String> = (0..self.npos).map(|k| format!("{}:{:?}", self.label(k), self.kind(k))).collect();
        write!(f, "R_res+ = {{{}}}", items.join(", "))
    }
}

impl RestrictedRootSystem {
    pub fn restrict(datum: &RootDatum, theta: &PinnedAutomorphism) -> Result<Self> {
        if theta.perm().len() != datum.rank() {
            return Err(Error::RankMismatch { expected: datum.rank(), found: theta.perm().len() });
        }
        let simple_orbits = theta.simple_orbits();
        let mut orbit_of = vec![0; datum.rank()];
        for (o, orb) in simple_orbits.iter().enumerate() {
            for &i in orb {
                orbit_of[i] = o;
            }
        }
        let project = |c: &[i64]| {
            let mut v = vec![0; simple_orbits.len()];
            for (i, &x) in c.iter().enumerate() {
                v[orbit_of[i]] += x;
            }
            v
        };
        let mut fibres: HashMap<Vec<i64>, Vec<usize>> = HashMap::new();
        for (k, r) in datum.roots().iter().enumerate() {
            fibres.entry(project(&r.coeffs)).or_default().push(k);
        }
        let mut pos: Vec<Vec<i64>> = fibres.keys().filter(|v| v.iter().all(|&c| c >= 0)).cloned().collect();
        pos.sort_by(|a, b| a.iter().sum::<i64>().cmp(&b.iter().sum::<i64>()).then(a.cmp(b)));
        let npos = pos.len();
        let mut coords: Vec<Vec<i64>> = pos.clone();
        coords.extend(pos.iter().map(|v| v.iter().map(|c| -c).collect::<Vec<_>>()));
        let index: HashMap<Vec<i64>, usize> = coords.iter().enumerate().map(|(k, v)| (v.clone(), k)).collect();
        let roots = coords
            .iter()
            .map(|v| {
                let double: Vec<i64> = v.iter().map(|c| 2 * c).collect();
                let half = v.iter().all(|c| c % 2 == 0).then(|| v.iter().map(|c| c / 2).collect::<Vec<_>>());
                let kind = if index.contains_key(&double) {
                    RootType::R2
                } else if half.is_some_and(|h| index.contains_key(&h)) {
                    RootType::R3
                } else {
                    RootType::R1
                };
                let mut preimage = fibres[v].clone();
                preimage.sort_unstable();
                RestrictedRoot { coeffs: v.clone(), kind, preimage }
            })
            .collect::<Vec<_>>();
        let res_of = datum.roots().iter().map(|r| index[&project(&r.coeffs)]).collect();
        Ok(RestrictedRootSystem {
            datum: datum.clone(),
            theta: theta.clone(),
            simple_orbits,
            roots,
            npos,
            res_of,
            index,
        })
    }

    pub fn datum(&self) -> &RootDatum {
        &self.datum
    }

    pub fn theta(&self) -> &PinnedAutomorphism {
        &self.theta
    }

    pub fn rank(&self) -> usize {
        self.simple_orbits.len()
    }

    pub fn simple_orbits(&self) -> &[Vec<usize>] {
        &self.simple_orbits
    }

    pub fn roots(&self) -> &[RestrictedRoot] {
        &self.roots
    }

    pub fn root(&self, k: usize) -> &RestrictedRoot {
        &self.roots[k]
    }

    pub fn num_roots(&self) -> usize {
        self.roots.len()
    }

    pub fn num_positive(&self) -> usize {
        self.npos
    }

    pub fn is_positive(&self, k: usize) -> bool {
        k < self.npos
    }

    pub fn kind(&self, k: usize) -> RootType {
        self.roots[k].kind
    }

    pub fn negate(&self, k: usize) -> usize {
        if k < self.npos {
            k + self.npos
        } else {
            k - self.npos
        }
    }

    /// `π(α)` as a restricted-root index.
    pub fn restrict_root(&self, alpha: usize) -> usize {
        self.res_of[alpha]
    }

    pub fn find(&self, coeffs: &[i64]) -> Option<usize> {
        self.index.get(coeffs).copied()
    }

    /// Index of the simple restricted root attached to the `o`-th θ-orbit.
    pub fn simple(&self, o: usize) -> usize {
        let mut v = vec![0; self.rank()];
        v[o] = 1;
        self.index[&v]
    }

    pub fn simple_index_of(&self, k: usize) -> Option<usize> {
        (0..self.rank()).find(|&o| self.simple(o) == k)
    }

    pub fn is_reduced(&self) -> bool {
        self.roots.iter().all(|r| r.kind == RootType::R1)
    }

    /// Indivisible roots (types R1 and R2): the roots of `G^θ`.
    pub fn is_indivisible(&self, k: usize) -> bool {
        self.kind(k) != RootType::R3
    }

    pub fn label(&self, k: usize) -> String {
        format!("{:?}", self.roots[k].coeffs)
    }

    /// The inner product `(β, γ)` induced from the θ-averaged invariant form (doubled).
    pub fn inner(&self, b: usize, g: usize) -> Ratio<i64> {
        let sum = |k: usize| {
            let mut v = vec![0; self.datum.rank()];
            for &a in &self.roots[k].preimage {
                for (x, c) in v.iter_mut().zip(&self.datum.root(a).coeffs) {
                    *x += c;
                }
            }
            v
        };
        let nb = self.roots[b].preimage.len() as i64;
        let ng = self.roots[g].preimage.len() as i64;
        Ratio::new(self.datum.form2(&sum(b), &sum(g)), nb * ng)
    }

    /// `s_β(γ)`, or `None` if the Cartan integer is not integral or the image is not a root.
    pub fn reflect(&self, b: usize, g: usize) -> Option<usize> {
        let n = Ratio::from_integer(2) * self.inner(g, b) / self.inner(b, b);
        if !n.is_integer() {
            return None;
        }
        let n = n.to_integer();
        let v: Vec<i64> = self.roots[g].coeffs.iter().zip(&self.roots[b].coeffs).map(|(x, y)| x - n * y).collect();
        self.find(&v)
    }

    /// Coroot of an indivisible restricted root in `G^θ`, in simple-coroot coordinates of `T`:
    /// `N(α∨)` for type R1 and `2N(α∨)` for type R2.
    pub fn gtheta_coroot(&self, k: usize) -> Option<Vec<i64>> {
        let alpha = self.roots[k].preimage[0];
        let n = self.theta.norm_cocharacter(&self.datum.root(alpha).coroot);
        match self.kind(k) {
            RootType::R1 => Some(n),
            RootType::R2 => Some(n.into_iter().map(|c| 2 * c).collect()),
            RootType::R3 => None,
        }
    }

    /// Image of `φ(s_β)` for the simple restricted root of orbit `o`: the
    /// longest element of the Weyl group of `M_β`.
    pub fn simple_reflection_lift(&self, o: usize) -> WeylElement {
        self.datum.longest_in_parabolic(&self.simple_orbits[o])
    }

    /// `Ω_res` as permutations of the restricted roots, each with a word in
    /// the simple restricted reflections (breadth-first, so words are reduced).
    pub fn restricted_weyl_group(&self) -> Vec<(Vec<usize>, Vec<usize>)> {
        let gens: Vec<Vec<usize>> = (0..self.rank())
            .map(|o| {
                let b = self.simple(o);
                (0..self.num_roots()).map(|g| self.reflect(b, g).expect("simple reflection preserves R_res")).collect()
            })
            .collect();
        let id: Vec<usize> = (0..self.num_roots()).collect();
        let mut seen = HashSet::from([id.clone()]);
        let mut out = Vec::new();
        let mut queue = VecDeque::from([(id, Vec::new())]);
        while let Some((p, word)) = queue.pop_front() {
            for (o, s) in gens.iter().enumerate() {
                // p ∘ s
                let q: Vec<usize> = s.iter().map(|&k| p[k]).collect();
                if seen.insert(q.clone()) {
                    let mut w = word.clone();
                    w.push(o);
                    queue.push_back((q, w));
                }
            }
            out.push((p, word));
        }
        out
    }

    /// The homomorphism `Ω_res → Ω` on a word of simple restricted reflections.
    pub fn lift_restricted_word(&self, word: &[usize]) -> WeylElement {
        word.iter()
            .fold(self.datum.weyl_identity(), |acc, &o| self.datum.weyl_mul(&acc, &self.simple_reflection_lift(o)))
    }

    /// Reduced word in the simple restricted reflections for `w ∈ Ω^θ`.
    pub fn restricted_word(&self, w: &WeylElement) -> Result<Vec<usize>> {
        if !self.theta.fixes_weyl(&self.datum, w) {
            return Err(Error::NotThetaFixed);
        }
        let mut cur = w.clone();
        let mut word = Vec::new();
        while !cur.is_identity() {
            let inv = self.datum.weyl_inv(&cur);
            // a left descent orbit: w⁻¹ sends some simple root of the orbit negative
            let o = (0..self.rank())
                .find(|&o| self.simple_orbits[o].iter().any(|&i| !self.datum.is_positive(inv.apply(self.datum.simple(i)))))
                .expect("nontrivial element has a descent");
            word.push(o);
            cur = self.datum.weyl_mul(&self.simple_reflection_lift(o), &cur);
        }
        Ok(word)
    }

    /// The Levi subgroup `M_β` for a simple restricted root.
    pub fn levi_component(&self, beta: usize) -> Result<LeviComponent> {
        let o = self.simple_index_of(beta).ok_or_else(|| Error::NotSimpleRestricted(self.label(beta)))?;
        let simple = self.simple_orbits[o].clone();
        let mut components: Vec<Vec<usize>> = Vec::new();
        let mut seen = HashSet::new();
        for &i in &simple {
            if !seen.insert(i) {
                continue;
            }
            let mut comp = vec![i];
            let mut stack = vec![i];
            while let Some(x) = stack.pop() {
                for &y in &simple {
                    if self.datum.adjacent(x, y) && seen.insert(y) {
                        comp.push(y);
                        stack.push(y);
                    }
                }
            }
            comp.sort_unstable();
            components.push(comp);
        }
        let kind = if components.iter().all(|c| c.len() == 1) {
            LeviKind::A1
        } else if components.iter().all(|c| {
            c.len() == 2 && self.datum.cartan()[c[0]][c[1]] == -1 && self.datum.cartan()[c[1]][c[0]] == -1
        }) {
            LeviKind::A2
        } else {
            LeviKind::Other
        };
        let roots: Vec<usize> = (0..self.datum.num_roots())
            .filter(|&a| {
                let c = &self.roots[self.res_of[a]].coeffs;
                c.iter().enumerate().all(|(j, &x)| j == o || x == 0)
            })
            .collect();
        let cartan = simple.iter().map(|&i| simple.iter().map(|&j| self.datum.cartan()[i][j]).collect()).collect();
        let norms = simple.iter().map(|&i| self.datum.norms()[i]).collect();
        let sub = RootDatum::from_cartan(cartan, norms)?;
        let theta_on_simple =
            simple.iter().map(|&i| simple.iter().position(|&j| j == self.theta.perm()[i]).unwrap()).collect();
        Ok(LeviComponent {
            beta,
            simple: simple.clone(),
            components,
            kind,
            roots,
            datum: sub,
            theta_on_simple,
            longest: self.datum.longest_in_parabolic(&simple),
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum LeviKind {
    A1,
    A2,
    Other,
}

/// `M_β`: roots, diagram components and the θ-action on them.
#[derive(Clone, Debug)]
pub struct LeviComponent {
    pub beta: usize,
    /// Simple roots of `G` lying over `β`.
    pub simple: Vec<usize>,
    pub components: Vec<Vec<usize>>,
    pub kind: LeviKind,
    /// `π⁻¹(ℤβ ∩ R_res)` as root indices of `G`.
    pub roots: Vec<usize>,
    /// The Levi as a root datum in its own right.
    pub datum: RootDatum,
    /// θ on the simple roots of `datum`.
    pub theta_on_simple: Vec<usize>,
    pub longest: WeylElement,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootdata::Family;

    fn flip(ty: Family, n: usize) -> RestrictedRootSystem {
        let d = RootDatum::build(&[(ty, n)]).unwrap();
        let t = PinnedAutomorphism::flip(&d).unwrap();
        RestrictedRootSystem::restrict(&d, &t).unwrap()
    }

    #[test]
    fn a2_flip_is_bc1() {
        let r = flip(Family::A, 2);
        let kinds: Vec<_> = (0..r.num_positive()).map(|k| (r.root(k).coeffs.clone(), r.kind(k))).collect();
        assert_eq!(kinds, vec![(vec![1], RootType::R2), (vec![2], RootType::R3)]);
        assert!(!r.is_reduced());
    }

    #[test]
    fn a3_flip_is_c2() {
        let r = flip(Family::A, 3);
        assert_eq!(r.num_positive(), 4);
        assert!(r.is_reduced());
    }

    #[test]
    fn a4_flip_is_bc2() {
        let r = flip(Family::A, 4);
        assert_eq!(r.datum().num_roots(), 20);
        let got: Vec<_> = (0..r.num_positive()).map(|k| (r.root(k).coeffs.clone(), r.kind(k))).collect();
        use RootType::*;
        let want = vec![
            (vec![0, 1], R2),
            (vec![1, 0], R1),
            (vec![0, 2], R3),
            (vec![1, 1], R2),
            (vec![1, 2], R1),
            (vec![2, 2], R3),
        ];
        assert_eq!(got, want);
    }

    #[test]
    fn identity_theta_restricts_injectively() {
        let d = RootDatum::build(&[(Family::B, 3)]).unwrap();
        let r = RestrictedRootSystem::restrict(&d, &PinnedAutomorphism::identity(&d)).unwrap();
        assert_eq!(r.num_roots(), d.num_roots());
        assert!(r.is_reduced());
    }

    #[test]
    fn levi_components() {
        let r = flip(Family::A, 2);
        let m = r.levi_component(r.simple(0)).unwrap();
        assert_eq!(m.kind, LeviKind::A2);
        assert_eq!(m.theta_on_simple, vec![1, 0]);
        assert_eq!(m.roots.len(), 6);

        let r = flip(Family::A, 3);
        let b1 = r.simple(0); // orbit {α₁, α₃}
        let m = r.levi_component(b1).unwrap();
        assert_eq!(m.kind, LeviKind::A1);
        assert_eq!(m.components, vec![vec![0], vec![2]]);
        assert!(r.levi_component(r.find(&[1, 1]).unwrap()).is_err());

        let d = RootDatum::build(&[(Family::A, 3)]).unwrap();
        let r = RestrictedRootSystem::restrict(&d, &PinnedAutomorphism::identity(&d)).unwrap();
        let m = r.levi_component(r.simple(1)).unwrap();
        assert_eq!((m.kind, m.components.len()), (LeviKind::A1, 1));
    }

    #[test]
    fn gtheta_coroots() {
        let r = flip(Family::A, 2);
        assert_eq!(r.gtheta_coroot(r.simple(0)), Some(vec![2, 2]));
        assert_eq!(r.gtheta_coroot(r.find(&[2]).unwrap()), None);
    }
}
