//! Weyl group elements as root permutations with canonical reduced words.

use std::collections::{HashSet, VecDeque};
use std::fmt;

use super::datum::RootDatum;
use crate::error::{Error, Result};

/// An element of the Weyl group.
///
/// `perm[k]` is the index of `w(root k)`. `word` is the lexicographically
/// least reduced word (0-based simple indices), so structural equality is
/// group equality.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct WeylElement {
    word: Vec<usize>,
    perm: Vec<usize>,
}

impl fmt::Debug for WeylElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let w: Vec<String> = self.word.iter().map(|i| (i + 1).to_string()).collect();
        write!(f, "w[{}]", w.join(","))
    }
}

impl WeylElement {
    pub fn word(&self) -> &[usize] {
        &self.word
    }

    /// 1-based word, as used in reports.
    pub fn word_one_based(&self) -> Vec<usize> {
        self.word.iter().map(|i| i + 1).collect()
    }

    pub fn perm(&self) -> &[usize] {
        &self.perm
    }

    pub fn length(&self) -> usize {
        self.word.len()
    }

    pub fn is_identity(&self) -> bool {
        self.word.is_empty()
    }

    pub fn apply(&self, root: usize) -> usize {
        self.perm[root]
    }
}

/// An automorphism of the root system given as a root permutation (elements of `Ω ⋊ Γ`).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RootAutomorphism {
    pub perm: Vec<usize>,
}

impl RootAutomorphism {
    pub fn apply(&self, root: usize) -> usize {
        self.perm[root]
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0; self.perm.len()];
        for (k, &v) in self.perm.iter().enumerate() {
            inv[v] = k;
        }
        RootAutomorphism { perm: inv }
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &Self) -> Self {
        RootAutomorphism { perm: other.perm.iter().map(|&k| self.perm[k]).collect() }
    }
}

impl From<&WeylElement> for RootAutomorphism {
    fn from(w: &WeylElement) -> Self {
        RootAutomorphism { perm: w.perm.clone() }
    }
}

impl RootDatum {
    pub fn weyl_identity(&self) -> WeylElement {
        WeylElement { word: Vec::new(), perm: (0..self.num_roots()).collect() }
    }

    /// Canonical element from a root permutation that is known to lie in `Ω`.
    pub fn weyl_from_perm(&self, perm: Vec<usize>) -> WeylElement {
        self.try_weyl_from_perm(perm).expect("permutation is not induced by a Weyl group element")
    }

    /// `None` when `perm` is not the action of an element of `Ω`.
    pub fn try_weyl_from_perm(&self, perm: Vec<usize>) -> Option<WeylElement> {
        if perm.len() != self.num_roots() {
            return None;
        }
        let mut cur = perm.clone();
        let mut word = Vec::new();
        loop {
            // left descent: w⁻¹αᵢ < 0, i.e. αᵢ = w(β) with β negative
            let mut inv = vec![0; cur.len()];
            for (k, &v) in cur.iter().enumerate() {
                inv[v] = k;
            }
            let next = (0..self.rank()).find(|&i| !self.is_positive(inv[self.simple(i)]));
            match next {
                None => break,
                Some(i) => {
                    word.push(i);
                    let s = self.reflection(i);
                    cur = cur.iter().map(|&k| s[k]).collect();
                }
            }
        }
        cur.iter().enumerate().all(|(k, &v)| k == v).then_some(WeylElement { word, perm })
    }

    /// Multiply out a word of simple reflections and canonicalize.
    pub fn analyze_weyl(&self, word: &[usize]) -> Result<WeylElement> {
        if let Some(&i) = word.iter().find(|&&i| i >= self.rank()) {
            return Err(Error::IndexOutOfRange { index: i, rank: self.rank() });
        }
        let mut p: Vec<usize> = (0..self.num_roots()).collect();
        for &i in word.iter().rev() {
            let s = self.reflection(i);
            p = p.iter().map(|&k| s[k]).collect();
        }
        Ok(self.weyl_from_perm(p))
    }

    pub fn simple_reflection(&self, i: usize) -> WeylElement {
        self.weyl_from_perm(self.reflection(i).to_vec())
    }

    /// `a · b` (apply `b` first).
    pub fn weyl_mul(&self, a: &WeylElement, b: &WeylElement) -> WeylElement {
        self.weyl_from_perm(b.perm.iter().map(|&k| a.perm[k]).collect())
    }

    pub fn weyl_inv(&self, w: &WeylElement) -> WeylElement {
        let mut inv = vec![0; w.perm.len()];
        for (k, &v) in w.perm.iter().enumerate() {
            inv[v] = k;
        }
        self.weyl_from_perm(inv)
    }

    /// `R(ζ) = {α > 0 : ζ⁻¹α < 0}` for any root-system automorphism.
    pub fn inversion_set_of(&self, zeta: &RootAutomorphism) -> Vec<usize> {
        let inv = zeta.inverse();
        self.positive_roots().filter(|&a| !self.is_positive(inv.apply(a))).collect()
    }

    pub fn inversion_set(&self, w: &WeylElement) -> Vec<usize> {
        self.inversion_set_of(&RootAutomorphism::from(w))
    }

    pub fn longest_element(&self) -> WeylElement {
        self.longest_in_parabolic(&(0..self.rank()).collect::<Vec<_>>())
    }

    /// Longest element of the parabolic subgroup generated by `subset`.
    pub fn longest_in_parabolic(&self, subset: &[usize]) -> WeylElement {
        let mut perm: Vec<usize> = (0..self.num_roots()).collect();
        loop {
            // right descent at j: w(αⱼ) < 0
            match subset.iter().find(|&&j| self.is_positive(perm[self.simple(j)])) {
                None => break,
                Some(&j) => {
                    let s = self.reflection(j);
                    perm = s.iter().map(|&k| perm[k]).collect();
                }
            }
        }
        self.weyl_from_perm(perm)
    }

    /// All Weyl group elements, in breadth-first order from the identity.
    pub fn weyl_elements(&self) -> Vec<WeylElement> {
        let id = self.weyl_identity();
        let mut seen: HashSet<Vec<usize>> = HashSet::new();
        seen.insert(id.perm.clone());
        let mut out = Vec::new();
        let mut queue = VecDeque::from([id]);
        while let Some(w) = queue.pop_front() {
            for i in 0..self.rank() {
                let s = self.reflection(i);
                let p: Vec<usize> = w.perm.iter().map(|&k| s[k]).collect();
                if seen.insert(p.clone()) {
                    queue.push_back(self.weyl_from_perm(p));
                }
            }
            out.push(w);
        }
        out
    }

    /// Coroot-coordinate matrix of `w`: column `j` is `w(αⱼ∨)`.
    pub fn coroot_matrix(&self, zeta: &RootAutomorphism) -> Vec<Vec<i64>> {
        let r = self.rank();
        let mut m = vec![vec![0; r]; r];
        for j in 0..r {
            let img = &self.root(zeta.apply(self.simple(j))).coroot;
            for i in 0..r {
                m[i][j] = img[i];
            }
        }
        m
    }

    /// Image of a cocharacter (coroot coordinates) under a root automorphism.
    pub fn act_cocharacter(&self, zeta: &RootAutomorphism, lambda: &[i64]) -> Vec<i64> {
        let m = self.coroot_matrix(zeta);
        (0..self.rank()).map(|i| (0..self.rank()).map(|j| m[i][j] * lambda[j]).sum()).collect()
    }

    /// All reduced words of `w` (small ranks only).
    pub fn reduced_words(&self, w: &WeylElement) -> Vec<Vec<usize>> {
        if w.is_identity() {
            return vec![Vec::new()];
        }
        let inv = self.weyl_inv(w);
        let mut out = Vec::new();
        for i in 0..self.rank() {
            if !self.is_positive(inv.perm[self.simple(i)]) {
                let rest = self.weyl_mul(&self.simple_reflection(i), w);
                for mut tail in self.reduced_words(&rest) {
                    tail.insert(0, i);
                    out.push(tail);
                }
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootdata::Family;

    fn a2() -> RootDatum {
        RootDatum::build(&[(Family::A, 2)]).unwrap()
    }

    #[test]
    fn empty_word_is_identity() {
        let d = a2();
        let w = d.analyze_weyl(&[]).unwrap();
        assert!(w.is_identity());
        assert!(d.inversion_set(&w).is_empty());
    }

    #[test]
    fn longest_element_of_a2() {
        let d = a2();
        let w = d.analyze_weyl(&[0, 1, 0]).unwrap();
        assert_eq!(w, d.analyze_weyl(&[1, 0, 1]).unwrap());
        assert_eq!(w, d.longest_element());
        assert_eq!(d.inversion_set(&w).len(), 3);
        // brute force: it is the unique element of length 3 among all six
        let all = d.weyl_elements();
        assert_eq!(all.len(), 6);
        let longest: Vec<_> = all.iter().filter(|x| d.inversion_set(x).len() == 3).collect();
        assert_eq!(longest, vec![&w]);
        assert_eq!(w.word(), &[0, 1, 0]);
    }

    #[test]
    fn non_reduced_word_canonicalizes() {
        let d = a2();
        assert!(d.analyze_weyl(&[0, 0]).unwrap().is_identity());
        assert!(matches!(d.analyze_weyl(&[2]), Err(Error::IndexOutOfRange { .. })));
    }

    #[test]
    fn reanalysis_is_idempotent_and_lengths_match() {
        for ty in ["A3", "B3", "C3", "D4"] {
            let d = RootDatum::parse_type(ty).unwrap();
            for w in d.weyl_elements() {
                let again = d.analyze_weyl(w.word()).unwrap();
                assert_eq!(again, w);
                assert_eq!(w.length(), d.inversion_set(&w).len());
                // every reduced word has the same inversion set
                for rw in d.reduced_words(&w).into_iter().take(4) {
                    let x = d.analyze_weyl(&rw).unwrap();
                    assert_eq!(d.inversion_set(&x), d.inversion_set(&w));
                }
            }
        }
    }

    #[test]
    fn word_multiplication_matches_perm_product() {
        let d = RootDatum::parse_type("A3").unwrap();
        let a = d.analyze_weyl(&[0, 1]).unwrap();
        let b = d.analyze_weyl(&[2, 1]).unwrap();
        assert_eq!(d.weyl_mul(&a, &b), d.analyze_weyl(&[0, 1, 2, 1]).unwrap());
        assert!(d.weyl_mul(&a, &d.weyl_inv(&a)).is_identity());
    }
}
