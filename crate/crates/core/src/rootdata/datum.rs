//! Simply-connected based root data of classical type.

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Family {
    A,
    B,
    C,
    D,
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

impl std::str::FromStr for Family {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "A" | "a" => Ok(Family::A),
            "B" | "b" => Ok(Family::B),
            "C" | "c" => Ok(Family::C),
            "D" | "d" => Ok(Family::D),
            other => Err(Error::UnsupportedType { family: other.to_string(), rank: 0 }),
        }
    }
}

/// A root, stored in the simple-root basis, together with its coroot in the
/// simple-coroot basis.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Root {
    pub coeffs: Vec<i64>,
    pub coroot: Vec<i64>,
}

impl Root {
    pub fn height(&self) -> i64 {
        self.coeffs.iter().sum()
    }

    pub fn is_positive(&self) -> bool {
        self.coeffs.iter().all(|&c| c >= 0)
    }
}

/// Based root datum of a semisimple simply-connected group.
///
/// Characters are the weight lattice (coordinates `⟨λ, αᵢ∨⟩`), cocharacters
/// the coroot lattice (coordinates in the simple coroots). Roots are ordered
/// positive-first by height then lexicographically; the negative of root `k`
/// sits at `k + num_positive()`.
#[derive(Clone, Debug)]
pub struct RootDatum {
    components: Vec<(Family, usize)>,
    /// `cartan[i][j] = ⟨αⱼ, αᵢ∨⟩`.
    cartan: Vec<Vec<i64>>,
    /// `(αᵢ, αᵢ)` for a W-invariant form normalized so short roots have norm 1 or 2.
    norms: Vec<i64>,
    roots: Vec<Root>,
    npos: usize,
    index: HashMap<Vec<i64>, usize>,
    reflections: Vec<Vec<usize>>,
}

fn cartan_block(family: Family, n: usize) -> Result<(Vec<Vec<i64>>, Vec<i64>)> {
    let bad = || Error::UnsupportedType { family: family.to_string(), rank: n };
    let min = match family {
        Family::A => 1,
        Family::B | Family::C => 2,
        Family::D => 4,
    };
    if n < min || n > 12 {
        return Err(bad());
    }
    let mut a = vec![vec![0i64; n]; n];
    for i in 0..n {
        a[i][i] = 2;
    }
    let chain = if family == Family::D { n - 1 } else { n };
    for i in 0..chain.saturating_sub(1) {
        a[i][i + 1] = -1;
        a[i + 1][i] = -1;
    }
    let mut norms = vec![2i64; n];
    match family {
        Family::A => {}
        Family::B => {
            // α_n short
            a[n - 1][n - 2] = -2;
            norms[n - 1] = 1;
        }
        Family::C => {
            // α_n long
            a[n - 2][n - 1] = -2;
            norms[n - 1] = 4;
        }
        Family::D => {
            a[n - 1][n - 3] = -1;
            a[n - 3][n - 1] = -1;
        }
    }
    Ok((a, norms))
}

impl RootDatum {
    /// Direct sum of the listed irreducible types.
    pub fn build(types: &[(Family, usize)]) -> Result<Self> {
        if types.is_empty() {
            return Err(Error::UnsupportedType { family: "empty".into(), rank: 0 });
        }
        let rank: usize = types.iter().map(|t| t.1).sum();
        let mut cartan = vec![vec![0i64; rank]; rank];
        let mut norms = Vec::with_capacity(rank);
        let mut off = 0;
        for &(fam, n) in types {
            let (a, nm) = cartan_block(fam, n)?;
            for i in 0..n {
                for j in 0..n {
                    cartan[off + i][off + j] = a[i][j];
                }
            }
            norms.extend(nm);
            off += n;
        }
        let mut d = Self::from_cartan(cartan, norms)?;
        d.components = types.to_vec();
        Ok(d)
    }

    pub fn parse_type(s: &str) -> Result<Self> {
        let mut types = Vec::new();
        for part in s.split(['x', '+', ' ']).filter(|p| !p.is_empty()) {
            let (f, r) = part.split_at(1);
            let rank = r.parse().map_err(|_| Error::Parse {
                field: "type".into(),
                message: format!("bad rank in `{part}`"),
            })?;
            types.push((f.parse()?, rank));
        }
        Self::build(&types)
    }

    /// Root datum from a Cartan matrix and the norms of the simple roots.
    pub fn from_cartan(cartan: Vec<Vec<i64>>, norms: Vec<i64>) -> Result<Self> {
        let rank = cartan.len();
        if rank == 0 || norms.len() != rank || cartan.iter().any(|r| r.len() != rank) {
            return Err(Error::InvalidAutomorphism("malformed Cartan matrix".into()));
        }
        for i in 0..rank {
            for j in 0..rank {
                let ok = if i == j {
                    cartan[i][j] == 2
                } else {
                    cartan[i][j] <= 0
                        && (cartan[i][j] == 0) == (cartan[j][i] == 0)
                        && norms[i] * cartan[i][j] == norms[j] * cartan[j][i]
                };
                if !ok {
                    return Err(Error::InvalidAutomorphism(format!(
                        "Cartan matrix fails the axioms at ({i},{j})"
                    )));
                }
            }
        }
        let form = |x: &[i64], y: &[i64]| -> i64 {
            // (x, y) doubled so that it stays integral
            let mut s = 0;
            for i in 0..rank {
                for j in 0..rank {
                    s += x[i] * y[j] * norms[i] * cartan[i][j];
                }
            }
            s
        };
        let pair_simple = |x: &[i64], i: usize| -> i64 { (0..rank).map(|j| x[j] * cartan[i][j]).sum() };

        let mut found: BTreeSet<Vec<i64>> = BTreeSet::new();
        let mut frontier: Vec<Vec<i64>> = (0..rank)
            .map(|i| {
                let mut v = vec![0; rank];
                v[i] = 1;
                v
            })
            .collect();
        while let Some(r) = frontier.pop() {
            if found.len() > 10_000 {
                return Err(Error::UnsupportedType { family: "infinite".into(), rank });
            }
            if !found.insert(r.clone()) {
                continue;
            }
            for i in 0..rank {
                let k = pair_simple(&r, i);
                let mut s = r.clone();
                s[i] -= k;
                if !found.contains(&s) {
                    frontier.push(s);
                }
            }
        }
        let mut pos: Vec<Vec<i64>> = found.into_iter().filter(|r| r.iter().all(|&c| c >= 0)).collect();
        pos.sort_by(|a, b| a.iter().sum::<i64>().cmp(&b.iter().sum::<i64>()).then(a.cmp(b)));
        let npos = pos.len();
        let mut roots = Vec::with_capacity(2 * npos);
        for sign in [1i64, -1] {
            for r in &pos {
                let coeffs: Vec<i64> = r.iter().map(|c| sign * c).collect();
                let nn = form(&coeffs, &coeffs);
                let coroot = (0..rank)
                    .map(|j| {
                        // β∨ = Σ c_j (|α_j|²/|β|²) α_j∨, and nn = 2|β|²
                        let num = 2 * coeffs[j] * norms[j];
                        assert_eq!(num % nn, 0, "non-integral coroot");
                        num / nn
                    })
                    .collect();
                roots.push(Root { coeffs, coroot });
            }
        }
        let index: HashMap<Vec<i64>, usize> =
            roots.iter().enumerate().map(|(k, r)| (r.coeffs.clone(), k)).collect();
        let reflections = (0..rank)
            .map(|i| {
                roots
                    .iter()
                    .map(|r| {
                        let k = pair_simple(&r.coeffs, i);
                        let mut s = r.coeffs.clone();
                        s[i] -= k;
                        index[&s]
                    })
                    .collect()
            })
            .collect();
        Ok(RootDatum { components: Vec::new(), cartan, norms, roots, npos, index, reflections })
    }

    pub fn rank(&self) -> usize {
        self.cartan.len()
    }

    pub fn components(&self) -> &[(Family, usize)] {
        &self.components
    }

    pub fn cartan(&self) -> &[Vec<i64>] {
        &self.cartan
    }

    pub fn norms(&self) -> &[i64] {
        &self.norms
    }

    pub fn roots(&self) -> &[Root] {
        &self.roots
    }

    pub fn root(&self, k: usize) -> &Root {
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

    pub fn negate(&self, k: usize) -> usize {
        if k < self.npos {
            k + self.npos
        } else {
            k - self.npos
        }
    }

    pub fn positive_roots(&self) -> std::ops::Range<usize> {
        0..self.npos
    }

    /// Index of the simple root `αᵢ`.
    pub fn simple(&self, i: usize) -> usize {
        let mut v = vec![0; self.rank()];
        v[i] = 1;
        self.index[&v]
    }

    pub fn find(&self, coeffs: &[i64]) -> Option<usize> {
        self.index.get(coeffs).copied()
    }

    /// Root permutation of the simple reflection `sᵢ`.
    pub fn reflection(&self, i: usize) -> &[usize] {
        &self.reflections[i]
    }

    /// `⟨λ, μ∨⟩` for `λ` in root coordinates and `μ∨` in coroot coordinates.
    pub fn pairing(&self, root_coeffs: &[i64], coroot_coeffs: &[i64]) -> i64 {
        let r = self.rank();
        let mut s = 0;
        for i in 0..r {
            for j in 0..r {
                s += coroot_coeffs[i] * self.cartan[i][j] * root_coeffs[j];
            }
        }
        s
    }

    /// Character coordinates `(⟨α, αᵢ∨⟩)ᵢ` of a root.
    pub fn weight_coords(&self, k: usize) -> Vec<i64> {
        let c = &self.roots[k].coeffs;
        (0..self.rank()).map(|i| (0..self.rank()).map(|j| self.cartan[i][j] * c[j]).sum()).collect()
    }

    /// Doubled W-invariant form on root coordinates.
    pub fn form2(&self, x: &[i64], y: &[i64]) -> i64 {
        let r = self.rank();
        let mut s = 0;
        for i in 0..r {
            for j in 0..r {
                s += x[i] * y[j] * self.norms[i] * self.cartan[i][j];
            }
        }
        s
    }

    /// Dynkin-diagram adjacency.
    pub fn adjacent(&self, i: usize, j: usize) -> bool {
        i != j && self.cartan[i][j] != 0
    }
}
