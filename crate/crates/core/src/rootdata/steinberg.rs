//! Structural checks on `R_res(G, T)` and the comparison `Ω_res ≅ Ω^θ`.

use std::collections::HashMap;

use num_rational::Ratio;
use num_traits::{Signed, Zero};
use serde::Serialize;

use super::restricted::{LeviKind, RestrictedRootSystem, RootType};
use super::weyl::WeylElement;

#[derive(Clone, Debug, Serialize)]
pub struct CheckResult {
    pub name: String,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

impl CheckResult {
    pub fn new(name: impl Into<String>, failures: Vec<String>) -> Self {
        let detail = (!failures.is_empty()).then(|| failures.into_iter().take(5).collect::<Vec<_>>().join("; "));
        CheckResult { name: name.into(), passed: detail.is_none(), detail }
    }
}

pub fn all_passed(checks: &[CheckResult]) -> bool {
    checks.iter().all(|c| c.passed)
}

impl RestrictedRootSystem {
    /// Runs every structural check and returns one result per property.
    pub fn steinberg_checks(&self) -> Vec<CheckResult> {
        vec![
            self.check_root_system(),
            self.check_types(),
            self.check_gtheta_roots(),
            self.check_orbits(),
            self.check_weyl_isomorphism(),
            self.check_levi(),
        ]
    }

    /// `R_res` is a (possibly non-reduced) root system for the averaged form.
    fn check_root_system(&self) -> CheckResult {
        let mut bad = Vec::new();
        for b in 0..self.num_roots() {
            if !self.inner(b, b).is_positive() {
                bad.push(format!("{} not anisotropic", self.label(b)));
            }
            for g in 0..self.num_roots() {
                let n = Ratio::from_integer(2) * self.inner(g, b) / self.inner(b, b);
                if !n.is_integer() {
                    bad.push(format!("<{},{}> = {n}", self.label(g), self.label(b)));
                } else if self.reflect(b, g).is_none() {
                    bad.push(format!("s_{} {} not a root", self.label(b), self.label(g)));
                }
            }
            for g in 0..self.num_roots() {
                let cb = &self.root(b).coeffs;
                let cg = &self.root(g).coeffs;
                // proportional roots: only ±1, ±2, ±½ multiples
                let proportional = (0..cb.len()).all(|i| (0..cb.len()).all(|j| cb[i] * cg[j] == cb[j] * cg[i]));
                if proportional && b != g {
                    let ratio = Ratio::new(cg.iter().sum::<i64>(), cb.iter().sum::<i64>());
                    let allowed = [-2, -1, 2].map(Ratio::from_integer);
                    if !allowed.contains(&ratio) && ratio.abs() != Ratio::new(1, 2) {
                        bad.push(format!("{} and {} proportional", self.label(b), self.label(g)));
                    }
                }
            }
        }
        let pos_ok = (0..self.num_positive()).all(|k| self.root(k).is_positive());
        if !pos_ok {
            bad.push("positive system not sign-coherent".into());
        }
        CheckResult::new("root_system", bad)
    }

    /// Every restricted root has exactly one of the types R1, R2, R3.
    fn check_types(&self) -> CheckResult {
        let mut bad = Vec::new();
        for k in 0..self.num_roots() {
            let c = &self.root(k).coeffs;
            let dbl = self.find(&c.iter().map(|x| 2 * x).collect::<Vec<_>>()).is_some();
            let half = c.iter().all(|x| x % 2 == 0) && self.find(&c.iter().map(|x| x / 2).collect::<Vec<_>>()).is_some();
            if dbl && half {
                bad.push(format!("{} has both 2β and β/2", self.label(k)));
            }
            let expect = if dbl {
                RootType::R2
            } else if half {
                RootType::R3
            } else {
                RootType::R1
            };
            if expect != self.kind(k) {
                bad.push(format!("{} mistyped", self.label(k)));
            }
            if self.kind(self.negate(k)) != self.kind(k) {
                bad.push(format!("type of -{} differs", self.label(k)));
            }
        }
        CheckResult::new("types", bad)
    }

    /// Indivisible restricted roots with the `G^θ` coroots pair to 2 and form a reduced system.
    fn check_gtheta_roots(&self) -> CheckResult {
        let mut bad = Vec::new();
        let d = self.datum();
        for k in (0..self.num_roots()).filter(|&k| self.is_indivisible(k)) {
            let cor = self.gtheta_coroot(k).unwrap();
            let alpha = self.root(k).preimage[0];
            let pairing = d.pairing(&d.root(alpha).coeffs, &cor);
            if pairing != 2 {
                bad.push(format!("<{}, coroot> = {pairing}", self.label(k)));
            }
            for g in (0..self.num_roots()).filter(|&g| self.is_indivisible(g)) {
                let p = d.pairing(&d.root(self.root(g).preimage[0]).coeffs, &cor);
                let v: Vec<i64> = self.root(g).coeffs.iter().zip(&self.root(k).coeffs).map(|(x, y)| x - p * y).collect();
                match self.find(&v) {
                    Some(j) if self.is_indivisible(j) => {}
                    _ => bad.push(format!("indivisible roots not closed under s_{}", self.label(k))),
                }
            }
        }
        CheckResult::new("gtheta_roots", bad)
    }

    /// Fibres of `π` are single θ-orbits, of size 1 or 2 over R3 roots and over R2 roots in pairs.
    fn check_orbits(&self) -> CheckResult {
        let mut bad = Vec::new();
        let d = self.datum();
        let th = self.theta();
        for k in 0..self.num_roots() {
            let pre = &self.root(k).preimage;
            let orbit = {
                let mut o = th.root_orbit(pre[0]);
                o.sort_unstable();
                o
            };
            if &orbit != pre {
                bad.push(format!("fibre over {} is not one θ-orbit", self.label(k)));
            }
            if self.kind(k) == RootType::R3 {
                // the fibre over 2β consists of sums of two roots over β
                let c: Vec<i64> = self.root(k).coeffs.iter().map(|x| x / 2).collect();
                let half = self.find(&c).unwrap();
                for &a in pre {
                    let ok = self.root(half).preimage.iter().any(|&x| {
                        self.root(half).preimage.iter().any(|&y| {
                            let s: Vec<i64> = d.root(x).coeffs.iter().zip(&d.root(y).coeffs).map(|(p, q)| p + q).collect();
                            d.find(&s) == Some(a)
                        })
                    });
                    if !ok {
                        bad.push(format!("{} is not a sum over {}", self.label(k), self.label(half)));
                    }
                }
            }
        }
        CheckResult::new("fibres", bad)
    }

    /// `Ω_res → Ω^θ`, `s_β ↦ w_{M_β}`, is an equivariant group isomorphism.
    fn check_weyl_isomorphism(&self) -> CheckResult {
        let mut bad = Vec::new();
        let d = self.datum();
        let group = self.restricted_weyl_group();
        let images: Vec<WeylElement> = group.iter().map(|(_, w)| self.lift_restricted_word(w)).collect();
        let by_perm: HashMap<&Vec<usize>, usize> = group.iter().enumerate().map(|(i, (p, _))| (p, i)).collect();
        for (i, (p, _)) in group.iter().enumerate() {
            let w = &images[i];
            for a in 0..d.num_roots() {
                if self.restrict_root(w.apply(a)) != p[self.restrict_root(a)] {
                    bad.push(format!("φ not equivariant at {}", format!("{w:?}")));
                    break;
                }
            }
            for o in 0..self.rank() {
                let s = self.simple(o);
                let ps: Vec<usize> =
                    (0..self.num_roots()).map(|g| p[self.reflect(s, g).unwrap()]).collect();
                let j = by_perm[&ps];
                if d.weyl_mul(w, &self.simple_reflection_lift(o)).perm() != images[j].perm() {
                    bad.push("φ not multiplicative".into());
                }
            }
        }
        let mut perms: Vec<&[usize]> = images.iter().map(|w| w.perm()).collect();
        perms.sort();
        perms.dedup();
        if perms.len() != images.len() {
            bad.push("φ not injective".into());
        }
        let fixed = self.theta().fixed_weyl_elements(d);
        if fixed.len() != images.len() || images.iter().any(|w| !self.theta().fixes_weyl(d, w)) {
            bad.push(format!("|Ω^θ| = {} but |Ω_res| = {}", fixed.len(), images.len()));
        }
        CheckResult::new("weyl_isomorphism", bad)
    }

    /// Each `M_β` is a product of A1s or of A2s permuted transitively by θ,
    /// and the roots of `M_β` are exactly those over multiples of `β`.
    fn check_levi(&self) -> CheckResult {
        let mut bad = Vec::new();
        let d = self.datum();
        let th = self.theta();
        for o in 0..self.rank() {
            let b = self.simple(o);
            let m = match self.levi_component(b) {
                Ok(m) => m,
                Err(e) => {
                    bad.push(e.to_string());
                    continue;
                }
            };
            if m.kind == LeviKind::Other {
                bad.push(format!("M_{} has components {:?}", self.label(b), m.components));
            }
            let first = &m.components[0];
            let mut cur = first.clone();
            let mut reached = vec![first.clone()];
            for _ in 0..th.order() {
                cur = cur.iter().map(|&i| th.perm()[i]).collect();
                cur.sort_unstable();
                if !reached.contains(&cur) {
                    reached.push(cur.clone());
                }
            }
            if reached.len() != m.components.len() {
                bad.push(format!("θ not transitive on components of M_{}", self.label(b)));
            }
            let supported: Vec<usize> = (0..d.num_roots())
                .filter(|&a| d.root(a).coeffs.iter().enumerate().all(|(i, &c)| c == 0 || m.simple.contains(&i)))
                .collect();
            if supported != m.roots {
                bad.push(format!("roots of M_{} mismatch", self.label(b)));
            }
            let r3 = m.roots.iter().any(|&a| self.kind(self.restrict_root(a)) == RootType::R3);
            if r3 != (m.kind == LeviKind::A2) {
                bad.push(format!("R3 over {} without A2 Levi", self.label(b)));
            }
            let n = m.roots.len() / 2;
            if m.longest.length() != n {
                bad.push(format!("longest element of M_{} has wrong length", self.label(b)));
            }
            if !self.inner(b, b).is_zero() && self.restrict_root(m.longest.apply(d.simple(m.simple[0]))) != self.negate(b) {
                bad.push(format!("w_M does not invert {}", self.label(b)));
            }
        }
        CheckResult::new("levi", bad)
    }
}

#[cfg(test)]
mod tests {
    use crate::rootdata::{Family, PinnedAutomorphism, RestrictedRootSystem, RootDatum};

    #[test]
    fn checks_pass_on_flips() {
        for (f, n) in [(Family::A, 2), (Family::A, 3), (Family::A, 4), (Family::A, 5), (Family::D, 4), (Family::D, 5)] {
            let d = RootDatum::build(&[(f, n)]).unwrap();
            let t = PinnedAutomorphism::flip(&d).unwrap();
            let r = RestrictedRootSystem::restrict(&d, &t).unwrap();
            for c in r.steinberg_checks() {
                assert!(c.passed, "{f}{n} {}: {:?}", c.name, c.detail);
            }
        }
    }

    #[test]
    fn checks_pass_on_swap_of_factors() {
        let d = RootDatum::build(&[(Family::A, 2), (Family::A, 2)]).unwrap();
        let t = PinnedAutomorphism::new(&d, vec![2, 3, 0, 1]).unwrap();
        let r = RestrictedRootSystem::restrict(&d, &t).unwrap();
        assert_eq!(r.num_positive(), 3);
        assert!(super::all_passed(&r.steinberg_checks()));
    }
}
