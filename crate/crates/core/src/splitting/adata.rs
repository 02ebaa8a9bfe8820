use std::collections::BTreeMap;
use std::fmt;

use rand::Rng;
use serde::Serialize;

use super::descent::DescentDatum;
use crate::coeffs::{Coefficient, ExplicitField, Monomial, SymbolAction};
use crate::error::{Error, Result};
use crate::rootdata::{PinnedAutomorphism, RestrictedRootSystem, RootAutomorphism, RootDatum, RootType};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Flavor {
    /// On `R(G, 𝐓)`.
    Plain,
    /// On `R(G, 𝐓)`, constant on θ-orbits.
    Twisted,
    /// On `R_res`, with `a_{2β} = a_β`.
    Special,
    /// On `R_res`, with `a_{2β} = a_β / 2`.
    Tilde,
}

impl Flavor {
    pub fn on_restricted(self) -> bool {
        matches!(self, Flavor::Special | Flavor::Tilde)
    }
}

/// a-data, indexed by roots (plain, twisted) or restricted roots (special, tilde).
#[derive(Clone, Debug, PartialEq)]
pub struct ADatum<C> {
    pub flavor: Flavor,
    pub values: Vec<C>,
}

fn fail(msg: String) -> Error {
    Error::InvalidAData(msg)
}

/// Induced action of `σ_T(g)` on restricted roots.
pub fn restricted_action(rrs: &RestrictedRootSystem, zeta: &RootAutomorphism) -> Vec<usize> {
    (0..rrs.num_roots()).map(|b| rrs.restrict_root(zeta.apply(rrs.root(b).preimage[0]))).collect()
}

impl<C: Coefficient> ADatum<C> {
    pub fn new(flavor: Flavor, values: Vec<C>) -> Self {
        ADatum { flavor, values }
    }

    pub fn value(&self, k: usize) -> &C {
        &self.values[k]
    }

    fn check_common(&self, n: usize, neg: impl Fn(usize) -> usize, zeta: &[usize], action: &C::Action) -> Result<()> {
        if self.values.len() != n {
            return Err(fail(format!("expected {n} values, found {}", self.values.len())));
        }
        for k in 0..n {
            if self.values[neg(k)] != self.values[k].negate() {
                return Err(fail(format!("a_(-α) ≠ -a_α at index {k}")));
            }
            if self.values[zeta[k]] != self.values[k].act(action) {
                return Err(fail(format!("a_(σα) ≠ σ(a_α) at index {k}")));
            }
        }
        Ok(())
    }

    /// Conditions for a-data on `R(G, 𝐓)`; twisted data must be given `θ`.
    pub fn check(
        &self,
        datum: &RootDatum,
        descent: &DescentDatum,
        action: &C::Action,
        theta: Option<&PinnedAutomorphism>,
    ) -> Result<()> {
        if self.flavor.on_restricted() {
            return Err(fail(format!("{:?} a-data lives on restricted roots", self.flavor)));
        }
        let zeta = descent.sigma_t(datum, 1);
        self.check_common(datum.num_roots(), |k| datum.negate(k), &zeta.perm, action)?;
        if self.flavor == Flavor::Twisted {
            let theta = theta.ok_or_else(|| fail("twisted a-data needs θ".into()))?;
            for k in 0..datum.num_roots() {
                if self.values[theta.apply_root(k)] != self.values[k] {
                    return Err(fail(format!("a_(θα) ≠ a_α at root {}", k + 1)));
                }
            }
        }
        Ok(())
    }

    pub fn check_restricted(&self, rrs: &RestrictedRootSystem, descent: &DescentDatum, action: &C::Action) -> Result<()> {
        if !self.flavor.on_restricted() {
            return Err(fail(format!("{:?} a-data lives on roots of G", self.flavor)));
        }
        if !descent.commutes_with(rrs.datum(), rrs.theta()) {
            return Err(Error::InvalidDescent("σ_T does not commute with θ".into()));
        }
        let zeta = restricted_action(rrs, &descent.sigma_t(rrs.datum(), 1));
        self.check_common(rrs.num_roots(), |k| rrs.negate(k), &zeta, action)?;
        for b in (0..rrs.num_roots()).filter(|&b| rrs.kind(b) == RootType::R3) {
            let half: Vec<i64> = rrs.root(b).coeffs.iter().map(|c| c / 2).collect();
            let h = rrs.find(&half).unwrap();
            let want = match self.flavor {
                Flavor::Special => self.values[h].clone(),
                _ => self.values[h].prod(&C::half()),
            };
            if self.values[b] != want {
                return Err(fail(format!("{:?} condition fails at {}", self.flavor, rrs.label(b))));
            }
        }
        Ok(())
    }

    /// `ã`: halves the value on type-R3 roots.
    pub fn tilde(&self, rrs: &RestrictedRootSystem) -> Result<Self> {
        if self.flavor != Flavor::Special {
            return Err(fail("ã is built from special a-data".into()));
        }
        let values = self
            .values
            .iter()
            .enumerate()
            .map(|(b, v)| if rrs.kind(b) == RootType::R3 { v.prod(&C::half()) } else { v.clone() })
            .collect();
        Ok(ADatum { flavor: Flavor::Tilde, values })
    }

    /// Twisted a-data on `R(G, 𝐓)` given by `a_α = a_{α_res}`.
    pub fn lift(&self, rrs: &RestrictedRootSystem) -> Result<Self> {
        if !self.flavor.on_restricted() {
            return Err(fail("only restricted a-data can be lifted".into()));
        }
        let values = (0..rrs.datum().num_roots()).map(|a| self.values[rrs.restrict_root(a)].clone()).collect();
        Ok(ADatum { flavor: Flavor::Twisted, values })
    }

    /// `a′_α = a_{μα}`: the data seen from the Borel subgroup moved by `μ`.
    pub fn transport(&self, datum: &RootDatum, mu: &RootAutomorphism) -> Self {
        let values = (0..datum.num_roots()).map(|k| self.values[mu.apply(k)].clone()).collect();
        ADatum { flavor: self.flavor, values }
    }
}

impl<C: fmt::Display> fmt::Display for ADatum<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let v: Vec<String> = self.values.iter().map(|x| x.to_string()).collect();
        write!(f, "{:?}[{}]", self.flavor, v.join(", "))
    }
}

/// One orbit of `Γ × ⟨θ⟩ × {±1}` on roots, with `a_{ε θ^j σ^k α₀} = ε·x_k` for `k < period`
/// and `σ(x_{period-1}) = χ·x_0`.
#[derive(Clone, Debug, Serialize)]
pub struct SymbolOrbit {
    pub name: String,
    pub representative: usize,
    pub period: usize,
    pub chi: i64,
    /// `(index, ε, k)`.
    pub members: Vec<(usize, i64, usize)>,
}

impl SymbolOrbit {
    pub fn symbol(&self, k: usize) -> String {
        if self.period == 1 {
            self.name.clone()
        } else {
            format!("{}_{k}", self.name)
        }
    }
}

/// The orbit decomposition that parametrises all a-data of a given kind.
#[derive(Clone, Debug, Serialize)]
pub struct OrbitTable {
    pub restricted: bool,
    pub orbits: Vec<SymbolOrbit>,
    size: usize,
}

fn orbits_of(
    n: usize,
    zeta: &[usize],
    theta: Option<&[usize]>,
    neg: impl Fn(usize) -> usize,
    skip: impl Fn(usize) -> bool,
) -> Result<Vec<SymbolOrbit>> {
    let mut assigned = vec![false; n];
    let mut orbits = Vec::new();
    let theta_apply = |k: usize, j: usize| (0..j).fold(k, |x, _| theta.map_or(x, |t| t[x]));
    let theta_order = theta.map_or(1, |t| {
        let mut o = 1;
        let mut x: Vec<usize> = t.to_vec();
        while x.iter().enumerate().any(|(i, &v)| i != v) {
            x = x.iter().map(|&k| t[k]).collect();
            o += 1;
        }
        o
    });
    for start in 0..n {
        if assigned[start] || skip(start) {
            continue;
        }
        // the θ × ±1 class of α₀
        let base: Vec<(usize, i64)> = (0..theta_order)
            .flat_map(|j| {
                let x = theta_apply(start, j);
                [(x, 1), (neg(x), -1)]
            })
            .collect();
        let mut members: Vec<(usize, i64, usize)> = Vec::new();
        let mut cur = start;
        let mut k = 0;
        let (period, chi) = loop {
            for &(x, e) in &base {
                let y = (0..k).fold(x, |acc, _| zeta[acc]);
                if !members.iter().any(|m| m.0 == y) {
                    members.push((y, e, k));
                }
            }
            cur = zeta[cur];
            k += 1;
            if let Some(&(_, e)) = base.iter().find(|(x, _)| *x == cur) {
                break (k, e);
            }
            if k > n {
                return Err(Error::InvalidDescent("σ_T has no finite period on a root".into()));
            }
        };
        for m in &members {
            if assigned[m.0] {
                return Err(Error::InvalidDescent("orbits overlap".into()));
            }
            assigned[m.0] = true;
        }
        members.sort_unstable();
        orbits.push(SymbolOrbit { name: format!("x{}", orbits.len() + 1), representative: start, period, chi, members });
    }
    Ok(orbits)
}

impl OrbitTable {
    /// Orbits on `R(G, 𝐓)`; with `θ` the twisted condition is built in.
    pub fn on_roots(datum: &RootDatum, descent: &DescentDatum, theta: Option<&PinnedAutomorphism>) -> Result<Self> {
        if let Some(t) = theta {
            if !descent.commutes_with(datum, t) {
                return Err(Error::InvalidDescent("σ_T does not commute with θ".into()));
            }
        }
        let zeta = descent.sigma_t(datum, 1);
        let n = datum.num_roots();
        let orbits = orbits_of(n, &zeta.perm, theta.map(|t| &t.root_automorphism().perm[..]), |k| datum.negate(k), |_| false)?;
        Ok(OrbitTable { restricted: false, orbits, size: n })
    }

    /// Orbits on indivisible restricted roots; type-R3 roots copy the value at their half (special data).
    pub fn on_restricted(rrs: &RestrictedRootSystem, descent: &DescentDatum) -> Result<Self> {
        if !descent.commutes_with(rrs.datum(), rrs.theta()) {
            return Err(Error::InvalidDescent("σ_T does not commute with θ".into()));
        }
        let zeta = restricted_action(rrs, &descent.sigma_t(rrs.datum(), 1));
        let n = rrs.num_roots();
        let mut orbits = orbits_of(n, &zeta, None, |k| rrs.negate(k), |k| rrs.kind(k) == RootType::R3)?;
        for o in &mut orbits {
            let extra: Vec<(usize, i64, usize)> = o
                .members
                .iter()
                .filter_map(|&(b, e, k)| {
                    let dbl: Vec<i64> = rrs.root(b).coeffs.iter().map(|c| 2 * c).collect();
                    rrs.find(&dbl).map(|d| (d, e, k))
                })
                .collect();
            o.members.extend(extra);
            o.members.sort_unstable();
        }
        Ok(OrbitTable { restricted: true, orbits, size: n })
    }

    pub fn flavor(&self, twisted: bool) -> Flavor {
        match (self.restricted, twisted) {
            (true, _) => Flavor::Special,
            (false, true) => Flavor::Twisted,
            (false, false) => Flavor::Plain,
        }
    }

    /// a-data with values `values(orbit, k)` at the symbols `x_{O,k}`.
    pub fn evaluate<C: Coefficient>(&self, twisted: bool, mut values: impl FnMut(&SymbolOrbit, usize) -> C) -> ADatum<C> {
        let mut out: Vec<Option<C>> = vec![None; self.size];
        for o in &self.orbits {
            let xs: Vec<C> = (0..o.period).map(|k| values(o, k)).collect();
            for &(idx, e, k) in &o.members {
                out[idx] = Some(if e < 0 { xs[k].negate() } else { xs[k].clone() });
            }
        }
        ADatum { flavor: self.flavor(twisted), values: out.into_iter().map(|v| v.expect("every root lies in an orbit")).collect() }
    }

    /// Indeterminate a-data and the Galois action on its symbols.
    pub fn symbolic(&self, twisted: bool) -> (ADatum<Monomial>, SymbolAction) {
        let mut action = SymbolAction::default();
        for o in &self.orbits {
            for k in 0..o.period {
                if k + 1 < o.period {
                    action.set(&o.symbol(k), false, &o.symbol(k + 1));
                } else {
                    action.set(&o.symbol(k), o.chi < 0, &o.symbol(0));
                }
            }
        }
        (self.evaluate(twisted, |o, k| Monomial::var(&o.symbol(k))), action)
    }

    /// Random explicit a-data. Orbits with nontrivial stabiliser get eigenvectors of the
    /// Galois action; with `base_only`, free orbits take values in the base field.
    pub fn explicit<F: ExplicitField, R: Rng + ?Sized>(
        &self,
        twisted: bool,
        action: &F::Action,
        base_only: bool,
        rng: &mut R,
    ) -> Result<ADatum<F>> {
        let mut firsts: BTreeMap<String, F> = BTreeMap::new();
        for o in &self.orbits {
            let x = if base_only && o.chi == 1 {
                F::sample_base(rng)
            } else {
                F::sample_eigen(rng, action, o.period, o.chi).ok_or_else(|| {
                    fail(format!("orbit {} (period {}, χ = {}) has no value in this field", o.name, o.period, o.chi))
                })?
            };
            firsts.insert(o.name.clone(), x);
        }
        Ok(self.evaluate(twisted, |o, k| firsts[&o.name].act_pow(action, k)))
    }
}

#[cfg(test)]
mod tests {
    use num_rational::BigRational;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    use super::*;
    use crate::coeffs::{Galois, Quad};
    use crate::rootdata::Family;

    fn a2() -> (RootDatum, PinnedAutomorphism) {
        let d = RootDatum::build(&[(Family::A, 2)]).unwrap();
        let t = PinnedAutomorphism::flip(&d).unwrap();
        (d, t)
    }

    #[test]
    fn longest_element_negates_symbols() {
        let (d, t) = a2();
        let dd = DescentDatum::new(&d, 2, d.longest_element(), PinnedAutomorphism::identity(&d)).unwrap();
        let table = OrbitTable::on_roots(&d, &dd, Some(&t)).unwrap();
        assert_eq!(table.orbits.len(), 2);
        let (a, act) = table.symbolic(true);
        a.check(&d, &dd, &act, Some(&t)).unwrap();
        // σ(a) = -a on every symbol
        for v in &a.values {
            assert_eq!(v.act(&act), v.negate());
        }
        assert_eq!(a.values[0], a.values[1]);
    }

    #[test]
    fn explicit_values_satisfy_conditions() {
        let (d, t) = a2();
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for (w, s) in [(d.longest_element(), PinnedAutomorphism::identity(&d)), (d.longest_element(), t.clone())] {
            let dd = DescentDatum::new(&d, 2, w, s).unwrap();
            let table = OrbitTable::on_roots(&d, &dd, Some(&t)).unwrap();
            let a: ADatum<Quad<5>> = table.explicit(true, &true, false, &mut rng).unwrap();
            a.check(&d, &dd, &true, Some(&t)).unwrap();
            let plain = OrbitTable::on_roots(&d, &dd, None).unwrap();
            let b: ADatum<Quad<5>> = plain.explicit(false, &true, false, &mut rng).unwrap();
            b.check(&d, &dd, &true, None).unwrap();
        }
        // over ℚ with trivial action, σ_T = ω₀ is not realizable
        let dd = DescentDatum::new(&d, 2, d.longest_element(), PinnedAutomorphism::identity(&d)).unwrap();
        let table = OrbitTable::on_roots(&d, &dd, None).unwrap();
        assert!(table.explicit::<BigRational, _>(false, &(), false, &mut rng).is_err());
    }

    #[test]
    fn special_and_tilde_on_bc2() {
        let d = RootDatum::build(&[(Family::A, 4)]).unwrap();
        let t = PinnedAutomorphism::flip(&d).unwrap();
        let rrs = RestrictedRootSystem::restrict(&d, &t).unwrap();
        let dd = DescentDatum::new(&d, 2, d.longest_element(), PinnedAutomorphism::identity(&d)).unwrap();
        let table = OrbitTable::on_restricted(&rrs, &dd).unwrap();
        let (a, act) = table.symbolic(false);
        a.check_restricted(&rrs, &dd, &act).unwrap();
        let at = a.tilde(&rrs).unwrap();
        at.check_restricted(&rrs, &dd, &act).unwrap();
        assert!(a.check_restricted(&rrs, &dd, &act).is_ok());
        let lifted = at.lift(&rrs).unwrap();
        lifted.check(&d, &dd, &act, Some(&t)).unwrap();
        assert!(ADatum::new(Flavor::Special, at.values.clone()).check_restricted(&rrs, &dd, &act).is_err());
    }

    #[test]
    fn equivariance_violation_is_reported() {
        let (d, t) = a2();
        let dd = DescentDatum::new(&d, 2, d.longest_element(), PinnedAutomorphism::identity(&d)).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let table = OrbitTable::on_roots(&d, &dd, Some(&t)).unwrap();
        let mut a: ADatum<Quad<5>> = table.explicit(true, &true, false, &mut rng).unwrap();
        a.values[0] = Quad::rational(BigRational::from_integer(1.into()));
        let err = a.check(&d, &dd, &true, Some(&t)).unwrap_err();
        assert!(matches!(err, Error::InvalidAData(_)));
    }
}
