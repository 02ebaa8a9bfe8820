//! The cocycles `m(σ)` and the comparisons between `G`, `G^θ` and changes of Borel subgroup,
//! all inside the Tits model of `N(𝐓)`.

use serde::Serialize;

use super::adata::{restricted_action, ADatum, Flavor};
use super::descent::DescentDatum;
use crate::coeffs::Coefficient;
use crate::error::{Error, Result};
use crate::rootdata::{CheckResult, LeviKind, PinnedAutomorphism, RestrictedRootSystem, RootAutomorphism, RootDatum, RootType, WeylElement};
use crate::tits::{x_of, TitsElement, TitsGroup, TorusElement};

/// Coordinates of a θ-fixed torus element in the basis `Σ_{i∈O} α_i∨` of `X_*(𝐓^θ)`.
pub fn fixed_coords<C: Coefficient>(theta: &PinnedAutomorphism, t: &TorusElement<C>) -> Option<Vec<C>> {
    if t.diagram(theta) != *t {
        return None;
    }
    Some(theta.simple_orbits().iter().map(|o| t.coords()[o[0]].clone()).collect())
}

/// The inclusion `𝐓^θ ↪ 𝐓` in coordinates.
pub fn include_fixed<C: Coefficient>(theta: &PinnedAutomorphism, coords: &[C]) -> TorusElement<C> {
    let mut out = vec![C::one(); theta.perm().len()];
    for (o, orbit) in theta.simple_orbits().iter().enumerate() {
        for &i in orbit {
            out[i] = coords[o].clone();
        }
    }
    TorusElement::from_coords(out)
}

/// `m(g^k) = x(σ_T(g^k))·n(ω_T(g^k))` for `k = 0, …, N-1`.
pub fn m_values<C: Coefficient>(datum: &RootDatum, descent: &DescentDatum, adata: &ADatum<C>) -> Result<Vec<TitsElement<C>>> {
    let g = TitsGroup::new(datum);
    (0..descent.order())
        .map(|k| {
            let x = x_of(datum, &descent.sigma_t(datum, k), &adata.values)?;
            Ok(g.mul(&g.torus(x), &g.lift(&descent.omega_t(datum, k))))
        })
        .collect()
}

/// `m(g^{j+k}) = m(g^j)·g^j(m(g^k))` for all `j, k`.
pub fn check_cocycle_relation<C: Coefficient>(
    datum: &RootDatum,
    descent: &DescentDatum,
    action: &C::Action,
    m: &[TitsElement<C>],
) -> CheckResult {
    let g = TitsGroup::new(datum);
    let n = descent.order();
    let mut bad = Vec::new();
    for j in 0..n {
        for k in 0..n {
            let rhs = g.mul(&m[j], &descent.act_tits(&g, action, j, &m[k]));
            if rhs != m[(j + k) % n] {
                bad.push(format!("fails at (g^{j}, g^{k})"));
            }
        }
    }
    CheckResult::new("cocycle_relation", bad)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Ambient {
    Torus,
    FixedTorus,
}

/// `σ ↦ t(σ)`. Without a matrix realization only the `m`-cocycle is known and
/// comparisons of classes are made at that level.
#[derive(Clone, Debug)]
pub struct SplittingCocycle<C> {
    pub ambient: Ambient,
    pub m: Vec<TitsElement<C>>,
    /// Coordinates of `h⁻¹·t(σ)·h ∈ 𝐓`, when a realization was supplied.
    pub t: Option<Vec<TorusElement<C>>>,
    /// For the fixed torus: coordinates in `X_*(𝐓^θ)`.
    pub fixed: Option<Vec<Vec<C>>>,
    pub checks: Vec<CheckResult>,
}

impl<C> SplittingCocycle<C> {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn is_m_level(&self) -> bool {
        self.t.is_none()
    }
}

pub fn lambda_untwisted<C: Coefficient>(
    datum: &RootDatum,
    descent: &DescentDatum,
    action: &C::Action,
    adata: &ADatum<C>,
) -> Result<SplittingCocycle<C>> {
    let plain = ADatum::new(Flavor::Plain, adata.values.clone());
    plain.check(datum, descent, action, None)?;
    let m = m_values(datum, descent, &plain)?;
    let checks = vec![check_cocycle_relation(datum, descent, action, &m)];
    Ok(SplittingCocycle { ambient: Ambient::Torus, m, t: None, fixed: None, checks })
}

pub fn lambda_twisted<C: Coefficient>(
    datum: &RootDatum,
    theta: &PinnedAutomorphism,
    descent: &DescentDatum,
    action: &C::Action,
    adata: &ADatum<C>,
) -> Result<SplittingCocycle<C>> {
    if !descent.commutes_with(datum, theta) {
        return Err(Error::InvalidDescent("σ_T does not commute with θ".into()));
    }
    if adata.flavor != Flavor::Twisted {
        return Err(Error::InvalidAData(format!("expected twisted a-data, found {:?}", adata.flavor)));
    }
    adata.check(datum, descent, action, Some(theta))?;
    let m = m_values(datum, descent, adata)?;
    let g = TitsGroup::new(datum);
    let mut checks = vec![check_cocycle_relation(datum, descent, action, &m)];
    let unfixed: Vec<String> =
        m.iter().enumerate().filter(|(_, x)| !g.is_theta_fixed(theta, x)).map(|(k, _)| format!("m(g^{k}) not θ-fixed")).collect();
    checks.push(CheckResult::new("theta_fixed", unfixed));
    Ok(SplittingCocycle { ambient: Ambient::FixedTorus, m, t: None, fixed: None, checks })
}

/// Result of moving the Borel subgroup by `μ`.
#[derive(Clone, Debug)]
pub struct BorelWitness<C> {
    /// `x(μ)`; the coboundary is that of `h·x(μ)·h⁻¹`.
    pub witness: TorusElement<C>,
    pub m_prime: Vec<TitsElement<C>>,
    pub checks: Vec<CheckResult>,
}

/// Checks `n(μ)·m′(σ)·σ(n(μ))⁻¹ = x(μ)⁻¹·m(σ)·σ(x(μ))`, where `m′` is built from
/// `a′_α = a_{μα}` and `σ_T′ = μ⁻¹σ_Tμ`.
pub fn verify_borel_independence<C: Coefficient>(
    datum: &RootDatum,
    theta: Option<&PinnedAutomorphism>,
    descent: &DescentDatum,
    action: &C::Action,
    adata: &ADatum<C>,
    mu: &WeylElement,
) -> Result<BorelWitness<C>> {
    if let Some(t) = theta {
        if !t.fixes_weyl(datum, mu) {
            return Err(Error::NotThetaFixed);
        }
    }
    adata.check(datum, descent, action, theta)?;
    let g = TitsGroup::new(datum);
    let mu_aut = RootAutomorphism::from(mu);
    let y = x_of(datum, &mu_aut, &adata.values)?;
    let a2 = adata.transport(datum, &mu_aut);
    let d2 = descent.conjugate(datum, mu);
    let mut checks = vec![CheckResult::new(
        "transported_adata",
        a2.check(datum, &d2, action, theta).err().map(|e| e.to_string()).into_iter().collect(),
    )];
    let m = m_values(datum, descent, adata)?;
    let m2 = m_values(datum, &d2, &a2)?;
    checks.push(check_cocycle_relation(datum, &d2, action, &m2));
    let n_mu = g.lift::<C>(mu);
    let yt = g.torus(y.clone());
    let mut bad = Vec::new();
    for k in 0..descent.order() {
        let lhs = g.mul(&g.mul(&n_mu, &m2[k]), &g.inv(&descent.act_tits(&g, action, k, &n_mu)));
        let rhs = g.mul(&g.mul(&g.inv(&yt), &m[k]), &descent.act_tits(&g, action, k, &yt));
        if lhs != rhs {
            bad.push(format!("g^{k}: n(μ)m′σ(n(μ))⁻¹ ≠ x(μ)⁻¹mσ(x(μ))"));
        }
    }
    checks.push(CheckResult::new("coboundary_identity", bad));
    if let Some(t) = theta {
        let fixed = y.diagram(t) == y;
        checks.push(CheckResult::new("witness_theta_fixed", if fixed { vec![] } else { vec!["x(μ) not θ-fixed".into()] }));
    }
    Ok(BorelWitness { witness: y, m_prime: m2, checks })
}

/// `n′(s_β)` in the Tits model: `n(w_{M_β})`, times `(½)^{(α+θα)∨}` for each A2 factor of `M_β`.
pub fn n_prime_simple<C: Coefficient>(rrs: &RestrictedRootSystem, o: usize) -> Result<TitsElement<C>> {
    let datum = rrs.datum();
    let g = TitsGroup::new(datum);
    let m = rrs.levi_component(rrs.simple(o))?;
    let mut lambda = vec![0; datum.rank()];
    match m.kind {
        LeviKind::A1 => {}
        LeviKind::A2 => {
            for c in &m.components {
                for &i in c {
                    lambda[i] += 1;
                }
            }
        }
        LeviKind::Other => return Err(Error::InvalidRealization("Levi is neither A1 nor A2 type".into())),
    }
    Ok(g.mul(&g.torus(TorusElement::cocharacter(&C::half(), &lambda)), &g.lift(&m.longest)))
}

/// `n′(ω)` for `ω ∈ Ω^θ`, the lift in `G^θ` along a reduced restricted word.
pub fn n_prime<C: Coefficient>(rrs: &RestrictedRootSystem, w: &WeylElement) -> Result<TitsElement<C>> {
    let g = TitsGroup::new(rrs.datum());
    rrs.restricted_word(w)?
        .into_iter()
        .try_fold(g.identity(), |acc, o| Ok(g.mul(&acc, &n_prime_simple(rrs, o)?)))
}

/// `∏_{α ∈ R(ω)} b_α^{α∨}` with `b_α = ½` exactly when `α_res` has type R3.
pub fn nn_prime_expected<C: Coefficient>(rrs: &RestrictedRootSystem, w: &WeylElement) -> TorusElement<C> {
    let d = rrs.datum();
    d.inversion_set(w)
        .into_iter()
        .filter(|&a| rrs.kind(rrs.restrict_root(a)) == RootType::R3)
        .fold(TorusElement::identity(d.rank()), |acc, a| acc.mul(&TorusElement::cocharacter(&C::half(), &d.root(a).coroot)))
}

#[derive(Clone, Debug)]
pub struct NnPrime<C> {
    pub discrepancy: TorusElement<C>,
    pub expected: TorusElement<C>,
    pub check: CheckResult,
}

/// Compares `n′(ω)` with `n(ω)` in the Tits model.
pub fn check_nn_prime<C: Coefficient>(rrs: &RestrictedRootSystem, w: &WeylElement) -> Result<NnPrime<C>> {
    let g = TitsGroup::new(rrs.datum());
    let np = n_prime::<C>(rrs, w)?;
    let q = g.mul(&np, &g.inv(&g.lift(w)));
    if !q.weyl_part.is_identity() {
        return Err(Error::InvalidRealization("n′(ω) lies over a different Weyl element".into()));
    }
    let expected = nn_prime_expected(rrs, w);
    let ok = q.torus_part == expected;
    let check = CheckResult::new("nn_prime", if ok { vec![] } else { vec![format!("{:?} vs {:?}", q.torus_part, expected)] });
    Ok(NnPrime { discrepancy: q.torus_part, expected, check })
}

/// Both `m`-cocycles of the fixed-torus comparison.
#[derive(Clone, Debug)]
pub struct FixedVsTwisted<C> {
    /// From `(G, θ, ã)`.
    pub m: Vec<TitsElement<C>>,
    /// From `(G^θ, a)` with coroots `N(α∨)` or `2N(α∨)`.
    pub m_prime: Vec<TitsElement<C>>,
    pub checks: Vec<CheckResult>,
}

/// `∏_{β ∈ R′(σ)} a_β^{β∨}` over indivisible positive `β` with `σ_T⁻¹β < 0`.
pub fn x_prime<C: Coefficient>(rrs: &RestrictedRootSystem, zeta: &RootAutomorphism, special: &ADatum<C>) -> TorusElement<C> {
    let z = restricted_action(rrs, zeta);
    let mut inv = vec![0; z.len()];
    for (k, &v) in z.iter().enumerate() {
        inv[v] = k;
    }
    (0..rrs.num_positive())
        .filter(|&b| rrs.is_indivisible(b) && !rrs.is_positive(inv[b]))
        .fold(TorusElement::identity(rrs.datum().rank()), |acc, b| {
            acc.mul(&TorusElement::cocharacter(&special.values[b], &rrs.gtheta_coroot(b).unwrap()))
        })
}

pub fn compare_fixed_vs_twisted<C: Coefficient>(
    rrs: &RestrictedRootSystem,
    descent: &DescentDatum,
    action: &C::Action,
    special: &ADatum<C>,
) -> Result<FixedVsTwisted<C>> {
    if special.flavor != Flavor::Special {
        return Err(Error::InvalidAData(format!("expected special a-data, found {:?}", special.flavor)));
    }
    special.check_restricted(rrs, descent, action)?;
    let datum = rrs.datum();
    let g = TitsGroup::new(datum);
    let lifted = special.tilde(rrs)?.lift(rrs)?;
    let twisted = lambda_twisted(datum, rrs.theta(), descent, action, &lifted)?;
    let mut checks = twisted.checks.clone();
    let mut m_prime = Vec::new();
    let mut inv_bad = Vec::new();
    for k in 0..descent.order() {
        let zeta = descent.sigma_t(datum, k);
        let w = descent.omega_t(datum, k);
        if datum.inversion_set_of(&zeta) != datum.inversion_set(&w) {
            inv_bad.push(format!("R(σ_T) ≠ R(ω_T) at g^{k}"));
        }
        let xp = x_prime(rrs, &zeta, special);
        m_prime.push(g.mul(&g.torus(xp), &n_prime::<C>(rrs, &w)?));
    }
    checks.push(CheckResult::new("inversion_sets", inv_bad));
    let diff: Vec<String> = (0..descent.order())
        .filter(|&k| twisted.m[k] != m_prime[k])
        .map(|k| format!("g^{k}: {:?} vs {:?}", twisted.m[k].torus_part, m_prime[k].torus_part))
        .collect();
    checks.push(CheckResult::new("m_equals_m_prime", diff));
    Ok(FixedVsTwisted { m: twisted.m, m_prime, checks })
}
