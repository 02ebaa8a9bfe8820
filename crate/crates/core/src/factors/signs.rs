use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::{BigRational, Ratio};
use num_traits::{One, Zero};
use rand::Rng;
use serde::{Serialize, Serializer};

use crate::coeffs::{quad_norm_sign, small_rational, LocalPlace, Place};
use crate::error::{Error, Result};
use crate::rootdata::{RestrictedRootSystem, RootType};
use crate::splitting::{restricted_action, DescentDatum};

/// The root of unity `exp(2πi·q)`, `q ∈ [0, 1)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Phase(Ratio<i64>);

impl Phase {
    pub fn new(k: i64, m: i64) -> Self {
        let q = Ratio::new(k.rem_euclid(m), m);
        Phase(q)
    }

    pub fn one() -> Self {
        Phase::new(0, 1)
    }

    pub fn minus_one() -> Self {
        Phase::new(1, 2)
    }

    pub fn inv(self) -> Self {
        Phase::new(-self.0.numer(), *self.0.denom())
    }

    pub fn sign(self) -> Option<i8> {
        if self == Phase::one() {
            Some(1)
        } else if self == Phase::minus_one() {
            Some(-1)
        } else {
            None
        }
    }
}

impl fmt::Display for Phase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.sign() {
            Some(s) => write!(f, "{s}"),
            None => write!(f, "e(2πi·{})", self.0),
        }
    }
}

impl Serialize for Phase {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// Γ-orbits on restricted roots, each sorted, ordered by least element.
pub fn gamma_orbits(rrs: &RestrictedRootSystem, descent: &DescentDatum) -> Vec<Vec<usize>> {
    let z = restricted_action(rrs, &descent.sigma_t(rrs.datum(), 1));
    let mut seen = vec![false; z.len()];
    let mut out = Vec::new();
    for b in 0..z.len() {
        if seen[b] {
            continue;
        }
        let mut orbit = vec![b];
        seen[b] = true;
        let mut c = z[b];
        while c != b {
            seen[c] = true;
            orbit.push(c);
            c = z[c];
        }
        orbit.sort_unstable();
        out.push(orbit);
    }
    out
}

/// Values `(N(α∨))(s_{T,θ})` on restricted roots, and the local data of `F_β/F_{±β}`
/// on symmetric Γ-orbits.
#[derive(Clone, Debug)]
pub struct EndoscopicSignDatum {
    values: Vec<Option<Phase>>,
    places: Vec<Option<LocalPlace>>,
    orbits: Vec<Vec<usize>>,
    orbit_of: Vec<usize>,
    symmetric: Vec<bool>,
}

impl EndoscopicSignDatum {
    /// `places` is keyed by any member of the symmetric orbit it describes.
    pub fn new(
        rrs: &RestrictedRootSystem,
        descent: &DescentDatum,
        values: Vec<Option<Phase>>,
        places: &BTreeMap<usize, LocalPlace>,
    ) -> Result<Self> {
        let n = rrs.num_roots();
        if values.len() != n {
            return Err(Error::MissingSign(format!("expected {n} values, found {}", values.len())));
        }
        let orbits = gamma_orbits(rrs, descent);
        let mut orbit_of = vec![0; n];
        for (i, o) in orbits.iter().enumerate() {
            for &b in o {
                orbit_of[b] = i;
            }
        }
        let symmetric: Vec<bool> = orbits.iter().map(|o| o.contains(&rrs.negate(o[0]))).collect();
        for o in &orbits {
            if o.iter().any(|&b| values[b] != values[o[0]]) {
                return Err(Error::InvalidAData(format!("sign values are not Γ-invariant on the orbit of {}", rrs.label(o[0]))));
            }
        }
        for b in 0..n {
            if let (Some(v), Some(w)) = (values[b], values[rrs.negate(b)]) {
                if v.inv() != w {
                    return Err(Error::InvalidAData(format!("value at -{} is not inverse to the value at it", rrs.label(b))));
                }
            }
            if symmetric[orbit_of[b]] {
                if let Some(v) = values[b] {
                    if v.sign().is_none() {
                        return Err(Error::InvalidAData(format!("value {v} on the symmetric orbit of {} is not ±1", rrs.label(b))));
                    }
                }
            }
        }
        let mut by_orbit: Vec<Option<LocalPlace>> = vec![None; orbits.len()];
        for (&b, p) in places {
            if b >= n {
                return Err(Error::IndexOutOfRange { index: b, rank: n });
            }
            if !symmetric[orbit_of[b]] {
                return Err(Error::InvalidAData(format!("{} lies in an asymmetric orbit", rrs.label(b))));
            }
            by_orbit[orbit_of[b]] = Some(p.clone());
        }
        Ok(EndoscopicSignDatum { values, places: by_orbit, orbits, orbit_of, symmetric })
    }

    /// Random data: `±1` on symmetric orbits, roots of unity of order ≤ 4 elsewhere, and
    /// random quadratic extensions at places from `{∞, 3, 5, 7}`.
    pub fn random<R: Rng + ?Sized>(rrs: &RestrictedRootSystem, descent: &DescentDatum, rng: &mut R) -> Result<Self> {
        let n = rrs.num_roots();
        let orbits = gamma_orbits(rrs, descent);
        let mut values = vec![None; n];
        let mut places = BTreeMap::new();
        for o in &orbits {
            if values[o[0]].is_some() {
                continue;
            }
            let symmetric = o.contains(&rrs.negate(o[0]));
            let v = if symmetric || rng.gen_bool(0.5) {
                if rng.gen_bool(0.5) {
                    Phase::one()
                } else {
                    Phase::minus_one()
                }
            } else {
                let m = rng.gen_range(3..=4);
                Phase::new(rng.gen_range(0..m), m)
            };
            for &b in o {
                values[b] = Some(v);
                values[rrs.negate(b)] = Some(v.inv());
            }
            if symmetric {
                places.insert(o[0], random_place(rng));
            }
        }
        Self::new(rrs, descent, values, &places)
    }

    pub fn orbits(&self) -> &[Vec<usize>] {
        &self.orbits
    }

    pub fn is_symmetric(&self, beta: usize) -> bool {
        self.symmetric[self.orbit_of[beta]]
    }

    pub fn value(&self, rrs: &RestrictedRootSystem, beta: usize) -> Result<Phase> {
        self.values[beta].ok_or_else(|| Error::MissingSign(format!("no value at {}", rrs.label(beta))))
    }

    pub fn place(&self, rrs: &RestrictedRootSystem, beta: usize) -> Result<&LocalPlace> {
        self.places[self.orbit_of[beta]]
            .as_ref()
            .ok_or_else(|| Error::MissingSign(format!("no local data for the orbit of {}", rrs.label(beta))))
    }

    /// Least member of each symmetric orbit.
    pub fn symmetric_representatives(&self) -> impl Iterator<Item = usize> + '_ {
        self.orbits.iter().zip(&self.symmetric).filter(|(_, &s)| s).map(|(o, _)| o[0])
    }
}

fn random_place<R: Rng + ?Sized>(rng: &mut R) -> LocalPlace {
    loop {
        let place = [Place::Real, Place::Padic(3), Place::Padic(5), Place::Padic(7)][rng.gen_range(0..4)];
        let d = BigRational::from_integer(BigInt::from([-1i64, 2, 3, 5, 6, 7, -3, 10, 14, 15][rng.gen_range(0..10)]));
        if let Ok(p) = LocalPlace::new(place, &d) {
            return p;
        }
    }
}

pub fn comes_from_h(rrs: &RestrictedRootSystem, sd: &EndoscopicSignDatum, beta: usize) -> Result<bool> {
    let v = sd.value(rrs, beta)?;
    Ok(match rrs.kind(beta) {
        RootType::R3 => v == Phase::minus_one(),
        _ => v == Phase::one(),
    })
}

fn counted(rrs: &RestrictedRootSystem, sd: &EndoscopicSignDatum, beta: usize) -> Result<bool> {
    let r3 = rrs.kind(beta) == RootType::R3;
    Ok(r3 == comes_from_h(rrs, sd, beta)?)
}

/// The sign by which `Δ_I^new` changes when `a_β` becomes `a_β·b_β`.
pub fn adata_change_sign(rrs: &RestrictedRootSystem, sd: &EndoscopicSignDatum, b: &[BigRational]) -> Result<i8> {
    if b.len() != rrs.num_roots() {
        return Err(Error::InvalidAData(format!("expected {} values of b, found {}", rrs.num_roots(), b.len())));
    }
    for (k, x) in b.iter().enumerate() {
        if x.is_zero() {
            return Err(Error::ZeroInput("b_β"));
        }
        if *x != b[rrs.negate(k)] {
            return Err(Error::InvalidAData(format!("b at -{} differs from b at it", rrs.label(k))));
        }
    }
    for o in sd.orbits() {
        if o.iter().any(|&k| b[k] != b[o[0]]) {
            return Err(Error::InvalidAData(format!("b is not Γ-equivariant on the orbit of {}", rrs.label(o[0]))));
        }
    }
    let mut sign = 1;
    for beta in sd.symmetric_representatives() {
        if counted(rrs, sd, beta)? {
            sign *= quad_norm_sign(&b[beta], sd.place(rrs, beta)?)?;
        }
    }
    Ok(sign)
}

/// `Δ_I^new / Δ_I`: product of `sgn(2)` over symmetric R3 orbits coming from `H`.
pub fn delta_i_ratio(rrs: &RestrictedRootSystem, sd: &EndoscopicSignDatum) -> Result<i8> {
    let two = BigRational::from_integer(BigInt::from(2));
    let mut sign = 1;
    for beta in sd.symmetric_representatives() {
        if rrs.kind(beta) == RootType::R3 && comes_from_h(rrs, sd, beta)? {
            sign *= quad_norm_sign(&two, sd.place(rrs, beta)?)?;
        }
    }
    Ok(sign)
}

/// `b = ½` on type-R3 roots and `1` elsewhere: the change from special to tilde a-data.
pub fn half_on_r3(rrs: &RestrictedRootSystem) -> Vec<BigRational> {
    (0..rrs.num_roots())
        .map(|k| if rrs.kind(k) == RootType::R3 { Ratio::new(BigInt::one(), BigInt::from(2)) } else { BigRational::one() })
        .collect()
}

/// A random Γ-equivariant `b` with `b_{-β} = b_β`.
pub fn random_b<R: Rng + ?Sized>(rrs: &RestrictedRootSystem, sd: &EndoscopicSignDatum, rng: &mut R) -> Vec<BigRational> {
    let mut b = vec![BigRational::one(); rrs.num_roots()];
    let mut done = vec![false; rrs.num_roots()];
    for o in sd.orbits() {
        if done[o[0]] {
            continue;
        }
        let x = small_rational(rng);
        for &k in o {
            b[k] = x.clone();
            b[rrs.negate(k)] = x.clone();
            done[k] = true;
            done[rrs.negate(k)] = true;
        }
    }
    b
}

#[cfg(test)]
mod tests {
    use proptest::prelude::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    use super::*;
    use crate::coeffs::rat;
    use crate::rootdata::{Family, PinnedAutomorphism, RootDatum};

    fn system(n: usize) -> (RestrictedRootSystem, DescentDatum) {
        let d = RootDatum::build(&[(Family::A, n)]).unwrap();
        let t = PinnedAutomorphism::flip(&d).unwrap();
        let rrs = RestrictedRootSystem::restrict(&d, &t).unwrap();
        let dd = DescentDatum::new(&d, 2, d.longest_element(), PinnedAutomorphism::identity(&d)).unwrap();
        (rrs, dd)
    }

    fn constant(rrs: &RestrictedRootSystem, dd: &DescentDatum, v: Phase, place: LocalPlace) -> EndoscopicSignDatum {
        let orbits = gamma_orbits(rrs, dd);
        let places = orbits.iter().filter(|o| o.contains(&rrs.negate(o[0]))).map(|o| (o[0], place.clone())).collect();
        EndoscopicSignDatum::new(rrs, dd, vec![Some(v); rrs.num_roots()], &places).unwrap()
    }

    #[test]
    fn from_h_by_type() {
        let (rrs, dd) = system(2);
        let p5 = LocalPlace::new(Place::Padic(5), &rat(5, 1)).unwrap();
        let neg = constant(&rrs, &dd, Phase::minus_one(), p5.clone());
        let pos = constant(&rrs, &dd, Phase::one(), p5);
        for b in 0..rrs.num_roots() {
            match rrs.kind(b) {
                RootType::R3 => assert!(comes_from_h(&rrs, &neg, b).unwrap()),
                RootType::R1 => assert!(comes_from_h(&rrs, &pos, b).unwrap()),
                RootType::R2 => assert!(!comes_from_h(&rrs, &neg, b).unwrap()),
            }
        }
        let missing = EndoscopicSignDatum::new(&rrs, &dd, vec![None; rrs.num_roots()], &BTreeMap::new()).unwrap();
        assert!(matches!(comes_from_h(&rrs, &missing, 0), Err(Error::MissingSign(_))));
    }

    #[test]
    fn delta_i_ratio_examples() {
        let (rrs, dd) = system(3);
        let sd = constant(&rrs, &dd, Phase::minus_one(), LocalPlace::new(Place::Padic(5), &rat(5, 1)).unwrap());
        assert_eq!(delta_i_ratio(&rrs, &sd).unwrap(), 1);
        let (rrs, dd) = system(2);
        let real = constant(&rrs, &dd, Phase::minus_one(), LocalPlace::real());
        assert_eq!(delta_i_ratio(&rrs, &real).unwrap(), 1);
        let p5 = constant(&rrs, &dd, Phase::minus_one(), LocalPlace::new(Place::Padic(5), &rat(5, 1)).unwrap());
        assert_eq!(delta_i_ratio(&rrs, &p5).unwrap(), -1);
        assert_eq!(adata_change_sign(&rrs, &p5, &half_on_r3(&rrs)).unwrap(), -1);
        assert_eq!(adata_change_sign(&rrs, &p5, &vec![BigRational::one(); rrs.num_roots()]).unwrap(), 1);
        let squares: Vec<BigRational> = (0..rrs.num_roots()).map(|_| rat(9, 4)).collect();
        assert_eq!(adata_change_sign(&rrs, &p5, &squares).unwrap(), 1);
        let mut zero = squares.clone();
        zero[0] = rat(0, 1);
        assert!(adata_change_sign(&rrs, &p5, &zero).is_err());
    }

    #[test]
    fn asymmetric_values_must_be_invariant() {
        let (rrs, dd) = system(2);
        let mut values = vec![Some(Phase::one()); rrs.num_roots()];
        values[0] = Some(Phase::new(1, 3));
        assert!(EndoscopicSignDatum::new(&rrs, &dd, values, &BTreeMap::new()).is_err());
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]
        #[test]
        fn sign_formulas_agree(seed in any::<u64>(), n in 2usize..=5) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let (rrs, dd) = system(n);
            let sd = EndoscopicSignDatum::random(&rrs, &dd, &mut rng).unwrap();
            let b1 = random_b(&rrs, &sd, &mut rng);
            let b2 = random_b(&rrs, &sd, &mut rng);
            let prod: Vec<BigRational> = b1.iter().zip(&b2).map(|(x, y)| x * y).collect();
            let s = |b: &[BigRational]| adata_change_sign(&rrs, &sd, b).unwrap();
            prop_assert_eq!(s(&b1) * s(&b2), s(&prod));
            prop_assert_eq!(delta_i_ratio(&rrs, &sd).unwrap(), s(&half_on_r3(&rrs)));
            for o in sd.orbits() {
                let c = comes_from_h(&rrs, &sd, o[0]).unwrap();
                prop_assert!(o.iter().all(|&b| comes_from_h(&rrs, &sd, b).unwrap() == c));
            }
            // the counted set is the set where N(α∨)(s) = -1
            for beta in sd.symmetric_representatives() {
                prop_assert_eq!(counted(&rrs, &sd, beta).unwrap(), sd.value(&rrs, beta).unwrap() == Phase::minus_one());
            }
        }
    }
}
