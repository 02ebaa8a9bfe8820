use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::error::Error;

/// The formal factors. `III_inv` is `Δ_III` computed with the inverse χ-data.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Term {
    INew,
    IOld,
    II,
    III,
    IIIInv,
    IV,
    EpsL,
}

impl Term {
    pub const ALL: [Term; 7] = [Term::INew, Term::IOld, Term::II, Term::III, Term::IIIInv, Term::IV, Term::EpsL];

    pub fn name(self) -> &'static str {
        match self {
            Term::INew => "I_new",
            Term::IOld => "I_old",
            Term::II => "II",
            Term::III => "III",
            Term::IIIInv => "III_inv",
            Term::IV => "IV",
            Term::EpsL => "eps_L",
        }
    }

    /// Exponent of the common factor by which a change of χ-data multiplies this term.
    fn chi_weight(self) -> i64 {
        match self {
            Term::II | Term::III => 1,
            Term::IIIInv => -1,
            _ => 0,
        }
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Variant {
    DeltaKs,
    DeltaD,
    DeltaPrime,
    DeltaDLambda,
    DeltaPrimeLambda,
}

impl Variant {
    pub const ALL: [Variant; 5] =
        [Variant::DeltaKs, Variant::DeltaD, Variant::DeltaPrime, Variant::DeltaDLambda, Variant::DeltaPrimeLambda];

    pub fn name(self) -> &'static str {
        match self {
            Variant::DeltaKs => "delta_ks",
            Variant::DeltaD => "delta_d",
            Variant::DeltaPrime => "delta_prime",
            Variant::DeltaDLambda => "delta_d_lambda",
            Variant::DeltaPrimeLambda => "delta_prime_lambda",
        }
    }
}

impl FromStr for Variant {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self, Error> {
        Variant::ALL.into_iter().find(|v| v.name() == s).ok_or_else(|| Error::UnknownVariant(s.to_string()))
    }
}

/// A formal monomial in the terms; zero exponents are not stored.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct FactorExpression {
    exponents: BTreeMap<Term, i64>,
}

impl FactorExpression {
    pub fn new(pairs: &[(Term, i64)]) -> Self {
        pairs.iter().fold(FactorExpression::default(), |acc, &(t, e)| acc.mul(&FactorExpression::single(t, e)))
    }

    fn single(t: Term, e: i64) -> Self {
        let mut exponents = BTreeMap::new();
        if e != 0 {
            exponents.insert(t, e);
        }
        FactorExpression { exponents }
    }

    pub fn exponent(&self, t: Term) -> i64 {
        self.exponents.get(&t).copied().unwrap_or(0)
    }

    pub fn exponents(&self) -> &BTreeMap<Term, i64> {
        &self.exponents
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut exponents = self.exponents.clone();
        for (&t, &e) in &other.exponents {
            let v = exponents.entry(t).or_insert(0);
            *v += e;
            if *v == 0 {
                exponents.remove(&t);
            }
        }
        FactorExpression { exponents }
    }

    pub fn inv(&self) -> Self {
        FactorExpression { exponents: self.exponents.iter().map(|(&t, &e)| (t, -e)).collect() }
    }

    /// Net exponent of the χ-change factor.
    pub fn chi_variation(&self) -> i64 {
        self.exponents.iter().map(|(t, e)| t.chi_weight() * e).sum()
    }

    /// Rewrites the expression in terms of the inverse χ-data: `Δ_II ↦ Δ_II⁻¹`, `Δ_III ↔ Δ_III_inv`.
    pub fn invert_chi_data(&self) -> Self {
        let pairs: Vec<(Term, i64)> = self
            .exponents
            .iter()
            .map(|(&t, &e)| match t {
                Term::II => (Term::II, -e),
                Term::III => (Term::IIIInv, e),
                Term::IIIInv => (Term::III, e),
                _ => (t, e),
            })
            .collect();
        FactorExpression::new(&pairs)
    }
}

impl fmt::Display for FactorExpression {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.exponents.iter().map(|(t, e)| format!("Δ_{t}^{e}")).collect();
        f.write_str(&parts.join("·"))
    }
}

impl Serialize for FactorExpression {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let map: BTreeMap<&str, i64> = self.exponents.iter().map(|(t, &e)| (t.name(), e)).collect();
        let mut st = s.serialize_struct("FactorExpression", 2)?;
        st.serialize_field("exponents", &map)?;
        st.serialize_field("chi_variation", &self.chi_variation())?;
        st.end()
    }
}

pub fn build_factor_expression(v: Variant) -> FactorExpression {
    use Term::*;
    let base = match v {
        Variant::DeltaKs => FactorExpression::new(&[(IOld, 1), (II, 1), (III, 1), (IV, 1)]),
        Variant::DeltaD | Variant::DeltaDLambda => FactorExpression::new(&[(INew, 1), (II, -1), (III, 1), (IV, 1)]),
        Variant::DeltaPrime | Variant::DeltaPrimeLambda => {
            FactorExpression::new(&[(INew, 1), (III, 1)]).inv().mul(&FactorExpression::new(&[(II, 1), (IV, 1)]))
        }
    };
    match v {
        Variant::DeltaDLambda | Variant::DeltaPrimeLambda => base.mul(&FactorExpression::single(EpsL, 1)),
        _ => base,
    }
}

/// `Δ_I^new·Δ_II·Δ_III^new·Δ_IV`, where `Δ_III^new` uses the inverse χ-data.
pub fn delta_d_via_inverse_chi() -> FactorExpression {
    FactorExpression::new(&[(Term::INew, 1), (Term::II, 1), (Term::IIIInv, 1), (Term::IV, 1)])
}

pub fn chi_invariance_check(expr: &FactorExpression) -> bool {
    expr.chi_variation() == 0
}

#[cfg(test)]
mod tests {
    use num_rational::BigRational;
    use num_traits::{One, Pow};
    use proptest::prelude::*;

    use super::*;
    use crate::coeffs::rat;

    /// χ-data `χ^k`: `Δ_II` and `Δ_III` pick up `g^k`, `Δ_III_inv` is `Δ_III` at `-k`, and
    /// `Δ_II` at `-k` is the inverse of `Δ_II` at `k`.
    fn evaluate(expr: &FactorExpression, k: i32) -> BigRational {
        let g = rat(3, 2);
        let value = |t: Term| -> BigRational {
            match t {
                Term::INew => rat(5, 1),
                Term::IOld => rat(7, 1),
                Term::II => Pow::pow(g.clone(), k) * rat(-1, 1),
                Term::III => Pow::pow(g.clone(), k) * rat(13, 1),
                Term::IIIInv => Pow::pow(g.clone(), -k) * rat(13, 1),
                Term::IV => rat(17, 1),
                Term::EpsL => rat(-1, 1),
            }
        };
        expr.exponents().iter().fold(BigRational::one(), |acc, (&t, &e)| acc * Pow::pow(value(t), e as i32))
    }

    #[test]
    fn stated_exponents() {
        let d = build_factor_expression(Variant::DeltaD);
        assert_eq!((d.exponent(Term::II), d.exponent(Term::III)), (-1, 1));
        let p = build_factor_expression(Variant::DeltaPrime);
        assert_eq!((p.exponent(Term::INew), p.exponent(Term::II), p.exponent(Term::III)), (-1, 1, -1));
        let ks = build_factor_expression(Variant::DeltaKs);
        assert_eq!((ks.exponent(Term::II), ks.exponent(Term::III)), (1, 1));
        for v in [Variant::DeltaDLambda, Variant::DeltaPrimeLambda] {
            assert_eq!(build_factor_expression(v).exponent(Term::EpsL), 1);
        }
        assert!("delta_x".parse::<Variant>().is_err());
    }

    #[test]
    fn invariance_verdicts() {
        for v in Variant::ALL {
            let e = build_factor_expression(v);
            assert_eq!(chi_invariance_check(&e), v != Variant::DeltaKs, "{}", v.name());
            // oracle: evaluate for two χ-data
            assert_eq!(evaluate(&e, 0) == evaluate(&e, 3), v != Variant::DeltaKs, "{}", v.name());
        }
    }

    #[test]
    fn two_definitions_of_delta_d() {
        let alt = delta_d_via_inverse_chi();
        assert!(chi_invariance_check(&alt));
        assert_eq!(alt.invert_chi_data(), build_factor_expression(Variant::DeltaD));
        for k in -2..=2 {
            assert_eq!(evaluate(&alt, k), evaluate(&alt.invert_chi_data(), -k));
        }
    }

    fn term() -> impl Strategy<Value = Term> {
        (0..Term::ALL.len()).prop_map(|i| Term::ALL[i])
    }

    proptest! {
        #[test]
        fn chi_variation_matches_oracle(pairs in proptest::collection::vec((term(), -3i64..=3), 0..6)) {
            let e = FactorExpression::new(&pairs);
            prop_assert_eq!(chi_invariance_check(&e), evaluate(&e, 0) == evaluate(&e, 1));
            prop_assert_eq!(e.invert_chi_data().invert_chi_data(), e.clone());
            prop_assert_eq!(e.mul(&e.inv()), FactorExpression::default());
        }
    }
}
