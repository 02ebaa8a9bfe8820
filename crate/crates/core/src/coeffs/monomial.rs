//! The symbolic coefficient group `{±1} × ⟨2⟩ × ⟨indeterminates⟩`.

use std::collections::BTreeMap;
use std::fmt;

use super::field::{Coefficient, Galois};

/// `±2^k · ∏ xᵢ^{eᵢ}`, kept in normal form (no zero exponents).
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial {
    negative: bool,
    two: i64,
    vars: BTreeMap<String, i64>,
}

impl Monomial {
    pub fn var(name: &str) -> Self {
        let mut vars = BTreeMap::new();
        vars.insert(name.to_string(), 1);
        Monomial { negative: false, two: 0, vars }
    }

    pub fn is_negative(&self) -> bool {
        self.negative
    }

    pub fn two_exponent(&self) -> i64 {
        self.two
    }

    pub fn exponent(&self, name: &str) -> i64 {
        self.vars.get(name).copied().unwrap_or(0)
    }

    pub fn vars(&self) -> impl Iterator<Item = (&str, i64)> {
        self.vars.iter().map(|(k, v)| (k.as_str(), *v))
    }

    /// Substitutes values for the indeterminates.
    pub fn evaluate<C: Coefficient>(&self, value: impl Fn(&str) -> C) -> C {
        let sign = if self.negative { C::minus_one() } else { C::one() };
        self.vars.iter().fold(sign.prod(&C::two().power(self.two)), |acc, (v, e)| acc.prod(&value(v).power(*e)))
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        if self.two != 0 {
            parts.push(if self.two == 1 { "2".to_string() } else { format!("2^{}", self.two) });
        }
        for (v, e) in &self.vars {
            parts.push(if *e == 1 { v.clone() } else { format!("{v}^{e}") });
        }
        let sign = if self.negative { "-" } else { "" };
        if parts.is_empty() {
            write!(f, "{sign}1")
        } else {
            write!(f, "{sign}{}", parts.join("*"))
        }
    }
}

/// Action of the Galois generator on indeterminates: `x ↦ ±y`.
///
/// Indeterminates not listed are fixed.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SymbolAction {
    map: BTreeMap<String, (bool, String)>,
}

impl SymbolAction {
    pub fn new() -> Self {
        Self::default()
    }

    /// Declare `σ(from) = (-1)^negate · to`.
    pub fn set(&mut self, from: &str, negate: bool, to: &str) {
        self.map.insert(from.to_string(), (negate, to.to_string()));
    }

    pub fn image(&self, name: &str) -> (bool, String) {
        self.map.get(name).cloned().unwrap_or((false, name.to_string()))
    }
}

impl Galois for Monomial {
    type Action = SymbolAction;
    fn act(&self, action: &SymbolAction) -> Self {
        let mut out = Monomial { negative: self.negative, two: self.two, vars: BTreeMap::new() };
        for (v, e) in &self.vars {
            let (neg, target) = action.image(v);
            if neg && e % 2 != 0 {
                out.negative = !out.negative;
            }
            *out.vars.entry(target).or_insert(0) += e;
        }
        out.vars.retain(|_, e| *e != 0);
        out
    }
}

impl Coefficient for Monomial {
    fn one() -> Self {
        Monomial { negative: false, two: 0, vars: BTreeMap::new() }
    }
    fn prod(&self, o: &Self) -> Self {
        let mut vars = self.vars.clone();
        for (v, e) in &o.vars {
            *vars.entry(v.clone()).or_insert(0) += e;
        }
        vars.retain(|_, e| *e != 0);
        Monomial { negative: self.negative ^ o.negative, two: self.two + o.two, vars }
    }
    fn inverse(&self) -> Self {
        Monomial {
            negative: self.negative,
            two: -self.two,
            vars: self.vars.iter().map(|(k, v)| (k.clone(), -v)).collect(),
        }
    }
    fn minus_one() -> Self {
        Monomial { negative: true, two: 0, vars: BTreeMap::new() }
    }
    fn two() -> Self {
        Monomial { negative: false, two: 1, vars: BTreeMap::new() }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn minus_one_squared_is_one() {
        assert!(Monomial::minus_one().power(2).is_one());
        assert_eq!(Monomial::two().prod(&Monomial::half()), Monomial::one());
    }

    #[test]
    fn action_with_sign() {
        let mut act = SymbolAction::new();
        act.set("a", true, "a");
        let a = Monomial::var("a");
        assert_eq!(a.act(&act), a.negate());
        assert_eq!(a.power(2).act(&act), a.power(2));
    }

    fn word() -> impl Strategy<Value = Monomial> {
        prop::collection::vec((0usize..4, -3i64..4), 0..6).prop_map(|w| {
            let names = ["a", "b", "c", "-1"];
            w.into_iter().fold(Monomial::one(), |acc, (i, e)| {
                let g = if names[i] == "-1" { Monomial::minus_one() } else { Monomial::var(names[i]) };
                acc.prod(&g.power(e))
            })
        })
    }

    proptest! {
        #[test]
        fn exact_cancellation(w in word(), extra in word()) {
            prop_assert!(w.prod(&w.inverse()).is_one());
            prop_assert_eq!(w.prod(&extra).prod(&extra.inverse()), w);
        }
    }
}
