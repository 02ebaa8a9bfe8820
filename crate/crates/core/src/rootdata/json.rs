//! JSON form of a root datum with a pinned automorphism (indices are 1-based).

use serde::{Deserialize, Serialize};

use super::automorphism::PinnedAutomorphism;
use super::datum::{Family, RootDatum};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ThetaSpec {
    pub perm: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DatumSpec {
    #[serde(rename = "type")]
    pub components: Vec<(String, usize)>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub theta: Option<ThetaSpec>,
}

impl DatumSpec {
    pub fn from_json(s: &str) -> Result<Self> {
        serde_json::from_str(s).map_err(|e| Error::Parse { field: "datum".into(), message: e.to_string() })
    }

    pub fn datum(&self) -> Result<RootDatum> {
        let mut comps = Vec::new();
        for (k, (f, n)) in self.components.iter().enumerate() {
            let fam: Family = f
                .parse()
                .map_err(|_| Error::Parse { field: format!("type[{k}][0]"), message: format!("unknown family {f:?}") })?;
            comps.push((fam, *n));
        }
        RootDatum::build(&comps).map_err(|e| Error::Parse { field: "type".into(), message: e.to_string() })
    }

    /// The datum and θ (identity when absent).
    pub fn build(&self) -> Result<(RootDatum, PinnedAutomorphism)> {
        let d = self.datum()?;
        let theta = match &self.theta {
            None => PinnedAutomorphism::identity(&d),
            Some(t) => parse_perm(&t.perm, d.rank(), "theta.perm")
                .and_then(|p| PinnedAutomorphism::new(&d, p))
                .map_err(|e| field_err("theta.perm", e))?,
        };
        Ok((d, theta))
    }

    pub fn from_parts(d: &RootDatum, theta: &PinnedAutomorphism) -> Self {
        DatumSpec {
            components: d.components().iter().map(|(f, n)| (f.to_string(), *n)).collect(),
            theta: Some(ThetaSpec { perm: theta.perm().iter().map(|i| i + 1).collect() }),
        }
    }
}

fn field_err(field: &str, e: Error) -> Error {
    match e {
        Error::Parse { .. } => e,
        other => Error::Parse { field: field.into(), message: other.to_string() },
    }
}

/// Converts a 1-based permutation of `1..=n` to 0-based.
pub fn parse_perm(p: &[usize], n: usize, field: &str) -> Result<Vec<usize>> {
    if p.len() != n {
        return Err(Error::Parse { field: field.into(), message: format!("expected {n} entries, found {}", p.len()) });
    }
    let mut seen = vec![false; n];
    let mut out = Vec::with_capacity(n);
    for &i in p {
        if i == 0 || i > n || seen[i - 1] {
            return Err(Error::Parse { field: field.into(), message: format!("{p:?} is not a permutation of 1..={n}") });
        }
        seen[i - 1] = true;
        out.push(i - 1);
    }
    Ok(out)
}

/// Converts a 1-based word in simple reflections to 0-based.
pub fn parse_word(w: &[usize], rank: usize, field: &str) -> Result<Vec<usize>> {
    w.iter()
        .map(|&i| {
            if i == 0 || i > rank {
                Err(Error::Parse { field: field.into(), message: format!("index {i} outside 1..={rank}") })
            } else {
                Ok(i - 1)
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip() {
        let s = r#"{"type":[["A",2]], "theta":{"perm":[2,1]}}"#;
        let spec = DatumSpec::from_json(s).unwrap();
        let (d, t) = spec.build().unwrap();
        assert_eq!(t.perm(), &[1, 0]);
        assert_eq!(DatumSpec::from_parts(&d, &t), spec);
    }

    #[test]
    fn malformed_fields_are_named() {
        let bad = DatumSpec::from_json(r#"{"type":[["A",2]], "theta":{"perm":[1,1]}}"#).unwrap();
        match bad.build() {
            Err(Error::Parse { field, .. }) => assert_eq!(field, "theta.perm"),
            other => panic!("{other:?}"),
        }
        let bad = DatumSpec::from_json(r#"{"type":[["Q",2]]}"#).unwrap();
        assert!(matches!(bad.build(), Err(Error::Parse { field, .. }) if field == "type[0][0]"));
        let bad = DatumSpec::from_json(r#"{"type":[["B",3]], "theta":{"perm":[2,1,3]}}"#).unwrap();
        assert!(matches!(bad.build(), Err(Error::Parse { field, .. }) if field == "theta.perm"));
    }
}
