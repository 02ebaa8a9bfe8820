//! JSON scenarios for `invariant`: a root datum, `θ`, a cyclic descent datum
//! and a-data, all indices 1-based.
//!
//! ```json
//! {"datum": {"type": [["A", 2]]}, "theta": {"perm": [2, 1]},
//!  "galois": {"order": 2, "omega_T": [1, 2, 1], "sigma_T": [1, 2], "field": {"d": 5}},
//!  "adata": {"mode": "symbolic"}}
//! ```
//!
//! `adata.mode` is `symbolic`, `random` (seeded) or `explicit`; explicit values
//! list `a_α` for the positive roots in the order `restrict` prints them, each a
//! rational string or a pair `[a, b]` meaning `a + b√d`. With `"special": true`
//! the a-data live on the restricted roots instead. `twisted` defaults to
//! `θ ≠ 1`; `borel` is an optional list of words `μ` to move the Borel subgroup by.

use std::fmt::Display;

use num_rational::BigRational;
use num_traits::Zero;
use rand::Rng;
use serde_json::{json, Map, Value};

use crate::coeffs::{Coefficient, ExplicitField, Quad};
use crate::error::{Error, Result};
use crate::matoracle::{FixedGroup, SlContext};
use crate::report::Check;
use crate::rootdata::{parse_perm, parse_word, DatumSpec, Family, PinnedAutomorphism, RestrictedRootSystem, RootDatum, WeylElement};
use crate::splitting::{
    compare_fixed_vs_twisted, fixed_coords, include_fixed, lambda_twisted, lambda_untwisted, matrix_borel_independence,
    matrix_fixed_vs_twisted, matrix_fixed_vs_twisted_cocycles, realize_twisted, realize_untwisted,
    verify_borel_independence, ADatum, DescentDatum, Flavor, OrbitTable,
};
use crate::tits::TitsGroup;

/// Quadratic discriminants accepted in `galois.field.d`.
pub const SUPPORTED_D: [i64; 19] = [-1, -2, -3, -5, -6, -7, -10, -11, -13, -15, 2, 3, 5, 6, 7, 10, 11, 13, 15];

#[derive(Clone, Debug, PartialEq)]
pub enum AdataMode {
    Symbolic,
    Random,
    /// `(a, b)` for `a + b√d`, one per positive (restricted) root.
    Explicit(Vec<(BigRational, BigRational)>),
}

#[derive(Clone, Debug)]
pub struct Scenario {
    pub spec: DatumSpec,
    pub datum: RootDatum,
    pub theta: PinnedAutomorphism,
    pub descent: DescentDatum,
    pub field: Option<i64>,
    pub mode: AdataMode,
    pub special: bool,
    pub twisted: bool,
    pub borel: Vec<WeylElement>,
}

fn perr(field: &str, message: impl Into<String>) -> Error {
    Error::Parse { field: field.into(), message: message.into() }
}

fn object<'a>(v: &'a Value, field: &str, allowed: &[&str]) -> Result<&'a Map<String, Value>> {
    let m = v.as_object().ok_or_else(|| perr(field, "expected an object"))?;
    for k in m.keys() {
        if !allowed.contains(&k.as_str()) {
            let name = if field.is_empty() { k.clone() } else { format!("{field}.{k}") };
            return Err(perr(&name, format!("unknown key; expected one of {allowed:?}")));
        }
    }
    Ok(m)
}

fn indices(v: &Value, field: &str) -> Result<Vec<usize>> {
    let arr = v.as_array().ok_or_else(|| perr(field, "expected an array of positive integers"))?;
    arr.iter()
        .map(|x| x.as_u64().map(|n| n as usize).ok_or_else(|| perr(field, format!("{x} is not a positive integer"))))
        .collect()
}

fn rational(v: &Value, field: &str) -> Result<BigRational> {
    let s = match v {
        Value::String(s) => s.trim().to_string(),
        Value::Number(n) if n.is_i64() => n.to_string(),
        _ => return Err(perr(field, format!("{v} is not an exact rational (use an integer or a string like \"3/4\")"))),
    };
    s.parse::<BigRational>().map_err(|_| perr(field, format!("`{s}` is not a rational number")))
}

/// Wraps lower-level errors so they carry the field being parsed.
fn at(field: &str) -> impl Fn(Error) -> Error + '_ {
    move |e| match e {
        Error::Parse { .. } => e,
        other => perr(field, other.to_string()),
    }
}

impl Scenario {
    pub fn parse(text: &str) -> Result<Self> {
        let doc: Value = serde_json::from_str(text).map_err(|e| perr("scenario", format!("invalid JSON: {e}")))?;
        let top = object(&doc, "", &["datum", "theta", "galois", "adata", "twisted", "borel"])?;

        let datum_v = top.get("datum").ok_or_else(|| perr("datum", "missing"))?;
        object(datum_v, "datum", &["type", "theta"])?;
        if datum_v.get("type").is_none() {
            return Err(perr("datum.type", "missing"));
        }
        let mut spec: DatumSpec =
            serde_json::from_value(datum_v.clone()).map_err(|e| perr("datum.type", format!("expected [[family, rank], …]: {e}")))?;
        let datum = spec.datum().map_err(|e| match e {
            Error::Parse { field, message } => perr(&format!("datum.{field}"), message),
            other => perr("datum.type", other.to_string()),
        })?;
        let theta_v = top.get("theta").or_else(|| datum_v.get("theta"));
        let theta = match theta_v {
            None | Some(Value::Null) => PinnedAutomorphism::identity(&datum),
            Some(t) => {
                let field = if top.contains_key("theta") { "theta.perm" } else { "datum.theta.perm" };
                object(t, field.trim_end_matches(".perm"), &["perm"])?;
                let p = indices(t.get("perm").ok_or_else(|| perr(field, "missing"))?, field)?;
                let p = parse_perm(&p, datum.rank(), field)?;
                PinnedAutomorphism::new(&datum, p).map_err(at(field))?
            }
        };
        spec.theta = Some(crate::rootdata::ThetaSpec { perm: theta.perm().iter().map(|i| i + 1).collect() });

        let gal = top.get("galois").ok_or_else(|| perr("galois", "missing"))?;
        let g = object(gal, "galois", &["order", "omega_T", "sigma_T", "field"])?;
        let order = match g.get("order") {
            None => 2,
            Some(v) => v.as_u64().filter(|n| (1..=12).contains(n)).ok_or_else(|| perr("galois.order", "expected an integer in 1..=12"))?
                as usize,
        };
        let omega = match g.get("omega_T") {
            None => datum.weyl_identity(),
            Some(v) => {
                let w = parse_word(&indices(v, "galois.omega_T")?, datum.rank(), "galois.omega_T")?;
                datum.analyze_weyl(&w).map_err(at("galois.omega_T"))?
            }
        };
        let sigma = match g.get("sigma_T") {
            None => PinnedAutomorphism::identity(&datum),
            Some(v) => {
                let p = parse_perm(&indices(v, "galois.sigma_T")?, datum.rank(), "galois.sigma_T")?;
                PinnedAutomorphism::new(&datum, p).map_err(at("galois.sigma_T"))?
            }
        };
        let descent = DescentDatum::new(&datum, order, omega, sigma).map_err(at("galois.omega_T"))?;
        let field = match g.get("field") {
            None | Some(Value::Null) => None,
            Some(f) => {
                let fo = object(f, "galois.field", &["d"])?;
                let d = fo
                    .get("d")
                    .ok_or_else(|| perr("galois.field.d", "missing"))?
                    .as_i64()
                    .ok_or_else(|| perr("galois.field.d", "expected an integer"))?;
                if !SUPPORTED_D.contains(&d) {
                    return Err(perr("galois.field.d", format!("{d} is not a supported squarefree discriminant {SUPPORTED_D:?}")));
                }
                if order % 2 == 1 {
                    return Err(perr("galois.field", format!("a group of odd order {order} cannot act through Gal(Q(sqrt({d}))/Q)")));
                }
                Some(d)
            }
        };

        let twisted = match top.get("twisted") {
            None => !theta.is_identity(),
            Some(v) => v.as_bool().ok_or_else(|| perr("twisted", "expected a boolean"))?,
        };
        if twisted && !descent.commutes_with(&datum, &theta) {
            return Err(perr("galois.omega_T", "σ_T does not commute with θ"));
        }

        let ad = top.get("adata").ok_or_else(|| perr("adata", "missing"))?;
        let a = object(ad, "adata", &["mode", "special", "values"])?;
        let special = match a.get("special") {
            None => false,
            Some(v) => v.as_bool().ok_or_else(|| perr("adata.special", "expected a boolean"))?,
        };
        if special && !descent.commutes_with(&datum, &theta) {
            return Err(perr("adata.special", "special a-data need σ_T to commute with θ"));
        }
        let mode = match a.get("mode").and_then(Value::as_str) {
            Some("symbolic") => AdataMode::Symbolic,
            Some("random") => AdataMode::Random,
            Some("explicit") => {
                let vals = a.get("values").ok_or_else(|| perr("adata.values", "missing"))?;
                let arr = vals.as_array().ok_or_else(|| perr("adata.values", "expected an array"))?;
                let mut out = Vec::new();
                for (k, v) in arr.iter().enumerate() {
                    let f = format!("adata.values[{k}]");
                    let pair = match v {
                        Value::Array(p) if p.len() == 2 => (rational(&p[0], &f)?, rational(&p[1], &f)?),
                        _ => (rational(v, &f)?, BigRational::zero()),
                    };
                    if pair.1 != BigRational::zero() && field.is_none() {
                        return Err(perr(&f, "an irrational value needs galois.field.d"));
                    }
                    out.push(pair);
                }
                AdataMode::Explicit(out)
            }
            Some(other) => return Err(perr("adata.mode", format!("unknown mode `{other}`; expected symbolic, random or explicit"))),
            None => return Err(perr("adata.mode", "missing")),
        };

        let borel = match top.get("borel") {
            None => Vec::new(),
            Some(v) => {
                let arr = v.as_array().ok_or_else(|| perr("borel", "expected an array of words"))?;
                let mut out = Vec::new();
                for (k, w) in arr.iter().enumerate() {
                    let f = format!("borel[{k}]");
                    let word = parse_word(&indices(w, &f)?, datum.rank(), &f)?;
                    let mu = datum.analyze_weyl(&word).map_err(at(&f))?;
                    if twisted && !theta.fixes_weyl(&datum, &mu) {
                        return Err(perr(&f, "μ must be θ-fixed for twisted data"));
                    }
                    out.push(mu);
                }
                out
            }
        };

        Ok(Scenario { spec, datum, theta, descent, field, mode, special, twisted, borel })
    }

    /// `n` when the datum is `A_{n-1}` and the matrix model applies: `Γ = ℤ/2` acting
    /// faithfully on a quadratic field with trivial `σ_𝐓`, and `θ` trivial or the flip.
    pub fn matrix_rank(&self) -> Option<usize> {
        let comps = self.datum.components();
        if comps.len() != 1 || comps[0].0 != Family::A || self.field.is_none() {
            return None;
        }
        if self.descent.order() != 2 || !self.descent.sigma().is_identity() {
            return None;
        }
        let flip = PinnedAutomorphism::flip(&self.datum).ok()?;
        (self.theta.is_identity() || self.theta == flip).then_some(comps[0].1 + 1)
    }
}

/// Checks, notes and the result payload of one evaluation.
#[derive(Debug, Default)]
pub struct Evaluation {
    pub checks: Vec<Check>,
    pub notes: Vec<String>,
    pub result: Map<String, Value>,
}

fn values_json<C: Display>(labels: &[String], a: &ADatum<C>) -> Value {
    json!(labels.iter().enumerate().map(|(k, l)| json!({ "root": l, "value": a.values[k].to_string() })).collect::<Vec<_>>())
}

fn root_labels(d: &RootDatum) -> Vec<String> {
    d.positive_roots().map(|k| format!("{:?}", d.root(k).coeffs)).collect()
}

fn restricted_labels(rrs: &RestrictedRootSystem) -> Vec<String> {
    (0..rrs.num_positive()).map(|k| rrs.label(k)).collect()
}

fn fill_negatives<C: Coefficient>(npos: usize, n: usize, neg: impl Fn(usize) -> usize, pos: Vec<C>) -> Vec<C> {
    let mut out = vec![C::one(); n];
    for (k, v) in pos.into_iter().enumerate() {
        out[neg(k)] = v.negate();
        out[k] = v;
    }
    debug_assert!(npos * 2 == n);
    out
}

/// The abstract part: both cocycles, their comparison, Borel changes.
fn analyze<C: Coefficient + Display>(sc: &Scenario, a: &ADatum<C>, action: &C::Action, ev: &mut Evaluation) -> Result<()> {
    let d = &sc.datum;
    let g = TitsGroup::new(d);
    let inputs = json!({ "descent": descent_json(&sc.descent) });
    let un = lambda_untwisted(d, &sc.descent, action, a)?;
    ev.checks.extend(Check::from_results("lambda_T", &inputs, &un.checks));
    ev.result.insert("lambda_T".into(), json!({ "ambient": un.ambient, "m": un.m }));
    if sc.twisted {
        let tw = lambda_twisted(d, &sc.theta, &sc.descent, action, a).map_err(at("adata"))?;
        ev.checks.extend(Check::from_results("lambda_T_theta", &inputs, &tw.checks));
        let fixed: Vec<Option<Vec<String>>> = tw
            .m
            .iter()
            .map(|x| fixed_coords(&sc.theta, &x.torus_part).map(|c| c.iter().map(|v| v.to_string()).collect()))
            .collect();
        let image: Vec<_> = tw
            .m
            .iter()
            .map(|x| {
                fixed_coords(&sc.theta, &x.torus_part)
                    .map(|c| g.mul(&g.torus(include_fixed(&sc.theta, &c)), &g.lift(&x.weyl_part)))
            })
            .collect();
        let refines = image.iter().zip(&un.m).all(|(x, y)| x.as_ref() == Some(y));
        ev.checks.push(Check::equal("refinement/image_equals_lambda_T", inputs.clone(), json!(true), json!(refines)));
        ev.result.insert("lambda_T_theta".into(), json!({ "ambient": tw.ambient, "m": tw.m, "fixed_coords": fixed }));
    }
    for mu in &sc.borel {
        let w = verify_borel_independence(d, sc.twisted.then_some(&sc.theta), &sc.descent, action, a, mu)?;
        let inp = json!({ "mu": mu.word_one_based() });
        ev.checks.extend(Check::from_results(&format!("borel/{:?}", mu.word_one_based()), &inp, &w.checks));
    }
    Ok(())
}

fn descent_json(dd: &DescentDatum) -> Value {
    json!({
        "order": dd.order(),
        "omega_T": dd.omega().word_one_based(),
        "sigma_T": dd.sigma().perm().iter().map(|i| i + 1).collect::<Vec<_>>(),
    })
}

/// Builds the a-data (twisted/plain on roots, or special on restricted roots).
fn build_adata<C: Coefficient + Display>(
    sc: &Scenario,
    action: &C::Action,
    make: impl FnOnce(&OrbitTable) -> Result<ADatum<C>>,
    explicit: Option<Vec<C>>,
) -> Result<(ADatum<C>, Option<RestrictedRootSystem>)> {
    let d = &sc.datum;
    if sc.special {
        let rrs = RestrictedRootSystem::restrict(d, &sc.theta)?;
        let a = match explicit {
            Some(pos) => {
                if pos.len() != rrs.num_positive() {
                    return Err(perr("adata.values", format!("expected {} values (positive restricted roots), found {}", rrs.num_positive(), pos.len())));
                }
                ADatum::new(Flavor::Special, fill_negatives(rrs.num_positive(), rrs.num_roots(), |k| rrs.negate(k), pos))
            }
            None => make(&OrbitTable::on_restricted(&rrs, &sc.descent).map_err(at("galois"))?)?,
        };
        a.check_restricted(&rrs, &sc.descent, action).map_err(at("adata.values"))?;
        Ok((a, Some(rrs)))
    } else {
        let theta = sc.twisted.then_some(&sc.theta);
        let a = match explicit {
            Some(pos) => {
                if pos.len() != d.num_positive() {
                    return Err(perr("adata.values", format!("expected {} values (positive roots), found {}", d.num_positive(), pos.len())));
                }
                let flavor = if sc.twisted { Flavor::Twisted } else { Flavor::Plain };
                ADatum::new(flavor, fill_negatives(d.num_positive(), d.num_roots(), |k| d.negate(k), pos))
            }
            None => make(&OrbitTable::on_roots(d, &sc.descent, theta).map_err(at("galois"))?)?,
        };
        a.check(d, &sc.descent, action, theta).map_err(at("adata.values"))?;
        Ok((a, None))
    }
}

/// Special data: compare with the twisted data lifted from them, then analyze those.
fn analyze_all<C: Coefficient + Display>(
    sc: &Scenario,
    a: &ADatum<C>,
    rrs: Option<&RestrictedRootSystem>,
    action: &C::Action,
    ev: &mut Evaluation,
) -> Result<ADatum<C>> {
    match rrs {
        Some(rrs) => {
            ev.result.insert("adata".into(), values_json(&restricted_labels(rrs), a));
            let cmp = compare_fixed_vs_twisted(rrs, &sc.descent, action, a)?;
            let inputs = json!({ "descent": descent_json(&sc.descent) });
            ev.checks.extend(Check::from_results("fixed_vs_twisted", &inputs, &cmp.checks));
            ev.result.insert("m_fixed_torus".into(), json!(cmp.m_prime));
            let lifted = a.tilde(rrs)?.lift(rrs)?;
            let mut inner = Scenario { twisted: true, ..sc.clone() };
            inner.special = false;
            analyze(&inner, &lifted, action, ev)?;
            Ok(lifted)
        }
        None => {
            ev.result.insert("adata".into(), values_json(&root_labels(&sc.datum), a));
            analyze(sc, a, action, ev)?;
            Ok(a.clone())
        }
    }
}

pub fn evaluate_symbolic(sc: &Scenario) -> Result<Evaluation> {
    let mut ev = Evaluation::default();
    let (a, action, rrs) = if sc.special {
        let rrs = RestrictedRootSystem::restrict(&sc.datum, &sc.theta)?;
        let (a, action) = OrbitTable::on_restricted(&rrs, &sc.descent).map_err(at("galois"))?.symbolic(false);
        (a, action, Some(rrs))
    } else {
        let table = OrbitTable::on_roots(&sc.datum, &sc.descent, sc.twisted.then_some(&sc.theta)).map_err(at("galois"))?;
        let (a, action) = table.symbolic(sc.twisted);
        (a, action, None)
    };
    analyze_all(sc, &a, rrs.as_ref(), &action, &mut ev)?;
    ev.result.insert("mode".into(), json!("symbolic"));
    Ok(ev)
}

fn evaluate_explicit<F: ExplicitField, R: Rng + ?Sized>(
    sc: &Scenario,
    action: F::Action,
    convert: impl Fn(&BigRational, &BigRational) -> F,
    rng: &mut R,
) -> Result<Evaluation> {
    let mut ev = Evaluation::default();
    let explicit = match &sc.mode {
        AdataMode::Explicit(v) => Some(v.iter().map(|(a, b)| convert(a, b)).collect::<Vec<F>>()),
        _ => None,
    };
    if let Some(v) = &explicit {
        if let Some(k) = v.iter().position(|x| x.is_zero()) {
            return Err(perr(&format!("adata.values[{k}]"), "a-data values must be nonzero"));
        }
    }
    let base_only = sc.matrix_rank().is_some() && (sc.twisted || sc.special);
    let (a, rrs) = build_adata::<F>(
        sc,
        &action,
        |t| t.explicit::<F, _>(sc.twisted && !sc.special, &action, base_only, rng).map_err(at("adata")),
        explicit,
    )?;
    let lifted = analyze_all(sc, &a, rrs.as_ref(), &action, &mut ev)?;
    ev.result.insert("mode".into(), json!(if matches!(sc.mode, AdataMode::Random) { "random" } else { "explicit" }));
    if let Some(n) = sc.matrix_rank() {
        matrix_stage::<F, R>(sc, n, &a, &lifted, rrs.is_some(), &action, rng, &mut ev)?;
    }
    Ok(ev)
}

#[allow(clippy::too_many_arguments)]
fn matrix_stage<F: ExplicitField, R: Rng + ?Sized>(
    sc: &Scenario,
    n: usize,
    a: &ADatum<F>,
    lifted: &ADatum<F>,
    special: bool,
    action: &F::Action,
    rng: &mut R,
    ev: &mut Evaluation,
) -> Result<()> {
    let ctx = SlContext::<F>::new(n)?;
    let twisted = sc.twisted || special;
    let inputs = json!({ "group": format!("SL({n})"), "twisted": twisted });
    let real = if special {
        let fx = FixedGroup::new(&ctx)?;
        match matrix_fixed_vs_twisted_cocycles(&fx, &sc.descent, action, a, rng) {
            Ok((real, checks)) => {
                ev.checks.extend(Check::from_results("matrix", &inputs, &checks));
                Some(real)
            }
            Err(Error::InvalidRealization(why)) => {
                ev.checks.extend(Check::from_results("matrix", &inputs, &matrix_fixed_vs_twisted(&fx, &sc.descent, action, a)?));
                ev.notes.push(format!("no h in G^θ was constructed, compared m-cocycles only: {why}"));
                None
            }
            Err(e) => return Err(e),
        }
    } else if twisted && !sc.theta.is_identity() {
        let fx = FixedGroup::new(&ctx)?;
        match realize_twisted(&fx, &sc.descent, action, lifted, rng) {
            Ok(real) => {
                ev.checks.extend(Check::from_results("matrix", &inputs, &real.checks));
                Some(real)
            }
            Err(Error::InvalidRealization(why)) => {
                ev.notes.push(format!("no h in G^θ was constructed: {why}"));
                None
            }
            Err(e) => return Err(e),
        }
    } else {
        let plain = ADatum::new(Flavor::Plain, lifted.values.clone());
        let real = realize_untwisted(&ctx, &sc.descent, action, &plain, rng)?;
        ev.checks.extend(Check::from_results("matrix", &inputs, &real.checks));
        Some(real)
    };
    if let Some(real) = real {
        let fixed = fixed_coords(ctx.theta(), &real.coords);
        ev.result.insert(
            "realization".into(),
            json!({ "h": real.h, "t_sigma": real.t, "coords": real.coords, "fixed_coords": fixed.map(|c| c.iter().map(|x| x.to_string()).collect::<Vec<_>>()) }),
        );
        for mu in &sc.borel {
            let cs = matrix_borel_independence(&ctx, &real, &sc.descent, action, lifted, mu)?;
            ev.checks.extend(Check::from_results(&format!("matrix_borel/{:?}", mu.word_one_based()), &json!({ "mu": mu.word_one_based() }), &cs));
        }
    }
    Ok(())
}

fn quad_convert<const D: i64>(a: &BigRational, b: &BigRational) -> Quad<D> {
    Quad::new(a.clone(), b.clone())
}

macro_rules! dispatch_quad {
    ($d:expr, $sc:expr, $rng:expr; $($v:literal),*) => {
        match $d {
            $($v => evaluate_explicit::<Quad<$v>, _>($sc, true, quad_convert::<$v>, $rng),)*
            other => Err(perr("galois.field.d", format!("unsupported discriminant {other}"))),
        }
    };
}

/// Evaluates a parsed scenario.
pub fn evaluate<R: Rng + ?Sized>(sc: &Scenario, rng: &mut R) -> Result<Evaluation> {
    let mut ev = match (&sc.mode, sc.field) {
        (AdataMode::Symbolic, _) => evaluate_symbolic(sc)?,
        (_, None) => evaluate_explicit::<BigRational, R>(sc, (), |a, _| a.clone(), rng)?,
        (_, Some(d)) => dispatch_quad!(d, sc, rng; -1, -2, -3, -5, -6, -7, -10, -11, -13, -15, 2, 3, 5, 6, 7, 10, 11, 13, 15)?,
    };
    ev.result.insert("datum".into(), json!(sc.spec));
    ev.result.insert("descent".into(), descent_json(&sc.descent));
    ev.result.insert("twisted".into(), json!(sc.twisted));
    ev.result.insert("special".into(), json!(sc.special));
    if let Some(d) = sc.field {
        ev.result.insert("field".into(), json!(format!("Q(sqrt({d}))")));
    }
    Ok(ev)
}

#[cfg(test)]
mod tests {
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    use super::*;

    fn field_of(text: &str) -> String {
        match Scenario::parse(text) {
            Err(Error::Parse { field, .. }) => field,
            other => panic!("expected a parse error, got {other:?}"),
        }
    }

    #[test]
    fn malformed_fields_are_named() {
        assert_eq!(field_of("{"), "scenario");
        assert_eq!(field_of(r#"{"galois":{},"adata":{"mode":"symbolic"}}"#), "datum");
        assert_eq!(field_of(r#"{"datum":{"type":[["Q",2]]},"galois":{},"adata":{"mode":"symbolic"}}"#), "datum.type[0][0]");
        assert_eq!(
            field_of(r#"{"datum":{"type":[["A",2]]},"galois":{"omega_T":[3]},"adata":{"mode":"symbolic"}}"#),
            "galois.omega_T"
        );
        assert_eq!(
            field_of(r#"{"datum":{"type":[["A",2]]},"galois":{"field":{"d":4}},"adata":{"mode":"symbolic"}}"#),
            "galois.field.d"
        );
        assert_eq!(field_of(r#"{"datum":{"type":[["A",2]]},"galois":{},"adata":{"mode":"guess"}}"#), "adata.mode");
        assert_eq!(field_of(r#"{"datum":{"type":[["A",2]]},"galois":{},"adata":{"mode":"symbolic"},"extra":1}"#), "extra");
        assert_eq!(field_of(r#"{"datum":{"type":[["A",2]]},"theta":{"perm":[1,1]},"galois":{},"adata":{"mode":"symbolic"}}"#), "theta.perm");
    }

    #[test]
    fn explicit_values_are_validated() {
        // a_{α₁} = 1, a_{α₂} = 1, a_{α₁+α₂} = 2 with σ_T = ω₀ needs a_{-α} = σ(a_{w₀α}) = a_α up to sign
        let text = r#"{"datum":{"type":[["A",2]]},"galois":{"omega_T":[1,2,1],"field":{"d":5}},
                       "adata":{"mode":"explicit","values":["1","1","2"]}}"#;
        let sc = Scenario::parse(text).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        match evaluate(&sc, &mut rng) {
            Err(Error::Parse { field, .. }) => assert_eq!(field, "adata.values"),
            other => panic!("{:?}", other.map(|e| e.result)),
        }
    }

    #[test]
    fn symbolic_a2_flip_passes() {
        let text = r#"{"datum":{"type":[["A",2]]},"theta":{"perm":[2,1]},
                       "galois":{"order":2,"omega_T":[1,2,1],"sigma_T":[1,2],"field":{"d":5}},
                       "adata":{"mode":"symbolic"},"borel":[[1,2,1]]}"#;
        let sc = Scenario::parse(text).unwrap();
        let ev = evaluate(&sc, &mut ChaCha8Rng::seed_from_u64(1)).unwrap();
        assert!(ev.checks.iter().all(|c| c.pass), "{:?}", ev.checks);
        assert!(ev.result.contains_key("lambda_T_theta"));
    }

    #[test]
    fn random_matrix_modes() {
        for (theta, special) in [("[1,2,3]", false), ("[3,2,1]", false), ("[3,2,1]", true)] {
            let text = format!(
                r#"{{"datum":{{"type":[["A",3]]}},"theta":{{"perm":{theta}}},
                    "galois":{{"omega_T":[1,2,3,1,2,1],"field":{{"d":-1}}}},
                    "adata":{{"mode":"random","special":{special}}}}}"#
            );
            let sc = Scenario::parse(&text).unwrap();
            assert_eq!(sc.matrix_rank(), Some(4));
            let ev = evaluate(&sc, &mut ChaCha8Rng::seed_from_u64(3)).unwrap();
            assert!(ev.checks.iter().all(|c| c.pass), "{theta} {special}: {:?}", ev.checks);
            assert!(ev.result.contains_key("realization"), "{theta} {special}: {:?}", ev.notes);
        }
    }
}
