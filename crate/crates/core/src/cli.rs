//! Command-line front end. Every command produces a [`RunReport`]; the exit
//! code is 0 when all its checks pass, 1 when one fails and 2 on bad input.

use std::path::PathBuf;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use num_rational::BigRational;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::coeffs::{hilbert_symbol, Place};
use crate::error::{Error, Result};
use crate::factors::{build_factor_expression, chi_invariance_check, delta_d_via_inverse_chi, Variant};
use crate::report::{Check, RunReport};
use crate::rootdata::{DatumSpec, PinnedAutomorphism, RestrictedRootSystem, RootDatum};
use crate::scenario::{evaluate, Scenario};
use crate::suites::{expected_chi_invariance, run_suite, Scale, Suite};

#[derive(Parser, Debug)]
#[command(name = "splitinv", version, about = "Splitting invariants, Tits groups and transfer-factor signs")]
struct Cli {
    /// Write the JSON report here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Seed for every random choice.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Include wall time in the report (makes it nondeterministic).
    #[arg(long, global = true)]
    timing: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Restricted roots of a datum: a JSON file, inline JSON, or a type such as `A4`.
    Restrict {
        datum: String,
        /// With a bare type: use the diagram flip as θ.
        #[arg(long)]
        flip: bool,
    },
    /// λ(T) and λ(T, θ) for a JSON scenario file.
    Invariant { scenario: PathBuf },
    /// Run verification suites.
    Verify {
        #[arg(long, value_enum, default_value_t = SuiteArg::All)]
        suite: SuiteArg,
    },
    /// The Hilbert symbol (a, b) at a place of Q.
    Hilbert {
        #[arg(allow_hyphen_values = true)]
        a: String,
        #[arg(allow_hyphen_values = true)]
        b: String,
        /// `real` or a prime.
        #[arg(long)]
        place: String,
    },
    /// Exponent pattern of a transfer-factor variant and its χ-invariance.
    Factors {
        #[arg(long, default_value = "delta_d")]
        variant: String,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum SuiteArg {
    Steinberg,
    Tits,
    Nn,
    Main,
    Aa,
    Appendix,
    Factors,
    All,
}

impl SuiteArg {
    fn suites(self) -> Vec<Suite> {
        match self {
            SuiteArg::Steinberg => vec![Suite::Steinberg],
            SuiteArg::Tits => vec![Suite::Tits],
            SuiteArg::Nn => vec![Suite::Nn],
            SuiteArg::Main => vec![Suite::Main],
            SuiteArg::Aa => vec![Suite::Aa],
            SuiteArg::Appendix => vec![Suite::Appendix],
            SuiteArg::Factors => vec![Suite::Factors],
            SuiteArg::All => Suite::ALL.to_vec(),
        }
    }
}

/// What a run prints and returns.
#[derive(Debug)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
    pub report: Option<RunReport>,
}

impl Outcome {
    fn input_error(e: &Error) -> Self {
        let msg = match e {
            Error::Parse { field, message } => format!("error: malformed input in field `{field}`: {message}"),
            other => format!("error: {other}"),
        };
        Outcome { code: 2, stdout: String::new(), stderr: msg, report: None }
    }
}

fn is_input_error(e: &Error) -> bool {
    !matches!(e, Error::Matrix(_))
}

/// Parses `args` (including the program name) and runs the command.
pub fn run(args: &[String]) -> Outcome {
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            return if code == 0 {
                Outcome { code, stdout: text, stderr: String::new(), report: None }
            } else {
                Outcome { code, stdout: String::new(), stderr: text, report: None }
            };
        }
    };
    let start = Instant::now();
    let command: Vec<String> = args.iter().skip(1).cloned().collect();
    let res = match &cli.command {
        Command::Restrict { datum, flip } => restrict(datum, *flip, &command, cli.seed),
        Command::Invariant { scenario } => invariant(scenario, &command, cli.seed),
        Command::Verify { suite } => Ok(verify(*suite, &command, cli.seed)),
        Command::Hilbert { a, b, place } => hilbert(a, b, place, &command, cli.seed),
        Command::Factors { variant } => factors(variant, &command, cli.seed),
    };
    let mut report = match res {
        Ok(r) => r,
        Err(e) if is_input_error(&e) => return Outcome::input_error(&e),
        Err(e) => return Outcome { code: 1, stdout: String::new(), stderr: format!("error: {e}"), report: None },
    };
    if cli.timing {
        report.wall_time_ms = Some(start.elapsed().as_millis());
    }
    let code = if report.passed { 0 } else { 1 };
    let json = report.to_json();
    let mut stderr = String::new();
    if code != 0 {
        stderr = format!("{} of {} checks failed", report.failures(), report.checks.len());
    }
    let mut stdout = String::new();
    match &cli.out {
        Some(path) => {
            if let Err(e) = std::fs::write(path, json + "\n") {
                return Outcome { code: 2, stdout, stderr: format!("error: cannot write {}: {e}", path.display()), report: None };
            }
            if let Command::Hilbert { .. } = cli.command {
                stdout = format!("{}\n", report.result["value"]);
            }
        }
        None => {
            stdout = if let Command::Hilbert { .. } = cli.command {
                format!("{}\n", report.result["value"])
            } else {
                json + "\n"
            };
        }
    }
    Outcome { code, stdout, stderr, report: Some(report) }
}

/// The binary's entry point.
pub fn main() -> i32 {
    let args: Vec<String> = std::env::args().collect();
    let o = run(&args);
    print!("{}", o.stdout);
    if !o.stderr.is_empty() {
        eprintln!("{}", o.stderr.trim_end());
    }
    o.code
}

fn datum_input(text: &str, flip: bool) -> Result<(Vec<u8>, DatumSpec)> {
    let trimmed = text.trim();
    if trimmed.starts_with('{') {
        return Ok((trimmed.as_bytes().to_vec(), DatumSpec::from_json(trimmed)?));
    }
    if let Ok(d) = RootDatum::parse_type(trimmed) {
        let theta = if flip {
            PinnedAutomorphism::flip(&d).map_err(|e| Error::Parse { field: "datum".into(), message: e.to_string() })?
        } else {
            PinnedAutomorphism::identity(&d)
        };
        return Ok((trimmed.as_bytes().to_vec(), DatumSpec::from_parts(&d, &theta)));
    }
    let bytes = std::fs::read(trimmed)
        .map_err(|e| Error::Parse { field: "datum".into(), message: format!("not a type, JSON or readable file: {e}") })?;
    let s = String::from_utf8_lossy(&bytes).to_string();
    Ok((bytes, DatumSpec::from_json(&s)?))
}

fn restrict(text: &str, flip: bool, command: &[String], seed: u64) -> Result<RunReport> {
    let (bytes, spec) = datum_input(text, flip)?;
    let (d, theta) = spec.build()?;
    let rrs = RestrictedRootSystem::restrict(&d, &theta)?;
    let roots: Vec<Value> = (0..rrs.num_roots())
        .filter(|&k| rrs.is_positive(k))
        .map(|k| {
            let r = rrs.root(k);
            json!({
                "coeffs": r.coeffs,
                "type": r.kind,
                "preimage": r.preimage.iter().map(|&a| d.root(a).coeffs.clone()).collect::<Vec<_>>(),
                "gtheta_coroot": rrs.gtheta_coroot(k),
            })
        })
        .collect();
    let levi: Vec<Value> = (0..rrs.rank())
        .map(|o| {
            let b = rrs.simple(o);
            let l = rrs.levi_component(b)?;
            Ok(json!({ "beta": rrs.label(b), "kind": l.kind, "simple": l.simple.iter().map(|i| i + 1).collect::<Vec<_>>() }))
        })
        .collect::<Result<_>>()?;
    let result = json!({
        "datum": spec,
        "positive_roots": d.positive_roots().map(|k| d.root(k).coeffs.clone()).collect::<Vec<_>>(),
        "simple_orbits": rrs.simple_orbits().iter().map(|o| o.iter().map(|i| i + 1).collect::<Vec<_>>()).collect::<Vec<_>>(),
        "restricted_positive_roots": roots,
        "reduced": rrs.is_reduced(),
        "levi": levi,
        "restricted_weyl_order": rrs.restricted_weyl_group().len(),
    });
    let inputs = json!({ "datum": spec });
    let checks = Check::from_results("steinberg", &inputs, &rrs.steinberg_checks());
    Ok(RunReport::new(command.to_vec(), &bytes, seed, checks, vec![], result))
}

fn invariant(path: &PathBuf, command: &[String], seed: u64) -> Result<RunReport> {
    let bytes = std::fs::read(path)
        .map_err(|e| Error::Parse { field: "scenario".into(), message: format!("cannot read {}: {e}", path.display()) })?;
    let text = String::from_utf8(bytes.clone()).map_err(|_| Error::Parse { field: "scenario".into(), message: "not UTF-8".into() })?;
    let sc = Scenario::parse(&text)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let ev = evaluate(&sc, &mut rng)?;
    Ok(RunReport::new(command.to_vec(), &bytes, seed, ev.checks, ev.notes, Value::Object(ev.result)))
}

fn verify(which: SuiteArg, command: &[String], seed: u64) -> RunReport {
    let scale = Scale::full();
    let mut checks = Vec::new();
    let mut notes = Vec::new();
    let mut summary = serde_json::Map::new();
    for s in which.suites() {
        let out = run_suite(s, seed, &scale);
        let failed = out.checks.iter().filter(|c| !c.pass).count();
        summary.insert(s.name().into(), json!({ "checks": out.checks.len(), "failed": failed }));
        checks.extend(out.checks);
        notes.extend(out.notes);
    }
    let input = command.join(" ");
    RunReport::new(command.to_vec(), input.as_bytes(), seed, checks, notes, json!({ "suites": summary }))
}

fn parse_rational(s: &str, field: &str) -> Result<BigRational> {
    let q: BigRational =
        s.trim().parse().map_err(|_| Error::Parse { field: field.into(), message: format!("`{s}` is not a rational number") })?;
    if q == BigRational::from_integer(0.into()) {
        return Err(Error::Parse { field: field.into(), message: "must be nonzero".into() });
    }
    Ok(q)
}

fn hilbert(a: &str, b: &str, place: &str, command: &[String], seed: u64) -> Result<RunReport> {
    let (qa, qb) = (parse_rational(a, "a")?, parse_rational(b, "b")?);
    let v: Place = place.parse()?;
    let value = hilbert_symbol(&qa, &qb, v)?;
    let swapped = hilbert_symbol(&qb, &qa, v)?;
    let inputs = json!({ "a": qa.to_string(), "b": qb.to_string(), "place": v.to_string() });
    let checks = vec![Check::equal("symmetry", inputs.clone(), json!(value), json!(swapped))];
    let input = command.join(" ");
    Ok(RunReport::new(command.to_vec(), input.as_bytes(), seed, checks, vec![], json!({ "value": value, "inputs": inputs })))
}

fn factors(variant: &str, command: &[String], seed: u64) -> Result<RunReport> {
    let v: Variant = variant
        .parse()
        .map_err(|_| Error::Parse { field: "variant".into(), message: format!("unknown variant `{variant}`; expected one of {:?}", Variant::ALL.map(|v| v.name())) })?;
    let expr = build_factor_expression(v);
    let invariant = chi_invariance_check(&expr);
    let inputs = json!({ "variant": v.name() });
    let mut checks = vec![Check::equal("chi_invariance_verdict", inputs.clone(), json!(expected_chi_invariance(v)), json!(invariant))];
    if v == Variant::DeltaD {
        checks.push(Check::equal(
            "two_definitions_agree",
            inputs.clone(),
            json!(expr),
            json!(delta_d_via_inverse_chi().invert_chi_data()),
        ));
    }
    let result = json!({
        "variant": v.name(),
        "expression": expr.to_string(),
        "exponents": expr,
        "chi_invariant": invariant,
    });
    let input = command.join(" ");
    Ok(RunReport::new(command.to_vec(), input.as_bytes(), seed, checks, vec![], result))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn args(s: &str) -> Vec<String> {
        std::iter::once("splitinv".to_string()).chain(s.split_whitespace().map(String::from)).collect()
    }

    #[test]
    fn hilbert_prints_bare_value() {
        let o = run(&args("hilbert 2 5 --place 5"));
        assert_eq!((o.code, o.stdout.as_str()), (0, "-1\n"));
        let o = run(&args("hilbert -1 -1 --place real"));
        assert_eq!(o.stdout, "-1\n");
        let o = run(&args("hilbert 0 5 --place 5"));
        assert_eq!(o.code, 2);
        assert!(o.stderr.contains("`a`"));
        let o = run(&args("hilbert 2 5 --place 6"));
        assert!(o.code == 2 && o.stderr.contains("`place`"), "{}", o.stderr);
    }

    #[test]
    fn factor_verdicts() {
        let o = run(&args("factors --variant delta_ks"));
        assert_eq!(o.code, 0);
        assert_eq!(o.report.unwrap().result["chi_invariant"], json!(false));
        let o = run(&args("factors --variant delta_prime"));
        assert_eq!(o.report.unwrap().result["chi_invariant"], json!(true));
        let o = run(&args("factors --variant delta_x"));
        assert!(o.code == 2 && o.stderr.contains("`variant`"));
    }

    #[test]
    fn restrict_accepts_types_and_json() {
        let o = run(&args("restrict A4 --flip"));
        assert_eq!(o.code, 0, "{}", o.stderr);
        let r = o.report.unwrap();
        assert_eq!(r.result["reduced"], json!(false));
        let o = run(&args(r#"restrict {"type":[["A",3]],"theta":{"perm":[3,2,1]}}"#));
        assert_eq!(o.report.unwrap().result["reduced"], json!(true));
        assert_eq!(run(&args("restrict X9")).code, 2);
    }
}
