//! `tracelattice` command-line front end.
//!
//! Every command prints one JSON report on stdout. Exit codes: 0 success,
//! 1 error, 2 the queried verdict is false, 3 search budget exceeded.

use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{anyhow, bail, Context};
use clap::{Parser, Subcommand};
use num_bigint::BigInt;
use num_rational::BigRational;
use serde::Serialize;
use serde_json::{json, Value};

use tracelattice::bhargava::{self, BinaryCubicForm, GroupElement, TernaryPair};
use tracelattice::casimir::{casimir_matrix, real_embeddings};
use tracelattice::exact::{factorize, is_fundamental_discriminant, IntMatrix, RatMatrix};
use tracelattice::fixtures::{Fixture, FixtureStore};
use tracelattice::isometry::{automorphism_group, find_isometry, shape_compare, SearchMode, DEFAULT_BUDGET};
use tracelattice::lifting::{lift_all, restriction_injectivity_check, survey_pairs, theorem_report};
use tracelattice::numberfield::check_trace_surjectivity;
use tracelattice::sublattice::{disc_relations_check, lattice, LatticeKind};

const SCHEMA: &str = "1";

#[derive(Parser, Debug)]
#[command(name = "tracelattice", version, about = "Integral trace forms, trace-zero lattices and their isometries")]
struct Cli {
    /// Fixture directory.
    #[arg(long, global = true, env = "TRACELATTICE_FIXTURES", default_value = "fixtures")]
    fixtures: PathBuf,
    /// Suppress the human summary on stderr.
    #[arg(long, global = true)]
    json_only: bool,
    /// Leave the timing field out of the report.
    #[arg(long, global = true)]
    no_timing: bool,
    /// Node limit for isometry searches.
    #[arg(long, global = true, default_value_t = DEFAULT_BUDGET)]
    budget: u64,
    /// Decimal digits for real embeddings.
    #[arg(long, global = true, default_value_t = tracelattice::casimir::DEFAULT_PRECISION)]
    precision: u32,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Invariants of one fixture field.
    Field { label: String },
    /// Basis and Gram matrix of a full, zero or perp lattice.
    Lattice { label: String, kind: LatticeKind },
    /// Automorphism group order and generators.
    Aut { label: String, kind: LatticeKind },
    /// Isometry between the lattices of two fields.
    Iso {
        l1: String,
        l2: String,
        kind: LatticeKind,
        /// Enumerate every isometry.
        #[arg(long)]
        all: bool,
    },
    /// Try to extend every zero or perp isometry `l1 → l2` to the full lattices.
    Lift { l1: String, l2: String, kind: LatticeKind },
    /// Shape comparison.
    Shape { l1: String, l2: String },
    /// Conditions of the main equivalence theorem for a pair of fields.
    Theorem { l1: String, l2: String },
    /// Pairs with a zero-lattice isometry that does not lift.
    Survey { dir: Option<PathBuf> },
    /// Restriction of full automorphisms to the sublattices.
    Restrict { label: String },
    /// Isolating intervals for the real embeddings.
    Embeddings { label: String },
    /// Casimir matrix of a map given as a JSON matrix file.
    Casimir { l1: String, l2: String, mapfile: PathBuf },
    /// Binary cubic and ternary-pair formulas.
    Bhargava {
        #[command(subcommand)]
        sub: BhargavaCmd,
    },
}

#[derive(Subcommand, Debug)]
enum BhargavaCmd {
    /// Discriminant of a x³ + b x²y + c xy² + d y³.
    Disc {
        #[arg(allow_negative_numbers = true, num_args = 4)]
        coeffs: Vec<BigInt>,
    },
    /// Delone-Faddeev ring of a binary cubic.
    Ring {
        #[arg(allow_negative_numbers = true, num_args = 4)]
        coeffs: Vec<BigInt>,
    },
    /// Resolvent 4·det(Ax − By); PAIR is JSON or @file.
    Resolvent { pair: String },
    /// The matrix C of structure constants.
    C { pair: String },
    /// Covariant Gram matrix 3C + b·2B − c·2A.
    Covariant { pair: String },
    /// Associativity of the formal products.
    Assoc { pair: String },
    /// Action of (g2, g3); G is JSON {"g2": [[..]], "g3": [[..]]} or @file.
    Act { g: String, pair: String },
}

#[derive(Serialize)]
struct Report {
    schema: &'static str,
    command: Vec<String>,
    inputs: Value,
    #[serde(skip_serializing_if = "Option::is_none")]
    results: Option<Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    verdict: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    error: Option<Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    timing_ms: Option<f64>,
}

struct Outcome {
    inputs: Value,
    results: Value,
    verdict: Option<bool>,
    summary: String,
}

fn out(inputs: Value, results: impl Serialize, verdict: Option<bool>, summary: String) -> anyhow::Result<Outcome> {
    Ok(Outcome { inputs, results: serde_json::to_value(results)?, verdict, summary })
}

fn read_json(arg: &str) -> anyhow::Result<Value> {
    let text = match arg.strip_prefix('@') {
        Some(p) => std::fs::read_to_string(p).with_context(|| format!("reading {p}"))?,
        None => arg.to_string(),
    };
    serde_json::from_str(&text).with_context(|| format!("parsing JSON from {arg}"))
}

fn parse_pair(arg: &str) -> anyhow::Result<TernaryPair> {
    let p: TernaryPair = serde_json::from_value(read_json(arg)?)?;
    p.validate()?;
    Ok(p)
}

fn json_int(v: &Value) -> anyhow::Result<BigInt> {
    match v {
        Value::Number(n) => n.as_i64().map(BigInt::from).ok_or_else(|| anyhow!("integer expected, got {n}")),
        Value::String(s) => s.trim().parse().map_err(|_| anyhow!("integer expected, got {s:?}")),
        other => bail!("integer expected, got {other}"),
    }
}

fn json_rational(v: &Value) -> anyhow::Result<BigRational> {
    match v {
        Value::String(s) => s.trim().parse().map_err(|_| anyhow!("rational expected, got {s:?}")),
        _ => Ok(BigRational::from_integer(json_int(v)?)),
    }
}

fn json_rows<T>(v: &Value, f: impl Fn(&Value) -> anyhow::Result<T>) -> anyhow::Result<Vec<Vec<T>>> {
    v.as_array()
        .ok_or_else(|| anyhow!("matrix must be an array of rows"))?
        .iter()
        .map(|r| r.as_array().ok_or_else(|| anyhow!("row must be an array"))?.iter().map(&f).collect())
        .collect()
}

fn parse_group(arg: &str) -> anyhow::Result<GroupElement> {
    let v = read_json(arg)?;
    let g2 = IntMatrix::from_rows(json_rows(&v["g2"], json_int)?)?;
    let g3 = IntMatrix::from_rows(json_rows(&v["g3"], json_int)?)?;
    Ok(GroupElement::new(g2, g3)?)
}

fn parse_map(path: &Path) -> anyhow::Result<RatMatrix> {
    let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let v: Value = serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))?;
    let m = if v.is_object() { &v["map"] } else { &v };
    Ok(RatMatrix::from_rows(json_rows(m, json_rational)?)?)
}

fn form(coeffs: &[BigInt]) -> BinaryCubicForm {
    BinaryCubicForm { coeffs: coeffs.to_vec() }
}

fn field_report(f: &Fixture) -> anyhow::Result<Value> {
    let k = &f.field;
    let factors: Vec<Value> = factorize(k.disc())?.iter().map(|(p, e)| json!([p.to_string(), e])).collect();
    let surj = check_trace_surjectivity(k, f.ramification.as_ref())?;
    Ok(json!({
        "label": k.label(),
        "degree": k.degree(),
        "poly": k.poly().iter().map(|c| c.to_string()).collect::<Vec<_>>(),
        "integral_basis": k.basis(),
        "disc": k.disc().to_string(),
        "disc_factors": factors,
        "fundamental": is_fundamental_discriminant(k.disc())?,
        "totally_real": k.is_totally_real(),
        "trace_image": k.trace_image().to_string(),
        "basis_traces": k.basis_traces().iter().map(|c| c.to_string()).collect::<Vec<_>>(),
        "gram": k.gram_trace(),
        "trace_surjectivity": surj,
        "disc_relations": disc_relations_check(k)?,
        "iso_class": f.iso_class,
        "galois": f.galois,
    }))
}

fn run(cli: &Cli) -> anyhow::Result<Outcome> {
    let load = || FixtureStore::load_dir(&cli.fixtures);
    let budget = cli.budget;
    match &cli.cmd {
        Cmd::Field { label } => {
            let s = load()?;
            let f = s.get(label)?;
            let r = field_report(f)?;
            let summary = format!("{label}: degree {}, disc {}, k = {}", f.field.degree(), f.field.disc(), f.field.trace_image());
            out(json!({ "label": label }), r, None, summary)
        }
        Cmd::Lattice { label, kind } => {
            let s = load()?;
            let l = lattice(&s.get(label)?.field, *kind)?;
            let det = l.gram.det_exact()?;
            let summary = format!("{label} {kind}: rank {}, det {det}", l.rank());
            out(json!({ "label": label, "kind": kind }), json!({ "lattice": l, "det": det.to_string() }), None, summary)
        }
        Cmd::Aut { label, kind } => {
            let s = load()?;
            let l = lattice(&s.get(label)?.field, *kind)?;
            let a = automorphism_group(&l.gram, budget)?;
            let summary = format!("#Aut({label}, {kind}) = {}", a.order);
            out(json!({ "label": label, "kind": kind }), a, None, summary)
        }
        Cmd::Iso { l1, l2, kind, all } => {
            let s = load()?;
            let g1 = lattice(&s.get(l1)?.field, *kind)?.gram;
            let g2 = lattice(&s.get(l2)?.field, *kind)?.gram;
            let mode = if *all { SearchMode::All } else { SearchMode::First };
            let maps = find_isometry(&g1, &g2, mode, budget)?;
            let found = !maps.is_empty();
            let summary = match (found, all) {
                (false, _) => format!("{l1} and {l2} {kind} lattices: not isometric"),
                (true, true) => format!("{l1} and {l2} {kind} lattices: {} isometries", maps.len()),
                (true, false) => format!("{l1} and {l2} {kind} lattices: isometric"),
            };
            let inputs = json!({ "l1": l1, "l2": l2, "kind": kind, "all": all });
            out(inputs, json!({ "isometric": found, "count": maps.len(), "maps": maps }), Some(found), summary)
        }
        Cmd::Lift { l1, l2, kind } => {
            if *kind == LatticeKind::Full {
                bail!("lift applies to zero and perp lattices");
            }
            let s = load()?;
            let (k, l) = (&s.get(l1)?.field, &s.get(l2)?.field);
            let (sum, reports) = lift_all(k, l, *kind, budget)?;
            let ok = sum.total > 0 && sum.lifted == sum.total;
            let summary = format!("{l1} -> {l2} {kind}: {} of {} isometries lift, methods agree on {}", sum.lifted, sum.total, sum.agree);
            out(json!({ "l1": l1, "l2": l2, "kind": kind }), json!({ "summary": sum, "reports": reports }), Some(ok), summary)
        }
        Cmd::Shape { l1, l2 } => {
            let s = load()?;
            let v = shape_compare(&s.get(l1)?.field, &s.get(l2)?.field, budget)?;
            let summary = format!("shapes of {l1} and {l2}: {}", if v.equal { "equal" } else { "different" });
            let eq = v.equal;
            out(json!({ "l1": l1, "l2": l2 }), v, Some(eq), summary)
        }
        Cmd::Theorem { l1, l2 } => {
            let s = load()?;
            let r = theorem_report(s.get(l1)?, s.get(l2)?, budget)?;
            let ok = r.violations.is_empty();
            let summary = format!(
                "{l1} vs {l2}: hypotheses {}, perp {}, zero {}, trace {}, shape {}, violations {}",
                if r.asserted { "hold" } else { "not asserted" },
                r.perp_isometric,
                r.zero_isometric,
                r.trace_isometric,
                r.shape_condition,
                r.violations.len()
            );
            out(json!({ "l1": l1, "l2": l2 }), r, Some(ok), summary)
        }
        Cmd::Survey { dir } => {
            let d = dir.clone().unwrap_or_else(|| cli.fixtures.clone());
            let s = FixtureStore::load_dir(&d)?;
            let found = survey_pairs(&s, budget)?;
            let summary = format!("{} fixtures, {} findings", s.len(), found.len());
            out(json!({ "dir": d.display().to_string() }), json!({ "findings": found }), None, summary)
        }
        Cmd::Restrict { label } => {
            let s = load()?;
            let r = restriction_injectivity_check(&s.get(label)?.field, budget)?;
            let summary = format!("{label}: #Aut full {}, perp {}, zero {}", r.aut_full, r.aut_perp, r.aut_zero);
            let ok = r.consistent;
            out(json!({ "label": label }), r, Some(ok), summary)
        }
        Cmd::Embeddings { label } => {
            let s = load()?;
            let e = real_embeddings(&s.get(label)?.field, cli.precision)?;
            let roots: Vec<Value> = e.roots.iter().map(|(a, b)| json!([a.to_string(), b.to_string()])).collect();
            let summary = format!("{label}: {} real embeddings", e.roots.len());
            out(json!({ "label": label, "precision": cli.precision }), json!({ "embeddings": *e, "intervals": roots }), None, summary)
        }
        Cmd::Casimir { l1, l2, mapfile } => {
            let s = load()?;
            let phi = parse_map(mapfile)?;
            let m = casimir_matrix(&s.get(l1)?.field, &s.get(l2)?.field, &phi, cli.precision)?;
            let summary = format!("defect {:.3e}, {}", m.defect, if m.orthogonal { "orthogonal" } else { "not orthogonal" });
            let ok = m.orthogonal;
            out(json!({ "l1": l1, "l2": l2, "map": phi }), m, Some(ok), summary)
        }
        Cmd::Bhargava { sub } => bhargava_cmd(sub),
    }
}

fn bhargava_cmd(sub: &BhargavaCmd) -> anyhow::Result<Outcome> {
    match sub {
        BhargavaCmd::Disc { coeffs } => {
            let d = bhargava::cubic_disc(&form(coeffs));
            out(json!({ "form": form(coeffs) }), json!({ "disc": d.to_string() }), None, format!("disc {d}"))
        }
        BhargavaCmd::Ring { coeffs } => {
            let r = bhargava::df_cubic_ring(&form(coeffs))?;
            let det = r.trace_gram().det_exact()?;
            out(json!({ "form": form(coeffs) }), json!({ "ring": r, "trace_gram": r.trace_gram(), "trace_gram_det": det.to_string() }), None, format!("trace Gram det {det}"))
        }
        BhargavaCmd::Resolvent { pair } => {
            let p = parse_pair(pair)?;
            let f = bhargava::resolvent_form(&p)?;
            let d = bhargava::cubic_disc(&f);
            let summary = format!("resolvent {:?}, disc {d}", f.coeffs.iter().map(|c| c.to_string()).collect::<Vec<_>>());
            out(json!({ "pair": p }), json!({ "form": f, "disc": d.to_string() }), None, summary)
        }
        BhargavaCmd::C { pair } => {
            let p = parse_pair(pair)?;
            let c = bhargava::structure_constants_c(&p)?;
            out(json!({ "pair": p }), json!({ "c": c }), None, "structure constants computed".into())
        }
        BhargavaCmd::Covariant { pair } => {
            let p = parse_pair(pair)?;
            let g = bhargava::covariant_gram(&p)?;
            let det = g.det_exact()?;
            let disc = bhargava::cubic_disc(&bhargava::resolvent_form(&p)?);
            let summary = format!("covariant det {det}, 16·disc {}", &disc * 16);
            out(json!({ "pair": p }), json!({ "gram": g, "det": det.to_string(), "resolvent_disc": disc.to_string() }), None, summary)
        }
        BhargavaCmd::Assoc { pair } => {
            let p = parse_pair(pair)?;
            let ok = bhargava::associativity_check(&p)?;
            out(json!({ "pair": p }), json!({ "associative": ok }), Some(ok), format!("associativity {ok}"))
        }
        BhargavaCmd::Act { g, pair } => {
            let (g, p) = (parse_group(g)?, parse_pair(pair)?);
            let q = bhargava::gz_act(&g, &p)?;
            out(json!({ "g": g, "pair": p }), json!({ "pair": q }), None, "action applied".into())
        }
    }
}

fn exit_code_for(e: &anyhow::Error) -> u8 {
    match e.downcast_ref::<tracelattice::Error>() {
        Some(tracelattice::Error::BudgetExceeded(_)) => 3,
        _ => 1,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let command: Vec<String> = std::env::args().skip(1).collect();
    let start = Instant::now();
    let res = run(&cli);
    let timing_ms = (!cli.no_timing).then(|| start.elapsed().as_secs_f64() * 1e3);
    let (report, code) = match res {
        Ok(o) => {
            if !cli.json_only {
                eprintln!("{}", o.summary);
            }
            let code = if o.verdict == Some(false) { 2 } else { 0 };
            (Report { schema: SCHEMA, command, inputs: o.inputs, results: Some(o.results), verdict: o.verdict, error: None, timing_ms }, code)
        }
        Err(e) => {
            if !cli.json_only {
                eprintln!("error: {e:#}");
            }
            let code = exit_code_for(&e);
            let err = json!({ "message": format!("{e:#}"), "exit_code": code });
            (Report { schema: SCHEMA, command, inputs: Value::Null, results: None, verdict: None, error: Some(err), timing_ms }, code)
        }
    };
    let text = serde_json::to_string_pretty(&report).expect("report serializes");
    // a closed pipe downstream is not an error of ours
    let _ = writeln!(std::io::stdout().lock(), "{text}");
    ExitCode::from(code)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn json_scalars() {
        assert_eq!(json_int(&json!(-7)).unwrap(), BigInt::from(-7));
        assert_eq!(json_int(&json!("123456789012345678901234567890")).unwrap().to_string(), "123456789012345678901234567890");
        assert!(json_int(&json!(1.5)).is_err());
        assert_eq!(json_rational(&json!("-3/6")).unwrap().to_string(), "-1/2");
        assert_eq!(json_rational(&json!(4)).unwrap().to_string(), "4");
    }

    #[test]
    fn matrices_and_pairs() {
        let m = json_rows(&json!([[1, "2"], [3, 4]]), json_int).unwrap();
        assert_eq!(m[0][1], BigInt::from(2));
        assert!(json_rows(&json!([1, 2]), json_int).is_err());
        assert!(parse_pair(r#"{"a":[1,0,0,1,0,1],"b":[0,0,0,1,0,-1]}"#).is_ok());
        assert!(parse_pair(r#"{"a":[1,0,0],"b":[0,0,0,1,0,-1]}"#).is_err());
        assert!(parse_group(r#"{"g2":[[2,0],[0,1]],"g3":[[1,0,0],[0,1,0],[0,0,1]]}"#).is_err());
    }

    #[test]
    fn cli_definition_is_consistent() {
        use clap::CommandFactory;
        Cli::command().debug_assert();
    }
}
