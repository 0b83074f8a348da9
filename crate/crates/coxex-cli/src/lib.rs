//! The `coxex` command line. `run_with` takes the argument vector and output
//! streams so the binary and the integration tests share one entry point.
//!
//! Exit codes: 0 success or verdict true, 1 verdict false, 2 usage error,
//! 3 internal invariant failure.

use std::fs;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_traits::Zero;
use serde_json::{json, Value};

use coxex::checks::{
    coxeter_strong_exchange, is_coxeter_matroid, is_delta_matroid, is_even_delta_matroid, is_matroid,
    is_strong_even_delta, is_strong_matroid_a, is_wenzel, strong_delta_violation, SetSystemReport, VertexSubset,
};
use coxex::combinatorics::{Parity, SetSystemJson, SubsetMask};
use coxex::equations::{
    gen_cross_c, gen_cross_d, gen_e6, gen_e7, gen_type_a, gen_type_b, gen_type_d, EquationFamily, FamilyTag,
};
use coxex::polytopes::{adjacency_profile, antipodes_321, build, cross_facets, AmbientPolytope, PolytopeName};
use coxex::quadrics::{cross_d_quadric, embed_d_family, plucker_family};
use coxex::realization::{
    as_point, coordinates_json, cross_vector_d, plucker_vector, random_matrix, random_skew, rng_from_seed,
    spinor_vector, support, support_system, RationalMatrix,
};
use coxex::tropical::{satisfies_all, BoolAssignment, VariableId};
use coxex::verify::{run_suite, sample_family, VerifyConfig};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FALSE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_INTERNAL: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "coxex", version, about = "Strong exchange, tropical quadrics and Coxeter matroids")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print the tropical equations of a family.
    GenEquations(GenArgs),
    /// Decide the exchange property and tropical satisfaction for an input set.
    Check(CheckArgs),
    /// Describe an ambient polytope.
    Polytope(PolytopeArgs),
    /// Produce a seeded random realization and check it.
    Realize(RealizeArgs),
    /// Run verification suites.
    Verify(VerifyArgs),
    /// Compare exchange and tropical satisfaction on seeded random inputs.
    Sample(SampleArgs),
}

#[derive(Args, Debug)]
struct FamilyArgs {
    /// A, B, D (both parities), D+, D-, D-cross, C-cross, E6, E7.
    #[arg(long)]
    family: String,
    #[arg(long)]
    n: Option<u32>,
    #[arg(long)]
    k: Option<u32>,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Format {
    Json,
}

#[derive(Args, Debug)]
struct GenArgs {
    #[command(flatten)]
    family: FamilyArgs,
    /// Write `<family>.json` here instead of printing the equations.
    #[arg(long)]
    out_dir: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
}

#[derive(Args, Debug)]
struct CheckArgs {
    #[command(flatten)]
    family: FamilyArgs,
    /// `{"n": .., "sets": [[..], ..]}` for A, B, D; a list of vertex labels otherwise.
    #[arg(long)]
    input: PathBuf,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
}

#[derive(Args, Debug)]
struct PolytopeArgs {
    /// 2_21, 3_21, cube(n), demicube(n,+), hypersimplex(n,k), cross_D(n), cross_C(n).
    #[arg(long)]
    name: String,
    /// Include the distance profile, cross facets and antipodes.
    #[arg(long)]
    report: bool,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum RealizeType {
    #[value(name = "A")]
    A,
    #[value(name = "D")]
    D,
    #[value(name = "D-cross")]
    DCross,
}

#[derive(Args, Debug)]
struct RealizeArgs {
    #[arg(long = "type", value_enum)]
    kind: RealizeType,
    #[arg(long)]
    n: u32,
    #[arg(long)]
    k: Option<u32>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    #[arg(long, default_value = "all")]
    suite: String,
    #[arg(long, default_value_t = 6)]
    max_n: u32,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 100_000)]
    trials: u64,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
}

#[derive(Args, Debug)]
struct SampleArgs {
    #[command(flatten)]
    family: FamilyArgs,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 100_000)]
    trials: u64,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
}

#[derive(Debug)]
enum Failure {
    Usage(String),
    Internal(String),
}

impl From<coxex::Error> for Failure {
    fn from(e: coxex::Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

type Outcome = Result<(Value, bool), Failure>;

/// Parses `args` (program name first), runs the command, and returns the exit code.
pub fn run_with(args: &[String], out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            if code == EXIT_OK {
                let _ = write!(out, "{text}");
            } else {
                let _ = write!(err, "{text}");
            }
            return code;
        }
    };
    let pool = match thread_pool() {
        Ok(p) => p,
        Err(msg) => {
            let _ = writeln!(err, "error: {msg}");
            return EXIT_USAGE;
        }
    };
    let mut diagnostics = String::new();
    let result = pool.install(|| dispatch(cli.command, &mut diagnostics));
    let _ = write!(err, "{diagnostics}");
    match result {
        Ok((value, verdict)) => {
            let text = serde_json::to_string_pretty(&value).expect("serializable");
            if writeln!(out, "{text}").is_err() {
                return EXIT_INTERNAL;
            }
            if verdict {
                EXIT_OK
            } else {
                EXIT_FALSE
            }
        }
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_USAGE
        }
        Err(Failure::Internal(msg)) => {
            let _ = writeln!(err, "internal error: {msg}");
            EXIT_INTERNAL
        }
    }
}

/// A worker pool capped by COXEX_THREADS when it is set.
fn thread_pool() -> Result<rayon::ThreadPool, String> {
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Ok(v) = std::env::var("COXEX_THREADS") {
        let n: usize = v
            .trim()
            .parse()
            .ok()
            .filter(|&n| n > 0)
            .ok_or_else(|| format!("COXEX_THREADS must be a positive integer, got {v:?}"))?;
        builder = builder.num_threads(n);
    }
    builder.build().map_err(|e| e.to_string())
}

fn dispatch(cmd: Command, diagnostics: &mut String) -> Outcome {
    match cmd {
        Command::GenEquations(a) => gen_equations(a),
        Command::Check(a) => check(a),
        Command::Polytope(a) => polytope(a),
        Command::Realize(a) => realize(a),
        Command::Verify(a) => verify(a, diagnostics),
        Command::Sample(a) => sample(a),
    }
}

/// Parsed `--family`; plain `D` stands for both parities.
#[derive(Clone, Copy, Debug)]
enum Family {
    One(FamilyTag),
    DBoth(u32),
}

fn parse_family(f: &FamilyArgs) -> Result<Family, Failure> {
    let need_n = || f.n.ok_or_else(|| Failure::Usage(format!("--family {} needs --n", f.family)));
    let tag = match f.family.as_str() {
        "A" => {
            let k = f.k.ok_or_else(|| Failure::Usage("--family A needs --k".into()))?;
            FamilyTag::A { n: need_n()?, k }
        }
        "B" => FamilyTag::B(need_n()?),
        "D" => return Ok(Family::DBoth(need_n()?)),
        "D+" => FamilyTag::D(need_n()?, Parity::Even),
        "D-" => FamilyTag::D(need_n()?, Parity::Odd),
        "D-cross" => FamilyTag::DCross(need_n()?),
        "C-cross" => FamilyTag::CCross(need_n()?),
        "E6" => FamilyTag::E6,
        "E7" => FamilyTag::E7,
        other => {
            return Err(Failure::Usage(format!(
                "unknown family {other:?}; expected A, B, D, D+, D-, D-cross, C-cross, E6 or E7"
            )))
        }
    };
    if f.k.is_some() && !matches!(tag, FamilyTag::A { .. }) {
        return Err(Failure::Usage("--k only applies to --family A".into()));
    }
    Ok(Family::One(tag))
}

fn generate(tag: FamilyTag) -> Result<EquationFamily, Failure> {
    Ok(match tag {
        FamilyTag::A { n, k } => gen_type_a(n, k)?,
        FamilyTag::B(n) => gen_type_b(n)?,
        FamilyTag::D(n, p) => gen_type_d(n)?.for_parity(p).clone(),
        FamilyTag::DCross(n) => gen_cross_d(n)?,
        FamilyTag::CCross(n) => gen_cross_c(n)?,
        FamilyTag::E6 => gen_e6(&build(PolytopeName::E6_221)?)?,
        FamilyTag::E7 => gen_e7(&build(PolytopeName::E7_321)?)?,
    })
}

fn polytope_of(tag: FamilyTag) -> Option<PolytopeName> {
    match tag {
        FamilyTag::DCross(n) => Some(PolytopeName::CrossD(n)),
        FamilyTag::CCross(n) => Some(PolytopeName::CrossC(n)),
        FamilyTag::E6 => Some(PolytopeName::E6_221),
        FamilyTag::E7 => Some(PolytopeName::E7_321),
        _ => None,
    }
}

fn gen_equations(a: GenArgs) -> Outcome {
    let tags = match parse_family(&a.family)? {
        Family::One(t) => vec![t],
        Family::DBoth(n) => vec![FamilyTag::D(n, Parity::Even), FamilyTag::D(n, Parity::Odd)],
    };
    let mut equations = Vec::new();
    for t in tags {
        equations.extend(generate(t)?.to_json());
    }
    let value = serde_json::to_value(&equations).map_err(|e| Failure::Internal(e.to_string()))?;
    match a.out_dir {
        None => Ok((value, true)),
        Some(dir) => {
            let name = match a.family.n {
                Some(n) => format!("{}_{n}.json", a.family.family),
                None => format!("{}.json", a.family.family),
            };
            let path = dir.join(name);
            fs::create_dir_all(&dir).map_err(|e| Failure::Usage(format!("{}: {e}", dir.display())))?;
            let text = serde_json::to_string_pretty(&value).expect("serializable");
            fs::write(&path, text).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
            Ok((json!({ "written": path.display().to_string(), "equations": equations.len() }), true))
        }
    }
}

fn read_input(path: &PathBuf) -> Result<Value, Failure> {
    let text = fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

fn invariant(ok: bool, what: &str) -> Result<(), Failure> {
    if ok {
        Ok(())
    } else {
        Err(Failure::Internal(format!("exchange property and tropical satisfaction disagree ({what})")))
    }
}

fn check(a: CheckArgs) -> Outcome {
    let family = parse_family(&a.family)?;
    let input = read_input(&a.input)?;
    let tag = match family {
        Family::One(t) if polytope_of(t).is_some() => return check_vertices(t, &input),
        Family::One(t) => Some(t),
        Family::DBoth(_) => None,
    };
    let parsed: SetSystemJson = serde_json::from_value(input)
        .map_err(|e| Failure::Usage(format!("expected {{\"n\": .., \"sets\": [..]}}: {e}")))?;
    let m = parsed.into_system()?;
    let n = a.family.n.expect("set families carry n");
    if m.n() != n {
        return Err(Failure::Usage(format!("input has n = {} but --n {n}", m.n())));
    }
    let tag = tag.unwrap_or_else(|| {
        let p = m.members().first().map_or(Parity::Even, |&s| Parity::of(s));
        FamilyTag::D(n, p)
    });
    let fam = generate(tag)?;
    let (tropical, failing) = satisfies_all(&BoolAssignment::from_set_system(&m), fam.quadrics());
    let mut report = SetSystemReport { tropical, failing_equation: failing, ..Default::default() };
    let verdict = match tag {
        FamilyTag::A { k, .. } => {
            let mat = is_matroid(&m, k)?;
            report.matroid = Some(mat);
            report.strong = m.is_empty() || is_strong_matroid_a(&m, k)?;
            invariant(mat == report.strong && mat == tropical, "type A")?;
            mat
        }
        FamilyTag::B(_) => {
            report.delta = Some(is_delta_matroid(&m)?);
            let violation = strong_delta_violation(&m)?;
            report.strong = violation.is_none();
            report.witness_pair = violation.map(|(x, y)| (x.to_vec(), y.to_vec()));
            invariant(report.strong == tropical, "type B")?;
            report.strong
        }
        FamilyTag::D(..) => {
            let even = m.is_even();
            report.even = Some(even);
            let delta = is_delta_matroid(&m)?;
            report.delta = Some(delta);
            if even {
                report.wenzel = Some(is_wenzel(&m)?);
                report.strong = is_strong_even_delta(&m)?;
                let d = is_even_delta_matroid(&m)?;
                invariant(d == report.strong && Some(d) == report.wenzel && d == tropical, "type D")?;
                d
            } else {
                false
            }
        }
        _ => unreachable!("polytope families handled above"),
    };
    let value = json!({
        "family": tag.to_string(),
        "members": m.len(),
        "verdict": verdict,
        "report": serde_json::to_value(&report).expect("serializable"),
    });
    Ok((value, verdict))
}

fn vertex_labels(input: &Value) -> Result<Vec<VariableId>, Failure> {
    let list = match input {
        Value::Object(o) => o.get("vertices").cloned().unwrap_or(Value::Null),
        other => other.clone(),
    };
    serde_json::from_value(list)
        .map_err(|e| Failure::Usage(format!("expected a list of vertex labels or {{\"vertices\": [..]}}: {e}")))
}

fn check_vertices(tag: FamilyTag, input: &Value) -> Outcome {
    let p = build(polytope_of(tag).expect("polytope family"))?;
    let labels = vertex_labels(input)?;
    let vs = VertexSubset::from_labels(&p, &labels)?;
    let fam = generate(tag)?;
    let nu = BoolAssignment::new(vs.labels());
    let (tropical, failing) = satisfies_all(&nu, fam.quadrics());
    let violation = vs.strong_exchange_violation();
    let strong = violation.is_none();
    let coxeter = matches!(tag, FamilyTag::DCross(_) | FamilyTag::CCross(_)).then(|| is_coxeter_matroid(&vs));
    match tag {
        FamilyTag::CCross(_) => invariant(strong && tropical, "type C cross polytope")?,
        _ => invariant(strong == tropical, &tag.to_string())?,
    }
    debug_assert_eq!(strong, coxeter_strong_exchange(&vs));
    let mut report = json!({
        "strong": strong,
        "tropical": tropical,
        "failing_equation": failing,
        "witness_pair": violation.map(|(u, v)| [label_value(p.label(u)), label_value(p.label(v))]),
    });
    if let Some(c) = coxeter {
        report["coxeter_matroid"] = json!(c);
    }
    let value = json!({ "family": tag.to_string(), "members": vs.len(), "verdict": strong, "report": report });
    Ok((value, strong))
}

fn label_value(v: VariableId) -> Value {
    serde_json::to_value(v).expect("serializable")
}

fn label_strings(p: &AmbientPolytope, idx: impl IntoIterator<Item = usize>) -> Vec<Value> {
    idx.into_iter().map(|i| label_value(p.label(i))).collect()
}

fn polytope(a: PolytopeArgs) -> Outcome {
    let name: PolytopeName = a.name.parse()?;
    let p = build(name)?;
    let mut value = json!({
        "name": name.to_string(),
        "vertices": p.len(),
        "dimension": p.vertex(0).dim(),
        "reflecting_hyperplanes": p.hyperplane_count(),
        "labels": label_strings(&p, 0..p.len()),
    });
    if a.report {
        value["reflection_closed"] = json!(p.is_reflection_closed());
        if matches!(name, PolytopeName::E6_221 | PolytopeName::E7_321) {
            let prof = adjacency_profile(&p)?;
            let facets = cross_facets(&p)?;
            value["distance_profile"] = json!(prof.counts);
            value["regularity"] = json!(prof.counts[0]);
            value["inner_products"] = json!(prof.inner_products);
            value["facet_count"] = json!(facets.len());
            value["facets"] = facets
                .iter()
                .map(|f| {
                    let antipodes: Vec<[Value; 2]> = f
                        .antipodes
                        .iter()
                        .map(|&(u, v)| [label_value(p.label(u)), label_value(p.label(v))])
                        .collect();
                    let mut o = json!({ "vertices": label_strings(&p, f.vertices.iter().copied()), "antipodes": antipodes });
                    if let Some(apex) = f.apex {
                        o["apex"] = json!(label_value(p.label(apex)));
                    }
                    o
                })
                .collect();
            if name == PolytopeName::E7_321 {
                let anti: Vec<[Value; 2]> = antipodes_321(&p)?
                    .into_iter()
                    .map(|(u, v)| [label_value(p.label(u)), label_value(p.label(v))])
                    .collect();
                value["antipodes"] = json!(anti);
            }
        }
    }
    Ok((value, true))
}

fn matrix_json(a: &RationalMatrix) -> Value {
    json!((0..a.rows()).map(|r| (0..a.cols()).map(|c| a.get(r, c).to_string()).collect::<Vec<_>>()).collect::<Vec<_>>())
}

fn realize(a: RealizeArgs) -> Outcome {
    let n = a.n;
    if a.k.is_some() && a.kind != RealizeType::A {
        return Err(Failure::Usage("--k only applies to --type A".into()));
    }
    let (matrix, coords, vanish, strong) = match a.kind {
        RealizeType::A => {
            let k = a.k.ok_or_else(|| Failure::Usage("--type A needs --k".into()))?;
            if k == 0 || k > n {
                return Err(Failure::Usage(format!("need 1 <= k <= n, got k = {k}, n = {n}")));
            }
            let m = random_matrix(k as usize, n as usize, &mut rng_from_seed(a.seed));
            let c = plucker_vector(&m)?;
            let x = as_point(&c);
            let vanish = k == n || plucker_family(n, k)?.iter().all(|(_, q)| q.eval(&x).is_zero());
            let strong = is_matroid(&support_system(n, &c)?, k)?;
            (Some(matrix_json(&m)), c, vanish, strong)
        }
        RealizeType::D => {
            let m = random_skew(n as usize, &mut rng_from_seed(a.seed));
            let c = spinor_vector(&m)?;
            let x = as_point(&c);
            let vanish = embed_d_family(n)?.0.iter().all(|(_, q)| q.eval(&x).is_zero());
            let sup = support_system(n, &c)?;
            let strong = is_even_delta_matroid(&sup)? && is_strong_even_delta(&sup)?;
            (Some(matrix_json(&m)), c, vanish, strong)
        }
        RealizeType::DCross => {
            let c = cross_vector_d(n, a.seed)?;
            let vanish = cross_d_quadric(n).eval(&as_point(&c)).is_zero();
            let strong = satisfies_all(&support(&c), gen_cross_d(n)?.quadrics()).0;
            (None, c, vanish, strong)
        }
    };
    if !vanish || !strong {
        return Err(Failure::Internal(format!("realization check failed (vanish={vanish}, strong={strong})")));
    }
    let kind = match a.kind {
        RealizeType::A => "A",
        RealizeType::D => "D",
        RealizeType::DCross => "D-cross",
    };
    let support_sets: Option<Vec<Vec<u32>>> = (a.kind != RealizeType::DCross).then(|| {
        coords.iter().filter(|(_, v)| !v.is_zero()).filter_map(|(k, _)| k.subset()).map(SubsetMask::to_vec).collect()
    });
    let mut value = json!({
        "type": kind,
        "n": n,
        "seed": a.seed,
        "coordinates": coordinates_json(&coords),
        "quadrics_vanish": vanish,
        "support_has_exchange": strong,
    });
    if let Some(k) = a.k {
        value["k"] = json!(k);
    }
    if let Some(m) = matrix {
        value["matrix"] = m;
    }
    if let Some(s) = support_sets {
        value["support"] = json!(s);
    }
    Ok((value, true))
}

fn verify(a: VerifyArgs, table: &mut String) -> Outcome {
    use std::fmt::Write as _;
    let cfg = VerifyConfig { max_n: a.max_n, seed: a.seed, trials: a.trials };
    let results = run_suite(&a.suite, &cfg)?;
    let width = results.iter().map(|r| r.id.len()).max().unwrap_or(0).max(5);
    let _ = writeln!(table, "{:<width$}  {:>10}  {:>10}  result", "suite", "instances", "seconds");
    for r in &results {
        let _ = writeln!(
            table,
            "{:<width$}  {:>10}  {:>10.3}  {}",
            r.id,
            r.instances,
            r.elapsed.as_secs_f64(),
            if r.passed { "PASS" } else { "FAIL" }
        );
    }
    let all = results.iter().all(|r| r.passed);
    let value = json!({
        "suite": a.suite,
        "max_n": a.max_n,
        "seed": a.seed,
        "trials": a.trials,
        "passed": all,
        "results": serde_json::to_value(&results).expect("serializable"),
    });
    Ok((value, all))
}

fn sample(a: SampleArgs) -> Outcome {
    let tag = match parse_family(&a.family)? {
        Family::One(t) => t,
        Family::DBoth(_) => return Err(Failure::Usage("sample needs a parity: --family D+ or D-".into())),
    };
    let r = sample_family(tag, a.seed, a.trials)?;
    if r.discrepancies > 0 {
        return Err(Failure::Internal(format!(
            "{} samples where exchange and tropical satisfaction disagree; first: {}",
            r.discrepancies,
            r.first_discrepancy.clone().unwrap_or(Value::Null)
        )));
    }
    Ok((serde_json::to_value(&r).expect("serializable"), true))
}
