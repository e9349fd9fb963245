use std::fs;
use std::io::{self, Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use serde_json::{json, Value};

use conicq::arith::{fmt_q, parse_q, Q};
use conicq::compare::{self, FibreLocus, QuotientCoordinate};
use conicq::cyclo::{consts, CycloNum, FieldSpec};
use conicq::example::{self, BuiltExample, ExampleSpec};
use conicq::group::{self, FiniteGroup, GroupKind, DEFAULT_CAP};
use conicq::hj::{self, FibreChain};
use conicq::quotient::{self, SurfaceModel, TableCounts};
use conicq::records::{FieldRecord, MatrixRecord, PointRecord};
use conicq::reproduce;

/// Finite group actions on conic bundles over cyclotomic subfields.
#[derive(Parser)]
#[command(name = "conicq", version)]
struct Cli {
    /// Write the report here instead of standard output.
    #[arg(long, short, global = true)]
    output: Option<PathBuf>,
    /// Worker threads for scans and families.
    #[arg(long, global = true, default_value_t = 1)]
    jobs: usize,
    /// Print progress notes to standard error.
    #[arg(long, short, global = true)]
    verbose: bool,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Standard finite subgroups of PGL2.
    #[command(subcommand)]
    Group(GroupCmd),
    /// Hirzebruch-Jung chains.
    #[command(subcommand)]
    Chain(ChainCmd),
    /// Singular fibre bookkeeping of quotients.
    #[command(subcommand)]
    Quotient(QuotientCmd),
    /// Explicit non-rational quotients.
    #[command(subcommand)]
    Example(ExampleCmd),
    /// Birational comparison of quotients.
    #[command(subcommand)]
    Compare(CompareCmd),
    /// Run the acceptance checks.
    #[command(subcommand)]
    Reproduce(ReproduceCmd),
}

#[derive(Args, Clone)]
struct KindArgs {
    /// C, D, A4, S4, A5, or a full name such as C7 or D6.
    #[arg(long)]
    kind: String,
    /// k for C (cyclic of order k) or D (dihedral of order 2k).
    #[arg(long)]
    param: Option<u32>,
}

#[derive(Args, Clone)]
struct FieldArg {
    /// Q, Q(i), Q(i√2), Q(√5), Q(ζN) (ASCII: Qi, Qisqrt2, Qsqrt5, QzetaN),
    /// or "default" for the smallest field of the standard model.
    #[arg(long, default_value = "default")]
    field: String,
}

#[derive(Subcommand)]
enum GroupCmd {
    /// Order, conductor, generators and element orders.
    Info(KindArgs),
    /// Lengths of the orbits with nontrivial stabilizer.
    Orbits(KindArgs),
    /// Fixed points of every element, with their field of definition.
    FixedPoints {
        #[command(flatten)]
        kind: KindArgs,
        #[command(flatten)]
        field: FieldArg,
    },
    /// Fixed-point definability against root-of-unity membership.
    Definability {
        #[command(flatten)]
        kind: KindArgs,
        #[command(flatten)]
        field: FieldArg,
    },
}

#[derive(Subcommand)]
enum ChainCmd {
    /// Continued fraction k/a = [s1, ..., sr].
    Expand {
        #[arg(long)]
        k: u64,
        #[arg(long)]
        a: u64,
    },
    /// Contract a chain such as "-3,-1,-3,-1,-3;swap".
    Contract {
        #[arg(long, allow_hyphen_values = true)]
        chain: String,
    },
}

#[derive(Subcommand)]
enum QuotientCmd {
    /// Fibre count and rationality of X/G for a model record.
    Count {
        /// Model record (JSON); "-" reads standard input.
        #[arg(long)]
        input: String,
    },
    /// The bound from the singular fibre table.
    Table1 {
        #[command(flatten)]
        kind: KindArgs,
        #[arg(long, default_value_t = 0)]
        a: u32,
        #[arg(long, default_value_t = 0)]
        b: u32,
        #[arg(long, default_value_t = 0)]
        c: u32,
        #[arg(long, default_value_t = 0)]
        d: u32,
    },
    /// Scan every admissible configuration for the fibre-count theorem.
    ScanTheorem {
        #[arg(long, default_value_t = 10)]
        k_max: u32,
        #[arg(long, default_value_t = 12)]
        n_max: usize,
    },
}

#[derive(Args, Clone)]
struct KeyArgs {
    /// Non-square integer u; fibres over ±μ√u are singular.
    #[arg(long, default_value_t = 2, allow_hyphen_values = true)]
    u: i64,
}

#[derive(Args, Clone)]
struct FamilyArgs {
    #[command(flatten)]
    key: KeyArgs,
    #[arg(long, default_value_t = 6)]
    count: usize,
    /// Number of μ per member.
    #[arg(long, default_value_t = 8)]
    len: usize,
    /// μ are drawn from 1..=range.
    #[arg(long, default_value_t = 60)]
    range: i64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Subcommand)]
enum ExampleCmd {
    /// Build the C2 example over Q; prints a model record.
    Build {
        #[command(flatten)]
        key: KeyArgs,
        /// Comma-separated rationals, e.g. "1,2,3,4".
        #[arg(long)]
        mus: String,
    },
    /// Check a model record against the example's claims.
    Verify {
        #[arg(long)]
        input: String,
    },
    /// A deterministic random family sharing u.
    Family(FamilyArgs),
    /// The example with a stabilized fibre for a non-cyclic group.
    Stabilized {
        #[command(flatten)]
        kind: KindArgs,
        #[arg(long, default_value = "Q")]
        field: String,
        /// Order of h; searched for when absent.
        #[arg(long)]
        h_order: Option<u32>,
    },
}

#[derive(Subcommand)]
enum CompareCmd {
    /// Compare two C2 examples sharing u.
    Pair {
        #[command(flatten)]
        key: KeyArgs,
        #[arg(long)]
        mus_a: String,
        #[arg(long)]
        mus_b: String,
    },
    /// Pairwise verdicts over a random family.
    Family(FamilyArgs),
}

#[derive(Subcommand)]
enum ReproduceCmd {
    /// Run all acceptance criteria (or one, with --only).
    All {
        #[arg(long)]
        only: Option<u8>,
        /// Emit JSON records instead of PASS/FAIL lines.
        #[arg(long)]
        json: bool,
    },
}

enum CliError {
    Validation(String),
    Internal(String),
}

type Res<T> = Result<T, CliError>;

fn bad(e: impl std::fmt::Display) -> CliError {
    CliError::Validation(e.to_string())
}

fn internal(e: impl std::fmt::Display) -> CliError {
    CliError::Internal(e.to_string())
}

fn to_json<T: Serialize>(x: &T) -> Res<Value> {
    serde_json::to_value(x).map_err(internal)
}

fn parse_kind(k: &KindArgs) -> Res<GroupKind> {
    let name = match (k.kind.as_str(), k.param) {
        ("C", Some(p)) if p >= 1 => return Ok(GroupKind::Cyclic(p)),
        ("D", Some(p)) if p >= 2 => return Ok(GroupKind::Dihedral(p)),
        ("C" | "D", _) => return Err(bad(format!("--kind {} needs --param (C needs >= 1, D needs >= 2)", k.kind))),
        (s, None) => s,
        (s, Some(_)) => return Err(bad(format!("--param is only for C and D, got --kind {s}"))),
    };
    GroupKind::parse(name).map_err(bad)
}

fn parse_field(s: &str) -> Res<FieldSpec> {
    let s = s.trim();
    let f = match s {
        "Q" => FieldSpec::rationals(1),
        "Q(i)" | "Qi" => FieldSpec::new(4, vec![consts::i(4).unwrap()]).map_err(internal)?,
        "Q(i√2)" | "Qisqrt2" => FieldSpec::new(8, vec![consts::i_sqrt2(8).unwrap()]).map_err(internal)?,
        "Q(√5)" | "Qsqrt5" => FieldSpec::new(5, vec![consts::sqrt5(5).unwrap()]).map_err(internal)?,
        _ => {
            let n = s
                .strip_prefix("Q(ζ")
                .and_then(|r| r.strip_suffix(')'))
                .or_else(|| s.strip_prefix("Qzeta"))
                .and_then(|n| n.parse::<u32>().ok())
                .filter(|&n| n >= 1 && n <= 240)
                .ok_or_else(|| bad(format!("unknown field {s:?}")))?;
            FieldSpec::full(n)
        }
    };
    Ok(f)
}

fn field_for(kind: GroupKind, s: &str) -> Res<FieldSpec> {
    if s == "default" {
        Ok(group::default_field(kind))
    } else {
        parse_field(s)
    }
}

fn group_over(kind: GroupKind, k: &FieldSpec) -> Res<FiniteGroup> {
    group::standard_group(kind, k).map_err(bad)
}

fn parse_mus(s: &str) -> Res<Vec<Q>> {
    let v: Vec<Q> = s
        .split(',')
        .filter(|x| !x.trim().is_empty())
        .map(|x| parse_q(x.trim()).ok_or_else(|| bad(format!("mus: not a rational: {x:?}"))))
        .collect::<Res<_>>()?;
    if v.is_empty() {
        return Err(bad("mus: empty list"));
    }
    Ok(v)
}

fn key_spec(u: i64, mus: &[Q]) -> Res<ExampleSpec> {
    let base = ExampleSpec::c2_over_q(u, &[]).map_err(bad)?;
    let n = base.field.conductor();
    Ok(base.with_mus(mus.iter().map(|m| CycloNum::from_rational(n, m.clone())).collect()))
}

fn read_input(path: &str) -> Res<String> {
    let mut s = String::new();
    if path == "-" {
        io::stdin().read_to_string(&mut s).map_err(internal)?;
    } else {
        s = fs::read_to_string(path).map_err(|e| bad(format!("{path}: {e}")))?;
    }
    Ok(s)
}

fn read_model(path: &str) -> Res<SurfaceModel> {
    let s = read_input(path)?;
    let de = &mut serde_json::Deserializer::from_str(&s);
    let m: SurfaceModel = serde_path_to_error::deserialize(de)
        .map_err(|e| bad(format!("{path}: at {}: {}", e.path(), e.inner())))?;
    if let Some(f) = &m.field {
        f.to_spec().map_err(|e| bad(format!("{path}: at field: {e}")))?;
    }
    Ok(m)
}

fn cmd_group(c: GroupCmd) -> Res<Value> {
    match c {
        GroupCmd::Info(k) => {
            let kind = parse_kind(&k)?;
            let field = group::default_field(kind);
            let g = group_over(kind, &field)?;
            let orders: Vec<(u32, usize)> = g.order_statistics().into_iter().collect();
            Ok(json!({
                "group": kind.to_string(),
                "order": g.order(),
                "conductor": g.conductor(),
                "field": FieldRecord::from_spec(&field),
                "generators": g.generators().into_iter().map(MatrixRecord::from_elem).collect::<Vec<_>>(),
                "element_orders": orders,
                "special_orbits": g.special_orbit_table().map_err(internal)?,
            }))
        }
        GroupCmd::Orbits(k) => {
            let kind = parse_kind(&k)?;
            let g = group_over(kind, &group::default_field(kind))?;
            let orbits = g.special_orbits().map_err(internal)?;
            let detail: Vec<Value> = orbits
                .iter()
                .map(|o| {
                    json!({
                        "length": o.len(),
                        "stabilizer_order": g.order() / o.len(),
                        "points": o.iter().map(PointRecord::from_point).collect::<Vec<_>>(),
                    })
                })
                .collect();
            Ok(json!({
                "group": kind.to_string(),
                "lengths": g.special_orbit_table().map_err(internal)?,
                "orbits": detail,
            }))
        }
        GroupCmd::FixedPoints { kind, field } => {
            let kind = parse_kind(&kind)?;
            let (g, k) = model_and_field(kind, &field.field)?;
            let mut rows = Vec::new();
            for e in g.elements() {
                let Some(pts) = e.fixed_points().map_err(internal)? else {
                    continue;
                };
                rows.push(json!({
                    "element": MatrixRecord::from_elem(e),
                    "order": e.order(DEFAULT_CAP as u32),
                    "element_over_k": e.defined_over(&k).map_err(internal)?,
                    "fixed_points": pts.iter().map(PointRecord::from_point).collect::<Vec<_>>(),
                    "fixed_points_over_k": group::fixed_points_defined_over(e, &k).map_err(internal)?,
                }));
            }
            Ok(json!({ "group": kind.to_string(), "field": FieldRecord::from_spec(&k), "elements": rows }))
        }
        GroupCmd::Definability { kind, field } => {
            let kind = parse_kind(&kind)?;
            let (g, k) = model_and_field(kind, &field.field)?;
            let mut rows = Vec::new();
            let mut disagreements = 0;
            for e in g.elements() {
                let m = e.order(DEFAULT_CAP as u32).unwrap_or(0);
                // only elements of G(k) of order > 2 are covered by the criterion
                if m <= 2 || !e.defined_over(&k).map_err(internal)? {
                    continue;
                }
                let kk = k.lift(lcm(k.conductor(), if m % 2 == 1 { 2 * m } else { m })).map_err(internal)?;
                let fixed = group::fixed_points_defined_over(e, &kk).map_err(internal)?;
                let root = kk.contains_root_of_unity(m).map_err(internal)?;
                if fixed != root {
                    disagreements += 1;
                }
                rows.push(json!({
                    "element": MatrixRecord::from_elem(e),
                    "order": m,
                    "fixed_points_over_k": fixed,
                    "root_of_unity_in_k": root,
                }));
            }
            Ok(json!({
                "group": kind.to_string(),
                "field": FieldRecord::from_spec(&k),
                "disagreements": disagreements,
                "elements": rows,
            }))
        }
    }
}

fn lcm(a: u32, b: u32) -> u32 {
    conicq::arith::lcm_u64(a as u64, b as u64) as u32
}

/// The standard model of `kind`, and k lifted into its ambient field.
fn model_and_field(kind: GroupKind, field: &str) -> Res<(FiniteGroup, FieldSpec)> {
    let k = field_for(kind, field)?;
    let g = group_over(kind, &group::default_field(kind))?;
    let n = lcm(k.conductor(), g.conductor());
    let g = g.embed(n).map_err(internal)?;
    let k = k.lift(n).map_err(internal)?;
    Ok((g, k))
}

fn cmd_chain(c: ChainCmd) -> Res<Value> {
    match c {
        ChainCmd::Expand { k, a } => {
            let f = hj::hj_expand(k, a).map_err(bad)?;
            Ok(json!({ "k": f.k, "a": f.a, "digits": f.digits, "value": fmt_q(&hj::hj_eval(&f.digits)) }))
        }
        ChainCmd::Contract { chain } => {
            let ch: FibreChain = chain.parse().map_err(bad)?;
            let c = hj::contract_chain(&ch).map_err(bad)?;
            Ok(json!({ "chain": ch.to_string(), "fate": c.fate, "trace": c.trace }))
        }
    }
}

fn cmd_quotient(c: QuotientCmd, jobs: usize) -> Res<Value> {
    match c {
        QuotientCmd::Count { input } => {
            let m = read_model(&input)?;
            let v = quotient::validate_model(&m);
            if !v.is_empty() {
                let msgs: Vec<String> = v
                    .iter()
                    .map(|x| format!("orbits[{}]: {}: {}", x.orbit, x.rule, x.detail))
                    .collect();
                return Err(bad(msgs.join("; ")));
            }
            to_json(&quotient::quotient_count(&m).map_err(bad)?)
        }
        QuotientCmd::Table1 { kind, a, b, c, d } => {
            let kind = parse_kind(&kind)?;
            let t = TableCounts { a, b, c, d };
            let (n, m) = quotient::table1_bound(kind, t).map_err(bad)?;
            Ok(json!({ "group": kind.to_string(), "counts": t, "n": n, "m": m }))
        }
        QuotientCmd::ScanTheorem { k_max, n_max } => to_json(&quotient::check_theorem_cbundle(k_max, n_max, jobs)),
    }
}

fn example_summary(b: &BuiltExample) -> Res<Value> {
    Ok(json!({
        "mus": b.model.orbits.iter().filter(|o| o.fibre_kind == quotient::FibreKind::Singular).count(),
        "a": conicq::records::num_record(&b.a),
        "model": to_json(&b.model)?,
    }))
}

fn family(f: &FamilyArgs, jobs: usize) -> Res<(ExampleSpec, Vec<BuiltExample>)> {
    let base = key_spec(f.key.u, &[])?;
    let fam = example::generate_family(&base, f.count, example::integer_sampler(f.seed, f.len, f.range), jobs)
        .map_err(bad)?;
    Ok((base, fam))
}

fn mus_of(b: &BuiltExample) -> Vec<String> {
    // base points are (μ s : 1) with s the chosen root; report μ itself
    b.points
        .iter()
        .filter_map(|p| p.coordinate())
        .filter_map(|x| x.div(&b.root).ok())
        .map(|x| x.as_rational().map(|r| fmt_q(&r)).unwrap_or_else(|| x.to_string()))
        .collect()
}

fn cmd_example(c: ExampleCmd, jobs: usize) -> Res<Value> {
    match c {
        ExampleCmd::Build { key, mus } => {
            let b = example::build_example(&key_spec(key.u, &parse_mus(&mus)?)?).map_err(bad)?;
            to_json(&b.model)
        }
        ExampleCmd::Verify { input } => {
            let m = read_model(&input)?;
            to_json(&example::verify_example(&m).map_err(bad)?)
        }
        ExampleCmd::Family(f) => {
            let (_, fam) = family(&f, jobs)?;
            let rows: Vec<Value> = fam
                .iter()
                .map(|b| {
                    let s = example_summary(b)?;
                    Ok(json!({ "mus": mus_of(b), "a": s["a"], "model": s["model"] }))
                })
                .collect::<Res<_>>()?;
            Ok(json!({ "u": f.key.u, "members": rows }))
        }
        ExampleCmd::Stabilized { kind, field, h_order } => {
            let kind = parse_kind(&kind)?;
            let k = parse_field(&field)?;
            let d = example::build_stabilized_example(kind, &k, h_order).map_err(bad)?;
            let (fate, trace) = quotient::fibre_fate(&d.built.model.orbits[0]).map_err(internal)?;
            let mut v = to_json(&d.record())?;
            v["stabilized_fate"] = to_json(&fate)?;
            v["stabilized_trace"] = json!(trace);
            Ok(v)
        }
    }
}

fn c2_elems(spec: &ExampleSpec, n: u32) -> Res<Vec<group::Pgl2Elem>> {
    Ok(spec.group.embed(n).map_err(internal)?.elements().to_vec())
}

fn cmd_compare(c: CompareCmd, jobs: usize) -> Res<Value> {
    match c {
        CompareCmd::Pair { key, mus_a, mus_b } => {
            let a = example::build_example(&key_spec(key.u, &parse_mus(&mus_a)?)?).map_err(bad)?;
            let b = example::build_example(&key_spec(key.u, &parse_mus(&mus_b)?)?).map_err(bad)?;
            let n = lcm(a.ambient, b.ambient);
            let (a, b) = (lift_example(a, n)?, lift_example(b, n)?);
            let spec = key_spec(key.u, &[])?;
            let coord = QuotientCoordinate::standard(&c2_elems(&spec, n)?).map_err(internal)?;
            let k = FieldSpec::rationals(1);
            let la: FibreLocus = compare::quotient_locus(&a, &coord, &k).map_err(bad)?;
            let lb: FibreLocus = compare::quotient_locus(&b, &coord, &k).map_err(bad)?;
            let v = compare::verdict(&la, &lb).map_err(bad)?;
            Ok(json!({
                "locus_a": la.record(),
                "locus_b": lb.record(),
                "result": to_json(&v)?,
            }))
        }
        CompareCmd::Family(f) => {
            let (spec, fam) = family(&f, jobs)?;
            let n = fam.first().map(|b| b.ambient).unwrap_or(spec.field.conductor());
            let k = FieldSpec::rationals(1);
            let v = compare::pairwise_inequivalence(&fam, &k, &c2_elems(&spec, n)?, jobs).map_err(bad)?;
            let members: Vec<Vec<String>> = fam.iter().map(mus_of).collect();
            Ok(json!({ "members": members, "matrix": to_json(&v)? }))
        }
    }
}

/// Both examples must live in one ambient field to be compared.
fn lift_example(b: BuiltExample, n: u32) -> Res<BuiltExample> {
    if b.ambient == n {
        return Ok(b);
    }
    let points = b.points.iter().map(|p| p.embed(n)).collect::<Result<_, _>>().map_err(internal)?;
    Ok(BuiltExample {
        points,
        ambient: n,
        root: b.root.embed(n).map_err(internal)?,
        ..b
    })
}

fn cmd_reproduce(c: ReproduceCmd, jobs: usize, out: &mut String) -> Res<bool> {
    let ReproduceCmd::All { only, json } = c;
    let results = match only {
        None => reproduce::run_all(jobs),
        Some(1) => vec![reproduce::criterion_1()],
        Some(2) => vec![reproduce::criterion_2()],
        Some(3) => vec![reproduce::criterion_3()],
        Some(4) => vec![reproduce::criterion_4()],
        Some(5) => vec![reproduce::criterion_5(jobs)],
        Some(6) => vec![reproduce::criterion_6()],
        Some(7) => vec![reproduce::criterion_7(jobs)],
        Some(8) => vec![reproduce::criterion_8()],
        Some(9) => vec![reproduce::criterion_9()],
        Some(n) => return Err(bad(format!("--only: no criterion {n}"))),
    };
    if json {
        *out = serde_json::to_string_pretty(&results).map_err(internal)? + "\n";
    } else {
        for r in &results {
            out.push_str(&r.line());
            out.push('\n');
        }
        let passed = results.iter().filter(|r| r.pass).count();
        out.push_str(&format!("{passed}/{} criteria passed\n", results.len()));
    }
    Ok(results.iter().all(|r| r.pass))
}

fn run(cli: Cli) -> Res<(String, bool)> {
    let jobs = cli.jobs.max(1);
    let v = match cli.cmd {
        Cmd::Group(c) => cmd_group(c)?,
        Cmd::Chain(c) => cmd_chain(c)?,
        Cmd::Quotient(c) => cmd_quotient(c, jobs)?,
        Cmd::Example(c) => cmd_example(c, jobs)?,
        Cmd::Compare(c) => cmd_compare(c, jobs)?,
        Cmd::Reproduce(c) => {
            let mut s = String::new();
            let ok = cmd_reproduce(c, jobs, &mut s)?;
            return Ok((s, ok));
        }
    };
    Ok((serde_json::to_string_pretty(&v).map_err(internal)? + "\n", true))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let verbose = cli.verbose;
    let output = cli.output.clone();
    let t = std::time::Instant::now();
    let (text, ok) = match run(cli) {
        Ok(x) => x,
        Err(CliError::Validation(m)) => {
            eprintln!("error: {m}");
            return ExitCode::from(2);
        }
        Err(CliError::Internal(m)) => {
            eprintln!("internal error: {m}");
            return ExitCode::from(1);
        }
    };
    let written = match &output {
        Some(p) => fs::write(p, &text),
        None => io::stdout().lock().write_all(text.as_bytes()),
    };
    if let Err(e) = written {
        eprintln!("internal error: {e}");
        return ExitCode::from(1);
    }
    if verbose {
        eprintln!("done in {:.2}s", t.elapsed().as_secs_f64());
    }
    if ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}
