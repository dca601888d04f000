//! Command-line front end: witness searches, group checks and sieve-side
//! evaluators, all emitting one JSON report per run (schema shipped in
//! schema/report.schema.json) that the `verify` subcommand re-checks
//! without re-searching.
//!
//! Exit codes: 0 success, 2 usage error, 3 budget exhausted,
//! 4 undetermined certificate, 1 internal failure or failed verification.

use clap::{Args, Parser, Subcommand};
use minram_core::arith::PrimeSet;
use minram_core::error::Error;
use minram_core::forms::{self, NeighborhoodVN};
use minram_core::groups::rigid::{self, GeneratingTuple};
use minram_core::groups::{self, Perm, PermGroup};
use minram_core::report::{
    BetaBoundJson, EmpiricalBReportJson, EpReportJson, FieldReportJson, GroupJson ,
    GtzReportJson, Payload, ProductTupleReportJson, RigidBoundJson, RigidReportJson, RunReport,
    TowerReportJson, UniversalRamJson,
};
use minram_core::specfield::{self, FieldBudgets};
use minram_core::tower::{self, TowerBudgets, TowerMode};
use num_bigint::BigUint;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

#[derive(Parser)]
#[command(
    name = "minram",
    version,
    about = "Witness search and certification for number fields and towers ramified at few primes"
)]
struct Cli {
    /// Worker threads for the searches; the output is independent of this.
    #[arg(long, global = true)]
    jobs: Option<usize>,

    /// Seed recorded in the report; only sampling commands consume it.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,

    /// Also write the JSON report to this file.
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    /// Pretty-print the JSON report.
    #[arg(long, global = true)]
    pretty: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct SearchLimits {
    /// Base points examined per schedule step.
    #[arg(long, default_value_t = 5_000)]
    max_points: u64,

    /// Prime bound for the S_m certificate scan.
    #[arg(long, default_value_t = 1_000)]
    cert_bound: u64,
}

#[derive(Subcommand)]
enum Command {
    /// Search for a degree-m field with at most 3 finite ramified primes
    /// (plus infinity), fully certified.
    RealizeSm {
        #[arg(long)]
        m: u32,
        #[command(flatten)]
        limits: SearchLimits,
    },
    /// Search for a certified S_m^n tower with at most n + 4 ramified
    /// primes (counting infinity).
    RealizeSmn {
        #[arg(long)]
        m: u32,
        #[arg(long)]
        n: u32,
        /// Twist mode: "mult" (parameter scaled by q^k) or "add" (shifted).
        #[arg(long, default_value = "mult")]
        mode: String,
        /// Scaling prime for multiplicative mode.
        #[arg(long, default_value_t = 2)]
        q: u64,
        /// Schedule step; escalated automatically up to --max-step.
        #[arg(long, default_value_t = 1)]
        step: i64,
        #[arg(long, default_value_t = 4)]
        max_step: i64,
        #[command(flatten)]
        limits: SearchLimits,
    },
    /// Finite-group checks: E(p), rigidity, product tuples, bounds.
    Groups {
        #[command(subcommand)]
        cmd: GroupsCmd,
    },
    /// Sieve-side searches and bound evaluators.
    Search {
        #[command(subcommand)]
        cmd: SearchCmd,
    },
    /// Sampled upper bound for the universally ramified primes of the
    /// degree-m cover.
    UniversalRam {
        #[arg(long)]
        m: u32,
        #[arg(long, default_value_t = 50)]
        samples: u32,
    },
    /// Re-check every certificate inside an emitted report.
    Verify {
        /// Report file, or '-' for stdin.
        #[arg(long)]
        report: String,
    },
}

#[derive(Args, Clone)]
struct GroupSpec {
    /// Catalog name (S3..S6, A4, A5, D3..D8, V4, Z2..Z6).
    #[arg(long)]
    group: Option<String>,
    /// Degree, when giving explicit generators.
    #[arg(long)]
    degree: Option<usize>,
    /// ;-separated generators in cycle notation, e.g. "(1 2); (1 2 3)".
    #[arg(long)]
    gens: Option<String>,
}

impl GroupSpec {
    fn build(&self) -> Result<(Option<String>, PermGroup), Error> {
        match (&self.group, &self.degree, &self.gens) {
            (Some(name), None, None) => Ok((Some(name.clone()), groups::catalog_group(name)?)),
            (None, Some(degree), Some(gens)) => {
                let parsed = gens
                    .split(';')
                    .map(|g| Perm::parse_cycles(g, *degree))
                    .collect::<Result<Vec<_>, _>>()?;
                Ok((None, PermGroup::close(*degree, parsed)?))
            }
            _ => Err(Error::InvalidInput(
                "give either --group NAME or both --degree and --gens".into(),
            )),
        }
    }
}

#[derive(Subcommand)]
enum GroupsCmd {
    /// Decide the E(p) condition.
    CheckEp {
        #[command(flatten)]
        spec: GroupSpec,
        #[arg(long)]
        p: u64,
    },
    /// Find a good generating tuple in the given classes and verify
    /// rational rigidity by exhaustive enumeration.
    CheckRigid {
        #[command(flatten)]
        spec: GroupSpec,
        /// Comma-separated class specs: an integer k for the class of a
        /// k-cycle, or explicit cycles like "(1 2)(3 4)".
        #[arg(long)]
        classes: String,
        #[arg(long, default_value_t = rigid::DEFAULT_RIGIDITY_BUDGET)]
        budget: u64,
    },
    /// Build a rational rigid tuple for G1 x G2 from rigid tuples of the
    /// E(p) factors.
    ProductTuple {
        #[arg(long)]
        group1: String,
        #[arg(long)]
        classes1: String,
        #[arg(long)]
        group2: String,
        #[arg(long)]
        classes2: String,
        #[arg(long)]
        p: u64,
        #[arg(long, default_value_t = rigid::DEFAULT_RIGIDITY_BUDGET)]
        budget: u64,
    },
    /// Evaluate the bound r + #(Prms(|G|) union {p <= r}).
    RigidBound {
        #[arg(long)]
        r: u32,
        #[arg(long)]
        order: String,
    },
}

#[derive(Subcommand)]
enum SearchCmd {
    /// Least integer beating the beta-sieve main term for the given
    /// degrees.
    BetaBound {
        /// Comma-separated positive degrees, e.g. 1,1,1.
        #[arg(long)]
        degrees: String,
    },
    /// Point where every linear form value is a unit or a prime away
    /// from S.
    Gtz {
        /// ;-separated linear forms in t, s.
        #[arg(long)]
        forms: String,
        /// Comma-separated finite primes of S (infinity is implied).
        #[arg(long = "S", default_value = "")]
        s: String,
        /// Neighborhood V_N.
        #[arg(long = "N", default_value_t = 1)]
        n: u64,
        #[arg(long, default_value_t = 1_000_000)]
        budget: u64,
    },
    /// Upper witness for the minimal #Prms_S of a product of forms over a
    /// neighborhood.
    #[command(name = "empirical-b", alias = "empirical-B")]
    EmpiricalB {
        /// ;-separated forms in t, s; omit to use --m.
        #[arg(long)]
        forms: Option<String>,
        /// Use the branch form family of degree m: t, s, m^m t + (m-1)^(m-1) s.
        #[arg(long)]
        m: Option<u32>,
        #[arg(long = "S", default_value = "")]
        s: String,
        #[arg(long = "N", default_value_t = 1)]
        n: u64,
        #[arg(long, default_value_t = 10_000)]
        budget: u64,
    },
}

fn parse_prime_set(text: &str) -> Result<PrimeSet, Error> {
    let primes: Vec<BigUint> = text
        .split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| {
            s.parse::<BigUint>()
                .map_err(|_| Error::InvalidInput(format!("bad prime '{s}'")))
        })
        .collect::<Result<_, _>>()?;
    PrimeSet::from_primes(primes, true)
}

fn parse_class_reps(text: &str, group: &PermGroup) -> Result<Vec<Perm>, Error> {
    text.split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|spec| {
            if let Ok(k) = spec.parse::<usize>() {
                if k < 2 || k > group.degree() {
                    return Err(Error::InvalidInput(format!(
                        "cycle length {k} out of range 2..={}",
                        group.degree()
                    )));
                }
                let cycle: Vec<String> = (1..=k).map(|i| i.to_string()).collect();
                Perm::parse_cycles(&format!("({})", cycle.join(" ")), group.degree())
            } else {
                Perm::parse_cycles(spec, group.degree())
            }
        })
        .collect()
}

fn tuple_from_classes(
    group: &PermGroup,
    classes: &str,
    budget: u64,
) -> Result<GeneratingTuple, Error> {
    let reps = parse_class_reps(classes, group)?;
    rigid::find_good_tuple(group, &reps, budget)?.ok_or_else(|| {
        Error::InvalidInput(format!(
            "no good generating tuple exists in the classes {classes}"
        ))
    })
}

fn exit_code_for(err: &Error) -> u8 {
    match err {
        Error::InvalidInput(_) | Error::BranchPoint(_) | Error::Reducible(_)
        | Error::LocalObstruction(_) => 2,
        Error::BudgetExhausted(_) | Error::IncompleteFactorization(_) => 3,
        Error::Undetermined(_) | Error::OrderCapExceeded { .. } => 4,
        Error::Internal(_) => 1,
    }
}

fn run(cli: &Cli) -> Result<(String, serde_json::Value, Payload), Error> {
    match &cli.command {
        Command::RealizeSm { m, limits } => {
            let budgets = TowerBudgets {
                field: FieldBudgets {
                    cert_prime_bound: limits.cert_bound,
                    ..Default::default()
                },
                max_base_points: limits.max_points,
                max_step: 1,
            };
            let report = tower::realize_sm(*m, &budgets)?;
            let inputs = serde_json::json!({
                "m": m,
                "max_points": limits.max_points,
                "cert_bound": limits.cert_bound,
            });
            Ok((
                "realize-sm".into(),
                inputs,
                Payload::Field(FieldReportJson::from(&report.factors[0])),
            ))
        }
        Command::RealizeSmn { m, n, mode, q, step, max_step, limits } => {
            let mode = match mode.as_str() {
                "mult" | "multiplicative" => TowerMode::Multiplicative { q: *q },
                "add" | "additive" => TowerMode::Additive,
                other => {
                    return Err(Error::InvalidInput(format!(
                        "mode '{other}' is not mult or add"
                    )))
                }
            };
            let budgets = TowerBudgets {
                field: FieldBudgets {
                    cert_prime_bound: limits.cert_bound,
                    ..Default::default()
                },
                max_base_points: limits.max_points,
                max_step: (*max_step).max(*step),
            };
            let _ = step;
            let report = tower::realize_smn_with_mode(*m, *n, mode, &budgets)?;
            let inputs = serde_json::json!({
                "m": m,
                "n": n,
                "mode": if matches!(report.spec.mode, TowerMode::Additive) { "add" } else { "mult" },
                "q": q,
                "max_step": max_step,
                "max_points": limits.max_points,
                "cert_bound": limits.cert_bound,
            });
            if *n == 1 {
                // identical payload to realize-sm by construction
                Ok((
                    "realize-smn".into(),
                    inputs,
                    Payload::Field(FieldReportJson::from(&report.factors[0])),
                ))
            } else {
                Ok((
                    "realize-smn".into(),
                    inputs,
                    Payload::Tower(TowerReportJson::from(&report)),
                ))
            }
        }
        Command::Groups { cmd } => run_groups(cmd),
        Command::Search { cmd } => run_search(cmd),
        Command::UniversalRam { m, samples } => {
            let set = specfield::universal_ram_upper(*m, *samples, cli.seed)?;
            let inputs = serde_json::json!({ "m": m, "samples": samples });
            Ok((
                "universal-ram".into(),
                inputs,
                Payload::UniversalRam(UniversalRamJson {
                    m: *m,
                    samples: *samples,
                    seed: cli.seed,
                    finite: set.finite().iter().map(|p| p.to_str_radix(10)).collect(),
                    includes_infinity: set.includes_infinity(),
                }),
            ))
        }
        Command::Verify { .. } => unreachable!("verify is dispatched separately"),
    }
}

fn run_groups(cmd: &GroupsCmd) -> Result<(String, serde_json::Value, Payload), Error> {
    match cmd {
        GroupsCmd::CheckEp { spec, p } => {
            let (name, group) = spec.build()?;
            let indices = group.maximal_normal_indices()?;
            let verdict = group.is_ep(*p)?;
            let inputs = serde_json::json!({ "group": name, "p": p });
            Ok((
                "groups check-ep".into(),
                inputs,
                Payload::Ep(EpReportJson {
                    group: GroupJson::from_group(name, &group),
                    p: *p,
                    is_ep: verdict,
                    maximal_normal_indices: indices,
                }),
            ))
        }
        GroupsCmd::CheckRigid { spec, classes, budget } => {
            let (name, group) = spec.build()?;
            let tuple = tuple_from_classes(&group, classes, *budget)?;
            let check = rigid::is_rationally_rigid(&tuple, *budget)?;
            let inputs = serde_json::json!({ "group": name, "classes": classes, "budget": budget });
            Ok((
                "groups check-rigid".into(),
                inputs,
                Payload::Rigid(RigidReportJson {
                    group: GroupJson::from_group(name, &group),
                    entries: tuple.entries().iter().map(|e| e.to_string()).collect(),
                    rationally_rigid: check.rationally_rigid,
                    failure: check.failure,
                    tuple_count: check.tuple_count,
                    candidates: check.candidates,
                    budget: *budget,
                }),
            ))
        }
        GroupsCmd::ProductTuple { group1, classes1, group2, classes2, p, budget } => {
            let g1 = groups::catalog_group(group1)?;
            let g2 = groups::catalog_group(group2)?;
            let t1 = tuple_from_classes(&g1, classes1, *budget)?;
            let t2 = tuple_from_classes(&g2, classes2, *budget)?;
            let (d1, d2) = (g1.d_ab()?, g2.d_ab()?);
            let (k1, k2) = (t1.len(), t2.len());
            let product = rigid::build_product_tuple(&t1, &t2, *p, *budget)?;
            let inputs = serde_json::json!({
                "group1": group1, "classes1": classes1,
                "group2": group2, "classes2": classes2,
                "p": p, "budget": budget,
            });
            Ok((
                "groups product-tuple".into(),
                inputs,
                Payload::ProductTuple(ProductTupleReportJson {
                    p: *p,
                    group: GroupJson::from_group(
                        Some(format!("{group1}x{group2}")),
                        product.group(),
                    ),
                    entries: product.entries().iter().map(|e| e.to_string()).collect(),
                    s: product.len(),
                    d1,
                    d2,
                    k1,
                    k2,
                    budget: *budget,
                }),
            ))
        }
        GroupsCmd::RigidBound { r, order } => {
            let order: BigUint = order
                .parse()
                .map_err(|_| Error::InvalidInput(format!("bad order '{order}'")))?;
            let bound = rigid::rigid_bound(*r, &order)?;
            let inputs = serde_json::json!({ "r": r, "order": order.to_str_radix(10) });
            Ok((
                "groups rigid-bound".into(),
                inputs,
                Payload::RigidBound(RigidBoundJson {
                    r: *r,
                    order: order.to_str_radix(10),
                    bound,
                }),
            ))
        }
    }
}

fn run_search(cmd: &SearchCmd) -> Result<(String, serde_json::Value, Payload), Error> {
    match cmd {
        SearchCmd::BetaBound { degrees } => {
            let degrees: Vec<u32> = degrees
                .split(',')
                .map(str::trim)
                .filter(|s| !s.is_empty())
                .map(|s| {
                    s.parse::<u32>()
                        .map_err(|_| Error::InvalidInput(format!("bad degree '{s}'")))
                })
                .collect::<Result<_, _>>()?;
            let bound = forms::beta_sieve_bound(&degrees)?;
            let inputs = serde_json::json!({ "degrees": degrees });
            Ok((
                "search beta-bound".into(),
                inputs,
                Payload::BetaBound(BetaBoundJson { degrees, bound }),
            ))
        }
        SearchCmd::Gtz { forms: forms_text, s, n, budget } => {
            let parsed = forms::parse_forms(forms_text)?;
            let s_set = parse_prime_set(s)?;
            let vn = NeighborhoodVN::new(*n)?;
            let witness = forms::gtz_search(&parsed, &s_set, vn, *budget)?;
            let inputs = serde_json::json!({ "forms": forms_text, "S": s, "N": n, "budget": budget });
            Ok((
                "search gtz".into(),
                inputs,
                Payload::Gtz(GtzReportJson {
                    forms: parsed.iter().map(|f| f.to_string()).collect(),
                    s_finite: s_set.finite().iter().map(|p| p.to_str_radix(10)).collect(),
                    neighborhood_n: *n,
                    point: (&witness.point).into(),
                    values: witness.values.iter().map(|v| v.to_string()).collect(),
                    stripped: witness.stripped.iter().map(|v| v.to_string()).collect(),
                    examined: witness.examined,
                }),
            ))
        }
        SearchCmd::EmpiricalB { forms: forms_text, m, s, n, budget } => {
            let parsed = match (forms_text, m) {
                (Some(text), None) => forms::parse_forms(text)?,
                (None, Some(m)) => {
                    let cover = specfield::TrinomialCover::new(*m)?;
                    vec![
                        forms::BinaryForm::t(),
                        forms::BinaryForm::s(),
                        forms::BinaryForm::new(vec![cover.mm(), cover.kk()])?,
                    ]
                }
                _ => {
                    return Err(Error::InvalidInput(
                        "give exactly one of --forms or --m".into(),
                    ))
                }
            };
            let s_set = parse_prime_set(s)?;
            let vn = NeighborhoodVN::new(*n)?;
            let witness = forms::empirical_b(&parsed, &s_set, vn, *budget)?;
            let inputs = serde_json::json!({
                "forms": parsed.iter().map(|f| f.to_string()).collect::<Vec<_>>(),
                "m": m, "S": s, "N": n, "budget": budget,
            });
            Ok((
                "search empirical-B".into(),
                inputs,
                Payload::EmpiricalB(EmpiricalBReportJson {
                    forms: parsed.iter().map(|f| f.to_string()).collect(),
                    s_finite: s_set.finite().iter().map(|p| p.to_str_radix(10)).collect(),
                    neighborhood_n: *n,
                    point: (&witness.point).into(),
                    product: witness.product.to_string(),
                    count: witness.count,
                    primes: witness
                        .primes
                        .finite()
                        .iter()
                        .map(|p| p.to_str_radix(10))
                        .collect(),
                    examined: witness.examined,
                }),
            ))
        }
    }
}

fn run_verify(path: &str) -> ExitCode {
    let text = if path == "-" {
        use std::io::Read;
        let mut buf = String::new();
        if std::io::stdin().read_to_string(&mut buf).is_err() {
            eprintln!("error: could not read stdin");
            return ExitCode::from(1);
        }
        buf
    } else {
        match std::fs::read_to_string(path) {
            Ok(t) => t,
            Err(e) => {
                eprintln!("error: could not read {path}: {e}");
                return ExitCode::from(1);
            }
        }
    };
    let report: RunReport = match serde_json::from_str(&text) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: report does not parse: {e}");
            return ExitCode::from(1);
        }
    };
    let issues = report.verify();
    if issues.is_empty() {
        eprintln!("report verifies: every inline certificate re-checked");
        ExitCode::SUCCESS
    } else {
        for issue in &issues {
            eprintln!("verification failure: {issue}");
        }
        ExitCode::from(1)
    }
}

fn summarize(payload: &Payload) -> String {
    match payload {
        Payload::Field(f) => format!(
            "field m={} at {}:{} | ramified (finite) {:?} + infinity={} | total {} | certified={}",
            f.m,
            f.parameter.a,
            f.parameter.b,
            f.ramified_finite,
            f.infinity_ramified,
            f.total,
            f.galois_cert.is_some()
        ),
        Payload::Tower(t) => format!(
            "tower m={} n={} base {}:{} steps {:?} | total {} <= target {} | {}",
            t.m, t.n, t.base.a, t.base.b, t.steps, t.total, t.target, t.outcome
        ),
        Payload::Ep(e) => format!(
            "E({}) = {} (maximal normal indices {:?})",
            e.p, e.is_ep, e.maximal_normal_indices
        ),
        Payload::Rigid(r) => format!(
            "rationally rigid = {} ({} tuples, {} candidates)",
            r.rationally_rigid, r.tuple_count, r.candidates
        ),
        Payload::ProductTuple(p) => format!(
            "product tuple of length s={} (d1={}, d2={}, k1={}, k2={}), verified rigid",
            p.s, p.d1, p.d2, p.k1, p.k2
        ),
        Payload::RigidBound(b) => format!("rigid bound = {}", b.bound),
        Payload::BetaBound(b) => format!("beta-sieve bound = {}", b.bound),
        Payload::Gtz(g) => format!(
            "witness {}:{} with values {:?} (examined {})",
            g.point.a, g.point.b, g.stripped, g.examined
        ),
        Payload::EmpiricalB(e) => format!(
            "witness {}:{} with count {} (primes {:?}, examined {})",
            e.point.a, e.point.b, e.count, e.primes, e.examined
        ),
        Payload::UniversalRam(u) => format!(
            "universal ramified upper bound: finite {:?}, infinity={}",
            u.finite, u.includes_infinity
        ),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(jobs) = cli.jobs {
        // ignore failure if a pool already exists
        let _ = rayon::ThreadPoolBuilder::new().num_threads(jobs).build_global();
    }
    if let Command::Verify { report } = &cli.command {
        return run_verify(report);
    }
    let start = Instant::now();
    match run(&cli) {
        Ok((command, inputs, payload)) => {
            let mut report = RunReport::new(&command, inputs, cli.seed, payload);
            report.wall_ms = start.elapsed().as_millis() as u64;
            let json = if cli.pretty {
                serde_json::to_string_pretty(&report)
            } else {
                serde_json::to_string(&report)
            }
            .expect("report serializes");
            if let Some(path) = &cli.out {
                if let Err(e) = std::fs::write(path, &json) {
                    eprintln!("error: could not write {}: {e}", path.display());
                    return ExitCode::from(1);
                }
            }
            println!("{json}");
            eprintln!("{}", summarize(&report.result));
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code_for(&e))
        }
    }
}
