//! One binary over the whole library: element arithmetic one-shots, finite
//! table audits, valuation and supervaluation checks, tropicalization,
//! corner-locus scans over grids, and theorem verification.
//!
//! Report conventions: batch commands emit JSON lines (one object per
//! instance or grid point, then one summary object), one-shot queries emit
//! a single JSON object, and `eval` prints a bare element. All output is
//! deterministic: identical flags and seed give byte-identical bytes.
//! Exit codes: 0 pass, 1 usage or input error, 2 refutation (a theorem
//! check came out false, which would indicate an implementation bug).
//!
//! The bipotent zero renders as `-inf`, never `0`, so it cannot be
//! mistaken for the rational zero of the source field.

mod svg;

use std::collections::HashSet;
use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use supertropical::bipotent::BipotentElem;
use supertropical::kapranov::{
    check_dominance_monotonicity, check_kapranov, generate_root_instances,
    generate_theorem51_instances, run_kapranov_suite, run_theorem51_suite, KapranovError,
    KapranovInstance,
};
use supertropical::lab::{audit_supertropical, FiniteSemiringTable, Law};
use supertropical::parse::{
    parse_grid, parse_polynomial, parse_rational_list, parse_supertropical_expr,
};
use supertropical::poly::{corner_locus_grid, tilde_v, var_name};
use supertropical::rational::{int, render_rational, Rational};
use supertropical::sample::{rational_pairs, rng_from_seed};
use supertropical::supervaluation::{
    check_cover, ghost_supervaluation, gs_strong_check, is_strong, is_tangible, tangible_lift,
    verify_dominance, DominanceWitness, Transmission, DEFAULT_FRAGMENT_CAP,
};
use supertropical::valuation::{
    check_valuation_axioms, classify_strict_strong, padic_valuation, Source, Valuation,
    ValuationLaw,
};

#[derive(Parser)]
#[command(
    name = "supertropical",
    version,
    about = "Exact supertropical arithmetic, valuation checks, tropicalization, and theorem verification"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate an element expression, e.g. "t2 + t2" or "t1 * (g0 + t3)"
    Eval {
        /// Expression over elements 0, t<rational>, g<rational> with + * ( )
        #[arg(long)]
        expr: String,
    },
    /// Audit a finite Cayley-table semiring from a JSON file
    Audit {
        /// Path to a table {names, zero, one, add, mul}
        #[arg(long)]
        table: PathBuf,
    },
    /// Check valuation axioms and the strict/strong classification
    Valuation {
        /// Valuation spec: "padic:<p>" or "trivial"
        #[arg(long)]
        valuation: String,
        /// Number of sampled pairs; the pair (1,1) is always appended
        #[arg(long, default_value_t = 1000)]
        pairs: usize,
        /// Sampling seed (default: SUPERTROPICAL_SEED or 0)
        #[arg(long)]
        seed: Option<u64>,
        /// Sample source: the whole field or the nonnegatives
        #[arg(long, value_enum, default_value_t = SourceArg::Q)]
        source: SourceArg,
    },
    /// Check supervaluation laws: cover, tangibility, strongness, dominance
    Supervaluation {
        /// Covered valuation spec: "padic:<p>" or "trivial"
        #[arg(long)]
        valuation: String,
        /// Which supervaluation over it to check
        #[arg(long, value_enum, default_value_t = LiftKind::TangibleLift)]
        kind: LiftKind,
        /// Number of sampled pairs
        #[arg(long, default_value_t = 1000)]
        pairs: usize,
        /// Sampling seed (default: SUPERTROPICAL_SEED or 0)
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Tropicalize a polynomial: apply the valuation to each coefficient
    Tropicalize {
        /// Polynomial over x1..xn (aliases x,y,z), e.g. "x^2-6*x+8"
        #[arg(long)]
        poly: String,
        /// Valuation spec: "padic:<p>" or "trivial"
        #[arg(long)]
        valuation: String,
    },
    /// Scan a grid for corner-locus membership of the tropicalization
    Locus {
        /// Polynomial over x1..xn (aliases x,y,z)
        #[arg(long)]
        poly: String,
        /// Valuation spec: "padic:<p>" or "trivial"
        #[arg(long)]
        valuation: String,
        /// Grid spec like "x=-4..1:1" or "x=-3..3:1,y=-3..3:1/2"
        #[arg(long)]
        grid: String,
        /// Output format (svg requires exactly two variables)
        #[arg(long, value_enum, default_value_t = LocusFormat::Json)]
        format: LocusFormat,
        /// Write the report here instead of stdout
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Verify theorems on generated or supplied instances
    #[command(subcommand)]
    Verify(VerifyCommand),
}

#[derive(Subcommand)]
enum VerifyCommand {
    /// Surpassing checks on generated instances; exit 2 on any refutation
    Theorem51(Theorem51Args),
    /// Corner-locus membership for roots; exit 2 on any non-membership
    Kapranov(KapranovArgs),
    /// Transport of the surpassing statement along ghost-map dominance
    Monotonicity(MonotonicityArgs),
}

#[derive(Args)]
struct Theorem51Args {
    /// Prime for the p-adic valuation under the tangible lift
    #[arg(long, default_value_t = 2)]
    p: u64,
    /// Number of generated instances
    #[arg(long, default_value_t = 1000)]
    count: usize,
    /// Generator seed (default: SUPERTROPICAL_SEED or 0)
    #[arg(long)]
    seed: Option<u64>,
    /// Maximum total degree of generated polynomials (1..=6)
    #[arg(long, default_value_t = 6)]
    degree: u32,
    /// Write the report here instead of stdout
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct KapranovArgs {
    /// Check one supplied polynomial instead of a generated batch
    #[arg(long, requires = "root")]
    poly: Option<String>,
    /// Root of the supplied polynomial, comma-separated coordinates
    #[arg(long, requires = "poly")]
    root: Option<String>,
    /// Prime for the p-adic valuation
    #[arg(long, default_value_t = 2)]
    p: u64,
    /// Number of generated root instances (batch mode)
    #[arg(long, default_value_t = 1000)]
    count: usize,
    /// Generator seed (default: SUPERTROPICAL_SEED or 0)
    #[arg(long)]
    seed: Option<u64>,
    /// Number of variables for generated instances (1 or 2)
    #[arg(long, default_value_t = 1)]
    vars: usize,
    /// Maximum number of linear factors (1..=6)
    #[arg(long, default_value_t = 4)]
    degree: u32,
    /// Write the report here instead of stdout
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct MonotonicityArgs {
    /// Polynomial over x1..xn (aliases x,y,z)
    #[arg(long)]
    poly: String,
    /// Evaluation point, comma-separated coordinates
    #[arg(long)]
    point: String,
    /// Prime for the p-adic valuation
    #[arg(long, default_value_t = 2)]
    p: u64,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum SourceArg {
    Q,
    Qplus,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum LiftKind {
    TangibleLift,
    Ghost,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum LocusFormat {
    Json,
    Csv,
    Svg,
}

/// A finished report: the bytes to emit and the process exit code.
struct Outcome {
    text: String,
    code: u8,
    out: Option<PathBuf>,
}

impl Outcome {
    fn stdout(text: String, code: u8) -> Self {
        Outcome {
            text,
            code,
            out: None,
        }
    }
}

type CliError = Box<dyn std::error::Error>;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // Usage problems are exit 1 by this tool's convention; help and
            // version requests are successes.
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(outcome) => {
            if let Some(path) = &outcome.out {
                if let Err(e) = std::fs::write(path, &outcome.text) {
                    eprintln!("error: cannot write {}: {e}", path.display());
                    return ExitCode::from(1);
                }
            } else {
                print!("{}", outcome.text);
            }
            ExitCode::from(outcome.code)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}

fn resolve_seed(flag: Option<u64>) -> Result<u64, CliError> {
    if let Some(seed) = flag {
        return Ok(seed);
    }
    match std::env::var("SUPERTROPICAL_SEED") {
        Ok(text) => text
            .trim()
            .parse::<u64>()
            .map_err(|_| format!("SUPERTROPICAL_SEED is not a valid seed: '{text}'").into()),
        Err(_) => Ok(0),
    }
}

fn run(cli: Cli) -> Result<Outcome, CliError> {
    match cli.command {
        Command::Eval { expr } => {
            let value = parse_supertropical_expr(&expr)?;
            Ok(Outcome::stdout(format!("{value}\n"), 0))
        }
        Command::Audit { table } => run_audit(&table),
        Command::Valuation {
            valuation,
            pairs,
            seed,
            source,
        } => run_valuation(&valuation, pairs, resolve_seed(seed)?, source),
        Command::Supervaluation {
            valuation,
            kind,
            pairs,
            seed,
        } => run_supervaluation(&valuation, kind, pairs, resolve_seed(seed)?),
        Command::Tropicalize { poly, valuation } => run_tropicalize(&poly, &valuation),
        Command::Locus {
            poly,
            valuation,
            grid,
            format,
            out,
        } => {
            let mut outcome = run_locus(&poly, &valuation, &grid, format)?;
            outcome.out = out;
            Ok(outcome)
        }
        Command::Verify(VerifyCommand::Theorem51(args)) => run_theorem51(args),
        Command::Verify(VerifyCommand::Kapranov(args)) => run_kapranov(args),
        Command::Verify(VerifyCommand::Monotonicity(args)) => run_monotonicity(args),
    }
}

fn run_audit(path: &PathBuf) -> Result<Outcome, CliError> {
    let contents = std::fs::read_to_string(path)
        .map_err(|e| format!("cannot read {}: {e}", path.display()))?;
    let table = FiniteSemiringTable::from_json(&contents)?;
    let report = audit_supertropical(&table);
    let labels =
        |ids: &Vec<usize>| -> Vec<String> { ids.iter().map(|&i| table.label(i).to_string()).collect() };
    let failures: Vec<serde_json::Value> = report
        .failures()
        .map(|c| {
            json!({
                "law": c.law.slug(),
                "witness": c.witness.as_ref().map(|w| labels(w)),
            })
        })
        .collect();
    let doc = json!({
        "elements": (0..table.len()).map(|i| table.label(i).to_string()).collect::<Vec<_>>(),
        "semiring": report.semiring_ok(),
        "supertropical": report.is_supertropical(),
        "st5": report.check(Law::St5TagsMultiplicative).map(|c| c.passed()),
        "e": report.e.map(|i| table.label(i).to_string()),
        "tangibles": report.tangibles.as_ref().map(labels),
        "ghosts": report.ghosts.as_ref().map(labels),
        "failures": failures,
    });
    Ok(Outcome::stdout(format!("{doc}\n"), 0))
}

fn law_slug(law: &ValuationLaw) -> &'static str {
    match law {
        ValuationLaw::Multiplicativity => "multiplicativity",
        ValuationLaw::Subadditivity => "subadditivity",
    }
}

fn run_valuation(
    spec: &str,
    pairs: usize,
    seed: u64,
    source: SourceArg,
) -> Result<Outcome, CliError> {
    let v: Valuation = spec.parse()?;
    let src = match source {
        SourceArg::Q => Source::Q,
        SourceArg::Qplus => Source::Qplus,
    };
    let mut rng = rng_from_seed(seed);
    let mut sampled = rational_pairs(&mut rng, pairs, src);
    sampled.push((int(1), int(1)));
    let axioms = check_valuation_axioms(&v, &sampled);
    let classes = classify_strict_strong(&v, &sampled);
    let witness_json = |w: &supertropical::valuation::EqualityWitness| {
        json!({
            "a": render_rational(&w.a),
            "b": render_rational(&w.b),
            "v_a": w.v_a.to_string(),
            "v_b": w.v_b.to_string(),
            "v_sum": w.v_sum.to_string(),
            "expected": w.expected.to_string(),
        })
    };
    let doc = json!({
        "valuation": v.name(),
        "pairs_checked": axioms.pairs_checked,
        "zero_ok": axioms.zero_ok,
        "unit_ok": axioms.unit_ok,
        "axioms_passed": axioms.passed(),
        "violations": axioms.violations.iter().take(5).map(|viol| json!({
            "law": law_slug(&viol.law),
            "a": render_rational(&viol.a),
            "b": render_rational(&viol.b),
            "got": viol.got.to_string(),
            "bound": viol.bound.to_string(),
        })).collect::<Vec<_>>(),
        "strict_on_samples": classes.strict_on_samples(),
        "strong_on_samples": classes.strong_on_samples(),
        "strict_witness": classes.strict_violations.first().map(witness_json),
    });
    Ok(Outcome::stdout(format!("{doc}\n"), 0))
}

fn run_supervaluation(
    spec: &str,
    kind: LiftKind,
    pairs: usize,
    seed: u64,
) -> Result<Outcome, CliError> {
    let v: Valuation = spec.parse()?;
    let phi = match kind {
        LiftKind::TangibleLift => tangible_lift(&v),
        LiftKind::Ghost => ghost_supervaluation(&v),
    };
    let mut rng = rng_from_seed(seed);
    let sampled = rational_pairs(&mut rng, pairs, Source::Q);
    let samples: Vec<Rational> = sampled.iter().map(|(a, _)| a.clone()).collect();
    let cover = check_cover(&phi, &sampled);
    let tangible = is_tangible(&phi, &samples);
    let strong = is_strong(&phi, &sampled);
    let gs = gs_strong_check(&phi, &sampled);
    let dominance = match kind {
        LiftKind::TangibleLift => {
            let witness = DominanceWitness {
                phi: phi.clone(),
                psi: ghost_supervaluation(&v),
                alpha: Transmission::GhostMap,
                samples: samples.iter().take(8).cloned().collect(),
            };
            Some(verify_dominance(&witness, DEFAULT_FRAGMENT_CAP)?)
        }
        LiftKind::Ghost => None,
    };
    let doc = json!({
        "supervaluation": phi.name(),
        "covers": v.name(),
        "pairs_checked": pairs,
        "cover_ok": cover.passed(),
        "tangible_ok": tangible.holds(),
        "strong_ok": strong.holds(),
        "gs_strong_ok": gs.holds(),
        "strongness_checks_agree": strong.holds() == gs.holds(),
        "ghost_dominance": dominance.map(|d| json!({
            "fragment_size": d.fragment_size,
            "pairs_checked": d.pairs_checked,
            "passed": d.passed(),
        })),
    });
    Ok(Outcome::stdout(format!("{doc}\n"), 0))
}

fn exponent_key(exp: &[u32]) -> String {
    exp.iter()
        .map(|k| k.to_string())
        .collect::<Vec<_>>()
        .join(",")
}

fn run_tropicalize(poly: &str, spec: &str) -> Result<Outcome, CliError> {
    let f = parse_polynomial(poly)?;
    let v: Valuation = spec.parse()?;
    let trop = tilde_v(&v, &f);
    let coefficients: serde_json::Map<String, serde_json::Value> = trop
        .terms()
        .map(|(exp, c)| (exponent_key(exp), json!(c.to_string())))
        .collect();
    let doc = json!({
        "poly": f.to_string(),
        "valuation": v.name(),
        "arity": f.arity(),
        "coefficients": coefficients,
    });
    Ok(Outcome::stdout(format!("{doc}\n"), 0))
}

fn run_locus(
    poly: &str,
    spec: &str,
    grid_text: &str,
    format: LocusFormat,
) -> Result<Outcome, CliError> {
    let f = parse_polynomial(poly)?;
    let v: Valuation = spec.parse()?;
    let trop = tilde_v(&v, &f);
    let grid = parse_grid(grid_text)?;
    let members = corner_locus_grid(&trop, &grid)?;
    let n = grid.axes.len();

    let mut text = String::new();
    match format {
        LocusFormat::Json => {
            let member_set: HashSet<&Vec<BipotentElem>> = members.iter().collect();
            for point in grid.points() {
                let line = json!({
                    "point": point.iter().map(|c| c.to_string()).collect::<Vec<_>>(),
                    "member": member_set.contains(&point),
                });
                writeln!(text, "{line}").expect("string write");
            }
        }
        LocusFormat::Csv => {
            let member_set: HashSet<&Vec<BipotentElem>> = members.iter().collect();
            let header: Vec<String> = (0..n).map(|i| var_name(n, i)).collect();
            writeln!(text, "{},member", header.join(",")).expect("string write");
            for point in grid.points() {
                let coords: Vec<String> = point.iter().map(|c| c.to_string()).collect();
                writeln!(text, "{},{}", coords.join(","), member_set.contains(&point))
                    .expect("string write");
            }
        }
        LocusFormat::Svg => {
            if n != 2 {
                return Err(format!("svg output needs exactly 2 variables, got {n}").into());
            }
            let mut points = Vec::with_capacity(members.len());
            for m in &members {
                match (&m[0], &m[1]) {
                    (BipotentElem::Value(x), BipotentElem::Value(y)) => {
                        points.push((x.clone(), y.clone()));
                    }
                    _ => return Err("grid points must have finite coordinates".into()),
                }
            }
            text = svg::render_svg(&points);
        }
    }
    Ok(Outcome::stdout(text, 0))
}

fn run_theorem51(args: Theorem51Args) -> Result<Outcome, CliError> {
    let seed = resolve_seed(args.seed)?;
    let instances = generate_theorem51_instances(seed, args.count, args.p, args.degree)?;
    let results = run_theorem51_suite(&instances);

    let mut text = String::new();
    let mut refutations = 0usize;
    let mut rejected = 0usize;
    let mut first_refuted: Option<usize> = None;
    for (i, (inst, result)) in instances.iter().zip(&results).enumerate() {
        let line = match result {
            Ok(report) => {
                if report.refuted() {
                    refutations += 1;
                    first_refuted.get_or_insert(i);
                }
                json!({
                    "instance": i,
                    "f": inst.f.to_string(),
                    "a": inst.a.iter().map(render_rational).collect::<Vec<_>>(),
                    "lhs": report.lhs.to_string(),
                    "rhs": report.rhs.to_string(),
                    "gs_holds": report.gs_holds,
                    "ghost_discrepancy_ok": report.ghost_discrepancy_ok,
                    "root_tie": report.root_tie,
                    "refuted": report.refuted(),
                })
            }
            Err(e) => {
                rejected += 1;
                json!({ "instance": i, "error": e.to_string() })
            }
        };
        writeln!(text, "{line}").expect("string write");
    }
    let summary = json!({
        "count": args.count,
        "degree": args.degree,
        "p": args.p,
        "refutations": refutations,
        "rejected": rejected,
        "seed": seed,
    });
    writeln!(text, "{summary}").expect("string write");

    let code = if refutations > 0 {
        eprintln!(
            "REFUTED: instance {} failed the surpassing check; see the report line",
            first_refuted.expect("refutation recorded")
        );
        2
    } else if rejected > 0 {
        eprintln!("{rejected} instance(s) rejected before checking; see the report");
        1
    } else {
        0
    };
    Ok(Outcome {
        text,
        code,
        out: args.out,
    })
}

fn run_kapranov(args: KapranovArgs) -> Result<Outcome, CliError> {
    if let (Some(poly), Some(root)) = (&args.poly, &args.root) {
        let f = parse_polynomial(poly)?;
        let root = parse_rational_list(root)?;
        let v = padic_valuation(args.p)?;
        let inst = KapranovInstance { f, root, v };
        let report = match check_kapranov(&inst) {
            Ok(report) => report,
            Err(e @ KapranovError::NotARoot { .. }) => {
                // Failed premise, not a refutation of the containment.
                return Err(e.to_string().into());
            }
            Err(e) => return Err(e.into()),
        };
        let doc = json!({
            "f": inst.f.to_string(),
            "p": args.p,
            "root": inst.root.iter().map(render_rational).collect::<Vec<_>>(),
            "xi": report.xi.iter().map(|c| c.to_string()).collect::<Vec<_>>(),
            "member": report.member,
        });
        let code = if report.member {
            0
        } else {
            eprintln!("REFUTED: the root's valuation is off the corner locus");
            2
        };
        let mut outcome = Outcome::stdout(format!("{doc}\n"), code);
        outcome.out = args.out;
        return Ok(outcome);
    }

    let seed = resolve_seed(args.seed)?;
    let instances = generate_root_instances(seed, args.count, args.p, args.vars, args.degree)?;
    let results = run_kapranov_suite(&instances);

    let mut text = String::new();
    let mut refutations = 0usize;
    let mut rejected = 0usize;
    let mut first_refuted: Option<usize> = None;
    for (i, (inst, result)) in instances.iter().zip(&results).enumerate() {
        let line = match result {
            Ok(report) => {
                if !report.member {
                    refutations += 1;
                    first_refuted.get_or_insert(i);
                }
                json!({
                    "instance": i,
                    "f": inst.f.to_string(),
                    "root": inst.root.iter().map(render_rational).collect::<Vec<_>>(),
                    "xi": report.xi.iter().map(|c| c.to_string()).collect::<Vec<_>>(),
                    "member": report.member,
                })
            }
            Err(e) => {
                rejected += 1;
                json!({ "instance": i, "error": e.to_string() })
            }
        };
        writeln!(text, "{line}").expect("string write");
    }
    let summary = json!({
        "count": args.count,
        "degree": args.degree,
        "p": args.p,
        "refutations": refutations,
        "rejected": rejected,
        "seed": seed,
        "vars": args.vars,
    });
    writeln!(text, "{summary}").expect("string write");

    let code = if refutations > 0 {
        eprintln!(
            "REFUTED: instance {} has a root valuation off the corner locus",
            first_refuted.expect("refutation recorded")
        );
        2
    } else if rejected > 0 {
        eprintln!("{rejected} instance(s) rejected before checking; see the report");
        1
    } else {
        0
    };
    Ok(Outcome {
        text,
        code,
        out: args.out,
    })
}

fn run_monotonicity(args: MonotonicityArgs) -> Result<Outcome, CliError> {
    let f = parse_polynomial(&args.poly)?;
    let a = parse_rational_list(&args.point)?;
    let v = padic_valuation(args.p)?;
    let phi = tangible_lift(&v);
    let psi = ghost_supervaluation(&v);
    let report = check_dominance_monotonicity(&f, &a, &phi, &psi, &Transmission::GhostMap)?;
    let side = |e: &supertropical::kapranov::TheoremEvaluation| {
        json!({
            "lhs": e.lhs.to_string(),
            "rhs": e.rhs.to_string(),
            "gs_holds": e.gs_holds,
        })
    };
    let doc = json!({
        "f": f.to_string(),
        "point": a.iter().map(render_rational).collect::<Vec<_>>(),
        "p": args.p,
        "dominance_passed": report.dominance.passed(),
        "fragment_size": report.dominance.fragment_size,
        "phi": side(&report.phi),
        "psi": side(&report.psi),
        "lhs_transport_ok": report.lhs_transport.ok(),
        "rhs_transport_ok": report.rhs_transport.ok(),
        "passed": report.passed(),
    });
    let code = if report.passed() {
        0
    } else {
        eprintln!("REFUTED: monotonicity transport failed; see the report");
        2
    };
    Ok(Outcome::stdout(format!("{doc}\n"), code))
}
