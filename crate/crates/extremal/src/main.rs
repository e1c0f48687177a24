//! Command-line front end: JSON in, JSON out, canonical rational strings,
//! deterministic output, exit codes 0 (success) / 2 (invalid input) /
//! 1 (internal failure).

use std::fs;
use std::path::PathBuf;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use extremal::dualspace::{classify_extreme, enumerate_compatible};
use extremal::error::{Error, Result};
use extremal::lorentz::{
    enumerate_lorentz_extremes, lorentz_norm, predual_norm, rigidity_check, weights_proportional,
    WeightSeq,
};
use extremal::polytope::{compare_theorem_oracle, signed_perm_isometry_scan, Space};
use extremal::rational::{format_rational, parse_rational};
use extremal::sampling::{norm_equivalence_suite, norming_set_suite, pairing_suite};
use extremal::vnorm::{ball_fixture, norm_bruteforce, norm_dp, BallFixture};
use extremal::SparseVec;

#[derive(Parser)]
#[command(name = "extremal", disable_help_subcommand = true)]
#[command(about = "Exact-rational norms, dual-ball extreme points and isometry scans")]
struct Cli {
    /// Wrap the output in a run report with command echo and elapsed time.
    #[arg(long, global = true)]
    report: bool,
    /// Also write the output JSON to this file.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Sequence-space norms of sparse rational vectors.
    #[command(subcommand)]
    Norm(NormCmd),
    /// Dual-ball functionals: classification and enumeration.
    #[command(subcommand)]
    Dual(DualCmd),
    /// Brute-force polytope oracle runs.
    #[command(subcommand)]
    Oracle(OracleCmd),
    /// Signed-permutation isometry scans.
    #[command(subcommand)]
    Isometry(IsometryCmd),
    /// Lorentz space d(w,1) and its predual.
    #[command(subcommand)]
    Lorentz(LorentzCmd),
    /// Named unit-ball fixture vectors.
    #[command(subcommand)]
    Fixtures(FixturesCmd),
    /// Seeded randomized property suites.
    Selftest(SelftestArgs),
}

#[derive(Subcommand)]
enum NormCmd {
    /// Difference-sup norm over permissible index sets.
    V1 {
        /// JSON file with {"coords": {...}}.
        #[arg(long)]
        vector: PathBuf,
        /// Also output a maximizing index set (lexicographically smallest).
        #[arg(long)]
        witness: bool,
    },
}

#[derive(Subcommand)]
enum DualCmd {
    /// Classify a functional: compatible? extreme point of the dual ball?
    Classify {
        #[arg(long)]
        functional: PathBuf,
    },
    /// Enumerate compatible functionals with support in [1, bound].
    Enumerate {
        #[arg(long)]
        bound: usize,
        /// Keep only the ones the classifier marks extreme.
        #[arg(long)]
        extreme_only: bool,
        /// Output just the count.
        #[arg(long)]
        count_only: bool,
    },
}

#[derive(Subcommand)]
enum OracleCmd {
    /// Compare the extreme-point classifier with convex-hull vertex-hood.
    Compare {
        #[arg(long)]
        bound: usize,
        /// Max support index of the candidates checked; needs window <= bound - 2.
        #[arg(long)]
        window: usize,
    },
}

#[derive(Subcommand)]
enum IsometryCmd {
    /// Find all signed permutations of [1..n] preserving the truncated norm.
    Scan {
        /// "v1" or "lorentz".
        #[arg(long)]
        space: String,
        #[arg(long)]
        n: usize,
        /// Weight spec for lorentz: harmonic | power:q | explicit:a,b,c | file.json.
        #[arg(long)]
        weights: Option<String>,
    },
}

#[derive(Subcommand)]
enum LorentzCmd {
    /// d(w,1) norm: decreasing rearrangement paired with the weights.
    Norm {
        #[arg(long)]
        vector: PathBuf,
        #[arg(long)]
        weights: String,
    },
    /// Predual norm: max of partial-sum ratios S(n)/W(n).
    Predual {
        #[arg(long)]
        vector: PathBuf,
        #[arg(long)]
        weights: String,
    },
    /// All extreme points of the truncated d(w,1) unit ball.
    Extremes {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        weights: String,
        #[arg(long)]
        count_only: bool,
    },
    /// Test two weight sequences for proportionality up to a depth.
    Proportional {
        #[arg(long)]
        left: String,
        #[arg(long)]
        right: String,
        #[arg(long)]
        depth: usize,
    },
    /// Scan scaled signed permutations for isometries d(v,1) -> d(w,1).
    Rigidity {
        #[arg(long)]
        left: String,
        #[arg(long)]
        right: String,
        #[arg(long)]
        n: usize,
    },
}

#[derive(Subcommand)]
enum FixturesCmd {
    /// List the six unit-ball fixture families and their parameters.
    List,
    /// Materialize one fixture vector.
    Ball(BallArgs),
}

#[derive(Args)]
struct BallArgs {
    /// unit | half-unit | e1-plus-half-ej | half-pair | chi-prefix | half-chi
    #[arg(long)]
    kind: String,
    #[arg(long)]
    i: Option<usize>,
    #[arg(long)]
    j: Option<usize>,
    /// For half-pair: use e_i - e_j instead of e_i + e_j.
    #[arg(long)]
    minus: bool,
}

#[derive(Args)]
struct SelftestArgs {
    /// norm | norming | pairing | all
    #[arg(long, default_value = "all")]
    suite: String,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 100)]
    cases: usize,
    #[arg(long, default_value_t = 8)]
    max_index: usize,
}

fn read_vector(path: &PathBuf) -> Result<SparseVec> {
    let text = fs::read_to_string(path)
        .map_err(|e| Error::invalid(format!("cannot read {}: {e}", path.display())))?;
    serde_json::from_str(&text)
        .map_err(|e| Error::invalid(format!("bad vector JSON in {}: {e}", path.display())))
}

/// harmonic | power:q | explicit:a,b,c | path to a weight-spec JSON file.
fn parse_weights(spec: &str) -> Result<WeightSeq> {
    if spec == "harmonic" {
        return Ok(WeightSeq::harmonic());
    }
    if let Some(q) = spec.strip_prefix("power:") {
        return WeightSeq::power(parse_rational(q)?);
    }
    if let Some(list) = spec.strip_prefix("explicit:") {
        let values: Result<Vec<_>> = list.split(',').map(parse_rational).collect();
        return WeightSeq::explicit(values?);
    }
    let text = fs::read_to_string(spec)
        .map_err(|e| Error::invalid(format!("cannot read weight spec {spec}: {e}")))?;
    serde_json::from_str(&text).map_err(|e| Error::invalid(format!("bad weight JSON: {e}")))
}

/// EXTREMAL_BUDGET caps the size of any enumeration the CLI emits.
fn check_budget(count: usize) -> Result<()> {
    match std::env::var("EXTREMAL_BUDGET") {
        Err(_) => Ok(()),
        Ok(raw) => {
            let cap: usize = raw
                .parse()
                .map_err(|_| Error::invalid(format!("EXTREMAL_BUDGET must be an integer, got {raw:?}")))?;
            if count > cap {
                Err(Error::BudgetExceeded(format!(
                    "enumeration of size {count} exceeds EXTREMAL_BUDGET={cap}"
                )))
            } else {
                Ok(())
            }
        }
    }
}

fn to_value<T: serde::Serialize>(v: &T) -> Result<Value> {
    serde_json::to_value(v).map_err(|e| Error::Internal(format!("serialization failed: {e}")))
}

fn run(cli: &Cli) -> Result<Value> {
    match &cli.command {
        Command::Norm(NormCmd::V1 { vector, witness }) => {
            let x = read_vector(vector)?;
            if *witness {
                let (norm, set) = norm_bruteforce(&x)?;
                Ok(json!({"norm": format_rational(&norm), "witness": set.elems()}))
            } else {
                Ok(json!({"norm": format_rational(&norm_dp(&x))}))
            }
        }
        Command::Dual(DualCmd::Classify { functional }) => {
            let f = read_vector(functional)?;
            let class = classify_extreme(&f);
            Ok(json!({
                "verdict": to_value(&class.verdict)?,
                "extreme": class.verdict.is_extreme(),
                "reason": class.reason,
            }))
        }
        Command::Dual(DualCmd::Enumerate {
            bound,
            extreme_only,
            count_only,
        }) => {
            let all = enumerate_compatible(*bound)?;
            let kept: Vec<&SparseVec> = all
                .iter()
                .map(|f| f.coords())
                .filter(|f| !extreme_only || classify_extreme(f).verdict.is_extreme())
                .collect();
            check_budget(kept.len())?;
            if *count_only {
                Ok(json!({"count": kept.len()}))
            } else {
                Ok(json!({"count": kept.len(), "functionals": to_value(&kept)?}))
            }
        }
        Command::Oracle(OracleCmd::Compare { bound, window }) => {
            let report = compare_theorem_oracle(*bound, *window)?;
            to_value(&report)
        }
        Command::Isometry(IsometryCmd::Scan { space, n, weights }) => {
            let space = match (space.as_str(), weights) {
                ("v1", None) => Space::V1,
                ("v1", Some(_)) => {
                    return Err(Error::invalid("--weights only applies to --space lorentz"))
                }
                ("lorentz", Some(spec)) => Space::Lorentz(parse_weights(spec)?),
                ("lorentz", None) => {
                    return Err(Error::invalid("--space lorentz requires --weights"))
                }
                (other, _) => {
                    return Err(Error::invalid(format!(
                        "unknown space {other:?}; expected v1 or lorentz"
                    )))
                }
            };
            let isometries = signed_perm_isometry_scan(&space, *n)?;
            check_budget(isometries.len())?;
            Ok(json!({"count": isometries.len(), "isometries": to_value(&isometries)?}))
        }
        Command::Lorentz(LorentzCmd::Norm { vector, weights }) => {
            let x = read_vector(vector)?;
            let w = parse_weights(weights)?;
            Ok(json!({"norm": format_rational(&lorentz_norm(&x, &w)?)}))
        }
        Command::Lorentz(LorentzCmd::Predual { vector, weights }) => {
            let x = read_vector(vector)?;
            let w = parse_weights(weights)?;
            Ok(json!({"norm": format_rational(&predual_norm(&x, &w)?)}))
        }
        Command::Lorentz(LorentzCmd::Extremes {
            n,
            weights,
            count_only,
        }) => {
            let w = parse_weights(weights)?;
            let points = enumerate_lorentz_extremes(*n, &w)?;
            check_budget(points.len())?;
            if *count_only {
                Ok(json!({"count": points.len()}))
            } else {
                Ok(json!({"count": points.len(), "extremes": to_value(&points)?}))
            }
        }
        Command::Lorentz(LorentzCmd::Proportional { left, right, depth }) => {
            let v = parse_weights(left)?;
            let w = parse_weights(right)?;
            let lambda = weights_proportional(&v, &w, *depth)?;
            Ok(json!({
                "proportional": lambda.is_some(),
                "lambda": lambda.as_ref().map(format_rational),
            }))
        }
        Command::Lorentz(LorentzCmd::Rigidity { left, right, n }) => {
            let v = parse_weights(left)?;
            let w = parse_weights(right)?;
            let report = rigidity_check(&v, &w, *n)?;
            check_budget(report.isometries.len())?;
            to_value(&report)
        }
        Command::Fixtures(FixturesCmd::List) => Ok(json!({
            "families": [
                {"kind": "unit", "params": "i in {1,2}", "vector": "e_i"},
                {"kind": "half-unit", "params": "i >= 3", "vector": "e_i/2"},
                {"kind": "e1-plus-half-ej", "params": "j >= 2", "vector": "e_1 + e_j/2"},
                {"kind": "half-pair", "params": "i <= 2 <= j, i < j, optional --minus", "vector": "(e_i +/- e_j)/2"},
                {"kind": "chi-prefix", "params": "j >= 2", "vector": "chi_[1,j]"},
                {"kind": "half-chi", "params": "2 <= i < j", "vector": "chi_[i,j]/2"},
            ]
        })),
        Command::Fixtures(FixturesCmd::Ball(args)) => {
            let need = |p: Option<usize>, name: &str| {
                p.ok_or_else(|| Error::invalid(format!("fixture {} needs --{name}", args.kind)))
            };
            let kind = match args.kind.as_str() {
                "unit" => BallFixture::Unit { i: need(args.i, "i")? },
                "half-unit" => BallFixture::HalfUnit { i: need(args.i, "i")? },
                "e1-plus-half-ej" => BallFixture::E1PlusHalfEj { j: need(args.j, "j")? },
                "half-pair" => BallFixture::HalfPair {
                    i: need(args.i, "i")?,
                    j: need(args.j, "j")?,
                    plus: !args.minus,
                },
                "chi-prefix" => BallFixture::ChiPrefix { j: need(args.j, "j")? },
                "half-chi" => BallFixture::HalfChi {
                    i: need(args.i, "i")?,
                    j: need(args.j, "j")?,
                },
                other => return Err(Error::invalid(format!("unknown fixture kind {other:?}"))),
            };
            let v = ball_fixture(kind)?;
            let norm = norm_dp(&v);
            Ok(json!({"vector": to_value(&v)?, "norm": format_rational(&norm)}))
        }
        Command::Selftest(args) => {
            let mut reports = Vec::new();
            if matches!(args.suite.as_str(), "norm" | "all") {
                reports.push(norm_equivalence_suite(args.seed, args.cases, args.max_index)?);
            }
            if matches!(args.suite.as_str(), "norming" | "all") {
                reports.push(norming_set_suite(args.seed, args.cases, args.max_index.min(7))?);
            }
            if matches!(args.suite.as_str(), "pairing" | "all") {
                reports.push(pairing_suite(
                    args.seed,
                    args.cases,
                    args.max_index,
                    &WeightSeq::harmonic(),
                )?);
            }
            if reports.is_empty() {
                return Err(Error::invalid(format!(
                    "unknown suite {:?}; expected norm, norming, pairing or all",
                    args.suite
                )));
            }
            let failed: usize = reports.iter().map(|r| r.failures.len()).sum();
            if failed > 0 {
                let detail = serde_json::to_string(&reports).unwrap_or_default();
                return Err(Error::Internal(format!(
                    "{failed} randomized property failures: {detail}"
                )));
            }
            Ok(json!({"passed": true, "suites": to_value(&reports)?}))
        }
    }
}

fn main() {
    let argv: Vec<String> = std::env::args().collect();
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // clap's own --help/--version prints belong on stdout with exit 0
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            std::process::exit(code);
        }
    };
    let start = Instant::now();
    match run(&cli) {
        Ok(outputs) => {
            let body = if cli.report {
                json!({
                    "command": argv[1..].join(" "),
                    "inputs": &argv[1..],
                    "outputs": outputs,
                    "elapsed_ms": start.elapsed().as_millis() as u64,
                })
            } else {
                outputs
            };
            let text = body.to_string();
            if let Some(path) = &cli.out {
                if let Err(e) = fs::write(path, format!("{text}\n")) {
                    eprintln!("error: cannot write {}: {e}", path.display());
                    std::process::exit(1);
                }
            }
            println!("{text}");
        }
        Err(e) => {
            eprintln!("error: {e}");
            std::process::exit(e.exit_code());
        }
    }
}
