//! Batch front end: ingest structure files, run constructors, validators,
//! coherence sweeps and round-trips, and emit machine-readable reports.
//!
//! Exit codes: 0 when the report passes, 1 on check failures, 2 on parse or
//! precondition errors.

mod schema;

use catalan_monoidal::catalan::{catalan_number, CatalanSimplex};
use catalan_monoidal::classify::{
    gamma_shapes, lax_axioms, lax_classify, lax_recover, recover_gamma, sigma_axioms,
    sigma_classify, skew_axioms, skew_classify,
};
use catalan_monoidal::mapcore::MapData;
use catalan_monoidal::ordcomb::IndexSubset;
use catalan_monoidal::report::Report;
use clap::{Args, Parser, Subcommand};
use schema::InputFile;
use serde_json::{json, Value};
use std::path::PathBuf;

#[derive(Parser)]
#[command(
    name = "catmon",
    about = "Coherence tooling for monoidal-type categories"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct CommonOpts {
    /// Truncation dimension for tables and the coherence sweep.
    #[arg(long, default_value_t = 6)]
    max_dim: usize,
    /// Arity bound for tensors and associators (defaults to --max-dim).
    #[arg(long)]
    arity_bound: Option<usize>,
    /// Worker threads for the coherence sweep; the report never depends on it.
    #[arg(long, default_value_t = 1)]
    workers: usize,
    /// Write the report here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Re-check one instance: a JSON object {"simplex":..., "A":..., "B":...}.
    #[arg(long)]
    witness: Option<String>,
}

#[derive(Subcommand)]
enum Command {
    /// Count (and optionally list) the simplices of one dimension.
    EnumerateCatalan {
        n: usize,
        /// Include the simplices themselves in the report.
        #[arg(long)]
        list: bool,
        /// Restrict to nondegenerate simplices.
        #[arg(long)]
        nondegenerate: bool,
        #[command(flatten)]
        common: CommonOpts,
    },
    /// Check the lax monoidal axioms of a structure file.
    CheckLax {
        file: PathBuf,
        #[command(flatten)]
        common: CommonOpts,
    },
    /// Check the five skew monoidal diagrams of a structure file.
    CheckSkew {
        file: PathBuf,
        #[command(flatten)]
        common: CommonOpts,
    },
    /// Check the sigma-monoidal conditions of a structure file.
    CheckSigma {
        file: PathBuf,
        #[command(flatten)]
        common: CommonOpts,
    },
    /// Build the classifying data of a lax structure and sweep the coherence
    /// equation.
    ClassifyLax {
        file: PathBuf,
        #[command(flatten)]
        common: CommonOpts,
    },
    /// Build the classifying data of a skew structure and sweep the
    /// coherence equation.
    ClassifySkew {
        file: PathBuf,
        #[command(flatten)]
        common: CommonOpts,
    },
    /// Build the classifying data of a sigma structure and sweep the
    /// coherence equation.
    ClassifySigma {
        file: PathBuf,
        #[command(flatten)]
        common: CommonOpts,
    },
    /// Classify a lax structure, recover it back, and compare.
    RoundtripLax {
        file: PathBuf,
        #[command(flatten)]
        common: CommonOpts,
    },
    /// Validate raw map data and sweep the coherence equation.
    CheckMapdata {
        file: PathBuf,
        #[command(flatten)]
        common: CommonOpts,
    },
}

fn main() {
    let cli = Cli::parse();
    std::process::exit(run(cli));
}

fn run(cli: Cli) -> i32 {
    match dispatch(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("catmon: {e}");
            2
        }
    }
}

fn emit(common: &CommonOpts, report_json: &Value, summary: &str) -> Result<(), String> {
    let text = serde_json::to_string_pretty(report_json).map_err(|e| e.to_string())?;
    match &common.out {
        Some(path) => std::fs::write(path, text + "\n").map_err(|e| e.to_string())?,
        None => println!("{text}"),
    }
    eprintln!("{summary}");
    Ok(())
}

fn load(path: &PathBuf) -> Result<(String, InputFile), String> {
    let text = std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    let input: InputFile =
        serde_json::from_str(&text).map_err(|e| format!("{}: {e}", path.display()))?;
    Ok((text, input))
}

fn report_exit(report: &Report) -> i32 {
    if report.pass() {
        0
    } else {
        1
    }
}

struct WitnessSpec {
    simplex: CatalanSimplex,
    a: IndexSubset,
    b: IndexSubset,
}

fn parse_witness(text: &str) -> Result<WitnessSpec, String> {
    #[derive(serde::Deserialize)]
    struct Wire {
        simplex: CatalanSimplex,
        #[serde(rename = "A")]
        a: Vec<usize>,
        #[serde(rename = "B")]
        b: Vec<usize>,
    }
    let wire: Wire = serde_json::from_str(text).map_err(|e| format!("witness: {e}"))?;
    let n = wire.simplex.dim();
    Ok(WitnessSpec {
        a: IndexSubset::new(n, wire.a).map_err(|e| e.to_string())?,
        b: IndexSubset::new(n, wire.b).map_err(|e| e.to_string())?,
        simplex: wire.simplex,
    })
}

/// Re-check a single coherence instance named by a failure witness.
fn witness_report(d: &MapData, spec: &WitnessSpec) -> Result<Report, String> {
    let mut report = Report::new();
    let check = d
        .check_dagger(&spec.simplex, &spec.a, &spec.b)
        .map_err(|e| e.to_string())?;
    if !check.holds {
        report.push(
            "dagger",
            json!({
                "simplex": spec.simplex,
                "A": spec.a.elements(),
                "B": spec.b.elements(),
                "lhs": check.lhs,
                "rhs": check.rhs,
            }),
        );
    }
    Ok(report)
}

fn sweep_or_witness(d: &MapData, common: &CommonOpts) -> Result<Report, String> {
    match &common.witness {
        Some(text) => witness_report(d, &parse_witness(text)?),
        None => Ok(d.check_all(common.workers.max(1))),
    }
}

/// Keep only the failures matching a witness filter: the `check` name plus
/// any witness fields given.
fn filter_by_witness(report: &mut Report, witness: &Option<String>) -> Result<(), String> {
    let Some(text) = witness else {
        return Ok(());
    };
    let filter: Value = serde_json::from_str(text).map_err(|e| format!("witness: {e}"))?;
    report.failures.retain(|f| {
        if let Some(check) = filter.get("check").and_then(|v| v.as_str()) {
            if check != f.check {
                return false;
            }
        }
        filter
            .as_object()
            .map(|obj| {
                obj.iter()
                    .filter(|(k, _)| k.as_str() != "check")
                    .all(|(k, v)| f.witness.get(k) == Some(v))
            })
            .unwrap_or(true)
    });
    Ok(())
}

fn validate_common(common: &CommonOpts) -> Result<(), String> {
    if common.max_dim < 1 {
        return Err("--max-dim must be at least 1".into());
    }
    Ok(())
}

fn dispatch(cli: Cli) -> Result<i32, String> {
    match cli.command {
        Command::EnumerateCatalan {
            n,
            list,
            nondegenerate,
            common,
        } => {
            let simplices = CatalanSimplex::enumerate(n, nondegenerate);
            let mut body = json!({
                "kind": "catalan-census",
                "n": n,
                "count": simplices.len(),
                "catalan_number": catalan_number(n + 1),
            });
            if list {
                body["simplices"] = serde_json::to_value(&simplices).map_err(|e| e.to_string())?;
            }
            emit(
                &common,
                &body,
                &format!("dimension {n}: {} simplices", simplices.len()),
            )?;
            Ok(0)
        }
        Command::CheckLax { file, common } => {
            validate_common(&common)?;
            let (_, input) = load(&file)?;
            let bound = common.arity_bound.unwrap_or(common.max_dim);
            let s = schema::parse_lax(&input, bound).map_err(|e| e.to_string())?;
            let mut report = lax_axioms(&s);
            filter_by_witness(&mut report, &common.witness)?;
            emit(&common, &report.to_json(), &format!("lax axioms: {report}"))?;
            Ok(report_exit(&report))
        }
        Command::CheckSkew { file, common } => {
            validate_common(&common)?;
            let (_, input) = load(&file)?;
            let s = schema::parse_skew(&input).map_err(|e| e.to_string())?;
            let mut report = skew_axioms(&s);
            filter_by_witness(&mut report, &common.witness)?;
            emit(
                &common,
                &report.to_json(),
                &format!("skew axioms: {report}"),
            )?;
            Ok(report_exit(&report))
        }
        Command::CheckSigma { file, common } => {
            validate_common(&common)?;
            let (_, input) = load(&file)?;
            let s = schema::parse_sigma(&input).map_err(|e| e.to_string())?;
            let mut report = sigma_axioms(&s, common.max_dim);
            filter_by_witness(&mut report, &common.witness)?;
            emit(
                &common,
                &report.to_json(),
                &format!("sigma conditions: {report}"),
            )?;
            Ok(report_exit(&report))
        }
        Command::ClassifyLax { file, common } => {
            validate_common(&common)?;
            let (_, input) = load(&file)?;
            let bound = common.arity_bound.unwrap_or(common.max_dim);
            let s = schema::parse_lax(&input, bound).map_err(|e| e.to_string())?;
            let d = lax_classify(&s, common.max_dim).map_err(|e| e.to_string())?;
            let report = sweep_or_witness(&d, &common)?;
            emit(
                &common,
                &report.to_json(),
                &format!("lax classifying data: {report}"),
            )?;
            Ok(report_exit(&report))
        }
        Command::ClassifySkew { file, common } => {
            validate_common(&common)?;
            let (_, input) = load(&file)?;
            let s = schema::parse_skew(&input).map_err(|e| e.to_string())?;
            match skew_classify(&s, common.max_dim) {
                Ok(d) => {
                    let report = sweep_or_witness(&d, &common)?;
                    emit(
                        &common,
                        &report.to_json(),
                        &format!("skew classifying data: {report}"),
                    )?;
                    Ok(report_exit(&report))
                }
                Err(catalan_monoidal::Error::Coherence(msg))
                | Err(catalan_monoidal::Error::NoPath(msg)) => {
                    let mut report = Report::new();
                    report.push("path-search", json!({ "detail": msg }));
                    emit(
                        &common,
                        &report.to_json(),
                        &format!("skew classifying data: {report}"),
                    )?;
                    Ok(1)
                }
                Err(e) => Err(e.to_string()),
            }
        }
        Command::ClassifySigma { file, common } => {
            validate_common(&common)?;
            let (_, input) = load(&file)?;
            let s = schema::parse_sigma(&input).map_err(|e| e.to_string())?;
            let d = sigma_classify(&s, common.max_dim).map_err(|e| e.to_string())?;
            let report = sweep_or_witness(&d, &common)?;
            emit(
                &common,
                &report.to_json(),
                &format!("sigma classifying data: {report}"),
            )?;
            Ok(report_exit(&report))
        }
        Command::RoundtripLax { file, common } => {
            validate_common(&common)?;
            let (_, input) = load(&file)?;
            let bound = common.arity_bound.unwrap_or(common.max_dim);
            // classification needs the arity bound to cover the truncation;
            // recovery and comparison then run at the requested bound
            let s =
                schema::parse_lax(&input, bound.max(common.max_dim)).map_err(|e| e.to_string())?;
            let d = lax_classify(&s, common.max_dim).map_err(|e| e.to_string())?;
            let recovered = lax_recover(&d, bound).map_err(|e| e.to_string())?;
            let mut report = Report::new();
            if recovered.base() != s.base() {
                report.push("roundtrip-base", json!({}));
            }
            for n in 0..=bound {
                match (recovered.tensor(n), s.tensor(n)) {
                    (Ok(a), Ok(b)) if a == b => {}
                    _ => report.push("roundtrip-tensor", json!({ "arity": n })),
                }
            }
            if recovered.iota().components() != s.iota().components() {
                report.push("roundtrip-iota", json!({}));
            }
            for shape in gamma_shapes(bound, bound) {
                let Ok((pattern, _)) = catalan_monoidal::classify::gamma_pattern(&shape) else {
                    continue;
                };
                if pattern.dim() > d.max_dim() {
                    continue;
                }
                match (recover_gamma(&d, &shape), s.gamma_at(&shape)) {
                    (Ok(a), Ok(b)) if a == b => {}
                    _ => report.push(
                        "roundtrip-gamma",
                        json!({ "outer": shape.outer, "inner": shape.inner }),
                    ),
                }
            }
            let summary = if report.pass() {
                "roundtrip: recovered == input".to_string()
            } else {
                format!("roundtrip: {report}")
            };
            emit(&common, &report.to_json(), &summary)?;
            Ok(report_exit(&report))
        }
        Command::CheckMapdata { file, common } => {
            validate_common(&common)?;
            let text =
                std::fs::read_to_string(&file).map_err(|e| format!("{}: {e}", file.display()))?;
            let d = schema::parse_mapdata(&text).map_err(|e| e.to_string())?;
            let report = sweep_or_witness(&d, &common)?;
            emit(&common, &report.to_json(), &format!("map data: {report}"))?;
            Ok(report_exit(&report))
        }
    }
}
