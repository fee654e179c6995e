//! Batch front-end: load or generate polytopes, run inequality suites,
//! falsification campaigns, tightness searches, and combinatorial oracles.
//!
//! Exit codes: 0 all asserted checks pass, 1 some asserted check failed,
//! 2 malformed input or configuration, 3 hypothesis/applicability error.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use polyframe::combinatorics::{cayley_constant, spanning_tree_count};
use polyframe::frame::{cauchy_binet, frame_operator, Frame};
use polyframe::inequality::{catalog_for, run_suite, Tolerances};
use polyframe::polytope::{Family, InscribedPolytope};
use polyframe::report::{campaign_csv, PolytopeJson, ReportJson, ResultJson, SearchJson, TightConfigJson};
use polyframe::search::{
    falsification_campaign, sample_polytope, tightness_search, verify_known_tight_configs,
    FrameKind,
};
use polyframe::tolerances::PARTITION_REL_TOL;
use polyframe::Error;

#[derive(Parser)]
#[command(name = "polyframe", version, about = "Frames from inscribed polytopes: verify, falsify, search")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate the inequality catalog on one polytope and write a report.
    Verify(CommonArgs),
    /// Run a falsification campaign and write per-sample rows as CSV.
    Sample(CommonArgs),
    /// Search for tight configurations, or verify the known ones.
    Search(CommonArgs),
    /// Combinatorial oracles: Cayley constants, spanning-tree counts,
    /// Cauchy-Binet spot checks.
    Oracle(CommonArgs),
}

#[derive(Args, Serialize)]
struct CommonArgs {
    /// simplex | quadrilateral | pyramid_quad | bipyramid_tri
    #[arg(long)]
    family: Option<String>,
    /// Ambient dimension (defaults to the family's natural one)
    #[arg(long)]
    dim: Option<usize>,
    /// Sample count for campaigns and spot checks
    #[arg(long, default_value_t = 1000)]
    n: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Relative slack below which an inequality still counts as holding
    #[arg(long, default_value_t = 1e-9)]
    tol: f64,
    /// Relative gap below which a held inequality counts as equality
    #[arg(long = "eq-tol", default_value_t = 1e-7)]
    eq_tol: f64,
    /// Polytope JSON to load instead of sampling
    #[arg(long)]
    input: Option<PathBuf>,
    /// Output file; stdout when omitted
    #[arg(long)]
    out: Option<PathBuf>,
    /// json | csv (each command has a natural default)
    #[arg(long)]
    format: Option<String>,
    /// Frame for tightness search: vertex | edge | augmented_edge |
    /// augmented_edge_no_synthetic
    #[arg(long)]
    frame: Option<String>,
    /// Oracle: emit the Cayley constant table
    #[arg(long)]
    cayley: bool,
    /// Oracle: emit the spanning-tree count table
    #[arg(long)]
    trees: bool,
    /// Also write the polytope that was verified to this path
    #[arg(long = "emit-polytope")]
    emit_polytope: Option<PathBuf>,
}

struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn config(message: impl Into<String>) -> Self {
        Failure { code: 2, message: message.into() }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Validation(_) | Error::Parameter(_) => 2,
            _ => 3,
        };
        Failure { code, message: e.to_string() }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure { code: 2, message: e.to_string() }
    }
}

impl From<serde_json::Error> for Failure {
    fn from(e: serde_json::Error) -> Self {
        Failure { code: 2, message: format!("invalid JSON: {e}") }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Err(f) = configure_threads() {
        eprintln!("polyframe: {}", f.message);
        return ExitCode::from(f.code);
    }
    let result = match &cli.command {
        Command::Verify(args) => cmd_verify(args),
        Command::Sample(args) => cmd_sample(args),
        Command::Search(args) => cmd_search(args),
        Command::Oracle(args) => cmd_oracle(args),
    };
    match result {
        Ok(clean) => {
            if clean {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(f) => {
            eprintln!("polyframe: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

fn configure_threads() -> Result<(), Failure> {
    match std::env::var("POLYFRAME_THREADS") {
        Err(_) => Ok(()),
        Ok(raw) => {
            let n: usize = raw
                .parse()
                .map_err(|_| Failure::config(format!("POLYFRAME_THREADS must be a count, got {raw:?}")))?;
            if n == 0 {
                return Ok(());
            }
            rayon::ThreadPoolBuilder::new()
                .num_threads(n)
                .build_global()
                .map_err(|e| Failure::config(e.to_string()))
        }
    }
}

fn parse_family(raw: &str) -> Result<Family, Failure> {
    match raw {
        "simplex" => Ok(Family::Simplex),
        "quadrilateral" => Ok(Family::Quadrilateral),
        "pyramid_quad" => Ok(Family::PyramidQuad),
        "bipyramid_tri" => Ok(Family::BipyramidTri),
        other => Err(Failure::config(format!("unknown family {other:?}"))),
    }
}

fn default_dim(family: Family) -> usize {
    match family {
        Family::Simplex => 3,
        Family::Quadrilateral => 2,
        Family::PyramidQuad | Family::BipyramidTri => 3,
    }
}

fn resolve_format(args: &CommonArgs, natural: &str) -> Result<String, Failure> {
    match args.format.as_deref() {
        None => Ok(natural.to_string()),
        Some("json") => Ok("json".into()),
        Some("csv") => Ok("csv".into()),
        Some(other) => Err(Failure::config(format!("unknown format {other:?}"))),
    }
}

/// Temp-file-then-rename so readers never observe a half-written report.
fn write_atomic(path: &Path, contents: &str) -> Result<(), Failure> {
    let mut tmp = path.as_os_str().to_owned();
    tmp.push(".tmp");
    let tmp = PathBuf::from(tmp);
    fs::write(&tmp, contents)?;
    fs::rename(&tmp, path)?;
    Ok(())
}

fn emit(args: &CommonArgs, contents: &str) -> Result<(), Failure> {
    match &args.out {
        Some(path) => write_atomic(path, contents),
        None => {
            print!("{contents}");
            if !contents.ends_with('\n') {
                println!();
            }
            Ok(())
        }
    }
}

fn load_or_sample(args: &CommonArgs) -> Result<InscribedPolytope, Failure> {
    if let Some(path) = &args.input {
        let text = fs::read_to_string(path)?;
        let parsed: PolytopeJson = serde_json::from_str(&text)?;
        return Ok(parsed.into_polytope()?);
    }
    let family = parse_family(
        args.family
            .as_deref()
            .ok_or_else(|| Failure::config("need --input or --family"))?,
    )?;
    let dim = args.dim.unwrap_or_else(|| default_dim(family));
    Ok(sample_polytope(family, dim, args.seed)?)
}

/// The partition identity is checked alongside the catalog: the cone cells
/// must tile the polytope. Reported like any other identity row.
fn partition_row(p: &InscribedPolytope) -> Option<ResultJson> {
    let partition = p.partition().ok()?;
    let lhs: f64 = partition.cell_volumes().iter().sum();
    let rhs = p.volume();
    let gap = rhs - lhs;
    let holds = gap.abs() <= PARTITION_REL_TOL * rhs.abs();
    Some(ResultJson {
        id: "PARTITION_ADDITIVITY".into(),
        lhs,
        rhs,
        gap,
        relative_gap: gap / rhs.abs().max(1e-300),
        holds,
        equality: holds,
    })
}

#[derive(Serialize)]
struct VerifyOutput<'a> {
    config: &'a CommonArgs,
    polytope: PolytopeJson,
    results: Vec<ResultJson>,
}

fn cmd_verify(args: &CommonArgs) -> Result<bool, Failure> {
    if resolve_format(args, "json")? != "json" {
        return Err(Failure::config("verify emits JSON only"));
    }
    let polytope = load_or_sample(args)?;
    let tols = Tolerances { tol: args.tol, eq_tol: args.eq_tol };
    let reports = run_suite(&polytope, tols)?;
    let asserted_failures = reports
        .iter()
        .filter(|r| r.check.asserted() && !r.holds)
        .count();

    let report = ReportJson::new(&polytope, &reports);
    let mut results = report.results;
    let mut partition_failed = false;
    if let Some(row) = partition_row(&polytope) {
        partition_failed = !row.holds;
        results.push(row);
    }
    let output = VerifyOutput { config: args, polytope: report.polytope, results };
    emit(args, &serde_json::to_string_pretty(&output)?)?;

    if let Some(path) = &args.emit_polytope {
        write_atomic(path, &serde_json::to_string_pretty(&PolytopeJson::from_polytope(&polytope))?)?;
    }
    let clean = asserted_failures == 0 && !partition_failed;
    if !clean {
        eprintln!(
            "polyframe: {} asserted check(s) failed",
            asserted_failures + usize::from(partition_failed)
        );
    }
    Ok(clean)
}

fn cmd_sample(args: &CommonArgs) -> Result<bool, Failure> {
    let format = resolve_format(args, "csv")?;
    let family = parse_family(
        args.family
            .as_deref()
            .ok_or_else(|| Failure::config("sample needs --family"))?,
    )?;
    let dim = args.dim.unwrap_or_else(|| default_dim(family));
    if args.n == 0 {
        return Err(Failure::config("--n must be at least 1"));
    }
    // campaigns cover the asserted catalog; the as-stated interpolation
    // variant is exercised explicitly in reports, not sampled here
    let checks: Vec<_> = catalog_for(family)
        .into_iter()
        .filter(|c| c.asserted())
        .collect();
    let tols = Tolerances { tol: args.tol, eq_tol: args.eq_tol };
    let campaign = falsification_campaign(&checks, family, dim, args.n, args.seed, tols)?;

    match format.as_str() {
        "csv" => emit(args, &campaign_csv(&campaign.rows))?,
        _ => {
            #[derive(Serialize)]
            struct RowJson<'a> {
                sample_id: usize,
                ineq_id: &'a str,
                family: &'a str,
                d: usize,
                lhs: f64,
                rhs: f64,
                gap: f64,
                relative_gap: f64,
                holds: bool,
            }
            let rows: Vec<RowJson> = campaign
                .rows
                .iter()
                .map(|r| RowJson {
                    sample_id: r.sample_id,
                    ineq_id: &r.id,
                    family: r.family.name(),
                    d: r.dim,
                    lhs: r.lhs,
                    rhs: r.rhs,
                    gap: r.gap,
                    relative_gap: r.relative_gap,
                    holds: r.holds,
                })
                .collect();
            emit(args, &serde_json::to_string_pretty(&rows)?)?;
        }
    }

    let mut violations_total = 0;
    for result in &campaign.results {
        violations_total += result.violations;
        println!(
            "{}: samples {}, skipped {}, violations {}, min relative gap {:.3e} (seed {})",
            result.id, result.samples, result.skipped, result.violations, result.min_relative_gap,
            result.seed
        );
    }
    Ok(violations_total == 0)
}

fn cmd_search(args: &CommonArgs) -> Result<bool, Failure> {
    if resolve_format(args, "json")? != "json" {
        return Err(Failure::config("search emits JSON only"));
    }
    match &args.frame {
        Some(frame) => {
            let family = parse_family(
                args.family
                    .as_deref()
                    .ok_or_else(|| Failure::config("search needs --family"))?,
            )?;
            let kind: FrameKind = frame.parse()?;
            let result = tightness_search(family, kind, args.seed)?;
            emit(args, &serde_json::to_string_pretty(&SearchJson::from(&result))?)?;
            Ok(true)
        }
        None => {
            let reports = verify_known_tight_configs()?;
            let rows: Vec<TightConfigJson> = reports.iter().map(TightConfigJson::from).collect();
            emit(args, &serde_json::to_string_pretty(&rows)?)?;
            let failures = reports.iter().filter(|r| !r.pass).count();
            if failures > 0 {
                eprintln!("polyframe: {failures} tight configuration(s) failed");
            }
            Ok(failures == 0)
        }
    }
}

#[derive(Serialize)]
struct CayleyRow {
    d: usize,
    value: u64,
}

#[derive(Serialize)]
struct TreeRow {
    d: usize,
    n: usize,
    value: i128,
    all_spanning_trees: i128,
}

#[derive(Serialize)]
struct SpotCheckRow {
    dim: usize,
    n_vectors: usize,
    cauchy_binet: f64,
    determinant: f64,
    relative_diff: f64,
    agree: bool,
}

fn cmd_oracle(args: &CommonArgs) -> Result<bool, Failure> {
    if resolve_format(args, "json")? != "json" {
        return Err(Failure::config("oracle emits JSON only"));
    }
    let mut output = serde_json::Map::new();
    let everything = !args.cayley && !args.trees;

    if args.cayley || everything {
        let dims: Vec<usize> = match args.dim {
            Some(d) => vec![d],
            None => (2..=5).collect(),
        };
        let mut rows = Vec::new();
        for d in dims {
            rows.push(CayleyRow { d, value: cayley_constant(d, args.seed)? });
        }
        output.insert("cayley".into(), serde_json::to_value(&rows)?);
    }

    if args.trees || everything {
        let dims: Vec<usize> = match args.dim {
            Some(d) => vec![d],
            None => (2..=8).collect(),
        };
        let mut rows = Vec::new();
        for d in dims {
            let n = d + 2;
            rows.push(TreeRow {
                d,
                n,
                value: spanning_tree_count(n, true)?,
                all_spanning_trees: spanning_tree_count(n, false)?,
            });
        }
        output.insert("trees".into(), serde_json::to_value(&rows)?);
    }

    let mut all_agree = true;
    if everything {
        let mut rows = Vec::new();
        for i in 0..args.n.min(50) {
            let dim = 2 + (i % 3);
            let p = sample_polytope(Family::Simplex, dim, args.seed ^ i as u64)?;
            let frame = Frame::new(p.vertices().to_vec())?;
            let summary = frame_operator(&frame)?;
            let cb = cauchy_binet(&frame)?;
            let diff = (cb - summary.determinant).abs()
                / summary.determinant.abs().max(1.0);
            let agree = diff <= 1e-9;
            all_agree &= agree;
            rows.push(SpotCheckRow {
                dim,
                n_vectors: frame.vectors().len(),
                cauchy_binet: cb,
                determinant: summary.determinant,
                relative_diff: diff,
                agree,
            });
        }
        output.insert("cauchy_binet_spot_checks".into(), serde_json::to_value(&rows)?);
    }

    emit(args, &serde_json::to_string_pretty(&serde_json::Value::Object(output))?)?;
    Ok(all_agree)
}
