//! Command-line driver: list surfaces, sample fields, run identity suites,
//! run convergence studies. CSV and JSON outputs are byte-deterministic for
//! identical configurations (no timestamps unless requested).
//!
//! Exit codes: 0 success, 1 identity-threshold failure, 2 usage/config
//! error, 3 I/O error.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::calculus::{geom_sample, CalcConfig};
use crate::catalog;
use crate::error::GeomError;
use crate::identities::{self, IdentityKind, ResidualReport, Theorem1Verdict};
use crate::surface::GridSpec;

pub const EXIT_OK: i32 = 0;
pub const EXIT_THRESHOLD: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_IO: i32 = 3;

/// Defaults for the Theorem-1 consistency verdict: a minimal surface whose
/// contact angle varies less than `TOL_CONST` must be flat within `TOL_FLAT`.
pub const THEOREM1_TOL_CONST: f64 = 1e-8;
pub const THEOREM1_TOL_FLAT: f64 = 1e-8;

#[derive(Debug, Parser)]
#[command(
    name = "contact-angle",
    about = "Contact angle, adapted frames, and curvature/Laplacian identity checks for surfaces in the 3-sphere",
    version
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// List the built-in surface catalog with parameter schemas.
    List,
    /// Sample beta, its derivatives, and the curvatures over a grid (CSV).
    Sample(SampleArgs),
    /// Run identity residual checks over a grid (JSON report).
    Check(CheckArgs),
    /// Re-run finite-difference checks over a list of steps (CSV).
    Convergence(ConvergenceArgs),
}

#[derive(Debug, Args)]
pub struct CommonArgs {
    /// Catalog surface name (see `list`).
    #[arg(long)]
    pub surface: String,

    /// Surface parameter as NAME=VALUE; repeatable.
    #[arg(long = "param", value_name = "NAME=VALUE")]
    pub param: Vec<String>,

    /// Grid resolution along u.
    #[arg(long, default_value_t = 64)]
    pub nu: usize,

    /// Grid resolution along v.
    #[arg(long, default_value_t = 64)]
    pub nv: usize,

    /// Step for first-derivative stencils (gradient, connection form).
    #[arg(long = "h-f", default_value_t = 1e-4)]
    pub h_f: f64,

    /// Step for second-derivative stencils (Laplacian, intrinsic curvature).
    #[arg(long = "h-second", default_value_t = 1e-3)]
    pub h_second: f64,

    /// Step for finite-difference jets of position-only surface sources
    /// (catalog surfaces carry analytic jets and ignore this).
    #[arg(long = "h-jet", default_value_t = 1e-4)]
    pub h_jet: f64,

    /// cos(beta) threshold below which the adapted frame counts degenerate.
    #[arg(long = "eps-deg", default_value_t = 1e-6)]
    pub eps_deg: f64,

    /// cos(beta) band excluded from the tan-beta-singular checks.
    #[arg(long = "band-tan", default_value_t = 0.05)]
    pub band_tan: f64,
}

#[derive(Debug, Args)]
pub struct SampleArgs {
    #[command(flatten)]
    pub common: CommonArgs,

    /// Output file.
    #[arg(long)]
    pub out: PathBuf,

    /// Output format (sample supports csv).
    #[arg(long, value_enum, default_value_t = OutputFormat::Csv)]
    pub format: OutputFormat,
}

#[derive(Debug, Args)]
pub struct CheckArgs {
    #[command(flatten)]
    pub common: CommonArgs,

    /// Identities to check: `all` or a comma-separated list of names.
    #[arg(long, default_value = "all")]
    pub identity: String,

    /// Output file.
    #[arg(long)]
    pub out: PathBuf,

    /// Output format (check supports json).
    #[arg(long, value_enum, default_value_t = OutputFormat::Json)]
    pub format: OutputFormat,

    /// Stamp the report with the wall-clock time (off by default so that
    /// identical configurations produce byte-identical reports).
    #[arg(long, default_value_t = false)]
    pub timestamp: bool,
}

#[derive(Debug, Args)]
pub struct ConvergenceArgs {
    #[command(flatten)]
    pub common: CommonArgs,

    /// Identities to re-run at each step.
    #[arg(long, default_value = "all")]
    pub identity: String,

    /// Strictly decreasing differencing steps (at least 3), comma separated.
    #[arg(long, value_delimiter = ',', required = true)]
    pub steps: Vec<f64>,

    /// Output file.
    #[arg(long)]
    pub out: PathBuf,

    /// Output format (convergence supports csv).
    #[arg(long, value_enum, default_value_t = OutputFormat::Csv)]
    pub format: OutputFormat,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Csv,
    Json,
}

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Io(PathBuf, std::io::Error),
}

impl From<GeomError> for CliError {
    fn from(err: GeomError) -> Self {
        CliError::Usage(err.to_string())
    }
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => EXIT_USAGE,
            CliError::Io(..) => EXIT_IO,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Usage(msg) => write!(f, "{msg}"),
            CliError::Io(path, err) => write!(f, "{}: {err}", path.display()),
        }
    }
}

/// Run a parsed command line; returns the process exit code.
pub fn run(cli: Cli) -> i32 {
    let result = match &cli.command {
        Command::List => {
            print!("{}", list_text());
            Ok(EXIT_OK)
        }
        Command::Sample(args) => cmd_sample(args).map(|()| EXIT_OK),
        Command::Check(args) => {
            cmd_check(args).map(|passed| if passed { EXIT_OK } else { EXIT_THRESHOLD })
        }
        Command::Convergence(args) => cmd_convergence(args).map(|()| EXIT_OK),
    };
    match result {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err}");
            err.exit_code()
        }
    }
}

/// The `list` subcommand body.
pub fn list_text() -> String {
    let mut out = String::new();
    for entry in catalog::entries() {
        let mut name = entry.name.to_string();
        for p in entry.params {
            let _ = write!(name, " {}:{}", p.name, p.range);
        }
        let _ = writeln!(out, "{name:<28} {}", entry.summary);
    }
    out
}

struct RunSetup {
    surface: String,
    parameters: BTreeMap<String, f64>,
    patch: crate::surface::SurfacePatch,
    grid: GridSpec,
    cfg: CalcConfig,
}

fn setup(common: &CommonArgs) -> Result<RunSetup, CliError> {
    for (flag, value) in [
        ("--h-f", common.h_f),
        ("--h-second", common.h_second),
        ("--h-jet", common.h_jet),
        ("--eps-deg", common.eps_deg),
        ("--band-tan", common.band_tan),
    ] {
        if !(value > 0.0 && value.is_finite()) {
            return Err(CliError::Usage(format!(
                "{flag} must be positive, got {value}"
            )));
        }
    }
    let mut parameters = BTreeMap::new();
    for raw in &common.param {
        let (name, value) = raw
            .split_once('=')
            .ok_or_else(|| CliError::Usage(format!("--param `{raw}` is not NAME=VALUE")))?;
        let value: f64 = value
            .parse()
            .map_err(|_| CliError::Usage(format!("--param `{raw}` has a non-numeric value")))?;
        if parameters.insert(name.to_string(), value).is_some() {
            return Err(CliError::Usage(format!("duplicate --param `{name}`")));
        }
    }
    let patch = catalog::build(&common.surface, &parameters)?;
    let grid = GridSpec::new(common.nu, common.nv);
    // Surface the resolution error now rather than mid-run.
    grid.points(&patch)?;
    Ok(RunSetup {
        surface: common.surface.clone(),
        parameters,
        patch,
        grid,
        cfg: CalcConfig {
            h_first: common.h_f,
            h_second: common.h_second,
            eps_deg: common.eps_deg,
            band_tan: common.band_tan,
        },
    })
}

fn parse_identities(spec: &str) -> Result<Vec<IdentityKind>, CliError> {
    if spec.trim() == "all" {
        return Ok(IdentityKind::ALL.to_vec());
    }
    let mut kinds = Vec::new();
    for name in spec.split(',') {
        let name = name.trim();
        if name.is_empty() {
            continue;
        }
        let kind = IdentityKind::from_str(name)?;
        if !kinds.contains(&kind) {
            kinds.push(kind);
        }
    }
    if kinds.is_empty() {
        return Err(CliError::Usage(format!(
            "--identity selected nothing; valid names: all, {}",
            IdentityKind::valid_names()
        )));
    }
    Ok(kinds)
}

/// 17 significant digits, `.` decimal separator, locale independent.
fn fmt_f64(x: f64) -> String {
    format!("{x:.16e}")
}

fn write_file(path: &Path, contents: &str) -> Result<(), CliError> {
    fs::write(path, contents).map_err(|e| CliError::Io(path.to_path_buf(), e))
}

/// Row-major CSV of the pointwise geometry:
/// `u,v,beta,beta1,beta2,H,K_ext,K_int,lap_beta,degenerate`.
pub fn cmd_sample(args: &SampleArgs) -> Result<(), CliError> {
    if args.format != OutputFormat::Csv {
        return Err(CliError::Usage(
            "sample emits CSV; pass --format csv".into(),
        ));
    }
    let setup = setup(&args.common)?;
    let mut out = String::from("u,v,beta,beta1,beta2,H,K_ext,K_int,lap_beta,degenerate\n");
    for p in setup.grid.points(&setup.patch)? {
        let s = geom_sample(&setup.patch, p, &setup.cfg)?;
        let _ = writeln!(
            out,
            "{},{},{},{},{},{},{},{},{},{}",
            fmt_f64(p.u),
            fmt_f64(p.v),
            fmt_f64(s.beta),
            fmt_f64(s.beta1),
            fmt_f64(s.beta2),
            fmt_f64(s.h),
            fmt_f64(s.k_ext),
            fmt_f64(s.k_int),
            fmt_f64(s.lap_beta),
            u8::from(s.degenerate),
        );
    }
    write_file(&args.out, &out)
}

#[derive(Serialize)]
struct CheckDocument<'a> {
    schema: u32,
    surface: &'a str,
    parameters: &'a BTreeMap<String, f64>,
    grid: GridSpec,
    config: CalcConfig,
    #[serde(skip_serializing_if = "Option::is_none")]
    timestamp: Option<u64>,
    reports: &'a [ResidualReport],
    verdicts: &'a [Theorem1Verdict],
}

/// JSON identity report; returns whether every selected identity stayed
/// below its threshold.
pub fn cmd_check(args: &CheckArgs) -> Result<bool, CliError> {
    if args.format != OutputFormat::Json {
        return Err(CliError::Usage(
            "check emits JSON; pass --format json".into(),
        ));
    }
    let setup = setup(&args.common)?;
    let kinds = parse_identities(&args.identity)?;

    let mut reports = Vec::with_capacity(kinds.len());
    for kind in kinds {
        reports.push(identities::run_check(
            &setup.patch,
            &setup.grid,
            &setup.cfg,
            kind,
        )?);
    }
    let verdicts = vec![identities::theorem1_consistency(
        &setup.patch,
        &setup.grid,
        &setup.cfg,
        THEOREM1_TOL_CONST,
        THEOREM1_TOL_FLAT,
    )?];

    let timestamp = args.timestamp.then(|| {
        std::time::SystemTime::now()
            .duration_since(std::time::UNIX_EPOCH)
            .map(|d| d.as_secs())
            .unwrap_or(0)
    });
    let doc = CheckDocument {
        schema: 1,
        surface: &setup.surface,
        parameters: &setup.parameters,
        grid: setup.grid,
        config: setup.cfg,
        timestamp,
        reports: &reports,
        verdicts: &verdicts,
    };
    let mut json = serde_json::to_string_pretty(&doc)
        .map_err(|e| CliError::Usage(format!("report serialization failed: {e}")))?;
    json.push('\n');
    write_file(&args.out, &json)?;
    Ok(reports.iter().all(ResidualReport::passes))
}

/// CSV of `h,identity,max_abs` rows over a strictly decreasing step list;
/// both differencing steps are set to each listed `h`.
pub fn cmd_convergence(args: &ConvergenceArgs) -> Result<(), CliError> {
    if args.format != OutputFormat::Csv {
        return Err(CliError::Usage(
            "convergence emits CSV; pass --format csv".into(),
        ));
    }
    if args.steps.len() < 3 {
        return Err(CliError::Usage(format!(
            "--steps needs at least 3 values, got {}",
            args.steps.len()
        )));
    }
    if !args.steps.windows(2).all(|w| w[0] > w[1] && w[1] > 0.0) || !args.steps[0].is_finite() {
        return Err(CliError::Usage(
            "--steps must be strictly decreasing and positive".into(),
        ));
    }
    let setup = setup(&args.common)?;
    let kinds = parse_identities(&args.identity)?;

    let mut out = String::from("h,identity,max_abs\n");
    for &h in &args.steps {
        let cfg = CalcConfig {
            h_first: h,
            h_second: h,
            ..setup.cfg
        };
        for &kind in &kinds {
            let report = identities::run_check(&setup.patch, &setup.grid, &cfg, kind)?;
            let _ = writeln!(out, "{},{},{}", h, kind.name(), fmt_f64(report.max_abs));
        }
    }
    write_file(&args.out, &out)
}
