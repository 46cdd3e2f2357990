//! Command-line front end.
//!
//! Exit codes: 0 success, 1 domain or computation failure (including a
//! verification suite with a failed check), 2 usage error. Every error is
//! written to standard error as `{"error": {"kind": ..., "message": ...}}`.

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use serde::Serialize;
use serde_json::json;

use crate::analysis::suite::{run_suite, Suite, SuiteConfig, DEFAULT_SEED};
use crate::analysis::{mandel_q, mean_occupation, VerificationReport};
use crate::deformation::{catalog, CatalogEntry, RhoFamily};
use crate::error::Error;
use crate::fock::fidelity;
use crate::states::{self, CoherentState, Dim, Direction, Method, StateOptions};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

/// Largest level accepted by `table`.
pub const MAX_TABLE_LEVEL: usize = 10_000;

#[derive(Debug, Parser)]
#[command(name = "nlcs", version, about = "Nonlinear coherent states on a truncated Fock space")]
pub struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Output format; defaults to csv for `table` and `sweep`, json otherwise.
    #[arg(long, global = true, env = "NLCS_FORMAT", value_enum)]
    format: Option<Format>,

    /// Write to this file instead of standard output.
    #[arg(long, global = true)]
    output: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// List every catalogued family.
    Catalog,
    /// Tabulate ln ρ(n), ρ(n), f(n), e(n) and the dual f for n = 0..=n_max.
    Table {
        #[command(flatten)]
        family: FamilyArgs,
        #[arg(long, default_value_t = 20)]
        n_max: usize,
    },
    /// Build one coherent state.
    State {
        #[command(flatten)]
        family: FamilyArgs,
        #[command(flatten)]
        label: LabelArgs,
        #[arg(long, value_enum, default_value = "series")]
        method: MethodArg,
        #[command(flatten)]
        trunc: TruncArgs,
    },
    /// Run a verification suite.
    Verify {
        #[command(flatten)]
        family: FamilyArgs,
        #[arg(long, value_enum, default_value = "all")]
        suite: SuiteArg,
        /// Seed of the random (J, γ, t) grid.
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        /// Number of random (J, γ, t) triples.
        #[arg(long, default_value_t = 50)]
        samples: usize,
        #[arg(long, default_value = "auto", value_parser = parse_dim)]
        dim: Dim,
    },
    /// Mandel Q, ⟨n⟩ and N(|z|²) on the grid |z| = zmax·i/steps.
    Sweep {
        #[command(flatten)]
        family: FamilyArgs,
        #[arg(long)]
        zmax: f64,
        #[arg(long, default_value_t = 10)]
        steps: usize,
        #[command(flatten)]
        trunc: TruncArgs,
    },
}

#[derive(Debug, Args)]
struct FamilyArgs {
    /// Family id (see `catalog`); append `-dual` or pass --dual for the dual.
    #[arg(long, required_unless_present = "rho_table")]
    family: Option<String>,
    #[arg(long)]
    p: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    alpha: Option<f64>,
    #[arg(long)]
    beta: Option<f64>,
    #[arg(long)]
    q: Option<f64>,
    #[arg(long)]
    kappa: Option<f64>,
    #[arg(long)]
    m: Option<f64>,
    #[arg(long)]
    dual: bool,
    /// File of ρ(0), ρ(1), ... separated by commas or whitespace.
    #[arg(long, conflicts_with = "family")]
    rho_table: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct LabelArgs {
    /// Complex label as `re,im` (or a single real).
    #[arg(long, value_parser = parse_complex, allow_hyphen_values = true, required_unless_present = "j", conflicts_with = "j")]
    z: Option<Complex64>,
    /// Action variable of a GK state.
    #[arg(long = "J", id = "j", requires = "gamma")]
    j: Option<f64>,
    /// Angle variable of a GK state.
    #[arg(long, allow_hyphen_values = true, requires = "j")]
    gamma: Option<f64>,
}

#[derive(Debug, Args)]
struct TruncArgs {
    /// Fock dimension, or `auto`.
    #[arg(long, default_value = "auto", value_parser = parse_dim)]
    dim: Dim,
    /// Largest accepted tail-mass estimate.
    #[arg(long, default_value_t = 1e-10)]
    tail_tol: f64,
    /// Skip domain and truncation checks.
    #[arg(long)]
    force: bool,
}

impl TruncArgs {
    fn options(&self) -> StateOptions {
        StateOptions { dim: self.dim, tail_tolerance: self.tail_tol, force: self.force, ..StateOptions::default() }
    }
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum MethodArg {
    Series,
    Displacement,
    #[value(name = "t-operator")]
    TOperator,
}

impl From<MethodArg> for Method {
    fn from(m: MethodArg) -> Self {
        match m {
            MethodArg::Series => Method::Series,
            MethodArg::Displacement => Method::Displacement,
            MethodArg::TOperator => Method::TOperator,
        }
    }
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum SuiteArg {
    Eigen,
    Routes,
    Dual,
    Algebra,
    Gk,
    Moments,
    Stats,
    All,
}

impl From<SuiteArg> for Suite {
    fn from(s: SuiteArg) -> Self {
        match s {
            SuiteArg::Eigen => Suite::Eigen,
            SuiteArg::Routes => Suite::Routes,
            SuiteArg::Dual => Suite::Dual,
            SuiteArg::Algebra => Suite::Algebra,
            SuiteArg::Gk => Suite::Gk,
            SuiteArg::Moments => Suite::Moments,
            SuiteArg::Stats => Suite::Stats,
            SuiteArg::All => Suite::All,
        }
    }
}

fn parse_dim(s: &str) -> std::result::Result<Dim, String> {
    if s == "auto" {
        return Ok(Dim::Auto);
    }
    match s.parse::<usize>() {
        Ok(d) if d >= 2 => Ok(Dim::Fixed(d)),
        _ => Err(format!("expected `auto` or an integer >= 2, got `{s}`")),
    }
}

fn parse_complex(s: &str) -> std::result::Result<Complex64, String> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    let num = |t: &str| t.parse::<f64>().map_err(|_| format!("cannot read `{t}` as a number"));
    match parts.as_slice() {
        [re] => Ok(Complex64::new(num(re)?, 0.0)),
        [re, im] => Ok(Complex64::new(num(re)?, num(im)?)),
        _ => Err(format!("expected `re,im`, got `{s}`")),
    }
}

/// Failure of a command, with its exit code.
#[derive(Debug)]
pub struct Failure {
    code: i32,
    kind: String,
    message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Self { code: EXIT_USAGE, kind: "usage".into(), message: message.into() }
    }

    pub fn code(&self) -> i32 {
        self.code
    }

    pub fn to_json(&self) -> String {
        json!({ "error": { "kind": self.kind, "message": self.message } }).to_string()
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::UnknownFamily(_) => EXIT_USAGE,
            _ => EXIT_FAILURE,
        };
        Self { code, kind: e.kind().into(), message: e.to_string() }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Self { code: EXIT_FAILURE, kind: "io".into(), message: e.to_string() }
    }
}

impl From<csv::Error> for Failure {
    fn from(e: csv::Error) -> Self {
        Self { code: EXIT_FAILURE, kind: "io".into(), message: e.to_string() }
    }
}

impl From<serde_json::Error> for Failure {
    fn from(e: serde_json::Error) -> Self {
        Self { code: EXIT_FAILURE, kind: "io".into(), message: e.to_string() }
    }
}

type CmdResult<T> = std::result::Result<T, Failure>;

impl FamilyArgs {
    fn build(&self) -> CmdResult<RhoFamily> {
        let family = match (&self.family, &self.rho_table) {
            (_, Some(path)) => {
                let text = std::fs::read_to_string(path)?;
                let values = text
                    .split(|c: char| c == ',' || c.is_whitespace())
                    .filter(|t| !t.is_empty())
                    .map(|t| t.parse::<f64>().map_err(|_| Failure::usage(format!("rho table entry `{t}` is not a number"))))
                    .collect::<CmdResult<Vec<f64>>>()?;
                if self.named_params().next().is_some() {
                    return Err(Failure::usage("parameters cannot be combined with --rho-table"));
                }
                RhoFamily::table(values)?
            }
            (Some(id), None) => {
                let params: BTreeMap<String, f64> = self.named_params().map(|(k, v)| (k.to_string(), v)).collect();
                RhoFamily::new(id, &params)?
            }
            (None, None) => return Err(Failure::usage("either --family or --rho-table is required")),
        };
        Ok(if self.dual { family.dual() } else { family })
    }

    fn named_params(&self) -> impl Iterator<Item = (&'static str, f64)> {
        [("p", self.p), ("alpha", self.alpha), ("beta", self.beta), ("q", self.q), ("kappa", self.kappa), ("m", self.m)]
            .into_iter()
            .filter_map(|(k, v)| v.map(|v| (k, v)))
    }
}

/// Parses `args` (program name first) and runs the command, writing results to
/// `out` and errors to `err`. Returns the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion | ErrorKind::DisplayHelpOnMissingArgumentOrSubcommand) {
                let _ = write!(out, "{e}");
                return EXIT_OK;
            }
            let text = e.to_string();
            let first = text.lines().next().unwrap_or_default();
            let f = Failure::usage(first.strip_prefix("error: ").unwrap_or(first));
            let _ = writeln!(err, "{}", f.to_json());
            return f.code();
        }
    };
    match execute(&cli, out) {
        Ok(code) => code,
        Err(f) => {
            let _ = writeln!(err, "{}", f.to_json());
            f.code()
        }
    }
}

fn execute(cli: &Cli, stdout: &mut dyn Write) -> CmdResult<i32> {
    let mut file;
    let out: &mut dyn Write = match &cli.output {
        Some(path) => {
            file = std::fs::File::create(path)?;
            &mut file
        }
        None => stdout,
    };
    let tabular = matches!(cli.command, Command::Table { .. } | Command::Sweep { .. });
    let format = cli.format.unwrap_or(if tabular { Format::Csv } else { Format::Json });
    match &cli.command {
        Command::Catalog => cmd_catalog(format, out).map(|_| EXIT_OK),
        Command::Table { family, n_max } => cmd_table(&family.build()?, *n_max, format, out).map(|_| EXIT_OK),
        Command::State { family, label, method, trunc } => {
            cmd_state(&family.build()?, label, (*method).into(), &trunc.options(), format, out).map(|_| EXIT_OK)
        }
        Command::Verify { family, suite, seed, samples, dim } => {
            let cfg = SuiteConfig { seed: *seed, gk_samples: *samples, dim: *dim, ..SuiteConfig::default() };
            let reports = run_suite(&family.build()?, (*suite).into(), &cfg)?;
            emit_reports(&reports, format, out)?;
            Ok(if reports.iter().all(VerificationReport::acceptable) { EXIT_OK } else { EXIT_FAILURE })
        }
        Command::Sweep { family, zmax, steps, trunc } => {
            cmd_sweep(&family.build()?, *zmax, *steps, &trunc.options(), format, out).map(|_| EXIT_OK)
        }
    }
}

fn emit_json<T: Serialize + ?Sized>(value: &T, out: &mut dyn Write) -> CmdResult<()> {
    serde_json::to_writer_pretty(&mut *out, value)?;
    writeln!(out)?;
    Ok(())
}

fn emit_csv<T: Serialize>(rows: &[T], out: &mut dyn Write) -> CmdResult<()> {
    let mut w = csv::Writer::from_writer(out);
    for row in rows {
        w.serialize(row)?;
    }
    w.flush()?;
    Ok(())
}

#[derive(Serialize)]
struct CatalogRow {
    id: &'static str,
    region: &'static str,
    params: String,
    rho: &'static str,
    f: &'static str,
    #[serde(rename = "H")]
    h: &'static str,
}

fn cmd_catalog(format: Format, out: &mut dyn Write) -> CmdResult<()> {
    let entries: &[CatalogEntry] = catalog();
    match format {
        Format::Json => emit_json(entries, out),
        Format::Csv => {
            let rows: Vec<CatalogRow> = entries
                .iter()
                .map(|e| CatalogRow {
                    id: e.id,
                    region: match e.region {
                        crate::deformation::Region::Plane => "plane",
                        crate::deformation::Region::Disk => "disk",
                    },
                    params: e.params.iter().map(|p| format!("{} ({})", p.name, p.domain)).collect::<Vec<_>>().join("; "),
                    rho: e.rho,
                    f: e.f,
                    h: e.h,
                })
                .collect();
            emit_csv(&rows, out)
        }
    }
}

#[derive(Debug, Serialize)]
pub struct TableRow {
    pub n: usize,
    pub ln_rho: f64,
    pub rho: Option<f64>,
    pub f: Option<f64>,
    pub e: Option<f64>,
    pub f_dual: Option<f64>,
}

fn finite(x: f64) -> Option<f64> {
    x.is_finite().then_some(x)
}

/// Rows of the nonlinearity table; values that overflow are `None`.
pub fn table_rows(family: &RhoFamily, n_max: usize) -> crate::Result<Vec<TableRow>> {
    if n_max > MAX_TABLE_LEVEL {
        return Err(Error::Domain(format!("n_max {n_max} exceeds {MAX_TABLE_LEVEL}")));
    }
    let dual = family.dual();
    (0..=n_max)
        .map(|n| {
            let ln_rho = family.ln_rho(n)?;
            let (f, f_dual) = if n == 0 {
                (None, None)
            } else {
                (family.f(n).ok().and_then(finite), dual.f(n).ok().and_then(finite))
            };
            Ok(TableRow { n, ln_rho, rho: finite(ln_rho.exp()), f, e: family.e(n).ok().and_then(finite), f_dual })
        })
        .collect()
}

fn cmd_table(family: &RhoFamily, n_max: usize, format: Format, out: &mut dyn Write) -> CmdResult<()> {
    let rows = table_rows(family, n_max)?;
    match format {
        Format::Json => emit_json(&json!({ "family": family.id(), "params": family.params(), "rows": rows }), out),
        Format::Csv => emit_csv(&rows, out),
    }
}

#[derive(Serialize)]
struct StateOutput<'a> {
    #[serde(flatten)]
    state: &'a CoherentState,
    #[serde(skip_serializing_if = "Option::is_none")]
    fidelity_vs_series: Option<f64>,
}

#[derive(Serialize)]
struct AmplitudeRow {
    n: usize,
    re: f64,
    im: f64,
    probability: f64,
}

/// Builds a state by the requested route. For the displacement and T routes
/// the series state at the same dimension is returned alongside.
pub fn build_state(
    family: &RhoFamily,
    z: Option<Complex64>,
    gk: Option<(f64, f64)>,
    method: Method,
    opts: &StateOptions,
) -> crate::Result<(CoherentState, Option<CoherentState>)> {
    if let Some((j, gamma)) = gk {
        if method != Method::Series {
            return Err(Error::UnsupportedLabel("GK states are built by the series route only".into()));
        }
        return Ok((states::gk_state(family, j, gamma, opts)?, None));
    }
    let z = z.ok_or_else(|| Error::Domain("missing label".into()))?;
    match method {
        Method::Series => Ok((states::cs_series(family, z, opts)?, None)),
        Method::Displacement => {
            let state = states::cs_displacement(family, z, opts)?;
            let series = states::cs_series(family, z, &StateOptions::forced(state.dim()))?;
            Ok((state, Some(series)))
        }
        Method::TOperator => {
            let series = states::cs_series(family, z, opts)?;
            let canonical = RhoFamily::named("canonical")?;
            let seed = states::cs_series(&canonical, z, &StateOptions::forced(series.dim()))?;
            let state = states::t_apply(family, Direction::Forward, &seed)?;
            Ok((state, Some(series)))
        }
    }
}

fn cmd_state(
    family: &RhoFamily,
    label: &LabelArgs,
    method: Method,
    opts: &StateOptions,
    format: Format,
    out: &mut dyn Write,
) -> CmdResult<()> {
    let gk = label.j.map(|j| (j, label.gamma.unwrap_or(0.0)));
    let (state, series) = build_state(family, label.z, gk, method, opts)?;
    let fidelity_vs_series = match &series {
        Some(s) => Some(fidelity(state.vector(), s.vector())?),
        None => None,
    };
    match format {
        Format::Json => emit_json(&StateOutput { state: &state, fidelity_vs_series }, out),
        Format::Csv => {
            let rows: Vec<AmplitudeRow> = state
                .vector()
                .amps()
                .iter()
                .enumerate()
                .map(|(n, a)| AmplitudeRow { n, re: a.re, im: a.im, probability: a.norm_sqr() })
                .collect();
            emit_csv(&rows, out)
        }
    }
}

#[derive(Debug, Serialize)]
pub struct SweepRow {
    pub abs_z: f64,
    pub mandel_q: f64,
    pub mean_n: f64,
    pub normalization: f64,
}

/// Statistics of the real-label states `|z| = zmax·i/steps`, `i = 0..=steps`.
pub fn sweep_rows(family: &RhoFamily, zmax: f64, steps: usize, opts: &StateOptions) -> crate::Result<Vec<SweepRow>> {
    if !(zmax.is_finite() && zmax >= 0.0) || steps == 0 {
        return Err(Error::Domain(format!("sweep needs zmax >= 0 and steps >= 1, got zmax={zmax}, steps={steps}")));
    }
    (0..=steps)
        .map(|i| {
            let r = zmax * i as f64 / steps as f64;
            let s = states::cs_series(family, Complex64::new(r, 0.0), opts)?;
            let ln_norm = states::ln_normalization(family, r * r, s.dim())?;
            Ok(SweepRow {
                abs_z: r,
                mandel_q: mandel_q(s.vector())?,
                mean_n: mean_occupation(s.vector()),
                normalization: ln_norm.exp(),
            })
        })
        .collect()
}

fn cmd_sweep(
    family: &RhoFamily,
    zmax: f64,
    steps: usize,
    opts: &StateOptions,
    format: Format,
    out: &mut dyn Write,
) -> CmdResult<()> {
    let rows = sweep_rows(family, zmax, steps, opts)?;
    match format {
        Format::Json => emit_json(&rows, out),
        Format::Csv => emit_csv(&rows, out),
    }
}

fn emit_reports(reports: &[VerificationReport], format: Format, out: &mut dyn Write) -> CmdResult<()> {
    #[derive(Serialize)]
    struct Row<'a> {
        check_id: &'a str,
        family: &'a str,
        residual: f64,
        tolerance: f64,
        passed: bool,
        inconclusive: bool,
        notes: &'a str,
    }
    match format {
        Format::Json => emit_json(reports, out),
        Format::Csv => {
            let rows: Vec<Row> = reports
                .iter()
                .map(|r| Row {
                    check_id: &r.check_id,
                    family: &r.family,
                    residual: r.residual,
                    tolerance: r.tolerance,
                    passed: r.passed,
                    inconclusive: r.inconclusive,
                    notes: &r.notes,
                })
                .collect();
            emit_csv(&rows, out)
        }
    }
}
