//! Command-line front end.

use std::ffi::OsString;
use std::fs;
use std::io::Write as _;
use std::path::PathBuf;

use clap::builder::TypedValueParser as _;
use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde_json::{Map, Value};

use crate::error::{Error, Result};
use crate::expansion::{
    bilateral_sinc_sum, family_value, points_from_thetas, sampling_sum, Acceleration, FamilySpec,
    TruncationConfig,
};
use crate::functions::{EvalPoint, JacobiParams};
use crate::gseries::{
    abc_coefficients, eta3, eta4, g_abel_extrapolate, g_closed, table1_classify, GValue, Table1Class,
    DEFAULT_T_GRID,
};
use crate::harness::report::format_float;
use crate::harness::{
    counts_as_failure, render, run_scenario, scenario_info, ReportFormat, ReportRecord, ScenarioConfig, SCENARIOS,
};

#[derive(Debug, Parser)]
#[command(name = "sampexp", version, about = "Sinc-sampling expansions of special-function products")]
#[command(args_override_self = true)]
struct Cli {
    /// key=value file of default flags; command-line flags take precedence
    #[arg(long, global = true, value_name = "FILE")]
    config: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Evaluate a family product f_ν
    Eval(FamilyArgs),
    /// Evaluate the sampling sum and compare it with f_ν
    Expand {
        #[command(flatten)]
        family: FamilyArgs,
        #[command(flatten)]
        trunc: TruncArgs,
        /// Use the two-sided sinc sum (Gegenbauer-type families with integer 2γ)
        #[arg(long)]
        bilateral: bool,
    },
    /// Closed form of the alternating series G
    G(GArgs),
    /// Sign classification of a 3- or 4-tuple of angles
    Classify {
        #[arg(long, alias = "theta", value_delimiter = ',', allow_negative_numbers = true, required = true, value_parser = finite)]
        thetas: Vec<f64>,
    },
    /// Run registered validation scenarios
    Validate(ValidateArgs),
    /// Residual of the sampling sum over a grid of degrees
    Sweep(SweepArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Family {
    Legendre,
    Gegenbauer,
    Jacobi,
    Hermite,
}

#[derive(Debug, Args)]
struct FamilyArgs {
    #[arg(long, value_enum)]
    family: Family,
    /// Degree ν
    #[arg(long, allow_negative_numbers = true, value_parser = finite)]
    nu: f64,
    /// Gegenbauer index γ > 0
    #[arg(long, value_parser = positive)]
    gamma: Option<f64>,
    /// Jacobi α > -1, paired positionally with --beta
    #[arg(long, allow_negative_numbers = true, value_parser = finite)]
    alpha: Vec<f64>,
    /// Jacobi β > -1, paired positionally with --alpha
    #[arg(long, allow_negative_numbers = true, value_parser = finite)]
    beta: Vec<f64>,
    /// Angles in radians, comma separated
    #[arg(long, alias = "theta", value_delimiter = ',', allow_negative_numbers = true, value_parser = finite)]
    thetas: Vec<f64>,
    /// Points x = cos θ (Hermite: real points), comma separated
    #[arg(long, value_delimiter = ',', allow_negative_numbers = true, value_parser = finite)]
    x: Vec<f64>,
    /// Hermite parity offset
    #[arg(long, default_value_t = 0)]
    epsilon: u8,
}

#[derive(Debug, Args)]
struct TruncArgs {
    /// Truncation index of the sampling sum
    #[arg(long, default_value_t = TruncationConfig::default().n_max, value_parser = clap::value_parser!(u64).range(8..=10_000_000).map(|v| v as usize))]
    nmax: usize,
    #[arg(long, value_enum, default_value_t = Accel::Wynn)]
    accel: Accel,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Accel {
    None,
    Cesaro,
    Wynn,
}

impl From<Accel> for Acceleration {
    fn from(a: Accel) -> Self {
        match a {
            Accel::None => Acceleration::None,
            Accel::Cesaro => Acceleration::Cesaro,
            Accel::Wynn => Acceleration::WynnEpsilon,
        }
    }
}

impl TruncArgs {
    fn config(&self) -> Result<TruncationConfig> {
        TruncationConfig::new(self.nmax, self.accel.into(), TruncationConfig::default().tail_tol)
    }
}

#[derive(Debug, Args)]
struct GArgs {
    /// Number of angles; must match --thetas
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..=4).map(|v| v as usize))]
    n: Option<usize>,
    #[arg(long, alias = "theta", value_delimiter = ',', allow_negative_numbers = true, required = true, value_parser = finite)]
    thetas: Vec<f64>,
    #[arg(long, default_value_t = 0.5, value_parser = positive)]
    gamma: f64,
    /// Also print the Abel-regularized estimate
    #[arg(long)]
    abel: bool,
    /// Abel parameters t in (0, 1), comma separated and increasing
    #[arg(long, value_delimiter = ',', value_parser = unit_open)]
    t_grid: Vec<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Json,
}

impl From<Format> for ReportFormat {
    fn from(f: Format) -> Self {
        match f {
            Format::Csv => ReportFormat::Csv,
            Format::Json => ReportFormat::Json,
        }
    }
}

#[derive(Debug, Args)]
struct OutputArgs {
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
    /// Report path; stdout when omitted
    #[arg(long)]
    out: Option<PathBuf>,
    /// Worker threads (default: number of processors)
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..=1024).map(|v| v as usize))]
    jobs: Option<usize>,
}

#[derive(Debug, Args)]
struct ValidateArgs {
    /// Scenario to run (repeatable)
    #[arg(long, required_unless_present_any = ["all", "list"], conflicts_with = "all")]
    scenario: Vec<String>,
    /// Run every registered scenario
    #[arg(long)]
    all: bool,
    /// List registered scenarios and exit
    #[arg(long)]
    list: bool,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..=10_000_000).map(|v| v as usize))]
    samples: Option<usize>,
    #[arg(long, value_parser = clap::value_parser!(u64).range(8..=10_000_000).map(|v| v as usize))]
    nmax: Option<usize>,
    #[arg(long, value_enum)]
    accel: Option<Accel>,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Debug, Args)]
struct SweepArgs {
    #[command(flatten)]
    family: FamilyArgs,
    #[command(flatten)]
    trunc: TruncArgs,
    /// Last degree of the grid; the first is --nu
    #[arg(long, allow_negative_numbers = true, value_parser = finite)]
    nu_end: f64,
    #[arg(long, default_value_t = 50, value_parser = clap::value_parser!(u64).range(1..=1_000_000).map(|v| v as usize))]
    steps: usize,
    /// Residual bound recorded with each case
    #[arg(long, default_value_t = 1e-6, value_parser = positive)]
    bound: f64,
    #[command(flatten)]
    output: OutputArgs,
}

fn finite(s: &str) -> std::result::Result<f64, String> {
    let v: f64 = s.trim().parse().map_err(|e| format!("{e}"))?;
    if v.is_finite() {
        Ok(v)
    } else {
        Err(format!("expected a finite number, got {s}"))
    }
}

fn positive(s: &str) -> std::result::Result<f64, String> {
    let v = finite(s)?;
    if v > 0.0 {
        Ok(v)
    } else {
        Err(format!("expected a positive number, got {s}"))
    }
}

fn unit_open(s: &str) -> std::result::Result<f64, String> {
    let v = finite(s)?;
    if v > 0.0 && v < 1.0 {
        Ok(v)
    } else {
        Err(format!("expected a value in (0, 1), got {s}"))
    }
}

fn build_spec(a: &FamilyArgs) -> Result<FamilySpec> {
    if !a.thetas.is_empty() && !a.x.is_empty() {
        return Err(Error::Config("give either --thetas or --x, not both".into()));
    }
    let points = || -> Result<Vec<EvalPoint>> {
        let pts = if a.x.is_empty() {
            points_from_thetas(&a.thetas)?
        } else {
            a.x.iter().map(|&x| EvalPoint::from_x(x)).collect::<Result<_>>()?
        };
        if pts.is_empty() {
            return Err(Error::Config("no evaluation points: pass --thetas or --x".into()));
        }
        Ok(pts)
    };
    match a.family {
        Family::Legendre => FamilySpec::legendre(points()?),
        Family::Gegenbauer => {
            let gamma = a.gamma.ok_or_else(|| Error::Config("--gamma is required for gegenbauer".into()))?;
            FamilySpec::gegenbauer(gamma, points()?)
        }
        Family::Jacobi => {
            if a.alpha.len() != a.beta.len() || a.alpha.is_empty() {
                return Err(Error::Config("--alpha and --beta must be given the same number of times".into()));
            }
            let params: Vec<JacobiParams> = a
                .alpha
                .iter()
                .zip(&a.beta)
                .map(|(&al, &be)| JacobiParams::new(al, be))
                .collect::<Result<_>>()?;
            let pts = points()?;
            match (params.len(), pts.len()) {
                (1, 1) => FamilySpec::jacobi_single(params[0], pts[0]),
                (1, 2) => FamilySpec::jacobi_pair(params[0], pts[0], pts[1]),
                (2, 2) => FamilySpec::jacobi_pair_with(params[0], params[1], pts[0], pts[1]),
                (1, n) => FamilySpec::jacobi_product(vec![params[0]; n], pts),
                _ => FamilySpec::jacobi_product(params, pts),
            }
        }
        Family::Hermite => {
            let pts = if a.x.is_empty() { &a.thetas } else { &a.x };
            let k = if pts.len() == 1 { 2 } else { 1 };
            FamilySpec::hermite(k, a.epsilon, pts)
        }
    }
}

fn warn_spec(spec: &FamilySpec) {
    if !spec.paper_valid() {
        eprintln!("warning: parameter combination is outside the admissible set; the expansion need not hold");
    }
    if !spec.kind().is_hermite() && !spec.in_domain() {
        eprintln!("warning: angles lie outside the convergence domain");
    }
}

fn with_pool<T: Send>(jobs: Option<usize>, f: impl FnOnce() -> T + Send) -> Result<T> {
    match jobs {
        None => Ok(f()),
        Some(n) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(n)
                .build()
                .map_err(|e| Error::Config(format!("cannot start worker pool: {e}")))?;
            Ok(pool.install(f))
        }
    }
}

fn write_output(records: &[ReportRecord], out: &OutputArgs) -> Result<()> {
    let text = render(records, out.format.into())?;
    match &out.out {
        Some(path) => fs::write(path, text)?,
        None => std::io::stdout().write_all(text.as_bytes())?,
    }
    Ok(())
}

fn print_value(key: &str, v: f64) {
    println!("{key} {}", format_float(v));
}

fn cmd_g(a: &GArgs) -> Result<i32> {
    if let Some(n) = a.n {
        if n != a.thetas.len() {
            return Err(Error::Config(format!("--n {n} but {} angles given", a.thetas.len())));
        }
    }
    if a.gamma == 0.5 || a.thetas.len() > 2 {
        match g_closed(a.gamma, &a.thetas)? {
            GValue::Zero => println!("{}", format_float(0.0)),
            GValue::Finite(v) => println!("{}", format_float(v)),
            GValue::Delta { support_x, weight } => {
                println!("delta support_x {} weight {}", format_float(support_x), format_float(weight))
            }
            GValue::Boundary => println!("boundary"),
        }
    }
    if a.abel {
        let grid = if a.t_grid.is_empty() { DEFAULT_T_GRID.to_vec() } else { a.t_grid.clone() };
        let est = g_abel_extrapolate(a.gamma, &a.thetas, &grid, None)?;
        print_value("abel", est.value);
        print_value("spread", est.spread);
    }
    Ok(0)
}

fn cmd_classify(thetas: &[f64]) -> Result<i32> {
    match *thetas {
        [t1, t2, t3] => {
            print_value("eta3", eta3([t1, t2, t3]));
            Ok(0)
        }
        [t1, t2, t3, t4] => {
            let th = [t1, t2, t3, t4];
            let (ep, em) = eta4(th);
            let (a, b, c) = abc_coefficients(th);
            print_value("eta_plus", ep);
            print_value("eta_minus", em);
            print_value("A", a);
            print_value("B", b);
            print_value("C", c);
            match table1_classify(th)? {
                Table1Class::Boundary => println!("class boundary"),
                Table1Class::Row { abc, eta, row } => {
                    let s = |v: i8| if v > 0 { '+' } else { '-' };
                    println!("abc_signs ({},{},{})", s(abc.0), s(abc.1), s(abc.2));
                    println!("eta_signs ({},{})", s(eta.0), s(eta.1));
                    println!("interval {:?}", row.interval);
                    println!("tag {}", row.tag.name());
                }
            }
            Ok(0)
        }
        _ => Err(Error::Config(format!("classify needs 3 or 4 angles, got {}", thetas.len()))),
    }
}

fn cmd_validate(a: &ValidateArgs) -> Result<i32> {
    if a.list {
        for s in SCENARIOS {
            let tag = if s.expected_failure { " (expected failure)" } else { "" };
            println!("{:<20} {}{tag}", s.name, s.description);
        }
        return Ok(0);
    }
    let names: Vec<String> = if a.all {
        SCENARIOS.iter().map(|s| s.name.to_string()).collect()
    } else {
        a.scenario.clone()
    };
    let mut configs = Vec::with_capacity(names.len());
    for name in &names {
        let mut cfg = ScenarioConfig::new(name)?;
        if let Some(seed) = a.seed {
            cfg.seed = seed;
        }
        if let Some(samples) = a.samples {
            cfg.samples = samples;
        }
        if let Some(n) = a.nmax {
            cfg.truncation.n_max = n;
        }
        if let Some(acc) = a.accel {
            cfg.truncation.acceleration = acc.into();
        }
        cfg.validate()?;
        configs.push(cfg);
    }
    let mut records = Vec::new();
    for cfg in &configs {
        let recs = with_pool(a.output.jobs, || run_scenario(cfg))??;
        let failed = recs.iter().filter(|r| !r.pass).count();
        let info = scenario_info(&cfg.name)?;
        if info.expected_failure && failed > 0 {
            eprintln!(
                "{}: {failed} of {} records did not show the expected failure (not counted as a validation failure)",
                cfg.name,
                recs.len()
            );
        } else {
            eprintln!("{}: {} records, {failed} failed", cfg.name, recs.len());
        }
        records.extend(recs);
    }
    write_output(&records, &a.output)?;
    Ok(if records.iter().any(counts_as_failure) { 1 } else { 0 })
}

fn cmd_sweep(a: &SweepArgs) -> Result<i32> {
    let spec = build_spec(&a.family)?;
    warn_spec(&spec);
    let t = a.trunc.config()?;
    let (nu0, nu1) = (a.family.nu, a.nu_end);
    let nus: Vec<f64> = (0..a.steps)
        .map(|k| {
            if a.steps == 1 {
                nu0
            } else {
                nu0 + (nu1 - nu0) * k as f64 / (a.steps - 1) as f64
            }
        })
        .collect();
    let bound = a.bound;
    let records: Vec<ReportRecord> = with_pool(a.output.jobs, || {
        nus.par_iter()
            .enumerate()
            .map(|(k, &nu)| {
                let start = std::time::Instant::now();
                let mut inputs = Map::new();
                inputs.insert("family".into(), Value::from(spec.kind().name()));
                inputs.insert("nu".into(), Value::from(nu));
                inputs.insert("n_max".into(), Value::from(t.n_max));
                let measured = match family_value(&spec, nu).and_then(|f| Ok((f, sampling_sum(&spec, nu, &t)?))) {
                    Ok((f, s)) => {
                        inputs.insert("exact".into(), Value::from(f));
                        inputs.insert("sum".into(), Value::from(s.value));
                        (f - s.value).abs()
                    }
                    Err(e) => {
                        inputs.insert("error".into(), Value::from(e.to_string()));
                        f64::NAN
                    }
                };
                ReportRecord {
                    scenario: "sweep".into(),
                    case_id: format!("nu-{k:06}"),
                    inputs,
                    measured,
                    bound,
                    pass: measured <= bound,
                    wall_time_ms: start.elapsed().as_secs_f64() * 1e3,
                }
            })
            .collect()
    })?;
    write_output(&records, &a.output)?;
    Ok(0)
}

fn dispatch(cli: &Cli) -> Result<i32> {
    match &cli.command {
        Command::Eval(a) => {
            let spec = build_spec(a)?;
            warn_spec(&spec);
            println!("{}", format_float(family_value(&spec, a.nu)?));
            Ok(0)
        }
        Command::Expand { family, trunc, bilateral } => {
            let spec = build_spec(family)?;
            warn_spec(&spec);
            let t = trunc.config()?;
            let sum = if *bilateral {
                bilateral_sinc_sum(&spec, family.nu, &t)?
            } else {
                sampling_sum(&spec, family.nu, &t)?
            };
            let exact = family_value(&spec, family.nu)?;
            print_value("sum", sum.value);
            print_value("exact", exact);
            print_value("residual", (exact - sum.value).abs());
            print_value("tail_estimate", sum.tail_estimate);
            print_value("unaccelerated", sum.unaccelerated);
            println!("method {}", sum.method.name());
            println!("in_domain {}", sum.in_domain);
            Ok(0)
        }
        Command::G(a) => cmd_g(a),
        Command::Classify { thetas } => cmd_classify(thetas),
        Command::Validate(a) => cmd_validate(a),
        Command::Sweep(a) => cmd_sweep(a),
    }
}

/// Flags from a `key=value` file, as command-line tokens.
fn config_tokens(path: &PathBuf) -> Result<Vec<OsString>> {
    let text = fs::read_to_string(path)
        .map_err(|e| Error::Config(format!("cannot read config file {}: {e}", path.display())))?;
    let mut tokens = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (key, value) = line
            .split_once('=')
            .ok_or_else(|| Error::Config(format!("{}:{}: expected key=value", path.display(), i + 1)))?;
        let key = key.trim().trim_start_matches("--").replace('_', "-");
        let value = value.trim();
        if key.is_empty() || key == "config" {
            return Err(Error::Config(format!("{}:{}: invalid key", path.display(), i + 1)));
        }
        match value {
            "true" => tokens.push(format!("--{key}").into()),
            "false" => {}
            v => {
                tokens.push(format!("--{key}").into());
                tokens.push(v.into());
            }
        }
    }
    Ok(tokens)
}

fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Domain(_)
        | Error::InvalidSpec(_)
        | Error::Config(_)
        | Error::UnknownScenario(_)
        | Error::Pole(_)
        | Error::UndefinedRatio { .. } => 2,
        _ => 1,
    }
}

const SUBCOMMANDS: [&str; 6] = ["eval", "expand", "g", "classify", "validate", "sweep"];

fn config_path(args: &[OsString]) -> Option<PathBuf> {
    let mut it = args.iter().skip(1);
    while let Some(a) = it.next() {
        let a = a.to_string_lossy();
        if a == "--config" {
            return it.next().map(PathBuf::from);
        }
        if let Some(p) = a.strip_prefix("--config=") {
            return Some(PathBuf::from(p));
        }
    }
    None
}

/// Run the command line `args` (program name first) and return the exit code.
pub fn main<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString>,
{
    let mut args: Vec<OsString> = args.into_iter().map(Into::into).collect();
    if let Some(path) = config_path(&args) {
        let tokens = match config_tokens(&path) {
            Ok(t) => t,
            Err(e) => {
                eprintln!("error: {e}");
                return 2;
            }
        };
        let at = args
            .iter()
            .position(|a| SUBCOMMANDS.iter().any(|s| a == *s))
            .map_or(args.len(), |i| i + 1);
        args.splice(at..at, tokens);
    }
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    match dispatch(&cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            exit_code(&e)
        }
    }
}
