//! Command-line front end.

use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::coefficients::{extract_coefficients, sweep, sweep_csv, CoeffName};
use crate::construct::{construct_iterative, ModelSeries, PdeSpec};
use crate::equivalent::{consistency_order, equivalent_pde};
use crate::error::{Error, Result};
use crate::format::sci;
use crate::parallel::{map_ordered, sweep_threads};
use crate::presets;
use crate::simulate::{point_release_moments, stability_max_growth, IntegrateOptions, StepSize};

#[derive(Parser, Debug)]
#[command(
    name = "holistic-fd",
    version,
    about = "Holistic finite-difference models of linear PDEs"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Derive a model by iterative centre-manifold construction.
    Derive(DeriveArgs),
    /// Equivalent PDE of a model.
    Equivalent(EquivalentArgs),
    /// Coefficient series of advection-diffusion models, with Shanks acceleration.
    Coefficients(CoefficientsArgs),
    /// Point-release simulation of a model.
    Simulate(SimulateArgs),
    /// Maximum Fourier growth rate over a range of εh.
    Stability(StabilityArgs),
}

#[derive(Args, Debug, Clone)]
struct Derivation {
    /// PDE such as "ut = -eps*ux + uxx".
    #[arg(long)]
    pde: Option<String>,
    /// Truncation order ℓ in the coupling γ.
    #[arg(long, default_value_t = 2)]
    gamma: u32,
    /// Truncation order E in ε.
    #[arg(long = "eps-order", default_value_t = 1)]
    eps_order: u32,
}

#[derive(Args, Debug)]
struct DeriveArgs {
    #[command(flatten)]
    derivation: Derivation,
    /// Model JSON output (default: stdout).
    #[arg(long)]
    out: Option<PathBuf>,
    /// Human-readable report output.
    #[arg(long)]
    report: Option<PathBuf>,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
enum TableFormat {
    Csv,
    Text,
}

#[derive(Args, Debug)]
struct EquivalentArgs {
    #[command(flatten)]
    derivation: Derivation,
    /// Model JSON to analyse instead of deriving one.
    #[arg(long)]
    model: Option<PathBuf>,
    /// Highest power of h kept.
    #[arg(long = "h-order", default_value_t = 4)]
    h_order: i32,
    #[arg(long, value_enum, default_value_t = TableFormat::Csv)]
    format: TableFormat,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct CoefficientsArgs {
    /// nu1, nu2 or kappa2.
    #[arg(long)]
    which: String,
    /// Range start:stop:step of z = εh.
    #[arg(long, default_value = "0:8:0.25")]
    z: String,
    /// Shanks iterations.
    #[arg(long, default_value_t = 2)]
    shanks: usize,
    /// Truncation order E in ε of the derived model.
    #[arg(long = "eps-order", default_value_t = 10)]
    eps_order: u32,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug, Clone)]
struct ModelSource {
    #[command(flatten)]
    derivation: Derivation,
    /// Model JSON file.
    #[arg(long)]
    model: Option<PathBuf>,
    /// Built-in model: upwind1 or upwind2.
    #[arg(long)]
    preset: Option<String>,
}

#[derive(Args, Debug)]
struct SimulateArgs {
    #[command(flatten)]
    source: ModelSource,
    #[arg(long)]
    eps: f64,
    #[arg(long)]
    h: f64,
    /// Final time.
    #[arg(long)]
    t: f64,
    /// Time step, or "auto".
    #[arg(long, default_value = "auto")]
    dt: String,
    /// Number of sample times.
    #[arg(long, default_value_t = 10)]
    samples: usize,
    /// Reject time steps beyond the RK4 stability limit.
    #[arg(long)]
    strict: bool,
    /// Trajectory CSV output.
    #[arg(long)]
    trajectory: Option<PathBuf>,
    /// Moment CSV output (default: stdout).
    #[arg(long)]
    moments: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct StabilityArgs {
    #[command(flatten)]
    source: ModelSource,
    #[arg(long, default_value_t = 1.0)]
    h: f64,
    /// Range start:stop:step of εh.
    #[arg(long = "eps-h", default_value = "0.5:1:0.05")]
    eps_h: String,
    #[arg(long = "theta-samples", default_value_t = 1024)]
    theta_samples: usize,
    #[arg(long)]
    out: Option<PathBuf>,
}

/// Exit status for each error class.
pub fn exit_code(err: &Error) -> i32 {
    match err {
        Error::UnsupportedPde(_) => 3,
        Error::Io(_) => 4,
        Error::NonConvergence { .. } | Error::UnstableStep { .. } | Error::NonFinite { .. } => 5,
        _ => 2,
    }
}

fn error_kind(err: &Error) -> &'static str {
    match err {
        Error::InvalidOperator(_) => "invalid_operator",
        Error::MalformedPde(_) => "malformed_pde",
        Error::UnsupportedPde(_) => "unsupported_pde",
        Error::Truncation(_) => "truncation",
        Error::NonConvergence { .. } => "non_convergence",
        Error::NonCanonical(_) => "non_canonical",
        Error::InvalidArgument(_) => "invalid_argument",
        Error::UnstableStep { .. } => "unstable_step",
        Error::NonFinite { .. } => "non_finite",
        Error::Parse(_) => "parse",
        Error::Io(_) => "io",
        Error::Json(_) => "json",
    }
}

/// Runs the CLI on `argv` (including the program name), printing to the
/// process's stdout and stderr. Returns the exit status.
pub fn run(argv: &[String]) -> i32 {
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run_with(argv, &mut stdout.lock(), &mut stderr.lock())
}

/// As [`run`], with explicit output streams.
pub fn run_with(argv: &[String], out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = write!(out, "{}", e.render());
                return 0;
            }
            let text = e.to_string();
            let first = text
                .lines()
                .find(|l| !l.trim().is_empty())
                .unwrap_or("invalid arguments")
                .trim_start_matches("error: ");
            let _ = writeln!(err, "error: usage: {first}");
            return 2;
        }
    };
    match dispatch(cli.command, out) {
        Ok(()) => 0,
        Err(e) => {
            let msg = e.to_string().replace('\n', " ");
            let _ = writeln!(err, "error: {}: {msg}", error_kind(&e));
            exit_code(&e)
        }
    }
}

fn dispatch(command: Command, out: &mut dyn Write) -> Result<()> {
    match command {
        Command::Derive(a) => derive(a, out),
        Command::Equivalent(a) => equivalent(a, out),
        Command::Coefficients(a) => coefficients(a, out),
        Command::Simulate(a) => simulate(a, out),
        Command::Stability(a) => stability(a, out),
    }
}

fn emit(path: Option<&Path>, text: &str, out: &mut dyn Write) -> Result<()> {
    match path {
        Some(p) => std::fs::write(p, text)?,
        None => out.write_all(text.as_bytes())?,
    }
    Ok(())
}

fn parse_pde(d: &Derivation) -> Result<PdeSpec> {
    let text = d
        .pde
        .as_deref()
        .ok_or_else(|| Error::InvalidArgument("--pde is required".into()))?;
    text.parse()
}

fn derive_model(d: &Derivation) -> Result<ModelSeries> {
    let spec = parse_pde(d)?;
    let (_, model) = construct_iterative(&spec, d.gamma, d.eps_order)?;
    Ok(model)
}

fn load_model(path: &Path) -> Result<ModelSeries> {
    ModelSeries::from_json(&std::fs::read_to_string(path)?)
}

fn resolve_model(source: &ModelSource) -> Result<ModelSeries> {
    let given = [
        source.model.is_some(),
        source.preset.is_some(),
        source.derivation.pde.is_some(),
    ];
    if given.iter().filter(|&&g| g).count() != 1 {
        return Err(Error::InvalidArgument(
            "give exactly one of --model, --preset, --pde".into(),
        ));
    }
    if let Some(p) = &source.model {
        return load_model(p);
    }
    if let Some(name) = &source.preset {
        return presets::by_name(name).ok_or_else(|| {
            Error::InvalidArgument(format!(
                "unknown preset {name:?}; expected upwind1 or upwind2"
            ))
        });
    }
    derive_model(&source.derivation)
}

/// Parses an inclusive range `start:stop:step`.
pub fn parse_range(text: &str) -> Result<Vec<f64>> {
    let bad = || Error::InvalidArgument(format!("expected start:stop:step, got {text:?}"));
    let parts: Vec<f64> = text
        .split(':')
        .map(|p| p.trim().parse::<f64>().map_err(|_| bad()))
        .collect::<Result<_>>()?;
    let [start, stop, step] = parts[..] else {
        return Err(bad());
    };
    if !(step > 0.0) || !start.is_finite() || !stop.is_finite() || stop < start {
        return Err(bad());
    }
    let count = ((stop - start) / step + 1e-9).floor() as usize + 1;
    Ok((0..count).map(|i| start + i as f64 * step).collect())
}

fn derive(a: DeriveArgs, out: &mut dyn Write) -> Result<()> {
    let model = derive_model(&a.derivation)?;
    let mut json = model.to_json()?;
    json.push('\n');
    if let Some(p) = &a.report {
        std::fs::write(p, model.report())?;
    }
    emit(a.out.as_deref(), &json, out)
}

fn equivalent(a: EquivalentArgs, out: &mut dyn Write) -> Result<()> {
    let model = match &a.model {
        Some(p) => load_model(p)?,
        None => derive_model(&a.derivation)?,
    };
    let series = equivalent_pde(&model, a.h_order);
    let text = match a.format {
        TableFormat::Csv => series.to_csv(),
        TableFormat::Text => {
            let mut t = series.to_text();
            if let Some(pde) = &a.derivation.pde {
                let spec: PdeSpec = pde.parse()?;
                t.push_str(&format!(
                    "consistency order against {spec}: {}\n",
                    consistency_order(&model, &spec)
                ));
            }
            t
        }
    };
    emit(a.out.as_deref(), &text, out)
}

fn coefficients(a: CoefficientsArgs, out: &mut dyn Write) -> Result<()> {
    let which: CoeffName = a.which.parse()?;
    let zs = parse_range(&a.z)?;
    let gamma = if which == CoeffName::Nu1 { 2 } else { 3 };
    let (_, model) = construct_iterative(&PdeSpec::advection_diffusion(), gamma, a.eps_order)?;
    let series = extract_coefficients(&model)?
        .into_iter()
        .find(|s| s.name == which)
        .expect("extraction returns the requested coefficient");
    let rows = sweep(&series, &zs, a.shanks, sweep_threads())?;
    emit(a.out.as_deref(), &sweep_csv(&rows), out)
}

fn simulate(a: SimulateArgs, out: &mut dyn Write) -> Result<()> {
    let model = resolve_model(&a.source)?;
    let dt = match a.dt.trim() {
        "auto" => StepSize::Auto,
        s => StepSize::Fixed(s.parse().map_err(|_| {
            Error::InvalidArgument(format!("--dt must be a number or auto, got {s:?}"))
        })?),
    };
    let options = IntegrateOptions {
        t_end: a.t,
        dt,
        samples: a.samples,
        strict: a.strict,
    };
    let report = point_release_moments(&model, a.eps, a.h, &options)?;
    if let Some(p) = &a.trajectory {
        std::fs::write(p, report.trajectory.to_csv())?;
    }
    emit(a.moments.as_deref(), &report.to_csv(), out)?;
    if report.wrap_contaminated {
        // the data are still written; flag the bias
        return Err(Error::InvalidArgument(
            "point release reached the periodic seam; moments are contaminated".into(),
        ));
    }
    Ok(())
}

fn stability(a: StabilityArgs, out: &mut dyn Write) -> Result<()> {
    let model = resolve_model(&a.source)?;
    if !(a.h > 0.0) {
        return Err(Error::InvalidArgument("--h must be positive".into()));
    }
    let params = parse_range(&a.eps_h)?;
    let h = a.h;
    let samples = a.theta_samples;
    let growth = map_ordered(&params, sweep_threads(), |&eh| {
        stability_max_growth(&model, 1.0, eh / h, h, samples)
    });
    let mut text = String::from("eps_h,max_growth\n");
    for (eh, g) in params.iter().zip(growth) {
        text.push_str(&format!("{},{}\n", sci(*eh), sci(g?)));
    }
    emit(a.out.as_deref(), &text, out)
}
