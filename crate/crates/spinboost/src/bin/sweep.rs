//! Sweep CLI: evaluate an (α, σ) grid for one scenario and write the result
//! as CSV or JSON, optionally with a PGM heatmap of one field.
//!
//! Precedence for every setting is flags > config file > scenario defaults.
//! Exit codes: 0 success, 2 invalid configuration, 3 quadrature failure.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::str::FromStr;

use clap::Parser;
use serde::Deserialize;

use spinboost::quad::QuadScheme;
use spinboost::sweep::{
    emit_grid_csv, emit_grid_json, render_heatmap, run_sweep, Measure, RangeSpec, Scenario,
    SweepConfig,
};
use spinboost::types::Error;

#[derive(Parser, Debug)]
#[command(
    name = "sweep",
    about = "Coherence of boosted Gaussian wave packets over an (alpha, sigma) grid"
)]
struct Cli {
    /// Scenario: case1-zero, case1-p or case3-neutron
    #[arg(long)]
    scenario: Option<String>,
    /// Particle rest mass in MeV
    #[arg(long)]
    mass: Option<f64>,
    /// Packet center in MeV (1D scenarios only)
    #[arg(long)]
    center: Option<f64>,
    /// Rapidity range as min:max:steps
    #[arg(long)]
    alpha: Option<String>,
    /// Width range in MeV as min:max:steps
    #[arg(long)]
    sigma: Option<String>,
    /// Comma-separated subset of l1,rel_entropy,skew,frobenius,rho12,deficit
    #[arg(long)]
    measures: Option<String>,
    /// Output format: csv or json
    #[arg(long)]
    format: Option<String>,
    /// Output path for the grid (stdout when omitted)
    #[arg(long)]
    out: Option<PathBuf>,
    /// Also render this field as a PGM heatmap next to --out
    #[arg(long)]
    heatmap: Option<String>,
    /// Flat JSON config file; flags override its values
    #[arg(long)]
    config: Option<PathBuf>,
    /// Gauss rule order (or adaptive recursion depth)
    #[arg(long)]
    quad_order: Option<usize>,
    /// Quadrature tolerance
    #[arg(long)]
    rel_tol: Option<f64>,
}

/// The flat JSON config document. Keys mirror the CLI flags; `scheme` and
/// `window` are config-file-only knobs.
#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct FileConfig {
    scenario: Option<String>,
    mass: Option<f64>,
    center: Option<f64>,
    alpha: Option<String>,
    sigma: Option<String>,
    measures: Option<String>,
    format: Option<String>,
    out: Option<PathBuf>,
    heatmap: Option<String>,
    quad_order: Option<usize>,
    rel_tol: Option<f64>,
    scheme: Option<String>,
    window: Option<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum OutputFormat {
    Csv,
    Json,
}

fn parse_range(spec: &str, label: &str) -> Result<RangeSpec, Error> {
    let parts: Vec<&str> = spec.split(':').collect();
    if parts.len() != 3 {
        return Err(Error::InvalidConfig(format!(
            "{label} range must be min:max:steps, got '{spec}'"
        )));
    }
    let min: f64 = parts[0]
        .parse()
        .map_err(|_| Error::InvalidConfig(format!("{label} range: bad min '{}'", parts[0])))?;
    let max: f64 = parts[1]
        .parse()
        .map_err(|_| Error::InvalidConfig(format!("{label} range: bad max '{}'", parts[1])))?;
    let steps: usize = parts[2]
        .parse()
        .map_err(|_| Error::InvalidConfig(format!("{label} range: bad steps '{}'", parts[2])))?;
    Ok(RangeSpec::new(min, max, steps))
}

fn parse_measures(spec: &str) -> Result<Vec<Measure>, Error> {
    spec.split(',')
        .map(|s| Measure::from_str(s.trim()))
        .collect()
}

fn parse_format(spec: &str) -> Result<OutputFormat, Error> {
    match spec {
        "csv" => Ok(OutputFormat::Csv),
        "json" => Ok(OutputFormat::Json),
        other => Err(Error::InvalidConfig(format!(
            "unknown format '{other}' (expected csv or json)"
        ))),
    }
}

fn parse_scheme(spec: &str) -> Result<QuadScheme, Error> {
    match spec {
        "gauss-hermite" => Ok(QuadScheme::GaussHermite),
        "adaptive-simpson" => Ok(QuadScheme::AdaptiveSimpson),
        other => Err(Error::InvalidConfig(format!(
            "unknown scheme '{other}' (expected gauss-hermite or adaptive-simpson)"
        ))),
    }
}

struct ResolvedRun {
    config: SweepConfig,
    format: OutputFormat,
    out: Option<PathBuf>,
    heatmap: Option<String>,
}

fn resolve(cli: Cli) -> Result<ResolvedRun, Error> {
    let file: FileConfig = match &cli.config {
        Some(path) => {
            let text = fs::read_to_string(path)?;
            serde_json::from_str(&text)
                .map_err(|e| Error::InvalidConfig(format!("config file: {e}")))?
        }
        None => FileConfig::default(),
    };

    let scenario_name = cli
        .scenario
        .or(file.scenario)
        .unwrap_or_else(|| Scenario::Case1Zero.name().to_string());
    let scenario = Scenario::from_str(&scenario_name)?;
    let mut config = SweepConfig::defaults(scenario);

    if let Some(mass) = cli.mass.or(file.mass) {
        config.mass = mass;
    }
    if let Some(center) = cli.center.or(file.center) {
        config.center = center;
    }
    if let Some(spec) = cli.alpha.or(file.alpha) {
        config.alpha_range = parse_range(&spec, "alpha")?;
    }
    if let Some(spec) = cli.sigma.or(file.sigma) {
        config.sigma_range = parse_range(&spec, "sigma")?;
    }
    if let Some(spec) = cli.measures.or(file.measures) {
        config.measures = parse_measures(&spec)?;
    }
    if let Some(scheme) = &file.scheme {
        config.quad.scheme = parse_scheme(scheme)?;
    }
    if let Some(order) = cli.quad_order.or(file.quad_order) {
        config.quad.order = order;
    }
    if let Some(tol) = cli.rel_tol.or(file.rel_tol) {
        config.quad.rel_tol = tol;
    }
    if let Some(window) = file.window {
        config.quad.window = window;
    }
    config.validate()?;

    let format = match cli.format.or(file.format) {
        Some(spec) => parse_format(&spec)?,
        None => OutputFormat::Csv,
    };
    let out = cli.out.or(file.out);
    let heatmap = cli.heatmap.or(file.heatmap);
    if heatmap.is_some() && out.is_none() {
        return Err(Error::InvalidConfig(
            "--heatmap needs --out to derive the image path".into(),
        ));
    }
    Ok(ResolvedRun {
        config,
        format,
        out,
        heatmap,
    })
}

/// grid.csv + field rho12 -> grid.rho12.pgm / grid.rho12.pgm.txt
fn heatmap_path(out: &Path, field: &str) -> PathBuf {
    let stem = out.file_stem().unwrap_or_default().to_string_lossy();
    out.with_file_name(format!("{stem}.{field}.pgm"))
}

fn run(cli: Cli) -> Result<(), Error> {
    let resolved = resolve(cli)?;
    let grid = run_sweep(&resolved.config)?;

    let mut bytes = Vec::new();
    match resolved.format {
        OutputFormat::Csv => emit_grid_csv(&grid, &mut bytes)?,
        OutputFormat::Json => emit_grid_json(&grid, &mut bytes)?,
    }
    match &resolved.out {
        Some(path) => fs::write(path, &bytes)?,
        None => std::io::stdout().write_all(&bytes)?,
    }

    if let Some(field) = &resolved.heatmap {
        let out = resolved.out.as_ref().expect("checked in resolve");
        let hm = render_heatmap(&grid, field)?;
        let pgm_path = heatmap_path(out, field);
        fs::write(&pgm_path, &hm.pgm)?;
        let sidecar_path = pgm_path.with_file_name(format!(
            "{}.txt",
            pgm_path.file_name().unwrap_or_default().to_string_lossy()
        ));
        fs::write(sidecar_path, hm.sidecar.as_bytes())?;
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            let mut cause = std::error::Error::source(&e);
            while let Some(c) = cause {
                eprintln!("  caused by: {c}");
                cause = c.source();
            }
            match e {
                Error::InvalidConfig(_) | Error::InvalidState(_) | Error::InvalidKinematics(_) => {
                    ExitCode::from(2)
                }
                Error::QuadratureNonConvergence { .. } | Error::CellFailure { .. } => {
                    ExitCode::from(3)
                }
                Error::Io(_) => ExitCode::FAILURE,
            }
        }
    }
}
