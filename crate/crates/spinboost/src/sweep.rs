//! Parameter sweeps over (α, σ) grids for the three packet scenarios, with
//! CSV/JSON grid emission and PGM heatmap rendering.
//!
//! Grid cells are independent pure computations; they are evaluated in
//! parallel and written out in row-major (alpha-outer) order, so identical
//! configurations produce byte-identical output regardless of the degree of
//! parallelism.

use std::fmt;
use std::io::Write;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::coherence::{
    coherence_frobenius, coherence_l1, coherence_rel_entropy, frobenius_deficit,
    skew_information,
};
use crate::quad::QuadratureConfig;
use crate::srdm::{srdm_boosted_1d, srdm_boosted_3d, SrdmResult};
use crate::types::{BoostParams, Error, GaussianPacket, Result};

/// Electron-scale mass used by the 1D scenarios, in MeV.
pub const ELECTRON_MASS_MEV: f64 = 0.5;
/// Packet center 𝔭 = 1/(2√3) MeV: an electron moving at half the speed of
/// light.
pub const ELECTRON_CENTER_MEV: f64 = 0.288_675_134_594_812_87;
/// Neutron rest mass in MeV.
pub const NEUTRON_MASS_MEV: f64 = 939.36;

/// The three packet scenarios.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Scenario {
    /// 1D Gaussian packet centred at zero, initial spin (|0⟩ + |1⟩)/√2.
    Case1Zero,
    /// 1D Gaussian packet centred at 𝔭, initial spin (|0⟩ + |1⟩)/√2.
    Case1P,
    /// Isotropic 3D packet with neutron parameters, initial spin |0⟩.
    Case3Neutron,
}

impl Scenario {
    pub const ALL: [Scenario; 3] = [Scenario::Case1Zero, Scenario::Case1P, Scenario::Case3Neutron];

    pub fn name(&self) -> &'static str {
        match self {
            Scenario::Case1Zero => "case1-zero",
            Scenario::Case1P => "case1-p",
            Scenario::Case3Neutron => "case3-neutron",
        }
    }
}

impl fmt::Display for Scenario {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Scenario {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "case1-zero" => Ok(Scenario::Case1Zero),
            "case1-p" => Ok(Scenario::Case1P),
            "case3-neutron" => Ok(Scenario::Case3Neutron),
            other => Err(Error::InvalidConfig(format!(
                "unknown scenario '{other}' (expected case1-zero, case1-p or case3-neutron)"
            ))),
        }
    }
}

/// Selectable per-cell quantities.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Measure {
    L1,
    RelEntropy,
    Skew,
    Frobenius,
    Rho12,
    Deficit,
}

impl Measure {
    pub const ALL: [Measure; 6] = [
        Measure::L1,
        Measure::RelEntropy,
        Measure::Skew,
        Measure::Frobenius,
        Measure::Rho12,
        Measure::Deficit,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            Measure::L1 => "l1",
            Measure::RelEntropy => "rel_entropy",
            Measure::Skew => "skew",
            Measure::Frobenius => "frobenius",
            Measure::Rho12 => "rho12",
            Measure::Deficit => "deficit",
        }
    }
}

impl FromStr for Measure {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Measure::ALL
            .iter()
            .find(|m| m.name() == s)
            .copied()
            .ok_or_else(|| Error::InvalidConfig(format!("unknown measure '{s}'")))
    }
}

/// Inclusive linear range with a fixed number of samples. `steps == 1`
/// denotes the degenerate single-point range (min must equal max);
/// otherwise min < max is required.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RangeSpec {
    pub min: f64,
    pub max: f64,
    pub steps: usize,
}

impl RangeSpec {
    pub fn new(min: f64, max: f64, steps: usize) -> Self {
        Self { min, max, steps }
    }

    pub fn validate(&self, label: &str) -> Result<()> {
        if self.steps == 0 {
            return Err(Error::InvalidConfig(format!("{label}: steps must be >= 1")));
        }
        if self.steps == 1 {
            if self.min != self.max {
                return Err(Error::InvalidConfig(format!(
                    "{label}: a single-step range needs min == max"
                )));
            }
        } else if self.min >= self.max {
            return Err(Error::InvalidConfig(format!(
                "{label}: min must be below max, got [{}, {}]",
                self.min, self.max
            )));
        }
        if !self.min.is_finite() || !self.max.is_finite() {
            return Err(Error::InvalidConfig(format!("{label}: bounds must be finite")));
        }
        Ok(())
    }

    pub fn values(&self) -> Vec<f64> {
        if self.steps == 1 {
            return vec![self.min];
        }
        let span = self.max - self.min;
        (0..self.steps)
            .map(|i| self.min + span * (i as f64 / (self.steps - 1) as f64))
            .collect()
    }
}

/// Full description of one sweep.
#[derive(Debug, Clone)]
pub struct SweepConfig {
    pub scenario: Scenario,
    pub mass: f64,
    pub center: f64,
    pub alpha_range: RangeSpec,
    pub sigma_range: RangeSpec,
    pub quad: QuadratureConfig,
    pub measures: Vec<Measure>,
}

impl SweepConfig {
    /// Scenario defaults: α ∈ [0, 5] (tanh α > 0.9999 at the top), σ from 0
    /// up to the particle mass for the electron cases and up to 100 MeV for
    /// the neutron, on a 50×50 grid.
    pub fn defaults(scenario: Scenario) -> Self {
        let (mass, center, sigma_max, quad) = match scenario {
            Scenario::Case1Zero => (
                ELECTRON_MASS_MEV,
                0.0,
                ELECTRON_MASS_MEV,
                QuadratureConfig::default_1d(),
            ),
            Scenario::Case1P => (
                ELECTRON_MASS_MEV,
                ELECTRON_CENTER_MEV,
                ELECTRON_MASS_MEV,
                QuadratureConfig::default_1d(),
            ),
            Scenario::Case3Neutron => {
                (NEUTRON_MASS_MEV, 0.0, 100.0, QuadratureConfig::default_3d())
            }
        };
        Self {
            scenario,
            mass,
            center,
            alpha_range: RangeSpec::new(0.0, 5.0, 50),
            sigma_range: RangeSpec::new(0.0, sigma_max, 50),
            quad,
            measures: Measure::ALL.to_vec(),
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.mass <= 0.0 || !self.mass.is_finite() {
            return Err(Error::InvalidConfig(format!(
                "mass must be positive, got {} MeV",
                self.mass
            )));
        }
        self.alpha_range.validate("alpha range")?;
        self.sigma_range.validate("sigma range")?;
        if self.alpha_range.min < 0.0 {
            return Err(Error::InvalidConfig(
                "alpha range must be non-negative".into(),
            ));
        }
        if self.sigma_range.min < 0.0 {
            return Err(Error::InvalidConfig(
                "sigma range must be non-negative".into(),
            ));
        }
        if self.scenario == Scenario::Case3Neutron && self.center != 0.0 {
            return Err(Error::InvalidConfig(
                "the 3D scenario only supports a zero-centered packet".into(),
            ));
        }
        if self.measures.is_empty() {
            return Err(Error::InvalidConfig("measures must not be empty".into()));
        }
        self.quad.validate()
    }
}

/// One evaluated grid cell. All ten fields are always populated; the SRDMs
/// of these scenarios are real, so `rho12` carries the real part.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SweepCell {
    pub alpha: f64,
    #[serde(rename = "sigma_mev")]
    pub sigma: f64,
    pub rho11: f64,
    pub rho12: f64,
    pub c_l1: f64,
    #[serde(rename = "c_rel_ent_nats")]
    pub c_rel_ent: f64,
    pub skew_info: f64,
    pub c_frobenius: f64,
    pub deficit: f64,
    pub quad_err: f64,
}

/// CSV column order; also the set of fields a heatmap can render.
pub const CELL_FIELDS: [&str; 10] = [
    "alpha",
    "sigma_mev",
    "rho11",
    "rho12",
    "c_l1",
    "c_rel_ent_nats",
    "skew_info",
    "c_frobenius",
    "deficit",
    "quad_err",
];

impl SweepCell {
    pub fn field(&self, name: &str) -> Option<f64> {
        Some(match name {
            "alpha" => self.alpha,
            "sigma_mev" => self.sigma,
            "rho11" => self.rho11,
            "rho12" => self.rho12,
            "c_l1" => self.c_l1,
            "c_rel_ent_nats" => self.c_rel_ent,
            "skew_info" => self.skew_info,
            "c_frobenius" => self.c_frobenius,
            "deficit" => self.deficit,
            "quad_err" => self.quad_err,
            _ => return None,
        })
    }
}

/// A complete rectangular sweep result in row-major (alpha-outer) order.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepGrid {
    pub alphas: Vec<f64>,
    pub sigmas: Vec<f64>,
    pub cells: Vec<SweepCell>,
}

impl SweepGrid {
    pub fn cell(&self, alpha_idx: usize, sigma_idx: usize) -> &SweepCell {
        &self.cells[alpha_idx * self.sigmas.len() + sigma_idx]
    }
}

fn evaluate_cell(config: &SweepConfig, alpha: f64, sigma: f64) -> Result<SweepCell> {
    let boost = BoostParams::along_z(alpha)?;
    let result: SrdmResult;
    let deficit: f64;
    match config.scenario {
        Scenario::Case1Zero | Scenario::Case1P => {
            let packet = GaussianPacket::one_d(sigma, config.center)?;
            result = srdm_boosted_1d(&packet, &boost, config.mass, &config.quad)?;
            // Frobenius deficit 1 − |n⃗| from the directly integrated
            // 1 − n₁ (= bloch_deficit) and n₃, avoiding 1-minus-1
            // cancellation at small widths: 1 − |n⃗|² = (1−n₁)(1+n₁) − n₃².
            let bd = result.bloch_deficit;
            let n3 = result.rho.rho11() - result.rho.rho22();
            let one_minus_norm_sq = (bd * (2.0 - bd) - n3 * n3).max(0.0);
            let norm = (1.0 - one_minus_norm_sq).max(0.0).sqrt();
            deficit = one_minus_norm_sq / (1.0 + norm);
        }
        Scenario::Case3Neutron => {
            result = srdm_boosted_3d(sigma, &boost, config.mass, &config.quad)?;
            // diagonal state: 𝒞 = n_z, so the coherence deficit is the
            // directly integrated 1 − n_z
            deficit = frobenius_deficit(result.bloch_deficit);
        }
    }
    let rho = result.rho;
    let (hi, lo) = rho.eigenvalues();
    Ok(SweepCell {
        alpha,
        sigma,
        rho11: rho.rho11(),
        rho12: rho.rho12().re,
        c_l1: coherence_l1(&rho),
        c_rel_ent: coherence_rel_entropy(&rho),
        skew_info: skew_information(&rho),
        c_frobenius: coherence_frobenius(&[hi, lo])?,
        deficit,
        quad_err: result.quad_error,
    })
}

/// Evaluate the whole grid. Cells run in parallel; any cell failure aborts
/// the sweep with the (α, σ) coordinates of the failing cell.
pub fn run_sweep(config: &SweepConfig) -> Result<SweepGrid> {
    config.validate()?;
    let alphas = config.alpha_range.values();
    let sigmas = config.sigma_range.values();
    let coords: Vec<(f64, f64)> = alphas
        .iter()
        .flat_map(|&a| sigmas.iter().map(move |&s| (a, s)))
        .collect();
    let results: Vec<Result<SweepCell>> = coords
        .par_iter()
        .map(|&(alpha, sigma)| evaluate_cell(config, alpha, sigma))
        .collect();
    let mut cells = Vec::with_capacity(results.len());
    for (i, r) in results.into_iter().enumerate() {
        match r {
            Ok(cell) => cells.push(cell),
            Err(e) => {
                let (alpha, sigma) = coords[i];
                return Err(Error::CellFailure {
                    alpha,
                    sigma,
                    source: Box::new(e),
                });
            }
        }
    }
    Ok(SweepGrid {
        alphas,
        sigmas,
        cells,
    })
}

/// 17 significant digits: enough to reproduce any f64 bit-exactly.
fn fmt_f64(v: f64) -> String {
    format!("{v:.16e}")
}

/// CSV with the fixed [`CELL_FIELDS`] column set, one row per cell in
/// row-major (alpha-outer) order.
pub fn emit_grid_csv<W: Write>(grid: &SweepGrid, out: &mut W) -> Result<()> {
    writeln!(out, "{}", CELL_FIELDS.join(","))?;
    for cell in &grid.cells {
        let row: Vec<String> = CELL_FIELDS
            .iter()
            .map(|f| fmt_f64(cell.field(f).expect("field list is fixed")))
            .collect();
        writeln!(out, "{}", row.join(","))?;
    }
    Ok(())
}

/// JSON mirror of the CSV schema: axis arrays plus the cell array.
pub fn emit_grid_json<W: Write>(grid: &SweepGrid, out: &mut W) -> Result<()> {
    serde_json::to_writer(&mut *out, grid)
        .map_err(|e| Error::Io(std::io::Error::other(e)))?;
    out.write_all(b"\n")?;
    Ok(())
}

/// A rendered heatmap: 16-bit binary PGM plus a text sidecar recording the
/// field name and the [min, max] range the gray levels are mapped from.
#[derive(Debug, Clone, PartialEq)]
pub struct Heatmap {
    pub pgm: Vec<u8>,
    pub sidecar: String,
}

/// Render one cell field as a grayscale map, one pixel per cell: columns
/// follow the sigma axis, rows the alpha axis, values mapped linearly from
/// [field_min, field_max] onto [0, 65535]. A constant field renders
/// uniform mid-gray and the sidecar records the zero range.
pub fn render_heatmap(grid: &SweepGrid, field: &str) -> Result<Heatmap> {
    if !CELL_FIELDS.contains(&field) {
        return Err(Error::InvalidConfig(format!(
            "unknown heatmap field '{field}'"
        )));
    }
    let values: Vec<f64> = grid
        .cells
        .iter()
        .map(|c| c.field(field).expect("validated above"))
        .collect();
    let min = values.iter().copied().fold(f64::INFINITY, f64::min);
    let max = values.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let constant = max <= min;

    let (width, height) = (grid.sigmas.len(), grid.alphas.len());
    let mut pgm = format!("P5\n{width} {height}\n65535\n").into_bytes();
    for v in &values {
        let level: u16 = if constant {
            32768
        } else {
            (((v - min) / (max - min)) * 65535.0).round() as u16
        };
        pgm.extend_from_slice(&level.to_be_bytes());
    }

    let mut sidecar = format!(
        "field {field}\nmin {}\nmax {}\nrows {height}\ncols {width}\n",
        fmt_f64(min),
        fmt_f64(max)
    );
    if constant {
        sidecar.push_str("note constant field (zero range)\n");
    }
    Ok(Heatmap { pgm, sidecar })
}
