//! Numerical quadrature: Gauss-Hermite and Gauss-Laguerre node tables and an
//! adaptive Simpson rule with an error estimate.
//!
//! Gauss-Hermite (weight e^(−x²) on ℝ) is the production scheme: after the
//! substitution u = (p − 𝔭)/σ the Gaussian packet weight is exactly the GH
//! weight, and the remaining factors are analytic, so convergence is
//! spectral. Adaptive Simpson over a truncated window is kept as an
//! independent verification scheme. The isotropic 3D integrals reduce to a
//! Gauss-Hermite × Gauss-Laguerre tensor product in cylindrical coordinates
//! (t = p⊥²/σ² turns the transverse weight into e^(−t)).

use std::collections::HashMap;
use std::sync::{Arc, LazyLock, Mutex};

use nalgebra::DMatrix;

use crate::types::{Error, Result};

/// Quadrature scheme selector.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum QuadScheme {
    GaussHermite,
    AdaptiveSimpson,
}

/// Quadrature parameters shared by all density-matrix integrations.
///
/// `order` is the Gauss rule order per axis, or the maximum recursion depth
/// for the adaptive Simpson scheme. `window` is the integration half-width
/// in units of σ for the truncated (Simpson) scheme; with the default 10
/// the discarded tail weight is below e^(−100).
#[derive(Debug, Clone, Copy)]
pub struct QuadratureConfig {
    pub scheme: QuadScheme,
    pub order: usize,
    pub rel_tol: f64,
    pub window: f64,
}

impl QuadratureConfig {
    /// Gauss-Hermite order 64, the 1D production default.
    pub fn default_1d() -> Self {
        Self {
            scheme: QuadScheme::GaussHermite,
            order: 64,
            rel_tol: 1e-10,
            window: 10.0,
        }
    }

    /// Gauss-Hermite × Gauss-Laguerre order 48 per axis, the 3D default.
    pub fn default_3d() -> Self {
        Self {
            order: 48,
            ..Self::default_1d()
        }
    }

    pub fn adaptive_simpson() -> Self {
        Self {
            scheme: QuadScheme::AdaptiveSimpson,
            order: 40,
            rel_tol: 1e-10,
            window: 10.0,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.rel_tol <= 0.0 || self.rel_tol.is_nan() {
            return Err(Error::InvalidConfig(format!(
                "rel_tol must be positive, got {}",
                self.rel_tol
            )));
        }
        if self.order < 8 {
            return Err(Error::InvalidConfig(format!(
                "quadrature order must be at least 8, got {}",
                self.order
            )));
        }
        if self.window <= 0.0 || self.window.is_nan() {
            return Err(Error::InvalidConfig(format!(
                "window must be positive, got {}",
                self.window
            )));
        }
        Ok(())
    }
}

impl Default for QuadratureConfig {
    fn default() -> Self {
        Self::default_1d()
    }
}

/// How many order-doublings the Gauss rules may attempt before giving up.
pub(crate) const MAX_DOUBLINGS: usize = 4;

type Table = Arc<Vec<(f64, f64)>>;

static HERMITE_TABLES: LazyLock<Mutex<HashMap<usize, Table>>> =
    LazyLock::new(|| Mutex::new(HashMap::new()));
static LAGUERRE_TABLES: LazyLock<Mutex<HashMap<usize, Table>>> =
    LazyLock::new(|| Mutex::new(HashMap::new()));

/// Golub-Welsch: nodes are the eigenvalues of the symmetric Jacobi matrix,
/// weights are μ₀ times the squared first eigenvector components.
fn golub_welsch(diag: &[f64], off_diag: &[f64], mu0: f64) -> Vec<(f64, f64)> {
    let n = diag.len();
    let mut jacobi = DMatrix::<f64>::zeros(n, n);
    for (i, &d) in diag.iter().enumerate() {
        jacobi[(i, i)] = d;
    }
    for (i, &e) in off_diag.iter().enumerate() {
        jacobi[(i, i + 1)] = e;
        jacobi[(i + 1, i)] = e;
    }
    let eigen = jacobi.symmetric_eigen();
    let mut pairs: Vec<(f64, f64)> = (0..n)
        .map(|k| {
            let v0 = eigen.eigenvectors[(0, k)];
            (eigen.eigenvalues[k], mu0 * v0 * v0)
        })
        .collect();
    pairs.sort_by(|a, b| a.0.total_cmp(&b.0));
    pairs
}

/// Nodes and weights for ∫ e^(−x²) f(x) dx over ℝ.
pub fn gauss_hermite_table(order: usize) -> Table {
    let mut cache = HERMITE_TABLES.lock().unwrap();
    cache
        .entry(order)
        .or_insert_with(|| {
            let diag = vec![0.0; order];
            let off: Vec<f64> = (1..order).map(|k| (k as f64 / 2.0).sqrt()).collect();
            Arc::new(golub_welsch(&diag, &off, std::f64::consts::PI.sqrt()))
        })
        .clone()
}

/// Nodes and weights for ∫ e^(−t) f(t) dt over [0, ∞).
pub fn gauss_laguerre_table(order: usize) -> Table {
    let mut cache = LAGUERRE_TABLES.lock().unwrap();
    cache
        .entry(order)
        .or_insert_with(|| {
            let diag: Vec<f64> = (0..order).map(|k| 2.0 * k as f64 + 1.0).collect();
            let off: Vec<f64> = (1..order).map(|k| k as f64).collect();
            Arc::new(golub_welsch(&diag, &off, 1.0))
        })
        .clone()
}

fn simpson_segment(fa: f64, fm: f64, fb: f64, width: f64) -> f64 {
    width * (fa + 4.0 * fm + fb) / 6.0
}

#[allow(clippy::too_many_arguments)]
fn simpson_recurse<F: Fn(f64) -> f64>(
    f: &F,
    a: f64,
    m: f64,
    b: f64,
    fa: f64,
    fm: f64,
    fb: f64,
    whole: f64,
    tol: f64,
    depth: usize,
) -> Result<(f64, f64)> {
    let lm = 0.5 * (a + m);
    let rm = 0.5 * (m + b);
    let flm = f(lm);
    let frm = f(rm);
    let left = simpson_segment(fa, flm, fm, m - a);
    let right = simpson_segment(fm, frm, fb, b - m);
    let delta = left + right - whole;
    // |delta|/15 is the Richardson estimate of the error of left + right
    if delta.abs() <= 15.0 * tol {
        return Ok((left + right + delta / 15.0, delta.abs() / 15.0));
    }
    if depth == 0 {
        return Err(Error::QuadratureNonConvergence {
            estimate: delta.abs() / 15.0,
            tolerance: tol,
        });
    }
    let (lv, le) = simpson_recurse(f, a, lm, m, fa, flm, fm, left, 0.5 * tol, depth - 1)?;
    let (rv, re) = simpson_recurse(f, m, rm, b, fm, frm, fb, right, 0.5 * tol, depth - 1)?;
    Ok((lv + rv, le + re))
}

/// Adaptive Simpson integration of `f` over [a, b] to absolute tolerance
/// `tol`, returning the value and an accumulated error estimate. Fails with
/// the running error estimate if an interval still violates its local
/// tolerance at recursion depth `max_depth`.
pub fn adaptive_simpson<F: Fn(f64) -> f64>(
    f: &F,
    a: f64,
    b: f64,
    tol: f64,
    max_depth: usize,
) -> Result<(f64, f64)> {
    let m = 0.5 * (a + b);
    let (fa, fm, fb) = (f(a), f(m), f(b));
    let whole = simpson_segment(fa, fm, fb, b - a);
    simpson_recurse(f, a, m, b, fa, fm, fb, whole, tol, max_depth)
}
