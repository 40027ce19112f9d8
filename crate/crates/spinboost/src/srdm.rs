//! Spin-reduced density matrices (SRDMs) seen by a boosted observer, for
//! Gaussian momentum packets, plus the closed-form narrow-packet limits.
//!
//! 1D geometry (observer boost along ẑ, packet along x̂, initial spin
//! (|0⟩ + |1⟩)/√2): with a = sinh α, b = cosh α and x = √(1 + p²/m²),
//!
//! ```text
//! A_p² = 1 + (a p/m)/(1 + b x)      ρ11 = ½ ∫ |f(p)|² A_p² dp
//! B_p² = 1 − (a p/m)/(1 + b x)      ρ22 = ½ ∫ |f(p)|² B_p² dp
//! A_pB_p = (b + x)/(1 + b x)        ρ12 = ρ21 = ½ ∫ |f(p)|² A_pB_p dp
//! ```
//!
//! A_p² + B_p² = 2 pointwise, so the trace is exactly the packet
//! normalization.
//!
//! 3D geometry (isotropic packet, initial spin |0⟩, boost along ẑ): the
//! SRDM is diagonal with
//!
//! ```text
//! A = p⁰ + m                        M = A² cosh²(α/2) + p_z² sinh²(α/2) + A p_z sinh α
//! B = p⁰ cosh α + p_z sinh α + m    N = (p_x² + p_y²) sinh²(α/2)
//! ρ = ⟨ diag(M/(AB), N/(AB)) ⟩ over (π^(3/2) σ³)⁻¹ e^(−p²/σ²)
//! ```
//!
//! with M + N = AB pointwise. The integrand depends only on (p_z, p⊥²), so
//! the average reduces to a 2D cylindrical integral.
//!
//! Coherence deficits (1 − n₁, 1 − n_z) are integrated directly as
//! non-negative integrands rather than recovered by subtraction, so they
//! stay meaningful far below the float spacing around 1.

use std::cell::{Cell, RefCell};

use num_complex::Complex64;

use crate::quad::{
    adaptive_simpson, gauss_hermite_table, gauss_laguerre_table, QuadScheme, QuadratureConfig,
    MAX_DOUBLINGS,
};
use crate::types::{
    BoostParams, Error, GaussianPacket, PacketDimension, QubitDensity, Result,
};

/// The three 1D integrand factors at one momentum, plus the directly
/// computed off-diagonal deficit 1 − A_pB_p (no cancellation at small p/m).
#[derive(Debug, Clone, Copy)]
pub struct TermValues1D {
    pub a_sq: f64,
    pub b_sq: f64,
    pub ab: f64,
    pub ab_deficit: f64,
}

/// The 1D integrand A_p², B_p², A_pB_p as functions of momentum, for a
/// fixed observer boost and particle mass.
#[derive(Debug, Clone, Copy)]
pub struct SrdmIntegrandTerms1D {
    sinh_alpha: f64,
    cosh_alpha: f64,
    mass: f64,
}

impl SrdmIntegrandTerms1D {
    pub fn new(boost: &BoostParams, mass: f64) -> Result<Self> {
        if mass <= 0.0 || !mass.is_finite() {
            return Err(Error::InvalidKinematics(format!(
                "mass must be positive and finite, got {mass} MeV"
            )));
        }
        Ok(Self {
            sinh_alpha: boost.sinh_alpha(),
            cosh_alpha: boost.cosh_alpha(),
            mass,
        })
    }

    pub fn eval(&self, p: f64) -> TermValues1D {
        let (a, b) = (self.sinh_alpha, self.cosh_alpha);
        let eps = p / self.mass;
        let x = (1.0 + eps * eps).sqrt();
        let denom = 1.0 + b * x;
        let s = a * eps / denom;
        // 1 − AB = (b − 1)(x − 1)/(1 + b x), with x − 1 = eps²/(1 + x)
        let x_minus_1 = eps * eps / (1.0 + x);
        TermValues1D {
            a_sq: 1.0 + s,
            b_sq: 1.0 - s,
            ab: (b + x) / denom,
            ab_deficit: (b - 1.0) * x_minus_1 / denom,
        }
    }
}

/// The 3D integrand factors at one momentum (depends only on p_z and p⊥²).
#[derive(Debug, Clone, Copy)]
pub struct TermValues3D {
    pub m_big: f64,
    pub n_big: f64,
    pub ab: f64,
}

/// The 3D integrand M, N, AB as functions of (p⊥², p_z), for a fixed
/// observer boost (along ẑ) and particle mass.
#[derive(Debug, Clone, Copy)]
pub struct SrdmIntegrandTerms3D {
    mass: f64,
    cosh_alpha: f64,
    sinh_alpha: f64,
    cosh_half_sq: f64,
    sinh_half_sq: f64,
}

impl SrdmIntegrandTerms3D {
    pub fn new(boost: &BoostParams, mass: f64) -> Result<Self> {
        if mass <= 0.0 || !mass.is_finite() {
            return Err(Error::InvalidKinematics(format!(
                "mass must be positive and finite, got {mass} MeV"
            )));
        }
        let alpha = boost.alpha();
        Ok(Self {
            mass,
            cosh_alpha: alpha.cosh(),
            sinh_alpha: alpha.sinh(),
            cosh_half_sq: (alpha / 2.0).cosh().powi(2),
            sinh_half_sq: (alpha / 2.0).sinh().powi(2),
        })
    }

    pub fn eval(&self, pperp_sq: f64, pz: f64) -> TermValues3D {
        let p0 = (pperp_sq + pz * pz + self.mass * self.mass).sqrt();
        let a_fac = p0 + self.mass;
        let b_fac = p0 * self.cosh_alpha + pz * self.sinh_alpha + self.mass;
        TermValues3D {
            m_big: a_fac * a_fac * self.cosh_half_sq
                + pz * pz * self.sinh_half_sq
                + a_fac * pz * self.sinh_alpha,
            n_big: pperp_sq * self.sinh_half_sq,
            ab: a_fac * b_fac,
        }
    }
}

/// A boosted SRDM together with the quadrature error estimate and the
/// directly integrated Bloch deficit (1 − n₁ for the 1D scenarios,
/// 1 − n_z for the 3D one).
#[derive(Debug, Clone, Copy)]
pub struct SrdmResult {
    pub rho: QubitDensity,
    pub quad_error: f64,
    pub bloch_deficit: f64,
}

struct Expectations1D {
    a_sq: f64,
    b_sq: f64,
    ab: f64,
    ab_deficit: f64,
}

fn gh_expectations_1d(
    terms: &SrdmIntegrandTerms1D,
    center: f64,
    sigma: f64,
    order: usize,
) -> Expectations1D {
    let table = gauss_hermite_table(order);
    let mut sums = [0.0f64; 4];
    let mut wsum = 0.0f64;
    for &(x, w) in table.iter() {
        let v = terms.eval(center + sigma * x);
        sums[0] += w * v.a_sq;
        sums[1] += w * v.b_sq;
        sums[2] += w * v.ab;
        sums[3] += w * v.ab_deficit;
        wsum += w;
    }
    Expectations1D {
        a_sq: sums[0] / wsum,
        b_sq: sums[1] / wsum,
        ab: sums[2] / wsum,
        ab_deficit: sums[3] / wsum,
    }
}

fn expectation_diff_1d(a: &Expectations1D, b: &Expectations1D) -> f64 {
    (a.a_sq - b.a_sq)
        .abs()
        .max((a.b_sq - b.b_sq).abs())
        .max((a.ab - b.ab).abs())
        .max((a.ab_deficit - b.ab_deficit).abs())
}

fn simpson_expectations_1d(
    terms: &SrdmIntegrandTerms1D,
    packet: &GaussianPacket,
    quad: &QuadratureConfig,
) -> Result<(Expectations1D, f64)> {
    let (lo, hi) = (
        packet.center() - quad.window * packet.sigma(),
        packet.center() + quad.window * packet.sigma(),
    );
    let tol = quad.rel_tol / 4.0;
    let depth = quad.order;
    let run = |component: &dyn Fn(TermValues1D) -> f64| {
        adaptive_simpson(
            &|p| packet.weight_1d(p) * component(terms.eval(p)),
            lo,
            hi,
            tol,
            depth,
        )
    };
    let (i_asq, e1) = run(&|v| v.a_sq)?;
    let (i_bsq, e2) = run(&|v| v.b_sq)?;
    let (i_ab, e3) = run(&|v| v.ab)?;
    let (i_def, e4) = run(&|v| v.ab_deficit)?;
    let (norm, e5) = adaptive_simpson(&|p| packet.weight_1d(p), lo, hi, tol, depth)?;
    let err = e1.max(e2).max(e3).max(e4) + e5;
    Ok((
        Expectations1D {
            a_sq: i_asq / norm,
            b_sq: i_bsq / norm,
            ab: i_ab / norm,
            ab_deficit: i_def / norm,
        },
        err,
    ))
}

/// SRDM of the boosted 1D scenario. σ = 0 takes the exact sharp-momentum
/// branch: the state undergoes the pure rotation at p = 𝔭 and no quadrature
/// runs.
pub fn srdm_boosted_1d(
    packet: &GaussianPacket,
    boost: &BoostParams,
    mass: f64,
    quad: &QuadratureConfig,
) -> Result<SrdmResult> {
    if packet.dimension() != PacketDimension::OneD {
        return Err(Error::InvalidState(
            "srdm_boosted_1d requires a 1D packet".into(),
        ));
    }
    if !boost.is_z_aligned() {
        return Err(Error::InvalidKinematics(
            "the 1D scenario assumes a boost along +z".into(),
        ));
    }
    quad.validate()?;
    let terms = SrdmIntegrandTerms1D::new(boost, mass)?;

    if packet.is_sharp() {
        // delta packet: consistency with wigner_1d is covered in tests
        let v = terms.eval(packet.center());
        let rho = QubitDensity::new(
            0.5 * v.a_sq,
            Complex64::new(0.5 * v.ab, 0.0),
            0.5 * v.b_sq,
        )?;
        return Ok(SrdmResult {
            rho,
            quad_error: 0.0,
            bloch_deficit: v.ab_deficit,
        });
    }

    let (exp, err) = match quad.scheme {
        QuadScheme::GaussHermite => {
            let mut order = quad.order;
            let mut prev = gh_expectations_1d(&terms, packet.center(), packet.sigma(), order / 2);
            let mut cur = gh_expectations_1d(&terms, packet.center(), packet.sigma(), order);
            let mut err = expectation_diff_1d(&prev, &cur);
            let mut doublings = 0;
            while err > quad.rel_tol && doublings < MAX_DOUBLINGS {
                order *= 2;
                prev = cur;
                cur = gh_expectations_1d(&terms, packet.center(), packet.sigma(), order);
                err = expectation_diff_1d(&prev, &cur);
                doublings += 1;
            }
            if err > quad.rel_tol {
                return Err(Error::QuadratureNonConvergence {
                    estimate: err,
                    tolerance: quad.rel_tol,
                });
            }
            (cur, err)
        }
        QuadScheme::AdaptiveSimpson => simpson_expectations_1d(&terms, packet, quad)?,
    };

    let rho = QubitDensity::new(
        0.5 * exp.a_sq,
        Complex64::new(0.5 * exp.ab, 0.0),
        0.5 * exp.b_sq,
    )?;
    Ok(SrdmResult {
        rho,
        quad_error: err,
        bloch_deficit: exp.ab_deficit,
    })
}

/// Small-width closed form for the zero-centered 1D scenario
/// (valid for σ/m ≪ 1):
///
/// ρ11 = ρ22 = ½,  ρ12 = ½ − ⅛ tanh²(α/2) (σ/m)²
///
/// where tanh²(α/2) = (cosh α − 1)/(cosh α + 1). Total in its parameters;
/// outside the small-σ/m regime the result is just the truncated series.
pub fn srdm_analytic_1d(alpha: f64, sigma: f64, mass: f64) -> QubitDensity {
    let t = (alpha / 2.0).tanh();
    let ratio = sigma / mass;
    let rho12 = 0.5 - 0.125 * t * t * ratio * ratio;
    QubitDensity::new_unchecked(0.5, Complex64::new(rho12, 0.0), 0.5)
}

fn ghgl_expectations_3d(terms: &SrdmIntegrandTerms3D, sigma: f64, order: usize) -> (f64, f64) {
    let hermite = gauss_hermite_table(order);
    let laguerre = gauss_laguerre_table(order);
    let mut sum_m = 0.0f64;
    let mut sum_n = 0.0f64;
    let mut wsum = 0.0f64;
    for &(t, v) in laguerre.iter() {
        let pperp_sq = sigma * sigma * t;
        for &(x, w) in hermite.iter() {
            let tv = terms.eval(pperp_sq, sigma * x);
            let vw = v * w;
            sum_m += vw * tv.m_big / tv.ab;
            sum_n += vw * tv.n_big / tv.ab;
            wsum += vw;
        }
    }
    (sum_m / wsum, sum_n / wsum)
}

fn simpson_expectations_3d(
    terms: &SrdmIntegrandTerms3D,
    sigma: f64,
    quad: &QuadratureConfig,
) -> Result<(f64, f64, f64)> {
    let half_width = quad.window * sigma;
    let outer_tol = quad.rel_tol / 4.0;
    let inner_tol = outer_tol / (2.0 * half_width);
    let depth = quad.order;
    let norm_const = std::f64::consts::PI.powf(1.5) * sigma.powi(3);

    let inner_failure: RefCell<Option<Error>> = RefCell::new(None);
    let max_inner_err = Cell::new(0.0f64);

    let nested = |component: &dyn Fn(TermValues3D) -> f64| -> Result<(f64, f64)> {
        let outer = adaptive_simpson(
            &|pz: f64| {
                if inner_failure.borrow().is_some() {
                    return 0.0;
                }
                let gz = (-(pz * pz) / (sigma * sigma)).exp();
                let inner = adaptive_simpson(
                    &|pp: f64| {
                        let w = 2.0 * std::f64::consts::PI * pp
                            * (-(pp * pp) / (sigma * sigma)).exp();
                        w * component(terms.eval(pp * pp, pz))
                    },
                    0.0,
                    half_width,
                    inner_tol * norm_const,
                    depth,
                );
                match inner {
                    Ok((v, e)) => {
                        max_inner_err.set(max_inner_err.get().max(e / norm_const));
                        gz * v / norm_const
                    }
                    Err(e) => {
                        *inner_failure.borrow_mut() = Some(e);
                        0.0
                    }
                }
            },
            -half_width,
            half_width,
            outer_tol,
            depth,
        );
        if let Some(e) = inner_failure.borrow_mut().take() {
            return Err(e);
        }
        outer
    };

    let (i_m, e_m) = nested(&|t| t.m_big / t.ab)?;
    let (i_n, e_n) = nested(&|t| t.n_big / t.ab)?;
    let (norm, e_norm) = nested(&|_| 1.0)?;
    let err =
        e_m.max(e_n) + e_norm + max_inner_err.get() * 2.0 * half_width;
    Ok((i_m / norm, i_n / norm, err))
}

/// SRDM of the boosted isotropic 3D scenario (initial spin |0⟩). The
/// off-diagonal entries vanish identically: the integrand's off-diagonal
/// parts are odd in p_x and p_y under an even weight.
pub fn srdm_boosted_3d(
    sigma: f64,
    boost: &BoostParams,
    mass: f64,
    quad: &QuadratureConfig,
) -> Result<SrdmResult> {
    if !boost.is_z_aligned() {
        return Err(Error::InvalidKinematics(
            "the 3D scenario assumes a boost along +z".into(),
        ));
    }
    if sigma < 0.0 || !sigma.is_finite() {
        return Err(Error::InvalidState(format!(
            "packet width must be >= 0 and finite, got sigma = {sigma} MeV"
        )));
    }
    if mass <= 0.0 || !mass.is_finite() {
        return Err(Error::InvalidKinematics(format!(
            "mass must be positive and finite, got {mass} MeV"
        )));
    }
    quad.validate()?;

    if sigma == 0.0 {
        // sharp packet at p = 0: the particle is at rest and the state stays |0⟩
        let rho = QubitDensity::new(1.0, Complex64::new(0.0, 0.0), 0.0)?;
        return Ok(SrdmResult {
            rho,
            quad_error: 0.0,
            bloch_deficit: 0.0,
        });
    }

    let terms = SrdmIntegrandTerms3D::new(boost, mass)?;
    let (m_avg, n_avg, err) = match quad.scheme {
        QuadScheme::GaussHermite => {
            let mut order = quad.order;
            let mut prev = ghgl_expectations_3d(&terms, sigma, order / 2);
            let mut cur = ghgl_expectations_3d(&terms, sigma, order);
            let diff = |p: (f64, f64), c: (f64, f64)| (p.0 - c.0).abs().max((p.1 - c.1).abs());
            let mut err = diff(prev, cur);
            let mut doublings = 0;
            while err > quad.rel_tol && doublings < MAX_DOUBLINGS {
                order *= 2;
                prev = cur;
                cur = ghgl_expectations_3d(&terms, sigma, order);
                err = diff(prev, cur);
                doublings += 1;
            }
            if err > quad.rel_tol {
                return Err(Error::QuadratureNonConvergence {
                    estimate: err,
                    tolerance: quad.rel_tol,
                });
            }
            (cur.0, cur.1, err)
        }
        QuadScheme::AdaptiveSimpson => simpson_expectations_3d(&terms, sigma, quad)?,
    };

    let rho = QubitDensity::new(m_avg, Complex64::new(0.0, 0.0), n_avg)?;
    Ok(SrdmResult {
        rho,
        quad_error: err,
        bloch_deficit: 2.0 * n_avg,
    })
}

/// Narrow-packet closed form for the 3D scenario (σ/m ≪ 1):
/// diag((1 + n_z)/2, (1 − n_z)/2) with n_z = 1 − (σ/(2m) · tanh(α/2))².
pub fn srdm_narrow_3d(alpha: f64, sigma: f64, mass: f64) -> QubitDensity {
    let s = sigma / (2.0 * mass) * (alpha / 2.0).tanh();
    let nz = 1.0 - s * s;
    QubitDensity::new_unchecked(
        0.5 * (1.0 + nz),
        Complex64::new(0.0, 0.0),
        0.5 * (1.0 - nz),
    )
}

/// Narrow-packet Frobenius coherence deficit 1 − 𝒞 = (σ/(2m) · tanh(α/2))²,
/// evaluated as a product so values of order 1e−30 keep full relative
/// precision instead of vanishing against the 1 ulp of 1.0.
pub fn coherence_deficit_narrow(alpha: f64, sigma: f64, mass: f64) -> f64 {
    let s = sigma / (2.0 * mass) * (alpha / 2.0).tanh();
    s * s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::wigner::wigner_1d;
    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};

    fn z_boost(alpha: f64) -> BoostParams {
        BoostParams::along_z(alpha).unwrap()
    }

    const ELECTRON_MASS: f64 = 0.5;
    const NEUTRON_MASS: f64 = 939.36;
    /// 𝔭 = 1/(2√3) MeV, the electron moving at half the speed of light.
    fn electron_center() -> f64 {
        0.5 / 3.0f64.sqrt()
    }

    #[test]
    fn zero_boost_recovers_the_rest_state() {
        let quad = QuadratureConfig::default_1d();
        for &(sigma, center) in &[(0.1, 0.0), (0.4, 0.3), (0.0, 0.2)] {
            let packet = GaussianPacket::one_d(sigma, center).unwrap();
            let r = srdm_boosted_1d(&packet, &z_boost(0.0), ELECTRON_MASS, &quad).unwrap();
            assert!((r.rho.rho11() - 0.5).abs() < 1e-14);
            assert!((r.rho.rho12().re - 0.5).abs() < 1e-14);
            assert!((r.rho.rho22() - 0.5).abs() < 1e-14);
            assert!(r.bloch_deficit.abs() < 1e-14);
        }
    }

    #[test]
    fn narrow_zero_centered_packet_decoheres_nowhere() {
        // sigma -> 0+ at zero center: the particle is at rest, so even a
        // large boost induces no Wigner rotation
        let quad = QuadratureConfig::default_1d();
        let packet = GaussianPacket::one_d(1e-8 * ELECTRON_MASS, 0.0).unwrap();
        for &alpha in &[0.5, 2.0, 5.0] {
            let r = srdm_boosted_1d(&packet, &z_boost(alpha), ELECTRON_MASS, &quad).unwrap();
            assert!((r.rho.rho12().re - 0.5).abs() < 1e-12);
        }
    }

    #[test]
    fn sharp_packet_is_a_pure_rotation() {
        let quad = QuadratureConfig::default_1d();
        let p = electron_center();
        let packet = GaussianPacket::one_d(0.0, p).unwrap();
        let r = srdm_boosted_1d(&packet, &z_boost(2.0), ELECTRON_MASS, &quad).unwrap();
        let w = wigner_1d(&z_boost(2.0), p, ELECTRON_MASS).unwrap();
        let expected = 0.5 * (w.cos_half().powi(2) - w.sin_half().powi(2));
        assert!((r.rho.rho12().re - expected).abs() < 1e-14);
        // frozen direct evaluation of (b + x)/(1 + b x)/2 at p = 1/(2√3)
        assert!((r.rho.rho12().re - 0.460_020_918_966_940_3).abs() < 1e-14);
        // pure state stays pure
        let (hi, lo) = r.rho.eigenvalues();
        assert!((hi - 1.0).abs() < 1e-12 && lo.abs() < 1e-12);
    }

    #[test]
    fn off_diagonal_decreases_in_boost_and_width() {
        let quad = QuadratureConfig::default_1d();
        let alphas: Vec<f64> = (0..8).map(|i| i as f64 * 0.7).collect();
        let sigmas: Vec<f64> = (0..8).map(|i| i as f64 * 0.06).collect();
        let rho12 = |alpha: f64, sigma: f64| {
            let packet = GaussianPacket::one_d(sigma, electron_center()).unwrap();
            srdm_boosted_1d(&packet, &z_boost(alpha), ELECTRON_MASS, &quad)
                .unwrap()
                .rho
                .rho12()
                .re
        };
        for &s in &sigmas {
            for pair in alphas.windows(2) {
                assert!(rho12(pair[1], s) <= rho12(pair[0], s) + 1e-13);
            }
        }
        for &a in &alphas[1..] {
            for pair in sigmas.windows(2) {
                assert!(rho12(a, pair[1]) <= rho12(a, pair[0]) + 1e-13);
            }
        }
    }

    #[test]
    fn matches_riemann_oracle_frozen_value() {
        // alpha = 2, sigma/m = 0.05, zero center; expected value computed
        // with a 10^6-point midpoint sum over [-10 sigma, 10 sigma]
        let quad = QuadratureConfig::default_1d();
        let packet = GaussianPacket::one_d(0.025, 0.0).unwrap();
        let r = srdm_boosted_1d(&packet, &z_boost(2.0), ELECTRON_MASS, &quad).unwrap();
        assert!((r.rho.rho12().re - 0.499_819_178_385_028_1).abs() < 1e-9);
        assert!((r.rho.rho11() - 0.5).abs() < 1e-12); // odd part integrates to zero
    }

    #[test]
    fn analytic_1d_examples() {
        assert_eq!(srdm_analytic_1d(0.0, 0.3, ELECTRON_MASS).rho12().re, 0.5);
        assert_eq!(srdm_analytic_1d(2.0, 0.0, ELECTRON_MASS).rho12().re, 0.5);
        let rho = srdm_analytic_1d(2.0, 0.05, ELECTRON_MASS);
        assert!((rho.rho12().re - 0.499_274_967_927_017_53).abs() < 1e-15);
        assert_eq!(rho.rho11(), 0.5);
    }

    #[test]
    fn analytic_1d_truncation_error_scales_as_sigma_fourth() {
        let quad = QuadratureConfig::default_1d();
        let discrepancy = |ratio: f64| {
            let sigma = ratio * ELECTRON_MASS;
            let packet = GaussianPacket::one_d(sigma, 0.0).unwrap();
            let num = srdm_boosted_1d(&packet, &z_boost(2.0), ELECTRON_MASS, &quad)
                .unwrap()
                .rho
                .rho12()
                .re;
            (num - srdm_analytic_1d(2.0, sigma, ELECTRON_MASS).rho12().re).abs()
        };
        let (d2, d1) = (discrepancy(0.02), discrepancy(0.01));
        let ratio = d2 / d1;
        assert!((12.0..=20.0).contains(&ratio), "ratio {ratio}");
    }

    #[test]
    fn schemes_agree_1d() {
        let gh = QuadratureConfig::default_1d();
        let simpson = QuadratureConfig::adaptive_simpson();
        for &(alpha, sigma, center) in &[
            (0.5, 0.1, 0.0),
            (3.0, 0.45, electron_center()),
            (5.0, 0.5, 0.0),
        ] {
            let packet = GaussianPacket::one_d(sigma, center).unwrap();
            let a = srdm_boosted_1d(&packet, &z_boost(alpha), ELECTRON_MASS, &gh).unwrap();
            let b = srdm_boosted_1d(&packet, &z_boost(alpha), ELECTRON_MASS, &simpson).unwrap();
            assert!((a.rho.rho12().re - b.rho.rho12().re).abs() < 1e-9);
            assert!((a.rho.rho11() - b.rho.rho11()).abs() < 1e-9);
        }
    }

    #[test]
    fn pointwise_identities_hold() {
        let mut rng = StdRng::seed_from_u64(11);
        for _ in 0..10_000 {
            let alpha = rng.gen_range(0.0..6.0);
            let p = rng.gen_range(-50.0..50.0);
            let m = rng.gen_range(0.3..1000.0);
            let terms = SrdmIntegrandTerms1D::new(&z_boost(alpha), m).unwrap();
            let v = terms.eval(p);
            assert!((v.a_sq + v.b_sq - 2.0).abs() < 1e-12);
            // Cauchy-Schwarz saturates pointwise: (AB)² = A²B²
            assert!((v.ab * v.ab - v.a_sq * v.b_sq).abs() < 2.0 * 1e-12);
            assert!(v.a_sq * v.b_sq >= -1e-12);

            let pz = rng.gen_range(-50.0..50.0);
            let pperp_sq = rng.gen_range(0.0..2500.0);
            let t3 = SrdmIntegrandTerms3D::new(&z_boost(alpha), m)
                .unwrap()
                .eval(pperp_sq, pz);
            let rel = ((t3.m_big + t3.n_big) - t3.ab).abs() / t3.ab.abs();
            assert!(rel < 1e-12, "M + N = AB violated: rel {rel}");
        }
    }

    #[test]
    fn three_d_identity_at_zero_boost_and_sharp_limit() {
        let quad = QuadratureConfig::default_3d();
        let r = srdm_boosted_3d(50.0, &z_boost(0.0), NEUTRON_MASS, &quad).unwrap();
        assert!((r.rho.rho11() - 1.0).abs() < 1e-13);
        assert!(r.rho.rho22().abs() < 1e-13);

        let r = srdm_boosted_3d(0.0, &z_boost(4.0), NEUTRON_MASS, &quad).unwrap();
        assert_eq!(r.rho.rho11(), 1.0);
        assert_eq!(r.bloch_deficit, 0.0);

        // sigma -> 0+ keeps the deficit at O((sigma/m)^2)
        let r = srdm_boosted_3d(1e-3, &z_boost(4.0), NEUTRON_MASS, &quad).unwrap();
        assert!(r.bloch_deficit < 1e-12);
        assert!(r.bloch_deficit > 0.0);
    }

    #[test]
    fn narrow_3d_closed_form_examples() {
        let rho = srdm_narrow_3d(0.0, 1.0, NEUTRON_MASS);
        assert_eq!(rho.rho11(), 1.0);
        assert_eq!(rho.rho22(), 0.0);

        // sigma/(2m) tanh(alpha/2) = 0.1 -> diag(0.995, 0.005)
        let sigma = 0.2 * NEUTRON_MASS / (2.0f64.tanh());
        let rho = srdm_narrow_3d(4.0, sigma, NEUTRON_MASS);
        assert!((rho.rho11() - 0.995).abs() < 1e-12);
        assert!((rho.rho22() - 0.005).abs() < 1e-12);
    }

    #[test]
    fn quadrature_deficit_is_twice_the_narrow_closed_form() {
        // The closed-form n_z = 1 − (σ/(2m) tanh(α/2))² understates the
        // integrated deficit by exactly a factor of two: expanding the
        // integrand gives 1 − n_z = 2⟨N/AB⟩ → tanh²(α/2) σ²/(2m²), i.e.
        // 2·(σ/(2m) tanh(α/2))². Pinned here against the quadrature.
        let quad = QuadratureConfig::default_3d();
        let (sigma, alpha) = (0.5, 2.0);
        let r = srdm_boosted_3d(sigma, &z_boost(alpha), NEUTRON_MASS, &quad).unwrap();
        let closed_form_deficit = 1.0 - srdm_narrow_3d(alpha, sigma, NEUTRON_MASS).bloch().n3;
        let ratio = r.bloch_deficit / closed_form_deficit;
        assert!(
            (ratio - 2.0).abs() < 1e-5,
            "deficit ratio {ratio} is not the pinned factor 2"
        );
    }

    #[test]
    fn three_d_schemes_agree() {
        let gh = QuadratureConfig::default_3d();
        let simpson = QuadratureConfig::adaptive_simpson();
        for &(alpha, sigma) in &[(1.0, 25.0), (4.0, 100.0)] {
            let a = srdm_boosted_3d(sigma, &z_boost(alpha), NEUTRON_MASS, &gh).unwrap();
            let b = srdm_boosted_3d(sigma, &z_boost(alpha), NEUTRON_MASS, &simpson).unwrap();
            assert!(
                (a.rho.rho11() - b.rho.rho11()).abs() < 1e-9,
                "rho11 {} vs {}",
                a.rho.rho11(),
                b.rho.rho11()
            );
            assert!((a.rho.rho22() - b.rho.rho22()).abs() < 1e-9);
        }
    }

    #[test]
    fn cylindrical_reduction_matches_full_3d_riemann() {
        // full 3D midpoint sum over [-8 sigma, 8 sigma]^3; both tails and
        // derivatives vanish at the boundary so the rule is spectrally
        // accurate at 100 points per axis
        let (alpha, sigma) = (3.0, 50.0);
        let quad = QuadratureConfig::default_3d();
        let r = srdm_boosted_3d(sigma, &z_boost(alpha), NEUTRON_MASS, &quad).unwrap();

        let terms = SrdmIntegrandTerms3D::new(&z_boost(alpha), NEUTRON_MASS).unwrap();
        let n = 100;
        let l = 8.0 * sigma;
        let h = 2.0 * l / n as f64;
        let mut sum_m = 0.0;
        let mut sum_n = 0.0;
        let mut wsum = 0.0;
        for i in 0..n {
            let px = -l + (i as f64 + 0.5) * h;
            for j in 0..n {
                let py = -l + (j as f64 + 0.5) * h;
                let pperp_sq = px * px + py * py;
                for k in 0..n {
                    let pz = -l + (k as f64 + 0.5) * h;
                    let w = (-(pperp_sq + pz * pz) / (sigma * sigma)).exp();
                    let t = terms.eval(pperp_sq, pz);
                    sum_m += w * t.m_big / t.ab;
                    sum_n += w * t.n_big / t.ab;
                    wsum += w;
                }
            }
        }
        assert!((r.rho.rho11() - sum_m / wsum).abs() < 1e-7);
        assert!((r.rho.rho22() - sum_n / wsum).abs() < 1e-7);
    }

    #[test]
    fn neutron_deficit_orders_of_magnitude() {
        // ultracold bound 300 neV and thermal 0.025 eV, in MeV
        let ucn = coherence_deficit_narrow(1e3, 3.0e-13, NEUTRON_MASS);
        assert!((ucn - 2.549_872_070_674_326_5e-32).abs() < 1e-44);
        assert!(ucn < 1e-30);

        let thermal = coherence_deficit_narrow(1e3, 2.5e-8, NEUTRON_MASS);
        assert!((thermal - 1.770_744_493_523_837_8e-22).abs() < 1e-34);
        assert!(thermal < 1e-20);

        assert_eq!(coherence_deficit_narrow(0.0, 1.0, NEUTRON_MASS), 0.0);
    }

    #[test]
    fn non_convergence_carries_the_estimate() {
        let mut quad = QuadratureConfig::default_1d();
        quad.rel_tol = 1e-18; // below what float64 sums can certify
        let packet = GaussianPacket::one_d(0.4, electron_center()).unwrap();
        match srdm_boosted_1d(&packet, &z_boost(5.0), ELECTRON_MASS, &quad) {
            Err(Error::QuadratureNonConvergence { estimate, tolerance }) => {
                assert!(estimate > tolerance);
            }
            other => panic!("expected non-convergence, got {other:?}"),
        }
    }

    #[test]
    fn srdm_states_are_valid_on_a_grid() {
        let quad = QuadratureConfig::default_1d();
        for i in 0..6 {
            for j in 0..6 {
                let alpha = i as f64;
                let sigma = j as f64 * 0.1;
                let packet = GaussianPacket::one_d(sigma, electron_center()).unwrap();
                let r = srdm_boosted_1d(&packet, &z_boost(alpha), ELECTRON_MASS, &quad).unwrap();
                assert!((r.rho.trace() - 1.0).abs() < 1e-10);
                assert!(r.rho.eigenvalues().1 >= -1e-10);
                assert!(r.rho.rho12().im == 0.0);
            }
        }
    }
}
