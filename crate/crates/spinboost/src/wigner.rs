//! SU(2) little-group representation of the Wigner rotation induced by a
//! pure boost acting on a sharp-momentum basis state.
//!
//! For an observer boost of rapidity α along ê and a particle of rapidity β
//! along f̂, the little-group element is
//!
//! ```text
//! D(W) = cos(φ/2) 𝟙 + i sin(φ/2) (Σ·n̂)
//!
//!                cosh(α/2) cosh(β/2) + sinh(α/2) sinh(β/2) (ê·f̂)
//! cos(φ/2) = ─────────────────────────────────────────────────────────
//!            √(1/2 + 1/2 cosh α cosh β + 1/2 sinh α sinh β (ê·f̂))
//!
//! sin(φ/2) n̂ = sinh(α/2) sinh(β/2) (ê×f̂) / (same denominator)
//! ```
//!
//! The identity cos²(φ/2) + |sin(φ/2) n̂|² = 1 holds exactly, so D(W) is
//! unitary with unit determinant by construction.
//!
//! The √((Λp)⁰/p⁰) normalization of the transformed basis states is not
//! computed anywhere in this crate: it cancels identically against the
//! momentum delta function when the spin-reduced density matrix is formed.

use num_complex::Complex64;

use crate::types::{BoostParams, CMat2, Error, ParticleKinematics, Result, Vec3};

/// An SU(2) rotation stored as (cos φ/2, sin φ/2, n̂).
///
/// [`wigner_general`] normalizes to sin φ/2 ≥ 0 with the axis carrying the
/// orientation; [`wigner_1d`] instead fixes the axis to +ŷ and lets
/// sin φ/2 carry the sign, so the same axis serves the whole momentum line.
/// When sin φ/2 = 0 the axis is conventionally ŷ.
#[derive(Debug, Clone, Copy)]
pub struct WignerRotation {
    cos_half: f64,
    sin_half: f64,
    axis: Vec3,
}

impl WignerRotation {
    pub fn identity() -> Self {
        Self {
            cos_half: 1.0,
            sin_half: 0.0,
            axis: Vec3::y_hat(),
        }
    }

    pub fn cos_half(&self) -> f64 {
        self.cos_half
    }

    pub fn sin_half(&self) -> f64 {
        self.sin_half
    }

    pub fn axis(&self) -> Vec3 {
        self.axis
    }

    /// Rotation angle φ ∈ [0, 2π), recovered from the half-angle pair.
    pub fn angle(&self) -> f64 {
        2.0 * self.sin_half.atan2(self.cos_half)
    }

    /// The 2×2 matrix cos(φ/2) 𝟙 + i sin(φ/2) (Σ·n̂).
    pub fn matrix(&self) -> CMat2 {
        let c = Complex64::new(self.cos_half, 0.0);
        let i_s = Complex64::new(0.0, self.sin_half);
        CMat2::new(
            c + i_s * self.axis.z,
            i_s * Complex64::new(self.axis.x, -self.axis.y),
            i_s * Complex64::new(self.axis.x, self.axis.y),
            c - i_s * self.axis.z,
        )
    }
}

fn half_angle_denominator(alpha: f64, beta: f64, e_dot_f: f64) -> f64 {
    (0.5 + 0.5 * alpha.cosh() * beta.cosh() + 0.5 * alpha.sinh() * beta.sinh() * e_dot_f).sqrt()
}

/// Wigner rotation for an observer boost `boost` applied to a particle
/// moving with rapidity `beta` along `kin`'s reference direction.
///
/// The denominator is bounded below by √(½(1 + cosh(α−β))) > 0, so the
/// expression is total for finite rapidities.
pub fn wigner_general(
    boost: &BoostParams,
    kin: &ParticleKinematics,
    beta: f64,
) -> WignerRotation {
    let alpha = boost.alpha();
    let e = boost.axis();
    let f = kin.direction();
    let den = half_angle_denominator(alpha, beta, e.dot(f));

    let cos_half = ((alpha / 2.0).cosh() * (beta / 2.0).cosh()
        + (alpha / 2.0).sinh() * (beta / 2.0).sinh() * e.dot(f))
        / den;
    let sin_vec = e.cross(f).scale((alpha / 2.0).sinh() * (beta / 2.0).sinh() / den);
    let sin_half = sin_vec.norm();
    let axis = if sin_half > 0.0 {
        sin_vec.scale(1.0 / sin_half)
    } else {
        Vec3::y_hat()
    };
    WignerRotation {
        cos_half,
        sin_half,
        axis,
    }
}

/// Specialization to the 1D geometry: boost along ẑ, momentum p along x̂.
/// The axis is fixed to ŷ = ẑ × x̂ and sin φ/2 flips sign with p
/// (sinh(β/2) is odd in the momentum).
pub fn wigner_1d(boost: &BoostParams, momentum: f64, mass: f64) -> Result<WignerRotation> {
    if mass <= 0.0 || !mass.is_finite() {
        return Err(Error::InvalidKinematics(format!(
            "mass must be positive and finite, got {mass} MeV"
        )));
    }
    if !boost.is_z_aligned() {
        return Err(Error::InvalidKinematics(
            "the 1D form assumes a boost along +z".into(),
        ));
    }
    let alpha = boost.alpha();
    let beta = (momentum / mass).asinh();
    let den = half_angle_denominator(alpha, beta, 0.0);
    Ok(WignerRotation {
        cos_half: (alpha / 2.0).cosh() * (beta / 2.0).cosh() / den,
        sin_half: (alpha / 2.0).sinh() * (beta / 2.0).sinh() / den,
        axis: Vec3::y_hat(),
    })
}

/// Little-group element for a ẑ boost acting on an arbitrary 3-momentum:
///
/// ```text
/// D(W) = [(p⁰+m) cosh(α/2) + p_z sinh(α/2) − i sinh(α/2)(−p_x σ_y + p_y σ_x)]
///        / √((p⁰+m)(p⁰ cosh α + p_z sinh α + m))
/// ```
pub fn wigner_3d_zboost(boost: &BoostParams, momentum: Vec3, mass: f64) -> Result<CMat2> {
    if mass <= 0.0 || !mass.is_finite() {
        return Err(Error::InvalidKinematics(format!(
            "mass must be positive and finite, got {mass} MeV"
        )));
    }
    if !boost.is_z_aligned() {
        return Err(Error::InvalidKinematics(
            "this form assumes a boost along +z".into(),
        ));
    }
    let alpha = boost.alpha();
    let p0 = (momentum.dot(momentum) + mass * mass).sqrt();
    let a_fac = p0 + mass;
    let b_fac = p0 * alpha.cosh() + momentum.z * alpha.sinh() + mass;
    let norm = (a_fac * b_fac).sqrt();

    let c0 = a_fac * (alpha / 2.0).cosh() + momentum.z * (alpha / 2.0).sinh();
    // i (c_x σ_x + c_y σ_y) with c_x = −p_y sinh(α/2), c_y = p_x sinh(α/2)
    let cx = -momentum.y * (alpha / 2.0).sinh();
    let cy = momentum.x * (alpha / 2.0).sinh();

    Ok(CMat2::new(
        Complex64::new(c0 / norm, 0.0),
        Complex64::new(cy / norm, cx / norm),
        Complex64::new(-cy / norm, cx / norm),
        Complex64::new(c0 / norm, 0.0),
    ))
}
