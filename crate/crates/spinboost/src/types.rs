//! Domain types and shared numeric utilities.
//!
//! Conventions used throughout the crate:
//! * natural units c = ħ = 1; masses, momenta and packet widths are in MeV,
//! * boosts are parametrized by rapidity (velocity v = tanh α),
//! * the qubit basis {|0⟩, |1⟩} is the Σ₃ eigenbasis with the standard
//!   Pauli matrices, so ρ = ½(𝟙 + n⃗·Σ) has ρ₁₂ = (n₁ − i n₂)/2 and
//!   n₃ = ρ₁₁ − ρ₂₂.

use num_complex::Complex64;
use thiserror::Error;

/// Tolerance for the unit-trace check on density matrices.
pub const TRACE_TOL: f64 = 1e-10;
/// How far below zero the smallest eigenvalue of a density matrix may sit
/// before the state is rejected.
pub const PSD_TOL: f64 = 1e-10;
/// Tolerance for unit-norm checks on axis vectors.
pub const UNIT_AXIS_TOL: f64 = 1e-12;
/// Slack on the |n⃗| ≤ 1 Bloch-ball constraint.
pub const BLOCH_NORM_TOL: f64 = 1e-10;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid state: {0}")]
    InvalidState(String),
    #[error("invalid kinematics: {0}")]
    InvalidKinematics(String),
    #[error("invalid config: {0}")]
    InvalidConfig(String),
    #[error("quadrature did not converge: error estimate {estimate:.3e} exceeds tolerance {tolerance:.3e}")]
    QuadratureNonConvergence { estimate: f64, tolerance: f64 },
    #[error("sweep cell (alpha = {alpha}, sigma = {sigma} MeV) failed: {source}")]
    CellFailure {
        alpha: f64,
        sigma: f64,
        #[source]
        source: Box<Error>,
    },
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

/// Real 3-vector used for boost axes, momenta and Bloch components.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Vec3 {
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl Vec3 {
    pub const fn new(x: f64, y: f64, z: f64) -> Self {
        Self { x, y, z }
    }

    pub const fn x_hat() -> Self {
        Self::new(1.0, 0.0, 0.0)
    }

    pub const fn y_hat() -> Self {
        Self::new(0.0, 1.0, 0.0)
    }

    pub const fn z_hat() -> Self {
        Self::new(0.0, 0.0, 1.0)
    }

    pub fn dot(self, other: Self) -> f64 {
        self.x * other.x + self.y * other.y + self.z * other.z
    }

    pub fn cross(self, other: Self) -> Self {
        Self::new(
            self.y * other.z - self.z * other.y,
            self.z * other.x - self.x * other.z,
            self.x * other.y - self.y * other.x,
        )
    }

    pub fn norm(self) -> f64 {
        self.dot(self).sqrt()
    }

    pub fn scale(self, s: f64) -> Self {
        Self::new(s * self.x, s * self.y, s * self.z)
    }

    pub fn is_unit(self) -> bool {
        (self.norm() - 1.0).abs() <= UNIT_AXIS_TOL
    }
}

impl std::ops::Neg for Vec3 {
    type Output = Vec3;
    fn neg(self) -> Vec3 {
        self.scale(-1.0)
    }
}

/// Pure Lorentz boost of the observer frame: rapidity α ≥ 0 along a unit
/// axis ê. A negative rapidity is folded into the axis direction.
#[derive(Debug, Clone, Copy)]
pub struct BoostParams {
    alpha: f64,
    axis: Vec3,
}

impl BoostParams {
    pub fn new(alpha: f64, axis: Vec3) -> Result<Self> {
        if !alpha.is_finite() {
            return Err(Error::InvalidKinematics(format!(
                "rapidity must be finite, got {alpha}"
            )));
        }
        if !axis.is_unit() {
            return Err(Error::InvalidKinematics(format!(
                "boost axis must have unit norm, got |e| = {}",
                axis.norm()
            )));
        }
        if alpha < 0.0 {
            Ok(Self {
                alpha: -alpha,
                axis: -axis,
            })
        } else {
            Ok(Self { alpha, axis })
        }
    }

    /// Boost along +ẑ, the geometry used by every scenario in this crate.
    pub fn along_z(alpha: f64) -> Result<Self> {
        Self::new(alpha, Vec3::z_hat())
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn axis(&self) -> Vec3 {
        self.axis
    }

    /// a = sinh α
    pub fn sinh_alpha(&self) -> f64 {
        self.alpha.sinh()
    }

    /// b = cosh α
    pub fn cosh_alpha(&self) -> f64 {
        self.alpha.cosh()
    }

    pub fn is_z_aligned(&self) -> bool {
        (self.axis.x.abs() <= UNIT_AXIS_TOL)
            && (self.axis.y.abs() <= UNIT_AXIS_TOL)
            && ((self.axis.z - 1.0).abs() <= UNIT_AXIS_TOL)
    }
}

/// Massive-particle kinematics: rest mass m > 0 and the reference momentum
/// direction f̂, with p^μ = (m cosh β, m sinh β f̂).
#[derive(Debug, Clone, Copy)]
pub struct ParticleKinematics {
    mass: f64,
    direction: Vec3,
}

impl ParticleKinematics {
    pub fn new(mass: f64, direction: Vec3) -> Result<Self> {
        if mass <= 0.0 || !mass.is_finite() {
            return Err(Error::InvalidKinematics(format!(
                "mass must be positive and finite, got {mass} MeV"
            )));
        }
        if !direction.is_unit() {
            return Err(Error::InvalidKinematics(format!(
                "momentum direction must have unit norm, got |f| = {}",
                direction.norm()
            )));
        }
        Ok(Self { mass, direction })
    }

    /// Motion along +x̂, the one-dimensional geometry.
    pub fn along_x(mass: f64) -> Result<Self> {
        Self::new(mass, Vec3::x_hat())
    }

    pub fn mass(&self) -> f64 {
        self.mass
    }

    pub fn direction(&self) -> Vec3 {
        self.direction
    }

    /// Rapidity β with sinh β = p/m (signed for momenta against f̂).
    pub fn rapidity_of(&self, momentum: f64) -> f64 {
        (momentum / self.mass).asinh()
    }

    /// p⁰ = √(p² + m²)
    pub fn energy(&self, momentum: f64) -> f64 {
        (momentum * momentum + self.mass * self.mass).sqrt()
    }
}

/// Packet dimensionality: a line packet along x̂ or an isotropic 3D packet.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PacketDimension {
    OneD,
    ThreeD,
}

/// Momentum-space Gaussian profile. In 1D the amplitude is
/// f(p) = (√π σ)^(−1/2) exp(−(p − 𝔭)²/2σ²); the isotropic 3D packet is
/// centred at zero. σ = 0 is the sharp-momentum (delta-function) case.
#[derive(Debug, Clone, Copy)]
pub struct GaussianPacket {
    dimension: PacketDimension,
    sigma: f64,
    center: f64,
}

impl GaussianPacket {
    pub fn one_d(sigma: f64, center: f64) -> Result<Self> {
        if sigma < 0.0 || !sigma.is_finite() {
            return Err(Error::InvalidState(format!(
                "packet width must be >= 0 and finite, got sigma = {sigma} MeV"
            )));
        }
        if !center.is_finite() {
            return Err(Error::InvalidState(format!(
                "packet center must be finite, got {center} MeV"
            )));
        }
        Ok(Self {
            dimension: PacketDimension::OneD,
            sigma,
            center,
        })
    }

    pub fn three_d(sigma: f64) -> Result<Self> {
        if sigma < 0.0 || !sigma.is_finite() {
            return Err(Error::InvalidState(format!(
                "packet width must be >= 0 and finite, got sigma = {sigma} MeV"
            )));
        }
        Ok(Self {
            dimension: PacketDimension::ThreeD,
            sigma,
            center: 0.0,
        })
    }

    pub fn dimension(&self) -> PacketDimension {
        self.dimension
    }

    pub fn sigma(&self) -> f64 {
        self.sigma
    }

    pub fn center(&self) -> f64 {
        self.center
    }

    /// True for the σ = 0 delta-function degenerate case.
    pub fn is_sharp(&self) -> bool {
        self.sigma == 0.0
    }

    /// |f(p)|² for the 1D profile. Not defined for σ = 0.
    pub fn weight_1d(&self, p: f64) -> f64 {
        debug_assert!(self.dimension == PacketDimension::OneD && self.sigma > 0.0);
        let u = (p - self.center) / self.sigma;
        (-u * u).exp() / (std::f64::consts::PI.sqrt() * self.sigma)
    }
}

/// Complex 2×2 matrix in the spin basis. Used for little-group elements and
/// for the test-side matrix algebra on density matrices.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CMat2 {
    /// Row-major entries [[m11, m12], [m21, m22]].
    pub e: [[Complex64; 2]; 2],
}

impl CMat2 {
    pub fn new(m11: Complex64, m12: Complex64, m21: Complex64, m22: Complex64) -> Self {
        Self {
            e: [[m11, m12], [m21, m22]],
        }
    }

    pub fn identity() -> Self {
        Self::new(
            Complex64::new(1.0, 0.0),
            Complex64::new(0.0, 0.0),
            Complex64::new(0.0, 0.0),
            Complex64::new(1.0, 0.0),
        )
    }

    pub fn pauli_x() -> Self {
        Self::new(
            Complex64::new(0.0, 0.0),
            Complex64::new(1.0, 0.0),
            Complex64::new(1.0, 0.0),
            Complex64::new(0.0, 0.0),
        )
    }

    pub fn pauli_y() -> Self {
        Self::new(
            Complex64::new(0.0, 0.0),
            Complex64::new(0.0, -1.0),
            Complex64::new(0.0, 1.0),
            Complex64::new(0.0, 0.0),
        )
    }

    pub fn pauli_z() -> Self {
        Self::new(
            Complex64::new(1.0, 0.0),
            Complex64::new(0.0, 0.0),
            Complex64::new(0.0, 0.0),
            Complex64::new(-1.0, 0.0),
        )
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = [[Complex64::new(0.0, 0.0); 2]; 2];
        for (i, row) in out.iter_mut().enumerate() {
            for (j, cell) in row.iter_mut().enumerate() {
                *cell = self.e[i][0] * other.e[0][j] + self.e[i][1] * other.e[1][j];
            }
        }
        Self { e: out }
    }

    pub fn adjoint(&self) -> Self {
        Self::new(
            self.e[0][0].conj(),
            self.e[1][0].conj(),
            self.e[0][1].conj(),
            self.e[1][1].conj(),
        )
    }

    pub fn trace(&self) -> Complex64 {
        self.e[0][0] + self.e[1][1]
    }

    pub fn det(&self) -> Complex64 {
        self.e[0][0] * self.e[1][1] - self.e[0][1] * self.e[1][0]
    }

    /// Max entry-wise modulus of (self − other).
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        let mut d: f64 = 0.0;
        for i in 0..2 {
            for j in 0..2 {
                d = d.max((self.e[i][j] - other.e[i][j]).norm());
            }
        }
        d
    }
}

/// 2×2 Hermitian, unit-trace, positive-semidefinite spin density matrix.
/// Hermiticity holds by construction: ρ₂₁ is always conj(ρ₁₂).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QubitDensity {
    rho11: f64,
    rho12: Complex64,
    rho22: f64,
}

impl QubitDensity {
    /// Build from the independent entries; rejects trace ≠ 1 or a negative
    /// eigenvalue beyond tolerance.
    pub fn new(rho11: f64, rho12: Complex64, rho22: f64) -> Result<Self> {
        let rho = Self {
            rho11,
            rho12,
            rho22,
        };
        let tr = rho.trace();
        if !(tr - 1.0).abs().is_finite() || (tr - 1.0).abs() > TRACE_TOL {
            return Err(Error::InvalidState(format!(
                "density matrix trace must be 1, got {tr}"
            )));
        }
        let min_eig = rho.eigenvalues().1;
        if min_eig < -PSD_TOL {
            return Err(Error::InvalidState(format!(
                "density matrix must be positive semidefinite, min eigenvalue {min_eig}"
            )));
        }
        Ok(rho)
    }

    /// Build from a full 2×2 complex matrix, rejecting non-Hermitian input.
    pub fn from_matrix(m: &CMat2) -> Result<Self> {
        let herm_violation = (m.e[0][1] - m.e[1][0].conj()).norm();
        let diag_imag = m.e[0][0].im.abs().max(m.e[1][1].im.abs());
        if herm_violation > TRACE_TOL || diag_imag > TRACE_TOL {
            return Err(Error::InvalidState(format!(
                "matrix is not Hermitian (off-diagonal violation {herm_violation:.3e}, diagonal imaginary part {diag_imag:.3e})"
            )));
        }
        Self::new(m.e[0][0].re, m.e[0][1], m.e[1][1].re)
    }

    /// Construction without the trace/PSD checks, for closed-form
    /// asymptotic expressions that are only meaningful in their stated
    /// regime of validity.
    pub(crate) fn new_unchecked(rho11: f64, rho12: Complex64, rho22: f64) -> Self {
        Self {
            rho11,
            rho12,
            rho22,
        }
    }

    pub fn rho11(&self) -> f64 {
        self.rho11
    }

    pub fn rho12(&self) -> Complex64 {
        self.rho12
    }

    pub fn rho21(&self) -> Complex64 {
        self.rho12.conj()
    }

    pub fn rho22(&self) -> f64 {
        self.rho22
    }

    pub fn trace(&self) -> f64 {
        self.rho11 + self.rho22
    }

    pub fn matrix(&self) -> CMat2 {
        CMat2::new(
            Complex64::new(self.rho11, 0.0),
            self.rho12,
            self.rho12.conj(),
            Complex64::new(self.rho22, 0.0),
        )
    }

    /// Eigenvalues (λ₊, λ₋) with λ₊ ≥ λ₋; exact closed form for 2×2
    /// Hermitian matrices.
    pub fn eigenvalues(&self) -> (f64, f64) {
        let half_tr = 0.5 * (self.rho11 + self.rho22);
        let half_diff = 0.5 * (self.rho11 - self.rho22);
        let r = (half_diff * half_diff + self.rho12.norm_sqr()).sqrt();
        (half_tr + r, half_tr - r)
    }

    /// n⃗ of ρ = ½(𝟙 + n⃗·Σ): n₁ = 2 Re ρ₁₂, n₂ = −2 Im ρ₁₂, n₃ = ρ₁₁ − ρ₂₂.
    pub fn bloch(&self) -> BlochVector {
        BlochVector {
            n1: 2.0 * self.rho12.re,
            n2: -2.0 * self.rho12.im,
            n3: self.rho11 - self.rho22,
        }
    }

    /// Inverse of [`bloch`](Self::bloch): ρ = ½(𝟙 + n⃗·Σ).
    pub fn from_bloch(n: &BlochVector) -> Result<Self> {
        if n.norm() > 1.0 + BLOCH_NORM_TOL {
            return Err(Error::InvalidState(format!(
                "Bloch vector must lie in the unit ball, got |n| = {}",
                n.norm()
            )));
        }
        Ok(Self {
            rho11: 0.5 * (1.0 + n.n3),
            rho12: Complex64::new(0.5 * n.n1, -0.5 * n.n2),
            rho22: 0.5 * (1.0 - n.n3),
        })
    }
}

/// Bloch vector n⃗ with |n⃗| ≤ 1.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BlochVector {
    pub n1: f64,
    pub n2: f64,
    pub n3: f64,
}

impl BlochVector {
    pub fn new(n1: f64, n2: f64, n3: f64) -> Result<Self> {
        let n = Self { n1, n2, n3 };
        if !n.norm().is_finite() || n.norm() > 1.0 + BLOCH_NORM_TOL {
            return Err(Error::InvalidState(format!(
                "Bloch vector must lie in the unit ball, got |n| = {}",
                n.norm()
            )));
        }
        Ok(n)
    }

    pub fn norm(&self) -> f64 {
        (self.n1 * self.n1 + self.n2 * self.n2 + self.n3 * self.n3).sqrt()
    }
}
