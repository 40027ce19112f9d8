//! Spin-reduced density matrices of Lorentz-boosted single-particle
//! Gaussian wave packets, and the coherence they retain.
//!
//! A pure boost entangles spin with momentum through the momentum-dependent
//! Wigner rotation of the little group, so a boosted observer sees a mixed
//! spin state. This crate computes that spin-reduced density matrix by
//! quadrature for 1D and isotropic 3D Gaussian packets, evaluates four
//! coherence quantifiers on it (l₁ norm, relative entropy, skew
//! information, and the basis-independent Frobenius measure), and sweeps
//! (rapidity α) × (packet width σ) grids into CSV/JSON tables and PGM
//! heatmaps.
//!
//! Everything works in natural units with masses, momenta and widths in
//! MeV, and boosts parametrized by rapidity.
//!
//! ```
//! use spinboost::{
//!     coherence::coherence_l1,
//!     quad::QuadratureConfig,
//!     srdm::srdm_boosted_1d,
//!     types::{BoostParams, GaussianPacket},
//! };
//!
//! let packet = GaussianPacket::one_d(0.05, 0.0).unwrap();
//! let boost = BoostParams::along_z(2.0).unwrap();
//! let srdm = srdm_boosted_1d(&packet, &boost, 0.5, &QuadratureConfig::default_1d()).unwrap();
//! assert!(coherence_l1(&srdm.rho) < 1.0);
//! ```

pub mod coherence;
pub mod quad;
pub mod srdm;
pub mod sweep;
pub mod types;
pub mod wigner;

pub use types::{Error, Result};
