//! Bosonic Gaussian channels as carriers of extractable work.
//!
//! The crate models one- and multi-mode Gaussian channels at the level of first
//! and second moments, evaluates ergotropy, total ergotropy and
//! non-equilibrium free energy at their output, and solves the
//! energy-constrained maximization of output ergotropy over Gaussian inputs for
//! arbitrary one-mode channels. A truncated Fock-space oracle cross-checks the
//! closed forms.
//!
//! Conventions: units with `ħ = ω = k_B = 1`, vacuum-subtracted energy
//! (`𝔈(vacuum) = 0`), quadratures ordered `(q₁..q_n, p₁..p_n)`, covariance
//! `σ_jk = ⟨{Δr_j, Δr_k}⟩` so the vacuum has `σ = I`, entropies in nats.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod channel;
pub mod error;
pub mod fock;
pub mod optimize;
pub mod sampling;
pub mod scalar;
pub mod state;
pub mod symplectic;
pub mod work;

pub use channel::{compose, ChannelSpec, GaussianChannel, PhaseCovariance};
pub use error::{Error, Result};
pub use fock::FockOperator;
pub use optimize::{maximize, normalize, NormalFormChannel, OptimizationResult, StationaryPoint};
pub use state::{GaussianState, OneModeParams};
pub use symplectic::{symplectic_form, SympForm};
pub use work::{WorkReport, FreeEnergy};
