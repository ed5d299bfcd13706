//! Work-extraction functionals: ergotropy, total ergotropy and
//! non-equilibrium free energy of Gaussian states.

use serde::{Deserialize, Serialize};

use crate::channel::GaussianChannel;
use crate::error::{Error, Result};
use crate::state::{thermal_entropy, GaussianState};
use crate::symplectic::largest_singular_structure;

/// Absolute tolerance on the equal-entropy thermal photon number.
pub const BISECTION_TOL: f64 = 1e-12;
const BISECTION_MAX_ITER: usize = 400;

fn require_one_mode(s: &GaussianState) -> Result<()> {
    if s.modes() != 1 {
        return Err(Error::Dimension(format!(
            "one-mode state required, got {} modes",
            s.modes()
        )));
    }
    Ok(())
}

fn sqrt_det_2x2(s: &GaussianState) -> f64 {
    let c = s.cov();
    (c[(0, 0)] * c[(1, 1)] - c[(0, 1)] * c[(1, 0)]).max(0.0).sqrt()
}

/// `Tr σ/4 + |m|²/2 − √det σ / 2`.
pub fn ergotropy_one_mode(s: &GaussianState) -> Result<f64> {
    require_one_mode(s)?;
    let value = s.cov().trace() / 4.0 + s.mean().norm_squared() / 2.0 - sqrt_det_2x2(s) / 2.0;
    Ok(value.max(0.0))
}

/// Energy of the passive counterpart, `(√det σ − 1)/2`.
pub fn passive_energy_one_mode(s: &GaussianState) -> Result<f64> {
    require_one_mode(s)?;
    Ok(((sqrt_det_2x2(s) - 1.0) / 2.0).max(0.0))
}

/// Photon number `N*` per mode of the product thermal state with entropy
/// `entropy` over `modes` modes, i.e. `modes · g(N*) = entropy`.
pub fn equal_entropy_photon_number(entropy: f64, modes: usize, upper: f64) -> Result<f64> {
    if entropy <= 0.0 {
        return Ok(0.0);
    }
    let target = entropy / modes as f64;
    let (mut lo, mut hi) = (0.0_f64, upper.max(1.0));
    let mut grow = 0;
    while thermal_entropy(hi) < target {
        hi *= 2.0;
        grow += 1;
        if grow > 200 {
            return Err(Error::Numerical("could not bracket the equal-entropy temperature".into()));
        }
    }
    for _ in 0..BISECTION_MAX_ITER {
        let mid = 0.5 * (lo + hi);
        if hi - lo <= BISECTION_TOL || mid == lo || mid == hi {
            return Ok(mid);
        }
        if thermal_entropy(mid) < target {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Err(Error::Numerical(format!(
        "entropy bisection did not converge (bracket [{lo}, {hi}])"
    )))
}

/// `𝔈(ρ) − 𝔈(τ)` with `τ` the Gibbs state of equal entropy.
pub fn total_ergotropy(s: &GaussianState) -> Result<f64> {
    let energy = s.mean_energy();
    let n_star = equal_entropy_photon_number(s.entropy(), s.modes(), energy)?;
    Ok((energy - s.modes() as f64 * n_star).max(0.0))
}

/// `𝔈(ρ) − S(ρ)/β`.
pub fn free_energy(s: &GaussianState, beta: f64) -> Result<f64> {
    if !(beta > 0.0) || !beta.is_finite() {
        return Err(Error::Parameter(format!("inverse temperature β must be > 0, got {beta}")));
    }
    Ok(s.mean_energy() - s.entropy() / beta)
}

/// Maximal output ergotropy `Λ₁·E` of a one-mode phase-insensitive channel
/// under the input energy constraint `E`; attained by coherent inputs.
pub fn pi_max_ergotropy(channel: &GaussianChannel, energy: f64) -> Result<f64> {
    if channel.input_modes() != 1 || channel.output_modes() != 1 {
        return Err(Error::Dimension("pi_max_ergotropy needs a one-mode channel".into()));
    }
    if !(energy >= 0.0) {
        return Err(Error::Parameter(format!("energy must be >= 0, got {energy}")));
    }
    if !channel.is_phase_insensitive(1e-10) {
        return Err(Error::NotPhaseInsensitive);
    }
    if channel.x().amax() == 0.0 {
        return Ok(0.0);
    }
    let (lambda1, _) = largest_singular_structure(channel.x())?;
    Ok(lambda1 * energy)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FreeEnergy {
    pub beta: f64,
    pub value: f64,
}

/// Energy, entropy and extractable-work figures of one state.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WorkReport {
    pub energy: f64,
    pub entropy: f64,
    /// Single-copy ergotropy; only reported for one-mode states.
    pub ergotropy: Option<f64>,
    pub total_ergotropy: f64,
    pub free_energy: Vec<FreeEnergy>,
}

impl WorkReport {
    pub fn evaluate(s: &GaussianState, betas: &[f64]) -> Result<Self> {
        let ergotropy = if s.modes() == 1 {
            Some(ergotropy_one_mode(s)?)
        } else {
            None
        };
        let free_energy = betas
            .iter()
            .map(|&beta| Ok(FreeEnergy { beta, value: free_energy(s, beta)? }))
            .collect::<Result<_>>()?;
        Ok(Self {
            energy: s.mean_energy(),
            entropy: s.entropy(),
            ergotropy,
            total_ergotropy: total_ergotropy(s)?,
            free_energy,
        })
    }
}

/// Output energies for the squeezed-attenuator counterexample.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EnergyGap {
    /// Common input energy of the two probes.
    pub input_energy: f64,
    /// Output energy for the input with `σ = diag(1/ζ, ζ)`.
    pub output_energy_first: f64,
    /// Output energy for the input with `σ = diag(ζ, 1/ζ)`.
    pub output_energy_second: f64,
}

impl EnergyGap {
    pub fn gap(&self) -> f64 {
        self.output_energy_second - self.output_energy_first
    }
}

/// Sends two pure squeezed states of equal energy and equal mean through
/// `Γ_{η,ζ}`. The first is the input the squeezer turns into a coherent state;
/// the second, squeezed along the other axis, leaves with more energy.
pub fn squeezed_attenuator_gap(eta: f64, zeta: f64, mean: [f64; 2]) -> Result<EnergyGap> {
    let channel = GaussianChannel::attenuated_squeezer(eta, zeta)?;
    let m = nalgebra::DVector::from_vec(mean.to_vec());
    let diag = |a: f64, b: f64| nalgebra::DMatrix::from_diagonal(&nalgebra::DVector::from_vec(vec![a, b]));
    let first = GaussianState::new(m.clone(), diag(zeta.recip(), zeta))?;
    let second = GaussianState::new(m, diag(zeta, zeta.recip()))?;
    Ok(EnergyGap {
        input_energy: first.mean_energy(),
        output_energy_first: channel.apply(&first)?.mean_energy(),
        output_energy_second: channel.apply(&second)?.mean_energy(),
    })
}
