//! Gaussian states described by their first and second moments.

use std::f64::consts::TAU;

use nalgebra::{DMatrix, DVector, Matrix2};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::symplectic::{is_valid_covariance, symplectic_eigenvalues, PSD_TOL};

/// An `n`-mode Gaussian state `(m, σ)`.
///
/// The covariance follows the anticommutator convention, so the vacuum has
/// `σ = I` and the vacuum-subtracted mean energy is
/// `Tr σ / 4 + |m|² / 2 − n / 2`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "StateRepr", into = "StateRepr")]
pub struct GaussianState {
    mean: DVector<f64>,
    cov: DMatrix<f64>,
}

/// Wire form: `{"n": .., "mean": [..], "cov": [row-major ..]}`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct StateRepr {
    pub n: usize,
    pub mean: Vec<f64>,
    pub cov: Vec<f64>,
}

impl TryFrom<StateRepr> for GaussianState {
    type Error = Error;

    fn try_from(r: StateRepr) -> Result<Self> {
        let d = 2 * r.n;
        if r.mean.len() != d || r.cov.len() != d * d {
            return Err(Error::Dimension(format!(
                "n = {} needs mean of length {d} and cov of length {}, got {} and {}",
                r.n,
                d * d,
                r.mean.len(),
                r.cov.len()
            )));
        }
        GaussianState::new(
            DVector::from_vec(r.mean),
            DMatrix::from_row_slice(d, d, &r.cov),
        )
    }
}

impl From<GaussianState> for StateRepr {
    fn from(s: GaussianState) -> Self {
        let d = s.cov.nrows();
        let cov = (0..d)
            .flat_map(|i| (0..d).map(move |j| (i, j)))
            .map(|(i, j)| s.cov[(i, j)])
            .collect();
        StateRepr {
            n: s.modes(),
            mean: s.mean.iter().copied().collect(),
            cov,
        }
    }
}

impl GaussianState {
    /// Validates the moments; the covariance must satisfy `σ + iγ ≥ 0`.
    pub fn new(mean: DVector<f64>, cov: DMatrix<f64>) -> Result<Self> {
        if cov.nrows() != mean.len() {
            return Err(Error::Dimension(format!(
                "mean has length {} but covariance is {}x{}",
                mean.len(),
                cov.nrows(),
                cov.ncols()
            )));
        }
        if mean.iter().chain(cov.iter()).any(|v| !v.is_finite()) {
            return Err(Error::InvalidCovariance("non-finite entries".into()));
        }
        if !is_valid_covariance(&cov, PSD_TOL)? {
            return Err(Error::InvalidCovariance(
                "σ + iγ is not positive semidefinite".into(),
            ));
        }
        let cov = (&cov + cov.transpose()) * 0.5;
        Ok(Self { mean, cov })
    }

    pub(crate) fn new_unchecked(mean: DVector<f64>, cov: DMatrix<f64>) -> Self {
        Self { mean, cov }
    }

    pub fn vacuum(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::ZeroModes);
        }
        Ok(Self::new_unchecked(
            DVector::zeros(2 * n),
            DMatrix::identity(2 * n, 2 * n),
        ))
    }

    /// Coherent state with the given quadrature mean (`σ = I`).
    pub fn coherent(mean: DVector<f64>) -> Result<Self> {
        if mean.is_empty() || !mean.len().is_multiple_of(2) {
            return Err(Error::Dimension(format!(
                "mean vector must have even positive length, got {}",
                mean.len()
            )));
        }
        let d = mean.len();
        Self::new(mean, DMatrix::identity(d, d))
    }

    /// One-mode thermal state with mean photon number `n_photons`.
    pub fn thermal(n_photons: f64) -> Result<Self> {
        if !(n_photons >= 0.0) || !n_photons.is_finite() {
            return Err(Error::Parameter(format!(
                "thermal photon number must be >= 0, got {n_photons}"
            )));
        }
        Ok(Self::new_unchecked(
            DVector::zeros(2),
            DMatrix::identity(2, 2) * (2.0 * n_photons + 1.0),
        ))
    }

    /// Displaced, squeezed thermal one-mode state.
    pub fn from_params(p: &OneModeParams) -> Result<Self> {
        p.validate()?;
        let cov = p.covariance();
        let [dx, dy] = p.mean_dir;
        let norm = (dx * dx + dy * dy).sqrt();
        let mean = if p.mean_norm == 0.0 {
            DVector::zeros(2)
        } else {
            DVector::from_vec(vec![p.mean_norm * dx / norm, p.mean_norm * dy / norm])
        };
        Self::new(mean, DMatrix::from_iterator(2, 2, cov.iter().copied()))
    }

    /// Tensor product, reordering quadratures into `(q.., q'.., p.., p'..)`.
    pub fn tensor(&self, other: &GaussianState) -> GaussianState {
        let (na, nb) = (self.modes(), other.modes());
        let n = na + nb;
        let ia = |k: usize| if k < na { k } else { n + k - na };
        let ib = |k: usize| if k < nb { na + k } else { n + na + k - nb };
        let mut mean = DVector::zeros(2 * n);
        let mut cov = DMatrix::zeros(2 * n, 2 * n);
        for i in 0..2 * na {
            mean[ia(i)] = self.mean[i];
            for j in 0..2 * na {
                cov[(ia(i), ia(j))] = self.cov[(i, j)];
            }
        }
        for i in 0..2 * nb {
            mean[ib(i)] = other.mean[i];
            for j in 0..2 * nb {
                cov[(ib(i), ib(j))] = other.cov[(i, j)];
            }
        }
        GaussianState::new_unchecked(mean, cov)
    }

    pub fn modes(&self) -> usize {
        self.mean.len() / 2
    }

    pub fn mean(&self) -> &DVector<f64> {
        &self.mean
    }

    pub fn cov(&self) -> &DMatrix<f64> {
        &self.cov
    }

    /// `Tr σ / 4 + |m|² / 2 − n / 2`.
    pub fn mean_energy(&self) -> f64 {
        self.cov.trace() / 4.0 + self.mean.norm_squared() / 2.0 - self.modes() as f64 / 2.0
    }

    pub fn symplectic_eigenvalues(&self) -> Vec<f64> {
        symplectic_eigenvalues(&self.cov).expect("state covariance is validated on construction")
    }

    /// Von Neumann entropy in nats, `Σ_k g((ν_k − 1)/2)`.
    pub fn entropy(&self) -> f64 {
        self.symplectic_eigenvalues()
            .into_iter()
            .map(|nu| thermal_entropy((nu - 1.0) / 2.0))
            .sum()
    }
}

/// Entropy of a one-mode thermal state with mean photon number `n`:
/// `g(n) = (n+1) ln(n+1) − n ln n`, with `g(0) = 0`.
pub fn thermal_entropy(n: f64) -> f64 {
    if n <= 0.0 {
        return 0.0;
    }
    n.ln_1p() + n * n.recip().ln_1p()
}

/// `f₊(z) = (z + 1/z)/2`.
pub fn f_plus(z: f64) -> f64 {
    0.5 * (z + z.recip())
}

/// `f₋(z) = (z − 1/z)/2`.
pub fn f_minus(z: f64) -> f64 {
    0.5 * (z - z.recip())
}

/// `ν [f₊(z) I + f₋(z)(sin θ σ_x + cos θ σ_z)]`.
pub fn one_mode_covariance(z: f64, theta: f64, nu: f64) -> Matrix2<f64> {
    let (s, c) = theta.sin_cos();
    let (fp, fm) = (f_plus(z), f_minus(z));
    Matrix2::new(fp + fm * c, fm * s, fm * s, fp - fm * c) * nu
}

/// Parameters of a displaced, squeezed thermal one-mode state.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct OneModeParams {
    /// Squeezing degree, `z >= 1`.
    pub z: f64,
    /// Squeezing direction in `[0, 2π)`.
    pub theta: f64,
    /// Symplectic eigenvalue `ν >= 1` (`ν = 1` is pure).
    pub nu: f64,
    /// `|m|`.
    pub mean_norm: f64,
    /// Direction of the mean; need not be normalized.
    pub mean_dir: [f64; 2],
}

impl OneModeParams {
    pub fn pure(z: f64, theta: f64, mean_norm: f64, mean_angle: f64) -> Self {
        let (s, c) = mean_angle.sin_cos();
        Self {
            z,
            theta,
            nu: 1.0,
            mean_norm,
            mean_dir: [c, s],
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.z >= 1.0) || !self.z.is_finite() {
            return Err(Error::Parameter(format!("squeezing z must be >= 1, got {}", self.z)));
        }
        if !(self.nu >= 1.0) || !self.nu.is_finite() {
            return Err(Error::Parameter(format!("mixedness ν must be >= 1, got {}", self.nu)));
        }
        if !(self.mean_norm >= 0.0) || !self.mean_norm.is_finite() {
            return Err(Error::Parameter(format!("|m| must be >= 0, got {}", self.mean_norm)));
        }
        if !self.theta.is_finite() {
            return Err(Error::Parameter("θ must be finite".into()));
        }
        let [dx, dy] = self.mean_dir;
        if self.mean_norm > 0.0 && !(dx * dx + dy * dy > 0.0) {
            return Err(Error::Parameter("mean direction must be nonzero".into()));
        }
        Ok(())
    }

    pub fn covariance(&self) -> Matrix2<f64> {
        one_mode_covariance(self.z, self.theta.rem_euclid(TAU), self.nu)
    }

    /// Vacuum-subtracted energy `ν f₊(z)/2 + |m|²/2 − 1/2`.
    pub fn energy(&self) -> f64 {
        0.5 * self.nu * f_plus(self.z) + 0.5 * self.mean_norm * self.mean_norm - 0.5
    }
}
