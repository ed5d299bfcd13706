//! Bosonic Gaussian channels acting on moments as `m ↦ Xm + v`, `σ ↦ XσXᵀ + Y`.

use nalgebra::{DMatrix, DVector};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::state::GaussianState;
use crate::symplectic::{gamma, is_valid_channel, PSD_TOL};

/// A Gaussian channel `(X, Y, v)` that satisfies `Y ≥ i(γ_out − Xγ_inXᵀ)`.
#[derive(Debug, Clone, PartialEq)]
pub struct GaussianChannel {
    x: DMatrix<f64>,
    y: DMatrix<f64>,
    v: DVector<f64>,
}

/// Sign of the phase covariance of a phase-insensitive channel.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PhaseCovariance {
    /// `Φ ∘ U_t = U_t ∘ Φ` for the free evolution `U_t`.
    Covariant,
    /// `Φ ∘ U_t = U_{-t} ∘ Φ`.
    Contravariant,
}

impl GaussianChannel {
    pub fn new(x: DMatrix<f64>, y: DMatrix<f64>, v: DVector<f64>) -> Result<Self> {
        if v.len() != y.nrows() {
            return Err(Error::Dimension(format!(
                "v has length {} but Y is {}x{}",
                v.len(),
                y.nrows(),
                y.ncols()
            )));
        }
        if x.iter().chain(y.iter()).chain(v.iter()).any(|e| !e.is_finite()) {
            return Err(Error::InvalidChannel("non-finite entries".into()));
        }
        if !is_valid_channel(&x, &y, PSD_TOL)? {
            return Err(Error::InvalidChannel(
                "Y − i(γ − XγXᵀ) is not positive semidefinite".into(),
            ));
        }
        let y = (&y + y.transpose()) * 0.5;
        Ok(Self { x, y, v })
    }

    fn scalar_one_mode(x: f64, y: f64) -> Result<Self> {
        Self::new(
            DMatrix::identity(2, 2) * x,
            DMatrix::identity(2, 2) * y,
            DVector::zeros(2),
        )
    }

    pub fn identity(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::ZeroModes);
        }
        Ok(Self {
            x: DMatrix::identity(2 * n, 2 * n),
            y: DMatrix::zeros(2 * n, 2 * n),
            v: DVector::zeros(2 * n),
        })
    }

    /// Thermal lossy channel `ℒ_{η,N}`: `X = √η I`, `Y = (1−η)(2N+1) I`.
    pub fn lossy(eta: f64, n_env: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&eta) {
            return Err(Error::Parameter(format!("transmissivity η must lie in [0, 1], got {eta}")));
        }
        check_noise(n_env)?;
        Self::scalar_one_mode(eta.sqrt(), (1.0 - eta) * (2.0 * n_env + 1.0))
    }

    /// Thermal amplifier `𝒜_{μ,N}`: `X = √μ I`, `Y = (μ−1)(2N+1) I`.
    pub fn amplifier(mu: f64, n_env: f64) -> Result<Self> {
        if !(mu >= 1.0) || !mu.is_finite() {
            return Err(Error::Parameter(format!("gain μ must be >= 1, got {mu}")));
        }
        check_noise(n_env)?;
        Self::scalar_one_mode(mu.sqrt(), (mu - 1.0) * (2.0 * n_env + 1.0))
    }

    /// Additive classical noise `𝒩_N`: `X = I`, `Y = 2N I`.
    pub fn additive_noise(n_env: f64) -> Result<Self> {
        check_noise(n_env)?;
        Self::scalar_one_mode(1.0, 2.0 * n_env)
    }

    /// Unitary squeezer `Σ_ζ`: `X = diag(√ζ, 1/√ζ)`, `Y = 0`.
    pub fn squeezer(zeta: f64) -> Result<Self> {
        if !(zeta >= 1.0) || !zeta.is_finite() {
            return Err(Error::Parameter(format!("squeezing ζ must be >= 1, got {zeta}")));
        }
        let s = zeta.sqrt();
        Self::new(
            DMatrix::from_diagonal(&DVector::from_vec(vec![s, s.recip()])),
            DMatrix::zeros(2, 2),
            DVector::zeros(2),
        )
    }

    /// `Γ_{η,ζ} = ℒ_{η,0} ∘ Σ_ζ`.
    pub fn attenuated_squeezer(eta: f64, zeta: f64) -> Result<Self> {
        compose(&Self::lossy(eta, 0.0)?, &Self::squeezer(zeta)?)
    }

    /// `Θ_{μ,ζ} = 𝒜_{μ,0} ∘ Σ_ζ`.
    pub fn amplified_squeezer(mu: f64, zeta: f64) -> Result<Self> {
        compose(&Self::amplifier(mu, 0.0)?, &Self::squeezer(zeta)?)
    }

    pub fn input_modes(&self) -> usize {
        self.x.ncols() / 2
    }

    pub fn output_modes(&self) -> usize {
        self.x.nrows() / 2
    }

    pub fn x(&self) -> &DMatrix<f64> {
        &self.x
    }

    pub fn y(&self) -> &DMatrix<f64> {
        &self.y
    }

    pub fn v(&self) -> &DVector<f64> {
        &self.v
    }

    /// The channel `self` followed by `next`.
    pub fn then(&self, next: &GaussianChannel) -> Result<GaussianChannel> {
        compose(next, self)
    }

    pub fn apply(&self, state: &GaussianState) -> Result<GaussianState> {
        if state.modes() != self.input_modes() {
            return Err(Error::Dimension(format!(
                "channel takes {} modes, state has {}",
                self.input_modes(),
                state.modes()
            )));
        }
        let mean = &self.x * state.mean() + &self.v;
        let cov = &self.x * state.cov() * self.x.transpose() + &self.y;
        let cov = (&cov + cov.transpose()) * 0.5;
        Ok(GaussianState::new_unchecked(mean, cov))
    }

    /// Independent action on disjoint mode sets; the output keeps the
    /// `(q.., p..)` ordering with `self`'s modes first.
    pub fn direct_sum(&self, other: &GaussianChannel) -> GaussianChannel {
        let (ai, ao) = (self.input_modes(), self.output_modes());
        let (bi, bo) = (other.input_modes(), other.output_modes());
        let (ni, no) = (ai + bi, ao + bo);
        let place = |k: usize, first: usize, second: usize, total: usize, own_first: bool| {
            let own = if own_first { first } else { second };
            let offset = if own_first { 0 } else { first };
            if k < own {
                offset + k
            } else {
                total + offset + k - own
            }
        };
        let mut x = DMatrix::zeros(2 * no, 2 * ni);
        let mut y = DMatrix::zeros(2 * no, 2 * no);
        let mut v = DVector::zeros(2 * no);
        for (ch, is_a) in [(self, true), (other, false)] {
            let row = |k| place(k, ao, bo, no, is_a);
            let col = |k| place(k, ai, bi, ni, is_a);
            for i in 0..ch.x.nrows() {
                v[row(i)] = ch.v[i];
                for j in 0..ch.x.ncols() {
                    x[(row(i), col(j))] = ch.x[(i, j)];
                }
                for j in 0..ch.y.ncols() {
                    y[(row(i), row(j))] = ch.y[(i, j)];
                }
            }
        }
        GaussianChannel { x, y, v }
    }

    /// Classifies the channel against the free evolution, whose phase-space
    /// generator is `γ`. Covariant channels satisfy `Xγ_in = γ_out X`,
    /// contravariant ones `Xγ_in = −γ_out X`; both need `[Y, γ_out] = 0` and `v = 0`.
    ///
    /// For one mode this is exactly the ℒ/𝒜/𝒩 family (and their conjugates).
    /// For more modes the commutation test is a sufficient reading of the
    /// definition at the level of moments.
    pub fn phase_covariance(&self, tol: f64) -> Option<PhaseCovariance> {
        let scale = self.x.amax().max(self.y.amax()).max(1.0);
        let tol = tol * scale;
        if self.v.amax() > tol {
            return None;
        }
        let gi = gamma(self.input_modes());
        let go = gamma(self.output_modes());
        if (&self.y * &go - &go * &self.y).amax() > tol {
            return None;
        }
        let xg = &self.x * gi;
        let gx = &go * &self.x;
        if (&xg - &gx).amax() <= tol {
            Some(PhaseCovariance::Covariant)
        } else if (&xg + &gx).amax() <= tol {
            Some(PhaseCovariance::Contravariant)
        } else {
            None
        }
    }

    pub fn is_phase_insensitive(&self, tol: f64) -> bool {
        self.phase_covariance(tol).is_some()
    }
}

fn check_noise(n_env: f64) -> Result<()> {
    if !(n_env >= 0.0) || !n_env.is_finite() {
        return Err(Error::Parameter(format!(
            "environment photon number N must be >= 0, got {n_env}"
        )));
    }
    Ok(())
}

/// `second ∘ first`: `X = X₂X₁`, `Y = X₂Y₁X₂ᵀ + Y₂`, `v = X₂v₁ + v₂`.
pub fn compose(second: &GaussianChannel, first: &GaussianChannel) -> Result<GaussianChannel> {
    if first.output_modes() != second.input_modes() {
        return Err(Error::Dimension(format!(
            "cannot feed {} output modes into a channel taking {}",
            first.output_modes(),
            second.input_modes()
        )));
    }
    let x = &second.x * &first.x;
    let y = &second.x * &first.y * second.x.transpose() + &second.y;
    let y = (&y + y.transpose()) * 0.5;
    let v = &second.x * &first.v + &second.v;
    Ok(GaussianChannel { x, y, v })
}

/// JSON description of a channel, as consumed by the command-line tool.
///
/// `compose` applies its children in list order (the first entry acts first).
/// `raw` matrices are row-major.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ChannelSpec {
    Lossy {
        eta: f64,
        #[serde(rename = "N", default)]
        n_env: f64,
    },
    Amplifier {
        mu: f64,
        #[serde(rename = "N", default)]
        n_env: f64,
    },
    #[serde(rename = "additive")]
    AdditiveNoise {
        #[serde(rename = "N")]
        n_env: f64,
    },
    Squeezer {
        zeta: f64,
    },
    Identity {
        #[serde(default = "one")]
        modes: usize,
    },
    Compose {
        channels: Vec<ChannelSpec>,
    },
    DirectSum {
        channels: Vec<ChannelSpec>,
    },
    Raw {
        n_in: usize,
        n_out: usize,
        #[serde(rename = "X")]
        x: Vec<f64>,
        #[serde(rename = "Y")]
        y: Vec<f64>,
        #[serde(default)]
        v: Option<Vec<f64>>,
    },
}

fn one() -> usize {
    1
}

impl ChannelSpec {
    pub fn build(&self) -> Result<GaussianChannel> {
        match self {
            ChannelSpec::Lossy { eta, n_env } => GaussianChannel::lossy(*eta, *n_env),
            ChannelSpec::Amplifier { mu, n_env } => GaussianChannel::amplifier(*mu, *n_env),
            ChannelSpec::AdditiveNoise { n_env } => GaussianChannel::additive_noise(*n_env),
            ChannelSpec::Squeezer { zeta } => GaussianChannel::squeezer(*zeta),
            ChannelSpec::Identity { modes } => GaussianChannel::identity(*modes),
            ChannelSpec::Compose { channels } => {
                let mut iter = channels.iter();
                let first = iter
                    .next()
                    .ok_or_else(|| Error::InvalidChannel("compose needs at least one channel".into()))?
                    .build()?;
                iter.try_fold(first, |acc, next| acc.then(&next.build()?))
            }
            ChannelSpec::DirectSum { channels } => {
                let mut iter = channels.iter();
                let first = iter
                    .next()
                    .ok_or_else(|| Error::InvalidChannel("direct_sum needs at least one channel".into()))?
                    .build()?;
                iter.try_fold(first, |acc, next| Ok(acc.direct_sum(&next.build()?)))
            }
            ChannelSpec::Raw { n_in, n_out, x, y, v } => {
                let (di, d_o) = (2 * n_in, 2 * n_out);
                if *n_in == 0 || *n_out == 0 {
                    return Err(Error::ZeroModes);
                }
                if x.len() != d_o * di || y.len() != d_o * d_o {
                    return Err(Error::Dimension(format!(
                        "raw channel needs X with {} and Y with {} entries, got {} and {}",
                        d_o * di,
                        d_o * d_o,
                        x.len(),
                        y.len()
                    )));
                }
                let v = match v {
                    Some(v) => DVector::from_column_slice(v),
                    None => DVector::zeros(d_o),
                };
                GaussianChannel::new(
                    DMatrix::from_row_slice(d_o, di, x),
                    DMatrix::from_row_slice(d_o, d_o, y),
                    v,
                )
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use nalgebra::dmatrix;

    fn close(a: &DMatrix<f64>, b: &DMatrix<f64>, tol: f64) -> bool {
        (a - b).amax() <= tol
    }

    #[test]
    fn catalog_matrices() {
        let l = GaussianChannel::lossy(0.5, 0.0).unwrap();
        assert!(close(l.x(), &(DMatrix::identity(2, 2) * 0.5f64.sqrt()), 1e-15));
        assert!(close(l.y(), &(DMatrix::identity(2, 2) * 0.5), 1e-15));

        let a = GaussianChannel::amplifier(2.0, 0.0).unwrap();
        assert!(close(a.x(), &(DMatrix::identity(2, 2) * 2f64.sqrt()), 1e-15));
        assert!(close(a.y(), &DMatrix::identity(2, 2), 1e-15));

        let s = GaussianChannel::squeezer(1.0).unwrap();
        assert_eq!(s, GaussianChannel::identity(1).unwrap());
    }

    #[test]
    fn out_of_range_parameters() {
        assert!(GaussianChannel::lossy(1.2, 0.0).is_err());
        assert!(GaussianChannel::lossy(0.5, -1.0).is_err());
        assert!(GaussianChannel::amplifier(0.5, 0.0).is_err());
        assert!(GaussianChannel::additive_noise(-0.1).is_err());
        assert!(GaussianChannel::squeezer(0.9).is_err());
    }

    #[test]
    fn squeezed_compositions() {
        let (eta, zeta): (f64, f64) = (0.4, 3.0);
        let g = GaussianChannel::attenuated_squeezer(eta, zeta).unwrap();
        let x = dmatrix![(eta * zeta).sqrt(), 0.0; 0.0, (eta / zeta).sqrt()];
        assert!(close(g.x(), &x, 1e-15));
        assert!(close(g.y(), &(DMatrix::identity(2, 2) * (1.0 - eta)), 1e-15));

        let mu = 2.5;
        let t = GaussianChannel::amplified_squeezer(mu, zeta).unwrap();
        let x = dmatrix![(mu * zeta).sqrt(), 0.0; 0.0, (mu / zeta).sqrt()];
        assert!(close(t.x(), &x, 1e-14));
        assert!(close(t.y(), &(DMatrix::identity(2, 2) * (mu - 1.0)), 1e-15));

        let id = GaussianChannel::identity(1).unwrap();
        assert_eq!(compose(&id, &g).unwrap(), g);
    }

    #[test]
    fn compose_dimension_mismatch() {
        let a = GaussianChannel::identity(2).unwrap();
        let b = GaussianChannel::identity(1).unwrap();
        assert!(matches!(compose(&a, &b), Err(Error::Dimension(_))));
    }

    #[test]
    fn apply_coherent_outputs() {
        let coh = GaussianState::coherent(DVector::from_vec(vec![1.0, -2.0])).unwrap();
        let (eta, n) = (0.3, 2.0);
        let out = GaussianChannel::lossy(eta, n).unwrap().apply(&coh).unwrap();
        let expected = DMatrix::identity(2, 2) * (2.0 * n * (1.0 - eta) + 1.0);
        assert!(close(out.cov(), &expected, 1e-14));

        let out = GaussianChannel::additive_noise(n).unwrap().apply(&coh).unwrap();
        assert!(close(out.cov(), &(DMatrix::identity(2, 2) * (2.0 * n + 1.0)), 1e-14));

        let mu = 3.0;
        let out = GaussianChannel::amplifier(mu, n).unwrap().apply(&coh).unwrap();
        let expected = DMatrix::identity(2, 2) * (2.0 * mu * (n + 1.0) - 2.0 * n - 1.0);
        assert!(close(out.cov(), &expected, 1e-13));

        let same = GaussianChannel::identity(1).unwrap().apply(&coh).unwrap();
        assert_eq!(same, coh);
    }

    #[test]
    fn apply_dimension_mismatch() {
        let s = GaussianState::vacuum(2).unwrap();
        assert!(GaussianChannel::lossy(0.5, 0.0).unwrap().apply(&s).is_err());
    }

    #[test]
    fn phase_insensitivity() {
        let tol = 1e-10;
        assert!(GaussianChannel::lossy(0.6, 1.0).unwrap().is_phase_insensitive(tol));
        assert!(GaussianChannel::amplifier(1.5, 0.2).unwrap().is_phase_insensitive(tol));
        assert!(GaussianChannel::additive_noise(3.0).unwrap().is_phase_insensitive(tol));
        assert!(GaussianChannel::squeezer(1.0).unwrap().is_phase_insensitive(tol));
        assert!(!GaussianChannel::attenuated_squeezer(0.5, 2.0).unwrap().is_phase_insensitive(tol));

        // phase conjugating amplifier: X = √(μ−1) σ_z, Y = μ I
        let mu: f64 = 2.0;
        let conj = GaussianChannel::new(
            dmatrix![(mu - 1.0).sqrt(), 0.0; 0.0, -(mu - 1.0).sqrt()],
            DMatrix::identity(2, 2) * mu,
            DVector::zeros(2),
        )
        .unwrap();
        assert_eq!(conj.phase_covariance(tol), Some(PhaseCovariance::Contravariant));

        // a rotation is covariant, a displacement is not
        let (s, c) = 0.7f64.sin_cos();
        let rot = GaussianChannel::new(dmatrix![c, -s; s, c], DMatrix::zeros(2, 2), DVector::zeros(2)).unwrap();
        assert_eq!(rot.phase_covariance(tol), Some(PhaseCovariance::Covariant));
        let shifted = GaussianChannel::new(DMatrix::identity(2, 2), DMatrix::zeros(2, 2), DVector::from_vec(vec![1.0, 0.0])).unwrap();
        assert!(!shifted.is_phase_insensitive(tol));
    }

    #[test]
    fn direct_sum_layout() {
        let a = GaussianChannel::lossy(0.25, 0.0).unwrap();
        let b = GaussianChannel::additive_noise(1.0).unwrap();
        let ab = a.direct_sum(&b);
        let x = DMatrix::from_diagonal(&DVector::from_vec(vec![0.5, 1.0, 0.5, 1.0]));
        let y = DMatrix::from_diagonal(&DVector::from_vec(vec![0.75, 2.0, 0.75, 2.0]));
        assert!(close(ab.x(), &x, 1e-15));
        assert!(close(ab.y(), &y, 1e-15));
        assert!(ab.is_phase_insensitive(1e-10));

        let s = GaussianState::thermal(1.0).unwrap().tensor(&GaussianState::vacuum(1).unwrap());
        let out = ab.apply(&s).unwrap();
        let expected = a.apply(&GaussianState::thermal(1.0).unwrap()).unwrap()
            .tensor(&b.apply(&GaussianState::vacuum(1).unwrap()).unwrap());
        assert!(close(out.cov(), expected.cov(), 1e-14));
    }

    #[test]
    fn spec_json() {
        let text = r#"{"kind":"compose","channels":[{"kind":"squeezer","zeta":2.0},{"kind":"lossy","eta":0.5}]}"#;
        let spec: ChannelSpec = serde_json::from_str(text).unwrap();
        let ch = spec.build().unwrap();
        assert_eq!(ch, GaussianChannel::attenuated_squeezer(0.5, 2.0).unwrap());

        let raw = r#"{"kind":"raw","n_in":1,"n_out":1,"X":[2,0,0,2],"Y":[0,0,0,0]}"#;
        let spec: ChannelSpec = serde_json::from_str(raw).unwrap();
        assert!(matches!(spec.build(), Err(Error::InvalidChannel(_))));

        let additive: ChannelSpec = serde_json::from_str(r#"{"kind":"additive","N":2}"#).unwrap();
        assert_eq!(additive.build().unwrap(), GaussianChannel::additive_noise(2.0).unwrap());
    }
}
