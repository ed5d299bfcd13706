//! Brute-force one-mode oracle in a truncated Fock basis.
//!
//! States are dense `D × D` density matrices over the levels `0..D`. Gaussian
//! states are prepared as `D(m) S(z, θ) ρ_th(ν) S† D†` from matrix exponentials
//! of truncated ladder operators in a padded working space, then cut down to
//! `D` levels; the lost weight is reported as the trace deficit.

use nalgebra::{DMatrix, Matrix2, SymmetricEigen, Vector2};
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::state::OneModeParams;

/// Largest supported cutoff.
pub const MAX_CUTOFF: usize = 512;
/// Largest acceptable trace deficit when preparing states.
pub const MAX_TRACE_DEFICIT: f64 = 1e-6;
const HERMITIAN_TOL: f64 = 1e-10;
const NEGATIVE_EIG_TOL: f64 = 1e-10;

fn c(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

/// Dense density matrix on the first `cutoff` Fock levels.
#[derive(Debug, Clone, PartialEq)]
pub struct FockOperator {
    matrix: DMatrix<Complex64>,
}

impl FockOperator {
    /// Checks Hermiticity, positivity (eigenvalues ≥ −1e−10) and trace ≤ 1.
    pub fn new(matrix: DMatrix<Complex64>) -> Result<Self> {
        if !matrix.is_square() || matrix.nrows() == 0 {
            return Err(Error::InvalidDensity("matrix must be square and non-empty".into()));
        }
        let scale = matrix.iter().map(|z| z.norm()).fold(0.0, f64::max).max(1.0);
        let herm = (&matrix - matrix.adjoint()).iter().map(|z| z.norm()).fold(0.0, f64::max);
        if herm > HERMITIAN_TOL * scale {
            return Err(Error::InvalidDensity(format!("not Hermitian (deviation {herm:e})")));
        }
        let op = Self { matrix };
        let min = op.raw_spectrum().iter().copied().fold(f64::INFINITY, f64::min);
        if min < -NEGATIVE_EIG_TOL {
            return Err(Error::InvalidDensity(format!("negative eigenvalue {min:e}")));
        }
        if op.trace() > 1.0 + 1e-8 {
            return Err(Error::InvalidDensity(format!("trace {} exceeds 1", op.trace())));
        }
        Ok(op)
    }

    pub fn vacuum(cutoff: usize) -> Self {
        let mut m = DMatrix::zeros(cutoff, cutoff);
        m[(0, 0)] = c(1.0);
        Self { matrix: m }
    }

    /// Thermal state with `p_k = (1 − q) q^k`, `q = N/(N+1)`, truncated.
    pub fn thermal(n_photons: f64, cutoff: usize) -> Result<Self> {
        if !(n_photons >= 0.0) {
            return Err(Error::Parameter(format!("thermal photon number must be >= 0, got {n_photons}")));
        }
        Ok(Self { matrix: thermal_matrix(n_photons, cutoff) })
    }

    pub fn cutoff(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn matrix(&self) -> &DMatrix<Complex64> {
        &self.matrix
    }

    pub fn trace(&self) -> f64 {
        self.matrix.trace().re
    }

    pub fn trace_deficit(&self) -> f64 {
        1.0 - self.trace()
    }

    /// `p ρ + (1 − p) other`.
    pub fn mix(&self, other: &FockOperator, p: f64) -> Result<FockOperator> {
        if self.cutoff() != other.cutoff() {
            return Err(Error::Dimension("cutoffs differ".into()));
        }
        if !(0.0..=1.0).contains(&p) {
            return Err(Error::Parameter(format!("mixing weight must lie in [0, 1], got {p}")));
        }
        Ok(Self { matrix: &self.matrix * c(p) + &other.matrix * c(1.0 - p) })
    }

    fn raw_spectrum(&self) -> Vec<f64> {
        let h = (&self.matrix + self.matrix.adjoint()) * c(0.5);
        SymmetricEigen::new(h).eigenvalues.iter().copied().collect()
    }

    /// Eigenvalues clipped at zero, in decreasing order.
    pub fn spectrum(&self) -> Vec<f64> {
        let mut p: Vec<f64> = self.raw_spectrum().into_iter().map(|x| x.max(0.0)).collect();
        p.sort_by(|a, b| b.total_cmp(a));
        p
    }
}

fn thermal_matrix(n_photons: f64, dim: usize) -> DMatrix<Complex64> {
    let q = n_photons / (n_photons + 1.0);
    let mut m = DMatrix::zeros(dim, dim);
    let mut p = 1.0 - q;
    for k in 0..dim {
        m[(k, k)] = c(p);
        p *= q;
    }
    m
}

/// Truncated annihilation operator, `a|n⟩ = √n |n−1⟩`.
pub fn annihilation(dim: usize) -> DMatrix<Complex64> {
    let mut a = DMatrix::zeros(dim, dim);
    for n in 1..dim {
        a[(n - 1, n)] = c((n as f64).sqrt());
    }
    a
}

/// `D(α) = exp(α a† − α* a)` with `α = (q + i p)/√2`.
pub fn displacement_operator(mean: [f64; 2], dim: usize) -> DMatrix<Complex64> {
    let alpha = Complex64::new(mean[0], mean[1]) / std::f64::consts::SQRT_2;
    let a = annihilation(dim);
    let gen = a.adjoint() * alpha - &a * alpha.conj();
    gen.exp()
}

/// Squeezing unitary whose action on the vacuum has covariance
/// `f₊(z) I + f₋(z)(sin θ σ_x + cos θ σ_z)`:
/// `S(ξ) = exp((ξ* a² − ξ a†²)/2)` with `ξ = −(ln z / 2) e^{iθ}`.
pub fn squeezing_operator(z: f64, theta: f64, dim: usize) -> DMatrix<Complex64> {
    let xi = Complex64::from_polar(-0.5 * z.ln(), theta);
    let a = annihilation(dim);
    let a2 = &a * &a;
    let gen = (&a2 * xi.conj() - a2.adjoint() * xi) * c(0.5);
    gen.exp()
}

fn working_dim(cutoff: usize) -> usize {
    cutoff + cutoff / 2 + 16
}

fn check_cutoff(cutoff: usize) -> Result<()> {
    if !(2..=MAX_CUTOFF).contains(&cutoff) {
        return Err(Error::Parameter(format!("cutoff must lie in [2, {MAX_CUTOFF}], got {cutoff}")));
    }
    Ok(())
}

fn truncate(m: &DMatrix<Complex64>, cutoff: usize) -> DMatrix<Complex64> {
    m.view((0, 0), (cutoff, cutoff)).into_owned()
}

fn embed(m: &DMatrix<Complex64>, dim: usize) -> DMatrix<Complex64> {
    let mut out = DMatrix::zeros(dim, dim);
    out.view_mut((0, 0), (m.nrows(), m.ncols())).copy_from(m);
    out
}

/// Cutoff heuristic `8 (⟨n⟩ + 1) max(z, ν)` plus 32 levels of margin, at most 512.
///
/// The bare heuristic keeps the trace deficit near `1e-8`, but the energy lost
/// with it is weighted by the level index and can approach `1e-6`.
pub fn suggested_cutoff(p: &OneModeParams) -> usize {
    let n = p.energy().max(0.0);
    let d = (8.0 * (n + 1.0) * p.z.max(p.nu)).ceil() as usize + 32;
    d.min(MAX_CUTOFF)
}

/// Prepares the displaced squeezed thermal state described by `p`.
pub fn gaussian_to_fock(p: &OneModeParams, cutoff: usize) -> Result<FockOperator> {
    p.validate()?;
    check_cutoff(cutoff)?;
    let w = working_dim(cutoff);
    let rho_th = thermal_matrix((p.nu - 1.0) / 2.0, w);
    let [dx, dy] = p.mean_dir;
    let norm = (dx * dx + dy * dy).sqrt();
    let mean = if p.mean_norm == 0.0 {
        [0.0, 0.0]
    } else {
        [p.mean_norm * dx / norm, p.mean_norm * dy / norm]
    };
    let u = displacement_operator(mean, w) * squeezing_operator(p.z, p.theta, w);
    let rho = &u * rho_th * u.adjoint();
    let out = FockOperator { matrix: truncate(&rho, cutoff) };
    let deficit = out.trace_deficit();
    if deficit > MAX_TRACE_DEFICIT {
        return Err(Error::Truncation { cutoff, deficit });
    }
    Ok(out)
}

/// `Σ_k k ρ_kk`.
pub fn energy_fock(rho: &FockOperator) -> f64 {
    (0..rho.cutoff()).map(|k| k as f64 * rho.matrix[(k, k)].re).sum()
}

/// `−Σ p ln p` over eigenvalues above `1e−15`.
pub fn entropy_fock(rho: &FockOperator) -> f64 {
    rho.spectrum()
        .into_iter()
        .filter(|&p| p > 1e-15)
        .map(|p| -p * p.ln())
        .sum()
}

/// `Tr[ρ n̂] − Σ_k p_k k` with the spectrum sorted decreasingly against the
/// increasing levels `k`.
pub fn ergotropy_fock(rho: &FockOperator) -> Result<f64> {
    let rho = FockOperator::new(rho.matrix.clone())?;
    let passive: f64 = rho.spectrum().iter().enumerate().map(|(k, p)| k as f64 * p).sum();
    Ok((energy_fock(&rho) - passive).max(0.0))
}

/// Quadrature mean and covariance (`σ = I` for the vacuum).
pub fn moments_fock(rho: &FockOperator) -> (Vector2<f64>, Matrix2<f64>) {
    let a = annihilation(rho.cutoff());
    let a2 = &a * &a;
    let ea = (&rho.matrix * &a).trace();
    let ea2 = (&rho.matrix * &a2).trace();
    let n = energy_fock(rho);
    let s2 = std::f64::consts::SQRT_2;
    let (q, p) = (s2 * ea.re, s2 * ea.im);
    let qq = 2.0 * (ea2.re + n + 0.5) - 2.0 * q * q;
    let pp = 2.0 * (-ea2.re + n + 0.5) - 2.0 * p * p;
    let qp = 2.0 * ea2.im - 2.0 * q * p;
    (Vector2::new(q, p), Matrix2::new(qq, qp, qp, pp))
}

fn ln_factorials(n: usize) -> Vec<f64> {
    let mut out = Vec::with_capacity(n + 1);
    let mut acc = 0.0;
    out.push(0.0);
    for k in 1..=n {
        acc += (k as f64).ln();
        out.push(acc);
    }
    out
}

/// Quantum-limited attenuator via its Kraus operators
/// `A_k = √((1−η)^k / k!) η^{n̂/2} a^k`, whose only nonzero elements are
/// `⟨m|A_k|m+k⟩ = √(C(m+k, k) (1−η)^k η^m)`.
pub fn attenuator_fock(eta: f64, rho: &FockOperator) -> Result<FockOperator> {
    if !(0.0..=1.0).contains(&eta) {
        return Err(Error::Parameter(format!("transmissivity η must lie in [0, 1], got {eta}")));
    }
    let d = rho.cutoff();
    let lf = ln_factorials(d);
    // amp[m][k] = ⟨m|A_k|m+k⟩
    let amp = |m: usize, k: usize| -> f64 {
        let loss = if k == 0 {
            0.0
        } else if eta == 1.0 {
            return 0.0;
        } else {
            k as f64 * (1.0 - eta).ln()
        };
        let keep = if m == 0 {
            0.0
        } else if eta == 0.0 {
            return 0.0;
        } else {
            m as f64 * eta.ln()
        };
        (0.5 * (lf[m + k] - lf[m] - lf[k] + loss + keep)).exp()
    };
    let mut out = DMatrix::zeros(d, d);
    for m in 0..d {
        for mp in 0..d {
            let mut acc = Complex64::new(0.0, 0.0);
            for k in 0..(d - m.max(mp)) {
                let w = amp(m, k) * amp(mp, k);
                if w != 0.0 {
                    acc += rho.matrix[(m + k, mp + k)] * w;
                }
            }
            out[(m, mp)] = acc;
        }
    }
    Ok(FockOperator { matrix: out })
}

/// Applies the squeezing unitary `Σ_ζ` (`X = diag(√ζ, 1/√ζ)`) in a padded space
/// and truncates back to the input cutoff.
pub fn squeezer_fock(zeta: f64, rho: &FockOperator) -> Result<FockOperator> {
    if !(zeta >= 1.0) {
        return Err(Error::Parameter(format!("squeezing ζ must be >= 1, got {zeta}")));
    }
    let d = rho.cutoff();
    let w = working_dim(d);
    let s = squeezing_operator(zeta, 0.0, w);
    let big = &s * embed(&rho.matrix, w) * s.adjoint();
    let out = FockOperator { matrix: truncate(&big, d) };
    let lost = rho.trace() - out.trace();
    if lost > MAX_TRACE_DEFICIT {
        return Err(Error::Truncation { cutoff: d, deficit: lost });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::LN_2;

    #[test]
    fn vacuum_and_thermal_basics() {
        let v = FockOperator::vacuum(8);
        assert_eq!(energy_fock(&v), 0.0);
        assert_eq!(entropy_fock(&v), 0.0);
        assert_eq!(ergotropy_fock(&v).unwrap(), 0.0);

        let t = FockOperator::thermal(1.0, 80).unwrap();
        assert!((energy_fock(&t) - 1.0).abs() < 1e-12);
        assert!((entropy_fock(&t) - 2.0 * LN_2).abs() < 1e-12);
        assert!(ergotropy_fock(&t).unwrap() < 1e-15);
        // geometric law
        let r = t.matrix()[(3, 3)].re / t.matrix()[(2, 2)].re;
        assert!((r - 0.5).abs() < 1e-15);
    }

    #[test]
    fn thermal_ergotropy_vanishes_at_every_cutoff() {
        for d in [2, 3, 7, 20, 64] {
            let t = FockOperator::thermal(2.5, d).unwrap();
            assert!(ergotropy_fock(&t).unwrap() < 1e-14);
        }
    }

    #[test]
    fn vacuum_preparation() {
        let p = OneModeParams::pure(1.0, 0.0, 0.0, 0.0);
        let rho = gaussian_to_fock(&p, 16).unwrap();
        assert!((rho.matrix()[(0, 0)].re - 1.0).abs() < 1e-14);
        assert!(rho.trace_deficit().abs() < 1e-14);
    }

    #[test]
    fn coherent_energy_from_fock() {
        let p = OneModeParams::pure(1.0, 0.0, 2.0, 0.3); // |m|² = 4 so ⟨n⟩ = 2
        let rho = gaussian_to_fock(&p, 64).unwrap();
        assert!((energy_fock(&rho) - 2.0).abs() < 1e-6);
        assert!((ergotropy_fock(&rho).unwrap() - 2.0).abs() < 1e-6);
        assert!(entropy_fock(&rho) < 1e-6);
    }

    #[test]
    fn squeezing_direction_matches_covariance() {
        let z = 2.5;
        for theta in [0.0, 0.8, 2.0, 4.0] {
            let p = OneModeParams::pure(z, theta, 0.0, 0.0);
            let rho = gaussian_to_fock(&p, suggested_cutoff(&p)).unwrap();
            let (_, cov) = moments_fock(&rho);
            let expected = p.covariance();
            assert!((cov - expected).amax() < 1e-8, "θ={theta}: {cov} vs {expected}");
        }
    }

    #[test]
    fn insufficient_cutoff_is_reported() {
        let p = OneModeParams::pure(1.0, 0.0, 6.0, 0.0); // ⟨n⟩ = 18
        match gaussian_to_fock(&p, 8) {
            Err(Error::Truncation { cutoff, deficit }) => {
                assert_eq!(cutoff, 8);
                assert!(deficit > 0.5);
            }
            other => panic!("expected truncation error, got {other:?}"),
        }
    }

    #[test]
    fn attenuator_limits() {
        let p = OneModeParams { z: 1.5, theta: 0.4, nu: 1.3, mean_norm: 0.7, mean_dir: [1.0, 1.0] };
        let rho = gaussian_to_fock(&p, 48).unwrap();
        let same = attenuator_fock(1.0, &rho).unwrap();
        assert!((same.matrix() - rho.matrix()).iter().all(|z| z.norm() < 1e-14));
        let gone = attenuator_fock(0.0, &rho).unwrap();
        assert!((gone.matrix()[(0, 0)].re - rho.trace()).abs() < 1e-14);
        assert!(energy_fock(&gone).abs() < 1e-14);
        let half = attenuator_fock(0.5, &rho).unwrap();
        assert!((half.trace() - rho.trace()).abs() < 1e-12);
    }

    #[test]
    fn invalid_density_rejected() {
        let mut m = DMatrix::zeros(3, 3);
        m[(0, 0)] = c(1.2);
        m[(1, 1)] = c(-0.2);
        assert!(FockOperator::new(m).is_err());
        let mut m = DMatrix::zeros(2, 2);
        m[(0, 1)] = c(0.3);
        m[(0, 0)] = c(0.5);
        m[(1, 1)] = c(0.5);
        assert!(FockOperator::new(m).is_err());
    }
}
