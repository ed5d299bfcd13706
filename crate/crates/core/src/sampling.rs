//! Random states, symplectic maps and channels for sampling-based checks.

use std::f64::consts::TAU;

use nalgebra::{DMatrix, DVector, Matrix2};
use num_complex::Complex64;
use rand::Rng;
use rand_distr::StandardNormal;

use crate::channel::GaussianChannel;
use crate::error::Result;
use crate::fock::FockOperator;
use crate::optimize::NormalFormChannel;
use crate::state::{GaussianState, OneModeParams};

fn rotation(phi: f64) -> Matrix2<f64> {
    let (s, c) = phi.sin_cos();
    Matrix2::new(c, -s, s, c)
}

/// One-mode parameters with energy exactly `energy`, split at random between
/// displacement, squeezing and thermal noise.
pub fn one_mode_params<R: Rng + ?Sized>(rng: &mut R, energy: f64) -> OneModeParams {
    // a quarter of the draws are coherent or pure to cover the edges
    let kind: u8 = rng.random_range(0..4);
    let share = if kind == 0 { 0.0 } else { rng.random::<f64>() };
    let shape_energy = share * energy;
    let budget = 1.0 + 2.0 * shape_energy;
    let nu = if kind == 1 { 1.0 } else { 1.0 + rng.random::<f64>() * (budget - 1.0) };
    let fp = (budget / nu).max(1.0);
    let z = fp + ((fp - 1.0) * (fp + 1.0)).sqrt();
    let mean_norm = (2.0 * (energy - shape_energy)).max(0.0).sqrt();
    let angle = rng.random::<f64>() * TAU;
    OneModeParams {
        z,
        theta: rng.random::<f64>() * TAU,
        nu,
        mean_norm,
        mean_dir: [angle.cos(), angle.sin()],
    }
}

/// Haar-random `n × n` unitary (QR of a complex Ginibre matrix with the phases
/// of `R`'s diagonal removed).
pub fn unitary<R: Rng + ?Sized>(rng: &mut R, n: usize) -> DMatrix<Complex64> {
    let g = DMatrix::from_fn(n, n, |_, _| {
        Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal))
    });
    let qr = g.qr();
    let (mut q, r) = qr.unpack();
    for k in 0..n {
        let d = r[(k, k)];
        let phase = if d.norm() > 0.0 { d / d.norm() } else { Complex64::new(1.0, 0.0) };
        let mut col = q.column_mut(k);
        col *= phase;
    }
    q
}

/// Orthogonal symplectic matrix `[[Re U, −Im U], [Im U, Re U]]` of a passive
/// (energy-preserving) Gaussian unitary.
pub fn passive_symplectic<R: Rng + ?Sized>(rng: &mut R, n: usize) -> DMatrix<f64> {
    let u = unitary(rng, n);
    let mut s = DMatrix::zeros(2 * n, 2 * n);
    for i in 0..n {
        for j in 0..n {
            let z = u[(i, j)];
            s[(i, j)] = z.re;
            s[(i, n + j)] = -z.im;
            s[(n + i, j)] = z.im;
            s[(n + i, n + j)] = z.re;
        }
    }
    s
}

/// Random symplectic matrix `O₁ K O₂` with single-mode squeezers
/// `K = diag(e^{r}, e^{−r})`, `|r| ≤ max_log_squeeze`.
pub fn symplectic<R: Rng + ?Sized>(rng: &mut R, n: usize, max_log_squeeze: f64) -> DMatrix<f64> {
    let o1 = passive_symplectic(rng, n);
    let o2 = passive_symplectic(rng, n);
    let mut k = DMatrix::zeros(2 * n, 2 * n);
    for j in 0..n {
        let r = (2.0 * rng.random::<f64>() - 1.0) * max_log_squeeze;
        k[(j, j)] = r.exp();
        k[(n + j, n + j)] = (-r).exp();
    }
    o1 * k * o2
}

/// Random valid covariance `S diag(ν, ν) Sᵀ` with `ν_k ∈ [1, 1 + max_excess]`.
pub fn covariance<R: Rng + ?Sized>(rng: &mut R, n: usize, max_log_squeeze: f64, max_excess: f64) -> DMatrix<f64> {
    let s = symplectic(rng, n, max_log_squeeze);
    let mut d = DMatrix::zeros(2 * n, 2 * n);
    for k in 0..n {
        let nu = 1.0 + rng.random::<f64>() * max_excess;
        d[(k, k)] = nu;
        d[(n + k, n + k)] = nu;
    }
    let cov = &s * d * s.transpose();
    (&cov + cov.transpose()) * 0.5
}

/// Random `n`-mode Gaussian state with mean entries in `[−max_mean, max_mean]`.
pub fn gaussian_state<R: Rng + ?Sized>(rng: &mut R, n: usize, max_mean: f64) -> Result<GaussianState> {
    let cov = covariance(rng, n, 1.0, 2.0);
    let mean = DVector::from_fn(2 * n, |_, _| (2.0 * rng.random::<f64>() - 1.0) * max_mean);
    GaussianState::new(mean, cov)
}

/// A lossy, amplifier or additive-noise channel with random parameters.
pub fn phase_insensitive_channel<R: Rng + ?Sized>(rng: &mut R) -> Result<GaussianChannel> {
    let n_env = 3.0 * rng.random::<f64>();
    match rng.random_range(0..3) {
        0 => GaussianChannel::lossy(rng.random::<f64>(), n_env),
        1 => GaussianChannel::amplifier(1.0 + 3.0 * rng.random::<f64>(), n_env),
        _ => GaussianChannel::additive_noise(n_env),
    }
}

/// Random valid normal form with `y_x = 0` and `Λ₁ > Λ₂`, wrapped in random
/// input and output rotations. `Y` sits above the validity bound
/// `det Y ≥ (1 − det X)²` by a random excess.
pub fn diagonal_noise_channel<R: Rng + ?Sized>(rng: &mut R) -> Result<(NormalFormChannel, GaussianChannel)> {
    let lambda1 = 0.2 + 4.0 * rng.random::<f64>();
    let lambda2 = lambda1 * (0.05 + 0.9 * rng.random::<f64>());
    let y_z = (2.0 * rng.random::<f64>() - 1.0) * 1.5;
    let reflection = rng.random::<bool>();
    // X γ Xᵀ = det(X) γ, and a reflection flips the sign of det X
    let det_x = (lambda1 * lambda2).sqrt() * if reflection { -1.0 } else { 1.0 };
    let floor = (1.0 - det_x).abs();
    let y_i = y_z.hypot(floor) + rng.random::<f64>();
    let mut nf = NormalFormChannel::diagonal(lambda1, lambda2, y_i, 0.0, y_z);
    nf.output_rotation = rotation(rng.random::<f64>() * TAU);
    nf.input_rotation = rotation(rng.random::<f64>() * TAU);
    nf.reflection = reflection;
    let (x, y) = nf.reconstruct();
    let channel = GaussianChannel::new(
        DMatrix::from_iterator(2, 2, x.iter().copied()),
        DMatrix::from_iterator(2, 2, y.iter().copied()),
        DVector::zeros(2),
    )?;
    Ok((nf, channel))
}

/// Random one-mode channel `X = O₁ diag(√Λ₁, √Λ₂) O₂ᵀ` with generic noise
/// `Y = Y_min + W`, `W ≥ 0`.
pub fn one_mode_channel<R: Rng + ?Sized>(rng: &mut R) -> Result<GaussianChannel> {
    let lambda1 = 0.1 + 4.0 * rng.random::<f64>();
    let lambda2 = lambda1 * rng.random::<f64>();
    let det = (lambda1 * lambda2).sqrt();
    let floor = (1.0 - det).abs();
    // Y_min = floor·O Q Oᵀ with Q = diag(q, 1/q) has det = floor², the validity bound
    let q = (2.0 * rng.random::<f64>()).exp();
    let o = rotation(rng.random::<f64>() * TAU);
    let w = {
        let a = Matrix2::from_fn(|_, _| rng.random::<f64>() - 0.5);
        a * a.transpose()
    };
    let y = o * Matrix2::new(q, 0.0, 0.0, q.recip()) * o.transpose() * floor + w;
    let x = rotation(rng.random::<f64>() * TAU)
        * Matrix2::new(lambda1.sqrt(), 0.0, 0.0, lambda2.sqrt())
        * rotation(rng.random::<f64>() * TAU);
    GaussianChannel::new(
        DMatrix::from_iterator(2, 2, x.iter().copied()),
        DMatrix::from_iterator(2, 2, ((y + y.transpose()) * 0.5).iter().copied()),
        DVector::zeros(2),
    )
}

/// Random density matrix `G G† / Tr(G G†)` of rank at most `rank` whose
/// support lies in the first `support` levels of a `cutoff`-level space.
pub fn density_matrix<R: Rng + ?Sized>(rng: &mut R, cutoff: usize, support: usize, rank: usize) -> Result<FockOperator> {
    let support = support.min(cutoff);
    let g = DMatrix::from_fn(support, rank, |_, _| {
        Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal))
    });
    let rho = &g * g.adjoint();
    let tr = rho.trace().re;
    let mut full = DMatrix::zeros(cutoff, cutoff);
    full.view_mut((0, 0), (support, support)).copy_from(&(rho / Complex64::new(tr, 0.0)));
    FockOperator::new(full)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symplectic::{is_symplectic, is_valid_covariance, PSD_TOL};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn sampled_objects_are_valid() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..50 {
            let p = one_mode_params(&mut rng, 3.0);
            p.validate().unwrap();
            assert!((p.energy() - 3.0).abs() < 1e-12);
            for n in [1, 2, 3] {
                let u = unitary(&mut rng, n);
                assert!((&u * u.adjoint() - DMatrix::identity(n, n)).iter().all(|z| z.norm() < 1e-12));
                assert!(is_symplectic(&symplectic(&mut rng, n, 1.0), 1e-10));
                assert!(is_valid_covariance(&covariance(&mut rng, n, 1.0, 1.0), PSD_TOL).unwrap());
            }
            diagonal_noise_channel(&mut rng).unwrap();
            one_mode_channel(&mut rng).unwrap();
            phase_insensitive_channel(&mut rng).unwrap();
            let rho = density_matrix(&mut rng, 10, 6, 3).unwrap();
            assert!((rho.trace() - 1.0).abs() < 1e-12);
        }
    }
}
