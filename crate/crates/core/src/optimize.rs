//! Energy-constrained maximization of the output ergotropy of a one-mode
//! Gaussian channel over Gaussian inputs.
//!
//! Every one-mode channel is first brought to a normal form in which
//! `X = diag(√Λ₁, √Λ₂)` and `Y = y_I I + y_x σ_x + y_z σ_z`. An input with
//! squeezing `z`, direction `θ`, mixedness `ν` and energy `E` then leaves the
//! channel with ergotropy
//!
//! ```text
//! (√λ₁ − √λ₂)²/4 + Λ₁ m²/2,    m² = 2E + 1 − ν f₊(z),
//! ```
//!
//! where `λ₁,₂` are the output covariance eigenvalues and the mean is aligned
//! with the top singular direction of `X`. Only the first term depends on the
//! shape `(z, θ)` of the input, so the unconstrained optimal shape does not
//! depend on `E`; the energy budget enters through `z ≤ z_max(E, ν)`.

use std::f64::consts::{PI, TAU};

use nalgebra::{DVector, Matrix2, SymmetricEigen, Vector2};
use serde::{Deserialize, Serialize};

use crate::channel::GaussianChannel;
use crate::error::{Error, Result};
use crate::scalar::{bisect_root, golden_section_max};
use crate::state::{f_minus, f_plus, one_mode_covariance, GaussianState};
use crate::work::{ergotropy_one_mode, pi_max_ergotropy};

/// Coarse grid resolution along `z` (log-spaced) and `θ`.
pub const GRID_Z: usize = 64;
pub const GRID_THETA: usize = 64;
/// Largest squeezing considered when looking for the energy-independent optimum.
pub const Z_CAP: f64 = 1e6;
const PARAM_TOL: f64 = 1e-12;
const MIN_SWEEPS: usize = 3;
const MAX_SWEEPS: usize = 200;
const TIE_EPS: f64 = 1e-13;

/// A one-mode channel in singular-value normal form.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct NormalFormChannel {
    pub lambda1: f64,
    pub lambda2: f64,
    pub y_i: f64,
    pub y_x: f64,
    pub y_z: f64,
    /// Proper rotation `O₁` on the output side.
    pub output_rotation: Matrix2<f64>,
    /// Proper rotation `O₂` on the input side.
    pub input_rotation: Matrix2<f64>,
    /// Set when `det X < 0`; then `X = O₁ diag(√Λ₁, √Λ₂) R O₂ᵀ` with
    /// `R = diag(1, −1)`, which acts on inputs as `θ ↦ −θ`.
    pub reflection: bool,
}

impl NormalFormChannel {
    /// A channel that is already diagonal.
    pub fn diagonal(lambda1: f64, lambda2: f64, y_i: f64, y_x: f64, y_z: f64) -> Self {
        Self {
            lambda1,
            lambda2,
            y_i,
            y_x,
            y_z,
            output_rotation: Matrix2::identity(),
            input_rotation: Matrix2::identity(),
            reflection: false,
        }
    }

    fn reflection_matrix(&self) -> Matrix2<f64> {
        if self.reflection {
            Matrix2::new(1.0, 0.0, 0.0, -1.0)
        } else {
            Matrix2::identity()
        }
    }

    /// Diagonal `X'` and Pauli-decomposed `Y'`.
    pub fn normal_matrices(&self) -> (Matrix2<f64>, Matrix2<f64>) {
        let x = Matrix2::new(self.lambda1.sqrt(), 0.0, 0.0, self.lambda2.sqrt());
        let y = Matrix2::new(self.y_i + self.y_z, self.y_x, self.y_x, self.y_i - self.y_z);
        (x, y)
    }

    /// `(X, Y)` in the original frame.
    pub fn reconstruct(&self) -> (Matrix2<f64>, Matrix2<f64>) {
        let (xn, yn) = self.normal_matrices();
        let o1 = self.output_rotation;
        let o2 = self.input_rotation;
        (
            o1 * xn * self.reflection_matrix() * o2.transpose(),
            o1 * yn * o1.transpose(),
        )
    }

    /// Covariance, in the original input frame, of the input whose normal-frame
    /// parameters are `(z, θ, ν)`.
    pub fn input_covariance(&self, z: f64, theta: f64, nu: f64) -> Matrix2<f64> {
        let theta_in = if self.reflection { -theta } else { theta };
        let o2 = self.input_rotation;
        o2 * one_mode_covariance(z, theta_in, nu) * o2.transpose()
    }

    /// Unit input direction `w` with `|Xw|² = Λ₁`.
    pub fn top_input_direction(&self) -> Vector2<f64> {
        self.input_rotation.column(0).into_owned()
    }
}

fn one_mode_matrices(channel: &GaussianChannel) -> Result<(Matrix2<f64>, Matrix2<f64>)> {
    if channel.input_modes() != 1 || channel.output_modes() != 1 {
        return Err(Error::Dimension(format!(
            "one-mode channel required, got {} -> {} modes",
            channel.input_modes(),
            channel.output_modes()
        )));
    }
    let x = channel.x();
    let y = channel.y();
    Ok((
        Matrix2::new(x[(0, 0)], x[(0, 1)], x[(1, 0)], x[(1, 1)]),
        Matrix2::new(y[(0, 0)], y[(0, 1)], y[(1, 0)], y[(1, 1)]),
    ))
}

/// Singular-value normal form of a one-mode channel.
pub fn normalize(channel: &GaussianChannel) -> Result<NormalFormChannel> {
    let (x, y) = one_mode_matrices(channel)?;
    let eig = SymmetricEigen::new(x.transpose() * x);
    let (i1, i2) = if eig.eigenvalues[0] >= eig.eigenvalues[1] { (0, 1) } else { (1, 0) };
    let lambda1 = eig.eigenvalues[i1].max(0.0);
    let lambda2 = eig.eigenvalues[i2].max(0.0);
    let v1: Vector2<f64> = eig.eigenvectors.column(i1).normalize();
    // v2 = R(π/2) v1, so [v1 v2] is a proper rotation by construction
    let v2 = Vector2::new(-v1[1], v1[0]);
    let o2 = Matrix2::from_columns(&[v1, v2]);

    let scale = x.amax().max(f64::MIN_POSITIVE);
    let (s1, s2) = (lambda1.sqrt(), lambda2.sqrt());
    let u1 = if s1 > 1e-14 * scale { (x * v1) / s1 } else { Vector2::new(1.0, 0.0) };
    let u1 = u1.normalize();
    let perp = Vector2::new(-u1[1], u1[0]);
    let (u2, reflection) = if s2 > 1e-12 * scale {
        let w = x * v2;
        // sign of the second left singular vector relative to the proper completion
        (perp, w.dot(&perp) < 0.0)
    } else {
        (perp, false)
    };
    let o1 = Matrix2::from_columns(&[u1, u2]);
    let yn = o1.transpose() * y * o1;
    Ok(NormalFormChannel {
        lambda1,
        lambda2,
        y_i: 0.5 * (yn[(0, 0)] + yn[(1, 1)]),
        y_x: 0.5 * (yn[(0, 1)] + yn[(1, 0)]),
        y_z: 0.5 * (yn[(0, 0)] - yn[(1, 1)]),
        output_rotation: o1,
        input_rotation: o2,
        reflection,
    })
}

/// High-energy ratio `lim E→∞ max ℰ / E = Λ₁`.
pub fn asymptotic_ratio(channel: &GaussianChannel) -> Result<f64> {
    Ok(normalize(channel)?.lambda1)
}

fn check_budget(energy: f64, nu: f64) -> Result<()> {
    if !(energy >= 0.0) || !energy.is_finite() {
        return Err(Error::Parameter(format!("energy must be finite and >= 0, got {energy}")));
    }
    if !(nu >= 1.0) || !nu.is_finite() {
        return Err(Error::Parameter(format!("mixedness ν must be >= 1, got {nu}")));
    }
    Ok(())
}

/// Largest squeezing compatible with the budget: `a + √(a² − 1)`, `a = (2E+1)/ν`.
pub fn z_max(energy: f64, nu: f64) -> Result<f64> {
    check_budget(energy, nu)?;
    let a = (2.0 * energy + 1.0) / nu;
    if a < 1.0 {
        return Err(Error::Infeasible(format!(
            "mixedness ν = {nu} needs more than the available energy {energy}"
        )));
    }
    Ok(a + ((a - 1.0) * (a + 1.0)).sqrt())
}

/// Squared mean norm left for the displacement: `2E + 1 − ν f₊(z)`, clipped at 0.
pub fn mean_norm_sq(z: f64, nu: f64, energy: f64) -> Result<f64> {
    check_budget(energy, nu)?;
    if !(z >= 1.0) {
        return Err(Error::Parameter(format!("squeezing z must be >= 1, got {z}")));
    }
    Ok((2.0 * energy + 1.0 - nu * f_plus(z)).max(0.0))
}

struct OutputSpectrum {
    lambda1: f64,
    lambda2: f64,
    half_gap: f64,
}

fn output_spectrum(nf: &NormalFormChannel, z: f64, theta: f64, nu: f64) -> OutputSpectrum {
    let (l1, l2) = (nf.lambda1, nf.lambda2);
    let (s, c) = theta.sin_cos();
    let fp = nu * f_plus(z);
    let fm = nu * f_minus(z);
    let a_i = 0.5 * (l1 + l2) * fp + 0.5 * (l1 - l2) * fm * c;
    let a_x = (l1 * l2).sqrt() * fm * s;
    let a_z = 0.5 * (l1 - l2) * fp + 0.5 * (l1 + l2) * fm * c;
    let trace_half = a_i + nf.y_i;
    let half_gap = (a_x + nf.y_x).hypot(a_z + nf.y_z);
    // det(A + Y) expanded so the large squeezing terms never cancel
    let det = nu * nu * l1 * l2 + nf.y_i * nf.y_i - nf.y_x * nf.y_x - nf.y_z * nf.y_z
        + 2.0 * (nf.y_i * a_i - nf.y_x * a_x - nf.y_z * a_z);
    let lambda1 = trace_half + half_gap;
    let lambda2 = if lambda1 > 0.0 { (det / lambda1).max(0.0) } else { 0.0 };
    OutputSpectrum { lambda1, lambda2, half_gap }
}

/// Eigenvalues `λ₁ ≥ λ₂` of the output covariance `X'σX'ᵀ + Y'` for an input
/// of squeezing `z`, direction `θ` and mixedness `ν` (normal frame).
pub fn output_eigenvalues(nf: &NormalFormChannel, z: f64, theta: f64, nu: f64) -> (f64, f64) {
    let sp = output_spectrum(nf, z, theta, nu);
    (sp.lambda1, sp.lambda2)
}

/// The `E`-independent part of the objective,
/// `(√λ₁ − √λ₂)²/4 − Λ₁ ν f₊(z)/2`.
pub fn shape_term(nf: &NormalFormChannel, z: f64, theta: f64, nu: f64) -> f64 {
    let sp = output_spectrum(nf, z, theta, nu);
    let root_sum = sp.lambda1.sqrt() + sp.lambda2.sqrt();
    // (√λ₁ − √λ₂)² = (λ₁ − λ₂)² / (√λ₁ + √λ₂)² and λ₁ − λ₂ = 2·half_gap
    let anisotropy = if root_sum > 0.0 {
        (sp.half_gap / root_sum).powi(2)
    } else {
        0.0
    };
    anisotropy - 0.5 * nf.lambda1 * nu * f_plus(z)
}

/// Output ergotropy `(√λ₁ − √λ₂)²/4 + Λ₁ m²(z, ν, E)/2` for `z ∈ [1, z_max(E, ν)]`.
pub fn objective(nf: &NormalFormChannel, z: f64, theta: f64, nu: f64, energy: f64) -> Result<f64> {
    let zmax = z_max(energy, nu)?;
    if !(z >= 1.0) || z > zmax * (1.0 + 1e-12) {
        return Err(Error::Parameter(format!("z = {z} outside [1, {zmax}]")));
    }
    Ok(shape_term(nf, z, theta, nu) + 0.5 * nf.lambda1 * (2.0 * energy + 1.0))
}

/// Optimal Gaussian input for a given channel and energy budget.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OptimizationResult {
    /// Squeezing of the optimal input.
    pub z_star: f64,
    /// Squeezing direction in the channel's normal frame, in `[0, 2π)`.
    pub theta_star: f64,
    pub nu: f64,
    /// Optimal input mean in the original frame.
    pub mean: [f64; 2],
    /// Maximal output ergotropy.
    pub value: f64,
    /// The energy-independent optimum needs more squeezing than `z_max(E, ν)`.
    pub clamped: bool,
    /// Energy-independent optimal squeezing (`inf` when unbounded).
    pub unconstrained_z: f64,
    pub input_state: GaussianState,
}

#[derive(Debug, Clone, Copy)]
struct Candidate {
    z: f64,
    theta: f64,
}

fn better(new: f64, old: f64) -> bool {
    new > old + TIE_EPS * (1.0 + old.abs())
}

/// Grid scan followed by alternating golden-section refinement over
/// `ln z ∈ [0, ln z_hi]`, `θ ∈ [0, 2π)`.
fn search_box(nf: &NormalFormChannel, nu: f64, z_hi: f64) -> Candidate {
    let f = |u: f64, t: f64| shape_term(nf, u.exp(), t, nu);
    let u_hi = z_hi.ln();
    if !(u_hi > 1e-14) {
        return Candidate { z: 1.0, theta: 0.0 };
    }
    let du = u_hi / (GRID_Z - 1) as f64;
    let dt = TAU / GRID_THETA as f64;
    let mut best = (0.0, 0.0, f(0.0, 0.0));
    for i in 0..GRID_Z {
        let u = if i == GRID_Z - 1 { u_hi } else { i as f64 * du };
        for j in 0..GRID_THETA {
            let t = j as f64 * dt;
            let v = f(u, t);
            if better(v, best.2) {
                best = (u, t, v);
            }
        }
    }

    let (mut u, mut t, mut val) = best;
    let (hu, ht) = (2.0 * du, 2.0 * dt);
    for sweep in 0..MAX_SWEEPS {
        let (u_new, fu) = golden_section_max(|x| f(x, t), (u - hu).max(0.0), (u + hu).min(u_hi), PARAM_TOL);
        let (nt, ft) = golden_section_max(|y| f(u_new, y), t - ht, t + ht, PARAM_TOL);
        let (cand_u, cand_t, cand_v) = if ft >= fu { (u_new, nt, ft) } else { (u_new, t, fu) };
        if cand_v < val {
            break;
        }
        let step = (cand_u - u).abs().max((cand_t - t).abs());
        u = cand_u;
        t = cand_t;
        val = cand_v;
        if sweep + 1 >= MIN_SWEEPS && step < PARAM_TOL * 10.0 {
            break;
        }
    }
    let (u, t) = newton_polish(&f, u, t, u_hi);
    let z = u.exp().min(z_hi);
    let theta = if z - 1.0 < 1e-12 { 0.0 } else { wrap_angle(t) };
    Candidate { z, theta }
}

/// `θ mod 2π` with values a hair below `2π` sent to `0`.
fn wrap_angle(t: f64) -> f64 {
    let w = t.rem_euclid(TAU);
    if TAU - w < 1e-9 {
        0.0
    } else {
        w
    }
}

const POLISH_STEP: f64 = 1e-5;
const POLISH_HESS_STEP: f64 = 1e-4;

/// Newton steps on central-difference derivatives. Golden section stalls
/// around `√ε` in the parameters on a flat maximum; this recovers the last
/// digits. Steps are only taken on a locally concave interior point.
fn newton_polish<F: Fn(f64, f64) -> f64>(f: &F, mut u: f64, mut t: f64, u_hi: f64) -> (f64, f64) {
    let (h, k) = (POLISH_STEP, POLISH_HESS_STEP);
    for _ in 0..4 {
        let interior = u - 2.0 * k > 0.0 && u + 2.0 * k < u_hi;
        let f0 = f(u, t);
        let gt = (f(u, t + h) - f(u, t - h)) / (2.0 * h);
        let htt = (f(u, t + k) - 2.0 * f0 + f(u, t - k)) / (k * k);
        let step = if interior {
            let gu = (f(u + h, t) - f(u - h, t)) / (2.0 * h);
            let huu = (f(u + k, t) - 2.0 * f0 + f(u - k, t)) / (k * k);
            let hut = (f(u + k, t + k) - f(u + k, t - k) - f(u - k, t + k) + f(u - k, t - k))
                / (4.0 * k * k);
            let det = huu * htt - hut * hut;
            if !(huu < 0.0 && det > 0.0) {
                break;
            }
            ((-htt * gu + hut * gt) / det, (hut * gu - huu * gt) / det)
        } else {
            if !(htt < 0.0) {
                break;
            }
            (0.0, -gt / htt)
        };
        if step.0.abs() > k || step.1.abs() > k {
            break;
        }
        let (nu_next, nt) = (u + step.0, t + step.1);
        if f(nu_next, nt) < f0 - 4.0 * f64::EPSILON * f0.abs().max(1.0) {
            break;
        }
        u = nu_next;
        t = nt;
        if step.0.abs().max(step.1.abs()) < 1e-13 {
            break;
        }
    }
    (u, t)
}

/// Maximizes the output ergotropy over Gaussian inputs of energy `E` and
/// mixedness `ν` (`ν = 1` for pure inputs).
///
/// The energy-independent optimal shape is searched first; if it does not fit
/// the budget the search is repeated on `z ∈ [1, z_max(E, ν)]` and the result is
/// flagged as clamped when it lands on the `z_max` boundary (zero mean).
pub fn maximize(channel: &GaussianChannel, energy: f64, nu: f64) -> Result<OptimizationResult> {
    check_budget(energy, nu)?;
    let nf = normalize(channel)?;
    if channel.v().amax() != 0.0 {
        return Err(Error::InvalidChannel(
            "the optimizer assumes channels without a fixed displacement (v = 0)".into(),
        ));
    }
    let zmax = z_max(energy, nu)?;

    // Coherent inputs are optimal here and the value is exactly Λ₁E.
    if nu == 1.0 && channel.is_phase_insensitive(1e-10) {
        let dir = nf.top_input_direction() * (2.0 * energy).sqrt();
        let input_state = GaussianState::coherent(DVector::from_vec(vec![dir[0], dir[1]]))?;
        return Ok(OptimizationResult {
            z_star: 1.0,
            theta_star: 0.0,
            nu,
            mean: [dir[0], dir[1]],
            value: pi_max_ergotropy(channel, energy)?,
            clamped: false,
            unconstrained_z: 1.0,
            input_state,
        });
    }

    let free = search_box(&nf, nu, Z_CAP);
    let unbounded = free.z >= Z_CAP * (1.0 - 1e-6);
    let (best, clamped) = if !unbounded && free.z <= zmax * (1.0 + 1e-12) {
        (Candidate { z: free.z.min(zmax), ..free }, false)
    } else {
        let boxed = search_box(&nf, nu, zmax);
        (boxed, boxed.z >= zmax * (1.0 - 1e-9))
    };

    let m2 = mean_norm_sq(best.z.min(zmax), nu, energy)?;
    let dir = nf.top_input_direction();
    let mean = dir * m2.sqrt();
    let cov = nf.input_covariance(best.z, best.theta, nu);
    let input_state = GaussianState::new(
        DVector::from_vec(vec![mean[0], mean[1]]),
        nalgebra::DMatrix::from_iterator(2, 2, cov.iter().copied()),
    )?;
    let value = ergotropy_one_mode(&channel.apply(&input_state)?)?;
    Ok(OptimizationResult {
        z_star: best.z,
        theta_star: best.theta,
        nu,
        mean: [mean[0], mean[1]],
        value,
        clamped,
        unconstrained_z: if unbounded { f64::INFINITY } else { free.z },
        input_state,
    })
}

/// A zero of `∂ℰ̃/∂z` along the diagonal inputs `σ = ν diag(t, 1/t)`.
///
/// `t ≥ 1` is squeezing `z = t` at `θ = 0`; `t < 1` is `z = 1/t` at `θ = π`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct StationaryPoint {
    pub root: f64,
    pub z: f64,
    pub theta: f64,
    /// The derivative changes sign from `+` to `−` across the root.
    pub is_maximum: bool,
}

/// `∂ℰ̃(t, 0)/∂t` for a channel with `y_x = 0`:
///
/// ```text
/// 1/(4t) · [ 2(−t²Λ₁y_I + Λ₂y_I + t²Λ₁y_z + Λ₂y_z) / √(A² − B²) + (Λ₁ − Λ₂)/t ]
/// A = t²Λ₁ + Λ₂ + 2t y_I,   B = t²Λ₁ − Λ₂ + 2t y_z
/// ```
///
/// with every `Λ` scaled by `ν`.
pub fn diagonal_noise_derivative(nf: &NormalFormChannel, t: f64, nu: f64) -> f64 {
    let (first, second) = diagonal_noise_terms(nf, t, nu);
    first + second
}

/// The two summands of [`diagonal_noise_derivative`], kept apart so root
/// bracketing can tell a genuine sign from cancellation noise.
fn diagonal_noise_terms(nf: &NormalFormChannel, t: f64, nu: f64) -> (f64, f64) {
    let (l1, l2) = (nu * nf.lambda1, nu * nf.lambda2);
    let (yi, yz) = (nf.y_i, nf.y_z);
    let t2 = t * t;
    let a = t2 * l1 + l2 + 2.0 * t * yi;
    let b = t2 * l1 - l2 + 2.0 * t * yz;
    // A² − B² factored to avoid cancellation
    let disc = (a - b) * (a + b);
    let numer = 2.0 * (-t2 * l1 * yi + l2 * yi + t2 * l1 * yz + l2 * yz);
    let first = if disc > 0.0 { numer / disc.sqrt() } else { 0.0 };
    (first / (4.0 * t), (l1 - l2) / (4.0 * t2))
}

/// `∂ℰ̃/∂t` when `Y ∝ I`:
/// `¼ [ y_I (Λ₂/t² − Λ₁) / √((y_I + Λ₁t)(y_I + Λ₂/t)) + (Λ₁ − Λ₂)/t² ]`, `Λ` scaled by `ν`.
pub fn isotropic_noise_derivative(nf: &NormalFormChannel, t: f64, nu: f64) -> f64 {
    let (first, second) = isotropic_noise_terms(nf, t, nu);
    first + second
}

fn isotropic_noise_terms(nf: &NormalFormChannel, t: f64, nu: f64) -> (f64, f64) {
    let (l1, l2) = (nu * nf.lambda1, nu * nf.lambda2);
    let yi = nf.y_i;
    let p = (yi + l1 * t) * (yi + l2 / t);
    let first = if p > 0.0 { yi * (l2 / (t * t) - l1) / p.sqrt() } else { 0.0 };
    (0.25 * first, 0.25 * (l1 - l2) / (t * t))
}

const ROOT_T_MIN: f64 = 1e-8;
const ROOT_T_MAX: f64 = 1e8;
const ROOT_GRID: usize = 4001;

fn sign_change_roots<F: Fn(f64) -> (f64, f64)>(terms: F) -> Vec<StationaryPoint> {
    let (lo, hi) = (ROOT_T_MIN.ln(), ROOT_T_MAX.ln());
    let d = |t: f64| {
        let (a, b) = terms(t);
        a + b
    };
    // a sample only counts when its sign survives the cancellation between terms
    let significant: Vec<(f64, f64)> = (0..ROOT_GRID)
        .filter_map(|i| {
            let u = lo + (hi - lo) * i as f64 / (ROOT_GRID - 1) as f64;
            let t = if i == (ROOT_GRID - 1) / 2 { 1.0 } else { u.exp() };
            let (a, b) = terms(t);
            let v = a + b;
            (v.abs() > 1e-12 * (a.abs() + b.abs())).then_some((t, v))
        })
        .collect();
    significant
        .windows(2)
        .filter(|w| w[0].1.signum() != w[1].1.signum())
        .filter_map(|w| {
            let root = bisect_root(d, w[0].0, w[1].0, 1e-15)?;
            let (z, theta) = if root >= 1.0 { (root, 0.0) } else { (root.recip(), PI) };
            Some(StationaryPoint { root, z, theta, is_maximum: w[0].1 > 0.0 })
        })
        .collect()
}

fn noise_scale(nf: &NormalFormChannel) -> f64 {
    1e-9 * nf.lambda1.max(nf.y_i.abs()).max(1.0)
}

/// Stationary squeezings along `θ ∈ {0, π}` for channels with `y_x = 0`,
/// located by bracketing sign changes of [`diagonal_noise_derivative`] on a
/// log grid `t ∈ [1e-8, 1e8]` and bisecting.
pub fn stationary_z_diagonal_noise(nf: &NormalFormChannel, nu: f64) -> Result<Vec<StationaryPoint>> {
    if nf.y_x.abs() > noise_scale(nf) {
        return Err(Error::Parameter(format!("y_x = {} must vanish", nf.y_x)));
    }
    Ok(sign_change_roots(|t| diagonal_noise_terms(nf, t, nu)))
}

/// Same as [`stationary_z_diagonal_noise`] for `Y ∝ I`, using the reduced derivative.
pub fn stationary_z_isotropic_noise(nf: &NormalFormChannel, nu: f64) -> Result<Vec<StationaryPoint>> {
    let tol = noise_scale(nf);
    if nf.y_x.abs() > tol || nf.y_z.abs() > tol {
        return Err(Error::Parameter(format!(
            "Y must be isotropic, got y_x = {}, y_z = {}",
            nf.y_x, nf.y_z
        )));
    }
    Ok(sign_change_roots(|t| isotropic_noise_terms(nf, t, nu)))
}
