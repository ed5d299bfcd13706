//! Phase-space linear algebra: the symplectic form, the uncertainty cones for
//! covariance matrices and channels, and symplectic spectra.
//!
//! Quadratures are ordered `(q_1, .., q_n, p_1, .., p_n)` everywhere.

use nalgebra::{DMatrix, DVector, SymmetricEigen};
use num_complex::Complex64;

use crate::error::{Error, Result};

/// Relative tolerance used for positive-semidefiniteness checks.
pub const PSD_TOL: f64 = 1e-9;

/// The canonical symplectic form `γ_n = [[0, I_n], [-I_n, 0]]`.
#[derive(Debug, Clone, PartialEq)]
pub struct SympForm {
    n: usize,
    matrix: DMatrix<f64>,
}

impl SympForm {
    pub fn modes(&self) -> usize {
        self.n
    }

    pub fn matrix(&self) -> &DMatrix<f64> {
        &self.matrix
    }

    pub fn into_matrix(self) -> DMatrix<f64> {
        self.matrix
    }
}

/// Builds `γ_n` for `n >= 1` modes.
pub fn symplectic_form(n: usize) -> Result<SympForm> {
    if n == 0 {
        return Err(Error::ZeroModes);
    }
    Ok(SympForm {
        n,
        matrix: gamma(n),
    })
}

pub(crate) fn gamma(n: usize) -> DMatrix<f64> {
    let mut g = DMatrix::zeros(2 * n, 2 * n);
    for k in 0..n {
        g[(k, n + k)] = 1.0;
        g[(n + k, k)] = -1.0;
    }
    g
}

fn check_square_even(m: &DMatrix<f64>, what: &str) -> Result<usize> {
    if !m.is_square() {
        return Err(Error::Dimension(format!(
            "{what} must be square, got {}x{}",
            m.nrows(),
            m.ncols()
        )));
    }
    if m.nrows() == 0 || !m.nrows().is_multiple_of(2) {
        return Err(Error::Dimension(format!(
            "{what} must have even positive size, got {}",
            m.nrows()
        )));
    }
    Ok(m.nrows() / 2)
}

pub(crate) fn max_asymmetry(m: &DMatrix<f64>) -> f64 {
    let mut worst = 0.0_f64;
    for i in 0..m.nrows() {
        for j in (i + 1)..m.ncols() {
            worst = worst.max((m[(i, j)] - m[(j, i)]).abs());
        }
    }
    worst
}

fn check_symmetric(m: &DMatrix<f64>, tol: f64) -> Result<()> {
    let asym = max_asymmetry(m);
    let scale = m.amax().max(1.0);
    if asym > tol.max(PSD_TOL) * scale {
        return Err(Error::NotSymmetric(asym));
    }
    Ok(())
}

/// Eigenvalues of the Hermitian matrix `re + i·im`.
pub(crate) fn hermitian_eigenvalues(re: &DMatrix<f64>, im: &DMatrix<f64>) -> DVector<f64> {
    let h = DMatrix::from_fn(re.nrows(), re.ncols(), |i, j| {
        // symmetrize so the solver sees an exactly Hermitian input
        Complex64::new(
            0.5 * (re[(i, j)] + re[(j, i)]),
            0.5 * (im[(i, j)] - im[(j, i)]),
        )
    });
    SymmetricEigen::new(h).eigenvalues
}

fn is_psd(eigs: &DVector<f64>, tol: f64) -> bool {
    let scale = eigs.amax().max(1.0);
    eigs.iter().all(|&l| l >= -tol * scale)
}

/// True iff `σ + iγ_n ≥ 0` (eigenvalues at least `-tol` relative to the largest).
pub fn is_valid_covariance(cov: &DMatrix<f64>, tol: f64) -> Result<bool> {
    let n = check_square_even(cov, "covariance")?;
    check_symmetric(cov, tol)?;
    let eigs = hermitian_eigenvalues(cov, &gamma(n));
    Ok(is_psd(&eigs, tol))
}

/// True iff `Y - i(γ_out - X γ_in Xᵀ) ≥ 0`, the complete-positivity condition of a
/// Gaussian channel acting as `σ ↦ XσXᵀ + Y`.
pub fn is_valid_channel(x: &DMatrix<f64>, y: &DMatrix<f64>, tol: f64) -> Result<bool> {
    let n_out = check_square_even(y, "Y")?;
    if x.nrows() != y.nrows() || x.ncols() == 0 || !x.ncols().is_multiple_of(2) {
        return Err(Error::Dimension(format!(
            "X is {}x{}, expected {}x(2·n_in) for Y of size {}",
            x.nrows(),
            x.ncols(),
            y.nrows(),
            y.nrows()
        )));
    }
    check_symmetric(y, tol)?;
    let n_in = x.ncols() / 2;
    let im = -(gamma(n_out) - x * gamma(n_in) * x.transpose());
    let eigs = hermitian_eigenvalues(y, &im);
    Ok(is_psd(&eigs, tol))
}

/// Symplectic eigenvalues of a valid covariance matrix, sorted descending.
///
/// For one mode this is `[√det σ]`. In general the values are the moduli of the
/// eigenvalues of `iγσ`, computed from the symmetric matrix `AᵀA` with
/// `A = σ^{1/2} γ σ^{1/2}` whose spectrum is `{ν_k²}`, each twice.
pub fn symplectic_eigenvalues(cov: &DMatrix<f64>) -> Result<Vec<f64>> {
    if !is_valid_covariance(cov, PSD_TOL)? {
        return Err(Error::InvalidCovariance(
            "σ + iγ is not positive semidefinite".into(),
        ));
    }
    let n = cov.nrows() / 2;
    if n == 1 {
        let det = cov[(0, 0)] * cov[(1, 1)] - cov[(0, 1)] * cov[(1, 0)];
        return Ok(vec![det.max(0.0).sqrt().max(1.0)]);
    }
    let sqrt = psd_sqrt(cov);
    let a = &sqrt * gamma(n) * &sqrt;
    let b = a.transpose() * &a;
    let b = (&b + b.transpose()) * 0.5;
    let mut squares: Vec<f64> = SymmetricEigen::new(b).eigenvalues.iter().copied().collect();
    squares.sort_by(|x, y| y.total_cmp(x));
    Ok(squares
        .iter()
        .step_by(2)
        .map(|s| s.max(0.0).sqrt().max(1.0))
        .collect())
}

pub(crate) fn psd_sqrt(m: &DMatrix<f64>) -> DMatrix<f64> {
    let eig = SymmetricEigen::new(m.clone());
    let roots = eig.eigenvalues.map(|l| l.max(0.0).sqrt());
    &eig.eigenvectors * DMatrix::from_diagonal(&roots) * eig.eigenvectors.transpose()
}

/// Largest eigenvalue `Λ₁` of `XᵀX` and a unit vector `w` with `|Xw|² = Λ₁`.
pub fn largest_singular_structure(x: &DMatrix<f64>) -> Result<(f64, DVector<f64>)> {
    if x.is_empty() || x.amax() == 0.0 {
        return Err(Error::Parameter("X must be a nonzero matrix".into()));
    }
    let xtx = x.transpose() * x;
    let eig = SymmetricEigen::new(xtx);
    let (idx, lambda) = eig
        .eigenvalues
        .iter()
        .copied()
        .enumerate()
        .max_by(|a, b| a.1.total_cmp(&b.1))
        .expect("non-empty spectrum");
    let w = eig.eigenvectors.column(idx).normalize();
    Ok((lambda.max(0.0), w))
}

/// True iff `S γ Sᵀ = γ` within `tol` (entrywise).
pub fn is_symplectic(s: &DMatrix<f64>, tol: f64) -> bool {
    if !s.is_square() || !s.nrows().is_multiple_of(2) || s.nrows() == 0 {
        return false;
    }
    let g = gamma(s.nrows() / 2);
    (s * &g * s.transpose() - g).amax() <= tol
}

#[cfg(test)]
mod tests {
    use super::*;
    use nalgebra::dmatrix;

    #[test]
    fn one_mode_form() {
        let g = symplectic_form(1).unwrap();
        assert_eq!(g.matrix(), &dmatrix![0.0, 1.0; -1.0, 0.0]);
        let sq = g.matrix() * g.matrix();
        assert_eq!(sq, -DMatrix::<f64>::identity(2, 2));
    }

    #[test]
    fn two_mode_form_blocks() {
        let g = symplectic_form(2).unwrap().into_matrix();
        let expected = dmatrix![
            0.0, 0.0, 1.0, 0.0;
            0.0, 0.0, 0.0, 1.0;
            -1.0, 0.0, 0.0, 0.0;
            0.0, -1.0, 0.0, 0.0
        ];
        assert_eq!(g, expected);
        assert_eq!(g.transpose(), -&g);
        assert_eq!(&g * &g, -DMatrix::<f64>::identity(4, 4));
    }

    #[test]
    fn zero_modes_rejected() {
        assert_eq!(symplectic_form(0), Err(Error::ZeroModes));
    }

    #[test]
    fn covariance_cone() {
        assert!(is_valid_covariance(&DMatrix::identity(2, 2), PSD_TOL).unwrap());
        assert!(is_valid_covariance(&dmatrix![4.0, 0.0; 0.0, 0.25], PSD_TOL).unwrap());
        assert!(!is_valid_covariance(&(DMatrix::identity(2, 2) * 0.5), PSD_TOL).unwrap());
    }

    #[test]
    fn asymmetric_covariance_rejected() {
        let m = dmatrix![1.0, 0.5; 0.0, 1.0];
        assert!(matches!(
            is_valid_covariance(&m, PSD_TOL),
            Err(Error::NotSymmetric(_))
        ));
        assert!(matches!(
            is_valid_covariance(&DMatrix::identity(3, 3), PSD_TOL),
            Err(Error::Dimension(_))
        ));
    }

    #[test]
    fn channel_cone() {
        let eta: f64 = 0.5;
        let x = DMatrix::identity(2, 2) * eta.sqrt();
        let y = DMatrix::identity(2, 2) * (1.0 - eta);
        assert!(is_valid_channel(&x, &y, PSD_TOL).unwrap());

        let id = DMatrix::identity(2, 2);
        assert!(is_valid_channel(&id, &DMatrix::zeros(2, 2), PSD_TOL).unwrap());

        // amplification by 4 with no added noise violates the uncertainty principle
        let x2 = DMatrix::identity(2, 2) * 2.0;
        assert!(!is_valid_channel(&x2, &DMatrix::zeros(2, 2), PSD_TOL).unwrap());
    }

    #[test]
    fn channel_shape_mismatch() {
        let x = DMatrix::identity(2, 4);
        let y = DMatrix::identity(4, 4);
        assert!(matches!(
            is_valid_channel(&x, &y, PSD_TOL),
            Err(Error::Dimension(_))
        ));
    }

    #[test]
    fn thermal_and_pure_spectra() {
        let thermal = DMatrix::identity(2, 2) * 3.0;
        assert_eq!(symplectic_eigenvalues(&thermal).unwrap(), vec![3.0]);
        let z = 7.0;
        let pure = dmatrix![z, 0.0; 0.0, 1.0 / z];
        assert!((symplectic_eigenvalues(&pure).unwrap()[0] - 1.0).abs() < 1e-12);
    }

    #[test]
    fn two_mode_product_spectrum() {
        let cov = DMatrix::from_diagonal(&DVector::from_vec(vec![3.0, 5.0, 3.0, 5.0]));
        let nu = symplectic_eigenvalues(&cov).unwrap();
        assert!((nu[0] - 5.0).abs() < 1e-12 && (nu[1] - 3.0).abs() < 1e-12);
    }

    #[test]
    fn invalid_covariance_has_no_spectrum() {
        assert!(symplectic_eigenvalues(&(DMatrix::identity(2, 2) * 0.5)).is_err());
    }

    #[test]
    fn singular_structure() {
        let eta: f64 = 0.3;
        let (l, w) = largest_singular_structure(&(DMatrix::identity(2, 2) * eta.sqrt())).unwrap();
        assert!((l - eta).abs() < 1e-14);
        assert!((w.norm() - 1.0).abs() < 1e-14);

        let zeta: f64 = 3.0;
        let x = dmatrix![(eta * zeta).sqrt(), 0.0; 0.0, (eta / zeta).sqrt()];
        let (l, w) = largest_singular_structure(&x).unwrap();
        assert!((l - eta * zeta).abs() < 1e-14);
        assert!((w[0].abs() - 1.0).abs() < 1e-12 && w[1].abs() < 1e-12);

        let (l, _) = largest_singular_structure(&DMatrix::identity(2, 2)).unwrap();
        assert!((l - 1.0).abs() < 1e-15);

        assert!(largest_singular_structure(&DMatrix::zeros(2, 2)).is_err());
    }
}
