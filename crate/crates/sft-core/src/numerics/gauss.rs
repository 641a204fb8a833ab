//! Closed-form KL divergence between multivariate Gaussians.

use super::mat::{dot, Mat};
use super::NumericsError;

/// Lower-triangular Cholesky factor of a symmetric positive-definite matrix.
/// Returns `None` when a pivot is not strictly positive.
pub fn cholesky(a: &Mat) -> Option<Mat> {
    let n = a.rows();
    if a.cols() != n {
        return None;
    }
    let mut l = Mat::zeros(n, n);
    for i in 0..n {
        for j in 0..=i {
            let mut sum = a[(i, j)];
            for k in 0..j {
                sum -= l[(i, k)] * l[(j, k)];
            }
            if i == j {
                if sum <= 0.0 || !sum.is_finite() {
                    return None;
                }
                l[(i, j)] = sum.sqrt();
            } else {
                l[(i, j)] = sum / l[(j, j)];
            }
        }
    }
    Some(l)
}

/// Solves `L y = b` for lower-triangular `L`.
fn forward_sub(l: &Mat, b: &[f64]) -> Vec<f64> {
    let n = b.len();
    let mut y = vec![0.0; n];
    for i in 0..n {
        let mut sum = b[i];
        for k in 0..i {
            sum -= l[(i, k)] * y[k];
        }
        y[i] = sum / l[(i, i)];
    }
    y
}

/// Solves `Lᵀ x = y` for lower-triangular `L`.
fn backward_sub(l: &Mat, y: &[f64]) -> Vec<f64> {
    let n = y.len();
    let mut x = vec![0.0; n];
    for i in (0..n).rev() {
        let mut sum = y[i];
        for k in (i + 1)..n {
            sum -= l[(k, i)] * x[k];
        }
        x[i] = sum / l[(i, i)];
    }
    x
}

/// Solves `A x = b` given the Cholesky factor `L` of `A`.
pub fn cholesky_solve(l: &Mat, b: &[f64]) -> Vec<f64> {
    backward_sub(l, &forward_sub(l, b))
}

/// `ln det A` given the Cholesky factor of `A`.
pub fn cholesky_log_det(l: &Mat) -> f64 {
    (0..l.rows()).map(|i| l[(i, i)].ln()).sum::<f64>() * 2.0
}

/// KL divergence `D(N(mu0, cov0) || N(mu1, cov1))` in closed form:
///
/// `0.5 * [tr(cov1⁻¹ cov0) + (mu1-mu0)ᵀ cov1⁻¹ (mu1-mu0) - M + ln(det cov1 / det cov0)]`
///
/// Identical argument pairs short-circuit to exactly zero.
pub fn gaussian_kl(
    mu0: &[f64],
    cov0: &Mat,
    mu1: &[f64],
    cov1: &Mat,
) -> Result<f64, NumericsError> {
    let m = mu0.len();
    if mu1.len() != m || cov0.rows() != m || cov0.cols() != m || cov1.rows() != m || cov1.cols() != m
    {
        return Err(NumericsError::DimensionMismatch {
            context: "gaussian_kl",
            detail: format!(
                "mu0[{}], cov0 {}x{}, mu1[{}], cov1 {}x{}",
                mu0.len(),
                cov0.rows(),
                cov0.cols(),
                mu1.len(),
                cov1.rows(),
                cov1.cols()
            ),
        });
    }
    if mu0 == mu1 && cov0 == cov1 {
        return Ok(0.0);
    }

    let l1 = cholesky(cov1).ok_or(NumericsError::NotPositiveDefinite { name: "cov1" })?;
    let l0 = cholesky(cov0).ok_or(NumericsError::NotPositiveDefinite { name: "cov0" })?;

    // tr(cov1⁻¹ cov0) column by column.
    let mut trace = 0.0;
    for j in 0..m {
        let col = cov0.col(j);
        let x = cholesky_solve(&l1, &col);
        trace += x[j];
    }

    let diff: Vec<f64> = mu1.iter().zip(mu0).map(|(a, b)| a - b).collect();
    let quad = dot(&diff, &cholesky_solve(&l1, &diff));

    let log_det = cholesky_log_det(&l1) - cholesky_log_det(&l0);
    Ok(0.5 * (trace + quad - m as f64 + log_det))
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::Rng;
    use rand::SeedableRng;
    use rand_chacha::ChaCha20Rng;

    fn random_spd(n: usize, rng: &mut ChaCha20Rng) -> Mat {
        let b = Mat::from_fn(n, n, |_, _| rng.random::<f64>() * 2.0 - 1.0);
        let mut s = b.matmul_nt(&b);
        for i in 0..n {
            s[(i, i)] += n as f64 * 0.5;
        }
        s
    }

    #[test]
    fn identical_gaussians_give_zero() {
        let mut rng = ChaCha20Rng::seed_from_u64(1);
        let cov = random_spd(4, &mut rng);
        let mu = vec![0.3, -1.0, 2.0, 0.0];
        assert_eq!(gaussian_kl(&mu, &cov, &mu, &cov).unwrap(), 0.0);
    }

    #[test]
    fn univariate_mean_shift() {
        let cov = Mat::from_vec(1, 1, vec![1.0]);
        let kl = gaussian_kl(&[0.0], &cov, &[1.0], &cov.clone()).unwrap();
        assert!((kl - 0.5).abs() < 1e-14);
    }

    #[test]
    fn matches_monte_carlo() {
        let mut rng = ChaCha20Rng::seed_from_u64(7);
        let n = 4;
        let cov0 = random_spd(n, &mut rng);
        let cov1 = random_spd(n, &mut rng);
        let mu0: Vec<f64> = (0..n).map(|_| rng.random::<f64>() - 0.5).collect();
        let mu1: Vec<f64> = (0..n).map(|_| rng.random::<f64>() - 0.5).collect();

        let closed = gaussian_kl(&mu0, &cov0, &mu1, &cov1).unwrap();

        // Monte-Carlo oracle: E_{z~N0}[ln N0(z) - ln N1(z)].
        let l0 = cholesky(&cov0).unwrap();
        let l1 = cholesky(&cov1).unwrap();
        let ld0 = cholesky_log_det(&l0);
        let ld1 = cholesky_log_det(&l1);
        let log_pdf = |z: &[f64], mu: &[f64], l: &Mat, ld: f64| -> f64 {
            let diff: Vec<f64> = z.iter().zip(mu).map(|(a, b)| a - b).collect();
            let quad = dot(&diff, &cholesky_solve(l, &diff));
            -0.5 * (n as f64 * (2.0 * std::f64::consts::PI).ln() + ld + quad)
        };
        let n_samples = 1_000_000usize;
        let mut acc = 0.0;
        for _ in 0..n_samples {
            let eps: Vec<f64> = (0..n)
                .map(|_| {
                    // Box-Muller from two uniforms.
                    let u1: f64 = rng.random::<f64>().max(1e-300);
                    let u2: f64 = rng.random();
                    (-2.0 * u1.ln()).sqrt() * (2.0 * std::f64::consts::PI * u2).cos()
                })
                .collect();
            let z: Vec<f64> = (0..n)
                .map(|i| mu0[i] + (0..=i).map(|k| l0[(i, k)] * eps[k]).sum::<f64>())
                .collect();
            acc += log_pdf(&z, &mu0, &l0, ld0) - log_pdf(&z, &mu1, &l1, ld1);
        }
        let mc = acc / n_samples as f64;
        assert!(
            (closed - mc).abs() <= 0.02 * closed.abs().max(1e-3),
            "closed {closed} vs MC {mc}"
        );
    }

    #[test]
    fn singular_cov1_rejected() {
        let cov0 = Mat::eye(2);
        let cov1 = Mat::zeros(2, 2);
        let err = gaussian_kl(&[0.0, 0.0], &cov0, &[0.0, 0.0], &cov1).unwrap_err();
        match err {
            NumericsError::NotPositiveDefinite { name } => assert_eq!(name, "cov1"),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn dimension_mismatch_rejected() {
        let cov = Mat::eye(2);
        assert!(matches!(
            gaussian_kl(&[0.0], &cov, &[0.0, 0.0], &cov.clone()),
            Err(NumericsError::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn nonnegative_on_random_pairs() {
        let mut rng = ChaCha20Rng::seed_from_u64(99);
        for _ in 0..50 {
            let n = 3;
            let cov0 = random_spd(n, &mut rng);
            let cov1 = random_spd(n, &mut rng);
            let mu0: Vec<f64> = (0..n).map(|_| rng.random::<f64>() * 4.0 - 2.0).collect();
            let mu1: Vec<f64> = (0..n).map(|_| rng.random::<f64>() * 4.0 - 2.0).collect();
            let kl = gaussian_kl(&mu0, &cov0, &mu1, &cov1).unwrap();
            assert!(kl >= -1e-12);
        }
    }
}
