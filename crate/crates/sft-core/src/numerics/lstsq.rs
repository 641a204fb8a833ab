//! Linear least squares via the normal equations.

use super::eig::sym_eig;
use super::mat::Mat;
use super::NumericsError;

const RANK_RTOL: f64 = 1e-12;

/// Minimizes `||A x - b||_2` for `A` with full column rank.
///
/// Solves the normal equations through the eigendecomposition of `AᵀA`,
/// which is deterministic and doubles as the rank check: an eigenvalue
/// below `1e-12` of the largest flags rank deficiency.
pub fn solve_least_squares(a: &Mat, b: &[f64]) -> Result<Vec<f64>, NumericsError> {
    let (n, k) = (a.rows(), a.cols());
    if b.len() != n {
        return Err(NumericsError::DimensionMismatch {
            context: "solve_least_squares",
            detail: format!("A is {}x{}, b has length {}", n, k, b.len()),
        });
    }
    if n < k {
        return Err(NumericsError::DimensionMismatch {
            context: "solve_least_squares",
            detail: format!("underdetermined: {} rows < {} columns", n, k),
        });
    }
    if a.as_slice().iter().any(|x| !x.is_finite()) {
        return Err(NumericsError::DimensionMismatch {
            context: "solve_least_squares",
            detail: "non-finite entry in A".into(),
        });
    }

    let ata = a.matmul_tn(a);
    let atb = a.matvec_t(b);
    let eig = sym_eig(&ata)?;
    let lambda_max = eig.values[0].max(0.0);
    let rank = eig
        .values
        .iter()
        .filter(|&&l| l > RANK_RTOL * lambda_max && l > 0.0)
        .count();
    if rank < k {
        return Err(NumericsError::RankDeficient { rank, needed: k });
    }

    // x = V diag(1/lambda) Vᵀ Aᵀ b
    let vt_atb = eig.vectors.matvec_t(&atb);
    let scaled: Vec<f64> = vt_atb
        .iter()
        .zip(&eig.values)
        .map(|(y, l)| y / l)
        .collect();
    Ok(eig.vectors.matvec(&scaled))
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::Rng;
    use rand::SeedableRng;
    use rand_chacha::ChaCha20Rng;

    #[test]
    fn identity_returns_rhs() {
        let b = vec![2.0, -1.0, 0.25];
        let x = solve_least_squares(&Mat::eye(3), &b).unwrap();
        for (got, want) in x.iter().zip(&b) {
            assert!((got - want).abs() < 1e-12);
        }
    }

    #[test]
    fn consistent_system_residual_vanishes() {
        let a = Mat::from_vec(3, 2, vec![1.0, 0.0, 1.0, 1.0, 1.0, 2.0]);
        let x_true = [0.5, -2.0];
        let b: Vec<f64> = (0..3)
            .map(|i| a[(i, 0)] * x_true[0] + a[(i, 1)] * x_true[1])
            .collect();
        let x = solve_least_squares(&a, &b).unwrap();
        let residual: f64 = (0..3)
            .map(|i| {
                let r = a[(i, 0)] * x[0] + a[(i, 1)] * x[1] - b[i];
                r * r
            })
            .sum::<f64>()
            .sqrt();
        assert!(residual < 1e-10);
    }

    #[test]
    fn noisy_fit_satisfies_normal_equations() {
        let mut rng = ChaCha20Rng::seed_from_u64(5);
        let n = 40;
        let ts: Vec<f64> = (0..n).map(|i| i as f64 / 10.0).collect();
        let a = Mat::from_fn(n, 2, |i, j| if j == 0 { 1.0 } else { ts[i] });
        let b: Vec<f64> = ts
            .iter()
            .map(|t| 3.0 - 0.7 * t + 0.05 * (rng.random::<f64>() - 0.5))
            .collect();
        let x = solve_least_squares(&a, &b).unwrap();
        // Gradient of the residual Aᵀ(Ax - b) must vanish at the optimum.
        let ax = a.matvec(&x);
        let r: Vec<f64> = ax.iter().zip(&b).map(|(p, q)| p - q).collect();
        let grad = a.matvec_t(&r);
        let norm = grad.iter().map(|g| g * g).sum::<f64>().sqrt();
        assert!(norm < 1e-8, "normal-equation gradient norm {norm}");
    }

    #[test]
    fn rank_deficient_reports_rank() {
        // Second column is twice the first.
        let a = Mat::from_vec(4, 2, vec![1.0, 2.0, 2.0, 4.0, 3.0, 6.0, 4.0, 8.0]);
        let err = solve_least_squares(&a, &[1.0, 2.0, 3.0, 4.0]).unwrap_err();
        match err {
            NumericsError::RankDeficient { rank, needed } => {
                assert_eq!(rank, 1);
                assert_eq!(needed, 2);
            }
            other => panic!("unexpected {other:?}"),
        }
    }
}
