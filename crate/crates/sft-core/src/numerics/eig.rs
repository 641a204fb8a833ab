//! Symmetric eigendecomposition by cyclic Jacobi rotations.

use super::mat::Mat;
use super::NumericsError;

/// Eigendecomposition of a symmetric matrix.
///
/// Eigenvalues are sorted in descending order; column `k` of `vectors` is the
/// unit eigenvector paired with `values[k]`. Signs follow a fixed convention:
/// the largest-magnitude component of each eigenvector is positive, so
/// repeated runs on the same input produce the same basis.
#[derive(Clone, Debug)]
pub struct EigenResult {
    pub values: Vec<f64>,
    pub vectors: Mat,
}

const SYMMETRY_RTOL: f64 = 1e-10;
const OFF_DIAG_RTOL: f64 = 1e-12;
const MAX_SWEEPS: usize = 100;

/// Full eigendecomposition of a symmetric matrix via cyclic Jacobi sweeps.
///
/// Rejects matrices whose asymmetry exceeds `1e-10` relative to the largest
/// entry, and reports the sweep count if the off-diagonal mass has not fallen
/// below `1e-12` of the Frobenius norm after 100 sweeps.
pub fn sym_eig(s: &Mat) -> Result<EigenResult, NumericsError> {
    if s.rows() != s.cols() {
        return Err(NumericsError::DimensionMismatch {
            context: "sym_eig",
            detail: format!("matrix is {}x{}, expected square", s.rows(), s.cols()),
        });
    }
    let n = s.rows();
    let scale = s.max_abs().max(1.0);
    let asym = s.max_asymmetry();
    if asym > SYMMETRY_RTOL * scale {
        return Err(NumericsError::NotSymmetric {
            max_asymmetry: asym,
        });
    }

    // Work on the symmetrized copy so roundoff asymmetry cannot bias sweeps.
    let mut a = Mat::from_fn(n, n, |i, j| 0.5 * (s[(i, j)] + s[(j, i)]));
    let mut v = Mat::eye(n);
    let threshold = OFF_DIAG_RTOL * a.frobenius().max(f64::MIN_POSITIVE);

    let mut converged = false;
    for _sweep in 0..MAX_SWEEPS {
        if off_diagonal_norm(&a) <= threshold {
            converged = true;
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = a[(p, q)];
                if apq == 0.0 {
                    continue;
                }
                // Rotation angle that annihilates a[p][q].
                let theta = (a[(q, q)] - a[(p, p)]) / (2.0 * apq);
                let t = if theta >= 0.0 {
                    1.0 / (theta + (1.0 + theta * theta).sqrt())
                } else {
                    -1.0 / (-theta + (1.0 + theta * theta).sqrt())
                };
                let c = 1.0 / (1.0 + t * t).sqrt();
                let sn = t * c;

                for k in 0..n {
                    let akp = a[(k, p)];
                    let akq = a[(k, q)];
                    a[(k, p)] = c * akp - sn * akq;
                    a[(k, q)] = sn * akp + c * akq;
                }
                for k in 0..n {
                    let apk = a[(p, k)];
                    let aqk = a[(q, k)];
                    a[(p, k)] = c * apk - sn * aqk;
                    a[(q, k)] = sn * apk + c * aqk;
                }
                for k in 0..n {
                    let vkp = v[(k, p)];
                    let vkq = v[(k, q)];
                    v[(k, p)] = c * vkp - sn * vkq;
                    v[(k, q)] = sn * vkp + c * vkq;
                }
            }
        }
    }
    if !converged && off_diagonal_norm(&a) > threshold {
        return Err(NumericsError::NoConvergence { sweeps: MAX_SWEEPS });
    }

    // Sort descending by eigenvalue; ties keep the lower original index first.
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| {
        a[(j, j)]
            .partial_cmp(&a[(i, i)])
            .expect("eigenvalues are finite")
    });

    let values: Vec<f64> = order.iter().map(|&k| a[(k, k)]).collect();
    let mut vectors = Mat::from_fn(n, n, |i, j| v[(i, order[j])]);

    // Sign convention: largest-magnitude component positive.
    for j in 0..n {
        let mut best = 0usize;
        let mut best_abs = 0.0f64;
        for i in 0..n {
            let x = vectors[(i, j)].abs();
            if x > best_abs {
                best_abs = x;
                best = i;
            }
        }
        if vectors[(best, j)] < 0.0 {
            for i in 0..n {
                vectors[(i, j)] = -vectors[(i, j)];
            }
        }
    }

    Ok(EigenResult { values, vectors })
}

fn off_diagonal_norm(a: &Mat) -> f64 {
    let n = a.rows();
    let mut sum = 0.0;
    for i in 0..n {
        for j in (i + 1)..n {
            sum += 2.0 * a[(i, j)] * a[(i, j)];
        }
    }
    sum.sqrt()
}
