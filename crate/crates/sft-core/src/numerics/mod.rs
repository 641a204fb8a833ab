//! Deterministic linear algebra, optimization and signal primitives.
//!
//! Everything here is pure 64-bit float arithmetic over owned inputs: the
//! same inputs always produce bit-identical outputs, which the rest of the
//! pipeline relies on for reproducible artifacts.

mod adam;
mod eig;
mod filter;
mod gauss;
mod lstsq;
mod mat;
mod mlp;

pub use adam::{adam_step, AdamState};
pub use eig::{sym_eig, EigenResult};
pub use filter::median_filter;
pub use gauss::{cholesky, cholesky_log_det, cholesky_solve, gaussian_kl};
pub use lstsq::solve_least_squares;
pub use mat::{dot, Mat};
pub use mlp::{
    assign_params, flatten_grads, flatten_params, mlp_forward, mlp_gradients, param_count,
    Activation, DenseLayer, LayerGrads, MlpCache,
};

use thiserror::Error;

#[derive(Debug, Error)]
pub enum NumericsError {
    #[error("matrix is not symmetric: max |a_ij - a_ji| = {max_asymmetry:.3e}")]
    NotSymmetric { max_asymmetry: f64 },
    #[error("Jacobi eigensolver did not converge after {sweeps} sweeps")]
    NoConvergence { sweeps: usize },
    #[error("matrix {name} is not positive definite")]
    NotPositiveDefinite { name: &'static str },
    #[error("dimension mismatch in {context}: {detail}")]
    DimensionMismatch {
        context: &'static str,
        detail: String,
    },
    #[error("rank-deficient system: estimated rank {rank}, need {needed}")]
    RankDeficient { rank: usize, needed: usize },
    #[error("NaN gradient at index {index}")]
    NanGradient { index: usize },
    #[error("median filter window must be odd and positive, got {window}")]
    EvenWindow { window: usize },
    #[error("forward cache does not match layer stack: {detail}")]
    CacheMismatch { detail: String },
}
