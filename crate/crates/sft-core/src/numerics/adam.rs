//! Adam optimizer state and update rule.

use super::NumericsError;

/// Adam hyperparameters plus per-parameter moment estimates.
#[derive(Clone, Debug)]
pub struct AdamState {
    pub step_size: f64,
    pub beta1: f64,
    pub beta2: f64,
    pub epsilon: f64,
    /// First-moment estimate, one entry per parameter.
    pub m: Vec<f64>,
    /// Second-moment estimate, one entry per parameter.
    pub v: Vec<f64>,
    /// Completed update count; increments by exactly one per `adam_step`.
    pub t: u64,
}

impl AdamState {
    pub fn new(n_params: usize, step_size: f64) -> Self {
        AdamState {
            step_size,
            beta1: 0.9,
            beta2: 0.999,
            epsilon: 1e-8,
            m: vec![0.0; n_params],
            v: vec![0.0; n_params],
            t: 0,
        }
    }
}

/// One bias-corrected Adam descent step, updating `params` in place.
///
/// Gradients are descent gradients: parameters move against their sign.
pub fn adam_step(
    params: &mut [f64],
    grads: &[f64],
    state: &mut AdamState,
) -> Result<(), NumericsError> {
    if params.len() != grads.len() || params.len() != state.m.len() {
        return Err(NumericsError::DimensionMismatch {
            context: "adam_step",
            detail: format!(
                "params[{}], grads[{}], state[{}]",
                params.len(),
                grads.len(),
                state.m.len()
            ),
        });
    }
    if let Some(index) = grads.iter().position(|g| g.is_nan()) {
        return Err(NumericsError::NanGradient { index });
    }

    state.t += 1;
    let t = state.t as f64;
    let bias1 = 1.0 - state.beta1.powf(t);
    let bias2 = 1.0 - state.beta2.powf(t);
    for i in 0..params.len() {
        state.m[i] = state.beta1 * state.m[i] + (1.0 - state.beta1) * grads[i];
        state.v[i] = state.beta2 * state.v[i] + (1.0 - state.beta2) * grads[i] * grads[i];
        let m_hat = state.m[i] / bias1;
        let v_hat = state.v[i] / bias2;
        params[i] -= state.step_size * m_hat / (v_hat.sqrt() + state.epsilon);
    }
    Ok(())
}
