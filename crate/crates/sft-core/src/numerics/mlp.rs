//! Dense layers with closed-form backpropagation.
//!
//! The networks in this crate are fixed stacks of three dense layers, so the
//! gradients are derived per layer instead of through a general autodiff
//! graph. All batch operations treat rows as samples; gradients returned by
//! [`mlp_gradients`] are sums over the batch.

use super::mat::Mat;
use super::NumericsError;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Activation {
    Tanh,
    Identity,
}

/// One dense layer: `act(W x + b)` with `W` stored `[out x in]`.
#[derive(Clone, Debug, PartialEq)]
pub struct DenseLayer {
    pub weights: Mat,
    pub bias: Vec<f64>,
    pub activation: Activation,
}

impl DenseLayer {
    pub fn new(weights: Mat, bias: Vec<f64>, activation: Activation) -> Self {
        assert_eq!(weights.rows(), bias.len(), "bias length must match rows");
        DenseLayer {
            weights,
            bias,
            activation,
        }
    }

    pub fn input_dim(&self) -> usize {
        self.weights.cols()
    }

    pub fn output_dim(&self) -> usize {
        self.weights.rows()
    }

    /// Applies the layer to a batch (rows are samples).
    fn forward_batch(&self, x: &Mat) -> Mat {
        let mut out = x.matmul_nt(&self.weights);
        for i in 0..out.rows() {
            let row = out.row_mut(i);
            for (o, &b) in row.iter_mut().zip(&self.bias) {
                *o += b;
            }
            if self.activation == Activation::Tanh {
                for o in row.iter_mut() {
                    *o = o.tanh();
                }
            }
        }
        out
    }
}

/// Forward activations retained for backpropagation.
pub struct MlpCache {
    /// `inputs[l]` is the batch entering layer `l`; `inputs[0]` is the data.
    inputs: Vec<Mat>,
    /// Post-activation output of the final layer.
    pub output: Mat,
}

/// Runs the stack on a batch, retaining per-layer inputs.
pub fn mlp_forward(layers: &[DenseLayer], x: &Mat) -> MlpCache {
    let mut inputs = Vec::with_capacity(layers.len());
    let mut current = x.clone();
    for layer in layers {
        let next = layer.forward_batch(&current);
        inputs.push(current);
        current = next;
    }
    MlpCache {
        inputs,
        output: current,
    }
}

/// Gradient of one layer, shaped like the layer itself.
#[derive(Clone, Debug)]
pub struct LayerGrads {
    pub dw: Mat,
    pub db: Vec<f64>,
}

/// Exact reverse-mode gradients for a cached forward pass.
///
/// `out_adjoint` is `dL/d(output)` with the same shape as `cache.output`.
/// Returns per-layer gradients (summed over the batch) and the adjoint of
/// the input batch.
pub fn mlp_gradients(
    layers: &[DenseLayer],
    cache: &MlpCache,
    out_adjoint: &Mat,
) -> Result<(Vec<LayerGrads>, Mat), NumericsError> {
    if cache.inputs.len() != layers.len() {
        return Err(NumericsError::CacheMismatch {
            detail: format!(
                "cache holds {} layer inputs, stack has {} layers",
                cache.inputs.len(),
                layers.len()
            ),
        });
    }
    for (l, layer) in layers.iter().enumerate() {
        if cache.inputs[l].cols() != layer.input_dim() {
            return Err(NumericsError::CacheMismatch {
                detail: format!(
                    "layer {} expects input dim {}, cache has {}",
                    l,
                    layer.input_dim(),
                    cache.inputs[l].cols()
                ),
            });
        }
    }
    let last = layers.len() - 1;
    if out_adjoint.rows() != cache.output.rows() || out_adjoint.cols() != cache.output.cols() {
        return Err(NumericsError::CacheMismatch {
            detail: format!(
                "adjoint is {}x{}, output is {}x{}",
                out_adjoint.rows(),
                out_adjoint.cols(),
                cache.output.rows(),
                cache.output.cols()
            ),
        });
    }

    let mut grads: Vec<Option<LayerGrads>> = (0..layers.len()).map(|_| None).collect();
    let mut dpost = out_adjoint.clone();
    for l in (0..layers.len()).rev() {
        let post = if l == last {
            &cache.output
        } else {
            &cache.inputs[l + 1]
        };
        // d(pre) = d(post) * act'(pre); tanh' recovered from the output.
        let mut dpre = dpost;
        if layers[l].activation == Activation::Tanh {
            for i in 0..dpre.rows() {
                let p = post.row(i);
                for (d, &y) in dpre.row_mut(i).iter_mut().zip(p) {
                    *d *= 1.0 - y * y;
                }
            }
        }
        let dw = dpre.matmul_tn(&cache.inputs[l]);
        let mut db = vec![0.0; layers[l].output_dim()];
        for i in 0..dpre.rows() {
            for (acc, &d) in db.iter_mut().zip(dpre.row(i)) {
                *acc += d;
            }
        }
        dpost = dpre.matmul(&layers[l].weights);
        grads[l] = Some(LayerGrads { dw, db });
    }
    let grads = grads.into_iter().map(|g| g.expect("filled above")).collect();
    Ok((grads, dpost))
}

/// Total number of scalar parameters in the stack.
pub fn param_count(layers: &[DenseLayer]) -> usize {
    layers
        .iter()
        .map(|l| l.weights.rows() * l.weights.cols() + l.bias.len())
        .sum()
}

/// Appends weights (row-major) then bias of each layer to `out`.
pub fn flatten_params(layers: &[DenseLayer], out: &mut Vec<f64>) {
    for l in layers {
        out.extend_from_slice(l.weights.as_slice());
        out.extend_from_slice(&l.bias);
    }
}

/// Writes a flat parameter vector back into the layers; layout matches
/// [`flatten_params`]. Returns the number of scalars consumed.
pub fn assign_params(layers: &mut [DenseLayer], flat: &[f64]) -> usize {
    let mut offset = 0;
    for l in layers {
        let nw = l.weights.rows() * l.weights.cols();
        l.weights
            .as_mut_slice()
            .copy_from_slice(&flat[offset..offset + nw]);
        offset += nw;
        let nb = l.bias.len();
        l.bias.copy_from_slice(&flat[offset..offset + nb]);
        offset += nb;
    }
    offset
}

/// Appends layer gradients in the [`flatten_params`] layout.
pub fn flatten_grads(grads: &[LayerGrads], out: &mut Vec<f64>) {
    for g in grads {
        out.extend_from_slice(g.dw.as_slice());
        out.extend_from_slice(&g.db);
    }
}
