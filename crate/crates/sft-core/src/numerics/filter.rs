//! Median filtering with symmetric window shrink at the edges.

use super::NumericsError;

/// Sliding-window median. `window` must be odd; near the boundaries the
/// window shrinks symmetrically so output length equals input length.
pub fn median_filter(seq: &[f64], window: usize) -> Result<Vec<f64>, NumericsError> {
    if window == 0 || window % 2 == 0 {
        return Err(NumericsError::EvenWindow { window });
    }
    let n = seq.len();
    let mut out = Vec::with_capacity(n);
    let half = window / 2;
    let mut scratch = Vec::with_capacity(window);
    for i in 0..n {
        let reach = half.min(i).min(n - 1 - i);
        scratch.clear();
        scratch.extend_from_slice(&seq[i - reach..=i + reach]);
        scratch.sort_by(|a, b| a.partial_cmp(b).expect("finite values"));
        out.push(scratch[reach]);
    }
    Ok(out)
}
