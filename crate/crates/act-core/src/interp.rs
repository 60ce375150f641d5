//! Fractional-index interpolation for the arithmetic transform: the exact
//! weighting function in both its direct cosine-sum form and its
//! Dirichlet-kernel closed form, plus a cheap two-tap heuristic.

use std::f64::consts::PI;

use crate::dct::Signal;
use crate::error::{ActError, Result};

/// Arguments whose half-angle sine falls below this are evaluated through
/// the kernel's continuous limit instead of the 0/0 ratio.
pub const KERNEL_SINGULARITY_EPS: f64 = 1e-12;

/// Interpolation weights for one fractional index: the sample at `r` equals
/// the dot product of `weights` with the N uniform samples.
#[derive(Debug, Clone, PartialEq)]
pub struct WeightVector {
    r: f64,
    weights: Vec<f64>,
}

impl WeightVector {
    pub fn r(&self) -> f64 {
        self.r
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    pub fn dot(&self, v: &Signal) -> f64 {
        debug_assert_eq!(self.len(), v.len());
        self.weights
            .iter()
            .zip(v.samples())
            .map(|(w, x)| w * x)
            .sum()
    }
}

/// Tuning knobs of the two-tap heuristic. `alpha` and `edge_weight` are the
/// published fit for 8-point blocks; both stay adjustable.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HeuristicParams {
    /// Offsets below this snap to the nearest integer sample.
    pub eps: f64,
    /// Scale applied to every branch except the snap-to-sample early return.
    pub alpha: f64,
    /// Second-tap weight of the two outermost branches.
    pub edge_weight: f64,
}

impl Default for HeuristicParams {
    fn default() -> Self {
        Self {
            eps: 0.1,
            alpha: 1.2,
            edge_weight: -0.35,
        }
    }
}

impl HeuristicParams {
    pub fn with_eps(eps: f64) -> Self {
        Self {
            eps,
            ..Self::default()
        }
    }
}

/// How fractional samples are produced from the uniform ones.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum InterpMethod {
    /// Exact weighting function, direct cosine sum.
    Direct,
    /// Exact weighting function, Dirichlet-kernel closed form.
    Kernel,
    /// Two-tap approximate weights.
    Heuristic(HeuristicParams),
}

impl InterpMethod {
    pub fn is_exact(&self) -> bool {
        !matches!(self, Self::Heuristic(_))
    }
}

/// Exact weighting function,
/// w_n(r) = −1/N + (2/N) Σ_k cos(πk(n+1/2)/N) cos(πk(r+1/2)/N).
pub fn weights_direct(r: f64, n: usize) -> WeightVector {
    assert!(n >= 1, "block length must be at least 1");
    let nf = n as f64;
    let weights = (0..n)
        .map(|i| {
            let sum: f64 = (0..n)
                .map(|k| {
                    let kf = k as f64;
                    (PI * kf * (i as f64 + 0.5) / nf).cos() * (PI * kf * (r + 0.5) / nf).cos()
                })
                .sum();
            -1.0 / nf + 2.0 / nf * sum
        })
        .collect();
    WeightVector { r, weights }
}

/// Dirichlet kernel D_order(x) = sin((order+1/2)x)/sin(x/2), with the 0/0
/// points at multiples of 2π replaced by the continuous limit.
pub fn dirichlet_kernel(x: f64, order: usize) -> f64 {
    let half_sin = (x / 2.0).sin();
    let top = order as f64 + 0.5;
    if half_sin.abs() < KERNEL_SINGULARITY_EPS {
        return (2.0 * order as f64 + 1.0) * (top * x).cos() / (x / 2.0).cos();
    }
    (top * x).sin() / half_sin
}

/// Exact weighting function in closed form,
/// w_n(r) = (1/2N)[D_{N−1}(π(n+r+1)/N) + D_{N−1}(π(n−r)/N)].
pub fn weights_kernel(r: f64, n: usize) -> WeightVector {
    assert!(n >= 1, "block length must be at least 1");
    let nf = n as f64;
    let weights = (0..n)
        .map(|i| {
            let a = dirichlet_kernel(PI * (i as f64 + r + 1.0) / nf, n - 1);
            let b = dirichlet_kernel(PI * (i as f64 - r) / nf, n - 1);
            (a + b) / (2.0 * nf)
        })
        .collect();
    WeightVector { r, weights }
}

/// Canonicalizes a fractional index using the kernel's 2N-periodicity and
/// the reflection r ↦ 2N−1−r. The result lies in [−1/2, N−1/2] and the exact
/// weighting function takes the same value there.
pub fn fold_index(r: f64, n: usize) -> f64 {
    let period = 2.0 * n as f64;
    let mut s = (r + 0.5).rem_euclid(period);
    if s > n as f64 {
        s = period - s;
    }
    s - 0.5
}

fn set_tap(weights: &mut [f64], index: i64, value: f64) {
    if index >= 0 && (index as usize) < weights.len() {
        weights[index as usize] = value;
    }
}

/// Two-tap approximation of the weighting function. The input index is
/// folded first, then dispatched on the nearest integer [r] (round half away
/// from zero): interior indices blend the two neighbouring samples, the
/// outermost indices [r] = −1 and [r] = N use a fixed sample/edge-weight
/// pair, and offsets below `eps` return the nearest sample unscaled.
pub fn weights_heuristic(r: f64, n: usize, params: &HeuristicParams) -> Result<WeightVector> {
    assert!(n >= 1, "block length must be at least 1");
    if params.eps <= 0.0 {
        return Err(ActError::domain("heuristic tolerance must be positive"));
    }
    let folded = fold_index(r, n);
    let nearest = folded.round() as i64;
    let ni = n as i64;
    if !(-1..=ni).contains(&nearest) {
        return Err(ActError::domain(format!(
            "rounded index {nearest} outside [-1, {n}]"
        )));
    }
    let delta = folded - nearest as f64;
    let mut weights = vec![0.0; n];

    if delta.abs() < params.eps && (0..ni).contains(&nearest) {
        set_tap(&mut weights, nearest, 1.0);
        return Ok(WeightVector { r, weights });
    }

    let mag = delta.abs();
    if (1..=ni - 2).contains(&nearest) {
        set_tap(&mut weights, nearest - 1, (mag - delta) / 2.0);
        set_tap(&mut weights, nearest, 1.0 - mag);
        set_tap(&mut weights, nearest + 1, (mag + delta) / 2.0);
    } else if nearest == 0 {
        set_tap(&mut weights, 0, 1.0 - mag);
        set_tap(&mut weights, 1, (mag + delta) / 2.0);
    } else if nearest == ni - 1 {
        set_tap(&mut weights, ni - 2, (mag - delta) / 2.0);
        set_tap(&mut weights, ni - 1, 1.0 - mag);
    } else if nearest == -1 {
        set_tap(&mut weights, 0, 1.0);
        set_tap(&mut weights, 1, params.edge_weight);
    } else {
        set_tap(&mut weights, ni - 2, params.edge_weight);
        set_tap(&mut weights, ni - 1, 1.0);
    }
    for w in &mut weights {
        *w *= params.alpha;
    }
    Ok(WeightVector { r, weights })
}

/// Weight vector for `r` under the chosen method.
pub fn weights_for(r: f64, n: usize, method: &InterpMethod) -> Result<WeightVector> {
    match method {
        InterpMethod::Direct => Ok(weights_direct(r, n)),
        InterpMethod::Kernel => Ok(weights_kernel(r, n)),
        InterpMethod::Heuristic(params) => weights_heuristic(r, n, params),
    }
}

/// Fractional-index sample of `v` at `r`: the dot product of the method's
/// weight vector with the uniform samples.
pub fn interpolate(v: &Signal, r: f64, method: &InterpMethod) -> Result<f64> {
    let w = weights_for(r, v.len(), method)?;
    Ok(w.dot(v))
}

/// sinc(x) = sin(πx)/(πx), with sinc(0) = 1.
pub fn sinc(x: f64) -> f64 {
    if x.abs() < 1e-15 {
        return 1.0;
    }
    (PI * x).sin() / (PI * x)
}
