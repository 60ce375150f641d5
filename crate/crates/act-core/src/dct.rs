//! Reference DCT-II transform pair, transform matrix, and fractional-index
//! signal evaluation. Everything here is the naive O(N²) form: this module
//! is the correctness oracle for the arithmetic transform, not a fast path.

use std::f64::consts::{FRAC_1_SQRT_2, PI};

use nalgebra::DMatrix;

use crate::error::{ActError, Result};

/// A finite block of real samples, indexed 0..N−1.
#[derive(Debug, Clone, PartialEq)]
pub struct Signal {
    samples: Vec<f64>,
}

impl Signal {
    pub fn new(samples: Vec<f64>) -> Result<Self> {
        check_finite(&samples)?;
        Ok(Self { samples })
    }

    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }

    pub fn samples(&self) -> &[f64] {
        &self.samples
    }

    pub fn get(&self, n: usize) -> f64 {
        self.samples[n]
    }

    pub fn mean(&self) -> f64 {
        self.samples.iter().sum::<f64>() / self.len() as f64
    }
}

/// DCT-II coefficients of a block, indexed 0..N−1. The α_k normalization is
/// baked into the transform operations rather than stored.
#[derive(Debug, Clone, PartialEq)]
pub struct Spectrum {
    coeffs: Vec<f64>,
}

impl Spectrum {
    pub fn new(coeffs: Vec<f64>) -> Result<Self> {
        check_finite(&coeffs)?;
        Ok(Self { coeffs })
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    pub fn get(&self, k: usize) -> f64 {
        self.coeffs[k]
    }
}

fn check_finite(values: &[f64]) -> Result<()> {
    if values.is_empty() {
        return Err(ActError::EmptySignal);
    }
    if let Some(index) = values.iter().position(|x| !x.is_finite()) {
        return Err(ActError::NonFinite {
            index,
            value: values[index],
        });
    }
    Ok(())
}

fn alpha(k: usize) -> f64 {
    if k == 0 {
        FRAC_1_SQRT_2
    } else {
        1.0
    }
}

/// Forward DCT-II: V_k = √(2/N) α_k Σ_n v_n cos(πk(n+1/2)/N).
pub fn dct_forward(v: &Signal) -> Spectrum {
    let n = v.len();
    let scale = (2.0 / n as f64).sqrt();
    let coeffs = (0..n)
        .map(|k| {
            let sum: f64 = v
                .samples()
                .iter()
                .enumerate()
                .map(|(i, &x)| x * (PI * k as f64 * (i as f64 + 0.5) / n as f64).cos())
                .sum();
            scale * alpha(k) * sum
        })
        .collect();
    Spectrum { coeffs }
}

/// Inverse DCT-II: v_n = √(2/N) Σ_k α_k V_k cos(πk(n+1/2)/N).
pub fn dct_inverse(spectrum: &Spectrum) -> Signal {
    let n = spectrum.len();
    let samples = (0..n)
        .map(|i| eval_fractional(spectrum, i as f64))
        .collect();
    Signal { samples }
}

/// The N×N DCT-II matrix C with C·v = dct_forward(v) and C⁻¹ = Cᵀ.
pub fn dct_matrix(n: usize) -> Result<DMatrix<f64>> {
    if n == 0 {
        return Err(ActError::domain("transform order must be at least 1"));
    }
    let scale = (2.0 / n as f64).sqrt();
    Ok(DMatrix::from_fn(n, n, |k, i| {
        scale * alpha(k) * (PI * k as f64 * (i as f64 + 0.5) / n as f64).cos()
    }))
}

/// Evaluates the inverse-transform kernel at an arbitrary, possibly
/// noninteger index r. At integer r in 0..N−1 this reproduces the sample.
pub fn eval_fractional(spectrum: &Spectrum, r: f64) -> f64 {
    let n = spectrum.len();
    let scale = (2.0 / n as f64).sqrt();
    let sum: f64 = spectrum
        .coeffs()
        .iter()
        .enumerate()
        .map(|(k, &vk)| alpha(k) * vk * (PI * k as f64 * (r + 0.5) / n as f64).cos())
        .sum();
    scale * sum
}

/// Ground truth for fractional-index samples: the value the DCT model
/// assigns to index r, obtained by transforming and evaluating the kernel.
pub fn reference_sample(v: &Signal, r: f64) -> f64 {
    eval_fractional(&dct_forward(v), r)
}
