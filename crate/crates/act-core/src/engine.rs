//! The arithmetic cosine transform: sample-point planning, nonuniform
//! averages, and Möbius/Dirichlet reconstruction of the DCT-II spectrum.
//!
//! A plan fixes the block length N, the shift β, and the interpolation
//! method. Its k-th component (k = 1..N−1) averages the signal at the k
//! fractional indices 2(m+β)N/k − 1/2; inverting those averages through the
//! Dirichlet inverse of cos(2πnβ) recovers the spectrum. β = 0 gives the
//! Möbius sequence, β = 1/2 the signed power-of-two sequence, and any β with
//! cos(2πβ) ≠ 0 works through numeric inversion.

use std::collections::BTreeMap;
use std::f64::consts::TAU;

use num_rational::Ratio;

use crate::dct::{dct_forward, Signal, Spectrum};
use crate::error::{ActError, Result};
use crate::interp::{fold_index, interpolate, weights_for, InterpMethod, WeightVector};
use crate::numtheory::{
    alternating_dirichlet_inverse, coefficient_sequence, dirichlet_inverse, mobius_sequence,
    partial_sums, ArithSequence, INVERTIBILITY_THRESHOLD,
};

/// Addition/multiplication counts of the reconstruction stage.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct OpCounts {
    pub additions: u64,
    pub multiplications: u64,
}

/// Precomputed sample points, interpolation weights, and inverse sequence
/// for one (N, β, method) combination. Immutable once built; a single plan
/// can serve any number of transforms.
#[derive(Debug, Clone)]
pub struct ActPlan {
    n: usize,
    beta: f64,
    method: InterpMethod,
    points_per_k: Vec<Vec<f64>>,
    fractions_per_k: Option<Vec<Vec<Ratio<i64>>>>,
    unique_points: Vec<f64>,
    unique_fractions: Option<Vec<Ratio<i64>>>,
    point_index: Vec<Vec<usize>>,
    weight_rows: Vec<WeightVector>,
    inverse_seq: ArithSequence,
    correction_sums: ArithSequence,
}

impl ActPlan {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    pub fn method(&self) -> InterpMethod {
        self.method
    }

    /// Raw (unfolded) sample points of component k, k = 1..N−1.
    pub fn raw_points(&self, k: usize) -> &[f64] {
        &self.points_per_k[k - 1]
    }

    /// Raw points of component k as exact fractions; present when β is 0 or 1/2.
    pub fn raw_fractions(&self, k: usize) -> Option<&[Ratio<i64>]> {
        self.fractions_per_k.as_ref().map(|f| f[k - 1].as_slice())
    }

    /// Deduplicated, folded sample points, ascending.
    pub fn unique_points(&self) -> &[f64] {
        &self.unique_points
    }

    /// The folded point set as exact fractions; present when β is 0 or 1/2.
    pub fn unique_fractions(&self) -> Option<&[Ratio<i64>]> {
        self.unique_fractions.as_deref()
    }

    /// For component k, the indices into `unique_points` of its k samples.
    pub fn point_indices(&self, k: usize) -> &[usize] {
        &self.point_index[k - 1]
    }

    /// One weight vector per unique point, same order as `unique_points`.
    pub fn weight_rows(&self) -> &[WeightVector] {
        &self.weight_rows
    }

    /// Dirichlet inverse b of the coefficient sequence, terms 1..N−1.
    pub fn inverse_seq(&self) -> &ArithSequence {
        &self.inverse_seq
    }

    /// Prefix sums B of the inverse sequence (the Mertens function when β = 0).
    pub fn correction_sums(&self) -> &ArithSequence {
        &self.correction_sums
    }
}

/// The nonuniform averages of one signal: S_k for k = 1..N−1 plus the
/// separately defined zeroth average S₀ = (√2/N) Σ v_i.
#[derive(Debug, Clone, PartialEq)]
pub struct AverageVector {
    s0: f64,
    s: Vec<f64>,
}

impl AverageVector {
    pub fn new(s0: f64, s: Vec<f64>) -> Self {
        Self { s0, s }
    }

    pub fn s0(&self) -> f64 {
        self.s0
    }

    /// S_k for k = 1..count. Panics when k = 0 or k exceeds the count.
    pub fn s(&self, k: usize) -> f64 {
        self.s[k - 1]
    }

    /// S_1..S_{N−1} as a slice.
    pub fn components(&self) -> &[f64] {
        &self.s
    }

    pub fn count(&self) -> usize {
        self.s.len()
    }
}

/// A finished transform: the spectrum plus how it was produced and what the
/// reconstruction stage cost.
#[derive(Debug, Clone)]
pub struct TransformReport {
    pub spectrum: Spectrum,
    pub n: usize,
    pub beta: f64,
    pub method: InterpMethod,
    pub op_counts: OpCounts,
    /// Mean squared error against the naive DCT; populated for the
    /// heuristic method only.
    pub mse_vs_reference: Option<f64>,
}

fn rational_point(m: usize, k: usize, n: usize, beta: f64) -> Ratio<i64> {
    let shift = if beta == 0.5 { 2 * n as i64 } else { 0 };
    let num = 4 * m as i64 * n as i64 + shift - k as i64;
    Ratio::new(num, 2 * k as i64)
}

fn fold_rational(r: Ratio<i64>, n: i64) -> Ratio<i64> {
    let period = Ratio::from_integer(2 * n);
    let half = Ratio::new(1, 2);
    let mut s = (r + half) % period;
    if s < Ratio::from_integer(0) {
        s += period;
    }
    if s > Ratio::from_integer(n) {
        s = period - s;
    }
    s - half
}

fn inverse_sequence(beta: f64, len: usize) -> Result<ArithSequence> {
    if beta == 0.0 {
        mobius_sequence(len)
    } else if beta == 0.5 {
        ArithSequence::from_fn(len, |l| {
            alternating_dirichlet_inverse(l as u64).expect("index starts at 1")
        })
    } else {
        let coeffs = coefficient_sequence(beta, len)?;
        dirichlet_inverse(&coeffs, len)
    }
}

/// Builds the transform plan for block length `n` and shift `beta`.
///
/// Fails with [`ActError::NotInvertible`] when cos(2πβ) vanishes (β = 1/4
/// being the canonical case) and with a domain error when n < 2.
pub fn build_plan(n: usize, beta: f64, method: InterpMethod) -> Result<ActPlan> {
    if n < 2 {
        return Err(ActError::domain(
            "the arithmetic transform needs a block length of at least 2",
        ));
    }
    let leading = (TAU * beta).cos();
    if leading.abs() < INVERTIBILITY_THRESHOLD {
        return Err(ActError::not_invertible(leading));
    }

    let mut points_per_k = Vec::with_capacity(n - 1);
    for k in 1..n {
        let points: Vec<f64> = (0..k)
            .map(|m| 2.0 * (m as f64 + beta) * n as f64 / k as f64 - 0.5)
            .collect();
        points_per_k.push(points);
    }

    let exact_fractions = beta == 0.0 || beta == 0.5;
    let (unique_points, unique_fractions, fractions_per_k, point_index) = if exact_fractions {
        let mut canon_of: Vec<Vec<Ratio<i64>>> = Vec::with_capacity(n - 1);
        let mut raw: Vec<Vec<Ratio<i64>>> = Vec::with_capacity(n - 1);
        let mut set: BTreeMap<Ratio<i64>, usize> = BTreeMap::new();
        for k in 1..n {
            let mut raw_k = Vec::with_capacity(k);
            let mut canon_k = Vec::with_capacity(k);
            for m in 0..k {
                let point = rational_point(m, k, n, beta);
                let canon = fold_rational(point, n as i64);
                set.insert(canon, 0);
                raw_k.push(point);
                canon_k.push(canon);
            }
            raw.push(raw_k);
            canon_of.push(canon_k);
        }
        for (slot, (_, index)) in set.iter_mut().enumerate() {
            *index = slot;
        }
        let fractions: Vec<Ratio<i64>> = set.keys().copied().collect();
        let points: Vec<f64> = fractions
            .iter()
            .map(|f| *f.numer() as f64 / *f.denom() as f64)
            .collect();
        let index: Vec<Vec<usize>> = canon_of
            .iter()
            .map(|row| row.iter().map(|c| set[c]).collect())
            .collect();
        (points, Some(fractions), Some(raw), index)
    } else {
        // Float keys: fold, sort, and merge anything closer than the
        // dedup tolerance.
        const DEDUP_TOL: f64 = 1e-12;
        let mut folded: Vec<(f64, usize, usize)> = Vec::new();
        for (ki, points) in points_per_k.iter().enumerate() {
            for (m, &p) in points.iter().enumerate() {
                folded.push((fold_index(p, n), ki, m));
            }
        }
        folded.sort_by(|a, b| a.0.total_cmp(&b.0));
        let mut points: Vec<f64> = Vec::new();
        let mut index: Vec<Vec<usize>> = (1..n).map(|k| vec![0usize; k]).collect();
        for (value, ki, m) in folded {
            match points.last() {
                Some(&last) if (value - last).abs() <= DEDUP_TOL => {}
                _ => points.push(value),
            }
            index[ki][m] = points.len() - 1;
        }
        (points, None, None, index)
    };

    let weight_rows: Vec<WeightVector> = unique_points
        .iter()
        .map(|&r| weights_for(r, n, &method))
        .collect::<Result<_>>()?;

    let inverse_seq = inverse_sequence(beta, n - 1)?;
    let correction_sums = partial_sums(&inverse_seq);

    Ok(ActPlan {
        n,
        beta,
        method,
        points_per_k,
        fractions_per_k,
        unique_points,
        unique_fractions,
        point_index,
        weight_rows,
        inverse_seq,
        correction_sums,
    })
}

/// Computes the plan's averages for one signal: each unique point is
/// interpolated once, then S_k averages its k samples.
pub fn act_averages(v: &Signal, plan: &ActPlan) -> Result<AverageVector> {
    if v.len() != plan.n {
        return Err(ActError::size(format!(
            "signal has {} samples, plan expects {}",
            v.len(),
            plan.n
        )));
    }
    let samples: Vec<f64> = plan.weight_rows.iter().map(|w| w.dot(v)).collect();
    let s = (1..plan.n)
        .map(|k| {
            let sum: f64 = plan.point_index[k - 1].iter().map(|&i| samples[i]).sum();
            sum / k as f64
        })
        .collect();
    let s0 = 2.0f64.sqrt() / plan.n as f64 * v.samples().iter().sum::<f64>();
    Ok(AverageVector::new(s0, s))
}

/// The predecessor averages S_k = (1/2k) Σ_{m=0..2k−1} v at mN/k − 1/2,
/// computed with exact interpolation.
///
/// For a zero-mean signal these collapse onto the even harmonics only,
/// S_k = √(2/N) Σ_{s even} V_{sk}; the coefficient pattern {0, 1, 0, 1, ...}
/// has a zero leading term, so no Dirichlet inverse exists and this average
/// family cannot be inverted into a spectrum. With a nonzero mean the DC
/// term enters through the factor γ = 1/√2 − 1 as √(2/N)(γ + 1)V₀.
pub fn aft_like_averages(v: &Signal) -> Result<AverageVector> {
    let n = v.len();
    if n < 2 {
        return Err(ActError::domain(
            "the average family needs a block length of at least 2",
        ));
    }
    let mut s = Vec::with_capacity(n - 1);
    for k in 1..n {
        let mut sum = 0.0;
        for m in 0..2 * k {
            let r = m as f64 * n as f64 / k as f64 - 0.5;
            sum += interpolate(v, r, &InterpMethod::Direct)?;
        }
        s.push(sum / (2 * k) as f64);
    }
    let s0 = 2.0f64.sqrt() / n as f64 * v.samples().iter().sum::<f64>();
    Ok(AverageVector::new(s0, s))
}

/// Inverts the averages into the spectrum:
/// V_k = √(N/2) (Σ_{l=1..⌊(N−1)/k⌋} b_l S_{kl} − v̄ B(⌊(N−1)/k⌋)) and
/// V₀ = √N v̄. The B term removes the mean's contribution; with β = 0 it is
/// the Mertens function.
///
/// Counts one addition per nonzero b_l term. Multiplications cover the
/// √(N/2) scaling per component, the v̄·B product when the mean is nonzero,
/// any b_l whose magnitude is neither 0 nor 1, and the √N·v̄ product for V₀.
pub fn reconstruct_spectrum(
    averages: &AverageVector,
    v_mean: f64,
    plan: &ActPlan,
) -> Result<(Spectrum, OpCounts)> {
    let n = plan.n;
    if averages.count() != n - 1 {
        return Err(ActError::size(format!(
            "average vector has {} components, plan expects {}",
            averages.count(),
            n - 1
        )));
    }
    let mut ops = OpCounts::default();
    let scale = (n as f64 / 2.0).sqrt();
    let mut coeffs = vec![0.0; n];
    coeffs[0] = (n as f64).sqrt() * v_mean;
    if v_mean != 0.0 {
        ops.multiplications += 1;
    }
    for (k, coeff) in coeffs.iter_mut().enumerate().skip(1) {
        let cap = (n - 1) / k;
        let mut acc = 0.0;
        for l in 1..=cap {
            let b = plan.inverse_seq.get(l);
            if b != 0.0 {
                acc += b * averages.s(k * l);
                ops.additions += 1;
                if b.abs() != 1.0 {
                    ops.multiplications += 1;
                }
            }
        }
        if v_mean != 0.0 {
            acc -= v_mean * plan.correction_sums.get(cap);
            ops.multiplications += 1;
        }
        *coeff = scale * acc;
        ops.multiplications += 1;
    }
    Ok((Spectrum::new(coeffs)?, ops))
}

/// Full forward transform of one signal under a prebuilt plan.
///
/// The signal is split into its mean and a zero-mean part; the averages of
/// the zero-mean part are inverted with no correction term and the DC
/// coefficient √N·v̄ is set directly. For exact interpolation this is
/// algebraically the same as correcting raw averages by v̄·B, and it keeps
/// the approximate method's error proportional to the AC content alone.
pub fn forward_with_plan(v: &Signal, plan: &ActPlan) -> Result<TransformReport> {
    if v.len() != plan.n {
        return Err(ActError::size(format!(
            "signal has {} samples, plan expects {}",
            v.len(),
            plan.n
        )));
    }
    let mean = v.mean();
    let centered = Signal::new(v.samples().iter().map(|x| x - mean).collect())?;
    let averages = act_averages(&centered, plan)?;
    let (mut spectrum, mut ops) = reconstruct_spectrum(&averages, 0.0, plan)?;
    let dc = (plan.n as f64).sqrt() * mean;
    if mean != 0.0 {
        ops.multiplications += 1;
    }
    let mut coeffs = spectrum.coeffs().to_vec();
    coeffs[0] = dc;
    spectrum = Spectrum::new(coeffs)?;

    let mse_vs_reference = if plan.method.is_exact() {
        None
    } else {
        let reference = dct_forward(v);
        let sum: f64 = spectrum
            .coeffs()
            .iter()
            .zip(reference.coeffs())
            .map(|(a, b)| (a - b) * (a - b))
            .sum();
        Some(sum / plan.n as f64)
    };

    Ok(TransformReport {
        spectrum,
        n: plan.n,
        beta: plan.beta,
        method: plan.method,
        op_counts: ops,
        mse_vs_reference,
    })
}

/// Builds a plan and transforms one signal. Blocks of length 1 are routed
/// to the plain DCT, which is the identity there.
pub fn forward_act(v: &Signal, beta: f64, method: InterpMethod) -> Result<TransformReport> {
    if v.len() == 1 {
        return Ok(TransformReport {
            spectrum: dct_forward(v),
            n: 1,
            beta,
            method,
            op_counts: OpCounts::default(),
            mse_vs_reference: None,
        });
    }
    let plan = build_plan(v.len(), beta, method)?;
    forward_with_plan(v, &plan)
}
