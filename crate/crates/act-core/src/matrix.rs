//! Matrix-vector form of the arithmetic transform: Möbius and divisibility
//! matrices, the weighting-average matrix, and the split of the DCT matrix
//! into a Möbius part and a rank-one Mertens part, C = C₁ + C₂.
//!
//! Everything here fixes β = 0 (sample points 2mN/k − 1/2); matrices are
//! dense, N ≤ 64 being the intended scale.

use std::f64::consts::SQRT_2;

use nalgebra::{DMatrix, DVector};

use crate::dct::dct_matrix;
use crate::error::{ActError, Result};
use crate::interp::weights_direct;
use crate::numtheory::{mertens, mobius};

/// Upper-triangular matrix with entry (i, j) = μ(j/i) when i | j (1-based),
/// zero otherwise. Unit diagonal, determinant 1; its inverse is the 0/1
/// divisibility matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct MobiusMatrix {
    n: usize,
    entries: DMatrix<f64>,
}

impl MobiusMatrix {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn entries(&self) -> &DMatrix<f64> {
        &self.entries
    }

    pub fn into_entries(self) -> DMatrix<f64> {
        self.entries
    }
}

pub fn mobius_matrix(n: usize) -> Result<MobiusMatrix> {
    if n == 0 {
        return Err(ActError::domain("matrix order must be at least 1"));
    }
    let entries = DMatrix::from_fn(n, n, |i, j| {
        let (i, j) = (i + 1, j + 1);
        if j % i == 0 {
            f64::from(mobius((j / i) as u64).expect("index starts at 1"))
        } else {
            0.0
        }
    });
    Ok(MobiusMatrix { n, entries })
}

/// Entry (i, j) = 1 when i divides j (1-based), zero otherwise. Inverse of
/// the Möbius matrix in exact integer arithmetic.
pub fn divisor_matrix(n: usize) -> Result<DMatrix<f64>> {
    if n == 0 {
        return Err(ActError::domain("matrix order must be at least 1"));
    }
    Ok(DMatrix::from_fn(n, n, |i, j| {
        if (j + 1) % (i + 1) == 0 {
            1.0
        } else {
            0.0
        }
    }))
}

/// The (N−1)×N weighting-average matrix,
/// W_{k,n} = (1/k) Σ_{m=0..k−1} w_n(2mN/k − 1/2); row k applied to a signal
/// yields its k-th average, and every row sums to 1.
pub fn weight_average_matrix(n: usize) -> Result<DMatrix<f64>> {
    if n < 2 {
        return Err(ActError::domain(
            "the weighting-average matrix needs order at least 2",
        ));
    }
    let mut w = DMatrix::zeros(n - 1, n);
    for k in 1..n {
        for m in 0..k {
            let r = 2.0 * m as f64 * n as f64 / k as f64 - 0.5;
            let row = weights_direct(r, n);
            for (col, &value) in row.weights().iter().enumerate() {
                w[(k - 1, col)] += value / k as f64;
            }
        }
    }
    Ok(w)
}

/// The pieces of the decomposition C = C₁ + C₂.
#[derive(Debug, Clone)]
pub struct DecompositionBundle {
    /// diag(1, M_{N−1}): the Möbius matrix acting on components 1..N−1.
    pub m_ext: DMatrix<f64>,
    /// diag(√2, 1, ..., 1). The DC entry rescales the padding row's plain
    /// mean (1/N) Σ v up to the zeroth average (√2/N) Σ v.
    pub alpha_diag: DMatrix<f64>,
    /// The (N−1)×N weighting-average matrix.
    pub w: DMatrix<f64>,
    /// W augmented with a first row of 1/N entries.
    pub w_ext: DMatrix<f64>,
    /// Möbius part: √(N/2) · M′ · α · W′.
    pub c1: DMatrix<f64>,
    /// Mertens part: −√(1/2N) · diag(0, M(⌊(N−1)/1⌋), ...) · 1·1ᵀ. Rank one;
    /// annihilates zero-mean signals.
    pub c2: DMatrix<f64>,
}

pub fn build_decomposition(n: usize) -> Result<DecompositionBundle> {
    if n < 2 {
        return Err(ActError::domain("the decomposition needs order at least 2"));
    }
    let mobius_part = mobius_matrix(n - 1)?;
    let mut m_ext = DMatrix::zeros(n, n);
    m_ext[(0, 0)] = 1.0;
    m_ext
        .view_mut((1, 1), (n - 1, n - 1))
        .copy_from(mobius_part.entries());

    let alpha_diag = DMatrix::from_diagonal(&DVector::from_fn(n, |k, _| {
        if k == 0 {
            SQRT_2
        } else {
            1.0
        }
    }));

    let w = weight_average_matrix(n)?;
    let mut w_ext = DMatrix::zeros(n, n);
    for col in 0..n {
        w_ext[(0, col)] = 1.0 / n as f64;
    }
    w_ext.view_mut((1, 0), (n - 1, n)).copy_from(&w);

    let c1 = (n as f64 / 2.0).sqrt() * &m_ext * &alpha_diag * &w_ext;

    let scale = -(1.0 / (2.0 * n as f64)).sqrt();
    let mut mertens_diag = vec![0.0; n];
    for (k, entry) in mertens_diag.iter_mut().enumerate().skip(1) {
        *entry = mertens(((n - 1) / k) as u64).expect("cap >= 1") as f64;
    }
    let c2 = DMatrix::from_fn(n, n, |i, _| scale * mertens_diag[i]);

    Ok(DecompositionBundle {
        m_ext,
        alpha_diag,
        w,
        w_ext,
        c1,
        c2,
    })
}

/// Convenience: the DCT matrix the decomposition must reproduce.
pub fn reference_matrix(n: usize) -> Result<DMatrix<f64>> {
    dct_matrix(n)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dct::{dct_forward, Signal};
    use crate::engine::{act_averages, build_plan};
    use crate::interp::InterpMethod;

    fn pseudo_random(seed: u64, len: usize) -> Vec<f64> {
        let mut state = seed.wrapping_mul(0x9e3779b97f4a7c15).max(1);
        (0..len)
            .map(|_| {
                state ^= state << 13;
                state ^= state >> 7;
                state ^= state << 17;
                (state >> 11) as f64 / (1u64 << 53) as f64 * 2.0 - 1.0
            })
            .collect()
    }

    #[test]
    fn mobius_matrix_order_one() {
        let m = mobius_matrix(1).unwrap();
        assert_eq!(m.entries()[(0, 0)], 1.0);
    }

    #[test]
    fn mobius_matrix_order_four() {
        let m = mobius_matrix(4).unwrap();
        #[rustfmt::skip]
        let expected = [
            1.0, -1.0, -1.0,  0.0,
            0.0,  1.0,  0.0, -1.0,
            0.0,  0.0,  1.0,  0.0,
            0.0,  0.0,  0.0,  1.0,
        ];
        for i in 0..4 {
            for j in 0..4 {
                assert_eq!(m.entries()[(i, j)], expected[4 * i + j], "({i}, {j})");
            }
        }
    }

    #[test]
    fn mobius_matrix_has_unit_determinant() {
        for n in [2usize, 5, 16, 32] {
            let det = mobius_matrix(n).unwrap().into_entries().determinant();
            assert!((det - 1.0).abs() < 1e-9, "n = {n}, det = {det}");
        }
    }

    #[test]
    fn zero_order_is_rejected() {
        assert!(mobius_matrix(0).is_err());
        assert!(divisor_matrix(0).is_err());
    }

    #[test]
    fn divisor_matrix_inverts_mobius_matrix_exactly() {
        for n in [1usize, 4, 16, 64] {
            let m = mobius_matrix(n).unwrap();
            let d = divisor_matrix(n).unwrap();
            let product = m.entries() * &d;
            for i in 0..n {
                for j in 0..n {
                    let expected = if i == j { 1.0 } else { 0.0 };
                    assert_eq!(product[(i, j)], expected, "n = {n}, ({i}, {j})");
                }
            }
        }
    }

    #[test]
    fn divisor_matrix_entries() {
        let d = divisor_matrix(6).unwrap();
        assert_eq!(d[(1, 5)], 1.0);
        assert_eq!(d[(3, 5)], 0.0);
    }

    #[test]
    fn weight_average_rows_sum_to_one() {
        let w = weight_average_matrix(8).unwrap();
        for k in 0..7 {
            let sum: f64 = w.row(k).iter().sum();
            assert!((sum - 1.0).abs() < 1e-10, "row {k}");
        }
    }

    #[test]
    fn first_row_is_the_half_shift_weight_vector() {
        let n = 8;
        let w = weight_average_matrix(n).unwrap();
        let reference = weights_direct(-0.5, n);
        for col in 0..n {
            assert!((w[(0, col)] - reference.weights()[col]).abs() < 1e-12);
        }
    }

    #[test]
    fn weight_average_matrix_reproduces_plan_averages() {
        let n = 8;
        let w = weight_average_matrix(n).unwrap();
        let data = pseudo_random(9, n);
        let signal = Signal::new(data.clone()).unwrap();
        let plan = build_plan(n, 0.0, InterpMethod::Direct).unwrap();
        let averages = act_averages(&signal, &plan).unwrap();
        let by_matrix = &w * DVector::from_vec(data);
        for k in 1..n {
            assert!((by_matrix[k - 1] - averages.s(k)).abs() < 1e-10, "k = {k}");
        }
    }

    #[test]
    fn weight_average_matrix_needs_order_two() {
        assert!(weight_average_matrix(1).is_err());
    }

    #[test]
    fn decomposition_sums_to_the_dct_matrix() {
        let n = 8;
        let bundle = build_decomposition(n).unwrap();
        let c = reference_matrix(n).unwrap();
        let diff = (&bundle.c1 + &bundle.c2) - c;
        assert!(diff.abs().max() < 1e-10);
    }

    #[test]
    fn mertens_part_annihilates_zero_mean_signals() {
        let n = 8;
        let bundle = build_decomposition(n).unwrap();
        let mut data = pseudo_random(13, n);
        let mean = data.iter().sum::<f64>() / n as f64;
        for x in &mut data {
            *x -= mean;
        }
        let out = &bundle.c2 * DVector::from_vec(data);
        assert!(out.abs().max() < 1e-10);
    }

    #[test]
    fn mobius_part_transforms_zero_mean_signals() {
        let n = 8;
        let bundle = build_decomposition(n).unwrap();
        let mut data = pseudo_random(17, n);
        let mean = data.iter().sum::<f64>() / n as f64;
        for x in &mut data {
            *x -= mean;
        }
        let signal = Signal::new(data.clone()).unwrap();
        let reference = dct_forward(&signal);
        let out = &bundle.c1 * DVector::from_vec(data);
        for k in 0..n {
            assert!((out[k] - reference.get(k)).abs() < 1e-10, "k = {k}");
        }
    }

    #[test]
    fn extended_mobius_matrix_maps_averages_to_mobius_part() {
        let n = 8;
        let bundle = build_decomposition(n).unwrap();
        let data = pseudo_random(21, n);
        let signal = Signal::new(data.clone()).unwrap();
        let plan = build_plan(n, 0.0, InterpMethod::Direct).unwrap();
        let averages = act_averages(&signal, &plan).unwrap();
        let mut s = DVector::zeros(n);
        s[0] = averages.s0();
        for k in 1..n {
            s[k] = averages.s(k);
        }
        let v1 = (n as f64 / 2.0).sqrt() * &bundle.m_ext * s;
        let by_c1 = &bundle.c1 * DVector::from_vec(data);
        for k in 0..n {
            assert!((v1[k] - by_c1[k]).abs() < 1e-10, "k = {k}");
        }
    }

    #[test]
    fn dc_coefficient_comes_from_the_zeroth_average() {
        let n = 8;
        let data = pseudo_random(29, n);
        let signal = Signal::new(data).unwrap();
        let plan = build_plan(n, 0.0, InterpMethod::Direct).unwrap();
        let averages = act_averages(&signal, &plan).unwrap();
        let spectrum = dct_forward(&signal);
        assert!((spectrum.get(0) - (n as f64 / 2.0).sqrt() * averages.s0()).abs() < 1e-12);
    }

    #[test]
    fn decomposition_needs_order_two() {
        assert!(build_decomposition(1).is_err());
    }
}
