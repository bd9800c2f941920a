//! Hermite-basis discretization of the node-sampling operator and its
//! smallest singular value, the numerical injectivity probe.
//!
//! The basis is orthonormal for the `e^{-2 pi i x xi}` convention:
//! `h_0(x) = 2^{1/4} e^{-pi x^2}` and `h_hat_n = (-i)^n h_n`.

use super::{SampledFunction, DEFAULT_H, DEFAULT_X};
use crate::error::{Error, Result};
use crate::nodes::NodeSequence;
use nalgebra::DMatrix;
use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

/// Values `h_0(x) .. h_{n_max - 1}(x)` by the stable normalized three-term
/// recurrence `h_{n+1} = sqrt(2/(n+1)) y h_n - sqrt(n/(n+1)) h_{n-1}`,
/// `y = sqrt(2 pi) x`.
pub fn hermite_values(n_max: usize, x: f64) -> Vec<f64> {
    let mut out = Vec::with_capacity(n_max);
    if n_max == 0 {
        return out;
    }
    let y = (2.0 * std::f64::consts::PI).sqrt() * x;
    let h0 = 2f64.powf(0.25) * (-std::f64::consts::PI * x * x).exp();
    out.push(h0);
    if n_max == 1 {
        return out;
    }
    out.push(2f64.sqrt() * y * h0);
    for n in 1..n_max - 1 {
        let nf = n as f64;
        let next = (2.0 / (nf + 1.0)).sqrt() * y * out[n] - (nf / (nf + 1.0)).sqrt() * out[n - 1];
        out.push(next);
    }
    out
}

/// Real matrix discretizing the constraints `f|_L = 0, f_hat|_M = 0` on the
/// span of the first `basis_order` Hermite functions with real
/// coefficients. Every lambda node contributes one row `h_n(l)`; every mu
/// node contributes two rows (real and imaginary parts of `(-i)^n h_n(m)`).
#[derive(Debug, Clone)]
pub struct SamplingOperator {
    pub basis_order: usize,
    pub lambda_nodes: Vec<f64>,
    pub mu_nodes: Vec<f64>,
    pub matrix: DMatrix<f64>,
}

/// Build the sampling operator for a node pair. One of the two windows may
/// be empty.
pub fn build_sampling_operator(
    lambda: &NodeSequence,
    mu: &NodeSequence,
    basis_order: usize,
) -> Result<SamplingOperator> {
    if basis_order < 1 {
        return Err(Error::Parameter("basis order must be >= 1".into()));
    }
    if lambda.is_empty() && mu.is_empty() {
        return Err(Error::Parameter("need at least one node on either side".into()));
    }
    let rows = lambda.len() + 2 * mu.len();
    let mut matrix = DMatrix::zeros(rows, basis_order);
    for (r, &l) in lambda.values.iter().enumerate() {
        let h = hermite_values(basis_order, l);
        for (c, v) in h.iter().enumerate() {
            matrix[(r, c)] = *v;
        }
    }
    for (i, &m) in mu.values.iter().enumerate() {
        let h = hermite_values(basis_order, m);
        let re_row = lambda.len() + 2 * i;
        let im_row = re_row + 1;
        for (c, v) in h.iter().enumerate() {
            // (-i)^n cycles 1, -i, -1, i
            match c % 4 {
                0 => matrix[(re_row, c)] = *v,
                1 => matrix[(im_row, c)] = -*v,
                2 => matrix[(re_row, c)] = -*v,
                _ => matrix[(im_row, c)] = *v,
            }
        }
    }
    Ok(SamplingOperator {
        basis_order,
        lambda_nodes: lambda.values.clone(),
        mu_nodes: mu.values.clone(),
        matrix,
    })
}

/// Singular data of a sampling operator.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ProbeResult {
    /// All singular values, descending.
    pub singular_values: Vec<f64>,
    pub sigma_min: f64,
    /// Right singular vector of the smallest singular value: Hermite
    /// coefficients of the near-null witness.
    pub null_vector: Vec<f64>,
    /// `max |f(lambda)|` over the lambda nodes for the witness.
    pub residual_lambda: f64,
    /// `max |f_hat(mu)|` over the mu nodes for the witness.
    pub residual_mu: f64,
    pub h_norm_of_witness: f64,
}

/// Dense SVD of the operator; the witness is the unit coefficient vector
/// attaining `sigma_min`.
pub fn smallest_singular(op: &SamplingOperator) -> Result<ProbeResult> {
    if op.matrix.is_empty() {
        return Err(Error::Parameter("operator matrix is empty".into()));
    }
    // pad underdetermined operators with zero rows so the thin SVD carries a
    // full set of right singular vectors (the null space is genuine there)
    let matrix = if op.matrix.nrows() < op.basis_order {
        let mut padded = DMatrix::zeros(op.basis_order, op.basis_order);
        padded.view_mut((0, 0), (op.matrix.nrows(), op.basis_order)).copy_from(&op.matrix);
        padded
    } else {
        op.matrix.clone()
    };
    let svd = matrix.svd(false, true);
    let v_t = svd.v_t.ok_or_else(|| Error::Numeric("SVD did not return V^T".into()))?;
    let mut order: Vec<usize> = (0..svd.singular_values.len()).collect();
    order.sort_by(|&a, &b| {
        svd.singular_values[b].partial_cmp(&svd.singular_values[a]).unwrap()
    });
    let singular_values: Vec<f64> = order.iter().map(|&i| svd.singular_values[i]).collect();
    let sigma_min = *singular_values.last().unwrap();
    let idx = *order.last().unwrap();
    let null_vector: Vec<f64> = v_t.row(idx).iter().copied().collect();

    let residual_lambda = op
        .lambda_nodes
        .iter()
        .map(|&l| eval_coeffs(&null_vector, l).norm())
        .fold(0.0f64, f64::max);
    let residual_mu = op
        .mu_nodes
        .iter()
        .map(|&m| eval_coeffs_fourier(&null_vector, m).norm())
        .fold(0.0f64, f64::max);

    let witness = witness_function(&null_vector)?;
    let h_norm_of_witness = witness.h_norm().unwrap_or(f64::NAN);
    Ok(ProbeResult {
        singular_values,
        sigma_min,
        null_vector,
        residual_lambda,
        residual_mu,
        h_norm_of_witness,
    })
}

/// `f(x) = sum c_n h_n(x)`.
pub fn eval_coeffs(coeffs: &[f64], x: f64) -> Complex64 {
    let h = hermite_values(coeffs.len(), x);
    let v: f64 = coeffs.iter().zip(&h).map(|(c, hv)| c * hv).sum();
    Complex64::new(v, 0.0)
}

/// `f_hat(xi) = sum c_n (-i)^n h_n(xi)`.
pub fn eval_coeffs_fourier(coeffs: &[f64], xi: f64) -> Complex64 {
    let h = hermite_values(coeffs.len(), xi);
    let mut acc = Complex64::ZERO;
    for (n, (c, hv)) in coeffs.iter().zip(&h).enumerate() {
        let phase = match n % 4 {
            0 => Complex64::new(1.0, 0.0),
            1 => Complex64::new(0.0, -1.0),
            2 => Complex64::new(-1.0, 0.0),
            _ => Complex64::new(0.0, 1.0),
        };
        acc += phase * c * hv;
    }
    acc
}

/// The witness sampled on the default grid.
pub fn witness_function(coeffs: &[f64]) -> Result<SampledFunction> {
    SampledFunction::from_fn(DEFAULT_X, DEFAULT_H, |x| eval_coeffs(coeffs, x))
}

/// One sweep cell.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct SweepRow {
    pub scale: f64,
    pub basis_order: usize,
    pub sigma_min: f64,
}

/// `sigma_min` of the operator for every `(scale, N)` cell: nodes are
/// dilated by each scale and the operator rebuilt per basis order.
pub fn regime_sweep(
    lambda: &NodeSequence,
    mu: &NodeSequence,
    scales: &[f64],
    n_list: &[usize],
) -> Result<Vec<SweepRow>> {
    let mut cells = Vec::new();
    for &c in scales {
        for &n in n_list {
            cells.push((c, n));
        }
    }
    let rows: Result<Vec<SweepRow>> = cells
        .par_iter()
        .map(|&(c, n)| {
            let l = lambda.scaled(c)?;
            let m = mu.scaled(c)?;
            let op = build_sampling_operator(&l, &m, n)?;
            let probe = smallest_singular(&op)?;
            Ok(SweepRow { scale: c, basis_order: n, sigma_min: probe.sigma_min })
        })
        .collect();
    rows
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::nodes::generate_rv;
    use crate::probe::dft;

    #[test]
    fn ground_state_value() {
        let h = hermite_values(1, 0.0);
        assert!((h[0] - 2f64.powf(0.25)).abs() < 1e-14);
    }

    #[test]
    #[allow(clippy::needless_range_loop)]
    fn hermite_gram_is_identity() {
        // columns of a fine-grid evaluation are orthonormal
        let n = 16;
        let h = 1.0 / 64.0;
        let x_max = 12.0;
        let steps = (2.0 * x_max / h) as usize;
        let mut gram = vec![vec![0.0f64; n]; n];
        for k in 0..=steps {
            let x = -x_max + k as f64 * h;
            let vals = hermite_values(n, x);
            for i in 0..n {
                for j in i..n {
                    gram[i][j] += vals[i] * vals[j] * h;
                }
            }
        }
        for i in 0..n {
            for j in i..n {
                let expect = if i == j { 1.0 } else { 0.0 };
                assert!(
                    (gram[i][j] - expect).abs() < 1e-8,
                    "gram[{i}][{j}] = {}",
                    gram[i][j]
                );
            }
        }
    }

    #[test]
    fn fourier_eigenrelation_on_grid() {
        // dft(h_n) = (-i)^n h_n for n <= 64 on the default grid
        for n in [0usize, 1, 2, 3, 7, 20, 64] {
            let f = SampledFunction::from_real_fn(DEFAULT_X, DEFAULT_H, |x| {
                hermite_values(n + 1, x)[n]
            })
            .unwrap();
            let f_hat = dft(&f).unwrap();
            let phase = match n % 4 {
                0 => Complex64::new(1.0, 0.0),
                1 => Complex64::new(0.0, -1.0),
                2 => Complex64::new(-1.0, 0.0),
                _ => Complex64::new(0.0, 1.0),
            };
            let mut max_err = 0.0f64;
            for (m, v) in f_hat.values().iter().enumerate() {
                let xi = f_hat.x_at(m);
                if xi.abs() > DEFAULT_X {
                    continue; // compare inside the common window
                }
                let expect = phase * hermite_values(n + 1, xi)[n];
                max_err = max_err.max((v - expect).norm());
            }
            assert!(max_err < 1e-8, "n = {n}: err {max_err}");
        }
    }

    #[test]
    fn operator_single_lambda_node() {
        let l = NodeSequence::new(vec![0.0], 0, "origin").unwrap();
        let m = NodeSequence::new(vec![], 0, "empty").unwrap();
        let op = build_sampling_operator(&l, &m, 1).unwrap();
        assert_eq!(op.matrix.nrows(), 1);
        assert!((op.matrix[(0, 0)] - 2f64.powf(0.25)).abs() < 1e-14);
        let probe = smallest_singular(&op).unwrap();
        assert!((probe.sigma_min - 2f64.powf(0.25)).abs() < 1e-12);
        assert!((probe.sigma_min - 1.1892071).abs() < 1e-7);
    }

    #[test]
    fn operator_mu_rows_use_phases() {
        let l = NodeSequence::new(vec![], 0, "empty").unwrap();
        let m = NodeSequence::new(vec![0.0], 0, "origin").unwrap();
        let op = build_sampling_operator(&l, &m, 2).unwrap();
        assert_eq!(op.matrix.nrows(), 2);
        // real row: [h_0(0), 0]; imaginary row: [0, -h_1(0)] = [0, 0]
        assert!((op.matrix[(0, 0)] - 2f64.powf(0.25)).abs() < 1e-14);
        assert_eq!(op.matrix[(0, 1)], 0.0);
        assert_eq!(op.matrix[(1, 0)], 0.0);
        assert_eq!(op.matrix[(1, 1)], -0.0);
        // h_1(0) = 0, so the second column of the imaginary row vanishes
        assert_eq!(op.matrix[(1, 1)].abs(), 0.0);
    }

    #[test]
    fn zero_rows_give_zero_sigma() {
        // nodes where every basis function is numerically zero
        let l = NodeSequence::new(vec![38.0, 39.0], 0, "far").unwrap();
        let m = NodeSequence::new(vec![], 0, "empty").unwrap();
        let op = build_sampling_operator(&l, &m, 4).unwrap();
        let probe = smallest_singular(&op).unwrap();
        assert_eq!(probe.sigma_min, 0.0);
    }

    #[test]
    fn overdetermined_generic_nodes_have_positive_sigma() {
        let rv = generate_rv(40).unwrap();
        let op = build_sampling_operator(&rv, &rv, 16).unwrap();
        let probe = smallest_singular(&op).unwrap();
        assert!(probe.sigma_min > 1e-6, "sigma_min {}", probe.sigma_min);
        // residuals consistent with sigma_min * ||c|| (unit coefficients)
        let bound = probe.sigma_min + 1e-8;
        assert!(probe.residual_lambda <= bound);
        assert!(probe.residual_mu <= bound);
    }

    #[test]
    fn sigma_invariant_under_row_permutation_and_reflection() {
        let rv = generate_rv(36).unwrap();
        let op = build_sampling_operator(&rv, &rv, 24).unwrap();
        let base = smallest_singular(&op).unwrap();
        // permute rows
        let perm: Vec<usize> = (0..op.matrix.nrows()).rev().collect();
        let mut shuffled = op.clone();
        shuffled.matrix = DMatrix::from_fn(op.matrix.nrows(), op.basis_order, |r, c| {
            op.matrix[(perm[r], c)]
        });
        let p = smallest_singular(&shuffled).unwrap();
        assert!((p.sigma_min - base.sigma_min).abs() < 1e-10);
        // global sign flip of the basis
        let mut flipped = op.clone();
        flipped.matrix = -op.matrix.clone();
        let f = smallest_singular(&flipped).unwrap();
        assert!((f.sigma_min - base.sigma_min).abs() < 1e-10);
    }

    #[test]
    fn underdetermined_operator_has_null_space() {
        let l = NodeSequence::new(vec![0.0, 1.0], 0, "two").unwrap();
        let m = NodeSequence::new(vec![], 0, "empty").unwrap();
        let op = build_sampling_operator(&l, &m, 8).unwrap();
        let probe = smallest_singular(&op).unwrap();
        assert!(probe.sigma_min < 1e-12, "sigma_min {}", probe.sigma_min);
        assert!(probe.residual_lambda < 1e-10, "residual {}", probe.residual_lambda);
    }

    #[test]
    fn witness_h_norm_matches_coefficient_oracle() {
        // For coefficients c, the H-norm has the closed form
        // ||f||^2 + ||x f||^2 + ||f_hat||^2 + ||xi f_hat||^2 with
        // (x f)_m = (sqrt(m/2) c_{m-1} + sqrt((m+1)/2) c_{m+1})/sqrt(2 pi)
        let coeffs = vec![0.6, 0.0, -0.8];
        let norm_sq: f64 = coeffs.iter().map(|c| c * c).sum();
        let two_pi: f64 = 2.0 * std::f64::consts::PI;
        let mut xf = 0.0;
        let mut xfh = 0.0;
        for m in 0..coeffs.len() + 1 {
            let lo = if m >= 1 { (m as f64 / 2.0).sqrt() * coeffs.get(m - 1).copied().unwrap_or(0.0) } else { 0.0 };
            let hi = ((m + 1) as f64 / 2.0).sqrt() * coeffs.get(m + 1).copied().unwrap_or(0.0);
            xf += (lo + hi) * (lo + hi) / two_pi;
            // the transform side alternates the sign of the upper term
            xfh += (lo - hi) * (lo - hi) / two_pi;
        }
        let expect = (2.0 * norm_sq + xf + xfh).sqrt();
        let w = witness_function(&coeffs).unwrap();
        let got = w.h_norm().unwrap();
        assert!((got - expect).abs() < 1e-8, "{got} vs {expect}");
    }

    #[test]
    fn sweep_emits_all_cells() {
        let rv = generate_rv(30).unwrap();
        let rows = regime_sweep(&rv, &rv, &[0.9, 1.0], &[8, 12]).unwrap();
        assert_eq!(rows.len(), 4);
        for r in rows {
            assert!(r.sigma_min >= 0.0);
        }
    }
}
