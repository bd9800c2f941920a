//! Counting-function analytics: the integral Fenchel–Young inequality, the
//! `1/(2 alpha)` density limit, the `4WT - C log^2(4WT)` necessary
//! condition, and empirical zeta-ordinate statistics.

mod zeta;

pub use zeta::{
    ingest_zeta, riemann_von_mangoldt_compare, zeta_gap_stats, RvmRow, ZetaGapStats, ZetaTable,
};

use crate::error::{Error, Result};
use crate::nodes::NodeSequence;
use crate::numerics::{adaptive_simpson, golden_max};
use crate::weights::WeightSpec;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

/// Number of nodes in `[-T, T]`, endpoints inclusive; negative `T` counts
/// like `T = 0` (zeros only).
pub fn count_window(seq: &NodeSequence, t: f64) -> usize {
    let t = t.max(0.0);
    let lo = seq.values.partition_point(|&v| v < -t);
    let hi = seq.values.partition_point(|&v| v <= t);
    hi - lo
}

/// `int_0^T S + int_0^W S^{-1} - WT`, non-negative with equality iff
/// `W = S(T)`.
///
/// Power weights use closed-form antiderivatives; everything else goes
/// through adaptive quadrature to `quad_tol`.
pub fn fenchel_young_gap(weight: &WeightSpec, t: f64, w: f64, quad_tol: f64) -> Result<f64> {
    if !(t > 0.0 && w > 0.0) {
        return Err(Error::Parameter("need T, W > 0".into()));
    }
    if !weight.is_young_admissible() {
        return Err(Error::Precondition(format!(
            "weight {} must be increasing with S(0) = 0 (shifted specs rejected)",
            weight.family_name()
        )));
    }
    if let WeightSpec::Power { a } = weight {
        let p = a + 1.0;
        let q = 1.0 + 1.0 / a;
        return Ok(t.powf(p) / p + w.powf(q) / q - w * t);
    }
    let fwd = adaptive_simpson(&|x| weight.eval(x).unwrap_or(f64::MAX), 0.0, t, quad_tol / 2.0);
    let inv = adaptive_simpson(
        &|y| weight.inverse(y, 1e-12).unwrap_or(f64::MAX),
        0.0,
        w,
        quad_tol / 2.0,
    );
    Ok(fwd + inv - w * t)
}

/// Verify that `int_0^T S` and `int_0^W S^{-1}` are convex conjugates: for
/// each W, compare `sup_T (WT - int_0^T S)` (golden-section search over
/// `t_search`) against `int_0^W S^{-1}`. Returns the largest discrepancy.
pub fn convex_conjugate_check(
    weight: &WeightSpec,
    w_grid: &[f64],
    t_search: (f64, f64),
    quad_tol: f64,
) -> Result<f64> {
    if !weight.is_young_admissible() {
        return Err(Error::Precondition(format!(
            "weight {} must satisfy S(0) = 0",
            weight.family_name()
        )));
    }
    let antideriv = |t: f64| -> f64 {
        if let WeightSpec::Power { a } = weight {
            t.powf(a + 1.0) / (a + 1.0)
        } else {
            adaptive_simpson(&|x| weight.eval(x).unwrap_or(f64::MAX), 0.0, t, quad_tol / 4.0)
        }
    };
    let mut max_err = 0.0f64;
    for &w in w_grid {
        if !(w > 0.0) {
            return Err(Error::Parameter("W grid entries must be positive".into()));
        }
        let objective = |t: f64| w * t - antideriv(t);
        let (_, sup) = golden_max(&objective, t_search.0, t_search.1, 1e-12)?;
        let direct = adaptive_simpson(
            &|y| weight.inverse(y, 1e-12).unwrap_or(f64::MAX),
            0.0,
            w,
            quad_tol / 4.0,
        );
        max_err = max_err.max((sup - direct).abs());
    }
    Ok(max_err)
}

/// Result of a `(W, T)` density scan.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct DensityScan {
    pub k_grid: Vec<f64>,
    /// Sampled ratios `(W, T, (count_L + count_M)/(4WT))` for the first K.
    pub scan: Vec<(f64, f64, f64)>,
    /// `(K, inf ratio over W, T in [K, window limit])` per K.
    pub inf_per_k: Vec<(f64, f64)>,
    /// Optional normalization: the expected limit is `1/(2 alpha)`.
    pub alpha: Option<f64>,
}

/// For each `K`, the infimum of `(|L cap [-T,T]| + |M cap [-W,W]|)/(4WT)`
/// over a log-spaced `(W, T)` grid in `[K, window limit]^2` with local
/// refinement around the grid minimizer.
pub fn density_inf_ratio(
    lambda: &NodeSequence,
    mu: &NodeSequence,
    k_grid: &[f64],
    wt_resolution: usize,
    alpha: Option<f64>,
) -> Result<DensityScan> {
    if k_grid.is_empty() {
        return Err(Error::Parameter("K grid must be non-empty".into()));
    }
    let t_limit = window_limit(lambda);
    let w_limit = window_limit(mu);
    let k_max = k_grid.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    if t_limit <= k_max || w_limit <= k_max {
        return Err(Error::TruncatedWindow {
            have_lo: t_limit.min(w_limit),
            have_hi: t_limit.max(w_limit),
            need: k_max,
        });
    }
    let res = wt_resolution.max(4);
    let ratio = |w: f64, t: f64| -> f64 {
        let c = count_window(lambda, t) + count_window(mu, w);
        c as f64 / (4.0 * w * t)
    };

    let mut inf_per_k = Vec::with_capacity(k_grid.len());
    let mut scan = Vec::new();
    for (ki, &k) in k_grid.iter().enumerate() {
        if !(k > 0.0) {
            return Err(Error::Parameter("K grid entries must be positive".into()));
        }
        let ws = log_grid(k, w_limit, res);
        let ts = log_grid(k, t_limit, res);
        let cells: Vec<(f64, f64, f64)> = ws
            .par_iter()
            .flat_map_iter(|&w| ts.iter().map(move |&t| (w, t)))
            .map(|(w, t)| (w, t, ratio(w, t)))
            .collect();
        let &(mut bw, mut bt, mut best) = cells
            .iter()
            .min_by(|a, b| a.2.partial_cmp(&b.2).unwrap())
            .unwrap();
        if ki == 0 {
            scan = cells;
        }
        // local refinement: shrink a log-space box around the minimizer
        let mut half_w = (w_limit / k).powf(1.0 / (res as f64 - 1.0));
        let mut half_t = (t_limit / k).powf(1.0 / (res as f64 - 1.0));
        for _ in 0..3 {
            let ws = log_grid((bw / half_w).max(k), (bw * half_w).min(w_limit), res);
            let ts = log_grid((bt / half_t).max(k), (bt * half_t).min(t_limit), res);
            for &w in &ws {
                for &t in &ts {
                    let r = ratio(w, t);
                    if r < best {
                        best = r;
                        bw = w;
                        bt = t;
                    }
                }
            }
            half_w = half_w.sqrt();
            half_t = half_t.sqrt();
        }
        inf_per_k.push((k, best));
    }
    Ok(DensityScan { k_grid: k_grid.to_vec(), scan, inf_per_k, alpha })
}

fn window_limit(seq: &NodeSequence) -> f64 {
    let lo = seq.values.first().map(|v| v.abs()).unwrap_or(0.0);
    let hi = seq.values.last().map(|v| v.abs()).unwrap_or(0.0);
    if seq.symmetric {
        lo.max(hi)
    } else {
        hi
    }
}

fn log_grid(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    if hi <= lo {
        return vec![lo];
    }
    let (l0, l1) = (lo.ln(), hi.ln());
    (0..n)
        .map(|i| (l0 + (l1 - l0) * i as f64 / (n - 1) as f64).exp())
        .collect()
}

/// Outcome of the `counts >= 4WT - C log^2(4WT)` check.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct KulikovReport {
    /// Minimum of `counts - 4WT + C log^2(4WT)` over the grid.
    pub min_margin: f64,
    /// Smallest `C` making every margin non-negative on the grid
    /// (infinite when a deficit occurs where `log^2(4WT)` vanishes).
    pub fitted_c: f64,
}

/// Margins of the interpolation necessary condition on a `(W, T)` grid.
pub fn kulikov_check(
    lambda: &NodeSequence,
    mu: &NodeSequence,
    wt_grid: &[(f64, f64)],
    c: f64,
) -> Result<KulikovReport> {
    if wt_grid.is_empty() {
        return Err(Error::Parameter("WT grid must be non-empty".into()));
    }
    let t_limit = window_limit(lambda);
    let w_limit = window_limit(mu);
    let mut min_margin = f64::INFINITY;
    let mut fitted_c = 0.0f64;
    for &(w, t) in wt_grid {
        // a one-point sequence is taken as the complete set; a windowed one
        // must cover the grid or counts would be truncated
        if (mu.len() >= 2 && w > w_limit) || (lambda.len() >= 2 && t > t_limit) {
            return Err(Error::TruncatedWindow {
                have_lo: w_limit,
                have_hi: t_limit,
                need: w.max(t),
            });
        }
        let counts = (count_window(lambda, t) + count_window(mu, w)) as f64;
        let area = 4.0 * w * t;
        let log_sq = area.ln() * area.ln();
        min_margin = min_margin.min(counts - area + c * log_sq);
        let deficit = area - counts;
        if deficit > 0.0 {
            fitted_c = if log_sq > 0.0 { fitted_c.max(deficit / log_sq) } else { f64::INFINITY };
        }
    }
    Ok(KulikovReport { min_margin, fitted_c })
}
