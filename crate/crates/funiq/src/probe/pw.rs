//! The inequality checks: density-based and interval Poincaré–Wirtinger
//! forms, the sigma/S composition maps, the log-concave derivative bound,
//! vanishing-function construction, and the two double-integral
//! inequalities the uniqueness machinery rests on.

use super::window::WindowFunction;
use super::{is_ell_dense, ConvexWeightFn, SampledFunction};
use crate::error::{Error, Result};
use crate::nodes::{verify_gap_condition, EndpointRule, GapCondition, NodeSequence};
use crate::numerics::MonotoneCubic;
use crate::weights::{GridSpec, WeightSpec};
use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

/// `lhs <= rhs` outcome of an inequality check; `ratio = lhs/rhs` (0 when
/// both sides vanish).
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct InequalityOutcome {
    pub lhs: f64,
    pub rhs: f64,
    pub ratio: f64,
}

impl InequalityOutcome {
    fn new(lhs: f64, rhs: f64) -> Self {
        let ratio = if lhs == 0.0 && rhs == 0.0 { 0.0 } else { lhs / rhs };
        InequalityOutcome { lhs, rhs, ratio }
    }
}

/// Check that `f` vanishes (relative to its peak) at the grid points
/// nearest each node inside the grid window.
fn check_vanishing(f: &SampledFunction, zero_set: &[f64]) -> Result<()> {
    let peak = f.max_abs();
    if peak == 0.0 {
        return Ok(());
    }
    let x_max = f.half_width() - f.step();
    for &z in zero_set {
        if z < -f.half_width() || z > x_max {
            continue;
        }
        let v = f.values()[f.index_near(z)].norm();
        if v > 1e-10 * peak {
            return Err(Error::Precondition(format!(
                "function does not vanish at node {z}: |f| = {v:.3e} vs peak {peak:.3e}"
            )));
        }
    }
    Ok(())
}

/// Density-form Poincaré–Wirtinger check:
/// `Phi(t^2) ||f||_2^2 <= int Phi(xi^2) |f_hat|^2` for `f` vanishing on a
/// `1/(2t)`-dense set.
pub fn pw_check(
    phi: &ConvexWeightFn,
    t: f64,
    f: &SampledFunction,
    zero_set: &[f64],
) -> Result<InequalityOutcome> {
    phi.validate()?;
    if !(t > 0.0) {
        return Err(Error::Parameter("need t > 0".into()));
    }
    let ell = 1.0 / (2.0 * t);
    let window = (-f.half_width(), f.half_width());
    if !is_ell_dense(zero_set, ell, window) {
        return Err(Error::Precondition(format!(
            "zero set is not {ell}-dense on [{}, {}]",
            window.0, window.1
        )));
    }
    check_vanishing(f, zero_set)?;
    if f.max_abs() == 0.0 {
        return Ok(InequalityOutcome::new(0.0, 0.0));
    }
    let lhs = phi.eval(t * t)? * f.l2_norm_sq();
    let mut rhs = 0.0;
    for (m, v) in f.fourier().iter().enumerate() {
        let xi = f.freq_at(m);
        rhs += phi.eval_sat(xi * xi) * v.norm_sqr();
    }
    rhs *= f.freq_step();
    if !rhs.is_finite() {
        return Err(Error::Integrability("right-hand side diverges on the grid".into()));
    }
    Ok(InequalityOutcome::new(lhs, rhs))
}

/// Classical interval Poincaré–Wirtinger check on `[a, b]` with vanishing
/// endpoints: `int |g|^2 <= ((b-a)/pi)^2 int |g'|^2` (central differences).
pub fn interval_pw_check(values: &[Complex64], a: f64, b: f64) -> Result<InequalityOutcome> {
    let n = values.len();
    if n < 8 || !(b > a) {
        return Err(Error::Parameter("need >= 8 samples on a proper interval".into()));
    }
    let peak = values.iter().map(|v| v.norm()).fold(0.0f64, f64::max);
    let (g0, g1) = (values[0].norm(), values[n - 1].norm());
    if peak > 0.0 && (g0 > 1e-10 * peak || g1 > 1e-10 * peak) {
        return Err(Error::Precondition(format!(
            "endpoint values |g(a)| = {g0:.3e}, |g(b)| = {g1:.3e} not below 1e-10 * peak"
        )));
    }
    if peak == 0.0 {
        return Ok(InequalityOutcome::new(0.0, 0.0));
    }
    let h = (b - a) / (n - 1) as f64;
    let trapezoid = |vals: &dyn Fn(usize) -> f64| -> f64 {
        let mut acc = 0.5 * (vals(0) + vals(n - 1));
        for i in 1..n - 1 {
            acc += vals(i);
        }
        acc * h
    };
    let lhs = trapezoid(&|i| values[i].norm_sqr());
    let deriv = |i: usize| -> Complex64 {
        if i == 0 {
            (-3.0 * values[0] + 4.0 * values[1] - values[2]) / (2.0 * h)
        } else if i == n - 1 {
            (3.0 * values[n - 1] - 4.0 * values[n - 2] + values[n - 3]) / (2.0 * h)
        } else {
            (values[i + 1] - values[i - 1]) / (2.0 * h)
        }
    };
    let energy = trapezoid(&|i| deriv(i).norm_sqr());
    let rhs = ((b - a) / std::f64::consts::PI).powi(2) * energy;
    Ok(InequalityOutcome::new(lhs, rhs))
}

/// `sigma_{Psi, F}(t) = sqrt(Psi^{-1}(int |F_hat(eta)|^2 Psi((max{|t+2|, 4} + |eta|)^2) d eta))`.
///
/// The integrand must be summable on the window's frequency grid: the last
/// tenth of the grid may carry at most 1e-8 of the total.
pub fn sigma_weight(psi: &ConvexWeightFn, window: &WindowFunction, t: f64) -> Result<f64> {
    psi.validate()?;
    let c = (t + 2.0).abs().max(4.0);
    let samples = &window.samples;
    let eta_max = samples.freq_half_width();
    let mut total = 0.0;
    let mut tail = 0.0;
    for (m, v) in samples.fourier().iter().enumerate() {
        let eta = samples.freq_at(m);
        let term = v.norm_sqr() * psi.eval_sat((c + eta.abs()).powi(2));
        total += term;
        if eta.abs() >= 0.9 * eta_max {
            tail += term;
        }
    }
    total *= samples.freq_step();
    tail *= samples.freq_step();
    if !total.is_finite() || tail > 1e-8 * total {
        return Err(Error::Integrability(format!(
            "sigma integrand not summable: tail fraction {:.3e}; the window transform must \
             decay faster than the weight grows",
            tail / total
        )));
    }
    Ok(psi.inverse(total)?.sqrt())
}

/// `S_{Phi,Psi}(t) = sqrt(Phi^{-1}(Psi(t^2)))`.
pub fn s_phi_psi(phi: &ConvexWeightFn, psi: &ConvexWeightFn, t: f64) -> Result<f64> {
    phi.validate()?;
    psi.validate()?;
    Ok(phi.inverse(psi.eval(t * t)?)?.sqrt())
}

/// Outcome of the log-concave derivative bound check.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GprimeReport {
    /// Max central-difference derivative of
    /// `G(x) = f^{-1}(sum_i w_i f(x + |y_i|))` on `[t0, grid end]`.
    pub max_gprime: f64,
    /// Whether `log f'` is numerically concave past `t0` (the lemma's
    /// hypothesis; `max_gprime <= 1` is only asserted when this holds).
    pub hypothesis_ok: bool,
}

/// Evaluate `G' <= 1` for `G(x) = f^{-1}(int f(x + |y|) d mu(y))` with a
/// discrete probability measure `mu = sum w_i delta_{y_i}`.
pub fn gprime_check(
    f_spec: &WeightSpec,
    atoms: &[(f64, f64)],
    t0: f64,
    grid: &GridSpec,
) -> Result<GprimeReport> {
    let wsum: f64 = atoms.iter().map(|(_, w)| w).sum();
    if (wsum - 1.0).abs() > 1e-12 {
        return Err(Error::Parameter(format!("atom weights must sum to 1, got {wsum}")));
    }
    if atoms.iter().any(|(_, w)| *w < 0.0) {
        return Err(Error::Parameter("atom weights must be non-negative".into()));
    }

    // hypothesis: concavity of log f' past t0, by central differences
    let lo = t0.max(1e-3);
    let fprime = |x: f64| -> Result<f64> {
        let h = 1e-4 * x.max(1e-2);
        Ok((f_spec.eval(x + h)? - f_spec.eval((x - h).max(0.0))?) / (2.0 * h))
    };
    let hyp_grid = GridSpec::log(lo, grid.hi, 200).values();
    let mut logs = Vec::with_capacity(hyp_grid.len());
    let mut hypothesis_ok = true;
    for &x in &hyp_grid {
        let d = fprime(x)?;
        if d <= 0.0 {
            hypothesis_ok = false;
            break;
        }
        logs.push(d.ln());
    }
    if hypothesis_ok {
        for i in 1..hyp_grid.len() - 1 {
            let d01 = (logs[i] - logs[i - 1]) / (hyp_grid[i] - hyp_grid[i - 1]);
            let d12 = (logs[i + 1] - logs[i]) / (hyp_grid[i + 1] - hyp_grid[i]);
            let second = 2.0 * (d12 - d01) / (hyp_grid[i + 1] - hyp_grid[i - 1]);
            if second > 1e-6 * (1.0 + logs[i].abs()) {
                hypothesis_ok = false;
                break;
            }
        }
    }

    let g = |x: f64| -> Result<f64> {
        let mut acc = 0.0;
        for &(y, w) in atoms {
            acc += w * f_spec.eval(x + y.abs())?;
        }
        f_spec.inverse(acc, 1e-13)
    };
    let scan = GridSpec::linear(t0, grid.hi, grid.points.max(50)).values();
    let mut max_gprime = f64::NEG_INFINITY;
    for &x in &scan {
        let h = 1e-2;
        let gp = (g(x + h)? - g((x - h).max(0.0))?) / (2.0 * h);
        max_gprime = max_gprime.max(gp);
    }
    Ok(GprimeReport { max_gprime, hypothesis_ok })
}

/// Exact-at-integers `sin(pi u)`.
fn sin_pi(u: f64) -> f64 {
    let r = u - u.round();
    let s = (std::f64::consts::PI * r).sin();
    if (u.round() as i64) % 2 == 0 {
        s
    } else {
        -s
    }
}

/// Build `f(x) = envelope(x) sin(pi u(x))` with `u` a monotone cubic
/// through `(node_j, j)`, nodes snapped to the sampling grid so the zeros
/// land exactly on grid points.
///
/// Returns the sampled function together with the snapped node positions
/// (the usable zero set). Nodes must cover the grid support and stay
/// distinct after snapping.
pub fn make_vanishing_function(
    nodes: &NodeSequence,
    envelope: &dyn Fn(f64) -> f64,
    half_width: f64,
    step: f64,
) -> Result<(SampledFunction, Vec<f64>)> {
    if nodes.len() < 2 {
        return Err(Error::Parameter("need >= 2 nodes".into()));
    }
    let x_min = -half_width;
    let x_max = half_width - step;
    if nodes.values[0] > x_min || *nodes.values.last().unwrap() < x_max {
        return Err(Error::Precondition(format!(
            "nodes [{}, {}] do not cover the grid support [{x_min}, {x_max}]",
            nodes.values[0],
            nodes.values.last().unwrap()
        )));
    }
    let snap = |x: f64| -> f64 {
        let k = ((x + half_width) / step).round();
        -half_width + k * step
    };
    let mut snapped = Vec::with_capacity(nodes.len());
    let mut indices = Vec::with_capacity(nodes.len());
    for (i, &v) in nodes.values.iter().enumerate() {
        let s = snap(v);
        if let Some(&prev) = snapped.last() {
            if s <= prev {
                return Err(Error::Resolution(format!(
                    "nodes {prev} and {s} collide on the h = {step} grid"
                )));
            }
        }
        snapped.push(s);
        indices.push(nodes.index_of(i) as f64);
    }
    let u = MonotoneCubic::new(snapped.clone(), indices)?;
    let f = SampledFunction::from_real_fn(half_width, step, |x| {
        let xc = x.clamp(u.x_min(), u.x_max());
        envelope(x) * sin_pi(u.eval(xc).expect("clamped into span"))
    })?;
    // only snapped nodes that land on actual grid points form the zero set
    let zero_set: Vec<f64> =
        snapped.into_iter().filter(|&z| z >= x_min && z <= x_max).collect();
    Ok((f, zero_set))
}

/// Fractional global Poincaré–Wirtinger check:
///
/// `iint Psi((x+y)^2) |f(x)|^2 |F_hat(y)|^2 <= iint Phi((xi+eta)^2) |f_hat(xi)|^2 |G_hat(eta)|^2`
///
/// for `f` vanishing on nodes whose gaps satisfy
/// `S_{Phi,Psi}(sigma_{Psi,F}(|l_j|)) (l_{j+1} - l_j) <= 1/2`.
pub fn fractional_pw_check(
    psi: &ConvexWeightFn,
    phi: &ConvexWeightFn,
    f: &SampledFunction,
    window_f: &WindowFunction,
    window_g: &WindowFunction,
    lambda_nodes: &NodeSequence,
) -> Result<InequalityOutcome> {
    psi.validate()?;
    phi.validate()?;
    check_vanishing(f, &lambda_nodes.values)?;
    if f.max_abs() == 0.0 {
        return Ok(InequalityOutcome::new(0.0, 0.0));
    }
    // gap precondition via the node verifier with the composed weight
    let psi_c = psi.clone();
    let phi_c = phi.clone();
    let wf = window_f.clone();
    let cond = GapCondition::with_fn(
        move |t: f64| {
            sigma_weight(&psi_c, &wf, t)
                .and_then(|s| s_phi_psi(&phi_c, &psi_c, s))
                .unwrap_or(f64::INFINITY)
        },
        EndpointRule::Left,
        0.5,
    );
    let report = verify_gap_condition(lambda_nodes, &cond)?;
    if !report.pass {
        return Err(Error::Precondition(format!(
            "gap condition fails: sup weighted gap {} > 1/2 at index {}",
            report.sup_value, report.argsup
        )));
    }

    let lhs = tensor_weighted(psi, f.values(), |k| f.x_at(k), f.step(), window_f)?;
    let rhs = tensor_weighted(phi, f.fourier(), |m| f.freq_at(m), f.freq_step(), window_g)?;
    Ok(InequalityOutcome::new(lhs, rhs))
}

/// `sum_a sum_b W((a+b)^2) |g(a)|^2 |H_hat(b)|^2 da db` over the grid of
/// `g` and the frequency grid of the window.
fn tensor_weighted(
    weight: &ConvexWeightFn,
    g: &[Complex64],
    coord: impl Fn(usize) -> f64 + Sync,
    d_a: f64,
    window: &WindowFunction,
) -> Result<f64> {
    let wsamp = &window.samples;
    let wf: Vec<(f64, f64)> = wsamp
        .fourier()
        .iter()
        .enumerate()
        .map(|(m, v)| (wsamp.freq_at(m), v.norm_sqr()))
        .filter(|(_, p)| *p > 0.0)
        .collect();
    // ordered row partials, then a fixed-order compensated sum: the reduction
    // must be deterministic so identical inputs emit identical reports
    let rows: Vec<f64> = g
        .par_iter()
        .enumerate()
        .map(|(k, v)| {
            let p = v.norm_sqr();
            if p == 0.0 {
                return 0.0;
            }
            let a = coord(k);
            let mut acc = 0.0;
            for &(b, q) in &wf {
                acc += weight.eval_sat((a + b) * (a + b)) * q;
            }
            acc * p
        })
        .collect();
    let value = crate::numerics::neumaier_sum(&rows) * d_a * wsamp.freq_step();
    if !value.is_finite() {
        return Err(Error::Integrability("tensor integral diverges on the grid".into()));
    }
    Ok(value)
}

/// Weighted second-moment inequality:
///
/// `2 int x^2 |f|^2 <= int (S^2(|xi|^s) + C) |f_hat|^2`
///
/// for `f` vanishing on nodes satisfying the gap condition with weight
/// `t -> S^{-1}(8 e max{|l_j|, |l_{j+1}|})^{1/s}`.
pub fn weighted_moment_check(
    f: &SampledFunction,
    s_weight: &WeightSpec,
    s: f64,
    css: f64,
    lambda_nodes: &NodeSequence,
) -> Result<InequalityOutcome> {
    if !(s > 0.0) {
        return Err(Error::Parameter("need s > 0".into()));
    }
    check_vanishing(f, &lambda_nodes.values)?;
    if f.max_abs() == 0.0 {
        return Ok(InequalityOutcome::new(0.0, 0.0));
    }
    let spec = s_weight.clone();
    let s_exp = s;
    let cond = GapCondition::with_fn(
        move |t: f64| match spec.inverse(8.0 * std::f64::consts::E * t, 1e-12) {
            Ok(v) => v.powf(1.0 / s_exp),
            Err(_) => f64::INFINITY,
        },
        EndpointRule::Max,
        0.5,
    );
    let report = verify_gap_condition(lambda_nodes, &cond)?;
    if !report.pass {
        return Err(Error::Precondition(format!(
            "gap condition fails: sup weighted gap {} > 1/2 at index {}",
            report.sup_value, report.argsup
        )));
    }

    let mut lhs = 0.0;
    for (k, v) in f.values().iter().enumerate() {
        let x = f.x_at(k);
        lhs += x * x * v.norm_sqr();
    }
    lhs *= 2.0 * f.step();

    let mut rhs = 0.0;
    for (m, v) in f.fourier().iter().enumerate() {
        let p = v.norm_sqr();
        if p == 0.0 {
            continue; // zero-mass bins contribute nothing even under a huge weight
        }
        let xi = f.freq_at(m);
        let sv = s_weight.eval(xi.abs().powf(s)).unwrap_or(f64::INFINITY);
        let term = (sv * sv + css) * p;
        if !term.is_finite() {
            return Err(Error::Integrability(format!(
                "S^2(|xi|^s) |f_hat|^2 overflows at xi = {xi}: the transform must decay \
                 faster than the weight grows"
            )));
        }
        rhs += term;
    }
    rhs *= f.freq_step();
    Ok(InequalityOutcome::new(lhs, rhs))
}
