//! Sampled-function engine: complex functions on symmetric grids with a
//! unitary discrete Fourier transform matching the `e^{-2 pi i x xi}`
//! convention, plus the convex weight maps the inequality checks compose.

mod hermite;
mod pw;
mod window;

pub use hermite::{
    build_sampling_operator, eval_coeffs, eval_coeffs_fourier, hermite_values, regime_sweep,
    smallest_singular, witness_function, ProbeResult, SamplingOperator, SweepRow,
};
pub use pw::{
    fractional_pw_check, gprime_check, interval_pw_check, make_vanishing_function, pw_check,
    s_phi_psi, sigma_weight, weighted_moment_check, GprimeReport, InequalityOutcome,
};
pub use window::{build_window, default_window, WindowFunction, WindowKind, WINDOW_H, WINDOW_X};

use crate::error::{Error, Result};
use crate::weights::WeightSpec;
use num_complex::Complex64;
use rustfft::FftPlanner;
use std::sync::OnceLock;

/// Default evaluation grid: X = 16, h = 1/64 (2048 points). Gaussians and
/// the Hermite basis up to n = 64 alias below 1e-12 here.
pub const DEFAULT_X: f64 = 16.0;
pub const DEFAULT_H: f64 = 1.0 / 64.0;

/// A complex function sampled on `x_k = -X + k h`, `k = 0 .. 2X/h - 1`,
/// with a cached discrete Fourier transform on the dual grid
/// `xi_m = -1/(2h) + m/(2X)`.
#[derive(Debug)]
pub struct SampledFunction {
    half_width: f64,
    step: f64,
    values: Vec<Complex64>,
    fourier: OnceLock<Vec<Complex64>>,
}

impl Clone for SampledFunction {
    fn clone(&self) -> Self {
        SampledFunction {
            half_width: self.half_width,
            step: self.step,
            values: self.values.clone(),
            fourier: OnceLock::new(),
        }
    }
}

impl SampledFunction {
    pub fn from_values(half_width: f64, step: f64, values: Vec<Complex64>) -> Result<Self> {
        let n = (2.0 * half_width / step).round() as usize;
        if n != values.len() {
            return Err(Error::Parameter(format!(
                "grid length mismatch: 2X/h = {n}, got {} values",
                values.len()
            )));
        }
        if !n.is_power_of_two() || n < 4 {
            return Err(Error::Parameter(format!(
                "grid length must be a power of two >= 4, got {n}"
            )));
        }
        Ok(SampledFunction { half_width, step, values, fourier: OnceLock::new() })
    }

    pub fn from_fn(half_width: f64, step: f64, f: impl Fn(f64) -> Complex64) -> Result<Self> {
        let n = (2.0 * half_width / step).round() as usize;
        let values = (0..n).map(|k| f(-half_width + k as f64 * step)).collect();
        Self::from_values(half_width, step, values)
    }

    pub fn from_real_fn(half_width: f64, step: f64, f: impl Fn(f64) -> f64) -> Result<Self> {
        Self::from_fn(half_width, step, |x| Complex64::new(f(x), 0.0))
    }

    pub fn zero(half_width: f64, step: f64) -> Result<Self> {
        Self::from_fn(half_width, step, |_| Complex64::ZERO)
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn half_width(&self) -> f64 {
        self.half_width
    }

    pub fn step(&self) -> f64 {
        self.step
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    pub fn x_at(&self, k: usize) -> f64 {
        -self.half_width + k as f64 * self.step
    }

    /// Grid index nearest to `x`.
    pub fn index_near(&self, x: f64) -> usize {
        let k = ((x + self.half_width) / self.step).round();
        (k.max(0.0) as usize).min(self.values.len() - 1)
    }

    /// Frequency-grid spacing `1/(2X)`.
    pub fn freq_step(&self) -> f64 {
        1.0 / (2.0 * self.half_width)
    }

    /// Frequency-grid half width `1/(2h)`.
    pub fn freq_half_width(&self) -> f64 {
        1.0 / (2.0 * self.step)
    }

    pub fn freq_at(&self, m: usize) -> f64 {
        -self.freq_half_width() + m as f64 * self.freq_step()
    }

    /// `h * sum |f|^2`.
    pub fn l2_norm_sq(&self) -> f64 {
        self.step * self.values.iter().map(|v| v.norm_sqr()).sum::<f64>()
    }

    pub fn max_abs(&self) -> f64 {
        self.values.iter().map(|v| v.norm()).fold(0.0, f64::max)
    }

    /// Fraction of the squared norm carried by `|x| > X - 1`.
    pub fn tail_mass_fraction(&self) -> f64 {
        let total: f64 = self.values.iter().map(|v| v.norm_sqr()).sum();
        if total == 0.0 {
            return 0.0;
        }
        let tail: f64 = self
            .values
            .iter()
            .enumerate()
            .filter(|(k, _)| self.x_at(*k).abs() > self.half_width - 1.0)
            .map(|(_, v)| v.norm_sqr())
            .sum();
        tail / total
    }

    /// Errors when the tail mass says the window clips the function.
    pub fn check_aliasing(&self) -> Result<()> {
        let frac = self.tail_mass_fraction();
        if frac > 1e-12 {
            return Err(Error::Integrability(format!(
                "tail mass fraction {frac:.3e} beyond |x| > X - 1 exceeds 1e-12 (aliasing)"
            )));
        }
        Ok(())
    }

    /// Cached transform values `f_hat(xi_m)` under the continuous convention
    /// `f_hat(xi) = int f(x) e^{-2 pi i x xi} dx`, discretized as
    /// `h * sum_k f(x_k) e^{-2 pi i x_k xi_m}`.
    pub fn fourier(&self) -> &[Complex64] {
        self.fourier.get_or_init(|| transform(&self.values, self.step, false))
    }

    /// Discrete Parseval defect `|sum|f|^2 h - sum|f_hat|^2 d_xi|` relative
    /// to the norm (exact identity up to rounding for this scaling).
    pub fn parseval_gap(&self) -> f64 {
        let time = self.l2_norm_sq();
        let freq: f64 = self.freq_step() * self.fourier().iter().map(|v| v.norm_sqr()).sum::<f64>();
        if time == 0.0 {
            freq.abs()
        } else {
            (time - freq).abs() / time
        }
    }

    /// The discretized `H`-norm
    /// `sqrt(int (1+x^2)|f|^2 + int (1+xi^2)|f_hat|^2)`, with the aliasing
    /// flag propagated as an error.
    pub fn h_norm(&self) -> Result<f64> {
        self.check_aliasing()?;
        let mut time = 0.0;
        for (k, v) in self.values.iter().enumerate() {
            let x = self.x_at(k);
            time += (1.0 + x * x) * v.norm_sqr();
        }
        let mut freq = 0.0;
        for (m, v) in self.fourier().iter().enumerate() {
            let xi = self.freq_at(m);
            freq += (1.0 + xi * xi) * v.norm_sqr();
        }
        Ok((time * self.step + freq * self.freq_step()).sqrt())
    }
}

/// Forward transform as a new [`SampledFunction`] living on the dual grid.
pub fn dft(f: &SampledFunction) -> Result<SampledFunction> {
    let values = f.fourier().to_vec();
    SampledFunction::from_values(f.freq_half_width(), f.freq_step(), values)
}

/// Inverse transform back to the primal grid (round-trips with [`dft`]).
pub fn idft(f_hat: &SampledFunction) -> Result<SampledFunction> {
    let values = transform(&f_hat.values, f_hat.step, true);
    SampledFunction::from_values(f_hat.freq_half_width(), f_hat.freq_step(), values)
}

/// Shared kernel: with both grids symmetric and n divisible by 4, the
/// continuous-convention transform reduces to
/// `scale * (-1)^m FFT[(-1)^k f_k](m)`.
fn transform(values: &[Complex64], scale: f64, inverse: bool) -> Vec<Complex64> {
    let n = values.len();
    debug_assert!(n.is_multiple_of(4));
    let mut buf: Vec<Complex64> = values
        .iter()
        .enumerate()
        .map(|(k, v)| if k % 2 == 0 { *v } else { -*v })
        .collect();
    let mut planner = FftPlanner::new();
    let plan = if inverse { planner.plan_fft_inverse(n) } else { planner.plan_fft_forward(n) };
    plan.process(&mut buf);
    buf.iter_mut().enumerate().for_each(|(m, v)| {
        *v *= scale;
        if m % 2 == 1 {
            *v = -*v;
        }
    });
    buf
}

/// A convex increasing map on `[0, inf)` used as `Phi`/`Psi` in the
/// inequality machinery.
#[derive(Debug, Clone)]
pub enum ConvexWeightFn {
    Identity,
    /// `t^theta`, `theta >= 1`.
    PowerTheta(f64),
    /// `Psi(t) = S^2(sqrt t)`.
    SquaredWeight(WeightSpec),
}

impl ConvexWeightFn {
    pub fn eval(&self, t: f64) -> Result<f64> {
        if !(t >= 0.0) {
            return Err(Error::Parameter(format!("convex weight argument must be >= 0, got {t}")));
        }
        match self {
            ConvexWeightFn::Identity => Ok(t),
            ConvexWeightFn::PowerTheta(theta) => Ok(t.powf(*theta)),
            ConvexWeightFn::SquaredWeight(s) => {
                let v = s.eval(t.sqrt())?;
                Ok(v * v)
            }
        }
    }

    /// Saturating evaluation for hot loops; totals are checked afterwards.
    pub(crate) fn eval_sat(&self, t: f64) -> f64 {
        match self {
            ConvexWeightFn::Identity => t,
            ConvexWeightFn::PowerTheta(theta) => t.powf(*theta),
            ConvexWeightFn::SquaredWeight(s) => match s.eval(t.sqrt()) {
                Ok(v) => v * v,
                Err(_) => f64::MAX,
            },
        }
    }

    /// Generalized inverse on `[0, inf)`.
    pub fn inverse(&self, y: f64) -> Result<f64> {
        if !(y >= 0.0) {
            return Err(Error::Parameter(format!("convex weight inverse needs y >= 0, got {y}")));
        }
        match self {
            ConvexWeightFn::Identity => Ok(y),
            ConvexWeightFn::PowerTheta(theta) => Ok(y.powf(1.0 / theta)),
            ConvexWeightFn::SquaredWeight(s) => {
                let r = s.inverse(y.sqrt(), 1e-12)?;
                Ok(r * r)
            }
        }
    }

    pub fn validate(&self) -> Result<()> {
        match self {
            ConvexWeightFn::PowerTheta(theta) if !(*theta >= 1.0) => Err(Error::Parameter(
                format!("PowerTheta exponent must be >= 1, got {theta}"),
            )),
            _ => Ok(()),
        }
    }
}

/// True iff consecutive gaps (and the window edges to the nearest point)
/// never exceed `ell`. Empty point sets are never dense.
pub fn is_ell_dense(points: &[f64], ell: f64, window: (f64, f64)) -> bool {
    if points.is_empty() || !(ell > 0.0) {
        return false;
    }
    if points[0] - window.0 > ell || window.1 - points[points.len() - 1] > ell {
        return false;
    }
    points.windows(2).all(|w| w[1] - w[0] <= ell)
}
