//! Compactly supported window functions: the normalized smooth bump and the
//! iterated-rectangle kernel (an indicator convolved with k copies of a
//! narrow uniform kernel, evaluated in closed form).

use super::SampledFunction;
use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};

/// Window grid default: X = 4, h = 1/256 (2048 points). The finer step
/// pushes the frequency window to |eta| <= 128 so smooth-window transforms
/// decay into round-off before the grid edge.
pub const WINDOW_X: f64 = 4.0;
pub const WINDOW_H: f64 = 1.0 / 256.0;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum WindowKind {
    /// Normalized `exp(-1/(1-x^2))` on (-1, 1).
    Mollifier,
    /// `1_{[-u,u]} * ((k/u) 1_{[-u/2k, u/2k]})^{* k}`: identically 1 on
    /// `[-u/2, u/2]`, supported in `[-3u/2, 3u/2]`.
    IteratedRect { u: f64, k: u32 },
}

/// A window together with its samples (and cached transform).
#[derive(Debug, Clone)]
pub struct WindowFunction {
    pub kind: WindowKind,
    pub samples: SampledFunction,
}

impl WindowFunction {
    /// Value of the continuous window at `x` (closed form).
    pub fn eval(&self, x: f64) -> f64 {
        match self.kind {
            WindowKind::Mollifier => mollifier_unnormalized(x) * self.mollifier_scale(),
            WindowKind::IteratedRect { u, k } => iterated_rect(x, u, k),
        }
    }

    fn mollifier_scale(&self) -> f64 {
        // reproduce the normalization used at build time
        let h = self.samples.step();
        let x = self.samples.half_width();
        let raw: f64 = (0..self.samples.len())
            .map(|i| mollifier_unnormalized(-x + i as f64 * h).powi(2))
            .sum::<f64>()
            * h;
        1.0 / raw.sqrt()
    }

    /// The closed-form transform of the iterated rectangle:
    /// `1_hat(eta) * (sin(pi u eta / k)/(pi u eta / k))^k` with
    /// `1_hat(eta) = sin(2 pi u eta)/(pi eta)`.
    pub fn rect_fourier_formula(&self, eta: f64) -> Result<f64> {
        let WindowKind::IteratedRect { u, k } = self.kind else {
            return Err(Error::Parameter("formula applies to iterated rectangles".into()));
        };
        let indicator = if eta == 0.0 {
            2.0 * u
        } else {
            (2.0 * std::f64::consts::PI * u * eta).sin() / (std::f64::consts::PI * eta)
        };
        let arg = std::f64::consts::PI * u * eta / k as f64;
        let sinc = if arg == 0.0 { 1.0 } else { arg.sin() / arg };
        Ok(indicator * sinc.powi(k as i32))
    }
}

fn mollifier_unnormalized(x: f64) -> f64 {
    if x.abs() < 1.0 {
        (-1.0 / (1.0 - x * x)).exp()
    } else {
        0.0
    }
}

/// Closed-form value of the k-fold convolution: the narrow kernels compose
/// to a scaled Irwin-Hall density on [-u/2, u/2], so the convolution with
/// the indicator is a difference of Irwin-Hall CDFs.
fn iterated_rect(x: f64, u: f64, k: u32) -> f64 {
    let cdf = |y: f64| irwin_hall_cdf((y / (u / k as f64)) + k as f64 / 2.0, k);
    (cdf(x + u) - cdf(x - u)).clamp(0.0, 1.0)
}

/// CDF of the sum of `k` iid U[0,1] at `t`.
fn irwin_hall_cdf(t: f64, k: u32) -> f64 {
    if t <= 0.0 {
        return 0.0;
    }
    let kf = k as f64;
    if t >= kf {
        return 1.0;
    }
    let mut sum = 0.0;
    let mut binom = 1.0; // C(k, j)
    let mut sign = 1.0;
    let mut fact = 1.0; // k!
    for i in 2..=k as u64 {
        fact *= i as f64;
    }
    for j in 0..=(t.floor() as u32) {
        if j > 0 {
            binom *= (k - j + 1) as f64 / j as f64;
            sign = -sign;
        }
        sum += sign * binom * (t - j as f64).powi(k as i32);
    }
    (sum / fact).clamp(0.0, 1.0)
}

/// Sample a window on the given grid.
///
/// The iterated rectangle needs `u/(2k) >= 2h` so the narrow kernel is
/// resolved; the mollifier is normalized to unit discrete L2 norm.
pub fn build_window(kind: WindowKind, half_width: f64, step: f64) -> Result<WindowFunction> {
    match kind {
        WindowKind::Mollifier => {
            if half_width < 1.0 {
                return Err(Error::Parameter("mollifier needs X >= 1".into()));
            }
            let raw = SampledFunction::from_real_fn(half_width, step, mollifier_unnormalized)?;
            let norm = raw.l2_norm_sq().sqrt();
            let values = raw.values().iter().map(|v| v / norm).collect();
            Ok(WindowFunction { kind, samples: SampledFunction::from_values(half_width, step, values)? })
        }
        WindowKind::IteratedRect { u, k } => {
            if !(u > 0.0) || k < 1 {
                return Err(Error::Parameter("need u > 0 and k >= 1".into()));
            }
            if u / (2.0 * k as f64) < 2.0 * step {
                return Err(Error::Resolution(format!(
                    "grid step {step} too coarse to resolve kernel width u/(2k) = {}",
                    u / (2.0 * k as f64)
                )));
            }
            if 1.5 * u >= half_width {
                return Err(Error::Parameter(format!(
                    "support [-3u/2, 3u/2] = [{}, {}] must fit inside the grid",
                    -1.5 * u,
                    1.5 * u
                )));
            }
            let samples = SampledFunction::from_real_fn(half_width, step, |x| iterated_rect(x, u, k))?;
            Ok(WindowFunction { kind, samples })
        }
    }
}

/// Convenience constructor on the window default grid.
pub fn default_window(kind: WindowKind) -> Result<WindowFunction> {
    build_window(kind, WINDOW_X, WINDOW_H)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_complex::Complex64;

    #[test]
    fn mollifier_unit_norm_and_support() {
        let w = default_window(WindowKind::Mollifier).unwrap();
        assert!((w.samples.l2_norm_sq() - 1.0).abs() < 1e-12);
        for (i, v) in w.samples.values().iter().enumerate() {
            let x = w.samples.x_at(i);
            if x.abs() >= 1.0 {
                assert_eq!(v.re, 0.0);
            }
        }
    }

    #[test]
    fn single_convolution_is_trapezoid() {
        // k = 1, u = 1: plateau [-1/2, 1/2], linear ramps to +-3/2
        let w = default_window(WindowKind::IteratedRect { u: 1.0, k: 1 }).unwrap();
        assert!((w.eval(0.0) - 1.0).abs() < 1e-15);
        assert!((w.eval(0.5) - 1.0).abs() < 1e-15);
        assert!((w.eval(1.0) - 0.5).abs() < 1e-15); // midpoint of the ramp
        assert!(w.eval(1.5).abs() < 1e-15);
        assert!((w.eval(-1.25) - 0.25).abs() < 1e-12);
    }

    #[test]
    fn plateau_and_support_exact() {
        for k in [1u32, 2, 3, 4] {
            let u = 1.0;
            let w = default_window(WindowKind::IteratedRect { u, k }).unwrap();
            for (i, v) in w.samples.values().iter().enumerate() {
                let x = w.samples.x_at(i);
                if x.abs() <= u / 2.0 {
                    assert!((v.re - 1.0).abs() < 1e-10, "k={k}, x={x}: {}", v.re);
                }
                if x.abs() >= 1.5 * u {
                    assert!(v.re.abs() < 1e-12, "k={k}, x={x}");
                }
            }
        }
    }

    #[test]
    fn fourier_side_matches_closed_formula() {
        // k >= 3 decays fast enough that grid aliasing sits below 1e-8
        let w = default_window(WindowKind::IteratedRect { u: 1.0, k: 3 }).unwrap();
        let f_hat = w.samples.fourier();
        let mut max_err = 0.0f64;
        for (m, v) in f_hat.iter().enumerate() {
            let eta = w.samples.freq_at(m);
            if eta.abs() > 16.0 {
                continue;
            }
            let expect = w.rect_fourier_formula(eta).unwrap();
            max_err = max_err.max((v - Complex64::new(expect, 0.0)).norm());
        }
        assert!(max_err < 1e-8, "max err {max_err}");
    }

    #[test]
    fn closed_form_agrees_with_discrete_convolution() {
        // brute-force discrete convolution of sampled kernels reproduces the
        // Irwin-Hall evaluation to O(h^2)
        let (u, k) = (1.0, 2u32);
        let h = WINDOW_H;
        let n = (2.0 * WINDOW_X / h) as usize;
        let xs: Vec<f64> = (0..n).map(|i| -WINDOW_X + i as f64 * h).collect();
        // half-weight endpoint convention for the jump points
        let sample_ind = |x: f64, half: f64| -> f64 {
            let d = x.abs() - half;
            if d < -1e-12 {
                1.0
            } else if d.abs() <= 1e-12 {
                0.5
            } else {
                0.0
            }
        };
        let mut g: Vec<f64> = xs.iter().map(|&x| sample_ind(x, u)).collect();
        let kern: Vec<f64> = xs.iter().map(|&x| sample_ind(x, u / (2.0 * k as f64))).collect();
        let kern_mass: f64 = kern.iter().sum::<f64>() * h;
        for _ in 0..k {
            let mut next = vec![0.0; n];
            let support: Vec<usize> = (0..n).filter(|&i| kern[i] != 0.0).collect();
            for (i, out) in next.iter_mut().enumerate() {
                let mut acc = 0.0;
                for &j in &support {
                    let shift = j as i64 - (n / 2) as i64;
                    let src = i as i64 - shift;
                    if src >= 0 && (src as usize) < n {
                        acc += g[src as usize] * kern[j];
                    }
                }
                *out = acc * h / kern_mass;
            }
            g = next;
        }
        let w = default_window(WindowKind::IteratedRect { u, k }).unwrap();
        let mut max_err = 0.0f64;
        for (i, &x) in xs.iter().enumerate() {
            max_err = max_err.max((g[i] - w.eval(x)).abs());
        }
        assert!(max_err < 1e-4, "discrete vs closed form: {max_err}");
    }

    #[test]
    fn resolution_error_for_coarse_grid() {
        let r = build_window(WindowKind::IteratedRect { u: 0.1, k: 8 }, 4.0, super::super::DEFAULT_H);
        assert!(matches!(r, Err(Error::Resolution(_))));
    }
}
