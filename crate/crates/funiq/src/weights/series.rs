//! Taylor-series arithmetic for the analytic weight families and the
//! series constant that the widely-admissible machinery needs.

use super::WeightSpec;
use crate::error::{Error, Result};
use crate::numerics::neumaier_sum;

/// Truncated Taylor data of an entire function at 0.
///
/// Internally the series is carried as Taylor coefficients `c_n = A_n / n!`,
/// which stay in f64 range far beyond where the raw derivatives `A_n`
/// overflow; `derivs()` materializes the `A_n` on demand.
#[derive(Debug, Clone, PartialEq)]
pub struct PowerSeries {
    taylor: Vec<f64>,
}

impl PowerSeries {
    pub fn from_taylor(taylor: Vec<f64>) -> Self {
        PowerSeries { taylor }
    }

    /// Derivative-at-zero form: entry `n` is `A_n = f^(n)(0)`.
    pub fn from_derivs(derivs: Vec<f64>) -> Self {
        let mut fact = 1.0;
        let taylor = derivs
            .iter()
            .enumerate()
            .map(|(n, &a)| {
                if n > 0 {
                    fact *= n as f64;
                }
                a / fact
            })
            .collect();
        PowerSeries { taylor }
    }

    pub fn order(&self) -> usize {
        self.taylor.len().saturating_sub(1)
    }

    pub fn taylor(&self) -> &[f64] {
        &self.taylor
    }

    /// `A_n = c_n * n!`; overflows to infinity past n ~ 170 by construction.
    pub fn derivs(&self) -> Vec<f64> {
        let mut fact = 1.0;
        self.taylor
            .iter()
            .enumerate()
            .map(|(n, &c)| {
                if n > 0 {
                    fact *= n as f64;
                }
                c * fact
            })
            .collect()
    }

    /// Horner evaluation of the truncated series at `t`.
    pub fn eval(&self, t: f64) -> f64 {
        let mut acc = 0.0;
        for &c in self.taylor.iter().rev() {
            acc = acc * t + c;
        }
        acc
    }

    /// Cauchy product truncated to the shorter order.
    pub fn mul(&self, other: &PowerSeries) -> PowerSeries {
        let n = self.taylor.len().min(other.taylor.len());
        let mut out = vec![0.0; n];
        for (i, &a) in self.taylor.iter().enumerate().take(n) {
            if a == 0.0 {
                continue;
            }
            for (j, &b) in other.taylor.iter().enumerate().take(n - i) {
                out[i + j] += a * b;
            }
        }
        PowerSeries { taylor: out }
    }

    /// exp of the series, via the standard ODE recurrence
    /// `h' = u' h  =>  n h_n = sum_k k u_k h_{n-k}`.
    pub fn exp(&self) -> PowerSeries {
        let n = self.taylor.len();
        let mut h = vec![0.0; n];
        h[0] = self.taylor[0].exp();
        for m in 1..n {
            let mut acc = 0.0;
            for k in 1..=m {
                acc += k as f64 * self.taylor[k] * h[m - k];
            }
            h[m] = acc / m as f64;
        }
        PowerSeries { taylor: h }
    }
}

/// Taylor series of `S` itself through order `n` (n + 1 coefficients).
///
/// Supported: integer Power, Exp, ExpPower with integer s, ExpTower, and
/// TruncatedLowOrder over any of these.
pub fn series_of(spec: &WeightSpec, n: usize) -> Result<PowerSeries> {
    let unsupported = |reason: &str| Error::UnsupportedFamily {
        family: spec.family_name(),
        reason: reason.into(),
    };
    match spec {
        WeightSpec::Power { a } => {
            let k = a.round();
            if (a - k).abs() > 1e-9 {
                return Err(unsupported("t^a is entire only for integer a"));
            }
            let k = k as usize;
            let mut taylor = vec![0.0; n + 1];
            if k <= n {
                taylor[k] = 1.0;
            }
            Ok(PowerSeries { taylor })
        }
        WeightSpec::Exp => {
            let mut taylor = vec![0.0; n + 1];
            let mut c = 1.0;
            for (i, slot) in taylor.iter_mut().enumerate() {
                if i > 0 {
                    c /= i as f64;
                }
                *slot = c;
            }
            Ok(PowerSeries { taylor })
        }
        WeightSpec::ExpPower { a, b, s } => {
            let k = s.round();
            if (s - k).abs() > 1e-12 || k < 1.0 {
                return Err(unsupported("exp(b t^s) is entire only for integer s"));
            }
            let k = k as usize;
            let mut inner = vec![0.0; n + 1];
            if k <= n {
                inner[k] = *b;
            }
            let mut series = PowerSeries { taylor: inner }.exp();
            for c in &mut series.taylor {
                *c *= a;
            }
            Ok(series)
        }
        WeightSpec::ExpTower { height } => {
            let mut taylor = vec![0.0; n + 1];
            if n >= 1 {
                taylor[1] = 1.0;
            }
            let mut series = PowerSeries { taylor };
            for _ in 0..*height {
                series = series.exp();
            }
            Ok(series)
        }
        WeightSpec::TruncatedLowOrder { of, m } => {
            let mut series = series_of(of, n)?;
            for c in series.taylor.iter_mut().take((*m as usize + 1).min(n + 1)) {
                *c = 0.0;
            }
            Ok(series)
        }
        WeightSpec::LogInverse { .. } | WeightSpec::Shifted { .. } => {
            Err(unsupported("no Taylor-at-zero representation"))
        }
    }
}

/// Taylor series of `S^2` at 0 through order `n`.
///
/// `Power(a)` is special-cased so that half-integer exponents (where `S^2`
/// is a monomial even though `S` is not entire) stay representable.
pub fn series_of_square(spec: &WeightSpec, n: usize) -> Result<PowerSeries> {
    if let WeightSpec::Power { a } = spec {
        let k2 = (2.0 * a).round();
        if (2.0 * a - k2).abs() < 1e-9 {
            let k2 = k2 as usize;
            let mut taylor = vec![0.0; n + 1];
            if k2 <= n {
                taylor[k2] = 1.0;
            }
            return Ok(PowerSeries { taylor });
        }
        return Err(Error::UnsupportedFamily {
            family: spec.family_name(),
            reason: "t^{2a} is entire only for 2a integer".into(),
        });
    }
    let s = series_of(spec, n)?;
    Ok(s.mul(&s))
}

/// Result of summing the series constant.
#[derive(Debug, Clone, PartialEq)]
pub struct CssResult {
    pub value: f64,
    pub terms_used: usize,
    /// Geometric bound on the dropped tail from the final root-test ratio.
    pub root_test_tail: f64,
}

const TRUNCATION_RATIO: f64 = 0.5;

/// The constant `S^2(1) + (1/2e) * sum_{n >= ceil(2/s)} c_n x_n^n` with
/// `x_n = S^{-1}((288 e / pi) (n s)^2)` and `c_n` the Taylor coefficients
/// of `S^2`.
///
/// Terms are accumulated until the n-th root of the current term drops below
/// a fixed ratio `r = 1/2` and the geometric tail estimate falls under `tol`.
pub fn compute_constant_css(spec: &WeightSpec, s: f64, tol: f64) -> Result<CssResult> {
    if !(s > 0.0) {
        return Err(Error::Parameter(format!("series constant needs s > 0, got {s}")));
    }
    let n0 = (2.0 / s).ceil() as usize;
    let n_max = 2000usize;
    // Power is the only polynomial family: its square has one monomial.
    let finite_degree: Option<usize> = match spec {
        WeightSpec::Power { a } => Some((2.0 * a).round() as usize),
        _ => None,
    };
    let mut order = match finite_degree {
        Some(d) => d.max(n0),
        None => 256usize.max(n0 + 16),
    };

    let mut square = series_of_square(spec, order)?;
    let factor = 288.0 * std::f64::consts::E / std::f64::consts::PI;

    let mut terms: Vec<f64> = Vec::new();
    let mut n = n0;
    let mut last_root = f64::INFINITY;
    let tail;
    loop {
        if let Some(d) = finite_degree {
            if n > d {
                // finite series exhausted: the dropped tail is exactly zero
                tail = 0.0;
                break;
            }
        }
        if n > order {
            if order >= n_max {
                return Err(Error::Divergence { ratio: TRUNCATION_RATIO, n_max });
            }
            order = (order * 2).min(n_max);
            square = series_of_square(spec, order)?;
        }
        let c = square.taylor().get(n).copied().unwrap_or(0.0);
        if c != 0.0 {
            let x = spec.inverse(factor * (n as f64 * s).powi(2), 1e-12)?;
            // log-space guards against x^n overflowing before c_n/n! tames it
            let ln_term = c.abs().ln() + n as f64 * x.max(f64::MIN_POSITIVE).ln();
            if ln_term > 700.0 {
                return Err(Error::Numeric(format!(
                    "series constant term at n = {n} exceeds f64 range"
                )));
            }
            let term = c * x.powi(n as i32);
            terms.push(term);
            last_root = (ln_term / n as f64).exp();
            if last_root < TRUNCATION_RATIO && n >= n0 + 2 {
                let rho = last_root;
                let bound = rho.powi(n as i32 + 1) / (1.0 - rho);
                if bound < tol {
                    tail = bound;
                    break;
                }
            }
        }
        n += 1;
        if n > n_max {
            if last_root < 1.0 {
                let rho = last_root;
                tail = rho.powi(n as i32) / (1.0 - rho);
                break;
            }
            return Err(Error::Divergence { ratio: TRUNCATION_RATIO, n_max });
        }
    }

    let sum = neumaier_sum(&terms);
    let s1 = spec.eval(1.0)?;
    let value = s1 * s1 + sum / (2.0 * std::f64::consts::E);
    Ok(CssResult { value, terms_used: terms.len(), root_test_tail: tail })
}
