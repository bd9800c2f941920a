//! Weight-function calculus: evaluation, generalized inverse, admissibility
//! certification, and the series constant built from Taylor data.

mod admissibility;
mod series;

pub use admissibility::{
    check_subexp_admissible, check_widely_admissible, AdmissibilityKind, AdmissibilityReport,
    WideLimitSample,
};
pub use series::{compute_constant_css, series_of, series_of_square, CssResult, PowerSeries};

use crate::error::{Error, Result};
use crate::numerics::{bisect_increasing, bracket_increasing};
use serde::{Deserialize, Serialize};

/// Sampling grid description for admissibility scans.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct GridSpec {
    pub lo: f64,
    pub hi: f64,
    pub points: usize,
    pub log_spaced: bool,
}

impl GridSpec {
    pub fn linear(lo: f64, hi: f64, points: usize) -> Self {
        GridSpec { lo, hi, points, log_spaced: false }
    }

    pub fn log(lo: f64, hi: f64, points: usize) -> Self {
        GridSpec { lo, hi, points, log_spaced: true }
    }

    pub fn values(&self) -> Vec<f64> {
        let n = self.points.max(2);
        if self.log_spaced {
            let l0 = self.lo.ln();
            let l1 = self.hi.ln();
            (0..n)
                .map(|i| (l0 + (l1 - l0) * i as f64 / (n - 1) as f64).exp())
                .collect()
        } else {
            (0..n)
                .map(|i| self.lo + (self.hi - self.lo) * i as f64 / (n - 1) as f64)
                .collect()
        }
    }
}

/// A parametric increasing weight `S : [0, inf) -> [0, inf)`.
///
/// The inverse is always the generalized one, `inf { x >= 0 : S(x) >= y }`,
/// so every variant composes with `LogInverse` even when it is flat near 0.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
#[serde(tag = "family", rename_all = "snake_case")]
pub enum WeightSpec {
    /// `t^a` with `a >= 1`.
    Power { a: f64 },
    /// `a * exp(b * t^s)`.
    ExpPower { a: f64, b: f64, s: f64 },
    /// `e^t`.
    Exp,
    /// Tower of `height` exponentials, `exp(exp(...exp(t)))`.
    ExpTower { height: u32 },
    /// Generalized inverse of the inner weight.
    LogInverse { of: Box<WeightSpec> },
    /// `of(t + d)` (argument shift, clamped to the domain).
    Shifted { of: Box<WeightSpec>, d: f64 },
    /// `of(t) - sum_{n <= m} of^(n)(0) t^n / n!`.
    TruncatedLowOrder { of: Box<WeightSpec>, m: u32 },
}

impl WeightSpec {
    pub fn power(a: f64) -> Result<Self> {
        if !(a >= 1.0) {
            return Err(Error::Parameter(format!("Power exponent must be >= 1, got {a}")));
        }
        Ok(WeightSpec::Power { a })
    }

    pub fn exp_power(a: f64, b: f64, s: f64) -> Result<Self> {
        if !(a > 0.0 && b > 0.0 && s > 0.0) {
            return Err(Error::Parameter(format!(
                "ExpPower needs a, b, s > 0, got ({a}, {b}, {s})"
            )));
        }
        Ok(WeightSpec::ExpPower { a, b, s })
    }

    pub fn exp_tower(height: u32) -> Result<Self> {
        if height < 1 {
            return Err(Error::Parameter("ExpTower height must be >= 1".into()));
        }
        Ok(WeightSpec::ExpTower { height })
    }

    pub fn log_inverse(of: WeightSpec) -> Self {
        WeightSpec::LogInverse { of: Box::new(of) }
    }

    pub fn shifted(of: WeightSpec, d: f64) -> Self {
        WeightSpec::Shifted { of: Box::new(of), d }
    }

    pub fn truncated_low_order(of: WeightSpec, m: u32) -> Result<Self> {
        // Needs Taylor data of the inner family to subtract.
        series::series_of(&of, m as usize + 1)?;
        Ok(WeightSpec::TruncatedLowOrder { of: Box::new(of), m })
    }

    pub fn family_name(&self) -> String {
        match self {
            WeightSpec::Power { a } => format!("power({a})"),
            WeightSpec::ExpPower { a, b, s } => format!("exppower({a},{b},{s})"),
            WeightSpec::Exp => "exp".into(),
            WeightSpec::ExpTower { height } => format!("exptower({height})"),
            WeightSpec::LogInverse { of } => format!("inv[{}]", of.family_name()),
            WeightSpec::Shifted { of, d } => format!("shift[{},{d}]", of.family_name()),
            WeightSpec::TruncatedLowOrder { of, m } => format!("trunc[{},{m}]", of.family_name()),
        }
    }

    /// `S(t)`. Errors when the value leaves f64 range.
    pub fn eval(&self, t: f64) -> Result<f64> {
        if !(t >= 0.0) || !t.is_finite() {
            return Err(Error::Parameter(format!("weight argument must be finite >= 0, got {t}")));
        }
        let v = self.eval_raw(t);
        if v.is_finite() {
            Ok(v)
        } else {
            Err(Error::EvalOverflow { t, family: self.family_name() })
        }
    }

    fn eval_raw(&self, t: f64) -> f64 {
        match self {
            WeightSpec::Power { a } => t.powf(*a),
            WeightSpec::ExpPower { a, b, s } => a * (b * t.powf(*s)).exp(),
            WeightSpec::Exp => t.exp(),
            WeightSpec::ExpTower { height } => {
                let mut v = t;
                for _ in 0..*height {
                    v = v.exp();
                    if !v.is_finite() {
                        return f64::INFINITY;
                    }
                }
                v
            }
            WeightSpec::LogInverse { of } => of.inverse(t, 1e-13).unwrap_or(f64::INFINITY),
            WeightSpec::Shifted { of, d } => of.eval_raw((t + d).max(0.0)),
            WeightSpec::TruncatedLowOrder { of, m } => {
                let taylor = of.taylor_prefix(*m as usize);
                if t <= 1.0 {
                    // Sum the remainder series directly: exact for our
                    // all-non-negative-coefficient families and avoids the
                    // cancellation of the subtracted prefix.
                    if let Ok(series) = series::series_of(of, 64) {
                        let c = series.taylor();
                        let mut acc = 0.0;
                        let mut pw = 1.0;
                        for (n, &cn) in c.iter().enumerate() {
                            if n > *m as usize {
                                acc += cn * pw;
                            }
                            pw *= t;
                        }
                        return acc;
                    }
                }
                let mut poly = 0.0;
                let mut pw = 1.0;
                for &c in &taylor {
                    poly += c * pw;
                    pw *= t;
                }
                of.eval_raw(t) - poly
            }
        }
    }

    /// Taylor coefficients `of^(n)(0)/n!` for `n = 0..=m`.
    fn taylor_prefix(&self, m: usize) -> Vec<f64> {
        series::series_of(self, m + 1)
            .map(|s| s.taylor()[..=m].to_vec())
            .unwrap_or_else(|_| vec![0.0; m + 1])
    }

    /// `ln S(t)` without overflow for the closed-form families.
    pub fn eval_ln(&self, t: f64) -> f64 {
        match self {
            WeightSpec::Power { a } => a * t.ln(),
            WeightSpec::ExpPower { a, b, s } => a.ln() + b * t.powf(*s),
            WeightSpec::Exp => t,
            WeightSpec::ExpTower { height } => {
                // ln of a height-h tower is a height-(h-1) tower.
                if *height == 1 {
                    t
                } else {
                    WeightSpec::ExpTower { height: height - 1 }.eval_raw(t)
                }
            }
            WeightSpec::LogInverse { .. }
            | WeightSpec::Shifted { .. }
            | WeightSpec::TruncatedLowOrder { .. } => self.eval_raw(t).ln(),
        }
    }

    /// Generalized inverse `inf { x >= 0 : S(x) >= y }` within `tol`.
    ///
    /// Returns 0 whenever `y <= S(0)`; closed forms are used where the family
    /// has them, exponential bracketing plus bisection otherwise.
    pub fn inverse(&self, y: f64, tol: f64) -> Result<f64> {
        if !(y >= 0.0) || !y.is_finite() {
            return Err(Error::Parameter(format!("inverse argument must be finite >= 0, got {y}")));
        }
        match self {
            WeightSpec::Power { a } => Ok(y.powf(1.0 / a)),
            WeightSpec::ExpPower { a, b, s } => {
                if y <= *a {
                    Ok(0.0)
                } else {
                    Ok(((y / a).ln() / b).powf(1.0 / s))
                }
            }
            WeightSpec::Exp => Ok(if y <= 1.0 { 0.0 } else { y.ln() }),
            WeightSpec::ExpTower { height } => {
                let mut v = y;
                for _ in 0..*height {
                    if v <= 1.0 {
                        return Ok(0.0);
                    }
                    v = v.ln();
                }
                Ok(v.max(0.0))
            }
            WeightSpec::LogInverse { of } => of.eval(y),
            WeightSpec::Shifted { of, d } => Ok((of.inverse(y, tol)? - d).max(0.0)),
            _ => {
                let s0 = self.eval(0.0)?;
                if y <= s0 {
                    return Ok(0.0);
                }
                let f = |x: f64| self.eval_raw(x);
                let hi = bracket_increasing(&f, y, 1.0, 1e300)?;
                Ok(bisect_increasing(&f, y, 0.0, hi, tol))
            }
        }
    }

    /// True when the weight is unbounded with `S(0) = 0` (the hypotheses of
    /// the integral Fenchel–Young inequality).
    pub fn is_young_admissible(&self) -> bool {
        matches!(self.eval(0.0), Ok(v) if v == 0.0)
    }
}

/// Spec-operation alias for [`WeightSpec::eval`].
pub fn eval_weight(spec: &WeightSpec, t: f64) -> Result<f64> {
    spec.eval(t)
}

/// Spec-operation alias for [`WeightSpec::inverse`].
pub fn eval_inverse(spec: &WeightSpec, y: f64, tol: f64) -> Result<f64> {
    spec.inverse(y, tol)
}
