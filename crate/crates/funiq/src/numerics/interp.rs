use crate::error::{Error, Result};

/// Monotone cubic Hermite interpolant (Fritsch–Carlson limited slopes).
///
/// For strictly increasing data the interpolant is strictly increasing and
/// passes through every knot exactly.
#[derive(Debug, Clone)]
pub struct MonotoneCubic {
    xs: Vec<f64>,
    ys: Vec<f64>,
    slopes: Vec<f64>,
}

impl MonotoneCubic {
    pub fn new(xs: Vec<f64>, ys: Vec<f64>) -> Result<Self> {
        if xs.len() != ys.len() || xs.len() < 2 {
            return Err(Error::Parameter(
                "monotone cubic needs >= 2 equal-length knot arrays".into(),
            ));
        }
        for w in xs.windows(2) {
            if w[1] <= w[0] {
                return Err(Error::Parameter("knot abscissae must strictly increase".into()));
            }
        }
        let n = xs.len();
        let mut d = vec![0.0; n - 1]; // secant slopes
        for i in 0..n - 1 {
            d[i] = (ys[i + 1] - ys[i]) / (xs[i + 1] - xs[i]);
        }
        let mut m = vec![0.0; n];
        m[0] = d[0];
        m[n - 1] = d[n - 2];
        for i in 1..n - 1 {
            m[i] = if d[i - 1] * d[i] <= 0.0 {
                0.0
            } else {
                0.5 * (d[i - 1] + d[i])
            };
        }
        // Fritsch–Carlson limiter: keep alpha^2 + beta^2 <= 9.
        for i in 0..n - 1 {
            if d[i] == 0.0 {
                m[i] = 0.0;
                m[i + 1] = 0.0;
                continue;
            }
            let alpha = m[i] / d[i];
            let beta = m[i + 1] / d[i];
            let s = alpha * alpha + beta * beta;
            if s > 9.0 {
                let tau = 3.0 / s.sqrt();
                m[i] = tau * alpha * d[i];
                m[i + 1] = tau * beta * d[i];
            }
        }
        Ok(MonotoneCubic { xs, ys, slopes: m })
    }

    pub fn x_min(&self) -> f64 {
        self.xs[0]
    }

    pub fn x_max(&self) -> f64 {
        *self.xs.last().unwrap()
    }

    /// Evaluate inside the knot span. `x` exactly at a knot returns the knot
    /// value exactly.
    pub fn eval(&self, x: f64) -> Result<f64> {
        if x < self.x_min() || x > self.x_max() {
            return Err(Error::Precondition(format!(
                "x = {x} outside interpolation span [{}, {}]",
                self.x_min(),
                self.x_max()
            )));
        }
        let i = match self.xs.binary_search_by(|v| v.partial_cmp(&x).unwrap()) {
            Ok(k) => return Ok(self.ys[k]),
            Err(k) => k - 1,
        };
        let h = self.xs[i + 1] - self.xs[i];
        let t = (x - self.xs[i]) / h;
        let t2 = t * t;
        let t3 = t2 * t;
        let h00 = 2.0 * t3 - 3.0 * t2 + 1.0;
        let h10 = t3 - 2.0 * t2 + t;
        let h01 = -2.0 * t3 + 3.0 * t2;
        let h11 = t3 - t2;
        Ok(h00 * self.ys[i]
            + h10 * h * self.slopes[i]
            + h01 * self.ys[i + 1]
            + h11 * h * self.slopes[i + 1])
    }

    /// Derivative by the same Hermite basis.
    pub fn deriv(&self, x: f64) -> Result<f64> {
        if x < self.x_min() || x > self.x_max() {
            return Err(Error::Precondition("derivative outside span".into()));
        }
        let i = match self.xs.binary_search_by(|v| v.partial_cmp(&x).unwrap()) {
            Ok(k) => k.min(self.xs.len() - 2),
            Err(k) => k - 1,
        };
        let h = self.xs[i + 1] - self.xs[i];
        let t = (x - self.xs[i]) / h;
        let dh00 = (6.0 * t * t - 6.0 * t) / h;
        let dh10 = 3.0 * t * t - 4.0 * t + 1.0;
        let dh01 = (-6.0 * t * t + 6.0 * t) / h;
        let dh11 = 3.0 * t * t - 2.0 * t;
        Ok(dh00 * self.ys[i]
            + dh10 * self.slopes[i]
            + dh01 * self.ys[i + 1]
            + dh11 * self.slopes[i + 1])
    }
}

/// Piecewise-linear table lookup with flat extrapolation.
#[derive(Debug, Clone, serde::Serialize, serde::Deserialize, PartialEq)]
pub struct LinearTable {
    pub xs: Vec<f64>,
    pub ys: Vec<f64>,
}

impl LinearTable {
    pub fn new(xs: Vec<f64>, ys: Vec<f64>) -> Result<Self> {
        if xs.len() != ys.len() || xs.is_empty() {
            return Err(Error::Parameter("table needs equal non-empty arrays".into()));
        }
        for w in xs.windows(2) {
            if w[1] <= w[0] {
                return Err(Error::Parameter("table abscissae must strictly increase".into()));
            }
        }
        Ok(LinearTable { xs, ys })
    }

    pub fn eval(&self, x: f64) -> f64 {
        if x <= self.xs[0] {
            return self.ys[0];
        }
        if x >= *self.xs.last().unwrap() {
            return *self.ys.last().unwrap();
        }
        let i = self.xs.partition_point(|&v| v <= x) - 1;
        let t = (x - self.xs[i]) / (self.xs[i + 1] - self.xs[i]);
        self.ys[i] + t * (self.ys[i + 1] - self.ys[i])
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn interpolant_hits_knots_exactly() {
        let xs = vec![0.0, 1.0, 2.5, 4.0];
        let ys = vec![0.0, 1.0, 2.0, 3.0];
        let c = MonotoneCubic::new(xs.clone(), ys.clone()).unwrap();
        for (x, y) in xs.iter().zip(&ys) {
            assert_eq!(c.eval(*x).unwrap(), *y);
        }
    }

    #[test]
    fn interpolant_is_monotone_between_knots() {
        let xs = vec![0.0, 0.3, 0.35, 2.0, 5.0];
        let ys = vec![0.0, 1.0, 1.05, 1.5, 9.0];
        let c = MonotoneCubic::new(xs, ys).unwrap();
        let mut prev = c.eval(0.0).unwrap();
        let mut x = 0.0f64;
        while x < 5.0 {
            x += 0.001;
            let v = c.eval(x.min(5.0)).unwrap();
            assert!(v >= prev - 1e-12, "not monotone at {x}: {v} < {prev}");
            prev = v;
        }
    }

    #[test]
    fn linear_data_reproduced_exactly() {
        let xs: Vec<f64> = (0..20).map(|i| i as f64 * 0.25).collect();
        let ys: Vec<f64> = xs.iter().map(|x| 4.0 * x).collect();
        let c = MonotoneCubic::new(xs, ys).unwrap();
        for i in 0..190 {
            let x = i as f64 * 0.025;
            assert!((c.eval(x).unwrap() - 4.0 * x).abs() < 1e-12);
        }
    }
}
