use crate::error::{Error, Result};

/// Find `x_hi` with `f(x_hi) >= target` for an increasing `f`, doubling from
/// `start`. Errors if the target is never reached before `x_max`.
pub fn bracket_increasing(
    f: &dyn Fn(f64) -> f64,
    target: f64,
    start: f64,
    x_max: f64,
) -> Result<f64> {
    let mut hi = if start > 0.0 { start } else { 1.0 };
    let mut steps = 0;
    while f(hi) < target {
        hi *= 2.0;
        steps += 1;
        if hi > x_max || steps > 2100 || !hi.is_finite() {
            return Err(Error::UnreachableValue { y: target, x_max });
        }
    }
    Ok(hi)
}

/// Bisection for the generalized inverse `inf { x in [lo, hi] : f(x) >= y }`
/// of a non-decreasing `f`. Requires `f(hi) >= y`; converges to
/// `tol * (1 + |result|)`.
pub fn bisect_increasing(f: &dyn Fn(f64) -> f64, y: f64, lo: f64, hi: f64, tol: f64) -> f64 {
    let mut lo = lo;
    let mut hi = hi;
    while hi - lo > tol * (1.0 + hi.abs()) {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break; // interval below f64 resolution
        }
        if f(mid) >= y {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    hi
}

/// Golden-section search for the maximum of a unimodal `f` on `[a, b]`.
///
/// Returns `(argmax, max)`. Errors if the maximizer lands on either boundary
/// (within sqrt-eps of it), which means the bracket was too small.
pub fn golden_max(f: &dyn Fn(f64) -> f64, a: f64, b: f64, tol: f64) -> Result<(f64, f64)> {
    const INV_PHI: f64 = 0.618_033_988_749_894_9;
    let mut lo = a;
    let mut hi = b;
    let mut x1 = hi - INV_PHI * (hi - lo);
    let mut x2 = lo + INV_PHI * (hi - lo);
    let mut f1 = f(x1);
    let mut f2 = f(x2);
    while hi - lo > tol * (1.0 + lo.abs().max(hi.abs())) {
        if f1 >= f2 {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - INV_PHI * (hi - lo);
            f1 = f(x1);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + INV_PHI * (hi - lo);
            f2 = f(x2);
        }
    }
    let x = 0.5 * (lo + hi);
    let edge = (b - a) * 1e-6;
    if x - a < edge || b - x < edge {
        return Err(Error::WidenInterval { at: x });
    }
    Ok((x, f(x)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bisect_finds_sqrt() {
        let f = |x: f64| x * x;
        let hi = bracket_increasing(&f, 2.0, 1.0, 1e12).unwrap();
        let r = bisect_increasing(&f, 2.0, 0.0, hi, 1e-13);
        assert!((r - 2f64.sqrt()).abs() < 1e-12);
    }

    #[test]
    fn golden_finds_parabola_peak() {
        let f = |x: f64| -(x - 1.3) * (x - 1.3) + 2.0;
        let (x, v) = golden_max(&f, 0.0, 4.0, 1e-12).unwrap();
        // argument accuracy near a quadratic peak is limited to ~sqrt(eps)
        assert!((x - 1.3).abs() < 1e-6);
        assert!((v - 2.0).abs() < 1e-12);
    }

    #[test]
    fn golden_reports_boundary() {
        let f = |x: f64| x; // max at right edge
        assert!(matches!(
            golden_max(&f, 0.0, 1.0, 1e-10),
            Err(Error::WidenInterval { .. })
        ));
    }
}
