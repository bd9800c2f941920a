/// Adaptive Simpson quadrature with interval bisection.
///
/// Splits until the classical |S(a,b) - S(a,m) - S(m,b)| / 15 estimate is
/// below the tolerance share of the interval. Depth is capped to keep
/// pathological integrands from recursing forever.
pub fn adaptive_simpson(f: &dyn Fn(f64) -> f64, a: f64, b: f64, tol: f64) -> f64 {
    if a == b {
        return 0.0;
    }
    let fa = f(a);
    let fb = f(b);
    let m = 0.5 * (a + b);
    let fm = f(m);
    let whole = simpson(a, b, fa, fm, fb);
    simpson_rec(f, a, b, fa, fm, fb, whole, tol, 52)
}

fn simpson(a: f64, b: f64, fa: f64, fm: f64, fb: f64) -> f64 {
    (b - a) / 6.0 * (fa + 4.0 * fm + fb)
}

#[allow(clippy::too_many_arguments)]
fn simpson_rec(
    f: &dyn Fn(f64) -> f64,
    a: f64,
    b: f64,
    fa: f64,
    fm: f64,
    fb: f64,
    whole: f64,
    tol: f64,
    depth: u32,
) -> f64 {
    let m = 0.5 * (a + b);
    let lm = 0.5 * (a + m);
    let rm = 0.5 * (m + b);
    let flm = f(lm);
    let frm = f(rm);
    let left = simpson(a, m, fa, flm, fm);
    let right = simpson(m, b, fm, frm, fb);
    let delta = left + right - whole;
    if depth == 0 || delta.abs() <= 15.0 * tol {
        left + right + delta / 15.0
    } else {
        let half_tol = 0.5 * tol;
        simpson_rec(f, a, m, fa, flm, fm, left, half_tol, depth - 1)
            + simpson_rec(f, m, b, fm, frm, fb, right, half_tol, depth - 1)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn integrates_polynomial_exactly() {
        // Simpson is exact for cubics.
        let v = adaptive_simpson(&|x| x * x * x - 2.0 * x + 1.0, 0.0, 2.0, 1e-12);
        assert!((v - (4.0 - 4.0 + 2.0)).abs() < 1e-12, "got {v}");
    }

    #[test]
    fn integrates_exp_to_tolerance() {
        let v = adaptive_simpson(&|x| x.exp(), 0.0, 1.0, 1e-10);
        assert!((v - (std::f64::consts::E - 1.0)).abs() < 1e-10);
    }

    #[test]
    fn handles_sharp_peak() {
        // Integral of 1/(1e-4 + x^2) over [-1,1] = 2*atan(100)/0.01.
        let c = 1e-4f64;
        let v = adaptive_simpson(&|x| 1.0 / (c + x * x), -1.0, 1.0, 1e-8);
        let exact = 2.0 * (1.0 / c.sqrt()) * (1.0 / c.sqrt()).atan();
        assert!((v - exact).abs() < 1e-6 * exact, "got {v}, want {exact}");
    }
}
