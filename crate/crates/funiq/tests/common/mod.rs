//! Shared test support: generation (and caching) of a zeta zero ordinate
//! table so the acceptance suite can run without network access.
//!
//! The library under test only *ingests* ordinate tables; this module is
//! test tooling that synthesizes one in the documented format when the
//! canonical data (see scripts/fetch_zeta.sh) is absent. Ordinates come
//! from sign changes of the real function Z(t): Euler-Maclaurin evaluation
//! of zeta on the critical line below t = 100, the Riemann-Siegel main sum
//! with two remainder terms above.

#![allow(dead_code)]

use std::path::PathBuf;

const PI: f64 = std::f64::consts::PI;

/// Riemann-Siegel theta, asymptotic with two correction terms
/// (error below 1e-9 for t >= 10).
pub fn rs_theta(t: f64) -> f64 {
    t / 2.0 * (t / (2.0 * PI)).ln() - t / 2.0 - PI / 8.0 + 1.0 / (48.0 * t)
        + 7.0 / (5760.0 * t * t * t)
}

fn rs_theta_deriv(t: f64) -> f64 {
    0.5 * (t / (2.0 * PI)).ln()
}

/// Euler-Maclaurin zeta(1/2 + it), accurate to ~1e-12 for t <= 250.
fn zeta_half_line_em(t: f64) -> (f64, f64) {
    let m = 60usize;
    let (sr, si) = (0.5f64, t);
    // sum_{n=1}^{m-1} n^{-s}
    let mut re = 0.0;
    let mut im = 0.0;
    for n in 1..m {
        let ln_n = (n as f64).ln();
        let mag = (-sr * ln_n).exp();
        let phase = -si * ln_n;
        re += mag * phase.cos();
        im += mag * phase.sin();
    }
    // m^{1-s}/(s-1)
    let ln_m = (m as f64).ln();
    let mag = ((1.0 - sr) * ln_m).exp();
    let phase = -si * ln_m;
    let (num_re, num_im) = (mag * phase.cos(), mag * phase.sin());
    let (dr, di) = (sr - 1.0, si);
    let den = dr * dr + di * di;
    re += (num_re * dr + num_im * di) / den;
    im += (num_im * dr - num_re * di) / den;
    // + m^{-s}/2
    let mag = (-sr * ln_m).exp();
    re += 0.5 * mag * phase.cos();
    im += 0.5 * mag * phase.sin();
    // Bernoulli tail: sum_k B_{2k}/(2k)! * (prod_{j<2k-1}(s+j)) * m^{-s-2k+1}
    let bern = [
        1.0 / 12.0,            // B2/2!
        -1.0 / 720.0,          // B4/4!
        1.0 / 30240.0,         // B6/6!
        -1.0 / 1209600.0,      // B8/8!
        1.0 / 47900160.0,      // B10/10!
    ];
    // rising product (s)(s+1)...(s+2k-2), complex
    let mut prod_re = 1.0;
    let mut prod_im = 0.0;
    let mut j = 0.0f64;
    for (k, b) in bern.iter().enumerate() {
        // extend the product to s + (2k) terms: up to factor (s + 2k - 1)
        let target = 2 * (k + 1) - 1;
        while (j as usize) < target {
            let (ar, ai) = (sr + j, si);
            let nr = prod_re * ar - prod_im * ai;
            let ni = prod_re * ai + prod_im * ar;
            prod_re = nr;
            prod_im = ni;
            j += 1.0;
        }
        // m^{-s-2k-1+...}: exponent -(s + 2k + 1) + 2 = 1 - s - 2k ... use
        // m^{-(sr + 2k+1) + 1} magnitude with the same oscillatory phase
        let expo = -(sr + (2 * (k + 1)) as f64 - 1.0);
        let mag = (expo * ln_m).exp();
        let (tr, ti) = (mag * phase.cos(), mag * phase.sin());
        re += b * (prod_re * tr - prod_im * ti);
        im += b * (prod_re * ti + prod_im * tr);
    }
    (re, im)
}

/// The even coefficient function of the Riemann-Siegel remainder, with the
/// removable singularities at p = 1/4, 3/4 handled by symmetric dodging.
fn rs_psi(p: f64) -> f64 {
    let den = (2.0 * PI * p).cos();
    if den.abs() < 5e-3 {
        let d = 1e-2;
        return 0.5 * (rs_psi(p - d) + rs_psi(p + d));
    }
    (2.0 * PI * (p * p - p - 1.0 / 16.0)).cos() / den
}

/// Third derivative of psi by central differences (for the first remainder
/// correction).
fn rs_psi_d3(p: f64) -> f64 {
    let h = 1.5e-2;
    (rs_psi(p + 2.0 * h) - 2.0 * rs_psi(p + h) + 2.0 * rs_psi(p - h) - rs_psi(p - 2.0 * h))
        / (2.0 * h * h * h)
}

/// Hardy's Z(t): real, with the same zeros as zeta on the critical line.
///
/// Below t = 200 the Euler-Maclaurin path is machine accurate; above it the
/// Riemann-Siegel sum with two remainder terms keeps zero displacements
/// under ~3e-5 near the crossover, decaying like t^{-5/4} beyond.
pub fn z_function(t: f64) -> f64 {
    if t < 200.0 {
        let (zr, zi) = zeta_half_line_em(t);
        let th = rs_theta(t);
        // e^{i theta} zeta: the imaginary part is a numerical error gauge
        return zr * th.cos() - zi * th.sin();
    }
    let a = (t / (2.0 * PI)).sqrt();
    let n = a.floor() as usize;
    let p = a - n as f64;
    let th = rs_theta(t);
    let mut sum = 0.0;
    for k in 1..=n {
        let lk = (k as f64).ln();
        sum += (th - t * lk).cos() / (k as f64).sqrt();
    }
    sum *= 2.0;
    let sign = if n % 2 == 1 { 1.0 } else { -1.0 };
    let c0 = rs_psi(p);
    let c1 = -rs_psi_d3(p) / (96.0 * PI * PI);
    let remainder = sign * a.powf(-0.5) * (c0 + c1 / a);
    sum + remainder
}

/// Gram point g_n (theta(g_n) = n pi) by Newton from a warm start.
fn gram_point(n: i64, warm: f64) -> f64 {
    let target = n as f64 * PI;
    let mut g = warm;
    for _ in 0..40 {
        let step = (rs_theta(g) - target) / rs_theta_deriv(g);
        g -= step;
        if step.abs() < 1e-10 * g {
            break;
        }
    }
    g
}

/// First `count` zero ordinates by adaptive sign scanning over Gram
/// intervals, bisected to ~1e-9 relative.
pub fn compute_zero_ordinates(count: usize) -> Vec<f64> {
    let mut zeros: Vec<f64> = Vec::with_capacity(count + 16);
    // start just below the first zero; g_{-1} ~ 9.667
    let mut g_prev = gram_point(-1, 9.7);
    let mut g_index = -1i64;
    let mut warm = g_prev + PI / rs_theta_deriv(g_prev);
    let mut recent = std::collections::VecDeque::with_capacity(6);
    recent.push_back(g_prev);
    let mut rescanned_to = g_prev;
    while zeros.len() < count + 4 {
        g_index += 1;
        let g_next = gram_point(g_index, warm);
        warm = g_next + PI / rs_theta_deriv(g_next);
        scan_interval(g_prev, g_next, 8, &mut zeros);
        recent.push_back(g_next);
        if recent.len() > 5 {
            recent.pop_front();
        }
        // cumulative consistency: up to g_n roughly n+1 zeros should exist;
        // a persistent deficit means a close pair hid below the resolution
        let expected = (g_index + 1).max(0) as usize;
        if zeros.len() + 1 < expected && g_next > rescanned_to {
            // rescan the last few Gram intervals at high resolution
            let lo = recent.front().copied().unwrap().max(rescanned_to);
            let mut rescued: Vec<f64> = Vec::new();
            scan_interval(lo, g_next, 768, &mut rescued);
            for z in rescued {
                if zeros.iter().all(|&y| (y - z).abs() > 1e-7) {
                    zeros.push(z);
                }
            }
            zeros.sort_by(|a, b| a.partial_cmp(b).unwrap());
            rescanned_to = g_next;
        }
        g_prev = g_next;
    }
    zeros.truncate(count);
    zeros
}

fn scan_interval(lo: f64, hi: f64, subdivisions: usize, zeros: &mut Vec<f64>) {
    let mut prev_t = lo;
    let mut prev_z = z_function(lo);
    for i in 1..=subdivisions {
        let t = lo + (hi - lo) * i as f64 / subdivisions as f64;
        let z = z_function(t);
        if prev_z == 0.0 {
            zeros.push(prev_t);
        } else if prev_z * z < 0.0 {
            zeros.push(bisect_zero(prev_t, t, prev_z));
        }
        prev_t = t;
        prev_z = z;
    }
}

fn bisect_zero(mut lo: f64, mut hi: f64, z_lo: f64) -> f64 {
    let sign_lo = z_lo.signum();
    for _ in 0..48 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        let z = z_function(mid);
        if z == 0.0 {
            return mid;
        }
        if z.signum() == sign_lo {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

/// Path of the cached ordinate table, generating it on first use.
///
/// Prefers `FUNIQ_DATA_DIR/zeros1.txt` when that file already exists (the
/// fetched canonical table); otherwise generates and caches a locally
/// computed table under `<workspace>/data/`.
pub fn ensure_zeta_table(count: usize) -> PathBuf {
    if let Ok(dir) = std::env::var("FUNIQ_DATA_DIR") {
        let p = PathBuf::from(dir).join("zeros1.txt");
        if p.exists() {
            return p;
        }
    }
    let root = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../data");
    std::fs::create_dir_all(&root).expect("create data dir");
    let path = root.join("zeros1.txt");
    if path.exists() {
        // reuse only when it already holds enough ordinates
        let lines = std::fs::read_to_string(&path)
            .map(|s| s.lines().count())
            .unwrap_or(0);
        if lines >= count {
            return path;
        }
    }
    let zeros = compute_zero_ordinates(count);
    assert!(zeros.len() >= count, "zero scan found only {}", zeros.len());
    // quick sanity against the classical first ordinates
    assert!((zeros[0] - 14.134725).abs() < 1e-4, "gamma_1 = {}", zeros[0]);
    assert!((zeros[1] - 21.022040).abs() < 1e-4, "gamma_2 = {}", zeros[1]);
    assert!((zeros[2] - 25.010858).abs() < 1e-4, "gamma_3 = {}", zeros[2]);
    let mut out = String::with_capacity(count * 16);
    for z in &zeros {
        out.push_str(&format!("{z:.9}\n"));
    }
    std::fs::write(&path, out).expect("write ordinate table");
    path
}

/// Deterministic xorshift generator for randomized acceptance configs.
pub struct TestRng(u64);

impl TestRng {
    pub fn new(seed: u64) -> Self {
        TestRng(seed.max(1))
    }

    pub fn next_u64(&mut self) -> u64 {
        let mut x = self.0;
        x ^= x << 13;
        x ^= x >> 7;
        x ^= x << 17;
        self.0 = x;
        x
    }

    /// Uniform in [0, 1).
    pub fn unit(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 / (1u64 << 53) as f64
    }

    /// Uniform in [lo, hi).
    pub fn range(&mut self, lo: f64, hi: f64) -> f64 {
        lo + (hi - lo) * self.unit()
    }
}
