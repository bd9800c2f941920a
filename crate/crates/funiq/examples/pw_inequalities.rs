//! The inequality checks driving the uniqueness machinery: the density and
//! interval Poincare-Wirtinger forms, the fractional double-integral form,
//! and the weighted second-moment bound.
//!
//! ```bash
//! cargo run --example pw_inequalities
//! ```

use funiq::nodes::{generate_saturated_fn, NodeSequence};
use funiq::probe::{
    self, default_window, fractional_pw_check, interval_pw_check, make_vanishing_function,
    pw_check, s_phi_psi, sigma_weight, weighted_moment_check, ConvexWeightFn, WindowKind,
};
use funiq::weights::{compute_constant_css, WeightSpec};
use num_complex::Complex64;
use std::f64::consts::PI;

fn main() -> funiq::Result<()> {
    // density form: f = sin(4 pi x) e^{-pi x^2} vanishes on the 1/4-grid,
    // which is 1/(2t)-dense for t = 2
    let f = probe::SampledFunction::from_real_fn(probe::DEFAULT_X, probe::DEFAULT_H, |x| {
        (4.0 * PI * x).sin() * (-PI * x * x).exp()
    })?;
    let zeros: Vec<f64> = (-64..=64).map(|k| k as f64 / 4.0).collect();
    let out = pw_check(&ConvexWeightFn::Identity, 2.0, &f, &zeros)?;
    println!(
        "density PW:  Phi(t^2)||f||^2 = {:.6} <= {:.6} = int Phi(xi^2)|f_hat|^2  (ratio {:.4})",
        out.lhs, out.rhs, out.ratio
    );

    // interval form: the first Dirichlet mode is the equality case
    let n = 4097;
    let (a, b) = (0.0, 1.0);
    let mode: Vec<Complex64> = (0..n)
        .map(|i| Complex64::new((PI * i as f64 / (n - 1) as f64).sin(), 0.0))
        .collect();
    let out = interval_pw_check(&mode, a, b)?;
    println!("interval PW: first Dirichlet mode ratio = {:.8}", out.ratio);

    // fractional form: nodes saturate the composed sigma weight
    let psi = ConvexWeightFn::Identity;
    let window = default_window(WindowKind::Mollifier)?;
    println!(
        "sigma weight of the mollifier window: sigma(0) = {:.4}, sigma(4) = {:.4}, sigma(10) = {:.4}",
        sigma_weight(&psi, &window, 0.0)?,
        sigma_weight(&psi, &window, 4.0)?,
        sigma_weight(&psi, &window, 10.0)?
    );
    let psi_c = psi.clone();
    let win_c = window.clone();
    let w = move |x: f64| -> funiq::Result<f64> {
        let s = sigma_weight(&psi_c, &win_c, x.abs())?;
        Ok(s_phi_psi(&ConvexWeightFn::Identity, &psi_c, s)? / 0.97)
    };
    let (seq, _) = generate_saturated_fn(&w, 0.0, 4000, true, false, "sigma-saturated")?;
    let vals: Vec<f64> =
        seq.values.iter().copied().filter(|v| v.abs() <= probe::DEFAULT_X + 1.0).collect();
    let count = vals.len() as i64;
    let nodes = NodeSequence::new(vals, -(count / 2), "sigma-window")?;
    let (f, _) = make_vanishing_function(
        &nodes,
        &|x| (-PI * x * x / 9.0).exp(),
        probe::DEFAULT_X,
        probe::DEFAULT_H,
    )?;
    let out = fractional_pw_check(&psi, &ConvexWeightFn::Identity, &f, &window, &window, &nodes)?;
    println!(
        "fractional PW over {} nodes: lhs = {:.4}, rhs = {:.4}, ratio = {:.4}",
        nodes.len(),
        out.lhs,
        out.rhs,
        out.ratio
    );

    // weighted moment bound with the linear weight and its series constant
    let s_spec = WeightSpec::power(1.0)?;
    let css = compute_constant_css(&s_spec, 1.0, 1e-10)?.value;
    let w = move |x: f64| -> funiq::Result<f64> {
        Ok(8.0 * std::f64::consts::E * x.abs().max(0.05) / 0.9)
    };
    let (seq, _) = generate_saturated_fn(&w, 0.0, 9000, true, true, "moment nodes")?;
    let vals: Vec<f64> = seq.values.iter().copied().filter(|v| v.abs() <= 4.2).collect();
    let count = vals.len() as i64;
    let nodes = NodeSequence::new(vals, -(count / 2), "moment window")?;
    let (f, _) = make_vanishing_function(&nodes, &|x| (-2.0 * x * x).exp(), 4.0, 1.0 / 1024.0)?;
    let out = weighted_moment_check(&f, &s_spec, 1.0, css, &nodes)?;
    println!(
        "weighted moment (C = {:.3e}): 2 int x^2|f|^2 = {:.5} <= {:.3e}, ratio = {:.2e}",
        css, out.lhs, out.rhs, out.ratio
    );
    Ok(())
}
