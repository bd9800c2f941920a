//! Build the closed-form asymmetric pair (logarithmic lambda side against a
//! near-linear mu side) and track its approach to the model asymptotics.
//!
//! ```bash
//! cargo run --example asymmetric_pair
//! ```

use funiq::nodes::{asymptotic_ratio, classify_pair, generate_closed_form_brs};

fn main() -> funiq::Result<()> {
    let four_pi = 4.0 * std::f64::consts::PI;
    for s in [0.5, 1.0] {
        let (lambda, mu) = generate_closed_form_brs(s, 0.0, 0.0, 100, 1_000_000)?;
        println!(
            "s = {s}: lambda_1e6 = {:.6}, mu_1e6 = {:.3}",
            lambda.values.last().unwrap(),
            mu.values.last().unwrap()
        );
        let lam = asymptotic_ratio(&lambda, &move |j| {
            ((j as f64).ln() / four_pi).powf(1.0 / s)
        });
        let mu_tab = asymptotic_ratio(&mu, &move |j| {
            (j as f64) / 2.0 * (four_pi / (j as f64).ln()).powf(1.0 / s)
        });
        println!(
            "  ratio to leading models over the final decade: lambda {:.4} (slope {:+.2e}), mu {:.6}",
            lam.final_decade_mean, lam.final_decade_slope, mu_tab.final_decade_mean
        );
    }

    // the two sides live at wildly different densities, yet the pair sits at
    // the same criticality scale as the square-root pair
    let (lambda, mu) = generate_closed_form_brs(1.0, 0.0, 0.0, 100, 200_000)?;
    println!(
        "\nwindow extents: lambda up to {:.3} with {} nodes, mu up to {:.0} with {} nodes",
        lambda.values.last().unwrap(),
        lambda.len(),
        mu.values.last().unwrap(),
        mu.len()
    );
    match classify_pair(&lambda, &mu, 2.0, 2.0, 50_000, 0.02) {
        Ok(r) => println!("p = q = 2 classification: {:?}", r.class),
        Err(e) => println!("p = q = 2 classification does not apply: {e}"),
    }
    Ok(())
}
