//! Window-count density scans: the counts/(4WT) ratio approaches 1/(2 alpha)
//! from the weighted-gap normalization, and the 4WT - C log^2(4WT) margins
//! stay non-negative for a small fitted C.
//!
//! ```bash
//! cargo run --example density_scan
//! ```

use funiq::density::{count_window, density_inf_ratio, kulikov_check};
use funiq::nodes::{generate_rv, generate_saturated};
use funiq::weights::WeightSpec;

fn main() -> funiq::Result<()> {
    let rv = generate_rv(62_500)?;
    println!(
        "square-root pair: {} nodes, |window| = {:.0}, counts: N(10) = {}, N(100) = {}",
        rv.len(),
        rv.values.last().unwrap(),
        count_window(&rv, 10.0),
        count_window(&rv, 100.0)
    );
    let scan = density_inf_ratio(&rv, &rv, &[10.0, 50.0, 200.0], 24, Some(0.5))?;
    for (k, inf) in &scan.inf_per_k {
        println!("  K = {k:>5}: inf counts/(4WT) = {inf:.6}   (target 1/(2 alpha) = 1)");
    }

    let sat = generate_saturated(&WeightSpec::power(1.0)?, 1.0, 1.0, 0.0, 62_500, true)?;
    let scan = density_inf_ratio(&sat, &sat, &[10.0, 50.0, 200.0], 24, Some(0.5))?;
    println!("gap-saturated linear-weight pair:");
    for (k, inf) in &scan.inf_per_k {
        println!("  K = {k:>5}: inf counts/(4WT) = {inf:.6}");
    }

    let mut grid = Vec::new();
    for i in 0..24 {
        for j in 0..24 {
            grid.push((2.0 + 48.0 * i as f64 / 23.0, 2.0 + 48.0 * j as f64 / 23.0));
        }
    }
    let k = kulikov_check(&rv, &rv, &grid, 0.0)?;
    println!(
        "interpolation necessary condition on W,T in [2,50]: min margin {:.1}, fitted C = {:.4}",
        k.min_margin, k.fitted_c
    );
    Ok(())
}
