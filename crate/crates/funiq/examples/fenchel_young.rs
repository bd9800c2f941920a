//! The integral form of the Fenchel-Young inequality:
//! `int_0^T S + int_0^W S^{-1} >= WT`, with equality exactly on the graph
//! W = S(T).
//!
//! ```bash
//! cargo run --example fenchel_young
//! ```

use funiq::density::{convex_conjugate_check, fenchel_young_gap};
use funiq::weights::WeightSpec;

fn main() -> funiq::Result<()> {
    let square = WeightSpec::power(2.0)?;
    println!("S(t) = t^2, T = 1: gap as W crosses S(T) = 1");
    for w in [0.25, 0.5, 1.0, 2.0, 4.0] {
        let gap = fenchel_young_gap(&square, 1.0, w, 1e-10)?;
        println!("  W = {w:4}: gap = {gap:.9}{}", if w == 1.0 { "   <- equality" } else { "" });
    }

    // conjugacy: sup_T (WT - int_0^T S) equals int_0^W S^{-1}
    let err = convex_conjugate_check(&square, &[0.5, 1.0, 2.0, 5.0], (0.0, 50.0), 1e-10)?;
    println!("conjugate-pair discrepancy over the W grid: {err:.3e}");

    // a non-polynomial weight goes through adaptive quadrature
    let expm1 = WeightSpec::truncated_low_order(WeightSpec::Exp, 0)?; // e^t - 1
    let gap = fenchel_young_gap(&expm1, 1.3, 2.0, 1e-10)?;
    let exact = (1.3f64.exp() - 1.0 - 1.3) + (3.0 * 3f64.ln() - 2.0) - 2.0 * 1.3;
    println!("S(t) = e^t - 1, T = 1.3, W = 2: gap = {gap:.9} (closed form {exact:.9})");
    Ok(())
}
