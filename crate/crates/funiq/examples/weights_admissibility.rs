//! Certify weight families and compute the series constant.
//!
//! ```bash
//! cargo run --example weights_admissibility
//! ```

use funiq::weights::{
    check_subexp_admissible, check_widely_admissible, compute_constant_css, GridSpec, WeightSpec,
};

fn main() -> funiq::Result<()> {
    println!("subexponential admissibility (T0 = 1):");
    let cases = vec![
        (WeightSpec::power(1.0)?, 60.0),
        (WeightSpec::power(3.0)?, 60.0),
        (WeightSpec::exp_power(1.0, 1.0, 0.5)?, 60.0),
        (WeightSpec::exp_power(1.0, 1.0, 2.0)?, 12.0), // fails: log d/dt S^2 convex
        (WeightSpec::Exp, 60.0),                       // fails: log integral diverges
    ];
    for (spec, hi) in &cases {
        let grid = GridSpec::linear(0.0, *hi, 600);
        let r = check_subexp_admissible(spec, 1.0, &grid, 1e-6)?;
        println!(
            "  {:24} pass = {:5}  log-concavity margin = {:+.3e}  tail = {:?}",
            spec.family_name(),
            r.pass,
            r.logconcavity_margin.unwrap(),
            r.tail_bound
        );
    }

    println!("\nwide admissibility (probe log^2 S((1+eps)x)/S(x) -> 0):");
    for (spec, hi) in [
        (WeightSpec::Exp, 200.0),
        (WeightSpec::power(2.0)?, 1e6),
        (WeightSpec::exp_tower(2)?, 14.0),
    ] {
        let r = check_widely_admissible(&spec, &[1.0], &GridSpec::log(0.2, hi, 200), 32)?;
        let last = r.wide_limit_probe.last().unwrap();
        println!(
            "  {:14} pass = {:5}  coefficients ok = {:5}  probe({:.0}) = {:.3e}",
            spec.family_name(),
            r.pass,
            r.coefficient_sign_ok,
            last.x,
            last.value
        );
    }

    println!("\nseries constant for S = e^t:");
    for s in [1.0, 2.0] {
        let c = compute_constant_css(&WeightSpec::Exp, s, 1e-10)?;
        println!(
            "  s = {s}: C = {:.6e} from {} terms (tail bound {:.2e})",
            c.value, c.terms_used, c.root_test_tail
        );
    }
    Ok(())
}
