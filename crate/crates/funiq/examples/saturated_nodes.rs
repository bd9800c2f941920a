//! Generate a gap-saturated node sequence and verify it against its own
//! criterion and against mismatched ones.
//!
//! ```bash
//! cargo run --example saturated_nodes
//! ```

use funiq::nodes::{
    generate_saturated_audited, verify_gap_condition, EndpointRule, GapCondition,
};
use funiq::weights::WeightSpec;

fn main() -> funiq::Result<()> {
    let weight = WeightSpec::power(1.0)?;
    let (seq, audit) = generate_saturated_audited(&weight, 1.0, 1.0, 0.0, 100_000, true)?;
    println!(
        "generated {} nodes spanning [{:.3}, {:.3}]; saturation audit {:.2e}",
        seq.len(),
        seq.values.first().unwrap(),
        seq.values.last().unwrap(),
        audit
    );

    // matching condition: every weighted gap is exactly 1/2 inside the
    // compensated recurrence; the stored f64 values carry position
    // quantization ~ 2 eps j, which the threshold absorbs explicitly
    let slack = 2.0 * f64::EPSILON * 100_000.0;
    let mut cond = GapCondition::standard(weight.clone(), 1.0, 1.0, EndpointRule::Left);
    cond.threshold = 0.5 + slack;
    let rep = verify_gap_condition(&seq, &cond)?;
    println!(
        "matching criterion: sup = {:.12} at j = {} (quantization slack {slack:.1e}), pass = {}",
        rep.sup_value, rep.argsup, rep.pass
    );

    // a heavier weight fails immediately
    let heavier = GapCondition::standard(WeightSpec::power(2.0)?, 1.0, 1.0, EndpointRule::Left);
    let rep = verify_gap_condition(&seq, &heavier)?;
    println!(
        "quadratic weight:   sup = {:.6} at j = {}, pass = {}",
        rep.sup_value, rep.argsup, rep.pass
    );

    // the max-endpoint rule is always at least the inner one
    let max_rule = GapCondition::standard(weight, 1.0, 1.0, EndpointRule::Max);
    let rep = verify_gap_condition(&seq, &max_rule)?;
    println!(
        "max endpoint rule:  sup = {:.6} (exceeds 1/2 near the origin), pass = {}",
        rep.sup_value, rep.pass
    );
    Ok(())
}
