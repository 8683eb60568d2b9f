//! Coalition, rough-concept and community fixed points on a small model,
//! each checked against a scan of the whole lattice.
//!
//! ```bash
//! cargo run --example scenarios
//! ```

use ndmu::cli::{run_scenario, scenario_formulas, Scenario};
use ndmu::modelfile::parse_model;

const MODEL: &str = "\
# agent ak is definitely interested in every issue except ik
objects: a1 a2 a3
attributes: i1 i2 i3
I: a1 i2; a1 i3; a2 i1; a2 i3; a3 i1; a3 i2
Rbox: a1 i2; a1 i3; a2 i1; a2 i3; a3 i1; a3 i2; a1 i1
Rdia: i2 a1; i3 a1; i1 a2; i3 a2; i1 a3; i2 a3; i2 a2
val c0: a1
";

fn main() -> ndmu::Result<()> {
    let model = parse_model(MODEL)?;
    let p = model.context().polarity();
    println!("c0 = {}", p.show(&model.valuation()["c0"]));
    for which in [
        Scenario::CoalitionExpand,
        Scenario::CoalitionSharpen,
        Scenario::Rough,
        Scenario::Community,
    ] {
        println!("\n{which:?}: {}", scenario_formulas(which).join(", "));
        for c in run_scenario(&model, which, 20)? {
            println!(
                "  {} = {}  (fixed point: {}, extremal: {})",
                c.formula,
                p.show(&c.value),
                c.is_fixpoint,
                c.is_extremal
            );
        }
    }
    Ok(())
}
