//! Largest simulations, bisimilar points, and a simulation that does not
//! reverse.
//!
//! ```bash
//! cargo run --example bisimulation
//! ```

use ndmu::bisim::{check_simulation, invariance_test, Bisimilarity, SimulationPair};
use ndmu::modelfile::{pairs_to_text, parse_model};
use ndmu::parse;

fn main() -> ndmu::Result<()> {
    // g2 and g3 are indistinguishable copies
    let m1 = parse_model("objects: g1 g2\nattributes: m1 m2\nI: g1 m1; g2 m2\nRbox: g1 m1; g2 m2\nRdia: m1 g1; m2 g2\nval q: g1\n")?;
    let m2 = parse_model(
        "objects: g1 g2 g3\nattributes: m1 m2\nI: g1 m1; g2 m2; g3 m2\nRbox: g1 m1; g2 m2; g3 m2\nRdia: m1 g1; m2 g2; m2 g3\nval q: g1\n",
    )?;
    let b = Bisimilarity::compute(&m1, &m2)?;
    println!(
        "largest simulation m1 -> m2:\n{}",
        pairs_to_text(&b.forward, &m1, &m2)
    );
    println!("bisimilar objects: {:?}", b.object_pairs());

    let corpus: Vec<_> = [
        "q",
        "box q",
        "dia q | q",
        "nu x. box x & q",
        "mu x. q | dia x",
    ]
    .iter()
    .map(|s| parse(s))
    .collect::<ndmu::Result<_>>()?;
    println!(
        "invariance counterexamples: {}",
        invariance_test(&m1, &m2, &b.forward, &corpus)?.len()
    );

    // q is ⊥ on the left and ⊤ on the right
    let low = parse_model("objects: g1\nattributes: m1\nval q:\n")?;
    let high = parse_model("objects: g1\nattributes: m1\nval q: g1\n")?;
    let id = SimulationPair::identity(&low);
    println!(
        "\nidentity low -> high violations: {}",
        check_simulation(&low, &high, &id)?.len()
    );
    for v in check_simulation(&high, &low, &id)? {
        println!("identity high -> low: {v}");
    }
    Ok(())
}
