//! The two-object worked example: concept lattice, the value of
//! `nu x. (box x & q)`, and the evaluation game with a winning play.
//!
//! ```bash
//! cargo run --example worked_example
//! ```

use ndmu::evalgame::{game_check, Side};
use ndmu::modelfile::parse_model;
use ndmu::parse;

const MODEL: &str = "\
objects: g1 g2
attributes: m1 m2 m3
I: g1 m1; g1 m2; g2 m3
Rbox: g1 m1; g1 m2; g2 m3
Rdia:
val q: g1
";

fn main() -> ndmu::Result<()> {
    let model = parse_model(MODEL)?;
    let p = model.context().polarity();
    let lattice = model.lattice()?;
    println!("concept lattice ({} concepts):", lattice.len());
    for c in lattice.concepts() {
        println!("  {}", lattice.show(c));
    }

    let f = parse("nu x. (box x & q)")?;
    let value = model.evaluate_closed(&f)?;
    println!("\n[[{f}]] = {}", p.show(&value));

    for (name, side) in [
        ("g1", Side::Object(0)),
        ("m2", Side::Attribute(1)),
        ("g2", Side::Object(1)),
    ] {
        let gc = game_check(&model, &f, side)?;
        println!("\nstart at {name}: {} wins", gc.winner);
        println!("  {}", gc.witness.render(gc.game.board()));
    }
    Ok(())
}
