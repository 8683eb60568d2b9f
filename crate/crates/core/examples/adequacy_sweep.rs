//! Compares the evaluation game with the evaluator on random models.
//! Takes an optional seed and model count.
//!
//! ```bash
//! cargo run --example adequacy_sweep -- 17 50
//! ```

use ndmu::evalgame::adequacy_check;
use ndmu::random::{
    atom_names, random_alternating_formula, random_formula, random_model, rng, FormulaShape,
};

fn main() {
    let mut args = std::env::args().skip(1);
    let seed: u64 = args.next().and_then(|s| s.parse().ok()).unwrap_or(0);
    let models: usize = args.next().and_then(|s| s.parse().ok()).unwrap_or(20);
    println!("seed {seed}, {models} models");
    let mut r = rng(seed);
    let atoms = atom_names(3);
    let (mut checked, mut largest, mut bad) = (0, 0, 0);
    for _ in 0..models {
        let m = random_model(&mut r, 4, 4, &atoms);
        largest = largest.max(m.lattice().map(|l| l.len()).unwrap_or(0));
        for k in 0..25 {
            let f = if k % 2 == 0 {
                random_alternating_formula(&mut r, &atoms)
            } else {
                random_formula(&mut r, &atoms, FormulaShape::default())
            };
            checked += 1;
            for mismatch in adequacy_check(&m, &f).expect("closed formula") {
                bad += 1;
                println!("mismatch on {f}: {mismatch}");
            }
        }
    }
    println!("{checked} formulas checked, largest lattice {largest} concepts, {bad} mismatches");
}
