//! Building and solving a parity game board directly, then checking the
//! returned strategies.
//!
//! ```bash
//! cargo run --example parity_solver
//! ```

use ndmu::gamecore::{
    check_strategy, solve_parity, witness_play, GameBoard, GameDocument, Objective, Player,
};

fn main() {
    let mut b = GameBoard::new();
    let v0 = b.add_position("v0", Player::Exists, 1);
    let v1 = b.add_position("v1", Player::Forall, 2);
    let v2 = b.add_position("v2", Player::Exists, 3);
    let v3 = b.add_position("v3", Player::Forall, 0);
    for (from, to) in [(v0, v1), (v0, v2), (v1, v0), (v1, v3), (v2, v2), (v3, v1)] {
        b.add_move(from, to);
    }
    let s = solve_parity(&b);
    for v in 0..b.len() {
        let play = witness_play(&b, &s, v);
        println!("{}: {} wins  {}", b.label(v), s.winner[v], play.render(&b));
    }
    println!(
        "strategy problems: {:?}",
        check_strategy(&b, &s, Objective::Parity)
    );
    let doc = GameDocument::new(&b, &s, Some(v0));
    println!(
        "{}",
        serde_json::to_string_pretty(&doc).expect("serializable")
    );
}
