//! Unfolding games for `f(A) = A ∪ {a}` on the powerset of `{a, b}`, and
//! for a formula-induced map, in all four generator/infinite-winner setups.
//!
//! ```bash
//! cargo run --example unfolding_games
//! ```

use ndmu::bits::BitSet;
use ndmu::gamecore::{witness_play, Player};
use ndmu::modelfile::parse_model;
use ndmu::polarity::powerset_polarity;
use ndmu::unfolding::{
    build_unfolding_board, solve_unfolding_symbolic, BoardOptions, Generators, LatticeMap,
    UnfoldSpec,
};
use ndmu::{parse, ConceptLattice};

fn main() -> ndmu::Result<()> {
    let p = powerset_polarity(&["a", "b"])?;
    let l = ConceptLattice::new(&p)?;
    let a = BitSet::singleton(0);
    let f = LatticeMap::from_fn(l.clone(), |c| Ok(p.concept_of_extent(c.extent.union(a))))?;
    println!(
        "f(A) = A ∪ {{a}}: lfp = {}, gfp = {}",
        show(&p, &f.lfp()?),
        show(&p, &f.gfp()?)
    );
    report(&f)?;

    let spec = UnfoldSpec::new(Generators::Join, Player::Forall);
    let board = build_unfolding_board(&f, spec, 0, BoardOptions::default())?;
    let solution = board.solve();
    println!("\nexplicit board, ∀ wins infinite plays:");
    for (g, &pos) in board.generators.iter().zip(&board.generator_positions) {
        let play = witness_play(&board.board, &solution, pos);
        println!(
            "  from {}: {} wins, e.g. {}",
            show(&p, g),
            solution.winner[pos],
            play.render(&board.board)
        );
    }

    let model = parse_model("objects: g1 g2\nattributes: m1 m2 m3\nI: g1 m1; g1 m2; g2 m3\nRbox: g1 m1; g1 m2; g2 m3\nval q: g1\n")?;
    let map = LatticeMap::from_formula(&model, &parse("box v & q")?, "v")?;
    println!("\nv ↦ box v & q on the worked example:");
    report(&map)?;
    Ok(())
}

fn show(p: &ndmu::Polarity, c: &ndmu::Concept) -> String {
    format!("{{{}}}", p.object_names(c.extent).join(", "))
}

fn report(f: &LatticeMap) -> ndmu::Result<()> {
    let l = f.lattice();
    for (gens, winner) in [
        (Generators::Join, Player::Exists),
        (Generators::Join, Player::Forall),
        (Generators::Meet, Player::Forall),
        (Generators::Meet, Player::Exists),
    ] {
        let r = solve_unfolding_symbolic(f, UnfoldSpec::new(gens, winner))?;
        println!(
            "  {gens:?} generators, {winner} wins infinite plays: {} of {} generators won by their owner, combined {}",
            r.winning_generators().len(),
            r.generators.len(),
            l.show(&r.fixpoint)
        );
    }
    Ok(())
}
