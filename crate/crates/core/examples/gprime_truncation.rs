//! The alternative unfolding game G′ on truncations of an infinite chain.
//!
//! The lattice is `⊥ < a1 < .. < an < ⊤` next to an incomparable `b < ⊤`,
//! with `f(⊥) = a1`, `f(ak) = a(k+1)`, `f(an) = ⊤` and `f(b) = f(⊤) = ⊤`.
//! Its least fixed point is `⊤`, so `b` should be won by ∃. In every finite
//! truncation ∃ wins at `b` by answering `an`, whose image is `⊤`. On the
//! infinite chain no `an` has image `⊤`: from `b` ∃ may only answer `b` or
//! `⊤`, ∀ picks `b` again, and the play never ends.
//!
//! ```bash
//! cargo run --example gprime_truncation
//! ```

use ndmu::polarity::{Polarity, Relation};
use ndmu::unfolding::{
    build_board_with, default_generators, solve_gprime, BoardOptions, Generators, LatticeMap,
    UnfoldSpec,
};
use ndmu::{Concept, ConceptLattice, Player};

/// Objects and attributes are `a1..an, b`; `x I y` iff `x ≤ y` in the chain order.
fn chain_with_b(n: usize) -> ndmu::Result<Polarity> {
    let names: Vec<String> = (1..=n)
        .map(|k| format!("a{k}"))
        .chain(["b".to_string()])
        .collect();
    let pairs = (0..=n).flat_map(|i| (0..=n).map(move |j| (i, j)));
    let leq = pairs.filter(|&(i, j)| if i == n || j == n { i == j } else { i <= j });
    Polarity::new(
        names.clone(),
        names,
        Relation::from_pairs(n + 1, n + 1, leq),
    )
}

fn main() -> ndmu::Result<()> {
    for n in [1, 2, 4, 8] {
        let p = chain_with_b(n)?;
        let l = ConceptLattice::new(&p)?;
        let b = l.object_concept(n);
        let chain = |k: usize| l.object_concept(k - 1);
        let f = |c: &Concept| -> ndmu::Result<Concept> {
            Ok(if *c == l.bottom() {
                chain(1)
            } else if *c == l.top() || *c == b || c.extent.len() == n {
                l.top()
            } else {
                chain(c.extent.len() + 1)
            })
        };
        let map = LatticeMap::from_fn(l.clone(), f)?;
        let result = solve_gprime(&map)?;
        let gens = default_generators(&l, Generators::Join);
        let start = gens.iter().position(|g| *g == b).expect("b is a generator");
        let board = build_board_with(
            &map,
            UnfoldSpec::gprime(),
            &gens,
            start,
            BoardOptions::default(),
        )?;
        let solution = board.solve();
        let answer = solution.strategy[board.start].map(|u| board.board.label(u).to_string());
        println!(
            "n = {n}: lfp = {}, b won by {}, ∃ answers b with {}",
            l.show(&map.lfp()?),
            result.winner_at(start),
            answer.unwrap_or_else(|| "-".into())
        );
        assert_eq!(result.winner_at(start), Player::Exists);
        assert_eq!(result.fixpoint, map.lfp()?);
    }
    println!("every winning answer is the last chain element, which the infinite chain lacks");
    Ok(())
}
