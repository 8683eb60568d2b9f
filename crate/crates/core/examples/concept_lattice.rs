//! Concept lattices, the modal operators, and what happens when the modal
//! relations are not compatible with the incidence.
//!
//! ```bash
//! cargo run --example concept_lattice
//! ```

use ndmu::bits::BitSet;
use ndmu::polarity::{close_box_relation, EnrichedContext, Polarity, Relation};
use ndmu::ConceptLattice;

fn main() -> ndmu::Result<()> {
    // animals and features
    let objects = ["dog", "cat", "eagle", "penguin"]
        .map(String::from)
        .to_vec();
    let attributes = ["mammal", "bird", "flies", "pet"]
        .map(String::from)
        .to_vec();
    let incidence = Relation::from_pairs(
        4,
        4,
        [(0, 0), (0, 3), (1, 0), (1, 3), (2, 1), (2, 2), (3, 1)],
    );
    let p = Polarity::new(objects, attributes, incidence)?;
    let l = ConceptLattice::new(&p)?;
    println!("{} concepts:", l.len());
    for c in l.concepts() {
        println!("  {}", l.show(c));
    }

    let birds = p.concept_of_intent(BitSet::singleton(1));
    let flyers = p.concept_of_intent(BitSet::singleton(2));
    let pets = p.concept_of_extent(BitSet::singleton(0));
    println!("\nbirds ∨ pets = {}", l.show(&l.join(&birds, &pets)));
    println!("birds ∧ pets = {}", l.show(&l.meet(&birds, &pets)));
    println!("flyers ≤ birds: {}", flyers.leq(&birds));

    // "dog is believed to fly" breaks compatibility
    let mut rbox = p.incidence().clone();
    rbox.insert(0, 2);
    let ctx = EnrichedContext::new(p.clone(), rbox.clone(), p.incidence().transpose());
    println!("\nadding dog Rbox flies:");
    for v in ctx.check_compatible() {
        println!("  {v}");
    }
    let closed = close_box_relation(&p, &rbox);
    let ctx = EnrichedContext::new(p.clone(), closed.clone(), p.incidence().transpose());
    println!(
        "closing adds {} pair(s); compatible: {}",
        closed.len() - rbox.len(),
        ctx.is_compatible()
    );
    for c in l.concepts() {
        println!("  box {} = {}", l.show(c), l.show(&ctx.box_op(c)?));
    }
    Ok(())
}
