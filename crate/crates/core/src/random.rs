//! Seeded generators for contexts, models, formulas and boards.
//!
//! Used by the self-test command and the property suites. All generators take
//! an explicit RNG so runs are reproducible from a seed.

use rand::seq::SliceRandom;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::bits::BitSet;
use crate::formula::{Binder, Formula, VarKind};
use crate::gamecore::{GameBoard, Player};
use crate::polarity::{
    close_box_relation, close_dia_relation, EnrichedContext, Polarity, Relation,
};
use crate::semantics::Model;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_relation(rng: &mut impl Rng, rows: usize, cols: usize, density: f64) -> Relation {
    let mut r = Relation::empty(rows, cols);
    for i in 0..rows {
        for j in 0..cols {
            if rng.gen_bool(density) {
                r.insert(i, j);
            }
        }
    }
    r
}

/// A context with `1..=max_objects` objects and `1..=max_attributes`
/// attributes. Carriers of size one are rare, and some incidences start from
/// the inequality pattern `gi I mj ⇔ i ≠ j`, whose concept lattice is a full
/// powerset, so that large lattices are well represented.
pub fn random_polarity(rng: &mut impl Rng, max_objects: usize, max_attributes: usize) -> Polarity {
    let size = |rng: &mut dyn rand::RngCore, max: usize| {
        if max >= 2 && rng.gen_bool(0.9) {
            rng.gen_range(2..=max)
        } else {
            rng.gen_range(1..=max)
        }
    };
    let g = size(rng, max_objects);
    let m = size(rng, max_attributes);
    let incidence = if rng.gen_bool(0.35) {
        let mut r = Relation::from_pairs(
            g,
            m,
            (0..g)
                .flat_map(|i| (0..m).map(move |j| (i, j)))
                .filter(|(i, j)| i != j),
        );
        let flips = rng.gen_range(0..=2);
        for _ in 0..flips {
            let (i, j) = (rng.gen_range(0..g), rng.gen_range(0..m));
            if r.contains(i, j) {
                r.remove(i, j);
            } else {
                r.insert(i, j);
            }
        }
        r
    } else {
        let density = rng.gen_range(0.25..0.75);
        random_relation(rng, g, m, density)
    };
    Polarity::anonymous(incidence).expect("non-empty carriers")
}

/// A random concept of `p`, generated by closing a random object set.
pub fn random_concept(rng: &mut impl Rng, p: &Polarity) -> crate::polarity::Concept {
    let seed: BitSet = (0..p.n_objects()).filter(|_| rng.gen_bool(0.4)).collect();
    p.concept_of_extent(seed)
}

/// Compatible modal relations. Each column of `R_□` (each row of `R_◇`) is
/// drawn as a stable set, or left empty, and the result is closed to the
/// smallest compatible relation containing it.
pub fn random_enriched(rng: &mut impl Rng, p: Polarity) -> EnrichedContext {
    let (g, m) = (p.n_objects(), p.n_attributes());
    let mut rbox = Relation::empty(g, m);
    let pb = rng.gen_range(0.2..0.9);
    for a in 0..m {
        if rng.gen_bool(pb) {
            for o in random_concept(rng, &p).extent {
                rbox.insert(o, a);
            }
        }
    }
    let mut rdia = Relation::empty(m, g);
    let pd = rng.gen_range(0.2..0.9);
    for o in 0..g {
        if rng.gen_bool(pd) {
            for a in random_concept(rng, &p).intent {
                rdia.insert(a, o);
            }
        }
    }
    let rbox = close_box_relation(&p, &rbox);
    let rdia = close_dia_relation(&p, &rdia);
    EnrichedContext::new(p, rbox, rdia)
}

/// Atom names `p0, p1, ..`.
pub fn atom_names(n: usize) -> Vec<String> {
    (0..n).map(|i| format!("p{i}")).collect()
}

pub fn random_model(
    rng: &mut impl Rng,
    max_objects: usize,
    max_attributes: usize,
    atoms: &[String],
) -> Model {
    let p = random_polarity(rng, max_objects, max_attributes);
    let valuation = atoms
        .iter()
        .map(|a| (a.clone(), random_concept(rng, &p)))
        .collect();
    let ctx = random_enriched(rng, p);
    Model::new(ctx, valuation).expect("closed relations are compatible")
}

/// Shape limits for random formulas.
#[derive(Clone, Copy, Debug)]
pub struct FormulaShape {
    pub max_depth: usize,
    pub max_binders: usize,
}

impl Default for FormulaShape {
    fn default() -> Self {
        FormulaShape {
            max_depth: 4,
            max_binders: 2,
        }
    }
}

/// A closed formula over `atoms` within `shape`. Bound variables are named
/// `x0, x1, ..` in binder order.
pub fn random_formula(rng: &mut impl Rng, atoms: &[String], shape: FormulaShape) -> Formula {
    let mut binders = shape.max_binders;
    gen(
        rng,
        atoms,
        shape.max_depth,
        &mut Vec::new(),
        &mut binders,
        &mut 0,
    )
}

fn gen(
    rng: &mut impl Rng,
    atoms: &[String],
    depth: usize,
    scope: &mut Vec<(String, VarKind)>,
    binders: &mut usize,
    next_var: &mut usize,
) -> Formula {
    if depth <= 1 {
        return leaf(rng, atoms, scope);
    }
    let choice = rng.gen_range(0..10);
    match choice {
        0 => leaf(rng, atoms, scope),
        1 | 2 => Formula::and(
            gen(rng, atoms, depth - 1, scope, binders, next_var),
            gen(rng, atoms, depth - 1, scope, binders, next_var),
        ),
        3 | 4 => Formula::or(
            gen(rng, atoms, depth - 1, scope, binders, next_var),
            gen(rng, atoms, depth - 1, scope, binders, next_var),
        ),
        5 => Formula::boxed(gen(rng, atoms, depth - 1, scope, binders, next_var)),
        6 => Formula::dia(gen(rng, atoms, depth - 1, scope, binders, next_var)),
        _ if *binders > 0 => {
            // alternate with the innermost enclosing binder when there is one
            let binder = match scope.last() {
                Some((_, VarKind::Nu)) => Binder::Mu,
                Some((_, VarKind::Mu)) => Binder::Nu,
                _ if rng.gen_bool(0.5) => Binder::Nu,
                _ => Binder::Mu,
            };
            *binders -= 1;
            let name = format!("x{}", *next_var);
            *next_var += 1;
            scope.push((name.clone(), binder.var_kind()));
            let body = gen(rng, atoms, depth - 1, scope, binders, next_var);
            scope.pop();
            Formula::binder(binder, &name, body)
        }
        _ => Formula::boxed(gen(rng, atoms, depth - 1, scope, binders, next_var)),
    }
}

fn leaf(rng: &mut impl Rng, atoms: &[String], scope: &[(String, VarKind)]) -> Formula {
    let r = rng.gen_range(0..10);
    if !scope.is_empty() && r < 5 {
        let (x, k) = scope.choose(rng).expect("non-empty");
        return Formula::var(x, *k);
    }
    match r {
        8 => Formula::Top,
        9 => Formula::Bot,
        _ if atoms.is_empty() => Formula::Top,
        _ => Formula::atom(atoms.choose(rng).expect("non-empty")),
    }
}

/// `ηx. (.. ηy. (.. x .. y ..) ..)` with opposite binders: a formula with a
/// genuine ν/μ alternation where the inner body depends on the outer variable.
pub fn random_alternating_formula(rng: &mut impl Rng, atoms: &[String]) -> Formula {
    let outer = if rng.gen_bool(0.5) {
        Binder::Nu
    } else {
        Binder::Mu
    };
    let inner = match outer {
        Binder::Nu => Binder::Mu,
        Binder::Mu => Binder::Nu,
    };
    let x = Formula::var("x0", outer.var_kind());
    let y = Formula::var("x1", inner.var_kind());
    let a = leaf(rng, atoms, &[]);
    let modal = |rng: &mut dyn rand::RngCore, f: Formula| match rng.gen_range(0..3) {
        0 => Formula::boxed(f),
        1 => Formula::dia(f),
        _ => f,
    };
    let lhs = modal(rng, x);
    let rhs = modal(rng, y);
    let core = if rng.gen_bool(0.5) {
        Formula::or(Formula::and(lhs, a), rhs)
    } else {
        Formula::and(Formula::or(lhs, a), rhs)
    };
    Formula::binder(outer, "x0", Formula::binder(inner, "x1", core))
}

/// A formula with one free variable `var` (monotone in it by construction).
pub fn random_open_formula(
    rng: &mut impl Rng,
    atoms: &[String],
    var: &str,
    depth: usize,
) -> Formula {
    let mut scope = vec![(var.to_string(), VarKind::Free)];
    let mut binders = 1;
    loop {
        let f = gen(rng, atoms, depth, &mut scope, &mut binders, &mut 0);
        if f.free_vars().contains(var) {
            return f;
        }
        binders = 1;
    }
}

/// A board with `1..=max_positions` positions and priorities `0..=max_priority`.
pub fn random_board(rng: &mut impl Rng, max_positions: usize, max_priority: u32) -> GameBoard {
    let n = rng.gen_range(1..=max_positions);
    let mut b = GameBoard::new();
    for i in 0..n {
        let owner = if rng.gen_bool(0.5) {
            Player::Exists
        } else {
            Player::Forall
        };
        b.add_position(format!("v{i}"), owner, rng.gen_range(0..=max_priority));
    }
    let density = rng.gen_range(0.1..0.6);
    for v in 0..n {
        for w in 0..n {
            if rng.gen_bool(density) {
                b.add_move(v, w);
            }
        }
    }
    b
}
