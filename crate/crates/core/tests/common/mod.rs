#![allow(dead_code)]

use std::collections::BTreeMap;
use std::path::PathBuf;

use ndmu::bits::BitSet;
use ndmu::gamecore::{GameBoard, Player};
use ndmu::modelfile::read_model;
use ndmu::polarity::{Concept, ConceptLattice, EnrichedContext, Polarity, Relation};
use ndmu::unfolding::LatticeMap;
use ndmu::Model;

pub fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/fixtures")
        .join(name)
}

pub fn load(name: &str) -> Model {
    read_model(fixture(name)).unwrap()
}

/// Winner of the play fixed by a full positional profile from `start`:
/// a stuck player loses, otherwise the highest priority on the cycle decides.
fn play_winner(b: &GameBoard, profile: &[Option<usize>], start: usize) -> Player {
    let mut seen = vec![usize::MAX; b.len()];
    let mut path = Vec::new();
    let mut v = start;
    loop {
        if seen[v] != usize::MAX {
            let top = path[seen[v]..]
                .iter()
                .map(|&u| b.priority(u))
                .max()
                .unwrap();
            return Player::of_priority(top);
        }
        seen[v] = path.len();
        path.push(v);
        match profile[v] {
            Some(w) => v = w,
            None => return b.owner(v).opponent(),
        }
    }
}

/// Winners by brute force over positional strategy profiles: ∃ wins `v`
/// iff some ∃ strategy beats every ∀ strategy from `v`. Positional
/// determinacy of parity games makes this exact.
pub fn parity_oracle(b: &GameBoard) -> Vec<Player> {
    let n = b.len();
    let mine = |p: Player| -> Vec<usize> {
        (0..n)
            .filter(|&v| b.owner(v) == p && !b.moves(v).is_empty())
            .collect()
    };
    let (ex, fa) = (mine(Player::Exists), mine(Player::Forall));
    let profiles = |owned: &[usize]| -> Vec<Vec<(usize, usize)>> {
        let mut out = vec![vec![]];
        for &v in owned {
            let mut next = Vec::new();
            for prefix in &out {
                for &w in b.moves(v) {
                    let mut p = prefix.clone();
                    p.push((v, w));
                    next.push(p);
                }
            }
            out = next;
        }
        out
    };
    let (sigmas, taus) = (profiles(&ex), profiles(&fa));
    let mut exists_wins = vec![false; n];
    for sigma in &sigmas {
        let mut beats_all = vec![true; n];
        for tau in &taus {
            let mut profile = vec![None; n];
            for &(v, w) in sigma.iter().chain(tau) {
                profile[v] = Some(w);
            }
            for (v, ok) in beats_all.iter_mut().enumerate() {
                if *ok && play_winner(b, &profile, v) == Player::Forall {
                    *ok = false;
                }
            }
        }
        for v in 0..n {
            exists_wins[v] |= beats_all[v];
        }
    }
    exists_wins
        .into_iter()
        .map(|w| if w { Player::Exists } else { Player::Forall })
        .collect()
}

/// Least and greatest fixed points by plain Kleene iteration on the table.
pub fn kleene(map: &LatticeMap) -> (Concept, Concept) {
    let l = map.lattice();
    let iterate = |mut c: Concept| loop {
        let next = map.apply(&c);
        if next == c {
            return c;
        }
        c = next;
    };
    (iterate(l.bottom()), iterate(l.top()))
}

/// Least and greatest fixed points by scanning every concept.
pub fn scan_fixpoints(l: &ConceptLattice, f: impl Fn(&Concept) -> Concept) -> (Concept, Concept) {
    let fixed: Vec<Concept> = l
        .concepts()
        .iter()
        .filter(|c| f(c) == **c)
        .copied()
        .collect();
    let least = *fixed
        .iter()
        .find(|c| fixed.iter().all(|d| c.leq(d)))
        .unwrap();
    let greatest = *fixed
        .iter()
        .find(|c| fixed.iter().all(|d| d.leq(c)))
        .unwrap();
    (least, greatest)
}

/// `model` with object `g` duplicated as a new last object.
pub fn duplicate_object(model: &Model, g: usize) -> Model {
    let ctx = model.context();
    let p = ctx.polarity();
    let (n, m) = (p.n_objects(), p.n_attributes());
    let mut objects = p.objects().to_vec();
    objects.push(format!("{}'", objects[g]));
    let grow = |r: &Relation| {
        let mut rows: Vec<BitSet> = (0..n).map(|i| r.row(i)).collect();
        rows.push(r.row(g));
        Relation::from_rows(rows, m)
    };
    let incidence = grow(p.incidence());
    let rbox = grow(ctx.rbox());
    let mut rdia = Relation::empty(m, n + 1);
    for (a, o) in ctx.rdia().pairs() {
        rdia.insert(a, o);
        if o == g {
            rdia.insert(a, n);
        }
    }
    let polarity = Polarity::new(objects, p.attributes().to_vec(), incidence).unwrap();
    let valuation: BTreeMap<String, Concept> = model
        .valuation()
        .iter()
        .map(|(a, c)| (a.clone(), polarity.concept_of_intent(c.intent)))
        .collect();
    Model::new(EnrichedContext::new(polarity, rbox, rdia), valuation).unwrap()
}

/// Identity-like pairing between a model and its copy with `g` duplicated.
pub fn duplication_pairs(model: &Model, g: usize) -> (Relation, Relation) {
    let p = model.context().polarity();
    let (n, m) = (p.n_objects(), p.n_attributes());
    let mut s = Relation::from_pairs(n, n + 1, (0..n).map(|i| (i, i)));
    s.insert(g, n);
    let t = Relation::from_pairs(m, m, (0..m).map(|i| (i, i)));
    (s, t)
}

/// `model` with every atom's value joined with `extra` (same frame).
pub fn weaken_valuation(model: &Model, extra: &BTreeMap<String, Concept>) -> Model {
    let l = model.lattice().unwrap();
    let valuation = model
        .valuation()
        .iter()
        .map(|(a, c)| (a.clone(), l.join(c, &extra[a])))
        .collect();
    Model::new(model.context().clone(), valuation).unwrap()
}
