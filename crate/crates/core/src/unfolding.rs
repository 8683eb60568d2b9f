//! Unfolding games on finite concept lattices.
//!
//! For a monotone map `f` on a lattice `L` and a set of join generators `J`,
//! ∃ sits at a generator `j` and proposes a set `S ⊆ J` with `j ≤ f(⋁S)`;
//! ∀ answers with any member of `S`. A player who cannot move loses, and
//! infinite plays go to a fixed player. With infinite plays won by ∃ the
//! join of ∃'s winning generators is `gfp f`; with infinite plays won by ∀ it
//! is `lfp f`. The meet-generator game swaps the roles: ∀ proposes `S ⊆ M`
//! with `f(⋀S) ≤ m` and the meet of ∀'s winning generators is `lfp f` (∀
//! wins infinite plays) or `gfp f` (∃ wins them).
//!
//! The alternative game G′ lets ∃ answer `j` with any lattice element `u`
//! such that `j ≤ f(u)`, after which ∀ picks a generator below `u` other
//! than `⊥`. (If `⊥` were on offer, ∀ could retreat to it from every `u`
//! and loop there forever.) With ∀
//! winning infinite plays, the join of ∃'s winners is `lfp f` on every
//! finite lattice: ∃ can always answer `j ≤ f^(k+1)(⊥)` with `f^k(⊥)`, and
//! the chain `f^k(⊥)` stabilises after finitely many steps.
//!
//! On infinite lattices G′ can fail. Take a chain `a1 < a2 < ..` next to an
//! incomparable `b` below a common top, with `f(⊥) = a1`, `f(a_n) = a_(n+1)`
//! and `f(b) = f(⊤) = ⊤`. From `b`, ∃ may only answer `b` or `⊤`, and ∀
//! replies `b` forever, although `b` lies below the least fixed point `⊤`.
//! Every finite truncation of the chain has `f(a_n) = ⊤` at its end, which
//! hands ∃ the extra answer `a_n`; the `gprime_truncation` example prints this.
//!
//! [`solve_unfolding_symbolic`] computes the winning sets directly as
//! fixed points over generator sets; [`build_unfolding_board`] materialises
//! the exponential board so the two can be compared.

use std::collections::HashMap;

use crate::bits::BitSet;
use crate::error::{Error, Result};
use crate::formula::Formula;
use crate::gamecore::{self, GameBoard, Player, Solution};
use crate::polarity::{Concept, ConceptLattice};
use crate::semantics::Model;

/// Largest lattice on which monotonicity is checked over all pairs.
pub const MONOTONE_CHECK_BOUND: usize = 512;

/// Default bound on the number of generators of an explicit board.
pub const DEFAULT_BOARD_BOUND: usize = 12;

/// Generator count up to which explicit boards list every admissible set.
pub const UNPRUNED_BOUND: usize = 8;

/// A monotone map on a concept lattice, tabulated by concept index.
#[derive(Clone, Debug)]
pub struct LatticeMap {
    lattice: ConceptLattice,
    table: Vec<usize>,
}

impl LatticeMap {
    /// Tabulates `f` and checks that it maps concepts to concepts and, on
    /// lattices up to [`MONOTONE_CHECK_BOUND`], that it is monotone.
    pub fn from_fn(
        lattice: ConceptLattice,
        f: impl Fn(&Concept) -> Result<Concept>,
    ) -> Result<LatticeMap> {
        let mut table = Vec::with_capacity(lattice.len());
        for c in lattice.concepts() {
            let image = f(c)?;
            table.push(lattice.index_of(&image).ok_or(Error::NotAConcept)?);
        }
        let map = LatticeMap { lattice, table };
        if map.lattice.len() <= MONOTONE_CHECK_BOUND {
            map.check_monotone()?;
        }
        Ok(map)
    }

    /// The map `c ↦ ⟦f⟧[var ↦ c]` on the model's concept lattice.
    pub fn from_formula(model: &Model, f: &Formula, var: &str) -> Result<LatticeMap> {
        let lattice = model.lattice()?;
        let f = f.open_var(var);
        LatticeMap::from_fn(lattice, model.formula_map(&f, var))
    }

    fn check_monotone(&self) -> Result<()> {
        let l = &self.lattice;
        for (i, a) in l.concepts().iter().enumerate() {
            for (j, b) in l.concepts().iter().enumerate() {
                if a.leq(b) && !l.get(self.table[i]).leq(&l.get(self.table[j])) {
                    return Err(Error::NonMonotone(format!(
                        "{} <= {} but their images are not ordered",
                        l.show(a),
                        l.show(b)
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn lattice(&self) -> &ConceptLattice {
        &self.lattice
    }

    pub fn apply(&self, c: &Concept) -> Concept {
        let i = self
            .lattice
            .index_of(c)
            .expect("argument is a concept of the lattice");
        self.lattice.get(self.table[i])
    }

    pub fn lfp(&self) -> Result<Concept> {
        crate::semantics::lfp(&self.lattice, |c| self.apply(c))
    }

    pub fn gfp(&self) -> Result<Concept> {
        crate::semantics::gfp(&self.lattice, |c| self.apply(c))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Generators {
    Join,
    Meet,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Variant {
    Standard,
    AlternativeGPrime,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct UnfoldSpec {
    pub generators: Generators,
    pub infinite_winner: Player,
    pub variant: Variant,
}

impl UnfoldSpec {
    pub fn new(generators: Generators, infinite_winner: Player) -> UnfoldSpec {
        UnfoldSpec {
            generators,
            infinite_winner,
            variant: Variant::Standard,
        }
    }

    pub fn gprime() -> UnfoldSpec {
        UnfoldSpec {
            generators: Generators::Join,
            infinite_winner: Player::Forall,
            variant: Variant::AlternativeGPrime,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.variant == Variant::AlternativeGPrime {
            if self.generators != Generators::Join {
                return Err(Error::InvalidSpec(
                    "G' is only defined for join generators".into(),
                ));
            }
            if self.infinite_winner != Player::Forall {
                return Err(Error::InvalidSpec(
                    "G' is only solved with infinite plays won by ∀".into(),
                ));
            }
        }
        Ok(())
    }

    /// The player moving at generator positions.
    pub fn generator_owner(&self) -> Player {
        match self.generators {
            Generators::Join => Player::Exists,
            Generators::Meet => Player::Forall,
        }
    }

    /// Which extremal fixed point the winning generators represent.
    pub fn expected_fixpoint(&self) -> FixpointKind {
        match (self.generators, self.infinite_winner) {
            (Generators::Join, Player::Exists) | (Generators::Meet, Player::Exists) => {
                FixpointKind::Greatest
            }
            (Generators::Join, Player::Forall) | (Generators::Meet, Player::Forall) => {
                FixpointKind::Least
            }
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FixpointKind {
    Least,
    Greatest,
}

/// The generators of a game: object concepts for join games, attribute
/// concepts for meet games.
pub fn default_generators(lattice: &ConceptLattice, kind: Generators) -> Vec<Concept> {
    match kind {
        Generators::Join => lattice.object_concepts(),
        Generators::Meet => lattice.attribute_concepts(),
    }
}

/// Checks that `gens` are concepts of the lattice that join-generate
/// (resp. meet-generate) it.
pub fn check_generators(
    lattice: &ConceptLattice,
    kind: Generators,
    gens: &[Concept],
) -> Result<()> {
    if let Some(bad) = gens.iter().find(|g| !lattice.contains(g)) {
        return Err(Error::GeneratorMismatch(format!(
            "{:?} is not a concept of the lattice",
            bad
        )));
    }
    for c in lattice.concepts() {
        let rebuilt = match kind {
            Generators::Join => lattice.join_all(gens.iter().filter(|g| g.leq(c))),
            Generators::Meet => lattice.meet_all(gens.iter().filter(|g| c.leq(g))),
        };
        if rebuilt != *c {
            return Err(Error::GeneratorMismatch(format!(
                "{} is not generated",
                lattice.show(c)
            )));
        }
    }
    Ok(())
}

/// Per-generator outcome of an unfolding game.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UnfoldResult {
    pub generators: Vec<Concept>,
    /// Whether the generator's owner (∃ for join, ∀ for meet) wins there.
    pub owner_wins: Vec<bool>,
    /// Join (join games) or meet (meet games) of the winning generators.
    pub fixpoint: Concept,
}

impl UnfoldResult {
    pub fn winning_generators(&self) -> Vec<Concept> {
        self.generators
            .iter()
            .zip(&self.owner_wins)
            .filter(|(_, &w)| w)
            .map(|(g, _)| *g)
            .collect()
    }
}

fn combine(lattice: &ConceptLattice, kind: Generators, set: &[Concept]) -> Concept {
    match kind {
        Generators::Join => lattice.join_all(set),
        Generators::Meet => lattice.meet_all(set),
    }
}

fn admissible(kind: Generators, gen: &Concept, image: &Concept) -> bool {
    match kind {
        Generators::Join => gen.leq(image),
        Generators::Meet => image.leq(gen),
    }
}

/// Solves the standard unfolding game without building the board, on the
/// default generators.
pub fn solve_unfolding_symbolic(f: &LatticeMap, spec: UnfoldSpec) -> Result<UnfoldResult> {
    let gens = default_generators(f.lattice(), spec.generators);
    solve_symbolic_with(f, spec, &gens)
}

/// Symbolic solver on an explicit generator set.
///
/// By monotonicity ∃ (join) may as well propose every winning generator at
/// once, so the winning set is a fixed point of
/// `W ↦ { j : j ≤ f(⋁W) }`: the greatest one when the generator owner wins
/// infinite plays, the least one otherwise. Dually for meet generators.
pub fn solve_symbolic_with(
    f: &LatticeMap,
    spec: UnfoldSpec,
    gens: &[Concept],
) -> Result<UnfoldResult> {
    spec.validate()?;
    if spec.variant == Variant::AlternativeGPrime {
        return solve_gprime_with(f, gens).map(|r| r.into_unfold_result());
    }
    let lattice = f.lattice();
    check_generators(lattice, spec.generators, gens)?;
    let owner_wins_infinite = spec.infinite_winner == spec.generator_owner();
    let mut win: Vec<bool> = vec![owner_wins_infinite; gens.len()];
    loop {
        let chosen: Vec<Concept> = select(gens, &win);
        let image = f.apply(&combine(lattice, spec.generators, &chosen));
        let next: Vec<bool> = gens
            .iter()
            .map(|g| admissible(spec.generators, g, &image))
            .collect();
        if next == win {
            break;
        }
        win = next;
    }
    let fixpoint = combine(lattice, spec.generators, &select(gens, &win));
    Ok(UnfoldResult {
        generators: gens.to_vec(),
        owner_wins: win,
        fixpoint,
    })
}

fn select(gens: &[Concept], mask: &[bool]) -> Vec<Concept> {
    gens.iter()
        .zip(mask)
        .filter(|(_, &w)| w)
        .map(|(g, _)| *g)
        .collect()
}

/// A materialised unfolding board.
#[derive(Clone, Debug)]
pub struct UnfoldingBoard {
    pub board: GameBoard,
    pub generators: Vec<Concept>,
    /// Board position of each generator.
    pub generator_positions: Vec<usize>,
    pub start: usize,
    pub spec: UnfoldSpec,
}

impl UnfoldingBoard {
    pub fn solve(&self) -> Solution {
        gamecore::solve_safety(&self.board, self.spec.infinite_winner)
    }

    /// Winner-per-generator and the combined fixpoint, read off the board.
    pub fn result(&self, lattice: &ConceptLattice) -> UnfoldResult {
        let s = self.solve();
        let owner = match self.spec.variant {
            Variant::Standard => self.spec.generator_owner(),
            Variant::AlternativeGPrime => Player::Exists,
        };
        let owner_wins: Vec<bool> = self
            .generator_positions
            .iter()
            .map(|&v| s.winner[v] == owner)
            .collect();
        let fixpoint = combine(
            lattice,
            self.spec.generators,
            &select(&self.generators, &owner_wins),
        );
        UnfoldResult {
            generators: self.generators.clone(),
            owner_wins,
            fixpoint,
        }
    }
}

/// Options for explicit board construction.
#[derive(Clone, Copy, Debug)]
pub struct BoardOptions {
    pub max_generators: usize,
    /// List only ⊆-minimal admissible sets at generator positions.
    pub prune: bool,
}

impl Default for BoardOptions {
    fn default() -> Self {
        BoardOptions {
            max_generators: DEFAULT_BOARD_BOUND,
            prune: false,
        }
    }
}

impl BoardOptions {
    /// Unpruned up to [`UNPRUNED_BOUND`] generators, pruned above.
    pub fn for_size(n: usize) -> BoardOptions {
        BoardOptions {
            max_generators: DEFAULT_BOARD_BOUND,
            prune: n > UNPRUNED_BOUND,
        }
    }
}

/// Builds the explicit board of the game over the default generators.
/// `start` indexes the generator list.
pub fn build_unfolding_board(
    f: &LatticeMap,
    spec: UnfoldSpec,
    start: usize,
    opts: BoardOptions,
) -> Result<UnfoldingBoard> {
    let gens = default_generators(f.lattice(), spec.generators);
    build_board_with(f, spec, &gens, start, opts)
}

pub fn build_board_with(
    f: &LatticeMap,
    spec: UnfoldSpec,
    gens: &[Concept],
    start: usize,
    opts: BoardOptions,
) -> Result<UnfoldingBoard> {
    spec.validate()?;
    let lattice = f.lattice();
    check_generators(lattice, spec.generators, gens)?;
    if start >= gens.len() {
        return Err(Error::GeneratorMismatch(format!("no generator #{start}")));
    }
    if spec.variant == Variant::AlternativeGPrime {
        return Ok(gprime_board(f, gens, start));
    }
    let n = gens.len();
    if n > opts.max_generators {
        return Err(Error::SizeBound {
            what: "generator set",
            limit: opts.max_generators,
            actual: n,
        });
    }
    let owner = spec.generator_owner();
    let names: Vec<String> = gens
        .iter()
        .map(|g| gen_label(lattice, spec.generators, g))
        .collect();

    // f applied to the join/meet of every subset
    let subsets = 1usize << n;
    let mut combined = vec![combine(lattice, spec.generators, &[]); subsets];
    for mask in 1..subsets {
        let low = mask.trailing_zeros() as usize;
        let rest = combined[mask & (mask - 1)];
        combined[mask] = match spec.generators {
            Generators::Join => lattice.join(&rest, &gens[low]),
            Generators::Meet => lattice.meet(&rest, &gens[low]),
        };
    }
    let image: Vec<Concept> = combined.iter().map(|c| f.apply(c)).collect();

    let mut board = GameBoard::new();
    let generator_positions: Vec<usize> = names
        .iter()
        .map(|name| board.add_position(name.clone(), owner, 0))
        .collect();
    let mut subset_pos: HashMap<usize, usize> = HashMap::new();
    for (i, g) in gens.iter().enumerate() {
        for mask in 0..subsets {
            if !admissible(spec.generators, g, &image[mask]) {
                continue;
            }
            if opts.prune
                && BitSet::from_bits(mask as u64)
                    .iter()
                    .any(|k| admissible(spec.generators, g, &image[mask & !(1 << k)]))
            {
                continue;
            }
            let pos = *subset_pos.entry(mask).or_insert_with(|| {
                let members: Vec<&str> = BitSet::from_bits(mask as u64)
                    .iter()
                    .map(|k| names[k].as_str())
                    .collect();
                board.add_position(format!("{{{}}}", members.join(", ")), owner.opponent(), 0)
            });
            board.add_move(generator_positions[i], pos);
        }
    }
    let mut masks: Vec<(usize, usize)> = subset_pos.into_iter().collect();
    masks.sort_unstable();
    for (mask, pos) in masks {
        for k in BitSet::from_bits(mask as u64) {
            board.add_move(pos, generator_positions[k]);
        }
    }
    Ok(UnfoldingBoard {
        board,
        generators: gens.to_vec(),
        start: generator_positions[start],
        generator_positions,
        spec,
    })
}

fn gen_label(lattice: &ConceptLattice, kind: Generators, g: &Concept) -> String {
    let p = lattice.polarity();
    match kind {
        Generators::Join => {
            let names = p.object_names(g.extent);
            let own: Vec<&str> = (0..p.n_objects())
                .filter(|&i| lattice.object_concept(i) == *g)
                .map(|i| p.objects()[i].as_str())
                .collect();
            format!(
                "j[{}]",
                if own.is_empty() {
                    names.join(",")
                } else {
                    own.join(",")
                }
            )
        }
        Generators::Meet => {
            let own: Vec<&str> = (0..p.n_attributes())
                .filter(|&i| lattice.attribute_concept(i) == *g)
                .map(|i| p.attributes()[i].as_str())
                .collect();
            format!("m[{}]", own.join(","))
        }
    }
}

fn gprime_board(f: &LatticeMap, gens: &[Concept], start: usize) -> UnfoldingBoard {
    let lattice = f.lattice();
    let mut board = GameBoard::new();
    let generator_positions: Vec<usize> = gens
        .iter()
        .map(|g| board.add_position(gen_label(lattice, Generators::Join, g), Player::Exists, 0))
        .collect();
    let element_positions: Vec<usize> = lattice
        .concepts()
        .iter()
        .map(|u| board.add_position(lattice.show(u), Player::Forall, 0))
        .collect();
    for (i, g) in gens.iter().enumerate() {
        for (k, u) in lattice.concepts().iter().enumerate() {
            if g.leq(&f.apply(u)) {
                board.add_move(generator_positions[i], element_positions[k]);
            }
        }
    }
    // ⊥ is the empty join, so ∀ is never offered it
    let bottom = lattice.bottom();
    for (k, u) in lattice.concepts().iter().enumerate() {
        for (i, g) in gens.iter().enumerate() {
            if g.leq(u) && *g != bottom {
                board.add_move(element_positions[k], generator_positions[i]);
            }
        }
    }
    UnfoldingBoard {
        board,
        generators: gens.to_vec(),
        start: generator_positions[start],
        generator_positions,
        spec: UnfoldSpec::gprime(),
    }
}

/// Outcome of the G′ game.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GPrimeResult {
    pub generators: Vec<Concept>,
    pub winners: Vec<Player>,
    /// Join of ∃'s winning generators.
    pub fixpoint: Concept,
}

impl GPrimeResult {
    pub fn winner_at(&self, start: usize) -> Player {
        self.winners[start]
    }

    fn into_unfold_result(self) -> UnfoldResult {
        UnfoldResult {
            owner_wins: self.winners.iter().map(|&w| w == Player::Exists).collect(),
            generators: self.generators,
            fixpoint: self.fixpoint,
        }
    }
}

/// Solves G′ (infinite plays won by ∀) on the object-concept generators.
/// The board has `|J| + |L|` positions, so it is always built explicitly.
pub fn solve_gprime(f: &LatticeMap) -> Result<GPrimeResult> {
    let gens = default_generators(f.lattice(), Generators::Join);
    solve_gprime_with(f, &gens)
}

pub fn solve_gprime_with(f: &LatticeMap, gens: &[Concept]) -> Result<GPrimeResult> {
    let lattice = f.lattice();
    check_generators(lattice, Generators::Join, gens)?;
    if gens.is_empty() {
        return Ok(GPrimeResult {
            generators: vec![],
            winners: vec![],
            fixpoint: lattice.bottom(),
        });
    }
    let ub = gprime_board(f, gens, 0);
    let s = gamecore::solve_safety(&ub.board, Player::Forall);
    let winners: Vec<Player> = ub
        .generator_positions
        .iter()
        .map(|&v| s.winner[v])
        .collect();
    let won: Vec<Concept> = gens
        .iter()
        .zip(&winners)
        .filter(|(_, &w)| w == Player::Exists)
        .map(|(g, _)| *g)
        .collect();
    Ok(GPrimeResult {
        generators: gens.to_vec(),
        winners,
        fixpoint: lattice.join_all(&won),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formula::parse;
    use crate::polarity::{powerset_polarity, EnrichedContext, Polarity, Relation};

    fn m1() -> Model {
        let p = Polarity::anonymous(Relation::from_pairs(2, 3, [(0, 0), (0, 1), (1, 2)])).unwrap();
        let ctx = EnrichedContext::new(p.clone(), p.incidence().clone(), Relation::empty(3, 2));
        let q = p.concept_of_extent(BitSet::singleton(0));
        Model::new(ctx, [("q".to_string(), q)].into()).unwrap()
    }

    fn identity(l: &ConceptLattice) -> LatticeMap {
        LatticeMap::from_fn(l.clone(), |c| Ok(*c)).unwrap()
    }

    #[test]
    fn identity_map() {
        let l = m1().lattice().unwrap();
        let id = identity(&l);
        let r = solve_unfolding_symbolic(&id, UnfoldSpec::new(Generators::Join, Player::Exists))
            .unwrap();
        assert!(r.owner_wins.iter().all(|&w| w));
        assert_eq!(r.fixpoint, l.top());
        let r = solve_unfolding_symbolic(&id, UnfoldSpec::new(Generators::Join, Player::Forall))
            .unwrap();
        assert_eq!(r.winning_generators(), vec![]);
        assert_eq!(r.fixpoint, l.bottom());
        let g = solve_gprime(&id).unwrap();
        assert_eq!(g.fixpoint, l.bottom());
        assert!(g.winners.iter().all(|&w| w == Player::Forall));
    }

    #[test]
    fn worked_model_gfp() {
        let m = m1();
        let map = LatticeMap::from_formula(&m, &parse("box v & q").unwrap(), "v").unwrap();
        let r = solve_unfolding_symbolic(&map, UnfoldSpec::new(Generators::Join, Player::Exists))
            .unwrap();
        assert_eq!(map.lattice().show(&r.fixpoint), "({g1}, {m1, m2})");
        assert_eq!(r.fixpoint, map.gfp().unwrap());
    }

    #[test]
    fn constant_map_gprime() {
        let l = m1().lattice().unwrap();
        for c0 in l.concepts().to_vec() {
            let map = LatticeMap::from_fn(l.clone(), |_| Ok(c0)).unwrap();
            let r = solve_gprime(&map).unwrap();
            for (g, w) in r.generators.iter().zip(&r.winners) {
                assert_eq!(*w == Player::Exists, g.leq(&c0));
            }
        }
    }

    #[test]
    fn powerset_game_lfp() {
        // f(A) = A ∪ {a} on P({a, b})
        let p = powerset_polarity(&["a", "b"]).unwrap();
        let l = ConceptLattice::new(&p).unwrap();
        let a = BitSet::singleton(0);
        let map =
            LatticeMap::from_fn(l.clone(), |c| Ok(p.concept_of_extent(c.extent.union(a)))).unwrap();
        let spec = UnfoldSpec::new(Generators::Join, Player::Forall);
        let r = solve_unfolding_symbolic(&map, spec).unwrap();
        let won = r.winning_generators();
        assert_eq!(won.len(), 1);
        assert_eq!(won[0].extent, a);
        assert_eq!(r.fixpoint.extent, a);
        assert_eq!(r.fixpoint, map.lfp().unwrap());
        let board = build_unfolding_board(&map, spec, 0, BoardOptions::default()).unwrap();
        assert_eq!(board.result(&l), r);
    }

    #[test]
    fn empty_set_move_wins_below_f_bottom() {
        let l = m1().lattice().unwrap();
        let c0 = l.get(1);
        let map = LatticeMap::from_fn(l.clone(), |c| Ok(l.join(c, &c0))).unwrap();
        for w in [Player::Exists, Player::Forall] {
            let spec = UnfoldSpec::new(Generators::Join, w);
            let b = build_unfolding_board(&map, spec, 0, BoardOptions::default()).unwrap();
            let s = b.solve();
            for (i, g) in b.generators.iter().enumerate() {
                if g.leq(&c0) {
                    assert_eq!(s.winner[b.generator_positions[i]], Player::Exists);
                }
            }
        }
    }

    #[test]
    fn spec_and_generator_errors() {
        let l = m1().lattice().unwrap();
        let id = identity(&l);
        let bad = UnfoldSpec {
            generators: Generators::Meet,
            infinite_winner: Player::Forall,
            variant: Variant::AlternativeGPrime,
        };
        assert!(matches!(
            solve_unfolding_symbolic(&id, bad),
            Err(Error::InvalidSpec(_))
        ));
        let spec = UnfoldSpec::new(Generators::Join, Player::Exists);
        // the top concept alone does not join-generate
        assert!(matches!(
            solve_symbolic_with(&id, spec, &[l.top()]),
            Err(Error::GeneratorMismatch(_))
        ));
        let opts = BoardOptions {
            max_generators: 1,
            prune: false,
        };
        assert!(matches!(
            build_unfolding_board(&id, spec, 0, opts),
            Err(Error::SizeBound { .. })
        ));
    }

    #[test]
    fn non_monotone_map_rejected() {
        let l = m1().lattice().unwrap();
        let (b, t) = (l.bottom(), l.top());
        let r = LatticeMap::from_fn(l.clone(), |c| Ok(if *c == b { t } else { b }));
        assert!(matches!(r, Err(Error::NonMonotone(_))));
    }
}
