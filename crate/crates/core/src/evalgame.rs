//! Evaluation games for the lattice-based modal mu-calculus.
//!
//! Positions pair an object `g` or an attribute `m` with a subformula
//! occurrence. ∃ tries to show `g ⊩ φ` and moves at attribute positions; ∀
//! tries to show `m ≻ φ` and moves at object positions. All moves go through
//! the complements `I^c`, `R_□^c`, `R_◇^c` of the model's relations. The
//! unfolding rows (`(g, νx.φ)`, `(g, x)`, `(m, μy.φ)`, `(m, y)`) have a single
//! move and are given to ∃.
//!
//! Infinite plays are decided by max parity. A regeneration position
//! `(·, z)` gets priority `2·rank(z)` for a ν-variable and `2·rank(z) + 1` for
//! a μ-variable, where `rank` is a linear extension of the dependency order
//! starting at 1. Atom positions get priority 1, so a play that bounces
//! between `(g, p)` and `(m, p)` forever is won by ∀; all other positions get 0.

use std::collections::{BTreeMap, HashMap, VecDeque};
use std::fmt;

use crate::error::{Error, Result};
use crate::formula::{Binder, Formula};
use crate::gamecore::{self, GameBoard, Play, Player, Solution};
use crate::polarity::Relation;
use crate::semantics::Model;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Side {
    Object(usize),
    Attribute(usize),
}

/// A position `(g, ψ)` or `(m, ψ)`; `node` indexes the subformula arena.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct EvalPosition {
    pub side: Side,
    pub node: usize,
}

#[derive(Clone, Debug)]
enum Node {
    Atom(String),
    Var(usize),
    Top,
    Bot,
    And(usize, usize),
    Or(usize, usize),
    Box(usize),
    Dia(usize),
    Fix(usize, usize),
}

#[derive(Clone, Debug)]
struct VarInfo {
    name: String,
    binder: Binder,
    binder_node: usize,
}

/// A hygienic closed formula flattened into subformula occurrences.
#[derive(Clone, Debug)]
pub struct FormulaArena {
    nodes: Vec<Node>,
    text: Vec<String>,
    vars: Vec<VarInfo>,
    priorities: Vec<u32>,
    root: usize,
}

impl FormulaArena {
    pub fn new(f: &Formula) -> Result<FormulaArena> {
        let free = f.free_vars();
        if !free.is_empty() {
            return Err(Error::FreeVariables(free.into_iter().collect()));
        }
        let f = f.rename_apart();
        let mut arena = FormulaArena {
            nodes: Vec::new(),
            text: Vec::new(),
            vars: Vec::new(),
            priorities: Vec::new(),
            root: 0,
        };
        arena.root = arena.add(&f, &mut Vec::new());
        let ranks = f.dependency_order().ranks();
        arena.priorities = arena
            .vars
            .iter()
            .map(|v| {
                let r = ranks[&v.name] as u32;
                match v.binder {
                    Binder::Nu => 2 * r,
                    Binder::Mu => 2 * r + 1,
                }
            })
            .collect();
        Ok(arena)
    }

    fn add(&mut self, f: &Formula, scope: &mut Vec<(String, usize)>) -> usize {
        let id = self.nodes.len();
        self.nodes.push(Node::Top);
        self.text.push(f.to_string());
        let node = match f {
            Formula::Atom(p) => Node::Atom(p.clone()),
            Formula::Var(x, _) => {
                let v = scope
                    .iter()
                    .rev()
                    .find(|(n, _)| n == x)
                    .map(|&(_, v)| v)
                    .expect("closed formula");
                Node::Var(v)
            }
            Formula::Top => Node::Top,
            Formula::Bot => Node::Bot,
            Formula::And(l, r) => {
                let (l, r) = (self.add(l, scope), self.add(r, scope));
                Node::And(l, r)
            }
            Formula::Or(l, r) => {
                let (l, r) = (self.add(l, scope), self.add(r, scope));
                Node::Or(l, r)
            }
            Formula::Box(b) => Node::Box(self.add(b, scope)),
            Formula::Dia(b) => Node::Dia(self.add(b, scope)),
            Formula::Nu(x, body) | Formula::Mu(x, body) => {
                let binder = if matches!(f, Formula::Nu(..)) {
                    Binder::Nu
                } else {
                    Binder::Mu
                };
                let v = self.vars.len();
                self.vars.push(VarInfo {
                    name: x.clone(),
                    binder,
                    binder_node: id,
                });
                scope.push((x.clone(), v));
                let body = self.add(body, scope);
                scope.pop();
                Node::Fix(v, body)
            }
        };
        self.nodes[id] = node;
        id
    }

    pub fn root(&self) -> usize {
        self.root
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn text(&self, node: usize) -> &str {
        &self.text[node]
    }

    /// Bound variable name and priority if `node` is a variable occurrence.
    pub fn variable_at(&self, node: usize) -> Option<(&str, Binder, u32)> {
        match self.nodes[node] {
            Node::Var(v) => Some((&self.vars[v].name, self.vars[v].binder, self.priorities[v])),
            _ => None,
        }
    }

    pub fn is_atom(&self, node: usize) -> bool {
        matches!(self.nodes[node], Node::Atom(_))
    }
}

/// The evaluation board of a model and a closed formula, with every
/// position reachable from `(g, φ)` and `(m, φ)` for all `g`, `m`.
#[derive(Clone, Debug)]
pub struct EvalGame {
    arena: FormulaArena,
    board: GameBoard,
    index: HashMap<EvalPosition, usize>,
    positions: Vec<EvalPosition>,
}

impl EvalGame {
    pub fn board(&self) -> &GameBoard {
        &self.board
    }

    pub fn arena(&self) -> &FormulaArena {
        &self.arena
    }

    pub fn position(&self, id: usize) -> EvalPosition {
        self.positions[id]
    }

    pub fn id_of(&self, pos: EvalPosition) -> Option<usize> {
        self.index.get(&pos).copied()
    }

    /// Board id of `(side, φ)` for the whole formula.
    pub fn start(&self, side: Side) -> usize {
        self.index[&EvalPosition {
            side,
            node: self.arena.root,
        }]
    }
}

struct Builder<'a> {
    model: &'a Model,
    arena: &'a FormulaArena,
    i_c: Relation,
    rbox_c: Relation,
    rdia_c: Relation,
    truth: BTreeMap<String, (crate::bits::BitSet, crate::bits::BitSet)>,
    board: GameBoard,
    index: HashMap<EvalPosition, usize>,
    positions: Vec<EvalPosition>,
    queue: VecDeque<usize>,
}

impl Builder<'_> {
    fn label(&self, pos: EvalPosition) -> String {
        let p = self.model.context().polarity();
        let who = match pos.side {
            Side::Object(g) => &p.objects()[g],
            Side::Attribute(m) => &p.attributes()[m],
        };
        format!("({who}, {})", self.arena.text(pos.node))
    }

    fn intern(&mut self, pos: EvalPosition) -> usize {
        if let Some(&id) = self.index.get(&pos) {
            return id;
        }
        let (owner, priority) = self.owner_and_priority(pos);
        let id = self.board.add_position(self.label(pos), owner, priority);
        self.index.insert(pos, id);
        self.positions.push(pos);
        self.queue.push_back(id);
        id
    }

    fn owner_and_priority(&self, pos: EvalPosition) -> (Player, u32) {
        let a = self.arena;
        let priority = match a.nodes[pos.node] {
            Node::Var(v) => a.priorities[v],
            Node::Atom(_) => 1,
            _ => 0,
        };
        let owner = match (pos.side, &a.nodes[pos.node]) {
            // single-move unfolding rows
            (Side::Object(_), Node::Fix(v, _)) if a.vars[*v].binder == Binder::Nu => Player::Exists,
            (Side::Object(_), Node::Var(v)) if a.vars[*v].binder == Binder::Nu => Player::Exists,
            (Side::Attribute(_), Node::Fix(v, _)) if a.vars[*v].binder == Binder::Mu => {
                Player::Exists
            }
            (Side::Attribute(_), Node::Var(v)) if a.vars[*v].binder == Binder::Mu => Player::Exists,
            (Side::Object(_), _) => Player::Forall,
            (Side::Attribute(_), _) => Player::Exists,
        };
        (owner, priority)
    }

    fn objects_opposite(&self, m: usize) -> Vec<usize> {
        (0..self.i_c.nrows())
            .filter(|&g| self.i_c.contains(g, m))
            .collect()
    }

    fn attributes_opposite(&self, g: usize) -> Vec<usize> {
        self.i_c.row(g).iter().collect()
    }

    fn successors(&self, pos: EvalPosition) -> Vec<EvalPosition> {
        let a = self.arena;
        let at = |side, node| EvalPosition { side, node };
        let n = pos.node;
        // Every row that "switches side" goes through I^c to the same formula.
        let to_attrs = |g| -> Vec<EvalPosition> {
            self.attributes_opposite(g)
                .into_iter()
                .map(|m| at(Side::Attribute(m), n))
                .collect()
        };
        let to_objs = |m| -> Vec<EvalPosition> {
            self.objects_opposite(m)
                .into_iter()
                .map(|g| at(Side::Object(g), n))
                .collect()
        };
        match (pos.side, &a.nodes[n]) {
            (Side::Object(g), Node::Atom(p)) => {
                if self.truth[p].0.contains(g) {
                    vec![]
                } else {
                    to_attrs(g)
                }
            }
            (Side::Attribute(m), Node::Atom(p)) => {
                if self.truth[p].1.contains(m) {
                    vec![]
                } else {
                    to_objs(m)
                }
            }
            (Side::Object(_), Node::Top) | (Side::Attribute(_), Node::Bot) => vec![],
            (Side::Object(g), Node::Bot) => to_attrs(g),
            (Side::Attribute(m), Node::Top) => to_objs(m),
            (Side::Attribute(m), Node::Or(l, r)) => {
                vec![at(Side::Attribute(m), *l), at(Side::Attribute(m), *r)]
            }
            (Side::Object(g), Node::Or(..)) => to_attrs(g),
            (Side::Object(g), Node::And(l, r)) => {
                vec![at(Side::Object(g), *l), at(Side::Object(g), *r)]
            }
            (Side::Attribute(m), Node::And(..)) => to_objs(m),
            (Side::Attribute(m), Node::Dia(b)) => (0..self.rdia_c.ncols())
                .filter(|&g| self.rdia_c.contains(m, g))
                .map(|g| at(Side::Object(g), *b))
                .collect(),
            (Side::Object(g), Node::Dia(_)) => to_attrs(g),
            (Side::Object(g), Node::Box(b)) => self
                .rbox_c
                .row(g)
                .iter()
                .map(|m| at(Side::Attribute(m), *b))
                .collect(),
            (Side::Attribute(m), Node::Box(_)) => to_objs(m),
            (side, Node::Fix(v, body)) => match (side, a.vars[*v].binder) {
                (Side::Object(_), Binder::Nu) | (Side::Attribute(_), Binder::Mu) => {
                    vec![at(side, *body)]
                }
                (Side::Attribute(m), Binder::Nu) => to_objs(m),
                (Side::Object(g), Binder::Mu) => to_attrs(g),
            },
            (side, Node::Var(v)) => match (side, a.vars[*v].binder) {
                (Side::Object(_), Binder::Nu) | (Side::Attribute(_), Binder::Mu) => {
                    vec![at(side, a.vars[*v].binder_node)]
                }
                (Side::Attribute(m), Binder::Nu) => to_objs(m),
                (Side::Object(g), Binder::Mu) => to_attrs(g),
            },
        }
    }
}

/// Builds the evaluation board for every object and attribute start.
pub fn build_eval_game(model: &Model, f: &Formula) -> Result<EvalGame> {
    let arena = FormulaArena::new(f)?;
    let ctx = model.context();
    let mut truth = BTreeMap::new();
    for node in &arena.nodes {
        if let Node::Atom(p) = node {
            let c = model
                .valuation()
                .get(p)
                .ok_or_else(|| Error::UnboundAtom(p.clone()))?;
            truth.insert(p.clone(), (c.extent, c.intent));
        }
    }
    let mut b = Builder {
        model,
        arena: &arena,
        i_c: ctx.polarity().incidence().complement(),
        rbox_c: ctx.rbox().complement(),
        rdia_c: ctx.rdia().complement(),
        truth,
        board: GameBoard::new(),
        index: HashMap::new(),
        positions: Vec::new(),
        queue: VecDeque::new(),
    };
    let p = ctx.polarity();
    for g in 0..p.n_objects() {
        b.intern(EvalPosition {
            side: Side::Object(g),
            node: arena.root,
        });
    }
    for m in 0..p.n_attributes() {
        b.intern(EvalPosition {
            side: Side::Attribute(m),
            node: arena.root,
        });
    }
    while let Some(id) = b.queue.pop_front() {
        let pos = b.positions[id];
        for succ in b.successors(pos) {
            let t = b.intern(succ);
            b.board.add_move(id, t);
        }
    }
    let Builder {
        board,
        index,
        positions,
        ..
    } = b;
    Ok(EvalGame {
        arena,
        board,
        index,
        positions,
    })
}

/// Outcome of solving an evaluation game from one start position.
#[derive(Clone, Debug)]
pub struct GameCheck {
    pub game: EvalGame,
    pub solution: Solution,
    pub start: usize,
    pub winner: Player,
    pub witness: Play,
}

impl GameCheck {
    /// The winner's positional strategy on its own winning positions.
    pub fn winner_strategy(&self) -> Vec<(usize, usize)> {
        let b = self.game.board();
        (0..b.len())
            .filter(|&v| self.solution.winner[v] == self.winner && b.owner(v) == self.winner)
            .filter_map(|v| self.solution.strategy[v].map(|t| (v, t)))
            .collect()
    }
}

/// Solves the evaluation game of `f` and reports the winner at `start`.
pub fn game_check(model: &Model, f: &Formula, start: Side) -> Result<GameCheck> {
    check_side(model, start)?;
    let game = build_eval_game(model, f)?;
    let solution = gamecore::solve_parity(game.board());
    let start = game.start(start);
    let winner = solution.winner[start];
    let witness = gamecore::witness_play(game.board(), &solution, start);
    Ok(GameCheck {
        game,
        solution,
        start,
        winner,
        witness,
    })
}

fn check_side(model: &Model, side: Side) -> Result<()> {
    let p = model.context().polarity();
    match side {
        Side::Object(g) if g >= p.n_objects() => Err(Error::UnknownElement(format!("object #{g}"))),
        Side::Attribute(m) if m >= p.n_attributes() => {
            Err(Error::UnknownElement(format!("attribute #{m}")))
        }
        _ => Ok(()),
    }
}

/// A start where the game and the denotational semantics disagree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Mismatch {
    pub side: Side,
    pub game_winner: Player,
    /// `g ⊩ φ` for objects, `m ≻ φ` for attributes.
    pub forced: bool,
}

impl fmt::Display for Mismatch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{:?}: game winner {}, denotational forcing {}",
            self.side, self.game_winner, self.forced
        )
    }
}

/// Verdicts of the game and of the evaluator at every object and attribute.
#[derive(Clone, Debug)]
pub struct Verdicts {
    pub game: EvalGame,
    pub solution: Solution,
    /// `(g ⊩ φ, winner at (g, φ))` per object.
    pub objects: Vec<(bool, Player)>,
    /// `(m ≻ φ, winner at (m, φ))` per attribute.
    pub attributes: Vec<(bool, Player)>,
}

impl Verdicts {
    pub fn mismatches(&self) -> Vec<Mismatch> {
        let mut out = Vec::new();
        for (g, &(forced, w)) in self.objects.iter().enumerate() {
            if forced != (w == Player::Exists) {
                out.push(Mismatch {
                    side: Side::Object(g),
                    game_winner: w,
                    forced,
                });
            }
        }
        for (m, &(forced, w)) in self.attributes.iter().enumerate() {
            if forced != (w == Player::Forall) {
                out.push(Mismatch {
                    side: Side::Attribute(m),
                    game_winner: w,
                    forced,
                });
            }
        }
        out
    }
}

/// Solves the board once and pairs each start's winner with the
/// denotational verdict.
pub fn verdicts(model: &Model, f: &Formula) -> Result<Verdicts> {
    let value = model.evaluate_closed(f)?;
    let game = build_eval_game(model, f)?;
    let solution = gamecore::solve_parity(game.board());
    let p = model.context().polarity();
    let objects = (0..p.n_objects())
        .map(|g| {
            (
                value.extent.contains(g),
                solution.winner[game.start(Side::Object(g))],
            )
        })
        .collect();
    let attributes = (0..p.n_attributes())
        .map(|m| {
            (
                value.intent.contains(m),
                solution.winner[game.start(Side::Attribute(m))],
            )
        })
        .collect();
    Ok(Verdicts {
        game,
        solution,
        objects,
        attributes,
    })
}

/// Starts where `∃ wins (g, φ) ⇔ g ⊩ φ` or `∃ wins (m, φ) ⇔ m ⊁ φ` fails.
pub fn adequacy_check(model: &Model, f: &Formula) -> Result<Vec<Mismatch>> {
    Ok(verdicts(model, f)?.mismatches())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bits::BitSet;
    use crate::formula::parse;
    use crate::polarity::{EnrichedContext, Polarity};

    fn m1() -> Model {
        let p = Polarity::anonymous(Relation::from_pairs(2, 3, [(0, 0), (0, 1), (1, 2)])).unwrap();
        let ctx = EnrichedContext::new(p.clone(), p.incidence().clone(), Relation::empty(3, 2));
        let q = p.concept_of_extent(BitSet::singleton(0));
        Model::new(ctx, [("q".to_string(), q)].into()).unwrap()
    }

    fn moves_of(game: &EvalGame, label: &str) -> (Player, Vec<String>) {
        let b = game.board();
        let v = (0..b.len())
            .find(|&v| b.label(v) == label)
            .unwrap_or_else(|| panic!("no {label}"));
        (
            b.owner(v),
            b.moves(v).iter().map(|&w| b.label(w).to_string()).collect(),
        )
    }

    #[test]
    fn worked_example_board() {
        let m = m1();
        let game = build_eval_game(&m, &parse("nu x. (box x & q)").unwrap()).unwrap();
        assert_eq!(
            moves_of(&game, "(g1, nu x. box x & q)"),
            (Player::Exists, vec!["(g1, box x & q)".to_string()])
        );
        assert_eq!(
            moves_of(&game, "(g1, box x & q)"),
            (
                Player::Forall,
                vec!["(g1, box x)".to_string(), "(g1, q)".to_string()]
            )
        );
        assert_eq!(
            moves_of(&game, "(g1, box x)"),
            (Player::Forall, vec!["(m3, x)".to_string()])
        );
        assert_eq!(
            moves_of(&game, "(m3, x)"),
            (Player::Exists, vec!["(g1, x)".to_string()])
        );
        assert_eq!(moves_of(&game, "(g1, q)"), (Player::Forall, vec![]));
        assert_eq!(moves_of(&game, "(m1, q)"), (Player::Exists, vec![]));
        assert_eq!(
            moves_of(&game, "(g1, x)"),
            (Player::Exists, vec!["(g1, nu x. box x & q)".to_string()])
        );
    }

    #[test]
    fn worked_example_winners() {
        let m = m1();
        let phi = parse("nu x. (box x & q)").unwrap();
        let g1 = game_check(&m, &phi, Side::Object(0)).unwrap();
        assert_eq!(g1.winner, Player::Exists);
        assert!(g1.witness.repeats_from.is_some());
        let m2 = game_check(&m, &phi, Side::Attribute(1)).unwrap();
        assert_eq!(m2.winner, Player::Forall);
        assert!(adequacy_check(&m, &phi).unwrap().is_empty());
        assert!(game_check(&m, &phi, Side::Object(5)).is_err());
    }

    #[test]
    fn constants() {
        let m = m1();
        let top = game_check(&m, &Formula::Top, Side::Object(0)).unwrap();
        assert_eq!(top.winner, Player::Exists);
        assert_eq!(top.witness.positions.len(), 1);
        assert!(adequacy_check(&m, &Formula::Top).unwrap().is_empty());
        assert!(adequacy_check(&m, &Formula::Bot).unwrap().is_empty());
    }

    #[test]
    fn priorities_follow_dependency_order() {
        let m = m1();
        let game = build_eval_game(&m, &parse("nu x. mu y. (box x & q | dia y)").unwrap()).unwrap();
        let a = game.arena();
        let mut seen = BTreeMap::new();
        for node in 0..a.len() {
            if let Some((name, _, pr)) = a.variable_at(node) {
                seen.insert(name.to_string(), pr);
            }
        }
        // y is inner (rank 1, mu): 3; x is outer (rank 2, nu): 4
        assert_eq!(seen["y"], 3);
        assert_eq!(seen["x"], 4);
    }

    #[test]
    fn free_variables_are_rejected() {
        let m = m1();
        let open = parse("box v").unwrap().open_var("v");
        assert!(matches!(
            build_eval_game(&m, &open),
            Err(Error::FreeVariables(_))
        ));
        assert!(matches!(
            build_eval_game(&m, &parse("p").unwrap()),
            Err(Error::UnboundAtom(_))
        ));
    }
}
