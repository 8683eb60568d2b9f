//! Finite two-player board games and their solvers.
//!
//! A position with no moves is lost by its owner. Infinite plays are decided
//! either by a fixed player (safety/reachability games) or by the max-parity
//! condition: ∃ wins iff the largest priority seen infinitely often is even.

use std::collections::VecDeque;
use std::fmt;

use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Player {
    Exists,
    Forall,
}

impl Player {
    pub fn opponent(self) -> Player {
        match self {
            Player::Exists => Player::Forall,
            Player::Forall => Player::Exists,
        }
    }

    /// The player favoured by a priority under the max-parity convention.
    pub fn of_priority(priority: u32) -> Player {
        if priority.is_multiple_of(2) {
            Player::Exists
        } else {
            Player::Forall
        }
    }

    fn idx(self) -> usize {
        match self {
            Player::Exists => 0,
            Player::Forall => 1,
        }
    }
}

impl fmt::Display for Player {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Player::Exists => "∃",
            Player::Forall => "∀",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Position {
    pub label: String,
    pub owner: Player,
    pub priority: u32,
    pub moves: Vec<usize>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct GameBoard {
    positions: Vec<Position>,
}

impl GameBoard {
    pub fn new() -> GameBoard {
        GameBoard::default()
    }

    pub fn add_position(
        &mut self,
        label: impl Into<String>,
        owner: Player,
        priority: u32,
    ) -> usize {
        self.positions.push(Position {
            label: label.into(),
            owner,
            priority,
            moves: Vec::new(),
        });
        self.positions.len() - 1
    }

    /// Appends a move; duplicates are ignored.
    pub fn add_move(&mut self, from: usize, to: usize) {
        assert!(to < self.positions.len(), "move target out of range");
        let moves = &mut self.positions[from].moves;
        if !moves.contains(&to) {
            moves.push(to);
        }
    }

    pub fn len(&self) -> usize {
        self.positions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.positions.is_empty()
    }

    pub fn position(&self, v: usize) -> &Position {
        &self.positions[v]
    }

    pub fn positions(&self) -> &[Position] {
        &self.positions
    }

    pub fn owner(&self, v: usize) -> Player {
        self.positions[v].owner
    }

    pub fn moves(&self, v: usize) -> &[usize] {
        &self.positions[v].moves
    }

    pub fn priority(&self, v: usize) -> u32 {
        self.positions[v].priority
    }

    pub fn label(&self, v: usize) -> &str {
        &self.positions[v].label
    }

    pub fn set_priority(&mut self, v: usize, priority: u32) {
        self.positions[v].priority = priority;
    }

    pub fn edge_count(&self) -> usize {
        self.positions.iter().map(|p| p.moves.len()).sum()
    }

    fn predecessors(&self) -> Vec<Vec<usize>> {
        let mut preds = vec![Vec::new(); self.len()];
        for (v, p) in self.positions.iter().enumerate() {
            for &w in &p.moves {
                preds[w].push(v);
            }
        }
        preds
    }
}

/// Winner of every position, plus positional strategies for each player on
/// the positions it owns and wins.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Solution {
    pub winner: Vec<Player>,
    pub strategy: Vec<Option<usize>>,
}

impl Solution {
    pub fn winning_region(&self, p: Player) -> Vec<usize> {
        (0..self.winner.len())
            .filter(|&v| self.winner[v] == p)
            .collect()
    }
}

/// How infinite plays are decided.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Objective {
    Parity,
    /// Every infinite play is won by the given player.
    InfiniteWonBy(Player),
}

impl Objective {
    fn priority(self, b: &GameBoard, v: usize) -> u32 {
        match self {
            Objective::Parity => b.priority(v),
            Objective::InfiniteWonBy(Player::Exists) => 0,
            Objective::InfiniteWonBy(Player::Forall) => 1,
        }
    }
}

struct Attractor {
    set: Vec<bool>,
    strategy: Vec<Option<usize>>,
}

// Attractor for `player` towards `target` inside the subgame `mask`. Moves
// leaving the mask are ignored, so opponent positions without moves inside
// the mask are attracted vacuously.
fn attractor(
    b: &GameBoard,
    preds: &[Vec<usize>],
    mask: &[bool],
    player: Player,
    target: &[bool],
) -> Attractor {
    let n = b.len();
    let mut set = vec![false; n];
    let mut strategy = vec![None; n];
    let mut remaining: Vec<usize> = (0..n)
        .map(|v| b.moves(v).iter().filter(|&&w| mask[w]).count())
        .collect();
    let mut queue = VecDeque::new();
    for v in 0..n {
        if mask[v] && target[v] {
            set[v] = true;
            queue.push_back(v);
        }
    }
    // opponent dead ends
    for v in 0..n {
        if mask[v] && !set[v] && b.owner(v) != player && remaining[v] == 0 {
            set[v] = true;
            queue.push_back(v);
        }
    }
    while let Some(w) = queue.pop_front() {
        for &v in &preds[w] {
            if !mask[v] || set[v] {
                continue;
            }
            if b.owner(v) == player {
                strategy[v] = Some(first_move_into(b, v, |u| mask[u] && set[u]).unwrap_or(w));
                set[v] = true;
                queue.push_back(v);
            } else {
                remaining[v] -= 1;
                if remaining[v] == 0 {
                    set[v] = true;
                    queue.push_back(v);
                }
            }
        }
    }
    Attractor { set, strategy }
}

fn first_move_into(b: &GameBoard, v: usize, pred: impl Fn(usize) -> bool) -> Option<usize> {
    b.moves(v).iter().copied().find(|&w| pred(w))
}

/// Solves the game in which every infinite play is won by `infinite_winner`
/// and a player without moves loses.
pub fn solve_safety(b: &GameBoard, infinite_winner: Player) -> Solution {
    let n = b.len();
    let preds = b.predecessors();
    let all = vec![true; n];
    let reacher = infinite_winner.opponent();
    let attr = attractor(b, &preds, &all, reacher, &vec![false; n]);
    let mut winner = vec![infinite_winner; n];
    let mut strategy = vec![None; n];
    for v in 0..n {
        if attr.set[v] {
            winner[v] = reacher;
            if b.owner(v) == reacher {
                strategy[v] = attr.strategy[v];
            }
        } else if b.owner(v) == infinite_winner {
            strategy[v] = first_move_into(b, v, |w| !attr.set[w]);
        }
    }
    Solution { winner, strategy }
}

/// Solves a max-parity game with Zielonka's recursive algorithm.
pub fn solve_parity(b: &GameBoard) -> Solution {
    let n = b.len();
    let preds = b.predecessors();
    let mut winner = vec![Player::Forall; n];
    let mut strategy = vec![None; n];

    // Dead ends first: afterwards the remaining arena has none, and every
    // subgame Zielonka recurses into is a trap, so none appear later either.
    let all = vec![true; n];
    let none = vec![false; n];
    let exists_attr = attractor(b, &preds, &all, Player::Exists, &none);
    let rest: Vec<bool> = (0..n).map(|v| !exists_attr.set[v]).collect();
    let forall_attr = attractor(b, &preds, &rest, Player::Forall, &none);
    let core: Vec<bool> = (0..n).map(|v| rest[v] && !forall_attr.set[v]).collect();
    for v in 0..n {
        if exists_attr.set[v] {
            winner[v] = Player::Exists;
            if b.owner(v) == Player::Exists {
                strategy[v] = exists_attr.strategy[v];
            }
        } else if forall_attr.set[v] {
            winner[v] = Player::Forall;
            if b.owner(v) == Player::Forall {
                strategy[v] = forall_attr.strategy[v];
            }
        }
    }
    let sub = zielonka(b, &preds, &core);
    for v in 0..n {
        if core[v] {
            winner[v] = if sub.win[0][v] {
                Player::Exists
            } else {
                Player::Forall
            };
            if b.owner(v) == winner[v] {
                strategy[v] = sub.strategy[v];
            }
        }
    }
    Solution { winner, strategy }
}

struct SubSolution {
    win: [Vec<bool>; 2],
    strategy: Vec<Option<usize>>,
}

fn zielonka(b: &GameBoard, preds: &[Vec<usize>], mask: &[bool]) -> SubSolution {
    let n = b.len();
    let mut out = SubSolution {
        win: [vec![false; n], vec![false; n]],
        strategy: vec![None; n],
    };
    let Some(top) = (0..n).filter(|&v| mask[v]).map(|v| b.priority(v)).max() else {
        return out;
    };
    let alpha = Player::of_priority(top);
    let beta = alpha.opponent();
    let target: Vec<bool> = (0..n).map(|v| mask[v] && b.priority(v) == top).collect();
    let attr_a = attractor(b, preds, mask, alpha, &target);
    let sub_mask: Vec<bool> = (0..n).map(|v| mask[v] && !attr_a.set[v]).collect();
    let sub = zielonka(b, preds, &sub_mask);

    if !sub.win[beta.idx()].iter().any(|&x| x) {
        for v in 0..n {
            if !mask[v] {
                continue;
            }
            out.win[alpha.idx()][v] = true;
            if b.owner(v) != alpha {
                continue;
            }
            out.strategy[v] = if sub_mask[v] {
                sub.strategy[v]
            } else if target[v] {
                first_move_into(b, v, |w| mask[w])
            } else {
                attr_a.strategy[v]
            };
        }
        return out;
    }

    let attr_b = attractor(b, preds, mask, beta, &sub.win[beta.idx()]);
    let rest: Vec<bool> = (0..n).map(|v| mask[v] && !attr_b.set[v]).collect();
    let sub2 = zielonka(b, preds, &rest);
    for v in 0..n {
        if !mask[v] {
            continue;
        }
        if attr_b.set[v] {
            out.win[beta.idx()][v] = true;
            if b.owner(v) == beta {
                out.strategy[v] = if sub.win[beta.idx()][v] {
                    sub.strategy[v]
                } else {
                    attr_b.strategy[v]
                };
            }
        } else {
            let w = if sub2.win[0][v] {
                Player::Exists
            } else {
                Player::Forall
            };
            out.win[w.idx()][v] = true;
            if b.owner(v) == w {
                out.strategy[v] = sub2.strategy[v];
            }
        }
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum StrategyViolation {
    WrongLength,
    /// The winner owns a position without moves.
    WinnerStuck {
        position: usize,
    },
    MissingMove {
        position: usize,
    },
    IllegalMove {
        position: usize,
        target: usize,
    },
    /// The strategy is defined on a position not owned by its winner.
    ForeignMove {
        position: usize,
    },
    /// A strategy or opponent move leaves the winner's region.
    LeavesRegion {
        position: usize,
        target: usize,
    },
    /// A cycle consistent with the strategy is won by the other player.
    LosingCycle {
        position: usize,
        priority: u32,
    },
}

/// Checks that `s` is a consistent solution: strategy edges are legal and
/// following a player's strategy inside its region never produces a play
/// that player loses.
pub fn check_strategy(b: &GameBoard, s: &Solution, objective: Objective) -> Vec<StrategyViolation> {
    let n = b.len();
    if s.winner.len() != n || s.strategy.len() != n {
        return vec![StrategyViolation::WrongLength];
    }
    let mut out = Vec::new();
    for v in 0..n {
        let owner = b.owner(v);
        let win = s.winner[v];
        match s.strategy[v] {
            Some(_) if owner != win => out.push(StrategyViolation::ForeignMove { position: v }),
            Some(t) if !b.moves(v).contains(&t) => out.push(StrategyViolation::IllegalMove {
                position: v,
                target: t,
            }),
            None if owner == win && b.moves(v).is_empty() => {
                out.push(StrategyViolation::WinnerStuck { position: v })
            }
            None if owner == win => out.push(StrategyViolation::MissingMove { position: v }),
            _ => {}
        }
    }
    if !out.is_empty() {
        return out;
    }
    // successors of v in the graph restricted by the winner's strategy
    let succ = |v: usize| -> Vec<usize> {
        if b.owner(v) == s.winner[v] {
            s.strategy[v].into_iter().collect()
        } else {
            b.moves(v).to_vec()
        }
    };
    for v in 0..n {
        for t in succ(v) {
            if s.winner[t] != s.winner[v] {
                out.push(StrategyViolation::LeavesRegion {
                    position: v,
                    target: t,
                });
            }
        }
    }
    if !out.is_empty() {
        return out;
    }
    for v in 0..n {
        let pr = objective.priority(b, v);
        if Player::of_priority(pr) == s.winner[v] {
            continue;
        }
        // is there a cycle through v staying at priorities <= pr?
        let mut seen = vec![false; n];
        let mut queue: VecDeque<usize> = succ(v).into_iter().collect();
        let mut found = false;
        while let Some(w) = queue.pop_front() {
            if w == v {
                found = true;
                break;
            }
            if seen[w] || objective.priority(b, w) > pr {
                continue;
            }
            seen[w] = true;
            queue.extend(succ(w));
        }
        if found {
            out.push(StrategyViolation::LosingCycle {
                position: v,
                priority: pr,
            });
        }
    }
    out
}

/// A play following the solution's strategies, cut at the first repetition.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Play {
    pub positions: Vec<usize>,
    /// Index into `positions` of the position the play returns to, if it loops.
    pub repeats_from: Option<usize>,
}

impl Play {
    pub fn render(&self, b: &GameBoard) -> String {
        let mut parts: Vec<String> = self
            .positions
            .iter()
            .map(|&v| b.label(v).to_string())
            .collect();
        if let Some(i) = self.repeats_from {
            parts.push(format!("[repeat {}]", b.label(self.positions[i])));
        }
        parts.join(" -> ")
    }
}

/// Plays from `start`: each owner follows its strategy where defined, and
/// otherwise takes its first move.
pub fn witness_play(b: &GameBoard, s: &Solution, start: usize) -> Play {
    let mut positions = vec![start];
    let mut at = start;
    loop {
        let next = s.strategy[at].or_else(|| b.moves(at).first().copied());
        let Some(next) = next else {
            return Play {
                positions,
                repeats_from: None,
            };
        };
        if let Some(i) = positions.iter().position(|&p| p == next) {
            return Play {
                positions,
                repeats_from: Some(i),
            };
        }
        positions.push(next);
        at = next;
    }
}

/// Machine-readable board together with its solution.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GameDocument {
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub start: Option<usize>,
    pub positions: Vec<PositionDoc>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PositionDoc {
    pub id: usize,
    pub label: String,
    pub owner: Player,
    pub priority: u32,
    pub moves: Vec<usize>,
    pub winner: Player,
    pub strategy_edge: Option<usize>,
}

impl GameDocument {
    pub fn new(b: &GameBoard, s: &Solution, start: Option<usize>) -> GameDocument {
        GameDocument {
            start,
            positions: b
                .positions()
                .iter()
                .enumerate()
                .map(|(id, p)| PositionDoc {
                    id,
                    label: p.label.clone(),
                    owner: p.owner,
                    priority: p.priority,
                    moves: p.moves.clone(),
                    winner: s.winner[id],
                    strategy_edge: s.strategy[id],
                })
                .collect(),
        }
    }

    /// Rebuilds the board and solution.
    pub fn into_parts(self) -> (GameBoard, Solution) {
        let mut b = GameBoard::new();
        for p in &self.positions {
            b.add_position(p.label.clone(), p.owner, p.priority);
        }
        for p in &self.positions {
            for &m in &p.moves {
                b.add_move(p.id, m);
            }
        }
        let s = Solution {
            winner: self.positions.iter().map(|p| p.winner).collect(),
            strategy: self.positions.iter().map(|p| p.strategy_edge).collect(),
        };
        (b, s)
    }
}
