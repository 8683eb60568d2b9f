//! Simulations and bisimulations between polarity-based models.
//!
//! A simulation from `M1` to `M2` is a pair `(S, T)` with `S ⊆ G1 × G2` and
//! `T ⊆ M1 × M2` satisfying six conditions:
//!
//! 1. `g1 S g2` and `g1 ∈ ⟦p⟧₁` imply `g2 ∈ ⟦p⟧₂`;
//! 2. `m1 T m2` and `m2 ∈ ⦇p⦈₂` imply `m1 ∈ ⦇p⦈₁`;
//! 3. `g1 S g2` and `g2 I₂ᶜ m2` give some `m1` with `g1 I₁ᶜ m1` and `m1 T m2`;
//! 4. `m1 T m2` and `g1 I₁ᶜ m1` give some `g2` with `g2 I₂ᶜ m2` and `g1 S g2`;
//! 5. `g1 S g2` and `g2 R□₂ᶜ m2` give some `m1` with `g1 R□₁ᶜ m1` and `m1 T m2`;
//! 6. `m1 T m2` and `m1 R◇₁ᶜ g1` give some `g2` with `m2 R◇₂ᶜ g2` and `g1 S g2`.
//!
//! Simulations preserve satisfaction forwards along `S` and description
//! backwards along `T`. Without negation the converse need not hold, so
//! bisimilarity asks for a simulation in each direction separately.

use std::fmt;

use rand::seq::SliceRandom;
use rand::Rng;

use crate::error::{Error, Result};
use crate::formula::Formula;
use crate::polarity::Relation;
use crate::semantics::Model;

/// A candidate simulation: `s ⊆ G1 × G2`, `t ⊆ M1 × M2`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimulationPair {
    pub s: Relation,
    pub t: Relation,
}

impl SimulationPair {
    pub fn empty(m1: &Model, m2: &Model) -> SimulationPair {
        let (p1, p2) = (m1.context().polarity(), m2.context().polarity());
        SimulationPair {
            s: Relation::empty(p1.n_objects(), p2.n_objects()),
            t: Relation::empty(p1.n_attributes(), p2.n_attributes()),
        }
    }

    pub fn identity(m: &Model) -> SimulationPair {
        let p = m.context().polarity();
        let (g, a) = (p.n_objects(), p.n_attributes());
        SimulationPair {
            s: Relation::from_pairs(g, g, (0..g).map(|i| (i, i))),
            t: Relation::from_pairs(a, a, (0..a).map(|i| (i, i))),
        }
    }

    pub fn union(&self, other: &SimulationPair) -> SimulationPair {
        let merge = |a: &Relation, b: &Relation| {
            Relation::from_rows(
                (0..a.nrows()).map(|i| a.row(i).union(b.row(i))).collect(),
                a.ncols(),
            )
        };
        SimulationPair {
            s: merge(&self.s, &other.s),
            t: merge(&self.t, &other.t),
        }
    }

    pub fn is_subset(&self, other: &SimulationPair) -> bool {
        self.s.is_subset(&other.s) && self.t.is_subset(&other.t)
    }
}

/// A failed instance of one of the six conditions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub condition: u8,
    /// The related pair: objects for conditions 1, 3, 5; attributes otherwise.
    pub pair: (usize, usize),
    /// The element of the second (conditions 1, 3, 5) or first (2, 4, 6)
    /// model that has no matching partner.
    pub witness: Option<usize>,
    pub atom: Option<String>,
    pub message: String,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "condition {}: {}", self.condition, self.message)
    }
}

fn check_shapes(m1: &Model, m2: &Model, p: &SimulationPair) -> Result<()> {
    let (p1, p2) = (m1.context().polarity(), m2.context().polarity());
    let s_ok = p.s.nrows() == p1.n_objects() && p.s.ncols() == p2.n_objects();
    let t_ok = p.t.nrows() == p1.n_attributes() && p.t.ncols() == p2.n_attributes();
    if !(s_ok && t_ok) {
        return Err(Error::Precondition(
            "relation shapes do not match the models".into(),
        ));
    }
    Ok(())
}

fn check_vocabulary(m1: &Model, m2: &Model) -> Result<()> {
    let a: Vec<&str> = m1.atoms().collect();
    let b: Vec<&str> = m2.atoms().collect();
    if a != b {
        return Err(Error::VocabularyMismatch(format!(
            "[{}] vs [{}]",
            a.join(", "),
            b.join(", ")
        )));
    }
    Ok(())
}

/// Complement relations of both models, precomputed once.
struct Frames {
    ic1: Relation,
    ic2: Relation,
    box1: Relation,
    box2: Relation,
    dia1: Relation,
    dia2: Relation,
}

impl Frames {
    fn new(m1: &Model, m2: &Model) -> Frames {
        let (c1, c2) = (m1.context(), m2.context());
        Frames {
            ic1: c1.polarity().incidence().complement(),
            ic2: c2.polarity().incidence().complement(),
            box1: c1.rbox().complement(),
            box2: c2.rbox().complement(),
            dia1: c1.rdia().complement(),
            dia2: c2.rdia().complement(),
        }
    }

    /// First `m2` breaking condition 3 or 5 for `g1 S g2`.
    fn object_failure(&self, p: &SimulationPair, g1: usize, g2: usize) -> Option<(u8, usize)> {
        for (cond, r1, r2) in [(3, &self.ic1, &self.ic2), (5, &self.box1, &self.box2)] {
            let options = r1.row(g1);
            for m2 in r2.row(g2) {
                if options.intersection(p.t.col(m2)).is_empty() {
                    return Some((cond, m2));
                }
            }
        }
        None
    }

    /// First `g1` breaking condition 4 or 6 for `m1 T m2`.
    fn attribute_failure(&self, p: &SimulationPair, m1: usize, m2: usize) -> Option<(u8, usize)> {
        let targets = self.ic2.col(m2);
        for g1 in self.ic1.col(m1) {
            if p.s.row(g1).intersection(targets).is_empty() {
                return Some((4, g1));
            }
        }
        let targets = self.dia2.row(m2);
        for g1 in self.dia1.row(m1) {
            if p.s.row(g1).intersection(targets).is_empty() {
                return Some((6, g1));
            }
        }
        None
    }
}

fn atom_failure_object(m1: &Model, m2: &Model, g1: usize, g2: usize) -> Option<String> {
    m1.valuation()
        .iter()
        .find(|(a, c)| c.extent.contains(g1) && !m2.valuation()[*a].extent.contains(g2))
        .map(|(a, _)| a.clone())
}

fn atom_failure_attribute(m1: &Model, m2: &Model, a1: usize, a2: usize) -> Option<String> {
    m2.valuation()
        .iter()
        .find(|(a, c)| c.intent.contains(a2) && !m1.valuation()[*a].intent.contains(a1))
        .map(|(a, _)| a.clone())
}

/// All violations of the six conditions, in condition order.
pub fn check_simulation(m1: &Model, m2: &Model, p: &SimulationPair) -> Result<Vec<Violation>> {
    check_vocabulary(m1, m2)?;
    check_shapes(m1, m2, p)?;
    let (p1, p2) = (m1.context().polarity(), m2.context().polarity());
    let frames = Frames::new(m1, m2);
    let mut out = Vec::new();
    for (g1, g2) in p.s.pairs() {
        for (a, c) in m1.valuation() {
            if c.extent.contains(g1) && !m2.valuation()[a].extent.contains(g2) {
                out.push(Violation {
                    condition: 1,
                    pair: (g1, g2),
                    witness: None,
                    atom: Some(a.clone()),
                    message: format!(
                        "{} forces {a} but {} does not",
                        p1.objects()[g1],
                        p2.objects()[g2]
                    ),
                });
            }
        }
    }
    for (a1, a2) in p.t.pairs() {
        for (a, c) in m2.valuation() {
            if c.intent.contains(a2) && !m1.valuation()[a].intent.contains(a1) {
                out.push(Violation {
                    condition: 2,
                    pair: (a1, a2),
                    witness: None,
                    atom: Some(a.clone()),
                    message: format!(
                        "{} describes {a} but {} does not",
                        p2.attributes()[a2],
                        p1.attributes()[a1]
                    ),
                });
            }
        }
    }
    let object_zig = [
        (3, &frames.ic1, &frames.ic2, "I"),
        (5, &frames.box1, &frames.box2, "Rbox"),
    ];
    for (cond, r1, r2, name) in object_zig {
        for (g1, g2) in p.s.pairs() {
            for m2 in r2.row(g2) {
                if r1.row(g1).intersection(p.t.col(m2)).is_empty() {
                    out.push(Violation {
                        condition: cond,
                        pair: (g1, g2),
                        witness: Some(m2),
                        atom: None,
                        message: format!(
                            "{} S {} and not {} {name} {}, but no m with not {} {name} m and m T {}",
                            p1.objects()[g1],
                            p2.objects()[g2],
                            p2.objects()[g2],
                            p2.attributes()[m2],
                            p1.objects()[g1],
                            p2.attributes()[m2]
                        ),
                    });
                }
            }
        }
    }
    for (a1, a2) in p.t.pairs() {
        for g1 in frames.ic1.col(a1) {
            if p.s.row(g1).intersection(frames.ic2.col(a2)).is_empty() {
                out.push(Violation {
                    condition: 4,
                    pair: (a1, a2),
                    witness: Some(g1),
                    atom: None,
                    message: format!(
                        "{} T {} and not {} I {}, but no g with not g I {} and {} S g",
                        p1.attributes()[a1],
                        p2.attributes()[a2],
                        p1.objects()[g1],
                        p1.attributes()[a1],
                        p2.attributes()[a2],
                        p1.objects()[g1]
                    ),
                });
            }
        }
    }
    for (a1, a2) in p.t.pairs() {
        for g1 in frames.dia1.row(a1) {
            if p.s.row(g1).intersection(frames.dia2.row(a2)).is_empty() {
                out.push(Violation {
                    condition: 6,
                    pair: (a1, a2),
                    witness: Some(g1),
                    atom: None,
                    message: format!(
                        "{} T {} and not {} Rdia {}, but no g with not {} Rdia g and {} S g",
                        p1.attributes()[a1],
                        p2.attributes()[a2],
                        p1.attributes()[a1],
                        p1.objects()[g1],
                        p2.attributes()[a2],
                        p1.objects()[g1]
                    ),
                });
            }
        }
    }
    out.sort_by_key(|v| v.condition);
    Ok(out)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Candidate {
    Objects(usize, usize),
    Attributes(usize, usize),
}

fn initial(m1: &Model, m2: &Model) -> (SimulationPair, Vec<Candidate>) {
    let mut p = SimulationPair::empty(m1, m2);
    let mut order = Vec::new();
    for g1 in 0..p.s.nrows() {
        for g2 in 0..p.s.ncols() {
            if atom_failure_object(m1, m2, g1, g2).is_none() {
                p.s.insert(g1, g2);
                order.push(Candidate::Objects(g1, g2));
            }
        }
    }
    for a1 in 0..p.t.nrows() {
        for a2 in 0..p.t.ncols() {
            if atom_failure_attribute(m1, m2, a1, a2).is_none() {
                p.t.insert(a1, a2);
                order.push(Candidate::Attributes(a1, a2));
            }
        }
    }
    (p, order)
}

fn refine(m1: &Model, m2: &Model, mut p: SimulationPair, order: &[Candidate]) -> SimulationPair {
    let frames = Frames::new(m1, m2);
    loop {
        let mut changed = false;
        for c in order {
            match *c {
                Candidate::Objects(g1, g2) if p.s.contains(g1, g2) => {
                    if frames.object_failure(&p, g1, g2).is_some() {
                        p.s.remove(g1, g2);
                        changed = true;
                    }
                }
                Candidate::Attributes(a1, a2)
                    if p.t.contains(a1, a2) && frames.attribute_failure(&p, a1, a2).is_some() =>
                {
                    p.t.remove(a1, a2);
                    changed = true;
                }
                _ => {}
            }
        }
        if !changed {
            return p;
        }
    }
}

/// The largest simulation from `m1` to `m2`: start from every pair meeting
/// conditions 1 and 2 and delete pairs breaking 3–6 until nothing changes.
/// Pairs are visited in row-major order, objects first.
pub fn largest_simulation(m1: &Model, m2: &Model) -> Result<SimulationPair> {
    check_vocabulary(m1, m2)?;
    let (p, order) = initial(m1, m2);
    Ok(refine(m1, m2, p, &order))
}

/// [`largest_simulation`] with the deletion pass visiting pairs in a random
/// order. The result does not depend on the order.
pub fn largest_simulation_shuffled(
    m1: &Model,
    m2: &Model,
    rng: &mut impl Rng,
) -> Result<SimulationPair> {
    check_vocabulary(m1, m2)?;
    let (p, mut order) = initial(m1, m2);
    order.shuffle(rng);
    Ok(refine(m1, m2, p, &order))
}

/// Largest simulations in both directions.
#[derive(Clone, Debug)]
pub struct Bisimilarity {
    pub forward: SimulationPair,
    pub backward: SimulationPair,
}

impl Bisimilarity {
    pub fn compute(m1: &Model, m2: &Model) -> Result<Bisimilarity> {
        Ok(Bisimilarity {
            forward: largest_simulation(m1, m2)?,
            backward: largest_simulation(m2, m1)?,
        })
    }

    pub fn objects(&self, g1: usize, g2: usize) -> bool {
        self.forward.s.contains(g1, g2) && self.backward.s.contains(g2, g1)
    }

    pub fn attributes(&self, m1: usize, m2: usize) -> bool {
        self.forward.t.contains(m1, m2) && self.backward.t.contains(m2, m1)
    }

    /// All bisimilar object pairs.
    pub fn object_pairs(&self) -> Vec<(usize, usize)> {
        self.forward
            .s
            .pairs()
            .filter(|&(a, b)| self.backward.s.contains(b, a))
            .collect()
    }

    pub fn attribute_pairs(&self) -> Vec<(usize, usize)> {
        self.forward
            .t
            .pairs()
            .filter(|&(a, b)| self.backward.t.contains(b, a))
            .collect()
    }
}

/// Whether objects `g1` of `m1` and `g2` of `m2` are bisimilar.
pub fn check_bisimilar(m1: &Model, m2: &Model, g1: &str, g2: &str) -> Result<bool> {
    let (i, j) = (m1.object(g1)?, m2.object(g2)?);
    Ok(Bisimilarity::compute(m1, m2)?.objects(i, j))
}

/// Whether attributes `a1` of `m1` and `a2` of `m2` are bisimilar.
pub fn check_bisimilar_attributes(m1: &Model, m2: &Model, a1: &str, a2: &str) -> Result<bool> {
    let (i, j) = (m1.attribute(a1)?, m2.attribute(a2)?);
    Ok(Bisimilarity::compute(m1, m2)?.attributes(i, j))
}

/// A formula whose truth is not transferred along a simulation pair.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Counterexample {
    /// `g1 S g2`, `g1 ⊩ φ` but not `g2 ⊩ φ`.
    Forces {
        g1: usize,
        g2: usize,
        formula: String,
    },
    /// `m1 T m2`, `m2 ≻ φ` but not `m1 ≻ φ`.
    Coforces {
        m1: usize,
        m2: usize,
        formula: String,
    },
}

/// Checks that every corpus formula is preserved along `p`. The pair must
/// be a simulation.
pub fn invariance_test(
    m1: &Model,
    m2: &Model,
    p: &SimulationPair,
    corpus: &[Formula],
) -> Result<Vec<Counterexample>> {
    let violations = check_simulation(m1, m2, p)?;
    if let Some(v) = violations.first() {
        return Err(Error::Precondition(format!("not a simulation: {v}")));
    }
    let mut out = Vec::new();
    for f in corpus {
        let (v1, v2) = (m1.evaluate_closed(f)?, m2.evaluate_closed(f)?);
        for (g1, g2) in p.s.pairs() {
            if v1.extent.contains(g1) && !v2.extent.contains(g2) {
                out.push(Counterexample::Forces {
                    g1,
                    g2,
                    formula: f.to_string(),
                });
            }
        }
        for (a1, a2) in p.t.pairs() {
            if v2.intent.contains(a2) && !v1.intent.contains(a1) {
                out.push(Counterexample::Coforces {
                    m1: a1,
                    m2: a2,
                    formula: f.to_string(),
                });
            }
        }
    }
    Ok(out)
}
