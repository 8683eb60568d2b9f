//! The lattice-based (non-distributive) modal mu-calculus over formal
//! contexts.
//!
//! Formulas denote formal concepts of an enriched polarity. Two independent
//! routes compute their meaning: the [`semantics`] evaluator iterates fixed
//! points on the concept lattice, while [`evalgame`] builds a parity game
//! whose winning regions coincide with the forcing relations. [`unfolding`]
//! recovers extremal fixed points of arbitrary monotone maps through
//! generator games, and [`bisim`] checks simulations between models.

pub mod bisim;
pub mod bits;
pub mod cli;
pub mod error;
pub mod evalgame;
pub mod formula;
pub mod gamecore;
pub mod modelfile;
pub mod polarity;
pub mod random;
pub mod semantics;
pub mod unfolding;

pub use error::{Error, Result};
pub use formula::{parse, Formula};
pub use gamecore::Player;
pub use polarity::{Concept, ConceptLattice, EnrichedContext, Polarity, Relation};
pub use semantics::Model;
