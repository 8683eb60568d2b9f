//! Denotational semantics on enriched contexts.
//!
//! Every formula denotes a concept of the underlying polarity. Fixed points
//! are computed by plain iteration from the top (for `nu`) or the bottom (for
//! `mu`); on a finite lattice this reaches the extremal fixed point after at
//! most `|G| + 1` strict steps.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::formula::Formula;
use crate::polarity::{Concept, ConceptLattice, EnrichedContext};

/// Interpretation of the variables of a formula.
pub type Environment = BTreeMap<String, Concept>;

#[derive(Clone, Debug)]
pub struct Model {
    context: EnrichedContext,
    valuation: BTreeMap<String, Concept>,
}

impl Model {
    /// Refuses contexts whose modal relations are not I-compatible and
    /// valuations that are not concepts.
    pub fn new(context: EnrichedContext, valuation: BTreeMap<String, Concept>) -> Result<Model> {
        let violations = context.check_compatible();
        if !violations.is_empty() {
            return Err(Error::Incompatible(violations));
        }
        if valuation
            .values()
            .any(|c| !context.polarity().is_concept(c))
        {
            return Err(Error::NotAConcept);
        }
        Ok(Model { context, valuation })
    }

    pub fn context(&self) -> &EnrichedContext {
        &self.context
    }

    pub fn valuation(&self) -> &BTreeMap<String, Concept> {
        &self.valuation
    }

    pub fn atoms(&self) -> impl Iterator<Item = &str> {
        self.valuation.keys().map(String::as_str)
    }

    pub fn with_atom(mut self, name: &str, c: Concept) -> Result<Model> {
        if !self.context.polarity().is_concept(&c) {
            return Err(Error::NotAConcept);
        }
        self.valuation.insert(name.to_string(), c);
        Ok(self)
    }

    pub fn object(&self, name: &str) -> Result<usize> {
        self.context
            .polarity()
            .object_index(name)
            .ok_or_else(|| Error::UnknownElement(name.to_string()))
    }

    pub fn attribute(&self, name: &str) -> Result<usize> {
        self.context
            .polarity()
            .attribute_index(name)
            .ok_or_else(|| Error::UnknownElement(name.to_string()))
    }

    pub fn top(&self) -> Concept {
        self.context
            .polarity()
            .concept_of_extent(self.context.polarity().all_objects())
    }

    pub fn bottom(&self) -> Concept {
        self.context
            .polarity()
            .concept_of_intent(self.context.polarity().all_attributes())
    }

    pub fn lattice(&self) -> Result<ConceptLattice> {
        ConceptLattice::new(self.context.polarity())
    }

    fn stage_bound(&self) -> usize {
        self.context.polarity().n_objects() + 2
    }

    /// Compositional evaluation under `env`.
    pub fn evaluate(&self, f: &Formula, env: &Environment) -> Result<Concept> {
        let p = self.context.polarity();
        Ok(match f {
            Formula::Top => self.top(),
            Formula::Bot => self.bottom(),
            Formula::Atom(name) => *self
                .valuation
                .get(name)
                .ok_or_else(|| Error::UnboundAtom(name.clone()))?,
            Formula::Var(name, _) => *env
                .get(name)
                .ok_or_else(|| Error::UnboundVariable(name.clone()))?,
            Formula::And(l, r) => {
                let (a, b) = (self.evaluate(l, env)?, self.evaluate(r, env)?);
                p.concept_of_extent(a.extent.intersection(b.extent))
            }
            Formula::Or(l, r) => {
                let (a, b) = (self.evaluate(l, env)?, self.evaluate(r, env)?);
                p.concept_of_intent(a.intent.intersection(b.intent))
            }
            Formula::Box(b) => self.context.box_unchecked(&self.evaluate(b, env)?),
            Formula::Dia(b) => self.context.dia_unchecked(&self.evaluate(b, env)?),
            Formula::Nu(x, body) => {
                let step = |c: &Concept| {
                    let mut inner = env.clone();
                    inner.insert(x.clone(), *c);
                    self.evaluate(body, &inner)
                };
                iterate(self.top(), step, false, self.stage_bound())?
            }
            Formula::Mu(y, body) => {
                let step = |c: &Concept| {
                    let mut inner = env.clone();
                    inner.insert(y.clone(), *c);
                    self.evaluate(body, &inner)
                };
                iterate(self.bottom(), step, true, self.stage_bound())?
            }
        })
    }

    /// Evaluates a closed formula; free variables are an error.
    pub fn evaluate_closed(&self, f: &Formula) -> Result<Concept> {
        let free = f.free_vars();
        if !free.is_empty() {
            return Err(Error::FreeVariables(free.into_iter().collect()));
        }
        self.evaluate(f, &Environment::new())
    }

    /// The map `c ↦ ⟦f⟧[var ↦ c]`.
    pub fn formula_map<'a>(
        &'a self,
        f: &'a Formula,
        var: &'a str,
    ) -> impl Fn(&Concept) -> Result<Concept> + 'a {
        move |c| {
            let mut env = Environment::new();
            env.insert(var.to_string(), *c);
            self.evaluate(f, &env)
        }
    }

    /// `g ⊩ f`.
    pub fn forces(&self, g: usize, f: &Formula) -> Result<bool> {
        self.check_object(g)?;
        Ok(self.evaluate_closed(f)?.extent.contains(g))
    }

    /// `m ≻ f`.
    pub fn coforces(&self, m: usize, f: &Formula) -> Result<bool> {
        self.check_attribute(m)?;
        Ok(self.evaluate_closed(f)?.intent.contains(m))
    }

    /// `M ⊨ f ⊢ g`.
    pub fn entails(&self, f: &Formula, g: &Formula) -> Result<bool> {
        let (a, b) = (self.evaluate_closed(f)?, self.evaluate_closed(g)?);
        Ok(a.extent.is_subset(b.extent))
    }

    fn check_object(&self, g: usize) -> Result<()> {
        if g < self.context.polarity().n_objects() {
            Ok(())
        } else {
            Err(Error::UnknownElement(format!("object #{g}")))
        }
    }

    fn check_attribute(&self, m: usize) -> Result<()> {
        if m < self.context.polarity().n_attributes() {
            Ok(())
        } else {
            Err(Error::UnknownElement(format!("attribute #{m}")))
        }
    }
}

// Kleene iteration from an extremal element. Each step must move in one
// direction; a step against it, or more steps than the longest chain allows,
// means the map is not monotone.
fn iterate(
    start: Concept,
    step: impl Fn(&Concept) -> Result<Concept>,
    increasing: bool,
    bound: usize,
) -> Result<Concept> {
    let mut cur = start;
    for _ in 0..=bound {
        let next = step(&cur)?;
        if next == cur {
            return Ok(cur);
        }
        let ordered = if increasing {
            cur.leq(&next)
        } else {
            next.leq(&cur)
        };
        if !ordered {
            return Err(Error::NonMonotone(
                "fixed-point iteration left its chain".to_string(),
            ));
        }
        cur = next;
    }
    Err(Error::NonMonotone(format!(
        "fixed-point iteration exceeded {bound} stages"
    )))
}

/// Least fixed point of a monotone map, iterating from the bottom.
pub fn lfp(lattice: &ConceptLattice, f: impl Fn(&Concept) -> Concept) -> Result<Concept> {
    iterate(lattice.bottom(), |c| Ok(f(c)), true, lattice.len() + 1)
}

/// Greatest fixed point of a monotone map, iterating from the top.
pub fn gfp(lattice: &ConceptLattice, f: impl Fn(&Concept) -> Concept) -> Result<Concept> {
    iterate(lattice.top(), |c| Ok(f(c)), false, lattice.len() + 1)
}
