//! Formulas of the lattice-based modal mu-calculus.
//!
//! The language is negation free:
//!
//! ```text
//! phi ::= p | x | top | bot | phi & phi | phi | phi | box phi | dia phi
//!       | nu x. phi | mu y. phi
//! ```
//!
//! Variables bound by `nu` and `mu` are distinguished by their [`VarKind`],
//! which is inferred from the binder rather than written in the surface syntax.

mod parse;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::error::{Error, Result};

pub use parse::parse;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum VarKind {
    /// Bound by a greatest fixed point.
    Nu,
    /// Bound by a least fixed point.
    Mu,
    /// Not bound by any enclosing binder.
    Free,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Binder {
    Nu,
    Mu,
}

impl Binder {
    pub fn var_kind(self) -> VarKind {
        match self {
            Binder::Nu => VarKind::Nu,
            Binder::Mu => VarKind::Mu,
        }
    }

    pub fn keyword(self) -> &'static str {
        match self {
            Binder::Nu => "nu",
            Binder::Mu => "mu",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Formula {
    Atom(String),
    Var(String, VarKind),
    Top,
    Bot,
    And(Box<Formula>, Box<Formula>),
    Or(Box<Formula>, Box<Formula>),
    Box(Box<Formula>),
    Dia(Box<Formula>),
    Nu(String, Box<Formula>),
    Mu(String, Box<Formula>),
}

// Constructors, mostly for tests and generators.
impl Formula {
    pub fn atom(name: &str) -> Formula {
        Formula::Atom(name.to_string())
    }

    pub fn var(name: &str, kind: VarKind) -> Formula {
        Formula::Var(name.to_string(), kind)
    }

    pub fn and(lhs: Formula, rhs: Formula) -> Formula {
        Formula::And(Box::new(lhs), Box::new(rhs))
    }

    pub fn or(lhs: Formula, rhs: Formula) -> Formula {
        Formula::Or(Box::new(lhs), Box::new(rhs))
    }

    pub fn boxed(body: Formula) -> Formula {
        Formula::Box(Box::new(body))
    }

    pub fn dia(body: Formula) -> Formula {
        Formula::Dia(Box::new(body))
    }

    pub fn nu(var: &str, body: Formula) -> Formula {
        Formula::Nu(var.to_string(), Box::new(body))
    }

    pub fn mu(var: &str, body: Formula) -> Formula {
        Formula::Mu(var.to_string(), Box::new(body))
    }

    pub fn binder(binder: Binder, var: &str, body: Formula) -> Formula {
        match binder {
            Binder::Nu => Formula::nu(var, body),
            Binder::Mu => Formula::mu(var, body),
        }
    }
}

impl Formula {
    /// Binder kind, bound name and body if this node is a fixed-point binder.
    pub fn as_binder(&self) -> Option<(Binder, &str, &Formula)> {
        match self {
            Formula::Nu(x, body) => Some((Binder::Nu, x, body)),
            Formula::Mu(y, body) => Some((Binder::Mu, y, body)),
            _ => None,
        }
    }

    pub fn children(&self) -> Vec<&Formula> {
        match self {
            Formula::Atom(_) | Formula::Var(..) | Formula::Top | Formula::Bot => vec![],
            Formula::And(l, r) | Formula::Or(l, r) => vec![l, r],
            Formula::Box(b) | Formula::Dia(b) | Formula::Nu(_, b) | Formula::Mu(_, b) => vec![b],
        }
    }

    /// Number of AST nodes.
    pub fn size(&self) -> usize {
        1 + self
            .children()
            .into_iter()
            .map(Formula::size)
            .sum::<usize>()
    }

    pub fn depth(&self) -> usize {
        1 + self
            .children()
            .into_iter()
            .map(Formula::depth)
            .max()
            .unwrap_or(0)
    }

    pub fn atoms(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.visit(&mut |f| {
            if let Formula::Atom(p) = f {
                out.insert(p.clone());
            }
        });
        out
    }

    /// Variables occurring free, i.e. not bound by a binder inside `self`.
    /// Occurrences tagged `Nu`/`Mu` whose binder lies outside count as free.
    pub fn free_vars(&self) -> BTreeSet<String> {
        fn go(f: &Formula, bound: &mut Vec<String>, out: &mut BTreeSet<String>) {
            match f {
                Formula::Var(x, _) => {
                    if !bound.iter().any(|b| b == x) {
                        out.insert(x.clone());
                    }
                }
                Formula::Nu(x, body) | Formula::Mu(x, body) => {
                    bound.push(x.clone());
                    go(body, bound, out);
                    bound.pop();
                }
                _ => {
                    for c in f.children() {
                        go(c, bound, out);
                    }
                }
            }
        }
        let mut out = BTreeSet::new();
        go(self, &mut Vec::new(), &mut out);
        out
    }

    pub fn is_closed(&self) -> bool {
        self.free_vars().is_empty()
    }

    /// Bound variable names in binder pre-order (duplicates kept).
    pub fn bound_vars(&self) -> Vec<String> {
        let mut out = Vec::new();
        self.visit(&mut |f| {
            if let Some((_, x, _)) = f.as_binder() {
                out.push(x.to_string());
            }
        });
        out
    }

    pub fn binder_count(&self) -> usize {
        self.bound_vars().len()
    }

    /// Pre-order traversal.
    pub fn visit<'a>(&'a self, visitor: &mut impl FnMut(&'a Formula)) {
        visitor(self);
        for c in self.children() {
            c.visit(visitor);
        }
    }

    /// Turns every atom named `name` into a free variable occurrence, so the
    /// formula can be read as a map in that variable.
    pub fn open_var(&self, name: &str) -> Formula {
        self.map_leaves(&|f| match f {
            Formula::Atom(p) if p == name => Some(Formula::var(name, VarKind::Free)),
            _ => None,
        })
    }

    fn map_leaves(&self, leaf: &impl Fn(&Formula) -> Option<Formula>) -> Formula {
        if let Some(out) = leaf(self) {
            return out;
        }
        match self {
            Formula::Atom(_) | Formula::Var(..) | Formula::Top | Formula::Bot => self.clone(),
            Formula::And(l, r) => Formula::and(l.map_leaves(leaf), r.map_leaves(leaf)),
            Formula::Or(l, r) => Formula::or(l.map_leaves(leaf), r.map_leaves(leaf)),
            Formula::Box(b) => Formula::boxed(b.map_leaves(leaf)),
            Formula::Dia(b) => Formula::dia(b.map_leaves(leaf)),
            Formula::Nu(x, b) => Formula::nu(x, b.map_leaves(leaf)),
            Formula::Mu(y, b) => Formula::mu(y, b.map_leaves(leaf)),
        }
    }

    /// True when every bound name is bound exactly once and no bound name
    /// also occurs free (as a variable or an atom).
    pub fn is_hygienic(&self) -> bool {
        let bound = self.bound_vars();
        let unique: BTreeSet<_> = bound.iter().collect();
        if unique.len() != bound.len() {
            return false;
        }
        let free = self.free_names();
        bound.iter().all(|b| !free.contains(b))
    }

    fn free_names(&self) -> BTreeSet<String> {
        let mut names = self.free_vars();
        names.extend(self.atoms());
        names
    }

    /// Alpha-renames bound variables so that each binder has a unique name
    /// distinct from every free name. Clashing names get the smallest `_k`
    /// suffix not yet in use; names are assigned in binder pre-order.
    pub fn rename_apart(&self) -> Formula {
        fn go(
            f: &Formula,
            scope: &mut Vec<(String, String)>,
            used: &mut BTreeSet<String>,
        ) -> Formula {
            match f {
                Formula::Var(x, kind) => match scope.iter().rev().find(|(old, _)| old == x) {
                    Some((_, new)) => Formula::Var(new.clone(), *kind),
                    None => f.clone(),
                },
                Formula::Nu(x, body) | Formula::Mu(x, body) => {
                    let fresh = if used.contains(x) {
                        (1..)
                            .map(|k| format!("{x}_{k}"))
                            .find(|cand| !used.contains(cand))
                            .expect("unbounded suffix search")
                    } else {
                        x.clone()
                    };
                    used.insert(fresh.clone());
                    scope.push((x.clone(), fresh.clone()));
                    let body = go(body, scope, used);
                    scope.pop();
                    match f {
                        Formula::Nu(..) => Formula::Nu(fresh, Box::new(body)),
                        _ => Formula::Mu(fresh, Box::new(body)),
                    }
                }
                Formula::Atom(_) | Formula::Top | Formula::Bot => f.clone(),
                Formula::And(l, r) => Formula::and(go(l, scope, used), go(r, scope, used)),
                Formula::Or(l, r) => Formula::or(go(l, scope, used), go(r, scope, used)),
                Formula::Box(b) => Formula::boxed(go(b, scope, used)),
                Formula::Dia(b) => Formula::dia(go(b, scope, used)),
            }
        }
        let mut used = self.free_names();
        go(self, &mut Vec::new(), &mut used)
    }

    /// The body of the unique binder of `z`.
    pub fn binder_body(&self, z: &str) -> Result<&Formula> {
        self.binder_of(z)
            .map(|(_, body)| body)
            .ok_or_else(|| Error::UnknownVariable(z.to_string()))
    }

    /// Binder kind and body for bound variable `z` (first in pre-order).
    pub fn binder_of(&self, z: &str) -> Option<(Binder, &Formula)> {
        let mut found = None;
        self.visit(&mut |f| {
            if found.is_none() {
                if let Some((b, x, body)) = f.as_binder() {
                    if x == z {
                        found = Some((b, body));
                    }
                }
            }
        });
        found
    }

    /// The dependency order on bound variables: `z1 <= z2` iff `z2` occurs
    /// freely in the body of `z1`'s binder. Expects a hygienic formula.
    pub fn dependency_order(&self) -> DependencyOrder {
        let mut vars = Vec::new();
        let mut kinds = BTreeMap::new();
        let mut leq = BTreeSet::new();
        self.visit(&mut |f| {
            if let Some((b, x, body)) = f.as_binder() {
                vars.push(x.to_string());
                kinds.insert(x.to_string(), b);
                leq.insert((x.to_string(), x.to_string()));
                for z in body.free_vars() {
                    leq.insert((x.to_string(), z));
                }
            }
        });
        let bound: BTreeSet<_> = vars.iter().cloned().collect();
        leq.retain(|(_, z)| bound.contains(z));
        DependencyOrder { vars, kinds, leq }
    }
}

/// The dependency order of a hygienic formula together with its binder kinds.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DependencyOrder {
    vars: Vec<String>,
    kinds: BTreeMap<String, Binder>,
    leq: BTreeSet<(String, String)>,
}

impl DependencyOrder {
    /// Bound variables in binder pre-order.
    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn kind(&self, z: &str) -> Option<Binder> {
        self.kinds.get(z).copied()
    }

    /// `z1 <= z2` (not transitively closed; the raw relation).
    pub fn leq(&self, z1: &str, z2: &str) -> bool {
        self.leq.contains(&(z1.to_string(), z2.to_string()))
    }

    pub fn pairs(&self) -> impl Iterator<Item = (&str, &str)> {
        self.leq.iter().map(|(a, b)| (a.as_str(), b.as_str()))
    }

    /// A linear extension of the order as ranks `1..=n`: inner (smaller)
    /// variables get lower ranks, ties broken lexicographically.
    pub fn ranks(&self) -> BTreeMap<String, usize> {
        let mut ranks = BTreeMap::new();
        let mut remaining: BTreeSet<&str> = self.vars.iter().map(String::as_str).collect();
        let mut next = 1;
        while !remaining.is_empty() {
            // minimal: no other remaining w with w <= z
            let pick = remaining
                .iter()
                .copied()
                .find(|&z| !remaining.iter().any(|&w| w != z && self.leq(w, z)))
                .expect("dependency order is acyclic on hygienic formulas");
            remaining.remove(pick);
            ranks.insert(pick.to_string(), next);
            next += 1;
        }
        ranks
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_prec(self, 0, f)
    }
}

// Precedence levels: 0 = binder context (anything goes), 1 = `|`, 2 = `&`,
// 3 = operand of a modal operator.
fn write_prec(phi: &Formula, ctx: u8, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    match phi {
        Formula::Atom(p) | Formula::Var(p, _) => write!(f, "{p}"),
        Formula::Top => write!(f, "top"),
        Formula::Bot => write!(f, "bot"),
        Formula::Or(l, r) => paren(ctx > 1, f, |f| {
            write_prec(l, 1, f)?;
            write!(f, " | ")?;
            write_prec(r, 2, f)
        }),
        Formula::And(l, r) => paren(ctx > 2, f, |f| {
            write_prec(l, 2, f)?;
            write!(f, " & ")?;
            write_prec(r, 3, f)
        }),
        Formula::Box(b) => {
            write!(f, "box ")?;
            write_prec(b, 3, f)
        }
        Formula::Dia(b) => {
            write!(f, "dia ")?;
            write_prec(b, 3, f)
        }
        Formula::Nu(x, b) | Formula::Mu(x, b) => paren(ctx > 0, f, |f| {
            let kw = if matches!(phi, Formula::Nu(..)) {
                "nu"
            } else {
                "mu"
            };
            write!(f, "{kw} {x}. ")?;
            write_prec(b, 0, f)
        }),
    }
}

fn paren(
    wrap: bool,
    f: &mut fmt::Formatter<'_>,
    inner: impl FnOnce(&mut fmt::Formatter<'_>) -> fmt::Result,
) -> fmt::Result {
    if wrap {
        write!(f, "(")?;
        inner(f)?;
        write!(f, ")")
    } else {
        inner(f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use VarKind::*;

    fn v(x: &str, k: VarKind) -> Formula {
        Formula::var(x, k)
    }

    #[test]
    fn rename_apart_examples() {
        let f = Formula::nu("x", Formula::and(v("x", Nu), Formula::mu("x", v("x", Mu))));
        let want = Formula::nu(
            "x",
            Formula::and(v("x", Nu), Formula::mu("x_1", v("x_1", Mu))),
        );
        assert_eq!(f.rename_apart(), want);

        let f = Formula::or(v("x", Free), Formula::nu("x", v("x", Nu)));
        let want = Formula::or(v("x", Free), Formula::nu("x_1", v("x_1", Nu)));
        assert_eq!(f.rename_apart(), want);
        assert!(want.is_hygienic());

        let hyg = parse("nu x. (box x & q)").unwrap();
        assert_eq!(hyg.rename_apart(), hyg);
    }

    #[test]
    fn rename_apart_skips_taken_suffixes() {
        let f = Formula::and(
            Formula::nu("x", v("x", Nu)),
            Formula::and(Formula::nu("x", v("x", Nu)), Formula::atom("x_1")),
        );
        let r = f.rename_apart();
        assert!(r.is_hygienic());
        assert_eq!(r.bound_vars(), vec!["x".to_string(), "x_2".to_string()]);
    }

    #[test]
    fn dependency_order_examples() {
        let d = parse("nu x. (box x & q)").unwrap().dependency_order();
        assert_eq!(d.pairs().collect::<Vec<_>>(), vec![("x", "x")]);

        let d = parse("nu x. mu y. (x & y)").unwrap().dependency_order();
        assert!(d.leq("y", "x"));
        assert!(!d.leq("x", "y"));
        assert_eq!(d.ranks()["y"], 1);
        assert_eq!(d.ranks()["x"], 2);

        let d = parse("mu y. nu x. (box x | y)").unwrap().dependency_order();
        assert!(d.leq("x", "y"));
        assert!(!d.leq("y", "x"));
    }

    #[test]
    fn binder_body_examples() {
        let f = parse("nu x. (box x & q)").unwrap();
        assert_eq!(f.binder_body("x").unwrap().to_string(), "box x & q");
        let f = parse("mu y. y").unwrap();
        assert_eq!(f.binder_body("y").unwrap(), &v("y", Mu));
        let f = parse("nu x. mu y. (x & y)").unwrap();
        assert_eq!(
            f.binder_body("y").unwrap(),
            &Formula::and(v("x", Nu), v("y", Mu))
        );
        assert!(matches!(f.binder_body("z"), Err(Error::UnknownVariable(_))));
    }

    #[test]
    fn printer_parenthesizes_binders() {
        let f = Formula::or(
            Formula::and(Formula::atom("a"), Formula::nu("x", Formula::atom("b"))),
            Formula::atom("c"),
        );
        assert_eq!(f.to_string(), "a & (nu x. b) | c");
        assert_eq!(parse(&f.to_string()).unwrap(), f);
    }

    #[test]
    fn open_var_turns_atom_into_free_var() {
        let f = parse("box v & q").unwrap().open_var("v");
        assert_eq!(f.free_vars().into_iter().collect::<Vec<_>>(), vec!["v"]);
        assert_eq!(f.atoms().into_iter().collect::<Vec<_>>(), vec!["q"]);
    }
}
