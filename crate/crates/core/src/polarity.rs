//! Formal contexts, their Galois connection, concept lattices, and enriched
//! contexts carrying the two modal relations.

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use crate::bits::{BitSet, MAX_ELEMS};
use crate::error::{Error, Result};

/// Default bound on `|G|` and `|M|` for concept lattice construction.
pub const DEFAULT_CONTEXT_BOUND: usize = 20;

/// A boolean matrix `R ⊆ rows × cols`, stored row-wise.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Relation {
    rows: Vec<BitSet>,
    ncols: usize,
}

impl Relation {
    pub fn empty(nrows: usize, ncols: usize) -> Relation {
        Relation {
            rows: vec![BitSet::EMPTY; nrows],
            ncols,
        }
    }

    pub fn full(nrows: usize, ncols: usize) -> Relation {
        Relation {
            rows: vec![BitSet::full(ncols); nrows],
            ncols,
        }
    }

    pub fn from_pairs(
        nrows: usize,
        ncols: usize,
        pairs: impl IntoIterator<Item = (usize, usize)>,
    ) -> Relation {
        let mut r = Relation::empty(nrows, ncols);
        for (i, j) in pairs {
            r.insert(i, j);
        }
        r
    }

    pub fn from_rows(rows: Vec<BitSet>, ncols: usize) -> Relation {
        Relation { rows, ncols }
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn contains(&self, i: usize, j: usize) -> bool {
        self.rows[i].contains(j)
    }

    pub fn insert(&mut self, i: usize, j: usize) {
        assert!(i < self.nrows() && j < self.ncols, "pair out of range");
        self.rows[i].insert(j);
    }

    pub fn remove(&mut self, i: usize, j: usize) {
        self.rows[i].remove(j);
    }

    pub fn row(&self, i: usize) -> BitSet {
        self.rows[i]
    }

    pub fn col(&self, j: usize) -> BitSet {
        (0..self.nrows()).filter(|&i| self.contains(i, j)).collect()
    }

    pub fn pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.rows
            .iter()
            .enumerate()
            .flat_map(|(i, r)| r.iter().map(move |j| (i, j)))
    }

    pub fn len(&self) -> usize {
        self.rows.iter().map(|r| r.len()).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.iter().all(|r| r.is_empty())
    }

    pub fn complement(&self) -> Relation {
        let full = BitSet::full(self.ncols);
        Relation {
            rows: self.rows.iter().map(|r| full.difference(*r)).collect(),
            ncols: self.ncols,
        }
    }

    pub fn transpose(&self) -> Relation {
        Relation {
            rows: (0..self.ncols).map(|j| self.col(j)).collect(),
            ncols: self.nrows(),
        }
    }

    pub fn is_subset(&self, other: &Relation) -> bool {
        self.rows.len() == other.rows.len()
            && self
                .rows
                .iter()
                .zip(&other.rows)
                .all(|(a, b)| a.is_subset(*b))
    }

    /// `R^(0)[N] = { i : N ⊆ row(i) }`.
    pub fn image0(&self, cols: BitSet) -> BitSet {
        self.rows
            .iter()
            .enumerate()
            .filter(|(_, r)| cols.is_subset(**r))
            .map(|(i, _)| i)
            .collect()
    }

    /// `R^(1)[H] = { j : H × {j} ⊆ R }`.
    pub fn image1(&self, rows: BitSet) -> BitSet {
        rows.iter().fold(BitSet::full(self.ncols), |acc, i| {
            acc.intersection(self.rows[i])
        })
    }
}

impl fmt::Debug for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.pairs()).finish()
    }
}

/// A finite formal context `(G, M, I)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Polarity {
    objects: Vec<String>,
    attributes: Vec<String>,
    incidence: Relation,
}

impl Polarity {
    pub fn new(
        objects: Vec<String>,
        attributes: Vec<String>,
        incidence: Relation,
    ) -> Result<Polarity> {
        if objects.is_empty() {
            return Err(Error::EmptyCarrier("object"));
        }
        if attributes.is_empty() {
            return Err(Error::EmptyCarrier("attribute"));
        }
        for (what, n) in [
            ("object set", objects.len()),
            ("attribute set", attributes.len()),
        ] {
            if n > MAX_ELEMS {
                return Err(Error::SizeBound {
                    what,
                    limit: MAX_ELEMS,
                    actual: n,
                });
            }
        }
        assert_eq!(incidence.nrows(), objects.len(), "incidence rows");
        assert_eq!(incidence.ncols(), attributes.len(), "incidence cols");
        Ok(Polarity {
            objects,
            attributes,
            incidence,
        })
    }

    /// Context with generated names `g1..` and `m1..`.
    pub fn anonymous(incidence: Relation) -> Result<Polarity> {
        let objects = (1..=incidence.nrows()).map(|i| format!("g{i}")).collect();
        let attributes = (1..=incidence.ncols()).map(|i| format!("m{i}")).collect();
        Polarity::new(objects, attributes, incidence)
    }

    pub fn objects(&self) -> &[String] {
        &self.objects
    }

    pub fn attributes(&self) -> &[String] {
        &self.attributes
    }

    pub fn incidence(&self) -> &Relation {
        &self.incidence
    }

    pub fn n_objects(&self) -> usize {
        self.objects.len()
    }

    pub fn n_attributes(&self) -> usize {
        self.attributes.len()
    }

    pub fn all_objects(&self) -> BitSet {
        BitSet::full(self.objects.len())
    }

    pub fn all_attributes(&self) -> BitSet {
        BitSet::full(self.attributes.len())
    }

    pub fn object_index(&self, name: &str) -> Option<usize> {
        self.objects.iter().position(|g| g == name)
    }

    pub fn attribute_index(&self, name: &str) -> Option<usize> {
        self.attributes.iter().position(|m| m == name)
    }

    fn check_objects(&self, b: BitSet) -> Result<()> {
        if b.is_subset(self.all_objects()) {
            Ok(())
        } else {
            Err(Error::UnknownElement(format!(
                "object index {:?}",
                b.difference(self.all_objects())
            )))
        }
    }

    fn check_attributes(&self, y: BitSet) -> Result<()> {
        if y.is_subset(self.all_attributes()) {
            Ok(())
        } else {
            Err(Error::UnknownElement(format!(
                "attribute index {:?}",
                y.difference(self.all_attributes())
            )))
        }
    }

    /// `B↑`: attributes shared by every object in `b`.
    pub fn up(&self, b: BitSet) -> Result<BitSet> {
        self.check_objects(b)?;
        Ok(self.up_unchecked(b))
    }

    /// `Y↓`: objects having every attribute in `y`.
    pub fn down(&self, y: BitSet) -> Result<BitSet> {
        self.check_attributes(y)?;
        Ok(self.down_unchecked(y))
    }

    pub(crate) fn up_unchecked(&self, b: BitSet) -> BitSet {
        self.incidence.image1(b)
    }

    pub(crate) fn down_unchecked(&self, y: BitSet) -> BitSet {
        self.incidence.image0(y)
    }

    /// `B↑↓`.
    pub fn closure_extent(&self, b: BitSet) -> Result<BitSet> {
        self.check_objects(b)?;
        Ok(self.down_unchecked(self.up_unchecked(b)))
    }

    /// `Y↓↑`.
    pub fn closure_intent(&self, y: BitSet) -> Result<BitSet> {
        self.check_attributes(y)?;
        Ok(self.up_unchecked(self.down_unchecked(y)))
    }

    /// The concept generated by an object set: `(B↑↓, B↑)`.
    pub fn concept_of_extent(&self, b: BitSet) -> Concept {
        let intent = self.up_unchecked(b);
        Concept {
            extent: self.down_unchecked(intent),
            intent,
        }
    }

    /// The concept generated by an attribute set: `(Y↓, Y↓↑)`.
    pub fn concept_of_intent(&self, y: BitSet) -> Concept {
        let extent = self.down_unchecked(y);
        Concept {
            extent,
            intent: self.up_unchecked(extent),
        }
    }

    pub fn is_concept(&self, c: &Concept) -> bool {
        c.extent.is_subset(self.all_objects())
            && c.intent.is_subset(self.all_attributes())
            && self.up_unchecked(c.extent) == c.intent
            && self.down_unchecked(c.intent) == c.extent
    }

    pub fn object_names(&self, b: BitSet) -> Vec<&str> {
        b.iter().map(|i| self.objects[i].as_str()).collect()
    }

    pub fn attribute_names(&self, y: BitSet) -> Vec<&str> {
        y.iter().map(|i| self.attributes[i].as_str()).collect()
    }

    /// Renders a concept as `({g1}, {m1, m2})`.
    pub fn show(&self, c: &Concept) -> String {
        format!(
            "({{{}}}, {{{}}})",
            self.object_names(c.extent).join(", "),
            self.attribute_names(c.intent).join(", ")
        )
    }
}

/// The context `(S, S, ≠)`, whose concept lattice is the power set of `S`.
pub fn powerset_polarity(names: &[&str]) -> Result<Polarity> {
    if names.is_empty() {
        return Err(Error::EmptyCarrier("power-set base"));
    }
    let n = names.len();
    let neq = Relation::from_pairs(
        n,
        n,
        (0..n).flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j))),
    );
    let owned: Vec<String> = names.iter().map(|s| s.to_string()).collect();
    Polarity::new(owned.clone(), owned, neq)
}

/// A formal concept: a Galois-stable (extent, intent) pair.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Concept {
    pub extent: BitSet,
    pub intent: BitSet,
}

impl Concept {
    pub fn leq(&self, other: &Concept) -> bool {
        self.extent.is_subset(other.extent)
    }
}

/// All concepts of a finite context, ordered by extent inclusion.
#[derive(Clone, Debug)]
pub struct ConceptLattice {
    polarity: Polarity,
    concepts: Vec<Concept>,
    index: HashMap<BitSet, usize>,
}

impl ConceptLattice {
    pub fn new(polarity: &Polarity) -> Result<ConceptLattice> {
        ConceptLattice::with_bound(polarity, DEFAULT_CONTEXT_BOUND)
    }

    /// Enumerates concepts by closing the attribute extents under
    /// intersection. Fails if either carrier exceeds `bound`.
    pub fn with_bound(polarity: &Polarity, bound: usize) -> Result<ConceptLattice> {
        for (what, n) in [
            ("object set", polarity.n_objects()),
            ("attribute set", polarity.n_attributes()),
        ] {
            if n > bound {
                return Err(Error::SizeBound {
                    what,
                    limit: bound,
                    actual: n,
                });
            }
        }
        let mut extents: BTreeSet<BitSet> = BTreeSet::new();
        extents.insert(polarity.all_objects());
        for m in 0..polarity.n_attributes() {
            let col = polarity.incidence().col(m);
            let fresh: Vec<BitSet> = extents.iter().map(|e| e.intersection(col)).collect();
            extents.extend(fresh);
        }
        let mut concepts: Vec<Concept> = extents
            .into_iter()
            .map(|extent| Concept {
                extent,
                intent: polarity.up_unchecked(extent),
            })
            .collect();
        concepts.sort_by_key(|c| (c.extent.len(), c.extent));
        let index = concepts
            .iter()
            .enumerate()
            .map(|(i, c)| (c.extent, i))
            .collect();
        Ok(ConceptLattice {
            polarity: polarity.clone(),
            concepts,
            index,
        })
    }

    pub fn polarity(&self) -> &Polarity {
        &self.polarity
    }

    /// Concepts sorted by extent size, bottom first and top last.
    pub fn concepts(&self) -> &[Concept] {
        &self.concepts
    }

    pub fn len(&self) -> usize {
        self.concepts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.concepts.is_empty()
    }

    pub fn get(&self, i: usize) -> Concept {
        self.concepts[i]
    }

    pub fn index_of(&self, c: &Concept) -> Option<usize> {
        self.index
            .get(&c.extent)
            .copied()
            .filter(|&i| self.concepts[i].intent == c.intent)
    }

    pub fn contains(&self, c: &Concept) -> bool {
        self.index_of(c).is_some()
    }

    pub fn top(&self) -> Concept {
        *self.concepts.last().expect("lattice is never empty")
    }

    pub fn bottom(&self) -> Concept {
        self.concepts[0]
    }

    pub fn join(&self, a: &Concept, b: &Concept) -> Concept {
        self.polarity
            .concept_of_intent(a.intent.intersection(b.intent))
    }

    pub fn meet(&self, a: &Concept, b: &Concept) -> Concept {
        self.polarity
            .concept_of_extent(a.extent.intersection(b.extent))
    }

    pub fn join_all<'a>(&self, cs: impl IntoIterator<Item = &'a Concept>) -> Concept {
        let intent = cs
            .into_iter()
            .fold(self.polarity.all_attributes(), |acc, c| {
                acc.intersection(c.intent)
            });
        self.polarity.concept_of_intent(intent)
    }

    pub fn meet_all<'a>(&self, cs: impl IntoIterator<Item = &'a Concept>) -> Concept {
        let extent = cs.into_iter().fold(self.polarity.all_objects(), |acc, c| {
            acc.intersection(c.extent)
        });
        self.polarity.concept_of_extent(extent)
    }

    /// The object concept `(g↑↓, g↑)`.
    pub fn object_concept(&self, g: usize) -> Concept {
        self.polarity.concept_of_extent(BitSet::singleton(g))
    }

    /// The attribute concept `(m↓, m↓↑)`.
    pub fn attribute_concept(&self, m: usize) -> Concept {
        self.polarity.concept_of_intent(BitSet::singleton(m))
    }

    /// Distinct object concepts, in lattice order of first appearance.
    pub fn object_concepts(&self) -> Vec<Concept> {
        let set: BTreeSet<usize> = (0..self.polarity.n_objects())
            .map(|g| {
                self.index_of(&self.object_concept(g))
                    .expect("object concept")
            })
            .collect();
        set.into_iter().map(|i| self.concepts[i]).collect()
    }

    /// Distinct attribute concepts, in lattice order of first appearance.
    pub fn attribute_concepts(&self) -> Vec<Concept> {
        let set: BTreeSet<usize> = (0..self.polarity.n_attributes())
            .map(|m| {
                self.index_of(&self.attribute_concept(m))
                    .expect("attribute concept")
            })
            .collect();
        set.into_iter().map(|i| self.concepts[i]).collect()
    }

    pub fn show(&self, c: &Concept) -> String {
        self.polarity.show(c)
    }
}

/// Which of the four sections of the modal relations failed to be stable.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CompatSet {
    /// `R_□^(0)[m]`, an object set.
    BoxObjects { attribute: String },
    /// `R_□^(1)[g]`, an attribute set.
    BoxAttributes { object: String },
    /// `R_◇^(0)[g]`, an attribute set.
    DiaAttributes { object: String },
    /// `R_◇^(1)[m]`, an object set.
    DiaObjects { attribute: String },
}

/// A non-stable section, with an element its closure adds.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CompatViolation {
    pub set: CompatSet,
    pub members: Vec<String>,
    pub witness: String,
}

impl fmt::Display for CompatViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match &self.set {
            CompatSet::BoxObjects { attribute } => format!("Rbox^(0)[{attribute}]"),
            CompatSet::BoxAttributes { object } => format!("Rbox^(1)[{object}]"),
            CompatSet::DiaAttributes { object } => format!("Rdia^(0)[{object}]"),
            CompatSet::DiaObjects { attribute } => format!("Rdia^(1)[{attribute}]"),
        };
        write!(
            f,
            "{name} = {{{}}} is not Galois-stable: its closure adds {}",
            self.members.join(", "),
            self.witness
        )
    }
}

/// A polarity with `R_□ ⊆ G × M` and `R_◇ ⊆ M × G`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EnrichedContext {
    polarity: Polarity,
    rbox: Relation,
    rdia: Relation,
}

impl EnrichedContext {
    /// Builds the context without checking I-compatibility; see
    /// [`EnrichedContext::check_compatible`].
    pub fn new(polarity: Polarity, rbox: Relation, rdia: Relation) -> EnrichedContext {
        assert_eq!(
            (rbox.nrows(), rbox.ncols()),
            (polarity.n_objects(), polarity.n_attributes()),
            "Rbox shape"
        );
        assert_eq!(
            (rdia.nrows(), rdia.ncols()),
            (polarity.n_attributes(), polarity.n_objects()),
            "Rdia shape"
        );
        EnrichedContext {
            polarity,
            rbox,
            rdia,
        }
    }

    pub fn polarity(&self) -> &Polarity {
        &self.polarity
    }

    pub fn rbox(&self) -> &Relation {
        &self.rbox
    }

    pub fn rdia(&self) -> &Relation {
        &self.rdia
    }

    pub fn check_compatible(&self) -> Vec<CompatViolation> {
        let p = &self.polarity;
        let mut out = Vec::new();
        let object_set = |set: CompatSet, b: BitSet, out: &mut Vec<CompatViolation>| {
            let closed = p.down_unchecked(p.up_unchecked(b));
            if closed != b {
                let w = closed
                    .difference(b)
                    .iter()
                    .next()
                    .expect("closure is extensive");
                out.push(CompatViolation {
                    set,
                    members: p.object_names(b).into_iter().map(String::from).collect(),
                    witness: p.objects()[w].clone(),
                });
            }
        };
        for m in 0..p.n_attributes() {
            object_set(
                CompatSet::BoxObjects {
                    attribute: p.attributes()[m].clone(),
                },
                self.rbox.col(m),
                &mut out,
            );
            object_set(
                CompatSet::DiaObjects {
                    attribute: p.attributes()[m].clone(),
                },
                self.rdia.row(m),
                &mut out,
            );
        }
        let attribute_set = |set: CompatSet, y: BitSet, out: &mut Vec<CompatViolation>| {
            let closed = p.up_unchecked(p.down_unchecked(y));
            if closed != y {
                let w = closed
                    .difference(y)
                    .iter()
                    .next()
                    .expect("closure is extensive");
                out.push(CompatViolation {
                    set,
                    members: p.attribute_names(y).into_iter().map(String::from).collect(),
                    witness: p.attributes()[w].clone(),
                });
            }
        };
        for g in 0..p.n_objects() {
            attribute_set(
                CompatSet::BoxAttributes {
                    object: p.objects()[g].clone(),
                },
                self.rbox.row(g),
                &mut out,
            );
            attribute_set(
                CompatSet::DiaAttributes {
                    object: p.objects()[g].clone(),
                },
                self.rdia.col(g),
                &mut out,
            );
        }
        out
    }

    pub fn is_compatible(&self) -> bool {
        self.check_compatible().is_empty()
    }

    fn ensure_concept(&self, c: &Concept) -> Result<()> {
        if self.polarity.is_concept(c) {
            Ok(())
        } else {
            Err(Error::NotAConcept)
        }
    }

    /// `[R_□] c = (R_□^(0)[intent c], ...↑)`.
    pub fn box_op(&self, c: &Concept) -> Result<Concept> {
        self.ensure_concept(c)?;
        Ok(self.box_unchecked(c))
    }

    /// `⟨R_◇⟩ c = (...↓, R_◇^(0)[extent c])`.
    pub fn dia_op(&self, c: &Concept) -> Result<Concept> {
        self.ensure_concept(c)?;
        Ok(self.dia_unchecked(c))
    }

    pub(crate) fn box_unchecked(&self, c: &Concept) -> Concept {
        let extent = self.rbox.image0(c.intent);
        Concept {
            extent,
            intent: self.polarity.up_unchecked(extent),
        }
    }

    pub(crate) fn dia_unchecked(&self, c: &Concept) -> Concept {
        // R_◇ ⊆ M × G, so R_◇^(0)[B] = { m : ∀g ∈ B. m R_◇ g } is the row test.
        let intent = self.rdia.image0(c.extent);
        Concept {
            extent: self.polarity.down_unchecked(intent),
            intent,
        }
    }
}

/// Smallest relation containing `r ⊆ G × M` whose columns are stable object
/// sets and whose rows are stable attribute sets (an `R_□`-compatible one).
pub fn close_box_relation(p: &Polarity, r: &Relation) -> Relation {
    let mut cur = r.clone();
    loop {
        let mut next = cur.clone();
        for m in 0..p.n_attributes() {
            for g in p.down_unchecked(p.up_unchecked(next.col(m))) {
                next.insert(g, m);
            }
        }
        for g in 0..p.n_objects() {
            for m in p.up_unchecked(p.down_unchecked(next.row(g))) {
                next.insert(g, m);
            }
        }
        if next == cur {
            return cur;
        }
        cur = next;
    }
}

/// Smallest relation containing `r ⊆ M × G` that is `R_◇`-compatible.
pub fn close_dia_relation(p: &Polarity, r: &Relation) -> Relation {
    let mut cur = r.clone();
    loop {
        let mut next = cur.clone();
        for g in 0..p.n_objects() {
            for m in p.up_unchecked(p.down_unchecked(next.col(g))) {
                next.insert(m, g);
            }
        }
        for m in 0..p.n_attributes() {
            for g in p.down_unchecked(p.up_unchecked(next.row(m))) {
                next.insert(m, g);
            }
        }
        if next == cur {
            return cur;
        }
        cur = next;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn e1() -> Polarity {
        Polarity::anonymous(Relation::from_pairs(2, 3, [(0, 0), (0, 1), (1, 2)])).unwrap()
    }

    fn set(xs: &[usize]) -> BitSet {
        xs.iter().copied().collect()
    }

    #[test]
    fn galois_maps_on_e1() {
        let p = e1();
        assert_eq!(p.up(set(&[0])).unwrap(), set(&[0, 1]));
        assert_eq!(p.up(BitSet::EMPTY).unwrap(), p.all_attributes());
        assert_eq!(p.down(set(&[0, 1])).unwrap(), set(&[0]));
        assert!(p.up(set(&[5])).is_err());
        assert!(p.down(set(&[3])).is_err());
    }

    #[test]
    fn closure_examples() {
        let p = e1();
        assert_eq!(p.closure_extent(set(&[0])).unwrap(), set(&[0]));
        assert_eq!(p.closure_extent(BitSet::EMPTY).unwrap(), BitSet::EMPTY);
        assert_eq!(p.closure_extent(p.all_objects()).unwrap(), p.all_objects());
    }

    #[test]
    fn lattice_of_e1() {
        let l = ConceptLattice::new(&e1()).unwrap();
        let shown: Vec<String> = l.concepts().iter().map(|c| l.show(c)).collect();
        assert_eq!(
            shown,
            vec![
                "({}, {m1, m2, m3})",
                "({g1}, {m1, m2})",
                "({g2}, {m3})",
                "({g1, g2}, {})"
            ]
        );
        assert_eq!(l.bottom(), l.get(0));
        assert_eq!(l.top(), l.get(3));
    }

    #[test]
    fn full_incidence_has_one_concept() {
        let p = Polarity::anonymous(Relation::full(3, 2)).unwrap();
        let l = ConceptLattice::new(&p).unwrap();
        assert_eq!(l.len(), 1);
        assert_eq!(l.top(), l.bottom());
    }

    #[test]
    fn lattice_size_bound() {
        let p = Polarity::anonymous(Relation::empty(3, 3)).unwrap();
        assert!(matches!(
            ConceptLattice::with_bound(&p, 2),
            Err(Error::SizeBound {
                limit: 2,
                actual: 3,
                ..
            })
        ));
    }

    #[test]
    fn powerset_contexts() {
        let p = powerset_polarity(&["a"]).unwrap();
        let l = ConceptLattice::new(&p).unwrap();
        assert_eq!(l.len(), 2);
        assert_eq!(
            l.bottom(),
            Concept {
                extent: BitSet::EMPTY,
                intent: set(&[0])
            }
        );
        assert_eq!(
            l.top(),
            Concept {
                extent: set(&[0]),
                intent: BitSet::EMPTY
            }
        );
        for n in 1..=4 {
            let names: Vec<String> = (0..n).map(|i| format!("s{i}")).collect();
            let refs: Vec<&str> = names.iter().map(String::as_str).collect();
            let l = ConceptLattice::new(&powerset_polarity(&refs).unwrap()).unwrap();
            assert_eq!(l.len(), 1 << n);
            for c in l.concepts() {
                assert_eq!(c.intent, BitSet::full(n).difference(c.extent));
            }
        }
        assert!(matches!(
            powerset_polarity(&[]),
            Err(Error::EmptyCarrier(_))
        ));
    }

    #[test]
    fn compatibility_examples() {
        let p = e1();
        let ctx = EnrichedContext::new(p.clone(), p.incidence().clone(), Relation::empty(3, 2));
        assert!(ctx.check_compatible().is_empty());

        let ctx = EnrichedContext::new(p.clone(), Relation::full(2, 3), Relation::empty(3, 2));
        assert!(ctx.check_compatible().is_empty());

        let ctx = EnrichedContext::new(
            p.clone(),
            Relation::from_pairs(2, 3, [(0, 0)]),
            Relation::empty(3, 2),
        );
        let v = ctx.check_compatible();
        assert_eq!(v.len(), 1);
        assert_eq!(
            v[0].set,
            CompatSet::BoxAttributes {
                object: "g1".into()
            }
        );
        assert_eq!(v[0].members, vec!["m1"]);
        assert_eq!(v[0].witness, "m2");
    }

    #[test]
    fn modal_operators_on_e1() {
        let p = e1();
        let ctx = EnrichedContext::new(p.clone(), p.incidence().clone(), Relation::empty(3, 2));
        let l = ConceptLattice::new(&p).unwrap();
        assert_eq!(ctx.box_op(&l.top()).unwrap(), l.top());
        let q = l.get(1);
        assert_eq!(ctx.box_op(&q).unwrap(), q);
        for c in l.concepts() {
            let d = ctx.dia_op(c).unwrap();
            if c.extent.is_empty() {
                assert_eq!(d, l.bottom());
            } else {
                assert_eq!(d, l.top());
            }
        }
        let bogus = Concept {
            extent: set(&[0]),
            intent: BitSet::EMPTY,
        };
        assert!(matches!(ctx.box_op(&bogus), Err(Error::NotAConcept)));
    }

    #[test]
    fn closing_relations_yields_compatible_contexts() {
        let p = Polarity::anonymous(Relation::from_pairs(3, 3, [(0, 0), (1, 1), (1, 2), (2, 0)]))
            .unwrap();
        let rb = close_box_relation(&p, &Relation::from_pairs(3, 3, [(0, 1)]));
        let rd = close_dia_relation(&p, &Relation::from_pairs(3, 3, [(2, 1)]));
        let ctx = EnrichedContext::new(p, rb, rd);
        assert!(
            ctx.check_compatible().is_empty(),
            "{:?}",
            ctx.check_compatible()
        );
    }
}
