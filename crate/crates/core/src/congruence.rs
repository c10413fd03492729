//! Congruences on partial rings and quotient rings `A/C`.
//!
//! The least congruence containing a set of pairs is found in two steps.
//! First the least equivalence relation that is multiplicative and additive
//! is computed as a fixpoint. If that relation is effective it is the
//! answer. Otherwise every coarser multiplicative, additive, effective
//! relation is enumerated and their intersection is taken: congruences are
//! closed under intersection and the total relation is always one.

use std::collections::HashMap;

use crate::closure::{associative_closure, Closure};
use crate::error::{Error, Result};
use crate::morphism::Homomorphism;
use crate::relation::{all_relations, is_effective, quotient_magma, EquivRelation, UnionFind};
use crate::structure::{Level, PartialRing};
use crate::words::{CommPresentation, Lookup, Word};
use crate::{Budget, Elem};

/// Largest number of fixpoint classes for which coarser relations are
/// enumerated (Bell(10) = 115975 candidates).
pub const MAX_ENUMERATED_CLASSES: usize = 10;

/// An effective, multiplicative equivalence relation on a partial ring.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Congruence {
    relation: EquivRelation,
}

impl Congruence {
    /// Checks the congruence conditions and wraps the relation.
    pub fn new(a: &PartialRing, relation: EquivRelation) -> Result<Self> {
        if let Some(witness) = relation.additivity_witness(a.additive()) {
            return Err(Error::NotAdditive { witness });
        }
        if !is_multiplicative(a, &relation) {
            return Err(Error::Invalid("congruence", "not closed under multiplication".into()));
        }
        if is_effective(a.additive(), &relation)?.is_some() {
            return Err(Error::NotEffective);
        }
        Ok(Self { relation })
    }

    pub fn diagonal(a: &PartialRing) -> Self {
        Self { relation: EquivRelation::diagonal(a.size()) }
    }

    pub fn relation(&self) -> &EquivRelation {
        &self.relation
    }

    pub fn related(&self, x: Elem, y: Elem) -> bool {
        self.relation.related(x, y)
    }

    pub fn intersection(&self, other: &Congruence) -> EquivRelation {
        self.relation.intersection(&other.relation)
    }
}

pub fn is_multiplicative(a: &PartialRing, r: &EquivRelation) -> bool {
    r.classes().iter().all(|class| {
        a.elements().all(|c| class.windows(2).all(|w| r.related(a.mul(w[0], c), a.mul(w[1], c))))
    })
}

/// Least equivalence relation containing `pairs` that is closed under
/// multiplication and compatible with addition.
pub fn multiplicative_additive_closure(a: &PartialRing, pairs: &[(Elem, Elem)]) -> EquivRelation {
    let n = a.size();
    let mut uf = UnionFind::new(n);
    for &(x, y) in pairs {
        uf.union(x, y);
    }
    let summable: Vec<(Elem, Elem, Elem)> = a
        .elements()
        .flat_map(|x| a.elements().map(move |y| (x, y)))
        .filter_map(|(x, y)| a.add(x, y).map(|s| (x, y, s)))
        .collect();
    loop {
        let mut changed = false;
        let labels = uf.labels();
        for x in 0..n {
            for y in x + 1..n {
                if labels[x] == labels[y] {
                    for c in a.elements() {
                        changed |= uf.union(a.mul(x, c), a.mul(y, c));
                    }
                }
            }
        }
        let labels = uf.labels();
        for &(x1, y1, s1) in &summable {
            for &(x2, y2, s2) in &summable {
                if labels[x1] == labels[x2] && labels[y1] == labels[y2] {
                    changed |= uf.union(s1, s2);
                }
            }
        }
        if !changed {
            return EquivRelation::from_labels(&uf.labels());
        }
    }
}

/// The smallest congruence containing `pairs`; may be the total relation.
pub fn least_congruence(a: &PartialRing, pairs: &[(Elem, Elem)]) -> Result<Congruence> {
    let base = multiplicative_additive_closure(a, pairs);
    if is_effective(a.additive(), &base)?.is_none() {
        return Ok(Congruence { relation: base });
    }
    let k = base.num_classes();
    if k > MAX_ENUMERATED_CLASSES {
        return Err(Error::BudgetExceeded {
            what: "congruence classes to enumerate",
            needed: k as u128,
            limit: MAX_ENUMERATED_CLASSES as u128,
        });
    }
    let mut least = EquivRelation::total(a.size());
    for merge in all_relations(k) {
        let r = base.coarsen(merge.labels());
        if r.is_finer_than(&least) && r != least && is_congruence(a, &r)? {
            least = least.intersection(&r);
        }
    }
    Ok(Congruence { relation: least })
}

fn is_congruence(a: &PartialRing, r: &EquivRelation) -> Result<bool> {
    Ok(r.is_additive(a.additive()) && is_multiplicative(a, r) && is_effective(a.additive(), r)?.is_none())
}

/// The smallest congruence containing `pairs`, rejecting the total relation
/// on a nonzero ring.
pub fn congruence_closure(a: &PartialRing, pairs: &[(Elem, Elem)]) -> Result<Congruence> {
    let c = least_congruence(a, pairs)?;
    if c.relation.is_total() && a.size() > 1 {
        return Err(Error::DegenerateCongruence);
    }
    Ok(c)
}

/// `A/C` with its projection `π: A → A/C`.
#[derive(Debug, Clone)]
pub struct QuotientRing {
    pub ring: PartialRing,
    pub projection: Homomorphism,
}

/// `A/C = (A⫽C)_ass` with `[a][b] = [ab]` extended bilinearly to sums.
pub fn quotient_ring(a: &PartialRing, c: &Congruence, budget: &Budget) -> Result<QuotientRing> {
    let q = quotient_magma(a.additive(), &c.relation)?;
    let Closure { monoid, alpha, words } = associative_closure(&q.magma, budget)?;
    let projection = q.projection.then(&alpha);

    let classes = c.relation.classes();
    let class_mul = |x: usize, y: usize| c.relation.class_of(a.mul(classes[x][0], classes[y][0]));
    let zero_class = q.magma.zero();

    let pres = CommPresentation::monoid_completion(&q.magma);
    let targets: HashMap<Word, usize> = words.iter().cloned().enumerate().map(|(i, w)| (w, i)).collect();
    let n = monoid.size();
    let mut mul = vec![0; n * n];
    for i in 0..n {
        for j in i..n {
            let letters: Vec<usize> = words[i]
                .letters()
                .iter()
                .flat_map(|&x| words[j].letters().iter().map(move |&y| (x, y)))
                .map(|(x, y)| class_mul(x, y))
                .filter(|&z| z != zero_class)
                .collect();
            let w = Word::new(letters);
            let k = match targets.get(&w) {
                Some(&k) => k,
                None => match pres.lookup(&w, &targets, budget.max_states) {
                    Lookup::Found(k) => k,
                    Lookup::Absent => {
                        return Err(Error::Invalid(
                            "quotient ring",
                            format!("product {} * {} leaves the closure", monoid.name(i), monoid.name(j)),
                        ))
                    }
                    Lookup::Unknown => {
                        return Err(Error::BudgetExceeded {
                            what: "word problem states",
                            needed: budget.max_states as u128 + 1,
                            limit: budget.max_states as u128,
                        })
                    }
                },
            };
            mul[i * n + j] = k;
            mul[j * n + i] = k;
        }
    }
    let ring = PartialRing::new(monoid, projection.apply(a.one()), mul)?;
    if budget.revalidate {
        let report = ring.validate(Level::Ring);
        if !report.is_valid() {
            return Err(Error::Invalid("quotient ring", report.render(ring.names())));
        }
    }
    Ok(QuotientRing { ring, projection })
}
