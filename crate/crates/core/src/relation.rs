//! Equivalence relations on finite carriers, additivity, the quotient
//! `A⫽R`, and two independent effectiveness tests.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::morphism::Homomorphism;
use crate::structure::PartialMagma;
use crate::words::{CommPresentation, Word, WordEq};
use crate::{Budget, Elem};

/// Disjoint-set forest with path halving.
#[derive(Debug, Clone)]
pub(crate) struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    pub(crate) fn new(n: usize) -> Self {
        Self { parent: (0..n).collect() }
    }

    pub(crate) fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    /// Returns true if two distinct classes were merged.
    pub(crate) fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        let (lo, hi) = (ra.min(rb), ra.max(rb));
        self.parent[hi] = lo;
        true
    }

    pub(crate) fn labels(&mut self) -> Vec<usize> {
        (0..self.parent.len()).map(|x| self.find(x)).collect()
    }
}

/// An equivalence relation, stored as canonical class labels: classes are
/// numbered in order of their smallest element.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct EquivRelation {
    class: Vec<usize>,
    count: usize,
}

impl EquivRelation {
    /// Canonicalizes arbitrary labels (equal label = same class).
    pub fn from_labels(labels: &[usize]) -> Self {
        let mut renumber = BTreeMap::new();
        let class: Vec<usize> = labels
            .iter()
            .map(|l| {
                let next = renumber.len();
                *renumber.entry(*l).or_insert(next)
            })
            .collect();
        Self { count: renumber.len(), class }
    }

    pub fn diagonal(n: usize) -> Self {
        Self::from_labels(&(0..n).collect::<Vec<_>>())
    }

    pub fn total(n: usize) -> Self {
        Self::from_labels(&vec![0; n])
    }

    /// The equivalence relation generated by `pairs`.
    pub fn generated(n: usize, pairs: &[(Elem, Elem)]) -> Self {
        let mut uf = UnionFind::new(n);
        for &(a, b) in pairs {
            uf.union(a, b);
        }
        Self::from_labels(&uf.labels())
    }

    pub fn size(&self) -> usize {
        self.class.len()
    }

    pub fn num_classes(&self) -> usize {
        self.count
    }

    pub fn class_of(&self, a: Elem) -> usize {
        self.class[a]
    }

    pub fn labels(&self) -> &[usize] {
        &self.class
    }

    pub fn related(&self, a: Elem, b: Elem) -> bool {
        self.class[a] == self.class[b]
    }

    pub fn is_diagonal(&self) -> bool {
        self.count == self.class.len()
    }

    pub fn is_total(&self) -> bool {
        self.count <= 1
    }

    pub fn classes(&self) -> Vec<Vec<Elem>> {
        let mut out = vec![Vec::new(); self.count];
        for (a, &c) in self.class.iter().enumerate() {
            out[c].push(a);
        }
        out
    }

    /// All related pairs `(a, b)`, including `(a, a)`.
    pub fn pairs(&self) -> Vec<(Elem, Elem)> {
        let n = self.size();
        (0..n)
            .flat_map(|a| (0..n).map(move |b| (a, b)))
            .filter(|&(a, b)| self.related(a, b))
            .collect()
    }

    pub fn is_finer_than(&self, other: &EquivRelation) -> bool {
        (0..self.size()).all(|a| (0..self.size()).all(|b| !self.related(a, b) || other.related(a, b)))
    }

    pub fn intersection(&self, other: &EquivRelation) -> EquivRelation {
        let labels: Vec<usize> = (0..self.size())
            .map(|a| self.class[a] * other.count + other.class[a])
            .collect();
        Self::from_labels(&labels)
    }

    /// The relation obtained by merging whole classes according to a
    /// labelling of the classes.
    pub fn coarsen(&self, class_labels: &[usize]) -> EquivRelation {
        Self::from_labels(&self.class.iter().map(|&c| class_labels[c]).collect::<Vec<_>>())
    }

    /// A witness `[a1, a2, b1, b2]` with `a1 R a2`, `b1 R b2`, both pairs
    /// summable, and the sums unrelated.
    pub fn additivity_witness(&self, a: &PartialMagma) -> Option<[Elem; 4]> {
        let pairs: Vec<(Elem, Elem, Elem)> = a
            .elements()
            .flat_map(|x| a.elements().map(move |y| (x, y)))
            .filter_map(|(x, y)| a.add(x, y).map(|s| (x, y, s)))
            .collect();
        for &(a1, b1, s1) in &pairs {
            for &(a2, b2, s2) in &pairs {
                if self.related(a1, a2) && self.related(b1, b2) && !self.related(s1, s2) {
                    return Some([a1, a2, b1, b2]);
                }
            }
        }
        None
    }

    pub fn is_additive(&self, a: &PartialMagma) -> bool {
        self.additivity_witness(a).is_none()
    }
}

/// `A⫽R` with the projection `A → A⫽R`.
#[derive(Debug, Clone)]
pub struct Quotient {
    pub magma: PartialMagma,
    pub projection: Homomorphism,
}

pub(crate) fn class_names(names: &[String], r: &EquivRelation) -> Vec<String> {
    r.classes()
        .iter()
        .map(|c| match c.as_slice() {
            [x] => names[*x].clone(),
            _ => format!("[{}]", c.iter().map(|&x| names[x].as_str()).collect::<Vec<_>>().join(",")),
        })
        .collect()
}

/// The quotient partial magma `A⫽R`: `[a] + [b]` is defined iff some
/// representatives are summable, and then equals `[a + b]`.
pub fn quotient_magma(a: &PartialMagma, r: &EquivRelation) -> Result<Quotient> {
    if let Some(witness) = r.additivity_witness(a) {
        return Err(Error::NotAdditive { witness });
    }
    let k = r.num_classes();
    let mut table = vec![None; k * k];
    for x in a.elements() {
        for y in a.elements() {
            if let Some(s) = a.add(x, y) {
                table[r.class_of(x) * k + r.class_of(y)] = Some(r.class_of(s));
            }
        }
    }
    let magma = PartialMagma::new(class_names(a.names(), r), r.class_of(a.zero()), table)?;
    Ok(Quotient {
        magma,
        projection: Homomorphism::new(r.labels().to_vec()),
    })
}

/// Representatives `(a, b, c, a', b', c', x, x')` violating the Condition:
/// `aRa'`, `bRb'`, `cRc'`, `(a,b)`, `(b',c')`, `(x,c)`, `(a',x')` summable,
/// `(a+b) R x`, `(b'+c') R x'`, yet `x + c` and `a' + x'` are unrelated.
pub type ConditionWitness = [Elem; 8];

/// Tests effectiveness of an additive relation on a partial monoid through
/// the Condition. Returns `Ok(None)` if effective.
///
/// Since `R` is additive, `[x] + [c]` depends only on the classes, so the
/// Condition says: in `A⫽R`, whenever `(α + β) + γ` and `α + (β + γ)` are
/// both defined they agree. The check runs on classes and then recovers
/// representatives for the witness.
pub fn is_effective(a: &PartialMagma, r: &EquivRelation) -> Result<Option<ConditionWitness>> {
    let q = quotient_magma(a, r)?.magma;
    let k = q.size();
    for al in 0..k {
        for be in 0..k {
            let Some(ab) = q.add(al, be) else { continue };
            for ga in 0..k {
                let (Some(bc), Some(lhs)) = (q.add(be, ga), q.add(ab, ga)) else { continue };
                let Some(rhs) = q.add(al, bc) else { continue };
                if lhs != rhs {
                    return Ok(Some(condition_witness(a, r, [al, be, ga])));
                }
            }
        }
    }
    Ok(None)
}

fn condition_witness(a: &PartialMagma, r: &EquivRelation, cls: [usize; 3]) -> ConditionWitness {
    let in_class = |c: usize| a.elements().filter(move |&e| r.class_of(e) == c);
    for x0 in in_class(cls[0]) {
        for y0 in in_class(cls[1]) {
            let Some(s) = a.add(x0, y0) else { continue };
            for y1 in in_class(cls[1]) {
                for z1 in in_class(cls[2]) {
                    let Some(t) = a.add(y1, z1) else { continue };
                    for x in in_class(r.class_of(s)) {
                        for z0 in in_class(cls[2]) {
                            let Some(lhs) = a.add(x, z0) else { continue };
                            for x1 in in_class(cls[0]) {
                                for xp in in_class(r.class_of(t)) {
                                    if let Some(rhs) = a.add(x1, xp) {
                                        if !r.related(lhs, rhs) {
                                            return [x0, y0, z0, x1, y1, z1, x, xp];
                                        }
                                    }
                                }
                            }
                        }
                    }
                }
            }
        }
    }
    unreachable!("class-level violation always lifts to representatives")
}

/// Effectiveness through the kernel pair: `R` is effective iff the
/// canonical map `α: A⫽R → A/R` is injective. Since `A/R` sits inside
/// `(A⫽R)_mon`, this asks whether distinct classes stay distinct there.
pub fn kernel_pair_oracle(a: &PartialMagma, r: &EquivRelation, budget: &Budget) -> Result<bool> {
    let q = quotient_magma(a, r)?.magma;
    let pres = CommPresentation::monoid_completion(&q);
    let word = |c: usize| if c == q.zero() { Word::empty() } else { Word::letter(c) };
    for c1 in q.elements() {
        for c2 in c1 + 1..q.size() {
            match pres.equal(&word(c1), &word(c2), budget.max_states) {
                WordEq::Equal => return Ok(false),
                WordEq::Distinct => {}
                WordEq::Unknown => {
                    return Err(Error::BudgetExceeded {
                        what: "word problem states",
                        needed: budget.max_states as u128 + 1,
                        limit: budget.max_states as u128,
                    })
                }
            }
        }
    }
    Ok(true)
}

/// All equivalence relations on `{0..n}` as restricted growth strings.
pub fn all_relations(n: usize) -> Vec<EquivRelation> {
    let mut out = Vec::new();
    let mut labels = vec![0usize; n];
    fn rec(i: usize, max: usize, labels: &mut Vec<usize>, out: &mut Vec<EquivRelation>) {
        if i == labels.len() {
            out.push(EquivRelation::from_labels(labels));
            return;
        }
        for l in 0..=max + 1 {
            labels[i] = l;
            rec(i + 1, max.max(l), labels, out);
        }
    }
    if n == 0 {
        return out;
    }
    rec(1, 0, &mut labels, &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builtins::*;
    use crate::morphism::{magmas_isomorphic, product_ring};

    #[test]
    fn bell_numbers() {
        let counts: Vec<usize> = (1..=5).map(|n| all_relations(n).len()).collect();
        assert_eq!(counts, [1, 2, 5, 15, 52]);
    }

    #[test]
    fn diagonal_quotient_is_identity() {
        let z = product_ring(&f2(), &f2());
        let q = quotient_magma(z.additive(), &EquivRelation::diagonal(4)).unwrap();
        assert_eq!(&q.magma, z.additive());
    }

    #[test]
    fn z4_mod_two() {
        let z4 = zmod(4);
        let r = EquivRelation::from_labels(&[0, 1, 0, 1]);
        let q = quotient_magma(z4.additive(), &r).unwrap();
        assert!(magmas_isomorphic(&q.magma, f2().additive()));
    }

    #[test]
    fn f1_squared_three_classes() {
        // (1,0) ~ (0,1) in F1×F1; elements are 00, 01, 10, 11.
        let p = product_ring(&f1(), &f1());
        let (e01, e10) = (p.elem("(0,1)").unwrap(), p.elem("(1,0)").unwrap());
        let r = EquivRelation::generated(4, &[(e01, e10)]);
        assert!(r.is_additive(p.additive()));
        let q = quotient_magma(p.additive(), &r).unwrap();
        assert_eq!(q.magma.size(), 3);
        assert!(q.projection.is_magma_hom(p.additive(), &q.magma));
    }

    #[test]
    fn non_additive_relation_rejected() {
        // Z/3 with 1 ~ 0 only: 1+1 = 2 and 0+0 = 0 are unrelated.
        let r = EquivRelation::generated(3, &[(0, 1)]);
        assert!(matches!(quotient_magma(zmod(3).additive(), &r), Err(Error::NotAdditive { .. })));
    }

    #[test]
    fn trivial_relations_are_effective() {
        let b = Budget::default();
        for m in [f1().into_additive(), f2().into_additive(), boolean().into_additive(), truncated(3)] {
            for r in [EquivRelation::diagonal(m.size()), EquivRelation::total(m.size())] {
                assert_eq!(is_effective(&m, &r).unwrap(), None);
                assert!(kernel_pair_oracle(&m, &r, &b).unwrap());
            }
        }
    }

    #[test]
    fn frozen_condition_violation() {
        // {0, a, b, c} with a+a = a+b = b+b = c, relation c ~ 0.
        // (a+a)+b = 0+b = b but a+(a+b) = a+0 = a, and a, b are unrelated.
        let names: Vec<String> = ["0", "a", "b", "c"].iter().map(|s| s.to_string()).collect();
        let m = PartialMagma::from_fn(names, 0, |x, y| match (x, y) {
            (0, v) | (v, 0) => Some(v),
            _ => (x != 3 && y != 3).then_some(3),
        });
        assert!(m.is_monoid());
        let r = EquivRelation::generated(4, &[(3, 0)]);
        assert!(r.is_additive(&m));
        let w = is_effective(&m, &r).unwrap().expect("violation");
        let [a, b, c, a2, b2, c2, x, x2] = w;
        assert!(r.related(a, a2) && r.related(b, b2) && r.related(c, c2));
        assert!(r.related(m.add(a, b).unwrap(), x) && r.related(m.add(b2, c2).unwrap(), x2));
        assert!(!r.related(m.add(x, c).unwrap(), m.add(a2, x2).unwrap()));
        assert!(!kernel_pair_oracle(&m, &r, &Budget::default()).unwrap());
    }
}
