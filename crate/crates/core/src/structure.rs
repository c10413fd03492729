//! Finite partial magmas, partial monoids and partial rings stored as dense
//! tables over an index-based carrier.
//!
//! A [`PartialMagma`] keeps its addition as an `n * n` table of
//! `Option<Elem>`: a cell is `Some` exactly when the pair is summable. The
//! same type carries partial monoids; associativity is a property checked by
//! [`PartialMagma::validate`] rather than a separate type. A [`PartialRing`]
//! adds a unit and a total multiplication table.

use std::collections::HashSet;
use std::fmt;

use crate::error::StructureError;
use crate::Elem;

/// The axiom level a structure is validated against.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Level {
    Magma,
    Monoid,
    Ring,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Axiom {
    /// `(0,a)`, `(a,0)` summable and `a + 0 = a = 0 + a`.
    ZeroUnit,
    /// Summability is symmetric and addition commutative on it.
    Commutativity,
    /// Strict associativity of the partial addition.
    Associativity,
    MulCommutative,
    MulAssociative,
    MulUnit,
    ZeroAbsorbing,
    /// `(a1,a2)` summable implies `(a1 x, a2 x)` summable with
    /// `a1 x + a2 x = (a1 + a2) x`.
    Bilinearity,
}

impl fmt::Display for Axiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Axiom::ZeroUnit => "(a) zero is a unit",
            Axiom::Commutativity => "(b) commutativity",
            Axiom::Associativity => "(c) strict associativity",
            Axiom::MulCommutative => "multiplication commutative",
            Axiom::MulAssociative => "multiplication associative",
            Axiom::MulUnit => "one is a multiplicative unit",
            Axiom::ZeroAbsorbing => "zero absorbs",
            Axiom::Bilinearity => "bilinearity",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub axiom: Axiom,
    /// The first offending tuple found for this axiom.
    pub witness: Vec<Elem>,
    /// How many offending tuples exist in total.
    pub count: usize,
}

/// Every violated axiom, each with one witness. Empty iff valid.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn violation(&self, axiom: Axiom) -> Option<&Violation> {
        self.violations.iter().find(|v| v.axiom == axiom)
    }

    fn record(&mut self, axiom: Axiom, witness: &[Elem]) {
        match self.violations.iter_mut().find(|v| v.axiom == axiom) {
            Some(v) => v.count += 1,
            None => self.violations.push(Violation {
                axiom,
                witness: witness.to_vec(),
                count: 1,
            }),
        }
    }

    pub fn render(&self, names: &[String]) -> String {
        if self.is_valid() {
            return "valid".to_string();
        }
        self.violations
            .iter()
            .map(|v| {
                let w: Vec<&str> = v.witness.iter().map(|&e| names[e].as_str()).collect();
                format!("{} violated ({} cases), witness ({})", v.axiom, v.count, w.join(", "))
            })
            .collect::<Vec<_>>()
            .join("\n")
    }
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PartialMagma {
    names: Vec<String>,
    zero: Elem,
    table: Vec<Option<Elem>>,
}

impl fmt::Debug for PartialMagma {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PartialMagma {{ ")?;
        for a in self.elements() {
            for b in a..self.size() {
                if let Some(c) = self.add(a, b) {
                    if a != self.zero && b != self.zero {
                        write!(f, "{}+{}={} ", self.names[a], self.names[b], self.names[c])?;
                    }
                }
            }
        }
        write!(f, "}}")
    }
}

impl PartialMagma {
    /// Builds a magma from raw tables. Only dimensions and index ranges are
    /// checked here; axioms are checked by [`validate`](Self::validate).
    pub fn new(
        names: Vec<String>,
        zero: Elem,
        table: Vec<Option<Elem>>,
    ) -> Result<Self, StructureError> {
        let n = names.len();
        if n == 0 {
            return Err(StructureError::EmptyCarrier);
        }
        let mut seen = HashSet::new();
        for name in &names {
            if !seen.insert(name.as_str()) {
                return Err(StructureError::DuplicateName(name.clone()));
            }
        }
        if table.len() != n * n {
            return Err(StructureError::TableSize {
                expected: n * n,
                got: table.len(),
            });
        }
        if zero >= n {
            return Err(StructureError::OutOfRange { index: zero, size: n });
        }
        if let Some(&bad) = table.iter().flatten().find(|&&c| c >= n) {
            return Err(StructureError::OutOfRange { index: bad, size: n });
        }
        Ok(Self { names, zero, table })
    }

    /// Builds a magma from a function giving the sum of each pair (or
    /// `None`). Panics if the function returns an out-of-range element.
    pub fn from_fn(
        names: Vec<String>,
        zero: Elem,
        add: impl Fn(Elem, Elem) -> Option<Elem>,
    ) -> Self {
        let n = names.len();
        let table = (0..n * n).map(|i| add(i / n, i % n)).collect();
        Self::new(names, zero, table).expect("generated table out of range")
    }

    pub fn size(&self) -> usize {
        self.names.len()
    }

    pub fn zero(&self) -> Elem {
        self.zero
    }

    pub fn elements(&self) -> std::ops::Range<Elem> {
        0..self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, a: Elem) -> &str {
        &self.names[a]
    }

    pub fn elem(&self, name: &str) -> Option<Elem> {
        self.names.iter().position(|n| n == name)
    }

    pub fn table(&self) -> &[Option<Elem>] {
        &self.table
    }

    #[inline]
    pub fn add(&self, a: Elem, b: Elem) -> Option<Elem> {
        self.table[a * self.names.len() + b]
    }

    #[inline]
    pub fn summable(&self, a: Elem, b: Elem) -> bool {
        self.add(a, b).is_some()
    }

    /// True when every pair is summable.
    pub fn is_total(&self) -> bool {
        self.table.iter().all(Option::is_some)
    }

    /// Left-fold sum of a multiset in the given order. Returns `None` as soon
    /// as a step is not summable. In a partial monoid the outcome does not
    /// depend on the order.
    pub fn sum_multiset(&self, ms: &[Elem]) -> Option<Elem> {
        ms.iter().try_fold(self.zero, |acc, &x| self.add(acc, x))
    }

    pub fn is_monoid(&self) -> bool {
        self.validate(Level::Monoid).is_valid()
    }

    /// Checks axioms (a), (b) and, for `Level::Monoid` and above, (c).
    pub fn validate(&self, level: Level) -> ValidationReport {
        let mut report = ValidationReport::default();
        self.check_additive_axioms(level, &mut report);
        report
    }

    fn check_additive_axioms(&self, level: Level, report: &mut ValidationReport) {
        let z = self.zero;
        for a in self.elements() {
            if self.add(z, a) != Some(a) {
                report.record(Axiom::ZeroUnit, &[z, a]);
            }
            if self.add(a, z) != Some(a) {
                report.record(Axiom::ZeroUnit, &[a, z]);
            }
        }
        for a in self.elements() {
            for b in self.elements() {
                if let Some(c) = self.add(a, b) {
                    if self.add(b, a) != Some(c) {
                        report.record(Axiom::Commutativity, &[a, b]);
                    }
                }
            }
        }
        if level < Level::Monoid {
            return;
        }
        for a in self.elements() {
            for b in self.elements() {
                let ab = self.add(a, b);
                for c in self.elements() {
                    let left = ab.and_then(|ab| self.add(ab, c));
                    let right = self.add(b, c).and_then(|bc| self.add(a, bc));
                    if left != right {
                        report.record(Axiom::Associativity, &[a, b, c]);
                    }
                }
            }
        }
    }

    /// Relabels the carrier: element `i` of the result is `perm_inv[i]` of
    /// `self`. Names follow their elements.
    pub fn permuted(&self, perm: &[Elem]) -> Self {
        // perm[old] = new
        let n = self.size();
        let mut inv = vec![0; n];
        for (old, &new) in perm.iter().enumerate() {
            inv[new] = old;
        }
        let names = inv.iter().map(|&o| self.names[o].clone()).collect();
        Self::from_fn(names, perm[self.zero], |a, b| {
            self.add(inv[a], inv[b]).map(|c| perm[c])
        })
    }

    pub fn with_names(mut self, names: Vec<String>) -> Result<Self, StructureError> {
        if names.len() != self.size() {
            return Err(StructureError::TableSize {
                expected: self.size(),
                got: names.len(),
            });
        }
        let rebuilt = Self::new(names, self.zero, std::mem::take(&mut self.table))?;
        Ok(rebuilt)
    }
}

/// A finite partial ring: a partial monoid with a unit and a total,
/// commutative, associative, bilinear multiplication.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PartialRing {
    additive: PartialMagma,
    one: Elem,
    mul: Vec<Elem>,
}

impl fmt::Debug for PartialRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PartialRing {{ {:?}, one = {} }}", self.additive, self.name(self.one))
    }
}

impl PartialRing {
    pub fn new(
        additive: PartialMagma,
        one: Elem,
        mul: Vec<Elem>,
    ) -> Result<Self, StructureError> {
        let n = additive.size();
        if one >= n {
            return Err(StructureError::OutOfRange { index: one, size: n });
        }
        if mul.len() != n * n {
            return Err(StructureError::TableSize {
                expected: n * n,
                got: mul.len(),
            });
        }
        if let Some(&bad) = mul.iter().find(|&&c| c >= n) {
            return Err(StructureError::OutOfRange { index: bad, size: n });
        }
        Ok(Self { additive, one, mul })
    }

    pub fn from_fn(
        additive: PartialMagma,
        one: Elem,
        mul: impl Fn(Elem, Elem) -> Elem,
    ) -> Self {
        let n = additive.size();
        let table = (0..n * n).map(|i| mul(i / n, i % n)).collect();
        Self::new(additive, one, table).expect("generated table out of range")
    }

    pub fn additive(&self) -> &PartialMagma {
        &self.additive
    }

    pub fn into_additive(self) -> PartialMagma {
        self.additive
    }

    pub fn size(&self) -> usize {
        self.additive.size()
    }

    pub fn zero(&self) -> Elem {
        self.additive.zero()
    }

    pub fn one(&self) -> Elem {
        self.one
    }

    pub fn elements(&self) -> std::ops::Range<Elem> {
        self.additive.elements()
    }

    pub fn names(&self) -> &[String] {
        self.additive.names()
    }

    pub fn name(&self, a: Elem) -> &str {
        self.additive.name(a)
    }

    pub fn elem(&self, name: &str) -> Option<Elem> {
        self.additive.elem(name)
    }

    pub fn mul_table(&self) -> &[Elem] {
        &self.mul
    }

    #[inline]
    pub fn add(&self, a: Elem, b: Elem) -> Option<Elem> {
        self.additive.add(a, b)
    }

    #[inline]
    pub fn summable(&self, a: Elem, b: Elem) -> bool {
        self.additive.summable(a, b)
    }

    #[inline]
    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        self.mul[a * self.size() + b]
    }

    pub fn pow(&self, a: Elem, k: u32) -> Elem {
        (0..k).fold(self.one, |acc, _| self.mul(acc, a))
    }

    pub fn sum_multiset(&self, ms: &[Elem]) -> Option<Elem> {
        self.additive.sum_multiset(ms)
    }

    pub fn is_zero_ring(&self) -> bool {
        self.size() == 1
    }

    pub fn is_unit(&self, a: Elem) -> bool {
        self.elements().any(|b| self.mul(a, b) == self.one)
    }

    pub fn inverse(&self, a: Elem) -> Option<Elem> {
        self.elements().find(|&b| self.mul(a, b) == self.one)
    }

    /// Validates at the requested level; `Level::Ring` includes the monoid
    /// axioms of the additive part.
    pub fn validate(&self, level: Level) -> ValidationReport {
        let mut report = ValidationReport::default();
        self.additive
            .check_additive_axioms(level.min(Level::Monoid), &mut report);
        if level < Level::Ring {
            return report;
        }
        let z = self.zero();
        for a in self.elements() {
            if self.mul(self.one, a) != a || self.mul(a, self.one) != a {
                report.record(Axiom::MulUnit, &[self.one, a]);
            }
            if self.mul(z, a) != z || self.mul(a, z) != z {
                report.record(Axiom::ZeroAbsorbing, &[z, a]);
            }
            for b in self.elements() {
                if self.mul(a, b) != self.mul(b, a) {
                    report.record(Axiom::MulCommutative, &[a, b]);
                }
                let ab = self.mul(a, b);
                for c in self.elements() {
                    if self.mul(ab, c) != self.mul(a, self.mul(b, c)) {
                        report.record(Axiom::MulAssociative, &[a, b, c]);
                    }
                }
            }
        }
        for a1 in self.elements() {
            for a2 in self.elements() {
                let Some(s) = self.add(a1, a2) else { continue };
                for x in self.elements() {
                    let lhs = self.add(self.mul(a1, x), self.mul(a2, x));
                    if lhs != Some(self.mul(s, x)) {
                        report.record(Axiom::Bilinearity, &[a1, a2, x]);
                    }
                }
            }
        }
        report
    }

    pub fn is_valid(&self) -> bool {
        self.validate(Level::Ring).is_valid()
    }

    /// Relabels the carrier with `perm[old] = new`.
    pub fn permuted(&self, perm: &[Elem]) -> Self {
        let n = self.size();
        let mut inv = vec![0; n];
        for (old, &new) in perm.iter().enumerate() {
            inv[new] = old;
        }
        let additive = self.additive.permuted(perm);
        Self::from_fn(additive, perm[self.one], |a, b| perm[self.mul(inv[a], inv[b])])
    }

    pub fn with_names(self, names: Vec<String>) -> Result<Self, StructureError> {
        let additive = self.additive.with_names(names)?;
        Self::new(additive, self.one, self.mul)
    }
}

/// Either kind of structure, for callers that accept both.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Structure {
    Monoid(PartialMagma),
    Ring(PartialRing),
}

impl Structure {
    pub fn additive(&self) -> &PartialMagma {
        match self {
            Structure::Monoid(m) => m,
            Structure::Ring(r) => r.additive(),
        }
    }

    pub fn validate(&self, level: Level) -> ValidationReport {
        match self {
            Structure::Monoid(m) => m.validate(level.min(Level::Monoid)),
            Structure::Ring(r) => r.validate(level),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builtins::{boolean, f1, f2, zmod};

    fn names(n: usize) -> Vec<String> {
        (0..n).map(|i| i.to_string()).collect()
    }

    #[test]
    fn order_two_examples_validate() {
        assert!(f1().additive().validate(Level::Monoid).is_valid());
        assert!(f1().is_valid());
        assert!(boolean().is_valid());
        assert!(f2().is_valid());
        assert_eq!(f1().add(1, 1), None);
        assert_eq!(boolean().add(1, 1), Some(1));
    }

    #[test]
    fn dropping_a_zero_sum_is_reported_under_axiom_a() {
        let mut table = f1().additive().table().to_vec();
        table[2] = None; // (1,0)
        let m = PartialMagma::new(names(2), 0, table).unwrap();
        let report = m.validate(Level::Monoid);
        let v = report.violation(Axiom::ZeroUnit).expect("axiom (a) violated");
        assert_eq!(v.witness, vec![1, 0]);
        assert!(report.violation(Axiom::Commutativity).is_some());
    }

    #[test]
    fn altered_f1_with_one_plus_one_zero_is_z2() {
        let m = PartialMagma::from_fn(names(2), 0, |a, b| Some((a + b) % 2));
        assert!(m.validate(Level::Monoid).is_valid());
        assert_eq!(&m, f2().additive());
    }

    #[test]
    fn structural_errors_are_distinct_from_axiom_failures() {
        assert_eq!(
            PartialMagma::new(names(2), 0, vec![Some(0), Some(5), Some(1), None]),
            Err(StructureError::OutOfRange { index: 5, size: 2 })
        );
        assert!(matches!(
            PartialMagma::new(names(2), 0, vec![Some(0)]),
            Err(StructureError::TableSize { .. })
        ));
        assert!(matches!(
            PartialMagma::new(vec!["a".into(), "a".into()], 0, vec![None; 4]),
            Err(StructureError::DuplicateName(_))
        ));
    }

    #[test]
    fn non_associative_magma_is_caught() {
        // a+a = b and b+b = c only: (a+a)+b is defined, a+(a+b) is not.
        let m = PartialMagma::from_fn(names(4), 0, |x, y| match (x, y) {
            (0, y) => Some(y),
            (x, 0) => Some(x),
            (1, 1) => Some(2),
            (2, 2) => Some(3),
            _ => None,
        });
        let report = m.validate(Level::Monoid);
        assert!(report.violation(Axiom::Associativity).is_some());
        assert!(m.validate(Level::Magma).is_valid());
    }

    #[test]
    fn sum_multiset_examples() {
        assert_eq!(f1().sum_multiset(&[1]), Some(1));
        assert_eq!(f1().sum_multiset(&[1, 1]), None);
        // total-addition oracle: 1+1+1 mod 2
        assert_eq!(f2().sum_multiset(&[1, 1, 1]), Some((1 + 1 + 1) % 2));
        assert_eq!(zmod(4).sum_multiset(&[]), Some(0));
    }

    #[test]
    fn ring_axiom_failures_are_reported() {
        let z2 = f2();
        let bad = PartialRing::from_fn(z2.additive().clone(), 1, |_, _| 0);
        let report = bad.validate(Level::Ring);
        assert!(report.violation(Axiom::MulUnit).is_some());
    }
}
