//! Prime spectra of finite partial rings as finite topological spaces.
//!
//! Point sets are bitmasks over the sorted prime list, so at most 64
//! primes are supported.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::ideal::{primes, render_ideal, Ideal};
use crate::localize::{complement, localize, LocalizedRing};
use crate::structure::PartialRing;
use crate::Elem;

/// A set of points, bit `i` standing for `points[i]`.
pub type PointSet = u64;

pub const MAX_POINTS: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Spectrum {
    pub points: Vec<Ideal>,
    /// `basis[a] = D(a)`.
    basis: Vec<PointSet>,
}

pub fn spec(a: &PartialRing) -> Result<Spectrum> {
    let points = primes(a);
    if points.len() > MAX_POINTS {
        return Err(Error::BudgetExceeded {
            what: "spectrum points",
            needed: points.len() as u128,
            limit: MAX_POINTS as u128,
        });
    }
    let basis = a
        .elements()
        .map(|x| points.iter().enumerate().filter(|(_, p)| !p.contains(&x)).fold(0, |m, (i, _)| m | 1 << i))
        .collect();
    Ok(Spectrum { points, basis })
}

pub fn members(u: PointSet) -> impl Iterator<Item = usize> {
    (0..MAX_POINTS).filter(move |&i| u >> i & 1 == 1)
}

impl Spectrum {
    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn all(&self) -> PointSet {
        if self.len() == MAX_POINTS {
            u64::MAX
        } else {
            (1 << self.len()) - 1
        }
    }

    pub fn d(&self, x: Elem) -> PointSet {
        self.basis[x]
    }

    /// `V(𝔞)`: the primes containing `𝔞`.
    pub fn v(&self, i: &Ideal) -> PointSet {
        self.points.iter().enumerate().filter(|(_, p)| i.is_subset(p)).fold(0, |m, (k, _)| m | 1 << k)
    }

    pub fn index_of(&self, p: &Ideal) -> Option<usize> {
        self.points.iter().position(|q| q == p)
    }

    /// Every open set: all unions of basic opens.
    pub fn opens(&self) -> Vec<PointSet> {
        let mut opens: BTreeSet<PointSet> = BTreeSet::from([0]);
        for &b in &self.basis {
            let new: Vec<PointSet> = opens.iter().map(|&u| u | b).collect();
            opens.extend(new);
        }
        opens.into_iter().collect()
    }

    pub fn is_open(&self, u: PointSet) -> bool {
        members(u).all(|p| self.minimal_open(p) & !u == 0)
    }

    /// The smallest open containing point `p`: the primes inside `p`.
    pub fn minimal_open(&self, p: usize) -> PointSet {
        let pp = &self.points[p];
        self.points.iter().enumerate().filter(|(_, q)| q.is_subset(pp)).fold(0, |m, (k, _)| m | 1 << k)
    }

    /// `q` lies in the closure of `p`.
    pub fn specializes(&self, p: usize, q: usize) -> bool {
        self.points[p].is_subset(&self.points[q])
    }

    /// Points of `u` not strictly contained in another point of `u`.
    pub fn maximal_points(&self, u: PointSet) -> Vec<usize> {
        members(u)
            .filter(|&p| !members(u).any(|q| q != p && self.points[p].is_subset(&self.points[q])))
            .collect()
    }

    pub fn render_set(&self, a: &PartialRing, u: PointSet) -> String {
        let parts: Vec<String> = members(u).map(|i| render_ideal(a, &self.points[i])).collect();
        format!("{{{}}}", parts.join(", "))
    }
}

/// The stalk `A_p = (A ∖ p)⁻¹ A`.
pub fn stalk(a: &PartialRing, p: &Ideal) -> Result<LocalizedRing> {
    localize(a, &complement(a, p))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builtins::*;
    use crate::ideal::{all_ideals, is_local};
    use crate::morphism::{product_ring, rings_isomorphic};

    fn sample() -> Vec<PartialRing> {
        vec![f1(), f2(), boolean(), zmod(4), zmod(6), product_ring(&f1(), &f1()), idempotent_pointed(), nilpotent_pointed()]
    }

    #[test]
    fn examples() {
        assert_eq!(spec(&f1()).unwrap().len(), 1);
        let s = spec(&zmod(4)).unwrap();
        assert_eq!(s.points, vec![[0, 2].into_iter().collect::<Ideal>()]);
        assert_eq!(spec(&product_ring(&f1(), &f1())).unwrap().len(), 2);
        assert!(spec(&zero_ring()).unwrap().is_empty());
    }

    #[test]
    fn basis_laws() {
        for a in sample() {
            let s = spec(&a).unwrap();
            assert_eq!(s.d(a.zero()), 0);
            assert_eq!(s.d(a.one()), s.all());
            for x in a.elements() {
                for y in a.elements() {
                    assert_eq!(s.d(a.mul(x, y)), s.d(x) & s.d(y));
                }
            }
            let opens = s.opens();
            assert!(opens.iter().all(|&u| s.is_open(u)));
            for i in all_ideals(&a) {
                // V(𝔞) is the complement of the union of the D(x), x ∈ 𝔞
                let union = i.iter().fold(0, |m, &x| m | s.d(x));
                assert_eq!(s.v(&i), s.all() & !union);
            }
            for p in 0..s.len() {
                assert!(opens.contains(&s.minimal_open(p)));
            }
        }
    }

    #[test]
    fn stalks() {
        assert!(rings_isomorphic(&stalk(&f1(), &[0].into()).unwrap().ring, &f1()));
        let z4 = zmod(4);
        assert!(rings_isomorphic(&stalk(&z4, &[0, 2].into()).unwrap().ring, &z4));
        let p = product_ring(&f1(), &f1());
        for q in spec(&p).unwrap().points {
            assert!(rings_isomorphic(&stalk(&p, &q).unwrap().ring, &f1()));
        }
        for a in sample() {
            for q in spec(&a).unwrap().points {
                assert!(is_local(&stalk(&a, &q).unwrap().ring).is_some());
            }
        }
    }
}
