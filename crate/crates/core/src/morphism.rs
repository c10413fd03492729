//! Homomorphism enumeration, isomorphism search, binary products and
//! Hom-objects.

use std::fmt;

use crate::error::{Error, Result};
use crate::structure::{PartialMagma, PartialRing};
use crate::Elem;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum HomKind {
    Magma,
    Monoid,
    Ring,
}

/// A structure-preserving map, stored as its value table.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Homomorphism {
    pub map: Vec<Elem>,
}

impl Homomorphism {
    pub fn new(map: Vec<Elem>) -> Self {
        Self { map }
    }

    pub fn identity(n: usize) -> Self {
        Self { map: (0..n).collect() }
    }

    #[inline]
    pub fn apply(&self, a: Elem) -> Elem {
        self.map[a]
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &Homomorphism) -> Homomorphism {
        Homomorphism::new(self.map.iter().map(|&x| other.map[x]).collect())
    }

    pub fn is_injective(&self) -> bool {
        let mut seen = std::collections::HashSet::new();
        self.map.iter().all(|x| seen.insert(*x))
    }

    pub fn is_magma_hom(&self, a: &PartialMagma, b: &PartialMagma) -> bool {
        if self.map.len() != a.size() || self.map[a.zero()] != b.zero() {
            return false;
        }
        a.elements().all(|x| {
            a.elements().all(|y| match a.add(x, y) {
                None => true,
                Some(s) => b.add(self.map[x], self.map[y]) == Some(self.map[s]),
            })
        })
    }

    pub fn is_ring_hom(&self, a: &PartialRing, b: &PartialRing) -> bool {
        self.is_magma_hom(a.additive(), b.additive())
            && self.map[a.one()] == b.one()
            && a.elements().all(|x| {
                a.elements()
                    .all(|y| self.map[a.mul(x, y)] == b.mul(self.map[x], self.map[y]))
            })
    }

    /// The inverse map, if this one is a bijection onto `0..target_size`.
    pub fn inverse(&self, target_size: usize) -> Option<Homomorphism> {
        if self.map.len() != target_size {
            return None;
        }
        let mut inv = vec![usize::MAX; target_size];
        for (x, &y) in self.map.iter().enumerate() {
            if y >= target_size || inv[y] != usize::MAX {
                return None;
            }
            inv[y] = x;
        }
        Some(Homomorphism::new(inv))
    }

    /// A bijective ring homomorphism whose inverse is one too, so that sums
    /// are reflected as well as preserved.
    pub fn is_ring_isomorphism(&self, a: &PartialRing, b: &PartialRing) -> bool {
        self.is_ring_hom(a, b) && self.inverse(b.size()).is_some_and(|inv| inv.is_ring_hom(b, a))
    }

    pub fn render(&self, src: &[String], tgt: &[String]) -> String {
        let parts: Vec<String> = self
            .map
            .iter()
            .enumerate()
            .map(|(i, &j)| format!("{}↦{}", src[i], tgt[j]))
            .collect();
        format!("[{}]", parts.join(","))
    }
}

impl fmt::Display for Homomorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.map)
    }
}

/// Default cap on `|B|^|A|` for exhaustive map searches.
pub const DEFAULT_MAP_LIMIT: u128 = 1 << 40;

fn candidate_count(src: usize, tgt: usize) -> u128 {
    let mut acc: u128 = 1;
    for _ in 0..src {
        acc = acc.saturating_mul(tgt as u128);
    }
    acc
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Mode {
    Hom,
    Iso,
}

struct Search<'a> {
    src: &'a PartialMagma,
    tgt: &'a PartialMagma,
    rings: Option<(&'a PartialRing, &'a PartialRing)>,
    mode: Mode,
    order: Vec<Elem>,
    assigned: Vec<Option<Elem>>,
    used: Vec<bool>,
    first_only: bool,
    found: Vec<Homomorphism>,
}

impl Search<'_> {
    fn consistent(&self, a: Elem) -> bool {
        let f = &self.assigned;
        let fa = f[a].unwrap();
        let (src, tgt) = (self.src, self.tgt);
        for x in src.elements() {
            let Some(fx) = f[x] else { continue };
            // sums a + x and x + a
            for (p, q, fp, fq) in [(a, x, fa, fx), (x, a, fx, fa)] {
                match src.add(p, q) {
                    Some(s) => match tgt.add(fp, fq) {
                        None => return false,
                        Some(t) => {
                            if let Some(fs) = f[s] {
                                if fs != t {
                                    return false;
                                }
                            }
                        }
                    },
                    None => {
                        if self.mode == Mode::Iso && tgt.summable(fp, fq) {
                            return false;
                        }
                    }
                }
            }
            // a as a sum x + y with both assigned
            for y in src.elements() {
                let Some(fy) = f[y] else { continue };
                if src.add(x, y) == Some(a) && tgt.add(fx, fy) != Some(fa) {
                    return false;
                }
            }
            if let Some((ra, rb)) = self.rings {
                let p = ra.mul(a, x);
                if let Some(fp) = f[p] {
                    if fp != rb.mul(fa, fx) {
                        return false;
                    }
                }
                for y in src.elements() {
                    let Some(fy) = f[y] else { continue };
                    if ra.mul(x, y) == a && rb.mul(fx, fy) != fa {
                        return false;
                    }
                }
            }
        }
        true
    }

    fn run(&mut self, depth: usize) -> bool {
        if depth == self.order.len() {
            let map = self.assigned.iter().map(|x| x.unwrap()).collect();
            self.found.push(Homomorphism::new(map));
            return self.first_only;
        }
        let a = self.order[depth];
        if let Some(fixed) = self.assigned[a] {
            // zero / one already placed; still needs checking against itself
            let _ = fixed;
            return self.consistent(a) && self.run(depth + 1);
        }
        for b in self.tgt.elements() {
            if self.mode == Mode::Iso && self.used[b] {
                continue;
            }
            self.assigned[a] = Some(b);
            if self.consistent(a) {
                self.used[b] = true;
                let stop = self.run(depth + 1);
                self.used[b] = false;
                if stop {
                    self.assigned[a] = None;
                    return true;
                }
            }
            self.assigned[a] = None;
        }
        false
    }
}

fn search(
    src: &PartialMagma,
    tgt: &PartialMagma,
    rings: Option<(&PartialRing, &PartialRing)>,
    mode: Mode,
    first_only: bool,
) -> Vec<Homomorphism> {
    let n = src.size();
    let mut assigned = vec![None; n];
    let mut used = vec![false; tgt.size()];
    let mut order = vec![src.zero()];
    assigned[src.zero()] = Some(tgt.zero());
    used[tgt.zero()] = true;
    if let Some((ra, rb)) = rings {
        if ra.one() != ra.zero() {
            if mode == Mode::Iso && rb.one() == rb.zero() {
                return Vec::new();
            }
            assigned[ra.one()] = Some(rb.one());
            used[rb.one()] = true;
            order.push(ra.one());
        } else if rb.one() != rb.zero() {
            // 0 = 1 in the source forces 0 = 1 in the target
            return Vec::new();
        }
    }
    let rest: Vec<Elem> = src.elements().filter(|e| !order.contains(e)).collect();
    order.extend(rest);
    let mut s = Search {
        src,
        tgt,
        rings,
        mode,
        order,
        assigned,
        used,
        first_only,
        found: Vec::new(),
    };
    s.run(0);
    s.found.sort();
    s.found
}

/// All magma (equivalently partial monoid) homomorphisms `a -> b`.
pub fn enumerate_magma_homs(
    a: &PartialMagma,
    b: &PartialMagma,
    limit: u128,
) -> Result<Vec<Homomorphism>> {
    let needed = candidate_count(a.size(), b.size());
    if needed > limit {
        return Err(Error::BudgetExceeded {
            what: "homomorphism candidates",
            needed,
            limit,
        });
    }
    Ok(search(a, b, None, Mode::Hom, false))
}

/// All partial ring homomorphisms `a -> b`.
pub fn enumerate_ring_homs(
    a: &PartialRing,
    b: &PartialRing,
    limit: u128,
) -> Result<Vec<Homomorphism>> {
    let needed = candidate_count(a.size(), b.size());
    if needed > limit {
        return Err(Error::BudgetExceeded {
            what: "homomorphism candidates",
            needed,
            limit,
        });
    }
    Ok(search(a.additive(), b.additive(), Some((a, b)), Mode::Hom, false))
}

/// Homomorphisms of the requested kind between two rings; for the magma and
/// monoid kinds only the additive structure is used.
pub fn enumerate_homs(
    a: &PartialRing,
    b: &PartialRing,
    kind: HomKind,
    limit: u128,
) -> Result<Vec<Homomorphism>> {
    match kind {
        HomKind::Magma | HomKind::Monoid => {
            enumerate_magma_homs(a.additive(), b.additive(), limit)
        }
        HomKind::Ring => enumerate_ring_homs(a, b, limit),
    }
}

/// An isomorphism of partial magmas `a -> b` as `map[x_in_a] = y_in_b`.
pub fn find_magma_isomorphism(a: &PartialMagma, b: &PartialMagma) -> Option<Homomorphism> {
    if a.size() != b.size() || !same_profile(a, b) {
        return None;
    }
    search(a, b, None, Mode::Iso, true).into_iter().next()
}

pub fn find_ring_isomorphism(a: &PartialRing, b: &PartialRing) -> Option<Homomorphism> {
    if a.size() != b.size() || !same_profile(a.additive(), b.additive()) {
        return None;
    }
    search(a.additive(), b.additive(), Some((a, b)), Mode::Iso, true)
        .into_iter()
        .next()
}

pub fn magmas_isomorphic(a: &PartialMagma, b: &PartialMagma) -> bool {
    find_magma_isomorphism(a, b).is_some()
}

pub fn rings_isomorphic(a: &PartialRing, b: &PartialRing) -> bool {
    find_ring_isomorphism(a, b).is_some()
}

// Sorted summability degrees, a cheap isomorphism invariant.
fn same_profile(a: &PartialMagma, b: &PartialMagma) -> bool {
    let profile = |m: &PartialMagma| {
        let mut v: Vec<usize> = m
            .elements()
            .map(|x| m.elements().filter(|&y| m.summable(x, y)).count())
            .collect();
        v.sort_unstable();
        v
    };
    profile(a) == profile(b)
}

/// The product `a × b` with componentwise summability; element `(i, j)` has
/// index `i * |b| + j`.
pub fn product_magma(a: &PartialMagma, b: &PartialMagma) -> PartialMagma {
    let m = b.size();
    let names = a
        .elements()
        .flat_map(|i| b.elements().map(move |j| (i, j)))
        .map(|(i, j)| format!("({},{})", a.name(i), b.name(j)))
        .collect();
    PartialMagma::from_fn(names, a.zero() * m + b.zero(), |x, y| {
        let s = a.add(x / m, y / m)?;
        let t = b.add(x % m, y % m)?;
        Some(s * m + t)
    })
}

pub fn product_ring(a: &PartialRing, b: &PartialRing) -> PartialRing {
    let m = b.size();
    let add = product_magma(a.additive(), b.additive());
    PartialRing::from_fn(add, a.one() * m + b.one(), |x, y| {
        a.mul(x / m, y / m) * m + b.mul(x % m, y % m)
    })
}

pub fn projections(a_size: usize, b_size: usize) -> (Homomorphism, Homomorphism) {
    let n = a_size * b_size;
    (
        Homomorphism::new((0..n).map(|x| x / b_size).collect()),
        Homomorphism::new((0..n).map(|x| x % b_size).collect()),
    )
}

/// The partial monoid of homomorphisms `a -> b` with pointwise
/// summability, together with the homomorphisms indexing its carrier.
#[derive(Debug, Clone)]
pub struct HomObject {
    pub monoid: PartialMagma,
    pub homs: Vec<Homomorphism>,
}

/// `Hom(a, b)` where `b` must be a partial monoid.
pub fn hom_object(a: &PartialMagma, b: &PartialMagma, limit: u128) -> Result<HomObject> {
    if !b.is_monoid() {
        return Err(Error::Invalid(
            "partial monoid",
            "pointwise sums into a non-associative target are not homomorphisms".into(),
        ));
    }
    let homs = enumerate_magma_homs(a, b, limit)?;
    let index: std::collections::HashMap<&Vec<Elem>, usize> =
        homs.iter().enumerate().map(|(i, h)| (&h.map, i)).collect();
    let zero = index[&vec![b.zero(); a.size()]];
    let names = homs
        .iter()
        .map(|h| h.render(a.names(), b.names()))
        .collect();
    let monoid = PartialMagma::from_fn(names, zero, |i, j| {
        let sum: Option<Vec<Elem>> = a
            .elements()
            .map(|x| b.add(homs[i].map[x], homs[j].map[x]))
            .collect();
        sum.map(|s| index[&s])
    });
    Ok(HomObject { monoid, homs })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builtins::*;
    use crate::structure::Level;

    const LIM: u128 = DEFAULT_MAP_LIMIT;

    // Exhaustive oracle: every map, filtered by the definition.
    fn brute_magma_homs(a: &PartialMagma, b: &PartialMagma) -> Vec<Homomorphism> {
        let n = a.size();
        let total = b.size().pow(n as u32);
        let mut out = Vec::new();
        for code in 0..total {
            let mut c = code;
            let map: Vec<Elem> = (0..n)
                .map(|_| {
                    let v = c % b.size();
                    c /= b.size();
                    v
                })
                .collect();
            let h = Homomorphism::new(map);
            if h.is_magma_hom(a, b) {
                out.push(h);
            }
        }
        out.sort();
        out
    }

    #[test]
    fn enumerate_homs_examples() {
        let homs = enumerate_homs(&f1(), &f1(), HomKind::Monoid, LIM).unwrap();
        assert_eq!(homs.len(), 2);
        assert_eq!(homs, brute_magma_homs(f1().additive(), f1().additive()));
        assert_eq!(enumerate_homs(&f1(), &f2(), HomKind::Ring, LIM).unwrap().len(), 1);
        assert_eq!(enumerate_homs(&boolean(), &f2(), HomKind::Ring, LIM).unwrap().len(), 0);
    }

    #[test]
    fn backtracking_agrees_with_brute_force() {
        let sample = [f1(), f2(), boolean(), zmod(3), zmod(4), idempotent_pointed(), nilpotent_pointed()];
        for a in &sample {
            for b in &sample {
                let fast = enumerate_magma_homs(a.additive(), b.additive(), LIM).unwrap();
                assert_eq!(fast, brute_magma_homs(a.additive(), b.additive()));
                let ring: Vec<_> = fast.iter().filter(|h| h.is_ring_hom(a, b)).cloned().collect();
                assert_eq!(enumerate_ring_homs(a, b, LIM).unwrap(), ring);
            }
        }
    }

    #[test]
    fn budget_guard() {
        let err = enumerate_homs(&zmod(6), &zmod(6), HomKind::Monoid, 1000).unwrap_err();
        assert!(matches!(err, Error::BudgetExceeded { .. }));
    }

    #[test]
    fn hom_object_examples() {
        let h = hom_object(f1().additive(), f1().additive(), LIM).unwrap();
        assert!(magmas_isomorphic(&h.monoid, f1().additive()));
        let h = hom_object(f1().additive(), f2().additive(), LIM).unwrap();
        assert!(magmas_isomorphic(&h.monoid, f2().additive()));
        for a in [f1(), f2(), boolean(), zmod(3)] {
            let h = hom_object(a.additive(), zero_ring().additive(), LIM).unwrap();
            assert_eq!(h.monoid.size(), 1);
        }
        let h = hom_object(boolean().additive(), zmod(4).additive(), LIM).unwrap();
        assert!(h.monoid.is_monoid());
    }

    #[test]
    fn product_examples() {
        let p = product_ring(&f1(), &f1());
        assert_eq!(p.size(), 4);
        assert!(p.is_valid());
        let e10 = p.elem("(1,0)").unwrap();
        let e01 = p.elem("(0,1)").unwrap();
        let e11 = p.elem("(1,1)").unwrap();
        assert!(p.summable(e10, e01));
        assert!(!p.summable(e10, e11));
        assert!(rings_isomorphic(&product_ring(&zmod(3), &zero_ring()), &zmod(3)));
        let q = product_ring(&f2(), &boolean());
        assert_eq!(q.size(), 4);
        assert!(q.additive().is_total());
        assert!(q.validate(Level::Ring).is_valid());
    }

    #[test]
    fn projections_are_homs_and_pairing_factors_uniquely() {
        let (a, b) = (f2(), boolean());
        let p = product_ring(&a, &b);
        let (pa, pb) = projections(a.size(), b.size());
        assert!(pa.is_ring_hom(&p, &a));
        assert!(pb.is_ring_hom(&p, &b));
        // every pair of homs X -> A, X -> B factors through exactly one X -> A×B
        let x = f1();
        let to_a = enumerate_ring_homs(&x, &a, LIM).unwrap();
        let to_b = enumerate_ring_homs(&x, &b, LIM).unwrap();
        let to_p = enumerate_ring_homs(&x, &p, LIM).unwrap();
        for f in &to_a {
            for g in &to_b {
                let n = to_p.iter().filter(|h| h.then(&pa) == *f && h.then(&pb) == *g).count();
                assert_eq!(n, 1);
            }
        }
    }

    #[test]
    fn isomorphism_search_respects_relabeling() {
        let r = product_ring(&f1(), &f2());
        let perm = vec![0, 3, 1, 2];
        let s = r.permuted(&perm);
        let iso = find_ring_isomorphism(&r, &s).unwrap();
        assert!(iso.is_ring_hom(&r, &s));
        assert!(!rings_isomorphic(&f1(), &boolean()));
        assert!(!magmas_isomorphic(f2().additive(), boolean().additive()));
    }
}
