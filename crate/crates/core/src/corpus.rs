//! Exhaustive and named collections of small structures used as test
//! corpora: all partial monoids and partial rings of a given small order
//! (labelled or up to isomorphism), plus a list of named rings.

use std::collections::BTreeSet;

use itertools::Itertools;

use crate::builtins::*;
use crate::morphism::product_ring;
use crate::structure::{Level, PartialMagma, PartialRing};
use crate::Elem;

fn numbered(n: usize) -> Vec<String> {
    (0..n).map(|i| i.to_string()).collect()
}

/// Every commutative magma on `{0..n}` with zero `0`: one choice (undefined
/// or a value) per unordered pair of nonzero elements.
pub fn commutative_magmas(n: usize) -> impl Iterator<Item = PartialMagma> {
    let cells: Vec<(Elem, Elem)> = (1..n).flat_map(|a| (a..n).map(move |b| (a, b))).collect();
    (0..cells.len())
        .map(|_| 0..=n)
        .multi_cartesian_product()
        .map(move |choice| {
            let mut table = vec![None; n * n];
            for x in 0..n {
                table[x] = Some(x);
                table[x * n] = Some(x);
            }
            for (&(a, b), &c) in cells.iter().zip(&choice) {
                let v = (c < n).then_some(c);
                table[a * n + b] = v;
                table[b * n + a] = v;
            }
            PartialMagma::new(numbered(n), 0, table).expect("in range")
        })
}

/// All partial monoids on `{0..n}` with zero `0` (labelled), in the same
/// order as [`commutative_magmas`]. Backtracks over the cells, pruning as
/// soon as a fully assigned triple breaks strict associativity.
pub fn labelled_monoids(n: usize) -> Vec<PartialMagma> {
    let cells: Vec<(Elem, Elem)> = (1..n).flat_map(|a| (a..n).map(move |b| (a, b))).collect();
    let mut slot = vec![usize::MAX; n * n];
    for (k, &(a, b)) in cells.iter().enumerate() {
        slot[a * n + b] = k;
        slot[b * n + a] = k;
    }
    let mut search = MonoidSearch { n, cells: &cells, slot, values: Vec::new(), out: Vec::new() };
    search.extend();
    search.out
}

/// Cell values during the search: `n` stands for undefined.
struct MonoidSearch<'a> {
    n: usize,
    cells: &'a [(Elem, Elem)],
    slot: Vec<usize>,
    values: Vec<usize>,
    out: Vec<PartialMagma>,
}

/// A sum during the search: not yet assigned, undefined, or a value.
#[derive(PartialEq, Eq)]
enum Partial {
    Unknown,
    Undefined,
    Value(Elem),
}

impl MonoidSearch<'_> {
    fn get(&self, a: Elem, b: Elem) -> Partial {
        if a == 0 || b == 0 {
            return Partial::Value(a.max(b));
        }
        match self.values.get(self.slot[a * self.n + b]) {
            None => Partial::Unknown,
            Some(&v) if v == self.n => Partial::Undefined,
            Some(&v) => Partial::Value(v),
        }
    }

    fn then(&self, x: Partial, c: Elem, left: bool) -> Partial {
        match x {
            Partial::Value(v) if left => self.get(v, c),
            Partial::Value(v) => self.get(c, v),
            other => other,
        }
    }

    fn associative_so_far(&self) -> bool {
        let n = self.n;
        (1..n).all(|a| {
            (1..n).all(|b| {
                (1..n).all(|c| {
                    let lhs = self.then(self.get(a, b), c, true);
                    let rhs = self.then(self.get(b, c), a, false);
                    lhs == Partial::Unknown || rhs == Partial::Unknown || lhs == rhs
                })
            })
        })
    }

    fn extend(&mut self) {
        if self.values.len() == self.cells.len() {
            let n = self.n;
            let table = (0..n * n)
                .map(|i| match self.get(i / n, i % n) {
                    Partial::Value(v) => Some(v),
                    _ => None,
                })
                .collect();
            let m = PartialMagma::new(numbered(n), 0, table).expect("in range");
            debug_assert!(m.is_monoid());
            self.out.push(m);
            return;
        }
        for v in 0..=self.n {
            self.values.push(v);
            if self.associative_so_far() {
                self.extend();
            }
            self.values.pop();
        }
    }
}

fn magma_code(m: &PartialMagma, perm: &[Elem]) -> Vec<u8> {
    // perm[old] = new; read the table in the new order
    let n = m.size();
    let mut inv = vec![0; n];
    for (old, &new) in perm.iter().enumerate() {
        inv[new] = old;
    }
    let mut code = Vec::with_capacity(n * n);
    for x in 0..n {
        for y in 0..n {
            code.push(m.add(inv[x], inv[y]).map_or(u8::MAX, |s| perm[s] as u8));
        }
    }
    code
}

/// Permutations of `{0..n}` fixing the given element list in place.
fn perms_fixing(n: usize, fixed: &[Elem]) -> Vec<Vec<Elem>> {
    let free: Vec<Elem> = (0..n).filter(|x| !fixed.contains(x)).collect();
    free.iter()
        .copied()
        .permutations(free.len())
        .map(|image| {
            let mut p: Vec<Elem> = (0..n).collect();
            for (&src, &dst) in free.iter().zip(&image) {
                p[src] = dst;
            }
            p
        })
        .collect()
}

/// Relabels so that zero is 0 and the table is lexicographically least.
pub fn canonical_magma(m: &PartialMagma) -> PartialMagma {
    let n = m.size();
    let to_front = move_to_front(n, &[m.zero()]);
    let m = m.permuted(&to_front).with_names(numbered(n)).expect("fresh names");
    let best = perms_fixing(n, &[0])
        .into_iter()
        .min_by_key(|p| magma_code(&m, p))
        .expect("identity");
    m.permuted(&best).with_names(numbered(n)).expect("fresh names")
}

fn move_to_front(n: usize, front: &[Elem]) -> Vec<Elem> {
    let mut order: Vec<Elem> = front.to_vec();
    order.extend((0..n).filter(|x| !front.contains(x)));
    // order[new] = old; invert to perm[old] = new
    let mut perm = vec![0; n];
    for (new, &old) in order.iter().enumerate() {
        perm[old] = new;
    }
    perm
}

/// Partial monoids of order `n` up to isomorphism.
pub fn monoids_up_to_iso(n: usize) -> Vec<PartialMagma> {
    let set: BTreeSet<Vec<u8>> = labelled_monoids(n)
        .iter()
        .map(|m| magma_code(&canonical_magma(m), &(0..n).collect::<Vec<_>>()))
        .collect();
    set.into_iter().map(|code| decode_magma(n, &code)).collect()
}

fn decode_magma(n: usize, code: &[u8]) -> PartialMagma {
    let table = code.iter().map(|&c| (c != u8::MAX).then_some(c as Elem)).collect();
    PartialMagma::new(numbered(n), 0, table).expect("in range")
}

fn ring_code(r: &PartialRing, perm: &[Elem]) -> Vec<u8> {
    let n = r.size();
    let mut inv = vec![0; n];
    for (old, &new) in perm.iter().enumerate() {
        inv[new] = old;
    }
    let mut code = magma_code(r.additive(), perm);
    for x in 0..n {
        for y in 0..n {
            code.push(perm[r.mul(inv[x], inv[y])] as u8);
        }
    }
    code
}

/// Relabels so that zero is 0, one is 1 (unless `0 = 1`) and the tables
/// are lexicographically least.
pub fn canonical_ring(r: &PartialRing) -> PartialRing {
    let n = r.size();
    let front: Vec<Elem> = if r.zero() == r.one() { vec![r.zero()] } else { vec![r.zero(), r.one()] };
    let r = r.permuted(&move_to_front(n, &front)).with_names(numbered(n)).expect("fresh names");
    let fixed: Vec<Elem> = (0..front.len()).collect();
    let best = perms_fixing(n, &fixed)
        .into_iter()
        .min_by_key(|p| ring_code(&r, p))
        .expect("identity");
    r.permuted(&best).with_names(numbered(n)).expect("fresh names")
}

/// Partial rings of order `n` up to isomorphism, found by extending each
/// monoid (up to isomorphism) with every admissible multiplication.
pub fn rings_up_to_iso(n: usize) -> Vec<PartialRing> {
    if n == 1 {
        return vec![zero_ring()];
    }
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for m in monoids_up_to_iso(n) {
        for one in 1..n {
            for r in multiplications(&m, one) {
                let c = canonical_ring(&r);
                if seen.insert(ring_code(&c, &(0..n).collect::<Vec<_>>())) {
                    out.push(c);
                }
            }
        }
    }
    out
}

/// Every valid ring multiplication on `m` with unit `one`, by backtracking
/// over the free cells with associativity and bilinearity pruning.
fn multiplications(m: &PartialMagma, one: Elem) -> Vec<PartialRing> {
    let n = m.size();
    let z = m.zero();
    let free: Vec<(Elem, Elem)> = (0..n)
        .filter(|&x| x != z && x != one)
        .tuple_combinations()
        .chain((0..n).filter(|&x| x != z && x != one).map(|x| (x, x)))
        .collect();
    let mut slot = vec![usize::MAX; n * n];
    for (k, &(a, b)) in free.iter().enumerate() {
        slot[a * n + b] = k;
        slot[b * n + a] = k;
    }
    let mut search = MulSearch { m, one, free: &free, slot, values: Vec::new(), out: Vec::new() };
    search.extend();
    search.out
}

struct MulSearch<'a> {
    m: &'a PartialMagma,
    one: Elem,
    free: &'a [(Elem, Elem)],
    slot: Vec<usize>,
    values: Vec<Elem>,
    out: Vec<PartialRing>,
}

impl MulSearch<'_> {
    fn get(&self, a: Elem, b: Elem) -> Option<Elem> {
        let z = self.m.zero();
        if a == z || b == z {
            Some(z)
        } else if a == self.one {
            Some(b)
        } else if b == self.one {
            Some(a)
        } else {
            self.values.get(self.slot[a * self.m.size() + b]).copied()
        }
    }

    fn consistent(&self) -> bool {
        let n = self.m.size();
        for a in 0..n {
            for b in 0..n {
                let Some(ab) = self.get(a, b) else { continue };
                for c in 0..n {
                    let lhs = self.get(ab, c);
                    let rhs = self.get(b, c).and_then(|bc| self.get(a, bc));
                    if let (Some(l), Some(r)) = (lhs, rhs) {
                        if l != r {
                            return false;
                        }
                    }
                    // (a, b) summable: a c + b c = (a + b) c
                    if let Some(s) = self.m.add(a, b) {
                        if let (Some(ac), Some(bc), Some(sc)) = (self.get(a, c), self.get(b, c), self.get(s, c)) {
                            if self.m.add(ac, bc) != Some(sc) {
                                return false;
                            }
                        }
                    }
                }
            }
        }
        true
    }

    fn extend(&mut self) {
        let n = self.m.size();
        if self.values.len() == self.free.len() {
            let mul = (0..n * n).map(|i| self.get(i / n, i % n).expect("all assigned")).collect();
            let r = PartialRing::new(self.m.clone(), self.one, mul).expect("in range");
            if r.validate(Level::Ring).is_valid() {
                self.out.push(r);
            }
            return;
        }
        for v in 0..n {
            self.values.push(v);
            if self.consistent() {
                self.extend();
            }
            self.values.pop();
        }
    }
}

/// Named rings used across the test suites, with their display names.
pub fn named_rings() -> Vec<(&'static str, PartialRing)> {
    vec![
        ("zero", zero_ring()),
        ("F1", f1()),
        ("F2", f2()),
        ("BOOL", boolean()),
        ("Z3", zmod(3)),
        ("Z4", zmod(4)),
        ("Z5", zmod(5)),
        ("Z6", zmod(6)),
        ("F1xF1", product_ring(&f1(), &f1())),
        ("F1xF2", product_ring(&f1(), &f2())),
        ("F1xBOOL", product_ring(&f1(), &boolean())),
        ("BOOLxBOOL", product_ring(&boolean(), &boolean())),
        ("F2xF2", product_ring(&f2(), &f2())),
        ("F1xZ3", product_ring(&f1(), &zmod(3))),
        ("idempotent", idempotent_pointed()),
        ("nilpotent", nilpotent_pointed()),
    ]
}

/// The named rings plus every ring of order at most `max_enumerated`,
/// keeping at most `max_size` elements overall.
pub fn ring_corpus(max_enumerated: usize, max_size: usize) -> Vec<(String, PartialRing)> {
    let mut out: Vec<(String, PartialRing)> = named_rings()
        .into_iter()
        .filter(|(_, r)| r.size() <= max_size)
        .map(|(n, r)| (n.to_string(), r))
        .collect();
    for n in 1..=max_enumerated.min(max_size) {
        for (i, r) in rings_up_to_iso(n).into_iter().enumerate() {
            out.push((format!("R{n}.{i}"), r));
        }
    }
    out
}

/// All `2 × 2` tables over a two-element carrier, for every zero choice and
/// every partial addition table (no axioms assumed).
pub fn order_two_tables() -> Vec<PartialMagma> {
    let names = vec!["p".to_string(), "q".to_string()];
    let mut out = Vec::new();
    for zero in 0..2 {
        for cells in (0..4).map(|_| 0..3usize).multi_cartesian_product() {
            let table = cells.iter().map(|&c| (c < 2).then_some(c)).collect();
            out.push(PartialMagma::new(names.clone(), zero, table).expect("in range"));
        }
    }
    out
}
