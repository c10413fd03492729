//! Localization `S⁻¹A` at a multiplicative subset.
//!
//! `a/s = b/t` iff `uta = usb` for some `u ∈ S`; `(a/s, b/t)` is summable
//! iff `(uta, usb) ∈ A_2` for some representatives and some `u ∈ S`, with
//! sum `(uta + usb)/(ust)`; `(a/s)(b/t) = ab/st`.

use std::collections::BTreeSet;

use crate::closure::dedupe_names;
use crate::error::{Error, Result};
use crate::ideal::Ideal;
use crate::morphism::Homomorphism;
use crate::relation::UnionFind;
use crate::structure::{Level, PartialMagma, PartialRing};
use crate::Elem;

#[derive(Debug, Clone)]
pub struct LocalizedRing {
    pub ring: PartialRing,
    /// `λ(a) = a/1`.
    pub lambda: Homomorphism,
    /// The multiplicative subset, sorted with `1` first.
    pub subset: Vec<Elem>,
    /// `class[a * |S| + k]` is the element `a / subset[k]`.
    class: Vec<Elem>,
    n: usize,
}

impl LocalizedRing {
    /// The element `a/s`, if `s ∈ S`.
    pub fn fraction(&self, a: Elem, s: Elem) -> Option<Elem> {
        let k = self.subset.iter().position(|&x| x == s)?;
        Some(self.class[a * self.subset.len() + k])
    }

    /// Representatives `(a, s)` of the element `x`.
    pub fn representatives(&self, x: Elem) -> Vec<(Elem, Elem)> {
        let m = self.subset.len();
        (0..self.n * m)
            .filter(|&i| self.class[i] == x)
            .map(|i| (i / m, self.subset[i % m]))
            .collect()
    }
}

pub fn is_multiplicative_subset(a: &PartialRing, s: &BTreeSet<Elem>) -> bool {
    s.contains(&a.one()) && s.iter().all(|&x| s.iter().all(|&y| s.contains(&a.mul(x, y))))
}

/// The least multiplicative subset containing `gens`.
pub fn multiplicative_closure(a: &PartialRing, gens: impl IntoIterator<Item = Elem>) -> BTreeSet<Elem> {
    let mut s: BTreeSet<Elem> = gens.into_iter().collect();
    s.insert(a.one());
    loop {
        let new: Vec<Elem> = s
            .iter()
            .flat_map(|&x| s.iter().map(move |&y| a.mul(x, y)))
            .filter(|z| !s.contains(z))
            .collect();
        if new.is_empty() {
            return s;
        }
        s.extend(new);
    }
}

/// Every multiplicative subset of `a`.
pub fn multiplicative_subsets(a: &PartialRing) -> Vec<BTreeSet<Elem>> {
    let n = a.size();
    (0u64..1 << n)
        .map(|mask| (0..n).filter(|&x| mask >> x & 1 == 1).collect::<BTreeSet<Elem>>())
        .filter(|s| is_multiplicative_subset(a, s))
        .collect()
}

/// `A ∖ p`.
pub fn complement(a: &PartialRing, p: &Ideal) -> BTreeSet<Elem> {
    a.elements().filter(|x| !p.contains(x)).collect()
}

/// `S⁻¹A` with `λ: A → S⁻¹A`.
pub fn localize(a: &PartialRing, s: &BTreeSet<Elem>) -> Result<LocalizedRing> {
    if !is_multiplicative_subset(a, s) {
        return Err(Error::Invalid("localization", "subset is not multiplicative".into()));
    }
    let mut subset: Vec<Elem> = vec![a.one()];
    subset.extend(s.iter().copied().filter(|&x| x != a.one()));
    let (n, m) = (a.size(), subset.len());
    let idx = |x: Elem, k: usize| x * m + k;
    let pos = |x: Elem| subset.iter().position(|&y| y == x).expect("closed under products");

    // pairs ordered by denominator first, so that the images of λ come first
    let order: Vec<(Elem, usize)> = (0..m).flat_map(|k| (0..n).map(move |x| (x, k))).collect();
    let mut uf = UnionFind::new(n * m);
    for (i, &(x, k)) in order.iter().enumerate() {
        for &(y, l) in &order[i + 1..] {
            let (sx, sy) = (subset[k], subset[l]);
            if subset.iter().any(|&u| a.mul(a.mul(u, sy), x) == a.mul(a.mul(u, sx), y)) {
                uf.union(idx(x, k), idx(y, l));
            }
        }
    }
    let mut label = vec![usize::MAX; n * m];
    let mut reps: Vec<(Elem, usize)> = Vec::new();
    let mut roots: Vec<usize> = Vec::new();
    for &(x, k) in &order {
        let r = uf.find(idx(x, k));
        let c = match roots.iter().position(|&q| q == r) {
            Some(c) => c,
            None => {
                roots.push(r);
                reps.push((x, k));
                roots.len() - 1
            }
        };
        label[idx(x, k)] = c;
    }
    let size = reps.len();
    let members: Vec<Vec<(Elem, usize)>> =
        (0..size).map(|c| order.iter().copied().filter(|&(x, k)| label[idx(x, k)] == c).collect()).collect();

    let mut table: Vec<Option<Elem>> = vec![None; size * size];
    for c in 0..size {
        for d in c..size {
            let mut value: Option<Elem> = None;
            for &(x, k) in &members[c] {
                for &(y, l) in &members[d] {
                    let (sx, sy) = (subset[k], subset[l]);
                    for &u in &subset {
                        let Some(sum) = a.add(a.mul(a.mul(u, sy), x), a.mul(a.mul(u, sx), y)) else {
                            continue;
                        };
                        let v = label[idx(sum, pos(a.mul(u, a.mul(sx, sy))))];
                        if value.is_some_and(|w| w != v) {
                            return Err(Error::Invalid(
                                "localization",
                                format!("sum of classes {c} and {d} depends on representatives"),
                            ));
                        }
                        value = Some(v);
                    }
                }
            }
            table[c * size + d] = value;
            table[d * size + c] = value;
        }
    }

    let mut names: Vec<String> = reps
        .iter()
        .map(|&(x, k)| if k == 0 { a.name(x).to_string() } else { format!("{}/{}", a.name(x), a.name(subset[k])) })
        .collect();
    dedupe_names(&mut names);
    let zero = label[idx(a.zero(), 0)];
    let one = label[idx(a.one(), 0)];
    let additive = PartialMagma::new(names, zero, table)?;
    let ring = PartialRing::from_fn(additive, one, |c, d| {
        let ((x, k), (y, l)) = (reps[c], reps[d]);
        label[idx(a.mul(x, y), pos(a.mul(subset[k], subset[l])))]
    });
    let report = ring.validate(Level::Ring);
    if !report.is_valid() {
        return Err(Error::Invalid("localization", report.render(ring.names())));
    }
    let lambda = Homomorphism::new((0..n).map(|x| label[idx(x, 0)]).collect());
    Ok(LocalizedRing { ring, lambda, subset, class: label, n })
}

/// `{x : sx ∈ I for some s ∈ S}`, the ideal `λ*λ_*(I)` of `A`.
pub fn saturation(a: &PartialRing, s: &BTreeSet<Elem>, i: &Ideal) -> Ideal {
    a.elements().filter(|&x| s.iter().any(|&t| i.contains(&a.mul(t, x)))).collect()
}
