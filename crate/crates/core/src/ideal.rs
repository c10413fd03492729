//! Ideals of finite partial rings: generation, sums, products, pullback and
//! pushforward, primes, radicals, local rings, partial fields, goodness.

use std::collections::{BTreeSet, VecDeque};

use crate::error::Result;
use crate::matrix::{strongly_summable, summable_tuples};
use crate::morphism::Homomorphism;
use crate::structure::PartialRing;
use crate::Elem;

/// An ideal as a sorted set of elements.
pub type Ideal = BTreeSet<Elem>;

pub fn render_ideal(a: &PartialRing, i: &Ideal) -> String {
    let names: Vec<&str> = i.iter().map(|&x| a.name(x)).collect();
    format!("{{{}}}", names.join(", "))
}

pub fn whole(a: &PartialRing) -> Ideal {
    a.elements().collect()
}

/// Contains 0, closed under defined sums, absorbing.
pub fn is_ideal(a: &PartialRing, s: &BTreeSet<Elem>) -> bool {
    s.contains(&a.zero())
        && s.iter().all(|&x| s.iter().all(|&y| a.add(x, y).is_none_or(|z| s.contains(&z))))
        && s.iter().all(|&x| a.elements().all(|c| s.contains(&a.mul(c, x))))
}

/// Least superset of `seed` containing 0 that is closed under defined sums
/// and, if `absorbing`, under multiplication by the ring.
fn close(a: &PartialRing, seed: impl IntoIterator<Item = Elem>, absorbing: bool) -> BTreeSet<Elem> {
    let mut set: BTreeSet<Elem> = seed.into_iter().collect();
    set.insert(a.zero());
    let mut queue: VecDeque<Elem> = set.iter().copied().collect();
    while let Some(x) = queue.pop_front() {
        let mut new = Vec::new();
        if absorbing {
            new.extend(a.elements().map(|c| a.mul(c, x)));
        }
        new.extend(set.iter().filter_map(|&y| a.add(x, y)));
        for z in new {
            if set.insert(z) {
                queue.push_back(z);
            }
        }
    }
    set
}

/// `(T)`: the smallest ideal containing `t`.
pub fn ideal_generated(a: &PartialRing, t: impl IntoIterator<Item = Elem>) -> Ideal {
    close(a, t, true)
}

pub fn ideal_sum(a: &PartialRing, i: &Ideal, j: &Ideal) -> Ideal {
    ideal_generated(a, i.iter().chain(j).copied())
}

/// `IJ`: all defined sums of products `x y` with `x ∈ I`, `y ∈ J`.
pub fn ideal_product(a: &PartialRing, i: &Ideal, j: &Ideal) -> Ideal {
    let products = i.iter().flat_map(|&x| j.iter().map(move |&y| a.mul(x, y)));
    let p = close(a, products, false);
    debug_assert!(is_ideal(a, &p));
    p
}

pub fn intersection(i: &Ideal, j: &Ideal) -> Ideal {
    i.intersection(j).copied().collect()
}

/// `φ*(J) = φ⁻¹(J)`.
pub fn pullback_ideal(phi: &Homomorphism, a: &PartialRing, j: &Ideal) -> Ideal {
    a.elements().filter(|&x| j.contains(&phi.apply(x))).collect()
}

/// `φ_*(I)`: the smallest ideal of `b` containing `φ(I)`.
pub fn pushforward_ideal(phi: &Homomorphism, b: &PartialRing, i: &Ideal) -> Ideal {
    ideal_generated(b, i.iter().map(|&x| phi.apply(x)))
}

pub fn is_prime(a: &PartialRing, i: &Ideal) -> bool {
    !i.contains(&a.one())
        && a.elements().all(|x| {
            i.contains(&x) || a.elements().all(|y| i.contains(&y) || !i.contains(&a.mul(x, y)))
        })
}

/// Every ideal of `a`, sorted. Each ideal is generated by its elements, so
/// adding one generator at a time from `(0)` reaches all of them.
pub fn all_ideals(a: &PartialRing) -> Vec<Ideal> {
    let start = ideal_generated(a, []);
    let mut seen: BTreeSet<Ideal> = BTreeSet::from([start.clone()]);
    let mut queue = VecDeque::from([start]);
    while let Some(i) = queue.pop_front() {
        for x in a.elements().filter(|x| !i.contains(x)) {
            let j = ideal_generated(a, i.iter().copied().chain([x]));
            if seen.insert(j.clone()) {
                queue.push_back(j);
            }
        }
    }
    seen.into_iter().collect()
}

pub fn primes(a: &PartialRing) -> Vec<Ideal> {
    all_ideals(a).into_iter().filter(|i| is_prime(a, i)).collect()
}

/// Proper ideals not strictly contained in another proper ideal.
pub fn maximal_ideals(a: &PartialRing) -> Vec<Ideal> {
    let proper: Vec<Ideal> = all_ideals(a).into_iter().filter(|i| !i.contains(&a.one())).collect();
    proper
        .iter()
        .filter(|i| !proper.iter().any(|j| j.len() > i.len() && i.is_subset(j)))
        .cloned()
        .collect()
}

/// `√I = {x : x^r ∈ I for some r ≥ 1}`. Powers of `x` become periodic
/// within `|A|` steps, so `r ≤ |A|` suffices.
pub fn radical(a: &PartialRing, i: &Ideal) -> Ideal {
    a.elements()
        .filter(|&x| {
            let mut p = x;
            for _ in 0..a.size() {
                if i.contains(&p) {
                    return true;
                }
                p = a.mul(p, x);
            }
            false
        })
        .collect()
}

/// Intersection of the primes containing `I`; the whole ring if none do.
pub fn radical_via_primes(a: &PartialRing, i: &Ideal) -> Ideal {
    primes(a)
        .into_iter()
        .filter(|p| i.is_subset(p))
        .fold(whole(a), |acc, p| intersection(&acc, &p))
}

/// The unique maximal ideal, if `a` is local.
pub fn is_local(a: &PartialRing) -> Option<Ideal> {
    let mut m = maximal_ideals(a);
    (m.len() == 1).then(|| m.pop().expect("one element"))
}

/// Every nonzero element is a unit (and `0 ≠ 1`).
pub fn is_partial_field(a: &PartialRing) -> bool {
    !a.is_zero_ring() && a.elements().filter(|&x| x != a.zero()).all(|x| a.is_unit(x))
}

/// `A_k = A_(k)` for every `k ≤ n`.
pub fn is_good(a: &PartialRing, n: usize, limit: u128) -> Result<bool> {
    for k in 1..=n {
        if summable_tuples(a, k, limit)? != strongly_summable(a, k, limit)? {
            return Ok(false);
        }
    }
    Ok(true)
}
