//! Named partial rings and a few families of partial monoids used throughout
//! the tests and the CLI.

use crate::structure::{PartialMagma, PartialRing};
use crate::Elem;

fn numbered(n: usize) -> Vec<String> {
    (0..n).map(|i| i.to_string()).collect()
}

/// `{0, 1}` with `1 + 1` undefined.
pub fn f1() -> PartialRing {
    let add = PartialMagma::from_fn(numbered(2), 0, |a, b| match (a, b) {
        (1, 1) => None,
        _ => Some(a | b),
    });
    PartialRing::from_fn(add, 1, |a, b| a & b)
}

/// `Z/2`.
pub fn f2() -> PartialRing {
    zmod(2)
}

/// `{0, 1}` with `1 + 1 = 1`.
pub fn boolean() -> PartialRing {
    let add = PartialMagma::from_fn(numbered(2), 0, |a, b| Some(a | b));
    PartialRing::from_fn(add, 1, |a, b| a & b)
}

/// `Z/k` with total addition. `k = 1` is the zero ring.
pub fn zmod(k: usize) -> PartialRing {
    assert!(k >= 1);
    let add = PartialMagma::from_fn(numbered(k), 0, |a, b| Some((a + b) % k));
    PartialRing::from_fn(add, 1 % k, |a, b| (a * b) % k)
}

pub fn zero_ring() -> PartialRing {
    zmod(1)
}

/// `{0, 1, e}` with only trivial sums and `e * e = e`.
pub fn idempotent_pointed() -> PartialRing {
    let add = PartialMagma::from_fn(
        vec!["0".into(), "1".into(), "e".into()],
        0,
        trivial_sum,
    );
    PartialRing::from_fn(add, 1, |a, b| match (a, b) {
        (0, _) | (_, 0) => 0,
        (1, x) | (x, 1) => x,
        _ => 2,
    })
}

/// `{0, 1, e}` with only trivial sums and `e * e = 0`.
pub fn nilpotent_pointed() -> PartialRing {
    let add = PartialMagma::from_fn(
        vec!["0".into(), "1".into(), "e".into()],
        0,
        trivial_sum,
    );
    PartialRing::from_fn(add, 1, |a, b| match (a, b) {
        (0, _) | (_, 0) => 0,
        (1, x) | (x, 1) => x,
        _ => 0,
    })
}

fn trivial_sum(a: Elem, b: Elem) -> Option<Elem> {
    match (a, b) {
        (0, x) | (x, 0) => Some(x),
        _ => None,
    }
}

/// A based set `{0, 1, .., k-1}` with only the sums involving zero.
pub fn based_set(k: usize) -> PartialMagma {
    PartialMagma::from_fn(numbered(k), 0, trivial_sum)
}

/// `{0, 1, .., k}` with `a + b` defined iff `a + b <= k`.
pub fn truncated(k: usize) -> PartialMagma {
    PartialMagma::from_fn(numbered(k + 1), 0, |a, b| (a + b <= k).then_some(a + b))
}
