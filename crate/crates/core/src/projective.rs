//! Points of `P^n` over finite partial fields.
//!
//! Three independent counts: the inclusion–exclusion formula over chart
//! intersections, orbits of nonzero summable `(n+1)`-tuples under unit
//! scaling, and the `n+1` affine charts glued along their overlaps.

use std::collections::BTreeSet;

use itertools::Itertools;

use crate::error::{Error, Result};
use crate::ideal::is_partial_field;
use crate::matrix::{all_tuples, summable_tuples};
use crate::relation::UnionFind;
use crate::structure::PartialRing;
use crate::Elem;

/// Number of elements summable with 1.
pub fn kappa(f: &PartialRing) -> u64 {
    f.elements().filter(|&x| f.summable(f.one(), x)).count() as u64
}

/// `(κ-1)^(r-1) κ^(n-r+1)`, the size of an `r`-fold chart intersection.
pub fn chart_count(f: &PartialRing, n: usize, r: usize) -> u64 {
    assert!((1..=n + 1).contains(&r), "chart index set size out of range");
    let k = kappa(f);
    k.saturating_sub(1).pow(r as u32 - 1) * k.pow((n + 1 - r) as u32)
}

/// `n`-tuples with `1 + x_1 + … + x_n` calculable and `x_1, …, x_(r-1)`
/// nonzero, counted directly.
pub fn chart_count_direct(f: &PartialRing, n: usize, r: usize, limit: u128) -> Result<u64> {
    guard(f, n, limit)?;
    Ok(all_tuples(f, n)
        .filter(|t| t[..r - 1].iter().all(|&x| x != f.zero()))
        .filter(|t| f.sum_multiset(&[&[f.one()], t.as_slice()].concat()).is_some())
        .count() as u64)
}

fn binomial(n: u64, k: u64) -> i128 {
    (0..k).fold(1i128, |acc, i| acc * (n - i) as i128 / (i + 1) as i128)
}

/// Inclusion–exclusion over the `n+1` charts, checked against the closed
/// form `κ^n + … + κ + 1`.
pub fn point_count_formula(f: &PartialRing, n: usize) -> Result<u64> {
    let k = kappa(f) as i128;
    let total: i128 = (1..=n as u64 + 1)
        .map(|i| {
            let sign = if i % 2 == 1 { 1 } else { -1 };
            sign * binomial(n as u64 + 1, i) * (k - 1).pow(i as u32 - 1) * k.pow(n as u32 + 1 - i as u32)
        })
        .sum();
    let closed: i128 = (0..=n as u32).map(|e| k.pow(e)).sum();
    if total != closed {
        return Err(Error::CrossCheck(format!("inclusion-exclusion gives {total}, closed form {closed}")));
    }
    Ok(total as u64)
}

/// A point of `P^n(F)`: a nonzero summable tuple whose first nonzero
/// coordinate is 1.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ProjPoint(pub Vec<Elem>);

impl ProjPoint {
    pub fn render(&self, f: &PartialRing) -> String {
        format!("({})", self.0.iter().map(|&x| f.name(x)).join(":"))
    }
}

fn guard(f: &PartialRing, n: usize, limit: u128) -> Result<()> {
    let needed = (f.size() as u128).checked_pow(n as u32 + 1).unwrap_or(u128::MAX);
    if needed > limit {
        return Err(Error::BudgetExceeded { what: "projective tuples", needed, limit });
    }
    Ok(())
}

fn require_partial_field(f: &PartialRing) -> Result<()> {
    if is_partial_field(f) {
        Ok(())
    } else {
        Err(Error::NotPartialField)
    }
}

fn canonical(f: &PartialRing, t: &[Elem]) -> Option<ProjPoint> {
    let pivot = *t.iter().find(|&&x| x != f.zero())?;
    let inv = f.inverse(pivot).expect("partial field");
    Some(ProjPoint(t.iter().map(|&x| f.mul(inv, x)).collect()))
}

/// Orbits of nonzero summable `(n+1)`-tuples under unit scaling.
pub fn enumerate_points(f: &PartialRing, n: usize, limit: u128) -> Result<Vec<ProjPoint>> {
    require_partial_field(f)?;
    guard(f, n, limit)?;
    let tuples = summable_tuples(f, n + 1, limit)?;
    let points: BTreeSet<ProjPoint> = tuples.tuples.iter().filter_map(|t| canonical(f, t)).collect();
    Ok(points.into_iter().collect())
}

/// Glues the charts `A_i(F)` (tuples with 1 in slot `i`, the rest summable
/// with it) along `v_i ~ v_j` when `v_i[j]` is nonzero and `v_j` is `v_i`
/// rescaled by `v_i[j]⁻¹`. Returns the number of glued points.
pub fn chart_glue_count(f: &PartialRing, n: usize, limit: u128) -> Result<u64> {
    require_partial_field(f)?;
    guard(f, n, limit)?;
    let mut charts: Vec<(usize, Vec<Elem>)> = Vec::new();
    for i in 0..=n {
        for rest in all_tuples(f, n) {
            let mut v = rest.clone();
            v.insert(i, f.one());
            if f.sum_multiset(&v).is_some() {
                charts.push((i, v));
            }
        }
    }
    let mut uf = UnionFind::new(charts.len());
    for (a, (i, v)) in charts.iter().enumerate() {
        for j in (0..=n).filter(|&j| j != *i && v[j] != f.zero()) {
            let inv = f.inverse(v[j]).expect("partial field");
            let w: Vec<Elem> = v.iter().map(|&x| f.mul(inv, x)).collect();
            let b = charts.iter().position(|(k, u)| *k == j && *u == w);
            match b {
                Some(b) => {
                    uf.union(a, b);
                }
                None => {
                    return Err(Error::CrossCheck(format!("chart {i} point has no image in chart {j}")));
                }
            }
        }
    }
    Ok(uf.labels().into_iter().collect::<BTreeSet<_>>().len() as u64)
}

/// Whether the glued charts give the same count as the formula and the
/// orbit enumeration.
pub fn chart_glue_check(f: &PartialRing, n: usize, limit: u128) -> Result<bool> {
    let glued = chart_glue_count(f, n, limit)?;
    Ok(glued == point_count_formula(f, n)? && glued == enumerate_points(f, n, limit)?.len() as u64)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PointCounts {
    pub kappa: u64,
    pub formula: u64,
    pub enumerated: u64,
    pub glued: u64,
}

impl PointCounts {
    pub fn agree(&self) -> bool {
        self.formula == self.enumerated && self.enumerated == self.glued
    }
}

pub fn point_counts(f: &PartialRing, n: usize, limit: u128) -> Result<PointCounts> {
    Ok(PointCounts {
        kappa: kappa(f),
        formula: point_count_formula(f, n)?,
        enumerated: enumerate_points(f, n, limit)?.len() as u64,
        glued: chart_glue_count(f, n, limit)?,
    })
}
