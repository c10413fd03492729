//! Summable tuples and matrices over a partial ring.

use std::collections::BTreeSet;
use std::fmt;

use itertools::Itertools;

use crate::error::{Error, Result};
use crate::structure::PartialRing;
use crate::Elem;

/// A set of `n`-tuples: either `A_n` (summable) or `A_(n)` (summable after
/// any coordinatewise scaling).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SummableTupleSet {
    pub arity: usize,
    pub tuples: BTreeSet<Vec<Elem>>,
}

impl SummableTupleSet {
    pub fn contains(&self, t: &[Elem]) -> bool {
        self.tuples.contains(t)
    }

    pub fn len(&self) -> usize {
        self.tuples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tuples.is_empty()
    }
}

fn guard(what: &'static str, base: usize, exp: usize, limit: u128) -> Result<()> {
    let needed = (base as u128).checked_pow(exp as u32).unwrap_or(u128::MAX);
    if needed > limit {
        return Err(Error::BudgetExceeded { what, needed, limit });
    }
    Ok(())
}

pub fn all_tuples(a: &PartialRing, n: usize) -> impl Iterator<Item = Vec<Elem>> + '_ {
    (0..n).map(|_| a.elements()).multi_cartesian_product()
}

/// `A_n`.
pub fn summable_tuples(a: &PartialRing, n: usize, limit: u128) -> Result<SummableTupleSet> {
    guard("tuple candidates", a.size(), n, limit)?;
    let tuples = all_tuples(a, n).filter(|t| a.sum_multiset(t).is_some()).collect();
    Ok(SummableTupleSet { arity: n, tuples })
}

/// `A_(n)`.
pub fn strongly_summable(a: &PartialRing, n: usize, limit: u128) -> Result<SummableTupleSet> {
    guard("scaled tuple candidates", a.size(), 2 * n, limit)?;
    let scalars: Vec<Vec<Elem>> = all_tuples(a, n).collect();
    let tuples = all_tuples(a, n)
        .filter(|t| {
            scalars.iter().all(|c| {
                let scaled: Vec<Elem> = c.iter().zip(t).map(|(&ci, &ti)| a.mul(ci, ti)).collect();
                a.sum_multiset(&scaled).is_some()
            })
        })
        .collect();
    Ok(SummableTupleSet { arity: n, tuples })
}

/// A rectangular matrix over a partial ring, row-major.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PartialMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Elem>,
}

impl fmt::Debug for PartialMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = (0..self.rows)
            .map(|i| self.row(i).iter().map(|e| e.to_string()).join(" "))
            .collect();
        write!(f, "[{}]", rows.join("; "))
    }
}

impl PartialMatrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<Elem>) -> Self {
        assert_eq!(entries.len(), rows * cols, "matrix shape");
        Self { rows, cols, entries }
    }

    pub fn from_rows(rows: &[Vec<Elem>]) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        Self::new(rows.len(), cols, rows.concat())
    }

    pub fn identity(a: &PartialRing, n: usize) -> Self {
        let entries = (0..n * n).map(|k| if k / n == k % n { a.one() } else { a.zero() }).collect();
        Self::new(n, n, entries)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> Elem {
        self.entries[i * self.cols + j]
    }

    pub fn row(&self, i: usize) -> &[Elem] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn entries(&self) -> &[Elem] {
        &self.entries
    }

    /// Rows in `A_n`, i.e. an element of `M'_{m,n}(A)`.
    pub fn rows_summable(&self, a: &PartialRing) -> bool {
        (0..self.rows).all(|i| a.sum_multiset(self.row(i)).is_some())
    }

    pub fn render(&self, a: &PartialRing) -> String {
        let rows: Vec<String> = (0..self.rows)
            .map(|i| self.row(i).iter().map(|&e| a.name(e)).join(" "))
            .collect();
        format!("[{}]", rows.join("; "))
    }
}

/// The product in `M'`: defined iff every entry `Σ_k c_ik d_kj` is a
/// summable multiset and every row of the result lies in `A_n`.
pub fn mat_mul(a: &PartialRing, c: &PartialMatrix, d: &PartialMatrix) -> Option<PartialMatrix> {
    assert_eq!(c.cols, d.rows, "shape mismatch");
    let mut entries = Vec::with_capacity(c.rows * d.cols);
    let mut terms = Vec::with_capacity(c.cols);
    for i in 0..c.rows {
        for j in 0..d.cols {
            terms.clear();
            terms.extend((0..c.cols).map(|k| a.mul(c.get(i, k), d.get(k, j))));
            entries.push(a.sum_multiset(&terms)?);
        }
    }
    let out = PartialMatrix::new(c.rows, d.cols, entries);
    out.rows_summable(a).then_some(out)
}

/// All of `M'_n(A)`, built row by row from `A_n`.
pub fn m_prime(a: &PartialRing, n: usize, limit: u128) -> Result<Vec<PartialMatrix>> {
    let rows: Vec<Vec<Elem>> = summable_tuples(a, n, limit)?.tuples.into_iter().collect();
    guard("matrix candidates", rows.len(), n, limit)?;
    Ok((0..n)
        .map(|_| rows.iter())
        .multi_cartesian_product()
        .map(|rs| PartialMatrix::from_rows(&rs.into_iter().cloned().collect::<Vec<_>>()))
        .collect())
}
