//! Associative closure by saturation inside a finitely presented monoid.
//!
//! Starting from a partial submagma `B` of a commutative monoid `M` (given
//! as words of a [`CommPresentation`]), repeatedly pick triples `(a, b, c)`
//! where `(a + b) + c` can be calculated, adjoin `b + c` and the pairs
//! `(b, c)`, `(c, b)`, `(a, b + c)`, `(b + c, a)`, until nothing changes.
//! The result is the smallest partial submonoid of `M` containing `B`.

use std::collections::{BTreeMap, HashMap};

use crate::error::{Error, Result};
use crate::morphism::Homomorphism;
use crate::structure::{Level, PartialMagma};
use crate::words::{CommPresentation, Lookup, Word};
use crate::{Budget, Elem};

/// A finite partial submagma of a presented monoid under construction.
/// Element 0 is always the empty word.
pub(crate) struct Saturation<'p> {
    pres: &'p CommPresentation,
    budget: Budget,
    reps: Vec<Word>,
    canonical: HashMap<Word, usize>,
    known: HashMap<Word, usize>,
    pub(crate) sums: BTreeMap<(usize, usize), usize>,
}

impl<'p> Saturation<'p> {
    pub(crate) fn new(pres: &'p CommPresentation, budget: &Budget) -> Self {
        let mut s = Self {
            pres,
            budget: *budget,
            reps: Vec::new(),
            canonical: HashMap::new(),
            known: HashMap::new(),
            sums: BTreeMap::new(),
        };
        s.push(Word::empty());
        s
    }

    pub(crate) fn len(&self) -> usize {
        self.reps.len()
    }

    pub(crate) fn word(&self, i: usize) -> &Word {
        &self.reps[i]
    }

    fn push(&mut self, w: Word) -> usize {
        let i = self.reps.len();
        self.canonical.insert(w.clone(), i);
        self.known.insert(w.clone(), i);
        self.reps.push(w);
        i
    }

    /// The element equal to `w` in the monoid, if there is one.
    pub(crate) fn find(&mut self, w: &Word) -> Result<Option<usize>> {
        if let Some(&i) = self.known.get(w) {
            return Ok(Some(i));
        }
        match self.pres.lookup(w, &self.canonical, self.budget.max_states) {
            Lookup::Found(i) => {
                self.known.insert(w.clone(), i);
                Ok(Some(i))
            }
            Lookup::Absent => Ok(None),
            Lookup::Unknown => Err(Error::BudgetExceeded {
                what: "word problem states",
                needed: self.budget.max_states as u128 + 1,
                limit: self.budget.max_states as u128,
            }),
        }
    }

    /// The element equal to `w`, adjoining it when new.
    pub(crate) fn find_or_add(&mut self, w: Word) -> Result<usize> {
        if let Some(i) = self.find(&w)? {
            return Ok(i);
        }
        if self.reps.len() >= self.budget.max_elems {
            return Err(Error::BudgetExceeded {
                what: "saturation elements",
                needed: self.reps.len() as u128 + 1,
                limit: self.budget.max_elems as u128,
            });
        }
        Ok(self.push(w))
    }

    /// Records `(i, j)` as summable; the sum is looked up (or adjoined).
    pub(crate) fn add_pair(&mut self, i: usize, j: usize) -> Result<bool> {
        if self.sums.contains_key(&(i, j)) {
            return Ok(false);
        }
        let w = self.reps[i].concat(&self.reps[j]);
        let s = self.find_or_add(w)?;
        self.sums.insert((i, j), s);
        self.sums.insert((j, i), s);
        Ok(true)
    }

    /// Runs the `B^(n)` iteration to its fixpoint.
    pub(crate) fn saturate(&mut self) -> Result<()> {
        loop {
            let mut changed = false;
            for x in 0..self.len() {
                changed |= self.add_pair(0, x)?;
            }
            let mut by_left: HashMap<usize, Vec<usize>> = HashMap::new();
            for &(x, y) in self.sums.keys() {
                by_left.entry(x).or_default().push(y);
            }
            let pairs: Vec<((usize, usize), usize)> =
                self.sums.iter().map(|(&k, &v)| (k, v)).collect();
            for ((a, b), ab) in pairs {
                let Some(cs) = by_left.get(&ab) else { continue };
                for &c in cs {
                    // (a + b) + c can be calculated
                    changed |= self.add_pair(b, c)?;
                    let bc = self.sums[&(b, c)];
                    changed |= self.add_pair(a, bc)?;
                }
            }
            if !changed {
                return Ok(());
            }
        }
    }

    pub(crate) fn into_magma(self, name: impl Fn(&Word) -> String) -> Result<(PartialMagma, Vec<Word>)> {
        let n = self.reps.len();
        let mut names: Vec<String> = self.reps.iter().map(&name).collect();
        dedupe_names(&mut names);
        let mut table = vec![None; n * n];
        for (&(i, j), &s) in &self.sums {
            table[i * n + j] = Some(s);
        }
        let m = PartialMagma::new(names, 0, table)?;
        Ok((m, self.reps))
    }
}

/// Appends a suffix to repeated names so that the carrier stays well formed.
pub(crate) fn dedupe_names(names: &mut [String]) {
    let mut seen: HashMap<String, usize> = HashMap::new();
    for n in names.iter_mut() {
        let c = seen.entry(n.clone()).or_insert(0);
        *c += 1;
        if *c > 1 {
            *n = format!("{n}#{c}");
        }
    }
}

/// `A_ass` together with `α: A → A_ass` and the `A_mon` word of each element.
#[derive(Debug, Clone)]
pub struct Closure {
    pub monoid: PartialMagma,
    pub alpha: Homomorphism,
    pub words: Vec<Word>,
}

impl Closure {
    /// True when `α` is a bijection preserving and reflecting sums.
    pub fn is_trivial(&self, a: &PartialMagma) -> bool {
        self.alpha.is_injective()
            && self.monoid.size() == a.size()
            && a.elements().all(|x| {
                a.elements().all(|y| {
                    a.add(x, y).map(|s| self.alpha.apply(s))
                        == self.monoid.add(self.alpha.apply(x), self.alpha.apply(y))
                })
            })
    }
}

pub(crate) fn check(m: &PartialMagma, budget: &Budget, what: &'static str) -> Result<()> {
    if budget.revalidate {
        let report = m.validate(Level::Monoid);
        if !report.is_valid() {
            return Err(Error::Invalid(what, report.render(m.names())));
        }
    }
    Ok(())
}

/// The associative closure `A_ass` of `μ(A) ⊆ A_mon`.
pub fn associative_closure(a: &PartialMagma, budget: &Budget) -> Result<Closure> {
    let pres = CommPresentation::monoid_completion(a);
    let mut sat = Saturation::new(&pres, budget);
    let z = a.zero();
    let mut alpha = vec![0; a.size()];
    for x in a.elements().filter(|&x| x != z) {
        alpha[x] = sat.find_or_add(Word::letter(x))?;
    }
    for x in a.elements() {
        for y in a.elements() {
            if a.summable(x, y) {
                sat.add_pair(alpha[x], alpha[y])?;
            }
        }
    }
    sat.saturate()?;
    let (monoid, words) = sat.into_magma(|w| render_with_zero(w, a.name(z), |g| a.name(g).to_string()))?;
    check(&monoid, budget, "associative closure")?;
    Ok(Closure {
        monoid,
        alpha: Homomorphism::new(alpha),
        words,
    })
}

/// Uses the zero element's own name for the empty word.
pub(crate) fn render_with_zero(w: &Word, zero: &str, letter: impl Fn(usize) -> String) -> String {
    if w.is_empty() {
        return zero.to_string();
    }
    w.letters().iter().map(|&g| letter(g)).collect::<Vec<_>>().join("+")
}

/// Checks `f_ass ∘ α = f` for a hom `f: A → M` and returns `f_ass`.
pub fn factor_through(c: &Closure, a: &PartialMagma, m: &PartialMagma, f: &Homomorphism) -> Option<Homomorphism> {
    let mut map = vec![None; c.monoid.size()];
    for x in a.elements() {
        let i = c.alpha.apply(x);
        match map[i] {
            Some(v) if v != f.apply(x) => return None,
            _ => map[i] = Some(f.apply(x)),
        }
    }
    // every element is a sum of letters, evaluate its word in M
    for (i, w) in c.words.iter().enumerate() {
        let v = m.sum_multiset(w.letters().iter().map(|&g| f.apply(g)).collect::<Vec<Elem>>().as_slice())?;
        match map[i] {
            Some(u) if u != v => return None,
            _ => map[i] = Some(v),
        }
    }
    let h = Homomorphism::new(map.into_iter().map(|v| v.unwrap_or(0)).collect());
    h.is_magma_hom(&c.monoid, m).then_some(h)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builtins::*;
    use crate::morphism::{enumerate_magma_homs, magmas_isomorphic, DEFAULT_MAP_LIMIT};

    fn budget() -> Budget {
        Budget::default()
    }

    #[test]
    fn monoids_are_fixed() {
        for m in [f1().into_additive(), f2().into_additive(), boolean().into_additive(), truncated(3), based_set(3)] {
            let c = associative_closure(&m, &budget()).unwrap();
            assert!(c.is_trivial(&m), "{m:?} -> {:?}", c.monoid);
        }
    }

    #[test]
    fn one_star_triple_adds_one_element() {
        // 0, a, b, c, d with a+b = c, c+b = d. (a+b)+b is calculable so
        // b+b is adjoined together with (a, b+b).
        let names: Vec<String> = ["0", "a", "b", "c", "d"].iter().map(|s| s.to_string()).collect();
        let m = PartialMagma::from_fn(names, 0, |x, y| match (x, y) {
            (0, v) | (v, 0) => Some(v),
            (1, 2) | (2, 1) => Some(3),
            (3, 2) | (2, 3) => Some(4),
            _ => None,
        });
        assert!(!m.is_monoid());
        let c = associative_closure(&m, &budget()).unwrap();
        assert_eq!(c.monoid.size(), 6);
        let bb = c.monoid.add(2, 2).unwrap();
        assert_eq!(bb, 5);
        assert_eq!(c.monoid.add(1, bb), Some(4));
        assert!(c.monoid.is_monoid());
        // idempotent up to isomorphism
        let cc = associative_closure(&c.monoid, &budget()).unwrap();
        assert!(magmas_isomorphic(&cc.monoid, &c.monoid));
    }

    #[test]
    fn closure_completes_z3() {
        // a+a = b, a+b = 0, b+b missing: (a+b)+b is calculable, so b+b is
        // adjoined and found equal to a in A_mon.
        let names: Vec<String> = ["0", "a", "b"].iter().map(|s| s.to_string()).collect();
        let m = PartialMagma::from_fn(names, 0, |x, y| match (x, y) {
            (0, v) | (v, 0) => Some(v),
            (1, 1) => Some(2),
            (1, 2) | (2, 1) => Some(0),
            _ => None,
        });
        assert!(!m.is_monoid());
        let c = associative_closure(&m, &budget()).unwrap();
        assert!(c.alpha.is_injective());
        assert!(magmas_isomorphic(&c.monoid, zmod(3).additive()));
    }

    #[test]
    fn universal_property_on_small_targets() {
        let names: Vec<String> = ["0", "a", "b", "c", "d"].iter().map(|s| s.to_string()).collect();
        let m = PartialMagma::from_fn(names, 0, |x, y| match (x, y) {
            (0, v) | (v, 0) => Some(v),
            (1, 2) | (2, 1) => Some(3),
            (3, 2) | (2, 3) => Some(4),
            _ => None,
        });
        let c = associative_closure(&m, &budget()).unwrap();
        for target in [f1().into_additive(), f2().into_additive(), boolean().into_additive(), truncated(3), zmod(4).into_additive()] {
            let homs = enumerate_magma_homs(&m, &target, DEFAULT_MAP_LIMIT).unwrap();
            let lifted = enumerate_magma_homs(&c.monoid, &target, DEFAULT_MAP_LIMIT).unwrap();
            // restriction along α is a bijection
            assert_eq!(homs.len(), lifted.len());
            for f in &homs {
                let g = factor_through(&c, &m, &target, f).expect("factorization");
                assert_eq!(c.alpha.then(&g), *f);
                assert_eq!(lifted.iter().filter(|h| c.alpha.then(h) == *f).count(), 1);
            }
        }
    }

    #[test]
    fn element_budget_is_enforced() {
        let names: Vec<String> = ["0", "a", "b", "c", "d"].iter().map(|s| s.to_string()).collect();
        let m = PartialMagma::from_fn(names, 0, |x, y| match (x, y) {
            (0, v) | (v, 0) => Some(v),
            (1, 2) | (2, 1) => Some(3),
            (3, 2) | (2, 3) => Some(4),
            _ => None,
        });
        let tight = Budget { max_elems: 5, ..Budget::default() };
        assert!(matches!(associative_closure(&m, &tight), Err(Error::BudgetExceeded { .. })));
    }
}
