//! Bounded word problem for commutative monoids presented by binary rules.
//!
//! Every relation handled here has the shape `g1 ∔ g2 ∔ x ~ r ∔ x` where `r`
//! is a single generator or nothing (the zero). The monoid completion of a
//! partial magma and the monoid `T(A, B)` underlying tensor products are
//! both of this shape. Words never contain the zero: `0 ∔ x ~ x` is applied
//! eagerly, so a word is a zero-free multiset of generators.
//!
//! Equality is decided by breadth-first search over rewrites (merge a pair,
//! split a generator, insert a pair summing to zero). `Equal` is always a
//! certificate. `Distinct` is returned only when every word reachable within
//! the length bound `max(|w1|, |w2|) + 4` has been visited; anything else is
//! `Unknown`.

use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt;

use crate::structure::PartialMagma;
use crate::Elem;

/// Slack added to the longer word's length when bounding the search.
pub const LENGTH_SLACK: usize = 4;

/// A finite multiset of generators, stored sorted.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Word(Vec<usize>);

impl Word {
    pub fn new(mut letters: Vec<usize>) -> Self {
        letters.sort_unstable();
        Word(letters)
    }

    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn letter(g: usize) -> Self {
        Word(vec![g])
    }

    pub fn letters(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// The monoid operation `∔`.
    pub fn concat(&self, other: &Word) -> Word {
        let mut v = Vec::with_capacity(self.len() + other.len());
        v.extend_from_slice(&self.0);
        v.extend_from_slice(&other.0);
        Word::new(v)
    }

    fn without(&self, i: usize, j: Option<usize>) -> Vec<usize> {
        self.0
            .iter()
            .enumerate()
            .filter(|&(k, _)| k != i && Some(k) != j)
            .map(|(_, &g)| g)
            .collect()
    }

    pub fn render(&self, names: &[String]) -> String {
        if self.0.is_empty() {
            return "0".to_string();
        }
        self.0
            .iter()
            .map(|&g| names[g].as_str())
            .collect::<Vec<_>>()
            .join("∔")
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WordEq {
    Equal,
    Distinct,
    Unknown,
}

/// Outcome of looking a word up among a set of known representatives.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Lookup {
    Found(usize),
    /// Certified different from every target under the length bound.
    Absent,
    Unknown,
}

/// A commutative monoid given by generators and rules `g1 ∔ g2 ~ r`.
#[derive(Debug, Clone, Default)]
pub struct CommPresentation {
    generators: usize,
    merges: HashMap<(usize, usize), Vec<Option<usize>>>,
    splits: Vec<Vec<(usize, usize)>>,
    zero_pairs: Vec<(usize, usize)>,
}

impl CommPresentation {
    pub fn new(generators: usize) -> Self {
        Self {
            generators,
            merges: HashMap::new(),
            splits: vec![Vec::new(); generators],
            zero_pairs: Vec::new(),
        }
    }

    pub fn generators(&self) -> usize {
        self.generators
    }

    /// Adds the relation `g1 ∔ g2 ~ result` (`None` is the zero).
    pub fn add_rule(&mut self, g1: usize, g2: usize, result: Option<usize>) {
        let key = (g1.min(g2), g1.max(g2));
        let entry = self.merges.entry(key).or_default();
        if entry.contains(&result) {
            return;
        }
        entry.push(result);
        match result {
            Some(r) => self.splits[r].push(key),
            None => self.zero_pairs.push(key),
        }
    }

    /// The presentation of the monoid completion `A_mon = ℕ[A]/∼`. Letters
    /// are element indices of `a`; the zero element never occurs in words.
    pub fn monoid_completion(a: &PartialMagma) -> Self {
        let mut p = Self::new(a.size());
        let z = a.zero();
        for x in a.elements().filter(|&x| x != z) {
            for y in a.elements().filter(|&y| y != z && y >= x) {
                if let Some(s) = a.add(x, y) {
                    p.add_rule(x, y, (s != z).then_some(s));
                }
                if let Some(s) = a.add(y, x) {
                    p.add_rule(x, y, (s != z).then_some(s));
                }
            }
        }
        p
    }

    fn neighbours(&self, w: &Word, bound: usize, mut visit: impl FnMut(Word)) {
        let v = w.letters();
        for i in 0..v.len() {
            if i > 0 && v[i] == v[i - 1] {
                continue;
            }
            for j in i + 1..v.len() {
                if j > i + 1 && v[j] == v[j - 1] {
                    continue;
                }
                if let Some(results) = self.merges.get(&(v[i], v[j])) {
                    for r in results {
                        let mut rest = w.without(i, Some(j));
                        rest.extend(r.iter().copied());
                        visit(Word::new(rest));
                    }
                }
            }
            if w.len() < bound {
                for &(a, b) in &self.splits[v[i]] {
                    let mut rest = w.without(i, None);
                    rest.push(a);
                    rest.push(b);
                    visit(Word::new(rest));
                }
            }
        }
        if w.len() + 2 <= bound {
            for &(a, b) in &self.zero_pairs {
                let mut rest = v.to_vec();
                rest.push(a);
                rest.push(b);
                visit(Word::new(rest));
            }
        }
    }

    /// Breadth-first search from `start`; stops at the first word accepted
    /// by `hit`. Returns `Ok(Some(word))` on a hit, `Ok(None)` when the
    /// bounded component is exhausted, `Err(())` when `max_states` runs out.
    fn explore(
        &self,
        start: &Word,
        bound: usize,
        max_states: usize,
        mut hit: impl FnMut(&Word) -> bool,
    ) -> Result<Option<Word>, ()> {
        if hit(start) {
            return Ok(Some(start.clone()));
        }
        let mut seen: HashSet<Word> = HashSet::from([start.clone()]);
        let mut queue = VecDeque::from([start.clone()]);
        while let Some(w) = queue.pop_front() {
            let mut found = None;
            let mut overflow = false;
            self.neighbours(&w, bound, |nw| {
                if found.is_some() || overflow || seen.contains(&nw) {
                    return;
                }
                if hit(&nw) {
                    found = Some(nw);
                    return;
                }
                if seen.len() >= max_states {
                    overflow = true;
                    return;
                }
                seen.insert(nw.clone());
                queue.push_back(nw);
            });
            if found.is_some() {
                return Ok(found);
            }
            if overflow {
                return Err(());
            }
        }
        Ok(None)
    }

    pub fn equal(&self, w1: &Word, w2: &Word, max_states: usize) -> WordEq {
        let bound = w1.len().max(w2.len()) + LENGTH_SLACK;
        match self.explore(w1, bound, max_states, |w| w == w2) {
            Ok(Some(_)) => WordEq::Equal,
            Ok(None) => WordEq::Distinct,
            Err(()) => WordEq::Unknown,
        }
    }

    /// Finds which of `targets` (pairwise distinct representatives) equals
    /// `w`. The bound covers every pair `(w, target)` at once.
    pub fn lookup(&self, w: &Word, targets: &HashMap<Word, usize>, max_states: usize) -> Lookup {
        let longest = targets.keys().map(Word::len).max().unwrap_or(0);
        let bound = w.len().max(longest) + LENGTH_SLACK;
        match self.explore(w, bound, max_states, |x| targets.contains_key(x)) {
            Ok(Some(x)) => Lookup::Found(targets[&x]),
            Ok(None) => Lookup::Absent,
            Err(()) => Lookup::Unknown,
        }
    }
}

/// Strips zeros from a multiset of elements of `a`.
pub fn word_of(a: &PartialMagma, ms: &[Elem]) -> Word {
    Word::new(ms.iter().copied().filter(|&x| x != a.zero()).collect())
}

/// Decides `w1 = w2` in `A_mon` for words over the carrier of `a`.
pub fn amon_equal(a: &PartialMagma, w1: &[Elem], w2: &[Elem], max_states: usize) -> WordEq {
    let p = CommPresentation::monoid_completion(a);
    p.equal(&word_of(a, w1), &word_of(a, w2), max_states)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builtins::*;

    const STATES: usize = 100_000;

    #[test]
    fn amon_examples() {
        // identical multisets
        assert_eq!(amon_equal(f1().additive(), &[1, 1], &[1, 1], STATES), WordEq::Equal);
        // 1+1 = 0 then drop the zero
        assert_eq!(amon_equal(f2().additive(), &[1, 1], &[], STATES), WordEq::Equal);
        // F1_mon is ℕ
        assert_eq!(amon_equal(f1().additive(), &[1, 1], &[1], STATES), WordEq::Distinct);
    }

    #[test]
    fn zero_letters_are_dropped() {
        assert_eq!(amon_equal(f1().additive(), &[0, 1, 0], &[1], STATES), WordEq::Equal);
    }

    #[test]
    fn truncated_monoid_completion_is_n() {
        // {0,1,2,3} with a+b defined up to 3: A_mon = ℕ, [a] = a
        let t = truncated(3);
        assert_eq!(amon_equal(&t, &[1, 2], &[3], STATES), WordEq::Equal);
        assert_eq!(amon_equal(&t, &[1, 1, 1], &[3], STATES), WordEq::Equal);
        assert_eq!(amon_equal(&t, &[2, 2], &[1, 3], STATES), WordEq::Equal);
        assert_eq!(amon_equal(&t, &[2, 2], &[3], STATES), WordEq::Distinct);
    }

    #[test]
    fn insertion_of_zero_pairs_reaches_far_words() {
        // Z/3: 1 ~ 2+2 needs a zero insertion (1+2=0) or a split of 1.
        let z3 = zmod(3);
        assert_eq!(amon_equal(z3.additive(), &[1], &[2, 2], STATES), WordEq::Equal);
        assert_eq!(amon_equal(z3.additive(), &[1], &[2], STATES), WordEq::Distinct);
    }

    #[test]
    fn tiny_budget_yields_unknown() {
        let z3 = zmod(3);
        assert_eq!(amon_equal(z3.additive(), &[1], &[2], 1), WordEq::Unknown);
    }
}
