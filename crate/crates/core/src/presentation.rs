//! Finitely presented partial rings `F1⟨x_1, …, x_n | ∃s_1, …, ∃s_r⟩/⟨Q⟩`
//! and their points in a finite partial ring.
//!
//! A homomorphism out of the presented ring is determined by the images
//! `c_i` of the generators. It exists iff every `s ∈ S` is calculable at
//! `c` and both sides of every pair in `Q` are calculable and equal: the
//! kernel pair of any homomorphism is a congruence containing `Q`, hence
//! contains `⟨Q⟩`. [`solve_homs`] enumerates these assignments.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::poly::{can_calculate, evaluate, eval_monomial, Monomial, NatPoly};
use crate::structure::PartialRing;
use crate::{Budget, Elem};

/// Images of the generators, in generator order.
pub type Assignment = Vec<Elem>;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Presentation {
    pub generators: Vec<String>,
    pub summable: Vec<NatPoly>,
    pub relations: Vec<(NatPoly, NatPoly)>,
}

#[derive(Debug, Serialize, Deserialize)]
struct PresentationDoc {
    generators: Vec<String>,
    #[serde(default)]
    summable: Vec<String>,
    #[serde(default)]
    relations: Vec<[String; 2]>,
}

fn valid_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    chars.next().is_some_and(|c| c.is_alphabetic() || c == '_')
        && chars.all(|c| c.is_alphanumeric() || c == '_' || c == '\'')
}

impl Presentation {
    pub fn new(generators: Vec<String>) -> Result<Self> {
        let mut seen = BTreeSet::new();
        for g in &generators {
            if !valid_identifier(g) {
                return Err(Error::Parse(format!("invalid generator name {g:?}")));
            }
            if !seen.insert(g) {
                return Err(Error::Parse(format!("duplicate generator {g:?}")));
            }
        }
        Ok(Self { generators, summable: Vec::new(), relations: Vec::new() })
    }

    pub fn ngens(&self) -> usize {
        self.generators.len()
    }

    pub fn parse_poly(&self, text: &str) -> Result<NatPoly> {
        NatPoly::parse(text, &self.generators)
    }

    pub fn add_summable(&mut self, text: &str) -> Result<()> {
        let p = self.parse_poly(text)?;
        self.summable.push(p);
        Ok(())
    }

    pub fn add_relation(&mut self, u: &str, v: &str) -> Result<()> {
        let pair = (self.parse_poly(u)?, self.parse_poly(v)?);
        self.relations.push(pair);
        Ok(())
    }

    pub fn from_yaml(text: &str) -> Result<Self> {
        let doc: PresentationDoc = serde_yaml::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        let mut p = Self::new(doc.generators)?;
        for s in &doc.summable {
            p.add_summable(s)?;
        }
        for [u, v] in &doc.relations {
            p.add_relation(u, v)?;
        }
        Ok(p)
    }

    pub fn to_yaml(&self) -> String {
        let g = &self.generators;
        let doc = PresentationDoc {
            generators: g.clone(),
            summable: self.summable.iter().map(|p| p.render(g)).collect(),
            relations: self.relations.iter().map(|(u, v)| [u.render(g), v.render(g)]).collect(),
        };
        serde_yaml::to_string(&doc).expect("presentation serializes")
    }

    /// Drops summability entries with at most one monomial (always
    /// calculable) and repeated entries.
    pub fn normalize(&self) -> Self {
        let mut seen = BTreeSet::new();
        let summable = self.summable.iter().filter(|p| p.weight() > 1 && seen.insert((*p).clone())).cloned().collect();
        let mut seen = BTreeSet::new();
        let relations = self.relations.iter().filter(|r| seen.insert((*r).clone())).cloned().collect();
        Self { generators: self.generators.clone(), summable, relations }
    }

    /// Whether `asg` defines a homomorphism into `a`.
    pub fn check_assignment(&self, a: &PartialRing, asg: &[Elem]) -> bool {
        asg.len() == self.ngens()
            && self.summable.iter().all(|s| can_calculate(a, s, asg))
            && self.relations.iter().all(|(u, v)| match (evaluate(a, u, asg), evaluate(a, v, asg)) {
                (Some(x), Some(y)) => x == y,
                _ => false,
            })
    }
}

/// One polynomial whose monomials must form a summable multiset, with the
/// monomials bucketed by the search depth at which they become known.
struct Tracked {
    init: Vec<Monomial>,
    by_depth: Vec<Vec<Monomial>>,
    complete_at: Option<usize>,
}

fn track(p: &NatPoly, position: &[usize], n: usize) -> Tracked {
    let mut t = Tracked { init: Vec::new(), by_depth: vec![Vec::new(); n], complete_at: None };
    for (m, &c) in p.terms() {
        let level = m.iter().enumerate().filter(|(_, &e)| e > 0).map(|(i, _)| position[i]).max();
        let bucket = match level {
            Some(d) => {
                t.complete_at = t.complete_at.max(Some(d));
                &mut t.by_depth[d]
            }
            None => &mut t.init,
        };
        bucket.extend(std::iter::repeat_n(m.clone(), c as usize));
    }
    t
}

/// Generator order for the search: at each step take the generator that
/// completes the most monomials, then the most relations.
fn variable_order(p: &Presentation) -> Vec<usize> {
    let n = p.ngens();
    let supports: Vec<Vec<usize>> = p
        .summable
        .iter()
        .chain(p.relations.iter().flat_map(|(u, v)| [u, v]))
        .flat_map(|q| q.terms().keys().map(|m| (0..n).filter(|&i| m[i] > 0).collect::<Vec<_>>()))
        .collect();
    let rel_supports: Vec<BTreeSet<usize>> =
        p.relations.iter().map(|(u, v)| u.support().into_iter().chain(v.support()).collect()).collect();
    let mut assigned = vec![false; n];
    let mut order = Vec::with_capacity(n);
    for _ in 0..n {
        let score = |v: usize| {
            let done = |s: &[usize]| s.iter().all(|&i| assigned[i] || i == v);
            let monos = supports.iter().filter(|s| s.contains(&v) && done(s)).count();
            let rels = rel_supports
                .iter()
                .filter(|s| s.contains(&v) && done(&s.iter().copied().collect::<Vec<_>>()))
                .count();
            (monos, rels)
        };
        let best = (0..n)
            .filter(|&v| !assigned[v])
            .max_by(|&x, &y| score(x).cmp(&score(y)).then(y.cmp(&x)))
            .expect("unassigned generator");
        assigned[best] = true;
        order.push(best);
    }
    order
}

struct Search<'a> {
    a: &'a PartialRing,
    order: Vec<usize>,
    tracked: Vec<Tracked>,
    /// Constraint indices with monomials at each depth.
    touched: Vec<Vec<usize>>,
    /// Relation `(u, v)` as tracked indices, checked at its completion depth.
    relations_at: Vec<Vec<(usize, usize)>>,
    /// First tracked index belonging to a relation side.
    first_relation_side: usize,
    asg: Vec<Elem>,
    running: Vec<Elem>,
    nodes: u64,
    limit: u64,
    rejected_incalculable: u64,
    out: Vec<Assignment>,
}

impl Search<'_> {
    fn run(&mut self, depth: usize) -> Result<()> {
        if depth == self.order.len() {
            self.out.push(self.asg.clone());
            return Ok(());
        }
        let var = self.order[depth];
        for value in self.a.elements() {
            self.nodes += 1;
            if self.nodes > self.limit {
                return Err(Error::BudgetExceeded {
                    what: "solver nodes",
                    needed: self.nodes as u128,
                    limit: self.limit as u128,
                });
            }
            self.asg[var] = value;
            let saved: Vec<Elem> = self.touched[depth].iter().map(|&c| self.running[c]).collect();
            if self.advance(depth) && self.relations_hold(depth) {
                self.run(depth + 1)?;
            }
            for (&c, &r) in self.touched[depth].iter().zip(&saved) {
                self.running[c] = r;
            }
        }
        Ok(())
    }

    fn advance(&mut self, depth: usize) -> bool {
        for &c in &self.touched[depth] {
            let mut acc = self.running[c];
            for m in &self.tracked[c].by_depth[depth] {
                match self.a.add(acc, eval_monomial(self.a, m, &self.asg)) {
                    Some(s) => acc = s,
                    None => {
                        if c >= self.first_relation_side {
                            self.rejected_incalculable += 1;
                        }
                        return false;
                    }
                }
            }
            self.running[c] = acc;
        }
        true
    }

    fn relations_hold(&self, depth: usize) -> bool {
        self.relations_at[depth].iter().all(|&(u, v)| self.running[u] == self.running[v])
    }
}

/// All homomorphisms from the presented ring to `a`, as generator images
/// sorted lexicographically.
pub fn solve_homs(p: &Presentation, a: &PartialRing, budget: &Budget) -> Result<Vec<Assignment>> {
    let n = p.ngens();
    if n == 0 {
        return Ok(if p.check_assignment(a, &[]) { vec![vec![]] } else { vec![] });
    }
    let order = variable_order(p);
    let mut position = vec![0; n];
    for (d, &v) in order.iter().enumerate() {
        position[v] = d;
    }
    let mut tracked: Vec<Tracked> = p.summable.iter().map(|s| track(s, &position, n)).collect();
    let first_relation_side = tracked.len();
    let mut relations_at = vec![Vec::new(); n];
    let mut initial_relations = Vec::new();
    for (u, v) in &p.relations {
        let (iu, iv) = (tracked.len(), tracked.len() + 1);
        tracked.push(track(u, &position, n));
        tracked.push(track(v, &position, n));
        match tracked[iu].complete_at.max(tracked[iv].complete_at) {
            Some(d) => relations_at[d].push((iu, iv)),
            None => initial_relations.push((iu, iv)),
        }
    }
    let mut running = Vec::with_capacity(tracked.len());
    for t in &tracked {
        let values: Vec<Elem> = t.init.iter().map(|_| a.one()).collect();
        match a.sum_multiset(&values) {
            Some(s) => running.push(s),
            None => return Ok(Vec::new()),
        }
    }
    if initial_relations.iter().any(|&(u, v)| running[u] != running[v]) {
        return Ok(Vec::new());
    }
    let touched = (0..n).map(|d| (0..tracked.len()).filter(|&c| !tracked[c].by_depth[d].is_empty()).collect()).collect();
    let mut search = Search {
        a,
        order,
        tracked,
        touched,
        relations_at,
        first_relation_side,
        asg: vec![a.zero(); n],
        running,
        nodes: 0,
        limit: budget.max_solver_nodes,
        rejected_incalculable: 0,
        out: Vec::new(),
    };
    search.run(0)?;
    if search.rejected_incalculable > 0 {
        log::debug!(
            "{} partial assignments rejected because a relation side was not calculable",
            search.rejected_incalculable
        );
    }
    let mut out = search.out;
    out.sort();
    Ok(out)
}
