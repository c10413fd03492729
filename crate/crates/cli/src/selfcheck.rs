//! Seeded random cross-checks over the built-in corpus.

use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};

use pring::congruence::{congruence_closure, quotient_ring};
use pring::corpus::{labelled_monoids, ring_corpus};
use pring::ideal::{all_ideals, radical, radical_via_primes};
use pring::localize::{localize, multiplicative_subsets};
use pring::relation::{all_relations, is_effective, kernel_pair_oracle};
use pring::sheaf::spec_gamma_check;
use pring::{Error, Level, Result};

use crate::WorkspaceConfig;

#[derive(Default)]
struct Tally {
    run: usize,
    failed: Vec<String>,
}

impl Tally {
    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.run += 1;
        if !ok {
            self.failed.push(what());
        }
    }

    fn report(&self, name: &str) {
        let verdict = if self.failed.is_empty() { "PASS" } else { "FAIL" };
        println!("{verdict} {name}: {} checks, {} failures", self.run, self.failed.len());
        for f in &self.failed {
            println!("  {f}");
        }
    }
}

pub fn run(cfg: &WorkspaceConfig, samples: usize) -> Result<u8> {
    let mut rng = StdRng::seed_from_u64(cfg.seed);
    println!("seed {}", cfg.seed);

    let monoids: Vec<_> = (1..=4).flat_map(labelled_monoids).collect();
    let mut effective = Tally::default();
    for _ in 0..samples {
        let m = monoids.choose(&mut rng).expect("corpus is nonempty");
        let relations = all_relations(m.size());
        let r = relations.choose(&mut rng).expect("at least the diagonal");
        if !r.is_additive(m) {
            continue;
        }
        let condition = is_effective(m, r)?.is_none();
        let oracle = kernel_pair_oracle(m, r, &cfg.budget)?;
        effective.check(condition == oracle, || format!("{m:?} with classes {:?}", r.classes()));
    }
    effective.report("effectiveness vs kernel pair");

    let rings = ring_corpus(4, 6);
    let mut radicals = Tally::default();
    let mut local = Tally::default();
    let mut quotients = Tally::default();
    let mut spec_gamma = Tally::default();
    for _ in 0..samples {
        let (name, a) = rings.choose(&mut rng).expect("corpus is nonempty");
        for i in all_ideals(a) {
            radicals.check(radical(a, &i) == radical_via_primes(a, &i), || format!("{name}: radical of {i:?}"));
        }
        let subsets = multiplicative_subsets(a);
        if let Some(s) = subsets.choose(&mut rng) {
            let l = localize(a, s)?;
            local.check(l.ring.validate(Level::Ring).is_valid(), || format!("{name}: localization at {s:?}"));
        }
        let (x, y) = (rng.gen_range(0..a.size()), rng.gen_range(0..a.size()));
        match congruence_closure(a, &[(x, y)]) {
            Ok(c) => {
                let q = quotient_ring(a, &c, &cfg.budget)?;
                let valid = q.ring.validate(Level::Ring).is_valid() && q.projection.is_ring_hom(a, &q.ring);
                quotients.check(valid, || format!("{name}: quotient by {}={}", a.name(x), a.name(y)));
            }
            Err(Error::DegenerateCongruence) => {}
            Err(e) => return Err(e),
        }
        match spec_gamma_check(a, &cfg.budget) {
            Ok(_) => spec_gamma.check(true, String::new),
            Err(Error::CrossCheck(m)) => spec_gamma.check(false, || format!("{name}: {m}")),
            Err(e) => return Err(e),
        }
    }
    radicals.report("radical laws");
    local.report("localizations re-validate");
    quotients.report("quotients re-validate");
    spec_gamma.report("Spec-Γ");

    let all = [&effective, &radicals, &local, &quotients, &spec_gamma];
    Ok(if all.iter().all(|t| t.failed.is_empty()) { 0 } else { 4 })
}
