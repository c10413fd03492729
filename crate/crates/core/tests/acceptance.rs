//! Acceptance suite: one PASS/FAIL line per criterion.
//!
//! Runs without the libtest harness so the lines always reach stdout. The
//! process fails if any criterion fails other than those listed in
//! `KNOWN_FALSE`, whose statements do not hold as written (see the README).

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use itertools::Itertools;

use pring::builtins::{boolean, f1, f2, zmod};
use pring::congruence::{congruence_closure, quotient_ring};
use pring::corpus::{canonical_magma, labelled_monoids, monoids_up_to_iso, order_two_tables, ring_corpus};
use pring::groups::{evaluate_group, functor_matrix_agreement, gl_prime, is_group, symmetric_group_iso, GroupKind};
use pring::ideal::{all_ideals, is_partial_field, pullback_ideal, pushforward_ideal, radical, radical_via_primes};
use pring::localize::{localize, multiplicative_subsets, saturation};
use pring::morphism::{enumerate_magma_homs, enumerate_ring_homs, magmas_isomorphic, rings_isomorphic};
use pring::projective::point_counts;
use pring::relation::{all_relations, is_effective, kernel_pair_oracle};
use pring::sheaf::{gamma, spec_gamma_check};
use pring::tensor::{tensor, tensor_ring};
use pring::{Budget, Error, Level, PartialMagma, PartialRing};

/// Criteria whose statement is false as written; they are run and reported
/// but do not fail the suite.
const KNOWN_FALSE: &[u32] = &[7];

const ORDER_TWO_LIMIT: Duration = Duration::from_secs(1);
const GL4_SOLVER_LIMIT: Duration = Duration::from_secs(60);
const PROJECTIVE_LIMIT: Duration = Duration::from_secs(10);

/// Enumerated rings go up to this order; named rings are added on top.
const RING_ORDER: usize = 6;
const MAP_LIMIT: u128 = 1 << 24;

type Outcome = Result<String, String>;
type Criterion<'a> = (u32, &'static str, Box<dyn Fn() -> Outcome + 'a>);

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn err(e: Error) -> String {
    e.to_string()
}

fn c1_order_two() -> Outcome {
    let start = Instant::now();
    let accepted: Vec<PartialMagma> = order_two_tables().into_iter().filter(|m| m.validate(Level::Monoid).is_valid()).collect();
    let classes: BTreeSet<String> = accepted.iter().map(|m| format!("{:?}", canonical_magma(m))).collect();
    let elapsed = start.elapsed();
    ensure(classes.len() == 3, || format!("{} classes accepted", classes.len()))?;
    for (name, r) in [("F1", f1()), ("Z/2", f2()), ("BOOL", boolean())] {
        ensure(accepted.iter().any(|m| magmas_isomorphic(m, r.additive())), || format!("{name} missing"))?;
    }
    ensure(elapsed < ORDER_TWO_LIMIT, || format!("took {elapsed:?}"))?;
    Ok(format!("{} of {} tables valid, 3 classes (F1, Z/2, BOOL), {elapsed:?}", accepted.len(), order_two_tables().len()))
}

fn c2_gl_f1() -> Outcome {
    let budget = Budget::default();
    let mut notes = Vec::new();
    for n in 2..=4 {
        let order: usize = (1..=n).product();
        let start = Instant::now();
        let g = evaluate_group(GroupKind::GeneralLinear(n), &f1(), &budget).map_err(err)?;
        let solver_time = start.elapsed();
        let m = gl_prime(&f1(), n, &budget).map_err(err)?;
        for (route, g) in [("solver", &g), ("matrix", &m)] {
            ensure(g.order() == order, || format!("GL_{n} {route} order {}", g.order()))?;
            ensure(is_group(g), || format!("GL_{n} {route} is not a group"))?;
            symmetric_group_iso(&f1(), g, n).map_err(|e| format!("GL_{n} {route}: {e}"))?;
        }
        if n == 4 {
            ensure(solver_time < GL4_SOLVER_LIMIT, || format!("GL_4 solver took {solver_time:?}"))?;
        }
        notes.push(format!("n={n}: {order} ({solver_time:.2?})"));
    }
    Ok(format!("both routes ≅ S_n, {}", notes.join(", ")))
}

fn c3_gl2_z2() -> Outcome {
    let budget = Budget::default();
    let g = evaluate_group(GroupKind::GeneralLinear(2), &f2(), &budget).map_err(err)?;
    ensure(g.order() == 6, || format!("order {}", g.order()))?;
    ensure(is_group(&g), || "not a group".into())?;
    ensure(!g.is_abelian(), || "abelian".into())?;
    let agreed = functor_matrix_agreement(&f2(), 2, &budget).map_err(err)?;
    ensure(agreed == 6, || format!("matrix route order {agreed}"))?;
    Ok("order 6, non-abelian, routes agree".into())
}

fn c4_projective() -> Outcome {
    let start = Instant::now();
    for (name, f, kappa) in [("F1", f1(), 1u64), ("Z/2", f2(), 2), ("Z/3", zmod(3), 3)] {
        for n in 1..=3 {
            let c = point_counts(&f, n, MAP_LIMIT).map_err(err)?;
            let expected: u64 = (0..=n as u32).map(|e| kappa.pow(e)).sum();
            ensure(c.kappa == kappa, || format!("κ({name}) = {}", c.kappa))?;
            ensure(c.agree() && c.formula == expected, || format!("P^{n}({name}): {c:?}, expected {expected}"))?;
        }
    }
    let elapsed = start.elapsed();
    ensure(elapsed < PROJECTIVE_LIMIT, || format!("took {elapsed:?}"))?;
    Ok(format!("formula = orbits = charts for n ≤ 3, {elapsed:?}"))
}

fn c5_effectiveness() -> Outcome {
    let budget = Budget::default();
    let mut checked = 0;
    let mut effective = 0;
    for n in 1..=4 {
        let relations = all_relations(n);
        for m in labelled_monoids(n) {
            for r in relations.iter().filter(|r| r.is_additive(&m)) {
                let condition = is_effective(&m, r).map_err(err)?.is_none();
                let oracle = kernel_pair_oracle(&m, r, &budget).map_err(err)?;
                ensure(condition == oracle, || format!("{m:?} classes {:?}: condition {condition}, oracle {oracle}", r.classes()))?;
                checked += 1;
                effective += usize::from(oracle);
            }
        }
    }
    Ok(format!("{checked} additive relations, {effective} effective"))
}

fn c6_radical(rings: &[(String, PartialRing)]) -> Outcome {
    let mut checked = 0;
    for (name, a) in rings {
        for i in all_ideals(a) {
            ensure(radical(a, &i) == radical_via_primes(a, &i), || format!("{name}: ideal {i:?}"))?;
            checked += 1;
        }
    }
    Ok(format!("{checked} ideals in {} rings", rings.len()))
}

fn c7_localization(rings: &[(String, PartialRing)]) -> Outcome {
    let (mut checked, mut failures, mut proper_failures) = (0usize, 0usize, 0usize);
    let mut example = None;
    for (name, a) in rings {
        let ideals = all_ideals(a);
        for s in multiplicative_subsets(a) {
            let l = localize(a, &s).map_err(err)?;
            for i in &ideals {
                let back = pullback_ideal(&l.lambda, a, &pushforward_ideal(&l.lambda, &l.ring, i));
                // the law that does hold; a breach here is a bug, not the known gap
                assert_eq!(back, saturation(a, &s, i), "{name}: pullback is not the S-saturation");
                checked += 1;
                if back != *i {
                    failures += 1;
                    if !s.contains(&a.zero()) && i.is_disjoint(&s) {
                        proper_failures += 1;
                    }
                    example.get_or_insert_with(|| format!("{name}, S={s:?}, I={i:?} gives {back:?}"));
                }
            }
        }
    }
    match example {
        None => Ok(format!("{checked} cases")),
        Some(ex) => Err(format!(
            "{failures} of {checked} cases differ ({proper_failures} with 0 ∉ S and I ∩ S = ∅), e.g. {ex}; \
             λ*λ_*(I) equals the S-saturation in every case"
        )),
    }
}

fn c8_spec_gamma(rings: &[(String, PartialRing)]) -> Outcome {
    let budget = Budget::default();
    let product = pring::morphism::product_ring(&f1(), &f1());
    for (name, a) in [("F1", f1()), ("Z/2", f2()), ("Z/3", zmod(3)), ("Z/4", zmod(4)), ("BOOL", boolean()), ("F1xF1", product)] {
        spec_gamma_check(&a, &budget).map_err(|e| format!("{name}: {e}"))?;
    }
    let mut fields = 0;
    for (name, a) in rings {
        let g = gamma(a, &budget).map_err(|e| format!("{name}: {e}"))?;
        ensure(g.gamma.is_injective(), || format!("{name}: γ not injective"))?;
        if is_partial_field(a) {
            ensure(g.gamma.is_ring_isomorphism(a, g.ring()), || format!("{name}: Γ(Spec F) ≠ F"))?;
            fields += 1;
        }
    }
    Ok(format!("6 named rings pass, γ injective on {} rings, Γ = F for {fields} partial fields", rings.len()))
}

fn c9_monoidal() -> Outcome {
    let budget = Budget::default();
    let monoids: Vec<PartialMagma> = (1..=3).flat_map(monoids_up_to_iso).collect();
    let unit = f1().into_additive();
    for a in &monoids {
        let t = tensor(&unit, a, &budget).map_err(err)?;
        ensure(magmas_isomorphic(&t.monoid, a), || format!("F1 ⊗ {a:?}"))?;
        for b in &monoids {
            let ab = tensor(a, b, &budget).map_err(err)?;
            let ba = tensor(b, a, &budget).map_err(err)?;
            ensure(magmas_isomorphic(&ab.monoid, &ba.monoid), || format!("{a:?} ⊗ {b:?}"))?;
        }
    }
    let rings: Vec<PartialRing> = ring_corpus(3, 3).into_iter().map(|(_, r)| r).collect();
    for a in &rings {
        ensure(rings_isomorphic(&tensor_ring(&f1(), a, &budget).map_err(err)?, a), || format!("F1 ⊗ {a:?}"))?;
        for b in &rings {
            let ab = tensor_ring(a, b, &budget).map_err(err)?;
            let ba = tensor_ring(b, a, &budget).map_err(err)?;
            ensure(rings_isomorphic(&ab, &ba), || format!("{a:?} ⊗ {b:?}"))?;
        }
    }
    Ok(format!("{} monoids and {} rings of order ≤ 3, all pairs", monoids.len(), rings.len()))
}

fn c10_small_groups() -> Outcome {
    let budget = Budget::default();
    let ga_z2 = evaluate_group(GroupKind::Additive, &f2(), &budget).map_err(err)?;
    ensure(ga_z2.order() == 2, || format!("G_a(Z/2) order {}", ga_z2.order()))?;
    let z4 = zmod(4);
    let gm_z4 = evaluate_group(GroupKind::Multiplicative, &z4, &budget).map_err(err)?;
    let xs: BTreeSet<&str> = gm_z4.points.iter().map(|p| z4.name(p[0])).collect();
    ensure(xs == BTreeSet::from(["1", "3"]), || format!("G_m(Z/4) = {xs:?}"))?;
    for kind in [GroupKind::Additive, GroupKind::Multiplicative] {
        let g = evaluate_group(kind, &f1(), &budget).map_err(err)?;
        ensure(g.order() == 1, || format!("{kind}(F1) order {}", g.order()))?;
    }
    for g in [&ga_z2, &gm_z4] {
        ensure(is_group(g), || "not a group".into())?;
    }
    Ok("G_a(Z/2) = 2, G_m(Z/4) = {1,3}, G_a(F1) = G_m(F1) = 1".into())
}

fn order_independence() -> Result<usize, String> {
    let mut checked = 0;
    for n in 1..=6 {
        for m in monoids_up_to_iso(n) {
            for k in 0..=5 {
                for ms in m.elements().combinations_with_replacement(k) {
                    let value = m.sum_multiset(&ms);
                    for p in ms.iter().copied().permutations(k).unique() {
                        ensure(m.sum_multiset(&p) == value, || format!("{m:?}: {ms:?} depends on order"))?;
                    }
                    if value.is_some() {
                        for drop in 0..k {
                            let mut sub = ms.clone();
                            sub.remove(drop);
                            ensure(m.sum_multiset(&sub).is_some(), || format!("{m:?}: {sub:?} ⊂ {ms:?} not summable"))?;
                        }
                    }
                    checked += 1;
                }
            }
        }
    }
    Ok(checked)
}

fn hom_composition() -> Result<usize, String> {
    let mut checked = 0;
    let monoids: Vec<PartialMagma> = (1..=3).flat_map(monoids_up_to_iso).collect();
    let homs = |a: &PartialMagma, b: &PartialMagma| enumerate_magma_homs(a, b, MAP_LIMIT).map_err(err);
    for (a, b, c) in monoids.iter().cartesian_product(&monoids).cartesian_product(&monoids).map(|((a, b), c)| (a, b, c)) {
        for f in homs(a, b)? {
            for g in homs(b, c)? {
                ensure(f.then(&g).is_magma_hom(a, c), || format!("{a:?} → {b:?} → {c:?}"))?;
                checked += 1;
            }
        }
    }
    let rings: Vec<PartialRing> = ring_corpus(3, 4).into_iter().map(|(_, r)| r).collect();
    let ring_homs = |a: &PartialRing, b: &PartialRing| enumerate_ring_homs(a, b, MAP_LIMIT).map_err(err);
    for (a, b, c) in rings.iter().cartesian_product(&rings).cartesian_product(&rings).map(|((a, b), c)| (a, b, c)) {
        for f in ring_homs(a, b)? {
            for g in ring_homs(b, c)? {
                ensure(f.then(&g).is_ring_hom(a, c), || format!("{a:?} → {b:?} → {c:?}"))?;
                checked += 1;
            }
        }
    }
    Ok(checked)
}

/// Saturation cap for the quotient sweep. Some quotients are infinite (for
/// instance `1 + e = e = e + e` with `1 + 1` undefined forces every `k·1`), so
/// budget exhaustion is counted rather than treated as a failure.
const QUOTIENT_BUDGET: Budget = Budget {
    max_elems: 64,
    max_states: 10_000,
    max_solver_nodes: 0,
    max_maps: MAP_LIMIT,
    revalidate: true,
};

fn constructions_revalidate() -> Result<(usize, usize, usize), String> {
    let budget = QUOTIENT_BUDGET;
    let mut quotients = 0;
    let mut unbounded = 0;
    for (name, a) in ring_corpus(4, 6) {
        for (x, y) in a.elements().tuple_combinations() {
            let c = match congruence_closure(&a, &[(x, y)]) {
                Ok(c) => c,
                Err(Error::DegenerateCongruence) => continue,
                Err(e) => return Err(format!("{name}: {e}")),
            };
            let q = match quotient_ring(&a, &c, &budget) {
                Ok(q) => q,
                Err(Error::BudgetExceeded { .. }) => {
                    unbounded += 1;
                    continue;
                }
                Err(e) => return Err(format!("{name}: {e}")),
            };
            ensure(q.ring.validate(Level::Ring).is_valid(), || format!("{name}/({x}~{y}) invalid"))?;
            ensure(q.projection.is_ring_hom(&a, &q.ring), || format!("{name}/({x}~{y}) projection"))?;
            quotients += 1;
        }
    }
    let mut localizations = 0;
    for (name, a) in ring_corpus(5, 6) {
        for s in multiplicative_subsets(&a) {
            let l = localize(&a, &s).map_err(|e| format!("{name}: {e}"))?;
            ensure(l.ring.validate(Level::Ring).is_valid(), || format!("{name} at {s:?} invalid"))?;
            ensure(l.lambda.is_ring_hom(&a, &l.ring), || format!("{name} at {s:?}: λ"))?;
            localizations += 1;
        }
    }
    Ok((quotients, unbounded, localizations))
}

fn c11_properties() -> Outcome {
    let multisets = order_independence()?;
    let compositions = hom_composition()?;
    let (quotients, unbounded, localizations) = constructions_revalidate()?;
    Ok(format!(
        "{multisets} multisets, {compositions} compositions, {quotients} quotients \
         ({unbounded} over the saturation cap), {localizations} localizations"
    ))
}

fn main() {
    let start = Instant::now();
    let rings = ring_corpus(RING_ORDER, RING_ORDER);
    let corpus_time = start.elapsed();
    println!("corpus: {} rings of order ≤ {RING_ORDER} ({corpus_time:.2?})", rings.len());

    let criteria: Vec<Criterion> = vec![
        (1, "order-2 classification", Box::new(c1_order_two)),
        (2, "GL_n(F1) ≅ S_n, n = 2, 3, 4", Box::new(c2_gl_f1)),
        (3, "GL_2(Z/2)", Box::new(c3_gl2_z2)),
        (4, "projective point counts", Box::new(c4_projective)),
        (5, "effectiveness equivalence", Box::new(c5_effectiveness)),
        (6, "radical law", Box::new(|| c6_radical(&rings))),
        (7, "localization pullback λ*λ_*(I) = I", Box::new(|| c7_localization(&rings))),
        (8, "Spec-Γ", Box::new(|| c8_spec_gamma(&rings))),
        (9, "monoidal unit and symmetry", Box::new(c9_monoidal)),
        (10, "G_a and G_m at desk scale", Box::new(c10_small_groups)),
        (11, "property suites", Box::new(c11_properties)),
    ];

    let mut unexpected = Vec::new();
    for (id, name, run) in &criteria {
        let t = Instant::now();
        let outcome = run();
        let elapsed = t.elapsed();
        match &outcome {
            Ok(detail) => println!("PASS {id:>2} {name}: {detail} [{elapsed:.2?}]"),
            Err(detail) => {
                let note = if KNOWN_FALSE.contains(id) { " (statement false as written)" } else { "" };
                println!("FAIL {id:>2} {name}{note}: {detail} [{elapsed:.2?}]");
                if !KNOWN_FALSE.contains(id) {
                    unexpected.push(*id);
                }
            }
        }
    }
    println!("total {:.2?}", start.elapsed());
    if !unexpected.is_empty() {
        eprintln!("unexpected failures: {unexpected:?}");
        std::process::exit(1);
    }
}
