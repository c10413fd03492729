//! The structure sheaf of `Spec A` and global sections.
//!
//! Every point `p` has a smallest open neighbourhood `U_p = {q ⊆ p}`, equal
//! to `D(g_p)` for `g_p` the product of the elements outside `p`, and
//! `S_(U_p) = A ∖ p`, so the presheaf value on `U_p` is the stalk `A_p`. A
//! family `(f_q)_(q ∈ U)` is therefore a section of the sheafification iff
//! `f_q` is the image of `f_p` under `A_p → A_q` whenever `q ⊆ p`, and
//! sections are determined by their values at the maximal points of `U`.

use std::collections::HashMap;

use itertools::Itertools;

use crate::closure::dedupe_names;
use crate::error::{Error, Result};
use crate::ideal::{is_local, pullback_ideal, Ideal};
use crate::localize::{localize, LocalizedRing};
use crate::morphism::{enumerate_ring_homs, Homomorphism};
use crate::spectrum::{members, spec, stalk, PointSet, Spectrum};
use crate::structure::{Level, PartialMagma, PartialRing};
use crate::{Budget, Elem};

#[derive(Debug, Clone)]
pub struct StructureSheaf {
    pub ring: PartialRing,
    pub spectrum: Spectrum,
    pub stalks: Vec<LocalizedRing>,
    /// `generization[p][q]`: `A_p → A_q` for `q ⊆ p`.
    generization: Vec<Vec<Option<Homomorphism>>>,
}

/// The map `S⁻¹A → T⁻¹B`, `a/s ↦ φ(a)/φ(s)`, if every `φ(s)` lies in `T`.
pub fn induced_map(phi: &Homomorphism, src: &LocalizedRing, dst: &LocalizedRing) -> Option<Homomorphism> {
    src.ring
        .elements()
        .map(|x| {
            let (a, s) = src.representatives(x)[0];
            dst.fraction(phi.apply(a), phi.apply(s))
        })
        .collect::<Option<Vec<_>>>()
        .map(Homomorphism::new)
}

impl StructureSheaf {
    pub fn new(a: &PartialRing) -> Result<Self> {
        let spectrum = spec(a)?;
        let stalks = spectrum.points.iter().map(|p| stalk(a, p)).collect::<Result<Vec<_>>>()?;
        let id = Homomorphism::identity(a.size());
        let generization = (0..spectrum.len())
            .map(|p| {
                (0..spectrum.len())
                    .map(|q| spectrum.specializes(q, p).then(|| induced_map(&id, &stalks[p], &stalks[q]).expect("A∖p ⊆ A∖q")))
                    .collect()
            })
            .collect();
        Ok(Self { ring: a.clone(), spectrum, stalks, generization })
    }

    pub fn generization(&self, p: usize, q: usize) -> Option<&Homomorphism> {
        self.generization[p][q].as_ref()
    }

    /// `g_p` with `D(g_p) = U_p`.
    pub fn basic_neighbourhood(&self, p: usize) -> Elem {
        let a = &self.ring;
        a.elements().filter(|x| !self.spectrum.points[p].contains(x)).fold(a.one(), |acc, x| a.mul(acc, x))
    }

    /// `S_U = {a : a ∉ p for all p ∈ U}`.
    pub fn s_u(&self, u: PointSet) -> std::collections::BTreeSet<Elem> {
        self.ring.elements().filter(|&x| u & !self.spectrum.d(x) == 0).collect()
    }

    /// The presheaf value `S_U⁻¹A`.
    pub fn presheaf(&self, u: PointSet) -> Result<LocalizedRing> {
        localize(&self.ring, &self.s_u(u))
    }

    /// The germs of `x ∈ A` at the points of `u`.
    pub fn image_of(&self, x: Elem, u: PointSet) -> Vec<Elem> {
        members(u).map(|q| self.stalks[q].lambda.apply(x)).collect()
    }

    /// The partial ring of sections over the open set `u`.
    pub fn sections(&self, u: PointSet, budget: &Budget) -> Result<Sections> {
        if !self.spectrum.is_open(u) {
            return Err(Error::Invalid("sections", format!("point set {u:#b} is not open")));
        }
        let points: Vec<usize> = members(u).collect();
        let pos = |q: usize| points.iter().position(|&x| x == q).expect("point of u");
        let maximal = self.spectrum.maximal_points(u);
        let needed = maximal.iter().map(|&p| self.stalks[p].ring.size() as u128).product::<u128>();
        if needed > budget.max_maps {
            return Err(Error::BudgetExceeded { what: "section candidates", needed, limit: budget.max_maps });
        }
        let mut families: Vec<Vec<Elem>> = Vec::new();
        for choice in maximal.iter().map(|&p| self.stalks[p].ring.elements()).multi_cartesian_product() {
            let mut family: Vec<Option<Elem>> = vec![None; points.len()];
            let mut consistent = true;
            'fill: for (&p, &x) in maximal.iter().zip(&choice) {
                for &q in &points {
                    if let Some(rho) = self.generization(p, q) {
                        let v = rho.apply(x);
                        match family[pos(q)] {
                            Some(w) if w != v => {
                                consistent = false;
                                break 'fill;
                            }
                            _ => family[pos(q)] = Some(v),
                        }
                    }
                }
            }
            if consistent {
                families.push(family.into_iter().map(|v| v.expect("below a maximal point")).collect());
            }
        }
        families.sort();
        let index: HashMap<&[Elem], usize> = families.iter().enumerate().map(|(i, f)| (f.as_slice(), i)).collect();
        let n = families.len();
        let pointwise = |f: &[Elem], g: &[Elem], op: &dyn Fn(usize, Elem, Elem) -> Option<Elem>| -> Option<Vec<Elem>> {
            points.iter().enumerate().map(|(k, &q)| op(q, f[k], g[k])).collect()
        };
        let lookup = |fam: Vec<Elem>| -> Result<Elem> {
            index.get(fam.as_slice()).copied().ok_or_else(|| Error::CrossCheck("pointwise result is not a section".into()))
        };
        let mut add = vec![None; n * n];
        let mut mul = vec![0; n * n];
        for i in 0..n {
            for j in 0..n {
                if let Some(f) = pointwise(&families[i], &families[j], &|q, x, y| self.stalks[q].ring.add(x, y)) {
                    add[i * n + j] = Some(lookup(f)?);
                }
                let f = pointwise(&families[i], &families[j], &|q, x, y| Some(self.stalks[q].ring.mul(x, y)))
                    .expect("multiplication is total");
                mul[i * n + j] = lookup(f)?;
            }
        }
        let zero = lookup(points.iter().map(|&q| self.stalks[q].ring.zero()).collect())?;
        let one = lookup(points.iter().map(|&q| self.stalks[q].ring.one()).collect())?;
        let mut names: Vec<String> = families
            .iter()
            .map(|f| match self.ring.elements().find(|&x| self.image_of(x, u) == *f) {
                Some(x) => self.ring.name(x).to_string(),
                None => {
                    let parts = points.iter().zip(f).map(|(&q, &x)| self.stalks[q].ring.name(x));
                    format!("⟨{}⟩", parts.format(","))
                }
            })
            .collect();
        dedupe_names(&mut names);
        let ring = PartialRing::new(PartialMagma::new(names, zero, add)?, one, mul)?;
        let report = ring.validate(Level::Ring);
        if !report.is_valid() {
            return Err(Error::CrossCheck(format!("sections over {u:#b}: {}", report.render(ring.names()))));
        }
        Ok(Sections { open: u, points, families, ring })
    }

    /// Per point of `u`: its basic neighbourhood and a fraction whose germs
    /// match the section there.
    pub fn certificate(&self, sections: &Sections, k: usize) -> Vec<Germ> {
        sections
            .points
            .iter()
            .zip(&sections.families[k])
            .map(|(&p, &x)| {
                let (numerator, denominator) = self.stalks[p].representatives(x)[0];
                Germ { point: p, basic: self.basic_neighbourhood(p), numerator, denominator }
            })
            .collect()
    }

    pub fn verify_certificate(&self, sections: &Sections, k: usize, cert: &[Germ]) -> bool {
        let family = &sections.families[k];
        cert.len() == sections.points.len()
            && cert.iter().all(|g| {
                let nbhd = self.spectrum.d(g.basic);
                nbhd >> g.point & 1 == 1
                    && nbhd & !sections.open == 0
                    && members(nbhd).all(|q| {
                        let k = sections.points.iter().position(|&x| x == q).expect("inside u");
                        self.stalks[q].fraction(g.numerator, g.denominator) == Some(family[k])
                    })
            })
    }
}

/// Germ data certifying a section near one point.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Germ {
    pub point: usize,
    /// `D(basic)` is the neighbourhood used.
    pub basic: Elem,
    pub numerator: Elem,
    pub denominator: Elem,
}

#[derive(Debug, Clone)]
pub struct Sections {
    pub open: PointSet,
    pub points: Vec<usize>,
    /// `families[k][i]` lies in the stalk at `points[i]`.
    pub families: Vec<Vec<Elem>>,
    pub ring: PartialRing,
}

impl Sections {
    pub fn index_of(&self, family: &[Elem]) -> Option<Elem> {
        self.families.iter().position(|f| f == family)
    }

    /// Restriction of section `k` to the smaller open of `target`.
    pub fn restrict(&self, k: usize, target: &Sections) -> Option<Elem> {
        let fam: Option<Vec<Elem>> = target
            .points
            .iter()
            .map(|q| self.points.iter().position(|p| p == q).map(|i| self.families[k][i]))
            .collect();
        target.index_of(&fam?)
    }

    pub fn restriction_map(&self, target: &Sections) -> Option<Homomorphism> {
        (0..self.families.len()).map(|k| self.restrict(k, target)).collect::<Option<Vec<_>>>().map(Homomorphism::new)
    }
}

pub fn presheaf_sections(a: &PartialRing, u: PointSet) -> Result<LocalizedRing> {
    StructureSheaf::new(a)?.presheaf(u)
}

pub fn sheaf_sections(a: &PartialRing, u: PointSet, budget: &Budget) -> Result<Sections> {
    StructureSheaf::new(a)?.sections(u, budget)
}

/// `Γ = O_X(X)` with `γ: A → Γ`.
#[derive(Debug, Clone)]
pub struct Gamma {
    pub sheaf: StructureSheaf,
    pub sections: Sections,
    pub gamma: Homomorphism,
}

impl Gamma {
    pub fn ring(&self) -> &PartialRing {
        &self.sections.ring
    }

    /// Some `s` with `sσ ∈ γ(A)`, nonzero when possible (`s = 0` always
    /// works).
    pub fn integrality_witness(&self, sigma: Elem) -> Elem {
        let a = &self.sheaf.ring;
        let b = self.ring();
        let in_image = |t: Elem| a.elements().any(|x| self.gamma.apply(x) == t);
        a.elements()
            .filter(|&s| s != a.zero())
            .find(|&s| in_image(b.mul(self.gamma.apply(s), sigma)))
            .unwrap_or(a.zero())
    }
}

pub fn gamma(a: &PartialRing, budget: &Budget) -> Result<Gamma> {
    let sheaf = StructureSheaf::new(a)?;
    let all = sheaf.spectrum.all();
    let sections = sheaf.sections(all, budget)?;
    let map = a
        .elements()
        .map(|x| sections.index_of(&sheaf.image_of(x, all)).ok_or_else(|| Error::CrossCheck("γ(a) is not a section".into())))
        .collect::<Result<Vec<_>>>()?;
    let gamma = Homomorphism::new(map);
    if !gamma.is_ring_hom(a, &sections.ring) {
        return Err(Error::CrossCheck("γ is not a homomorphism".into()));
    }
    Ok(Gamma { sheaf, sections, gamma })
}

/// Evidence that `Spec A ≅ Spec Γ(Spec A)`.
#[derive(Debug, Clone)]
pub struct SpecGammaWitness {
    /// `point_map[y]` is the point of `Spec A` under `y ∈ Spec Γ`.
    pub point_map: Vec<usize>,
    /// Stalk isomorphisms `A_f(y) → Γ_y`.
    pub stalk_maps: Vec<Homomorphism>,
    pub gamma_size: usize,
}

/// Builds `B = Γ(Spec A)` and checks that `γ` induces a homeomorphism
/// `Spec B → Spec A` and isomorphisms on all stalks.
pub fn spec_gamma_check(a: &PartialRing, budget: &Budget) -> Result<SpecGammaWitness> {
    let g = gamma(a, budget)?;
    let fail = |m: String| Err(Error::CrossCheck(m));
    if !g.gamma.is_injective() {
        return fail("γ is not injective".into());
    }
    let b = g.ring();
    let x = &g.sheaf.spectrum;
    let y = spec(b)?;
    let point_map: Vec<usize> = y
        .points
        .iter()
        .map(|q| x.index_of(&pullback_ideal(&g.gamma, a, q)).expect("pullback of a prime is prime"))
        .collect();
    if point_map.len() != x.len() || !point_map.iter().all_unique() {
        return fail(format!("point map is not bijective: {} vs {} points", y.len(), x.len()));
    }
    let image = |v: PointSet| members(v).fold(0u64, |m, q| m | 1 << point_map[q]);
    for e in a.elements() {
        if image(y.d(g.gamma.apply(e))) != x.d(e) {
            return fail(format!("preimage of D({}) is not D(γ({}))", a.name(e), a.name(e)));
        }
    }
    for v in y.opens() {
        if !x.is_open(image(v)) {
            return fail("point map is not open".into());
        }
    }
    let mut stalk_maps = Vec::new();
    for (q, &p) in point_map.iter().enumerate() {
        let src = &g.sheaf.stalks[p];
        let dst = stalk(b, &y.points[q])?;
        let phi = induced_map(&g.gamma, src, &dst)
            .ok_or_else(|| Error::CrossCheck("γ does not map A ∖ p into B ∖ q".into()))?;
        if !phi.is_ring_isomorphism(&src.ring, &dst.ring) {
            return fail(format!("stalk map at {} is not an isomorphism", x.render_set(a, 1 << p)));
        }
        stalk_maps.push(phi);
    }
    Ok(SpecGammaWitness { point_map, stalk_maps, gamma_size: b.size() })
}

/// The morphism `Spec B → Spec A` induced by `φ: A → B`.
#[derive(Debug, Clone)]
pub struct SpecMorphism {
    /// `point_map[q] = φ*(q)` as an index into `Spec A`.
    pub point_map: Vec<usize>,
    /// Local homomorphisms `A_φ*(q) → B_q`.
    pub stalk_maps: Vec<Homomorphism>,
}

fn maximal_ideal(r: &PartialRing) -> Result<Ideal> {
    is_local(r).ok_or_else(|| Error::CrossCheck("stalk is not local".into()))
}

fn is_local_hom(phi: &Homomorphism, src: &PartialRing, dst: &PartialRing) -> Result<bool> {
    Ok(pullback_ideal(phi, src, &maximal_ideal(dst)?) == maximal_ideal(src)?)
}

pub fn spec_morphism(phi: &Homomorphism, a: &PartialRing, b: &PartialRing) -> Result<SpecMorphism> {
    if !phi.is_ring_hom(a, b) {
        return Err(Error::Invalid("spec morphism", "not a ring homomorphism".into()));
    }
    let (sa, sb) = (StructureSheaf::new(a)?, StructureSheaf::new(b)?);
    let (x, y) = (&sa.spectrum, &sb.spectrum);
    let point_map: Vec<usize> =
        y.points.iter().map(|q| x.index_of(&pullback_ideal(phi, a, q)).expect("pullback of a prime is prime")).collect();
    for e in a.elements() {
        let pre = members(y.all()).filter(|&q| x.d(e) >> point_map[q] & 1 == 1).fold(0u64, |m, q| m | 1 << q);
        if pre != y.d(phi.apply(e)) {
            return Err(Error::CrossCheck(format!("preimage of D({}) is not D(φ({}))", a.name(e), a.name(e))));
        }
    }
    let mut stalk_maps = Vec::new();
    for (q, &p) in point_map.iter().enumerate() {
        let m = induced_map(phi, &sa.stalks[p], &sb.stalks[q]).expect("φ(A ∖ φ*q) ⊆ B ∖ q");
        if !m.is_ring_hom(&sa.stalks[p].ring, &sb.stalks[q].ring) || !is_local_hom(&m, &sa.stalks[p].ring, &sb.stalks[q].ring)? {
            return Err(Error::CrossCheck("stalk map is not a local homomorphism".into()));
        }
        stalk_maps.push(m);
    }
    Ok(SpecMorphism { point_map, stalk_maps })
}

/// Counts morphisms of locally partial-ringed spaces `Spec A → Spec B`
/// directly: a continuous map `f` together with compatible homomorphisms
/// `O_Y(U_y) → O_X(f⁻¹U_y)` on the minimal opens, local on stalks.
pub fn count_scheme_morphisms(a: &PartialRing, b: &PartialRing, budget: &Budget) -> Result<usize> {
    let (sx, sy) = (StructureSheaf::new(a)?, StructureSheaf::new(b)?);
    let (x, y) = (&sx.spectrum, &sy.spectrum);
    let ny = y.len();
    let mut cache_x: HashMap<PointSet, Sections> = HashMap::new();
    let mut section_x = |u: PointSet| -> Result<Sections> {
        if let Some(s) = cache_x.get(&u) {
            return Ok(s.clone());
        }
        let s = sx.sections(u, budget)?;
        cache_x.insert(u, s.clone());
        Ok(s)
    };
    let local_y: Vec<Sections> = (0..ny).map(|q| sy.sections(y.minimal_open(q), budget)).collect::<Result<_>>()?;
    let max_y: Vec<Ideal> = local_y.iter().map(|s| maximal_ideal(&s.ring)).collect::<Result<_>>()?;
    let mut total = 0;
    for f in (0..x.len()).map(|_| 0..ny).multi_cartesian_product() {
        let preimage = |v: PointSet| (0..x.len()).filter(|&p| v >> f[p] & 1 == 1).fold(0u64, |m, p| m | 1 << p);
        let w: Vec<PointSet> = (0..ny).map(|q| preimage(y.minimal_open(q))).collect();
        if !w.iter().all(|&u| x.is_open(u)) {
            continue;
        }
        let targets: Vec<Sections> = w.iter().map(|&u| section_x(u)).collect::<Result<_>>()?;
        let local_x: Vec<Sections> = (0..x.len()).map(|p| section_x(x.minimal_open(p))).collect::<Result<_>>()?;
        // candidate homomorphisms per point of Y, already filtered for locality
        let mut candidates: Vec<Vec<Homomorphism>> = Vec::with_capacity(ny);
        for q in 0..ny {
            let mut keep = Vec::new();
            for h in enumerate_ring_homs(&local_y[q].ring, &targets[q].ring, budget.max_maps)? {
                let mut local = true;
                for p in (0..x.len()).filter(|&p| f[p] == q) {
                    let to_stalk = h.then(&targets[q].restriction_map(&local_x[p]).expect("U_p ⊆ f⁻¹U_f(p)"));
                    let max_x = maximal_ideal(&local_x[p].ring)?;
                    local &= pullback_ideal(&to_stalk, &local_y[q].ring, &max_x) == max_y[q];
                }
                if local {
                    keep.push(h);
                }
            }
            candidates.push(keep);
        }
        let restrict_y: Vec<Vec<Option<Homomorphism>>> = (0..ny)
            .map(|q| (0..ny).map(|r| y.specializes(r, q).then(|| local_y[q].restriction_map(&local_y[r]).expect("U_r ⊆ U_q"))).collect())
            .collect();
        let restrict_x: Vec<Vec<Option<Homomorphism>>> = (0..ny)
            .map(|q| (0..ny).map(|r| y.specializes(r, q).then(|| targets[q].restriction_map(&targets[r]).expect("W_r ⊆ W_q"))).collect())
            .collect();
        for choice in candidates.iter().map(|c| c.iter()).multi_cartesian_product() {
            let compatible = (0..ny).all(|q| {
                (0..ny).all(|r| match (&restrict_y[q][r], &restrict_x[q][r]) {
                    (Some(ry), Some(rx)) => ry.then(choice[r]) == choice[q].then(rx),
                    _ => true,
                })
            });
            total += usize::from(compatible);
        }
    }
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builtins::*;
    use crate::ideal::is_partial_field;
    use crate::morphism::{product_ring, rings_isomorphic, DEFAULT_MAP_LIMIT};

    fn budget() -> Budget {
        Budget::default()
    }

    fn sample() -> Vec<PartialRing> {
        vec![
            f1(),
            f2(),
            boolean(),
            zmod(3),
            zmod(4),
            zmod(6),
            product_ring(&f1(), &f1()),
            product_ring(&f1(), &f2()),
            idempotent_pointed(),
            nilpotent_pointed(),
        ]
    }

    #[test]
    fn empty_open_gives_zero_ring() {
        for a in sample() {
            assert!(sheaf_sections(&a, 0, &budget()).unwrap().ring.is_zero_ring());
            assert!(presheaf_sections(&a, 0).unwrap().ring.is_zero_ring());
        }
    }

    #[test]
    fn global_sections_examples() {
        for f in [f1(), f2(), zmod(3), boolean()] {
            assert!(is_partial_field(&f));
            let g = gamma(&f, &budget()).unwrap();
            assert!(g.gamma.is_ring_isomorphism(&f, g.ring()));
        }
        let z4 = zmod(4);
        let g = gamma(&z4, &budget()).unwrap();
        assert!(g.gamma.is_ring_isomorphism(&z4, g.ring()));
    }

    #[test]
    fn gamma_injective_with_witnesses() {
        for a in sample() {
            let g = gamma(&a, &budget()).unwrap();
            assert!(g.gamma.is_injective(), "{a:?}");
            for sigma in g.ring().elements() {
                let s = g.integrality_witness(sigma);
                let prod = g.ring().mul(g.gamma.apply(s), sigma);
                assert!(a.elements().any(|x| g.gamma.apply(x) == prod));
            }
        }
    }

    #[test]
    fn spec_gamma() {
        for a in sample().into_iter().chain([zero_ring()]) {
            let w = spec_gamma_check(&a, &budget()).unwrap();
            assert_eq!(w.point_map.len(), spec(&a).unwrap().len());
        }
    }

    #[test]
    fn presheaf_on_basic_opens_embeds() {
        // A_s → O(D(s)) is injective
        for a in sample() {
            let sh = StructureSheaf::new(&a).unwrap();
            for s in a.elements() {
                let u = sh.spectrum.d(s);
                let pre = sh.presheaf(u).unwrap();
                let sec = sh.sections(u, &budget()).unwrap();
                let germs: Vec<Vec<Elem>> = pre
                    .ring
                    .elements()
                    .map(|z| {
                        let (n, d) = pre.representatives(z)[0];
                        members(u).map(|q| sh.stalks[q].fraction(n, d).unwrap()).collect()
                    })
                    .collect();
                assert!(germs.iter().all(|g| sec.index_of(g).is_some()));
                assert!(germs.iter().all_unique(), "{a:?} D({s})");
            }
        }
    }

    #[test]
    fn sheaf_axioms_and_certificates() {
        for a in sample() {
            let sh = StructureSheaf::new(&a).unwrap();
            let opens = sh.spectrum.opens();
            let secs: HashMap<PointSet, Sections> = opens.iter().map(|&u| (u, sh.sections(u, &budget()).unwrap())).collect();
            for &u in &opens {
                let s = &secs[&u];
                for k in 0..s.families.len() {
                    let cert = sh.certificate(s, k);
                    assert!(sh.verify_certificate(s, k, &cert));
                }
                for &v in opens.iter().filter(|&&v| v & !u == 0) {
                    let r = s.restriction_map(&secs[&v]).unwrap();
                    assert!(r.is_ring_hom(&s.ring, &secs[&v].ring));
                    for &w in opens.iter().filter(|&&w| w & !v == 0) {
                        let direct = s.restriction_map(&secs[&w]).unwrap();
                        assert_eq!(r.then(&secs[&v].restriction_map(&secs[&w]).unwrap()), direct);
                    }
                }
                // identity and gluing over the cover by minimal opens
                let cover: Vec<PointSet> = members(u).map(|p| sh.spectrum.minimal_open(p)).collect();
                let restrictions: Vec<Homomorphism> = cover.iter().map(|c| s.restriction_map(&secs[c]).unwrap()).collect();
                let local: Vec<Vec<Elem>> = (0..s.families.len()).map(|k| restrictions.iter().map(|r| r.apply(k)).collect()).collect();
                assert!(local.iter().all_unique(), "identity axiom on {u:#b}");
                let compatible = cover
                    .iter()
                    .map(|c| 0..secs[c].families.len())
                    .multi_cartesian_product()
                    .filter(|pick| {
                        (0..cover.len()).cartesian_product(0..cover.len()).all(|(i, j)| {
                            let inter = cover[i] & cover[j];
                            secs[&cover[i]].restrict(pick[i], &secs[&inter]) == secs[&cover[j]].restrict(pick[j], &secs[&inter])
                        })
                    })
                    .count();
                assert_eq!(compatible, s.families.len(), "gluing on {u:#b}");
            }
            for p in 0..sh.spectrum.len() {
                let local = sh.sections(sh.spectrum.minimal_open(p), &budget()).unwrap();
                assert!(rings_isomorphic(&local.ring, &sh.stalks[p].ring));
            }
        }
    }

    #[test]
    fn spec_morphisms() {
        let z4 = zmod(4);
        let red = Homomorphism::new(vec![0, 1, 0, 1]);
        let m = spec_morphism(&red, &z4, &f2()).unwrap();
        assert_eq!(m.point_map, vec![0]);
        for a in sample() {
            let id = spec_morphism(&Homomorphism::identity(a.size()), &a, &a).unwrap();
            assert_eq!(id.point_map, (0..spec(&a).unwrap().len()).collect::<Vec<_>>());
            for b in sample() {
                for phi in enumerate_ring_homs(&a, &b, DEFAULT_MAP_LIMIT).unwrap() {
                    spec_morphism(&phi, &a, &b).unwrap();
                }
            }
        }
    }

    #[test]
    fn morphism_correspondence() {
        let rings = [f1(), f2(), boolean(), zmod(4), product_ring(&f1(), &f1()), nilpotent_pointed()];
        for a in &rings {
            let g = gamma(a, &budget()).unwrap();
            for b in &rings {
                let direct = count_scheme_morphisms(a, b, &budget()).unwrap();
                let homs = enumerate_ring_homs(b, g.ring(), DEFAULT_MAP_LIMIT).unwrap().len();
                assert_eq!(direct, homs, "{a:?} -> {b:?}");
            }
        }
    }
}
