//! Tensor products of partial monoids.
//!
//! `T(A, B)` is the commutative monoid on letters `(a, b)` with `a, b`
//! nonzero (pairs with a zero coordinate are the unit) under
//! `(a1, b) ∔ (a2, b) ~ (a1 + a2, b)` and `(a, b1) ∔ (a, b2) ~ (a, b1 + b2)`
//! for summable pairs. `π(A × B) ⊆ T(A, B)` carries the maximal partial
//! magma structure and `A ⊗ B` is its associative closure in `T(A, B)`.

use std::collections::HashMap;

use crate::closure::{check, render_with_zero, Saturation};
use crate::error::{Error, Result};
use crate::morphism::{enumerate_magma_homs, hom_object};
use crate::structure::{Level, PartialMagma, PartialRing};
use crate::words::{CommPresentation, Lookup, Word};
use crate::{Budget, Elem};

#[derive(Debug, Clone)]
pub struct Tensor {
    pub monoid: PartialMagma,
    /// `canonical[a * |B| + b]` is the element `a ⊗ b`.
    pub canonical: Vec<Elem>,
    pub words: Vec<Word>,
}

impl Tensor {
    pub fn pure(&self, b_size: usize, a: Elem, b: Elem) -> Elem {
        self.canonical[a * b_size + b]
    }
}

/// The presentation of `T(A, B)`; letter `a * |B| + b` stands for `(a, b)`.
pub fn tensor_presentation(a: &PartialMagma, b: &PartialMagma) -> CommPresentation {
    let nb = b.size();
    let mut p = CommPresentation::new(a.size() * nb);
    let letter = |x: Elem, y: Elem| (x != a.zero() && y != b.zero()).then_some(x * nb + y);
    for y in b.elements() {
        for x1 in a.elements() {
            for x2 in a.elements() {
                if let (Some(s), Some(l1), Some(l2)) = (a.add(x1, x2), letter(x1, y), letter(x2, y)) {
                    p.add_rule(l1, l2, letter(s, y));
                }
            }
        }
    }
    for x in a.elements() {
        for y1 in b.elements() {
            for y2 in b.elements() {
                if let (Some(s), Some(l1), Some(l2)) = (b.add(y1, y2), letter(x, y1), letter(x, y2)) {
                    p.add_rule(l1, l2, letter(x, s));
                }
            }
        }
    }
    p
}

/// `A ⊗ B`.
pub fn tensor(a: &PartialMagma, b: &PartialMagma, budget: &Budget) -> Result<Tensor> {
    let nb = b.size();
    let pres = tensor_presentation(a, b);
    let mut sat = Saturation::new(&pres, budget);
    let mut canonical = vec![0; a.size() * nb];
    for x in a.elements() {
        for y in b.elements() {
            if x != a.zero() && y != b.zero() {
                canonical[x * nb + y] = sat.find_or_add(Word::letter(x * nb + y))?;
            }
        }
    }
    // maximal partial magma structure on π(A × B)
    let base = sat.len();
    for i in 0..base {
        for j in i..base {
            let w = sat.word(i).concat(sat.word(j));
            if sat.find(&w)?.is_some() {
                sat.add_pair(i, j)?;
            }
        }
    }
    sat.saturate()?;
    let zero = format!("{}⊗{}", a.name(a.zero()), b.name(b.zero()));
    let (monoid, words) = sat.into_magma(|w| {
        render_with_zero(w, &zero, |g| format!("{}⊗{}", a.name(g / nb), b.name(g % nb)))
    })?;
    check(&monoid, budget, "tensor product")?;
    Ok(Tensor { monoid, canonical, words })
}

/// `A ⊗ B` for partial rings, with `(a ⊗ b)(a' ⊗ b') = aa' ⊗ bb'` extended
/// bilinearly to the closure.
pub fn tensor_ring(a: &PartialRing, b: &PartialRing, budget: &Budget) -> Result<PartialRing> {
    let t = tensor(a.additive(), b.additive(), budget)?;
    let nb = b.size();
    let pres = tensor_presentation(a.additive(), b.additive());
    let targets: HashMap<Word, usize> = t.words.iter().cloned().enumerate().map(|(i, w)| (w, i)).collect();
    let letter_mul = |l: usize, m: usize| {
        let (x, y) = (a.mul(l / nb, m / nb), b.mul(l % nb, m % nb));
        (x != a.zero() && y != b.zero()).then_some(x * nb + y)
    };
    let n = t.monoid.size();
    let mut mul = vec![0; n * n];
    for i in 0..n {
        for j in i..n {
            let li = t.words[i].letters();
            let lj = t.words[j].letters();
            let w = Word::new(li.iter().flat_map(|&l| lj.iter().filter_map(move |&m| letter_mul(l, m))).collect());
            let k = match targets.get(&w) {
                Some(&k) => k,
                None => match pres.lookup(&w, &targets, budget.max_states) {
                    Lookup::Found(k) => k,
                    Lookup::Absent => {
                        return Err(Error::Invalid(
                            "tensor product",
                            format!("product {} * {} leaves the closure", t.monoid.name(i), t.monoid.name(j)),
                        ))
                    }
                    Lookup::Unknown => {
                        return Err(Error::BudgetExceeded {
                            what: "word problem states",
                            needed: budget.max_states as u128 + 1,
                            limit: budget.max_states as u128,
                        })
                    }
                },
            };
            mul[i * n + j] = k;
            mul[j * n + i] = k;
        }
    }
    let one = t.pure(nb, a.one(), b.one());
    let ring = PartialRing::new(t.monoid, one, mul)?;
    let report = ring.validate(Level::Ring);
    if !report.is_valid() {
        return Err(Error::Invalid("tensor product", report.render(ring.names())));
    }
    Ok(ring)
}

/// `(|Hom(A ⊗ B, C)|, |Hom(A, Hom(B, C))|)`.
pub fn adjunction_counts(a: &PartialMagma, b: &PartialMagma, c: &PartialMagma, budget: &Budget) -> Result<(usize, usize)> {
    let t = tensor(a, b, budget)?;
    let lhs = enumerate_magma_homs(&t.monoid, c, budget.max_maps)?.len();
    let hom_bc = hom_object(b, c, budget.max_maps)?;
    let rhs = enumerate_magma_homs(a, &hom_bc.monoid, budget.max_maps)?.len();
    Ok((lhs, rhs))
}

/// Whether `f: A × B → C` (given as `f[a * |B| + b]`) is bilinear.
pub fn is_bilinear(a: &PartialMagma, b: &PartialMagma, c: &PartialMagma, f: &[Elem]) -> bool {
    let nb = b.size();
    let val = |x: Elem, y: Elem| f[x * nb + y];
    let zeros = a.elements().all(|x| val(x, b.zero()) == c.zero()) && b.elements().all(|y| val(a.zero(), y) == c.zero());
    zeros
        && b.elements().all(|y| {
            a.elements().all(|x1| {
                a.elements().all(|x2| match a.add(x1, x2) {
                    Some(s) => c.add(val(x1, y), val(x2, y)) == Some(val(s, y)),
                    None => true,
                })
            })
        })
        && a.elements().all(|x| {
            b.elements().all(|y1| {
                b.elements().all(|y2| match b.add(y1, y2) {
                    Some(s) => c.add(val(x, y1), val(x, y2)) == Some(val(x, s)),
                    None => true,
                })
            })
        })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builtins::*;
    use crate::morphism::magmas_isomorphic;
    use itertools::Itertools;

    fn budget() -> Budget {
        Budget::default()
    }

    #[test]
    fn unit_law_examples() {
        let f1 = f1().into_additive();
        for m in [f1.clone(), f2().into_additive(), boolean().into_additive(), truncated(2)] {
            let t = tensor(&f1, &m, &budget()).unwrap();
            assert!(magmas_isomorphic(&t.monoid, &m), "{m:?} -> {:?}", t.monoid);
        }
    }

    #[test]
    fn classical_examples() {
        let z2 = f2().into_additive();
        let t = tensor(&z2, &z2, &budget()).unwrap();
        assert!(magmas_isomorphic(&t.monoid, &z2));
        // 1⊗1 + 1⊗1 equals both 1⊗1 (via BOOL) and 1⊗0 = 0 (via Z/2)
        let t = tensor(boolean().additive(), &z2, &budget()).unwrap();
        assert_eq!(t.monoid.size(), 1);
        let t = tensor(&truncated(2), &truncated(2), &budget()).unwrap();
        assert!(magmas_isomorphic(&t.monoid, &truncated(4)));
    }

    #[test]
    fn ring_tensor() {
        use crate::morphism::{product_ring, rings_isomorphic};
        let rings = [f1(), f2(), boolean(), zmod(3), product_ring(&f1(), &f1())];
        for r in &rings {
            assert!(rings_isomorphic(&tensor_ring(&f1(), r, &budget()).unwrap(), r), "{r:?}");
        }
        for (x, y) in rings.iter().cartesian_product(&rings) {
            let xy = tensor_ring(x, y, &budget()).unwrap();
            assert!(rings_isomorphic(&xy, &tensor_ring(y, x, &budget()).unwrap()), "{x:?} {y:?}");
        }
        assert!(rings_isomorphic(&tensor_ring(&f2(), &f2(), &budget()).unwrap(), &f2()));
    }

    #[test]
    fn adjunction_spot_check() {
        let ms = [f1().into_additive(), f2().into_additive(), boolean().into_additive()];
        for (a, b, c) in ms.iter().cartesian_product(&ms).cartesian_product(&ms).map(|((a, b), c)| (a, b, c)) {
            let (l, r) = adjunction_counts(a, b, c, &budget()).unwrap();
            assert_eq!(l, r, "{a:?} {b:?} {c:?}");
        }
    }

    #[test]
    fn universal_bilinear_map() {
        // every bilinear A × B → C factors through ⊗ exactly once
        let a = truncated(2);
        let b = f2().into_additive();
        let t = tensor(&a, &b, &budget()).unwrap();
        for c in [f2().into_additive(), boolean().into_additive(), zmod(4).into_additive(), f1().into_additive()] {
            let bilinear = (0..a.size() * b.size())
                .map(|_| c.elements())
                .multi_cartesian_product()
                .filter(|f| is_bilinear(&a, &b, &c, f))
                .count();
            let homs = enumerate_magma_homs(&t.monoid, &c, u128::MAX).unwrap().len();
            assert_eq!(bilinear, homs, "{c:?}");
        }
    }
}
