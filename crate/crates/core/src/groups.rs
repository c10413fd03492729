//! The point groups of `G_a`, `G_m` and `GL_n`, and the matrix group
//! `GL'_n(A)`.
//!
//! The presentations follow the cogroup constructions: `G_a` is
//! `F1⟨x, y | ∃(x+y)⟩/⟨(x+y, 0)⟩` with `m(t) = 1⊗t + t⊗1` and `i(t) = -t`;
//! `G_m` is `F1⟨x, y⟩/⟨(xy, 1)⟩` with `m(t) = t⊗t`; `GL_n` has generators
//! `x_ij, y_ij`, summable row sums of `X, Y, Z = XY, W = YX`, and relations
//! `Z = W = I`. The product of two `GL_n` points `(X, Y)`, `(X', Y')` is
//! defined when `(X, Y, X', Y')` is a point of the pair presentation `H`
//! (rows of `S = XX'`, `T = Y'Y`, `U = ST`, `V = TS` summable and
//! `U = V = I`), and is `(XX', Y'Y)`. The inverse is `(X, Y) ↦ (Y, X)`.

use std::collections::HashMap;
use std::fmt;

use itertools::Itertools;

use crate::error::{Error, Result};
use crate::ideal::is_good;
use crate::matrix::{m_prime, mat_mul, PartialMatrix};
use crate::poly::NatPoly;
use crate::presentation::{solve_homs, Presentation};
use crate::structure::PartialRing;
use crate::{Budget, Elem};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GroupKind {
    Additive,
    Multiplicative,
    GeneralLinear(usize),
}

impl fmt::Display for GroupKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Additive => write!(f, "G_a"),
            Self::Multiplicative => write!(f, "G_m"),
            Self::GeneralLinear(n) => write!(f, "GL_{n}"),
        }
    }
}

fn idx_name(prefix: &str, n: usize, i: usize, j: usize) -> String {
    if n < 10 {
        format!("{prefix}{}{}", i + 1, j + 1)
    } else {
        format!("{prefix}{}_{}", i + 1, j + 1)
    }
}

pub fn ga_presentation() -> Presentation {
    let mut p = Presentation::new(vec!["x".into(), "y".into()]).expect("valid names");
    p.add_summable("x+y").expect("parses");
    p.add_relation("x+y", "0").expect("parses");
    p
}

pub fn gm_presentation() -> Presentation {
    let mut p = Presentation::new(vec!["x".into(), "y".into()]).expect("valid names");
    p.add_relation("x*y", "1").expect("parses");
    p
}

type PolyMatrix = Vec<Vec<NatPoly>>;

fn var_matrix(nvars: usize, n: usize, offset: usize) -> PolyMatrix {
    (0..n).map(|i| (0..n).map(|j| NatPoly::var(nvars, offset + i * n + j)).collect()).collect()
}

fn poly_mat_mul(a: &PolyMatrix, b: &PolyMatrix, nvars: usize) -> PolyMatrix {
    let n = a.len();
    (0..n)
        .map(|i| (0..n).map(|j| (0..n).fold(NatPoly::zero(nvars), |acc, k| acc.add(&a[i][k].mul(&b[k][j])))).collect())
        .collect()
}

fn row_sum(m: &PolyMatrix, i: usize, nvars: usize) -> NatPoly {
    m[i].iter().fold(NatPoly::zero(nvars), |acc, p| acc.add(p))
}

fn delta(nvars: usize, i: usize, j: usize) -> NatPoly {
    NatPoly::constant(nvars, u64::from(i == j))
}

fn push_unit_relations(p: &mut Presentation, m: &PolyMatrix, nvars: usize) {
    for (i, row) in m.iter().enumerate() {
        for (j, entry) in row.iter().enumerate() {
            p.relations.push((entry.clone(), delta(nvars, i, j)));
        }
    }
}

/// `GL_n`: `2n²` generators, `4n` row sums, `2n²` relations.
pub fn gln_presentation(n: usize) -> Presentation {
    assert!(n >= 1);
    let nvars = 2 * n * n;
    let names = ["x", "y"]
        .iter()
        .flat_map(|p| (0..n).cartesian_product(0..n).map(move |(i, j)| idx_name(p, n, i, j)))
        .collect();
    let mut p = Presentation::new(names).expect("valid names");
    let x = var_matrix(nvars, n, 0);
    let y = var_matrix(nvars, n, n * n);
    let z = poly_mat_mul(&x, &y, nvars);
    let w = poly_mat_mul(&y, &x, nvars);
    for m in [&x, &y, &z, &w] {
        for i in 0..n {
            p.summable.push(row_sum(m, i, nvars));
        }
    }
    push_unit_relations(&mut p, &z, nvars);
    push_unit_relations(&mut p, &w, nvars);
    p
}

/// The pair presentation `H`: `4n²` generators, `12n` row sums, `6n²`
/// relations.
pub fn gln_pair_presentation(n: usize) -> Presentation {
    assert!(n >= 1);
    let nvars = 4 * n * n;
    let names = ["x", "y", "x'", "y'"]
        .iter()
        .flat_map(|p| (0..n).cartesian_product(0..n).map(move |(i, j)| idx_name(p, n, i, j)))
        .collect();
    let mut p = Presentation::new(names).expect("valid names");
    let x = var_matrix(nvars, n, 0);
    let y = var_matrix(nvars, n, n * n);
    let x2 = var_matrix(nvars, n, 2 * n * n);
    let y2 = var_matrix(nvars, n, 3 * n * n);
    let z = poly_mat_mul(&x, &y, nvars);
    let w = poly_mat_mul(&y, &x, nvars);
    let z2 = poly_mat_mul(&x2, &y2, nvars);
    let w2 = poly_mat_mul(&y2, &x2, nvars);
    let s = poly_mat_mul(&x, &x2, nvars);
    let t = poly_mat_mul(&y2, &y, nvars);
    let u = poly_mat_mul(&s, &t, nvars);
    let v = poly_mat_mul(&t, &s, nvars);
    for m in [&x, &y, &z, &w, &x2, &y2, &z2, &w2, &s, &t, &u, &v] {
        for i in 0..n {
            p.summable.push(row_sum(m, i, nvars));
        }
    }
    for m in [&z, &w, &z2, &w2, &u, &v] {
        push_unit_relations(&mut p, m, nvars);
    }
    p
}

pub fn presentation(kind: GroupKind) -> Presentation {
    match kind {
        GroupKind::Additive => ga_presentation(),
        GroupKind::Multiplicative => gm_presentation(),
        GroupKind::GeneralLinear(n) => gln_presentation(n),
    }
}

/// A finite partial group given by its points and partial product table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PointGroup {
    /// Each point as a tuple of ring elements. For matrix groups the first
    /// `dim²` entries are the matrix, row-major.
    pub points: Vec<Vec<Elem>>,
    pub labels: Vec<String>,
    pub table: Vec<Option<usize>>,
    pub unit: usize,
    /// Inverse witnesses per point; empty if none is known.
    pub inverses: Vec<Vec<usize>>,
    pub dim: Option<usize>,
}

impl PointGroup {
    pub fn order(&self) -> usize {
        self.points.len()
    }

    pub fn mul(&self, g: usize, h: usize) -> Option<usize> {
        self.table[g * self.order() + h]
    }

    pub fn matrix(&self, g: usize) -> Option<PartialMatrix> {
        let n = self.dim?;
        Some(PartialMatrix::new(n, n, self.points[g][..n * n].to_vec()))
    }

    pub fn index_of(&self, point: &[Elem]) -> Option<usize> {
        self.points.iter().position(|p| p == point)
    }

    pub fn is_total(&self) -> bool {
        self.table.iter().all(Option::is_some)
    }

    pub fn is_abelian(&self) -> bool {
        let n = self.order();
        (0..n).all(|g| (0..n).all(|h| self.mul(g, h) == self.mul(h, g)))
    }

    /// Fraction of undefined products.
    pub fn undefined_fraction(&self) -> f64 {
        if self.table.is_empty() {
            return 0.0;
        }
        self.table.iter().filter(|x| x.is_none()).count() as f64 / self.table.len() as f64
    }

    pub fn render_table(&self) -> String {
        let n = self.order();
        let width = self.labels.iter().map(|l| l.chars().count()).max().unwrap_or(1).max(1);
        let cell = |s: &str| format!("{s:>width$}");
        let mut out = String::new();
        out.push_str(&cell(""));
        out.push_str(" |");
        for h in 0..n {
            out.push(' ');
            out.push_str(&cell(&self.labels[h]));
        }
        out.push('\n');
        for g in 0..n {
            out.push_str(&cell(&self.labels[g]));
            out.push_str(" |");
            for h in 0..n {
                out.push(' ');
                out.push_str(&cell(self.mul(g, h).map_or("-", |k| self.labels[k].as_str())));
            }
            out.push('\n');
        }
        out
    }
}

/// The first failure of the partial group law, if any.
pub fn partial_group_defect(g: &PointGroup) -> Option<String> {
    let n = g.order();
    if g.unit >= n {
        return Some("no unit".into());
    }
    for x in 0..n {
        if g.mul(g.unit, x) != Some(x) || g.mul(x, g.unit) != Some(x) {
            return Some(format!("unit does not multiply {}", g.labels[x]));
        }
        if !(0..n).any(|y| g.mul(x, y) == Some(g.unit) && g.mul(y, x) == Some(g.unit)) {
            return Some(format!("{} has no two-sided inverse", g.labels[x]));
        }
    }
    None
}

pub fn is_partial_group(g: &PointGroup) -> bool {
    partial_group_defect(g).is_none()
}

pub fn is_group(g: &PointGroup) -> bool {
    let n = g.order();
    is_partial_group(g)
        && g.is_total()
        && (0..n).all(|x| {
            (0..n).all(|y| {
                let xy = g.mul(x, y).expect("total");
                (0..n).all(|z| g.mul(xy, z) == g.mul(x, g.mul(y, z).expect("total")))
            })
        })
}

fn cross(msg: String) -> Error {
    Error::CrossCheck(msg)
}

fn build_table(points: &[Vec<Elem>], product: impl Fn(usize, usize) -> Result<Option<Vec<Elem>>>) -> Result<Vec<Option<usize>>> {
    let index: HashMap<&[Elem], usize> = points.iter().enumerate().map(|(i, p)| (p.as_slice(), i)).collect();
    let n = points.len();
    let mut table = vec![None; n * n];
    for g in 0..n {
        for h in 0..n {
            if let Some(p) = product(g, h)? {
                let k = index.get(p.as_slice()).ok_or_else(|| cross(format!("product of points {g} and {h} is not a point")))?;
                table[g * n + h] = Some(*k);
            }
        }
    }
    Ok(table)
}

/// The points of `kind` in `a` with the product induced by the cogroup
/// structure.
pub fn evaluate_group(kind: GroupKind, a: &PartialRing, budget: &Budget) -> Result<PointGroup> {
    let points = solve_homs(&presentation(kind), a, budget)?;
    let find = |p: &[Elem]| points.iter().position(|q| q == p);
    let (unit_point, dim): (Vec<Elem>, Option<usize>) = match kind {
        GroupKind::Additive => (vec![a.zero(), a.zero()], None),
        GroupKind::Multiplicative => (vec![a.one(), a.one()], None),
        GroupKind::GeneralLinear(n) => {
            let i = PartialMatrix::identity(a, n);
            ([i.entries(), i.entries()].concat(), Some(n))
        }
    };
    let unit = find(&unit_point).ok_or_else(|| cross(format!("{kind}: unit is not a point")))?;
    let inverses = points
        .iter()
        .map(|p| {
            let half = p.len() / 2;
            let swapped = [&p[half..], &p[..half]].concat();
            find(&swapped).map(|k| vec![k]).ok_or_else(|| cross(format!("{kind}: inverse of a point is not a point")))
        })
        .collect::<Result<Vec<_>>>()?;
    let table = match kind {
        GroupKind::Additive => build_table(&points, |g, h| {
            let (p, q) = (&points[g], &points[h]);
            Ok(a.add(p[0], q[0]).zip(a.add(p[1], q[1])).map(|(x, y)| vec![x, y]))
        })?,
        GroupKind::Multiplicative => build_table(&points, |g, h| {
            let (p, q) = (&points[g], &points[h]);
            Ok(Some(vec![a.mul(p[0], q[0]), a.mul(p[1], q[1])]))
        })?,
        GroupKind::GeneralLinear(n) => {
            let pair = gln_pair_presentation(n);
            let split = |p: &[Elem]| {
                (PartialMatrix::new(n, n, p[..n * n].to_vec()), PartialMatrix::new(n, n, p[n * n..].to_vec()))
            };
            build_table(&points, |g, h| {
                let joint = [points[g].as_slice(), points[h].as_slice()].concat();
                if !pair.check_assignment(a, &joint) {
                    return Ok(None);
                }
                let ((x, y), (x2, y2)) = (split(&points[g]), split(&points[h]));
                let prod = mat_mul(a, &x, &x2).zip(mat_mul(a, &y2, &y));
                let (s, t) = prod.ok_or_else(|| cross(format!("{kind}: H admits an undefined matrix product")))?;
                Ok(Some([s.entries(), t.entries()].concat()))
            })?
        }
    };
    let labels = label_points(a, &points, dim);
    Ok(PointGroup { points, labels, table, unit, inverses, dim })
}

fn label_points(a: &PartialRing, points: &[Vec<Elem>], dim: Option<usize>) -> Vec<String> {
    points
        .iter()
        .map(|p| match dim {
            Some(n) => PartialMatrix::new(n, n, p[..n * n].to_vec()).render(a),
            None => a.name(p[0]).to_string(),
        })
        .collect()
}

/// `GL'_n(a)`: matrices in `M'_n(a)` with a two-sided inverse whose
/// products are formable. A product is defined when `mat_mul` is and the
/// result is again invertible.
pub fn gl_prime(a: &PartialRing, n: usize, budget: &Budget) -> Result<PointGroup> {
    let all = m_prime(a, n, budget.max_maps)?;
    let id = PartialMatrix::identity(a, n);
    let is_id = |c: &PartialMatrix, d: &PartialMatrix| mat_mul(a, c, d).as_ref() == Some(&id);
    let invertible: Vec<&PartialMatrix> = all.iter().filter(|c| all.iter().any(|d| is_id(c, d) && is_id(d, c))).collect();
    let points: Vec<Vec<Elem>> = invertible.iter().map(|c| c.entries().to_vec()).collect();
    let inverses = invertible
        .iter()
        .map(|c| (0..invertible.len()).filter(|&k| is_id(c, invertible[k]) && is_id(invertible[k], c)).collect())
        .collect();
    let unit = points.iter().position(|p| p == id.entries()).ok_or_else(|| cross("identity is not invertible".into()))?;
    let index: HashMap<&PartialMatrix, usize> = invertible.iter().enumerate().map(|(i, c)| (*c, i)).collect();
    let size = invertible.len();
    let mut table = vec![None; size * size];
    for g in 0..size {
        for h in 0..size {
            table[g * size + h] = mat_mul(a, invertible[g], invertible[h]).and_then(|p| index.get(&p).copied());
        }
    }
    let labels = label_points(a, &points, Some(n));
    Ok(PointGroup { points, labels, table, unit, inverses, dim: Some(n) })
}

/// A permutation `σ` of `0..n`, with `σ[j]` the image of `j`.
pub type Permutation = Vec<usize>;

/// Labels each point by the permutation `σ` with `X e_j = e_σ(j)` and checks
/// that products go to compositions.
pub fn symmetric_group_iso(a: &PartialRing, g: &PointGroup, n: usize) -> Result<Vec<Permutation>> {
    let factorial: usize = (1..=n).product();
    if g.order() != factorial {
        return Err(cross(format!("order {} is not {n}! = {factorial}", g.order())));
    }
    let mut labels = Vec::with_capacity(g.order());
    for k in 0..g.order() {
        let x = g.matrix(k).ok_or_else(|| cross("points are not matrices".into()))?;
        let mut sigma = vec![usize::MAX; n];
        for (j, image) in sigma.iter_mut().enumerate() {
            for i in 0..n {
                let e = x.get(i, j);
                if e == a.one() && *image == usize::MAX {
                    *image = i;
                } else if e != a.zero() {
                    return Err(cross(format!("{} is not a permutation matrix", g.labels[k])));
                }
            }
        }
        if sigma.contains(&usize::MAX) || !sigma.iter().all_unique() {
            return Err(cross(format!("{} is not a permutation matrix", g.labels[k])));
        }
        labels.push(sigma);
    }
    if !labels.iter().all_unique() {
        return Err(cross("two points share a permutation".into()));
    }
    for (x, y) in (0..g.order()).cartesian_product(0..g.order()) {
        let xy = g.mul(x, y).ok_or_else(|| cross(format!("{} * {} undefined", g.labels[x], g.labels[y])))?;
        let composed: Permutation = (0..n).map(|j| labels[x][labels[y][j]]).collect();
        if labels[xy] != composed {
            return Err(cross(format!("{} * {} is not the composition", g.labels[x], g.labels[y])));
        }
    }
    Ok(labels)
}

/// Renders a permutation in cycle notation, `()` for the identity.
pub fn render_permutation(sigma: &[usize]) -> String {
    let mut seen = vec![false; sigma.len()];
    let mut out = String::new();
    for start in 0..sigma.len() {
        if seen[start] || sigma[start] == start {
            continue;
        }
        let mut cycle = Vec::new();
        let mut j = start;
        while !seen[j] {
            seen[j] = true;
            cycle.push((j + 1).to_string());
            j = sigma[j];
        }
        out.push_str(&format!("({})", cycle.join(" ")));
    }
    if out.is_empty() {
        "()".into()
    } else {
        out
    }
}

/// Compares the points of `GL_n` with `GL'_n` through `(X, Y) ↦ X`. Returns
/// the common order, or the first mismatch.
pub fn functor_matrix_agreement(a: &PartialRing, n: usize, budget: &Budget) -> Result<usize> {
    let functor = evaluate_group(GroupKind::GeneralLinear(n), a, budget)?;
    let matrix = gl_prime(a, n, budget)?;
    if functor.order() != matrix.order() {
        return Err(cross(format!("orders differ: functor {} vs matrices {}", functor.order(), matrix.order())));
    }
    let image: Vec<usize> = (0..functor.order())
        .map(|k| {
            let x = functor.matrix(k).expect("matrix points");
            matrix.index_of(x.entries()).ok_or_else(|| cross(format!("{} is not in GL'", functor.labels[k])))
        })
        .collect::<Result<_>>()?;
    if !image.iter().all_unique() {
        return Err(cross("two points share a matrix".into()));
    }
    for (g, h) in (0..functor.order()).cartesian_product(0..functor.order()) {
        let lhs = functor.mul(g, h).map(|k| image[k]);
        let rhs = matrix.mul(image[g], image[h]);
        if lhs != rhs {
            return Err(cross(format!("product of {} and {} differs", functor.labels[g], functor.labels[h])));
        }
    }
    if is_good(a, n, budget.max_maps)? && !(is_group(&functor) && is_group(&matrix)) {
        return Err(cross("good ring without a group".into()));
    }
    Ok(functor.order())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builtins::*;

    fn budget() -> Budget {
        Budget::default()
    }

    #[test]
    fn presentation_sizes() {
        for n in 1..=3 {
            let g = gln_presentation(n);
            assert_eq!((g.ngens(), g.summable.len(), g.relations.len()), (2 * n * n, 4 * n, 2 * n * n));
            let h = gln_pair_presentation(n);
            assert_eq!((h.ngens(), h.summable.len(), h.relations.len()), (4 * n * n, 12 * n, 6 * n * n));
        }
        let g = gln_presentation(1);
        assert_eq!(g.relations[0].0.render(&g.generators), "x11*y11");
        assert_eq!(g.relations[1].0.render(&g.generators), "x11*y11");
    }

    #[test]
    fn gl1_is_gm() {
        for a in [f1(), f2(), zmod(3), zmod(4), boolean()] {
            let g1 = evaluate_group(GroupKind::GeneralLinear(1), &a, &budget()).unwrap();
            let gm = evaluate_group(GroupKind::Multiplicative, &a, &budget()).unwrap();
            assert_eq!(g1.points, gm.points);
            assert_eq!(g1.table, gm.table);
        }
    }

    #[test]
    fn small_groups() {
        let ga = evaluate_group(GroupKind::Additive, &f2(), &budget()).unwrap();
        assert_eq!(ga.points, vec![vec![0, 0], vec![1, 1]]);
        assert!(is_group(&ga));
        let gm = evaluate_group(GroupKind::Multiplicative, &zmod(4), &budget()).unwrap();
        assert_eq!(gm.points, vec![vec![1, 1], vec![3, 3]]);
        assert!(is_group(&gm));
        for kind in [GroupKind::Additive, GroupKind::Multiplicative] {
            assert_eq!(evaluate_group(kind, &f1(), &budget()).unwrap().order(), 1);
        }
        let ga3 = evaluate_group(GroupKind::Additive, &zmod(3), &budget()).unwrap();
        assert_eq!(ga3.order(), 3);
        assert!(is_group(&ga3));
    }

    #[test]
    fn gl_over_f1_is_symmetric() {
        for n in 2..=3 {
            let g = evaluate_group(GroupKind::GeneralLinear(n), &f1(), &budget()).unwrap();
            assert!(is_group(&g));
            let labels = symmetric_group_iso(&f1(), &g, n).unwrap();
            assert_eq!(labels.len(), (1..=n).product::<usize>());
            let m = gl_prime(&f1(), n, &budget()).unwrap();
            symmetric_group_iso(&f1(), &m, n).unwrap();
        }
    }

    #[test]
    fn gl2_over_z2() {
        let g = gl_prime(&f2(), 2, &budget()).unwrap();
        assert_eq!(g.order(), 6);
        assert!(is_group(&g));
        assert!(!g.is_abelian());
        assert_eq!(functor_matrix_agreement(&f2(), 2, &budget()).unwrap(), 6);
        assert_eq!(functor_matrix_agreement(&boolean(), 2, &budget()).unwrap(), 2);
        assert_eq!(functor_matrix_agreement(&f1(), 2, &budget()).unwrap(), 2);
    }

    #[test]
    fn point_invariants() {
        for a in [f1(), f2(), boolean(), zmod(3)] {
            let g = evaluate_group(GroupKind::GeneralLinear(2), &a, &budget()).unwrap();
            let id = PartialMatrix::identity(&a, 2);
            for (k, p) in g.points.iter().enumerate() {
                let x = PartialMatrix::new(2, 2, p[..4].to_vec());
                let y = PartialMatrix::new(2, 2, p[4..].to_vec());
                assert_eq!(mat_mul(&a, &x, &y).as_ref(), Some(&id));
                assert_eq!(mat_mul(&a, &y, &x).as_ref(), Some(&id));
                let inv = g.inverses[k][0];
                assert_eq!(g.inverses[inv][0], k);
                assert_eq!(g.mul(k, g.unit), Some(k));
                assert_eq!(g.mul(g.unit, k), Some(k));
            }
            assert!(is_partial_group(&g));
        }
    }

    #[test]
    fn doctored_table_fails() {
        let mut g = gl_prime(&f2(), 2, &budget()).unwrap();
        let x = (0..g.order()).find(|&x| x != g.unit && g.mul(x, x) != Some(g.unit)).unwrap();
        let n = g.order();
        for y in 0..n {
            if g.table[x * n + y] == Some(g.unit) {
                g.table[x * n + y] = None;
            }
        }
        let defect = partial_group_defect(&g).unwrap();
        assert!(defect.contains("inverse"), "{defect}");
        assert!(!is_group(&g));
    }

    #[test]
    fn permutation_rendering() {
        assert_eq!(render_permutation(&[0, 1, 2]), "()");
        assert_eq!(render_permutation(&[1, 0, 2]), "(1 2)");
        assert_eq!(render_permutation(&[1, 2, 0]), "(1 2 3)");
    }
}
