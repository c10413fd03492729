use std::path::Path;

use pring::builtins::f1;
use pring::congruence::{congruence_closure, quotient_ring};
use pring::doc::{emit_magma, emit_ring, emit_ring_with_relations, load_ring, parse_builtin, parse_document, Document};
use pring::groups::{evaluate_group, functor_matrix_agreement, render_permutation, symmetric_group_iso, GroupKind};
use pring::ideal::render_ideal;
use pring::morphism::rings_isomorphic;
use pring::projective::{enumerate_points, point_counts};
use pring::sheaf::{gamma, spec_gamma_check};
use pring::spectrum::{members, spec, stalk, PointSet};
use pring::structure::Structure;
use pring::tensor::tensor_ring;
use pring::{Elem, Error, Level, PartialRing, Result};

use crate::{Format, Kind, WorkspaceConfig};

/// Largest group whose full Cayley table is printed.
const TABLE_LIMIT: usize = 24;
/// Largest point set listed by `points`.
const POINT_LIST_LIMIT: usize = 64;

/// A built-in name, a file path, or a file under one of the search paths.
/// Returns the ring and the `relate` pairs of its document, if any.
fn resolve(cfg: &WorkspaceConfig, arg: &str) -> Result<(PartialRing, Vec<(Elem, Elem)>)> {
    if let Ok(r) = parse_builtin(arg) {
        return Ok((r, Vec::new()));
    }
    let candidates = std::iter::once(Path::new(arg).to_path_buf()).chain(cfg.paths.iter().map(|d| d.join(arg)));
    for path in candidates {
        if path.is_file() {
            let text = std::fs::read_to_string(&path).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
            let Document { structure, relate } = parse_document(&text)?;
            return match structure {
                Structure::Ring(r) => Ok((r, relate)),
                Structure::Monoid(_) => Err(Error::Parse(format!("{}: document has no multiplication", path.display()))),
            };
        }
    }
    load_ring(arg).map(|r| (r, Vec::new()))
}

fn ring_arg(cfg: &WorkspaceConfig, arg: &str) -> Result<PartialRing> {
    let (r, _) = resolve(cfg, arg)?;
    let report = r.validate(Level::Ring);
    if !report.is_valid() {
        return Err(Error::Invalid("partial ring", report.render(r.names())));
    }
    Ok(r)
}

fn render_tables(r: &PartialRing) -> String {
    let names = r.names();
    let width = names.iter().map(|x| x.chars().count()).max().unwrap_or(1);
    let row = |label: &str, cells: Vec<&str>| {
        let mut s = format!("{label:>width$} |");
        for c in cells {
            s.push_str(&format!(" {c:>width$}"));
        }
        s
    };
    let mut out = format!("elements: {}\nzero: {}\none: {}\n", names.join(", "), r.name(r.zero()), r.name(r.one()));
    for (op, f) in [
        ("+", Box::new(|a, b| r.add(a, b)) as Box<dyn Fn(Elem, Elem) -> Option<Elem>>),
        ("*", Box::new(|a, b| Some(r.mul(a, b)))),
    ] {
        out.push_str(&row(op, names.iter().map(String::as_str).collect()));
        out.push('\n');
        for a in r.elements() {
            out.push_str(&row(&names[a], r.elements().map(|b| f(a, b).map_or("·", |c| names[c].as_str())).collect()));
            out.push('\n');
        }
    }
    out
}

/// Prints `r` in the requested format, checking that the document round-trips.
fn print_ring(r: &PartialRing, format: Format, summary: &str) -> Result<()> {
    let doc = emit_ring(r);
    match parse_document(&doc)?.structure {
        Structure::Ring(back) if back == *r => {}
        _ => return Err(Error::CrossCheck("emitted document does not round-trip".into())),
    }
    match format {
        Format::Doc => print!("{doc}"),
        Format::Text => print!("{summary}\n{}", render_tables(r)),
    }
    Ok(())
}

pub fn validate(cfg: &WorkspaceConfig, path: &Path) -> Result<u8> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
    let doc = parse_document(&text)?;
    let (kind, level) = match &doc.structure {
        Structure::Monoid(_) => ("partial monoid", Level::Monoid),
        Structure::Ring(_) => ("partial ring", Level::Ring),
    };
    let report = doc.structure.validate(level);
    let names = doc.structure.additive().names();
    if !report.is_valid() {
        println!("invalid {kind}");
        println!("{}", report.render(names));
        return Ok(1);
    }
    let emitted = match &doc.structure {
        Structure::Monoid(m) => emit_magma(m),
        Structure::Ring(r) => emit_ring_with_relations(r, &doc.relate),
    };
    if parse_document(&emitted)? != doc {
        return Err(Error::CrossCheck("emitted document does not round-trip".into()));
    }
    match cfg.format_or(Format::Text) {
        Format::Doc => print!("{emitted}"),
        Format::Text => println!("valid {kind} with {} elements", names.len()),
    }
    Ok(0)
}

pub fn spectrum(cfg: &WorkspaceConfig, arg: &str) -> Result<u8> {
    let a = ring_arg(cfg, arg)?;
    let s = spec(&a)?;
    let label = |u: PointSet| format!("{{{}}}", members(u).map(|i| format!("p{i}")).collect::<Vec<_>>().join(", "));
    println!("points ({}):", s.len());
    for (i, p) in s.points.iter().enumerate() {
        println!("  p{i} = {}", render_ideal(&a, p));
    }
    println!("basis:");
    for x in a.elements() {
        println!("  {} ↦ D = {}", a.name(x), label(s.d(x)));
    }
    println!("stalks:");
    for (i, p) in s.points.iter().enumerate() {
        println!("  |A_p{i}| = {}", stalk(&a, p)?.ring.size());
    }
    let g = gamma(&a, &cfg.budget)?;
    println!("|Γ| = {}", g.ring().size());
    let w = spec_gamma_check(&a, &cfg.budget)?;
    println!(
        "spec_gamma_check: PASS (homeomorphism on {} points, {} stalk isomorphisms, |Γ| = {})",
        w.point_map.len(),
        w.stalk_maps.len(),
        w.gamma_size
    );
    Ok(0)
}

pub fn group(cfg: &WorkspaceConfig, kind: Kind, n: usize, arg: &str) -> Result<u8> {
    let a = ring_arg(cfg, arg)?;
    let kind = match kind {
        Kind::Ga => GroupKind::Additive,
        Kind::Gm => GroupKind::Multiplicative,
        Kind::Gln if n == 0 => return Err(Error::Parse("--n must be positive".into())),
        Kind::Gln => GroupKind::GeneralLinear(n),
    };
    let g = evaluate_group(kind, &a, &cfg.budget)?;
    let mut headline = format!("{kind}({arg}): order {}", g.order());
    let mut labels = None;
    if let GroupKind::GeneralLinear(n) = kind {
        let order = functor_matrix_agreement(&a, n, &cfg.budget)?;
        if order != g.order() {
            return Err(Error::CrossCheck(format!("solver order {} but matrix order {order}", g.order())));
        }
        if rings_isomorphic(&a, &f1()) {
            labels = Some(symmetric_group_iso(&a, &g, n)?);
            headline.push_str(&format!(", S{n}"));
        }
    }
    println!("{headline}");
    println!("abelian: {}", g.is_abelian());
    println!("undefined products: {:.4}", g.undefined_fraction());
    if let Some(labels) = labels {
        for (k, sigma) in labels.iter().enumerate() {
            println!("  {} = {}", g.labels[k], render_permutation(sigma));
        }
    }
    if g.order() <= TABLE_LIMIT {
        print!("{}", g.render_table());
    }
    Ok(0)
}

pub fn points(cfg: &WorkspaceConfig, arg: &str, n: usize) -> Result<u8> {
    if n == 0 {
        return Err(Error::Parse("n must be positive".into()));
    }
    let f = ring_arg(cfg, arg)?;
    let limit = cfg.budget.max_maps;
    let c = point_counts(&f, n, limit)?;
    println!("κ={}, formula={}, enumerated={}", c.kappa, c.formula, c.enumerated);
    println!("glued={}", c.glued);
    if !c.agree() {
        return Err(Error::CrossCheck(format!("point counts disagree: {c:?}")));
    }
    if c.enumerated as usize <= POINT_LIST_LIMIT {
        let pts: Vec<String> = enumerate_points(&f, n, limit)?.iter().map(|p| p.render(&f)).collect();
        println!("{}", pts.join(" "));
    }
    Ok(0)
}

fn parse_pair(a: &PartialRing, text: &str) -> Result<(Elem, Elem)> {
    let (l, r) = text.split_once('=').ok_or_else(|| Error::Parse(format!("expected a=b, got {text:?}")))?;
    let elem = |s: &str| a.elem(s.trim()).ok_or_else(|| Error::Parse(format!("unknown element {:?}", s.trim())));
    Ok((elem(l)?, elem(r)?))
}

pub fn quotient(cfg: &WorkspaceConfig, arg: &str, relations: &[String]) -> Result<u8> {
    let (a, mut pairs) = resolve(cfg, arg)?;
    let report = a.validate(Level::Ring);
    if !report.is_valid() {
        return Err(Error::Invalid("partial ring", report.render(a.names())));
    }
    for text in relations {
        pairs.push(parse_pair(&a, text)?);
    }
    let c = congruence_closure(&a, &pairs)?;
    let q = quotient_ring(&a, &c, &cfg.budget)?;
    let report = q.ring.validate(Level::Ring);
    if !report.is_valid() {
        return Err(Error::CrossCheck(format!("quotient is not a partial ring: {}", report.render(q.ring.names()))));
    }
    let classes: Vec<String> = a.elements().map(|x| format!("{} ↦ {}", a.name(x), q.ring.name(q.projection.apply(x)))).collect();
    let summary = format!("quotient with {} elements\nprojection: {}", q.ring.size(), classes.join(", "));
    print_ring(&q.ring, cfg.format_or(Format::Doc), &summary)?;
    Ok(0)
}

pub fn tensor(cfg: &WorkspaceConfig, a: &str, b: &str) -> Result<u8> {
    let (ra, rb) = (ring_arg(cfg, a)?, ring_arg(cfg, b)?);
    let t = tensor_ring(&ra, &rb, &cfg.budget)?;
    print_ring(&t, cfg.format_or(Format::Doc), &format!("{a} ⊗ {b} with {} elements", t.size()))?;
    Ok(0)
}
