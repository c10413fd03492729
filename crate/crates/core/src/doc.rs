//! Ring definition documents (YAML) and built-in ring names.
//!
//! ```yaml
//! elements: [0, 1]
//! zero: 0
//! one: 1
//! add: [[0, 0, 0], [0, 1, 1]]     # exactly the summable pairs
//! mul: [[0, 0, 0], [0, 1, 0], [1, 1, 1]]
//! relate: [[1, 0]]                # optional, for quotients
//! symmetric_closure: true         # default; fills in missing mirror entries
//! ```
//!
//! Without `one` and `mul` the document describes a partial magma.

use std::collections::HashMap;

use serde::{Deserialize, Deserializer, Serialize};
use serde_yaml::Value;

use crate::builtins::{boolean, f1, f2, zero_ring, zmod};
use crate::error::{Error, Result, StructureError};
use crate::morphism::product_ring;
use crate::structure::{PartialMagma, PartialRing, Structure};
use crate::Elem;

/// Element names may be written as YAML strings, numbers or booleans.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
#[serde(transparent)]
struct Name(String);

impl<'de> Deserialize<'de> for Name {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        match Value::deserialize(d)? {
            Value::String(s) => Ok(Name(s)),
            Value::Number(n) => Ok(Name(n.to_string())),
            Value::Bool(b) => Ok(Name(b.to_string())),
            other => Err(serde::de::Error::custom(format!("expected an element name, found {other:?}"))),
        }
    }
}

fn default_true() -> bool {
    true
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawDocument {
    elements: Vec<Name>,
    zero: Name,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    one: Option<Name>,
    #[serde(default)]
    add: Vec<Vec<Name>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    mul: Option<Vec<Vec<Name>>>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    relate: Vec<Vec<Name>>,
    #[serde(default = "default_true")]
    symmetric_closure: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Document {
    pub structure: Structure,
    /// Pairs listed under `relate`.
    pub relate: Vec<(Elem, Elem)>,
}

/// Fills a dense table from `[a, b, c]` triples. A listed pair wins over
/// its mirror; the mirror is filled in only when absent and `symmetric`.
fn fill_table(
    triples: &[Vec<Name>],
    index: &HashMap<&str, Elem>,
    names: &[String],
    symmetric: bool,
    op: char,
) -> Result<Vec<Option<Elem>>> {
    let n = names.len();
    let lookup = |x: &Name| index.get(x.0.as_str()).copied().ok_or_else(|| StructureError::UnknownName(x.0.clone()));
    let mut table: Vec<Option<Elem>> = vec![None; n * n];
    let mut listed = vec![false; n * n];
    let mut parsed = Vec::with_capacity(triples.len());
    for t in triples {
        let [a, b, c] = t.as_slice() else {
            return Err(Error::Parse(format!("`{op}` entries must be [a, b, result], got {} items", t.len())));
        };
        let (a, b, c) = (lookup(a)?, lookup(b)?, lookup(c)?);
        if listed[a * n + b] && table[a * n + b] != Some(c) {
            return Err(StructureError::Conflict(names[a].clone(), names[b].clone(), op).into());
        }
        table[a * n + b] = Some(c);
        listed[a * n + b] = true;
        parsed.push((a, b, c));
    }
    if symmetric {
        for (a, b, c) in parsed {
            if !listed[b * n + a] {
                table[b * n + a] = Some(c);
            }
        }
    }
    Ok(table)
}

pub fn parse_document(text: &str) -> Result<Document> {
    let raw: RawDocument = serde_yaml::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    let names: Vec<String> = raw.elements.iter().map(|x| x.0.clone()).collect();
    let mut index: HashMap<&str, Elem> = HashMap::new();
    for (i, x) in names.iter().enumerate() {
        if index.insert(x.as_str(), i).is_some() {
            return Err(StructureError::DuplicateName(x.clone()).into());
        }
    }
    let lookup = |x: &Name| index.get(x.0.as_str()).copied().ok_or_else(|| StructureError::UnknownName(x.0.clone()));
    let zero = lookup(&raw.zero)?;
    let add = fill_table(&raw.add, &index, &names, raw.symmetric_closure, '+')?;
    let magma = PartialMagma::new(names.clone(), zero, add)?;
    let structure = match (&raw.one, &raw.mul) {
        (None, None) => Structure::Monoid(magma),
        (Some(one), Some(mul)) => {
            let one = lookup(one)?;
            let table = fill_table(mul, &index, &names, raw.symmetric_closure, '*')?;
            let n = names.len();
            let total = table
                .iter()
                .enumerate()
                .map(|(i, c)| c.ok_or_else(|| StructureError::PartialMultiplication(names[i / n].clone(), names[i % n].clone())))
                .collect::<Result<Vec<_>, _>>()?;
            Structure::Ring(PartialRing::new(magma, one, total)?)
        }
        _ => return Err(Error::Parse("`one` and `mul` must be given together".into())),
    };
    let relate = raw
        .relate
        .iter()
        .map(|p| match p.as_slice() {
            [a, b] => Ok((lookup(a)?, lookup(b)?)),
            _ => Err(Error::Parse("`relate` entries must be pairs".into())),
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Document { structure, relate })
}

fn triples(n: usize, f: impl Fn(Elem, Elem) -> Option<Elem>, names: &[String]) -> Vec<Vec<Name>> {
    let mut out = Vec::new();
    for a in 0..n {
        for b in a..n {
            if let Some(c) = f(a, b) {
                out.push(vec![Name(names[a].clone()), Name(names[b].clone()), Name(names[c].clone())]);
            }
        }
    }
    out
}

fn emit(raw: &RawDocument) -> String {
    serde_yaml::to_string(raw).expect("document serializes")
}

pub fn emit_magma(m: &PartialMagma) -> String {
    let names = m.names();
    emit(&RawDocument {
        elements: names.iter().cloned().map(Name).collect(),
        zero: Name(m.name(m.zero()).into()),
        one: None,
        add: triples(m.size(), |a, b| m.add(a, b), names),
        mul: None,
        relate: Vec::new(),
        symmetric_closure: true,
    })
}

pub fn emit_ring(r: &PartialRing) -> String {
    emit_ring_with_relations(r, &[])
}

pub fn emit_ring_with_relations(r: &PartialRing, relate: &[(Elem, Elem)]) -> String {
    let names = r.names();
    emit(&RawDocument {
        elements: names.iter().cloned().map(Name).collect(),
        zero: Name(r.name(r.zero()).into()),
        one: Some(Name(r.name(r.one()).into())),
        add: triples(r.size(), |a, b| r.add(a, b), names),
        mul: Some(triples(r.size(), |a, b| Some(r.mul(a, b)), names)),
        relate: relate.iter().map(|&(a, b)| vec![Name(names[a].clone()), Name(names[b].clone())]).collect(),
        symmetric_closure: true,
    })
}

/// `F1`, `F2`, `BOOL`, `ZERO`, `ZMOD(k)` and `PROD(A, B)`.
pub fn parse_builtin(text: &str) -> Result<PartialRing> {
    let t = text.trim();
    let upper = t.to_ascii_uppercase();
    let inner = |prefix: &str| -> Option<&str> {
        upper.starts_with(prefix).then(|| t[prefix.len()..].strip_suffix(')')).flatten().map(str::trim)
    };
    match upper.as_str() {
        "F1" => return Ok(f1()),
        "F2" | "Z2" => return Ok(f2()),
        "BOOL" => return Ok(boolean()),
        "ZERO" => return Ok(zero_ring()),
        _ => {}
    }
    if let Some(k) = inner("ZMOD(") {
        let k: usize = k.parse().map_err(|_| Error::Parse(format!("bad modulus in {t:?}")))?;
        if k == 0 {
            return Err(Error::Parse("ZMOD needs a positive modulus".into()));
        }
        return Ok(zmod(k));
    }
    if let Some(args) = inner("PROD(") {
        // split at the top-level comma
        let mut depth = 0;
        let split = args.char_indices().find(|&(_, c)| {
            match c {
                '(' => depth += 1,
                ')' => depth -= 1,
                _ => {}
            }
            c == ',' && depth == 0
        });
        if let Some((i, _)) = split {
            return Ok(product_ring(&parse_builtin(&args[..i])?, &parse_builtin(&args[i + 1..])?));
        }
    }
    Err(Error::Parse(format!("unknown ring {t:?}")))
}

/// A built-in name, or otherwise a path to a ring document.
pub fn load_ring(arg: &str) -> Result<PartialRing> {
    match parse_builtin(arg) {
        Ok(r) => Ok(r),
        Err(builtin_err) => {
            let path = std::path::Path::new(arg);
            if !path.exists() {
                return Err(builtin_err);
            }
            let text = std::fs::read_to_string(path).map_err(|e| Error::Parse(format!("{arg}: {e}")))?;
            match parse_document(&text)?.structure {
                Structure::Ring(r) => Ok(r),
                Structure::Monoid(_) => Err(Error::Parse(format!("{arg}: document has no multiplication"))),
            }
        }
    }
}
