//! Resolving `examples:<name>` and file paths into algebras.

use std::path::Path;

use srlab::format::{self, Declared, Document};
use srlab::{examples, CommutativeLMonoid, Elem, ElementSet, SrlMonoid};

use crate::Failure;

pub const EXAMPLE_PREFIX: &str = "examples:";

/// A built-in algebra or a parsed but not yet law-checked file.
pub enum Target {
    Builtin { name: String, algebra: SrlMonoid },
    File(Document),
}

impl Target {
    pub fn name(&self) -> &str {
        match self {
            Target::Builtin { name, .. } => name,
            Target::File(doc) => &doc.name,
        }
    }
}

pub fn builtin(name: &str) -> Option<SrlMonoid> {
    if name == "trivial" {
        return Some(examples::trivial());
    }
    examples::builtin(name)
}

pub fn load(arg: &str) -> Result<Target, Failure> {
    if let Some(name) = arg.strip_prefix(EXAMPLE_PREFIX) {
        let algebra =
            builtin(name).ok_or_else(|| Failure::Input(format!("unknown example `{name}` (try `srlab examples`)")))?;
        return Ok(Target::Builtin { name: name.to_string(), algebra });
    }
    let path = Path::new(arg);
    let text = format::read_text(path).map_err(|e| Failure::Input(e.to_string()))?;
    let doc = format::parse_document(&text).map_err(|e| Failure::Input(format!("{arg}: {e}")))?;
    Ok(Target::File(doc))
}

/// The l-monoid reduct, or the failed law as a mathematical failure.
pub fn monoid_of(doc: &Document) -> Result<CommutativeLMonoid, Failure> {
    CommutativeLMonoid::new(doc.lattice.clone(), doc.prod.clone(), doc.unit).map_err(Failure::from)
}

/// The srl-monoid a target describes.
pub fn algebra(arg: &str) -> Result<(String, SrlMonoid), Failure> {
    match load(arg)? {
        Target::Builtin { name, algebra } => Ok((name, algebra)),
        Target::File(doc) => {
            let m = monoid_of(&doc)?;
            let s = match &doc.declared {
                Declared::Arrow(t) => SrlMonoid::from_arrow(m, t.clone())?,
                Declared::Q(q) => SrlMonoid::residuate_from_q(m, *q)?,
                Declared::Nothing => {
                    return Err(Failure::Input(format!(
                        "{arg}: declares neither `arrow` nor `Q` (use `srlab residuate --q`)"
                    )))
                }
            };
            Ok((doc.name, s))
        }
    }
}

/// An element given by name, or by index when no name matches.
pub fn element(names: &[String], token: &str) -> Result<Elem, Failure> {
    if let Some(i) = names.iter().position(|n| n == token) {
        return Ok(i);
    }
    match token.parse::<usize>() {
        Ok(i) if i < names.len() => Ok(i),
        _ => Err(Failure::Input(format!("no element `{token}`; elements are {}", names.join(" ")))),
    }
}

pub fn element_set(names: &[String], tokens: &[String]) -> Result<ElementSet, Failure> {
    tokens.iter().map(|t| element(names, t.trim())).collect()
}
