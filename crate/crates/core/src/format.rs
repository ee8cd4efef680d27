//! The algebra file format: one JSON document per algebra.
//!
//! ```json
//! {
//!   "name": "ex2",
//!   "size": 3,
//!   "elements": ["0", "e", "1"],
//!   "leq": [[0, 1], [1, 2]],
//!   "prod": [
//!     [0, 0, 0],
//!     [0, 1, 2],
//!     [0, 2, 2]
//!   ],
//!   "unit": 1,
//!   "Q": [0, 1]
//! }
//! ```
//!
//! `leq` lists pairs `[i, j]` meaning `i <= j`; a cover relation is enough,
//! the reflexive-transitive closure is taken on load. At most one of `arrow`
//! (an `n × n` matrix) and `Q` (a list of indices) may be present; with
//! neither, the file describes a commutative l-monoid only.

use std::fmt::Write as _;
use std::path::Path;

use serde::Deserialize;
use thiserror::Error;

use crate::carrier::{Elem, ElementSet, Table};
use crate::error::AlgebraError;
use crate::lattice::FiniteLattice;
use crate::monoid::{CommutativeLMonoid, MonoidOps};
use crate::srl::{Operations, SrlMonoid};

#[derive(Debug, Error)]
pub enum FormatError {
    #[error("cannot read {path}: {message}")]
    Io { path: String, message: String },

    #[error("line {line}, column {column}: {message}")]
    Syntax { line: usize, column: usize, message: String },

    #[error("{}field `{field}`: {message}", line.map(|l| format!("line {l}, ")).unwrap_or_default())]
    Field { line: Option<usize>, field: &'static str, message: String },
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawAlgebra {
    name: String,
    size: usize,
    elements: Vec<String>,
    leq: Vec<[usize; 2]>,
    prod: Vec<Vec<usize>>,
    unit: usize,
    arrow: Option<Vec<Vec<usize>>>,
    #[serde(rename = "Q")]
    q: Option<Vec<usize>>,
}

/// Contents of an algebra file.
#[derive(Clone, Debug)]
pub enum Loaded {
    LMonoid { name: String, monoid: CommutativeLMonoid },
    Srl { name: String, algebra: SrlMonoid },
}

impl Loaded {
    pub fn name(&self) -> &str {
        match self {
            Loaded::LMonoid { name, .. } | Loaded::Srl { name, .. } => name,
        }
    }
}

/// Line of the first occurrence of `"field"` in `text`, 1-based.
fn line_of(text: &str, field: &str) -> Option<usize> {
    let key = format!("\"{field}\"");
    text.lines().position(|l| l.contains(&key)).map(|i| i + 1)
}

fn field_error(text: &str, field: &'static str, message: impl Into<String>) -> FormatError {
    FormatError::Field { line: line_of(text, field), field, message: message.into() }
}

/// The field an algebra error is most naturally blamed on.
fn blamed_field(e: &AlgebraError, has_arrow: bool) -> &'static str {
    match e {
        AlgebraError::NotAPartialOrder { .. } | AlgebraError::NotALattice { .. } => "leq",
        AlgebraError::NotLMonoid(v) if v.law == crate::error::MonoidLaw::Unit => "unit",
        AlgebraError::NotLMonoid(_) => "prod",
        AlgebraError::Shape { table, .. } => table,
        AlgebraError::QNotSubalgebra { .. } | AlgebraError::NotResiduated { .. } => "Q",
        AlgebraError::BasisViolation { .. } => "arrow",
        AlgebraError::InternalInvariantViolation(_) if has_arrow => "arrow",
        _ => "size",
    }
}

fn check_matrix(text: &str, field: &'static str, rows: &[Vec<usize>], n: usize) -> Result<Table, FormatError> {
    if rows.len() != n || rows.iter().any(|r| r.len() != n) {
        return Err(field_error(text, field, format!("expected a {n}x{n} matrix")));
    }
    if let Some(v) = rows.iter().flatten().find(|&&v| v >= n) {
        return Err(field_error(text, field, format!("entry {v} is not an element index (size {n})")));
    }
    Table::from_rows(field, n, rows).map_err(|e| field_error(text, field, e.to_string()))
}

fn check_index(text: &str, field: &'static str, v: usize, n: usize) -> Result<(), FormatError> {
    if v >= n {
        return Err(field_error(text, field, format!("index {v} out of range for size {n}")));
    }
    Ok(())
}

/// What an algebra file says about the arrow.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Declared {
    Nothing,
    Arrow(Table),
    Q(ElementSet),
}

/// An algebra file with its shape checked and its order turned into a
/// lattice; the product, unit and arrow are not yet checked against any law.
#[derive(Clone, Debug)]
pub struct Document {
    pub name: String,
    pub lattice: FiniteLattice,
    pub prod: Table,
    pub unit: Elem,
    pub declared: Declared,
}

/// Parses and shape-checks an algebra document.
pub fn parse_document(text: &str) -> Result<Document, FormatError> {
    let raw: RawAlgebra = serde_json::from_str(text).map_err(|e| FormatError::Syntax {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })?;
    let n = raw.size;
    if n == 0 {
        return Err(field_error(text, "size", "carrier must be non-empty"));
    }
    if n > crate::MAX_CARRIER {
        return Err(field_error(text, "size", format!("at most {} elements are supported", crate::MAX_CARRIER)));
    }
    if raw.elements.len() != n {
        return Err(field_error(text, "elements", format!("expected {n} names, found {}", raw.elements.len())));
    }
    let mut sorted = raw.elements.clone();
    sorted.sort();
    if let Some(w) = sorted.windows(2).find(|w| w[0] == w[1]) {
        return Err(field_error(text, "elements", format!("duplicate name `{}`", w[0])));
    }
    for &[a, b] in &raw.leq {
        check_index(text, "leq", a.max(b), n)?;
    }
    let pairs: Vec<(Elem, Elem)> = raw.leq.iter().map(|&[a, b]| (a, b)).collect();
    let lattice = FiniteLattice::from_pairs(raw.elements, &pairs)
        .map_err(|e| field_error(text, blamed_field(&e, false), e.to_string()))?;
    let prod = check_matrix(text, "prod", &raw.prod, n)?;
    check_index(text, "unit", raw.unit, n)?;
    let declared = match (raw.arrow, raw.q) {
        (Some(_), Some(_)) => return Err(field_error(text, "Q", "at most one of `arrow` and `Q` may be given")),
        (None, None) => Declared::Nothing,
        (Some(rows), None) => Declared::Arrow(check_matrix(text, "arrow", &rows, n)?),
        (None, Some(q)) => {
            for &a in &q {
                check_index(text, "Q", a, n)?;
            }
            Declared::Q(q.into_iter().collect())
        }
    };
    Ok(Document { name: raw.name, lattice, prod, unit: raw.unit, declared })
}

/// Parses an algebra document and checks every law.
pub fn parse_algebra(text: &str) -> Result<Loaded, FormatError> {
    let doc = parse_document(text)?;
    let has_arrow = matches!(doc.declared, Declared::Arrow(_));
    let blame = |e: AlgebraError| field_error(text, blamed_field(&e, has_arrow), e.to_string());
    let monoid = CommutativeLMonoid::new(doc.lattice, doc.prod, doc.unit).map_err(blame)?;
    let name = doc.name;
    match doc.declared {
        Declared::Nothing => Ok(Loaded::LMonoid { name, monoid }),
        Declared::Arrow(arrow) => {
            let algebra = SrlMonoid::from_arrow(monoid, arrow).map_err(blame)?;
            Ok(Loaded::Srl { name, algebra })
        }
        Declared::Q(q) => {
            let algebra = SrlMonoid::residuate_from_q(monoid, q).map_err(blame)?;
            Ok(Loaded::Srl { name, algebra })
        }
    }
}

pub fn read_text(path: &Path) -> Result<String, FormatError> {
    std::fs::read_to_string(path)
        .map_err(|e| FormatError::Io { path: path.display().to_string(), message: e.to_string() })
}

pub fn load_algebra(path: &Path) -> Result<Loaded, FormatError> {
    parse_algebra(&read_text(path)?)
}

fn json_str(s: &str) -> String {
    serde_json::to_string(s).expect("strings serialize")
}

fn write_matrix(out: &mut String, field: &str, t: &Table) {
    let _ = writeln!(out, "  \"{field}\": [");
    let rows = t.rows();
    for (i, row) in rows.iter().enumerate() {
        let cells: Vec<String> = row.iter().map(|v| v.to_string()).collect();
        let _ = writeln!(out, "    [{}]{}", cells.join(", "), if i + 1 < rows.len() { "," } else { "" });
    }
    let _ = write!(out, "  ]");
}

fn write_common<M: MonoidOps>(out: &mut String, name: &str, m: &M) {
    let l = m.lattice();
    let names: Vec<String> = l.names().iter().map(|s| json_str(s)).collect();
    let covers: Vec<String> = l.covers().iter().map(|(a, b)| format!("[{a}, {b}]")).collect();
    let _ = writeln!(out, "{{");
    let _ = writeln!(out, "  \"name\": {},", json_str(name));
    let _ = writeln!(out, "  \"size\": {},", m.size());
    let _ = writeln!(out, "  \"elements\": [{}],", names.join(", "));
    let _ = writeln!(out, "  \"leq\": [{}],", covers.join(", "));
    write_matrix(out, "prod", &Table::from_fn(m.size(), |a, b| m.prod(a, b)));
    let _ = write!(out, ",\n  \"unit\": {}", m.unit());
}

/// Serializes an srl-monoid with its full arrow table and the cover relation.
pub fn emit_algebra(name: &str, s: &SrlMonoid) -> String {
    let mut out = String::new();
    write_common(&mut out, name, s);
    out.push_str(",\n");
    write_matrix(&mut out, "arrow", &Table::from_fn(s.size(), |a, b| s.arrow(a, b)));
    out.push_str("\n}\n");
    out
}

/// Serializes an srl-monoid by its `Q` instead of the arrow table.
pub fn emit_algebra_with_q(name: &str, s: &SrlMonoid) -> String {
    let mut out = String::new();
    write_common(&mut out, name, s);
    let q: Vec<String> = s.q_set().iter().map(|a| a.to_string()).collect();
    let _ = write!(out, ",\n  \"Q\": [{}]\n}}\n", q.join(", "));
    out
}

/// Serializes a commutative l-monoid.
pub fn emit_lmonoid(name: &str, m: &CommutativeLMonoid) -> String {
    let mut out = String::new();
    write_common(&mut out, name, m);
    out.push_str("\n}\n");
    out
}
