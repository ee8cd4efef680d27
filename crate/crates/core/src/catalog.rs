//! On-disk catalogs of enumerated algebras: `n<k>/<hash>.alg` files plus an
//! `index.tsv` summary.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use rayon::prelude::*;

use crate::canon::{canonical_relabel, CanonicalForm};
use crate::congruence::all_congruences;
use crate::enumerate::Enumerated;
use crate::error::AlgebraError;
use crate::format::{self, FormatError, Loaded};
use crate::identities::{holds, IdentityId};
use crate::monoid::MonoidOps;
use crate::srl::{Classification, SrlMonoid};
use crate::subalgebra::all_strongly_convex;

pub const INDEX_HEADER: &str = "name\tsize\tintegral\tcrl\tsr_lattice\tchain\tC1\tC2\tE1\tE2\tn_con\tn_scs";

#[derive(Clone, Debug)]
pub struct CatalogEntry {
    pub name: String,
    pub form: CanonicalForm,
    pub algebra: SrlMonoid,
    pub class: Classification,
    /// Verdicts for `C1, C2, E1, E2`, in that order.
    pub identities: [bool; 4],
    pub n_con: usize,
    pub n_scs: usize,
}

impl CatalogEntry {
    /// Computes every summary field from the algebra.
    pub fn new(name: impl Into<String>, form: CanonicalForm, algebra: SrlMonoid) -> Result<CatalogEntry, AlgebraError> {
        let identities = [IdentityId::C1, IdentityId::C2, IdentityId::E1, IdentityId::E2].map(|i| holds(&algebra, i));
        Ok(CatalogEntry {
            name: name.into(),
            form,
            class: algebra.classify(),
            identities,
            n_con: all_congruences(&algebra)?.len(),
            n_scs: all_strongly_convex(&algebra)?.len(),
            algebra,
        })
    }

    pub fn from_enumerated(e: Enumerated) -> Result<CatalogEntry, AlgebraError> {
        CatalogEntry::new(e.name, e.form, e.algebra)
    }

    pub fn index_row(&self) -> String {
        let b = |v: bool| if v { "true" } else { "false" };
        let c = &self.class;
        let [c1, c2, e1, e2] = self.identities;
        format!(
            "{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}",
            self.name,
            self.algebra.size(),
            b(c.integral),
            b(c.crl),
            b(c.sr_lattice),
            b(c.chain),
            b(c1),
            b(c2),
            b(e1),
            b(e2),
            self.n_con,
            self.n_scs
        )
    }

    pub fn relative_path(&self) -> PathBuf {
        PathBuf::from(format!("n{}", self.algebra.size())).join(format!("{}.alg", self.form.hash()))
    }
}

/// Builds entries for enumerated algebras, in parallel, keeping order.
pub fn build_entries(found: Vec<Enumerated>) -> Result<Vec<CatalogEntry>, AlgebraError> {
    found.into_par_iter().map(CatalogEntry::from_enumerated).collect()
}

#[derive(Debug, thiserror::Error)]
pub enum CatalogError {
    #[error("{path}: {source}")]
    Format { path: String, source: FormatError },
    #[error("{path}: {message}")]
    Invalid { path: String, message: String },
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

fn io_error(path: &Path, e: std::io::Error) -> CatalogError {
    CatalogError::Format {
        path: path.display().to_string(),
        source: FormatError::Io { path: path.display().to_string(), message: e.to_string() },
    }
}

/// Writes `dir/n<k>/<hash>.alg` for every entry and `dir/index.tsv`.
pub fn write_catalog(dir: &Path, entries: &[CatalogEntry]) -> Result<(), CatalogError> {
    let mut index = String::new();
    let _ = writeln!(index, "{INDEX_HEADER}");
    for e in entries {
        let path = dir.join(e.relative_path());
        if let Some(parent) = path.parent() {
            fs::create_dir_all(parent).map_err(|err| io_error(parent, err))?;
        }
        fs::write(&path, format::emit_algebra(&e.name, &e.algebra)).map_err(|err| io_error(&path, err))?;
        let _ = writeln!(index, "{}", e.index_row());
    }
    fs::create_dir_all(dir).map_err(|err| io_error(dir, err))?;
    let path = dir.join("index.tsv");
    fs::write(&path, index).map_err(|err| io_error(&path, err))
}

/// Reads every `n*/*.alg` under `dir`, recomputes each summary and checks it
/// against `index.tsv`. Entries come back in index order.
pub fn load_catalog(dir: &Path) -> Result<Vec<CatalogEntry>, CatalogError> {
    let index_path = dir.join("index.tsv");
    let index = fs::read_to_string(&index_path).map_err(|e| io_error(&index_path, e))?;
    let mut lines = index.lines();
    if lines.next() != Some(INDEX_HEADER) {
        return Err(CatalogError::Invalid {
            path: index_path.display().to_string(),
            message: "unexpected header".into(),
        });
    }
    let rows: Vec<&str> = lines.filter(|l| !l.trim().is_empty()).collect();

    let mut files = Vec::new();
    for sub in fs::read_dir(dir).map_err(|e| io_error(dir, e))? {
        let sub = sub.map_err(|e| io_error(dir, e))?.path();
        let is_size_dir = sub.is_dir() && sub.file_name().and_then(|n| n.to_str()).is_some_and(|n| n.starts_with('n'));
        if !is_size_dir {
            continue;
        }
        for f in fs::read_dir(&sub).map_err(|e| io_error(&sub, e))? {
            let f = f.map_err(|e| io_error(&sub, e))?.path();
            if f.extension().is_some_and(|x| x == "alg") {
                files.push(f);
            }
        }
    }
    files.sort();

    let loaded: Vec<(PathBuf, String, SrlMonoid)> = files
        .into_iter()
        .map(|p| match format::load_algebra(&p) {
            Ok(Loaded::Srl { name, algebra }) => Ok((p, name, algebra)),
            Ok(Loaded::LMonoid { .. }) => {
                Err(CatalogError::Invalid { path: p.display().to_string(), message: "missing `arrow` or `Q`".into() })
            }
            Err(source) => Err(CatalogError::Format { path: p.display().to_string(), source }),
        })
        .collect::<Result<_, _>>()?;

    let mut entries: Vec<CatalogEntry> = Vec::with_capacity(rows.len());
    for row in &rows {
        let name = row.split('\t').next().unwrap_or_default();
        let Some((path, _, algebra)) = loaded.iter().find(|(_, n, _)| n == name) else {
            return Err(CatalogError::Invalid {
                path: index_path.display().to_string(),
                message: format!("no algebra file for `{name}`"),
            });
        };
        let (form, _) = canonical_relabel(algebra)?;
        let expected = PathBuf::from(format!("{}.alg", form.hash()));
        if path.file_name() != expected.file_name() {
            return Err(CatalogError::Invalid {
                path: path.display().to_string(),
                message: format!("file name does not match canonical hash {}", form.hash()),
            });
        }
        let entry = CatalogEntry::new(name, form, algebra.clone())?;
        if entry.index_row() != *row {
            return Err(CatalogError::Invalid {
                path: index_path.display().to_string(),
                message: format!(
                    "row for `{name}` disagrees with the recomputed summary:\n  index:    {row}\n  computed: {}",
                    entry.index_row()
                ),
            });
        }
        entries.push(entry);
    }
    if entries.len() != loaded.len() {
        return Err(CatalogError::Invalid {
            path: dir.display().to_string(),
            message: format!("{} algebra files but {} index rows", loaded.len(), entries.len()),
        });
    }
    Ok(entries)
}
