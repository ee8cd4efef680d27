//! Finite subresiduated lattice-ordered commutative monoids (srl-monoids).
//!
//! An srl-monoid is a commutative l-monoid `(A, ∧, ∨, ·, e)` together with a
//! subalgebra `Q` such that every `a→b = max { q ∈ Q : a·q <= b }` exists.
//! This crate builds them from tables, checks their equational bases,
//! computes congruence lattices and strongly convex subalgebras, and
//! enumerates them up to isomorphism.

pub mod basis;
pub mod canon;
pub mod carrier;
pub mod catalog;
pub mod congruence;
pub mod enumerate;
pub mod error;
pub mod examples;
pub mod format;
pub mod generation;
pub mod identities;
pub mod lattice;
pub mod monoid;
pub mod report;
pub mod srl;
pub mod subalgebra;
pub mod suite;

pub use canon::{canonical_form, canonicalize, CanonicalForm};
pub use carrier::{Elem, ElementSet, Table, MAX_CARRIER};
pub use catalog::CatalogEntry;
pub use congruence::Congruence;
pub use error::{AlgebraError, LawViolation, MonoidLaw};
pub use format::{FormatError, Loaded};
pub use generation::{Generated, GeneratorWitness};
pub use identities::IdentityId;
pub use lattice::FiniteLattice;
pub use monoid::{verify_lmonoid, CommutativeLMonoid, MonoidOps};
pub use report::{Check, Report, Status};
pub use srl::{Candidate, Classification, Operations, SrlMonoid};
pub use subalgebra::{SubalgebraFlags, SubalgebraSet};

/// Whether results guaranteed by theory are re-verified at runtime.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Mode {
    /// Re-check and fail loudly on a violated guarantee.
    #[default]
    Verify,
    /// Trust the guarantee.
    Fast,
}
