use std::fmt;

use thiserror::Error;

use crate::Elem;

/// Which of the partial-order laws an order relation violates.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OrderLaw {
    Reflexivity,
    Antisymmetry,
    Transitivity,
}

impl fmt::Display for OrderLaw {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            OrderLaw::Reflexivity => "reflexivity",
            OrderLaw::Antisymmetry => "antisymmetry",
            OrderLaw::Transitivity => "transitivity",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BoundKind {
    Meet,
    Join,
}

impl fmt::Display for BoundKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            BoundKind::Meet => "greatest lower bound",
            BoundKind::Join => "least upper bound",
        })
    }
}

/// A law of commutative l-monoids, as reported by [`crate::verify_lmonoid`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MonoidLaw {
    Commutativity,
    Associativity,
    Unit,
    JoinDistributivity,
    Monotonicity,
}

impl fmt::Display for MonoidLaw {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            MonoidLaw::Commutativity => "commutativity",
            MonoidLaw::Associativity => "associativity",
            MonoidLaw::Unit => "unit",
            MonoidLaw::JoinDistributivity => "join-distributivity",
            MonoidLaw::Monotonicity => "monotonicity",
        })
    }
}

/// First violated l-monoid law together with the witnessing elements.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LawViolation {
    pub law: MonoidLaw,
    pub witness: Vec<Elem>,
}

impl fmt::Display for LawViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} fails at {:?}", self.law, self.witness)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("carrier must be non-empty")]
    EmptyCarrier,

    #[error("carrier size {size} exceeds the bound {bound}")]
    SizeBound { size: usize, bound: usize },

    #[error("element index {index} out of range for a carrier of size {size}")]
    IndexOutOfRange { index: usize, size: usize },

    #[error("table `{table}` must be {size}x{size}")]
    Shape { table: &'static str, size: usize },

    #[error("relation is not a partial order: {law} fails at {witness:?}")]
    NotAPartialOrder { law: OrderLaw, witness: Vec<Elem> },

    #[error("not a lattice: elements {a} and {b} have no {bound}")]
    NotALattice { a: Elem, b: Elem, bound: BoundKind },

    #[error("not a commutative l-monoid: {0}")]
    NotLMonoid(LawViolation),

    #[error("Q is not a subalgebra: {law} fails at {witness:?}")]
    QNotSubalgebra { law: &'static str, witness: Vec<Elem> },

    #[error("no residual for ({a}, {b}): {{q in Q : a*q <= b}} has no maximum")]
    NotResiduated { a: Elem, b: Elem },

    #[error("identity {identity} of the six-identity basis fails at {witness:?}")]
    BasisViolation { identity: u8, witness: Vec<Elem> },

    #[error("generator {0} is not below the unit")]
    GeneratorNotNegative(Elem),

    #[error("subset is not a convex subalgebra")]
    NotConvex,

    #[error("Q = L_{n} is not a subchain of L_{m}: n - 1 must divide m - 1")]
    NotASubchain { m: usize, n: usize },

    #[error("internal invariant violated: {0}")]
    InternalInvariantViolation(String),
}
