//! Commutative lattice-ordered monoids.

use crate::carrier::{Elem, Table};
use crate::error::{AlgebraError, LawViolation, MonoidLaw};
use crate::lattice::FiniteLattice;

/// Read access to the `(A, <=, ∧, ∨, ·, e)` part of an algebra.
pub trait MonoidOps {
    fn lattice(&self) -> &FiniteLattice;
    fn prod(&self, a: Elem, b: Elem) -> Elem;
    fn unit(&self) -> Elem;

    fn size(&self) -> usize {
        self.lattice().size()
    }
    fn leq(&self, a: Elem, b: Elem) -> bool {
        self.lattice().leq(a, b)
    }
    fn meet(&self, a: Elem, b: Elem) -> Elem {
        self.lattice().meet(a, b)
    }
    fn join(&self, a: Elem, b: Elem) -> Elem {
        self.lattice().join(a, b)
    }
    fn names(&self) -> &[String] {
        self.lattice().names()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CommutativeLMonoid {
    lattice: FiniteLattice,
    prod: Table,
    unit: Elem,
}

impl CommutativeLMonoid {
    /// Validates every l-monoid law exhaustively before accepting the tables.
    pub fn new(lattice: FiniteLattice, prod: Table, unit: Elem) -> Result<Self, AlgebraError> {
        let n = lattice.size();
        if prod.size() != n {
            return Err(AlgebraError::Shape { table: "prod", size: n });
        }
        if unit >= n {
            return Err(AlgebraError::IndexOutOfRange { index: unit, size: n });
        }
        verify_lmonoid(&lattice, &prod, unit).map_err(AlgebraError::NotLMonoid)?;
        Ok(CommutativeLMonoid { lattice, prod, unit })
    }

    pub fn prod_table(&self) -> &Table {
        &self.prod
    }

    pub(crate) fn relabel(&self, perm: &[Elem], names: Vec<String>) -> CommutativeLMonoid {
        CommutativeLMonoid {
            lattice: self.lattice.relabel(perm, names),
            prod: self.prod.relabel(perm),
            unit: perm[self.unit],
        }
    }
}

impl MonoidOps for CommutativeLMonoid {
    fn lattice(&self) -> &FiniteLattice {
        &self.lattice
    }
    #[inline]
    fn prod(&self, a: Elem, b: Elem) -> Elem {
        self.prod.get(a, b)
    }
    fn unit(&self) -> Elem {
        self.unit
    }
}

/// Checks commutativity, associativity, unit, join-distributivity and
/// monotonicity, returning the first violation found.
pub fn verify_lmonoid(lattice: &FiniteLattice, prod: &Table, unit: Elem) -> Result<(), LawViolation> {
    let n = lattice.size();
    let p = |a, b| prod.get(a, b);
    let fail = |law, witness: Vec<Elem>| Err(LawViolation { law, witness });
    for a in 0..n {
        for b in 0..n {
            if p(a, b) != p(b, a) {
                return fail(MonoidLaw::Commutativity, vec![a, b]);
            }
        }
    }
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                if p(p(a, b), c) != p(a, p(b, c)) {
                    return fail(MonoidLaw::Associativity, vec![a, b, c]);
                }
            }
        }
    }
    for a in 0..n {
        if p(unit, a) != a {
            return fail(MonoidLaw::Unit, vec![a]);
        }
    }
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                if p(lattice.join(a, b), c) != lattice.join(p(a, c), p(b, c)) {
                    return fail(MonoidLaw::JoinDistributivity, vec![a, b, c]);
                }
            }
        }
    }
    // Implied by join-distributivity; kept as an explicit check.
    for a in 0..n {
        for b in lattice.up_set(a).iter() {
            for c in 0..n {
                if !lattice.leq(p(a, c), p(b, c)) {
                    return fail(MonoidLaw::Monotonicity, vec![a, b, c]);
                }
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::names;

    fn chain(ns: &[&str]) -> FiniteLattice {
        FiniteLattice::chain(names(ns)).unwrap()
    }

    #[test]
    fn middle_unit_chain_product_is_an_lmonoid() {
        // 0 < e < 1, 0 absorbing, e unit, 1*1 = 1
        let prod = Table::from_rows("prod", 3, &[[0, 0, 0], [0, 1, 2], [0, 2, 2]]).unwrap();
        assert_eq!(verify_lmonoid(&chain(&["0", "e", "1"]), &prod, 1), Ok(()));
    }

    #[test]
    fn nilpotent_chain_product_is_an_lmonoid() {
        let prod = Table::from_rows("prod", 3, &[[0, 0, 0], [0, 0, 1], [0, 1, 2]]).unwrap();
        assert_eq!(verify_lmonoid(&chain(&["0", "a", "1"]), &prod, 2), Ok(()));
    }

    /// Brute force over all sixteen 2x2 tables on the 2-chain: every
    /// commutative table that is not associative is reported as such, with a
    /// witness that really breaks associativity.
    #[test]
    fn non_associative_two_element_tables_are_reported() {
        let l = chain(&["0", "1"]);
        let mut found = 0;
        for code in 0..16usize {
            let prod = Table::from_fn(2, |a, b| code >> (2 * a + b) & 1);
            let commutative = prod.get(0, 1) == prod.get(1, 0);
            let associative = (0..8).all(|t| {
                let (a, b, c) = (t & 1, t >> 1 & 1, t >> 2 & 1);
                prod.get(prod.get(a, b), c) == prod.get(a, prod.get(b, c))
            });
            if commutative && !associative {
                found += 1;
                let err = verify_lmonoid(&l, &prod, 1).unwrap_err();
                assert_eq!(err.law, MonoidLaw::Associativity);
                let [a, b, c] = [err.witness[0], err.witness[1], err.witness[2]];
                assert_ne!(prod.get(prod.get(a, b), c), prod.get(a, prod.get(b, c)));
            }
        }
        assert!(found > 0);
    }

    #[test]
    fn non_distributive_product_rejected() {
        // 0 < e < 1 with 1*1 = 0 breaks monotonicity / join-distributivity.
        let l = chain(&["0", "e", "1"]);
        let prod = Table::from_rows("prod", 3, &[[0, 0, 0], [0, 1, 2], [0, 2, 0]]).unwrap();
        let err = verify_lmonoid(&l, &prod, 1).unwrap_err();
        assert_eq!(err.law, MonoidLaw::JoinDistributivity);
    }
}
