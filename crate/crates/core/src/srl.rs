//! Subresiduated lattice-ordered commutative monoids.
//!
//! An srl-monoid is stored by its arrow table. The designated subalgebra is
//! recovered as `Q = { a : e→a = a }`, and every arrow entry is the largest
//! `q ∈ Q` with `a·q <= b`.

use crate::carrier::{Elem, ElementSet, Table};
use crate::error::AlgebraError;
use crate::lattice::FiniteLattice;
use crate::monoid::{CommutativeLMonoid, MonoidOps};

/// Full signature `(A, ∧, ∨, ·, →, e)`.
pub trait Operations: MonoidOps {
    fn arrow(&self, a: Elem, b: Elem) -> Elem;

    /// `□(a) = e→a`
    fn boxed(&self, a: Elem) -> Elem {
        self.arrow(self.unit(), a)
    }
}

/// Any lattice with product, unit and arrow tables of the right shape.
///
/// Nothing beyond table shape is checked; this is the input type for basis
/// verification on arbitrary candidate structures.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Candidate {
    pub lattice: FiniteLattice,
    pub prod: Table,
    pub unit: Elem,
    pub arrow: Table,
}

impl Candidate {
    pub fn new(lattice: FiniteLattice, prod: Table, unit: Elem, arrow: Table) -> Result<Self, AlgebraError> {
        let n = lattice.size();
        if prod.size() != n {
            return Err(AlgebraError::Shape { table: "prod", size: n });
        }
        if arrow.size() != n {
            return Err(AlgebraError::Shape { table: "arrow", size: n });
        }
        if unit >= n {
            return Err(AlgebraError::IndexOutOfRange { index: unit, size: n });
        }
        Ok(Candidate { lattice, prod, unit, arrow })
    }
}

impl MonoidOps for Candidate {
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

impl Operations for Candidate {
    #[inline]
    fn arrow(&self, a: Elem, b: Elem) -> Elem {
        self.arrow.get(a, b)
    }
}

/// A validated srl-monoid with its derived caches.
#[derive(Clone, Debug)]
pub struct SrlMonoid {
    monoid: CommutativeLMonoid,
    arrow: Table,
    q: ElementSet,
    boxed: Vec<Elem>,
    /// `powers[k][a] = a^k` for `k <= n`
    powers: Vec<Vec<u8>>,
    /// `box_powers[k][a] = □^k(a)` for `k <= n`
    box_powers: Vec<Vec<u8>>,
}

impl PartialEq for SrlMonoid {
    fn eq(&self, other: &Self) -> bool {
        self.monoid == other.monoid && self.arrow == other.arrow
    }
}

impl Eq for SrlMonoid {}

impl SrlMonoid {
    fn assemble(monoid: CommutativeLMonoid, arrow: Table) -> SrlMonoid {
        let n = monoid.size();
        let e = monoid.unit();
        let boxed: Vec<Elem> = (0..n).map(|a| arrow.get(e, a)).collect();
        let q = (0..n).filter(|&a| boxed[a] == a).collect();

        let mut powers = vec![vec![e as u8; n]];
        for k in 1..=n {
            let row = (0..n).map(|a| monoid.prod(a, powers[k - 1][a] as Elem) as u8).collect();
            powers.push(row);
        }
        let mut box_powers = vec![(0..n).map(|a| a as u8).collect::<Vec<_>>()];
        box_powers.push(boxed.iter().map(|&b| b as u8).collect());
        for k in 2..=n.max(1) {
            let row = (0..n).map(|a| monoid.prod(boxed[a], box_powers[k - 1][a] as Elem) as u8).collect();
            box_powers.push(row);
        }
        SrlMonoid { monoid, arrow, q, boxed, powers, box_powers }
    }

    /// Residuates `m` relative to `q`: `a→b = max { x ∈ q : a·x <= b }`.
    pub fn residuate_from_q(m: CommutativeLMonoid, q: ElementSet) -> Result<SrlMonoid, AlgebraError> {
        let n = m.size();
        if let Some(bad) = q.difference(ElementSet::full(n)).first() {
            return Err(AlgebraError::IndexOutOfRange { index: bad, size: n });
        }
        check_q_subalgebra(&m, q)?;
        let mut arrow = Table::from_fn(n, |_, _| 0);
        for a in 0..n {
            for b in 0..n {
                let candidates: ElementSet = q.iter().filter(|&x| m.leq(m.prod(a, x), b)).collect();
                let best = m.lattice().max_of_subset(candidates).ok_or(AlgebraError::NotResiduated { a, b })?;
                arrow.set(a, b, best);
            }
        }
        Ok(Self::assemble(m, arrow))
    }

    /// Accepts an arrow table if the six-identity basis holds, then confirms
    /// that the derived `Q` reproduces every arrow entry as a maximum.
    pub fn from_arrow(m: CommutativeLMonoid, arrow: Table) -> Result<SrlMonoid, AlgebraError> {
        let n = m.size();
        if arrow.size() != n {
            return Err(AlgebraError::Shape { table: "arrow", size: n });
        }
        let candidate = Candidate::new(m.lattice().clone(), m.prod_table().clone(), m.unit(), arrow)?;
        if let Some((identity, witness)) = crate::basis::first_basis_violation(&candidate) {
            return Err(AlgebraError::BasisViolation { identity, witness });
        }
        let s = Self::assemble(m, candidate.arrow);
        if let Some((a, b)) = s.max_characterization_failure() {
            return Err(AlgebraError::InternalInvariantViolation(format!(
                "arrow[{a}][{b}] is not max{{q in Q : a*q <= b}}"
            )));
        }
        Ok(s)
    }

    /// Like [`SrlMonoid::from_arrow`] but starting from raw tables.
    pub fn from_tables(
        lattice: FiniteLattice,
        prod: Table,
        unit: Elem,
        arrow: Table,
    ) -> Result<SrlMonoid, AlgebraError> {
        Self::from_arrow(CommutativeLMonoid::new(lattice, prod, unit)?, arrow)
    }

    fn max_characterization_failure(&self) -> Option<(Elem, Elem)> {
        let n = self.size();
        for a in 0..n {
            for b in 0..n {
                let candidates: ElementSet = self.q.iter().filter(|&x| self.leq(self.prod(a, x), b)).collect();
                if self.lattice().max_of_subset(candidates) != Some(self.arrow(a, b)) {
                    return Some((a, b));
                }
            }
        }
        None
    }

    pub fn monoid(&self) -> &CommutativeLMonoid {
        &self.monoid
    }

    pub fn arrow_table(&self) -> &Table {
        &self.arrow
    }

    /// `Q = { a : e→a = a }`
    pub fn q_set(&self) -> ElementSet {
        self.q
    }

    /// `A⁻ = { a : a <= e }`
    pub fn negative_cone(&self) -> ElementSet {
        self.lattice().down_set(self.unit())
    }

    /// `a^k`, with `a^0 = e`.
    pub fn pow(&self, a: Elem, k: usize) -> Elem {
        match self.powers.get(k) {
            Some(row) => row[a] as Elem,
            None => {
                let last = self.powers.len() - 1;
                (last..k).fold(self.powers[last][a] as Elem, |acc, _| self.prod(a, acc))
            }
        }
    }

    /// `□^0(a) = a`, `□^1(a) = □(a)`, `□^(k+1)(a) = □(a)·□^k(a)` for `k >= 1`.
    pub fn box_pow(&self, a: Elem, k: usize) -> Elem {
        match self.box_powers.get(k) {
            Some(row) => row[a] as Elem,
            None => {
                let last = self.box_powers.len() - 1;
                (last..k).fold(self.box_powers[last][a] as Elem, |acc, _| self.prod(self.boxed[a], acc))
            }
        }
    }

    /// `s(a,b) = (a→b) ∧ (b→a) ∧ e`
    pub fn s_term(&self, a: Elem, b: Elem) -> Elem {
        self.meet(self.meet(self.arrow(a, b), self.arrow(b, a)), self.unit())
    }

    pub fn classify(&self) -> Classification {
        let l = self.lattice();
        let (top, bottom) = (l.top(), l.bottom());
        let n = self.size();
        let integral = top == self.unit();
        let crl = (0..n).all(|a| self.boxed[a] == a);
        let prod_is_meet = (0..n).all(|a| (0..n).all(|b| self.prod(a, b) == self.meet(a, b)));
        Classification {
            integral,
            crl,
            sr_lattice: prod_is_meet && integral,
            bounded: l.down_set(top).len() == n && l.up_set(bottom).len() == n,
            chain: l.is_chain(),
        }
    }

    /// The isomorphic copy in which element `a` is renamed to `perm[a]`.
    pub fn relabel(&self, perm: &[Elem]) -> SrlMonoid {
        let mut names = vec![String::new(); self.size()];
        for (a, name) in self.names().iter().enumerate() {
            names[perm[a]] = name.clone();
        }
        self.relabel_named(perm, names)
    }

    pub fn relabel_named(&self, perm: &[Elem], names: Vec<String>) -> SrlMonoid {
        Self::assemble(self.monoid.relabel(perm, names), self.arrow.relabel(perm))
    }

    /// The same algebra with new display names.
    pub fn renamed(&self, names: Vec<String>) -> SrlMonoid {
        let identity: Vec<Elem> = (0..self.size()).collect();
        self.relabel_named(&identity, names)
    }
}

impl MonoidOps for SrlMonoid {
    fn lattice(&self) -> &FiniteLattice {
        self.monoid.lattice()
    }
    #[inline]
    fn prod(&self, a: Elem, b: Elem) -> Elem {
        self.monoid.prod(a, b)
    }
    fn unit(&self) -> Elem {
        self.monoid.unit()
    }
}

impl Operations for SrlMonoid {
    #[inline]
    fn arrow(&self, a: Elem, b: Elem) -> Elem {
        self.arrow.get(a, b)
    }
    #[inline]
    fn boxed(&self, a: Elem) -> Elem {
        self.boxed[a]
    }
}

/// Classification flags of an srl-monoid.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub struct Classification {
    /// a top exists and equals `e`
    pub integral: bool,
    /// `□(a) = a` for every `a`, i.e. `Q = A`
    pub crl: bool,
    /// `·` is `∧` and the algebra is integral (finite, hence bounded)
    pub sr_lattice: bool,
    pub bounded: bool,
    pub chain: bool,
}

fn check_q_subalgebra(m: &CommutativeLMonoid, q: ElementSet) -> Result<(), AlgebraError> {
    let e = m.unit();
    if !q.contains(e) {
        return Err(AlgebraError::QNotSubalgebra { law: "contains e", witness: vec![e] });
    }
    for a in q.iter() {
        for b in q.iter() {
            let checks: [(&'static str, Elem); 3] = [
                ("closed under meet", m.meet(a, b)),
                ("closed under join", m.join(a, b)),
                ("closed under product", m.prod(a, b)),
            ];
            for (law, v) in checks {
                if !q.contains(v) {
                    return Err(AlgebraError::QNotSubalgebra { law, witness: vec![a, b] });
                }
            }
        }
    }
    Ok(())
}

/// Subsets of the carrier that contain `e` and are closed under `∧`, `∨`, `·`.
pub fn q_candidates(m: &CommutativeLMonoid) -> Vec<ElementSet> {
    let n = m.size();
    let e = m.unit();
    (0u32..1 << n).map(ElementSet::from_bits).filter(|&q| q.contains(e) && check_q_subalgebra(m, q).is_ok()).collect()
}
