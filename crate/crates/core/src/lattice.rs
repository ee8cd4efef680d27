//! Finite lattices given by their order relation.
//!
//! The order is the source of truth. Meet and join tables are derived once at
//! construction by scanning lower and upper bounds, and are never mutated.

use crate::carrier::{Elem, ElementSet, Table, MAX_CARRIER};
use crate::error::{AlgebraError, BoundKind, OrderLaw};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteLattice {
    names: Vec<String>,
    /// `up[a] = { b : a <= b }`
    up: Vec<ElementSet>,
    /// `down[a] = { b : b <= a }`
    down: Vec<ElementSet>,
    meet: Table,
    join: Table,
}

impl FiniteLattice {
    /// Builds a lattice from a full order matrix, `leq[a][b]` meaning `a <= b`.
    ///
    /// The matrix must already be a partial order; use [`FiniteLattice::from_pairs`]
    /// to start from a cover relation.
    pub fn from_matrix(names: Vec<String>, leq: &[Vec<bool>]) -> Result<Self, AlgebraError> {
        let n = names.len();
        check_size(n)?;
        if leq.len() != n || leq.iter().any(|r| r.len() != n) {
            return Err(AlgebraError::Shape { table: "leq", size: n });
        }
        let up: Vec<ElementSet> = leq.iter().map(|row| (0..n).filter(|&b| row[b]).collect()).collect();
        check_partial_order(&up)?;
        Self::from_up_sets(names, up)
    }

    /// Builds a lattice from `(a, b)` pairs meaning `a <= b`, taking the
    /// reflexive-transitive closure first. Hasse diagrams and full relations
    /// are both accepted.
    pub fn from_pairs(names: Vec<String>, pairs: &[(Elem, Elem)]) -> Result<Self, AlgebraError> {
        let n = names.len();
        check_size(n)?;
        let mut up: Vec<ElementSet> = (0..n).map(ElementSet::singleton).collect();
        for &(a, b) in pairs {
            for x in [a, b] {
                if x >= n {
                    return Err(AlgebraError::IndexOutOfRange { index: x, size: n });
                }
            }
            up[a].insert(b);
        }
        // Warshall closure on bitset rows.
        for k in 0..n {
            for a in 0..n {
                if up[a].contains(k) {
                    up[a] = up[a].union(up[k]);
                }
            }
        }
        check_partial_order(&up)?;
        Self::from_up_sets(names, up)
    }

    /// The chain `names[0] < names[1] < ...`.
    pub fn chain(names: Vec<String>) -> Result<Self, AlgebraError> {
        let pairs: Vec<(Elem, Elem)> = (1..names.len()).map(|i| (i - 1, i)).collect();
        Self::from_pairs(names, &pairs)
    }

    fn from_up_sets(names: Vec<String>, up: Vec<ElementSet>) -> Result<Self, AlgebraError> {
        let n = names.len();
        let mut down = vec![ElementSet::EMPTY; n];
        for (a, set) in up.iter().enumerate() {
            for b in set.iter() {
                down[b].insert(a);
            }
        }
        let mut meet = Table::from_fn(n, |_, _| 0);
        let mut join = Table::from_fn(n, |_, _| 0);
        for a in 0..n {
            for b in a..n {
                let lower = down[a].intersection(down[b]);
                let glb = lower.iter().find(|&g| lower.is_subset(down[g])).ok_or(AlgebraError::NotALattice {
                    a,
                    b,
                    bound: BoundKind::Meet,
                })?;
                let upper = up[a].intersection(up[b]);
                let lub = upper.iter().find(|&l| upper.is_subset(up[l])).ok_or(AlgebraError::NotALattice {
                    a,
                    b,
                    bound: BoundKind::Join,
                })?;
                meet.set(a, b, glb);
                meet.set(b, a, glb);
                join.set(a, b, lub);
                join.set(b, a, lub);
            }
        }
        Ok(FiniteLattice { names, up, down, meet, join })
    }

    pub fn size(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, a: Elem) -> &str {
        &self.names[a]
    }

    pub fn index_of(&self, name: &str) -> Option<Elem> {
        self.names.iter().position(|x| x == name)
    }

    #[inline]
    pub fn leq(&self, a: Elem, b: Elem) -> bool {
        self.up[a].contains(b)
    }

    #[inline]
    pub fn meet(&self, a: Elem, b: Elem) -> Elem {
        self.meet.get(a, b)
    }

    #[inline]
    pub fn join(&self, a: Elem, b: Elem) -> Elem {
        self.join.get(a, b)
    }

    pub fn meet_table(&self) -> &Table {
        &self.meet
    }

    pub fn join_table(&self) -> &Table {
        &self.join
    }

    pub fn up_set(&self, a: Elem) -> ElementSet {
        self.up[a]
    }

    pub fn down_set(&self, a: Elem) -> ElementSet {
        self.down[a]
    }

    /// `{ c : a <= c <= b }`
    pub fn interval(&self, a: Elem, b: Elem) -> ElementSet {
        self.up[a].intersection(self.down[b])
    }

    pub fn top(&self) -> Elem {
        (0..self.size()).find(|&a| self.down[a].len() == self.size()).expect("finite lattice has a top")
    }

    pub fn bottom(&self) -> Elem {
        (0..self.size()).find(|&a| self.up[a].len() == self.size()).expect("finite lattice has a bottom")
    }

    pub fn is_chain(&self) -> bool {
        (0..self.size()).all(|a| self.up[a].union(self.down[a]).len() == self.size())
    }

    /// The element of `s` above every element of `s`, if any.
    pub fn max_of_subset(&self, s: ElementSet) -> Option<Elem> {
        s.iter().find(|&m| s.is_subset(self.down[m]))
    }

    /// Full order matrix.
    pub fn leq_matrix(&self) -> Vec<Vec<bool>> {
        (0..self.size()).map(|a| (0..self.size()).map(|b| self.leq(a, b)).collect()).collect()
    }

    /// Cover pairs `(a, b)`: `a < b` with nothing strictly between.
    pub fn covers(&self) -> Vec<(Elem, Elem)> {
        let mut out = Vec::new();
        for a in 0..self.size() {
            for b in self.up[a].iter() {
                if a != b && self.interval(a, b).len() == 2 {
                    out.push((a, b));
                }
            }
        }
        out
    }

    /// The same lattice with element `a` renamed to `perm[a]`.
    pub fn relabel(&self, perm: &[Elem], names: Vec<String>) -> FiniteLattice {
        let n = self.size();
        let mut up = vec![ElementSet::EMPTY; n];
        for a in 0..n {
            up[perm[a]] = self.up[a].iter().map(|b| perm[b]).collect();
        }
        Self::from_up_sets(names, up).expect("relabeling preserves the lattice property")
    }

    pub fn is_distributive(&self) -> bool {
        let n = self.size();
        (0..n).all(|a| {
            (0..n).all(|b| (0..n).all(|c| self.meet(self.join(a, b), c) == self.join(self.meet(a, c), self.meet(b, c))))
        })
    }
}

fn check_size(n: usize) -> Result<(), AlgebraError> {
    if n == 0 {
        return Err(AlgebraError::EmptyCarrier);
    }
    if n > MAX_CARRIER {
        return Err(AlgebraError::SizeBound { size: n, bound: MAX_CARRIER });
    }
    Ok(())
}

fn check_partial_order(up: &[ElementSet]) -> Result<(), AlgebraError> {
    let n = up.len();
    if let Some(a) = (0..n).find(|&a| !up[a].contains(a)) {
        return Err(AlgebraError::NotAPartialOrder { law: OrderLaw::Reflexivity, witness: vec![a] });
    }
    for a in 0..n {
        for b in up[a].iter() {
            if a != b && up[b].contains(a) {
                return Err(AlgebraError::NotAPartialOrder { law: OrderLaw::Antisymmetry, witness: vec![a, b] });
            }
        }
    }
    for a in 0..n {
        for b in up[a].iter() {
            if let Some(c) = up[b].difference(up[a]).first() {
                return Err(AlgebraError::NotAPartialOrder { law: OrderLaw::Transitivity, witness: vec![a, b, c] });
            }
        }
    }
    Ok(())
}

pub(crate) fn names<S: AsRef<str>>(xs: &[S]) -> Vec<String> {
    xs.iter().map(|s| s.as_ref().to_string()).collect()
}
