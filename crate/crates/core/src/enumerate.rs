//! Exhaustive generation of srl-monoids up to isomorphism.
//!
//! Pipeline per size: lattices (naturally labeled, deduplicated), then every
//! unit and every commutative associative join-distributive product by
//! backtracking, then every admissible `Q`, then deduplication by canonical
//! form.

use std::collections::BTreeMap;

use rayon::prelude::*;

use crate::canon::{canonical_relabel, CanonicalForm};
use crate::carrier::{Elem, ElementSet, Table};
use crate::error::AlgebraError;
use crate::lattice::FiniteLattice;
use crate::monoid::CommutativeLMonoid;
use crate::srl::{q_candidates, SrlMonoid};
use crate::Mode;

/// Default size cap for enumeration.
pub const DEFAULT_MAX_SIZE: usize = 5;
/// Hard cap.
pub const ENUMERATION_BOUND: usize = 6;

fn placeholder_names(n: usize) -> Vec<String> {
    (0..n).map(|i| i.to_string()).collect()
}

/// All lattices on `n` elements up to isomorphism, with element `0` the
/// bottom, `n - 1` the top, and `i < j` whenever `i` lies below `j`.
pub fn lattices(n: usize) -> Vec<FiniteLattice> {
    if n == 0 {
        return Vec::new();
    }
    if n <= 2 {
        return vec![FiniteLattice::chain(placeholder_names(n)).expect("chain")];
    }
    // free pairs: i < j among the middle elements 1..n-1
    let free: Vec<(Elem, Elem)> = (1..n - 1).flat_map(|i| (i + 1..n - 1).map(move |j| (i, j))).collect();
    let mut seen: BTreeMap<Vec<u8>, FiniteLattice> = BTreeMap::new();
    for mask in 0u32..1 << free.len() {
        let mut leq = vec![vec![false; n]; n];
        for (a, row) in leq.iter_mut().enumerate() {
            row[a] = true;
            row[n - 1] = true;
        }
        leq[0].iter_mut().for_each(|x| *x = true);
        for (k, &(i, j)) in free.iter().enumerate() {
            if mask >> k & 1 == 1 {
                leq[i][j] = true;
            }
        }
        let transitive = (0..n).all(|a| (0..n).all(|b| !leq[a][b] || (0..n).all(|c| !leq[b][c] || leq[a][c])));
        if !transitive {
            continue;
        }
        let Ok(l) = FiniteLattice::from_matrix(placeholder_names(n), &leq) else { continue };
        seen.entry(lattice_key(&l)).or_insert(l);
    }
    seen.into_values().collect()
}

/// Least order-matrix encoding over relabelings of the middle elements.
fn lattice_key(l: &FiniteLattice) -> Vec<u8> {
    let n = l.size();
    let mut middle: Vec<Elem> = (1..n - 1).collect();
    let mut best: Option<Vec<u8>> = None;
    permute(&mut middle, 0, &mut |mid| {
        let order: Vec<Elem> = std::iter::once(0).chain(mid.iter().copied()).chain(std::iter::once(n - 1)).collect();
        let code: Vec<u8> = order.iter().flat_map(|&a| order.iter().map(move |&b| l.leq(a, b) as u8)).collect();
        if best.as_ref().is_none_or(|b| code < *b) {
            best = Some(code);
        }
    });
    best.unwrap_or_default()
}

fn permute(items: &mut [Elem], k: usize, visit: &mut dyn FnMut(&[Elem])) {
    if k + 1 >= items.len() {
        visit(items);
        return;
    }
    for i in k..items.len() {
        items.swap(k, i);
        permute(items, k + 1, visit);
        items.swap(k, i);
    }
}

const UNSET: u8 = u8::MAX;

struct ProductSearch<'a> {
    l: &'a FiniteLattice,
    n: usize,
    unit: Elem,
    table: Vec<u8>,
    cells: Vec<(Elem, Elem)>,
    out: Vec<Table>,
}

impl ProductSearch<'_> {
    fn get(&self, a: Elem, b: Elem) -> u8 {
        self.table[a * self.n + b]
    }

    fn set(&mut self, a: Elem, b: Elem, v: u8) {
        self.table[a * self.n + b] = v;
        self.table[b * self.n + a] = v;
    }

    /// Checks every law instance whose table entries are all assigned.
    fn consistent(&self) -> bool {
        let (n, l) = (self.n, self.l);
        let get = |a: Elem, b: Elem| Some(self.get(a, b)).filter(|&v| v != UNSET).map(Elem::from);
        for a in 0..n {
            for b in 0..n {
                let Some(ab) = get(a, b) else { continue };
                for c in 0..n {
                    if let Some(cb) = get(c, b) {
                        if l.leq(a, c) && !l.leq(ab, cb) {
                            return false;
                        }
                        if let Some(j) = get(l.join(a, c), b) {
                            if j != l.join(ab, cb) {
                                return false;
                            }
                        }
                    }
                    if let (Some(lhs), Some(bc)) = (get(ab, c), get(b, c)) {
                        if get(a, bc).is_some_and(|rhs| rhs != lhs) {
                            return false;
                        }
                    }
                }
            }
        }
        true
    }

    fn run(&mut self, k: usize) {
        if k == self.cells.len() {
            let t = Table::from_fn(self.n, |a, b| self.get(a, b) as Elem);
            self.out.push(t);
            return;
        }
        let (a, b) = self.cells[k];
        for v in 0..self.n as u8 {
            self.set(a, b, v);
            if self.consistent() {
                self.run(k + 1);
            }
        }
        self.set(a, b, UNSET);
    }
}

/// Every commutative l-monoid product on `l` with the given unit.
pub fn products(l: &FiniteLattice, unit: Elem) -> Vec<Table> {
    let n = l.size();
    let mut search = ProductSearch {
        l,
        n,
        unit,
        table: vec![UNSET; n * n],
        cells: (0..n).flat_map(|a| (a..n).map(move |b| (a, b))).filter(|&(a, b)| a != unit && b != unit).collect(),
        out: Vec::new(),
    };
    for a in 0..n {
        search.set(search.unit, a, a as u8);
    }
    search.run(0);
    search.out
}

/// Every srl-monoid on lattice `l`, unlabeled.
fn algebras_on(l: &FiniteLattice) -> Result<Vec<SrlMonoid>, AlgebraError> {
    let n = l.size();
    let mut out = Vec::new();
    for unit in 0..n {
        for prod in products(l, unit) {
            let m = CommutativeLMonoid::new(l.clone(), prod, unit).map_err(|e| {
                AlgebraError::InternalInvariantViolation(format!("product search emitted a non-l-monoid: {e}"))
            })?;
            for q in q_candidates(&m) {
                if let Ok(s) = SrlMonoid::residuate_from_q(m.clone(), q) {
                    out.push(s);
                }
            }
        }
    }
    Ok(out)
}

/// One algebra of a catalog, stored in canonical labeling.
#[derive(Clone, Debug)]
pub struct Enumerated {
    pub name: String,
    pub form: CanonicalForm,
    pub algebra: SrlMonoid,
}

/// All srl-monoids of size exactly `n`, up to isomorphism, sorted by
/// canonical form and named `srl<n>-<index>`.
pub fn enumerate_size(n: usize, mode: Mode) -> Result<Vec<Enumerated>, AlgebraError> {
    if n > ENUMERATION_BOUND {
        return Err(AlgebraError::SizeBound { size: n, bound: ENUMERATION_BOUND });
    }
    let found: Vec<Vec<SrlMonoid>> = lattices(n).par_iter().map(algebras_on).collect::<Result<_, _>>()?;
    let mut unique: BTreeMap<CanonicalForm, SrlMonoid> = BTreeMap::new();
    for s in found.into_iter().flatten() {
        let (form, c) = canonical_relabel(&s)?;
        unique.entry(form).or_insert(c);
    }
    let entries: Vec<Enumerated> = unique
        .into_iter()
        .enumerate()
        .map(|(i, (form, algebra))| Enumerated { name: format!("srl{n}-{i:03}"), form, algebra })
        .collect();
    if mode == Mode::Verify {
        for e in &entries {
            let r = crate::basis::verify_six_identity_basis(&e.algebra);
            if !r.passed() {
                return Err(AlgebraError::InternalInvariantViolation(format!("{} fails the basis", e.name)));
            }
        }
    }
    Ok(entries)
}

/// All srl-monoids of every size from 1 to `max`.
pub fn enumerate_srl_monoids(max: usize, mode: Mode) -> Result<Vec<Enumerated>, AlgebraError> {
    if max > ENUMERATION_BOUND {
        return Err(AlgebraError::SizeBound { size: max, bound: ENUMERATION_BOUND });
    }
    let mut out = Vec::new();
    for n in 1..=max {
        out.extend(enumerate_size(n, mode)?);
    }
    Ok(out)
}

/// Subsets `Q` of `m` for which residuation succeeds.
pub fn admissible_q(m: &CommutativeLMonoid) -> Vec<ElementSet> {
    q_candidates(m).into_iter().filter(|&q| SrlMonoid::residuate_from_q(m.clone(), q).is_ok()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::canon::canonical_form;
    use crate::examples;
    use crate::monoid::verify_lmonoid;

    #[test]
    fn lattice_counts() {
        // 1, 1, 1, 2, 5, 15 lattices on 1..6 elements
        let counts: Vec<usize> = (1..=6).map(|n| lattices(n).len()).collect();
        assert_eq!(counts, vec![1, 1, 1, 2, 5, 15]);
    }

    #[test]
    fn products_are_lmonoids() {
        for l in lattices(4) {
            for u in 0..4 {
                for p in products(&l, u) {
                    assert!(verify_lmonoid(&l, &p, u).is_ok());
                }
            }
        }
    }

    #[test]
    fn products_match_exhaustive_search_on_three_chain() {
        let l = FiniteLattice::chain(placeholder_names(3)).unwrap();
        for u in 0..3 {
            let mut brute = 0;
            for code in 0..3usize.pow(9) {
                let t = Table::from_fn(3, |a, b| code / 3usize.pow((a * 3 + b) as u32) % 3);
                if verify_lmonoid(&l, &t, u).is_ok() {
                    brute += 1;
                }
            }
            assert_eq!(products(&l, u).len(), brute, "unit {u}");
        }
    }

    #[test]
    fn size_one_has_one_algebra() {
        assert_eq!(enumerate_size(1, Mode::Verify).unwrap().len(), 1);
    }

    #[test]
    fn size_three_contains_both_chains() {
        let cat = enumerate_size(3, Mode::Verify).unwrap();
        for s in [examples::middle_unit_chain(), examples::nilpotent_chain()] {
            let f = canonical_form(&s).unwrap();
            assert!(cat.iter().any(|e| e.form == f));
        }
    }

    #[test]
    fn bound_is_enforced() {
        assert!(matches!(enumerate_srl_monoids(7, Mode::Fast), Err(AlgebraError::SizeBound { .. })));
    }
}
