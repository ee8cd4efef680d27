//! Congruences as partitions, principal congruences by closure, the full
//! congruence lattice, and the correspondence with strongly convex
//! subalgebras (`θ ↦ e/θ`, `H ↦ θ_H`).

use std::collections::BTreeSet;

use rayon::prelude::*;

use crate::carrier::{Elem, ElementSet};
use crate::error::AlgebraError;
use crate::monoid::MonoidOps;
use crate::report::{Check, Report};
use crate::srl::{Operations, SrlMonoid};
use crate::subalgebra::{self, SubalgebraSet, SUBSET_BOUND};
use crate::Mode;

/// A partition of the carrier, stored as block labels normalized so that
/// blocks are numbered in order of their least element.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Congruence {
    block: Vec<u8>,
}

impl Congruence {
    pub fn from_labels(labels: &[usize]) -> Congruence {
        let mut seen: Vec<Option<u8>> = vec![None; labels.iter().copied().max().map_or(0, |m| m + 1)];
        let mut next = 0u8;
        let block = labels
            .iter()
            .map(|&l| {
                *seen[l].get_or_insert_with(|| {
                    next += 1;
                    next - 1
                })
            })
            .collect();
        Congruence { block }
    }

    /// Δ: every element alone.
    pub fn identity(n: usize) -> Congruence {
        Congruence { block: (0..n as u8).collect() }
    }

    /// ∇: one block.
    pub fn full(n: usize) -> Congruence {
        Congruence { block: vec![0; n] }
    }

    /// Builds a partition from the rows of a relation, or `None` when the
    /// relation is not an equivalence.
    pub fn from_relation(rows: &[ElementSet]) -> Option<Congruence> {
        let n = rows.len();
        for a in 0..n {
            if !rows[a].contains(a) {
                return None;
            }
            for b in rows[a].iter() {
                if rows[b] != rows[a] {
                    return None;
                }
            }
        }
        let labels: Vec<usize> = rows.iter().map(|r| r.first().unwrap_or(0)).collect();
        Some(Congruence::from_labels(&labels))
    }

    fn from_union_find(mut uf: UnionFind) -> Congruence {
        let labels: Vec<usize> = (0..uf.parent.len()).map(|a| uf.find(a)).collect();
        Congruence::from_labels(&labels)
    }

    pub fn size(&self) -> usize {
        self.block.len()
    }

    pub fn related(&self, a: Elem, b: Elem) -> bool {
        self.block[a] == self.block[b]
    }

    pub fn block_count(&self) -> usize {
        self.block.iter().map(|&b| b as usize + 1).max().unwrap_or(0)
    }

    pub fn block_of(&self, a: Elem) -> ElementSet {
        (0..self.size()).filter(|&b| self.related(a, b)).collect()
    }

    /// Blocks in order of their least element.
    pub fn blocks(&self) -> Vec<ElementSet> {
        let mut out = vec![ElementSet::EMPTY; self.block_count()];
        for (a, &b) in self.block.iter().enumerate() {
            out[b as usize].insert(a);
        }
        out
    }

    /// `self ⊆ other` as relations.
    pub fn is_below(&self, other: &Congruence) -> bool {
        (0..self.size()).all(|a| (a + 1..self.size()).all(|b| !self.related(a, b) || other.related(a, b)))
    }

    pub fn meet(&self, other: &Congruence) -> Congruence {
        let n = self.size();
        let labels: Vec<usize> = (0..n).map(|a| self.block[a] as usize * n + other.block[a] as usize).collect();
        Congruence::from_labels(&labels)
    }

    /// Transitive closure of the union.
    pub fn join(&self, other: &Congruence) -> Congruence {
        let n = self.size();
        let mut uf = UnionFind::new(n);
        for a in 0..n {
            for b in a + 1..n {
                if self.related(a, b) || other.related(a, b) {
                    uf.union(a, b);
                }
            }
        }
        Congruence::from_union_find(uf)
    }

    pub fn is_identity(&self) -> bool {
        self.block_count() == self.size()
    }

    pub fn is_full(&self) -> bool {
        self.block_count() <= 1
    }

    /// A pair `(a, b)` in the relation and an element `c` such that some basic
    /// operation, translated by `c` in either argument, separates the images.
    pub fn compatibility_failure<O: Operations>(&self, ops: &O) -> Option<(&'static str, Elem, Elem, Elem)> {
        let n = self.size();
        for a in 0..n {
            for b in a + 1..n {
                if !self.related(a, b) {
                    continue;
                }
                for c in 0..n {
                    for (op, name) in OP_NAMES.iter().enumerate() {
                        let right = self.related(apply(ops, op, a, c), apply(ops, op, b, c));
                        let left = self.related(apply(ops, op, c, a), apply(ops, op, c, b));
                        if !right || !left {
                            return Some((name, a, b, c));
                        }
                    }
                }
            }
        }
        None
    }

    /// Blocks as sorted name lists, e.g. `{0,e} {1}`.
    pub fn render(&self, names: &[String]) -> String {
        self.blocks().iter().map(|b| b.render(names)).collect::<Vec<_>>().join(" ")
    }
}

const OP_NAMES: [&str; 4] = ["meet", "join", "prod", "arrow"];

fn apply<O: Operations + ?Sized>(ops: &O, op: usize, a: Elem, b: Elem) -> Elem {
    match op {
        0 => ops.meet(a, b),
        1 => ops.join(a, b),
        2 => ops.prod(a, b),
        _ => ops.arrow(a, b),
    }
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> UnionFind {
        UnionFind { parent: (0..n).collect() }
    }

    fn find(&mut self, mut a: usize) -> usize {
        while self.parent[a] != a {
            self.parent[a] = self.parent[self.parent[a]];
            a = self.parent[a];
        }
        a
    }

    /// Returns whether two distinct classes were merged.
    fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
        self.parent[hi] = lo;
        true
    }
}

/// Least congruence containing all `pairs`, by closing under unary
/// translations of `∧, ∨, ·, →` in both arguments.
pub fn generated_congruence<O: Operations>(ops: &O, pairs: &[(Elem, Elem)]) -> Congruence {
    let n = ops.size();
    let mut uf = UnionFind::new(n);
    let mut work: Vec<(Elem, Elem)> = pairs.to_vec();
    while let Some((x, y)) = work.pop() {
        if !uf.union(x, y) {
            continue;
        }
        for z in 0..n {
            for op in 0..OP_NAMES.len() {
                work.push((apply(ops, op, x, z), apply(ops, op, y, z)));
                work.push((apply(ops, op, z, x), apply(ops, op, z, y)));
            }
        }
    }
    Congruence::from_union_find(uf)
}

/// `θ(a, b)` by brute-force closure.
pub fn principal_congruence_bruteforce<O: Operations>(ops: &O, a: Elem, b: Elem) -> Congruence {
    generated_congruence(ops, &[(a, b)])
}

fn check_bound(n: usize) -> Result<(), AlgebraError> {
    if n > SUBSET_BOUND {
        return Err(AlgebraError::SizeBound { size: n, bound: SUBSET_BOUND });
    }
    Ok(())
}

/// `Con(A)`, sorted: the join-closure of the principal congruences plus Δ.
pub fn all_congruences(s: &SrlMonoid) -> Result<Vec<Congruence>, AlgebraError> {
    let n = s.size();
    check_bound(n)?;
    let pairs: Vec<(Elem, Elem)> = (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b))).collect();
    let principal: BTreeSet<Congruence> =
        pairs.par_iter().map(|&(a, b)| principal_congruence_bruteforce(s, a, b)).collect();
    let mut all: BTreeSet<Congruence> = principal.clone();
    all.insert(Congruence::identity(n));
    let mut frontier: Vec<Congruence> = all.iter().cloned().collect();
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for t in &frontier {
            for p in &principal {
                let j = t.join(p);
                if all.insert(j.clone()) {
                    next.push(j);
                }
            }
        }
        frontier = next;
    }
    Ok(all.into_iter().collect())
}

/// `θ_H = {(a, b) : a·h <= b and b·h <= a for some h ∈ H}` for convex `H`.
pub fn theta_h(s: &SrlMonoid, h: ElementSet, mode: Mode) -> Result<Congruence, AlgebraError> {
    if !subalgebra::is_convex_subalgebra(s, h) {
        return Err(AlgebraError::NotConvex);
    }
    let n = s.size();
    let rows: Vec<ElementSet> = (0..n)
        .map(|a| (0..n).filter(|&b| h.iter().any(|x| s.leq(s.prod(a, x), b) && s.leq(s.prod(b, x), a))).collect())
        .collect();
    let t = Congruence::from_relation(&rows).ok_or_else(|| {
        AlgebraError::InternalInvariantViolation(format!("θ_H is not an equivalence for H = {}", h.render(s.names())))
    })?;
    if mode == Mode::Verify {
        if let Some((op, a, b, c)) = t.compatibility_failure(s) {
            return Err(AlgebraError::InternalInvariantViolation(format!(
                "θ_H for H = {} is not compatible with {op} at ({}, {}) translated by {}",
                h.render(s.names()),
                s.names()[a],
                s.names()[b],
                s.names()[c]
            )));
        }
    }
    Ok(t)
}

/// The block of `e`, flagged.
pub fn class_of_e(s: &SrlMonoid, t: &Congruence, mode: Mode) -> Result<SubalgebraSet, AlgebraError> {
    let members = t.block_of(s.unit());
    if mode == Mode::Fast {
        return Ok(SubalgebraSet::classify(s, members));
    }
    let h = SubalgebraSet::classify(s, members);
    if !h.flags.is_strongly_convex {
        return Err(AlgebraError::InternalInvariantViolation(format!(
            "e-block {} of {} is not strongly convex",
            members.render(s.names()),
            t.render(s.names())
        )));
    }
    Ok(h)
}

fn pairs(n: usize) -> impl Iterator<Item = (Elem, Elem)> {
    (0..n).flat_map(move |a| (0..n).map(move |b| (a, b)))
}

/// `(a,b) ∈ θ ⟺ s(a,b) ∈ e/θ` for every congruence, and the four-way
/// equivalence for every convex `H`:
/// a) `(a,b) ∈ θ_H`, b) `(a→b)∧e, (b→a)∧e ∈ H`, c) `s(a,b) ∈ H`,
/// d) some `h ∈ H` lies below both `a→b` and `b→a`.
pub fn s_term_membership_suite(s: &SrlMonoid) -> Result<Report, AlgebraError> {
    let names = s.names();
    let mut r = Report::new("s-term membership", names);
    let e = s.unit();
    let mut bad = None;
    for t in all_congruences(s)? {
        let eb = t.block_of(e);
        if let Some((a, b)) = pairs(s.size()).find(|&(a, b)| t.related(a, b) != eb.contains(s.s_term(a, b))) {
            bad = Some((t, a, b));
            break;
        }
    }
    r.push(match bad {
        None => Check::pass("congruence iff s-term in e-class"),
        Some((t, a, b)) => Check::fail("congruence iff s-term in e-class")
            .with_witness(&[("a", a), ("b", b)])
            .with_detail(t.render(names)),
    });
    let mut bad = None;
    'outer: for h in subalgebra::all_convex(s)? {
        let th = theta_h(s, h, Mode::Verify)?;
        for (a, b) in pairs(s.size()) {
            let (ab, ba) = (s.arrow(a, b), s.arrow(b, a));
            let conds = [
                th.related(a, b),
                h.contains(s.meet(ab, e)) && h.contains(s.meet(ba, e)),
                h.contains(s.s_term(a, b)),
                h.iter().any(|x| s.leq(x, ab) && s.leq(x, ba)),
            ];
            if conds.iter().any(|&c| c != conds[0]) {
                bad = Some((h, a, b));
                break 'outer;
            }
        }
    }
    r.push(match bad {
        None => Check::pass("convex H: four conditions agree"),
        Some((h, a, b)) => Check::fail("convex H: four conditions agree")
            .with_witness(&[("a", a), ("b", b)])
            .with_detail(format!("H = {}", h.render(names))),
    });
    Ok(r)
}

fn first_pair<T>(xs: &[T], mut bad: impl FnMut(&T, &T) -> bool) -> Option<(usize, usize)> {
    (0..xs.len()).flat_map(|i| (0..xs.len()).map(move |j| (i, j))).find(|&(i, j)| bad(&xs[i], &xs[j]))
}

fn set_list(xs: &[ElementSet]) -> Vec<ElementSet> {
    let mut v = xs.to_vec();
    v.sort();
    v
}

/// Checks that `θ ↦ e/θ` and `H ↦ θ_H` are mutually inverse order
/// isomorphisms between `Con(A)` and `SCS(A)`, plus the special cases for
/// integral, CRL and sr-lattice algebras.
pub fn verify_order_iso(s: &SrlMonoid) -> Result<Report, AlgebraError> {
    let names = s.names();
    let mut r = Report::new("congruences vs strongly convex subalgebras", names);
    let cons = all_congruences(s)?;
    let scs: Vec<ElementSet> = subalgebra::all_strongly_convex(s)?.into_iter().map(|h| h.members).collect();
    let convex = subalgebra::all_convex(s)?;

    // Fast mode here: the checks below report violations instead of erroring.
    let e_classes: Vec<SubalgebraSet> = cons.iter().map(|t| class_of_e(s, t, Mode::Fast)).collect::<Result<_, _>>()?;
    let bad = cons.iter().zip(&e_classes).find(|(_, h)| !h.flags.is_strongly_convex);
    r.push(match bad {
        None => Check::pass("e-class is strongly convex"),
        Some((t, _)) => Check::fail("e-class is strongly convex").with_detail(t.render(names)),
    });

    let mut thetas = Vec::with_capacity(convex.len());
    let mut not_congruence = None;
    for &h in &convex {
        let t = theta_h(s, h, Mode::Fast)?;
        if not_congruence.is_none() && t.compatibility_failure(s).is_some() {
            not_congruence = Some(h);
        }
        thetas.push((h, t));
    }
    r.push(match not_congruence {
        None => Check::pass("θ_H is a congruence (convex H)"),
        Some(h) => Check::fail("θ_H is a congruence (convex H)").with_detail(format!("H = {}", h.render(names))),
    });

    let theta_of = |h: ElementSet| thetas.iter().find(|(k, _)| *k == h).map(|(_, t)| t.clone());

    let bad = cons.iter().zip(&e_classes).find(|(t, h)| theta_of(h.members).as_ref() != Some(*t));
    r.push(match bad {
        None => Check::pass("θ_(e/θ) = θ"),
        Some((t, _)) => Check::fail("θ_(e/θ) = θ").with_detail(t.render(names)),
    });

    let bad = scs.iter().find(|&&h| theta_of(h).map(|t| t.block_of(s.unit())) != Some(h));
    r.push(match bad {
        None => Check::pass("e/θ_H = H"),
        Some(h) => Check::fail("e/θ_H = H").with_detail(format!("H = {}", h.render(names))),
    });

    r.push(Check::verdict("|Con| = |SCS|", cons.len() == scs.len()).with_detail(format!(
        "|Con| = {}, |SCS| = {}",
        cons.len(),
        scs.len()
    )));

    let bad = first_pair(&cons, |t, u| {
        t.is_below(u) != e_classes_of(&cons, &e_classes, t).is_subset(e_classes_of(&cons, &e_classes, u))
    });
    r.push(match bad {
        None => Check::pass("θ ⊆ ψ iff e/θ ⊆ e/ψ"),
        Some((i, j)) => Check::fail("θ ⊆ ψ iff e/θ ⊆ e/ψ").with_detail(format!(
            "{} vs {}",
            cons[i].render(names),
            cons[j].render(names)
        )),
    });

    let bad = first_pair(&scs, |&h, &k| match (theta_of(h), theta_of(k)) {
        (Some(a), Some(b)) => h.is_subset(k) != a.is_below(&b),
        _ => true,
    });
    r.push(match bad {
        None => Check::pass("H ⊆ K iff θ_H ⊆ θ_K"),
        Some((i, j)) => Check::fail("H ⊆ K iff θ_H ⊆ θ_K").with_detail(format!(
            "{} vs {}",
            scs[i].render(names),
            scs[j].render(names)
        )),
    });

    r.push(distributivity_check(&cons));

    let class = s.classify();
    if class.crl {
        r.push(Check::verdict("CRL: SCS = SU", set_list(&scs) == set_list(&convex)));
    }
    if class.integral {
        r.push(integral_collapse_check(s)?);
    }
    if class.sr_lattice {
        let open = subalgebra::all_open_lattice_filters(s)?;
        r.push(Check::verdict("sr-lattice: SCS = open lattice filters", set_list(&scs) == set_list(&open)));
    }
    Ok(r)
}

fn e_classes_of(cons: &[Congruence], classes: &[SubalgebraSet], t: &Congruence) -> ElementSet {
    let i = cons.iter().position(|u| u == t).expect("member of Con");
    classes[i].members
}

/// Distributivity of the finite lattice `(Con(A), ∩, ∨)`.
pub fn distributivity_check(cons: &[Congruence]) -> Check {
    for a in cons {
        for b in cons {
            for c in cons {
                if a.meet(&b.join(c)) != a.meet(b).join(&a.meet(c)) {
                    return Check::fail("Con(A) is distributive").with_detail(format!("{a:?} {b:?} {c:?}"));
                }
            }
        }
    }
    Check::pass("Con(A) is distributive")
}

/// In an integral algebra every subset is convex ⟺ strongly convex ⟺ a
/// `□`-filter.
pub fn integral_collapse_check(s: &SrlMonoid) -> Result<Check, AlgebraError> {
    check_bound(s.size())?;
    let id = "integral: convex = SCS = □-filters";
    for bits in 0u32..1 << s.size() {
        let h = SubalgebraSet::classify(s, ElementSet::from_bits(bits));
        let f = h.flags;
        if f.is_convex != f.is_strongly_convex || Some(f.is_convex) != f.is_box_filter {
            return Ok(Check::fail(id).with_detail(format!("H = {}", h.render(s.names()))));
        }
    }
    Ok(Check::pass(id))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::examples;

    fn set(xs: &[Elem]) -> ElementSet {
        xs.iter().copied().collect()
    }

    #[test]
    fn normalization_and_lattice_ops() {
        let t = Congruence::from_labels(&[5, 5, 2, 7]);
        assert_eq!(t, Congruence::from_labels(&[0, 0, 1, 2]));
        assert_eq!(t.block_count(), 3);
        let u = Congruence::from_labels(&[0, 1, 1, 2]);
        assert_eq!(t.join(&u), Congruence::from_labels(&[0, 0, 0, 1]));
        assert_eq!(t.meet(&u), Congruence::identity(4));
        assert!(Congruence::identity(4).is_below(&t) && t.is_below(&Congruence::full(4)));
        assert!(!t.is_below(&u));
        let names: Vec<String> = ["0", "a", "b", "1"].iter().map(|s| s.to_string()).collect();
        assert_eq!(t.render(&names), "{0,a} {b} {1}");
    }

    #[test]
    fn from_relation_rejects_non_equivalences() {
        assert!(Congruence::from_relation(&[set(&[0, 1]), set(&[1])]).is_none());
        assert_eq!(Congruence::from_relation(&[set(&[0, 1]), set(&[0, 1])]), Some(Congruence::full(2)));
    }

    #[test]
    fn middle_unit_chain_zero_e_collapses_everything() {
        let s = examples::middle_unit_chain();
        assert_eq!(principal_congruence_bruteforce(&s, 0, 1), Congruence::full(3));
        assert_eq!(principal_congruence_bruteforce(&s, 2, 2), Congruence::identity(3));
    }

    #[test]
    fn diamond_a_one_is_full() {
        let s = examples::diamond();
        assert_eq!(principal_congruence_bruteforce(&s, 1, 3), Congruence::full(4));
        assert_eq!(all_congruences(&s).unwrap(), vec![Congruence::full(4), Congruence::identity(4)]);
    }

    #[test]
    fn congruence_counts_match_filter_counts() {
        let s = examples::nilpotent_chain();
        assert_eq!(all_congruences(&s).unwrap().len(), subalgebra::all_box_filters(&s).unwrap().len());
        let d = examples::diamond();
        assert_eq!(all_congruences(&d).unwrap().len(), subalgebra::all_open_lattice_filters(&d).unwrap().len());
        let t = examples::trivial();
        assert_eq!(all_congruences(&t).unwrap(), vec![Congruence::identity(1)]);
    }

    #[test]
    fn theta_h_examples() {
        let d = examples::diamond();
        assert_eq!(theta_h(&d, set(&[0, 1, 2, 3]), Mode::Verify).unwrap(), Congruence::full(4));
        assert_eq!(theta_h(&d, set(&[3]), Mode::Verify).unwrap(), Congruence::identity(4));
        assert_eq!(theta_h(&d, set(&[1, 3]), Mode::Verify), Err(AlgebraError::NotConvex));
        let s = examples::nilpotent_chain();
        assert_eq!(theta_h(&s, set(&[2]), Mode::Verify).unwrap(), Congruence::identity(3));
    }

    #[test]
    fn non_strongly_convex_h_lands_on_larger_e_class() {
        let s = examples::middle_unit_chain();
        let h = set(&[0, 1]);
        let t = theta_h(&s, h, Mode::Verify).unwrap();
        let back = class_of_e(&s, &t, Mode::Verify).unwrap().members;
        assert!(h.is_subset(back) && h != back);
    }

    #[test]
    fn class_of_e_trivial_cases() {
        let s = examples::middle_unit_chain();
        assert_eq!(class_of_e(&s, &Congruence::identity(3), Mode::Verify).unwrap().members, set(&[1]));
        assert_eq!(class_of_e(&s, &Congruence::full(3), Mode::Verify).unwrap().members, set(&[0, 1, 2]));
    }

    #[test]
    fn s_term_suites_pass_on_examples() {
        for (_, s) in examples::builtin_examples() {
            let r = s_term_membership_suite(&s).unwrap();
            assert!(r.passed(), "{}", r.render_text());
        }
    }

    #[test]
    fn order_iso_on_examples() {
        for s in [
            examples::middle_unit_chain(),
            examples::nilpotent_chain(),
            examples::diamond(),
            examples::lukasiewicz_pair(5, 3).unwrap(),
            examples::lukasiewicz_pair(4, 4).unwrap(),
        ] {
            let r = verify_order_iso(&s).unwrap();
            assert!(r.passed(), "{}", r.render_text());
        }
    }

    #[test]
    fn compatibility_failure_is_detected() {
        let s = examples::middle_unit_chain();
        // {0,e} {1} is an equivalence but collapsing 0 and e forces e ~ 1
        let t = Congruence::from_labels(&[0, 0, 1]);
        assert!(t.compatibility_failure(&s).is_some());
    }
}
