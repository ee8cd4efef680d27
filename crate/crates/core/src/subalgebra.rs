//! Subalgebras, convexity and strong convexity, and the filter families of
//! the integral case.

use crate::carrier::{Elem, ElementSet};
use crate::error::AlgebraError;
use crate::monoid::MonoidOps;
use crate::srl::{Operations, SrlMonoid};

/// Largest carrier for which subset enumeration is attempted.
pub const SUBSET_BOUND: usize = 16;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct SubalgebraFlags {
    /// contains `e`, closed under `∧, ∨, ·, →`
    pub is_subalgebra: bool,
    /// subalgebra, and `a, b ∈ H`, `a <= c <= b` imply `c ∈ H`
    pub is_convex: bool,
    /// convex, and `a·h <= e <= h→a` with `h ∈ H` implies `a ∈ H`
    pub is_strongly_convex: bool,
    /// Only defined for integral algebras.
    pub is_filter: Option<bool>,
    /// Only defined for integral algebras.
    pub is_box_filter: Option<bool>,
}

/// A carrier subset together with its closure and convexity status.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SubalgebraSet {
    pub members: ElementSet,
    pub flags: SubalgebraFlags,
}

impl SubalgebraSet {
    pub fn classify(s: &SrlMonoid, members: ElementSet) -> SubalgebraSet {
        let is_subalgebra = is_subalgebra(s, members);
        let is_convex = is_subalgebra && is_interval_closed(s, members);
        let is_strongly_convex = is_convex && strong_convexity_witness(s, members).is_none();
        let integral = s.lattice().top() == s.unit();
        let filter = integral && is_filter(s, members);
        let is_filter = integral.then_some(filter);
        let is_box_filter = integral.then(|| filter && is_box_closed(s, members));
        SubalgebraSet {
            members,
            flags: SubalgebraFlags { is_subalgebra, is_convex, is_strongly_convex, is_filter, is_box_filter },
        }
    }

    pub fn render(&self, names: &[String]) -> String {
        self.members.render(names)
    }
}

pub fn is_subalgebra(s: &SrlMonoid, h: ElementSet) -> bool {
    if !h.contains(s.unit()) {
        return false;
    }
    h.iter().all(|a| {
        h.iter().all(|b| {
            h.contains(s.meet(a, b))
                && h.contains(s.join(a, b))
                && h.contains(s.prod(a, b))
                && h.contains(s.arrow(a, b))
        })
    })
}

/// Convex as a subset: every interval between members lies inside.
pub fn is_interval_closed(s: &SrlMonoid, h: ElementSet) -> bool {
    let l = s.lattice();
    h.iter().all(|a| h.iter().all(|b| !l.leq(a, b) || l.interval(a, b).is_subset(h)))
}

pub fn is_convex_subalgebra(s: &SrlMonoid, h: ElementSet) -> bool {
    is_subalgebra(s, h) && is_interval_closed(s, h)
}

/// A pair `(a, h)` with `h ∈ H`, `a ∉ H` and `a·h <= e <= h→a`, if one exists.
pub fn strong_convexity_witness(s: &SrlMonoid, h: ElementSet) -> Option<(Elem, Elem)> {
    let e = s.unit();
    for a in ElementSet::full(s.size()).difference(h).iter() {
        for x in h.iter() {
            if s.leq(s.prod(a, x), e) && s.leq(e, s.arrow(x, a)) {
                return Some((a, x));
            }
        }
    }
    None
}

pub fn is_strongly_convex(s: &SrlMonoid, h: ElementSet) -> bool {
    is_convex_subalgebra(s, h) && strong_convexity_witness(s, h).is_none()
}

fn is_upset(s: &SrlMonoid, h: ElementSet) -> bool {
    h.iter().all(|a| s.lattice().up_set(a).is_subset(h))
}

fn is_box_closed(s: &SrlMonoid, h: ElementSet) -> bool {
    h.iter().all(|a| h.contains(s.boxed(a)))
}

/// Contains the top, is an upset and is closed under `·`.
pub fn is_filter(s: &SrlMonoid, h: ElementSet) -> bool {
    h.contains(s.lattice().top()) && is_upset(s, h) && h.iter().all(|a| h.iter().all(|b| h.contains(s.prod(a, b))))
}

pub fn is_box_filter(s: &SrlMonoid, h: ElementSet) -> bool {
    is_filter(s, h) && is_box_closed(s, h)
}

/// Contains the top, is an upset, closed under `∧` and `□`.
pub fn is_open_lattice_filter(s: &SrlMonoid, h: ElementSet) -> bool {
    h.contains(s.lattice().top())
        && is_upset(s, h)
        && h.iter().all(|a| h.iter().all(|b| h.contains(s.meet(a, b))))
        && is_box_closed(s, h)
}

fn check_bound(s: &SrlMonoid) -> Result<(), AlgebraError> {
    if s.size() > SUBSET_BOUND {
        return Err(AlgebraError::SizeBound { size: s.size(), bound: SUBSET_BOUND });
    }
    Ok(())
}

fn subsets_where(s: &SrlMonoid, keep: impl Fn(ElementSet) -> bool) -> Result<Vec<ElementSet>, AlgebraError> {
    check_bound(s)?;
    Ok((0u32..1 << s.size()).map(ElementSet::from_bits).filter(|&h| keep(h)).collect())
}

/// Every strongly convex subalgebra, in increasing bitmask order.
pub fn all_strongly_convex(s: &SrlMonoid) -> Result<Vec<SubalgebraSet>, AlgebraError> {
    let e = s.unit();
    let sets = subsets_where(s, |h| {
        // cheap rejections first: must hold e and be interval-closed
        h.contains(e) && is_interval_closed(s, h) && is_subalgebra(s, h) && strong_convexity_witness(s, h).is_none()
    })?;
    Ok(sets.into_iter().map(|h| SubalgebraSet::classify(s, h)).collect())
}

/// Every convex subalgebra.
pub fn all_convex(s: &SrlMonoid) -> Result<Vec<ElementSet>, AlgebraError> {
    let e = s.unit();
    subsets_where(s, |h| h.contains(e) && is_interval_closed(s, h) && is_subalgebra(s, h))
}

/// Every `□`-filter. Meaningful for integral algebras.
pub fn all_box_filters(s: &SrlMonoid) -> Result<Vec<ElementSet>, AlgebraError> {
    subsets_where(s, |h| is_box_filter(s, h))
}

/// Every open lattice filter. Meaningful for sr-lattices.
pub fn all_open_lattice_filters(s: &SrlMonoid) -> Result<Vec<ElementSet>, AlgebraError> {
    subsets_where(s, |h| is_open_lattice_filter(s, h))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::examples;

    fn set(xs: &[Elem]) -> ElementSet {
        xs.iter().copied().collect()
    }

    #[test]
    fn middle_unit_chain_zero_e_is_convex_not_strongly_convex() {
        let s = examples::middle_unit_chain();
        let h = set(&[0, 1]);
        let c = SubalgebraSet::classify(&s, h);
        assert!(c.flags.is_subalgebra && c.flags.is_convex);
        assert!(!c.flags.is_strongly_convex);
        // 1·0 <= e <= 0→1 but 1 ∉ H
        assert_eq!(strong_convexity_witness(&s, h), Some((2, 0)));
        assert_eq!(c.flags.is_filter, None);
    }

    #[test]
    fn middle_unit_chain_strongly_convex_family() {
        let s = examples::middle_unit_chain();
        let scs: Vec<ElementSet> = all_strongly_convex(&s).unwrap().into_iter().map(|h| h.members).collect();
        assert!(scs.contains(&set(&[1])));
        assert!(scs.contains(&set(&[0, 1, 2])));
        assert!(!scs.contains(&set(&[0, 1])));
    }

    #[test]
    fn one_element_algebra_has_one_scs() {
        let s = examples::lukasiewicz_pair(2, 2).unwrap().renamed(vec!["0".into(), "e".into()]);
        assert_eq!(all_strongly_convex(&s).unwrap().len(), 2);
        let trivial = examples::trivial();
        let scs = all_strongly_convex(&trivial).unwrap();
        assert_eq!(scs.len(), 1);
        assert_eq!(scs[0].members, ElementSet::singleton(0));
    }

    #[test]
    fn integral_families_coincide_on_examples() {
        for s in [examples::nilpotent_chain(), examples::diamond(), examples::lukasiewicz_pair(5, 3).unwrap()] {
            let scs: Vec<ElementSet> = all_strongly_convex(&s).unwrap().into_iter().map(|h| h.members).collect();
            assert_eq!(scs, all_convex(&s).unwrap());
            assert_eq!(scs, all_box_filters(&s).unwrap());
        }
    }

    #[test]
    fn diamond_scs_are_open_lattice_filters() {
        let s = examples::diamond();
        let scs: Vec<ElementSet> = all_strongly_convex(&s).unwrap().into_iter().map(|h| h.members).collect();
        assert_eq!(scs, vec![set(&[3]), set(&[0, 1, 2, 3])]);
        assert_eq!(scs, all_open_lattice_filters(&s).unwrap());
    }
}
