//! Canonical forms for isomorphism rejection.
//!
//! Elements are first sorted by an isomorphism invariant; the canonical form
//! is then the least encoding of `(≤, ·, →, e)` over all relabelings that keep
//! that sort order, i.e. permute only within classes of equal invariant.
//! Isomorphisms preserve the invariant, so two algebras share a canonical
//! form exactly when they are isomorphic.

use std::fmt;

use sha2::{Digest, Sha256};

use crate::carrier::Elem;
use crate::error::AlgebraError;
use crate::monoid::MonoidOps;
use crate::srl::{Operations, SrlMonoid};

/// Largest carrier accepted by [`canonicalize`].
pub const CANON_BOUND: usize = 12;

/// Byte encoding: size, unit, then the order matrix, product table and arrow
/// table in row-major order.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonicalForm(Vec<u8>);

impl CanonicalForm {
    pub fn bytes(&self) -> &[u8] {
        &self.0
    }

    /// First 16 hex digits of the SHA-256 of the encoding.
    pub fn hash(&self) -> String {
        let digest = Sha256::digest(&self.0);
        digest.iter().take(8).map(|b| format!("{b:02x}")).collect()
    }
}

impl fmt::Display for CanonicalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.hash())
    }
}

/// Sort key of an element, preserved by every isomorphism.
fn invariant(s: &SrlMonoid, a: Elem) -> (bool, usize, usize, bool, bool) {
    let l = s.lattice();
    (a != s.unit(), l.down_set(a).len(), l.up_set(a).len(), s.boxed(a) != a, s.prod(a, a) != a)
}

/// Encodes `s` as seen through `order`, where `order[i]` is the old element
/// that receives new index `i`.
fn encode(s: &SrlMonoid, order: &[Elem], inverse: &[Elem]) -> Vec<u8> {
    let n = s.size();
    let mut out = Vec::with_capacity(2 + 3 * n * n);
    out.push(n as u8);
    out.push(inverse[s.unit()] as u8);
    for &a in order {
        for &b in order {
            out.push(s.leq(a, b) as u8);
        }
    }
    for &a in order {
        for &b in order {
            out.push(inverse[s.prod(a, b)] as u8);
        }
    }
    for &a in order {
        for &b in order {
            out.push(inverse[s.arrow(a, b)] as u8);
        }
    }
    out
}

/// Calls `visit` with every arrangement of `items` that permutes only inside
/// the consecutive runs given by `classes` (lengths).
fn for_each_arrangement(items: &mut [Elem], classes: &[usize], visit: &mut dyn FnMut(&[Elem])) {
    fn rec(
        items: &mut [Elem],
        classes: &[usize],
        class: usize,
        start: usize,
        pos: usize,
        visit: &mut dyn FnMut(&[Elem]),
    ) {
        if class == classes.len() {
            visit(items);
            return;
        }
        let end = start + classes[class];
        if pos + 1 >= end {
            rec(items, classes, class + 1, end, end, visit);
            return;
        }
        for i in pos..end {
            items.swap(pos, i);
            rec(items, classes, class, start, pos + 1, visit);
            items.swap(pos, i);
        }
    }
    rec(items, classes, 0, 0, 0, visit);
}

/// The canonical form and a relabeling `perm` (`perm[old] = new`) that
/// realizes it.
pub fn canonicalize(s: &SrlMonoid) -> Result<(CanonicalForm, Vec<Elem>), AlgebraError> {
    let n = s.size();
    if n > CANON_BOUND {
        return Err(AlgebraError::SizeBound { size: n, bound: CANON_BOUND });
    }
    let mut order: Vec<Elem> = (0..n).collect();
    let keys: Vec<_> = (0..n).map(|a| invariant(s, a)).collect();
    order.sort_by_key(|&a| (keys[a], a));
    let mut classes = Vec::new();
    let mut i = 0;
    while i < n {
        let j = (i..n).find(|&j| keys[order[j]] != keys[order[i]]).unwrap_or(n);
        classes.push(j - i);
        i = j;
    }
    let mut best: Option<(Vec<u8>, Vec<Elem>)> = None;
    let mut inverse = vec![0; n];
    for_each_arrangement(&mut order, &classes, &mut |arr| {
        for (new, &old) in arr.iter().enumerate() {
            inverse[old] = new;
        }
        let code = encode(s, arr, &inverse);
        if best.as_ref().is_none_or(|(b, _)| code < *b) {
            best = Some((code, inverse.clone()));
        }
    });
    let (code, perm) = best.expect("at least one arrangement");
    Ok((CanonicalForm(code), perm))
}

pub fn canonical_form(s: &SrlMonoid) -> Result<CanonicalForm, AlgebraError> {
    canonicalize(s).map(|(f, _)| f)
}

pub fn is_isomorphic(a: &SrlMonoid, b: &SrlMonoid) -> Result<bool, AlgebraError> {
    Ok(a.size() == b.size() && canonical_form(a)? == canonical_form(b)?)
}

/// Display names derived from structure: the unit is `e` (or `1` when it is
/// the top), the bottom `0`, the top `1`, the rest `a, b, c, ...` by index.
pub fn structural_names(s: &SrlMonoid) -> Vec<String> {
    let l = s.lattice();
    let (e, top, bottom) = (s.unit(), l.top(), l.bottom());
    let mut letters = "abcdfghijklmnopqrstuvwxyz".chars();
    (0..s.size())
        .map(|a| {
            if s.size() == 1 {
                "e".to_string()
            } else if a == e {
                if a == top { "1" } else { "e" }.to_string()
            } else if a == bottom {
                "0".to_string()
            } else if a == top {
                "1".to_string()
            } else {
                letters.next().map(String::from).unwrap_or_else(|| format!("x{a}"))
            }
        })
        .collect()
}

/// The isomorphic copy in canonical labeling, with structural names.
pub fn canonical_relabel(s: &SrlMonoid) -> Result<(CanonicalForm, SrlMonoid), AlgebraError> {
    let (form, perm) = canonicalize(s)?;
    let relabeled = s.relabel(&perm);
    let names = structural_names(&relabeled);
    Ok((form, relabeled.renamed(names)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::examples;

    #[test]
    fn relabeling_does_not_change_form() {
        let s = examples::diamond();
        let f = canonical_form(&s).unwrap();
        for perm in [[1, 0, 2, 3], [3, 2, 1, 0], [2, 3, 0, 1]] {
            assert_eq!(canonical_form(&s.relabel(&perm)).unwrap(), f);
        }
    }

    #[test]
    fn examples_are_pairwise_distinct() {
        let forms: Vec<_> = examples::builtin_examples().iter().map(|(_, s)| canonical_form(s).unwrap()).collect();
        assert_ne!(forms[0], forms[1]);
        let chain4 = examples::lukasiewicz_pair(4, 2).unwrap();
        assert_ne!(canonical_form(&chain4).unwrap(), forms[2]);
    }

    #[test]
    fn lukasiewicz_three_two_is_nilpotent_chain() {
        let a = examples::lukasiewicz_pair(3, 2).unwrap();
        assert!(is_isomorphic(&a, &examples::nilpotent_chain()).unwrap());
        assert!(!is_isomorphic(&a, &examples::middle_unit_chain()).unwrap());
    }

    #[test]
    fn canonical_relabel_names() {
        let (_, c) = canonical_relabel(&examples::middle_unit_chain()).unwrap();
        let mut names = c.names().to_vec();
        names.sort();
        assert_eq!(names, ["0", "1", "e"]);
        let (f, c) = canonical_relabel(&examples::nilpotent_chain()).unwrap();
        assert_eq!(c.names()[c.unit()], "1");
        assert_eq!(canonical_form(&c).unwrap(), f);
        assert_eq!(f.hash().len(), 16);
    }

    #[test]
    fn arrangements_respect_classes() {
        let mut items = vec![0, 1, 2, 3];
        let mut seen = Vec::new();
        for_each_arrangement(&mut items, &[1, 3], &mut |a| seen.push(a.to_vec()));
        assert_eq!(seen.len(), 6);
        assert!(seen.iter().all(|a| a[0] == 0));
    }
}
