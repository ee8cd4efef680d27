//! Generated strongly convex subalgebras `C[S]` and principal congruences
//! computed from closed formulas, with brute-force counterparts.
//!
//! For `S` inside the negative cone, `x ∈ C[S]` iff `□^n(h) <= x` and
//! `x·□^n(h) <= e` for some `h` in the submonoid generated by `S` and some
//! `n`. For a single generator `a` the same holds with `h = a^m`. A pair
//! `(x, y)` lies in `θ(a, b)` iff `□^m(s(a,b)^n) <= s(x, y)` for some `n, m`.
//! Both exponent sequences are antitone on the negative cone, so in a finite
//! algebra they stop changing after at most `|A|` steps; the code asserts
//! that rather than assuming it.

use std::fmt::Write as _;

use crate::carrier::{Elem, ElementSet};
use crate::congruence::{self, Congruence};
use crate::error::AlgebraError;
use crate::identities::{holds, IdentityId};
use crate::monoid::MonoidOps;
use crate::report::{Check, Report};
use crate::srl::SrlMonoid;
use crate::subalgebra::{self, SubalgebraSet};

/// Certificate for `x ∈ C[S]`: `□^n(h^m) <= x` and `x·□^n(h^m) <= e`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GeneratorWitness {
    pub h: Elem,
    pub n: usize,
    pub m: usize,
    /// `□^n(h^m)`.
    pub bound: Elem,
}

/// A generated strongly convex subalgebra together with one witness per
/// member, sorted by member.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Generated {
    pub set: SubalgebraSet,
    pub witnesses: Vec<(Elem, GeneratorWitness)>,
}

impl Generated {
    pub fn members(&self) -> ElementSet {
        self.set.members
    }

    /// One line per member: `x <= e via h=<name>, n=<int>, m=<int>`.
    pub fn render_witnesses(&self, names: &[String]) -> String {
        let mut out = String::new();
        for (x, w) in &self.witnesses {
            let _ = writeln!(out, "{} <= e via h={}, n={}, m={}", names[*x], names[w.h], w.n, w.m);
        }
        out
    }
}

/// Least subset containing `gen ∪ {e}` and closed under `·`.
pub fn submonoid_closure(s: &SrlMonoid, gen: ElementSet) -> ElementSet {
    let mut set = gen.with(s.unit());
    loop {
        let mut next = set;
        for a in set.iter() {
            for b in set.iter() {
                next.insert(s.prod(a, b));
            }
        }
        if next == set {
            return set;
        }
        set = next;
    }
}

fn require_negative(s: &SrlMonoid, gen: ElementSet) -> Result<(), AlgebraError> {
    match gen.difference(s.negative_cone()).first() {
        Some(a) => Err(AlgebraError::GeneratorNotNegative(a)),
        None => Ok(()),
    }
}

/// Exponent cap; antitone sequences in an `n`-element poset settle within it.
fn exponent_bound(s: &SrlMonoid) -> usize {
    s.size()
}

fn assert_settled(s: &SrlMonoid, what: &str, a: Elem, at: Elem, next: Elem) -> Result<(), AlgebraError> {
    if at != next {
        return Err(AlgebraError::InternalInvariantViolation(format!(
            "{what} sequence of {} has not settled within {} steps",
            s.names()[a],
            exponent_bound(s)
        )));
    }
    Ok(())
}

fn bounds_member(s: &SrlMonoid, x: Elem, bound: Elem) -> bool {
    s.leq(bound, x) && s.leq(s.prod(x, bound), s.unit())
}

fn finish(s: &SrlMonoid, mut witnesses: Vec<(Elem, GeneratorWitness)>) -> Generated {
    witnesses.sort_by_key(|&(x, _)| x);
    let members = witnesses.iter().map(|&(x, _)| x).collect();
    Generated { set: SubalgebraSet::classify(s, members), witnesses }
}

/// `C[S]` by the formula, for `S` inside the negative cone.
pub fn generated_scs(s: &SrlMonoid, gen: ElementSet) -> Result<Generated, AlgebraError> {
    require_negative(s, gen)?;
    let cap = exponent_bound(s);
    let hs = submonoid_closure(s, gen);
    for h in hs.iter() {
        assert_settled(s, "□-power", h, s.box_pow(h, cap), s.box_pow(h, cap + 1))?;
    }
    let mut witnesses = Vec::new();
    for x in 0..s.size() {
        // smallest n first, then smallest h
        let found = (0..=cap).find_map(|n| {
            hs.iter()
                .map(|h| (h, s.box_pow(h, n)))
                .find(|&(_, b)| bounds_member(s, x, b))
                .map(|(h, bound)| GeneratorWitness { h, n, m: 1, bound })
        });
        if let Some(w) = found {
            witnesses.push((x, w));
        }
    }
    Ok(finish(s, witnesses))
}

/// `C[S]` as the intersection of every strongly convex subalgebra holding
/// `gen`. Accepts any generators.
pub fn generated_scs_oracle(s: &SrlMonoid, gen: ElementSet) -> Result<SubalgebraSet, AlgebraError> {
    let all = subalgebra::all_strongly_convex(s)?;
    let members = all
        .iter()
        .filter(|h| gen.is_subset(h.members))
        .fold(ElementSet::full(s.size()), |acc, h| acc.intersection(h.members));
    Ok(SubalgebraSet::classify(s, members))
}

fn principal_members(s: &SrlMonoid, a: Elem, diagonal: bool) -> Vec<(Elem, GeneratorWitness)> {
    let cap = exponent_bound(s);
    let exps: Vec<(usize, usize)> = if diagonal {
        (0..=cap).map(|k| (k, k)).collect()
    } else {
        // ordered by n + m so witnesses use small exponents
        let mut v: Vec<(usize, usize)> = (0..=cap).flat_map(|n| (0..=cap).map(move |m| (n, m))).collect();
        v.sort_by_key(|&(n, m)| (n + m, n));
        v
    };
    (0..s.size())
        .filter_map(|x| {
            exps.iter().find_map(|&(n, m)| {
                let bound = s.box_pow(s.pow(a, m), n);
                bounds_member(s, x, bound).then_some((x, GeneratorWitness { h: a, n, m, bound }))
            })
        })
        .collect()
}

/// `C[a]` for `a <= e` via `□^n(a^m)`, also checking that the diagonal
/// `n = m` alone gives the same set.
pub fn principal_scs(s: &SrlMonoid, a: Elem) -> Result<Generated, AlgebraError> {
    require_negative(s, ElementSet::singleton(a))?;
    let cap = exponent_bound(s);
    let low = s.box_pow(s.pow(a, cap), cap);
    assert_settled(s, "power", a, low, s.box_pow(s.pow(a, cap + 1), cap))?;
    assert_settled(s, "□-power", a, low, s.box_pow(s.pow(a, cap), cap + 1))?;
    let full = finish(s, principal_members(s, a, false));
    let diagonal = finish(s, principal_members(s, a, true));
    if full.members() != diagonal.members() {
        return Err(AlgebraError::InternalInvariantViolation(format!(
            "C[{}]: diagonal exponents give {} but all exponents give {}",
            s.names()[a],
            diagonal.members().render(s.names()),
            full.members().render(s.names())
        )));
    }
    Ok(full)
}

/// `θ(a, b)` as `{(x, y) : □^m(s(a,b)^n) <= s(x, y)}`, optionally with
/// `n = m` only.
pub fn principal_congruence_by_formula(
    s: &SrlMonoid,
    a: Elem,
    b: Elem,
    diagonal: bool,
) -> Result<Congruence, AlgebraError> {
    let t = s.s_term(a, b);
    let cap = exponent_bound(s);
    let mut bounds = ElementSet::EMPTY;
    for n in 0..=cap {
        for m in 0..=cap {
            if !diagonal || n == m {
                bounds.insert(s.box_pow(s.pow(t, n), m));
            }
        }
    }
    let size = s.size();
    let rows: Vec<ElementSet> =
        (0..size).map(|x| (0..size).filter(|&y| bounds.iter().any(|c| s.leq(c, s.s_term(x, y)))).collect()).collect();
    Congruence::from_relation(&rows).ok_or_else(|| {
        AlgebraError::InternalInvariantViolation(format!(
            "formula for θ({}, {}) is not an equivalence",
            s.names()[a],
            s.names()[b]
        ))
    })
}

/// The formula, its diagonal variant and the brute-force closure agree on
/// `θ(a, b)`.
pub fn principal_congruence_check(s: &SrlMonoid, a: Elem, b: Elem) -> Result<Check, AlgebraError> {
    let brute = congruence::principal_congruence_bruteforce(s, a, b);
    let formula = principal_congruence_by_formula(s, a, b, false)?;
    let diagonal = principal_congruence_by_formula(s, a, b, true)?;
    let id = "θ(a,b): formula = closure";
    let check = if formula == brute && diagonal == brute {
        Check::pass(id)
    } else {
        Check::fail(id).with_detail(format!(
            "closure {}, formula {}, diagonal {}",
            brute.render(s.names()),
            formula.render(s.names()),
            diagonal.render(s.names())
        ))
    };
    Ok(check.with_witness(&[("a", a), ("b", b)]))
}

/// The `e`-class of `θ(a, b)` equals `C[s(a, b)]`.
pub fn principal_e_class_check(s: &SrlMonoid, a: Elem, b: Elem) -> Result<Check, AlgebraError> {
    let block = congruence::principal_congruence_bruteforce(s, a, b).block_of(s.unit());
    let generated = generated_scs(s, ElementSet::singleton(s.s_term(a, b)))?.members();
    let id = "e/θ(a,b) = C[s(a,b)]";
    let check = if block == generated {
        Check::pass(id)
    } else {
        Check::fail(id).with_detail(format!("{} vs {}", block.render(s.names()), generated.render(s.names())))
    };
    Ok(check.with_witness(&[("a", a), ("b", b)]))
}

/// Join in the lattice of strongly convex subalgebras.
pub fn scs_join(s: &SrlMonoid, h: ElementSet, k: ElementSet) -> Result<ElementSet, AlgebraError> {
    Ok(generated_scs_oracle(s, h.union(k))?.members)
}

/// `C[a∧b] = C[a] ∨ C[b]` for negative `a, b`, and under `E2` also
/// `C[a∨b] = C[a] ∩ C[b]`. Without `E2`, reports whether the second formula
/// has a counterexample.
pub fn scs_lattice_ops_check(s: &SrlMonoid) -> Result<Report, AlgebraError> {
    let names = s.names();
    let mut r = Report::new("lattice operations on C[a]", names);
    let neg: Vec<Elem> = s.negative_cone().iter().collect();
    let c: Vec<ElementSet> = (0..s.size())
        .map(|a| if s.leq(a, s.unit()) { principal_scs(s, a).map(|g| g.members()) } else { Ok(ElementSet::EMPTY) })
        .collect::<Result<_, _>>()?;
    let mut meet_bad = None;
    let mut join_bad = None;
    for &a in &neg {
        for &b in &neg {
            if meet_bad.is_none() && c[s.meet(a, b)] != scs_join(s, c[a], c[b])? {
                meet_bad = Some((a, b));
            }
            if join_bad.is_none() && c[s.join(a, b)] != c[a].intersection(c[b]) {
                join_bad = Some((a, b));
            }
        }
    }
    let id = "C[a∧b] = C[a] ∨ C[b]";
    r.push(match meet_bad {
        None => Check::pass(id),
        Some((a, b)) => Check::fail(id).with_witness(&[("a", a), ("b", b)]),
    });
    let id = "C[a∨b] = C[a] ∩ C[b]";
    let e2 = holds(s, IdentityId::E2);
    r.push(match (join_bad, e2) {
        (None, _) => Check::pass(id).with_detail(if e2 { "E2 holds" } else { "holds although E2 fails" }),
        (Some((a, b)), true) => Check::fail(id).with_witness(&[("a", a), ("b", b)]).with_detail(format!(
            "E2 holds; C[a∨b] = {}, C[a] ∩ C[b] = {}",
            c[s.join(a, b)].render(names),
            c[a].intersection(c[b]).render(names)
        )),
        (Some((a, b)), false) => Check::info(
            id,
            format!(
                "counterexample without E2: C[a∨b] = {}, C[a] ∩ C[b] = {}",
                c[s.join(a, b)].render(names),
                c[a].intersection(c[b]).render(names)
            ),
        )
        .with_witness(&[("a", a), ("b", b)]),
    });
    Ok(r)
}

fn first_bad<T>(
    items: impl IntoIterator<Item = T>,
    mut bad: impl FnMut(&T) -> Result<bool, AlgebraError>,
) -> Result<Option<T>, AlgebraError> {
    for t in items {
        if bad(&t)? {
            return Ok(Some(t));
        }
    }
    Ok(None)
}

fn subsets_of(set: ElementSet) -> impl Iterator<Item = ElementSet> {
    let members: Vec<Elem> = set.iter().collect();
    (0u32..1 << members.len())
        .map(move |mask| members.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &a)| a).collect())
}

/// Every formula in this module against its brute-force counterpart, over
/// all negative generator sets and all pairs.
pub fn generation_suite(s: &SrlMonoid) -> Result<Report, AlgebraError> {
    let names = s.names();
    let mut r = Report::new("generated strongly convex subalgebras", names);
    let neg = s.negative_cone();
    let gens: Vec<ElementSet> = subsets_of(neg).collect();

    let mut formula = Vec::with_capacity(gens.len());
    for &g in &gens {
        formula.push(generated_scs(s, g)?.members());
    }
    let bad = first_bad(gens.iter().zip(&formula), |(g, f)| Ok(generated_scs_oracle(s, **g)?.members != **f))?;
    r.push(match bad {
        None => Check::pass("C[S]: formula = oracle"),
        Some((g, f)) => Check::fail("C[S]: formula = oracle").with_detail(format!(
            "S = {}, formula {}",
            g.render(names),
            f.render(names)
        )),
    });

    let bad = first_bad(neg.iter(), |&a| {
        let single = principal_scs(s, a)?.members();
        Ok(single != formula[gens.iter().position(|&g| g == ElementSet::singleton(a)).expect("singleton")])
    })?;
    r.push(Check::from_witness("C[a]: powers of a = submonoid formula", &["a"], bad.map(|a| vec![a])));

    let bad = first_bad(neg.iter(), |&a| {
        let ca = principal_scs(s, a)?.members();
        let cap = exponent_bound(s);
        Ok(neg.iter().any(|x| {
            let shortcut = (0..=cap).any(|n| (0..=cap).any(|m| s.leq(s.box_pow(s.pow(a, m), n), x)));
            shortcut != ca.contains(x)
        }))
    })?;
    r.push(Check::from_witness("C[a] on negatives: □^n(a^m) <= x suffices", &["a"], bad.map(|a| vec![a])));

    let bad = (0..gens.len())
        .flat_map(|i| (0..gens.len()).map(move |j| (i, j)))
        .find(|&(i, j)| gens[i].is_subset(gens[j]) && !formula[i].is_subset(formula[j]));
    r.push(match bad {
        None => Check::pass("S ⊆ T implies C[S] ⊆ C[T]"),
        Some((i, j)) => Check::fail("S ⊆ T implies C[S] ⊆ C[T]").with_detail(format!(
            "{} vs {}",
            gens[i].render(names),
            gens[j].render(names)
        )),
    });

    let n = s.size();
    let mut theta_fail = None;
    let mut class_fail = None;
    for a in 0..n {
        for b in 0..n {
            let c = principal_congruence_check(s, a, b)?;
            if theta_fail.is_none() && !c.passed() {
                theta_fail = Some(c);
            }
            let c = principal_e_class_check(s, a, b)?;
            if class_fail.is_none() && !c.passed() {
                class_fail = Some(c);
            }
        }
    }
    r.push(theta_fail.unwrap_or_else(|| Check::pass("θ(a,b): formula = closure")));
    r.push(class_fail.unwrap_or_else(|| Check::pass("e/θ(a,b) = C[s(a,b)]")));

    // every congruence is generated by its pairs; its e-class is C[meet of s-terms]
    let mut compact_fail = None;
    for t in congruence::all_congruences(s)? {
        let m = (0..n)
            .flat_map(|x| (0..n).map(move |y| (x, y)))
            .filter(|&(x, y)| t.related(x, y))
            .fold(s.unit(), |acc, (x, y)| s.meet(acc, s.s_term(x, y)));
        if principal_scs(s, m)?.members() != t.block_of(s.unit()) {
            compact_fail = Some(t);
            break;
        }
    }
    r.push(match compact_fail {
        None => Check::pass("e/θ = C[a] for some negative a"),
        Some(t) => Check::fail("e/θ = C[a] for some negative a").with_detail(t.render(names)),
    });

    r.extend(scs_lattice_ops_check(s)?);
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::examples;

    fn set(xs: &[Elem]) -> ElementSet {
        xs.iter().copied().collect()
    }

    #[test]
    fn submonoid_closures() {
        let s = examples::nilpotent_chain();
        assert_eq!(submonoid_closure(&s, ElementSet::EMPTY), set(&[2]));
        assert_eq!(submonoid_closure(&s, set(&[1])), set(&[0, 1, 2]));
        let d = examples::diamond();
        assert_eq!(submonoid_closure(&d, set(&[1, 2])), set(&[0, 1, 2, 3]));
    }

    #[test]
    fn diamond_generated() {
        let d = examples::diamond();
        let ca = generated_scs(&d, set(&[1])).unwrap();
        assert_eq!(ca.members(), set(&[0, 1, 2, 3]));
        assert!(ca.set.flags.is_strongly_convex);
        assert_eq!(generated_scs(&d, set(&[2])).unwrap().members(), set(&[0, 1, 2, 3]));
        assert_eq!(generated_scs(&d, set(&[3])).unwrap().members(), set(&[3]));
        assert_eq!(generated_scs(&d, ElementSet::EMPTY).unwrap().members(), set(&[3]));
        assert_eq!(generated_scs_oracle(&d, set(&[1])).unwrap().members, set(&[0, 1, 2, 3]));
        assert_eq!(principal_scs(&d, 0).unwrap().members(), set(&[0, 1, 2, 3]));
    }

    #[test]
    fn witnesses_render_sorted() {
        let d = examples::diamond();
        let g = principal_scs(&d, 1).unwrap();
        let text = g.render_witnesses(d.names());
        assert_eq!(text.lines().count(), 4);
        assert!(text.starts_with("0 <= e via h=a, n="));
        for (x, w) in &g.witnesses {
            assert!(d.leq(w.bound, *x) && d.leq(d.prod(*x, w.bound), d.unit()));
        }
    }

    #[test]
    fn generators_must_be_negative() {
        let s = examples::middle_unit_chain();
        assert_eq!(generated_scs(&s, set(&[2])), Err(AlgebraError::GeneratorNotNegative(2)));
        assert_eq!(principal_scs(&s, 2), Err(AlgebraError::GeneratorNotNegative(2)));
        assert_eq!(generated_scs_oracle(&s, set(&[2])).unwrap().members, set(&[0, 1, 2]));
    }

    #[test]
    fn middle_unit_chain_zero_generates_everything() {
        let s = examples::middle_unit_chain();
        assert_eq!(generated_scs(&s, set(&[0])).unwrap().members(), set(&[0, 1, 2]));
        assert_eq!(principal_congruence_by_formula(&s, 0, 1, false).unwrap(), Congruence::full(3));
    }

    #[test]
    fn diamond_join_counterexample() {
        let d = examples::diamond();
        let r = scs_lattice_ops_check(&d).unwrap();
        let c = r.get("C[a∨b] = C[a] ∩ C[b]").unwrap();
        assert_eq!(c.status, crate::report::Status::Info);
        assert_eq!(principal_scs(&d, d.join(1, 2)).unwrap().members(), set(&[3]));
    }

    #[test]
    fn suites_pass_on_examples() {
        for s in [
            examples::middle_unit_chain(),
            examples::nilpotent_chain(),
            examples::diamond(),
            examples::lukasiewicz_pair(5, 3).unwrap(),
            examples::trivial(),
        ] {
            let r = generation_suite(&s).unwrap();
            assert!(r.passed(), "{}", r.render_text());
        }
    }
}
