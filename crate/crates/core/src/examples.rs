//! Built-in algebras: the two three-element chains, the four-element diamond
//! and finite Łukasiewicz chains residuated relative to a subchain.

use crate::carrier::{ElementSet, Table};
use crate::error::AlgebraError;
use crate::lattice::{names, FiniteLattice};
use crate::monoid::CommutativeLMonoid;
use crate::srl::SrlMonoid;

/// Names accepted by [`builtin`], besides `luk<m>-<n>`.
pub const BUILTIN_NAMES: [&str; 3] = ["ex2", "ex3", "diamond"];

/// The one-element algebra.
pub fn trivial() -> SrlMonoid {
    let l = FiniteLattice::chain(names(&["e"])).expect("chain");
    let m = CommutativeLMonoid::new(l, Table::from_fn(1, |_, _| 0), 0).expect("l-monoid");
    SrlMonoid::residuate_from_q(m, ElementSet::singleton(0)).expect("residuated")
}

/// Chain `0 < e < 1` with `e·1 = 1·1 = 1`, `0` absorbing, and `Q = {0, e}`.
pub fn middle_unit_chain() -> SrlMonoid {
    let l = FiniteLattice::chain(names(&["0", "e", "1"])).expect("chain");
    let prod = Table::from_rows("prod", 3, &[[0, 0, 0], [0, 1, 2], [0, 2, 2]]).expect("shape");
    let m = CommutativeLMonoid::new(l, prod, 1).expect("l-monoid");
    SrlMonoid::residuate_from_q(m, [0, 1].into_iter().collect()).expect("residuated")
}

/// Chain `0 < a < 1` with unit `1`, `a·a = 0`, and `Q = {0, 1}`.
pub fn nilpotent_chain() -> SrlMonoid {
    let l = FiniteLattice::chain(names(&["0", "a", "1"])).expect("chain");
    let prod = Table::from_rows("prod", 3, &[[0, 0, 0], [0, 0, 1], [0, 1, 2]]).expect("shape");
    let m = CommutativeLMonoid::new(l, prod, 2).expect("l-monoid");
    SrlMonoid::residuate_from_q(m, [0, 2].into_iter().collect()).expect("residuated")
}

/// The diamond `0 < a, b < 1` with `· = ∧`, unit `1` and `Q = {0, 1}`.
pub fn diamond() -> SrlMonoid {
    let l =
        FiniteLattice::from_pairs(names(&["0", "a", "b", "1"]), &[(0, 1), (0, 2), (1, 3), (2, 3)]).expect("diamond");
    let prod = l.meet_table().clone();
    let m = CommutativeLMonoid::new(l, prod, 3).expect("l-monoid");
    SrlMonoid::residuate_from_q(m, [0, 3].into_iter().collect()).expect("residuated")
}

/// The `m`-element Łukasiewicz chain `{0, 1/(m-1), ..., 1}` with truncated
/// product `max(0, a + b - 1)`, residuated relative to the copy of the
/// `n`-element chain inside it.
pub fn lukasiewicz_pair(m: usize, n: usize) -> Result<SrlMonoid, AlgebraError> {
    if m < 2 || n < 2 || !(m - 1).is_multiple_of(n - 1) {
        return Err(AlgebraError::NotASubchain { m, n });
    }
    let top = m - 1;
    let labels: Vec<String> = (0..m).map(|i| fraction(i, top)).collect();
    let l = FiniteLattice::chain(labels)?;
    let prod = Table::from_fn(m, |a, b| (a + b).saturating_sub(top));
    let monoid = CommutativeLMonoid::new(l, prod, top)?;
    let step = top / (n - 1);
    let q: ElementSet = (0..n).map(|k| k * step).collect();
    SrlMonoid::residuate_from_q(monoid, q)
}

fn fraction(i: usize, d: usize) -> String {
    match i {
        0 => "0".to_string(),
        _ if i == d => "1".to_string(),
        _ => {
            let g = gcd(i, d);
            format!("{}/{}", i / g, d / g)
        }
    }
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Looks up a built-in algebra by name: `ex2`, `ex3`, `diamond` or `luk<m>-<n>`.
pub fn builtin(name: &str) -> Option<SrlMonoid> {
    match name {
        "ex2" => Some(middle_unit_chain()),
        "ex3" => Some(nilpotent_chain()),
        "diamond" => Some(diamond()),
        _ => {
            let (m, n) = name.strip_prefix("luk")?.split_once('-')?;
            lukasiewicz_pair(m.parse().ok()?, n.parse().ok()?).ok()
        }
    }
}

/// The three fixed examples, keyed by name.
pub fn builtin_examples() -> Vec<(&'static str, SrlMonoid)> {
    vec![("ex2", middle_unit_chain()), ("ex3", nilpotent_chain()), ("diamond", diamond())]
}
