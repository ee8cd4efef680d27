//! Every invariant check in the crate, run per algebra and over catalogs.

use rayon::prelude::*;

use crate::basis::{
    arithmetic_law_suite, boxed_product_suite, monotone_stabilization_suite, round_trip_check,
    verify_eight_identity_basis, verify_six_identity_basis, weak_residuation_suite,
};
use crate::canon::{canonical_form, CanonicalForm};
use crate::carrier::{Elem, Table};
use crate::catalog::CatalogEntry;
use crate::congruence::{s_term_membership_suite, verify_order_iso};
use crate::enumerate::{lattices, products};
use crate::error::AlgebraError;
use crate::generation::generation_suite;
use crate::identities::{chain_variety_report, join_power_suite};
use crate::lattice::FiniteLattice;
use crate::monoid::{verify_lmonoid, MonoidOps};
use crate::report::{Check, Report};
use crate::srl::{Candidate, SrlMonoid};

/// Largest carrier for which every relabeling is tried.
pub const FULL_RELABELING_BOUND: usize = 6;

/// Both bases must accept the algebra, and agree.
pub fn basis_agreement(s: &SrlMonoid) -> Report {
    let mut r = Report::new("equational bases", s.names());
    let six = verify_six_identity_basis(s);
    let eight = verify_eight_identity_basis(s);
    r.push(Check::verdict("six-identity basis", six.passed()));
    r.push(Check::verdict("eight-identity basis", eight.passed()));
    r
}

/// Calls `visit` with every permutation of `0..n`.
pub fn for_each_permutation(n: usize, visit: &mut dyn FnMut(&[Elem])) {
    fn rec(p: &mut Vec<Elem>, k: usize, visit: &mut dyn FnMut(&[Elem])) {
        if k + 1 >= p.len() {
            visit(p);
            return;
        }
        for i in k..p.len() {
            p.swap(k, i);
            rec(p, k + 1, visit);
            p.swap(k, i);
        }
    }
    rec(&mut (0..n).collect(), 0, visit);
}

/// Every relabeling of `s` has the canonical form `form`.
pub fn relabeling_check(s: &SrlMonoid, form: &CanonicalForm) -> Result<Check, AlgebraError> {
    let id = "relabelings canonicalize back";
    if s.size() > FULL_RELABELING_BOUND {
        return Ok(Check::info(id, "skipped: carrier too large"));
    }
    let mut bad: Option<Vec<Elem>> = None;
    let mut err = None;
    for_each_permutation(s.size(), &mut |p| {
        if bad.is_some() || err.is_some() {
            return;
        }
        match canonical_form(&s.relabel(p)) {
            Ok(f) if &f == form => {}
            Ok(_) => bad = Some(p.to_vec()),
            Err(e) => err = Some(e),
        }
    });
    if let Some(e) = err {
        return Err(e);
    }
    Ok(match bad {
        None => Check::pass(id),
        Some(p) => Check::fail(id).with_detail(format!("permutation {p:?}")),
    })
}

/// All per-algebra suites, concatenated.
pub fn algebra_suite(s: &SrlMonoid) -> Result<Report, AlgebraError> {
    let mut r = Report::new("all checks", s.names());
    r.extend(basis_agreement(s));
    r.extend(arithmetic_law_suite(s));
    r.extend(weak_residuation_suite(s));
    r.extend(boxed_product_suite(s, 3));
    r.extend(monotone_stabilization_suite(s, 2 * s.size()));
    r.push(round_trip_check(s));
    r.extend(s_term_membership_suite(s)?);
    r.extend(verify_order_iso(s)?);
    r.extend(generation_suite(s)?);
    r.extend(chain_variety_report(s)?);
    r.extend(join_power_suite(s));
    let form = canonical_form(s)?;
    r.push(relabeling_check(s, &form)?);
    Ok(r)
}

/// Runs [`algebra_suite`] on every entry in parallel; the report lists the
/// entries in catalog order.
pub fn catalog_suite(entries: &[CatalogEntry]) -> Result<Report, AlgebraError> {
    let reports: Vec<Report> = entries.par_iter().map(|e| algebra_suite(&e.algebra)).collect::<Result<_, _>>()?;
    let mut out = Report::new("full suite", &[]);
    for (e, r) in entries.iter().zip(reports) {
        out.absorb(&e.name, r);
        out.push(
            Check::verdict(format!("{}: |Con| = |SCS| in index", e.name), e.n_con == e.n_scs)
                .with_detail(format!("{} vs {}", e.n_con, e.n_scs)),
        );
    }
    Ok(out)
}

/// Statistics of a sweep over candidate tables.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct SweepCounts {
    pub candidates: usize,
    pub accepted: usize,
    pub disagreements: usize,
}

fn table_from_code(n: usize, mut code: usize) -> Table {
    let mut cells = vec![0; n * n];
    for c in cells.iter_mut() {
        *c = code % n;
        code /= n;
    }
    Table::from_fn(n, |a, b| cells[a * n + b])
}

fn labeled_chains(n: usize) -> Vec<FiniteLattice> {
    let mut out = Vec::new();
    for_each_permutation(n, &mut |p| {
        let pairs: Vec<(Elem, Elem)> = p.windows(2).map(|w| (w[0], w[1])).collect();
        let names = (0..n).map(|i| i.to_string()).collect();
        out.push(FiniteLattice::from_pairs(names, &pairs).expect("chain"));
    });
    out
}

fn sweep_arrows(l: &FiniteLattice, prod: &Table, unit: Elem, counts: &mut SweepCounts) {
    let n = l.size();
    for code in 0..n.pow((n * n) as u32) {
        let c = Candidate::new(l.clone(), prod.clone(), unit, table_from_code(n, code)).expect("shape");
        let six = verify_six_identity_basis(&c).passed();
        let eight = verify_eight_identity_basis(&c).passed();
        counts.candidates += 1;
        counts.accepted += six as usize;
        counts.disagreements += (six != eight) as usize;
    }
}

/// Compares the verdicts of the two equational bases on table-complete
/// candidates: for sizes 1 and 2 every labeled lattice, product, unit and
/// arrow table; for size 3 every commutative l-monoid on the 3-chain with
/// every arrow table.
pub fn basis_equivalence_sweep(max_size: usize) -> SweepCounts {
    let mut counts = SweepCounts::default();
    for n in 1..=max_size.min(2) {
        for l in labeled_chains(n) {
            for code in 0..n.pow((n * n) as u32) {
                let prod = table_from_code(n, code);
                for unit in 0..n {
                    sweep_arrows(&l, &prod, unit, &mut counts);
                }
            }
        }
    }
    if max_size >= 3 {
        let parts: Vec<SweepCounts> = lattices(3)
            .par_iter()
            .flat_map(|l| (0..3).map(move |u| (l, u)).collect::<Vec<_>>())
            .map(|(l, unit)| {
                let mut c = SweepCounts::default();
                for prod in products(l, unit) {
                    debug_assert!(verify_lmonoid(l, &prod, unit).is_ok());
                    sweep_arrows(l, &prod, unit, &mut c);
                }
                c
            })
            .collect();
        for p in parts {
            counts.candidates += p.candidates;
            counts.accepted += p.accepted;
            counts.disagreements += p.disagreements;
        }
    }
    counts
}

pub fn basis_sweep_report(max_size: usize) -> Report {
    let c = basis_equivalence_sweep(max_size);
    let mut r = Report::new(format!("basis equivalence on candidates up to size {max_size}"), &[]);
    r.push(Check::verdict("six-identity verdict = eight-identity verdict", c.disagreements == 0).with_detail(format!(
        "{} candidates, {} accepted, {} disagreements",
        c.candidates, c.accepted, c.disagreements
    )));
    r
}
