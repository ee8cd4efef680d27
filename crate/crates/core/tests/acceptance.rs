//! The acceptance gate: ten criteria, one PASS/FAIL line each.
//!
//! Runs without the libtest harness so the lines always print; the process
//! exits non-zero if any criterion fails.

mod common;

use std::collections::BTreeSet;
use std::time::Instant;

use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::SeedableRng;

use srlab::basis::{verify_eight_identity_basis, verify_six_identity_basis};
use srlab::catalog::{build_entries, CatalogEntry};
use srlab::congruence::{all_congruences, verify_order_iso};
use srlab::enumerate::enumerate_srl_monoids;
use srlab::generation::{
    generated_scs, generated_scs_oracle, principal_congruence_by_formula, principal_scs, submonoid_closure,
};
use srlab::identities::{holds, is_subdirectly_irreducible};
use srlab::subalgebra::{
    all_box_filters, all_convex, all_strongly_convex, is_convex_subalgebra, strong_convexity_witness,
};
use srlab::suite::basis_equivalence_sweep;
use srlab::{
    canonical_form, examples, Congruence, Elem, ElementSet, IdentityId, Mode, MonoidOps, Operations, SrlMonoid,
};

type Outcome = Result<String, String>;

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn arrow_rows(s: &SrlMonoid) -> Vec<Vec<Elem>> {
    (0..s.size()).map(|a| (0..s.size()).map(|b| s.arrow(a, b)).collect()).collect()
}

fn golden_tables() -> Outcome {
    // rows are a→(-), columns b, in element order
    let cases: [(&str, SrlMonoid, Vec<Vec<Elem>>); 3] = [
        ("ex2", examples::middle_unit_chain(), vec![vec![1, 1, 1], vec![0, 1, 1], vec![0, 0, 1]]),
        ("ex3", examples::nilpotent_chain(), vec![vec![2, 2, 2], vec![0, 2, 2], vec![0, 0, 2]]),
        ("diamond", examples::diamond(), vec![vec![3, 3, 3, 3], vec![0, 3, 0, 3], vec![0, 0, 3, 3], vec![0, 0, 0, 3]]),
    ];
    for (name, s, want) in &cases {
        ensure(arrow_rows(s) == *want, || format!("{name}: arrow table {:?}", arrow_rows(s)))?;
    }
    let c2 = cases[0].1.classify();
    ensure(!c2.integral && !c2.crl && !c2.sr_lattice && c2.bounded, || format!("ex2 flags {c2:?}"))?;
    let c3 = cases[1].1.classify();
    ensure(c3.integral && !c3.crl && !c3.sr_lattice && c3.bounded, || format!("ex3 flags {c3:?}"))?;
    Ok("three arrow tables and both flag sets exact".into())
}

fn basis_equivalence(catalog: &[CatalogEntry]) -> Outcome {
    let sweep = basis_equivalence_sweep(3);
    ensure(sweep.disagreements == 0, || format!("{} disagreements on candidates", sweep.disagreements))?;
    for e in catalog {
        let six = verify_six_identity_basis(&e.algebra).passed();
        let eight = verify_eight_identity_basis(&e.algebra).passed();
        ensure(six == eight, || format!("{}: verdicts differ", e.name))?;
    }
    Ok(format!("{} candidates of size <= 3, {} catalog algebras", sweep.candidates, catalog.len()))
}

fn order_isomorphism(catalog: &[CatalogEntry]) -> Outcome {
    for e in catalog {
        let r = verify_order_iso(&e.algebra).map_err(|err| format!("{}: {err}", e.name))?;
        ensure(r.passed(), || format!("{}:\n{}", e.name, r.render_text()))?;
        let con = all_congruences(&e.algebra).map_err(|err| err.to_string())?;
        let scs = all_strongly_convex(&e.algebra).map_err(|err| err.to_string())?;
        ensure(con.len() == scs.len(), || format!("{}: |Con| = {}, |SCS| = {}", e.name, con.len(), scs.len()))?;
    }
    Ok(format!("{} algebras", catalog.len()))
}

fn integral_collapse(catalog: &[CatalogEntry]) -> Outcome {
    let mut count = 0;
    for e in catalog.iter().filter(|e| e.class.integral) {
        let s = &e.algebra;
        let convex: BTreeSet<u32> = all_convex(s).map_err(|x| x.to_string())?.iter().map(|h| h.bits()).collect();
        let strong: BTreeSet<u32> =
            all_strongly_convex(s).map_err(|x| x.to_string())?.iter().map(|h| h.members.bits()).collect();
        let boxed: BTreeSet<u32> = all_box_filters(s).map_err(|x| x.to_string())?.iter().map(|h| h.bits()).collect();
        ensure(convex == strong && strong == boxed, || format!("{}: families differ", e.name))?;
        count += 1;
    }
    Ok(format!("{count} integral algebras"))
}

fn non_example() -> Outcome {
    let s = examples::middle_unit_chain();
    let h: ElementSet = [0, 1].into_iter().collect();
    ensure(is_convex_subalgebra(&s, h), || "{0,e} should be a convex subalgebra".into())?;
    let w = strong_convexity_witness(&s, h);
    // a = 1 (index 2), h = 0
    ensure(w == Some((2, 0)), || format!("witness {w:?}"))?;
    ensure(s.prod(2, 0) == 0 && s.leq(0, 1) && s.arrow(0, 2) == 1, || "table facts".into())?;
    Ok("{0,e} convex, not strongly convex, witness a=1 with h=0".into())
}

/// Strongly convex subalgebras straight from the definition.
fn strongly_convex_by_definition(s: &SrlMonoid) -> Vec<ElementSet> {
    let n = s.size();
    let e = s.unit();
    (0u32..1 << n)
        .map(ElementSet::from_bits)
        .filter(|&h| {
            let closed = h.contains(e)
                && h.iter().all(|a| {
                    h.iter().all(|b| {
                        [s.meet(a, b), s.join(a, b), s.prod(a, b), s.arrow(a, b)].iter().all(|&c| h.contains(c))
                    })
                });
            let convex =
                h.iter().all(|a| h.iter().all(|b| (0..n).all(|c| !(s.leq(a, c) && s.leq(c, b)) || h.contains(c))));
            let strong =
                h.iter().all(|x| (0..n).all(|a| !(s.leq(s.prod(a, x), e) && s.leq(e, s.arrow(x, a))) || h.contains(a)));
            closed && convex && strong
        })
        .collect()
}

fn least_containing(family: &[ElementSet], gen: ElementSet, n: usize) -> ElementSet {
    family.iter().filter(|h| gen.is_subset(**h)).fold(ElementSet::full(n), |acc, &h| acc.intersection(h))
}

/// `C[S]` restricted to exponents `n = m` on elements of `⟨S⟩`.
fn diagonal_formula(s: &SrlMonoid, gen: ElementSet) -> ElementSet {
    let hs = submonoid_closure(s, gen);
    let cap = s.size();
    (0..s.size())
        .filter(|&x| {
            hs.iter().any(|h| {
                (0..=cap).any(|k| {
                    let b = s.box_pow(s.pow(h, k), k);
                    s.leq(b, x) && s.leq(s.prod(x, b), s.unit())
                })
            })
        })
        .collect()
}

fn generation_formula(catalog: &[CatalogEntry]) -> Outcome {
    let mut sets = 0;
    for e in catalog {
        let s = &e.algebra;
        let family = strongly_convex_by_definition(s);
        let neg: Vec<Elem> = s.negative_cone().iter().collect();
        for mask in 0u32..1 << neg.len() {
            let gen: ElementSet = neg.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &a)| a).collect();
            let formula = generated_scs(s, gen).map_err(|x| x.to_string())?.members();
            let oracle = generated_scs_oracle(s, gen).map_err(|x| x.to_string())?.members;
            let by_definition = least_containing(&family, gen, s.size());
            let diagonal = diagonal_formula(s, gen);
            ensure(formula == oracle && oracle == by_definition && diagonal == oracle, || {
                format!(
                    "{}: S = {}: formula {}, oracle {}, definition {}, diagonal {}",
                    e.name,
                    gen.render(s.names()),
                    formula.render(s.names()),
                    oracle.render(s.names()),
                    by_definition.render(s.names()),
                    diagonal.render(s.names())
                )
            })?;
            if gen.len() == 1 {
                let a = gen.first().unwrap();
                let p = principal_scs(s, a).map_err(|x| x.to_string())?.members();
                ensure(p == oracle, || format!("{}: C[{}] by powers", e.name, s.names()[a]))?;
            }
            sets += 1;
        }
    }
    Ok(format!("{sets} generator sets"))
}

/// Every partition of `0..n` as a restricted growth string.
fn partitions(n: usize) -> Vec<Vec<usize>> {
    fn rec(prefix: &mut Vec<usize>, n: usize, out: &mut Vec<Vec<usize>>) {
        if prefix.len() == n {
            out.push(prefix.clone());
            return;
        }
        let next = prefix.iter().max().map_or(0, |m| m + 1);
        for label in 0..=next {
            prefix.push(label);
            rec(prefix, n, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::new(), n, &mut out);
    out
}

fn principal_congruences(catalog: &[CatalogEntry]) -> Outcome {
    let mut pairs = 0;
    for e in catalog {
        let s = &e.algebra;
        let n = s.size();
        let cons: Vec<Congruence> = partitions(n)
            .iter()
            .map(|p| Congruence::from_labels(p))
            .filter(|t| t.compatibility_failure(s).is_none())
            .collect();
        for a in 0..n {
            for b in 0..n {
                let over: Vec<&Congruence> = cons.iter().filter(|t| t.related(a, b)).collect();
                let least = over.iter().find(|t| over.iter().all(|u| t.is_below(u))).ok_or("no least congruence")?;
                for diagonal in [false, true] {
                    let f = principal_congruence_by_formula(s, a, b, diagonal).map_err(|x| x.to_string())?;
                    ensure(f == **least, || {
                        format!("{}: θ({a},{b}) formula {} vs {}", e.name, f.render(s.names()), least.render(s.names()))
                    })?;
                }
                let class = least.block_of(s.unit());
                let generated = generated_scs(s, ElementSet::singleton(s.s_term(a, b))).map_err(|x| x.to_string())?;
                ensure(class == generated.members(), || format!("{}: e-class of θ({a},{b})", e.name))?;
                pairs += 1;
            }
        }
    }
    Ok(format!("{pairs} pairs"))
}

fn diamond_counterexample(catalog: &[CatalogEntry]) -> Outcome {
    let s = examples::diamond();
    let (a, b) = (1, 2);
    let c = |x: Elem| generated_scs(&s, ElementSet::singleton(x)).map(|g| g.members()).map_err(|e| e.to_string());
    let join = c(s.join(a, b))?;
    let meet = c(a)?.intersection(c(b)?);
    ensure(join.render(s.names()) == "{1}", || format!("C[a∨b] = {}", join.render(s.names())))?;
    ensure(meet.render(s.names()) == "{0,a,b,1}", || format!("C[a]∩C[b] = {}", meet.render(s.names())))?;

    let mut with_e2 = 0;
    for e in catalog {
        let s = &e.algebra;
        let e2 = holds(s, IdentityId::E2);
        with_e2 += e2 as usize;
        let neg: Vec<Elem> = s.negative_cone().iter().collect();
        let c = |x: Elem| generated_scs(s, ElementSet::singleton(x)).map(|g| g.members()).map_err(|e| e.to_string());
        for &x in &neg {
            for &y in &neg {
                let (cx, cy) = (c(x)?, c(y)?);
                let join_of_sets = generated_scs_oracle(s, cx.union(cy)).map_err(|e| e.to_string())?.members;
                ensure(c(s.meet(x, y))? == join_of_sets, || format!("{}: C[x∧y] at ({x},{y})", e.name))?;
                if e2 {
                    ensure(c(s.join(x, y))? == cx.intersection(cy), || format!("{}: C[x∨y] at ({x},{y})", e.name))?;
                }
            }
        }
    }
    Ok(format!("diamond reproduced; {with_e2} catalog algebras satisfy E2"))
}

fn chain_variety_bases(catalog: &[CatalogEntry]) -> Outcome {
    use IdentityId::*;
    let mut members = 0;
    for e in catalog {
        let s = &e.algebra;
        let h = |i| holds(s, i);
        let verdicts = [h(C2) && h(E2), h(E1) && h(C2), h(C1) && h(C2)];
        ensure(verdicts.iter().all(|&v| v == verdicts[0]), || format!("{}: bases disagree {verdicts:?}", e.name))?;
        if verdicts[0] {
            members += 1;
            ensure(h(LatDist) && h(ProdMeetDist), || format!("{}: distributivity fails", e.name))?;
            let si = is_subdirectly_irreducible(s).map_err(|x| x.to_string())?;
            ensure(!si.subdirectly_irreducible || s.lattice().is_chain(), || {
                format!("{}: SI but not a chain", e.name)
            })?;
        }
    }
    Ok(format!("{members} of {} algebras in the variety", catalog.len()))
}

fn enumeration_soundness(catalog: &[CatalogEntry]) -> Outcome {
    let mut counts = Vec::new();
    for n in 1..=3 {
        let oracle = common::isomorphism_classes(&common::labeled_srl_monoids(n));
        let ours = catalog.iter().filter(|e| e.algebra.size() == n).count();
        ensure(oracle == ours, || format!("size {n}: oracle {oracle}, enumeration {ours}"))?;
        counts.push(ours.to_string());
    }
    let mut rng = StdRng::seed_from_u64(0x5eed);
    for e in catalog {
        let s = &e.algebra;
        ensure(verify_six_identity_basis(s).passed() && verify_eight_identity_basis(s).passed(), || {
            format!("{} fails a basis", e.name)
        })?;
        let mut perm: Vec<Elem> = (0..s.size()).collect();
        for _ in 0..100 {
            perm.shuffle(&mut rng);
            let f = canonical_form(&s.relabel(&perm)).map_err(|x| x.to_string())?;
            ensure(f == e.form, || format!("{}: relabeling {perm:?} changes the canonical form", e.name))?;
        }
    }
    Ok(format!("counts 1..3 = {}; {} entries x 100 relabelings", counts.join(", "), catalog.len()))
}

fn main() {
    let start = Instant::now();
    let catalog = build_entries(enumerate_srl_monoids(4, Mode::Verify).expect("enumeration")).expect("entries");
    println!("catalog up to size 4: {} algebras in {:.2?}", catalog.len(), start.elapsed());

    let criteria: [(&str, &dyn Fn() -> Outcome); 10] = [
        ("golden tables", &golden_tables),
        ("basis equivalence", &|| basis_equivalence(&catalog)),
        ("order isomorphism", &|| order_isomorphism(&catalog)),
        ("integral collapse", &|| integral_collapse(&catalog)),
        ("non-example", &non_example),
        ("generation formula", &|| generation_formula(&catalog)),
        ("principal congruences", &|| principal_congruences(&catalog)),
        ("diamond counterexample", &|| diamond_counterexample(&catalog)),
        ("chain-variety bases", &|| chain_variety_bases(&catalog)),
        ("enumeration soundness", &|| enumeration_soundness(&catalog)),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let outcome = run();
        let elapsed = t.elapsed();
        match outcome {
            Ok(note) => println!("criterion {:>2} PASS  {name}: {note} ({elapsed:.2?})", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {:>2} FAIL  {name}: {why} ({elapsed:.2?})", i + 1);
            }
        }
    }
    println!("{} of 10 criteria passed", 10 - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
