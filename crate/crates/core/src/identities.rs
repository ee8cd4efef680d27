//! Identities of the subvariety generated by totally ordered srl-monoids,
//! subdirect irreducibility, and the checks tying them together.

use crate::basis::Law;
use crate::carrier::Elem;
use crate::congruence::{all_congruences, Congruence};
use crate::error::AlgebraError;
use crate::monoid::MonoidOps;
use crate::report::{Check, Report};
use crate::srl::{Operations, SrlMonoid};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum IdentityId {
    C1,
    C2,
    E1,
    E2,
    LatDist,
    ProdMeetDist,
}

const XYZ: &[&str] = &["x", "y", "z"];

const LAWS: [Law; 6] = [
    Law {
        id: "C1",
        text: "e <= (x→y)∨(y→x)",
        vars: XYZ,
        holds: |o, v| o.leq(o.unit(), o.join(o.arrow(v[0], v[1]), o.arrow(v[1], v[0]))),
    },
    Law {
        id: "C2",
        text: "e∧(x∨y) = (e∧x)∨(e∧y)",
        vars: XYZ,
        holds: |o, v| {
            let e = o.unit();
            o.meet(e, o.join(v[0], v[1])) == o.join(o.meet(e, v[0]), o.meet(e, v[1]))
        },
    },
    Law {
        id: "E1",
        text: "(x∧y)→z = (x→z)∨(y→z)",
        vars: XYZ,
        holds: |o, v| o.arrow(o.meet(v[0], v[1]), v[2]) == o.join(o.arrow(v[0], v[2]), o.arrow(v[1], v[2])),
    },
    Law {
        id: "E2",
        text: "z→(x∨y) = (z→x)∨(z→y)",
        vars: XYZ,
        holds: |o, v| o.arrow(v[2], o.join(v[0], v[1])) == o.join(o.arrow(v[2], v[0]), o.arrow(v[2], v[1])),
    },
    Law {
        id: "LATDIST",
        text: "(x∨y)∧z = (x∧z)∨(y∧z)",
        vars: XYZ,
        holds: |o, v| o.meet(o.join(v[0], v[1]), v[2]) == o.join(o.meet(v[0], v[2]), o.meet(v[1], v[2])),
    },
    Law {
        id: "PRODMEETDIST",
        text: "x·(y∧z) = (x·y)∧(x·z)",
        vars: XYZ,
        holds: |o, v| o.prod(v[0], o.meet(v[1], v[2])) == o.meet(o.prod(v[0], v[1]), o.prod(v[0], v[2])),
    },
];

impl IdentityId {
    pub const ALL: [IdentityId; 6] =
        [IdentityId::C1, IdentityId::C2, IdentityId::E1, IdentityId::E2, IdentityId::LatDist, IdentityId::ProdMeetDist];

    pub fn law(self) -> &'static Law {
        &LAWS[self as usize]
    }

    pub fn tag(self) -> &'static str {
        self.law().id
    }

    pub fn parse(tag: &str) -> Option<IdentityId> {
        IdentityId::ALL.into_iter().find(|i| i.tag().eq_ignore_ascii_case(tag))
    }
}

impl std::fmt::Display for IdentityId {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.tag())
    }
}

/// Exhaustive evaluation; a failure carries the first assignment in `x, y, z`
/// order with `x` outermost.
pub fn check_identity<O: Operations>(ops: &O, id: IdentityId) -> Check {
    id.law().check(ops)
}

pub fn holds<O: Operations>(ops: &O, id: IdentityId) -> bool {
    id.law().first_violation(ops).is_none()
}

/// Exponent bound for the `2^m` identities: enough doublings to pass the
/// carrier size, and at least three.
fn doubling_bound(n: usize) -> u32 {
    (usize::BITS - n.leading_zeros()).max(3)
}

/// Both `E1` and `E2` imply `C1`; under `C1`, `(a∨b)^(2^m) = a^(2^m) ∨ b^(2^m)`
/// for negative `a, b`; under `E2`, the same after `□^(2^n)`.
pub fn join_power_suite(s: &SrlMonoid) -> Report {
    let mut r = Report::new("powers of joins", s.names());
    let [c1, e1, e2] = [IdentityId::C1, IdentityId::E1, IdentityId::E2].map(|i| holds(s, i));
    r.push(Check::verdict("E1 implies C1", !e1 || c1));
    r.push(Check::verdict("E2 implies C1", !e2 || c1));

    let neg: Vec<Elem> = s.negative_cone().iter().collect();
    let bound = doubling_bound(s.size());
    let id = "C1: (a∨b)^k = a^k ∨ b^k, k = 2^m";
    if c1 {
        let mut bad = None;
        'pow: for &a in &neg {
            for &b in &neg {
                for m in 0..=bound {
                    let k = 1usize << m;
                    if s.pow(s.join(a, b), k) != s.join(s.pow(a, k), s.pow(b, k)) {
                        bad = Some((a, b, m));
                        break 'pow;
                    }
                }
            }
        }
        r.push(match bad {
            None => Check::pass(id),
            Some((a, b, m)) => Check::fail(id).with_witness(&[("a", a), ("b", b)]).with_detail(format!("m={m}")),
        });
    } else {
        r.push(Check::info(id, "skipped: C1 fails"));
    }

    let id = "E2: □^j((a∨b)^k) = □^j(a^k) ∨ □^j(b^k)";
    if e2 {
        let mut bad = None;
        'boxp: for &a in &neg {
            for &b in &neg {
                for m in 0..=bound {
                    let k = 1usize << m;
                    for n in 0..=bound {
                        let j = 1usize << n;
                        let lhs = s.box_pow(s.pow(s.join(a, b), k), j);
                        let rhs = s.join(s.box_pow(s.pow(a, k), j), s.box_pow(s.pow(b, k), j));
                        if lhs != rhs {
                            bad = Some((a, b, m, n));
                            break 'boxp;
                        }
                    }
                }
            }
        }
        r.push(match bad {
            None => Check::pass(id),
            Some((a, b, m, n)) => {
                Check::fail(id).with_witness(&[("a", a), ("b", b)]).with_detail(format!("m={m}, n={n}"))
            }
        });
    } else {
        r.push(Check::info(id, "skipped: E2 fails"));
    }
    r
}

/// Subdirect irreducibility verdict, with the monolith when there is one.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Irreducibility {
    pub subdirectly_irreducible: bool,
    pub monolith: Option<Congruence>,
}

/// SI iff `Con(A) \ {Δ}` has a least element.
pub fn is_subdirectly_irreducible(s: &SrlMonoid) -> Result<Irreducibility, AlgebraError> {
    let nontrivial: Vec<Congruence> = all_congruences(s)?.into_iter().filter(|t| !t.is_identity()).collect();
    let monolith = nontrivial.iter().find(|t| nontrivial.iter().all(|u| t.is_below(u))).cloned();
    Ok(Irreducibility { subdirectly_irreducible: monolith.is_some(), monolith })
}

/// Per-algebra checks on the three equational bases of the chain-generated
/// subvariety: `{C2, E2}`, `{E1, C2}` and `{C1, C2}`.
pub fn chain_variety_report(s: &SrlMonoid) -> Result<Report, AlgebraError> {
    let mut r = Report::new("chain-generated subvariety", s.names());
    let mut verdict = [false; 6];
    for id in IdentityId::ALL {
        let c = check_identity(s, id);
        verdict[id as usize] = c.passed();
        let mut info = Check::info(id.tag(), if c.passed() { "holds" } else { "fails" });
        info.witness = c.witness;
        r.push(info);
    }
    let v = |id: IdentityId| verdict[id as usize];
    use IdentityId::*;
    let bases = [v(C2) && v(E2), v(E1) && v(C2), v(C1) && v(C2)];
    r.push(
        Check::verdict("bases agree", bases.iter().all(|&b| b == bases[0]))
            .with_detail(format!("{{C2,E2}}={} {{E1,C2}}={} {{C1,C2}}={}", bases[0], bases[1], bases[2])),
    );
    let in_variety = bases.iter().any(|&b| b);
    r.push(Check::verdict("basis implies LATDIST", !in_variety || v(LatDist)));
    r.push(Check::verdict("basis implies PRODMEETDIST", !in_variety || v(ProdMeetDist)));
    let si = is_subdirectly_irreducible(s)?;
    let chain = s.lattice().is_chain();
    r.push(
        Check::verdict("SI with {C2,E2} is a chain", !(si.subdirectly_irreducible && bases[0]) || chain).with_detail(
            match &si.monolith {
                Some(m) => format!("SI, monolith {}", m.render(s.names())),
                None => "not SI".to_string(),
            },
        ),
    );
    Ok(r)
}

/// Runs [`chain_variety_report`] and [`join_power_suite`] over named
/// algebras and folds the results into one report.
pub fn src_membership_suite(catalog: &[(String, SrlMonoid)]) -> Result<Report, AlgebraError> {
    let mut out = Report::new("chain-generated subvariety membership", &[]);
    for (name, s) in catalog {
        out.absorb(name, chain_variety_report(s)?);
        out.absorb(name, join_power_suite(s));
    }
    Ok(out)
}
