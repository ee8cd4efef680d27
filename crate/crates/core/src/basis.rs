//! Equational bases for srl-monoids and the arithmetic laws that hold in
//! every srl-monoid.
//!
//! Identities are evaluated by exhaustive assignment. Variables are bound in
//! the order listed, first variable outermost, so the reported witness is the
//! lexicographically first failing assignment.

use crate::carrier::Elem;
use crate::monoid::{verify_lmonoid, MonoidOps};
use crate::report::{Check, Report};
use crate::srl::{Operations, SrlMonoid};

type LawFn = fn(&dyn Operations, &[Elem]) -> bool;

/// A universally quantified (in)equation.
#[derive(Clone, Copy)]
pub struct Law {
    pub id: &'static str,
    pub text: &'static str,
    pub vars: &'static [&'static str],
    pub holds: LawFn,
}

impl Law {
    /// First failing assignment, if any.
    pub fn first_violation(&self, ops: &dyn Operations) -> Option<Vec<Elem>> {
        first_failure(ops.size(), self.vars.len(), |v| (self.holds)(ops, v))
    }

    pub fn holds_at(&self, ops: &dyn Operations, values: &[Elem]) -> bool {
        (self.holds)(ops, values)
    }

    pub fn check(&self, ops: &dyn Operations) -> Check {
        Check::from_witness(self.id, self.vars, self.first_violation(ops)).with_detail(self.text)
    }
}

/// Runs `pred` over every tuple in `0..n` of the given arity in lexicographic
/// order and returns the first tuple where it is false.
pub fn first_failure(n: usize, arity: usize, mut pred: impl FnMut(&[Elem]) -> bool) -> Option<Vec<Elem>> {
    let mut t = vec![0; arity];
    loop {
        if !pred(&t) {
            return Some(t);
        }
        let mut i = arity;
        loop {
            if i == 0 {
                return None;
            }
            i -= 1;
            t[i] += 1;
            if t[i] < n {
                break;
            }
            t[i] = 0;
        }
    }
}

fn le(o: &dyn Operations, a: Elem, b: Elem) -> bool {
    o.leq(a, b)
}

const XY: &[&str] = &["x", "y"];
const XYZ: &[&str] = &["x", "y", "z"];
const ABC: &[&str] = &["a", "b", "c"];
const AB: &[&str] = &["a", "b"];

/// The six-identity basis, in order.
pub const THEOREM1_BASIS: [Law; 6] = [
    Law {
        id: "six.1",
        text: "e <= (x∧y)→y",
        vars: XY,
        holds: |o, v| le(o, o.unit(), o.arrow(o.meet(v[0], v[1]), v[1])),
    },
    Law {
        id: "six.2",
        text: "x→y <= (z∧e)→(x→y)",
        vars: XYZ,
        holds: |o, v| {
            let xy = o.arrow(v[0], v[1]);
            le(o, xy, o.arrow(o.meet(v[2], o.unit()), xy))
        },
    },
    Law {
        id: "six.3", text: "x·(x→y) <= y", vars: XY, holds: |o, v| le(o, o.prod(v[0], o.arrow(v[0], v[1])), v[1])
    },
    Law {
        id: "six.4",
        text: "z→(x∧y) = (z→x)∧(z→y)",
        vars: XYZ,
        holds: |o, v| o.arrow(v[2], o.meet(v[0], v[1])) == o.meet(o.arrow(v[2], v[0]), o.arrow(v[2], v[1])),
    },
    Law {
        id: "six.5",
        text: "e→((e→x)·(e→y)) = (e→x)·(e→y)",
        vars: XY,
        holds: |o, v| {
            let p = o.prod(o.boxed(v[0]), o.boxed(v[1]));
            o.boxed(p) == p
        },
    },
    Law {
        id: "six.6",
        text: "e→y <= x→(x·(e→y))",
        vars: XY,
        holds: |o, v| {
            let by = o.boxed(v[1]);
            le(o, by, o.arrow(v[0], o.prod(v[0], by)))
        },
    },
];

/// The eight-identity basis, in order.
pub const COROLLARY_BASIS: [Law; 8] = [
    Law {
        id: "eight.1",
        text: "z→(x∧y) = (z→x)∧(z→y)",
        vars: XYZ,
        holds: |o, v| o.arrow(v[2], o.meet(v[0], v[1])) == o.meet(o.arrow(v[2], v[0]), o.arrow(v[2], v[1])),
    },
    Law {
        id: "eight.2",
        text: "(x∨y)→z = (x→z)∧(y→z)",
        vars: XYZ,
        holds: |o, v| o.arrow(o.join(v[0], v[1]), v[2]) == o.meet(o.arrow(v[0], v[2]), o.arrow(v[1], v[2])),
    },
    Law {
        id: "eight.3",
        text: "(x→y)·(y→z) <= x→z",
        vars: XYZ,
        holds: |o, v| le(o, o.prod(o.arrow(v[0], v[1]), o.arrow(v[1], v[2])), o.arrow(v[0], v[2])),
    },
    Law { id: "eight.4", text: "e <= x→x", vars: &["x"], holds: |o, v| le(o, o.unit(), o.arrow(v[0], v[0])) },
    Law {
        id: "eight.5", text: "x·(x→y) <= y", vars: XY, holds: |o, v| le(o, o.prod(v[0], o.arrow(v[0], v[1])), v[1])
    },
    Law {
        id: "eight.6",
        text: "x→y <= (z∧e)→(x→y)",
        vars: XYZ,
        holds: |o, v| {
            let xy = o.arrow(v[0], v[1]);
            le(o, xy, o.arrow(o.meet(v[2], o.unit()), xy))
        },
    },
    Law {
        id: "eight.7",
        text: "□(□x·□y) = □x·□y",
        vars: XY,
        holds: |o, v| {
            let p = o.prod(o.boxed(v[0]), o.boxed(v[1]));
            o.boxed(p) == p
        },
    },
    Law {
        id: "eight.8",
        text: "□y <= x→(x·□y)",
        vars: XY,
        holds: |o, v| {
            let by = o.boxed(v[1]);
            le(o, by, o.arrow(v[0], o.prod(v[0], by)))
        },
    },
];

/// Arithmetic laws valid in every srl-monoid.
pub const ARITHMETIC_LAWS: [Law; 7] = [
    Law {
        id: "arith.1",
        text: "(a∨b)→c = (a→c)∧(b→c)",
        vars: ABC,
        holds: |o, v| o.arrow(o.join(v[0], v[1]), v[2]) == o.meet(o.arrow(v[0], v[2]), o.arrow(v[1], v[2])),
    },
    Law {
        id: "arith.2",
        text: "(a→b)·(b→c) <= a→c",
        vars: ABC,
        holds: |o, v| le(o, o.prod(o.arrow(v[0], v[1]), o.arrow(v[1], v[2])), o.arrow(v[0], v[2])),
    },
    Law { id: "arith.3", text: "e <= a→a", vars: &["a"], holds: |o, v| le(o, o.unit(), o.arrow(v[0], v[0])) },
    Law {
        id: "arith.4",
        text: "a <= b iff e <= a→b",
        vars: AB,
        holds: |o, v| le(o, v[0], v[1]) == le(o, o.unit(), o.arrow(v[0], v[1])),
    },
    Law { id: "arith.5", text: "e→a <= a", vars: &["a"], holds: |o, v| le(o, o.boxed(v[0]), v[0]) },
    Law {
        id: "arith.6",
        text: "e→(a→b) = a→b",
        vars: AB,
        holds: |o, v| {
            let ab = o.arrow(v[0], v[1]);
            o.boxed(ab) == ab
        },
    },
    Law {
        id: "arith.7",
        text: "e→a <= b→(a·b)",
        vars: AB,
        holds: |o, v| le(o, o.boxed(v[0]), o.arrow(v[1], o.prod(v[0], v[1]))),
    },
];

fn basis_report<O: Operations>(title: &str, ops: &O, laws: &[Law]) -> Report {
    let mut r = Report::new(title, ops.names());
    let lmonoid = verify_lmonoid(ops.lattice(), &prod_table(ops), ops.unit());
    r.push(match lmonoid {
        Ok(()) => Check::pass("l-monoid"),
        Err(v) => Check::fail("l-monoid").with_detail(format!("{} fails at {:?}", v.law, v.witness)),
    });
    for law in laws {
        r.push(law.check(ops));
    }
    r
}

fn prod_table<O: MonoidOps>(ops: &O) -> crate::carrier::Table {
    crate::carrier::Table::from_fn(ops.size(), |a, b| ops.prod(a, b))
}

/// Commutative l-monoid laws plus the six-identity basis, each quantified
/// exhaustively. The overall verdict is "is an srl-monoid".
pub fn verify_six_identity_basis<O: Operations>(ops: &O) -> Report {
    basis_report("six-identity basis", ops, &THEOREM1_BASIS)
}

/// Commutative l-monoid laws plus the eight-identity basis.
pub fn verify_eight_identity_basis<O: Operations>(ops: &O) -> Report {
    basis_report("eight-identity basis", ops, &COROLLARY_BASIS)
}

/// First failing identity (numbered 1 to 6) of the six-identity basis.
pub(crate) fn first_basis_violation(ops: &dyn Operations) -> Option<(u8, Vec<Elem>)> {
    THEOREM1_BASIS.iter().enumerate().find_map(|(i, law)| law.first_violation(ops).map(|w| (i as u8 + 1, w)))
}

/// The seven arithmetic laws; all must hold in a valid srl-monoid.
pub fn arithmetic_law_suite(s: &SrlMonoid) -> Report {
    let mut r = Report::new("arithmetic laws", s.names());
    for law in &ARITHMETIC_LAWS {
        r.push(law.check(s));
    }
    r
}

/// Both weak residuation implications, and the characterization of full
/// residuation: `a·b <= c ⟹ a <= b→c` holds for all triples iff `Q = A`.
pub fn weak_residuation_suite(s: &SrlMonoid) -> Report {
    let mut r = Report::new("weak residuation", s.names());
    let n = s.size();
    let w1 = first_failure(n, 3, |v| !s.leq(v[0], s.arrow(v[1], v[2])) || s.leq(s.prod(v[0], v[1]), v[2]));
    r.push(Check::from_witness("a<=b→c implies a·b<=c", ABC, w1));
    let w2 = first_failure(n, 3, |v| !s.leq(s.prod(v[0], v[1]), v[2]) || s.leq(s.boxed(v[0]), s.arrow(v[1], v[2])));
    r.push(Check::from_witness("a·b<=c implies □a<=b→c", ABC, w2));

    let converse = first_failure(n, 3, |v| !s.leq(s.prod(v[0], v[1]), v[2]) || s.leq(v[0], s.arrow(v[1], v[2])));
    let crl = s.classify().crl;
    let mut info = Check::info(
        "converse a·b<=c implies a<=b→c",
        if converse.is_none() { "holds for all triples" } else { "fails" },
    );
    if let Some(w) = &converse {
        info = info.with_witness(&[("a", w[0]), ("b", w[1]), ("c", w[2])]);
    }
    r.push(info);
    r.push(Check::verdict("converse holds iff Q = A", converse.is_none() == crl).with_detail(format!("crl={crl}")));
    r
}

/// Products of boxed elements are fixed by `□` and satisfy the
/// `□(a1)···□(ak) <= a→(a·□(a1)···□(ak))` bound, for all tuples up to `k_max`.
pub fn boxed_product_suite(s: &SrlMonoid, k_max: usize) -> Report {
    let mut r = Report::new("boxed products", s.names());
    let n = s.size();
    for k in 1..=k_max {
        let product = |v: &[Elem]| v.iter().fold(s.unit(), |acc, &a| s.prod(acc, s.boxed(a)));
        let fixed = first_failure(n, k, |v| {
            let p = product(v);
            s.boxed(p) == p
        });
        r.push(Check::verdict(format!("□ fixes boxed products, k={k}"), fixed.is_none()));
        let bound = first_failure(n, k + 1, |v| {
            let p = product(&v[1..]);
            s.leq(p, s.arrow(v[0], s.prod(v[0], p)))
        });
        r.push(Check::verdict(format!("boxed product bound, k={k}"), bound.is_none()));
    }
    r
}

/// For `a <= e`: `a^m` and `□^n(a^m)` are antitone in `n` and in `m`,
/// checked for all exponents up to `bound`.
pub fn monotone_stabilization_suite(s: &SrlMonoid, bound: usize) -> Report {
    let mut r = Report::new("monotone stabilization", s.names());
    let mut pow_ok = true;
    let mut box_ok = true;
    for a in s.negative_cone().iter() {
        for m in 0..bound {
            pow_ok &= s.leq(s.pow(a, m + 1), s.pow(a, m));
            for n in 0..bound {
                let here = s.box_pow(s.pow(a, m), n);
                box_ok &= s.leq(s.box_pow(s.pow(a, m), n + 1), here);
                box_ok &= s.leq(s.box_pow(s.pow(a, m + 1), n), here);
            }
        }
    }
    r.push(Check::verdict("a^m antitone in m", pow_ok));
    r.push(Check::verdict("□^n(a^m) antitone in n and m", box_ok));
    r
}

/// Re-residuating from the extracted `Q` reproduces the arrow table.
pub fn round_trip_check(s: &SrlMonoid) -> Check {
    let ok = SrlMonoid::residuate_from_q(s.monoid().clone(), s.q_set())
        .map(|t| t.arrow_table() == s.arrow_table())
        .unwrap_or(false);
    Check::verdict("residuate(Q(A)) reproduces →", ok)
}
