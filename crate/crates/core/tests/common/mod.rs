//! Brute-force oracles that share no code with the library.

#![allow(dead_code)]

/// A fully tabulated structure on `0..n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Tables {
    pub n: usize,
    pub leq: Vec<Vec<bool>>,
    pub prod: Vec<Vec<usize>>,
    pub unit: usize,
    pub arrow: Vec<Vec<usize>>,
}

fn all_reflexive_relations(n: usize) -> Vec<Vec<Vec<bool>>> {
    let off: Vec<(usize, usize)> = (0..n).flat_map(|a| (0..n).filter(move |&b| b != a).map(move |b| (a, b))).collect();
    (0u32..1 << off.len())
        .map(|mask| {
            let mut r = vec![vec![false; n]; n];
            for (a, row) in r.iter_mut().enumerate() {
                row[a] = true;
            }
            for (k, &(a, b)) in off.iter().enumerate() {
                r[a][b] = mask >> k & 1 == 1;
            }
            r
        })
        .collect()
}

fn is_partial_order(r: &[Vec<bool>]) -> bool {
    let n = r.len();
    (0..n)
        .all(|a| (0..n).all(|b| (a == b || !(r[a][b] && r[b][a])) && (0..n).all(|c| !(r[a][b] && r[b][c]) || r[a][c])))
}

/// Least upper bound of `a, b`, if there is one.
fn sup(r: &[Vec<bool>], a: usize, b: usize) -> Option<usize> {
    let n = r.len();
    let ub: Vec<usize> = (0..n).filter(|&c| r[a][c] && r[b][c]).collect();
    ub.iter().copied().find(|&c| ub.iter().all(|&d| r[c][d]))
}

fn inf(r: &[Vec<bool>], a: usize, b: usize) -> Option<usize> {
    let n = r.len();
    let lb: Vec<usize> = (0..n).filter(|&c| r[c][a] && r[c][b]).collect();
    lb.iter().copied().find(|&c| lb.iter().all(|&d| r[d][c]))
}

/// Every lattice order on `0..n`, labeled.
pub fn labeled_lattices(n: usize) -> Vec<Vec<Vec<bool>>> {
    all_reflexive_relations(n)
        .into_iter()
        .filter(|r| is_partial_order(r))
        .filter(|r| (0..n).all(|a| (0..n).all(|b| sup(r, a, b).is_some() && inf(r, a, b).is_some())))
        .collect()
}

fn all_tables(n: usize) -> impl Iterator<Item = Vec<Vec<usize>>> {
    (0..n.pow((n * n) as u32)).map(move |mut code| {
        let mut t = vec![vec![0; n]; n];
        for row in t.iter_mut() {
            for cell in row.iter_mut() {
                *cell = code % n;
                code /= n;
            }
        }
        t
    })
}

fn is_commutative_lmonoid(r: &[Vec<bool>], p: &[Vec<usize>], unit: usize) -> bool {
    let n = r.len();
    let join = |a, b| sup(r, a, b).unwrap();
    (0..n).all(|a| p[unit][a] == a)
        && (0..n).all(|a| (0..n).all(|b| p[a][b] == p[b][a]))
        && (0..n).all(|a| (0..n).all(|b| (0..n).all(|c| p[p[a][b]][c] == p[a][p[b][c]])))
        && (0..n).all(|a| (0..n).all(|b| (0..n).all(|c| p[a][join(b, c)] == join(p[a][b], p[a][c]))))
}

/// `a→b = max { q ∈ Q : a·q <= b }` for all pairs, when every maximum exists.
fn residuate(r: &[Vec<bool>], p: &[Vec<usize>], q: &[usize]) -> Option<Vec<Vec<usize>>> {
    let n = r.len();
    let mut arrow = vec![vec![0; n]; n];
    for a in 0..n {
        for b in 0..n {
            let cands: Vec<usize> = q.iter().copied().filter(|&x| r[p[a][x]][b]).collect();
            arrow[a][b] = cands.iter().copied().find(|&c| cands.iter().all(|&d| r[d][c]))?;
        }
    }
    Some(arrow)
}

fn is_subalgebra_of_reduct(r: &[Vec<bool>], p: &[Vec<usize>], unit: usize, q: &[usize]) -> bool {
    q.contains(&unit)
        && q.iter().all(|&a| {
            q.iter().all(|&b| {
                q.contains(&sup(r, a, b).unwrap()) && q.contains(&inf(r, a, b).unwrap()) && q.contains(&p[a][b])
            })
        })
}

/// Every srl-monoid on `0..n`, labeled, straight from the definition.
pub fn labeled_srl_monoids(n: usize) -> Vec<Tables> {
    let mut out = Vec::new();
    for leq in labeled_lattices(n) {
        for prod in all_tables(n) {
            for unit in 0..n {
                if !is_commutative_lmonoid(&leq, &prod, unit) {
                    continue;
                }
                for mask in 0u32..1 << n {
                    let q: Vec<usize> = (0..n).filter(|&i| mask >> i & 1 == 1).collect();
                    if !is_subalgebra_of_reduct(&leq, &prod, unit, &q) {
                        continue;
                    }
                    if let Some(arrow) = residuate(&leq, &prod, &q) {
                        out.push(Tables { n, leq: leq.clone(), prod: prod.clone(), unit, arrow });
                    }
                }
            }
        }
    }
    out
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for i in 0..n {
            let mut q = p.clone();
            q.insert(i, n - 1);
            out.push(q);
        }
    }
    out
}

/// Whether `perm` (old index to new) maps `a` onto `b`.
fn maps_onto(a: &Tables, b: &Tables, perm: &[usize]) -> bool {
    let n = a.n;
    perm[a.unit] == b.unit
        && (0..n).all(|x| {
            (0..n).all(|y| {
                a.leq[x][y] == b.leq[perm[x]][perm[y]]
                    && perm[a.prod[x][y]] == b.prod[perm[x]][perm[y]]
                    && perm[a.arrow[x][y]] == b.arrow[perm[x]][perm[y]]
            })
        })
}

/// Number of isomorphism classes among `algebras`, by pairwise search over
/// every permutation.
pub fn isomorphism_classes(algebras: &[Tables]) -> usize {
    let mut reps: Vec<&Tables> = Vec::new();
    for a in algebras {
        let perms = permutations(a.n);
        if !reps.iter().any(|r| r.n == a.n && perms.iter().any(|p| maps_onto(a, r, p))) {
            reps.push(a);
        }
    }
    reps.len()
}
