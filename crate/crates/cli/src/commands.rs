//! One function per subcommand. Each returns the text to print; failures
//! carry their own output.

use std::cmp::Reverse;
use std::fmt::Write as _;
use std::path::PathBuf;

use srlab::basis::{verify_eight_identity_basis, verify_six_identity_basis};
use srlab::catalog::{build_entries, load_catalog, write_catalog, CatalogEntry};
use srlab::congruence::{
    all_congruences, class_of_e, principal_congruence_bruteforce, s_term_membership_suite, verify_order_iso,
};
use srlab::enumerate::{admissible_q, enumerate_srl_monoids, DEFAULT_MAX_SIZE};
use srlab::format::{self, Declared};
use srlab::generation::{
    generated_scs, generated_scs_oracle, principal_congruence_check, principal_e_class_check, principal_scs,
};
use srlab::identities::check_identity;
use srlab::subalgebra::all_strongly_convex;
use srlab::suite::{algebra_suite, basis_sweep_report, catalog_suite};
use srlab::{verify_lmonoid, Candidate, Check, IdentityId, Mode, MonoidOps, Operations, Report, SrlMonoid, Status};

use crate::target::{self, Target};
use crate::{Failure, Options, OutputFormat};

/// Built-in algebras exercised by `suite full` and listed by `examples`.
const SHOWCASE: [&str; 5] = ["trivial", "ex2", "ex3", "diamond", "luk5-3"];

fn render(opts: &Options, subject: &str, report: &Report) -> String {
    match opts.format {
        OutputFormat::Text => report.render_text(),
        OutputFormat::Tsv => report.render_tsv(subject),
    }
}

fn verdict(out: String, passed: bool) -> Result<String, Failure> {
    if passed {
        Ok(out)
    } else {
        Err(Failure::Math(out))
    }
}

fn describe(s: &SrlMonoid) -> String {
    let c = s.classify();
    let flags: Vec<&str> = [
        (c.integral, "integral"),
        (c.crl, "crl"),
        (c.sr_lattice, "sr-lattice"),
        (c.bounded, "bounded"),
        (c.chain, "chain"),
    ]
    .iter()
    .filter(|(on, _)| *on)
    .map(|&(_, label)| label)
    .collect();
    format!(
        "elements: {}\nunit: {}\nQ: {}\nclass: {}\n",
        s.names().join(" "),
        s.names()[s.unit()],
        s.q_set().render(s.names()),
        if flags.is_empty() { "-".to_string() } else { flags.join(" ") }
    )
}

fn basis_reports(s: &impl Operations) -> Vec<Report> {
    vec![verify_six_identity_basis(s), verify_eight_identity_basis(s)]
}

pub fn check(opts: &Options, arg: &str) -> Result<String, Failure> {
    let target = target::load(arg)?;
    let name = target.name().to_string();
    let mut header = format!("algebra {name}\n");
    let mut reports = Vec::new();
    match target {
        Target::Builtin { algebra, .. } => {
            header.push_str(&describe(&algebra));
            reports.extend(basis_reports(&algebra));
        }
        Target::File(doc) => {
            let names = doc.lattice.names().to_vec();
            let mut laws = Report::new("commutative l-monoid laws", &names);
            match verify_lmonoid(&doc.lattice, &doc.prod, doc.unit) {
                Ok(()) => laws.push(Check::pass("l-monoid laws")),
                Err(v) => {
                    let vars = ["x", "y", "z"];
                    let bindings: Vec<(&str, usize)> = vars.iter().copied().zip(v.witness.iter().copied()).collect();
                    laws.push(Check::fail("l-monoid laws").with_witness(&bindings).with_detail(v.law.to_string()));
                }
            }
            let monoid_ok = laws.passed();
            reports.push(laws);
            if monoid_ok {
                let m = target::monoid_of(&doc)?;
                let mut residuation = Report::new("arrow", &names);
                match doc.declared {
                    Declared::Nothing => {
                        residuation
                            .push(Check::info("arrow", "no `arrow` or `Q` given; only the l-monoid was checked"));
                        reports.push(residuation);
                    }
                    Declared::Q(q) => match SrlMonoid::residuate_from_q(m, q) {
                        Ok(s) => {
                            residuation.push(Check::pass("Q is a subalgebra and residuates"));
                            reports.push(residuation);
                            header.push_str(&describe(&s));
                            reports.extend(basis_reports(&s));
                        }
                        Err(e) => {
                            residuation
                                .push(Check::fail("Q is a subalgebra and residuates").with_detail(e.to_string()));
                            reports.push(residuation);
                        }
                    },
                    Declared::Arrow(arrow) => {
                        let candidate = Candidate::new(doc.lattice.clone(), doc.prod.clone(), doc.unit, arrow.clone())?;
                        let bases = basis_reports(&candidate);
                        if bases.iter().all(Report::passed) {
                            header.push_str(&describe(&SrlMonoid::from_arrow(m, arrow)?));
                        }
                        reports.extend(bases);
                    }
                }
            }
        }
    }
    let passed = reports.iter().all(Report::passed);
    let mut out = if opts.format == OutputFormat::Text { header } else { String::new() };
    for r in &reports {
        out.push_str(&render(opts, &name, r));
    }
    verdict(out, passed)
}

pub fn residuate(_opts: &Options, arg: &str, q: Option<&[String]>) -> Result<String, Failure> {
    let (name, m, declared_q) = match target::load(arg)? {
        Target::Builtin { name, algebra } => {
            let q = algebra.q_set();
            (name, algebra.monoid().clone(), Some(q))
        }
        Target::File(doc) => {
            let m = target::monoid_of(&doc)?;
            let q = match &doc.declared {
                Declared::Nothing => None,
                Declared::Q(q) => Some(*q),
                Declared::Arrow(t) => Some(SrlMonoid::from_arrow(m.clone(), t.clone())?.q_set()),
            };
            (doc.name, m, q)
        }
    };
    let q = match q {
        Some(tokens) => target::element_set(m.names(), tokens)?,
        None => match declared_q {
            Some(q) => q,
            None => {
                let mut out = format!("{name}: no Q given; admissible choices:\n");
                for q in admissible_q(&m) {
                    let _ = writeln!(out, "  {}", q.render(m.names()));
                }
                return Ok(out);
            }
        },
    };
    match SrlMonoid::residuate_from_q(m.clone(), q) {
        Ok(s) => Ok(format::emit_algebra(&name, &s)),
        Err(e) => Err(Failure::Math(format!("FAIL  Q = {}: {e}\n", q.render(m.names())))),
    }
}

pub fn congruences(opts: &Options, arg: &str) -> Result<String, Failure> {
    let (name, s) = target::algebra(arg)?;
    let names = s.names();
    let mut cons = all_congruences(&s)?;
    cons.sort_by_key(|t| (Reverse(t.block_count()), t.clone()));
    let scs = all_strongly_convex(&s)?;
    let mut out = String::new();
    match opts.format {
        OutputFormat::Text => {
            let _ = writeln!(out, "congruences of {name}: {}", cons.len());
            for t in &cons {
                let class = class_of_e(&s, t, opts.mode)?;
                let _ = writeln!(out, "  {:<28} e-class {}", t.render(names), class.render(names));
            }
            let _ = writeln!(out, "strongly convex subalgebras of {name}: {}", scs.len());
            for h in &scs {
                let mut tags = Vec::new();
                if h.flags.is_filter == Some(true) {
                    tags.push("filter");
                }
                if h.flags.is_box_filter == Some(true) {
                    tags.push("box-filter");
                }
                let _ = writeln!(out, "{}", format!("  {:<28} {}", h.render(names), tags.join(" ")).trim_end());
            }
        }
        OutputFormat::Tsv => {
            for t in &cons {
                let class = class_of_e(&s, t, opts.mode)?;
                let _ = writeln!(out, "{name}\tcongruence\t{}\t{}", t.render(names), class.render(names));
            }
            for h in &scs {
                let _ = writeln!(out, "{name}\tscs\t{}", h.render(names));
            }
        }
    }
    let reports = [verify_order_iso(&s)?, s_term_membership_suite(&s)?];
    for r in &reports {
        out.push_str(&render(opts, &name, r));
    }
    verdict(out, reports.iter().all(Report::passed))
}

pub fn convex(opts: &Options, arg: &str, generators: Option<&[String]>) -> Result<String, Failure> {
    let (name, s) = target::algebra(arg)?;
    let names = s.names();
    let mut out = String::new();
    let Some(tokens) = generators else {
        let all = all_strongly_convex(&s)?;
        if opts.format == OutputFormat::Text {
            let _ = writeln!(out, "strongly convex subalgebras of {name}: {}", all.len());
        }
        for h in &all {
            let generator = if opts.witnesses {
                let neg = s.negative_cone();
                let mut found = None;
                for a in neg.iter() {
                    if principal_scs(&s, a)?.members() == h.members {
                        found = Some(a);
                        break;
                    }
                }
                found.map(|a| names[a].clone())
            } else {
                None
            };
            match (opts.format, generator) {
                (OutputFormat::Text, Some(a)) => {
                    let _ = writeln!(out, "  {:<28} = C[{a}]", h.render(names));
                }
                (OutputFormat::Text, None) => {
                    let _ = writeln!(out, "  {}", h.render(names));
                }
                (OutputFormat::Tsv, a) => {
                    let _ = writeln!(out, "{name}\tscs\t{}\t{}", h.render(names), a.unwrap_or_default());
                }
            }
        }
        return Ok(out);
    };
    let gen = target::element_set(names, tokens)?;
    let g = generated_scs(&s, gen)?;
    if opts.mode == Mode::Verify {
        let oracle = generated_scs_oracle(&s, gen)?;
        if oracle.members != g.members() {
            return Err(Failure::Math(format!(
                "FAIL  C[{}]: formula gives {}, intersection of all containing subalgebras gives {}\n",
                gen.render(names),
                g.members().render(names),
                oracle.members.render(names)
            )));
        }
    }
    match opts.format {
        OutputFormat::Text => {
            let _ = writeln!(out, "C[{}] = {}", gen.render(names), g.members().render(names));
            out.push_str(&g.render_witnesses(names));
        }
        OutputFormat::Tsv => {
            let _ = writeln!(out, "{name}\tgenerated\t{}\t{}", gen.render(names), g.members().render(names));
            for (x, w) in &g.witnesses {
                let _ = writeln!(out, "{name}\twitness\t{}\t{}\t{}\t{}", names[*x], names[w.h], w.n, w.m);
            }
        }
    }
    Ok(out)
}

pub fn principal(opts: &Options, arg: &str, a: &str, b: &str) -> Result<String, Failure> {
    let (name, s) = target::algebra(arg)?;
    let names = s.names();
    let (a, b) = (target::element(names, a)?, target::element(names, b)?);
    let t = s.s_term(a, b);
    let theta = principal_congruence_bruteforce(&s, a, b);
    let mut out = String::new();
    let pair = format!("{},{}", names[a], names[b]);
    match opts.format {
        OutputFormat::Text => {
            let _ = writeln!(out, "s({pair}) = {}", names[t]);
            let _ = writeln!(out, "θ({pair}) = {}", theta.render(names));
            let _ = writeln!(out, "e/θ({pair}) = {}", theta.block_of(s.unit()).render(names));
        }
        OutputFormat::Tsv => {
            let _ = writeln!(out, "{name}\ts\t{pair}\t{}", names[t]);
            let _ = writeln!(out, "{name}\tcongruence\t{pair}\t{}", theta.render(names));
        }
    }
    if opts.witnesses {
        let cap = s.size();
        for x in 0..s.size() {
            for y in x + 1..s.size() {
                if !theta.related(x, y) {
                    continue;
                }
                let target = s.s_term(x, y);
                let exps = (0..=cap)
                    .flat_map(|n| (0..=cap).map(move |m| (n, m)))
                    .find(|&(n, m)| s.leq(s.box_pow(s.pow(t, n), m), target));
                let shown = match exps {
                    Some((n, m)) => format!("n={n}, m={m}"),
                    None => "no exponents within bound".to_string(),
                };
                match opts.format {
                    OutputFormat::Text => {
                        let _ = writeln!(out, "  ({},{}) via {shown}", names[x], names[y]);
                    }
                    OutputFormat::Tsv => {
                        let _ = writeln!(out, "{name}\twitness\t{},{}\t{shown}", names[x], names[y]);
                    }
                }
            }
        }
    }
    let mut r = Report::new(format!("principal congruence of ({pair})"), names);
    r.push(principal_congruence_check(&s, a, b)?);
    r.push(principal_e_class_check(&s, a, b)?);
    out.push_str(&render(opts, &name, &r));
    verdict(out, r.passed())
}

pub fn identity(opts: &Options, arg: &str, ids: &[String]) -> Result<String, Failure> {
    let (name, s) = target::algebra(arg)?;
    let ids: Vec<IdentityId> = if ids.is_empty() {
        IdentityId::ALL.to_vec()
    } else {
        ids.iter()
            .map(|t| IdentityId::parse(t.trim()).ok_or_else(|| Failure::Input(format!("unknown identity `{t}`"))))
            .collect::<Result<_, _>>()?
    };
    let mut r = Report::new(format!("identities in {name}"), s.names());
    for id in ids {
        let mut c = check_identity(&s, id);
        c.id = id.tag().to_string();
        r.push(c);
    }
    let out = render(opts, &name, &r);
    verdict(out, r.passed())
}

fn catalog_dir(opts: &Options) -> PathBuf {
    opts.catalog.clone().unwrap_or_else(|| PathBuf::from("catalog"))
}

pub fn enumerate(opts: &Options) -> Result<String, Failure> {
    let max = opts.max_size.unwrap_or(DEFAULT_MAX_SIZE);
    let entries = build_entries(enumerate_srl_monoids(max, opts.mode)?)?;
    let dir = catalog_dir(opts);
    write_catalog(&dir, &entries).map_err(|e| Failure::Input(e.to_string()))?;
    let mut out = String::new();
    match opts.format {
        OutputFormat::Text => {
            for n in 1..=max {
                let count = entries.iter().filter(|e| e.algebra.size() == n).count();
                let _ = writeln!(out, "size {n}: {count}");
            }
            let _ = writeln!(out, "wrote {} algebras to {}", entries.len(), dir.display());
        }
        OutputFormat::Tsv => {
            let _ = writeln!(out, "{}", srlab::catalog::INDEX_HEADER);
            for e in &entries {
                let _ = writeln!(out, "{}", e.index_row());
            }
        }
    }
    Ok(out)
}

pub fn examples(opts: &Options, name: Option<&str>) -> Result<String, Failure> {
    if let Some(name) = name {
        let s = target::builtin(name).ok_or_else(|| Failure::Input(format!("unknown example `{name}`")))?;
        return Ok(format::emit_algebra_with_q(name, &s));
    }
    let mut out = String::new();
    for name in SHOWCASE {
        let s = target::builtin(name).expect("showcase examples exist");
        match opts.format {
            OutputFormat::Text => {
                let _ = writeln!(out, "{name:<10} size {}  Q = {}", s.size(), s.q_set().render(s.names()));
            }
            OutputFormat::Tsv => {
                let _ = writeln!(out, "{name}\t{}\t{}", s.size(), s.q_set().render(s.names()));
            }
        }
    }
    if opts.format == OutputFormat::Text {
        out.push_str("also luk<m>-<n>: the m-element Łukasiewicz chain relative to its n-element subchain\n");
    }
    Ok(out)
}

fn summary(opts: &Options, r: &Report) -> String {
    if opts.format == OutputFormat::Tsv {
        return r.render_tsv(&r.title);
    }
    let count = |st: Status| r.checks.iter().filter(|c| c.status == st).count();
    let mut out = format!(
        "{}: {} checks, {} passed, {} failed, {} informational\n",
        r.title,
        r.checks.len(),
        count(Status::Pass),
        count(Status::Fail),
        count(Status::Info)
    );
    for c in r.failures() {
        let _ = writeln!(out, "  FAIL  {}  {}", c.id, c.detail.as_deref().unwrap_or(""));
    }
    out
}

fn suite_catalog(opts: &Options) -> Result<Vec<CatalogEntry>, Failure> {
    let max = opts.max_size.unwrap_or(DEFAULT_MAX_SIZE);
    match &opts.catalog {
        Some(dir) => {
            let all = load_catalog(dir).map_err(|e| Failure::Input(e.to_string()))?;
            Ok(all.into_iter().filter(|e| e.algebra.size() <= max).collect())
        }
        None => Ok(build_entries(enumerate_srl_monoids(max, opts.mode)?)?),
    }
}

pub fn suite_full(opts: &Options) -> Result<String, Failure> {
    let mut builtins = Report::new("built-in algebras", &[]);
    for name in SHOWCASE {
        let s = target::builtin(name).expect("showcase examples exist");
        builtins.absorb(name, algebra_suite(&s)?);
    }
    let sweep = basis_sweep_report(opts.max_size.unwrap_or(3).min(3));
    let entries = suite_catalog(opts)?;
    let mut catalog = catalog_suite(&entries)?;
    catalog.title = format!("catalog ({} algebras)", entries.len());
    let reports = [builtins, sweep, catalog];
    let passed = reports.iter().all(Report::passed);
    let mut out = String::new();
    for r in &reports {
        out.push_str(&summary(opts, r));
    }
    if opts.format == OutputFormat::Text {
        let _ = writeln!(out, "suite full: {}", if passed { "PASS" } else { "FAIL" });
    }
    verdict(out, passed)
}
