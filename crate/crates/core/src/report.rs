//! Structured verification reports with deterministic text and TSV rendering.

use std::fmt::Write as _;

use crate::carrier::Elem;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail,
    /// An observation that does not affect the verdict.
    Info,
}

impl Status {
    pub fn from_bool(ok: bool) -> Status {
        if ok {
            Status::Pass
        } else {
            Status::Fail
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Info => "INFO",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub id: String,
    pub status: Status,
    /// Variable bindings that witness a failure (or illustrate an observation).
    pub witness: Vec<(String, Elem)>,
    pub detail: Option<String>,
}

impl Check {
    pub fn pass(id: impl Into<String>) -> Check {
        Check { id: id.into(), status: Status::Pass, witness: Vec::new(), detail: None }
    }

    pub fn fail(id: impl Into<String>) -> Check {
        Check { id: id.into(), status: Status::Fail, witness: Vec::new(), detail: None }
    }

    pub fn info(id: impl Into<String>, detail: impl Into<String>) -> Check {
        Check { id: id.into(), status: Status::Info, witness: Vec::new(), detail: Some(detail.into()) }
    }

    pub fn verdict(id: impl Into<String>, ok: bool) -> Check {
        Check { id: id.into(), status: Status::from_bool(ok), witness: Vec::new(), detail: None }
    }

    /// `Pass` when `witness` is `None`, otherwise `Fail` with bindings for `vars`.
    pub fn from_witness(id: impl Into<String>, vars: &[&str], witness: Option<Vec<Elem>>) -> Check {
        let mut c = Check::pass(id);
        if let Some(w) = witness {
            c.status = Status::Fail;
            c.witness = vars.iter().map(|v| v.to_string()).zip(w).collect();
        }
        c
    }

    pub fn with_detail(mut self, detail: impl Into<String>) -> Check {
        self.detail = Some(detail.into());
        self
    }

    pub fn with_witness(mut self, bindings: &[(&str, Elem)]) -> Check {
        self.witness = bindings.iter().map(|&(v, a)| (v.to_string(), a)).collect();
        self
    }

    pub fn passed(&self) -> bool {
        self.status != Status::Fail
    }

    fn render_witness(&self, names: &[String]) -> String {
        self.witness
            .iter()
            .map(|(v, a)| format!("{v}={}", names.get(*a).map(String::as_str).unwrap_or("?")))
            .collect::<Vec<_>>()
            .join(", ")
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Report {
    pub title: String,
    /// Element names of the algebra the report is about.
    pub names: Vec<String>,
    pub checks: Vec<Check>,
}

impl Report {
    pub fn new(title: impl Into<String>, names: &[String]) -> Report {
        Report { title: title.into(), names: names.to_vec(), checks: Vec::new() }
    }

    pub fn push(&mut self, check: Check) {
        self.checks.push(check);
    }

    pub fn extend(&mut self, other: Report) {
        self.checks.extend(other.checks);
    }

    /// Appends another algebra's checks under `subject: id`, with witnesses
    /// rendered by that algebra's names into the detail.
    pub fn absorb(&mut self, subject: &str, other: Report) {
        for mut c in other.checks {
            if !c.witness.is_empty() {
                let w = format!("({})", c.render_witness(&other.names));
                c.detail = Some(match c.detail {
                    Some(d) => format!("{w}  {d}"),
                    None => w,
                });
                c.witness.clear();
            }
            c.id = format!("{subject}: {}", c.id);
            self.checks.push(c);
        }
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(Check::passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed())
    }

    pub fn get(&self, id: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.id == id)
    }

    pub fn render_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "{} [{}]", self.title, if self.passed() { "PASS" } else { "FAIL" });
        for c in &self.checks {
            let _ = write!(out, "  {:<32} {}", c.id, c.status.label());
            if !c.witness.is_empty() {
                let _ = write!(out, "  ({})", c.render_witness(&self.names));
            }
            if let Some(d) = &c.detail {
                let _ = write!(out, "  {d}");
            }
            out.push('\n');
        }
        out
    }

    /// One row per check: subject, check id, verdict, witness, detail.
    pub fn render_tsv(&self, subject: &str) -> String {
        let mut out = String::new();
        for c in &self.checks {
            let _ = writeln!(
                out,
                "{subject}\t{}\t{}\t{}\t{}",
                c.id,
                c.status.label(),
                c.render_witness(&self.names),
                c.detail.as_deref().unwrap_or("")
            );
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rendering_is_stable() {
        let names: Vec<String> = ["0", "e", "1"].iter().map(|s| s.to_string()).collect();
        let mut r = Report::new("demo", &names);
        r.push(Check::pass("one"));
        r.push(Check::from_witness("two", &["x", "y"], Some(vec![2, 0])));
        r.push(Check::info("three", "observed"));
        assert!(!r.passed());
        assert_eq!(
            r.render_text(),
            "demo [FAIL]\n  one                              PASS\n  two                              FAIL  (x=1, y=0)\n  three                            INFO  observed\n"
        );
        assert_eq!(r.render_tsv("alg").lines().nth(1), Some("alg\ttwo\tFAIL\tx=1, y=0\t"));
    }
}
