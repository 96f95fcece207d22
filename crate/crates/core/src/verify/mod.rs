//! Executable checks of the reduction theorem, its lemmas, the bound on
//! Hall classes of simple groups, both worked examples and the conjecture.
//!
//! Every check yields a [`CheckResult`]; reports print one `key=value` line
//! per result followed by a summary table.

mod checks;
mod examples;
mod lemmas;
mod suites;

use std::collections::BTreeMap;
use std::fmt::{self, Write as _};
use std::sync::Arc;
use std::time::Duration;

use num_bigint::BigUint;
use sha2::{Digest, Sha256};

use crate::error::Error;
use crate::group::Group;
use crate::perm::Permutation;
use crate::subgroup::Transporter;

pub use checks::{
    check_corollary1, check_theorem1, check_theorem1_on, check_theorem2, conjecture_search, normal_candidates,
    NamedSubgroup,
};
pub use examples::{run_example, run_example_with};
pub use lemmas::{check_lemma, lemma_instances, LemmaId, LemmaInstance};
pub use suites::{run_suite, sweep, Suite, SuiteOptions};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Verdict {
    Pass,
    Fail,
    Indeterminate,
    SkippedPrecondition,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Pass => "pass",
            Verdict::Fail => "fail",
            Verdict::Indeterminate => "indeterminate",
            Verdict::SkippedPrecondition => "skipped",
        })
    }
}

/// Evidence attached to a result.
#[derive(Clone, Debug)]
pub enum Witness {
    /// A conjugating element, with the two subgroups it relates.
    Transporter { label: String, transporter: Transporter },
    /// A subgroup by generators, with its claimed order.
    Subgroup {
        label: String,
        degree: usize,
        generators: Vec<Permutation>,
        order: BigUint,
    },
    /// A computed quantity.
    Value { label: String, value: String },
}

impl Witness {
    pub fn transporter(label: impl Into<String>, t: Transporter) -> Witness {
        Witness::Transporter {
            label: label.into(),
            transporter: t,
        }
    }

    pub fn subgroup(label: impl Into<String>, h: &Group) -> Witness {
        Witness::Subgroup {
            label: label.into(),
            degree: h.degree(),
            generators: h.generators().to_vec(),
            order: h.order().clone(),
        }
    }

    pub fn value(label: impl Into<String>, value: impl fmt::Display) -> Witness {
        Witness::Value {
            label: label.into(),
            value: value.to_string(),
        }
    }

    /// Concrete witnesses can be checked from scratch: transporters by
    /// conjugating generators and sifting, subgroups by rebuilding the
    /// stabilizer chain and comparing orders.
    pub fn is_concrete(&self) -> bool {
        !matches!(self, Witness::Value { .. })
    }

    pub fn reverify(&self) -> bool {
        match self {
            Witness::Transporter { transporter, .. } => transporter.verify(),
            Witness::Subgroup {
                degree,
                generators,
                order,
                ..
            } => Group::new(*degree, generators.clone()).is_ok_and(|g| g.order() == order),
            Witness::Value { .. } => true,
        }
    }
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let gens = |g: &[Permutation]| g.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",");
        match self {
            Witness::Transporter { label, transporter } => write!(
                f,
                "{label}: {} maps <{}> to <{}>",
                transporter.element,
                gens(transporter.source.generators()),
                gens(transporter.target.generators())
            ),
            Witness::Subgroup {
                label,
                generators,
                order,
                ..
            } => write!(f, "{label}: order {order} <{}>", gens(generators)),
            Witness::Value { label, value } => write!(f, "{label} = {value}"),
        }
    }
}

/// Outcome of one check on one instance.
#[derive(Clone, Debug)]
pub struct CheckResult {
    pub check_id: String,
    pub instance: String,
    pub verdict: Verdict,
    pub witnesses: Vec<Witness>,
    pub assumptions: Vec<String>,
    pub note: String,
    pub elapsed: Duration,
}

impl CheckResult {
    pub fn new(check_id: impl Into<String>, instance: impl Into<String>, verdict: Verdict) -> CheckResult {
        CheckResult {
            check_id: check_id.into(),
            instance: instance.into(),
            verdict,
            witnesses: Vec::new(),
            assumptions: Vec::new(),
            note: String::new(),
            elapsed: Duration::ZERO,
        }
    }

    /// Pass when `ok`, otherwise Fail. A Fail must carry a concrete witness,
    /// which the caller supplies through `with_witness`.
    pub fn verdict_of(check_id: impl Into<String>, instance: impl Into<String>, ok: bool) -> CheckResult {
        CheckResult::new(check_id, instance, if ok { Verdict::Pass } else { Verdict::Fail })
    }

    pub fn skipped(check_id: impl Into<String>, instance: impl Into<String>, why: impl Into<String>) -> CheckResult {
        CheckResult::new(check_id, instance, Verdict::SkippedPrecondition).with_note(why)
    }

    /// Indeterminate for budget or cap errors, Skipped for violated
    /// preconditions and Indeterminate with the message otherwise.
    pub fn from_error(check_id: impl Into<String>, instance: impl Into<String>, e: &Error) -> CheckResult {
        let verdict = match e {
            Error::Precondition(_) | Error::NotNormal | Error::NotInParent => Verdict::SkippedPrecondition,
            _ => Verdict::Indeterminate,
        };
        CheckResult::new(check_id, instance, verdict).with_note(e.to_string())
    }

    pub fn with_note(mut self, note: impl Into<String>) -> CheckResult {
        self.note = note.into();
        self
    }

    pub fn with_witness(mut self, w: Witness) -> CheckResult {
        self.witnesses.push(w);
        self
    }

    pub fn with_assumptions<'a>(mut self, a: impl IntoIterator<Item = &'a String>) -> CheckResult {
        for s in a {
            if !self.assumptions.contains(s) {
                self.assumptions.push(s.clone());
            }
        }
        self.assumptions.sort();
        self
    }

    pub fn is_conditional(&self) -> bool {
        !self.assumptions.is_empty()
    }

    /// Fails carry at least one concrete witness and every witness
    /// re-verifies.
    pub fn witnesses_hold(&self) -> bool {
        let concrete = self.verdict != Verdict::Fail || self.witnesses.iter().any(Witness::is_concrete);
        concrete && self.witnesses.iter().all(Witness::reverify)
    }

    /// First 16 hex digits of the SHA-256 of the witness texts.
    pub fn witness_digest(&self) -> String {
        let mut h = Sha256::new();
        for w in &self.witnesses {
            h.update(w.to_string().as_bytes());
            h.update(b"\n");
        }
        h.finalize().iter().take(8).map(|b| format!("{b:02x}")).collect()
    }

    /// One machine-format record. Elapsed time is left out so that equal
    /// seeds give equal bytes.
    pub fn machine_line(&self) -> String {
        let cites: Vec<&str> = self
            .assumptions
            .iter()
            .map(|a| a.split(':').next().unwrap_or(a).trim())
            .collect();
        format!(
            "check_id={} instance={} verdict={} witness_digest={} witnesses={} assumptions={} conditional={} note={}",
            escape(&self.check_id),
            escape(&self.instance),
            self.verdict,
            self.witness_digest(),
            self.witnesses.len(),
            if cites.is_empty() { "none".to_string() } else { escape(&cites.join(";")) },
            self.is_conditional(),
            escape(&self.note),
        )
    }

    pub fn text_line(&self) -> String {
        let mut s = format!(
            "{:<13} {:<28} {}",
            self.verdict.to_string().to_uppercase(),
            self.check_id,
            self.instance
        );
        if !self.note.is_empty() {
            let _ = write!(s, "  [{}]", self.note);
        }
        if self.is_conditional() {
            let _ = write!(s, "  (conditional: {})", self.assumptions.join("; "));
        }
        let _ = write!(s, "  {} ms", self.elapsed.as_millis());
        s
    }
}

/// Percent-escapes space, `%`, `=` and control characters so a value never
/// breaks the `key=value` layout.
pub(crate) fn escape(s: &str) -> String {
    let mut out = String::with_capacity(s.len());
    for c in s.chars() {
        match c {
            ' ' | '%' | '=' => {
                let _ = write!(out, "%{:02X}", c as u32);
            }
            c if c.is_control() => {
                let _ = write!(out, "%{:02X}", c as u32);
            }
            c => out.push(c),
        }
    }
    if out.is_empty() {
        out.push('-');
    }
    out
}

/// A list of results with rendering and aggregate verdicts.
#[derive(Clone, Debug, Default)]
pub struct Report {
    pub results: Vec<CheckResult>,
}

impl Report {
    pub fn new(mut results: Vec<CheckResult>) -> Report {
        results.sort_by(|a, b| a.check_id.cmp(&b.check_id).then_with(|| a.instance.cmp(&b.instance)));
        Report { results }
    }

    pub fn count(&self, verdict: Verdict) -> usize {
        self.results.iter().filter(|r| r.verdict == verdict).count()
    }

    /// Counts per check id, in check-id order: pass, fail, indeterminate, skipped.
    pub fn summary(&self) -> BTreeMap<String, [usize; 4]> {
        let mut m: BTreeMap<String, [usize; 4]> = BTreeMap::new();
        for r in &self.results {
            let e = m.entry(r.check_id.clone()).or_default();
            e[r.verdict as usize] += 1;
        }
        m
    }

    pub fn summary_table(&self) -> String {
        let mut s = format!("{:<28} {:>6} {:>6} {:>6} {:>8}\n", "check", "pass", "fail", "indet", "skipped");
        for (id, c) in self.summary() {
            let _ = writeln!(s, "{:<28} {:>6} {:>6} {:>6} {:>8}", id, c[0], c[1], c[2], c[3]);
        }
        let _ = writeln!(
            s,
            "{:<28} {:>6} {:>6} {:>6} {:>8}",
            "total",
            self.count(Verdict::Pass),
            self.count(Verdict::Fail),
            self.count(Verdict::Indeterminate),
            self.count(Verdict::SkippedPrecondition)
        );
        s
    }

    pub fn to_machine(&self) -> String {
        let mut s = String::new();
        for r in &self.results {
            s.push_str(&r.machine_line());
            s.push('\n');
        }
        for (id, c) in self.summary() {
            let _ = writeln!(
                s,
                "summary={} pass={} fail={} indeterminate={} skipped={}",
                escape(&id),
                c[0],
                c[1],
                c[2],
                c[3]
            );
        }
        s
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        for r in &self.results {
            s.push_str(&r.text_line());
            s.push('\n');
            if r.verdict == Verdict::Fail {
                for w in &r.witnesses {
                    let _ = writeln!(s, "    witness {w}");
                }
            }
        }
        s.push('\n');
        s.push_str(&self.summary_table());
        s
    }

    /// 1 on any Fail, 3 when nothing failed but something was left
    /// undecided and nothing passed, else 0.
    pub fn exit_code(&self) -> i32 {
        if self.count(Verdict::Fail) > 0 {
            1
        } else if self.count(Verdict::Indeterminate) > 0 && self.count(Verdict::Pass) == 0 {
            3
        } else {
            0
        }
    }
}

/// Deterministic per-instance seed.
pub(crate) fn instance_seed(seed: u64, instance: &str) -> u64 {
    use std::hash::{Hash, Hasher};
    let mut h = rustc_hash::FxHasher::default();
    instance.hash(&mut h);
    seed ^ h.finish()
}

pub(crate) fn arc(g: Group) -> Arc<Group> {
    Arc::new(g)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn machine_lines_escape() {
        let r = CheckResult::new("lemma.crit", "G=Sym(4) pi={2}", Verdict::Pass).with_note("k=1");
        let line = r.machine_line();
        assert!(line.contains("instance=G%3DSym(4)%20pi%3D{2}"));
        assert!(line.contains("note=k%3D1"));
        assert_eq!(line.split(' ').count(), 8);
        assert_eq!(r.witness_digest().len(), 16);
    }

    #[test]
    fn fail_needs_concrete_witness() {
        let r = CheckResult::verdict_of("x", "y", false).with_witness(Witness::value("k", 5));
        assert!(!r.witnesses_hold());
        let g = Group::new(3, vec![Permutation::from_cycles("(1 2 3)", 3).unwrap()]).unwrap();
        let r = r.with_witness(Witness::subgroup("H", &g));
        assert!(r.witnesses_hold());
        let bad = Witness::Subgroup {
            label: "H".into(),
            degree: 3,
            generators: g.generators().to_vec(),
            order: BigUint::from(6u32),
        };
        assert!(!bad.reverify());
    }

    #[test]
    fn exit_codes() {
        let pass = CheckResult::new("a", "1", Verdict::Pass);
        let ind = CheckResult::new("a", "2", Verdict::Indeterminate);
        let fail = CheckResult::new("a", "3", Verdict::Fail);
        assert_eq!(Report::new(vec![pass.clone(), ind.clone()]).exit_code(), 0);
        assert_eq!(Report::new(vec![ind.clone()]).exit_code(), 3);
        assert_eq!(Report::new(vec![pass, ind, fail]).exit_code(), 1);
    }
}
