use std::str::FromStr;
use std::sync::Arc;
use std::time::Instant;

use rayon::prelude::*;

use super::checks::{check_corollary1, check_theorem1, check_theorem2, conjecture_search, normal_candidates, NamedSubgroup};
use super::examples::run_example;
use super::lemmas::{check_lemma, lemma_instances, LemmaId, LemmaInstance};
use super::{arc, CheckResult, Report};
use crate::constructors::{catalog, direct_product, GroupSpec};
use crate::error::{Error, Result};
use crate::group::Group;
use crate::hall::{classify_properties_with, hall_classes, ClassifyOptions, HallMode, PrimeSet, Tri};
use crate::limits::Limits;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Suite {
    Example1,
    Example2,
    Theorem1,
    Theorem2,
    Lemmas,
    Conjecture,
}

impl Suite {
    pub const ALL: [Suite; 6] = [
        Suite::Example1,
        Suite::Example2,
        Suite::Theorem1,
        Suite::Theorem2,
        Suite::Lemmas,
        Suite::Conjecture,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Example1 => "example1",
            Suite::Example2 => "example2",
            Suite::Theorem1 => "theorem1",
            Suite::Theorem2 => "theorem2",
            Suite::Lemmas => "lemmas",
            Suite::Conjecture => "conjecture",
        }
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .find(|x| x.name() == s)
            .ok_or_else(|| Error::parse(0, format!("unknown suite `{s}`")))
    }
}

#[derive(Clone, Debug)]
pub struct SuiteOptions {
    /// Largest group order taken from the sweep catalog.
    pub max_order: u64,
    pub seed: u64,
    /// Worker threads; 0 uses the global pool.
    pub jobs: usize,
    /// Largest number of candidate subgroups the conjecture search examines.
    pub conjecture_budget: usize,
}

impl Default for SuiteOptions {
    fn default() -> Self {
        SuiteOptions {
            max_order: 2000,
            seed: 0,
            jobs: 0,
            conjecture_budget: 20_000,
        }
    }
}

fn with_pool<T: Send>(jobs: usize, f: impl FnOnce() -> T + Send) -> T {
    if jobs == 0 {
        return f();
    }
    match rayon::ThreadPoolBuilder::new().num_threads(jobs).build() {
        Ok(pool) => pool.install(f),
        Err(_) => f(),
    }
}

/// Catalog groups up to `max_order`, built, with their spec text as label.
pub(crate) fn catalog_groups(max_order: u64, limits: &Limits) -> Vec<(String, Arc<Group>)> {
    catalog::sweep_groups(max_order)
        .into_iter()
        .filter_map(|(spec, _)| Some((spec.to_string(), arc(spec.build_with(limits).ok()?))))
        .collect()
}

fn group_pi_pairs(groups: &[(String, Arc<Group>)], proper_only: bool) -> Vec<(String, Arc<Group>, PrimeSet)> {
    groups
        .iter()
        .flat_map(|(l, g)| {
            let all = PrimeSet::of(g.order());
            all.subsets()
                .into_iter()
                .filter(move |p| !proper_only || (!p.is_empty() && p != &all))
                .map(move |p| (l.clone(), g.clone(), p))
        })
        .collect()
}

fn timed<T>(f: impl FnOnce() -> T) -> (T, std::time::Duration) {
    let t = Instant::now();
    let v = f();
    (v, t.elapsed())
}

/// Runs a named suite.
pub fn run_suite(suite: Suite, opts: &SuiteOptions, limits: &Limits) -> Report {
    let results = with_pool(opts.jobs, || match suite {
        Suite::Example1 => run_example(1, limits, opts.seed),
        Suite::Example2 => run_example(2, limits, opts.seed),
        Suite::Theorem1 => theorem1_suite(opts, limits),
        Suite::Theorem2 => theorem2_suite(limits),
        Suite::Lemmas => lemma_suite(opts, limits),
        Suite::Conjecture => {
            let groups = catalog_groups(opts.max_order, limits);
            conjecture_search(&groups, opts.conjecture_budget, limits, opts.seed)
        }
    });
    Report::new(results)
}

fn theorem1_suite(opts: &SuiteOptions, limits: &Limits) -> Vec<CheckResult> {
    let groups = catalog_groups(opts.max_order, limits);
    group_pi_pairs(&groups, false)
        .par_iter()
        .flat_map_iter(|(label, g, pi)| {
            let (mut rs, dt) = timed(|| check_theorem1(g, label, pi, limits, opts.seed));
            if let Some(r) = rs.first_mut() {
                r.elapsed = dt;
            }
            let (normals, _) = normal_candidates(g, limits);
            for a in normals.iter().filter(|a| !a.group.is_trivial() && a.group.order() != g.order()) {
                let (r, dt) = timed(|| check_corollary1(g, label, a, pi, limits));
                if r.verdict != super::Verdict::SkippedPrecondition {
                    rs.push(CheckResult { elapsed: dt, ..r });
                }
            }
            rs
        })
        .collect()
}

fn theorem2_suite(limits: &Limits) -> Vec<CheckResult> {
    catalog::simple_groups()
        .par_iter()
        .flat_map_iter(|spec| {
            let label = spec_label(spec);
            match spec.build_with(limits) {
                Ok(g) => {
                    let (mut rs, dt) = timed(|| check_theorem2(&arc(g), &label, limits));
                    if let Some(r) = rs.first_mut() {
                        r.elapsed = dt;
                    }
                    rs
                }
                Err(e) => vec![CheckResult::from_error("theorem2", format!("S={label}"), &e)],
            }
        })
        .collect()
}

/// Short label for file-backed specs, which otherwise embed an absolute path.
fn spec_label(spec: &GroupSpec) -> String {
    match spec {
        GroupSpec::FromFile(p) => format!(
            "FromFile({})",
            p.file_name().map(|f| f.to_string_lossy().into_owned()).unwrap_or_default()
        ),
        s => s.to_string(),
    }
}

fn lemma_suite(opts: &SuiteOptions, limits: &Limits) -> Vec<CheckResult> {
    let groups = catalog_groups(opts.max_order, limits);
    let mut jobs: Vec<(LemmaId, LemmaInstance)> = group_pi_pairs(&groups, true)
        .par_iter()
        .flat_map_iter(|(label, g, pi)| lemma_instances(g, label, pi, limits))
        .collect();
    jobs.extend(extra_lemma_instances(limits));
    jobs.par_iter()
        .map(|(id, inst)| {
            let (mut r, dt) = timed(|| check_lemma(*id, inst, limits));
            r.elapsed = dt;
            r
        })
        .collect()
}

/// `Sym(5) × Sym(5)` with `A = Alt(5) × Alt(5)`.
fn extra_lemma_instances(limits: &Limits) -> Vec<(LemmaId, LemmaInstance)> {
    let build = |s: GroupSpec| s.build_with(limits);
    let (Ok(s5), Ok(a5)) = (build(GroupSpec::Sym(5)), build(GroupSpec::Alt(5))) else {
        return Vec::new();
    };
    let g = arc(direct_product(&s5, &s5).group);
    let a = direct_product(&a5, &a5);
    let pi = PrimeSet::from_primes([2, 3]);
    let Ok(classes) = hall_classes(&g, &pi, HallMode::Auto, limits) else {
        return Vec::new();
    };
    let Some(h) = classes.first() else {
        return Vec::new();
    };
    let inst = LemmaInstance {
        a: Some(NamedSubgroup::new("Alt(5)xAlt(5)", arc(a.group.clone()))),
        h: Some(NamedSubgroup::new("H0", h.representative.group().clone())),
        factors: vec![arc(a.left.clone()), arc(a.right.clone())],
        ..LemmaInstance::new("Direct(Sym(5),Sym(5))", g, pi)
    };
    vec![(LemmaId::TrivAct, inst.clone()), (LemmaId::Crit, inst)]
}

/// Classification of every catalog group up to `max_order` for every
/// `π ⊆ π(G)`, checked for internal consistency, plus the Theorem 1 checks.
pub fn sweep(opts: &SuiteOptions, limits: &Limits) -> Report {
    let results = with_pool(opts.jobs, || {
        let groups = catalog_groups(opts.max_order, limits);
        let mut rs: Vec<CheckResult> = group_pi_pairs(&groups, false)
            .par_iter()
            .map(|(label, g, pi)| {
                let o = ClassifyOptions {
                    seed: opts.seed,
                    ..ClassifyOptions::default()
                };
                let (rep, dt) = timed(|| classify_properties_with(g, pi, limits, &o));
                let inst = format!("G={label};pi={pi}");
                let consistent = match rep.k_pi {
                    Some(k) => {
                        rep.e_holds == Tri::from_bool(k >= 1)
                            && rep.c_holds == Tri::from_bool(k == 1)
                            && (rep.d_holds != Tri::Yes || rep.c_holds == Tri::Yes)
                    }
                    None => true,
                };
                let verdict_ok = consistent && rep.k_pi.is_some();
                let mut r = CheckResult::verdict_of("sweep.classify", &inst, consistent)
                    .with_note(format!(
                        "k={} E={} C={} D={} ({})",
                        rep.k_pi.map_or("?".to_string(), |k| k.to_string()),
                        rep.e_holds,
                        rep.c_holds,
                        rep.d_holds,
                        rep.d_reason
                    ))
                    .with_assumptions(&rep.assumptions);
                if !verdict_ok && consistent {
                    r.verdict = super::Verdict::Indeterminate;
                }
                for c in rep.classes.iter().filter(|_| !consistent) {
                    r = r.with_witness(super::Witness::subgroup("Hall", &c.representative));
                }
                r.elapsed = dt;
                r
            })
            .collect();
        rs.extend(theorem1_suite(opts, limits));
        rs
    });
    Report::new(results)
}
