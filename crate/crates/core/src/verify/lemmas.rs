use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use num_bigint::BigUint;

use super::checks::{canonical, hall_of, normal_candidates, NamedSubgroup};
use super::{arc, CheckResult, Witness};
use crate::error::{Error, Result};
use crate::group::Group;
use crate::hall::{
    a_conjugacy_indices, classify_properties_with, induced_from, is_class_invariant, is_hall, is_pi_separable,
    product_group, ClassifyOptions, PrimeSet, Tri,
};
use crate::limits::Limits;
use crate::perm::Permutation;
use crate::subgroup::{self, is_normalized_by};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum LemmaId {
    Base1,
    Base2,
    Cpiext,
    Vedernik,
    Quot,
    Norm,
    IndInv,
    EqualityGHA,
    Crit,
    TrivAct,
    TransAct,
}

impl LemmaId {
    pub const ALL: [LemmaId; 11] = [
        LemmaId::Base1,
        LemmaId::Base2,
        LemmaId::Cpiext,
        LemmaId::Vedernik,
        LemmaId::Quot,
        LemmaId::Norm,
        LemmaId::IndInv,
        LemmaId::EqualityGHA,
        LemmaId::Crit,
        LemmaId::TrivAct,
        LemmaId::TransAct,
    ];

    pub fn name(self) -> &'static str {
        match self {
            LemmaId::Base1 => "base(1)",
            LemmaId::Base2 => "base(2)",
            LemmaId::Cpiext => "cpiext",
            LemmaId::Vedernik => "Vedernik",
            LemmaId::Quot => "quot",
            LemmaId::Norm => "Norm",
            LemmaId::IndInv => "ind=inv",
            LemmaId::EqualityGHA => "EqualityG=HA",
            LemmaId::Crit => "crit",
            LemmaId::TrivAct => "TrivAct",
            LemmaId::TransAct => "TransAct",
        }
    }

    pub fn check_id(self) -> String {
        format!("lemma.{}", self.name())
    }
}

impl fmt::Display for LemmaId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for LemmaId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        LemmaId::ALL
            .into_iter()
            .find(|l| l.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::parse(0, format!("unknown lemma `{s}`")))
    }
}

/// The data a lemma is evaluated on. Fields a lemma does not use are ignored.
#[derive(Clone, Debug)]
pub struct LemmaInstance {
    pub label: String,
    pub group: Arc<Group>,
    pub pi: PrimeSet,
    /// The normal subgroup `A`.
    pub a: Option<NamedSubgroup>,
    /// Vedernik's `B` with `A ≤ B ≤ G`.
    pub b: Option<NamedSubgroup>,
    /// A Hall subgroup of `G`.
    pub h: Option<NamedSubgroup>,
    /// `A_1, …, A_s` with `A = A_1 × … × A_s`.
    pub factors: Vec<Arc<Group>>,
}

impl LemmaInstance {
    pub fn new(label: impl Into<String>, group: Arc<Group>, pi: PrimeSet) -> LemmaInstance {
        LemmaInstance {
            label: label.into(),
            group,
            pi,
            a: None,
            b: None,
            h: None,
            factors: Vec::new(),
        }
    }

    pub fn describe(&self) -> String {
        let mut s = format!("G={};pi={}", self.label, self.pi);
        for (k, v) in [("A", &self.a), ("B", &self.b), ("H", &self.h)] {
            if let Some(v) = v {
                s.push_str(&format!(";{k}={}", v.label));
            }
        }
        if !self.factors.is_empty() {
            let orders: Vec<String> = self.factors.iter().map(|f| f.order().to_string()).collect();
            s.push_str(&format!(";factors={}", orders.join("x")));
        }
        s
    }
}

struct Ctx<'a> {
    id: LemmaId,
    inst: &'a LemmaInstance,
    desc: String,
    limits: &'a Limits,
}

impl Ctx<'_> {
    fn skip(&self, why: impl Into<String>) -> CheckResult {
        CheckResult::skipped(self.id.check_id(), &self.desc, why)
    }

    fn result(&self, ok: bool) -> CheckResult {
        CheckResult::verdict_of(self.id.check_id(), &self.desc, ok)
    }

    fn g(&self) -> &Arc<Group> {
        &self.inst.group
    }

    fn pi(&self) -> &PrimeSet {
        &self.inst.pi
    }

    fn need_a(&self) -> std::result::Result<&Arc<Group>, CheckResult> {
        let a = self.inst.a.as_ref().ok_or_else(|| self.skip("no normal subgroup given"))?;
        if !self.g().contains_group(&a.group) || !is_normalized_by(&a.group, self.g().generators()) {
            return Err(self.skip("A is not normal in G"));
        }
        Ok(&a.group)
    }

    fn need_h(&self) -> std::result::Result<&Arc<Group>, CheckResult> {
        let h = self.inst.h.as_ref().ok_or_else(|| self.skip("no Hall subgroup given"))?;
        if !self.g().contains_group(&h.group) || !is_hall(self.g(), &h.group, self.pi()) {
            return Err(self.skip("H is not a Hall subgroup of G"));
        }
        Ok(&h.group)
    }

    fn k(&self, g: &Arc<Group>) -> Result<usize> {
        Ok(hall_of(g, self.pi(), self.limits)?.len())
    }

    fn quotient(&self, g: &Arc<Group>, a: &Group) -> Result<Arc<Group>> {
        Ok(arc(subgroup::quotient(g, a, self.limits)?.0))
    }
}

/// Evaluates one lemma on one instance. Hypotheses are checked first; when
/// they fail the result is SkippedPrecondition.
pub fn check_lemma(id: LemmaId, inst: &LemmaInstance, limits: &Limits) -> CheckResult {
    let ctx = Ctx {
        id,
        inst,
        desc: inst.describe(),
        limits,
    };
    let out = match id {
        LemmaId::Base1 => base1(&ctx),
        LemmaId::Base2 => base2(&ctx),
        LemmaId::Cpiext => cpiext(&ctx),
        LemmaId::Vedernik => vedernik(&ctx),
        LemmaId::Quot => quot(&ctx),
        LemmaId::Norm => norm(&ctx),
        LemmaId::IndInv => ind_inv(&ctx),
        LemmaId::EqualityGHA => equality(&ctx),
        LemmaId::Crit => crit(&ctx),
        LemmaId::TrivAct => triv_act(&ctx),
        LemmaId::TransAct => trans_act(&ctx),
    };
    match out {
        Ok(Ok(r)) | Ok(Err(r)) => r,
        Err(e) => CheckResult::from_error(id.check_id(), ctx.desc, &e),
    }
}

type Outcome = Result<std::result::Result<CheckResult, CheckResult>>;

macro_rules! need {
    ($e:expr) => {
        match $e {
            Ok(v) => v,
            Err(skip) => return Ok(Err(skip)),
        }
    };
}

fn base1(c: &Ctx) -> Outcome {
    let a = need!(c.need_a());
    let h = need!(c.need_h());
    let ha = product_group(h, a)?;
    let hua = subgroup::intersection(h, a, c.limits)?;
    let first = is_hall(a, &hua, c.pi());
    let quotient_order = ha.order() / a.order();
    let second = quotient_order == c.pi().part(&(c.g().order() / a.order()));
    let mut r = c
        .result(first && second)
        .with_note(format!("|H∩A|={} |HA/A|={quotient_order}", hua.order()));
    if !(first && second) {
        r = r.with_witness(Witness::subgroup("H∩A", &hua)).with_witness(Witness::subgroup("HA", &ha));
    }
    Ok(Ok(r))
}

fn base2(c: &Ctx) -> Outcome {
    let eff = c.pi().intersection(&PrimeSet::of(c.g().order()));
    if !is_pi_separable(c.g(), &eff, c.limits)? {
        return Ok(Err(c.skip("no normal series with pi- and pi'-factors")));
    }
    let opts = ClassifyOptions {
        separable_shortcut: false,
        ..ClassifyOptions::default()
    };
    let rep = classify_properties_with(c.g(), c.pi(), c.limits, &opts);
    if rep.d_holds == Tri::Indeterminate {
        return Ok(Ok(CheckResult::new(c.id.check_id(), &c.desc, super::Verdict::Indeterminate).with_note(rep.d_reason)));
    }
    let ok = rep.d_holds == Tri::Yes;
    let mut r = c.result(ok).with_note(format!("E={} C={} D={}", rep.e_holds, rep.c_holds, rep.d_holds));
    if let Some(u) = &rep.uncovered {
        r = r.with_witness(Witness::subgroup("maximal pi-subgroup that is not Hall", u));
    }
    for cl in rep.classes.iter().take(2).filter(|_| !ok) {
        r = r.with_witness(Witness::subgroup("Hall", &cl.representative));
    }
    Ok(Ok(r))
}

fn cpiext(c: &Ctx) -> Outcome {
    let a = need!(c.need_a());
    if c.k(a)? != 1 {
        return Ok(Err(c.skip("A is not C_pi")));
    }
    let q = c.quotient(c.g(), a)?;
    if c.k(&q)? != 1 {
        return Ok(Err(c.skip("G/A is not C_pi")));
    }
    let classes = hall_of(c.g(), c.pi(), c.limits)?;
    let ok = classes.len() == 1;
    let mut r = c.result(ok).with_note(format!("k(G)={}", classes.len()));
    for (i, cl) in classes.iter().enumerate().filter(|_| !ok) {
        r = r.with_witness(Witness::subgroup(format!("G Hall class {i}"), &cl.representative));
    }
    Ok(Ok(r))
}

fn vedernik(c: &Ctx) -> Outcome {
    let a = need!(c.need_a());
    let b = need!(c.inst.b.as_ref().ok_or_else(|| c.skip("no B given")));
    if !c.g().contains_group(&b.group) || !b.group.contains_group(a) {
        return Ok(Err(c.skip("A <= B <= G fails")));
    }
    if c.k(c.g())? == 0 {
        return Ok(Err(c.skip("G is not E_pi")));
    }
    let q = c.quotient(&b.group, a)?;
    if c.k(&q)? == 0 {
        return Ok(Err(c.skip("B/A is not E_pi")));
    }
    let kb = c.k(&b.group)?;
    let mut r = c
        .result(kb >= 1)
        .with_note(format!("statement-level check; k(B)={kb} |B/A|={}", q.order()));
    if kb == 0 {
        r = r.with_witness(Witness::subgroup("B", &b.group));
    }
    Ok(Ok(r))
}

fn quot(c: &Ctx) -> Outcome {
    let a = need!(c.need_a());
    if c.k(c.g())? != 1 {
        return Ok(Err(c.skip("G is not C_pi")));
    }
    let q = c.quotient(c.g(), a)?;
    let classes = hall_of(&q, c.pi(), c.limits)?;
    let ok = classes.len() == 1;
    let mut r = c.result(ok).with_note(format!("|G/A|={} k(G/A)={}", q.order(), classes.len()));
    for (i, cl) in classes.iter().enumerate().filter(|_| !ok) {
        r = r.with_witness(Witness::subgroup(format!("G/A Hall class {i}"), &cl.representative));
    }
    Ok(Ok(r))
}

fn norm(c: &Ctx) -> Outcome {
    let a = need!(c.need_a());
    let h = need!(c.need_h());
    if c.k(c.g())? != 1 {
        return Ok(Err(c.skip("G is not C_pi")));
    }
    let ha = product_group(h, a)?;
    let hua = subgroup::intersection(h, a, c.limits)?;
    let n1 = arc((**subgroup::normalizer(c.g(), &ha, c.limits)?.group()).clone());
    let n2 = arc((**subgroup::normalizer(c.g(), &hua, c.limits)?.group()).clone());
    let (k1, k2) = (c.k(&n1)?, c.k(&n2)?);
    let ok = k1 == 1 && k2 == 1;
    let mut r = c.result(ok).with_note(format!(
        "|N_G(HA)|={} k={k1} |N_G(H∩A)|={} k={k2}",
        n1.order(),
        n2.order()
    ));
    if !ok {
        r = r.with_witness(Witness::subgroup("N_G(HA)", &n1)).with_witness(Witness::subgroup("N_G(H∩A)", &n2));
    }
    Ok(Ok(r))
}

fn ind_inv(c: &Ctx) -> Outcome {
    let a = need!(c.need_a());
    let h = need!(c.need_h());
    let cent = subgroup::centralizer(c.g(), a, c.limits)?;
    let hac = Group::new(
        c.g().degree(),
        h.generators()
            .iter()
            .chain(a.generators())
            .chain(cent.generators())
            .cloned()
            .collect(),
    )?;
    if !is_normalized_by(&hac, c.g().generators()) {
        return Ok(Err(c.skip("HAC_G(A) is not normal in G")));
    }
    let g_classes = hall_of(c.g(), c.pi(), c.limits)?;
    let induced = induced_from(a, g_classes, c.pi(), c.limits)?;
    let mut mismatched = Vec::new();
    for (i, cls) in induced.all_classes_of_a.iter().enumerate() {
        let is_induced = induced.indices.contains(&i);
        let invariant = is_class_invariant(h, cls, c.limits)?;
        if is_induced != invariant {
            mismatched.push((i, is_induced, invariant));
        }
    }
    let ok = mismatched.is_empty();
    let mut r = c.result(ok).with_note(format!(
        "k(A)={} induced={} H-invariant classes agree={ok}",
        induced.k_pi_a(),
        induced.k_pi_g()
    ));
    for (i, ind, inv) in mismatched {
        r = r.with_witness(Witness::subgroup(
            format!("A class {i} induced={ind} invariant={inv}"),
            &induced.all_classes_of_a[i].representative,
        ));
    }
    Ok(Ok(r))
}

fn equality(c: &Ctx) -> Outcome {
    let a = need!(c.need_a());
    let h = need!(c.need_h());
    let g_classes = hall_of(c.g(), c.pi(), c.limits)?;
    if g_classes.len() != 1 {
        return Ok(Err(c.skip("G is not C_pi")));
    }
    let ha = canonical(product_group(h, a)?, &[c.g(), a]);
    if !is_normalized_by(&ha, c.g().generators()) {
        return Ok(Err(c.skip("HA is not normal in G")));
    }
    let kg = induced_from(a, g_classes, c.pi(), c.limits)?;
    let kha = induced_from(a, hall_of(&ha, c.pi(), c.limits)?, c.pi(), c.limits)?;
    let ok = kg.k_pi_g() == kha.k_pi_g();
    let mut r = c
        .result(ok)
        .with_note(format!("k^G(A)={} k^HA(A)={}", kg.k_pi_g(), kha.k_pi_g()))
        .with_assumptions(kg.all_classes_of_a.iter().flat_map(|x| x.assumptions.iter()));
    if !ok {
        r = r.with_witness(Witness::subgroup("HA", &ha));
        for x in kg.classes.iter().chain(&kha.classes) {
            r = r.with_witness(Witness::subgroup("induced", &x.representative));
        }
    }
    Ok(Ok(r))
}

/// Evaluates the three statements of the criterion separately.
pub(crate) fn crit_statements(
    g: &Arc<Group>,
    a: &Arc<Group>,
    h: &Group,
    pi: &PrimeSet,
    limits: &Limits,
) -> Result<([bool; 3], Vec<String>, String)> {
    let g_classes = hall_of(g, pi, limits)?;
    let assumptions: Vec<String> = g_classes.iter().flat_map(|x| x.assumptions.iter().cloned()).collect();
    let induced = induced_from(a, g_classes.clone(), pi, limits)?;
    let s1 = induced.k_pi_g() == 1;
    let ha = canonical(product_group(h, a)?, &[g, a]);
    let k_ha = hall_of(&ha, pi, limits)?.len();
    let s2 = k_ha == 1;
    let (ia, ig) = a_conjugacy_indices(g, a, h, limits)?;
    let s3 = g_classes.len() == 1 && ia == ig;
    let note = format!(
        "(1) k^G(A)={} (2) k(HA)={k_ha} (3) k(G)={} |A:N_A(H)|={ia} |G:N_G(H)|={ig}",
        induced.k_pi_g(),
        g_classes.len()
    );
    Ok(([s1, s2, s3], assumptions, note))
}

fn crit(c: &Ctx) -> Outcome {
    let a = need!(c.need_a());
    let h = need!(c.need_h());
    let ha = product_group(h, a)?;
    if !is_normalized_by(&ha, c.g().generators()) {
        return Ok(Err(c.skip("HA is not normal in G")));
    }
    let (s, assumptions, note) = crit_statements(c.g(), a, h, c.pi(), c.limits)?;
    let ok = s[0] == s[1] && s[1] == s[2];
    let mut r = c
        .result(ok)
        .with_note(format!("{note} -> {}", if s[0] { "all yes" } else if ok { "all no" } else { "disagree" }))
        .with_assumptions(&assumptions);
    for (i, v) in s.iter().enumerate() {
        r = r.with_witness(Witness::value(format!("statement ({})", i + 1), v));
    }
    if !ok {
        r = r.with_witness(Witness::subgroup("H", h)).with_witness(Witness::subgroup("A", a));
    }
    Ok(Ok(r))
}

/// Checks `A = A_1 × … × A_s` and `G = H A C_G(A)`.
fn decomposition_holds(c: &Ctx, a: &Arc<Group>, h: &Group) -> Result<std::result::Result<(), String>> {
    let fs = &c.inst.factors;
    if fs.len() < 2 {
        return Ok(Err("fewer than two factors".into()));
    }
    let order: BigUint = fs.iter().map(|f| f.order().clone()).product();
    if &order != a.order() {
        return Ok(Err("orders of the factors do not multiply to |A|".into()));
    }
    for (i, x) in fs.iter().enumerate() {
        if !a.contains_group(x) {
            return Ok(Err("a factor is not in A".into()));
        }
        for y in &fs[i + 1..] {
            let commute = x
                .generators()
                .iter()
                .all(|p| y.generators().iter().all(|q| p.then(q) == q.then(p)));
            if !commute {
                return Ok(Err("factors do not commute".into()));
            }
        }
    }
    let gens: Vec<Permutation> = fs.iter().flat_map(|f| f.generators().iter().cloned()).collect();
    if !Group::new(a.degree(), gens)?.same_group(a) {
        return Ok(Err("factors do not generate A".into()));
    }
    let cent = subgroup::centralizer(c.g(), a, c.limits)?;
    let hac = Group::new(
        c.g().degree(),
        h.generators()
            .iter()
            .chain(a.generators())
            .chain(cent.generators())
            .cloned()
            .collect(),
    )?;
    if hac.order() != c.g().order() {
        return Ok(Err("G != HAC_G(A)".into()));
    }
    Ok(Ok(()))
}

fn induced_counts(c: &Ctx, a: &Arc<Group>) -> Result<(usize, Vec<usize>, Vec<String>)> {
    let g_classes = hall_of(c.g(), c.pi(), c.limits)?;
    let assumptions = g_classes.iter().flat_map(|x| x.assumptions.iter().cloned()).collect();
    let ka = induced_from(a, g_classes.clone(), c.pi(), c.limits)?.k_pi_g();
    let ks = c
        .inst
        .factors
        .iter()
        .map(|f| Ok(induced_from(f, g_classes.clone(), c.pi(), c.limits)?.k_pi_g()))
        .collect::<Result<Vec<usize>>>()?;
    Ok((ka, ks, assumptions))
}

fn triv_act(c: &Ctx) -> Outcome {
    let a = need!(c.need_a());
    let h = need!(c.need_h());
    if let Err(why) = decomposition_holds(c, a, h)? {
        return Ok(Err(c.skip(why)));
    }
    if c.inst.factors.iter().any(|f| !is_normalized_by(f, c.g().generators())) {
        return Ok(Err(c.skip("a factor is not normal in G")));
    }
    let (ka, ks, assumptions) = induced_counts(c, a)?;
    let ok = ks.iter().product::<usize>() == ka;
    let mut r = c
        .result(ok)
        .with_note(format!("k^G(A)={ka} k^G(A_i)={ks:?}"))
        .with_assumptions(&assumptions);
    if !ok {
        for f in &c.inst.factors {
            r = r.with_witness(Witness::subgroup("A_i", f));
        }
    }
    Ok(Ok(r))
}

fn trans_act(c: &Ctx) -> Outcome {
    let a = need!(c.need_a());
    let h = need!(c.need_h());
    if let Err(why) = decomposition_holds(c, a, h)? {
        return Ok(Err(c.skip(why)));
    }
    let fs = &c.inst.factors;
    // G permutes the factors, transitively
    let mut reached = vec![false; fs.len()];
    reached[0] = true;
    let mut stack = vec![0];
    while let Some(i) = stack.pop() {
        for x in c.g().generators() {
            let img = fs[i].conjugated_by(x);
            let Some(j) = fs.iter().position(|f| f.same_group(&img)) else {
                return Ok(Err(c.skip("G does not permute the factors")));
            };
            if !reached[j] {
                reached[j] = true;
                stack.push(j);
            }
        }
    }
    if reached.contains(&false) {
        return Ok(Err(c.skip("G is not transitive on the factors")));
    }
    let (ka, ks, assumptions) = induced_counts(c, a)?;
    let ok = ks.iter().all(|&k| k == ka);
    let mut r = c
        .result(ok)
        .with_note(format!("k^G(A)={ka} k^G(A_i)={ks:?}"))
        .with_assumptions(&assumptions);
    if !ok {
        for f in fs {
            r = r.with_witness(Witness::subgroup("A_i", f));
        }
    }
    Ok(Ok(r))
}

/// Conjugates of `x` under `g`, when they form a direct decomposition of
/// the group they generate.
fn conjugate_decomposition(g: &Group, x: &Arc<Group>) -> Option<Vec<Arc<Group>>> {
    let mut out: Vec<Arc<Group>> = vec![x.clone()];
    let mut head = 0;
    while head < out.len() {
        let cur = out[head].clone();
        head += 1;
        for y in g.generators() {
            let img = cur.conjugated_by(y);
            if !out.iter().any(|f| f.same_group(&img)) {
                out.push(arc(img));
                if out.len() > 8 {
                    return None;
                }
            }
        }
    }
    Some(out)
}

/// Instances of every lemma drawn from `G`, its normal subgroups and its
/// Hall subgroups for one `π`.
pub fn lemma_instances(g: &Arc<Group>, label: &str, pi: &PrimeSet, limits: &Limits) -> Vec<(LemmaId, LemmaInstance)> {
    let base = LemmaInstance::new(label, g.clone(), pi.clone());
    let mut out = vec![(LemmaId::Base2, base.clone())];
    let (normals, _) = normal_candidates(g, limits);
    let proper: Vec<&NamedSubgroup> = normals
        .iter()
        .filter(|n| !n.group.is_trivial() && n.group.order() != g.order())
        .collect();
    let halls: Vec<NamedSubgroup> = match hall_of(g, pi, limits) {
        Ok(c) => c
            .iter()
            .enumerate()
            .map(|(i, cl)| NamedSubgroup::new(format!("H{i}[{}]", cl.order()), cl.representative.group().clone()))
            .collect(),
        Err(_) => Vec::new(),
    };
    for a in &proper {
        let with_a = LemmaInstance {
            a: Some((*a).clone()),
            ..base.clone()
        };
        out.push((LemmaId::Cpiext, with_a.clone()));
        out.push((LemmaId::Quot, with_a.clone()));
        for h in &halls {
            let with_h = LemmaInstance {
                h: Some(h.clone()),
                ..with_a.clone()
            };
            for id in [LemmaId::Base1, LemmaId::Norm, LemmaId::IndInv, LemmaId::EqualityGHA, LemmaId::Crit] {
                out.push((id, with_h.clone()));
            }
        }
        if !halls.is_empty() {
            for b in vedernik_candidates(g, &a.group, &halls, limits) {
                out.push((
                    LemmaId::Vedernik,
                    LemmaInstance {
                        b: Some(b),
                        ..with_a.clone()
                    },
                ));
            }
        }
    }
    let Some(h) = halls.first() else {
        return out;
    };
    // products of two normal subgroups meeting trivially
    for (i, x) in proper.iter().enumerate() {
        for y in &proper[i + 1..] {
            let join = match product_group(&x.group, &y.group) {
                Ok(j) => j,
                Err(_) => continue,
            };
            if join.order() != &(x.group.order() * y.group.order()) {
                continue;
            }
            let a = canonical(join, &[g]);
            out.push((
                LemmaId::TrivAct,
                LemmaInstance {
                    a: Some(NamedSubgroup::new(format!("{}x{}", x.label, y.label), a)),
                    h: Some(h.clone()),
                    factors: vec![x.group.clone(), y.group.clone()],
                    ..base.clone()
                },
            ));
        }
    }
    // A as the product of the G-conjugates of one of its normal subgroups
    for a in normals.iter().filter(|n| !n.group.is_trivial()) {
        let Ok(inner) = subgroup::normal_subgroups(&a.group, limits) else {
            continue;
        };
        let mut used: Vec<Arc<Group>> = Vec::new();
        for x in inner.iter().map(|n| n.group()) {
            if x.is_trivial() || x.order() == a.group.order() || used.iter().any(|u| u.same_group(x)) {
                continue;
            }
            let Some(fs) = conjugate_decomposition(g, x) else {
                continue;
            };
            if fs.len() < 2 {
                continue;
            }
            let order: BigUint = fs.iter().map(|f| f.order().clone()).product();
            if &order != a.group.order() {
                continue;
            }
            used.extend(fs.iter().cloned());
            out.push((
                LemmaId::TransAct,
                LemmaInstance {
                    a: Some(a.clone()),
                    h: Some(h.clone()),
                    factors: fs,
                    ..base.clone()
                },
            ));
        }
    }
    out
}

/// Subgroups `B ⊇ A`: `A` times a Hall subgroup and `A` times each Sylow
/// subgroup.
fn vedernik_candidates(
    g: &Arc<Group>,
    a: &Arc<Group>,
    halls: &[NamedSubgroup],
    limits: &Limits,
) -> Vec<NamedSubgroup> {
    let mut out: Vec<NamedSubgroup> = Vec::new();
    let mut push = |label: String, b: Group| {
        if b.order() != g.order() && b.order() != a.order() && !out.iter().any(|o| o.group.same_group(&b)) {
            out.push(NamedSubgroup::new(format!("{label}[{}]", b.order()), arc(b)));
        }
    };
    if let Ok(b) = product_group(&halls[0].group, a) {
        push("AH".into(), b);
    }
    for &p in PrimeSet::of(g.order()).primes() {
        if let Ok(s) = subgroup::sylow(g, p, limits) {
            if let Ok(b) = product_group(&s, a) {
                push(format!("AP{p}"), b);
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructors::parse_group_spec;
    use crate::verify::Verdict;

    fn group(spec: &str) -> Arc<Group> {
        arc(parse_group_spec(spec).unwrap().build().unwrap())
    }

    fn pi(p: &[u64]) -> PrimeSet {
        PrimeSet::new(p.iter().copied()).unwrap()
    }

    #[test]
    fn names_round_trip() {
        for id in LemmaId::ALL {
            assert_eq!(id.name().parse::<LemmaId>().unwrap(), id);
        }
        assert!("nope".parse::<LemmaId>().is_err());
    }

    #[test]
    fn base1_on_sym4() {
        let limits = Limits::default();
        let s4 = group("Sym(4)");
        let a4 = group("Alt(4)");
        let h = hall_of(&s4, &pi(&[2]), &limits).unwrap()[0].representative.group().clone();
        let inst = LemmaInstance {
            a: Some(NamedSubgroup::new("Alt(4)", a4)),
            h: Some(NamedSubgroup::new("P", h)),
            ..LemmaInstance::new("Sym(4)", s4, pi(&[2]))
        };
        let r = check_lemma(LemmaId::Base1, &inst, &limits);
        assert_eq!(r.verdict, Verdict::Pass);
        assert_eq!(r.note, "|H∩A|=4 |HA/A|=2");
        let r = check_lemma(LemmaId::TrivAct, &inst, &limits);
        assert_eq!(r.verdict, Verdict::SkippedPrecondition);
    }

    #[test]
    fn every_lemma_on_small_groups() {
        let limits = Limits::default();
        for spec in ["Sym(4)", "Wreath(Sym(3),2)", "Direct(Sym(3),Sym(3))", "Sym(5)"] {
            let g = group(spec);
            for p in PrimeSet::of(g.order()).subsets() {
                for (id, inst) in lemma_instances(&g, spec, &p, &limits) {
                    let r = check_lemma(id, &inst, &limits);
                    assert!(
                        r.verdict == Verdict::Pass || r.verdict == Verdict::SkippedPrecondition,
                        "{}",
                        r.text_line()
                    );
                }
            }
        }
    }

    #[test]
    fn crit_disagreement_is_impossible_on_gl32() {
        // GL(3,2) x C2 with A = GL(3,2): HA is not C_pi and all three statements fail
        let limits = Limits::default();
        let g = group("Direct(GL(3,2),Cyclic(2))");
        let (normals, _) = normal_candidates(&g, &limits);
        let a = normals.iter().find(|n| n.group.order_u64() == Some(168)).unwrap();
        let h = hall_of(&g, &pi(&[2, 3]), &limits).unwrap();
        assert_eq!(h.len(), 2);
        let inst = LemmaInstance {
            a: Some(a.clone()),
            h: Some(NamedSubgroup::new("H0", h[0].representative.group().clone())),
            ..LemmaInstance::new("GLxC2", g, pi(&[2, 3]))
        };
        let r = check_lemma(LemmaId::Crit, &inst, &limits);
        assert_eq!(r.verdict, Verdict::Pass);
        assert!(r.note.ends_with("all no"), "{}", r.note);
    }
}
