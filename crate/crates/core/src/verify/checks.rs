use std::sync::Arc;

use num_bigint::BigUint;
use num_traits::One;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::{arc, instance_seed, CheckResult, Verdict, Witness};
use crate::constructors::{CatalogEntry, MatrixFamily};
use crate::error::Result;
use crate::group::Group;
use crate::hall::{
    a_conjugacy_indices, all_below_are_pi_numbers, hall_classes, induced_from, product_group, HallMode, PrimeSet,
    SubgroupClass,
};
use crate::limits::Limits;
use crate::subgroup::{self, conjugacy, is_normalized_by, Conjugacy};

/// A subgroup with a short label for report lines.
#[derive(Clone, Debug)]
pub struct NamedSubgroup {
    pub label: String,
    pub group: Arc<Group>,
}

impl NamedSubgroup {
    pub fn new(label: impl Into<String>, group: Arc<Group>) -> NamedSubgroup {
        NamedSubgroup {
            label: label.into(),
            group,
        }
    }
}

/// Normal subgroups to iterate over: all of them when the group has an
/// element table, else the trivial group, the designated normal subgroup of
/// the construction and the whole group. The flag says which.
pub fn normal_candidates(g: &Arc<Group>, limits: &Limits) -> (Vec<NamedSubgroup>, bool) {
    if let Ok(all) = subgroup::normal_subgroups(g, limits) {
        let named = all
            .into_iter()
            .enumerate()
            .map(|(i, n)| NamedSubgroup::new(format!("N{i}[{}]", n.order()), n.group().clone()))
            .collect();
        return (named, true);
    }
    let mut out = vec![NamedSubgroup::new("1", arc(Group::trivial(g.degree())))];
    if let Some(n) = g.catalog().and_then(|c| c.designated_normal()) {
        out.push(NamedSubgroup::new(format!("designated[{}]", n.order()), n));
    }
    out.push(NamedSubgroup::new(format!("G[{}]", g.order()), g.clone()));
    (out, false)
}

pub(crate) fn hall_of(g: &Arc<Group>, pi: &PrimeSet, limits: &Limits) -> Result<Vec<SubgroupClass>> {
    hall_classes(g, pi, HallMode::Auto, limits)
}

/// Reuses a known group (which may carry catalog data) when `h` equals it.
pub(crate) fn canonical(h: Group, known: &[&Arc<Group>]) -> Arc<Group> {
    for k in known {
        if k.order() == h.order() && k.same_group(&h) {
            return (*k).clone();
        }
    }
    arc(h)
}

fn reps_as_witnesses(r: CheckResult, classes: &[SubgroupClass], what: &str) -> CheckResult {
    classes.iter().enumerate().fold(r, |r, (i, c)| {
        r.with_witness(Witness::subgroup(format!("{what} class {i}"), &c.representative))
    })
}

fn is_abelian(g: &Group) -> bool {
    let gens = g.generators();
    gens.iter().all(|x| gens.iter().all(|y| x.then(y) == y.then(x)))
}

/// For every normal `A` and the Hall subgroup `H` of a `C_π`-group `G`:
/// `HA ∈ C_π` and any two Hall subgroups of `HA` are conjugate under `A`.
/// Where `HA ⊴ G` also checks `k_π^G(A) = 1`, and for a nonabelian minimal
/// normal `A` the product formula over its simple components.
pub fn check_theorem1(g: &Arc<Group>, label: &str, pi: &PrimeSet, limits: &Limits, seed: u64) -> Vec<CheckResult> {
    let (normals, _) = normal_candidates(g, limits);
    check_theorem1_on(g, label, pi, &normals, limits, seed)
}

/// [`check_theorem1`] over the given normal subgroups.
pub fn check_theorem1_on(
    g: &Arc<Group>,
    label: &str,
    pi: &PrimeSet,
    normals: &[NamedSubgroup],
    limits: &Limits,
    seed: u64,
) -> Vec<CheckResult> {
    let inst0 = format!("G={label};pi={pi}");
    let classes = match hall_of(g, pi, limits) {
        Ok(c) => c,
        Err(e) => return vec![CheckResult::from_error("theorem1", inst0, &e)],
    };
    if classes.len() != 1 {
        return vec![CheckResult::skipped("theorem1", inst0, format!("G is not C_pi (k={})", classes.len()))];
    }
    let mut out = Vec::new();
    for a in normals {
        if !is_normalized_by(&a.group, g.generators()) {
            out.push(CheckResult::skipped("theorem1", format!("{inst0};A={}", a.label), "A is not normal"));
            continue;
        }
        let inst = format!("{inst0};A={}", a.label);
        match theorem1_instance(g, &classes, a, normals, pi, &inst, limits, seed) {
            Ok(mut rs) => out.append(&mut rs),
            Err(e) => out.push(CheckResult::from_error("theorem1", inst, &e)),
        }
    }
    out
}

#[allow(clippy::too_many_arguments)]
fn theorem1_instance(
    g: &Arc<Group>,
    classes: &[SubgroupClass],
    a: &NamedSubgroup,
    normals: &[NamedSubgroup],
    pi: &PrimeSet,
    inst: &str,
    limits: &Limits,
    seed: u64,
) -> Result<Vec<CheckResult>> {
    let h = &classes[0].representative;
    let assumptions = &classes[0].assumptions;
    let ha = canonical(product_group(h, &a.group)?, &[g, &a.group]);
    let ha_classes = hall_of(&ha, pi, limits)?;
    let (ia, iha) = a_conjugacy_indices(&ha, &a.group, h, limits)?;
    let ok = ha_classes.len() == 1 && ia == iha;
    let mut main = CheckResult::verdict_of("theorem1", inst, ok)
        .with_note(format!("|HA|={} k(HA)={} |A:N_A(H)|={ia} |HA:N_HA(H)|={iha}", ha.order(), ha_classes.len()))
        .with_assumptions(assumptions)
        .with_assumptions(ha_classes.iter().flat_map(|c| c.assumptions.iter()));
    if ok {
        // a transporter inside A onto a random conjugate of H in HA
        let mut rng = ChaCha8Rng::seed_from_u64(instance_seed(seed, inst));
        let x = ha.random_element(&mut rng);
        let k = h.conjugated_by(&x);
        match conjugacy(&a.group, h, &k, limits)? {
            Conjugacy::Conjugate(t) if t.verify() && a.group.contains(&t.element).unwrap_or(false) => {
                main = main.with_witness(Witness::transporter("H to H^x by an element of A", t));
            }
            _ => {
                main.verdict = Verdict::Fail;
                main = main
                    .with_witness(Witness::subgroup("H", h))
                    .with_witness(Witness::subgroup("H^x", &k))
                    .with_note("no transporter in A onto a conjugate of H");
            }
        }
    } else {
        main = main.with_witness(Witness::subgroup("H", h)).with_witness(Witness::subgroup("HA", &ha));
        main = reps_as_witnesses(main, &ha_classes, "HA Hall");
    }
    let mut out = vec![main];
    if !is_normalized_by(&ha, g.generators()) {
        return Ok(out);
    }
    let induced = induced_from(&a.group, classes.to_vec(), pi, limits)?;
    let k = induced.k_pi_g();
    let mut step13 = CheckResult::verdict_of("theorem1.step13", inst, k == 1)
        .with_note(format!("k^G(A)={k} k(A)={}", induced.k_pi_a()))
        .with_assumptions(assumptions)
        .with_assumptions(induced.all_classes_of_a.iter().flat_map(|c| c.assumptions.iter()));
    if k != 1 {
        step13 = reps_as_witnesses(step13, &induced.classes, "induced");
    }
    out.push(step13);
    let minimal = normals
        .iter()
        .all(|n| n.group.is_trivial() || n.group.order() >= a.group.order() || !a.group.contains_group(&n.group));
    if !a.group.is_trivial() && minimal && !is_abelian(&a.group) {
        out.push(
            step8(classes, a, &ha, k, pi, inst, limits)
                .unwrap_or_else(|e| CheckResult::from_error("theorem1.step8", inst, &e)),
        );
    }
    Ok(out)
}

/// `k_π^G(A) = (k_π^G(S))^s` for `A = S_1 × … × S_m` minimal normal, where
/// `s` counts the `HA`-orbits on the components.
#[allow(clippy::too_many_arguments)]
fn step8(
    classes: &[SubgroupClass],
    a: &NamedSubgroup,
    ha: &Arc<Group>,
    k_a: usize,
    pi: &PrimeSet,
    inst: &str,
    limits: &Limits,
) -> Result<CheckResult> {
    let comps = components(&a.group, limits)?;
    let product: BigUint = comps.iter().map(|c| c.order().clone()).product();
    if &product != a.group.order() {
        return Ok(CheckResult::skipped("theorem1.step8", inst, "A is not a product of its minimal normal subgroups"));
    }
    // HA-orbits on the components
    let mut orbit_of = vec![usize::MAX; comps.len()];
    let mut orbits: Vec<Vec<usize>> = Vec::new();
    for start in 0..comps.len() {
        if orbit_of[start] != usize::MAX {
            continue;
        }
        let id = orbits.len();
        orbit_of[start] = id;
        let mut orbit = vec![start];
        let mut head = 0;
        while head < orbit.len() {
            let i = orbit[head];
            head += 1;
            for x in ha.generators() {
                let img = comps[i].conjugated_by(x);
                let j = comps
                    .iter()
                    .position(|c| c.same_group(&img))
                    .ok_or_else(|| crate::error::Error::Precondition("components not permuted".into()))?;
                if orbit_of[j] == usize::MAX {
                    orbit_of[j] = id;
                    orbit.push(j);
                }
            }
        }
        orbits.push(orbit);
    }
    let s = orbits.len();
    let k_of = |sub: &Arc<Group>| -> Result<usize> { Ok(induced_from(sub, classes.to_vec(), pi, limits)?.k_pi_g()) };
    let k_s: Vec<usize> = comps.iter().map(k_of).collect::<Result<_>>()?;
    let mut k_t = Vec::new();
    for orbit in &orbits {
        let gens = orbit.iter().flat_map(|&i| comps[i].generators().iter().cloned()).collect();
        let t = canonical(Group::new(a.group.degree(), gens)?, &[&a.group]);
        k_t.push(k_of(&t)?);
    }
    let k_s0 = k_s[0];
    let ok = k_s.iter().all(|&k| k == k_s0)
        && orbits.iter().zip(&k_t).all(|(o, &kt)| kt == k_s[o[0]])
        && k_t.iter().product::<usize>() == k_a
        && k_s0.checked_pow(s as u32) == Some(k_a);
    let mut r = CheckResult::verdict_of("theorem1.step8", inst, ok).with_note(format!(
        "m={} s={s} k^G(S)={k_s0} k^G(T)={k_t:?} k^G(A)={k_a}",
        comps.len()
    ));
    if !ok {
        r = r.with_witness(Witness::subgroup("A", &a.group));
        for (i, c) in comps.iter().enumerate() {
            r = r.with_witness(Witness::subgroup(format!("S{i}"), c));
        }
    }
    Ok(r)
}

/// Minimal normal subgroups of `a`.
fn components(a: &Arc<Group>, limits: &Limits) -> Result<Vec<Arc<Group>>> {
    if a.table(limits.exhaustive_order).is_err() && catalog_simple(a) {
        return Ok(vec![a.clone()]);
    }
    let normals = subgroup::normal_subgroups(a, limits)?;
    let nontrivial: Vec<&Arc<Group>> = normals.iter().map(|n| n.group()).filter(|n| !n.is_trivial()).collect();
    Ok(nontrivial
        .iter()
        .filter(|n| {
            !nontrivial
                .iter()
                .any(|m| m.order() < n.order() && n.contains_group(m))
        })
        .map(|n| (*n).clone())
        .collect())
}

/// Linear groups known to be simple without computing: `PSL(n,q)`, and every
/// family over `GF(2)`, apart from `PSL(2,2)` and `PSL(2,3)`.
fn catalog_simple(g: &Group) -> bool {
    match g.catalog() {
        Some(CatalogEntry::Matrix { family, n, q } | CatalogEntry::DoubledLinear { family, n, q }) => {
            *n >= 2 && (*family == MatrixFamily::PSL || *q == 2) && !(*n == 2 && *q <= 3)
        }
        _ => false,
    }
}

/// `G ∈ C_π ⇔ A ∈ C_π` for `A ⊴ G` of π′-index.
pub fn check_corollary1(g: &Arc<Group>, label: &str, a: &NamedSubgroup, pi: &PrimeSet, limits: &Limits) -> CheckResult {
    let inst = format!("G={label};pi={pi};A={}", a.label);
    if !g.contains_group(&a.group) || !is_normalized_by(&a.group, g.generators()) {
        return CheckResult::skipped("corollary1", inst, "A is not normal in G");
    }
    let index = g.order() / a.group.order();
    if !pi.part(&index).is_one() {
        return CheckResult::skipped("corollary1", inst, format!("index {index} is not a pi'-number"));
    }
    let run = || -> Result<CheckResult> {
        let kg = hall_of(g, pi, limits)?;
        let ka = hall_of(&a.group, pi, limits)?;
        let ok = (kg.len() == 1) == (ka.len() == 1);
        let mut r = CheckResult::verdict_of("corollary1", &inst, ok)
            .with_note(format!("k(G)={} k(A)={}", kg.len(), ka.len()))
            .with_assumptions(kg.iter().chain(&ka).flat_map(|c| c.assumptions.iter()));
        if !ok {
            r = reps_as_witnesses(r, &kg, "G Hall");
            r = reps_as_witnesses(r, &ka, "A Hall");
        }
        Ok(r)
    };
    run().unwrap_or_else(|e| CheckResult::from_error("corollary1", &inst, &e))
}

/// The bounds on `k_π(S)` for a simple group `S` and every `π ⊆ π(S)`.
pub fn check_theorem2(s: &Arc<Group>, label: &str, limits: &Limits) -> Vec<CheckResult> {
    let inst0 = format!("S={label}");
    match subgroup::normal_subgroups(s, limits) {
        Ok(n) if n.len() == 2 => {}
        Ok(n) => {
            return vec![CheckResult::skipped(
                "theorem2",
                inst0,
                format!("not simple: {} normal subgroups", n.len()),
            )]
        }
        Err(e) => return vec![CheckResult::from_error("theorem2", inst0, &e)],
    }
    let subsets = PrimeSet::of(s.order()).subsets();
    subsets
        .par_iter()
        .map(|pi| {
            let inst = format!("{inst0};pi={pi}");
            let classes = match hall_classes(s, pi, HallMode::Exhaustive, limits) {
                Ok(c) => c,
                Err(e) => return CheckResult::from_error("theorem2", inst, &e),
            };
            let k = classes.len();
            let mut failed = Vec::new();
            if k > 4 {
                failed.push("k<=4");
            }
            if !pi.contains(2) && k > 1 {
                failed.push("2 not in pi => k<=1");
            }
            if pi.contains(2) && !pi.contains(3) && k > 2 {
                failed.push("2 in pi, 3 not in pi => k<=2");
            }
            if k >= 1 && !all_below_are_pi_numbers(k, pi) {
                failed.push("every k'<=k is a pi-number");
            }
            let mut r = CheckResult::verdict_of("theorem2", inst, failed.is_empty()).with_note(format!("k={k}"));
            if !failed.is_empty() {
                r = r.with_note(format!("k={k} violates {}", failed.join(", ")));
                r = reps_as_witnesses(r, &classes, "S Hall");
            }
            r
        })
        .collect()
}

/// One candidate for the conjecture: a non-normal proper subgroup of a
/// `C_π`-group containing a Hall subgroup.
pub(crate) struct ConjectureCandidate {
    pub(crate) instance: String,
    pub(crate) a: Arc<Group>,
    pub(crate) assumptions: Vec<String>,
}

/// Subgroups `HN`, `N_G(H)`, `⟨H, H^x⟩` and `⟨H, g⟩` that contain the Hall
/// subgroup `H`, are proper, not normal and larger than `H`. Returns a
/// Skipped result when the preconditions fail for `G` itself.
pub(crate) fn conjecture_candidates(
    g: &Arc<Group>,
    label: &str,
    pi: &PrimeSet,
    limits: &Limits,
    seed: u64,
) -> std::result::Result<Vec<ConjectureCandidate>, CheckResult> {
    let inst0 = format!("G={label};pi={pi}");
    let classes = hall_of(g, pi, limits).map_err(|e| CheckResult::from_error("conjecture", &inst0, &e))?;
    if classes.len() != 1 {
        return Err(CheckResult::skipped("conjecture", inst0, format!("G is not C_pi (k={})", classes.len())));
    }
    let h: &Group = &classes[0].representative;
    let mut subs: Vec<(String, Group)> = Vec::new();
    let (normals, _) = normal_candidates(g, limits);
    for n in &normals {
        subs.push((format!("H{}", n.label), product_group(h, &n.group).map_err(|e| CheckResult::from_error("conjecture", &inst0, &e))?));
    }
    if let Ok(n) = subgroup::normalizer(g, h, limits) {
        subs.push(("N_G(H)".into(), (**n.group()).clone()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(instance_seed(seed, &inst0));
    for i in 0..3 {
        let x = g.random_element(&mut rng);
        let gens = h.generators().iter().chain(h.conjugated_by(&x).generators()).cloned().collect();
        if let Ok(j) = Group::new(g.degree(), gens) {
            subs.push((format!("<H,H^x{i}>"), j));
        }
    }
    for (i, x) in g.generators().iter().enumerate() {
        let gens = h.generators().iter().chain(std::iter::once(x)).cloned().collect();
        if let Ok(j) = Group::new(g.degree(), gens) {
            subs.push((format!("<H,g{i}>"), j));
        }
    }
    let mut out: Vec<ConjectureCandidate> = Vec::new();
    let mut seen: Vec<Group> = Vec::new();
    for (name, a) in subs {
        if a.order() == g.order() || a.order() == h.order() || is_normalized_by(&a, g.generators()) {
            continue;
        }
        if seen.iter().any(|s| s.order() == a.order() && s.same_group(&a)) {
            continue;
        }
        seen.push(a.clone());
        out.push(ConjectureCandidate {
            instance: format!("{inst0};A={name}[{}]", a.order()),
            a: arc(a),
            assumptions: classes[0].assumptions.clone(),
        });
    }
    Ok(out)
}

pub(crate) fn check_conjecture_candidate(c: &ConjectureCandidate, pi: &PrimeSet, limits: &Limits) -> CheckResult {
    match hall_of(&c.a, pi, limits) {
        Ok(classes) => {
            let k = classes.len();
            let mut r = CheckResult::verdict_of("conjecture", &c.instance, k == 1)
                .with_note(format!("k(A)={k}"))
                .with_assumptions(&c.assumptions);
            if k != 1 {
                r = r.with_witness(Witness::subgroup("A", &c.a));
                r = reps_as_witnesses(r, &classes, "A Hall");
            }
            r
        }
        Err(e) => CheckResult::from_error("conjecture", &c.instance, &e),
    }
}

/// Non-normal subgroups containing a Hall subgroup of a `C_π`-group are
/// `C_π`: checked over every group and every `π ⊆ π(G)`, at most `budget`
/// candidate subgroups in all; the rest are reported Indeterminate.
pub fn conjecture_search(
    groups: &[(String, Arc<Group>)],
    budget: usize,
    limits: &Limits,
    seed: u64,
) -> Vec<CheckResult> {
    let jobs: Vec<(String, Arc<Group>, PrimeSet)> = groups
        .iter()
        .flat_map(|(l, g)| {
            PrimeSet::of(g.order())
                .subsets()
                .into_iter()
                .map(move |pi| (l.clone(), g.clone(), pi))
        })
        .collect();
    let found: Vec<(PrimeSet, std::result::Result<Vec<ConjectureCandidate>, CheckResult>)> = jobs
        .par_iter()
        .map(|(l, g, pi)| (pi.clone(), conjecture_candidates(g, l, pi, limits, seed)))
        .collect();
    let mut out = Vec::new();
    let mut todo: Vec<(PrimeSet, ConjectureCandidate)> = Vec::new();
    for (pi, f) in found {
        match f {
            Ok(cands) => todo.extend(cands.into_iter().map(|c| (pi.clone(), c))),
            Err(r) => out.push(r),
        }
    }
    let over: Vec<CheckResult> = todo
        .iter()
        .skip(budget)
        .map(|(_, c)| CheckResult::new("conjecture", &c.instance, Verdict::Indeterminate).with_note("budget exhausted"))
        .collect();
    todo.truncate(budget);
    out.extend(todo.par_iter().map(|(pi, c)| check_conjecture_candidate(c, pi, limits)).collect::<Vec<_>>());
    out.extend(over);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructors::parse_group_spec;

    fn group(spec: &str) -> Arc<Group> {
        arc(parse_group_spec(spec).unwrap().build().unwrap())
    }

    fn pi(p: &[u64]) -> PrimeSet {
        PrimeSet::new(p.iter().copied()).unwrap()
    }

    #[test]
    fn theorem1_small() {
        let limits = Limits::default();
        let s4 = group("Sym(4)");
        let rs = check_theorem1(&s4, "Sym(4)", &pi(&[3]), &limits, 1);
        assert!(rs.iter().all(|r| r.verdict == Verdict::Pass), "{rs:#?}");
        assert!(rs.iter().any(|r| r.check_id == "theorem1.step13"));
        // trivial A: HA = H
        assert!(rs.iter().any(|r| r.instance.ends_with("A=N0[1]")));
        let s5 = group("Sym(5)");
        let rs = check_theorem1(&s5, "Sym(5)", &pi(&[2]), &limits, 1);
        assert!(rs.iter().any(|r| r.check_id == "theorem1.step8" && r.verdict == Verdict::Pass));
        assert!(rs.iter().all(|r| r.verdict == Verdict::Pass));
        let gl = group("GL(3,2)");
        let rs = check_theorem1(&gl, "GL(3,2)", &pi(&[2, 3]), &limits, 1);
        assert_eq!(rs.len(), 1);
        assert_eq!(rs[0].verdict, Verdict::SkippedPrecondition);
    }

    #[test]
    fn corollary_and_guards() {
        let limits = Limits::default();
        let s3 = group("Sym(3)");
        let a3 = NamedSubgroup::new("Alt(3)", arc(Group::new(3, vec![crate::Permutation::from_cycles("(1 2 3)", 3).unwrap()]).unwrap()));
        let r = check_corollary1(&s3, "Sym(3)", &a3, &pi(&[3]), &limits);
        assert_eq!(r.verdict, Verdict::Pass);
        let r = check_corollary1(&s3, "Sym(3)", &a3, &pi(&[2]), &limits);
        assert_eq!(r.verdict, Verdict::SkippedPrecondition);
        let hat = group("Semidirect(GL(3,2),TransposeInverse)");
        let (normals, complete) = normal_candidates(&hat, &limits);
        assert!(complete);
        let gl = normals.iter().find(|n| n.group.order_u64() == Some(168)).unwrap();
        let r = check_corollary1(&hat, "hat", gl, &pi(&[2, 3]), &limits);
        assert_eq!(r.verdict, Verdict::SkippedPrecondition);
    }

    #[test]
    fn theorem2_small() {
        let limits = Limits::default();
        let rs = check_theorem2(&group("Alt(5)"), "Alt(5)", &limits);
        assert_eq!(rs.len(), 8);
        assert!(rs.iter().all(|r| r.verdict == Verdict::Pass));
        let k35 = rs.iter().find(|r| r.instance.ends_with("pi={3,5}")).unwrap();
        assert_eq!(k35.note, "k=0");
        let rs = check_theorem2(&group("PSL(2,7)"), "PSL(2,7)", &limits);
        let k23 = rs.iter().find(|r| r.instance.ends_with("pi={2,3}")).unwrap();
        assert_eq!(k23.note, "k=2");
        let rs = check_theorem2(&group("Sym(4)"), "Sym(4)", &limits);
        assert_eq!(rs[0].verdict, Verdict::SkippedPrecondition);
    }

    #[test]
    fn conjecture_small() {
        let limits = Limits::default();
        let groups = vec![("Sym(4)".to_string(), group("Sym(4)")), ("GL(3,2)".to_string(), group("GL(3,2)"))];
        let rs = conjecture_search(&groups, 1000, &limits, 3);
        assert!(rs.iter().any(|r| r.verdict == Verdict::Pass));
        assert!(rs.iter().all(|r| r.verdict != Verdict::Fail));
        assert!(rs.iter().any(|r| r.verdict == Verdict::SkippedPrecondition));
        let rs = conjecture_search(&groups, 1, &limits, 3);
        assert!(rs.iter().any(|r| r.verdict == Verdict::Indeterminate));
    }
}
