use std::sync::Arc;
use std::time::Instant;

use num_bigint::BigUint;

use super::checks::{check_theorem1_on, hall_of, NamedSubgroup};
use super::lemmas::{check_lemma, LemmaId, LemmaInstance};
use super::{arc, CheckResult, Witness};
use crate::constructors::{self, CatalogEntry, GroupSpec};
use crate::error::Result;
use crate::group::Group;
use crate::hall::{
    classify_properties_with, hall_classes, is_hall, ClassifyOptions, HallMode, PrimeSet, SubgroupClass, Tri,
};
use crate::limits::Limits;
use crate::subgroup::{self, conjugacy, Conjugacy, NonConjugacyCertificate};

/// Runs Example 1 (`GL(3,2)`) or Example 2 (`GL(5,2)`) with `π = {2,3}`.
pub fn run_example(which: u8, limits: &Limits, seed: u64) -> Vec<CheckResult> {
    run_example_with(which, &PrimeSet::from_primes([2, 3]), limits, seed)
}

/// As [`run_example`] with another `π`. Only `π ∩ π(G) = {2,3}` reproduces
/// the example; `π ⊇ π(G)` checks that `G` is its own Hall subgroup and any
/// other `π` is skipped.
pub fn run_example_with(which: u8, pi: &PrimeSet, limits: &Limits, seed: u64) -> Vec<CheckResult> {
    let id = format!("example{which}");
    let n = match which {
        1 => 3,
        2 => 5,
        _ => return vec![CheckResult::skipped(id, "-", "examples are numbered 1 and 2")],
    };
    let g = match GroupSpec::gl(n, 2).build_with(limits) {
        Ok(g) => arc(g),
        Err(e) => return vec![CheckResult::from_error(id, "-", &e)],
    };
    let primes = PrimeSet::of(g.order());
    let eff = pi.intersection(&primes);
    let mut out = if primes.is_subset(pi) {
        vec![whole_group_check(&id, &g, pi, limits)]
    } else if eff == PrimeSet::from_primes([2, 3]) {
        let run = if which == 1 { example1(&g, &eff, limits) } else { example2(&g, &eff, limits, seed) };
        run.unwrap_or_else(|e| vec![CheckResult::from_error(id.clone(), format!("GL({n},2)"), &e)])
    } else {
        vec![CheckResult::skipped(id, format!("pi={pi}"), "the example is stated for pi={2,3}")]
    };
    out.sort_by(|a, b| a.check_id.cmp(&b.check_id).then_with(|| a.instance.cmp(&b.instance)));
    out
}

fn timed(f: impl FnOnce() -> Result<CheckResult>, id: &str, inst: &str) -> CheckResult {
    let t = Instant::now();
    let mut r = f().unwrap_or_else(|e| CheckResult::from_error(id, inst, &e));
    r.elapsed = t.elapsed();
    r
}

fn whole_group_check(id: &str, g: &Arc<Group>, pi: &PrimeSet, limits: &Limits) -> CheckResult {
    let inst = format!("pi={pi}");
    timed(
        || {
            let c = hall_of(g, pi, limits)?;
            let ok = c.len() == 1 && c[0].order() == g.order();
            let r = CheckResult::verdict_of(format!("{id}.whole_group"), &inst, ok)
                .with_note(format!("k={} order={}", c.len(), g.order()));
            Ok(c.iter().fold(r, |r, x| r.with_witness(Witness::subgroup("Hall", &x.representative))))
        },
        id,
        &inst,
    )
}

fn check(id: &str, inst: &str, ok: bool, note: String) -> CheckResult {
    CheckResult::verdict_of(id, inst, ok).with_note(note)
}

fn example1(g: &Arc<Group>, pi: &PrimeSet, limits: &Limits) -> Result<Vec<CheckResult>> {
    let inst = "G=GL(3,2);pi={2,3}";
    let mut out = Vec::new();
    out.push(check(
        "example1.order",
        inst,
        g.order() == &BigUint::from(168u32),
        format!("|G|={}", g.order()),
    ));
    let t = Instant::now();
    let classes = hall_classes(g, pi, HallMode::Exhaustive, limits)?;
    let mut r = check("example1.classes", inst, classes.len() == 2, format!("k={}", classes.len()));
    if classes.len() >= 2 {
        if let Conjugacy::NotConjugate(cert) = conjugacy(g, &classes[0].representative, &classes[1].representative, limits)? {
            r = r.with_note(format!("k={} certificate={}", classes.len(), certificate_text(&cert)));
        }
    }
    for c in &classes {
        r = r.with_witness(Witness::subgroup(format!("H {}", c.class_size), &c.representative));
    }
    r.elapsed = t.elapsed();
    out.push(r);
    let orders: Vec<String> = classes.iter().map(|c| c.order().to_string()).collect();
    out.push(check(
        "example1.rep_orders",
        inst,
        classes.iter().all(|c| c.order() == &BigUint::from(24u32)),
        format!("orders={}", orders.join(",")),
    ));
    let mut sizes = Vec::new();
    for c in &classes {
        sizes.push(subgroup::normalizer(g, &c.representative, limits)?.order().clone());
    }
    out.push(check(
        "example1.self_normalizing",
        inst,
        sizes.iter().all(|s| s == &BigUint::from(24u32)),
        format!("|N_G(H)|={sizes:?}"),
    ));
    let catalog = hall_classes(g, pi, HallMode::CatalogCertified, limits)?;
    let matched = matching(g, &classes, &catalog, limits)?;
    out.push(
        check(
            "example1.catalog_agrees",
            inst,
            matched,
            format!("exhaustive={} catalog={}", classes.len(), catalog.len()),
        )
        .with_assumptions(catalog.iter().flat_map(|c| c.assumptions.iter())),
    );
    let hat = arc(GroupSpec::transpose_inverse(GroupSpec::gl(3, 2)).build_with(limits)?);
    let hinst = "G^=GL(3,2):<iota>;pi={2,3}";
    out.push(check(
        "example1.hat_order",
        hinst,
        hat.order() == &BigUint::from(336u32),
        format!("|G^|={}", hat.order()),
    ));
    let normal = hat.catalog().and_then(CatalogEntry::designated_normal).expect("designated normal subgroup");
    let mut hat_sizes = Vec::new();
    let mut images = Vec::new();
    for dims in [[1, 2], [2, 1]] {
        let h = constructors::flag_stabilizer(&normal, &dims)?;
        let n_hat = subgroup::normalizer(&hat, &h, limits)?;
        let n_g = subgroup::normalizer(&normal, &h, limits)?;
        hat_sizes.push((n_hat.order().clone(), n_g.order().clone()));
        images.push(h);
    }
    out.push(check(
        "example1.hat_normalizers",
        hinst,
        hat_sizes.iter().all(|(a, b)| a == &BigUint::from(24u32) && b == &BigUint::from(24u32)),
        format!("(|N_G^(H)|,|N_G(H)|)={hat_sizes:?}"),
    ));
    let iota = match hat.catalog() {
        Some(CatalogEntry::TransposeInverse { iota, .. }) => iota.clone(),
        _ => unreachable!("built as a transpose-inverse extension"),
    };
    let swapped = images[0].conjugated_by(&iota);
    let r = match conjugacy(&normal, &swapped, &images[1], limits)? {
        Conjugacy::Conjugate(t) => check(
            "example1.iota_swaps",
            hinst,
            t.verify(),
            "iota maps the point stabilizer class to the line stabilizer class".into(),
        )
        .with_witness(Witness::transporter("H1^iota to H2", t)),
        Conjugacy::NotConjugate(_) => check("example1.iota_swaps", hinst, false, "classes not swapped".into())
            .with_witness(Witness::subgroup("H1^iota", &swapped))
            .with_witness(Witness::subgroup("H2", &images[1])),
    };
    out.push(r);
    let t = Instant::now();
    let hat_classes = hall_classes(&hat, pi, HallMode::Exhaustive, limits)?;
    let mut r = check(
        "example1.hat_not_e",
        hinst,
        hat_classes.is_empty(),
        format!("k(G^)={} pi-part={}", hat_classes.len(), pi.part(hat.order())),
    );
    for c in &hat_classes {
        r = r.with_witness(Witness::subgroup("unexpected Hall", &c.representative));
    }
    r.elapsed = t.elapsed();
    out.push(r);
    let full = PrimeSet::from_primes([2, 3, 7]);
    out.push(whole_group_check("example1", g, &full, limits));
    Ok(out)
}

fn certificate_text(c: &NonConjugacyCertificate) -> String {
    match c {
        NonConjugacyCertificate::Order => "order".into(),
        NonConjugacyCertificate::OrbitSignature(a, b) => format!("orbits{a:?}!=orbits{b:?}"),
        NonConjugacyCertificate::ElementOrders => "element-orders".into(),
        NonConjugacyCertificate::ExhaustiveSearch => "exhaustive-search".into(),
    }
}

/// Every class in `a` is conjugate to exactly one class in `b` and back.
fn matching(g: &Arc<Group>, a: &[SubgroupClass], b: &[SubgroupClass], limits: &Limits) -> Result<bool> {
    if a.len() != b.len() {
        return Ok(false);
    }
    let mut used = vec![false; b.len()];
    for x in a {
        let mut hit = None;
        for (j, y) in b.iter().enumerate() {
            if !used[j] && matches!(conjugacy(g, &x.representative, &y.representative, limits)?, Conjugacy::Conjugate(_)) {
                hit = Some(j);
                break;
            }
        }
        match hit {
            Some(j) => used[j] = true,
            None => return Ok(false),
        }
    }
    Ok(true)
}

fn multiset(sig: &[Vec<usize>]) -> Vec<usize> {
    let mut v: Vec<usize> = sig.iter().flatten().copied().collect();
    v.sort_unstable();
    v
}

fn example2(g: &Arc<Group>, pi: &PrimeSet, limits: &Limits, seed: u64) -> Result<Vec<CheckResult>> {
    let inst = "G=GL(5,2);pi={2,3}";
    let mut out = Vec::new();
    out.push(check(
        "example2.order",
        inst,
        g.order() == &BigUint::from(9_999_360u32),
        format!("|G|={}", g.order()),
    ));
    let t = Instant::now();
    let classes = hall_classes(g, pi, HallMode::CatalogCertified, limits)?;
    let assumptions: Vec<String> = classes.iter().flat_map(|c| c.assumptions.iter().cloned()).collect();
    let tags: Vec<&str> = classes.iter().map(|c| c.representative.tag().unwrap_or("?")).collect();
    let hall_ok = classes.len() == 3
        && classes
            .iter()
            .all(|c| is_hall(g, &c.representative, pi) && c.order() == &BigUint::from(9216u32));
    let mut r = check(
        "example2.flag_classes",
        inst,
        hall_ok,
        format!("k={} classes={}", classes.len(), tags.join(",")),
    )
    .with_assumptions(&assumptions);
    for c in &classes {
        r = r.with_witness(Witness::subgroup(c.representative.tag().unwrap_or("H"), &c.representative));
    }
    r.elapsed = t.elapsed();
    out.push(r);
    // pairwise non-conjugacy, certified by orbit signatures
    let mut certs = Vec::new();
    let mut all_sig = true;
    for i in 0..classes.len() {
        for j in i + 1..classes.len() {
            match conjugacy(g, &classes[i].representative, &classes[j].representative, limits)? {
                Conjugacy::NotConjugate(NonConjugacyCertificate::OrbitSignature(a, b)) => {
                    certs.push(format!("{:?}!={:?}", multiset(&a), multiset(&b)))
                }
                _ => all_sig = false,
            }
        }
    }
    let mut signatures: Vec<Vec<usize>> = classes
        .iter()
        .map(|c| multiset(&subgroup::orbit_signature(g, &c.representative)))
        .collect();
    signatures.sort();
    let expected = vec![vec![1, 6, 24], vec![3, 4, 24], vec![3, 12, 16]];
    out.push(
        check(
            "example2.non_conjugate",
            inst,
            all_sig && signatures == expected,
            format!("signatures={signatures:?} certificates={}", certs.join(";")),
        )
        .with_assumptions(&assumptions),
    );
    // the action of iota on the three classes
    let aut = constructors::transpose_inverse_automorphism(5, 2)?;
    let mut images = Vec::new();
    let mut witnesses = Vec::new();
    for c in &classes {
        let img = aut.apply_group(&c.representative);
        let mut hit = None;
        for (j, d) in classes.iter().enumerate() {
            if let Conjugacy::Conjugate(t) = conjugacy(g, &img, &d.representative, limits)? {
                hit = Some(j);
                witnesses.push(Witness::transporter(
                    format!("{}^iota to {}", c.representative.tag().unwrap_or("H"), d.representative.tag().unwrap_or("H")),
                    t,
                ));
                break;
            }
        }
        images.push(hit);
    }
    let pos = |tag: &str| classes.iter().position(|c| c.representative.tag() == Some(tag));
    let (p122, p212, p221) = (pos("flag(1,2,2)"), pos("flag(2,1,2)"), pos("flag(2,2,1)"));
    let iota_ok = match (p122, p212, p221) {
        (Some(a), Some(b), Some(c)) => images[a] == Some(c) && images[b] == Some(b) && images[c] == Some(a),
        _ => false,
    };
    let mut r = check(
        "example2.iota_action",
        inst,
        iota_ok,
        "iota fixes the (2,1,2) class and swaps the (1,2,2) and (2,2,1) classes".into(),
    );
    for w in witnesses {
        r = r.with_witness(w);
    }
    out.push(r.with_assumptions(&assumptions));
    let hat = arc(GroupSpec::transpose_inverse(GroupSpec::gl(5, 2)).build_with(limits)?);
    let hinst = "G^=GL(5,2):<iota>;pi={2,3}";
    out.push(check(
        "example2.hat_order",
        hinst,
        hat.order() == &BigUint::from(19_998_720u32),
        format!("|G^|={}", hat.order()),
    ));
    let t = Instant::now();
    let h1 = constructors::flag_stabilizer(&hat, &[2, 1, 2])?;
    let n1 = subgroup::normalizer(&hat, &h1, limits)?;
    let mut r = check(
        "example2.normalizer_hall",
        hinst,
        n1.order() == &BigUint::from(18_432u32) && is_hall(&hat, &n1, pi),
        format!("|N_G^(H1)|={} pi-part={}", n1.order(), pi.part(hat.order())),
    )
    .with_witness(Witness::subgroup("N_G^(H1)", &n1));
    r.elapsed = t.elapsed();
    out.push(r);
    let t = Instant::now();
    let hat_classes = hall_classes(&hat, pi, HallMode::CatalogCertified, limits)?;
    let same = match hat_classes.first() {
        Some(c) => matches!(conjugacy(&hat, &c.representative, &n1, limits)?, Conjugacy::Conjugate(_)),
        None => false,
    };
    let mut r = check(
        "example2.hat_classes",
        hinst,
        hat_classes.len() == 1 && same,
        format!("k(G^)={}", hat_classes.len()),
    )
    .with_assumptions(hat_classes.iter().flat_map(|c| c.assumptions.iter()));
    r.elapsed = t.elapsed();
    out.push(r);
    let opts = ClassifyOptions {
        mode: HallMode::CatalogCertified,
        decide_d: false,
        seed,
        ..ClassifyOptions::default()
    };
    let t = Instant::now();
    let rg = classify_properties_with(g, pi, limits, &opts);
    let rh = classify_properties_with(&hat, pi, limits, &opts);
    let mut r = check(
        "example2.properties",
        inst,
        rg.c_holds == Tri::No && rh.c_holds == Tri::Yes && rh.is_conditional(),
        format!("C(G)={} C(G^)={} conditional={}", rg.c_holds, rh.c_holds, rh.is_conditional()),
    )
    .with_assumptions(&rh.assumptions);
    for t in &rh.transporters {
        r = r.with_witness(Witness::transporter("G^ Hall to a random conjugate", t.clone()));
    }
    r.elapsed = t.elapsed();
    out.push(r);
    let normal = hat.catalog().and_then(CatalogEntry::designated_normal).expect("designated normal subgroup");
    let named_a = NamedSubgroup::new("GL(5,2)", normal);
    let lemma = LemmaInstance {
        a: Some(named_a.clone()),
        h: Some(NamedSubgroup::new("N_G^(H1)", n1.group().clone())),
        ..LemmaInstance::new("GL(5,2):<iota>", hat.clone(), pi.clone())
    };
    let t = Instant::now();
    let mut r = check_lemma(LemmaId::Crit, &lemma, limits);
    r.elapsed = t.elapsed();
    out.push(r);
    let t = Instant::now();
    let mut rs = check_theorem1_on(&hat, "GL(5,2):<iota>", pi, &[named_a], limits, seed);
    if let Some(r) = rs.first_mut() {
        r.elapsed = t.elapsed();
    }
    out.extend(rs);
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::verify::Verdict;

    #[test]
    fn example1_passes() {
        let rs = run_example(1, &Limits::default(), 0);
        assert!(rs.len() >= 6);
        for r in &rs {
            assert_eq!(r.verdict, Verdict::Pass, "{}", r.text_line());
        }
    }

    #[test]
    fn other_pi() {
        let limits = Limits::default();
        let rs = run_example_with(1, &PrimeSet::from_primes([2, 3, 7]), &limits, 0);
        assert_eq!(rs.len(), 1);
        assert_eq!(rs[0].verdict, Verdict::Pass);
        let rs = run_example_with(1, &PrimeSet::from_primes([2]), &limits, 0);
        assert_eq!(rs[0].verdict, Verdict::SkippedPrecondition);
        assert_eq!(run_example(3, &limits, 0)[0].verdict, Verdict::SkippedPrecondition);
    }
}
