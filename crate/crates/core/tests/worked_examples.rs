//! Small worked instances, each checked against a value computed by hand or
//! by a naive recomputation in this file.

use std::collections::BTreeSet;
use std::sync::Arc;

use hallpi::constructors::{direct_product, flag_stabilizer, parse_group_spec, GroupSpec};
use hallpi::hall::{
    class_product, hall_classes, induced_classes, is_class_invariant, is_hall, max_pi_subgroups, HallMode, PrimeSet,
};
use hallpi::subgroup::{are_conjugate, centralizer, generated, normal_subgroups, normalizer, quotient, sylow, Subgroup};
use hallpi::verify::{
    check_corollary1, check_lemma, check_theorem1, check_theorem2, LemmaId, LemmaInstance, NamedSubgroup, Verdict,
};
use hallpi::{classify_properties, Error, Group, Limits, Permutation, Tri};

fn p(text: &str, n: usize) -> Permutation {
    Permutation::from_cycles(text, n).unwrap()
}

fn group(spec: &str) -> Arc<Group> {
    Arc::new(parse_group_spec(spec).unwrap().build().unwrap())
}

fn pi(s: &str) -> PrimeSet {
    PrimeSet::parse(s).unwrap()
}

fn order(g: &Group) -> u64 {
    g.order_u64().unwrap()
}

/// Closure by repeated multiplication, independent of the stabilizer chain.
fn naive_order(gens: &[Permutation], degree: usize) -> usize {
    let mut seen: BTreeSet<Vec<u32>> = BTreeSet::new();
    let id = Permutation::identity(degree);
    let mut todo = vec![id.clone()];
    seen.insert(id.images().to_vec());
    while let Some(x) = todo.pop() {
        for g in gens {
            let y = x.compose(g).unwrap();
            if seen.insert(y.images().to_vec()) {
                todo.push(y);
            }
        }
    }
    seen.len()
}

#[test]
fn permutations() {
    assert_eq!(p("(1 2 3)", 3).order().to_string(), "3");
    assert!(p("", 5).is_identity());
    assert_eq!(p("(1 2)(3 4 5)", 5).order().to_string(), "6");
    let s = p("(1 2)", 3);
    assert!(s.compose(&s).unwrap().is_identity());
    // left to right: 1 -> 2 -> 3, 3 -> 3 -> 2, 2 -> 1 -> 1
    assert_eq!(s.compose(&p("(2 3)", 3)).unwrap(), p("(1 3 2)", 3));
}

#[test]
fn group_orders() {
    let s5 = Group::new(5, vec![p("(1 2)", 5), p("(1 2 3 4 5)", 5)]).unwrap();
    assert_eq!(order(&s5), 120);
    let a5 = [p("(1 2 3)", 5), p("(3 4 5)", 5)];
    assert_eq!(order(&Group::new(5, a5.to_vec()).unwrap()), naive_order(&a5, 5) as u64);
    assert_eq!(naive_order(&a5, 5), 60);
    assert_eq!(order(&Group::new(4, vec![]).unwrap()), 1);
    assert!(group("Sym(4)").contains(&p("(1 2 3 4)", 4)).unwrap());
    assert!(!group("Alt(4)").contains(&p("(1 2)", 4)).unwrap());
    assert_eq!(group("Sym(3)").elements(10).unwrap().len(), 6);
    assert!(matches!(group("Alt(5)").elements(30), Err(Error::CapExceeded { .. })));
}

#[test]
fn constructors() {
    assert_eq!(order(&group("Sym(4)")), 24);
    assert_eq!(order(&group("Alt(5)")), 60);
    let d6 = group("Dihedral(6)");
    assert_eq!((order(&d6), d6.degree()), (12, 6));
    let gl32 = group("GL(3,2)");
    assert_eq!((order(&gl32), gl32.degree()), (168, 7));
    let gl52 = group("GL(5,2)");
    assert_eq!((order(&gl52), gl52.degree()), (1024 * 9 * 5 * 7 * 31, 31));
    let sl23 = group("SL(2,3)");
    assert_eq!((order(&sl23), sl23.degree()), (24, 8));
    assert_eq!(order(&group("Direct(Sym(3),Cyclic(2))")), 12);
    assert_eq!(order(&group("Semidirect(GL(3,2),TransposeInverse)")), 336);
    assert_eq!(order(&group("Semidirect(GL(5,2),TransposeInverse)")), 19_998_720);
    assert!(matches!(parse_group_spec("Sym(-1)"), Err(Error::OutOfRange { .. } | Error::Parse { .. })));
    assert!(matches!(
        parse_group_spec("Semidirect(GL(5,2),TransposeInverse)").unwrap(),
        GroupSpec::Semidirect(..)
    ));
}

#[test]
fn flags() {
    let gl32 = group("GL(3,2)");
    let h = flag_stabilizer(&gl32, &[2, 1]).unwrap();
    assert_eq!(order(&h), 24);
    assert!(is_hall(&gl32, &h, &pi("2,3")));
    let gl52 = group("GL(5,2)");
    assert_eq!(order(&flag_stabilizer(&gl52, &[2, 1, 2]).unwrap()), 9216);
    assert_eq!(order(&flag_stabilizer(&gl32, &[3]).unwrap()), 168);
}

#[test]
fn subgroup_operations() {
    let limits = Limits::default();
    let s3 = group("Sym(3)");
    assert_eq!(order(&generated(&s3, &[p("(1 2)", 3)]).unwrap()), 2);
    assert!(generated(&s3, &[]).unwrap().is_trivial());
    let a4 = group("Alt(4)");
    let gens = [p("(1 2)(3 4)", 4), p("(1 3)(2 4)", 4), p("(1 2 3)", 4)];
    assert_eq!(order(&generated(&a4, &gens).unwrap()), 12);

    let s4 = group("Sym(4)");
    let c3 = Group::new(4, vec![p("(1 2 3)", 4)]).unwrap();
    assert_eq!(order(&normalizer(&s4, &c3, &limits).unwrap()), 6);
    let c3s = Group::new(3, vec![p("(1 2 3)", 3)]).unwrap();
    assert_eq!(order(&centralizer(&s3, &c3s, &limits).unwrap()), 3);
    assert_eq!(order(&sylow(&s4, 2, &limits).unwrap()), 8);
    assert_eq!(order(&sylow(&group("GL(3,2)"), 7, &limits).unwrap()), 7);
    assert!(sylow(&s4, 5, &limits).unwrap().is_trivial());

    let d1 = Group::new(4, vec![p("(1 2 3 4)", 4), p("(1 3)", 4)]).unwrap();
    let d2 = Group::new(4, vec![p("(1 3 2 4)", 4), p("(1 2)", 4)]).unwrap();
    assert!(are_conjugate(&s4, &d1, &d2, &limits).unwrap().unwrap().verify());
    assert!(are_conjugate(&s4, &d1, &d1, &limits).unwrap().unwrap().element.is_identity());

    let orders = |g: &Arc<Group>| -> Vec<u64> {
        normal_subgroups(g, &limits).unwrap().iter().map(|n| order(n)).collect()
    };
    assert_eq!(orders(&s4), vec![1, 4, 12, 24]);
    assert_eq!(orders(&group("Alt(5)")), vec![1, 60]);
    assert_eq!(orders(&group("Cyclic(6)")), vec![1, 2, 3, 6]);

    let v4 = Group::new(4, vec![p("(1 2)(3 4)", 4), p("(1 3)(2 4)", 4)]).unwrap();
    let (q, _) = quotient(&s4, &v4, &limits).unwrap();
    assert_eq!(order(&q), 6);
    assert!(q.generators().iter().any(|a| q.generators().iter().any(|b| a.compose(b).unwrap() != b.compose(a).unwrap())));
    assert_eq!(order(&quotient(&s4, &s4, &limits).unwrap().0), 1);
}

#[test]
fn pi_subgroups_and_hall_classes() {
    let limits = Limits::default();
    let a5 = group("Alt(5)");
    let orders = |cs: &[hallpi::SubgroupClass]| -> Vec<u64> {
        let mut v: Vec<u64> = cs.iter().map(|c| order(&c.representative)).collect();
        v.sort_unstable();
        v
    };
    assert_eq!(orders(&max_pi_subgroups(&a5, &pi("2,3"), &limits).unwrap()), vec![6, 12]);
    assert_eq!(orders(&max_pi_subgroups(&a5, &pi("3,5"), &limits).unwrap()), vec![3, 5]);
    let s3 = group("Sym(3)");
    assert_eq!(orders(&max_pi_subgroups(&s3, &pi("2,3"), &limits).unwrap()), vec![6]);

    let gl32 = group("GL(3,2)");
    let c = hall_classes(&gl32, &pi("2,3"), HallMode::Exhaustive, &limits).unwrap();
    assert_eq!(orders(&c), vec![24, 24]);
    let hat = group("Semidirect(GL(3,2),TransposeInverse)");
    assert!(hall_classes(&hat, &pi("2,3"), HallMode::Exhaustive, &limits).unwrap().is_empty());
    assert_eq!(orders(&hall_classes(&a5, &pi("2,3"), HallMode::Exhaustive, &limits).unwrap()), vec![12]);
    let gl52 = group("GL(5,2)");
    let flags = hall_classes(&gl52, &pi("2,3"), HallMode::CatalogCertified, &limits).unwrap();
    let tags: BTreeSet<&str> = flags.iter().map(|c| c.representative.tag().unwrap()).collect();
    assert_eq!(tags, BTreeSet::from(["flag(1,2,2)", "flag(2,1,2)", "flag(2,2,1)"]));

    let order6 = Group::new(5, vec![p("(1 2 3)", 5), p("(1 2)(4 5)", 5)]).unwrap();
    assert!(!is_hall(&a5, &order6, &pi("2,3")));
    assert!(is_hall(&a5, &a5, &pi("2,3,5")));
}

#[test]
fn properties() {
    let limits = Limits::default();
    let r = classify_properties(&group("Alt(5)"), &pi("2,3"), &limits);
    assert_eq!((r.e_holds, r.c_holds, r.d_holds), (Tri::Yes, Tri::Yes, Tri::No));
    assert_eq!(order(r.uncovered.as_ref().unwrap()), 6);
    let r = classify_properties(&group("Sym(4)"), &pi("2,3,5"), &limits);
    assert_eq!((r.e_holds, r.c_holds, r.d_holds, r.k_pi), (Tri::Yes, Tri::Yes, Tri::Yes, Some(1)));
    let r = classify_properties(&group("Semidirect(GL(5,2),TransposeInverse)"), &pi("2,3"), &limits);
    assert_eq!((r.c_holds, r.k_pi), (Tri::Yes, Some(1)));
    assert!(r.is_conditional());
}

#[test]
fn induced_and_products() {
    let limits = Limits::default();
    let hat = group("Semidirect(GL(5,2),TransposeInverse)");
    let a = Subgroup::new(hat.clone(), (*hat.catalog().unwrap().designated_normal().unwrap()).clone()).unwrap();
    let ind = induced_classes(&hat, &a, &pi("2,3"), &limits).unwrap();
    assert_eq!((ind.k_pi_g(), ind.k_pi_a()), (1, 3));
    assert_eq!(ind.classes[0].representative.tag(), Some("flag(2,1,2)"));

    let s4 = group("Sym(4)");
    let a4 = Subgroup::new(s4.clone(), (*group("Alt(4)")).clone()).unwrap();
    let ind = induced_classes(&s4, &a4, &pi("2"), &limits).unwrap();
    assert_eq!(ind.k_pi_g(), 1);
    assert_eq!(order(&ind.classes[0].representative), 4);
    let whole = Subgroup::whole(&s4);
    assert_eq!(induced_classes(&s4, &whole, &pi("2,3"), &limits).unwrap().k_pi_g(), 1);

    // GL(3,2) x GL(3,2): 2 x 2 product classes
    let gl = group("GL(3,2)");
    let d = direct_product(&gl, &gl);
    let a = Arc::new(d.group.clone());
    let (left, right) = (Arc::new(d.left.clone()), Arc::new(d.right.clone()));
    let p23 = pi("2,3");
    let cl = hall_classes(&left, &p23, HallMode::Exhaustive, &limits).unwrap();
    let cr = hall_classes(&right, &p23, HallMode::Exhaustive, &limits).unwrap();
    let mut products = Vec::new();
    for x in &cl {
        for y in &cr {
            products.push(class_product(&[(left.clone(), x.clone()), (right.clone(), y.clone())], &a, &limits).unwrap());
        }
    }
    let all = hall_classes(&a, &p23, HallMode::Exhaustive, &limits).unwrap();
    assert_eq!((products.len(), all.len()), (4, 4));
    for i in 0..4 {
        assert!(is_hall(&a, &products[i].representative, &p23));
        for j in i + 1..4 {
            assert!(are_conjugate(&a, &products[i].representative, &products[j].representative, &limits)
                .unwrap()
                .is_none());
        }
    }
    let single = &hall_classes(&group("Sym(4)"), &pi("2"), HallMode::Exhaustive, &limits).unwrap()[0];
    assert!(is_class_invariant(&group("Sym(4)"), single, &limits).unwrap());
}

#[test]
fn verification_checks() {
    let limits = Limits::default();
    let hat = group("Semidirect(GL(5,2),TransposeInverse)");
    let a = NamedSubgroup::new("GL(5,2)", hat.catalog().unwrap().designated_normal().unwrap());
    let rs = hallpi::verify::check_theorem1_on(&hat, "G^", &pi("2,3"), &[a], &limits, 0);
    let main = rs.iter().find(|r| r.check_id == "theorem1").unwrap();
    assert_eq!(main.verdict, Verdict::Pass);
    assert!(main.is_conditional());
    let s4 = group("Sym(4)");
    let trivial = NamedSubgroup::new("1", Arc::new(Group::trivial(4)));
    let rs = hallpi::verify::check_theorem1_on(&s4, "Sym(4)", &pi("2"), &[trivial], &limits, 0);
    assert_eq!(rs[0].verdict, Verdict::Pass);

    let s3 = group("Sym(3)");
    let a3 = NamedSubgroup::new("Alt(3)", group("Alt(3)"));
    assert_eq!(check_corollary1(&s3, "Sym(3)", &a3, &pi("3"), &limits).verdict, Verdict::Pass);
    let hat3 = group("Semidirect(GL(3,2),TransposeInverse)");
    let a = NamedSubgroup::new("GL(3,2)", hat3.catalog().unwrap().designated_normal().unwrap());
    assert_eq!(check_corollary1(&hat3, "G^", &a, &pi("2,3"), &limits).verdict, Verdict::SkippedPrecondition);

    let psl27 = group("PSL(2,7)");
    let rs = check_theorem2(&psl27, "PSL(2,7)", &limits);
    assert!(rs.iter().all(|r| r.verdict == Verdict::Pass));
    assert!(rs.iter().any(|r| r.instance.contains("pi={2,3}") && r.note.contains("k=2")));
    assert_eq!(check_theorem2(&s4, "Sym(4)", &limits)[0].verdict, Verdict::SkippedPrecondition);
    for r in check_theorem1(&group("Alt(5)"), "Alt(5)", &pi("2,3"), &limits, 0) {
        assert_ne!(r.verdict, Verdict::Fail);
    }

    // Sym(5) x Sym(5) acting trivially on the factors of Alt(5) x Alt(5)
    let (s5, a5) = (group("Sym(5)"), group("Alt(5)"));
    let g = Arc::new(direct_product(&s5, &s5).group);
    let a = direct_product(&a5, &a5);
    let p23 = pi("2,3");
    let h = hall_classes(&g, &p23, HallMode::Exhaustive, &limits).unwrap()[0].representative.group().clone();
    let inst = LemmaInstance {
        a: Some(NamedSubgroup::new("Alt(5)xAlt(5)", Arc::new(a.group.clone()))),
        h: Some(NamedSubgroup::new("H", h)),
        factors: vec![Arc::new(a.left.clone()), Arc::new(a.right.clone())],
        ..LemmaInstance::new("Sym(5)xSym(5)", g, p23)
    };
    let r = check_lemma(LemmaId::TrivAct, &inst, &limits);
    assert_eq!(r.verdict, Verdict::Pass, "{}", r.note);
}
