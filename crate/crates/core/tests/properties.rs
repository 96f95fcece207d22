use std::collections::BTreeSet;
use std::sync::{Arc, OnceLock};

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use hallpi::constructors::catalog;
use hallpi::hall::{hall_classes, is_hall, HallMode, PrimeSet};
use hallpi::subgroup::{are_conjugate, conjugacy_prefilter, normalizer};
use hallpi::verify::CheckResult;
use hallpi::{Group, Limits, Permutation};

fn perm(n: usize) -> impl Strategy<Value = Permutation> {
    Just((0..n as u32).collect::<Vec<u32>>())
        .prop_shuffle()
        .prop_map(|v| Permutation::from_images(v).unwrap())
}

fn perms(n: usize, k: usize) -> impl Strategy<Value = Vec<Permutation>> {
    proptest::collection::vec(perm(n), k)
}

fn closure_size(gens: &[Permutation], n: usize) -> usize {
    let id = Permutation::identity(n);
    let mut seen: BTreeSet<Vec<u32>> = BTreeSet::from([id.images().to_vec()]);
    let mut todo = vec![id];
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

fn small_groups() -> &'static Vec<(String, Arc<Group>)> {
    static GROUPS: OnceLock<Vec<(String, Arc<Group>)>> = OnceLock::new();
    GROUPS.get_or_init(|| {
        catalog::sweep_groups(200)
            .into_iter()
            .map(|(s, _)| (s.to_string(), Arc::new(s.build().unwrap())))
            .collect()
    })
}

proptest! {
    #[test]
    fn composition_is_associative(v in perms(7, 3)) {
        let (a, b, c) = (&v[0], &v[1], &v[2]);
        prop_assert_eq!(a.compose(&b.compose(c).unwrap()).unwrap(), a.compose(b).unwrap().compose(c).unwrap());
    }

    #[test]
    fn inverse_and_conjugation(a in perm(8), x in perm(8)) {
        prop_assert!(a.compose(&a.inverse()).unwrap().is_identity());
        let expected = x.inverse().compose(&a).unwrap().compose(&x).unwrap();
        prop_assert_eq!(a.conjugate_by(&x), expected);
        prop_assert_eq!(a.pow(a.order().try_into().unwrap()), Permutation::identity(8));
    }

    #[test]
    fn cycle_notation_round_trips(a in perm(9)) {
        prop_assert_eq!(Permutation::from_cycles(&a.to_string(), 9).unwrap(), a);
    }

    #[test]
    fn order_matches_naive_closure(gens in (1usize..4).prop_flat_map(|k| perms(6, k))) {
        let g = Group::new(6, gens.clone()).unwrap();
        let size = closure_size(&gens, 6);
        prop_assert_eq!(g.order_u64(), Some(size as u64));
        let members = g.elements(1000).unwrap();
        prop_assert_eq!(members.len(), size);
        prop_assert!(members.iter().all(|m| g.contains(m).unwrap()));
    }

    #[test]
    fn membership_agrees_with_closure(gens in perms(5, 2), x in perm(5)) {
        let g = Group::new(5, gens.clone()).unwrap();
        let mut with_x = gens.clone();
        with_x.push(x.clone());
        let inside = closure_size(&with_x, 5) == closure_size(&gens, 5);
        prop_assert_eq!(g.contains(&x).unwrap(), inside);
    }

    #[test]
    fn prime_sets_round_trip(mask in 0u8..32, n in 1u64..100_000) {
        let primes: Vec<u64> = [2, 3, 5, 7, 11].iter().enumerate().filter(|(i, _)| mask & (1 << i) != 0).map(|(_, p)| *p).collect();
        let pi = PrimeSet::new(primes).unwrap();
        prop_assert_eq!(PrimeSet::parse(&pi.to_string().trim_matches(|c| c == '{' || c == '}')).unwrap(), pi.clone());
        let part = pi.part_u64(n);
        prop_assert_eq!(n % part, 0);
        prop_assert!(pi.is_pi_number(part));
        let rest = n / part;
        prop_assert!(pi.primes().iter().all(|p| rest % p != 0));
    }

    #[test]
    fn machine_lines_stay_parseable(note in ".{0,40}", instance in "[ -~]{0,20}") {
        let r = CheckResult::verdict_of("prop", instance, true).with_note(note);
        let line = r.machine_line();
        prop_assert!(!line.contains('\n'));
        for field in line.split(' ') {
            prop_assert_eq!(field.matches('=').count(), 1, "field {}", field);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    /// Hall classes are Hall, pairwise non-conjugate, of the right sizes, and
    /// every random conjugate of a representative lands in its class.
    #[test]
    fn hall_class_invariants(gi in any::<prop::sample::Index>(), si in any::<prop::sample::Index>(), seed in any::<u64>()) {
        let limits = Limits::default();
        let groups = small_groups();
        let (label, g) = &groups[gi.index(groups.len())];
        let subsets = PrimeSet::of(g.order()).subsets();
        let pi = &subsets[si.index(subsets.len())];
        let classes = hall_classes(g, pi, HallMode::Exhaustive, &limits).unwrap();
        if pi.primes().len() <= 1 {
            prop_assert_eq!(classes.len(), 1, "{} {}", label, pi);
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for (i, c) in classes.iter().enumerate() {
            prop_assert!(is_hall(g, &c.representative, pi));
            let n = normalizer(g, &c.representative, &limits).unwrap();
            prop_assert_eq!(&(g.order() / n.order()), &c.class_size);
            let x = g.random_element(&mut rng);
            let k = c.representative.conjugated_by(&x);
            let t = are_conjugate(g, &c.representative, &k, &limits).unwrap();
            prop_assert!(t.is_some_and(|t| t.verify() && g.contains(&t.element).unwrap()));
            for d in &classes[i + 1..] {
                prop_assert!(are_conjugate(g, &c.representative, &d.representative, &limits).unwrap().is_none());
            }
        }
    }

    #[test]
    fn prefilter_never_separates_conjugates(gi in any::<prop::sample::Index>(), gens in perms(6, 1), seed in any::<u64>()) {
        let groups = small_groups();
        let (_, g) = &groups[gi.index(groups.len())];
        let n = g.degree();
        // a cyclic subgroup of the group, moved by a random element
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let h = Group::new(n, vec![g.random_element(&mut rng)]).unwrap();
        let x = g.random_element(&mut rng);
        prop_assert!(conjugacy_prefilter(g, &h, &h.conjugated_by(&x)).is_none());
        // and by an element from outside, with the subgroup outside too
        if n == 6 {
            let outside = Group::new(6, gens).unwrap();
            let y = g.random_element(&mut rng);
            prop_assert!(conjugacy_prefilter(g, &outside, &outside.conjugated_by(&y)).is_none());
        }
    }
}
