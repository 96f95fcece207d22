//! Subgroups of a fixed parent: generation, normalizers, centralizers,
//! conjugacy with transporters, Sylow subgroups, intersections, normal
//! subgroups and quotients.
//!
//! Small parents (see [`Limits::brute_force_order`]) go through the element
//! table; larger ones through backtrack search.

use std::collections::BTreeMap;
use std::ops::Deref;
use std::sync::Arc;

use fixedbitset::FixedBitSet;
use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};
use rustc_hash::FxHashSet;

use crate::error::{Error, Result};
use crate::group::Group;
use crate::hom::Homomorphism;
use crate::limits::Limits;
use crate::perm::Permutation;
use crate::search::{self, Budget, CentralizerProperty, ConjugateProperty, MemberProperty};
use crate::table::{minimal_generators, ElemId, ElementTable, SubTable};

/// A subgroup together with the group it lives in.
#[derive(Clone)]
pub struct Subgroup {
    parent: Arc<Group>,
    group: Arc<Group>,
    tag: Option<String>,
}

impl Subgroup {
    /// Wraps `group` as a subgroup of `parent`, checking every generator.
    pub fn new(parent: Arc<Group>, group: Group) -> Result<Self> {
        if group.degree() != parent.degree() {
            return Err(Error::DegreeMismatch {
                expected: parent.degree(),
                found: group.degree(),
            });
        }
        if !parent.contains_group(&group) {
            return Err(Error::NotInParent);
        }
        Ok(Self::new_unchecked(parent, group))
    }

    pub(crate) fn new_unchecked(parent: Arc<Group>, group: Group) -> Self {
        Subgroup {
            parent,
            group: Arc::new(group),
            tag: None,
        }
    }

    pub fn whole(parent: &Arc<Group>) -> Self {
        Subgroup {
            parent: parent.clone(),
            group: parent.clone(),
            tag: None,
        }
    }

    pub fn trivial(parent: &Arc<Group>) -> Self {
        Self::new_unchecked(parent.clone(), Group::trivial(parent.degree()))
    }

    pub fn with_tag(mut self, tag: impl Into<String>) -> Self {
        self.tag = Some(tag.into());
        self
    }

    pub fn parent(&self) -> &Arc<Group> {
        &self.parent
    }

    pub fn group(&self) -> &Arc<Group> {
        &self.group
    }

    pub fn tag(&self) -> Option<&str> {
        self.tag.as_deref()
    }

    /// Index in the parent.
    pub fn index(&self) -> BigUint {
        self.parent.order() / self.group.order()
    }

    /// `x^-1 H x`, with `x` in the parent.
    pub fn conjugate(&self, x: &Permutation) -> Subgroup {
        Subgroup {
            parent: self.parent.clone(),
            group: Arc::new(self.group.conjugated_by(x)),
            tag: self.tag.clone(),
        }
    }

    pub fn is_normal(&self) -> bool {
        is_normalized_by(&self.group, self.parent.generators())
    }

    /// The same subgroup seen inside another parent that contains it.
    pub fn reparent(&self, parent: Arc<Group>) -> Result<Subgroup> {
        let mut s = Subgroup::new(parent, (*self.group).clone())?;
        s.tag = self.tag.clone();
        Ok(s)
    }
}

impl Deref for Subgroup {
    type Target = Group;

    fn deref(&self) -> &Group {
        &self.group
    }
}

impl std::fmt::Debug for Subgroup {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "Subgroup(order {} in order {}{})",
            self.group.order(),
            self.parent.order(),
            self.tag.as_deref().map(|t| format!(", {t}")).unwrap_or_default()
        )
    }
}

pub(crate) fn is_normalized_by(h: &Group, gens: &[Permutation]) -> bool {
    gens.iter()
        .all(|x| h.generators().iter().all(|g| h.contains_unchecked(&g.conjugate_by(x))))
}

/// An element conjugating `source` exactly onto `target`.
#[derive(Clone, Debug)]
pub struct Transporter {
    pub element: Permutation,
    pub source: Arc<Group>,
    pub target: Arc<Group>,
}

impl Transporter {
    /// Re-checks the claim generator by generator, in both directions.
    pub fn verify(&self) -> bool {
        let x = &self.element;
        let xi = x.inverse();
        self.source.order() == self.target.order()
            && self
                .source
                .generators()
                .iter()
                .all(|g| self.target.contains_unchecked(&g.conjugate_by(x)))
            && self
                .target
                .generators()
                .iter()
                .all(|g| self.source.contains_unchecked(&g.conjugate_by(&xi)))
    }

    pub fn inverse(&self) -> Transporter {
        Transporter {
            element: self.element.inverse(),
            source: self.target.clone(),
            target: self.source.clone(),
        }
    }

    /// `self` followed by `next`; requires `self.target == next.source`.
    pub fn then(&self, next: &Transporter) -> Transporter {
        Transporter {
            element: self.element.then(&next.element),
            source: self.source.clone(),
            target: next.target.clone(),
        }
    }
}

/// Smallest subgroup of `parent` containing `elements`.
pub fn generated(parent: &Arc<Group>, elements: &[Permutation]) -> Result<Subgroup> {
    for e in elements {
        if !parent.contains(e)? {
            return Err(Error::NotInParent);
        }
    }
    let group = Group::new(parent.degree(), elements.to_vec())?;
    Ok(Subgroup::new_unchecked(parent.clone(), group))
}

fn small_parent(parent: &Group, limits: &Limits) -> Option<Arc<ElementTable>> {
    match parent.order_u64() {
        Some(n) if n <= limits.brute_force_order => parent.table(limits.exhaustive_order).ok(),
        _ => None,
    }
}

pub(crate) fn table_group(table: &ElementTable, sub: &SubTable, degree: usize) -> Group {
    Group::new(degree, sub.perms(table)).expect("same degree")
}

/// `N_parent(H)`. `H` need not lie in the parent.
pub fn normalizer(parent: &Arc<Group>, h: &Group, limits: &Limits) -> Result<Subgroup> {
    if let Some(table) = small_parent(parent, limits) {
        if parent.contains_group(h) {
            let hs = table.subgroup_of(h.generators());
            let n = hs.normalizer_in(&table, &table.whole());
            return Ok(Subgroup::new_unchecked(parent.clone(), table_group(&table, &n, parent.degree())));
        }
    }
    let prop = ConjugateProperty::new(h, h);
    let known = if parent.contains_group(h) {
        h.generators().to_vec()
    } else {
        Vec::new()
    };
    let n = search::find_subgroup(parent, &prop, known, &mut Budget::new(limits.node_cap))?;
    Ok(Subgroup::new_unchecked(parent.clone(), n))
}

/// `C_parent(H)`.
pub fn centralizer(parent: &Arc<Group>, h: &Group, limits: &Limits) -> Result<Subgroup> {
    if let Some(table) = small_parent(parent, limits) {
        let gens: Vec<&Permutation> = h.generators().iter().collect();
        let elems: Vec<ElemId> = (0..table.len() as ElemId)
            .filter(|&x| {
                let px = table.perm(x);
                gens.iter().all(|g| g.then(px) == px.then(g))
            })
            .collect();
        let generators = minimal_generators(&table, &elems);
        let perms: Vec<Permutation> = generators.iter().map(|&g| table.perm(g).clone()).collect();
        return Ok(Subgroup::new_unchecked(parent.clone(), Group::new(parent.degree(), perms)?));
    }
    let prop = CentralizerProperty::new(h.generators(), &parent.base(), parent.degree());
    let c = search::find_subgroup(parent, &prop, Vec::new(), &mut Budget::new(limits.node_cap))?;
    Ok(Subgroup::new_unchecked(parent.clone(), c))
}

/// For each orbit of `ambient` (by least point), the sorted sizes of its
/// nonempty intersections with the orbits of `h`. Conjugation by an element
/// of `ambient` preserves this, whether or not `h` lies in `ambient`.
pub fn orbit_signature(ambient: &Group, h: &Group) -> Vec<Vec<usize>> {
    let outer = ambient.orbits();
    let inner = h.orbits();
    let mut owner = vec![0usize; ambient.degree()];
    for (k, o) in outer.iter().enumerate() {
        for &x in o {
            owner[x as usize] = k;
        }
    }
    let mut sig = vec![Vec::new(); outer.len()];
    for o in &inner {
        let mut counts: BTreeMap<usize, usize> = BTreeMap::new();
        for &x in o {
            *counts.entry(owner[x as usize]).or_insert(0) += 1;
        }
        for (k, c) in counts {
            sig[k].push(c);
        }
    }
    for s in &mut sig {
        s.sort_unstable();
    }
    sig
}

/// Histogram of element orders, for groups of at most `cap` elements.
pub(crate) fn element_order_histogram(h: &Group, cap: u64) -> Option<BTreeMap<u64, u64>> {
    if h.order_u64()? > cap {
        return None;
    }
    let mut hist = BTreeMap::new();
    h.for_each_element(|g| *hist.entry(g.order_u64()).or_insert(0) += 1);
    Some(hist)
}

/// Why two subgroups were declared non-conjugate without a search.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum NonConjugacyCertificate {
    Order,
    OrbitSignature(Vec<Vec<usize>>, Vec<Vec<usize>>),
    ElementOrders,
    /// The backtrack search ran to completion without a transporter.
    ExhaustiveSearch,
}

/// Result of a conjugacy test.
#[derive(Clone, Debug)]
pub enum Conjugacy {
    Conjugate(Transporter),
    NotConjugate(NonConjugacyCertificate),
}

/// Cheap invariants that differ only for non-conjugate subgroups.
pub fn conjugacy_prefilter(parent: &Group, h: &Group, k: &Group) -> Option<NonConjugacyCertificate> {
    if h.order() != k.order() {
        return Some(NonConjugacyCertificate::Order);
    }
    let (sh, sk) = (orbit_signature(parent, h), orbit_signature(parent, k));
    if sh != sk {
        return Some(NonConjugacyCertificate::OrbitSignature(sh, sk));
    }
    if let (Some(a), Some(b)) = (element_order_histogram(h, 10_000), element_order_histogram(k, 10_000)) {
        if a != b {
            return Some(NonConjugacyCertificate::ElementOrders);
        }
    }
    None
}

/// Decides whether some element of `parent` conjugates `h` onto `k`.
pub fn conjugacy(parent: &Arc<Group>, h: &Group, k: &Group, limits: &Limits) -> Result<Conjugacy> {
    if let Some(cert) = conjugacy_prefilter(parent, h, k) {
        return Ok(Conjugacy::NotConjugate(cert));
    }
    let wrap = |element: Permutation| Transporter {
        element,
        source: Arc::new(h.clone()),
        target: Arc::new(k.clone()),
    };
    if h.contains_group(k) {
        return Ok(Conjugacy::Conjugate(wrap(parent.identity())));
    }
    let found = match small_parent(parent, limits) {
        Some(table) if parent.contains_group(h) && parent.contains_group(k) => {
            let hs = table.subgroup_of(h.generators());
            let ks = table.subgroup_of(k.generators());
            hs.transporter_to(&table, &table.whole(), &ks)
                .map(|x| table.perm(x).clone())
        }
        _ => {
            let prop = ConjugateProperty::new(h, k);
            search::find_element(parent, &prop, &mut Budget::new(limits.node_cap))?
        }
    };
    Ok(match found {
        Some(x) => {
            let t = wrap(x);
            debug_assert!(t.verify());
            Conjugacy::Conjugate(t)
        }
        None => Conjugacy::NotConjugate(NonConjugacyCertificate::ExhaustiveSearch),
    })
}

/// A verified transporter when `h` and `k` are conjugate in `parent`.
/// Running out of budget is an error, never "not conjugate".
pub fn are_conjugate(parent: &Arc<Group>, h: &Group, k: &Group, limits: &Limits) -> Result<Option<Transporter>> {
    Ok(match conjugacy(parent, h, k, limits)? {
        Conjugacy::Conjugate(t) => Some(t),
        Conjugacy::NotConjugate(_) => None,
    })
}

/// `H ∩ A`.
pub fn intersection(h: &Group, a: &Group, limits: &Limits) -> Result<Group> {
    if h.degree() != a.degree() {
        return Err(Error::DegreeMismatch {
            expected: h.degree(),
            found: a.degree(),
        });
    }
    if a.contains_group(h) {
        return Ok(h.clone());
    }
    if h.contains_group(a) {
        return Ok(a.clone());
    }
    if h.order_u64().is_some_and(|n| n <= limits.filter_order) {
        let mut gens: Vec<Permutation> = Vec::new();
        let mut current = Group::trivial(h.degree());
        let mut found: Vec<Permutation> = Vec::new();
        h.for_each_element(|g| {
            if a.contains_unchecked(g) {
                found.push(g.clone());
            }
        });
        let target = BigUint::from(found.len());
        for g in found {
            if current.order() == &target {
                break;
            }
            if !current.contains_unchecked(&g) {
                gens.push(g);
                current = Group::new(h.degree(), gens.clone())?;
            }
        }
        return Ok(current);
    }
    let other = a.rebased(&h.base());
    let prop = MemberProperty { other: &other };
    search::find_subgroup(h, &prop, Vec::new(), &mut Budget::new(limits.node_cap))
}

fn exact_prime_part(n: &BigUint, p: u64) -> BigUint {
    let mut m = n.clone();
    let mut part = BigUint::one();
    let bp = BigUint::from(p);
    while (&m % &bp).is_zero() {
        m /= &bp;
        part *= &bp;
    }
    part
}

fn is_power_of(mut n: u64, p: u64) -> bool {
    while n % p == 0 {
        n /= p;
    }
    n == 1
}

/// A Sylow `p`-subgroup, grown by normalizer ascent.
pub fn sylow(parent: &Arc<Group>, p: u64, limits: &Limits) -> Result<Subgroup> {
    if p < 2 || !crate::hall::is_prime(p) {
        return Err(Error::range("prime", format!("{p} is not prime")));
    }
    let target = exact_prime_part(parent.order(), p);
    let tag = format!("sylow_{p}");
    if target.is_one() {
        return Ok(Subgroup::trivial(parent).with_tag(tag));
    }
    if let Ok(table) = parent.table(limits.exhaustive_order) {
        let target = target.to_usize().expect("small group");
        let s = sylow_in_table(&table, &table.whole(), p, target);
        let g = table_group(&table, &s, parent.degree());
        return Ok(Subgroup::new_unchecked(parent.clone(), g).with_tag(tag));
    }
    // Large groups: ascent with backtrack normalizers and seeded random elements.
    use rand::SeedableRng;
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(p);
    let mut current = Group::trivial(parent.degree());
    while current.order() < &target {
        let n = normalizer(parent, &current, limits)?;
        let mut grown = false;
        for _ in 0..10_000 {
            let y = n.random_element(&mut rng);
            let o = y.order_u64();
            let mut q = 1;
            while o % (q * p) == 0 {
                q *= p;
            }
            let x = y.pow(o / q);
            if x.is_identity() || current.contains_unchecked(&x) {
                continue;
            }
            let mut gens = current.generators().to_vec();
            gens.push(x);
            current = Group::new(parent.degree(), gens)?;
            grown = true;
            break;
        }
        if !grown {
            return Err(Error::BudgetExhausted { cap: 10_000 });
        }
    }
    Ok(Subgroup::new_unchecked(parent.clone(), current).with_tag(tag))
}

/// Normalizer ascent inside `ambient` (a subgroup of the table's group).
pub(crate) fn sylow_in_table(table: &ElementTable, ambient: &SubTable, p: u64, target: usize) -> SubTable {
    let mut s = SubTable::trivial(table);
    while s.order() < target {
        let n = s.normalizer_in(table, ambient);
        let x = n
            .elems
            .iter()
            .copied()
            .filter(|&x| !s.contains(x) && is_power_of(table.orders[x as usize] as u64, p))
            .min()
            .expect("a p-element outside a non-Sylow p-subgroup normalizes it");
        s = s.extend(table, x, usize::MAX).expect("uncapped");
    }
    s
}

/// All normal subgroups, ordered by order and then by element set.
pub fn normal_subgroups(parent: &Arc<Group>, limits: &Limits) -> Result<Vec<Subgroup>> {
    let table = parent.table(limits.exhaustive_order)?;
    let normals = normal_subtables(&table);
    Ok(normals
        .iter()
        .map(|s| {
            let g = table_group(&table, s, parent.degree());
            debug_assert!(is_normalized_by(&g, parent.generators()));
            Subgroup::new_unchecked(parent.clone(), g)
        })
        .collect())
}

pub(crate) fn normal_subtables(table: &ElementTable) -> Vec<SubTable> {
    let mut closures: Vec<SubTable> = Vec::new();
    let mut seen: FxHashSet<FixedBitSet> = FxHashSet::default();
    for (c, &rep) in table.class_reps.iter().enumerate() {
        if rep == 0 {
            continue;
        }
        let mut sub = SubTable::trivial(table);
        for x in 0..table.len() as ElemId {
            if table.class_of[x as usize] == c as u32 && !sub.contains(x) {
                sub = sub.extend(table, x, usize::MAX).expect("uncapped");
            }
        }
        if seen.insert(sub.bits.clone()) {
            closures.push(sub);
        }
    }
    let mut all = vec![SubTable::trivial(table)];
    let mut known: FxHashSet<FixedBitSet> = FxHashSet::default();
    known.insert(all[0].bits.clone());
    for n in &closures {
        let mut i = 0;
        while i < all.len() {
            let m = &all[i];
            let mut join = m.clone();
            for &g in &n.gens {
                if !join.contains(g) {
                    join = join.extend(table, g, usize::MAX).expect("uncapped");
                }
            }
            if known.insert(join.bits.clone()) {
                all.push(join);
            }
            i += 1;
        }
    }
    all.sort_by(|a, b| a.order().cmp(&b.order()).then_with(|| a.elems.iter().min().cmp(&b.elems.iter().min())).then_with(|| {
        let mut x: Vec<_> = a.elems.clone();
        let mut y: Vec<_> = b.elems.clone();
        x.sort_unstable();
        y.sort_unstable();
        x.cmp(&y)
    }));
    all
}

/// The normal closure of `elements` in `parent`.
pub fn normal_closure(parent: &Arc<Group>, elements: &[Permutation]) -> Result<Subgroup> {
    let mut gens: Vec<Permutation> = elements.to_vec();
    let mut current = Group::new(parent.degree(), gens.clone())?;
    loop {
        let mut grown = false;
        for x in parent.generators() {
            for g in current.generators().to_vec() {
                let c = g.conjugate_by(x);
                if !current.contains_unchecked(&c) {
                    gens.push(c);
                    current = Group::new(parent.degree(), gens.clone())?;
                    grown = true;
                }
            }
        }
        if !grown {
            break;
        }
    }
    Subgroup::new(parent.clone(), current)
}

/// `G/A` as a permutation group on the right cosets of `A`, plus the projection.
pub fn quotient(parent: &Arc<Group>, a: &Group, limits: &Limits) -> Result<(Group, Homomorphism)> {
    if !parent.contains_group(a) {
        return Err(Error::NotInParent);
    }
    if !is_normalized_by(a, parent.generators()) {
        return Err(Error::NotNormal);
    }
    let index = parent.order() / a.order();
    let m = match index.to_u64() {
        Some(m) if m <= limits.index_cap => m as usize,
        _ => return Err(Error::cap("quotient index", limits.index_cap, &index)),
    };
    let images: Vec<Permutation> = match parent.table(limits.exhaustive_order) {
        Ok(table) => {
            let asub = table.subgroup_of(a.generators());
            let mut coset = vec![u32::MAX; table.len()];
            let mut reps: Vec<ElemId> = Vec::new();
            for x in 0..table.len() as ElemId {
                if coset[x as usize] != u32::MAX {
                    continue;
                }
                let id = reps.len() as u32;
                reps.push(x);
                for &s in &asub.elems {
                    coset[table.mul(s, x) as usize] = id;
                }
            }
            table
                .gens
                .iter()
                .map(|&g| {
                    let imgs: Vec<u32> = reps.iter().map(|&r| coset[table.mul(r, g) as usize]).collect();
                    Permutation::from_images_unchecked(imgs)
                })
                .collect()
        }
        Err(_) => {
            let mut reps: Vec<Permutation> = vec![parent.identity()];
            let mut reps_inv: Vec<Permutation> = vec![parent.identity()];
            let find = |y: &Permutation, reps_inv: &[Permutation]| -> Option<usize> {
                reps_inv.iter().position(|ri| a.contains_unchecked(&y.then(ri)))
            };
            let gens = parent.generators();
            let mut table: Vec<Vec<u32>> = Vec::new();
            let mut head = 0;
            while head < reps.len() {
                let mut row = Vec::with_capacity(gens.len());
                for g in gens {
                    let y = reps[head].then(g);
                    let j = match find(&y, &reps_inv) {
                        Some(j) => j,
                        None => {
                            reps_inv.push(y.inverse());
                            reps.push(y);
                            reps.len() - 1
                        }
                    };
                    row.push(j as u32);
                }
                table.push(row);
                head += 1;
            }
            (0..gens.len())
                .map(|gi| Permutation::from_images_unchecked(table.iter().map(|row| row[gi]).collect()))
                .collect()
        }
    };
    let hom = Homomorphism::new(parent, images, m)?;
    let q = hom.image_group()?;
    debug_assert_eq!(BigUint::from(m), *q.order());
    Ok((q, hom))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(text: &str, n: usize) -> Permutation {
        Permutation::from_cycles(text, n).unwrap()
    }

    fn sym(n: usize) -> Arc<Group> {
        let cycle: Vec<u32> = (1..n as u32).chain(std::iter::once(0)).collect();
        Arc::new(Group::new(n, vec![p("(1 2)", n), Permutation::from_images(cycle).unwrap()]).unwrap())
    }

    fn brute_normalizer_order(parent: &Group, h: &Group) -> usize {
        let mut n = 0;
        parent.for_each_element(|g| {
            if h.generators().iter().all(|x| h.contains_unchecked(&x.conjugate_by(g))) {
                n += 1;
            }
        });
        n
    }

    #[test]
    fn generated_subgroups() {
        let s3 = sym(3);
        assert_eq!(generated(&s3, &[p("(1 2)", 3)]).unwrap().order_u64(), Some(2));
        assert!(generated(&s3, &[]).unwrap().is_trivial());
        let a4 = Arc::new(Group::new(4, vec![p("(1 2 3)", 4), p("(2 3 4)", 4)]).unwrap());
        let g = generated(&a4, &[p("(1 2)(3 4)", 4), p("(1 3)(2 4)", 4), p("(1 2 3)", 4)]).unwrap();
        assert_eq!(g.order_u64(), Some(12));
        assert!(matches!(generated(&a4, &[p("(1 2)", 4)]), Err(Error::NotInParent)));
    }

    #[test]
    fn normalizers() {
        let s4 = sym(4);
        let c3 = Group::new(4, vec![p("(1 2 3)", 4)]).unwrap();
        assert_eq!(brute_normalizer_order(&s4, &c3), 6);
        let limits = Limits::default();
        assert_eq!(normalizer(&s4, &c3, &limits).unwrap().order_u64(), Some(6));
        assert_eq!(normalizer(&s4, &s4, &limits).unwrap().order_u64(), Some(24));
        // backtrack path agrees
        let tiny = Limits {
            brute_force_order: 1,
            ..Limits::default()
        };
        assert_eq!(normalizer(&s4, &c3, &tiny).unwrap().order_u64(), Some(6));
        let s6 = sym(6);
        let h = Group::new(6, vec![p("(1 2)(3 4)", 6), p("(1 3)(2 4)", 6)]).unwrap();
        let expected = brute_normalizer_order(&s6, &h) as u64;
        assert_eq!(normalizer(&s6, &h, &tiny).unwrap().order_u64(), Some(expected));
        assert_eq!(normalizer(&s6, &h, &limits).unwrap().order_u64(), Some(expected));
    }

    #[test]
    fn centralizers() {
        let s3 = sym(3);
        let limits = Limits::default();
        let c3 = Group::new(3, vec![p("(1 2 3)", 3)]).unwrap();
        assert_eq!(centralizer(&s3, &c3, &limits).unwrap().order_u64(), Some(3));
        assert_eq!(centralizer(&s3, &Group::trivial(3), &limits).unwrap().order_u64(), Some(6));
        let s4 = sym(4);
        let v4 = Group::new(4, vec![p("(1 2)(3 4)", 4), p("(1 3)(2 4)", 4)]).unwrap();
        let c = centralizer(&s4, &v4, &limits).unwrap();
        assert!(c.same_group(&v4));
        let tiny = Limits {
            brute_force_order: 1,
            ..Limits::default()
        };
        assert!(centralizer(&s4, &v4, &tiny).unwrap().same_group(&v4));
    }

    #[test]
    fn conjugacy_of_sylow_subgroups() {
        let s4 = sym(4);
        let limits = Limits::default();
        let d1 = Group::new(4, vec![p("(1 2 3 4)", 4), p("(1 3)", 4)]).unwrap();
        let d2 = Group::new(4, vec![p("(1 3 2 4)", 4), p("(1 2)", 4)]).unwrap();
        let t = are_conjugate(&s4, &d1, &d2, &limits).unwrap().unwrap();
        assert!(t.verify());
        assert!(!t.element.is_identity());
        let same = are_conjugate(&s4, &d1, &d1, &limits).unwrap().unwrap();
        assert!(same.element.is_identity());
        let v4 = Group::new(4, vec![p("(1 2)(3 4)", 4), p("(1 3)(2 4)", 4)]).unwrap();
        let other = Group::new(4, vec![p("(1 2)", 4), p("(3 4)", 4)]).unwrap();
        assert!(are_conjugate(&s4, &v4, &other, &limits).unwrap().is_none());
    }

    #[test]
    fn conjugacy_by_a_group_not_containing_the_subgroups() {
        // rotations of the hexagon carrying one Klein four-group to another
        let a = Arc::new(Group::new(6, vec![p("(1 3 5)(2 4 6)", 6)]).unwrap());
        let h = Group::new(6, vec![p("(2 6)(3 5)", 6), p("(1 4)(2 5)(3 6)", 6)]).unwrap();
        let k = Group::new(6, vec![p("(1 3)(4 6)", 6), p("(1 4)(2 5)(3 6)", 6)]).unwrap();
        assert_eq!(orbit_signature(&a, &h), orbit_signature(&a, &k));
        let t = are_conjugate(&a, &h, &k, &Limits::default()).unwrap().unwrap();
        assert!(t.verify() && a.contains(&t.element).unwrap());
    }

    #[test]
    fn sylow_subgroups() {
        let limits = Limits::default();
        let s4 = sym(4);
        assert_eq!(sylow(&s4, 2, &limits).unwrap().order_u64(), Some(8));
        assert_eq!(sylow(&s4, 3, &limits).unwrap().order_u64(), Some(3));
        assert!(sylow(&s4, 5, &limits).unwrap().is_trivial());
        assert!(sylow(&s4, 4, &limits).is_err());
        let s7 = sym(7);
        assert_eq!(sylow(&s7, 2, &limits).unwrap().order_u64(), Some(16));
    }

    #[test]
    fn normal_subgroup_lists() {
        let limits = Limits::default();
        let orders = |g: &Arc<Group>| -> Vec<u64> {
            normal_subgroups(g, &limits).unwrap().iter().map(|s| s.order_u64().unwrap()).collect()
        };
        assert_eq!(orders(&sym(4)), vec![1, 4, 12, 24]);
        let a5 = Arc::new(Group::new(5, vec![p("(1 2 3)", 5), p("(3 4 5)", 5)]).unwrap());
        assert_eq!(orders(&a5), vec![1, 60]);
        let c6 = Arc::new(Group::new(6, vec![p("(1 2 3 4 5 6)", 6)]).unwrap());
        assert_eq!(orders(&c6), vec![1, 2, 3, 6]);
    }

    #[test]
    fn quotients() {
        let limits = Limits::default();
        let s4 = sym(4);
        let v4 = Group::new(4, vec![p("(1 2)(3 4)", 4), p("(1 3)(2 4)", 4)]).unwrap();
        let (q, hom) = quotient(&s4, &v4, &limits).unwrap();
        assert_eq!(q.order_u64(), Some(6));
        let g = q.generators();
        assert!(g.iter().any(|a| g.iter().any(|b| a.then(b) != b.then(a))));
        assert_eq!(hom.kernel_order().unwrap(), BigUint::from(4u32));
        let (q1, _) = quotient(&s4, &Group::trivial(4), &limits).unwrap();
        assert_eq!(q1.order_u64(), Some(24));
        let (q2, _) = quotient(&s4, &s4, &limits).unwrap();
        assert_eq!(q2.order_u64(), Some(1));
        let c3 = Group::new(4, vec![p("(1 2 3)", 4)]).unwrap();
        assert!(matches!(quotient(&s4, &c3, &limits), Err(Error::NotNormal)));
        // membership route agrees with the table route
        let tiny = Limits {
            exhaustive_order: 1,
            ..Limits::default()
        };
        let fresh = sym(4);
        let (q3, _) = quotient(&fresh, &v4, &tiny).unwrap();
        assert_eq!(q3.order_u64(), Some(6));
    }

    #[test]
    fn intersections() {
        let limits = Limits::default();
        let a5 = Group::new(5, vec![p("(1 2 3)", 5), p("(3 4 5)", 5)]).unwrap();
        let s4 = Group::new(5, vec![p("(1 2 3 4)", 5), p("(1 2)", 5)]).unwrap();
        assert_eq!(intersection(&s4, &a5, &limits).unwrap().order_u64(), Some(12));
        let tiny = Limits {
            filter_order: 1,
            ..Limits::default()
        };
        assert_eq!(intersection(&s4, &a5, &tiny).unwrap().order_u64(), Some(12));
    }
}
