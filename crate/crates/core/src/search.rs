//! Backtrack search over the elements of a group, by base images.
//!
//! A node at depth `d` fixes the images of the first `d` base points. A
//! [`Property`] may reject a node from those images alone; leaves are full
//! elements tested with [`Property::accept`].

use crate::error::{Error, Result};
use crate::group::{Group, Level};
use crate::perm::Permutation;

pub(crate) trait Property {
    /// `images[j]` is the image of base point `j`. Only called with the last
    /// entry new; earlier prefixes were already accepted.
    fn prune_ok(&self, _base: &[u32], _images: &[u32]) -> bool {
        true
    }

    fn accept(&self, g: &Permutation) -> bool;
}

pub(crate) struct Budget {
    used: u64,
    cap: u64,
}

impl Budget {
    pub(crate) fn new(cap: u64) -> Self {
        Budget { used: 0, cap }
    }

    #[inline]
    fn tick(&mut self) -> Result<()> {
        self.used += 1;
        if self.used > self.cap {
            Err(Error::BudgetExhausted { cap: self.cap })
        } else {
            Ok(())
        }
    }
}

fn dfs(
    levels: &[Level],
    base: &[u32],
    depth: usize,
    partial: &Permutation,
    images: &mut Vec<u32>,
    prop: &dyn Property,
    budget: &mut Budget,
) -> Result<Option<Permutation>> {
    if depth == levels.len() {
        return Ok(prop.accept(partial).then(|| partial.clone()));
    }
    let level = &levels[depth];
    for (i, &pt) in level.orbit.iter().enumerate() {
        budget.tick()?;
        images.push(partial.image(pt));
        if prop.prune_ok(base, images) {
            let next = level.reps[i].then(partial);
            if let Some(found) = dfs(levels, base, depth + 1, &next, images, prop, budget)? {
                images.pop();
                return Ok(Some(found));
            }
        }
        images.pop();
    }
    Ok(None)
}

/// First element of `group` (in transversal-word order) with the property.
pub(crate) fn find_element(group: &Group, prop: &dyn Property, budget: &mut Budget) -> Result<Option<Permutation>> {
    let base = group.base();
    let mut images = Vec::with_capacity(base.len());
    dfs(group.levels(), &base, 0, &group.identity(), &mut images, prop, budget)
}

/// The subgroup of all elements with the property, which must define a
/// subgroup containing `known`. Levels are searched bottom-up; a branch is
/// skipped when its base image is already reached by the subgroup found so
/// far, or is in the same orbit as a branch that failed.
pub(crate) fn find_subgroup(
    group: &Group,
    prop: &dyn Property,
    known: Vec<Permutation>,
    budget: &mut Budget,
) -> Result<Group> {
    let base = group.base();
    let levels = group.levels();
    let n = group.degree();
    let mut found = Group::with_base_prefix(n, known, &base)?;
    for lvl in (0..levels.len()).rev() {
        let level = &levels[lvl];
        let mut failed: Vec<u32> = Vec::new();
        let mut images: Vec<u32> = base[..lvl].to_vec();
        for (oi, &gamma) in level.orbit.iter().enumerate() {
            if gamma == level.point {
                continue;
            }
            let current = &found.levels()[lvl];
            if current.index_of(gamma).is_some() {
                continue;
            }
            if !failed.is_empty() {
                let orbit = crate::group::orbits_of_point(n, &current.gens, gamma);
                if orbit.iter().any(|x| failed.contains(x)) {
                    failed.push(gamma);
                    continue;
                }
            }
            budget.tick()?;
            images.push(gamma);
            let mut hit = None;
            if prop.prune_ok(&base, &images) {
                hit = dfs(levels, &base, lvl + 1, &level.reps[oi], &mut images, prop, budget)?;
            }
            images.pop();
            match hit {
                Some(x) => {
                    let mut gens = found.generators().to_vec();
                    gens.push(x);
                    found = Group::with_base_prefix(n, gens, &base)?;
                }
                None => failed.push(gamma),
            }
        }
    }
    Ok(found)
}

/// Orbit-based labels shared by conjugacy and normalizer searches.
pub(crate) struct OrbitLabels {
    /// Orbit id of each point.
    pub(crate) id: Vec<u32>,
    pub(crate) size: Vec<u32>,
}

impl OrbitLabels {
    pub(crate) fn new(degree: usize, gens: &[Permutation]) -> Self {
        let orbits = crate::group::orbits_of(degree, gens);
        let mut id = vec![0; degree];
        let mut size = vec![0; degree];
        for (k, orbit) in orbits.iter().enumerate() {
            for &x in orbit {
                id[x as usize] = k as u32;
                size[x as usize] = orbit.len() as u32;
            }
        }
        OrbitLabels { id, size }
    }
}

/// Elements `g` with `source^g = target`, for groups of equal order.
pub(crate) struct ConjugateProperty<'a> {
    source_gens: &'a [Permutation],
    target: &'a Group,
    src: OrbitLabels,
    dst: OrbitLabels,
}

impl<'a> ConjugateProperty<'a> {
    pub(crate) fn new(source: &'a Group, target: &'a Group) -> Self {
        let n = source.degree();
        ConjugateProperty {
            source_gens: source.generators(),
            target,
            src: OrbitLabels::new(n, source.generators()),
            dst: OrbitLabels::new(n, target.generators()),
        }
    }
}

impl Property for ConjugateProperty<'_> {
    fn prune_ok(&self, base: &[u32], images: &[u32]) -> bool {
        let last = images.len() - 1;
        let (b, c) = (base[last] as usize, images[last] as usize);
        if self.src.size[b] != self.dst.size[c] {
            return false;
        }
        (0..last).all(|j| {
            let same_src = self.src.id[base[j] as usize] == self.src.id[b];
            let same_dst = self.dst.id[images[j] as usize] == self.dst.id[c];
            same_src == same_dst
        })
    }

    fn accept(&self, g: &Permutation) -> bool {
        let n = g.degree();
        let mut map: Vec<u32> = vec![u32::MAX; n];
        for x in 0..n {
            let y = g.image(x as u32) as usize;
            if self.src.size[x] != self.dst.size[y] {
                return false;
            }
            let slot = &mut map[self.src.id[x] as usize];
            if *slot == u32::MAX {
                *slot = self.dst.id[y];
            } else if *slot != self.dst.id[y] {
                return false;
            }
        }
        self.source_gens
            .iter()
            .all(|h| self.target.contains_unchecked(&h.conjugate_by(g)))
    }
}

/// Elements of the searched group lying in `other`, whose base must start
/// with the searched group's base.
pub(crate) struct MemberProperty<'a> {
    pub(crate) other: &'a Group,
}

impl Property for MemberProperty<'_> {
    fn prune_ok(&self, _base: &[u32], images: &[u32]) -> bool {
        self.other.partial_images_possible(images)
    }

    fn accept(&self, g: &Permutation) -> bool {
        self.other.contains_unchecked(g)
    }
}

/// Elements commuting with every permutation in `gens`.
pub(crate) struct CentralizerProperty<'a> {
    pub(crate) gens: &'a [Permutation],
    base_index: Vec<u32>,
}

impl<'a> CentralizerProperty<'a> {
    pub(crate) fn new(gens: &'a [Permutation], base: &[u32], degree: usize) -> Self {
        let mut base_index = vec![u32::MAX; degree];
        for (i, &b) in base.iter().enumerate() {
            base_index[b as usize] = i as u32;
        }
        CentralizerProperty { gens, base_index }
    }
}

impl Property for CentralizerProperty<'_> {
    fn prune_ok(&self, base: &[u32], images: &[u32]) -> bool {
        // x^(h g) = x^(g h): if h moves base point j to base point m, the
        // image of m is forced.
        let depth = images.len();
        self.gens.iter().all(|h| {
            (0..depth).all(|j| {
                let m = self.base_index[h.image(base[j]) as usize];
                m == u32::MAX || m as usize >= depth || images[m as usize] == h.image(images[j])
            })
        })
    }

    fn accept(&self, g: &Permutation) -> bool {
        self.gens.iter().all(|h| h.then(g) == g.then(h))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(text: &str, n: usize) -> Permutation {
        Permutation::from_cycles(text, n).unwrap()
    }

    fn sym(n: usize) -> Group {
        let cycle: Vec<u32> = (1..n as u32).chain(std::iter::once(0)).collect();
        Group::new(n, vec![p("(1 2)", n), Permutation::from_images(cycle).unwrap()]).unwrap()
    }

    #[test]
    fn normalizer_by_search_matches_scan() {
        let s5 = sym(5);
        let h = Group::new(5, vec![p("(1 2 3)", 5)]).unwrap();
        let prop = ConjugateProperty::new(&h, &h);
        let n = find_subgroup(&s5, &prop, h.generators().to_vec(), &mut Budget::new(1 << 20)).unwrap();
        let mut count = 0;
        s5.for_each_element(|g| {
            let normalizes = h.generators().iter().all(|x| h.contains_unchecked(&x.conjugate_by(g)));
            assert_eq!(normalizes, n.contains_unchecked(g));
            count += normalizes as u32;
        });
        assert_eq!(n.order_u64(), Some(count as u64));
        assert_eq!(count, 12);
    }

    #[test]
    fn centralizer_by_search() {
        let s6 = sym(6);
        let gens = vec![p("(1 2)(3 4)", 6)];
        let prop = CentralizerProperty::new(&gens, &s6.base(), 6);
        let c = find_subgroup(&s6, &prop, vec![], &mut Budget::new(1 << 20)).unwrap();
        // C_{S6}((12)(34)) = (C2 wr C2) x S2 has order 16
        assert_eq!(c.order_u64(), Some(16));
    }

    #[test]
    fn intersection_by_search() {
        let s5 = sym(5);
        let a5 = Group::new(5, vec![p("(1 2 3)", 5), p("(3 4 5)", 5)]).unwrap();
        let h = Group::new(5, vec![p("(1 2 3 4)", 5), p("(1 2)", 5)]).unwrap();
        let other = a5.rebased(&h.base());
        let prop = MemberProperty { other: &other };
        let i = find_subgroup(&h, &prop, vec![], &mut Budget::new(1 << 20)).unwrap();
        assert_eq!(i.order_u64(), Some(12));
        assert!(s5.contains_group(&i));
    }

    #[test]
    fn conjugate_search_and_budget() {
        let s6 = sym(6);
        let h = Group::new(6, vec![p("(1 2 3)", 6)]).unwrap();
        let k = Group::new(6, vec![p("(4 5 6)", 6)]).unwrap();
        let prop = ConjugateProperty::new(&h, &k);
        let g = find_element(&s6, &prop, &mut Budget::new(1 << 20)).unwrap().unwrap();
        assert!(k.contains_unchecked(&p("(1 2 3)", 6).conjugate_by(&g)));
        let res = find_element(&s6, &prop, &mut Budget::new(3));
        assert!(matches!(res, Err(Error::BudgetExhausted { .. })));
        let bad = Group::new(6, vec![p("(1 2)(3 4)(5 6)", 6)]).unwrap();
        let other = Group::new(6, vec![p("(1 2)", 6)]).unwrap();
        let prop = ConjugateProperty::new(&bad, &other);
        assert!(find_element(&s6, &prop, &mut Budget::new(1 << 20)).unwrap().is_none());
    }
}
