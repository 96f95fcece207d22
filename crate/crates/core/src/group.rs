//! Permutation groups backed by a base and strong generating set.
//!
//! Construction is the deterministic Schreier-Sims algorithm: the base starts
//! with any requested prefix, then takes the first point moved by the earliest
//! generator that fixes the current base, and is extended during sifting by the
//! first point moved by the new strong generator.

use std::collections::VecDeque;
use std::fmt;
use std::sync::{Arc, OnceLock};

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive};
use rand::Rng;

use crate::constructors::CatalogEntry;
use crate::error::{Error, Result};
use crate::perm::Permutation;
use crate::table::ElementTable;

const NONE: u32 = u32::MAX;

/// One level of the stabilizer chain.
#[derive(Clone)]
pub(crate) struct Level {
    pub(crate) point: u32,
    /// Strong generators fixing every earlier base point.
    pub(crate) gens: Vec<Permutation>,
    pub(crate) orbit: Vec<u32>,
    /// `pos[x]` is the index of `x` in `orbit`, or `NONE`.
    pub(crate) pos: Vec<u32>,
    /// `reps[i]` maps `point` to `orbit[i]`.
    pub(crate) reps: Vec<Permutation>,
    pub(crate) reps_inv: Vec<Permutation>,
}

impl Level {
    fn new(point: u32, gens: Vec<Permutation>, degree: usize) -> Self {
        let mut level = Level {
            point,
            gens,
            orbit: Vec::new(),
            pos: Vec::new(),
            reps: Vec::new(),
            reps_inv: Vec::new(),
        };
        level.rebuild(degree);
        level
    }

    fn rebuild(&mut self, degree: usize) {
        self.orbit.clear();
        self.reps.clear();
        self.pos = vec![NONE; degree];
        self.pos[self.point as usize] = 0;
        self.orbit.push(self.point);
        self.reps.push(Permutation::identity(degree));
        let mut head = 0;
        while head < self.orbit.len() {
            let x = self.orbit[head];
            for g in &self.gens {
                let y = g.image(x);
                if self.pos[y as usize] == NONE {
                    self.pos[y as usize] = self.orbit.len() as u32;
                    self.orbit.push(y);
                    let rep = self.reps[head].then(g);
                    self.reps.push(rep);
                }
            }
            head += 1;
        }
        self.reps_inv = self.reps.iter().map(Permutation::inverse).collect();
    }

    #[inline]
    pub(crate) fn index_of(&self, x: u32) -> Option<usize> {
        let i = self.pos[x as usize];
        (i != NONE).then_some(i as usize)
    }
}

/// Sifts `g` through `levels[from..]`; returns the residue and the level at
/// which sifting stopped (`levels.len()` when it went all the way through).
fn strip(levels: &[Level], mut g: Permutation, from: usize) -> (Permutation, usize) {
    for (i, level) in levels.iter().enumerate().skip(from) {
        let beta = g.image(level.point);
        match level.index_of(beta) {
            Some(j) => g = g.then(&level.reps_inv[j]),
            None => return (g, i),
        }
    }
    (g, levels.len())
}

fn schreier_sims(degree: usize, gens: &[Permutation], prefix: &[u32]) -> Vec<Level> {
    let mut base: Vec<u32> = Vec::new();
    for &b in prefix {
        if !base.contains(&b) {
            base.push(b);
        }
    }
    let mut strong: Vec<Permutation> = Vec::new();
    for g in gens {
        if !g.is_identity() && !strong.contains(g) {
            strong.push(g.clone());
        }
    }
    for s in &strong {
        if base.iter().all(|&b| s.image(b) == b) {
            base.push(s.first_moved().expect("non-identity"));
        }
    }
    let mut levels: Vec<Level> = Vec::with_capacity(base.len());
    for (i, &b) in base.iter().enumerate() {
        let fixing: Vec<Permutation> = strong
            .iter()
            .filter(|s| base[..i].iter().all(|&c| s.image(c) == c))
            .cloned()
            .collect();
        levels.push(Level::new(b, fixing, degree));
    }

    let mut i = levels.len() as isize - 1;
    'outer: while i >= 0 {
        let lvl = i as usize;
        let orbit_len = levels[lvl].orbit.len();
        for oi in 0..orbit_len {
            for si in 0..levels[lvl].gens.len() {
                let level = &levels[lvl];
                let s = &level.gens[si];
                let target = level.pos[s.image(level.orbit[oi]) as usize] as usize;
                let h = level.reps[oi].then(s).then(&level.reps_inv[target]);
                if h.is_identity() {
                    continue;
                }
                let (residue, depth) = strip(&levels, h, lvl + 1);
                if residue.is_identity() {
                    continue;
                }
                if depth == levels.len() {
                    let pt = residue.first_moved().expect("non-identity");
                    levels.push(Level::new(pt, Vec::new(), degree));
                }
                for level in &mut levels[lvl + 1..=depth] {
                    level.gens.push(residue.clone());
                    level.rebuild(degree);
                }
                i = depth as isize;
                continue 'outer;
            }
        }
        i -= 1;
    }
    levels
}

/// A permutation group with a verified stabilizer chain. Immutable once built.
#[derive(Clone)]
pub struct Group {
    degree: usize,
    generators: Vec<Permutation>,
    levels: Vec<Level>,
    order: BigUint,
    pub(crate) catalog: Option<Arc<CatalogEntry>>,
    table: OnceLock<Arc<ElementTable>>,
}

impl Group {
    /// Builds the group generated by `generators` acting on `degree` points.
    pub fn new(degree: usize, generators: Vec<Permutation>) -> Result<Self> {
        Self::with_base_prefix(degree, generators, &[])
    }

    /// Like [`Group::new`], but the base starts with `prefix`.
    pub fn with_base_prefix(degree: usize, generators: Vec<Permutation>, prefix: &[u32]) -> Result<Self> {
        for g in &generators {
            if g.degree() != degree {
                return Err(Error::DegreeMismatch {
                    expected: degree,
                    found: g.degree(),
                });
            }
        }
        if let Some(&b) = prefix.iter().find(|&&b| b as usize >= degree) {
            return Err(Error::range("base point", format!("{b} >= degree {degree}")));
        }
        let levels = schreier_sims(degree, &generators, prefix);
        let order = levels
            .iter()
            .fold(BigUint::one(), |acc, l| acc * BigUint::from(l.orbit.len()));
        Ok(Group {
            degree,
            generators,
            levels,
            order,
            catalog: None,
            table: OnceLock::new(),
        })
    }

    /// Builds from a non-empty generator list, taking the degree from it.
    pub fn from_generators(generators: Vec<Permutation>) -> Result<Self> {
        let degree = generators
            .first()
            .map(Permutation::degree)
            .ok_or_else(|| Error::Precondition("empty generator list needs an explicit degree".into()))?;
        Self::new(degree, generators)
    }

    pub fn trivial(degree: usize) -> Self {
        Self::new(degree, Vec::new()).expect("trivial group")
    }

    pub(crate) fn with_catalog(mut self, entry: CatalogEntry) -> Self {
        self.catalog = Some(Arc::new(entry));
        self
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    /// How the group was constructed, when it came from a known family.
    pub fn catalog(&self) -> Option<&CatalogEntry> {
        self.catalog.as_deref()
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    pub fn order(&self) -> &BigUint {
        &self.order
    }

    /// Order as a machine integer, when it fits.
    pub fn order_u64(&self) -> Option<u64> {
        self.order.to_u64()
    }

    pub fn is_trivial(&self) -> bool {
        self.levels.is_empty() || self.order.is_one()
    }

    pub fn base(&self) -> Vec<u32> {
        self.levels.iter().map(|l| l.point).collect()
    }

    /// Strong generators per level of the stabilizer chain.
    pub fn strong_generators(&self) -> Vec<&[Permutation]> {
        self.levels.iter().map(|l| l.gens.as_slice()).collect()
    }

    /// Fundamental orbits in discovery order.
    pub fn fundamental_orbits(&self) -> Vec<&[u32]> {
        self.levels.iter().map(|l| l.orbit.as_slice()).collect()
    }

    pub(crate) fn levels(&self) -> &[Level] {
        &self.levels
    }

    pub(crate) fn identity(&self) -> Permutation {
        Permutation::identity(self.degree)
    }

    /// Membership by sifting.
    pub fn contains(&self, p: &Permutation) -> Result<bool> {
        if p.degree() != self.degree {
            return Err(Error::DegreeMismatch {
                expected: self.degree,
                found: p.degree(),
            });
        }
        Ok(self.contains_unchecked(p))
    }

    pub(crate) fn contains_unchecked(&self, p: &Permutation) -> bool {
        let (residue, _) = strip(&self.levels, p.clone(), 0);
        residue.is_identity()
    }

    /// True when every generator of `other` lies in `self`.
    pub fn contains_group(&self, other: &Group) -> bool {
        other.degree == self.degree && other.generators.iter().all(|g| self.contains_unchecked(g))
    }

    pub fn same_group(&self, other: &Group) -> bool {
        self.order == other.order && self.contains_group(other)
    }

    /// True when `images[j]` could be the image of base point `j` for some
    /// element, for every `j < images.len()`.
    pub(crate) fn partial_images_possible(&self, images: &[u32]) -> bool {
        let mut targets: Vec<u32> = images.to_vec();
        for (i, level) in self.levels.iter().enumerate().take(images.len()) {
            let Some(j) = level.index_of(targets[i]) else {
                return false;
            };
            let inv = &level.reps_inv[j];
            for t in targets.iter_mut().skip(i + 1) {
                *t = inv.image(*t);
            }
        }
        true
    }

    /// Every element, in transversal-word order, provided `order <= cap`.
    pub fn elements(&self, cap: u64) -> Result<Vec<Permutation>> {
        match self.order_u64() {
            Some(n) if n <= cap => {}
            _ => return Err(Error::cap("group order for enumeration", cap, &self.order)),
        }
        let mut out = Vec::with_capacity(self.order_u64().unwrap_or(0) as usize);
        self.for_each_element(|g| out.push(g.clone()));
        Ok(out)
    }

    /// Visits every element in transversal-word order.
    pub fn for_each_element(&self, mut visit: impl FnMut(&Permutation)) {
        fn rec(levels: &[Level], depth: usize, partial: &Permutation, visit: &mut dyn FnMut(&Permutation)) {
            if depth == levels.len() {
                visit(partial);
                return;
            }
            for rep in &levels[depth].reps {
                let next = rep.then(partial);
                rec(levels, depth + 1, &next, visit);
            }
        }
        rec(&self.levels, 0, &self.identity(), &mut visit);
    }

    /// Uniformly random element.
    pub fn random_element<R: Rng + ?Sized>(&self, rng: &mut R) -> Permutation {
        let mut g = self.identity();
        for level in &self.levels {
            let r = &level.reps[rng.gen_range(0..level.reps.len())];
            g = r.then(&g);
        }
        g
    }

    /// Orbits of the group on all points, each sorted, ordered by least point.
    pub fn orbits(&self) -> Vec<Vec<u32>> {
        orbits_of(self.degree, &self.generators)
    }

    /// The conjugate group `x^-1 G x`, with the chain transported along.
    pub fn conjugated_by(&self, x: &Permutation) -> Group {
        let n = self.degree;
        let levels = self
            .levels
            .iter()
            .map(|l| {
                let orbit: Vec<u32> = l.orbit.iter().map(|&y| x.image(y)).collect();
                let mut pos = vec![NONE; n];
                for (i, &y) in orbit.iter().enumerate() {
                    pos[y as usize] = i as u32;
                }
                Level {
                    point: x.image(l.point),
                    gens: l.gens.iter().map(|g| g.conjugate_by(x)).collect(),
                    orbit,
                    pos,
                    reps: l.reps.iter().map(|g| g.conjugate_by(x)).collect(),
                    reps_inv: l.reps_inv.iter().map(|g| g.conjugate_by(x)).collect(),
                }
            })
            .collect();
        Group {
            degree: n,
            generators: self.generators.iter().map(|g| g.conjugate_by(x)).collect(),
            levels,
            order: self.order.clone(),
            catalog: None,
            table: OnceLock::new(),
        }
    }

    /// Same group rebuilt so that its base starts with `prefix`.
    pub(crate) fn rebased(&self, prefix: &[u32]) -> Group {
        let mut g = Group::with_base_prefix(self.degree, self.generators.clone(), prefix).expect("same degree");
        g.catalog = self.catalog.clone();
        g
    }

    /// Lazily built element table; only for small groups.
    pub(crate) fn table(&self, cap: u64) -> Result<Arc<ElementTable>> {
        if let Some(t) = self.table.get() {
            return Ok(t.clone());
        }
        match self.order_u64() {
            Some(n) if n <= cap => {}
            _ => return Err(Error::cap("group order for element tables", cap, &self.order)),
        }
        let t = Arc::new(ElementTable::build(self));
        Ok(self.table.get_or_init(|| t).clone())
    }
}

pub(crate) fn orbits_of(degree: usize, gens: &[Permutation]) -> Vec<Vec<u32>> {
    let mut seen = vec![false; degree];
    let mut out = Vec::new();
    for start in 0..degree {
        if seen[start] {
            continue;
        }
        seen[start] = true;
        let mut orbit = vec![start as u32];
        let mut queue = VecDeque::from([start as u32]);
        while let Some(x) = queue.pop_front() {
            for g in gens {
                let y = g.image(x);
                if !seen[y as usize] {
                    seen[y as usize] = true;
                    orbit.push(y);
                    queue.push_back(y);
                }
            }
        }
        orbit.sort_unstable();
        out.push(orbit);
    }
    out
}

pub(crate) fn orbits_of_point(degree: usize, gens: &[Permutation], point: u32) -> Vec<u32> {
    let mut seen = vec![false; degree];
    seen[point as usize] = true;
    let mut orbit = vec![point];
    let mut head = 0;
    while head < orbit.len() {
        let x = orbit[head];
        for g in gens {
            let y = g.image(x);
            if !seen[y as usize] {
                seen[y as usize] = true;
                orbit.push(y);
            }
        }
        head += 1;
    }
    orbit
}

impl fmt::Debug for Group {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "Group(degree {}, order {}, {} generators, base {:?})",
            self.degree,
            self.order,
            self.generators.len(),
            self.base()
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;
    use std::collections::HashSet;

    fn p(text: &str, n: usize) -> Permutation {
        Permutation::from_cycles(text, n).unwrap()
    }

    /// Closure by repeated multiplication, for cross-checking.
    fn naive_closure(n: usize, gens: &[Permutation]) -> HashSet<Permutation> {
        let mut set: HashSet<Permutation> = HashSet::from([Permutation::identity(n)]);
        let mut frontier = vec![Permutation::identity(n)];
        while let Some(x) = frontier.pop() {
            for g in gens {
                let y = x.then(g);
                if set.insert(y.clone()) {
                    frontier.push(y);
                }
            }
        }
        set
    }

    #[test]
    fn orders_of_standard_groups() {
        let s5 = Group::new(5, vec![p("(1 2)", 5), p("(1 2 3 4 5)", 5)]).unwrap();
        assert_eq!(s5.order(), &BigUint::from(120u32));
        let a5 = Group::new(5, vec![p("(1 2 3)", 5), p("(3 4 5)", 5)]).unwrap();
        assert_eq!(a5.order_u64(), Some(60));
        assert_eq!(naive_closure(5, a5.generators()).len(), 60);
        let t = Group::new(4, vec![]).unwrap();
        assert_eq!(t.order_u64(), Some(1));
        assert!(t.contains(&Permutation::identity(4)).unwrap());
    }

    #[test]
    fn order_is_product_of_orbit_lengths() {
        let g = Group::new(7, vec![p("(1 2 3 4 5 6 7)", 7), p("(2 3 5)(4 7 6)", 7)]).unwrap();
        let product: usize = g.fundamental_orbits().iter().map(|o| o.len()).product();
        assert_eq!(BigUint::from(product), *g.order());
        assert_eq!(g.order_u64(), Some(21));
        assert_eq!(g.elements(100).unwrap().len(), 21);
    }

    #[test]
    fn membership_and_degree_checks() {
        let s4 = Group::new(4, vec![p("(1 2)", 4), p("(1 2 3 4)", 4)]).unwrap();
        assert!(s4.contains(&p("(1 2 3 4)", 4)).unwrap());
        let a4 = Group::new(4, vec![p("(1 2 3)", 4), p("(2 3 4)", 4)]).unwrap();
        assert!(!a4.contains(&p("(1 2)", 4)).unwrap());
        assert!(a4.contains(&p("(1 2)(3 4)", 4)).unwrap());
        assert!(a4.contains(&Permutation::identity(5)).is_err());
        assert!(Group::new(4, vec![p("(1 2)", 5)]).is_err());
    }

    #[test]
    fn elements_cap_and_order() {
        let s3 = Group::new(3, vec![p("(1 2)", 3), p("(1 2 3)", 3)]).unwrap();
        let els = s3.elements(10).unwrap();
        assert_eq!(els.len(), 6);
        assert_eq!(els.iter().collect::<HashSet<_>>().len(), 6);
        assert_eq!(Group::trivial(3).elements(1).unwrap(), vec![Permutation::identity(3)]);
        let a5 = Group::new(5, vec![p("(1 2 3)", 5), p("(3 4 5)", 5)]).unwrap();
        assert!(matches!(a5.elements(30), Err(Error::CapExceeded { .. })));
    }

    #[test]
    fn construction_is_deterministic() {
        let gens = vec![p("(1 2 3 4 5 6)", 6), p("(1 2)", 6)];
        let a = Group::new(6, gens.clone()).unwrap();
        let b = Group::new(6, gens).unwrap();
        assert_eq!(a.base(), b.base());
        assert_eq!(a.elements(1000).unwrap(), b.elements(1000).unwrap());
        // first point moved by the first generator
        assert_eq!(a.base()[0], 0);
    }

    #[test]
    fn base_prefix_is_respected() {
        let gens = vec![p("(1 2 3 4 5)", 5), p("(1 2)", 5)];
        let g = Group::with_base_prefix(5, gens, &[4, 2]).unwrap();
        assert_eq!(&g.base()[..2], &[4, 2]);
        assert_eq!(g.order_u64(), Some(120));
    }

    #[test]
    fn membership_agrees_with_closure() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let s6 = Group::new(6, vec![p("(1 2)", 6), p("(1 2 3 4 5 6)", 6)]).unwrap();
        for _ in 0..20 {
            let gens: Vec<Permutation> = (0..2).map(|_| s6.random_element(&mut rng)).collect();
            let g = Group::new(6, gens.clone()).unwrap();
            let closure = naive_closure(6, &gens);
            assert_eq!(BigUint::from(closure.len()), *g.order());
            if closure.len() <= 200 {
                s6.for_each_element(|x| assert_eq!(g.contains_unchecked(x), closure.contains(x)));
            }
        }
    }

    #[test]
    fn conjugated_chain_is_valid() {
        let a4 = Group::new(4, vec![p("(1 2 3)", 4), p("(2 3 4)", 4)]).unwrap();
        let x = p("(1 4)", 4);
        let c = a4.conjugated_by(&x);
        assert_eq!(c.order(), a4.order());
        for g in a4.generators() {
            assert!(c.contains_unchecked(&g.conjugate_by(&x)));
        }
        assert!(c.same_group(&a4));
    }

    #[test]
    fn partial_images() {
        let a4 = Group::new(4, vec![p("(1 2 3)", 4), p("(2 3 4)", 4)]).unwrap();
        let base = a4.base();
        let mut ok = 0;
        a4.for_each_element(|g| {
            let imgs: Vec<u32> = base.iter().map(|&b| g.image(b)).collect();
            assert!(a4.partial_images_possible(&imgs));
            ok += 1;
        });
        assert_eq!(ok, 12);
        let c3 = Group::new(4, vec![p("(1 2 3)", 4)]).unwrap();
        let b = c3.base()[0];
        assert!(c3.partial_images_possible(&[c3.generators()[0].image(b)]));
        assert!(!c3.partial_images_possible(&[3]));
    }
}
