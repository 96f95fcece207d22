//! Explicit element tables for small groups.
//!
//! Elements are numbered in transversal-word order (identity is 0). Products
//! are looked up through the base-image tuple, which determines an element.
//! Subsets of the group are [`FixedBitSet`]s over these indices.

use fixedbitset::FixedBitSet;
use rustc_hash::FxHashMap;

use crate::group::Group;
use crate::perm::Permutation;

pub(crate) type ElemId = u32;

pub(crate) struct ElementTable {
    pub(crate) perms: Vec<Permutation>,
    base: Vec<u32>,
    bits: u32,
    packed: FxHashMap<u128, ElemId>,
    wide: FxHashMap<Vec<u32>, ElemId>,
    pub(crate) inv: Vec<ElemId>,
    pub(crate) orders: Vec<u32>,
    /// Conjugacy class id of each element; ids numbered by least member.
    pub(crate) class_of: Vec<u32>,
    pub(crate) class_reps: Vec<ElemId>,
    pub(crate) class_sizes: Vec<u32>,
    /// Indices of the group's own generators.
    pub(crate) gens: Vec<ElemId>,
}

impl ElementTable {
    pub(crate) fn build(group: &Group) -> Self {
        let base = group.base();
        let degree = group.degree().max(2);
        let bits = usize::BITS - (degree - 1).leading_zeros();
        let mut perms = Vec::new();
        group.for_each_element(|g| perms.push(g.clone()));
        let mut table = ElementTable {
            perms,
            base,
            bits,
            packed: FxHashMap::default(),
            wide: FxHashMap::default(),
            inv: Vec::new(),
            orders: Vec::new(),
            class_of: Vec::new(),
            class_reps: Vec::new(),
            class_sizes: Vec::new(),
            gens: Vec::new(),
        };
        let use_packed = table.uses_packed();
        for (i, p) in table.perms.iter().enumerate() {
            let images: Vec<u32> = table.base.iter().map(|&b| p.image(b)).collect();
            if use_packed {
                table.packed.insert(pack(&images, bits), i as ElemId);
            } else {
                table.wide.insert(images, i as ElemId);
            }
        }
        let n = table.perms.len();
        table.inv = (0..n).map(|i| table.index_of(&table.perms[i].inverse())).collect();
        table.orders = (0..n).map(|i| table.perms[i].order_u64() as u32).collect();
        table.gens = group.generators().iter().map(|g| table.index_of(g)).collect();
        table.compute_classes();
        table
    }

    fn uses_packed(&self) -> bool {
        self.base.len() as u32 * self.bits <= 128
    }

    #[inline]
    pub(crate) fn len(&self) -> usize {
        self.perms.len()
    }

    #[inline]
    fn lookup(&self, images: &[u32]) -> ElemId {
        if self.uses_packed() {
            self.packed[&pack(images, self.bits)]
        } else {
            self.wide[images]
        }
    }

    /// Index of a permutation known to lie in the group.
    pub(crate) fn index_of(&self, p: &Permutation) -> ElemId {
        let images: Vec<u32> = self.base.iter().map(|&b| p.image(b)).collect();
        self.lookup(&images)
    }

    /// Product `a` then `b`.
    #[inline]
    pub(crate) fn mul(&self, a: ElemId, b: ElemId) -> ElemId {
        let pa = &self.perms[a as usize];
        let pb = &self.perms[b as usize];
        if self.uses_packed() {
            let mut key: u128 = 0;
            for &x in &self.base {
                key = (key << self.bits) | pb.image(pa.image(x)) as u128;
            }
            self.packed[&key]
        } else {
            let images: Vec<u32> = self.base.iter().map(|&x| pb.image(pa.image(x))).collect();
            self.wide[&images]
        }
    }

    /// `x^-1 a x`.
    #[inline]
    pub(crate) fn conj(&self, a: ElemId, x: ElemId) -> ElemId {
        self.mul(self.mul(self.inv[x as usize], a), x)
    }

    pub(crate) fn perm(&self, a: ElemId) -> &Permutation {
        &self.perms[a as usize]
    }

    fn compute_classes(&mut self) {
        let n = self.len();
        let mut class_of = vec![u32::MAX; n];
        let mut reps = Vec::new();
        let mut sizes = Vec::new();
        for start in 0..n {
            if class_of[start] != u32::MAX {
                continue;
            }
            let id = reps.len() as u32;
            reps.push(start as ElemId);
            class_of[start] = id;
            let mut stack = vec![start as ElemId];
            let mut size = 1u32;
            while let Some(a) = stack.pop() {
                for &g in &self.gens {
                    let b = self.conj(a, g);
                    if class_of[b as usize] == u32::MAX {
                        class_of[b as usize] = id;
                        size += 1;
                        stack.push(b);
                    }
                }
            }
            sizes.push(size);
        }
        self.class_of = class_of;
        self.class_reps = reps;
        self.class_sizes = sizes;
    }

    pub(crate) fn empty_set(&self) -> FixedBitSet {
        FixedBitSet::with_capacity(self.len())
    }

    /// Subgroup generated by `gens`, or `None` once it grows past `cap` elements.
    pub(crate) fn closure(&self, gens: &[ElemId], cap: usize) -> Option<SubTable> {
        let mut sub = SubTable::trivial(self);
        for &g in gens {
            if !sub.bits.contains(g as usize) {
                sub = sub.extend(self, g, cap)?;
            }
        }
        Some(sub)
    }

    /// Bit set of the elements of a subgroup given by permutations.
    pub(crate) fn subgroup_of(&self, gens: &[Permutation]) -> SubTable {
        let ids: Vec<ElemId> = gens.iter().map(|g| self.index_of(g)).collect();
        self.closure(&ids, usize::MAX).expect("uncapped")
    }

    pub(crate) fn whole(&self) -> SubTable {
        let mut bits = self.empty_set();
        bits.insert_range(..);
        SubTable {
            elems: (0..self.len() as ElemId).collect(),
            bits,
            gens: self.gens.clone(),
        }
    }
}

fn pack(images: &[u32], bits: u32) -> u128 {
    images.iter().fold(0u128, |acc, &x| (acc << bits) | x as u128)
}

/// A subgroup inside an [`ElementTable`].
#[derive(Clone, Debug)]
pub(crate) struct SubTable {
    pub(crate) elems: Vec<ElemId>,
    pub(crate) bits: FixedBitSet,
    pub(crate) gens: Vec<ElemId>,
}

impl SubTable {
    pub(crate) fn trivial(table: &ElementTable) -> Self {
        let mut bits = table.empty_set();
        bits.insert(0);
        SubTable {
            elems: vec![0],
            bits,
            gens: Vec::new(),
        }
    }

    pub(crate) fn order(&self) -> usize {
        self.elems.len()
    }

    #[inline]
    pub(crate) fn contains(&self, a: ElemId) -> bool {
        self.bits.contains(a as usize)
    }

    /// `<self, g>` by coset enumeration over right cosets of `self`; gives up
    /// (returns `None`) once the result would exceed `cap` elements.
    pub(crate) fn extend(&self, table: &ElementTable, g: ElemId, cap: usize) -> Option<SubTable> {
        if self.contains(g) {
            return Some(self.clone());
        }
        let mut gens = self.gens.clone();
        gens.push(g);
        let mut elems = self.elems.clone();
        let mut bits = self.bits.clone();
        let mut reps: Vec<ElemId> = vec![0];
        let add_coset = |r: ElemId, elems: &mut Vec<ElemId>, bits: &mut FixedBitSet| -> bool {
            if elems.len() + self.elems.len() > cap {
                return false;
            }
            for &s in &self.elems {
                let x = table.mul(s, r);
                bits.insert(x as usize);
                elems.push(x);
            }
            true
        };
        if !add_coset(g, &mut elems, &mut bits) {
            return None;
        }
        reps.push(g);
        let mut head = 0;
        while head < reps.len() {
            let r = reps[head];
            for &x in &gens {
                let y = table.mul(r, x);
                if !bits.contains(y as usize) {
                    if !add_coset(y, &mut elems, &mut bits) {
                        return None;
                    }
                    reps.push(y);
                }
            }
            head += 1;
        }
        Some(SubTable { elems, bits, gens })
    }

    /// Does conjugation by `x` carry `self` into (hence onto, for equal orders) `other`?
    pub(crate) fn conjugates_into(&self, table: &ElementTable, x: ElemId, other: &SubTable) -> bool {
        self.gens.iter().all(|&a| other.contains(table.conj(a, x)))
    }

    pub(crate) fn is_subset(&self, other: &SubTable) -> bool {
        self.bits.is_subset(&other.bits)
    }

    pub(crate) fn perms(&self, table: &ElementTable) -> Vec<Permutation> {
        self.gens.iter().map(|&g| table.perm(g).clone()).collect()
    }

    /// Conjugation-invariant fingerprint: order plus the multiset of
    /// (element order, ambient class) pairs.
    pub(crate) fn fingerprint(&self, table: &ElementTable) -> Vec<(u32, u32, u32)> {
        let mut counts: FxHashMap<(u32, u32), u32> = FxHashMap::default();
        for &a in &self.elems {
            *counts
                .entry((table.orders[a as usize], table.class_of[a as usize]))
                .or_default() += 1;
        }
        let mut v: Vec<(u32, u32, u32)> = counts.into_iter().map(|((o, c), n)| (o, c, n)).collect();
        v.sort_unstable();
        v
    }

    /// An element of `ambient` conjugating `self` onto `other`, by scanning.
    pub(crate) fn transporter_to(&self, table: &ElementTable, ambient: &SubTable, other: &SubTable) -> Option<ElemId> {
        if self.order() != other.order() {
            return None;
        }
        ambient
            .elems
            .iter()
            .copied()
            .find(|&x| self.conjugates_into(table, x, other))
    }

    /// Normalizer inside `ambient`, by scanning.
    pub(crate) fn normalizer_in(&self, table: &ElementTable, ambient: &SubTable) -> SubTable {
        let gens: Vec<ElemId> = ambient
            .elems
            .iter()
            .copied()
            .filter(|&x| self.conjugates_into(table, x, self))
            .collect();
        // The filtered set is already the whole normalizer.
        let mut bits = table.empty_set();
        for &x in &gens {
            bits.insert(x as usize);
        }
        let generators = minimal_generators(table, &gens);
        SubTable {
            elems: gens,
            bits,
            gens: generators,
        }
    }
}

/// A short generating list for a subset known to be a subgroup.
pub(crate) fn minimal_generators(table: &ElementTable, elems: &[ElemId]) -> Vec<ElemId> {
    let mut sub = SubTable::trivial(table);
    for &x in elems {
        if sub.order() == elems.len() {
            break;
        }
        if !sub.contains(x) {
            sub = sub.extend(table, x, usize::MAX).expect("uncapped");
        }
    }
    sub.gens
}
