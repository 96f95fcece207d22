//! Conjugacy classes of π-subgroups by breadth-first extension.
//!
//! Every π-subgroup is reached from the root by adding one π-element at a
//! time, each step staying inside a π-subgroup. Class representatives are
//! extended by one representative of each double coset `S g S` that contains
//! a π-element, closures that stop being π-groups are abandoned as soon as
//! they outgrow the π-part of `|G|`, and new subgroups are merged into known
//! classes by an invariant fingerprint followed by an explicit conjugacy
//! test. Representatives are the first subgroups met in this deterministic
//! order.

use fixedbitset::FixedBitSet;
use rustc_hash::FxHashMap;

use crate::error::{Error, Result};
use crate::hall::PrimeSet;
use crate::table::{ElemId, ElementTable, SubTable};

pub(crate) struct PiClass {
    pub(crate) rep: SubTable,
    /// No π-element extends the representative to a larger π-subgroup.
    pub(crate) maximal: bool,
}

/// Where the search starts.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum Root {
    /// The trivial subgroup: every π-subgroup class is visited.
    Trivial,
    /// A Sylow `p`-subgroup: every class of π-subgroups containing a Sylow
    /// `p`-subgroup is visited, which includes every Hall class when `p ∈ π`.
    Sylow(u64),
}

/// Default bound on the number of classes a search may hold.
pub(crate) const CLASS_BUDGET: usize = 50_000;

fn fingerprint_key(fp: &[(u32, u32, u32)]) -> u64 {
    use std::hash::{Hash, Hasher};
    let mut h = rustc_hash::FxHasher::default();
    fp.hash(&mut h);
    h.finish()
}

pub(crate) fn pi_classes(table: &ElementTable, pi: &PrimeSet, root: Root, class_budget: usize) -> Result<Vec<PiClass>> {
    let n = table.len();
    let target = pi.part_u64(n as u64) as usize;
    let is_pi: Vec<bool> = table.orders.iter().map(|&o| pi.is_pi_number(o as u64)).collect();
    let whole = table.whole();
    let start = match root {
        Root::Trivial => SubTable::trivial(table),
        Root::Sylow(p) => {
            let part = crate::hall::PrimeSet::from_primes([p]).part_u64(n as u64) as usize;
            crate::subgroup::sylow_in_table(table, &whole, p, part)
        }
    };
    let mut classes: Vec<PiClass> = vec![PiClass {
        rep: start,
        maximal: true,
    }];
    let mut buckets: FxHashMap<u64, Vec<usize>> = FxHashMap::default();
    buckets
        .entry(fingerprint_key(&classes[0].rep.fingerprint(table)))
        .or_default()
        .push(0);
    let mut head = 0;
    while head < classes.len() {
        let s = classes[head].rep.clone();
        let mut marked: FixedBitSet = s.bits.clone();
        let mut extended = false;
        for g in 0..n as ElemId {
            if marked.contains(g as usize) || !is_pi[g as usize] {
                continue;
            }
            mark_double_coset(table, &s, g, &mut marked);
            let Some(t) = s.extend(table, g, target) else {
                continue;
            };
            if target % t.order() != 0 {
                continue;
            }
            extended = true;
            let key = fingerprint_key(&t.fingerprint(table));
            let bucket = buckets.entry(key).or_default();
            let known = bucket.iter().any(|&c| {
                let rep = &classes[c].rep;
                rep.order() == t.order() && (rep.bits == t.bits || t.transporter_to(table, &whole, rep).is_some())
            });
            if !known {
                if classes.len() >= class_budget {
                    return Err(Error::cap("pi-subgroup classes", class_budget as u64, classes.len() + 1));
                }
                bucket.push(classes.len());
                classes.push(PiClass { rep: t, maximal: true });
            }
        }
        classes[head].maximal = !extended;
        head += 1;
    }
    Ok(classes)
}

/// Marks every element of `S g S`.
fn mark_double_coset(table: &ElementTable, s: &SubTable, g: ElemId, marked: &mut FixedBitSet) {
    let mut stack = vec![g];
    marked.insert(g as usize);
    while let Some(x) = stack.pop() {
        for &h in &s.gens {
            for y in [table.mul(x, h), table.mul(h, x)] {
                if !marked.contains(y as usize) {
                    marked.insert(y as usize);
                    stack.push(y);
                }
            }
        }
    }
}

/// Size of the conjugacy class of a subgroup: `|G : N_G(S)|`.
pub(crate) fn class_size(table: &ElementTable, s: &SubTable) -> usize {
    table.len() / s.normalizer_in(table, &table.whole()).order()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::Group;
    use crate::perm::Permutation;

    fn p(text: &str, n: usize) -> Permutation {
        Permutation::from_cycles(text, n).unwrap()
    }

    fn orders(classes: &[PiClass], maximal_only: bool) -> Vec<usize> {
        let mut v: Vec<usize> = classes
            .iter()
            .filter(|c| c.maximal || !maximal_only)
            .map(|c| c.rep.order())
            .collect();
        v.sort_unstable();
        v
    }

    #[test]
    fn alternating_five() {
        let a5 = Group::new(5, vec![p("(1 2 3)", 5), p("(3 4 5)", 5)]).unwrap();
        let t = a5.table(100).unwrap();
        let c = pi_classes(&t, &PrimeSet::from_primes([2, 3]), Root::Trivial, CLASS_BUDGET).unwrap();
        assert_eq!(orders(&c, true), vec![6, 12]);
        // all {2,3}-subgroup classes of A5: 1, 2, 3, 4, 6, 12
        assert_eq!(orders(&c, false), vec![1, 2, 3, 4, 6, 12]);
        let c = pi_classes(&t, &PrimeSet::from_primes([3, 5]), Root::Trivial, CLASS_BUDGET).unwrap();
        assert_eq!(orders(&c, true), vec![3, 5]);
        let c = pi_classes(&t, &PrimeSet::from_primes([2, 5]), Root::Sylow(2), CLASS_BUDGET).unwrap();
        assert_eq!(orders(&c, false), vec![4]);
    }
}
