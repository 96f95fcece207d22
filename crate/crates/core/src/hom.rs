//! Homomorphisms given by generator images.
//!
//! The map is stored as its graph: the group generated by `g ⊔ φ(g)` on the
//! disjoint union of both domains, with a base taken inside the source
//! block. The map is well defined exactly when the graph has the order of the
//! source, and evaluation is sifting on the source block.

use num_bigint::BigUint;

use crate::error::{Error, Result};
use crate::group::Group;
use crate::perm::Permutation;

#[derive(Clone, Debug)]
pub struct Homomorphism {
    source_degree: usize,
    target_degree: usize,
    graph: Group,
}

/// `a` on the first block and `b` on the second.
pub(crate) fn juxtapose(a: &Permutation, b: &Permutation) -> Permutation {
    let n = a.degree();
    let images: Vec<u32> = a
        .images()
        .iter()
        .copied()
        .chain(b.images().iter().map(|&x| x + n as u32))
        .collect();
    Permutation::from_images_unchecked(images)
}

impl Homomorphism {
    /// Homomorphism from `source` sending its i-th generator to `images[i]`.
    pub fn new(source: &Group, images: Vec<Permutation>, target_degree: usize) -> Result<Self> {
        if images.len() != source.generators().len() {
            return Err(Error::Precondition(format!(
                "{} generator images for {} generators",
                images.len(),
                source.generators().len()
            )));
        }
        for im in &images {
            if im.degree() != target_degree {
                return Err(Error::DegreeMismatch {
                    expected: target_degree,
                    found: im.degree(),
                });
            }
        }
        let n = source.degree();
        let gens: Vec<Permutation> = source
            .generators()
            .iter()
            .zip(&images)
            .map(|(g, h)| juxtapose(g, h))
            .collect();
        let graph = Group::with_base_prefix(n + target_degree, gens, &source.base())?;
        if graph.order() != source.order() {
            return Err(Error::Precondition(
                "generator images do not define a homomorphism".into(),
            ));
        }
        Ok(Homomorphism {
            source_degree: n,
            target_degree,
            graph,
        })
    }

    /// Image of an element of the source group.
    pub fn apply(&self, x: &Permutation) -> Permutation {
        let n = self.source_degree;
        let mut residue = juxtapose(x, &Permutation::identity(self.target_degree));
        for level in self.graph.levels() {
            let beta = residue.image(level.point);
            let j = level
                .index_of(beta)
                .expect("element outside the source group");
            residue = residue.then(&level.reps_inv[j]);
        }
        residue.restrict(n, self.target_degree).inverse()
    }

    pub fn image_group(&self) -> Result<Group> {
        let gens: Vec<Permutation> = self
            .graph
            .generators()
            .iter()
            .map(|g| g.restrict(self.source_degree, self.target_degree))
            .collect();
        Group::new(self.target_degree, gens)
    }

    pub fn kernel_order(&self) -> Result<BigUint> {
        Ok(self.graph.order() / self.image_group()?.order())
    }

    pub fn target_degree(&self) -> usize {
        self.target_degree
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(text: &str, n: usize) -> Permutation {
        Permutation::from_cycles(text, n).unwrap()
    }

    #[test]
    fn sign_map() {
        let s4 = Group::new(4, vec![p("(1 2)", 4), p("(1 2 3 4)", 4)]).unwrap();
        let sign = Homomorphism::new(&s4, vec![p("(1 2)", 2), p("(1 2)", 2)], 2).unwrap();
        assert_eq!(sign.kernel_order().unwrap(), BigUint::from(12u32));
        assert!(sign.apply(&p("(1 2 3)", 4)).is_identity());
        assert!(sign.apply(&p("(1 2)(3 4)", 4)).is_identity());
        assert!(!sign.apply(&p("(1 3)", 4)).is_identity());
    }

    #[test]
    fn rejects_non_homomorphisms() {
        let s3 = Group::new(3, vec![p("(1 2)", 3), p("(1 2 3)", 3)]).unwrap();
        // (1 2 3) has order 3 but would go to an element of order 2
        let bad = Homomorphism::new(&s3, vec![p("(1 2)", 2), p("(1 2)", 2)], 2);
        assert!(bad.is_err());
    }
}
