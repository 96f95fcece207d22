//! Matrices over small fields and their actions on vectors.
//!
//! Matrices act on row vectors from the right, `v ↦ v·g`, which composes
//! left to right like permutations do. Vectors are numbered in lexicographic
//! order of their coordinates (first coordinate most significant), nonzero
//! vectors starting at point 0; projective points are the nonzero vectors
//! whose first nonzero coordinate is 1, in the same order.

use super::field::Field;
use crate::perm::Permutation;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix {
    pub n: usize,
    pub entries: Vec<u32>,
}

impl Matrix {
    pub fn identity(n: usize) -> Matrix {
        let mut entries = vec![0; n * n];
        for i in 0..n {
            entries[i * n + i] = 1;
        }
        Matrix { n, entries }
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> u32 {
        self.entries[i * self.n + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, x: u32) {
        self.entries[i * self.n + j] = x;
    }

    pub fn mul(&self, other: &Matrix, f: &Field) -> Matrix {
        let n = self.n;
        let mut out = Matrix { n, entries: vec![0; n * n] };
        for i in 0..n {
            for j in 0..n {
                let mut s = 0;
                for k in 0..n {
                    s = f.add(s, f.mul(self.get(i, k), other.get(k, j)));
                }
                out.set(i, j, s);
            }
        }
        out
    }

    pub fn transpose(&self) -> Matrix {
        let n = self.n;
        let mut out = self.clone();
        for i in 0..n {
            for j in 0..n {
                out.set(i, j, self.get(j, i));
            }
        }
        out
    }

    /// Inverse by Gauss–Jordan elimination, `None` when singular.
    pub fn inverse(&self, f: &Field) -> Option<Matrix> {
        let n = self.n;
        let mut a = self.clone();
        let mut b = Matrix::identity(n);
        for col in 0..n {
            let pivot = (col..n).find(|&r| a.get(r, col) != 0)?;
            for j in 0..n {
                a.entries.swap(col * n + j, pivot * n + j);
                b.entries.swap(col * n + j, pivot * n + j);
            }
            let s = f.inv(a.get(col, col));
            for j in 0..n {
                a.set(col, j, f.mul(a.get(col, j), s));
                b.set(col, j, f.mul(b.get(col, j), s));
            }
            for r in 0..n {
                let c = a.get(r, col);
                if r != col && c != 0 {
                    for j in 0..n {
                        a.set(r, j, f.sub(a.get(r, j), f.mul(c, a.get(col, j))));
                        b.set(r, j, f.sub(b.get(r, j), f.mul(c, b.get(col, j))));
                    }
                }
            }
        }
        Some(b)
    }

    pub fn determinant(&self, f: &Field) -> u32 {
        let n = self.n;
        let mut a = self.clone();
        let mut det = 1;
        for col in 0..n {
            let Some(pivot) = (col..n).find(|&r| a.get(r, col) != 0) else {
                return 0;
            };
            if pivot != col {
                for j in 0..n {
                    a.entries.swap(col * n + j, pivot * n + j);
                }
                det = f.neg(det);
            }
            let d = a.get(col, col);
            det = f.mul(det, d);
            let s = f.inv(d);
            for r in col + 1..n {
                let c = f.mul(a.get(r, col), s);
                if c != 0 {
                    for j in 0..n {
                        a.set(r, j, f.sub(a.get(r, j), f.mul(c, a.get(col, j))));
                    }
                }
            }
        }
        det
    }

    /// `I + t·E_ij`.
    pub fn transvection(n: usize, i: usize, j: usize, t: u32) -> Matrix {
        let mut m = Matrix::identity(n);
        m.set(i, j, t);
        m
    }

    pub fn diagonal(entries: &[u32]) -> Matrix {
        let mut m = Matrix::identity(entries.len());
        for (i, &x) in entries.iter().enumerate() {
            m.set(i, i, x);
        }
        m
    }
}

/// `v·g` for a coordinate vector `v`.
pub fn act(v: &[u32], g: &Matrix, f: &Field) -> Vec<u32> {
    (0..g.n)
        .map(|j| v.iter().enumerate().fold(0, |s, (k, &x)| f.add(s, f.mul(x, g.get(k, j)))))
        .collect()
}

pub fn vector_index(v: &[u32], q: u32) -> usize {
    v.iter().fold(0usize, |acc, &x| acc * q as usize + x as usize)
}

pub fn vector_of(mut index: usize, n: usize, q: u32) -> Vec<u32> {
    let mut v = vec![0; n];
    for slot in v.iter_mut().rev() {
        *slot = (index % q as usize) as u32;
        index /= q as usize;
    }
    v
}

/// The permutation domain of a matrix action.
#[derive(Clone, Debug)]
pub struct VectorDomain {
    pub n: usize,
    pub projective: bool,
    points: Vec<Vec<u32>>,
    /// Vector index to point, `u32::MAX` off the domain.
    lookup: Vec<u32>,
}

impl VectorDomain {
    pub fn new(n: usize, f: &Field, projective: bool) -> VectorDomain {
        let q = f.order();
        let total = (q as usize).pow(n as u32);
        let mut points = Vec::new();
        let mut lookup = vec![u32::MAX; total];
        for idx in 1..total {
            let v = vector_of(idx, n, q);
            if projective && v.iter().find(|&&x| x != 0) != Some(&1) {
                continue;
            }
            lookup[idx] = points.len() as u32;
            points.push(v);
        }
        VectorDomain {
            n,
            projective,
            points,
            lookup,
        }
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn point(&self, i: usize) -> &[u32] {
        &self.points[i]
    }

    /// Point number of a nonzero vector (normalized first when projective).
    pub fn index(&self, v: &[u32], f: &Field) -> u32 {
        let q = f.order();
        if self.projective {
            let lead = *v.iter().find(|&&x| x != 0).expect("nonzero vector");
            let s = f.inv(lead);
            let w: Vec<u32> = v.iter().map(|&x| f.mul(x, s)).collect();
            self.lookup[vector_index(&w, q)]
        } else {
            self.lookup[vector_index(v, q)]
        }
    }

    pub fn permutation(&self, g: &Matrix, f: &Field) -> Permutation {
        let images = self.points.iter().map(|v| self.index(&act(v, g, f), f)).collect();
        Permutation::from_images_unchecked(images)
    }
}

/// Generators of SL(n,q): transvections `I + ωʲE₁₂` for an additive basis,
/// and two monomial matrices of determinant 1 permuting coordinates.
pub fn sl_generators(n: usize, f: &Field) -> Vec<Matrix> {
    if n == 1 {
        return Vec::new();
    }
    let mut gens: Vec<Matrix> = f
        .additive_basis()
        .into_iter()
        .map(|t| Matrix::transvection(n, 0, 1, t))
        .collect();
    let minus_one = f.neg(1);
    // e_i -> e_{i+1}, e_n -> ±e_1
    let mut cycle = Matrix { n, entries: vec![0; n * n] };
    for i in 0..n - 1 {
        cycle.set(i, i + 1, 1);
    }
    cycle.set(n - 1, 0, if n % 2 == 0 { minus_one } else { 1 });
    let mut swap = Matrix::identity(n);
    swap.set(0, 0, 0);
    swap.set(1, 1, 0);
    swap.set(0, 1, 1);
    swap.set(1, 0, minus_one);
    gens.push(cycle);
    gens.push(swap);
    gens
}

pub fn gl_generators(n: usize, f: &Field) -> Vec<Matrix> {
    let mut gens = sl_generators(n, f);
    if f.order() > 2 {
        let mut d = vec![1; n];
        d[0] = f.primitive();
        gens.push(Matrix::diagonal(&d));
    }
    gens
}

/// Generators of the stabilizer of the standard flag with successive
/// quotient dimensions `dims`: block upper triangular matrices whose
/// diagonal blocks are arbitrary invertible.
pub fn flag_generators(dims: &[usize], f: &Field) -> Vec<Matrix> {
    let n: usize = dims.iter().sum();
    let mut gens = Vec::new();
    let mut offset = 0;
    for &d in dims {
        for block in gl_generators(d, f) {
            let mut m = Matrix::identity(n);
            for i in 0..d {
                for j in 0..d {
                    m.set(offset + i, offset + j, block.get(i, j));
                }
            }
            gens.push(m);
        }
        offset += d;
    }
    let mut starts = Vec::new();
    let mut acc = 0;
    for &d in dims {
        starts.push(acc);
        acc += d;
    }
    // one transvection per basis scalar between consecutive blocks; together
    // with the diagonal blocks these generate the whole unipotent radical
    for b in 0..dims.len().saturating_sub(1) {
        let (i, j) = (starts[b + 1] - 1, starts[b + 1]);
        for t in f.additive_basis() {
            gens.push(Matrix::transvection(n, i, j, t));
        }
    }
    gens
}

/// `(g^T)^{-1}`.
pub fn transpose_inverse(g: &Matrix, f: &Field) -> Matrix {
    g.inverse(f).expect("invertible").transpose()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inverse_and_determinant() {
        let f = Field::new(5).unwrap();
        let gens = gl_generators(3, &f);
        let mut g = Matrix::identity(3);
        for h in gens.iter().cycle().take(7) {
            g = g.mul(h, &f);
        }
        let gi = g.inverse(&f).unwrap();
        assert_eq!(g.mul(&gi, &f), Matrix::identity(3));
        for h in sl_generators(3, &f) {
            assert_eq!(h.determinant(&f), 1);
        }
        let mut singular = Matrix::identity(2);
        singular.set(1, 1, 0);
        assert!(singular.inverse(&f).is_none());
        assert_eq!(singular.determinant(&f), 0);
    }

    #[test]
    fn domains() {
        let f = Field::new(3).unwrap();
        assert_eq!(VectorDomain::new(2, &f, false).len(), 8);
        assert_eq!(VectorDomain::new(2, &f, true).len(), 4);
        let d = VectorDomain::new(3, &Field::new(2).unwrap(), false);
        assert_eq!(d.point(0), &[0, 0, 1]);
        assert_eq!(d.point(6), &[1, 1, 1]);
    }

    #[test]
    fn action_is_a_right_action() {
        let f = Field::new(4).unwrap();
        let dom = VectorDomain::new(2, &f, false);
        let gens = gl_generators(2, &f);
        let (a, b) = (&gens[0], &gens[gens.len() - 1]);
        let lhs = dom.permutation(&a.mul(b, &f), &f);
        let rhs = dom.permutation(a, &f).then(&dom.permutation(b, &f));
        assert_eq!(lhs, rhs);
    }
}
