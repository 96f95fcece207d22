//! Permutations of `{0, .., n-1}`.
//!
//! Points act on the right: `x^(pq) = (x^p)^q`, so [`Permutation::compose`]
//! applies `self` first. Cycle notation is 1-based at the text boundary and
//! 0-based everywhere else.

use std::fmt;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::One;

use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<u32>,
}

impl Permutation {
    pub fn identity(degree: usize) -> Self {
        Permutation {
            images: (0..degree as u32).collect(),
        }
    }

    /// Builds a permutation from its image list, checking bijectivity.
    pub fn from_images(images: Vec<u32>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for (i, &x) in images.iter().enumerate() {
            let x = x as usize;
            if x >= n {
                return Err(Error::range("image", format!("point {i} maps to {x} >= degree {n}")));
            }
            if std::mem::replace(&mut seen[x], true) {
                return Err(Error::range("image", format!("point {x} is hit twice")));
            }
        }
        Ok(Permutation { images })
    }

    pub(crate) fn from_images_unchecked(images: Vec<u32>) -> Self {
        debug_assert!(Self::from_images(images.clone()).is_ok());
        Permutation { images }
    }

    /// Parses disjoint cycles such as `(1 2 3)(4 5)` or `(1,2,3)`.
    pub fn from_cycles(text: &str, degree: usize) -> Result<Self> {
        if degree == 0 {
            return Err(Error::range("degree", "degree must be at least 1"));
        }
        let mut images: Vec<u32> = (0..degree as u32).collect();
        let mut used = vec![false; degree];
        let bytes = text.as_bytes();
        let mut pos = 0;
        let skip_ws = |pos: &mut usize| {
            while *pos < bytes.len() && bytes[*pos].is_ascii_whitespace() {
                *pos += 1;
            }
        };
        loop {
            skip_ws(&mut pos);
            if pos >= bytes.len() {
                break;
            }
            if bytes[pos] != b'(' {
                return Err(Error::parse(pos, format!("expected '(' but found {:?}", bytes[pos] as char)));
            }
            pos += 1;
            let mut cycle: Vec<u32> = Vec::new();
            loop {
                skip_ws(&mut pos);
                if pos >= bytes.len() {
                    return Err(Error::parse(pos, "unterminated cycle"));
                }
                match bytes[pos] {
                    b')' => {
                        pos += 1;
                        break;
                    }
                    b',' if !cycle.is_empty() => {
                        pos += 1;
                    }
                    b'0'..=b'9' => {
                        let start = pos;
                        while pos < bytes.len() && bytes[pos].is_ascii_digit() {
                            pos += 1;
                        }
                        let value: usize = text[start..pos]
                            .parse()
                            .map_err(|_| Error::parse(start, "point does not fit in an integer"))?;
                        if value == 0 || value > degree {
                            return Err(Error::range(
                                "point",
                                format!("{value} at position {start} is outside 1..={degree}"),
                            ));
                        }
                        let point = value - 1;
                        if std::mem::replace(&mut used[point], true) {
                            return Err(Error::parse(start, format!("point {value} appears more than once")));
                        }
                        cycle.push(point as u32);
                    }
                    c => return Err(Error::parse(pos, format!("unexpected character {:?}", c as char))),
                }
            }
            if cycle.is_empty() {
                return Err(Error::parse(pos - 1, "empty cycle"));
            }
            for (i, &x) in cycle.iter().enumerate() {
                images[x as usize] = cycle[(i + 1) % cycle.len()];
            }
        }
        Ok(Permutation { images })
    }

    #[inline]
    pub fn degree(&self) -> usize {
        self.images.len()
    }

    #[inline]
    pub fn image(&self, point: u32) -> u32 {
        self.images[point as usize]
    }

    pub fn images(&self) -> &[u32] {
        &self.images
    }

    /// `self` followed by `other`: the result maps `x` to `other(self(x))`.
    pub fn compose(&self, other: &Permutation) -> Result<Permutation> {
        if self.degree() != other.degree() {
            return Err(Error::DegreeMismatch {
                expected: self.degree(),
                found: other.degree(),
            });
        }
        Ok(self.then(other))
    }

    /// Unchecked left-to-right product; degrees must agree.
    #[inline]
    pub(crate) fn then(&self, other: &Permutation) -> Permutation {
        debug_assert_eq!(self.degree(), other.degree());
        Permutation {
            images: self.images.iter().map(|&x| other.images[x as usize]).collect(),
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0u32; self.degree()];
        for (i, &x) in self.images.iter().enumerate() {
            inv[x as usize] = i as u32;
        }
        Permutation { images: inv }
    }

    /// `other^-1 * self * other`.
    pub fn conjugate_by(&self, other: &Permutation) -> Permutation {
        let mut out = vec![0u32; self.degree()];
        for (x, &y) in self.images.iter().enumerate() {
            out[other.images[x] as usize] = other.images[y as usize];
        }
        Permutation { images: out }
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| i as u32 == x)
    }

    pub fn first_moved(&self) -> Option<u32> {
        self.images
            .iter()
            .enumerate()
            .find(|&(i, &x)| i as u32 != x)
            .map(|(i, _)| i as u32)
    }

    pub fn pow(&self, mut e: u64) -> Permutation {
        let mut base = self.clone();
        let mut acc = Permutation::identity(self.degree());
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.then(&base);
            }
            base = base.then(&base);
            e >>= 1;
        }
        acc
    }

    /// Nontrivial cycles, each starting at its least point, sorted by that point.
    pub fn cycles(&self) -> Vec<Vec<u32>> {
        let mut seen = vec![false; self.degree()];
        let mut out = Vec::new();
        for start in 0..self.degree() {
            if seen[start] || self.images[start] as usize == start {
                continue;
            }
            let mut cycle = Vec::new();
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                cycle.push(x as u32);
                x = self.images[x] as usize;
            }
            out.push(cycle);
        }
        out
    }

    pub fn order(&self) -> BigUint {
        self.cycles()
            .iter()
            .fold(BigUint::one(), |acc, c| acc.lcm(&BigUint::from(c.len())))
    }

    /// Element order when it fits in a `u64`.
    pub(crate) fn order_u64(&self) -> u64 {
        self.cycles()
            .iter()
            .fold(1u64, |acc, c| acc.lcm(&(c.len() as u64)))
    }

    /// Restriction to the points `offset..offset+len`, which must be invariant.
    pub(crate) fn restrict(&self, offset: usize, len: usize) -> Permutation {
        Permutation {
            images: self.images[offset..offset + len]
                .iter()
                .map(|&x| x - offset as u32)
                .collect(),
        }
    }

    /// Places `self` on the points `offset..offset+degree` of a larger domain.
    pub(crate) fn shifted(&self, offset: usize, total: usize) -> Permutation {
        let mut images: Vec<u32> = (0..total as u32).collect();
        for (i, &x) in self.images.iter().enumerate() {
            images[offset + i] = x + offset as u32;
        }
        Permutation { images }
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return write!(f, "()");
        }
        for c in cycles {
            write!(f, "(")?;
            for (i, x) in c.iter().enumerate() {
                if i > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{}", x + 1)?;
            }
            write!(f, ")")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Permutation[{}]{}", self.degree(), self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(text: &str, n: usize) -> Permutation {
        Permutation::from_cycles(text, n).unwrap()
    }

    #[test]
    fn parses_cycles() {
        assert_eq!(p("(1 2 3)", 3).order(), BigUint::from(3u32));
        assert!(p("", 5).is_identity());
        assert_eq!(p("(1 2)(3 4 5)", 5).order(), BigUint::from(6u32));
        assert_eq!(p("(1,2,3)", 3), p("(1 2 3)", 3));
        assert_eq!(p("(2)", 3), Permutation::identity(3));
    }

    #[test]
    fn parse_errors() {
        assert!(matches!(Permutation::from_cycles("(1 2", 3), Err(Error::Parse { .. })));
        assert!(matches!(Permutation::from_cycles("1 2)", 3), Err(Error::Parse { .. })));
        assert!(matches!(Permutation::from_cycles("(1 2)(2 3)", 3), Err(Error::Parse { .. })));
        assert!(matches!(Permutation::from_cycles("(1 4)", 3), Err(Error::OutOfRange { .. })));
        assert!(matches!(Permutation::from_cycles("(0 1)", 3), Err(Error::OutOfRange { .. })));
        assert!(matches!(Permutation::from_cycles("()", 3), Err(Error::Parse { .. })));
        assert!(Permutation::from_cycles("", 0).is_err());
    }

    #[test]
    fn composition_is_left_to_right() {
        let a = p("(1 2)", 3);
        let b = p("(2 3)", 3);
        let ab = a.compose(&b).unwrap();
        // 1 -> 2 -> 3, 2 -> 1 -> 1, 3 -> 3 -> 2
        assert_eq!(ab.images(), &[2, 0, 1]);
        assert_eq!(ab, p("(1 3 2)", 3));
        assert!(a.compose(&a).unwrap().is_identity());
        assert_eq!(a.compose(&Permutation::identity(3)).unwrap(), a);
        assert!(a.compose(&Permutation::identity(4)).is_err());
    }

    #[test]
    fn conjugation_matches_products() {
        let a = p("(1 2 3 4)", 5);
        let g = p("(1 5)(2 3)", 5);
        let direct = g.inverse().then(&a).then(&g);
        assert_eq!(a.conjugate_by(&g), direct);
    }

    #[test]
    fn display_roundtrip() {
        let a = p("(4 5)(1 3 2)", 6);
        assert_eq!(a.to_string(), "(1 3 2)(4 5)");
        assert_eq!(Permutation::from_cycles(&a.to_string(), 6).unwrap(), a);
        assert_eq!(Permutation::identity(2).to_string(), "()");
    }

    #[test]
    fn from_images_rejects_non_bijections() {
        assert!(Permutation::from_images(vec![0, 0, 1]).is_err());
        assert!(Permutation::from_images(vec![0, 3, 1]).is_err());
        assert!(Permutation::from_images(vec![2, 0, 1]).is_ok());
    }

    #[test]
    fn power_and_order() {
        let a = p("(1 2 3)(4 5)", 5);
        assert!(a.pow(6).is_identity());
        assert!(!a.pow(3).is_identity());
        assert_eq!(a.order_u64(), 6);
    }
}
