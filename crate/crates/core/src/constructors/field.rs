//! Finite fields GF(p^k) as lookup tables.
//!
//! Elements are encoded as integers `0..q`: the base-p digits of an encoding
//! are the coefficients of a polynomial in a fixed root of the defining
//! polynomial, lowest degree first. So `0` is zero, `1` is one, and for prime
//! `q` the encoding is the usual residue.

use crate::error::{Error, Result};

#[derive(Clone, Debug)]
pub struct Field {
    q: u32,
    p: u32,
    k: u32,
    add: Vec<u32>,
    mul: Vec<u32>,
    neg: Vec<u32>,
    inv: Vec<u32>,
    generator: u32,
}

/// Largest field the constructors accept.
pub const MAX_FIELD_ORDER: u64 = 64;

/// `Some((p, k))` when `q = p^k` with `p` prime.
pub fn prime_power(q: u64) -> Option<(u64, u32)> {
    if q < 2 {
        return None;
    }
    let p = (2..=q).find(|d| q % d == 0)?;
    let (mut m, mut k) = (q, 0);
    while m % p == 0 {
        m /= p;
        k += 1;
    }
    (m == 1).then_some((p, k))
}

fn poly_mul_mod(a: &[u32], b: &[u32], modulus: &[u32], p: u32) -> Vec<u32> {
    // modulus is monic of degree k, stored without its leading coefficient
    let k = modulus.len();
    let mut prod = vec![0u32; 2 * k];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            prod[i + j] = (prod[i + j] + x * y) % p;
        }
    }
    for d in (k..2 * k).rev() {
        let c = prod[d];
        if c != 0 {
            prod[d] = 0;
            for (i, &m) in modulus.iter().enumerate() {
                prod[d - k + i] = (prod[d - k + i] + (p - c) * m) % p;
            }
        }
    }
    prod.truncate(k);
    prod
}

fn digits(mut x: u32, p: u32, k: usize) -> Vec<u32> {
    (0..k)
        .map(|_| {
            let d = x % p;
            x /= p;
            d
        })
        .collect()
}

fn encode(d: &[u32], p: u32) -> u32 {
    d.iter().rev().fold(0, |acc, &c| acc * p + c)
}

impl Field {
    pub fn new(q: u64) -> Result<Field> {
        let (p, k) = prime_power(q).ok_or_else(|| Error::range("field order", format!("{q} is not a prime power")))?;
        if q > MAX_FIELD_ORDER {
            return Err(Error::range("field order", format!("{q} > {MAX_FIELD_ORDER}")));
        }
        let (q, p) = (q as u32, p as u32);
        let n = q as usize;
        let mut add = vec![0; n * n];
        for a in 0..q {
            let da = digits(a, p, k as usize);
            for b in 0..q {
                let db = digits(b, p, k as usize);
                let s: Vec<u32> = da.iter().zip(&db).map(|(x, y)| (x + y) % p).collect();
                add[(a * q + b) as usize] = encode(&s, p);
            }
        }
        // smallest monic modulus (by encoding) that makes the table a field
        let mut mul = vec![0; n * n];
        let mut found = false;
        for m in 0..q {
            let modulus = digits(m, p, k as usize);
            if k > 1 && modulus[0] == 0 {
                continue;
            }
            for a in 0..q {
                let da = digits(a, p, k as usize);
                for b in 0..q {
                    let db = digits(b, p, k as usize);
                    mul[(a * q + b) as usize] = encode(&poly_mul_mod(&da, &db, &modulus, p), p);
                }
            }
            let no_zero_divisors = (1..q).all(|a| (1..q).all(|b| mul[(a * q + b) as usize] != 0));
            if no_zero_divisors {
                found = true;
                break;
            }
        }
        assert!(found, "an irreducible polynomial exists for every prime power");
        let neg = (0..q)
            .map(|a| (0..q).find(|&b| add[(a * q + b) as usize] == 0).unwrap())
            .collect();
        let mut inv = vec![0; n];
        for a in 1..q {
            inv[a as usize] = (1..q).find(|&b| mul[(a * q + b) as usize] == 1).unwrap();
        }
        let order_of = |g: u32| {
            let mut x = g;
            let mut e = 1;
            while x != 1 {
                x = mul[(x * q + g) as usize];
                e += 1;
            }
            e
        };
        let generator = (1..q).find(|&g| order_of(g) == q - 1).unwrap();
        Ok(Field {
            q,
            p,
            k,
            add,
            mul,
            neg,
            inv,
            generator,
        })
    }

    pub fn order(&self) -> u32 {
        self.q
    }

    pub fn characteristic(&self) -> u32 {
        self.p
    }

    pub fn degree(&self) -> u32 {
        self.k
    }

    #[inline]
    pub fn add(&self, a: u32, b: u32) -> u32 {
        self.add[(a * self.q + b) as usize]
    }

    #[inline]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        self.mul[(a * self.q + b) as usize]
    }

    #[inline]
    pub fn neg(&self, a: u32) -> u32 {
        self.neg[a as usize]
    }

    #[inline]
    pub fn sub(&self, a: u32, b: u32) -> u32 {
        self.add(a, self.neg(b))
    }

    /// Multiplicative inverse; `a` must be nonzero.
    #[inline]
    pub fn inv(&self, a: u32) -> u32 {
        debug_assert!(a != 0);
        self.inv[a as usize]
    }

    /// A generator of the multiplicative group (the least one).
    pub fn primitive(&self) -> u32 {
        self.generator
    }

    /// `1, ω, …, ω^(k-1)`: spans the field additively.
    pub fn additive_basis(&self) -> Vec<u32> {
        let mut out = vec![1];
        for _ in 1..self.k {
            out.push(self.mul(*out.last().unwrap(), self.generator));
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_powers() {
        assert_eq!(prime_power(8), Some((2, 3)));
        assert_eq!(prime_power(9), Some((3, 2)));
        assert_eq!(prime_power(7), Some((7, 1)));
        assert_eq!(prime_power(6), None);
        assert_eq!(prime_power(1), None);
        assert!(Field::new(6).is_err());
        assert!(Field::new(128).is_err());
    }

    #[test]
    fn field_axioms() {
        for q in [2u64, 3, 4, 5, 7, 8, 9, 16, 25, 27, 32] {
            let f = Field::new(q).unwrap();
            let q = q as u32;
            for a in 0..q {
                assert_eq!(f.add(a, 0), a);
                assert_eq!(f.mul(a, 1), a);
                assert_eq!(f.add(a, f.neg(a)), 0);
                if a != 0 {
                    assert_eq!(f.mul(a, f.inv(a)), 1);
                }
                for b in 0..q {
                    assert_eq!(f.mul(a, b), f.mul(b, a));
                    for c in [0, 1, q - 1] {
                        let lhs = f.mul(a, f.add(b, c));
                        let rhs = f.add(f.mul(a, b), f.mul(a, c));
                        assert_eq!(lhs, rhs);
                        assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
                    }
                }
            }
            let mut seen = vec![false; q as usize];
            let mut x = 1;
            for _ in 0..q - 1 {
                seen[x as usize] = true;
                x = f.mul(x, f.primitive());
            }
            assert_eq!(seen.iter().filter(|&&s| s).count() as u32, q - 1);
        }
    }
}
