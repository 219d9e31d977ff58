//! Coefficient rings and fields used by the tower arithmetic and the linear algebra.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

pub type Q = BigRational;

pub fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

pub fn qf(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

/// Commutative ring operations needed to multiply in a power-basis tower.
pub trait Ring {
    type E: Clone;
    fn zero(&self) -> Self::E;
    fn add(&self, a: &Self::E, b: &Self::E) -> Self::E;
    fn sub(&self, a: &Self::E, b: &Self::E) -> Self::E;
    fn mul(&self, a: &Self::E, b: &Self::E) -> Self::E;
    fn scale(&self, a: &Self::E, c: i64) -> Self::E;
    fn is_zero(&self, a: &Self::E) -> bool;
}

/// Field operations for exact linear algebra.
pub trait Arith {
    type E: Clone + PartialEq;
    fn zero(&self) -> Self::E;
    fn one(&self) -> Self::E;
    fn add(&self, a: &Self::E, b: &Self::E) -> Self::E;
    fn sub(&self, a: &Self::E, b: &Self::E) -> Self::E;
    fn mul(&self, a: &Self::E, b: &Self::E) -> Self::E;
    fn inv(&self, a: &Self::E) -> Option<Self::E>;
    fn is_zero(&self, a: &Self::E) -> bool;
    fn neg(&self, a: &Self::E) -> Self::E {
        self.sub(&self.zero(), a)
    }
}

#[derive(Clone, Copy, Debug, Default)]
pub struct Rationals;

impl Ring for Rationals {
    type E = Q;
    fn zero(&self) -> Q {
        Q::zero()
    }
    fn add(&self, a: &Q, b: &Q) -> Q {
        a + b
    }
    fn sub(&self, a: &Q, b: &Q) -> Q {
        a - b
    }
    fn mul(&self, a: &Q, b: &Q) -> Q {
        a * b
    }
    fn scale(&self, a: &Q, c: i64) -> Q {
        a * Q::from_integer(BigInt::from(c))
    }
    fn is_zero(&self, a: &Q) -> bool {
        a.is_zero()
    }
}

impl Arith for Rationals {
    type E = Q;
    fn zero(&self) -> Q {
        Q::zero()
    }
    fn one(&self) -> Q {
        Q::one()
    }
    fn add(&self, a: &Q, b: &Q) -> Q {
        a + b
    }
    fn sub(&self, a: &Q, b: &Q) -> Q {
        a - b
    }
    fn mul(&self, a: &Q, b: &Q) -> Q {
        a * b
    }
    fn inv(&self, a: &Q) -> Option<Q> {
        if a.is_zero() {
            None
        } else {
            Some(a.recip())
        }
    }
    fn is_zero(&self, a: &Q) -> bool {
        a.is_zero()
    }
}

#[derive(Clone, Copy, Debug, Default)]
pub struct Integers;

impl Ring for Integers {
    type E = BigInt;
    fn zero(&self) -> BigInt {
        BigInt::zero()
    }
    fn add(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a + b
    }
    fn sub(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a - b
    }
    fn mul(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a * b
    }
    fn scale(&self, a: &BigInt, c: i64) -> BigInt {
        a * c
    }
    fn is_zero(&self, a: &BigInt) -> bool {
        a.is_zero()
    }
}

/// Integer numerators over a common denominator.
pub fn common_denominator(v: &[Q]) -> (Vec<BigInt>, BigInt) {
    if v.iter().all(|c| c.denom().is_one()) {
        return (v.iter().map(|c| c.numer().clone()).collect(), BigInt::one());
    }
    let den = v.iter().fold(BigInt::one(), |acc, c| num_integer::Integer::lcm(&acc, c.denom()));
    let nums = v.iter().map(|c| c.numer() * (&den / c.denom())).collect();
    (nums, den)
}

/// Integers modulo m (m < 2^63), enough headroom for u128 products.
#[derive(Clone, Copy, Debug)]
pub struct ModRing {
    pub m: u128,
}

impl ModRing {
    pub fn new(m: u128) -> Self {
        assert!(m > 1 && m < (1u128 << 63));
        ModRing { m }
    }

    pub fn from_i64(&self, c: i64) -> u128 {
        let r = (c as i128).rem_euclid(self.m as i128);
        r as u128
    }

    pub fn pow(&self, mut b: u128, mut e: u128) -> u128 {
        let mut r = 1 % self.m;
        b %= self.m;
        while e > 0 {
            if e & 1 == 1 {
                r = r * b % self.m;
            }
            b = b * b % self.m;
            e >>= 1;
        }
        r
    }

    /// Inverse of a unit by the extended Euclidean algorithm.
    pub fn inv(&self, a: u128) -> Option<u128> {
        let (mut r0, mut r1) = (self.m as i128, (a % self.m) as i128);
        let (mut t0, mut t1) = (0i128, 1i128);
        while r1 != 0 {
            let qt = r0 / r1;
            (r0, r1) = (r1, r0 - qt * r1);
            (t0, t1) = (t1, t0 - qt * t1);
        }
        if r0 != 1 {
            return None;
        }
        Some(t0.rem_euclid(self.m as i128) as u128)
    }
}

impl Ring for ModRing {
    type E = u128;
    fn zero(&self) -> u128 {
        0
    }
    fn add(&self, a: &u128, b: &u128) -> u128 {
        (a + b) % self.m
    }
    fn sub(&self, a: &u128, b: &u128) -> u128 {
        (a + self.m - b) % self.m
    }
    fn mul(&self, a: &u128, b: &u128) -> u128 {
        a * b % self.m
    }
    fn scale(&self, a: &u128, c: i64) -> u128 {
        a * self.from_i64(c) % self.m
    }
    fn is_zero(&self, a: &u128) -> bool {
        *a == 0
    }
}

/// Multiply two flattened tower elements. `levels[0]` is the bottom defining
/// polynomial (monic, constant first); coordinates are top-generator major.
pub fn tower_mul<R: Ring>(ring: &R, levels: &[Vec<i64>], a: &[R::E], b: &[R::E]) -> Vec<R::E> {
    let Some((top, lower)) = levels.split_last() else {
        return vec![ring.mul(&a[0], &b[0])];
    };
    let d = top.len() - 1;
    let block = a.len() / d;
    let mut prod: Vec<Vec<R::E>> = vec![vec![ring.zero(); block]; 2 * d - 1];
    for i in 0..d {
        let ai = &a[i * block..(i + 1) * block];
        if ai.iter().all(|x| ring.is_zero(x)) {
            continue;
        }
        for j in 0..d {
            let bj = &b[j * block..(j + 1) * block];
            if bj.iter().all(|x| ring.is_zero(x)) {
                continue;
            }
            let c = tower_mul(ring, lower, ai, bj);
            for (s, t) in prod[i + j].iter_mut().zip(c) {
                *s = ring.add(s, &t);
            }
        }
    }
    for k in (d..2 * d - 1).rev() {
        let ck = std::mem::replace(&mut prod[k], vec![ring.zero(); block]);
        if ck.iter().all(|x| ring.is_zero(x)) {
            continue;
        }
        for (m, &g) in top.iter().enumerate().take(d) {
            if g == 0 {
                continue;
            }
            let row = &mut prod[k - d + m];
            for (s, t) in row.iter_mut().zip(&ck) {
                *s = ring.sub(s, &ring.scale(t, g));
            }
        }
    }
    prod.truncate(d);
    prod.into_iter().flatten().collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gaussian_product() {
        // (1 + 2i)(3 - i) = 5 + 5i
        let levels = vec![vec![1, 0, 1]];
        let r = tower_mul(&Rationals, &levels, &[q(1), q(2)], &[q(3), q(-1)]);
        assert_eq!(r, vec![q(5), q(5)]);
    }

    #[test]
    fn mod_inverse() {
        let r = ModRing::new(97);
        for a in 1..97u128 {
            assert_eq!(r.mul(&a, &r.inv(a).unwrap()), 1);
        }
        assert!(ModRing::new(12).inv(4).is_none());
    }
}
