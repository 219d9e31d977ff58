//! Exact α-th power test in the Gaussian and Eisenstein integers by
//! factoring into Gaussian/Eisenstein primes.

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::factor::factorize;

/// x + y·θ with θ² + c1·θ + c0 = 0.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuadInt {
    pub x: BigInt,
    pub y: BigInt,
}

#[derive(Clone, Copy, Debug)]
pub struct QuadRing {
    c1: i64,
    c0: i64,
}

pub const GAUSSIAN: QuadRing = QuadRing { c1: 0, c0: 1 };
pub const EISENSTEIN: QuadRing = QuadRing { c1: 1, c0: 1 };

impl QuadRing {
    pub fn int(&self, n: BigInt) -> QuadInt {
        QuadInt { x: n, y: BigInt::zero() }
    }

    pub fn mul(&self, a: &QuadInt, b: &QuadInt) -> QuadInt {
        let bd = &a.y * &b.y;
        QuadInt {
            x: &a.x * &b.x - &bd * self.c0,
            y: &a.x * &b.y + &a.y * &b.x - &bd * self.c1,
        }
    }

    pub fn conj(&self, a: &QuadInt) -> QuadInt {
        QuadInt { x: &a.x - &a.y * self.c1, y: -&a.y }
    }

    pub fn norm(&self, a: &QuadInt) -> BigInt {
        &a.x * &a.x - &a.x * &a.y * self.c1 + &a.y * &a.y * self.c0
    }

    fn is_zero(&self, a: &QuadInt) -> bool {
        a.x.is_zero() && a.y.is_zero()
    }

    /// Exact quotient a / b if b divides a.
    pub fn div_exact(&self, a: &QuadInt, b: &QuadInt) -> Option<QuadInt> {
        let n = self.norm(b);
        let t = self.mul(a, &self.conj(b));
        if (&t.x % &n).is_zero() && (&t.y % &n).is_zero() {
            Some(QuadInt { x: t.x / &n, y: t.y / &n })
        } else {
            None
        }
    }

    fn div_round(&self, a: &QuadInt, b: &QuadInt) -> QuadInt {
        let n = self.norm(b);
        let t = self.mul(a, &self.conj(b));
        let two = BigInt::from(2);
        let r = |v: &BigInt| -> BigInt { (v * &two + &n).div_floor(&(&n * &two)) };
        QuadInt { x: r(&t.x), y: r(&t.y) }
    }

    pub fn gcd(&self, a: &QuadInt, b: &QuadInt) -> QuadInt {
        let (mut a, mut b) = (a.clone(), b.clone());
        while !self.is_zero(&b) {
            let qt = self.div_round(&a, &b);
            let r = QuadInt { x: &a.x - self.mul(&qt, &b).x, y: &a.y - self.mul(&qt, &b).y };
            a = b;
            b = r;
        }
        a
    }

    pub fn pow(&self, a: &QuadInt, e: u64) -> QuadInt {
        let mut r = self.int(BigInt::one());
        for _ in 0..e {
            r = self.mul(&r, a);
        }
        r
    }

    fn disc(&self) -> i64 {
        self.c1 * self.c1 - 4 * self.c0
    }

    /// The non-associate primes of this ring above the rational prime p.
    pub fn primes_above(&self, p: &BigUint) -> Vec<QuadInt> {
        let pi = BigInt::from_biguint(Sign::Plus, p.clone());
        let disc = self.disc();
        if (BigInt::from(disc) % &pi).is_zero() {
            // ramified: a root of t^2 + c1 t + c0 mod p is -c1/2
            let r = self.root_mod(p).expect("ramified prime has a root");
            return vec![self.gcd(&self.int(pi), &QuadInt { x: -r, y: BigInt::one() })];
        }
        match self.root_mod(p) {
            None => vec![self.int(pi)],
            Some(r) => {
                let pi1 = self.gcd(&self.int(pi.clone()), &QuadInt { x: -r, y: BigInt::one() });
                let pi2 = self.conj(&pi1);
                vec![pi1, pi2]
            }
        }
    }

    /// A root of t^2 + c1·t + c0 modulo p, if one exists.
    fn root_mod(&self, p: &BigUint) -> Option<BigInt> {
        let pi = BigInt::from_biguint(Sign::Plus, p.clone());
        if *p == BigUint::from(2u32) || *p == BigUint::from(3u32) {
            let pv: i64 = if *p == BigUint::from(2u32) { 2 } else { 3 };
            for t in 0..pv {
                if (t * t + self.c1 * t + self.c0).rem_euclid(pv) == 0 {
                    return Some(BigInt::from(t));
                }
            }
            return None;
        }
        let d = BigInt::from(self.disc()).mod_floor(&pi).to_biguint().unwrap();
        let s = sqrt_mod(&d, p)?;
        let two_inv = BigInt::from(2).modpow(&(&pi - 2), &pi);
        let s = BigInt::from_biguint(Sign::Plus, s);
        Some(((s - self.c1) * two_inv).mod_floor(&pi))
    }

    fn valuation(&self, x: &QuadInt, pi: &QuadInt) -> u64 {
        let mut v = 0;
        let mut cur = x.clone();
        while let Some(q) = self.div_exact(&cur, pi) {
            cur = q;
            v += 1;
        }
        v
    }
}

/// Tonelli–Shanks square root modulo an odd prime.
pub fn sqrt_mod(a: &BigUint, p: &BigUint) -> Option<BigUint> {
    let one = BigUint::one();
    let a = a % p;
    if a.is_zero() {
        return Some(a);
    }
    let pm1 = p - &one;
    if a.modpow(&(&pm1 >> 1), p) != one {
        return None;
    }
    let mut qv = pm1.clone();
    let mut s = 0u32;
    while qv.is_even() {
        qv >>= 1;
        s += 1;
    }
    let mut z = BigUint::from(2u32);
    while z.modpow(&(&pm1 >> 1), p) == one {
        z += 1u32;
    }
    let mut m = s;
    let mut c = z.modpow(&qv, p);
    let mut t = a.modpow(&qv, p);
    let mut r = a.modpow(&((&qv + &one) >> 1), p);
    while t != one {
        let mut i = 0;
        let mut tt = t.clone();
        while tt != one {
            tt = &tt * &tt % p;
            i += 1;
        }
        let b = c.modpow(&(BigUint::one() << (m - i - 1)), p);
        m = i;
        c = &b * &b % p;
        t = t * &c % p;
        r = r * b % p;
    }
    Some(r)
}

/// For a = u / d (u in the ring, d a positive integer), returns c = u_c / d_c
/// with a / c^α a unit, or `None` if no such c exists. The result is
/// returned as (numerator, denominator exponents) multiplied out.
pub fn alpha_root(ring: QuadRing, u: &QuadInt, d: &BigInt, alpha: u64) -> Option<(QuadInt, QuadInt)> {
    let nu = ring.norm(u).abs().to_biguint().unwrap();
    let mut primes: Vec<BigUint> = factorize(&nu).into_iter().map(|(p, _)| p).collect();
    for (p, _) in factorize(&d.abs().to_biguint().unwrap()) {
        if !primes.contains(&p) {
            primes.push(p);
        }
    }
    primes.sort();
    let mut num = ring.int(BigInt::one());
    let mut den = ring.int(BigInt::one());
    let dq = ring.int(d.clone());
    for p in primes {
        for pi in ring.primes_above(&p) {
            let v = ring.valuation(u, &pi) as i64 - ring.valuation(&dq, &pi) as i64;
            if v % alpha as i64 != 0 {
                return None;
            }
            let e = v / alpha as i64;
            if e > 0 {
                num = ring.mul(&num, &ring.pow(&pi, e as u64));
            } else if e < 0 {
                den = ring.mul(&den, &ring.pow(&pi, (-e) as u64));
            }
        }
    }
    Some((num, den))
}
