//! Semidirect products ℤ/n ⋊ ℤ/p with trivial center.

use num_integer::Integer;
use serde::Serialize;

use super::hom::GroupLike;
use super::table::FiniteGroupTable;
use super::GroupError;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BalancedSdpDescriptor {
    pub n: u64,
    pub p: u64,
    pub r: u64,
}

/// Distinct prime divisors of n in increasing order.
pub fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut q = 2;
    while q * q <= n {
        if n.is_multiple_of(q) {
            out.push(q);
            while n.is_multiple_of(q) {
                n /= q;
            }
        }
        q += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

fn check_prime(p: u64) -> Result<(), GroupError> {
    if p < 3 || prime_factors(p) != [p] {
        return Err(GroupError::NotOddPrime(p));
    }
    Ok(())
}

pub fn pow_mod(b: u64, mut e: u64, m: u64) -> u64 {
    let mut r = 1 % m;
    let mut b = b % m;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % m;
        }
        b = b * b % m;
        e >>= 1;
    }
    r
}

/// Every prime factor of n is ≡ 1 mod p. True for n = 1.
pub fn balanced_exists(n: u64, p: u64) -> Result<bool, GroupError> {
    check_prime(p)?;
    if n == 0 {
        return Err(GroupError::BadTable("n must be positive".into()));
    }
    Ok(prime_factors(n).into_iter().all(|q| q % p == 1))
}

/// All r in [1, n) with r^p ≡ 1 mod n: the actions of ℤ/p on ℤ/n.
pub fn actions(n: u64, p: u64) -> Vec<u64> {
    if n == 1 {
        return vec![0];
    }
    (1..n).filter(|&r| pow_mod(r, p, n) == 1).collect()
}

/// Multipliers giving a trivial center: r ≠ 1 with gcd(r − 1, n) = 1.
pub fn balanced_multipliers(n: u64, p: u64) -> Vec<u64> {
    if n == 1 {
        return Vec::new();
    }
    actions(n, p).into_iter().filter(|&r| r != 1 && (r - 1).gcd(&n) == 1).collect()
}

/// ℤ/n ⋊_r ℤ/p: (a, b) at index a + n·b, (a₁,b₁)(a₂,b₂) = (a₁ + r^{b₁} a₂, b₁ + b₂).
pub fn sdp_table(n: u64, p: u64, r: u64) -> Result<FiniteGroupTable, GroupError> {
    let sdp = Sdp::new(n, p, r);
    FiniteGroupTable::from_fn((n * p) as usize, |x, y| sdp.op(x, y))
}

pub fn balanced_build(n: u64, p: u64) -> Result<(BalancedSdpDescriptor, FiniteGroupTable), GroupError> {
    if n < 2 || !balanced_exists(n, p)? {
        return Err(GroupError::NoBalancedProduct { n, p });
    }
    let r = *balanced_multipliers(n, p).first().ok_or(GroupError::NoBalancedProduct { n, p })?;
    let table = sdp_table(n, p, r)?;
    if table.center().len() != 1 {
        return Err(GroupError::Internal(format!("center of ({n}, {p}, {r}) is not trivial")));
    }
    Ok((BalancedSdpDescriptor { n, p, r }, table))
}

/// ℤ/n ⋊_r ℤ/p evaluated by formula.
#[derive(Clone, Debug)]
pub struct Sdp {
    n: u64,
    p: u64,
    rpow: Vec<u64>,
    geom: Vec<u64>,
}

impl Sdp {
    pub fn new(n: u64, p: u64, r: u64) -> Self {
        let rpow: Vec<u64> = (0..p).map(|b| pow_mod(r, b, n)).collect();
        // Σ_{t<p} r^{bt}: (a, b)^p = (a·geom[b], 0)
        let geom = (0..p).map(|b| (0..p).fold(0, |s, t| (s + pow_mod(rpow[b as usize], t, n)) % n)).collect();
        Sdp { n, p, rpow, geom }
    }

    fn split(&self, x: usize) -> (u64, u64) {
        let x = x as u64;
        (x % self.n, x / self.n)
    }
}

impl GroupLike for Sdp {
    fn size(&self) -> usize {
        (self.n * self.p) as usize
    }
    fn op(&self, x: usize, y: usize) -> usize {
        let ((a1, b1), (a2, b2)) = (self.split(x), self.split(y));
        let a = (a1 + self.rpow[b1 as usize] * a2) % self.n;
        (a + self.n * ((b1 + b2) % self.p)) as usize
    }
    fn unit(&self) -> usize {
        0
    }
    fn elem_order(&self, x: usize) -> usize {
        let (a, b) = self.split(x);
        let n = self.n;
        if b == 0 {
            (n / a.gcd(&n)) as usize
        } else {
            let ap = a * self.geom[b as usize] % n;
            (self.p * (n / ap.gcd(&n))) as usize
        }
    }
}

/// (ℤ/n ⋊_r ℤ/p) × ℤ/p with (s, c) at index s + n·p·c. For n = 1 this is ℤ/p × ℤ/p.
#[derive(Clone, Debug)]
pub struct TheoremShape {
    pub n: u64,
    pub p: u64,
    pub r: u64,
    sdp: Sdp,
}

impl TheoremShape {
    pub fn new(n: u64, p: u64, r: u64) -> Self {
        TheoremShape { n, p, r, sdp: Sdp::new(n, p, r) }
    }

    /// (a, b, c) coordinates of an index.
    pub fn coords(&self, x: usize) -> (u64, u64, u64) {
        let m = self.sdp.size();
        let (a, b) = self.sdp.split(x % m);
        (a, b, (x / m) as u64)
    }
}

impl GroupLike for TheoremShape {
    fn size(&self) -> usize {
        self.sdp.size() * self.p as usize
    }
    fn op(&self, x: usize, y: usize) -> usize {
        let m = self.sdp.size();
        self.sdp.op(x % m, y % m) + m * ((x / m + y / m) % self.p as usize)
    }
    fn unit(&self) -> usize {
        0
    }
    fn elem_order(&self, x: usize) -> usize {
        let m = self.sdp.size();
        let s = self.sdp.elem_order(x % m);
        let c = if x / m == 0 { 1 } else { self.p as usize };
        s.lcm(&c)
    }
}
