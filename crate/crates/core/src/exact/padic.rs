//! Roots of t^α − b in a tower field by reduction modulo a small good prime,
//! Hensel lifting, and rational reconstruction. Every returned root is
//! verified exactly. If b is a unit above p and no root exists mod p, no root
//! exists in the field.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};

use super::arith::{tower_mul, ModRing, Ring, Q};
use super::field::Field;
use super::poly::{primes_up_to, PolyP};

/// Largest residue ring p^D enumerated when looking for roots mod p.
const ENUM_LIMIT: u64 = 200_000;
/// Roots mod p beyond this count are not lifted.
const MAX_ROOTS: usize = 4096;
/// Good primes tried before giving up.
const MAX_PRIMES: usize = 4;

#[derive(Clone, Debug, Default)]
pub struct RootSearch {
    /// Verified roots in the field.
    pub roots: Vec<Vec<Q>>,
    /// True when `roots` provably contains every root in the field.
    pub complete: bool,
}

/// Good primes for the tower: every level squarefree mod p.
pub fn unramified(levels: &[Vec<i64>], p: u64) -> bool {
    levels.iter().all(|l| {
        let f = PolyP::from_ints(l, p);
        f.degree() == Some(l.len() - 1) && f.is_squarefree()
    })
}

fn reduce_coord(c: &Q, ring: &ModRing) -> Option<u128> {
    let m = BigInt::from(ring.m);
    let n = c.numer().mod_floor(&m).to_u128()?;
    let d = c.denom().mod_floor(&m).to_u128()?;
    let di = ring.inv(d)?;
    Some(n * di % ring.m)
}

fn pow_mod_elem(ring: &ModRing, levels: &[Vec<i64>], a: &[u128], mut e: u64) -> Vec<u128> {
    let mut r = vec![0u128; a.len()];
    r[0] = 1 % ring.m;
    let mut b = a.to_vec();
    while e > 0 {
        if e & 1 == 1 {
            r = tower_mul(ring, levels, &r, &b);
        }
        e >>= 1;
        if e > 0 {
            b = tower_mul(ring, levels, &b, &b);
        }
    }
    r
}

/// Inverse of a unit in (Z/p)[tower] by Gaussian elimination.
fn inv_mod_p(ring: &ModRing, levels: &[Vec<i64>], u: &[u128]) -> Option<Vec<u128>> {
    let d = u.len();
    let cols: Vec<Vec<u128>> = (0..d)
        .map(|j| {
            let mut e = vec![0u128; d];
            e[j] = 1;
            tower_mul(ring, levels, u, &e)
        })
        .collect();
    let mut m: Vec<Vec<u128>> = (0..d)
        .map(|i| {
            let mut row: Vec<u128> = cols.iter().map(|c| c[i]).collect();
            row.push(if i == 0 { 1 } else { 0 });
            row
        })
        .collect();
    for c in 0..d {
        let p = (c..d).find(|&r| m[r][c] != 0)?;
        m.swap(c, p);
        let inv = ring.inv(m[c][c])?;
        for j in c..=d {
            m[c][j] = m[c][j] * inv % ring.m;
        }
        for r in 0..d {
            if r != c && m[r][c] != 0 {
                let f = m[r][c];
                for j in c..=d {
                    m[r][j] = ring.sub(&m[r][j], &(f * m[c][j] % ring.m));
                }
            }
        }
    }
    Some(m.into_iter().map(|r| r[d]).collect())
}

/// Newton lift of an inverse from mod p to mod `big.m`.
fn inv_lift(small: &ModRing, big: &ModRing, levels: &[Vec<i64>], u: &[u128]) -> Option<Vec<u128>> {
    let u_small: Vec<u128> = u.iter().map(|x| x % small.m).collect();
    let mut v = inv_mod_p(small, levels, &u_small)?;
    let mut prec = small.m;
    while prec < big.m {
        let uv = tower_mul(big, levels, u, &v);
        let mut two_minus = uv.iter().map(|x| big.sub(&0, x)).collect::<Vec<_>>();
        two_minus[0] = big.add(&two_minus[0], &2);
        v = tower_mul(big, levels, &v, &two_minus);
        prec = prec.saturating_mul(prec);
    }
    Some(v)
}

/// Rational r/s with |r|, s ≤ bound and r ≡ s·x (mod m).
fn reconstruct(x: u128, m: u128, bound: i128) -> Option<Q> {
    let (mut r0, mut r1) = (m as i128, x as i128);
    let (mut s0, mut s1) = (0i128, 1i128);
    while r1 > bound {
        let qt = r0 / r1;
        (r0, r1) = (r1, r0 - qt * r1);
        (s0, s1) = (s1, s0 - qt * s1);
    }
    if s1 == 0 || s1.abs() > bound {
        return None;
    }
    let (num, den) = if s1 < 0 { (-r1, -s1) } else { (r1, s1) };
    if num.gcd(&den) != 1 {
        return None;
    }
    Some(Q::new(BigInt::from(num), BigInt::from(den)))
}

fn all_residues(p: u64, d: usize) -> impl Iterator<Item = Vec<u128>> {
    let total = (p as u128).pow(d as u32);
    (0..total).map(move |mut idx| {
        let mut v = vec![0u128; d];
        for slot in v.iter_mut() {
            *slot = idx % p as u128;
            idx /= p as u128;
        }
        v
    })
}

/// Search for all c with c^α = b in `field`.
pub fn alpha_roots(field: &Field, b: &[Q], alpha: u64, bound: u64) -> RootSearch {
    search(field, b, alpha, bound, false)
}

/// Like [`alpha_roots`] but stops after the first usable prime. Every root of
/// bounded height is still found; `complete` only reports whether all
/// residues lifted.
pub fn alpha_roots_first_prime(field: &Field, b: &[Q], alpha: u64, bound: u64) -> RootSearch {
    search(field, b, alpha, bound, true)
}

fn search(field: &Field, b: &[Q], alpha: u64, bound: u64, first_only: bool) -> RootSearch {
    let levels = &field.levels;
    let d = field.degree;
    let norm = field.norm_raw(b);
    let bound_i = bound as i128;
    let need = 2 * (bound as u128) * (bound as u128);
    let mut found: Vec<Vec<Q>> = Vec::new();
    let mut tried = 0;
    for p in primes_up_to(1000) {
        if (p as u128).pow(d as u32) > ENUM_LIMIT as u128 {
            break;
        }
        if alpha.is_multiple_of(p) || !unramified(levels, p) {
            continue;
        }
        let pb = BigInt::from(p);
        if (norm.numer() % &pb).is_zero() || (norm.denom() % &pb).is_zero() {
            continue;
        }
        if b.iter().any(|c| (c.denom() % &pb).is_zero()) {
            continue;
        }
        let small = ModRing::new(p as u128);
        let b_small: Vec<u128> = b.iter().map(|c| reduce_coord(c, &small).unwrap()).collect();
        let residues: Vec<Vec<u128>> = all_residues(p, d)
            .filter(|c| pow_mod_elem(&small, levels, c, alpha) == b_small)
            .take(MAX_ROOTS + 1)
            .collect();
        tried += 1;
        if residues.is_empty() {
            return RootSearch { roots: Vec::new(), complete: true };
        }
        if residues.len() > MAX_ROOTS {
            if tried >= MAX_PRIMES {
                break;
            }
            continue;
        }
        let mut m = p as u128;
        while m <= need {
            m *= p as u128;
        }
        let big = ModRing::new(m);
        let b_big: Vec<u128> = b.iter().map(|c| reduce_coord(c, &big).unwrap()).collect();
        let mut verified = 0;
        for r0 in residues.iter() {
            if let Some(root) = lift_root(&small, &big, levels, r0, &b_big, alpha)
                .and_then(|c| c.iter().map(|&x| reconstruct(x, m, bound_i)).collect::<Option<Vec<Q>>>())
            {
                if field.pow_raw(&root, alpha) == b {
                    verified += 1;
                    if !found.contains(&root) {
                        found.push(root);
                    }
                }
            }
        }
        if verified == residues.len() || first_only {
            return RootSearch { roots: found, complete: verified == residues.len() };
        }
        if tried >= MAX_PRIMES {
            break;
        }
    }
    RootSearch { roots: found, complete: false }
}

fn lift_root(
    small: &ModRing,
    big: &ModRing,
    levels: &[Vec<i64>],
    r0: &[u128],
    b: &[u128],
    alpha: u64,
) -> Option<Vec<u128>> {
    let mut c = r0.to_vec();
    let mut prec = small.m;
    let mut rounds = 0;
    loop {
        let ca1 = pow_mod_elem(big, levels, &c, alpha - 1);
        let ca = tower_mul(big, levels, &ca1, &c);
        let f: Vec<u128> = ca.iter().zip(b).map(|(x, y)| big.sub(x, y)).collect();
        if f.iter().all(|x| *x == 0) {
            return Some(c);
        }
        if prec >= big.m && rounds > 0 {
            return None;
        }
        let deriv: Vec<u128> = ca1.iter().map(|x| big.scale(x, alpha as i64)).collect();
        let dinv = inv_lift(small, big, levels, &deriv)?;
        let step = tower_mul(big, levels, &f, &dinv);
        c = c.iter().zip(&step).map(|(x, y)| big.sub(x, y)).collect();
        prec = prec.saturating_mul(prec);
        rounds += 1;
        if rounds > 64 {
            return None;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reconstruction() {
        let m: u128 = 1_000_000_007 * 1_000_003;
        let inv7 = ModRing::new(m).inv(7).unwrap();
        let x = 3 * inv7 % m;
        assert_eq!(reconstruct(x, m, 1000), Some(Q::new(BigInt::from(3), BigInt::from(7))));
        let neg = (m - 5) % m;
        assert_eq!(reconstruct(neg, m, 1000), Some(Q::from_integer(BigInt::from(-5))));
    }
}
