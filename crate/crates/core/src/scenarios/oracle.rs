//! Brute-force routines used to recompute catalog expectations independently
//! of the main pipeline.

use std::collections::HashSet;

use num_traits::ToPrimitive;

use crate::csa::AlgebraElement;
use crate::exact::{power_test, Q};
use crate::groups::{find_homomorphism, pow_mod, AbelianPairedGroup, FiniteGroupTable, GroupLike, Sdp, TheoremShape};
use crate::projective::{ProjectiveError, ProjectiveGroup};

pub const ORACLES: &[&str] = &["naive_closure", "norm_root_route", "naive_lift_closure", "isotropic_bitmask", "shape_search"];

/// Order of ⟨gens⟩k*/k*, comparing elements by whether x·y⁻¹ is a scalar.
pub fn naive_closure(gens: &[AlgebraElement], one: &AlgebraElement, bound: usize) -> Option<usize> {
    let mut elems: Vec<AlgebraElement> = vec![one.clone()];
    let mut invs: Vec<AlgebraElement> = vec![one.clone()];
    let mut i = 0;
    while i < elems.len() {
        for s in gens {
            let c = elems[i].mul(s);
            if !invs.iter().any(|v| c.mul(v).as_scalar().is_some()) {
                if elems.len() >= bound {
                    return None;
                }
                invs.push(c.inverse().ok()?);
                elems.push(c);
            }
        }
        i += 1;
    }
    Some(elems.len())
}

/// Number of elements whose reduced norm lies in μ(k)·(k*)^n.
pub fn norm_root_route(g: &ProjectiveGroup) -> Result<usize, ProjectiveError> {
    let n = g.algebra().degree() as u64;
    let mut count = 0;
    for x in g.elements() {
        if power_test(&x.rep().reduced_norm()?, n)?.is_some() {
            count += 1;
        }
    }
    Ok(count)
}

/// Order of the subgroup of A* generated by `gens`, by exact equality.
pub fn naive_lift_closure(gens: &[AlgebraElement], one: &AlgebraElement, bound: usize) -> Option<usize> {
    let mut elems = vec![one.clone()];
    let mut i = 0;
    while i < elems.len() {
        for s in gens {
            let c = elems[i].mul(s);
            if !elems.contains(&c) {
                if elems.len() >= bound {
                    return None;
                }
                elems.push(c);
            }
        }
        i += 1;
    }
    Some(elems.len())
}

/// Largest isotropic subgroup by depth-first search over subgroups encoded
/// as bitmasks, pruned by |perp(H)|. Needs |A| ≤ 64.
pub fn isotropic_bitmask(a: &AbelianPairedGroup) -> Option<usize> {
    let elems = a.elements();
    let n = elems.len();
    if n > 64 {
        return None;
    }
    let factors = a.factors();
    let exp = factors.iter().copied().max().unwrap_or(1);
    // pairing scaled by the exponent, as integers mod exp
    let scaled: Vec<Vec<u64>> = a
        .pairing_matrix()
        .iter()
        .map(|row| {
            row.iter()
                .map(|v| {
                    let w = v * Q::from_integer(exp.into());
                    w.to_integer().to_u64().expect("d_i·P_ij is integral and exp is a multiple of d_i")
                })
                .collect()
        })
        .collect();
    let pair_zero = |x: &[u64], y: &[u64]| {
        let mut s = 0u64;
        for (i, xi) in x.iter().enumerate() {
            for (j, yj) in y.iter().enumerate() {
                s = (s + xi * yj % exp * scaled[i][j]) % exp;
            }
        }
        s == 0
    };
    let add: Vec<Vec<usize>> =
        (0..n).map(|i| (0..n).map(|j| a.index_of(&a.add(&elems[i], &elems[j]))).collect()).collect();
    let orth: Vec<u64> = (0..n)
        .map(|i| (0..n).filter(|&j| pair_zero(&elems[i], &elems[j])).fold(0u64, |m, j| m | 1 << j))
        .collect();
    let bits = |m: u64| (0..n).filter(move |&i| m >> i & 1 == 1);
    let close = |mask: u64, y: usize| -> u64 {
        let mut m = mask;
        let mut frontier: Vec<usize> = bits(m).collect();
        while let Some(x) = frontier.pop() {
            let z = add[x][y];
            if m >> z & 1 == 0 {
                m |= 1 << z;
                frontier.push(z);
            }
        }
        m
    };
    let zero = a.index_of(&a.zero());
    let mut seen = HashSet::new();
    let mut stack = vec![1u64 << zero];
    let mut best = 1;
    while let Some(m) = stack.pop() {
        if !seen.insert(m) {
            continue;
        }
        best = best.max(m.count_ones() as usize);
        let perp = bits(m).fold(u64::MAX >> (64 - n), |acc, i| acc & orth[i]);
        if perp.count_ones() as usize <= best {
            continue;
        }
        // y'' generates the same child over m iff its order in child/m is |child/m|
        let mut done = m;
        for y in bits(perp & !m) {
            if done >> y & 1 == 1 {
                continue;
            }
            let child = close(m, y);
            let q = child.count_ones() / m.count_ones();
            for w in bits(child & !m) {
                let (mut z, mut k) = (w, 1);
                while m >> z & 1 == 0 {
                    z = add[z][w];
                    k += 1;
                }
                if k == q {
                    done |= 1 << w;
                }
            }
            stack.push(child);
        }
    }
    Some(best)
}

/// Whether ℤ/n ⋊_r ℤ/p has trivial center, by testing every element against
/// both generators.
pub fn sdp_center_is_trivial(n: u64, p: u64, r: u64) -> bool {
    let s = Sdp::new(n, p, r);
    let gens = [1 % n as usize, n as usize];
    (1..s.size()).all(|x| gens.iter().any(|&g| s.op(x, g) != s.op(g, x)))
}

/// Smallest n ≤ max_n with a monomorphism G → (ℤ/n ⋊_r ℤ/p) × ℤ/p, trying
/// every r with r^p ≡ 1 whose product has trivial center (r = 0 when n = 1).
pub fn shape_search(g: &FiniteGroupTable, p: u64, max_n: u64) -> Option<u64> {
    (1..=max_n).find(|&n| {
        if !(n * p * p).is_multiple_of(g.order() as u64) {
            return false;
        }
        let rs: Vec<u64> = if n == 1 {
            vec![0]
        } else {
            (2..n).filter(|&r| pow_mod(r, p, n) == 1 && sdp_center_is_trivial(n, p, r)).collect()
        };
        rs.into_iter().any(|r| find_homomorphism(g, &TheoremShape::new(n, p, r), true).is_some())
    })
}
