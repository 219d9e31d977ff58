//! The binary icosahedral group inside the Hamilton quaternions over ℚ(√5).

use std::collections::HashMap;
use std::sync::Arc;

use crate::csa::{AlgebraElement, CyclicAlgebra};
use crate::exact::{qf, Q};

use super::table::FiniteGroupTable;
use super::GroupError;

/// a + b√5
type R5 = (Q, Q);

fn r5(a: (i64, i64), b: (i64, i64)) -> R5 {
    (qf(a.0, a.1), qf(b.0, b.1))
}

fn neg5(x: &R5) -> R5 {
    (-x.0.clone(), -x.1.clone())
}

/// The 120 unit quaternions as (w, x, y, z) over ℚ(√5).
pub fn icosians() -> Vec<[R5; 4]> {
    let zero = r5((0, 1), (0, 1));
    let one = r5((1, 1), (0, 1));
    let half = r5((1, 2), (0, 1));
    let phi_half = r5((1, 4), (1, 4));
    let phi_inv_half = r5((-1, 4), (1, 4));
    let mut out = Vec::new();
    for pos in 0..4 {
        for s in [false, true] {
            let mut q = [zero.clone(), zero.clone(), zero.clone(), zero.clone()];
            q[pos] = if s { neg5(&one) } else { one.clone() };
            out.push(q);
        }
    }
    for signs in 0..16u32 {
        let q: [R5; 4] = std::array::from_fn(|k| if signs >> k & 1 == 1 { neg5(&half) } else { half.clone() });
        out.push(q);
    }
    let base = [zero.clone(), half.clone(), phi_half.clone(), phi_inv_half.clone()];
    for perm in even_permutations() {
        for signs in 0..8u32 {
            let signed: [R5; 4] = std::array::from_fn(|k| {
                if k > 0 && signs >> (k - 1) & 1 == 1 {
                    neg5(&base[k])
                } else {
                    base[k].clone()
                }
            });
            let mut q = [zero.clone(), zero.clone(), zero.clone(), zero.clone()];
            for k in 0..4 {
                q[perm[k]] = signed[k].clone();
            }
            out.push(q);
        }
    }
    out
}

fn even_permutations() -> Vec<[usize; 4]> {
    let mut out = Vec::new();
    for a in 0..4 {
        for b in 0..4 {
            for c in 0..4 {
                for d in 0..4 {
                    let p = [a, b, c, d];
                    let distinct = (0..4).all(|i| (i + 1..4).all(|j| p[i] != p[j]));
                    if distinct {
                        let inversions = (0..4).flat_map(|i| (i + 1..4).map(move |j| (i, j))).filter(|&(i, j)| p[i] > p[j]).count();
                        if inversions % 2 == 0 {
                            out.push(p);
                        }
                    }
                }
            }
        }
    }
    out
}

/// w + xi + yj + zk as (w + x·i) + (y + z·i)·z in the cyclic algebra
/// (ℚ(√5, i)/ℚ(√5), conjugation, −1).
pub fn quaternion_element(alg: &Arc<CyclicAlgebra>, q: &[R5; 4]) -> Result<AlgebraElement, GroupError> {
    let flat = vec![
        q[0].0.clone(), q[0].1.clone(), q[1].0.clone(), q[1].1.clone(),
        q[2].0.clone(), q[2].1.clone(), q[3].0.clone(), q[3].1.clone(),
    ];
    AlgebraElement::from_flat(alg, &flat).map_err(|e| GroupError::Internal(e.to_string()))
}

/// The 120 icosians in `alg` (which must be the Hamilton algebra over ℚ(√5))
/// and their multiplication table, with closure verified.
pub fn binary_icosahedral(alg: &Arc<CyclicAlgebra>) -> Result<(Vec<AlgebraElement>, FiniteGroupTable), GroupError> {
    if alg.degree() != 2 || alg.flat_len() != 8 {
        return Err(GroupError::Internal(format!("{} is not a quaternion algebra over a quadratic field", alg.label())));
    }
    let elems: Vec<AlgebraElement> = icosians().iter().map(|q| quaternion_element(alg, q)).collect::<Result<_, _>>()?;
    let index: HashMap<&AlgebraElement, usize> = elems.iter().enumerate().map(|(i, e)| (e, i)).collect();
    if index.len() != 120 {
        return Err(GroupError::Internal("icosians are not distinct".into()));
    }
    let products: Vec<Vec<usize>> = crate::par::map(crate::par::Exec::default(), &elems, |a| {
        elems
            .iter()
            .map(|b| index.get(&a.mul(b)).copied().ok_or(()))
            .collect::<Result<Vec<_>, ()>>()
    })
    .into_iter()
    .collect::<Result<_, ()>>()
    .map_err(|_| GroupError::Internal("icosians are not closed under multiplication".into()))?;
    Ok((elems, FiniteGroupTable::new(products)?))
}
