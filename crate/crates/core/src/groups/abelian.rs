//! Finite abelian groups: invariant-factor decomposition, complements of
//! cyclic summands, alternating pairings and the isotropic subgroup Γ.

use std::cmp::Ordering;
use std::collections::{HashMap, VecDeque};
use std::hash::Hash;

use num_integer::Integer;
use num_traits::{One, Zero};

use super::smith::{smith, Lattice};
use super::GroupError;
use crate::exact::Q;

/// Invariant-factor decomposition of the subgroup generated by some elements.
#[derive(Clone, Debug)]
pub struct Decomposition<T> {
    /// Basis elements, one per invariant factor.
    pub basis: Vec<T>,
    /// Invariant factors d₁ | d₂ | …, all > 1.
    pub orders: Vec<u64>,
    /// Coordinates of every element with respect to `basis`.
    pub coords: HashMap<T, Vec<u64>>,
}

impl<T: Clone + Eq + Hash> Decomposition<T> {
    pub fn order(&self) -> usize {
        self.coords.len()
    }

    pub fn element(&self, c: &[u64], zero: &T, add: impl Fn(&T, &T) -> T) -> T {
        let mut x = zero.clone();
        for (b, &k) in self.basis.iter().zip(c) {
            for _ in 0..k {
                x = add(&x, b);
            }
        }
        x
    }
}

/// Decompose ⟨gens⟩ by enumerating it, collecting the relation lattice of the
/// generators and taking its Smith form.
pub fn decompose<T: Clone + Eq + Hash>(gens: &[T], zero: T, add: impl Fn(&T, &T) -> T) -> Decomposition<T> {
    let s = gens.len();
    let mut word: HashMap<T, Vec<i128>> = HashMap::new();
    word.insert(zero.clone(), vec![0; s]);
    let mut order = vec![zero.clone()];
    let mut lattice = Lattice::new(s);
    let mut queue = VecDeque::from([zero.clone()]);
    while let Some(x) = queue.pop_front() {
        let wx = word[&x].clone();
        for (j, g) in gens.iter().enumerate() {
            let y = add(&x, g);
            let mut w = wx.clone();
            w[j] += 1;
            match word.get(&y) {
                Some(wy) => {
                    let rel: Vec<i128> = w.iter().zip(wy).map(|(a, b)| a - b).collect();
                    if rel.iter().any(|&c| c != 0) {
                        lattice.insert(rel);
                    }
                }
                None => {
                    word.insert(y.clone(), w);
                    order.push(y.clone());
                    queue.push_back(y);
                }
            }
        }
    }
    let (d, v, _) = smith(&lattice.matrix(), s);
    let keep: Vec<usize> = (0..d.len()).filter(|&i| d[i] != 1).collect();
    let orders: Vec<u64> = keep.iter().map(|&i| d[i] as u64).collect();
    let mut coords = HashMap::new();
    let mut by_coords: HashMap<Vec<u64>, T> = HashMap::new();
    for x in order {
        let w = &word[&x];
        let c: Vec<u64> = keep
            .iter()
            .map(|&i| {
                let t: i128 = (0..s).map(|k| w[k] * v[k][i]).sum();
                t.rem_euclid(d[i]) as u64
            })
            .collect();
        by_coords.insert(c.clone(), x.clone());
        coords.insert(x, c);
    }
    let basis = (0..keep.len())
        .map(|i| {
            let mut e = vec![0u64; keep.len()];
            e[i] = 1;
            by_coords[&e].clone()
        })
        .collect();
    Decomposition { basis, orders, coords }
}

fn elem_order(factors: &[u64], x: &[u64]) -> u64 {
    factors.iter().zip(x).fold(1u64, |acc, (&d, &c)| acc.lcm(&(d / d.gcd(&c))))
}

/// Generators of a complement 𝒜′ with 𝒜 = ⟨x⟩ × 𝒜′ in ⊕ ℤ/d_i, for x of
/// maximal order.
pub fn complement_of_cyclic(factors: &[u64], x: &[u64]) -> Result<Vec<Vec<u64>>, GroupError> {
    let r = factors.len();
    if x.len() != r || factors.contains(&0) {
        return Err(GroupError::BadTable("coordinate length mismatch".into()));
    }
    let x: Vec<u64> = x.iter().zip(factors).map(|(c, d)| c % d).collect();
    let m = elem_order(factors, &x);
    let exponent = factors.iter().fold(1u64, |a, &d| a.lcm(&d));
    if m != exponent {
        return Err(GroupError::NotMaximalOrder);
    }
    let mut rel: Vec<Vec<i128>> = (0..r)
        .map(|i| (0..r).map(|j| if i == j { factors[i] as i128 } else { 0 }).collect())
        .collect();
    rel.push(x.iter().map(|&c| c as i128).collect());
    let (d, _, vinv) = smith(&rel, r);
    let add = |a: &[u64], b: &[u64], k: u64| -> Vec<u64> {
        a.iter().zip(b).zip(factors).map(|((p, q), n)| (p + k % n * q) % n).collect()
    };
    let mut gens = Vec::new();
    for (i, &di) in d.iter().enumerate() {
        if di == 1 {
            continue;
        }
        let f: Vec<u64> = vinv[i].iter().zip(factors).map(|(&c, &n)| c.rem_euclid(n as i128) as u64).collect();
        let di = di as u64;
        let target: Vec<u64> = f.iter().zip(factors).map(|(c, n)| c * (di % n) % n).collect();
        let t = (0..m)
            .find(|&t| add(&vec![0; r], &x, t) == target)
            .ok_or_else(|| GroupError::Internal("quotient generator multiple not in ⟨x⟩".into()))?;
        if t % di != 0 {
            return Err(GroupError::Internal("non-divisible lift multiple".into()));
        }
        let shift = (m - t / di % m) % m;
        gens.push(add(&f, &x, shift));
    }
    Ok(gens)
}

/// ⊕ ℤ/d_i with an alternating pairing valued in ℚ/ℤ.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AbelianPairedGroup {
    factors: Vec<u64>,
    pairing: Vec<Vec<Q>>,
}

fn frac(x: &Q) -> Q {
    x - x.floor()
}

impl AbelianPairedGroup {
    pub fn new(factors: Vec<u64>, pairing: Vec<Vec<Q>>) -> Result<Self, GroupError> {
        let r = factors.len();
        let bad = |m: &str| Err(GroupError::InvalidPairing(m.to_string()));
        if factors.iter().any(|&d| d < 2) {
            return bad("invariant factors must exceed 1");
        }
        if factors.windows(2).any(|w| w[1] % w[0] != 0) {
            return bad("invariant factors must form a divisibility chain");
        }
        if pairing.len() != r || pairing.iter().any(|row| row.len() != r) {
            return bad("pairing matrix has wrong shape");
        }
        for i in 0..r {
            for j in 0..r {
                let v = &pairing[i][j];
                if *v < Q::zero() || *v >= Q::one() {
                    return bad("pairing values must lie in [0, 1)");
                }
                if i == j && !v.is_zero() {
                    return bad("pairing is not alternating");
                }
                if !frac(&(v + &pairing[j][i])).is_zero() {
                    return bad("pairing is not antisymmetric");
                }
                if !(v * Q::from_integer(factors[i].into())).is_integer() {
                    return bad("pairing does not kill torsion");
                }
            }
        }
        Ok(AbelianPairedGroup { factors, pairing })
    }

    pub fn trivial_pairing(factors: Vec<u64>) -> Result<Self, GroupError> {
        let r = factors.len();
        Self::new(factors, vec![vec![Q::zero(); r]; r])
    }

    pub fn factors(&self) -> &[u64] {
        &self.factors
    }

    pub fn pairing_matrix(&self) -> &[Vec<Q>] {
        &self.pairing
    }

    pub fn order(&self) -> usize {
        self.factors.iter().product::<u64>() as usize
    }

    pub fn zero(&self) -> Vec<u64> {
        vec![0; self.factors.len()]
    }

    pub fn add(&self, a: &[u64], b: &[u64]) -> Vec<u64> {
        a.iter().zip(b).zip(&self.factors).map(|((x, y), d)| (x + y) % d).collect()
    }

    pub fn element_order(&self, x: &[u64]) -> u64 {
        elem_order(&self.factors, x)
    }

    /// Elements in mixed-radix order, first coordinate fastest.
    pub fn elements(&self) -> Vec<Vec<u64>> {
        let mut out = Vec::with_capacity(self.order());
        for mut idx in 0..self.order() as u64 {
            out.push(
                self.factors
                    .iter()
                    .map(|&d| {
                        let c = idx % d;
                        idx /= d;
                        c
                    })
                    .collect(),
            );
        }
        out
    }

    pub fn index_of(&self, x: &[u64]) -> usize {
        let mut idx = 0u64;
        let mut scale = 1u64;
        for (c, d) in x.iter().zip(&self.factors) {
            idx += c * scale;
            scale *= d;
        }
        idx as usize
    }

    /// Pairing value in [0, 1).
    pub fn pair(&self, x: &[u64], y: &[u64]) -> Q {
        let mut s = Q::zero();
        for (i, &a) in x.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in y.iter().enumerate() {
                if b != 0 {
                    s += &self.pairing[i][j] * Q::from_integer((a * b).into());
                }
            }
        }
        frac(&s)
    }

    /// Sorted (by index) elements of the subgroup generated by `gens`.
    pub fn span(&self, gens: &[Vec<u64>]) -> Vec<Vec<u64>> {
        let mut seen = vec![false; self.order()];
        let z = self.zero();
        seen[self.index_of(&z)] = true;
        let mut queue = VecDeque::from([z]);
        while let Some(x) = queue.pop_front() {
            for g in gens {
                let y = self.add(&x, g);
                let i = self.index_of(&y);
                if !seen[i] {
                    seen[i] = true;
                    queue.push_back(y);
                }
            }
        }
        self.elements().into_iter().filter(|x| seen[self.index_of(x)]).collect()
    }

    pub fn is_isotropic(&self, elems: &[Vec<u64>]) -> bool {
        elems.iter().all(|x| elems.iter().all(|y| self.pair(x, y).is_zero()))
    }

    /// Elements orthogonal to every element of `elems`.
    pub fn perp(&self, elems: &[Vec<u64>]) -> Vec<Vec<u64>> {
        self.elements().into_iter().filter(|y| elems.iter().all(|x| self.pair(x, y).is_zero())).collect()
    }
}

/// Tie-break among elements: lexicographic with the coordinate of the largest
/// invariant factor most significant.
pub fn coord_cmp(a: &[u64], b: &[u64]) -> Ordering {
    a.iter().rev().cmp(b.iter().rev())
}

#[derive(Clone, Debug)]
pub struct GammaSubgroup {
    /// One generator per induction step, in the order chosen.
    pub generators: Vec<Vec<u64>>,
    /// All elements, sorted by index.
    pub elements: Vec<Vec<u64>>,
}

impl GammaSubgroup {
    pub fn order(&self) -> usize {
        self.elements.len()
    }
}

/// The isotropic subgroup Γ: pick x of maximal order, pass to the kernel of
/// y ↦ pairing(x, y), split off ⟨x⟩ and recurse on a complement.
pub fn gamma_subgroup(a: &AbelianPairedGroup) -> GammaSubgroup {
    let all = a.elements();
    let mut generators = Vec::new();
    let mut current: Vec<Vec<u64>> = all;
    loop {
        if current.len() <= 1 {
            break;
        }
        let m = current.iter().map(|y| a.element_order(y)).max().unwrap();
        let x = current
            .iter()
            .filter(|y| a.element_order(y) == m)
            .min_by(|p, q| coord_cmp(p, q))
            .unwrap()
            .clone();
        let kernel: Vec<Vec<u64>> = current.iter().filter(|y| a.pair(&x, y).is_zero()).cloned().collect();
        let comp_elems = greedy_complement(a, &kernel, &x, m).unwrap_or_else(|| {
            let kernel_gens = small_generating_set(a, &kernel);
            let dec = decompose(&kernel_gens, a.zero(), |p, q| a.add(p, q));
            let comp = complement_of_cyclic(&dec.orders, &dec.coords[&x]).expect("x has maximal order in the kernel");
            comp.iter().map(|c| dec.element(c, &a.zero(), |p, q| a.add(p, q))).collect()
        });
        generators.push(x);
        current = a.span(&comp_elems);
    }
    let elements = a.span(&generators);
    GammaSubgroup { generators, elements }
}

/// Complement of ⟨x⟩ in `sub` built from elements taken in (order desc,
/// coordinate) order, kept when they meet ⟨x⟩ trivially. May get stuck.
fn greedy_complement(a: &AbelianPairedGroup, sub: &[Vec<u64>], x: &[u64], m: u64) -> Option<Vec<Vec<u64>>> {
    let cyc = a.span(&[x.to_vec()]);
    let target = sub.len() / m as usize;
    let mut cands = sub.to_vec();
    cands.sort_by(|p, q| a.element_order(q).cmp(&a.element_order(p)).then(coord_cmp(p, q)));
    let mut gens: Vec<Vec<u64>> = Vec::new();
    let mut span = vec![a.zero()];
    for c in cands {
        if span.len() == target {
            break;
        }
        if span.contains(&c) {
            continue;
        }
        gens.push(c);
        let next = a.span(&gens);
        if next.iter().filter(|y| cyc.contains(y)).count() == 1 {
            span = next;
        } else {
            gens.pop();
        }
    }
    (span.len() == target).then_some(gens)
}

fn small_generating_set(a: &AbelianPairedGroup, elems: &[Vec<u64>]) -> Vec<Vec<u64>> {
    let mut cands = elems.to_vec();
    cands.sort_by(|p, q| a.element_order(q).cmp(&a.element_order(p)).then(coord_cmp(p, q)));
    let mut gens: Vec<Vec<u64>> = Vec::new();
    let mut span = vec![a.zero()];
    for c in cands {
        if span.len() == elems.len() {
            break;
        }
        if !span.contains(&c) {
            gens.push(c);
            span = a.span(&gens);
        }
    }
    gens
}
