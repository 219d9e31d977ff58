//! Groups given by multiplication tables.

use std::collections::{BTreeMap, VecDeque};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::GroupError;

/// Exhaustive associativity check up to this order, sampled above.
pub const EXHAUSTIVE_ASSOC_ORDER: usize = 256;
pub const ASSOC_SAMPLES: usize = 10_000;
pub const ASSOC_SEED: u64 = 0x5EED;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteGroupTable {
    order: usize,
    table: Vec<u32>,
    identity: usize,
    inverses: Vec<usize>,
    orders: Vec<usize>,
}

/// Exchange format.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TableJson {
    pub order: usize,
    pub table: Vec<Vec<usize>>,
}

impl FiniteGroupTable {
    pub fn new(rows: Vec<Vec<usize>>) -> Result<Self, GroupError> {
        let order = rows.len();
        if order == 0 {
            return Err(GroupError::BadTable("empty table".into()));
        }
        let mut flat = Vec::with_capacity(order * order);
        for r in &rows {
            if r.len() != order {
                return Err(GroupError::BadTable("table is not square".into()));
            }
            for &x in r {
                if x >= order {
                    return Err(GroupError::BadTable(format!("entry {x} out of range")));
                }
                flat.push(x as u32);
            }
        }
        Self::from_flat(order, flat)
    }

    /// Table with entries f(a, b), validated.
    pub fn from_fn(order: usize, f: impl Fn(usize, usize) -> usize) -> Result<Self, GroupError> {
        let mut flat = Vec::with_capacity(order * order);
        for a in 0..order {
            for b in 0..order {
                let c = f(a, b);
                if c >= order {
                    return Err(GroupError::BadTable(format!("entry {c} out of range")));
                }
                flat.push(c as u32);
            }
        }
        Self::from_flat(order, flat)
    }

    fn from_flat(order: usize, table: Vec<u32>) -> Result<Self, GroupError> {
        let mut seen = vec![false; order];
        for a in 0..order {
            seen.iter_mut().for_each(|s| *s = false);
            for b in 0..order {
                let c = table[a * order + b] as usize;
                if std::mem::replace(&mut seen[c], true) {
                    return Err(GroupError::NotLatinSquare);
                }
            }
            seen.iter_mut().for_each(|s| *s = false);
            for b in 0..order {
                let c = table[b * order + a] as usize;
                if std::mem::replace(&mut seen[c], true) {
                    return Err(GroupError::NotLatinSquare);
                }
            }
        }
        let identity = (0..order)
            .find(|&e| (0..order).all(|x| table[e * order + x] as usize == x && table[x * order + e] as usize == x))
            .ok_or(GroupError::NoIdentity)?;
        let mut g = FiniteGroupTable { order, table, identity, inverses: Vec::new(), orders: Vec::new() };
        g.check_associative()?;
        g.inverses = (0..order).map(|a| (0..order).find(|&b| g.mul(a, b) == identity).unwrap()).collect();
        g.orders = (0..order)
            .map(|a| {
                let mut k = 1;
                let mut x = a;
                while x != identity {
                    x = g.mul(x, a);
                    k += 1;
                }
                k
            })
            .collect();
        Ok(g)
    }

    fn check_associative(&self) -> Result<(), GroupError> {
        let n = self.order;
        let check = |a: usize, b: usize, c: usize| {
            if self.mul(self.mul(a, b), c) != self.mul(a, self.mul(b, c)) {
                Err(GroupError::NotAssociative { a, b, c })
            } else {
                Ok(())
            }
        };
        if n <= EXHAUSTIVE_ASSOC_ORDER {
            for a in 0..n {
                for b in 0..n {
                    for c in 0..n {
                        check(a, b, c)?;
                    }
                }
            }
        } else {
            let mut rng = ChaCha8Rng::seed_from_u64(ASSOC_SEED);
            for _ in 0..ASSOC_SAMPLES {
                check(rng.gen_range(0..n), rng.gen_range(0..n), rng.gen_range(0..n))?;
            }
        }
        Ok(())
    }

    pub fn from_json(text: &str) -> Result<Self, GroupError> {
        let j: TableJson = serde_json::from_str(text).map_err(|e| GroupError::BadTable(e.to_string()))?;
        if j.order != j.table.len() {
            return Err(GroupError::BadTable("order does not match table size".into()));
        }
        Self::new(j.table)
    }

    pub fn to_json(&self) -> TableJson {
        TableJson { order: self.order, table: self.rows() }
    }

    pub fn rows(&self) -> Vec<Vec<usize>> {
        (0..self.order).map(|a| (0..self.order).map(|b| self.mul(a, b)).collect()).collect()
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.order + b] as usize
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inverses[a]
    }

    pub fn pow(&self, a: usize, e: usize) -> usize {
        let k = e % self.orders[a];
        (0..k).fold(self.identity, |x, _| self.mul(x, a))
    }

    pub fn element_order(&self, a: usize) -> usize {
        self.orders[a]
    }

    /// g·x·g⁻¹
    pub fn conj(&self, g: usize, x: usize) -> usize {
        self.mul(self.mul(g, x), self.inv(g))
    }

    pub fn commutes(&self, a: usize, b: usize) -> bool {
        self.mul(a, b) == self.mul(b, a)
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.order).all(|a| (a + 1..self.order).all(|b| self.commutes(a, b)))
    }

    /// Sorted elements of the subgroup generated by `gens`.
    pub fn generated(&self, gens: &[usize]) -> Vec<usize> {
        let mut seen = vec![false; self.order];
        seen[self.identity] = true;
        let mut queue = VecDeque::from([self.identity]);
        while let Some(x) = queue.pop_front() {
            for &g in gens {
                let y = self.mul(x, g);
                if !seen[y] {
                    seen[y] = true;
                    queue.push_back(y);
                }
            }
        }
        (0..self.order).filter(|&x| seen[x]).collect()
    }

    pub fn is_subgroup(&self, set: &[usize]) -> bool {
        let mut member = vec![false; self.order];
        for &x in set {
            if x >= self.order {
                return false;
            }
            member[x] = true;
        }
        member[self.identity] && set.iter().all(|&a| set.iter().all(|&b| member[self.mul(a, self.inv(b))]))
    }

    pub fn is_normal(&self, sub: &[usize]) -> bool {
        if !self.is_subgroup(sub) {
            return false;
        }
        let mut member = vec![false; self.order];
        sub.iter().for_each(|&x| member[x] = true);
        (0..self.order).all(|g| sub.iter().all(|&x| member[self.conj(g, x)]))
    }

    pub fn center(&self) -> Vec<usize> {
        (0..self.order).filter(|&z| (0..self.order).all(|g| self.commutes(z, g))).collect()
    }

    pub fn normal_closure(&self, set: &[usize]) -> Vec<usize> {
        let conjugates: Vec<usize> = set.iter().flat_map(|&x| (0..self.order).map(move |g| (g, x))).map(|(g, x)| self.conj(g, x)).collect();
        self.generated(&conjugates)
    }

    /// Quotient by a normal subgroup; also returns the coset index of each element.
    /// Cosets are numbered by their least element.
    pub fn quotient_by(&self, sub: &[usize]) -> Result<(FiniteGroupTable, Vec<usize>), GroupError> {
        if !self.is_normal(sub) {
            return Err(GroupError::NotNormal);
        }
        let mut coset = vec![usize::MAX; self.order];
        let mut reps = Vec::new();
        for g in 0..self.order {
            if coset[g] == usize::MAX {
                for &h in sub {
                    coset[self.mul(g, h)] = reps.len();
                }
                reps.push(g);
            }
        }
        let q = FiniteGroupTable::from_fn(reps.len(), |a, b| coset[self.mul(reps[a], reps[b])])?;
        Ok((q, coset))
    }

    /// The subgroup on `sub` (sorted) with elements renumbered by position.
    pub fn subgroup_table(&self, sub: &[usize]) -> Result<FiniteGroupTable, GroupError> {
        if !self.is_subgroup(sub) {
            return Err(GroupError::NotSubgroup);
        }
        let mut pos = vec![usize::MAX; self.order];
        sub.iter().enumerate().for_each(|(i, &x)| pos[x] = i);
        FiniteGroupTable::from_fn(sub.len(), |a, b| pos[self.mul(sub[a], sub[b])])
    }

    pub fn order_histogram(&self) -> BTreeMap<usize, usize> {
        let mut h = BTreeMap::new();
        for &o in &self.orders {
            *h.entry(o).or_insert(0) += 1;
        }
        h
    }

    /// Greedy generating set: elements of largest order first.
    pub fn generating_set(&self) -> Vec<usize> {
        let mut cands: Vec<usize> = (0..self.order).collect();
        cands.sort_by_key(|&x| (std::cmp::Reverse(self.orders[x]), x));
        let mut gens = Vec::new();
        let mut current = vec![self.identity];
        for x in cands {
            if current.len() == self.order {
                break;
            }
            if current.binary_search(&x).is_err() {
                gens.push(x);
                current = self.generated(&gens);
            }
        }
        gens
    }

    pub fn cyclic(n: usize) -> Self {
        Self::from_fn(n, |a, b| (a + b) % n).expect("cyclic group")
    }

    /// Dihedral group of the given (even) order: x^a y^b at index a + m·b.
    pub fn dihedral(order: usize) -> Result<Self, GroupError> {
        if order < 2 || !order.is_multiple_of(2) {
            return Err(GroupError::BadTable(format!("dihedral order {order} must be even")));
        }
        let m = order / 2;
        Self::from_fn(order, |s, t| {
            let (a, b, c, d) = (s % m, s / m, t % m, t / m);
            let e = if b == 0 { a + c } else { a + m - c };
            e % m + m * ((b + d) % 2)
        })
    }

    /// Generalized quaternion group of order 2^k, k ≥ 3: x^{2^{k-1}} = 1,
    /// y² = x^{2^{k-2}}, yxy⁻¹ = x⁻¹; element x^a y^b at index a + m·b.
    pub fn generalized_quaternion(order: usize) -> Result<Self, GroupError> {
        if order < 8 || !order.is_power_of_two() {
            return Err(GroupError::BadTable(format!("generalized quaternion order {order} must be 2^k with k ≥ 3")));
        }
        let m = order / 2;
        Self::from_fn(order, |s, t| {
            let (a, b, c, d) = (s % m, s / m, t % m, t / m);
            let mut e = if b == 0 { a + c } else { a + m - c };
            if b == 1 && d == 1 {
                e += m / 2;
            }
            e % m + m * ((b + d) % 2)
        })
    }

    /// ⊕ ℤ/d_i with mixed-radix indexing, first factor fastest.
    pub fn abelian(factors: &[usize]) -> Self {
        let order: usize = factors.iter().product();
        let digits = |mut x: usize| -> Vec<usize> {
            factors.iter().map(|&d| {
                let r = x % d;
                x /= d;
                r
            }).collect()
        };
        Self::from_fn(order, |a, b| {
            let (da, db) = (digits(a), digits(b));
            let mut idx = 0;
            let mut scale = 1;
            for ((x, y), d) in da.iter().zip(&db).zip(factors) {
                idx += (x + y) % d * scale;
                scale *= d;
            }
            idx
        })
        .expect("abelian group")
    }

    /// G × H with (g, h) at index g + |G|·h.
    pub fn direct_product(&self, other: &FiniteGroupTable) -> Self {
        let n = self.order;
        Self::from_fn(n * other.order, |a, b| {
            self.mul(a % n, b % n) + n * other.mul(a / n, b / n)
        })
        .expect("direct product")
    }
}
