//! Homomorphism search by generator-image backtracking.

use std::collections::{HashMap, VecDeque};

use serde::Serialize;

use super::balanced::{balanced_exists, balanced_multipliers, TheoremShape};
use super::table::FiniteGroupTable;
use super::GroupError;

/// A finite group with elements 0..size.
pub trait GroupLike: Sync {
    fn size(&self) -> usize;
    fn op(&self, a: usize, b: usize) -> usize;
    fn unit(&self) -> usize;
    fn elem_order(&self, a: usize) -> usize;
}

impl GroupLike for FiniteGroupTable {
    fn size(&self) -> usize {
        self.order()
    }
    fn op(&self, a: usize, b: usize) -> usize {
        self.mul(a, b)
    }
    fn unit(&self) -> usize {
        self.identity()
    }
    fn elem_order(&self, a: usize) -> usize {
        self.element_order(a)
    }
}

/// Extend the assignment gens[..k] ↦ imgs[..k] along the Cayley graph.
/// Returns the partial map on ⟨gens[..k]⟩ or None on a conflict.
fn extend<H: GroupLike>(
    g: &FiniteGroupTable,
    h: &H,
    gens: &[usize],
    imgs: &[usize],
    injective: bool,
) -> Option<Vec<usize>> {
    let mut map = vec![usize::MAX; g.order()];
    let mut used: HashMap<usize, usize> = HashMap::new();
    map[g.identity()] = h.unit();
    used.insert(h.unit(), g.identity());
    let mut queue = VecDeque::from([g.identity()]);
    while let Some(x) = queue.pop_front() {
        for (&s, &t) in gens.iter().zip(imgs) {
            let y = g.mul(x, s);
            let img = h.op(map[x], t);
            if map[y] == usize::MAX {
                if injective {
                    if let Some(&prev) = used.get(&img) {
                        if prev != y {
                            return None;
                        }
                    }
                    used.insert(img, y);
                }
                map[y] = img;
                queue.push_back(y);
            } else if map[y] != img {
                return None;
            }
        }
    }
    Some(map)
}

/// A homomorphism (injective if requested) G → H, found by backtracking over
/// images of a greedy generating set with matching element orders.
pub fn find_homomorphism<H: GroupLike>(g: &FiniteGroupTable, h: &H, injective: bool) -> Option<Vec<usize>> {
    let gens = g.generating_set();
    if gens.is_empty() {
        return Some(vec![h.unit()]);
    }
    let cands: Vec<Vec<usize>> = gens
        .iter()
        .map(|&s| {
            let o = g.element_order(s);
            (0..h.size())
                .filter(|&t| if injective { h.elem_order(t) == o } else { o.is_multiple_of(h.elem_order(t)) })
                .collect()
        })
        .collect();
    let mut imgs = Vec::with_capacity(gens.len());
    let found = backtrack(g, h, &gens, &cands, &mut imgs, injective);
    found.filter(|m| verify_homomorphism(g, h, m, injective))
}

fn backtrack<H: GroupLike>(
    g: &FiniteGroupTable,
    h: &H,
    gens: &[usize],
    cands: &[Vec<usize>],
    imgs: &mut Vec<usize>,
    injective: bool,
) -> Option<Vec<usize>> {
    let k = imgs.len();
    for &t in &cands[k] {
        imgs.push(t);
        if let Some(map) = extend(g, h, &gens[..=k], imgs, injective) {
            if k + 1 == gens.len() {
                return Some(map);
            }
            if let Some(m) = backtrack(g, h, gens, cands, imgs, injective) {
                return Some(m);
            }
        }
        imgs.pop();
    }
    None
}

/// Full table check of a map G → H.
pub fn verify_homomorphism<H: GroupLike>(g: &FiniteGroupTable, h: &H, map: &[usize], injective: bool) -> bool {
    let n = g.order();
    if map.len() != n || map.iter().any(|&x| x >= h.size()) {
        return false;
    }
    if injective {
        let mut seen = std::collections::HashSet::new();
        if !map.iter().all(|x| seen.insert(*x)) {
            return false;
        }
    }
    (0..n).all(|a| (0..n).all(|b| map[g.mul(a, b)] == h.op(map[a], map[b])))
}

pub fn find_isomorphism(g: &FiniteGroupTable, h: &FiniteGroupTable) -> Option<Vec<usize>> {
    if g.order() != h.order() || g.order_histogram() != h.order_histogram() {
        return None;
    }
    find_homomorphism(g, h, true)
}

/// Largest group order accepted by [`embeds_theorem_shape`].
pub const MAX_EMBED_ORDER: usize = 2000;

#[derive(Clone, Debug, Serialize)]
pub struct ShapeEmbedding {
    pub n: u64,
    pub p: u64,
    pub r: u64,
    /// Image of each element as (a, b, c) in (ℤ/n ⋊ ℤ/p) × ℤ/p.
    pub images: Vec<(u64, u64, u64)>,
}

/// The smallest n ≤ bound with a monomorphism G → (ℤ/n ⋊ ℤ/p) × ℤ/p for a
/// balanced action (ℤ/p × ℤ/p when n = 1). `Ok(None)` is a proof of
/// absence from element orders.
pub fn embeds_theorem_shape(
    g: &FiniteGroupTable,
    p: u64,
    bound: Option<u64>,
) -> Result<Option<ShapeEmbedding>, GroupError> {
    balanced_exists(1, p)?;
    if g.order() > MAX_EMBED_ORDER {
        return Err(GroupError::TooLarge { order: g.order(), max: MAX_EMBED_ORDER });
    }
    // element orders in the shape divide n·p with p-part at most p and all
    // other primes ≡ 1 mod p
    for a in 0..g.order() {
        let o = g.element_order(a) as u64;
        if o.is_multiple_of(p * p) {
            return Ok(None);
        }
        if !balanced_exists(if o.is_multiple_of(p) { o / p } else { o }, p)? {
            return Ok(None);
        }
    }
    let bound = bound.unwrap_or(10 * g.order() as u64);
    let size = g.order() as u64;
    for n in 1..=bound {
        if !balanced_exists(n, p)? || !(n * p * p).is_multiple_of(size) {
            continue;
        }
        let rs = if n == 1 { vec![0] } else { balanced_multipliers(n, p) };
        for r in rs {
            let shape = TheoremShape::new(n, p, r);
            if let Some(map) = find_homomorphism(g, &shape, true) {
                let images = map.iter().map(|&x| shape.coords(x)).collect();
                return Ok(Some(ShapeEmbedding { n, p, r, images }));
            }
        }
    }
    Err(GroupError::SearchBoundExceeded { bound })
}
