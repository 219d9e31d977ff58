//! Structural recognition by presentation matching.

use serde::Serialize;

use super::table::FiniteGroupTable;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum StructureTag {
    Cyclic { order: usize },
    /// Dihedral group of the given order.
    Dihedral { order: usize },
    GeneralizedQuaternion { order: usize },
    ElementaryAbelian { p: usize, rank: usize },
    Other,
}

impl std::fmt::Display for StructureTag {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            StructureTag::Cyclic { order } => write!(f, "cyclic({order})"),
            StructureTag::Dihedral { order } => write!(f, "dihedral({order})"),
            StructureTag::GeneralizedQuaternion { order } => write!(f, "generalized_quaternion({order})"),
            StructureTag::ElementaryAbelian { p, rank } => write!(f, "elementary_abelian({p},{rank})"),
            StructureTag::Other => write!(f, "other"),
        }
    }
}

fn prime_power(n: usize) -> Option<(usize, usize)> {
    if n < 2 {
        return None;
    }
    let p = (2..=n).find(|d| n.is_multiple_of(*d)).unwrap();
    let mut m = n;
    let mut k = 0;
    while m.is_multiple_of(p) {
        m /= p;
        k += 1;
    }
    (m == 1).then_some((p, k))
}

/// Priority: cyclic, dihedral, generalized quaternion, elementary abelian.
pub fn recognize(g: &FiniteGroupTable) -> StructureTag {
    let n = g.order();
    if (0..n).any(|x| g.element_order(x) == n) {
        return StructureTag::Cyclic { order: n };
    }
    if n.is_multiple_of(2) && n >= 4 && twisted_pair(g, n / 2, |x| g.identity() == x) {
        return StructureTag::Dihedral { order: n };
    }
    if n >= 8 && n.is_power_of_two() {
        let quarter = n / 4;
        let found = (0..n).filter(|&x| g.element_order(x) == n / 2).any(|x| {
            let target = g.pow(x, quarter);
            let sub = g.generated(&[x]);
            (0..n).any(|y| sub.binary_search(&y).is_err() && g.mul(y, y) == target && g.conj(y, x) == g.inv(x))
        });
        if found {
            return StructureTag::GeneralizedQuaternion { order: n };
        }
    }
    if let Some((p, k)) = prime_power(n) {
        if g.is_abelian() && (0..n).all(|x| x == g.identity() || g.element_order(x) == p) {
            return StructureTag::ElementaryAbelian { p, rank: k };
        }
    }
    StructureTag::Other
}

/// x of order m and y ∉ ⟨x⟩ with square(y) accepted and yxy⁻¹ = x⁻¹.
fn twisted_pair(g: &FiniteGroupTable, m: usize, square_ok: impl Fn(usize) -> bool) -> bool {
    let n = g.order();
    (0..n).filter(|&x| g.element_order(x) == m).any(|x| {
        let sub = g.generated(&[x]);
        (0..n).any(|y| sub.binary_search(&y).is_err() && square_ok(g.mul(y, y)) && g.conj(y, x) == g.inv(x))
    })
}

/// The largest nontrivial normal cyclic subgroup, ties broken by least
/// generator index.
pub fn has_normal_cyclic(g: &FiniteGroupTable) -> Option<Vec<usize>> {
    let mut best: Option<Vec<usize>> = None;
    for x in 0..g.order() {
        if x == g.identity() {
            continue;
        }
        let sub = g.generated(&[x]);
        if best.as_ref().is_some_and(|b| b.len() >= sub.len()) {
            continue;
        }
        if (0..g.order()).all(|h| sub.binary_search(&g.conj(h, x)).is_ok()) {
            best = Some(sub);
        }
    }
    best
}

/// No proper nontrivial normal subgroup: every normal closure of a
/// non-identity element is the whole group.
pub fn is_simple(g: &FiniteGroupTable) -> bool {
    g.order() > 1 && (0..g.order()).filter(|&x| x != g.identity()).all(|x| g.normal_closure(&[x]).len() == g.order())
}
