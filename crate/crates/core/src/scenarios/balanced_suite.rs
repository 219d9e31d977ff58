use std::collections::{BTreeMap, BTreeSet};

use serde_json::{json, Value};

use super::oracle::sdp_center_is_trivial;
use super::VerificationReport;
use crate::groups::{balanced_exists, find_isomorphism, pow_mod, sdp_table, GroupLike, Sdp};
use crate::par::{self, Exec};

const ANCHOR_CRITERION: &str = "congruent to 1 modulo p";
const ANCHOR_UNIQUE: &str = "unique when it exists";
/// Non-isomorphism between classes is also confirmed by table search up to this order.
const SEARCH_CONFIRM_ORDER: u64 = 400;

/// The subgroup ⟨r⟩ of (ℤ/n)*: the image of ℤ/p acting on the characteristic
/// subgroup ℤ/n, an isomorphism invariant.
fn action_image(n: u64, r: u64) -> BTreeSet<u64> {
    let mut s = BTreeSet::new();
    let mut x = 1 % n;
    while s.insert(x) {
        x = x * r % n;
    }
    s
}

/// φ(a, b) = (a, s·b) from ℤ/n ⋊_{r0} ℤ/p to ℤ/n ⋊_r ℤ/p where r^s ≡ r0,
/// checked to be a bijective homomorphism over all pairs.
fn explicit_isomorphism(n: u64, p: u64, r0: u64, r: u64) -> bool {
    let Some(s) = (1..p).find(|&s| pow_mod(r, s, n) == r0 % n) else { return false };
    let (g, h) = (Sdp::new(n, p, r0), Sdp::new(n, p, r));
    let phi = |x: usize| {
        let (a, b) = (x as u64 % n, x as u64 / n);
        (a + n * (s * b % p)) as usize
    };
    let size = g.size();
    let image: BTreeSet<usize> = (0..size).map(phi).collect();
    image.len() == size && (0..size).all(|x| (0..size).all(|y| phi(g.op(x, y)) == h.op(phi(x), phi(y))))
}

struct Case {
    n: u64,
    criterion: bool,
    realizations: Vec<u64>,
    classes: Vec<Vec<u64>>,
    classes_verified: bool,
    search_confirms: Option<bool>,
}

fn analyze(n: u64, p: u64) -> Case {
    let criterion = balanced_exists(n, p).unwrap_or(false);
    let realizations: Vec<u64> = (0..n).filter(|&r| pow_mod(r, p, n) == 1 && sdp_center_is_trivial(n, p, r)).collect();
    let mut by_image: BTreeMap<BTreeSet<u64>, Vec<u64>> = BTreeMap::new();
    for &r in &realizations {
        by_image.entry(action_image(n, r)).or_default().push(r);
    }
    let classes: Vec<Vec<u64>> = by_image.into_values().collect();
    let classes_verified = classes.iter().all(|c| c[1..].iter().all(|&r| explicit_isomorphism(n, p, c[0], r)));
    let search_confirms = (classes.len() > 1 && n * p <= SEARCH_CONFIRM_ORDER).then(|| {
        let reps: Vec<_> = classes.iter().map(|c| sdp_table(n, p, c[0]).expect("valid product")).collect();
        (0..reps.len()).all(|i| (i + 1..reps.len()).all(|j| find_isomorphism(&reps[i], &reps[j]).is_none()))
    });
    Case { n, criterion, realizations, classes, classes_verified, search_confirms }
}

/// For every 2 ≤ n ≤ n_max and p in `primes`: the prime-congruence criterion
/// against brute-force existence of a trivial-center ℤ/n ⋊ ℤ/p, and pairwise
/// isomorphism of all such products.
pub fn run_balanced_suite(n_max: u64, primes: &[u64], exec: Exec) -> VerificationReport {
    let mut r = VerificationReport::new("balanced");
    for &p in primes {
        if balanced_exists(1, p).is_err() {
            r.check(format!("p = {p} is an odd prime"), ANCHOR_CRITERION, false, Value::Null);
            continue;
        }
        let cases = par::map_range(exec, n_max.saturating_sub(1) as usize, |i| analyze(i as u64 + 2, p));
        let mismatches: Vec<Value> = cases
            .iter()
            .filter(|c| c.criterion != !c.realizations.is_empty())
            .map(|c| json!({ "n": c.n, "criterion": c.criterion, "brute_force": !c.realizations.is_empty() }))
            .collect();
        let existing = cases.iter().filter(|c| !c.realizations.is_empty()).count();
        r.check(
            format!("p = {p}: criterion matches brute-force existence for 2 ≤ n ≤ {n_max}"),
            ANCHOR_CRITERION,
            mismatches.is_empty(),
            json!({ "p": p, "n_max": n_max, "existing": existing, "mismatches": mismatches }),
        );
        let unverified: Vec<u64> = cases.iter().filter(|c| !c.classes_verified).map(|c| c.n).collect();
        let split: Vec<Value> = cases
            .iter()
            .filter(|c| c.classes.len() > 1)
            .map(|c| json!({ "n": c.n, "classes": c.classes, "confirmed_by_table_search": c.search_confirms }))
            .collect();
        r.check(
            format!("p = {p}: all balanced products at fixed n are pairwise isomorphic"),
            ANCHOR_UNIQUE,
            split.is_empty() && unverified.is_empty(),
            json!({ "p": p, "cases": existing, "non_isomorphic": split, "unverified_isomorphisms": unverified }),
        );
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_cases() {
        let c = analyze(7, 3);
        assert!(c.criterion);
        assert_eq!(c.realizations, vec![2, 4]);
        assert_eq!(c.classes.len(), 1);
        assert!(c.classes_verified);
        let c = analyze(4, 3);
        assert!(!c.criterion && c.realizations.is_empty());
        let c = analyze(91, 3);
        assert_eq!(c.classes.len(), 2);
        assert_eq!(c.search_confirms, Some(true));
    }
}
