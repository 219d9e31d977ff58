use std::collections::{BTreeMap, BTreeSet, HashSet};

use divalg::csa::AlgebraCatalog;
use divalg::exact::{qf, FieldCatalog, Q};
use divalg::groups::*;
use num_traits::Zero;
use proptest::prelude::*;

fn q0() -> Q {
    Q::zero()
}

// brute-force maximal isotropic order by DFS over subgroups as bitmasks
fn max_isotropic_order(a: &AbelianPairedGroup) -> usize {
    let elems = a.elements();
    let n = elems.len();
    assert!(n <= 64);
    let add = |i: usize, j: usize| a.index_of(&a.add(&elems[i], &elems[j]));
    let orth: Vec<u64> = (0..n)
        .map(|i| (0..n).filter(|&j| a.pair(&elems[i], &elems[j]).is_zero()).fold(0u64, |m, j| m | 1 << j))
        .collect();
    let close = |mask: u64, y: usize| -> u64 {
        let mut m = mask;
        let mut frontier: Vec<usize> = (0..n).filter(|&i| m >> i & 1 == 1).collect();
        while let Some(x) = frontier.pop() {
            let z = add(x, y);
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
        let perp = (0..n).filter(|&i| m >> i & 1 == 1).fold(u64::MAX, |acc, i| acc & orth[i]);
        for y in 0..n {
            if perp >> y & 1 == 1 && m >> y & 1 == 0 {
                stack.push(close(m, y));
            }
        }
    }
    best
}

fn check_gamma(a: &AbelianPairedGroup) {
    let g = gamma_subgroup(a);
    assert!(a.is_isotropic(&g.elements));
    assert_eq!((g.order() * g.order()) % a.order(), 0);
    // maximal isotropic: Γ^⊥ = Γ
    assert_eq!(a.perp(&g.elements), g.elements);
    assert!(g.order() <= max_isotropic_order(a));
}

#[test]
fn rejects_invalid_tables() {
    assert_eq!(FiniteGroupTable::new(vec![vec![0, 1], vec![1, 1]]), Err(GroupError::NotLatinSquare));
    assert_eq!(FiniteGroupTable::new(vec![vec![1, 0], vec![0, 1]]).unwrap().identity(), 1);
    let sub = vec![vec![0, 2, 1], vec![1, 0, 2], vec![2, 1, 0]];
    assert_eq!(FiniteGroupTable::new(sub), Err(GroupError::NoIdentity));
    let loop5 = vec![
        vec![0, 1, 2, 3, 4],
        vec![1, 0, 3, 4, 2],
        vec![2, 4, 0, 1, 3],
        vec![3, 2, 4, 0, 1],
        vec![4, 3, 1, 2, 0],
    ];
    assert!(matches!(FiniteGroupTable::new(loop5), Err(GroupError::NotAssociative { .. })));
    assert!(FiniteGroupTable::from_json(r#"{"order": 2, "table": [[0,1],[1,0]]}"#).is_ok());
    assert!(FiniteGroupTable::from_json(r#"{"order": 3, "table": [[0,1],[1,0]]}"#).is_err());
}

#[test]
fn json_round_trip() {
    let g = FiniteGroupTable::dihedral(10).unwrap();
    let text = serde_json::to_string(&g.to_json()).unwrap();
    assert_eq!(FiniteGroupTable::from_json(&text).unwrap(), g);
}

#[test]
fn centers_and_quotients() {
    let q8 = FiniteGroupTable::generalized_quaternion(8).unwrap();
    assert_eq!(q8.center().len(), 2);
    let (_, sdp21) = balanced_build(7, 3).unwrap();
    assert_eq!(sdp21.center(), vec![sdp21.identity()]);
    let z4 = FiniteGroupTable::cyclic(4);
    let (quot, cosets) = z4.quotient_by(&[0, 2]).unwrap();
    assert_eq!(quot.order(), 2);
    assert_eq!(cosets, vec![0, 1, 0, 1]);
    assert_eq!(recognize(&quot), StructureTag::Cyclic { order: 2 });
    let s3 = FiniteGroupTable::dihedral(6).unwrap();
    let reflection = s3.generated(&[3]);
    assert_eq!(reflection.len(), 2);
    assert_eq!(s3.quotient_by(&reflection).unwrap_err(), GroupError::NotNormal);
}

#[test]
fn recognizer_examples() {
    let q8 = FiniteGroupTable::generalized_quaternion(8).unwrap();
    assert_eq!(recognize(&q8), StructureTag::GeneralizedQuaternion { order: 8 });
    let q16 = FiniteGroupTable::generalized_quaternion(16).unwrap();
    let (quot, _) = q16.quotient_by(&q16.center()).unwrap();
    assert_eq!(recognize(&quot), StructureTag::Dihedral { order: 8 });
    assert_eq!(recognize(&FiniteGroupTable::abelian(&[3, 3])), StructureTag::ElementaryAbelian { p: 3, rank: 2 });
    assert_eq!(recognize(&FiniteGroupTable::abelian(&[2, 2])), StructureTag::Dihedral { order: 4 });
    assert_eq!(recognize(&FiniteGroupTable::abelian(&[2, 3])), StructureTag::Cyclic { order: 6 });
    assert_eq!(recognize(&FiniteGroupTable::dihedral(16).unwrap()), StructureTag::Dihedral { order: 16 });
    assert_eq!(recognize(&FiniteGroupTable::abelian(&[2, 4])), StructureTag::Other);
    assert_eq!(recognize(&FiniteGroupTable::abelian(&[2, 2, 2])), StructureTag::ElementaryAbelian { p: 2, rank: 3 });
}

#[test]
fn quaternion_quotients_are_dihedral() {
    for order in [8, 16, 32, 64] {
        let q = FiniteGroupTable::generalized_quaternion(order).unwrap();
        let z = q.center();
        assert_eq!(z.len(), 2);
        let (quot, _) = q.quotient_by(&z).unwrap();
        assert_eq!(recognize(&quot), StructureTag::Dihedral { order: order / 2 });
    }
}

#[test]
fn normal_cyclic_subgroups() {
    let z6 = FiniteGroupTable::cyclic(6);
    assert_eq!(has_normal_cyclic(&z6).unwrap().len(), 6);
    let (_, g21) = balanced_build(7, 3).unwrap();
    let n = has_normal_cyclic(&g21).unwrap();
    assert_eq!(n.len(), 7);
    assert!(g21.is_normal(&n));
    let fields = FieldCatalog::builtin();
    let algs = AlgebraCatalog::builtin(&fields);
    let (_, two_i) = binary_icosahedral(&algs.get("hamilton-q-sqrt5").unwrap()).unwrap();
    let (a5, _) = two_i.quotient_by(&two_i.center()).unwrap();
    assert!(has_normal_cyclic(&a5).is_none());
    assert!(is_simple(&a5));
    assert!(!is_simple(&g21));
}

#[test]
fn icosahedral_chain() {
    let fields = FieldCatalog::builtin();
    let algs = AlgebraCatalog::builtin(&fields);
    let alg = algs.get("hamilton-q-sqrt5").unwrap();
    let (elems, g) = binary_icosahedral(&alg).unwrap();
    assert_eq!(elems.len(), 120);
    assert_eq!(g.order(), 120);
    let z = g.center();
    assert_eq!(z.len(), 2);
    assert!(z.iter().all(|&i| elems[i].is_one() || elems[i].neg().is_one()));
    // every icosian has reduced norm 1
    assert!(elems.iter().all(|e| e.reduced_norm().unwrap().is_one()));
    let (a5, _) = g.quotient_by(&z).unwrap();
    assert_eq!(a5.order(), 60);
    let expected: BTreeMap<usize, usize> = [(1, 1), (2, 15), (3, 20), (5, 24)].into_iter().collect();
    assert_eq!(a5.order_histogram(), expected);
}

#[test]
fn balanced_examples() {
    assert!(balanced_exists(7, 3).unwrap());
    assert!(!balanced_exists(5, 3).unwrap());
    // 11 ≡ 2 mod 3
    assert!(!balanced_exists(77, 3).unwrap());
    assert!(balanced_exists(91, 3).unwrap());
    assert!(!balanced_exists(4, 3).unwrap());
    assert!(balanced_exists(1, 3).unwrap());
    assert_eq!(balanced_exists(7, 4), Err(GroupError::NotOddPrime(4)));
    let (d, g) = balanced_build(7, 3).unwrap();
    assert_eq!((d.r, g.order()), (2, 21));
    let (d, g) = balanced_build(13, 3).unwrap();
    assert_eq!((d.r, g.order()), (3, 39));
    assert_eq!(g.center().len(), 1);
    assert_eq!(balanced_build(5, 3).unwrap_err(), GroupError::NoBalancedProduct { n: 5, p: 3 });
    assert!(balanced_build(1, 3).is_err());
    let alt = sdp_table(7, 3, 4).unwrap();
    let (_, g21) = balanced_build(7, 3).unwrap();
    let iso = find_isomorphism(&g21, &alt).unwrap();
    assert!(verify_homomorphism(&g21, &alt, &iso, true));
}

// multipliers s with g·a·g⁻¹ = a^s for a generator a of the normal ℤ/n
fn conjugation_multipliers(g: &FiniteGroupTable, n: usize) -> BTreeSet<usize> {
    let a = (0..g.order()).find(|&x| g.element_order(x) == n && g.is_normal(&g.generated(&[x]))).unwrap();
    (0..g.order())
        .map(|h| {
            let c = g.conj(h, a);
            (0..n).find(|&s| g.pow(a, s) == c).unwrap()
        })
        .collect()
}

#[test]
fn balanced_realizations_of_91_split_into_two_classes() {
    let rs = balanced_multipliers(91, 3);
    assert_eq!(rs.len(), 4);
    let tables: Vec<FiniteGroupTable> = rs.iter().map(|&r| sdp_table(91, 3, r).unwrap()).collect();
    let invariants: Vec<BTreeSet<usize>> = tables.iter().map(|t| conjugation_multipliers(t, 91)).collect();
    for i in 0..4 {
        for j in 0..4 {
            let iso = find_isomorphism(&tables[i], &tables[j]).is_some();
            assert_eq!(iso, invariants[i] == invariants[j], "r = {} vs {}", rs[i], rs[j]);
        }
    }
    let classes: BTreeSet<_> = invariants.into_iter().collect();
    assert_eq!(classes.len(), 2);
}

#[test]
fn complement_examples() {
    assert_eq!(complement_of_cyclic(&[4, 2], &[1, 0]).unwrap(), vec![vec![0, 1]]);
    let c = complement_of_cyclic(&[4, 2], &[1, 1]).unwrap();
    assert_complement(&[4, 2], &[1, 1], &c);
    assert!(complement_of_cyclic(&[5], &[1]).unwrap().is_empty());
    assert_eq!(complement_of_cyclic(&[4, 2], &[0, 1]), Err(GroupError::NotMaximalOrder));
}

fn span(factors: &[u64], gens: &[Vec<u64>]) -> BTreeSet<Vec<u64>> {
    let mut s: BTreeSet<Vec<u64>> = [vec![0; factors.len()]].into_iter().collect();
    loop {
        let mut added = false;
        for x in s.clone() {
            for g in gens {
                let y: Vec<u64> = x.iter().zip(g).zip(factors).map(|((a, b), d)| (a + b) % d).collect();
                added |= s.insert(y);
            }
        }
        if !added {
            return s;
        }
    }
}

fn assert_complement(factors: &[u64], x: &[u64], comp: &[Vec<u64>]) {
    let cx = span(factors, &[x.to_vec()]);
    let cc = span(factors, comp);
    assert_eq!(cx.intersection(&cc).count(), 1);
    assert_eq!(cx.len() * cc.len(), factors.iter().product::<u64>() as usize);
}

#[test]
fn complements_exhaustive_small() {
    for factors in [vec![4, 2], vec![2, 4], vec![6, 4], vec![2, 2, 4], vec![3, 9], vec![8, 4, 2], vec![12]] {
        let order: u64 = factors.iter().product();
        let exponent = factors.iter().fold(1u64, |a, &d| num_integer::lcm(a, d));
        for idx in 0..order {
            let mut i = idx;
            let x: Vec<u64> = factors.iter().map(|&d| { let c = i % d; i /= d; c }).collect();
            let ord = span(&factors, std::slice::from_ref(&x)).len() as u64;
            match complement_of_cyclic(&factors, &x) {
                Ok(c) => {
                    assert_eq!(ord, exponent);
                    assert_complement(&factors, &x, &c);
                }
                Err(e) => {
                    assert_eq!(e, GroupError::NotMaximalOrder);
                    assert!(ord < exponent);
                }
            }
        }
    }
}

#[test]
fn gamma_examples() {
    let z6 = AbelianPairedGroup::trivial_pairing(vec![6]).unwrap();
    assert_eq!(gamma_subgroup(&z6).order(), 6);
    let plane = AbelianPairedGroup::new(vec![3, 3], vec![vec![q0(), qf(1, 3)], vec![qf(2, 3), q0()]]).unwrap();
    let g = gamma_subgroup(&plane);
    assert_eq!(g.order(), 3);
    check_gamma(&plane);
    let h = qf(1, 2);
    let a = AbelianPairedGroup::new(
        vec![2, 2, 4],
        vec![vec![q0(), h.clone(), q0()], vec![h, q0(), q0()], vec![q0(), q0(), q0()]],
    )
    .unwrap();
    let g = gamma_subgroup(&a);
    assert_eq!(g.generators, vec![vec![0, 0, 1], vec![1, 0, 0]]);
    assert_eq!(g.order(), 8);
    assert_eq!(max_isotropic_order(&a), 8);
    check_gamma(&a);
    let p9 = AbelianPairedGroup::new(vec![9, 9], vec![vec![q0(), qf(1, 9)], vec![qf(8, 9), q0()]]).unwrap();
    assert_eq!(gamma_subgroup(&p9).order(), 9);
}

#[test]
fn invalid_pairings_rejected() {
    let bad = |f: Vec<u64>, p: Vec<Vec<Q>>| AbelianPairedGroup::new(f, p).is_err();
    assert!(bad(vec![2], vec![vec![qf(1, 2)]]));
    assert!(bad(vec![3, 3], vec![vec![q0(), qf(1, 3)], vec![qf(1, 3), q0()]]));
    assert!(bad(vec![2, 4], vec![vec![q0(), qf(1, 4)], vec![qf(3, 4), q0()]]));
    assert!(bad(vec![4, 2], vec![vec![q0(), q0()], vec![q0(), q0()]]));
    assert!(bad(vec![1], vec![vec![q0()]]));
}

fn paired_strategy() -> impl Strategy<Value = AbelianPairedGroup> {
    let shapes: Vec<Vec<u64>> = vec![
        vec![2, 2],
        vec![2, 4],
        vec![2, 2, 2],
        vec![2, 2, 4],
        vec![4, 4],
        vec![3, 3],
        vec![2, 6],
        vec![2, 2, 2, 2],
        vec![2, 2, 2, 2, 2],
        vec![4, 8],
        vec![2, 2, 2, 4],
        vec![3, 9],
        vec![2, 2, 2, 2, 2, 2],
    ];
    (proptest::sample::select(shapes), proptest::collection::vec(0u64..1000, 15)).prop_map(|(f, seeds)| {
        let r = f.len();
        let mut p = vec![vec![q0(); r]; r];
        let mut k = 0;
        for i in 0..r {
            for j in i + 1..r {
                let v = qf((seeds[k] % f[i]) as i64, f[i] as i64);
                k += 1;
                let w = if v.is_zero() { q0() } else { Q::from_integer(1.into()) - &v };
                p[i][j] = v;
                p[j][i] = w;
            }
        }
        AbelianPairedGroup::new(f, p).unwrap()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]
    #[test]
    fn gamma_is_maximal_isotropic(a in paired_strategy()) {
        check_gamma(&a);
    }

    #[test]
    fn decomposition_matches_structure(f in proptest::sample::select(vec![vec![2u64, 4], vec![6, 4], vec![3, 3, 9], vec![10, 15]])) {
        let g = FiniteGroupTable::abelian(&f.iter().map(|&d| d as usize).collect::<Vec<_>>());
        let mut gens = g.generating_set();
        gens.extend([1, 2, g.order() - 1]);
        let d = decompose(&gens, g.identity(), |a, b| g.mul(*a, *b));
        prop_assert_eq!(d.orders.iter().product::<u64>() as usize, g.order());
        prop_assert!(d.orders.windows(2).all(|w| w[1] % w[0] == 0));
        for (x, c) in &d.coords {
            prop_assert_eq!(d.element(c, &g.identity(), |a, b| g.mul(*a, *b)), *x);
        }
        for (i, b) in d.basis.iter().enumerate() {
            prop_assert_eq!(g.element_order(*b) as u64, d.orders[i]);
        }
    }
}

#[test]
fn theorem_shape_embeddings() {
    let z21 = FiniteGroupTable::cyclic(21);
    let e = embeds_theorem_shape(&z21, 3, None).unwrap().unwrap();
    assert_eq!(e.n, 7);
    let z33 = FiniteGroupTable::abelian(&[3, 3]);
    assert_eq!(embeds_theorem_shape(&z33, 3, None).unwrap().unwrap().n, 1);
    let z9 = FiniteGroupTable::cyclic(9);
    assert!(embeds_theorem_shape(&z9, 3, None).unwrap().is_none());
    let z5 = FiniteGroupTable::cyclic(5);
    assert_eq!(embeds_theorem_shape(&z5, 5, None).unwrap().unwrap().n, 1);
    let (_, g21) = balanced_build(7, 3).unwrap();
    let e = embeds_theorem_shape(&g21, 3, None).unwrap().unwrap();
    assert_eq!(e.n, 7);
    // witness check against the shape group
    let shape = TheoremShape::new(e.n, e.p, e.r);
    let map: Vec<usize> = e.images.iter().map(|&(a, b, c)| (a + e.n * (b + e.p * c)) as usize).collect();
    assert!(verify_homomorphism(&g21, &shape, &map, true));
    // ℤ/2 has an element order 2 ≢ 1 mod 3
    assert!(embeds_theorem_shape(&FiniteGroupTable::cyclic(2), 3, None).unwrap().is_none());
    // ℤ/7 × ℤ/7 passes the order test but needs n = 49, beyond a small bound
    let z77 = FiniteGroupTable::abelian(&[7, 7]);
    assert_eq!(embeds_theorem_shape(&z77, 3, Some(20)).unwrap_err(), GroupError::SearchBoundExceeded { bound: 20 });
}

#[test]
fn shape_orders_match_tables() {
    for (n, p) in [(7u64, 3u64), (13, 3), (11, 5), (1, 3)] {
        let r = if n == 1 { 0 } else { balanced_multipliers(n, p)[0] };
        let shape = TheoremShape::new(n, p, r);
        let t = FiniteGroupTable::from_fn(shape.size(), |a, b| shape.op(a, b)).unwrap();
        for x in 0..t.order() {
            assert_eq!(t.element_order(x), shape.elem_order(x));
        }
    }
}
