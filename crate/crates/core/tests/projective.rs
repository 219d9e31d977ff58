use std::sync::{Arc, OnceLock};

use divalg::csa::{AlgebraCatalog, AlgebraElement, CyclicAlgebra};
use divalg::exact::{q, qf, FieldCatalog, FieldElement, Q};
use divalg::groups::{recognize, StructureTag};
use divalg::projective::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

struct Env {
    fields: FieldCatalog,
    algs: AlgebraCatalog,
}

fn env() -> &'static Env {
    static ENV: OnceLock<Env> = OnceLock::new();
    ENV.get_or_init(|| {
        let fields = FieldCatalog::builtin();
        let algs = AlgebraCatalog::builtin(&fields);
        Env { fields, algs }
    })
}

fn alg(label: &str) -> Arc<CyclicAlgebra> {
    env().algs.get(label).unwrap()
}

fn el(a: &Arc<CyclicAlgebra>, flat: &[Q]) -> AlgebraElement {
    AlgebraElement::from_flat(a, flat).unwrap()
}

fn ints(a: &Arc<CyclicAlgebra>, flat: &[i64]) -> AlgebraElement {
    AlgebraElement::from_ints(a, flat).unwrap()
}

fn group(a: &Arc<CyclicAlgebra>, gens: &[AlgebraElement]) -> ProjectiveGroup {
    let units: Vec<ProjectiveUnit> = gens.iter().map(|g| project(g).unwrap()).collect();
    closure(a, &units, DEFAULT_CLOSURE_BOUND).unwrap()
}

fn zeta7(a: &Arc<CyclicAlgebra>) -> AlgebraElement {
    let mut flat = vec![q(0), qf(3, 7), qf(1, 2), qf(1, 14), q(0), qf(-1, 7)];
    flat.extend(vec![q(0); 12]);
    el(a, &flat)
}

fn zeta9(a: &Arc<CyclicAlgebra>) -> AlgebraElement {
    let mut flat = vec![qf(-2, 3), qf(-4, 3), qf(2, 3), qf(1, 3), qf(1, 3), qf(2, 3)];
    flat.extend(vec![q(0); 12]);
    el(a, &flat)
}

#[test]
fn projection_is_scalar_invariant() {
    let h = alg("hamilton-q");
    assert_eq!(project(&ints(&h, &[0, 2, 0, 0])).unwrap(), project(&ints(&h, &[0, 1, 0, 0])).unwrap());
    assert_eq!(project(&ints(&h, &[3, 0, 0, 0])).unwrap(), ProjectiveUnit::identity(&h));
    assert_eq!(project(&ints(&h, &[0, 0, 0, 0])), Err(ProjectiveError::NotAUnit));
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for label in ["hamilton-q", "cubic-qw-cbrt2", "cubic-q-zeta7plus"] {
        let a = alg(label);
        let kf = a.base().clone();
        for _ in 0..100 {
            let x = AlgebraElement::random(&a, &mut rng);
            let c: Vec<Q> = (0..kf.degree()).map(|_| qf(rng.gen_range(1..20), rng.gen_range(1..9))).collect();
            let c = FieldElement::new(kf.clone(), c).unwrap();
            let px = project(&x).unwrap();
            assert_eq!(project(&x.scale(&c).unwrap()).unwrap(), px);
            let inv = project(&x.inverse().unwrap()).unwrap();
            assert!(px.mul(&inv).is_identity());
        }
    }
}

#[test]
fn closure_examples() {
    let h = alg("hamilton-q");
    let g = group(&h, &[ints(&h, &[0, 1, 0, 0]), ints(&h, &[0, 0, 1, 0])]);
    assert_eq!(g.order(), 4);
    assert_eq!(recognize(g.table()), StructureTag::Dihedral { order: 4 });
    assert!(g.table().is_abelian());
    let t = group(&h, &[]);
    assert_eq!(t.order(), 1);
    let t = group(&h, &[ints(&h, &[1, 0, 0, 0])]);
    assert_eq!(t.order(), 1);
    let c = group(&h, &[ints(&h, &[1, 1, 0, 0])]);
    assert_eq!(c.order(), 4);
    assert_eq!(recognize(c.table()), StructureTag::Cyclic { order: 4 });
    // 1 + i + j has infinite order modulo scalars
    let inf = closure(&h, &[project(&ints(&h, &[1, 1, 1, 0])).unwrap()], 50);
    assert_eq!(inf.unwrap_err(), ProjectiveError::BoundExceeded { bound: 50 });
}

#[test]
fn scalar_powers() {
    let h = alg("hamilton-q");
    let i = project(&ints(&h, &[0, 1, 0, 0])).unwrap();
    let sp = scalar_power(&i, 100).unwrap();
    assert_eq!((sp.alpha, sp.scalar.as_rational().cloned()), (2, Some(q(-1))));
    let sp = scalar_power(&ProjectiveUnit::identity(&h), 100).unwrap();
    assert_eq!((sp.alpha, sp.scalar.as_rational().cloned()), (1, Some(q(1))));
    let c = alg("cubic-q-zeta7plus");
    let z = project(&AlgebraElement::z(&c)).unwrap();
    let sp = scalar_power(&z, 100).unwrap();
    assert_eq!((sp.alpha, sp.scalar.as_rational().cloned()), (3, Some(q(2))));
}

#[test]
fn finite_lift_examples() {
    let h = alg("hamilton-q");
    let i = project(&ints(&h, &[0, 1, 0, 0])).unwrap();
    let d = finite_order_lift(&i, 100).unwrap();
    let l = d.lift.unwrap();
    assert_eq!(l.order, 4);
    assert!(d.norm_route);
    let x = project(&ints(&h, &[1, 1, 0, 0])).unwrap();
    let d = finite_order_lift(&x, 100).unwrap();
    assert_eq!((d.alpha, d.scalar.as_rational().cloned()), (4, Some(q(-4))));
    assert!(d.lift.is_none());
    assert_eq!(d.reduced_norm.as_rational().cloned(), Some(q(2)));
    assert!(!d.norm_route);
    // (1 + i + j + k)³ = −8: lift (1 + i + j + k)/2 of order 6
    let t = project(&ints(&h, &[1, 1, 1, 1])).unwrap();
    let d = finite_order_lift(&t, 100).unwrap();
    assert_eq!((d.alpha, d.scalar.as_rational().cloned()), (3, Some(q(-8))));
    let l = d.lift.unwrap();
    assert_eq!(l.element, el(&h, &[qf(1, 2), qf(1, 2), qf(1, 2), qf(1, 2)]));
    assert_eq!(l.order, 6);
}

#[test]
fn ng_of_quaternion_image() {
    let h = alg("hamilton-q");
    let g = group(&h, &[ints(&h, &[0, 1, 0, 0]), ints(&h, &[0, 0, 1, 0])]);
    let ng = compute_ng(&g, DEFAULT_CLOSURE_BOUND).unwrap();
    assert_eq!(ng.members, vec![0, 1, 2, 3]);
    assert_eq!(ng.quotient_order(), 1);
    for d in &ng.decisions {
        assert!(d.reduced_norm.is_one());
    }
    let lifted = lift_ng(&g, &ng, DEFAULT_CLOSURE_BOUND).unwrap();
    assert_eq!(lifted.elements.len(), 8);
    assert_eq!(recognize(&lifted.table), StructureTag::GeneralizedQuaternion { order: 8 });
    let r = GroupReport::compute(&g, DEFAULT_CLOSURE_BOUND).unwrap();
    assert!(r.divides_n_squared && r.quotient_abelian);
}

#[test]
fn ng_partial_and_trivial() {
    let h = alg("hamilton-q");
    let g = group(&h, &[ints(&h, &[1, 1, 0, 0])]);
    let ng = compute_ng(&g, DEFAULT_CLOSURE_BOUND).unwrap();
    assert_eq!(ng.members.len(), 2);
    assert!(g.element(ng.members[1]).rep() == &ints(&h, &[0, 1, 0, 0]));
    assert_eq!(ng.quotient_order(), 2);
    let lifted = lift_ng(&g, &ng, DEFAULT_CLOSURE_BOUND).unwrap();
    assert_eq!(lifted.elements.len(), 4);
    let t = group(&h, &[]);
    let ng = compute_ng(&t, DEFAULT_CLOSURE_BOUND).unwrap();
    assert_eq!(ng.members, vec![0]);
    let lifted = lift_ng(&t, &ng, DEFAULT_CLOSURE_BOUND).unwrap();
    assert_eq!(lifted.elements.len(), 1);
}

#[test]
fn ng_trivial_for_klein3() {
    let a = alg("cubic-qw-cbrt2");
    // ∛2 and z: both cubes are non-cube scalars 2 and 7
    let mut u = vec![q(0); 18];
    u[2] = q(1);
    let g = group(&a, &[el(&a, &u), AlgebraElement::z(&a)]);
    assert_eq!(g.order(), 9);
    assert!(g.table().is_abelian());
    let ng = compute_ng(&g, DEFAULT_CLOSURE_BOUND).unwrap();
    assert_eq!(ng.members, vec![0]);
    assert_eq!(9 % g.order(), 0);
    let gamma = gamma_of(&g).unwrap();
    assert_eq!(gamma.elements.len(), 3);
    assert_eq!(gamma.subfield.degree, 3);
}

#[test]
fn balanced_21_group() {
    let a = alg("cubic-qsqrt-7-zeta7");
    let z7 = zeta7(&a);
    assert!(z7.pow(7).is_one() && !z7.is_one());
    let g = group(&a, &[z7, AlgebraElement::z(&a)]);
    assert_eq!(g.order(), 21);
    assert_eq!(g.table().center().len(), 1);
    let ng = compute_ng(&g, DEFAULT_CLOSURE_BOUND).unwrap();
    assert_eq!(ng.members.len(), 7);
    assert_eq!(ng.quotient_order(), 3);
    let lifted = lift_ng(&g, &ng, DEFAULT_CLOSURE_BOUND).unwrap();
    assert_eq!(lifted.elements.len() % 7, 0);
    assert!(lifted.orders.iter().all(|&o| 14 % o == 0));
}

#[test]
fn zeta9_group() {
    let a = alg("cubic-qw-zeta9");
    let z9 = zeta9(&a);
    assert!(z9.pow(9).is_one() && !z9.pow(3).is_one());
    let g = group(&a, &[z9, AlgebraElement::z(&a)]);
    assert_eq!(g.order(), 9);
    let ng = compute_ng(&g, DEFAULT_CLOSURE_BOUND).unwrap();
    assert_eq!(ng.members.len(), 3);
    assert_eq!(ng.quotient_order(), 3);
    let p = paired_group_of(&g).unwrap();
    assert_eq!(p.paired.factors(), &[3, 3]);
    let s = invariant_subfield(&g, DEFAULT_CLOSURE_BOUND).unwrap();
    assert_eq!(s.case, SubfieldCase::AllLifts);
    assert_eq!(s.subfield.degree, 3);
}

#[test]
fn beta_examples() {
    let h = alg("hamilton-q");
    let i = project(&ints(&h, &[0, 1, 0, 0])).unwrap();
    let j = project(&ints(&h, &[0, 0, 1, 0])).unwrap();
    assert_eq!(beta(&i, &j).unwrap().as_rational().cloned(), Some(q(-1)));
    assert!(beta(&i, &i).unwrap().is_one());
    let one_i = project(&ints(&h, &[1, 1, 0, 0])).unwrap();
    assert!(beta(&i, &one_i).unwrap().is_one());
    let x = project(&ints(&h, &[1, 1, 1, 0])).unwrap();
    assert_eq!(beta(&i, &x).unwrap_err(), ProjectiveError::NotCentral);
    // rescaled lifts give the same value; bilinearity on the Klein group
    let g = group(&h, &[ints(&h, &[0, 1, 0, 0]), ints(&h, &[0, 0, 1, 0])]);
    let t = g.table();
    for a in 0..4 {
        for b in 0..4 {
            for c in 0..4 {
                let lhs = beta(g.element(t.mul(a, b)), g.element(c)).unwrap();
                let rhs = beta(g.element(a), g.element(c)).unwrap().mul(&beta(g.element(b), g.element(c)).unwrap());
                assert_eq!(lhs, rhs);
            }
        }
    }
}

#[test]
fn pairing_and_gamma() {
    let h = alg("hamilton-q");
    let g = group(&h, &[ints(&h, &[0, 1, 0, 0]), ints(&h, &[0, 0, 1, 0])]);
    let p = paired_group_of(&g).unwrap();
    assert_eq!(p.paired.factors(), &[2, 2]);
    assert_eq!(p.paired.pairing_matrix()[0][1], qf(1, 2));
    let gm = gamma_of(&g).unwrap();
    assert_eq!(gm.elements.len(), 2);
    assert_eq!(gm.subfield.degree, 2);
    let t = group(&h, &[]);
    let gm = gamma_of(&t).unwrap();
    assert_eq!(gm.elements, vec![0]);
    let c = group(&h, &[ints(&h, &[1, 1, 0, 0])]);
    let gm = gamma_of(&c).unwrap();
    assert_eq!(gm.elements.len(), 4);
    let nonab = group(&h, &[ints(&h, &[1, 1, 1, 1]), ints(&h, &[0, 1, 0, 0])]);
    assert_eq!(nonab.order(), 12);
    assert_eq!(paired_group_of(&nonab).unwrap_err(), ProjectiveError::NotAbelian);
}

#[test]
fn invariant_subfields() {
    let h = alg("hamilton-q");
    let g = group(&h, &[ints(&h, &[0, 1, 0, 0]), ints(&h, &[0, 0, 1, 0])]);
    let s = invariant_subfield(&g, DEFAULT_CLOSURE_BOUND).unwrap();
    assert_eq!(s.case, SubfieldCase::StableIndexTwo);
    assert_eq!(s.prime, Some(2));
    let i = ints(&h, &[0, 1, 0, 0]);
    assert!(s.subfield.contains(&i));
    assert!(!s.subfield.contains(&ints(&h, &[0, 0, 1, 0])));
    assert_eq!(s.acting_trivially.len(), 2);
    let t = group(&h, &[]);
    let s = invariant_subfield(&t, DEFAULT_CLOSURE_BOUND).unwrap();
    assert_eq!(s.subfield.degree, 1);
    let a = alg("cubic-qsqrt-7-zeta7");
    let g = group(&a, &[zeta7(&a)]);
    let s = invariant_subfield(&g, DEFAULT_CLOSURE_BOUND).unwrap();
    assert_eq!(s.subfield.degree, 3);
    assert_eq!(s.acting_trivially.len(), 7);
    let nonp = group(&h, &[ints(&h, &[1, 1, 1, 1]), ints(&h, &[0, 1, 0, 0])]);
    assert_eq!(invariant_subfield(&nonp, 100).unwrap_err(), ProjectiveError::NotPGroup { order: 12 });
}

#[test]
fn galois_checks() {
    let f = &env().fields;
    let l = f.get("Q(cbrt2)").unwrap();
    let t = FieldElement::generator(&l);
    let r = verify_galois(&l, &[t], 100).unwrap();
    assert_eq!((r.order_a, r.order_b, r.subfield_degree), (3, 1, 1));
    assert!(r.divides);
    assert_eq!(r.traces_vanish, Some(true));
    let r = verify_galois(&l, &[], 100).unwrap();
    assert_eq!((r.order_a, r.order_b, r.subfield_degree), (1, 1, 1));
    assert!(r.divides);
    let z = f.get("Q(zeta7)").unwrap();
    let r = verify_galois(&z, &[FieldElement::generator(&z)], 100).unwrap();
    assert_eq!((r.order_a, r.order_b, r.subfield_degree, r.ext_degree), (7, 7, 6, 6));
    assert!(r.divides);
}

#[test]
fn group_spec_files() {
    let text = r#"{"algebra_label": "hamilton-q", "generators": [[[0, 1], [0, 0]], [[0, 0], [1, 0]]]}"#;
    let spec = GroupSpec::from_json(text).unwrap();
    assert_eq!(spec.closure_bound, DEFAULT_CLOSURE_BOUND);
    let g = spec.build(&env().algs).unwrap();
    assert_eq!(g.order(), 4);
    let bad = r#"{"algebra_label": "hamilton-q", "generators": [], "extra": 1}"#;
    assert!(GroupSpec::from_json(bad).is_err());
    let unknown = GroupSpec::from_json(r#"{"algebra_label": "nope", "generators": []}"#).unwrap();
    assert!(matches!(unknown.build(&env().algs), Err(ProjectiveError::Catalog(_))));
}
