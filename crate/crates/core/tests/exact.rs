use std::sync::Arc;

use divalg::exact::{
    field_arith, is_root_of_unity, minimal_polynomial, power_test, q, qf, trace, ExactError, Field, FieldCatalog,
    FieldElement, FieldOp, Q,
};
use proptest::prelude::*;

fn cat() -> &'static FieldCatalog {
    static CAT: std::sync::OnceLock<FieldCatalog> = std::sync::OnceLock::new();
    CAT.get_or_init(FieldCatalog::builtin)
}

fn field(label: &str) -> Arc<Field> {
    cat().get(label).unwrap()
}

fn el(label: &str, c: &[i64]) -> FieldElement {
    FieldElement::from_ints(field(label), c).unwrap()
}

#[test]
fn arithmetic_examples() {
    let w = el("Q(w)", &[0, 1]);
    let w2 = w.mul(&w);
    assert!(field_arith(FieldOp::Mul, &w, &w2).unwrap().is_one());

    let f = field("Q(sqrt5)");
    let phi = FieldElement::new(f.clone(), vec![qf(1, 2), qf(1, 2)]).unwrap();
    let phi_inv = FieldElement::new(f, vec![qf(-1, 2), qf(1, 2)]).unwrap();
    assert!(phi.mul(&phi_inv).is_one());

    let qq = field("Q");
    let a = FieldElement::rational(&qq, qf(2, 3));
    let b = FieldElement::rational(&qq, qf(1, 6));
    assert_eq!(field_arith(FieldOp::Add, &a, &b).unwrap().coords(), &[qf(5, 6)]);
}

#[test]
fn arithmetic_errors() {
    let x = el("Q(i)", &[1, 1]);
    let y = el("Q(w)", &[1, 1]);
    assert!(matches!(field_arith(FieldOp::Add, &x, &y), Err(ExactError::FieldMismatch { .. })));
    let z = el("Q(i)", &[0, 0]);
    assert_eq!(field_arith(FieldOp::Div, &x, &z), Err(ExactError::DivisionByZero));
}

#[test]
fn minimal_polynomials() {
    let qq = field("Q");
    let w = el("Q(w)", &[0, 1]);
    let p = minimal_polynomial(&w, &qq).unwrap();
    let coeffs: Vec<Q> = p.iter().map(|c| c.coords()[0].clone()).collect();
    assert_eq!(coeffs, vec![q(1), q(1), q(1)]);

    let one = FieldElement::one(&field("Q(sqrt-7,zeta7)"));
    let p = minimal_polynomial(&one, &qq).unwrap();
    assert_eq!(p.len(), 2);
    assert_eq!(p[0].coords(), &[q(-1)]);

    // ζ + ζ^{-1} in the cyclotomic field: power sums of the primitive 7th
    // roots give e1 = -1, e2 = -2, e3 = 1 for the three real conjugates.
    let z7 = field("Q(zeta7)");
    let zeta = el("Q(zeta7)", &[0, 1, 0, 0, 0, 0]);
    let x = zeta.add(&zeta.inv().unwrap());
    let p = minimal_polynomial(&x, &qq).unwrap();
    let coeffs: Vec<Q> = p.iter().map(|c| c.coords()[0].clone()).collect();
    assert_eq!(coeffs, vec![q(-1), q(-2), q(1), q(1)]);
    assert!(divalg::exact::eval_poly(&p, &x).unwrap().is_zero());
    assert_eq!(z7.degree() % (p.len() - 1), 0);
}

#[test]
fn relative_minimal_polynomial() {
    // over ℚ(ω), ∛2 has minimal polynomial t^3 - 2
    let k = field("Q(w)");
    let b = FieldElement::generator(&field("Q(w,cbrt2)"));
    let p = minimal_polynomial(&b, &k).unwrap();
    assert_eq!(p.len(), 4);
    assert_eq!(p[0], FieldElement::rational(&k, q(-2)));
    assert!(p[1].is_zero() && p[2].is_zero() && p[3].is_one());
}

#[test]
fn traces() {
    let qq = field("Q");
    let w = el("Q(w)", &[0, 1]);
    assert_eq!(trace(&w, &qq).unwrap().coords(), &[q(-1)]);

    let l = field("Q(w,cbrt2)");
    let k = field("Q(w)");
    assert_eq!(trace(&FieldElement::one(&l), &k).unwrap(), FieldElement::rational(&k, q(3)));

    // companion matrix of t^3 - 2: trace is minus the t^2 coefficient
    let companion = [[0, 0, 2], [1, 0, 0], [0, 1, 0]];
    let expected: i64 = (0..3).map(|i| companion[i][i]).sum();
    let t = FieldElement::generator(&field("Q(cbrt2)"));
    assert_eq!(trace(&t, &qq).unwrap().coords(), &[q(expected)]);
}

#[test]
fn roots_of_unity() {
    let qq = field("Q");
    assert_eq!(is_root_of_unity(&FieldElement::rational(&qq, q(-1))).unwrap(), Some(2));
    assert_eq!(is_root_of_unity(&el("Q(w)", &[0, 1])).unwrap(), Some(3));
    assert_eq!(is_root_of_unity(&FieldElement::rational(&qq, q(2))).unwrap(), None);
    assert_eq!(is_root_of_unity(&FieldElement::zero(&qq)), Err(ExactError::ZeroInput));
}

#[test]
fn primitive_roots_found_at_load() {
    for f in cat().fields() {
        let z = FieldElement::primitive_root_of_unity(f);
        assert_eq!(is_root_of_unity(&z).unwrap(), Some(f.torsion_order()), "{}", f.label());
    }
}

#[test]
fn power_test_examples() {
    let qq = field("Q");
    let r = |v: Q| FieldElement::rational(&qq, v);
    assert_eq!(power_test(&r(q(8)), 3).unwrap(), Some(r(q(2))));
    let c = power_test(&r(q(-4)), 2).unwrap().unwrap();
    assert_eq!(c.coords()[0].clone() * c.coords()[0].clone(), q(4));
    assert_eq!(power_test(&r(q(2)), 2).unwrap(), None);
    assert_eq!(power_test(&r(q(-4)), 4).unwrap(), None);
    assert_eq!(power_test(&r(qf(27, 8)), 3).unwrap(), Some(r(qf(3, 2))));
}

#[test]
fn power_test_gaussian_eisenstein() {
    // (2 + i)^3 = 2 + 11i; times i still a cube up to a unit
    let a = el("Q(i)", &[2, 11]);
    assert!(power_test(&a, 3).unwrap().is_some());
    assert!(power_test(&a.mul(&el("Q(i)", &[0, 1])), 3).unwrap().is_some());
    // 2 = -i(1+i)^2 is a square up to units, but not a cube
    assert!(power_test(&el("Q(i)", &[2, 0]), 2).unwrap().is_some());
    assert!(power_test(&el("Q(i)", &[2, 0]), 3).unwrap().is_none());
    // -3 = (1 + 2ω)^2 in ℤ[ω]; 3 itself is a unit times a square
    assert!(power_test(&el("Q(w)", &[3, 0]), 2).unwrap().is_some());
    assert!(power_test(&el("Q(w)", &[7, 0]), 3).unwrap().is_none());
    assert!(power_test(&el("Q(w)", &[2, 0]), 3).unwrap().is_none());
    // 8/27 is a cube
    let k = field("Q(w)");
    let c = power_test(&FieldElement::rational(&k, qf(8, 27)), 3).unwrap().unwrap();
    assert!(is_root_of_unity(&FieldElement::rational(&k, qf(8, 27)).div(&c.pow(3)).unwrap()).unwrap().is_some());
}

#[test]
fn power_test_search_fields() {
    // φ^2 = φ + 1 in ℚ(√5)
    let f = field("Q(sqrt5)");
    let phi = FieldElement::new(f.clone(), vec![qf(1, 2), qf(1, 2)]).unwrap();
    let a = phi.pow(2).scale(&q(-1));
    let c = power_test(&a, 2).unwrap().unwrap();
    assert!(is_root_of_unity(&a.div(&c.pow(2)).unwrap()).unwrap().is_some());
    assert!(c == phi || c == phi.neg());
    // 2 is not a cube in ℚ(√-7): norm 4 is not a rational cube
    assert_eq!(power_test(&el("Q(sqrt-7)", &[2, 0]), 3).unwrap(), None);
    // a non-obvious cube in ℚ(√-7)
    let x = el("Q(sqrt-7)", &[3, -2]);
    let c = power_test(&x.pow(3), 3).unwrap().unwrap();
    assert!(is_root_of_unity(&x.div(&c).unwrap()).unwrap().is_some());
}

fn small_element(f: &Arc<Field>) -> impl Strategy<Value = FieldElement> {
    let f = f.clone();
    prop::collection::vec(-9i64..=9, f.degree())
        .prop_filter("nonzero", |v| v.iter().any(|&c| c != 0))
        .prop_map(move |v| FieldElement::from_ints(f.clone(), &v).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn inverse_round_trip(x in small_element(&field("Q(sqrt-7,zeta7)"))) {
        let one = FieldElement::one(x.field());
        let inv = field_arith(FieldOp::Div, &one, &x).unwrap();
        prop_assert!(field_arith(FieldOp::Mul, &x, &inv).unwrap().is_one());
    }

    #[test]
    fn trace_is_transitive(x in small_element(&field("Q(sqrt5,i)"))) {
        let qq = field("Q");
        let k = field("Q(sqrt5)");
        let chained = trace(&trace(&x, &k).unwrap(), &qq).unwrap();
        prop_assert_eq!(chained.coords()[0].clone(), x.absolute_trace());
        prop_assert_eq!(trace(&x, &qq).unwrap(), chained);
    }

    #[test]
    fn trace_is_linear(x in small_element(&field("Q(w,cbrt2)")), y in small_element(&field("Q(w,cbrt2)")), c in -9i64..=9, d in -9i64..=9) {
        let k = field("Q(w)");
        let ck = FieldElement::from_ints(k.clone(), &[c, d]).unwrap();
        let cl = FieldElement::embed(&ck, x.field()).unwrap();
        let lhs = trace(&x.add(&cl.mul(&y)), &k).unwrap();
        let rhs = trace(&x, &k).unwrap().add(&ck.mul(&trace(&y, &k).unwrap()));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn minimal_polynomial_vanishes(x in small_element(&field("Q(w,zeta9)"))) {
        for over in [field("Q"), field("Q(w)")] {
            let p = minimal_polynomial(&x, &over).unwrap();
            prop_assert!(divalg::exact::eval_poly(&p, &x).unwrap().is_zero());
            prop_assert_eq!((x.field().degree() / over.degree()) % (p.len() - 1), 0);
        }
    }

    #[test]
    fn root_of_unity_iff_torsion_power(e in 0u64..40, x in small_element(&field("Q(w)"))) {
        let z = FieldElement::primitive_root_of_unity(&field("Q(sqrt-7,zeta7)")).pow(e);
        prop_assert_eq!(is_root_of_unity(&z).unwrap().is_some(), z.pow(14).is_one());
        let w = x.field().torsion_order();
        prop_assert_eq!(is_root_of_unity(&x).unwrap().is_some(), x.pow(w).is_one());
    }

    #[test]
    fn power_test_sound(x in small_element(&field("Q(i)")), alpha in 1u64..5, e in 0u64..4) {
        let unit = FieldElement::primitive_root_of_unity(x.field()).pow(e);
        let a = x.pow(alpha).mul(&unit);
        let c = power_test(&a, alpha).unwrap();
        prop_assert!(c.is_some());
        let omega = a.div(&c.unwrap().pow(alpha)).unwrap();
        prop_assert!(is_root_of_unity(&omega).unwrap().is_some());
    }

    #[test]
    fn power_test_sound_eisenstein(x in small_element(&field("Q(w)")), y in small_element(&field("Q(w)")), alpha in 2u64..4) {
        let a = x.pow(alpha).div(&y).unwrap();
        if let Some(c) = power_test(&a, alpha).unwrap() {
            let omega = a.div(&c.pow(alpha)).unwrap();
            prop_assert!(is_root_of_unity(&omega).unwrap().is_some());
        }
    }
}
