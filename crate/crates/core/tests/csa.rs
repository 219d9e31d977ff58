use std::sync::{Arc, OnceLock};

use divalg::csa::{algebra_mul, generated_subfield, AlgebraCatalog, AlgebraElement, AlgebraSpec, CsaError, CyclicAlgebra, DivisionSpec};
use divalg::exact::{linalg, q, qf, FieldCatalog, FieldElement, Q};
use divalg::rational::RatValue;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

struct Catalogs {
    fields: FieldCatalog,
    algebras: AlgebraCatalog,
}

fn cats() -> &'static Catalogs {
    static C: OnceLock<Catalogs> = OnceLock::new();
    C.get_or_init(|| {
        let fields = FieldCatalog::builtin();
        let algebras = AlgebraCatalog::builtin(&fields);
        Catalogs { fields, algebras }
    })
}

fn alg(label: &str) -> Arc<CyclicAlgebra> {
    cats().algebras.get(label).unwrap()
}

/// w + x i + y j + z k in the cyclic presentation (w + x i) + (y + z i) j.
fn quat(a: &Arc<CyclicAlgebra>, w: Q, x: Q, y: Q, z: Q) -> AlgebraElement {
    let d = a.base().degree();
    let mut flat = vec![q(0); a.flat_len()];
    flat[0] = w;
    flat[d] = x;
    flat[2 * d] = y;
    flat[3 * d] = z;
    AlgebraElement::from_flat(a, &flat).unwrap()
}

#[test]
fn quaternion_relations() {
    let h = alg("hamilton-q");
    let i = quat(&h, q(0), q(1), q(0), q(0));
    let j = quat(&h, q(0), q(0), q(1), q(0));
    let k = quat(&h, q(0), q(0), q(0), q(1));
    assert_eq!(i.mul(&j), k);
    assert_eq!(j.mul(&i), k.neg());
    assert_eq!(i.mul(&i), AlgebraElement::one(&h).neg());
    assert_eq!(k.mul(&k), AlgebraElement::one(&h).neg());
}

#[test]
fn defining_relations() {
    for a in cats().algebras.algebras() {
        let z = AlgebraElement::z(a);
        let c = FieldElement::generator(a.splitting());
        let lhs = z.mul(&AlgebraElement::monomial(a, &c, 0).unwrap());
        let sc = c.apply_automorphism(a.sigma_index());
        assert_eq!(lhs, AlgebraElement::monomial(a, &sc, 1).unwrap(), "{}", a.label());
        let zn = z.pow(a.degree() as u64);
        assert_eq!(zn.as_scalar().unwrap(), *a.parameter());
    }
}

#[test]
fn algebra_mismatch() {
    let x = AlgebraElement::one(&alg("hamilton-q"));
    let y = AlgebraElement::one(&alg("cubic-q-zeta7plus"));
    assert!(matches!(algebra_mul(&x, &y), Err(CsaError::AlgebraMismatch { .. })));
}

#[test]
fn embedding_examples() {
    for a in cats().algebras.algebras() {
        let m = AlgebraElement::one(a).embed_matrix();
        for (r, row) in m.iter().enumerate() {
            for (c, v) in row.iter().enumerate() {
                assert_eq!(v.is_one(), r == c);
                assert_eq!(v.is_zero(), r != c);
            }
        }
        let c = FieldElement::generator(a.splitting());
        let m = AlgebraElement::monomial(a, &c, 0).unwrap().embed_matrix();
        let mut sc = c.clone();
        for (r, row) in m.iter().enumerate() {
            assert_eq!(row[r], sc);
            sc = sc.apply_automorphism(a.sigma_index());
        }
    }
}

fn mat_mul(x: &[Vec<FieldElement>], y: &[Vec<FieldElement>]) -> Vec<Vec<FieldElement>> {
    let n = x.len();
    (0..n)
        .map(|r| {
            (0..n)
                .map(|c| (0..n).fold(FieldElement::zero(x[0][0].field()), |acc, t| acc.add(&x[r][t].mul(&y[t][c]))))
                .collect()
        })
        .collect()
}

#[test]
fn embedding_is_multiplicative() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for a in cats().algebras.algebras() {
        for _ in 0..100 {
            let x = AlgebraElement::random(a, &mut rng);
            let y = AlgebraElement::random(a, &mut rng);
            assert_eq!(x.mul(&y).embed_matrix(), mat_mul(&x.embed_matrix(), &y.embed_matrix()));
        }
    }
}

#[test]
fn quaternion_norm_is_sum_of_squares() {
    let h = alg("hamilton-q");
    assert_eq!(quat(&h, q(1), q(1), q(1), q(1)).reduced_norm().unwrap().coords(), &[q(4)]);
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..100 {
        let x = AlgebraElement::random(&h, &mut rng);
        let s: Q = x.flat_coords().iter().map(|c| c * c).sum();
        assert_eq!(x.reduced_norm().unwrap().coords(), &[s]);
    }
}

/// det of left multiplication over k is Nrd^n.
fn left_mult_det(x: &AlgebraElement) -> FieldElement {
    let a = x.algebra();
    let k = a.base();
    let dim = a.degree() * a.degree();
    let cols: Vec<Vec<Vec<Q>>> = (0..dim)
        .map(|j| {
            let mut e = vec![vec![q(0); k.degree()]; dim];
            e[j][0] = q(1);
            x.mul(&AlgebraElement::from_k_coords(a, &e)).k_coords()
        })
        .collect();
    let m: Vec<Vec<Vec<Q>>> = (0..dim).map(|i| cols.iter().map(|c| c[i].clone()).collect()).collect();
    FieldElement::new(k.clone(), linalg::det(&**k, &m)).unwrap()
}

#[test]
fn reduced_norm_matches_regular_representation() {
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    for a in cats().algebras.algebras() {
        for _ in 0..5 {
            let x = AlgebraElement::random(a, &mut rng);
            let nrd = x.reduced_norm().unwrap();
            assert_eq!(nrd.pow(a.degree() as u64), left_mult_det(&x), "{}", a.label());
        }
    }
}

#[test]
fn reduced_norm_laws() {
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    for a in cats().algebras.algebras() {
        let n = a.degree() as u64;
        let z = AlgebraElement::z(a).reduced_norm().unwrap();
        let sign = if n % 2 == 1 { q(1) } else { q(-1) };
        assert_eq!(z, a.parameter().scale(&sign));
        assert!(AlgebraElement::zero(a).reduced_norm().unwrap().is_zero());
        for _ in 0..100 {
            let x = AlgebraElement::random(a, &mut rng);
            let y = AlgebraElement::random(a, &mut rng);
            let (nx, ny) = (x.reduced_norm().unwrap(), y.reduced_norm().unwrap());
            assert_eq!(x.mul(&y).reduced_norm().unwrap(), nx.mul(&ny));
            assert!(!nx.is_zero());
            let c = FieldElement::from_ints(a.base().clone(), &vec![3; a.base().degree()]).unwrap();
            assert_eq!(x.scale(&c).unwrap().reduced_norm().unwrap(), c.pow(n).mul(&nx));
        }
    }
}

#[test]
fn inverses() {
    let h = alg("hamilton-q");
    let one = AlgebraElement::one(&h);
    assert_eq!(one.inverse().unwrap(), one);
    let i = quat(&h, q(0), q(1), q(0), q(0));
    assert_eq!(i.inverse().unwrap(), i.neg());
    let x = quat(&h, q(1), q(1), q(1), q(1));
    assert_eq!(x.inverse().unwrap(), quat(&h, qf(1, 4), qf(-1, 4), qf(-1, 4), qf(-1, 4)));
    assert_eq!(AlgebraElement::zero(&h).inverse(), Err(CsaError::NotInvertible));
    let mut rng = ChaCha8Rng::seed_from_u64(19);
    for a in cats().algebras.algebras() {
        for _ in 0..10 {
            let x = AlgebraElement::random(a, &mut rng);
            let inv = x.inverse().unwrap();
            assert!(x.mul(&inv).is_one() && inv.mul(&x).is_one());
            assert_eq!(inv.inverse().unwrap(), x);
        }
    }
}

#[test]
fn subfields() {
    let h = alg("hamilton-q");
    let one = AlgebraElement::one(&h);
    assert_eq!(generated_subfield(std::slice::from_ref(&one)).unwrap().degree, 1);
    let i = quat(&h, q(0), q(1), q(0), q(0));
    let j = quat(&h, q(0), q(0), q(1), q(0));
    let f = generated_subfield(std::slice::from_ref(&i)).unwrap();
    assert_eq!(f.degree, 2);
    assert_eq!(f.basis, vec![one, i.clone()]);
    assert!(f.contains(&i.scale_q(&q(5))) && !f.contains(&j));
    assert_eq!(generated_subfield(&[i, j]).unwrap_err(), CsaError::NonCommutative);

    let mut rng = ChaCha8Rng::seed_from_u64(23);
    for a in cats().algebras.algebras() {
        for _ in 0..5 {
            let x = AlgebraElement::random(a, &mut rng);
            let f = generated_subfield(&[x]).unwrap();
            assert_eq!(a.degree() % f.degree, 0);
        }
        let z = generated_subfield(&[AlgebraElement::z(a)]).unwrap();
        assert_eq!(z.degree, a.degree());
    }
}

#[test]
fn builtin_algebras_stay_certified() {
    for a in cats().algebras.algebras() {
        assert!(a.is_certified(), "{}", a.label());
    }
}

fn spec(label: &str, sigma: usize, a: i64, certified: bool) -> AlgebraSpec {
    AlgebraSpec {
        label: label.into(),
        base_field: "Q".into(),
        splitting_field: "Q(i)".into(),
        sigma_index: sigma,
        a: vec![RatValue::Int(a)],
        degree: 2,
        division: DivisionSpec { certified, citation: String::new() },
    }
}

#[test]
fn catalog_validation() {
    let f = &cats().fields;
    assert!(AlgebraCatalog::from_specs(&[spec("x", 0, -1, true)], f, 10).is_err());
    assert!(AlgebraCatalog::from_specs(&[spec("x", 1, 0, true)], f, 10).is_err());
    let mut bad = spec("x", 1, -1, true);
    bad.degree = 3;
    assert!(AlgebraCatalog::from_specs(&[bad], f, 10).is_err());
    // (−1, 1)_Q ≅ M_2(Q): the sampling check downgrades the certificate
    // only if it happens to hit a zero divisor; 1 + j always is one.
    let split = AlgebraCatalog::from_specs(&[spec("split", 1, 1, true)], f, 10).unwrap();
    let s = split.get("split").unwrap();
    let one_plus_j = AlgebraElement::from_ints(&s, &[1, 0, 1, 0]).unwrap();
    assert!(one_plus_j.reduced_norm().unwrap().is_zero());
    assert_eq!(one_plus_j.inverse(), Err(CsaError::NotInvertible));
    assert!(!AlgebraCatalog::from_specs(&[spec("u", 1, -1, false)], f, 10).unwrap().get("u").unwrap().is_certified());
}
