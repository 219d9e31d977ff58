use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use num_traits::Zero;
use rand::Rng;

use super::CsaError;
use crate::exact::{linalg, Arith, Field, FieldElement, Q};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DivisionCertificate {
    CertifiedExternal(String),
    Unverified,
}

/// A cyclic algebra of degree n = [K : k].
#[derive(Clone, Debug)]
pub struct CyclicAlgebra {
    label: String,
    base: Arc<Field>,
    splitting: Arc<Field>,
    sigma: usize,
    a: FieldElement,
    a_in_k: Vec<Q>,
    n: usize,
    certificate: DivisionCertificate,
    // sigma_pows[r][j] = σ^r applied to basis vector j of K
    sigma_pows: Vec<Vec<Vec<Q>>>,
}

impl CyclicAlgebra {
    pub fn new(
        label: &str,
        splitting: Arc<Field>,
        sigma: usize,
        a: FieldElement,
        certificate: DivisionCertificate,
    ) -> Result<Self, String> {
        let base = splitting.base().cloned().ok_or("splitting field has no base field")?;
        if a.field().label() != base.label() {
            return Err(format!("parameter a must lie in {}", base.label()));
        }
        if a.is_zero() {
            return Err("parameter a must be nonzero".into());
        }
        if sigma >= splitting.automorphism_count() {
            return Err(format!("sigma index {sigma} out of range"));
        }
        let n = splitting.rel_degree();
        let d = splitting.degree();
        let identity: Vec<Vec<Q>> = (0..d)
            .map(|j| {
                let mut e = splitting.zero_raw();
                e[j] = Q::from_integer(1.into());
                e
            })
            .collect();
        let mut sigma_pows = vec![identity.clone()];
        for r in 1..=n {
            let prev = &sigma_pows[r - 1];
            let next: Vec<Vec<Q>> = prev.iter().map(|row| splitting.apply_aut_raw(sigma, row)).collect();
            if r < n && next == identity {
                return Err(format!("sigma has order {r}, not {n}"));
            }
            if r == n {
                if next != identity {
                    return Err(format!("sigma^{n} is not the identity"));
                }
                break;
            }
            sigma_pows.push(next);
        }
        let a_in_k = FieldElement::embed(&a, &splitting).map_err(|e| e.to_string())?.into_coords();
        Ok(CyclicAlgebra {
            label: label.to_string(),
            base,
            splitting,
            sigma,
            a,
            a_in_k,
            n,
            certificate,
            sigma_pows,
        })
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn base(&self) -> &Arc<Field> {
        &self.base
    }

    pub fn splitting(&self) -> &Arc<Field> {
        &self.splitting
    }

    pub fn sigma_index(&self) -> usize {
        self.sigma
    }

    pub fn parameter(&self) -> &FieldElement {
        &self.a
    }

    pub fn degree(&self) -> usize {
        self.n
    }

    pub fn certificate(&self) -> &DivisionCertificate {
        &self.certificate
    }

    pub fn is_certified(&self) -> bool {
        matches!(self.certificate, DivisionCertificate::CertifiedExternal(_))
    }

    pub(crate) fn set_certificate(&mut self, c: DivisionCertificate) {
        self.certificate = c;
    }

    /// Number of rational coordinates of an element.
    pub fn flat_len(&self) -> usize {
        self.n * self.splitting.degree()
    }

    /// σ^r(v) for raw K coordinates.
    pub(crate) fn sigma_pow_raw(&self, r: usize, v: &[Q]) -> Vec<Q> {
        let r = r % self.n;
        if r == 0 {
            return v.to_vec();
        }
        let mut out = self.splitting.zero_raw();
        for (c, row) in v.iter().zip(&self.sigma_pows[r]) {
            if c.is_zero() {
                continue;
            }
            for (o, x) in out.iter_mut().zip(row) {
                *o += c * x;
            }
        }
        out
    }

    fn mul_raw(&self, x: &[Vec<Q>], y: &[Vec<Q>]) -> Vec<Vec<Q>> {
        let kf = &self.splitting;
        let n = self.n;
        let mut out = vec![kf.zero_raw(); n];
        for (i, xi) in x.iter().enumerate() {
            if is_zero_raw(xi) {
                continue;
            }
            for (j, yj) in y.iter().enumerate() {
                if is_zero_raw(yj) {
                    continue;
                }
                let mut t = kf.mul_raw(xi, &self.sigma_pow_raw(i, yj));
                if i + j >= n {
                    t = kf.mul_raw(&t, &self.a_in_k);
                }
                for (o, v) in out[(i + j) % n].iter_mut().zip(t) {
                    *o += v;
                }
            }
        }
        out
    }
}

fn is_zero_raw(v: &[Q]) -> bool {
    v.iter().all(Zero::is_zero)
}

/// An element Σ c_i z^i of a cyclic algebra.
#[derive(Clone)]
pub struct AlgebraElement {
    alg: Arc<CyclicAlgebra>,
    coords: Vec<Vec<Q>>,
}

impl PartialEq for AlgebraElement {
    fn eq(&self, other: &Self) -> bool {
        self.alg.label == other.alg.label && self.coords == other.coords
    }
}

impl Eq for AlgebraElement {}

impl Hash for AlgebraElement {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.coords.hash(state);
    }
}

impl fmt::Debug for AlgebraElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.flat_coords().iter().map(|c| c.to_string()).collect();
        write!(f, "{}[{}]", self.alg.label, parts.join(","))
    }
}

pub fn algebra_mul(x: &AlgebraElement, y: &AlgebraElement) -> Result<AlgebraElement, CsaError> {
    x.check_same(y)?;
    Ok(x.mul(y))
}

impl AlgebraElement {
    pub fn new(alg: &Arc<CyclicAlgebra>, coords: Vec<FieldElement>) -> Result<Self, CsaError> {
        if coords.len() != alg.n {
            return Err(CsaError::BadLength { expected: alg.n, got: coords.len() });
        }
        let mut raw = Vec::with_capacity(alg.n);
        for c in coords {
            if c.field().label() != alg.splitting.label() {
                return Err(CsaError::Exact(crate::exact::ExactError::FieldMismatch {
                    left: c.field().label().to_string(),
                    right: alg.splitting.label().to_string(),
                }));
            }
            raw.push(c.into_coords());
        }
        Ok(AlgebraElement { alg: alg.clone(), coords: raw })
    }

    /// From flattened rational coordinates, z-major.
    pub fn from_flat(alg: &Arc<CyclicAlgebra>, flat: &[Q]) -> Result<Self, CsaError> {
        if flat.len() != alg.flat_len() {
            return Err(CsaError::BadLength { expected: alg.flat_len(), got: flat.len() });
        }
        let d = alg.splitting.degree();
        Ok(AlgebraElement { alg: alg.clone(), coords: flat.chunks(d).map(|c| c.to_vec()).collect() })
    }

    pub fn from_ints(alg: &Arc<CyclicAlgebra>, flat: &[i64]) -> Result<Self, CsaError> {
        let v: Vec<Q> = flat.iter().map(|&c| Q::from_integer(c.into())).collect();
        Self::from_flat(alg, &v)
    }

    pub fn zero(alg: &Arc<CyclicAlgebra>) -> Self {
        AlgebraElement { alg: alg.clone(), coords: vec![alg.splitting.zero_raw(); alg.n] }
    }

    pub fn one(alg: &Arc<CyclicAlgebra>) -> Self {
        let mut x = Self::zero(alg);
        x.coords[0] = alg.splitting.one_raw();
        x
    }

    /// c·z^i for c in K.
    pub fn monomial(alg: &Arc<CyclicAlgebra>, c: &FieldElement, i: usize) -> Result<Self, CsaError> {
        let c = FieldElement::embed(c, &alg.splitting)?;
        let mut x = Self::zero(alg);
        x.coords[i % alg.n] = c.into_coords();
        Ok(x)
    }

    pub fn z(alg: &Arc<CyclicAlgebra>) -> Self {
        let mut x = Self::zero(alg);
        x.coords[1 % alg.n] = alg.splitting.one_raw();
        x
    }

    /// Uniformly random coordinates with numerators in [-9, 9], denominator 1, nonzero.
    pub fn random<R: Rng>(alg: &Arc<CyclicAlgebra>, rng: &mut R) -> Self {
        loop {
            let flat: Vec<i64> = (0..alg.flat_len()).map(|_| rng.gen_range(-9..=9)).collect();
            if flat.iter().any(|&c| c != 0) {
                return Self::from_ints(alg, &flat).expect("length matches");
            }
        }
    }

    pub fn algebra(&self) -> &Arc<CyclicAlgebra> {
        &self.alg
    }

    /// The K-coordinate of z^i.
    pub fn coord(&self, i: usize) -> FieldElement {
        FieldElement::new(self.alg.splitting.clone(), self.coords[i].clone()).expect("stored length is valid")
    }

    pub fn coords(&self) -> Vec<FieldElement> {
        (0..self.alg.n).map(|i| self.coord(i)).collect()
    }

    pub fn raw(&self) -> &[Vec<Q>] {
        &self.coords
    }

    pub fn flat_coords(&self) -> Vec<Q> {
        self.coords.iter().flatten().cloned().collect()
    }

    /// Coordinates over k in canonical order: z-power major, K/k basis minor.
    pub fn k_coords(&self) -> Vec<Vec<Q>> {
        let b = self.alg.base.degree();
        self.coords.iter().flat_map(|c| c.chunks(b).map(|x| x.to_vec()).collect::<Vec<_>>()).collect()
    }

    pub fn from_k_coords(alg: &Arc<CyclicAlgebra>, kc: &[Vec<Q>]) -> Self {
        let flat: Vec<Q> = kc.iter().flatten().cloned().collect();
        Self::from_flat(alg, &flat).expect("k-coordinate count matches")
    }

    pub fn check_same(&self, o: &Self) -> Result<(), CsaError> {
        if self.alg.label != o.alg.label {
            return Err(CsaError::AlgebraMismatch { left: self.alg.label.clone(), right: o.alg.label.clone() });
        }
        Ok(())
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|c| is_zero_raw(c))
    }

    pub fn is_one(&self) -> bool {
        *self == Self::one(&self.alg)
    }

    /// The scalar c in k if this element equals c·1.
    pub fn as_scalar(&self) -> Option<FieldElement> {
        if self.coords[1..].iter().any(|c| !is_zero_raw(c)) {
            return None;
        }
        self.coord(0).restrict(&self.alg.base).ok()
    }

    pub fn add(&self, o: &Self) -> Self {
        let coords = self
            .coords
            .iter()
            .zip(&o.coords)
            .map(|(x, y)| x.iter().zip(y).map(|(a, b)| a + b).collect())
            .collect();
        AlgebraElement { alg: self.alg.clone(), coords }
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> Self {
        let coords = self.coords.iter().map(|x| x.iter().map(|a| -a).collect()).collect();
        AlgebraElement { alg: self.alg.clone(), coords }
    }

    /// Product; panics if the algebras differ (see [`algebra_mul`]).
    pub fn mul(&self, o: &Self) -> Self {
        assert_eq!(self.alg.label, o.alg.label, "algebra mismatch");
        AlgebraElement { alg: self.alg.clone(), coords: self.alg.mul_raw(&self.coords, &o.coords) }
    }

    pub fn pow(&self, mut e: u64) -> Self {
        let mut r = Self::one(&self.alg);
        let mut b = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                r = r.mul(&b);
            }
            e >>= 1;
            if e > 0 {
                b = b.mul(&b);
            }
        }
        r
    }

    /// Multiply by a rational.
    pub fn scale_q(&self, c: &Q) -> Self {
        let coords = self.coords.iter().map(|x| x.iter().map(|a| a * c).collect()).collect();
        AlgebraElement { alg: self.alg.clone(), coords }
    }

    /// Multiply by a scalar of k given as raw coordinates.
    pub fn scale_raw(&self, c: &[Q]) -> Self {
        let kf = &self.alg.splitting;
        let mut big = kf.zero_raw();
        for (b, v) in big.iter_mut().zip(c) {
            *b = v.clone();
        }
        let coords = self.coords.iter().map(|x| kf.mul_raw(x, &big)).collect();
        AlgebraElement { alg: self.alg.clone(), coords }
    }

    /// Multiply by a scalar of k.
    pub fn scale(&self, c: &FieldElement) -> Result<Self, CsaError> {
        let c = FieldElement::embed(c, &self.alg.base)?;
        Ok(self.scale_raw(c.coords()))
    }

    /// The n×n matrix over K of the standard splitting representation.
    pub fn embed_matrix(&self) -> Vec<Vec<FieldElement>> {
        let kf = &self.alg.splitting;
        self.embed_matrix_raw()
            .into_iter()
            .map(|row| row.into_iter().map(|c| FieldElement::new(kf.clone(), c).expect("length")).collect())
            .collect()
    }

    pub(crate) fn embed_matrix_raw(&self) -> Vec<Vec<Vec<Q>>> {
        let alg = &*self.alg;
        let kf = &alg.splitting;
        let n = alg.n;
        let mut m = vec![vec![kf.zero_raw(); n]; n];
        for (i, c) in self.coords.iter().enumerate() {
            if is_zero_raw(c) {
                continue;
            }
            for (r, row) in m.iter_mut().enumerate() {
                let mut v = alg.sigma_pow_raw(r, c);
                if r + i >= n {
                    v = kf.mul_raw(&v, &alg.a_in_k);
                }
                row[(r + i) % n] = v;
            }
        }
        m
    }

    /// Determinant of the splitting representation, as an element of k.
    pub fn reduced_norm(&self) -> Result<FieldElement, CsaError> {
        let alg = &*self.alg;
        let det = linalg::det(&*alg.splitting, &self.embed_matrix_raw());
        let b = alg.base.degree();
        if det[b..].iter().any(|c| !c.is_zero()) {
            return Err(CsaError::ResultNotInBaseField);
        }
        Ok(FieldElement::new(alg.base.clone(), det[..b].to_vec())?)
    }

    /// Inverse via the n²-dimensional k-linear system of left multiplication.
    pub fn inverse(&self) -> Result<Self, CsaError> {
        if self.is_zero() {
            return Err(CsaError::NotInvertible);
        }
        let alg = &self.alg;
        let kf = &*alg.base;
        let b = kf.degree();
        let dim = alg.n * alg.splitting.rel_degree();
        let cols: Vec<Vec<Vec<Q>>> = (0..dim)
            .map(|j| {
                let mut e = vec![vec![Q::zero(); b]; dim];
                e[j] = kf.one();
                self.mul(&Self::from_k_coords(alg, &e)).k_coords()
            })
            .collect();
        let m: Vec<Vec<Vec<Q>>> = (0..dim).map(|i| cols.iter().map(|c| c[i].clone()).collect()).collect();
        let rhs = Self::one(alg).k_coords();
        let sol = linalg::solve(kf, &m, &rhs).ok_or(CsaError::NotInvertible)?;
        let inv = Self::from_k_coords(alg, &sol);
        if !self.mul(&inv).is_one() {
            return Err(CsaError::NotInvertible);
        }
        Ok(inv)
    }

    /// x y x⁻¹ y⁻¹.
    pub fn commutator(&self, y: &Self) -> Result<Self, CsaError> {
        Ok(self.mul(y).mul(&self.inverse()?).mul(&y.inverse()?))
    }
}
