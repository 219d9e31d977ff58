use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::arith::{common_denominator, q, tower_mul, Arith, Integers, Rationals, Q};
use super::linalg;
use super::ExactError;

/// Which exact power test applies to a field.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PowerTestKind {
    Rational,
    Gaussian,
    Eisenstein,
    Search,
}

/// A number field given as a tower of monic integer polynomials.
#[derive(Debug)]
pub struct Field {
    pub(crate) label: String,
    pub(crate) base: Option<Arc<Field>>,
    pub(crate) poly: Vec<i64>,
    pub(crate) degree: usize,
    pub(crate) levels: Vec<Vec<i64>>,
    pub(crate) automorphisms: Vec<Vec<Q>>,
    pub(crate) aut_maps: Vec<Vec<Vec<Q>>>,
    pub(crate) torsion_order: u64,
    pub(crate) root_of_unity: Vec<Q>,
    pub(crate) kind: PowerTestKind,
}

impl Field {
    /// The rational numbers as a degree-1 field.
    pub fn rationals(label: &str) -> Field {
        Field {
            label: label.to_string(),
            base: None,
            poly: vec![0, 1],
            degree: 1,
            levels: Vec::new(),
            automorphisms: vec![vec![q(0)]],
            aut_maps: vec![vec![vec![q(1)]]],
            torsion_order: 2,
            root_of_unity: vec![q(-1)],
            kind: PowerTestKind::Rational,
        }
    }

    /// An unvalidated extension; `crate::exact::catalog` checks it.
    pub(crate) fn extension(
        label: &str,
        base: Arc<Field>,
        poly: Vec<i64>,
        automorphisms: Vec<Vec<Q>>,
        torsion_order: u64,
    ) -> Field {
        let rel = poly.len() - 1;
        let degree = base.degree * rel;
        let mut levels = base.levels.clone();
        levels.push(poly.clone());
        let kind = if base.degree == 1 && poly == [1, 0, 1] {
            PowerTestKind::Gaussian
        } else if base.degree == 1 && poly == [1, 1, 1] {
            PowerTestKind::Eisenstein
        } else {
            PowerTestKind::Search
        };
        let mut f = Field {
            label: label.to_string(),
            base: Some(base),
            poly,
            degree,
            levels,
            automorphisms,
            aut_maps: Vec::new(),
            torsion_order,
            root_of_unity: Vec::new(),
            kind,
        };
        f.aut_maps = f.automorphisms.iter().map(|img| f.aut_matrix(img)).collect();
        f
    }

    fn aut_matrix(&self, image: &[Q]) -> Vec<Vec<Q>> {
        let block = self.base_degree();
        let rel = self.rel_degree();
        let mut powers = vec![self.one_raw()];
        for _ in 1..rel {
            let last = powers.last().unwrap();
            powers.push(self.mul_raw(last, image));
        }
        let mut rows = Vec::with_capacity(self.degree);
        for pw in &powers {
            for i in 0..block {
                let mut e = vec![q(0); self.degree];
                e[i] = q(1);
                rows.push(self.mul_raw(&e, pw));
            }
        }
        rows
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn base(&self) -> Option<&Arc<Field>> {
        self.base.as_ref()
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn rel_degree(&self) -> usize {
        self.poly.len() - 1
    }

    pub fn base_degree(&self) -> usize {
        self.base.as_ref().map_or(1, |b| b.degree)
    }

    pub fn defining_polynomial(&self) -> &[i64] {
        &self.poly
    }

    pub fn torsion_order(&self) -> u64 {
        self.torsion_order
    }

    pub fn kind(&self) -> PowerTestKind {
        self.kind
    }

    pub fn automorphism_count(&self) -> usize {
        self.automorphisms.len()
    }

    pub fn automorphism_images(&self) -> &[Vec<Q>] {
        &self.automorphisms
    }

    pub fn is_rational(&self) -> bool {
        self.degree == 1
    }

    /// Whether `other` occurs in this field's base chain (or is this field).
    pub fn has_subfield(&self, other: &Field) -> bool {
        let mut cur = Some(self);
        while let Some(f) = cur {
            if f.label == other.label {
                return true;
            }
            cur = f.base.as_deref();
        }
        other.degree == 1 && self.chain_bottom_is_rational()
    }

    fn chain_bottom_is_rational(&self) -> bool {
        let mut cur = self;
        while let Some(b) = cur.base.as_deref() {
            cur = b;
        }
        cur.degree == 1
    }

    // raw coordinate arithmetic

    pub(crate) fn zero_raw(&self) -> Vec<Q> {
        vec![Q::zero(); self.degree]
    }

    pub(crate) fn one_raw(&self) -> Vec<Q> {
        let mut v = self.zero_raw();
        v[0] = Q::one();
        v
    }

    pub(crate) fn mul_raw(&self, a: &[Q], b: &[Q]) -> Vec<Q> {
        if self.degree == 1 {
            return vec![&a[0] * &b[0]];
        }
        let (an, ad) = common_denominator(a);
        let (bn, bd) = common_denominator(b);
        let den = ad * bd;
        tower_mul(&Integers, &self.levels, &an, &bn).into_iter().map(|x| Q::new(x, den.clone())).collect()
    }

    pub(crate) fn pow_raw(&self, a: &[Q], mut e: u64) -> Vec<Q> {
        let mut r = self.one_raw();
        let mut b = a.to_vec();
        while e > 0 {
            if e & 1 == 1 {
                r = self.mul_raw(&r, &b);
            }
            e >>= 1;
            if e > 0 {
                b = self.mul_raw(&b, &b);
            }
        }
        r
    }

    /// Matrix whose column j holds the coordinates of x·b_j.
    pub(crate) fn mult_matrix(&self, x: &[Q]) -> Vec<Vec<Q>> {
        let cols: Vec<Vec<Q>> = (0..self.degree)
            .map(|j| {
                let mut e = self.zero_raw();
                e[j] = Q::one();
                self.mul_raw(x, &e)
            })
            .collect();
        (0..self.degree).map(|i| cols.iter().map(|c| c[i].clone()).collect()).collect()
    }

    pub(crate) fn inv_raw(&self, x: &[Q]) -> Option<Vec<Q>> {
        if x.iter().all(Zero::is_zero) {
            return None;
        }
        if self.degree == 1 {
            return Some(vec![x[0].recip()]);
        }
        linalg::solve(&Rationals, &self.mult_matrix(x), &self.one_raw())
    }

    pub(crate) fn norm_raw(&self, x: &[Q]) -> Q {
        linalg::det(&Rationals, &self.mult_matrix(x))
    }

    pub(crate) fn apply_aut_raw(&self, idx: usize, x: &[Q]) -> Vec<Q> {
        let m = &self.aut_maps[idx];
        let mut out = self.zero_raw();
        for (c, row) in x.iter().zip(m) {
            if c.is_zero() {
                continue;
            }
            for (o, r) in out.iter_mut().zip(row) {
                *o += c * r;
            }
        }
        out
    }

    /// Evaluate the defining polynomial (over the base) at a raw element.
    pub(crate) fn eval_defining_raw(&self, x: &[Q]) -> Vec<Q> {
        let mut acc = self.zero_raw();
        for &c in self.poly.iter().rev() {
            acc = self.mul_raw(&acc, x);
            acc[0] += q(c);
        }
        acc
    }

    /// Relative trace to the immediate base, as base coordinates.
    pub(crate) fn rel_trace_raw(&self, x: &[Q]) -> Vec<Q> {
        let block = self.base_degree();
        let mut acc = vec![Q::zero(); block];
        let mut e = self.zero_raw();
        for j in 0..self.rel_degree() {
            if j > 0 {
                e[(j - 1) * block] = Q::zero();
            }
            e[j * block] = Q::one();
            let y = self.mul_raw(x, &e);
            for (a, b) in acc.iter_mut().zip(&y[j * block..(j + 1) * block]) {
                *a += b;
            }
        }
        acc
    }
}

impl Arith for Field {
    type E = Vec<Q>;
    fn zero(&self) -> Vec<Q> {
        self.zero_raw()
    }
    fn one(&self) -> Vec<Q> {
        self.one_raw()
    }
    fn add(&self, a: &Vec<Q>, b: &Vec<Q>) -> Vec<Q> {
        a.iter().zip(b).map(|(x, y)| x + y).collect()
    }
    fn sub(&self, a: &Vec<Q>, b: &Vec<Q>) -> Vec<Q> {
        a.iter().zip(b).map(|(x, y)| x - y).collect()
    }
    fn mul(&self, a: &Vec<Q>, b: &Vec<Q>) -> Vec<Q> {
        self.mul_raw(a, b)
    }
    fn inv(&self, a: &Vec<Q>) -> Option<Vec<Q>> {
        self.inv_raw(a)
    }
    fn is_zero(&self, a: &Vec<Q>) -> bool {
        a.iter().all(Zero::is_zero)
    }
}

/// An exact element of a catalog field.
#[derive(Clone)]
pub struct FieldElement {
    field: Arc<Field>,
    coords: Vec<Q>,
}

impl PartialEq for FieldElement {
    fn eq(&self, other: &Self) -> bool {
        self.field.label == other.field.label && self.coords == other.coords
    }
}

impl Eq for FieldElement {}

impl Hash for FieldElement {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.coords.hash(state);
    }
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}[", self.field.label)?;
        for (i, c) in self.coords.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, "]")
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FieldOp {
    Add,
    Sub,
    Mul,
    Div,
}

pub fn field_arith(op: FieldOp, x: &FieldElement, y: &FieldElement) -> Result<FieldElement, ExactError> {
    x.check_same(y)?;
    Ok(match op {
        FieldOp::Add => x.add(y),
        FieldOp::Sub => x.sub(y),
        FieldOp::Mul => x.mul(y),
        FieldOp::Div => x.mul(&y.inv()?),
    })
}

impl FieldElement {
    pub fn new(field: Arc<Field>, coords: Vec<Q>) -> Result<Self, ExactError> {
        if coords.len() != field.degree {
            return Err(ExactError::BadLength { expected: field.degree, got: coords.len() });
        }
        Ok(FieldElement { field, coords })
    }

    pub fn from_ints(field: Arc<Field>, coords: &[i64]) -> Result<Self, ExactError> {
        Self::new(field, coords.iter().map(|&c| q(c)).collect())
    }

    pub fn zero(field: &Arc<Field>) -> Self {
        FieldElement { field: field.clone(), coords: field.zero_raw() }
    }

    pub fn one(field: &Arc<Field>) -> Self {
        FieldElement { field: field.clone(), coords: field.one_raw() }
    }

    pub fn rational(field: &Arc<Field>, c: Q) -> Self {
        let mut coords = field.zero_raw();
        coords[0] = c;
        FieldElement { field: field.clone(), coords }
    }

    /// The generator of the top step of the tower.
    pub fn generator(field: &Arc<Field>) -> Self {
        let mut coords = field.zero_raw();
        if field.degree > 1 {
            coords[field.base_degree()] = Q::one();
        }
        FieldElement { field: field.clone(), coords }
    }

    /// A primitive root of unity of order `torsion_order`.
    pub fn primitive_root_of_unity(field: &Arc<Field>) -> Self {
        FieldElement { field: field.clone(), coords: field.root_of_unity.clone() }
    }

    pub fn field(&self) -> &Arc<Field> {
        &self.field
    }

    pub fn coords(&self) -> &[Q] {
        &self.coords
    }

    pub fn into_coords(self) -> Vec<Q> {
        self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Zero::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.coords[0].is_one() && self.coords[1..].iter().all(Zero::is_zero)
    }

    /// The rational value if the element lies in ℚ.
    pub fn as_rational(&self) -> Option<&Q> {
        if self.coords[1..].iter().all(Zero::is_zero) {
            Some(&self.coords[0])
        } else {
            None
        }
    }

    pub fn check_same(&self, other: &Self) -> Result<(), ExactError> {
        if self.field.label != other.field.label {
            return Err(ExactError::FieldMismatch {
                left: self.field.label.clone(),
                right: other.field.label.clone(),
            });
        }
        Ok(())
    }

    pub fn add(&self, o: &Self) -> Self {
        debug_assert_eq!(self.field.label, o.field.label);
        FieldElement { field: self.field.clone(), coords: self.field.add(&self.coords, &o.coords) }
    }

    pub fn sub(&self, o: &Self) -> Self {
        debug_assert_eq!(self.field.label, o.field.label);
        FieldElement { field: self.field.clone(), coords: self.field.sub(&self.coords, &o.coords) }
    }

    pub fn neg(&self) -> Self {
        FieldElement { field: self.field.clone(), coords: self.coords.iter().map(|c| -c).collect() }
    }

    pub fn mul(&self, o: &Self) -> Self {
        debug_assert_eq!(self.field.label, o.field.label);
        FieldElement { field: self.field.clone(), coords: self.field.mul_raw(&self.coords, &o.coords) }
    }

    pub fn scale(&self, c: &Q) -> Self {
        FieldElement { field: self.field.clone(), coords: self.coords.iter().map(|x| x * c).collect() }
    }

    pub fn pow(&self, e: u64) -> Self {
        FieldElement { field: self.field.clone(), coords: self.field.pow_raw(&self.coords, e) }
    }

    /// Integer power; negative exponents invert.
    pub fn powi(&self, e: i64) -> Result<Self, ExactError> {
        if e >= 0 {
            Ok(self.pow(e as u64))
        } else {
            Ok(self.inv()?.pow(e.unsigned_abs()))
        }
    }

    pub fn inv(&self) -> Result<Self, ExactError> {
        let c = self.field.inv_raw(&self.coords).ok_or(ExactError::DivisionByZero)?;
        Ok(FieldElement { field: self.field.clone(), coords: c })
    }

    pub fn div(&self, o: &Self) -> Result<Self, ExactError> {
        self.check_same(o)?;
        Ok(self.mul(&o.inv()?))
    }

    /// Apply the automorphism with the given index in the field's list.
    pub fn apply_automorphism(&self, idx: usize) -> Self {
        FieldElement { field: self.field.clone(), coords: self.field.apply_aut_raw(idx, &self.coords) }
    }

    /// Absolute norm to ℚ (determinant of multiplication).
    pub fn absolute_norm(&self) -> Q {
        self.field.norm_raw(&self.coords)
    }

    /// Absolute trace to ℚ (trace of multiplication).
    pub fn absolute_trace(&self) -> Q {
        let m = self.field.mult_matrix(&self.coords);
        (0..m.len()).map(|i| m[i][i].clone()).sum()
    }

    /// Embed an element of a subfield in the base chain.
    pub fn embed(x: &FieldElement, into: &Arc<Field>) -> Result<Self, ExactError> {
        if !into.has_subfield(&x.field) {
            return Err(ExactError::FieldMismatch { left: x.field.label.clone(), right: into.label.clone() });
        }
        let mut coords = into.zero_raw();
        for (c, v) in coords.iter_mut().zip(&x.coords) {
            *c = v.clone();
        }
        Ok(FieldElement { field: into.clone(), coords })
    }

    /// Restrict to a subfield in the base chain; fails unless the element lies in it.
    pub fn restrict(&self, to: &Arc<Field>) -> Result<Self, ExactError> {
        if !self.field.has_subfield(to) {
            return Err(ExactError::FieldMismatch { left: self.field.label.clone(), right: to.label.clone() });
        }
        if self.coords[to.degree..].iter().any(|c| !c.is_zero()) {
            return Err(ExactError::NotInSubfield { field: to.label.clone() });
        }
        Ok(FieldElement { field: to.clone(), coords: self.coords[..to.degree].to_vec() })
    }

    /// Coordinates over a subfield `over`: blocks of `over.degree()` rationals.
    pub fn blocks(&self, over: &Field) -> Vec<Vec<Q>> {
        self.coords.chunks(over.degree).map(|c| c.to_vec()).collect()
    }

    /// Least common denominator of the coordinates.
    pub fn denominator(&self) -> BigInt {
        self.coords.iter().fold(BigInt::one(), |acc, c| num_integer::lcm(acc, c.denom().clone()))
    }

    /// Largest coordinate height (max of |numerator|, denominator).
    pub fn height(&self) -> BigInt {
        self.coords
            .iter()
            .map(|c| std::cmp::max(c.numer().abs(), c.denom().clone()))
            .max()
            .unwrap_or_else(BigInt::zero)
    }
}

pub fn trace(x: &FieldElement, over: &Arc<Field>) -> Result<FieldElement, ExactError> {
    let f = x.field.clone();
    if !f.has_subfield(over) {
        return Err(ExactError::FieldMismatch { left: f.label.clone(), right: over.label.clone() });
    }
    let mut cur_field = f;
    let mut cur = x.coords.clone();
    while cur_field.degree != over.degree {
        cur = cur_field.rel_trace_raw(&cur);
        cur_field = cur_field.base.clone().expect("base chain reaches the subfield");
    }
    if over.degree == 1 {
        return Ok(FieldElement { field: over.clone(), coords: vec![cur[0].clone()] });
    }
    Ok(FieldElement { field: over.clone(), coords: cur })
}

/// Monic minimal polynomial of x over a subfield, coefficients constant first.
pub fn minimal_polynomial(x: &FieldElement, over: &Arc<Field>) -> Result<Vec<FieldElement>, ExactError> {
    let f = x.field.clone();
    if !f.has_subfield(over) {
        return Err(ExactError::FieldMismatch { left: f.label.clone(), right: over.label.clone() });
    }
    let dim = f.degree / over.degree;
    let mut powers: Vec<Vec<Vec<Q>>> = vec![FieldElement::one(&f).blocks(over)];
    let mut cur = FieldElement::one(&f);
    for m in 1..=dim {
        cur = cur.mul(x);
        let target = cur.blocks(over);
        // solve sum_{i<m} c_i * x^i = x^m over `over`
        let rows: Vec<Vec<Vec<Q>>> =
            (0..dim).map(|r| (0..m).map(|i| powers[i][r].clone()).collect()).collect();
        if let Some(sol) = linalg::solve(&**over, &rows, &target) {
            let mut out: Vec<FieldElement> =
                sol.into_iter().map(|c| FieldElement { field: over.clone(), coords: c }.neg()).collect();
            out.push(FieldElement::one(over));
            return Ok(out);
        }
        powers.push(target);
    }
    unreachable!("powers up to the degree are always dependent")
}

/// Evaluate a polynomial with coefficients in a subfield at x.
pub fn eval_poly(p: &[FieldElement], x: &FieldElement) -> Result<FieldElement, ExactError> {
    let mut acc = FieldElement::zero(x.field());
    for c in p.iter().rev() {
        acc = acc.mul(x).add(&FieldElement::embed(c, x.field())?);
    }
    Ok(acc)
}
