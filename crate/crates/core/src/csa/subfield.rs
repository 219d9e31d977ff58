use super::{AlgebraElement, CsaError};
use crate::exact::linalg::Span;
use crate::exact::Q;

/// A commutative subfield of a cyclic algebra, with a k-basis.
#[derive(Clone, Debug)]
pub struct Subfield {
    pub basis: Vec<AlgebraElement>,
    pub degree: usize,
    span: Span<Vec<Q>>,
}

impl Subfield {
    /// Whether x lies in the k-span of the basis.
    pub fn contains(&self, x: &AlgebraElement) -> bool {
        match self.basis.first() {
            Some(b) => self.span.contains(&**b.algebra().base(), &x.k_coords()),
            None => false,
        }
    }
}

/// The k-algebra generated by commuting elements, which is a field inside a
/// division algebra.
pub fn generated_subfield(gens: &[AlgebraElement]) -> Result<Subfield, CsaError> {
    let Some(first) = gens.first() else {
        return Err(CsaError::BadLength { expected: 1, got: 0 });
    };
    let alg = first.algebra().clone();
    for g in gens {
        g.check_same(first)?;
    }
    for (i, g) in gens.iter().enumerate() {
        for h in &gens[i + 1..] {
            if g.mul(h) != h.mul(g) {
                return Err(CsaError::NonCommutative);
            }
        }
    }
    let kf = &**alg.base();
    let n = alg.degree();
    let mut span = Span::new();
    let one = AlgebraElement::one(&alg);
    span.insert(kf, &one.k_coords());
    let mut basis = vec![one];
    let mut next = 0;
    while next < basis.len() {
        let b = basis[next].clone();
        next += 1;
        for g in gens {
            let p = b.mul(g);
            if span.insert(kf, &p.k_coords()) {
                basis.push(p);
                if basis.len() > n {
                    return Err(CsaError::DegreeOverflow { dim: basis.len(), n });
                }
            }
        }
    }
    for (i, x) in basis.iter().enumerate() {
        for y in &basis[i + 1..] {
            if x.mul(y) != y.mul(x) {
                return Err(CsaError::NonCommutative);
            }
        }
    }
    let degree = basis.len();
    if n % degree != 0 {
        return Err(CsaError::DegreeNotDividing { dim: degree, n });
    }
    Ok(Subfield { basis, degree, span })
}
