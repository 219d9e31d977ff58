use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Signed;

use super::arith::Q;
use super::field::{FieldElement, PowerTestKind};
use super::padic::alpha_roots;
use super::quadratic::{alpha_root, QuadInt, EISENSTEIN, GAUSSIAN};
use super::ExactError;

/// Coordinate bound for the search-based power test.
pub const SEARCH_BOUND: u64 = 1_000_000;

pub fn divisors(n: u64) -> Vec<u64> {
    let mut d: Vec<u64> = (1..=n).take_while(|i| i * i <= n).filter(|i| n.is_multiple_of(*i)).collect();
    let big: Vec<u64> = d.iter().rev().map(|i| n / i).filter(|j| j * j != n).collect();
    d.extend(big);
    d
}

/// The multiplicative order of x if it is a root of unity.
pub fn is_root_of_unity(x: &FieldElement) -> Result<Option<u64>, ExactError> {
    if x.is_zero() {
        return Err(ExactError::ZeroInput);
    }
    let w = x.field().torsion_order();
    if !x.pow(w).is_one() {
        return Ok(None);
    }
    Ok(divisors(w).into_iter().find(|&d| x.pow(d).is_one()))
}

fn int_root(n: &BigInt, alpha: u64) -> Option<BigInt> {
    let r = n.abs().nth_root(alpha as u32);
    if num_traits::pow(r.clone(), alpha as usize) == n.abs() {
        Some(r)
    } else {
        None
    }
}

/// Outcome of the search route when no root was found.
enum SearchOutcome {
    Found(FieldElement),
    Absent,
    Unknown,
}

/// Find c with c^α·ω = a for a root of unity ω.
pub fn power_test(a: &FieldElement, alpha: u64) -> Result<Option<FieldElement>, ExactError> {
    if a.is_zero() {
        return Err(ExactError::ZeroInput);
    }
    if alpha == 0 {
        return Err(ExactError::BadExponent);
    }
    let field = a.field().clone();
    let c = match field.kind() {
        PowerTestKind::Rational => {
            let v = a.as_rational().expect("degree-1 field");
            let n = int_root(v.numer(), alpha);
            let d = int_root(v.denom(), alpha);
            match (n, d) {
                (Some(n), Some(d)) => Some(FieldElement::rational(&field, Q::new(n, d))),
                _ => None,
            }
        }
        PowerTestKind::Gaussian | PowerTestKind::Eisenstein => {
            let ring = if field.kind() == PowerTestKind::Gaussian { GAUSSIAN } else { EISENSTEIN };
            let d = a.denominator();
            let u = QuadInt {
                x: (&a.coords()[0] * Q::from_integer(d.clone())).to_integer(),
                y: (&a.coords()[1] * Q::from_integer(d.clone())).to_integer(),
            };
            alpha_root(ring, &u, &d, alpha).map(|(num, den)| {
                let n = FieldElement::new(field.clone(), vec![Q::from_integer(num.x), Q::from_integer(num.y)])
                    .expect("degree 2");
                let dd = FieldElement::new(field.clone(), vec![Q::from_integer(den.x), Q::from_integer(den.y)])
                    .expect("degree 2");
                n.div(&dd).expect("nonzero prime power")
            })
        }
        PowerTestKind::Search => match search_route(a, alpha)? {
            SearchOutcome::Found(c) => Some(c),
            SearchOutcome::Absent => None,
            SearchOutcome::Unknown => {
                return Err(ExactError::HeuristicInconclusive {
                    field: field.label().to_string(),
                    detail: format!("no {alpha}-th root found within coordinate bound {SEARCH_BOUND}"),
                })
            }
        },
    };
    if let Some(c) = &c {
        let omega = a.div(&c.pow(alpha))?;
        if is_root_of_unity(&omega)?.is_none() {
            return Err(ExactError::Internal("power test returned a non-root".into()));
        }
    }
    Ok(c)
}

fn search_route(a: &FieldElement, alpha: u64) -> Result<SearchOutcome, ExactError> {
    let field = a.field().clone();
    // |N(a)| = |N(c)|^α is necessary
    let n = a.absolute_norm();
    if int_root(n.numer(), alpha).is_none() || int_root(n.denom(), alpha).is_none() {
        return Ok(SearchOutcome::Absent);
    }
    let w = field.torsion_order();
    let zeta = FieldElement::primitive_root_of_unity(&field);
    let zeta_inv = zeta.inv()?;
    let reps = alpha.gcd(&w);
    let mut all_absent = true;
    let mut b = a.clone();
    for _ in 0..reps {
        let s = alpha_roots(&field, b.coords(), alpha, SEARCH_BOUND);
        if let Some(r) = s.roots.into_iter().next() {
            return Ok(SearchOutcome::Found(FieldElement::new(field.clone(), r)?));
        }
        all_absent &= s.complete;
        b = b.mul(&zeta_inv);
    }
    Ok(if all_absent { SearchOutcome::Absent } else { SearchOutcome::Unknown })
}

/// Rational α-th root of a positive or negative rational, if exact up to sign.
pub fn rational_root(v: &Q, alpha: u64) -> Option<Q> {
    let n = int_root(v.numer(), alpha)?;
    let d = int_root(v.denom(), alpha)?;
    Some(Q::new(n, d))
}
