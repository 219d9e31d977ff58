//! Gaussian elimination over an exact field.

use super::arith::Arith;

/// Solve `m · x = rhs` for a square or tall system. Returns `None` when the
/// system is inconsistent; free variables are set to zero.
pub fn solve<A: Arith>(f: &A, m: &[Vec<A::E>], rhs: &[A::E]) -> Option<Vec<A::E>> {
    let rows = m.len();
    let cols = if rows == 0 { 0 } else { m[0].len() };
    let mut aug: Vec<Vec<A::E>> = m
        .iter()
        .zip(rhs)
        .map(|(r, b)| {
            let mut r = r.clone();
            r.push(b.clone());
            r
        })
        .collect();
    let pivots = reduce(f, &mut aug, cols);
    for r in aug.iter().skip(pivots.len()) {
        if !f.is_zero(&r[cols]) {
            return None;
        }
    }
    let mut x = vec![f.zero(); cols];
    for (i, &c) in pivots.iter().enumerate() {
        x[c] = aug[i][cols].clone();
    }
    Some(x)
}

/// Reduced row echelon form on the first `cols` columns; returns pivot columns.
pub fn reduce<A: Arith>(f: &A, m: &mut [Vec<A::E>], cols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut row = 0;
    for c in 0..cols {
        if row == m.len() {
            break;
        }
        let Some(p) = (row..m.len()).find(|&r| !f.is_zero(&m[r][c])) else {
            continue;
        };
        m.swap(row, p);
        let inv = f.inv(&m[row][c]).expect("nonzero pivot");
        let width = m[row].len();
        for j in c..width {
            m[row][j] = f.mul(&m[row][j], &inv);
        }
        for r in 0..m.len() {
            if r != row && !f.is_zero(&m[r][c]) {
                let factor = m[r][c].clone();
                for j in c..width {
                    let t = f.mul(&factor, &m[row][j]);
                    m[r][j] = f.sub(&m[r][j], &t);
                }
            }
        }
        pivots.push(c);
        row += 1;
    }
    pivots
}

pub fn det<A: Arith>(f: &A, m: &[Vec<A::E>]) -> A::E {
    let n = m.len();
    if n <= 6 {
        return det_by_minors(f, m);
    }
    det_gauss(f, m)
}

fn det_gauss<A: Arith>(f: &A, m: &[Vec<A::E>]) -> A::E {
    let n = m.len();
    let mut a = m.to_vec();
    let mut d = f.one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&r| !f.is_zero(&a[r][c])) else {
            return f.zero();
        };
        if p != c {
            a.swap(p, c);
            d = f.neg(&d);
        }
        d = f.mul(&d, &a[c][c]);
        let inv = f.inv(&a[c][c]).expect("nonzero pivot");
        for r in c + 1..n {
            if f.is_zero(&a[r][c]) {
                continue;
            }
            let factor = f.mul(&a[r][c], &inv);
            for j in c..n {
                let t = f.mul(&factor, &a[c][j]);
                a[r][j] = f.sub(&a[r][j], &t);
            }
        }
    }
    d
}

/// Division-free Laplace expansion along rows, memoized over column subsets.
fn det_by_minors<A: Arith>(f: &A, m: &[Vec<A::E>]) -> A::E {
    let n = m.len();
    if n == 0 {
        return f.one();
    }
    // minors[mask] = det of the last popcount(mask) rows on the columns in mask
    let full = (1usize << n) - 1;
    let mut minors: Vec<Option<A::E>> = vec![None; 1 << n];
    minors[0] = Some(f.one());
    for mask in 1..=full {
        let k = mask.count_ones() as usize;
        let row = n - k;
        let mut acc = f.zero();
        let mut sign_pos = true;
        for c in 0..n {
            if mask & (1 << c) == 0 {
                continue;
            }
            let entry = &m[row][c];
            if !f.is_zero(entry) {
                let sub = minors[mask & !(1 << c)].as_ref().expect("smaller masks first");
                if !f.is_zero(sub) {
                    let t = f.mul(entry, sub);
                    acc = if sign_pos { f.add(&acc, &t) } else { f.sub(&acc, &t) };
                }
            }
            sign_pos = !sign_pos;
        }
        minors[mask] = Some(acc);
    }
    minors[full].take().expect("computed")
}

/// Incrementally maintained row space in echelon form.
#[derive(Clone, Debug)]
pub struct Span<E> {
    rows: Vec<(usize, Vec<E>)>,
}

impl<E: Clone + PartialEq> Span<E> {
    pub fn new() -> Self {
        Span { rows: Vec::new() }
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    fn residue<A: Arith<E = E>>(&self, f: &A, v: &[E]) -> Vec<E> {
        let mut v = v.to_vec();
        for (p, r) in &self.rows {
            if !f.is_zero(&v[*p]) {
                let factor = v[*p].clone();
                for (x, y) in v.iter_mut().zip(r) {
                    *x = f.sub(x, &f.mul(&factor, y));
                }
            }
        }
        v
    }

    pub fn contains<A: Arith<E = E>>(&self, f: &A, v: &[E]) -> bool {
        self.residue(f, v).iter().all(|x| f.is_zero(x))
    }

    /// Adds `v` if it is independent; returns whether the span grew.
    pub fn insert<A: Arith<E = E>>(&mut self, f: &A, v: &[E]) -> bool {
        let mut v = self.residue(f, v);
        let Some(p) = v.iter().position(|x| !f.is_zero(x)) else {
            return false;
        };
        let inv = f.inv(&v[p]).expect("nonzero pivot");
        for x in v.iter_mut() {
            *x = f.mul(x, &inv);
        }
        for (_, r) in self.rows.iter_mut() {
            if !f.is_zero(&r[p]) {
                let factor = r[p].clone();
                for (x, y) in r.iter_mut().zip(&v) {
                    *x = f.sub(x, &f.mul(&factor, y));
                }
            }
        }
        self.rows.push((p, v));
        true
    }
}

impl<E: Clone + PartialEq> Default for Span<E> {
    fn default() -> Self {
        Self::new()
    }
}
