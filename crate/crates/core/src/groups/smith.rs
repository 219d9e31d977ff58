//! Integer lattices: incremental echelon insertion and Smith normal form with
//! the column transform and its inverse.

fn ext_gcd(a: i128, b: i128) -> (i128, i128, i128) {
    if b == 0 {
        if a < 0 {
            (-a, -1, 0)
        } else {
            (a, 1, 0)
        }
    } else {
        let (g, x, y) = ext_gcd(b, a % b);
        (g, y, x - (a / b) * y)
    }
}

/// Row lattice in echelon form, one row per pivot column.
#[derive(Clone, Debug)]
pub struct Lattice {
    cols: usize,
    rows: Vec<Option<Vec<i128>>>,
}

impl Lattice {
    pub fn new(cols: usize) -> Self {
        Lattice { cols, rows: vec![None; cols] }
    }

    pub fn insert(&mut self, mut v: Vec<i128>) {
        for c in 0..self.cols {
            if v[c] == 0 {
                continue;
            }
            match &mut self.rows[c] {
                None => {
                    if v[c] < 0 {
                        v.iter_mut().for_each(|x| *x = -*x);
                    }
                    self.rows[c] = Some(v);
                    return;
                }
                Some(r) => {
                    let (a, b) = (r[c], v[c]);
                    let (g, s, t) = ext_gcd(a, b);
                    let new_pivot: Vec<i128> = r.iter().zip(&v).map(|(x, y)| s * x + t * y).collect();
                    let rest: Vec<i128> = r.iter().zip(&v).map(|(x, y)| (a / g) * y - (b / g) * x).collect();
                    *r = new_pivot;
                    v = rest;
                }
            }
        }
    }

    /// Square matrix with zero rows for missing pivots.
    pub fn matrix(&self) -> Vec<Vec<i128>> {
        self.rows.iter().map(|r| r.clone().unwrap_or_else(|| vec![0; self.cols])).collect()
    }
}

/// Smith form of an r×c integer matrix M: returns (D, V, V⁻¹) with
/// U·M·V = D for some unimodular U, D diagonal with d₁ | d₂ | … and d_i ≥ 0.
pub fn smith(m: &[Vec<i128>], cols: usize) -> (Vec<i128>, Vec<Vec<i128>>, Vec<Vec<i128>>) {
    let mut a: Vec<Vec<i128>> = m.to_vec();
    let rows = a.len();
    let mut v: Vec<Vec<i128>> = (0..cols).map(|i| (0..cols).map(|j| i128::from(i == j)).collect()).collect();
    let mut vinv = v.clone();
    let n = rows.min(cols);

    // column op: col_j += q·col_t on A and V; row_t -= q·row_j on V⁻¹
    let col_add = |a: &mut Vec<Vec<i128>>, v: &mut Vec<Vec<i128>>, vinv: &mut Vec<Vec<i128>>, j: usize, t: usize, q: i128| {
        for row in a.iter_mut() {
            row[j] += q * row[t];
        }
        for row in v.iter_mut() {
            row[j] += q * row[t];
        }
        let rj = vinv[j].clone();
        for (x, y) in vinv[t].iter_mut().zip(&rj) {
            *x -= q * y;
        }
    };
    let col_swap = |a: &mut Vec<Vec<i128>>, v: &mut Vec<Vec<i128>>, vinv: &mut Vec<Vec<i128>>, i: usize, j: usize| {
        for row in a.iter_mut() {
            row.swap(i, j);
        }
        for row in v.iter_mut() {
            row.swap(i, j);
        }
        vinv.swap(i, j);
    };

    for t in 0..n {
        loop {
            // smallest nonzero entry in the lower-right block
            let mut best: Option<(usize, usize)> = None;
            for i in t..rows {
                for j in t..cols {
                    if a[i][j] != 0 && best.is_none_or(|(bi, bj)| a[i][j].abs() < a[bi][bj].abs()) {
                        best = Some((i, j));
                    }
                }
            }
            let Some((bi, bj)) = best else {
                let mut d: Vec<i128> = (0..n).map(|i| a[i][i]).collect();
                normalize_signs(&mut d, &mut v, &mut vinv);
                return (d, v, vinv);
            };
            a.swap(t, bi);
            col_swap(&mut a, &mut v, &mut vinv, t, bj);
            let p = a[t][t];
            let mut clean = true;
            for i in t + 1..rows {
                let q = a[i][t] / p;
                if q != 0 {
                    let rt = a[t].clone();
                    for (x, y) in a[i].iter_mut().zip(&rt) {
                        *x -= q * y;
                    }
                }
                if a[i][t] != 0 {
                    clean = false;
                }
            }
            for j in t + 1..cols {
                let q = a[t][j] / p;
                if q != 0 {
                    col_add(&mut a, &mut v, &mut vinv, j, t, -q);
                }
                if a[t][j] != 0 {
                    clean = false;
                }
            }
            if !clean {
                continue;
            }
            // divisibility: fold any offending row into row t
            let bad = (t + 1..rows).find(|&i| (t + 1..cols).any(|j| a[i][j] % p != 0));
            match bad {
                Some(i) => {
                    let ri = a[i].clone();
                    for (x, y) in a[t].iter_mut().zip(&ri) {
                        *x += y;
                    }
                }
                None => break,
            }
        }
    }
    let mut d: Vec<i128> = (0..n).map(|i| a[i][i]).collect();
    normalize_signs(&mut d, &mut v, &mut vinv);
    (d, v, vinv)
}

fn normalize_signs(d: &mut [i128], v: &mut [Vec<i128>], vinv: &mut [Vec<i128>]) {
    for (i, di) in d.iter_mut().enumerate() {
        if *di < 0 {
            *di = -*di;
            for row in v.iter_mut() {
                row[i] = -row[i];
            }
            for x in vinv[i].iter_mut() {
                *x = -*x;
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mat_mul(a: &[Vec<i128>], b: &[Vec<i128>]) -> Vec<Vec<i128>> {
        (0..a.len()).map(|i| (0..b[0].len()).map(|j| (0..b.len()).map(|k| a[i][k] * b[k][j]).sum()).collect()).collect()
    }

    #[test]
    fn smith_forms() {
        let m = vec![vec![2, 4, 4], vec![-6, 6, 12], vec![10, -4, -16]];
        let (d, v, vinv) = smith(&m, 3);
        assert_eq!(d, vec![2, 6, 12]);
        let id: Vec<Vec<i128>> = (0..3).map(|i| (0..3).map(|j| i128::from(i == j)).collect()).collect();
        assert_eq!(mat_mul(&v, &vinv), id);
        // columns of M·V are multiples of the diagonal modulo row operations:
        // check the lattice index is preserved
        let mv = mat_mul(&m, &v);
        let mut l1 = Lattice::new(3);
        for r in mv {
            l1.insert(r);
        }
        let det: i128 = (0..3).map(|i| l1.matrix()[i][i]).product();
        assert_eq!(det.abs(), 2 * 6 * 12);
    }

    #[test]
    fn lattice_echelon() {
        let mut l = Lattice::new(2);
        l.insert(vec![4, 0]);
        l.insert(vec![6, 1]);
        l.insert(vec![0, 2]);
        let m = l.matrix();
        assert_eq!(m[0][0].abs() * m[1][1].abs(), 4);
    }
}
