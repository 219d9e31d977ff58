//! Polynomials over F_p (small p), used for load-time certificates and the
//! modular root search.

pub fn primes_up_to(n: u64) -> Vec<u64> {
    let n = n as usize;
    let mut sieve = vec![true; n + 1];
    let mut out = Vec::new();
    for i in 2..=n {
        if sieve[i] {
            out.push(i as u64);
            let mut j = i * i;
            while j <= n {
                sieve[j] = false;
                j += i;
            }
        }
    }
    out
}

fn inv_mod(a: u64, p: u64) -> u64 {
    pow_mod(a, p - 2, p)
}

pub fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut r = 1 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            r = ((r as u128 * b as u128) % m as u128) as u64;
        }
        b = ((b as u128 * b as u128) % m as u128) as u64;
        e >>= 1;
    }
    r
}

/// Coefficients constant first, trailing zeros trimmed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyP {
    pub p: u64,
    pub c: Vec<u64>,
}

impl PolyP {
    pub fn from_ints(coeffs: &[i64], p: u64) -> Self {
        let c = coeffs.iter().map(|&x| x.rem_euclid(p as i64) as u64).collect();
        let mut r = PolyP { p, c };
        r.trim();
        r
    }

    fn trim(&mut self) {
        while self.c.last() == Some(&0) {
            self.c.pop();
        }
    }

    pub fn degree(&self) -> Option<usize> {
        self.c.len().checked_sub(1)
    }

    fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    pub fn eval(&self, x: u64) -> u64 {
        let p = self.p as u128;
        let mut acc = 0u128;
        for &a in self.c.iter().rev() {
            acc = (acc * x as u128 + a as u128) % p;
        }
        acc as u64
    }

    fn derivative(&self) -> Self {
        let c = self
            .c
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, &a)| ((i as u128 * a as u128) % self.p as u128) as u64)
            .collect();
        let mut r = PolyP { p: self.p, c };
        r.trim();
        r
    }

    fn sub(&self, o: &Self) -> Self {
        let n = self.c.len().max(o.c.len());
        let c = (0..n)
            .map(|i| {
                let a = *self.c.get(i).unwrap_or(&0);
                let b = *o.c.get(i).unwrap_or(&0);
                (a + self.p - b) % self.p
            })
            .collect();
        let mut r = PolyP { p: self.p, c };
        r.trim();
        r
    }

    fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return PolyP { p: self.p, c: vec![] };
        }
        let p = self.p as u128;
        let mut c = vec![0u128; self.c.len() + o.c.len() - 1];
        for (i, &a) in self.c.iter().enumerate() {
            for (j, &b) in o.c.iter().enumerate() {
                c[i + j] = (c[i + j] + a as u128 * b as u128) % p;
            }
        }
        let mut r = PolyP { p: self.p, c: c.into_iter().map(|x| x as u64).collect() };
        r.trim();
        r
    }

    fn rem(&self, m: &Self) -> Self {
        let mut r = self.c.clone();
        let dm = m.c.len() - 1;
        let lead_inv = inv_mod(*m.c.last().unwrap(), self.p);
        let p = self.p as u128;
        while r.len() > dm {
            let top = *r.last().unwrap();
            if top != 0 {
                let f = (top as u128 * lead_inv as u128) % p;
                let shift = r.len() - 1 - dm;
                for (i, &b) in m.c.iter().enumerate() {
                    let t = (f * b as u128) % p;
                    r[shift + i] = ((r[shift + i] as u128 + p - t) % p) as u64;
                }
            }
            r.pop();
        }
        let mut out = PolyP { p: self.p, c: r };
        out.trim();
        out
    }

    fn monic(&self) -> Self {
        let inv = inv_mod(*self.c.last().unwrap(), self.p);
        let c = self.c.iter().map(|&a| ((a as u128 * inv as u128) % self.p as u128) as u64).collect();
        PolyP { p: self.p, c }
    }

    pub fn gcd(&self, o: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), o.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        if a.is_zero() {
            a
        } else {
            a.monic()
        }
    }

    pub fn is_squarefree(&self) -> bool {
        self.gcd(&self.derivative()).degree() == Some(0)
    }

    pub fn roots(&self) -> Vec<u64> {
        (0..self.p).filter(|&x| self.eval(x) == 0).collect()
    }

    fn powmod_x(&self, e: u64) -> Self {
        // x^e mod self
        let mut result = PolyP { p: self.p, c: vec![1] }.rem(self);
        let mut base = PolyP { p: self.p, c: vec![0, 1] }.rem(self);
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                result = result.mul(&base).rem(self);
            }
            base = base.mul(&base).rem(self);
            e >>= 1;
        }
        result
    }

    fn compose_pow(&self, h: &Self, m: &Self) -> Self {
        // h^p mod m via repeated multiplication (p small enough to use square-and-multiply)
        let mut result = PolyP { p: self.p, c: vec![1] };
        let mut base = h.clone();
        let mut e = self.p;
        while e > 0 {
            if e & 1 == 1 {
                result = result.mul(&base).rem(m);
            }
            base = base.mul(&base).rem(m);
            e >>= 1;
        }
        result
    }

    /// Degrees of the irreducible factors of a squarefree polynomial
    /// (distinct-degree factorization).
    pub fn factor_degrees(&self) -> Vec<usize> {
        let mut out = Vec::new();
        let mut f = self.monic();
        let x = PolyP { p: self.p, c: vec![0, 1] };
        let mut h = self.powmod_x(self.p).rem(&f);
        let mut d = 1;
        while f.degree().unwrap_or(0) >= 2 * d {
            let g = f.gcd(&h.sub(&x).rem(&f));
            let gd = g.degree().unwrap_or(0);
            if gd > 0 {
                for _ in 0..gd / d {
                    out.push(d);
                }
                f = div_exact(&f, &g);
                h = h.rem(&f);
            }
            d += 1;
            if f.degree().unwrap_or(0) == 0 {
                break;
            }
            h = f.compose_pow(&h, &f);
        }
        if let Some(fd) = f.degree() {
            if fd > 0 {
                out.push(fd);
            }
        }
        out.sort_unstable();
        out
    }
}

fn div_exact(a: &PolyP, b: &PolyP) -> PolyP {
    let p = a.p as u128;
    let mut r = a.c.clone();
    let db = b.c.len() - 1;
    let lead_inv = inv_mod(*b.c.last().unwrap(), a.p) as u128;
    let mut qc = vec![0u64; r.len() - db];
    for k in (0..qc.len()).rev() {
        let f = (r[k + db] as u128 * lead_inv) % p;
        qc[k] = f as u64;
        for (i, &bc) in b.c.iter().enumerate() {
            let t = (f * bc as u128) % p;
            r[k + i] = ((r[k + i] as u128 + p - t) % p) as u64;
        }
    }
    let mut q = PolyP { p: a.p, c: qc };
    q.trim();
    q
}

/// Sizes of all sub-multisets of `degrees`.
pub fn subset_sums(degrees: &[usize]) -> Vec<bool> {
    let total: usize = degrees.iter().sum();
    let mut can = vec![false; total + 1];
    can[0] = true;
    for &d in degrees {
        for s in (d..=total).rev() {
            if can[s - d] {
                can[s] = true;
            }
        }
    }
    can
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn factor_patterns() {
        // t^3 - 2 mod 7: 2 is not a cube mod 7, so irreducible
        assert_eq!(PolyP::from_ints(&[-2, 0, 0, 1], 7).factor_degrees(), vec![3]);
        // t^3 - 2 mod 5: one root (3), quadratic cofactor
        assert_eq!(PolyP::from_ints(&[-2, 0, 0, 1], 5).factor_degrees(), vec![1, 2]);
        // t^2 + 1 mod 5 splits
        assert_eq!(PolyP::from_ints(&[1, 0, 1], 5).factor_degrees(), vec![1, 1]);
        // cyclotomic Φ7 mod 2: two cubics
        assert_eq!(PolyP::from_ints(&[1, 1, 1, 1, 1, 1, 1], 2).factor_degrees(), vec![3, 3]);
    }

    #[test]
    fn squarefree_and_roots() {
        assert!(!PolyP::from_ints(&[1, 2, 1], 5).is_squarefree());
        assert!(PolyP::from_ints(&[1, 0, 1], 3).is_squarefree());
        assert_eq!(PolyP::from_ints(&[1, 0, 1], 5).roots(), vec![2, 3]);
    }

    #[test]
    fn sums() {
        let s = subset_sums(&[1, 2]);
        assert_eq!(s, vec![true, true, true, true]);
    }
}
