//! Polynomials over a small prime field and Berlekamp factorization.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;

use crate::poly::ZPoly;

/// Polynomial over `F_p`, ascending coefficients, trimmed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FpPoly {
    pub p: u64,
    pub c: Vec<u64>,
}

pub fn inv_mod(a: u64, p: u64) -> u64 {
    pow_mod(a % p, p - 2, p)
}

pub fn pow_mod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * a % p;
        }
        a = a * a % p;
        e >>= 1;
    }
    acc
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

impl FpPoly {
    pub fn new(p: u64, mut c: Vec<u64>) -> Self {
        while c.last() == Some(&0) {
            c.pop();
        }
        FpPoly { p, c }
    }

    pub fn from_zpoly(f: &ZPoly, p: u64) -> Self {
        let pb = BigInt::from(p);
        Self::new(
            p,
            f.coeffs().iter().map(|x| x.mod_floor(&pb).to_u64().unwrap()).collect(),
        )
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.c.len().checked_sub(1)
    }

    pub fn lc(&self) -> u64 {
        *self.c.last().unwrap_or(&0)
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let inv = inv_mod(self.lc(), self.p);
        self.scale(inv)
    }

    pub fn scale(&self, s: u64) -> Self {
        Self::new(self.p, self.c.iter().map(|&x| x * s % self.p).collect())
    }

    pub fn add(&self, o: &Self) -> Self {
        let n = self.c.len().max(o.c.len());
        Self::new(
            self.p,
            (0..n)
                .map(|i| (self.c.get(i).unwrap_or(&0) + o.c.get(i).unwrap_or(&0)) % self.p)
                .collect(),
        )
    }

    pub fn sub(&self, o: &Self) -> Self {
        let n = self.c.len().max(o.c.len());
        Self::new(
            self.p,
            (0..n)
                .map(|i| (self.c.get(i).unwrap_or(&0) + self.p - o.c.get(i).unwrap_or(&0)) % self.p)
                .collect(),
        )
    }

    pub fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Self::new(self.p, vec![]);
        }
        let mut out = vec![0u64; self.c.len() + o.c.len() - 1];
        for (i, &a) in self.c.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in o.c.iter().enumerate() {
                out[i + j] = (out[i + j] + a * b) % self.p;
            }
        }
        Self::new(self.p, out)
    }

    pub fn divrem(&self, d: &Self) -> (Self, Self) {
        let dd = d.degree().expect("division by zero polynomial");
        let p = self.p;
        let mut rem = self.c.clone();
        if rem.len() <= dd {
            return (Self::new(p, vec![]), self.clone());
        }
        let inv = inv_mod(d.lc(), p);
        let mut q = vec![0u64; rem.len() - dd];
        for i in (0..q.len()).rev() {
            let t = rem[i + dd] * inv % p;
            if t == 0 {
                continue;
            }
            q[i] = t;
            for (j, &dc) in d.c.iter().enumerate() {
                rem[i + j] = (rem[i + j] + p - t * dc % p) % p;
            }
        }
        (Self::new(p, q), Self::new(p, rem))
    }

    pub fn rem(&self, d: &Self) -> Self {
        self.divrem(d).1
    }

    /// Monic gcd.
    pub fn gcd(&self, o: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), o.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Returns `(g, s, t)` with `s*a + t*b = g`, `g` monic.
    pub fn ext_gcd(a: &Self, b: &Self) -> (Self, Self, Self) {
        let p = a.p;
        let (mut r0, mut r1) = (a.clone(), b.clone());
        let (mut s0, mut s1) = (Self::new(p, vec![1]), Self::new(p, vec![]));
        let (mut t0, mut t1) = (Self::new(p, vec![]), Self::new(p, vec![1]));
        while !r1.is_zero() {
            let (q, r) = r0.divrem(&r1);
            r0 = std::mem::replace(&mut r1, r);
            let s = s0.sub(&q.mul(&s1));
            s0 = std::mem::replace(&mut s1, s);
            let t = t0.sub(&q.mul(&t1));
            t0 = std::mem::replace(&mut t1, t);
        }
        let inv = inv_mod(r0.lc(), p);
        (r0.scale(inv), s0.scale(inv), t0.scale(inv))
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.p,
            self.c
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, &x)| (i as u64 % self.p) * x % self.p)
                .collect(),
        )
    }

    pub fn to_zpoly(&self) -> ZPoly {
        ZPoly::new(self.c.iter().map(|&x| BigInt::from(x)).collect())
    }
}

/// Factor a monic squarefree polynomial over `F_p` into monic irreducibles
/// (Berlekamp). Output is sorted by degree, then coefficients.
pub fn berlekamp(f: &FpPoly) -> Vec<FpPoly> {
    let p = f.p;
    let n = f.degree().expect("nonzero input");
    debug_assert_eq!(f.lc(), 1);
    if n <= 1 {
        return vec![f.clone()];
    }
    // Rows of Q: x^(i p) mod f.
    let xp = pow_x(p, f);
    let mut rows = Vec::with_capacity(n);
    let mut cur = FpPoly::new(p, vec![1]);
    for _ in 0..n {
        let mut row = cur.c.clone();
        row.resize(n, 0);
        rows.push(row);
        cur = cur.mul(&xp).rem(f);
    }
    // Left kernel of Q - I: solve M v = 0 with M[j][i] = Q[i][j] - [i == j].
    let mut m: Vec<Vec<u64>> = (0..n)
        .map(|j| {
            (0..n)
                .map(|i| {
                    let v = rows[i][j];
                    if i == j {
                        (v + p - 1) % p
                    } else {
                        v
                    }
                })
                .collect()
        })
        .collect();
    let basis = nullspace(&mut m, p);
    let r = basis.len();
    let mut factors = vec![f.clone()];
    if r == 1 {
        return factors;
    }
    'outer: for v in &basis {
        let vpoly = FpPoly::new(p, v.clone());
        if vpoly.degree().unwrap_or(0) == 0 {
            continue;
        }
        let mut next = Vec::new();
        for g in factors.drain(..) {
            let mut pending = vec![g];
            let mut done = Vec::new();
            for s in 0..p {
                let shifted = vpoly.sub(&FpPoly::new(p, vec![s]));
                let mut still = Vec::new();
                for h in pending.drain(..) {
                    if h.degree() == Some(1) {
                        done.push(h);
                        continue;
                    }
                    let d = h.gcd(&shifted);
                    let dd = d.degree().unwrap_or(0);
                    if dd > 0 && dd < h.degree().unwrap() {
                        let (q, _) = h.divrem(&d);
                        still.push(d);
                        still.push(q.monic());
                    } else {
                        still.push(h);
                    }
                }
                pending = still;
            }
            done.extend(pending);
            next.extend(done);
        }
        factors = next;
        if factors.len() == r {
            break 'outer;
        }
    }
    debug_assert_eq!(factors.len(), r);
    factors.sort_by(|a, b| a.c.len().cmp(&b.c.len()).then_with(|| a.c.cmp(&b.c)));
    factors
}

fn pow_x(e: u64, f: &FpPoly) -> FpPoly {
    let p = f.p;
    let mut base = FpPoly::new(p, vec![0, 1]).rem(f);
    let mut acc = FpPoly::new(p, vec![1]);
    let mut e = e;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc.mul(&base).rem(f);
        }
        base = base.mul(&base).rem(f);
        e >>= 1;
    }
    acc
}

fn nullspace(m: &mut [Vec<u64>], p: u64) -> Vec<Vec<u64>> {
    let rows = m.len();
    let cols = m[0].len();
    let mut pivot_cols = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(pr) = (r..rows).find(|&i| m[i][c] != 0) else {
            continue;
        };
        m.swap(r, pr);
        let inv = inv_mod(m[r][c], p);
        for x in m[r].iter_mut() {
            *x = *x * inv % p;
        }
        for i in 0..rows {
            if i != r && m[i][c] != 0 {
                let f = m[i][c];
                for j in 0..cols {
                    m[i][j] = (m[i][j] + p - f * m[r][j] % p) % p;
                }
            }
        }
        pivot_cols.push(c);
        r += 1;
        if r == rows {
            break;
        }
    }
    let mut basis = Vec::new();
    for free in (0..cols).filter(|c| !pivot_cols.contains(c)) {
        let mut v = vec![0u64; cols];
        v[free] = 1;
        for (i, &pc) in pivot_cols.iter().enumerate() {
            v[pc] = (p - m[i][free]) % p;
        }
        basis.push(v);
    }
    basis
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn berlekamp_splits_x4_minus_3x2_plus_1() {
        // mod 11: 5 is a square, so both quadratic factors split.
        let f = FpPoly::from_zpoly(&ZPoly::from_i64s(&[1, 0, -3, 0, 1]), 11);
        let fs = berlekamp(&f);
        assert_eq!(fs.len(), 4);
        let prod = fs.iter().fold(FpPoly::new(11, vec![1]), |a, b| a.mul(b));
        assert_eq!(prod, f);
        // mod 3: x^4 + 1 = (x^2 + x + 2)(x^2 + 2x + 2)
        let f = FpPoly::from_zpoly(&ZPoly::from_i64s(&[1, 0, -3, 0, 1]), 3);
        let fs = berlekamp(&f);
        assert_eq!(fs.len(), 2);
        assert!(fs.iter().all(|g| g.degree() == Some(2)));
    }

    #[test]
    fn ext_gcd_bezout() {
        let a = FpPoly::new(7, vec![1, 2, 3]);
        let b = FpPoly::new(7, vec![5, 1]);
        let (g, s, t) = FpPoly::ext_gcd(&a, &b);
        assert_eq!(s.mul(&a).add(&t.mul(&b)), g);
    }
}
