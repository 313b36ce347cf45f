//! Exact arithmetic in `Z[ω]` for a primitive root of unity
//! `ω = exp(2πi a/b)`, certified sign determination of real elements, and
//! the signature of Hermitian matrices over that ring.

use std::cell::RefCell;
use std::cmp::Ordering;
use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::poly::ZPoly;

fn mobius(mut n: u64) -> i32 {
    let mut mu = 1;
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            n /= d;
            if n.is_multiple_of(d) {
                return 0;
            }
            mu = -mu;
        }
        d += 1;
    }
    if n > 1 {
        mu = -mu;
    }
    mu
}

/// Euler's totient, the degree of the `n`-th cyclotomic polynomial.
pub fn totient(mut n: u64) -> u64 {
    let mut out = n;
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            while n.is_multiple_of(d) {
                n /= d;
            }
            out -= out / d;
        }
        d += 1;
    }
    if n > 1 {
        out -= out / n;
    }
    out
}

/// The `n`-th cyclotomic polynomial, `Π_{d|n} (x^d - 1)^μ(n/d)`.
pub fn cyclotomic_poly(n: u64) -> ZPoly {
    assert!(n >= 1);
    let binomial = |d: u64| {
        let mut c = vec![BigInt::zero(); d as usize + 1];
        c[0] = -BigInt::one();
        c[d as usize] = BigInt::one();
        ZPoly::new(c)
    };
    let divisors: Vec<u64> = (1..=n).filter(|d| n.is_multiple_of(*d)).collect();
    let mut num = ZPoly::one();
    for &d in &divisors {
        if mobius(n / d) == 1 {
            num = &num * &binomial(d);
        }
    }
    for &d in &divisors {
        if mobius(n / d) == -1 {
            num = num.exact_div(&binomial(d)).expect("cyclotomic divisor");
        }
    }
    num
}

/// Closed interval `[lo, hi] / 2^bits`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Enclosure {
    pub lo: BigInt,
    pub hi: BigInt,
    pub bits: u32,
}

fn div_floor(a: &BigInt, b: &BigInt) -> BigInt {
    a.div_floor(b)
}

fn div_ceil(a: &BigInt, b: &BigInt) -> BigInt {
    -((-a).div_floor(b))
}

/// Enclosure of `atan(1/x)` at scale `2^bits`.
fn atan_inv(x: u64, bits: u32) -> (BigInt, BigInt) {
    let one = BigInt::one() << bits;
    let x = BigInt::from(x);
    let x2 = &x * &x;
    let (mut lo, mut hi) = (BigInt::zero(), BigInt::zero());
    let mut pow = x.clone();
    let mut k = 0u64;
    loop {
        let den = &pow * BigInt::from(2 * k + 1);
        let (tl, th) = (div_floor(&one, &den), div_ceil(&one, &den));
        if th <= BigInt::one() {
            // alternating tail bounded by the first omitted term
            lo -= BigInt::one();
            hi += BigInt::one();
            break;
        }
        if k.is_multiple_of(2) {
            lo += tl;
            hi += th;
        } else {
            lo -= th;
            hi -= tl;
        }
        pow *= &x2;
        k += 1;
    }
    (lo, hi)
}

/// Enclosure of `π` at scale `2^bits` (Machin's formula).
pub fn pi_interval(bits: u32) -> (BigInt, BigInt) {
    static CACHE: OnceLock<Mutex<HashMap<u32, (BigInt, BigInt)>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(v) = cache.lock().unwrap().get(&bits) {
        return v.clone();
    }
    let v = machin(bits);
    cache.lock().unwrap().insert(bits, v.clone());
    v
}

fn machin(bits: u32) -> (BigInt, BigInt) {
    let (a_lo, a_hi) = atan_inv(5, bits);
    let (b_lo, b_hi) = atan_inv(239, bits);
    (a_lo * 16 - b_hi.clone() * 4, a_hi * 16 - b_lo * 4)
}

/// Rigorous bounds for `cos(x)`, `x = num / 2^bits` with `0 <= x <= 4`.
fn cos_point(num: &BigInt, bits: u32) -> (BigInt, BigInt) {
    let scale2 = BigInt::one() << (2 * bits);
    let x2 = num * num;
    let one = BigInt::one() << bits;
    let (mut lo, mut hi) = (one.clone(), one.clone());
    let (mut tlo, mut thi) = (one.clone(), one);
    let mut n = 1u64;
    loop {
        let den = &scale2 * BigInt::from((2 * n - 1) * (2 * n));
        tlo = div_floor(&(&tlo * &x2), &den);
        thi = div_ceil(&(&thi * &x2), &den);
        // Terms decrease once (2n+1)(2n+2) > x^2, which holds for n >= 3.
        if n >= 3 && thi <= BigInt::one() {
            lo -= &thi;
            hi += &thi;
            break;
        }
        if n % 2 == 1 {
            lo -= &thi;
            hi -= &tlo;
        } else {
            lo += &tlo;
            hi += &thi;
        }
        n += 1;
    }
    (lo, hi)
}

/// Enclosure of `cos(2π k / b)` at scale `2^bits`.
pub fn cos_turns(k: u64, b: u64, bits: u32) -> Enclosure {
    cos_turns_with_pi(k, b, bits, &pi_interval(bits))
}

fn cos_turns_with_pi(k: u64, b: u64, bits: u32, pi: &(BigInt, BigInt)) -> Enclosure {
    let k = k % b;
    let k = k.min(b - k);
    if k == 0 {
        let one = BigInt::one() << bits;
        return Enclosure {
            lo: one.clone(),
            hi: one,
            bits,
        };
    }
    let (pi_lo, pi_hi) = pi;
    let bb = BigInt::from(b);
    let th_lo = div_floor(&(pi_lo * BigInt::from(2 * k)), &bb);
    let th_hi = div_ceil(&(pi_hi * BigInt::from(2 * k)), &bb);
    // cos is decreasing on [0, π]
    let (lo, _) = cos_point(&th_hi, bits);
    let (_, hi) = cos_point(&th_lo, bits);
    let one = BigInt::one() << bits;
    Enclosure {
        lo: lo.max(-&one),
        hi: hi.min(one),
        bits,
    }
}

/// The ring `Z[ω]`, `ω = exp(2πi a/b)` with `gcd(a, b) = 1`, realized as
/// `Z[x] / Φ_b(x)`.
pub struct CycloRing {
    pub a: u64,
    pub b: u64,
    modulus: ZPoly,
    degree: usize,
    cos_cache: RefCell<Option<(u32, Vec<Enclosure>)>>,
}

/// Element of a [`CycloRing`]: coefficients of `1, ω, ω², …` below
/// `φ(b)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cyc(Vec<BigInt>);

impl Cyc {
    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|c| c.is_zero())
    }
}

impl CycloRing {
    pub fn new(a: u64, b: u64) -> Self {
        assert!(b >= 1 && a < b.max(1) && a.gcd(&b) == 1);
        let modulus = cyclotomic_poly(b);
        let degree = modulus.degree().unwrap();
        CycloRing {
            a,
            b,
            modulus,
            degree,
            cos_cache: RefCell::new(None),
        }
    }

    fn reduce(&self, mut c: Vec<BigInt>) -> Cyc {
        // Φ_b is monic.
        let d = self.degree;
        let m = self.modulus.coeffs();
        while c.len() > d {
            let top = c.pop().unwrap();
            if top.is_zero() {
                continue;
            }
            let base = c.len() - d;
            for (j, mc) in m.iter().take(d).enumerate() {
                c[base + j] -= &top * mc;
            }
        }
        c.resize(d, BigInt::zero());
        Cyc(c)
    }

    pub fn int(&self, v: impl Into<BigInt>) -> Cyc {
        self.reduce(vec![v.into()])
    }

    /// `ω^j` for any integer `j`.
    pub fn omega_pow(&self, j: i64) -> Cyc {
        let e = j.rem_euclid(self.b as i64) as usize;
        let mut c = vec![BigInt::zero(); e + 1];
        c[e] = BigInt::one();
        self.reduce(c)
    }

    pub fn add(&self, x: &Cyc, y: &Cyc) -> Cyc {
        Cyc(x.0.iter().zip(&y.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, x: &Cyc, y: &Cyc) -> Cyc {
        Cyc(x.0.iter().zip(&y.0).map(|(a, b)| a - b).collect())
    }

    pub fn scale(&self, x: &Cyc, s: &BigInt) -> Cyc {
        Cyc(x.0.iter().map(|a| a * s).collect())
    }

    pub fn mul(&self, x: &Cyc, y: &Cyc) -> Cyc {
        if x.is_zero() || y.is_zero() {
            return self.int(0);
        }
        let mut out = vec![BigInt::zero(); 2 * self.degree];
        for (i, a) in x.0.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in y.0.iter().enumerate() {
                if !b.is_zero() {
                    out[i + j] += a * b;
                }
            }
        }
        self.reduce(out)
    }

    /// Complex conjugate: `ω^j -> ω^(b-j)`.
    pub fn conj(&self, x: &Cyc) -> Cyc {
        let b = self.b as usize;
        let mut out = vec![BigInt::zero(); b.max(1)];
        for (j, c) in x.0.iter().enumerate() {
            if !c.is_zero() {
                out[(b - j) % b] += c;
            }
        }
        self.reduce(out)
    }

    /// Real part enclosure at scale `2^bits` (times 1).
    fn real_enclosure(&self, x: &Cyc, bits: u32) -> (BigInt, BigInt) {
        let mut cache = self.cos_cache.borrow_mut();
        if cache.as_ref().is_none_or(|(b, _)| *b != bits) {
            let pi = pi_interval(bits);
            let table = (0..self.b).map(|k| cos_turns_with_pi(k, self.b, bits, &pi)).collect();
            *cache = Some((bits, table));
        }
        let table = &cache.as_ref().unwrap().1;
        let (mut lo, mut hi) = (BigInt::zero(), BigInt::zero());
        for (j, c) in x.0.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let cs = &table[((self.a * j as u64) % self.b) as usize];
            if c.is_positive() {
                lo += c * &cs.lo;
                hi += c * &cs.hi;
            } else {
                lo += c * &cs.hi;
                hi += c * &cs.lo;
            }
        }
        (lo, hi)
    }

    /// Sign of a real element, certified by refining the enclosure of `ω`
    /// until it excludes zero.
    pub fn sign_of_real(&self, x: &Cyc) -> Ordering {
        debug_assert_eq!(&self.conj(x), x, "element is not real");
        if x.is_zero() {
            return Ordering::Equal;
        }
        let mut bits = 64;
        loop {
            let (lo, hi) = self.real_enclosure(x, bits);
            if lo.is_positive() {
                return Ordering::Greater;
            }
            if hi.is_negative() {
                return Ordering::Less;
            }
            bits *= 2;
            assert!(bits <= 1 << 20, "sign determination did not converge");
        }
    }

    /// Signature and rank of the Hermitian matrix `h`
    /// (`h[j][i] = conj(h[i][j])`).
    ///
    /// Fraction-free symmetric elimination: each pivot `d` is a nonzero
    /// real diagonal entry, the remaining block becomes
    /// `d·B - v v*` (congruent to `d` times the Schur complement). A block
    /// with zero diagonal but a nonzero off-diagonal entry is first
    /// transformed by the unimodular congruence `row_i += μ row_j` with
    /// `μ ∈ {1, ω}`.
    pub fn hermitian_signature(&self, mut h: Vec<Vec<Cyc>>) -> (i64, usize) {
        let mut acc = 0i64;
        let mut rank = 0usize;
        let mut mult = 1i64;
        while !h.is_empty() {
            let n = h.len();
            let pivot = (0..n).find(|&i| !h[i][i].is_zero());
            let pivot = match pivot {
                Some(i) => i,
                None => {
                    let Some((i, j)) = (0..n)
                        .flat_map(|i| (0..n).map(move |j| (i, j)))
                        .find(|&(i, j)| i != j && !h[i][j].is_zero())
                    else {
                        // zero block contributes only to the nullity
                        break;
                    };
                    let one = self.int(1);
                    let omega = self.omega_pow(1);
                    let mut done = false;
                    for mu in [one, omega] {
                        let cand = self.congruence_add(&h, i, j, &mu);
                        if !cand[i][i].is_zero() {
                            h = cand;
                            done = true;
                            break;
                        }
                    }
                    assert!(done, "nonzero Hermitian entry must yield a pivot");
                    i
                }
            };
            // symmetric permutation bringing the pivot to position 0
            h.swap(0, pivot);
            for row in h.iter_mut() {
                row.swap(0, pivot);
            }
            let d = h[0][0].clone();
            let s = match self.sign_of_real(&d) {
                Ordering::Greater => 1,
                Ordering::Less => -1,
                Ordering::Equal => unreachable!("pivot is nonzero"),
            };
            acc += mult * s;
            rank += 1;
            mult *= s;
            let next: Vec<Vec<Cyc>> = (1..n)
                .map(|i| {
                    (1..n)
                        .map(|j| self.sub(&self.mul(&d, &h[i][j]), &self.mul(&h[i][0], &h[0][j])))
                        .collect()
                })
                .collect();
            h = next;
        }
        (acc, rank)
    }

    fn congruence_add(&self, h: &[Vec<Cyc>], i: usize, j: usize, mu: &Cyc) -> Vec<Vec<Cyc>> {
        let n = h.len();
        let mut out = h.to_vec();
        for c in 0..n {
            out[i][c] = self.add(&h[i][c], &self.mul(mu, &h[j][c]));
        }
        let mu_bar = self.conj(mu);
        let snapshot = out.clone();
        for r in 0..n {
            out[r][i] = self.add(&snapshot[r][i], &self.mul(&mu_bar, &snapshot[r][j]));
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_cyclotomics() {
        assert_eq!(cyclotomic_poly(1), ZPoly::from_i64s(&[-1, 1]));
        assert_eq!(cyclotomic_poly(6), ZPoly::from_i64s(&[1, -1, 1]));
        assert_eq!(cyclotomic_poly(12), ZPoly::from_i64s(&[1, 0, -1, 0, 1]));
        assert_eq!(cyclotomic_poly(7).degree(), Some(6));
        for n in 1..60 {
            assert_eq!(cyclotomic_poly(n).degree(), Some(totient(n) as usize));
        }
    }

    #[test]
    fn pi_enclosure_is_tight_and_correct() {
        let (lo, hi) = pi_interval(80);
        let scale = (1u128 << 80) as f64;
        let (l, h) = (
            lo.to_string().parse::<f64>().unwrap() / scale,
            hi.to_string().parse::<f64>().unwrap() / scale,
        );
        assert!(l <= std::f64::consts::PI && std::f64::consts::PI <= h);
        assert!(&hi - &lo < BigInt::from(1 << 12));
    }

    #[test]
    fn cos_enclosures_contain_float_values() {
        for b in [3u64, 5, 7, 12, 211] {
            for k in 0..b {
                let d = cos_turns(k, b, 60);
                let scale = (1u64 << 60) as f64;
                let lo: f64 = d.lo.to_string().parse::<f64>().unwrap() / scale;
                let hi: f64 = d.hi.to_string().parse::<f64>().unwrap() / scale;
                let c = (2.0 * std::f64::consts::PI * k as f64 / b as f64).cos();
                assert!(lo - 1e-12 <= c && c <= hi + 1e-12, "b={b} k={k}");
                assert!(&d.hi - &d.lo < BigInt::from(1u64 << 12));
            }
        }
    }

    #[test]
    fn sign_of_real_elements() {
        let r = CycloRing::new(1, 7);
        // ω + ω̄ = 2cos(2π/7) > 0
        let x = r.add(&r.omega_pow(1), &r.omega_pow(-1));
        assert_eq!(r.sign_of_real(&x), Ordering::Greater);
        // ω³ + ω̄³ = 2cos(6π/7) < 0
        let y = r.add(&r.omega_pow(3), &r.omega_pow(-3));
        assert_eq!(r.sign_of_real(&y), Ordering::Less);
        // 1 + Σ ω^j over j=1..6 = 0
        let z = (1..7).fold(r.int(1), |acc, j| r.add(&acc, &r.omega_pow(j)));
        assert!(z.is_zero());
    }

    #[test]
    fn hyperbolic_block_signature() {
        let r = CycloRing::new(1, 5);
        let h = vec![vec![r.int(0), r.int(1)], vec![r.int(1), r.int(0)]];
        assert_eq!(r.hermitian_signature(h), (0, 2));
        // purely imaginary off-diagonal entry needs μ = ω
        let i_like = r.sub(&r.omega_pow(1), &r.omega_pow(-1));
        let h = vec![vec![r.int(0), i_like.clone()], vec![r.conj(&i_like), r.int(0)]];
        assert_eq!(r.hermitian_signature(h), (0, 2));
        let h = vec![vec![r.int(-3), r.int(0)], vec![r.int(0), r.int(-1)]];
        assert_eq!(r.hermitian_signature(h), (-2, 2));
    }
}
