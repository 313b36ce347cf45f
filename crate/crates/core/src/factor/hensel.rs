//! Quadratic Hensel lifting of a modular factorization to `Z / p^a`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::modp::{inv_mod, FpPoly};
use crate::poly::ZPoly;

type Coeffs = Vec<BigInt>;

fn trim(mut a: Coeffs) -> Coeffs {
    while a.last().is_some_and(|c| c.is_zero()) {
        a.pop();
    }
    a
}

fn reduce(a: &[BigInt], m: &BigInt) -> Coeffs {
    trim(a.iter().map(|c| c.mod_floor(m)).collect())
}

fn add(a: &[BigInt], b: &[BigInt], m: &BigInt) -> Coeffs {
    let n = a.len().max(b.len());
    let z = BigInt::zero();
    trim(
        (0..n)
            .map(|i| (a.get(i).unwrap_or(&z) + b.get(i).unwrap_or(&z)).mod_floor(m))
            .collect(),
    )
}

fn sub(a: &[BigInt], b: &[BigInt], m: &BigInt) -> Coeffs {
    let n = a.len().max(b.len());
    let z = BigInt::zero();
    trim(
        (0..n)
            .map(|i| (a.get(i).unwrap_or(&z) - b.get(i).unwrap_or(&z)).mod_floor(m))
            .collect(),
    )
}

fn mul(a: &[BigInt], b: &[BigInt], m: &BigInt) -> Coeffs {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    reduce(&out, m)
}

/// Division with remainder by a monic polynomial modulo `m`.
fn divrem_monic(a: &[BigInt], h: &[BigInt], m: &BigInt) -> (Coeffs, Coeffs) {
    let dh = h.len() - 1;
    debug_assert!(h[dh].is_one());
    let mut rem: Coeffs = a.to_vec();
    if rem.len() <= dh {
        return (Vec::new(), trim(rem));
    }
    let mut q = vec![BigInt::zero(); rem.len() - dh];
    for i in (0..q.len()).rev() {
        let t = rem[i + dh].mod_floor(m);
        if t.is_zero() {
            continue;
        }
        for (j, c) in h.iter().enumerate() {
            rem[i + j] = (&rem[i + j] - &t * c).mod_floor(m);
        }
        q[i] = t;
    }
    (trim(q), reduce(&rem, m))
}

fn from_fp(f: &FpPoly) -> Coeffs {
    f.c.iter().map(|&x| BigInt::from(x)).collect()
}

/// One quadratic lifting step: from `f = g h`, `s g + t h = 1` modulo `m`
/// to the same identities modulo `m^2`. `h` stays monic.
fn step(
    f: &[BigInt],
    g: &[BigInt],
    h: &[BigInt],
    s: &[BigInt],
    t: &[BigInt],
    m: &BigInt,
) -> (Coeffs, Coeffs, Coeffs, Coeffs) {
    let m2 = m * m;
    let f = reduce(f, &m2);
    let e = sub(&f, &mul(g, h, &m2), &m2);
    let (q, r) = divrem_monic(&mul(s, &e, &m2), h, &m2);
    let g1 = add(&add(g, &mul(t, &e, &m2), &m2), &mul(&q, g, &m2), &m2);
    let h1 = add(h, &r, &m2);
    let b = sub(&add(&mul(s, &g1, &m2), &mul(t, &h1, &m2), &m2), &[BigInt::one()], &m2);
    let (c, d) = divrem_monic(&mul(s, &b, &m2), &h1, &m2);
    let s1 = sub(s, &d, &m2);
    let t1 = sub(&sub(t, &mul(t, &b, &m2), &m2), &mul(&c, &g1, &m2), &m2);
    (g1, h1, s1, t1)
}

/// Lift the monic modular factors of `f` (with `f = lc(f) * prod(factors)`
/// modulo `p`) to monic factors modulo `p^(2^k)`, where the returned modulus
/// is the first such power at least `bound`.
pub fn lift(f: &ZPoly, factors: &[FpPoly], p: u64, bound: &BigInt) -> (Vec<Coeffs>, BigInt) {
    let pb = BigInt::from(p);
    let mut modulus = pb.clone();
    let mut steps = 0;
    while &modulus < bound {
        modulus = &modulus * &modulus;
        steps += 1;
    }
    let target = reduce(f.coeffs(), &modulus);
    let mut out = Vec::with_capacity(factors.len());
    lift_rec(&target, factors, &pb, steps, &modulus, &mut out);
    (out, modulus)
}

fn lift_rec(target: &[BigInt], factors: &[FpPoly], p: &BigInt, steps: usize, modulus: &BigInt, out: &mut Vec<Coeffs>) {
    let lc = target.last().expect("nonzero target").clone();
    if factors.len() == 1 {
        // monic associate modulo the full modulus
        let inv = lc.modinv(modulus).expect("leading coefficient is a unit");
        out.push(reduce(&target.iter().map(|c| c * &inv).collect::<Vec<_>>(), modulus));
        return;
    }
    let pu = factors[0].p;
    let (left, right) = factors.split_at(factors.len() / 2);
    let lc_p = lc.mod_floor(p);
    let lc_small: u64 = lc_p.try_into().unwrap();
    let mut g0 = FpPoly::new(pu, vec![lc_small % pu]);
    for f in left {
        g0 = g0.mul(f);
    }
    let mut h0 = FpPoly::new(pu, vec![1]);
    for f in right {
        h0 = h0.mul(f);
    }
    let (gcd, s0, t0) = FpPoly::ext_gcd(&g0, &h0);
    debug_assert_eq!(gcd.c, vec![1]);
    debug_assert!(inv_mod(lc_small, pu) != 0);
    let (mut g, mut h, mut s, mut t) = (from_fp(&g0), from_fp(&h0), from_fp(&s0), from_fp(&t0));
    let mut m = p.clone();
    for _ in 0..steps {
        let next = step(target, &g, &h, &s, &t, &m);
        g = next.0;
        h = next.1;
        s = next.2;
        t = next.3;
        m = &m * &m;
    }
    lift_rec(&g, left, p, steps, modulus, out);
    lift_rec(&h, right, p, steps, modulus, out);
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::factor::modp::berlekamp;

    #[test]
    fn lifted_product_matches_target() {
        let f = ZPoly::from_i64s(&[3, 0, -7, 0, 3]);
        let p = 11;
        let fp = FpPoly::from_zpoly(&f, p).monic();
        let facs = berlekamp(&fp);
        let (lifted, m) = lift(&f, &facs, p, &BigInt::from(10_000_000u64));
        let mut prod = vec![BigInt::from(3)];
        for g in &lifted {
            assert!(g.last().unwrap().is_one());
            prod = mul(&prod, g, &m);
        }
        assert_eq!(prod, reduce(f.coeffs(), &m));
    }
}
