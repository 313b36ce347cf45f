//! Factorization of integer polynomials over `Q`.
//!
//! Squarefree reduction, Berlekamp factorization modulo a small prime,
//! quadratic Hensel lifting, and Zassenhaus recombination with degree
//! pruning across several primes.

pub mod hensel;
pub mod modp;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::poly::ZPoly;
use modp::{berlekamp, is_prime, FpPoly};

/// Number of good primes examined before choosing one for lifting.
const PRIME_TRIALS: usize = 6;

/// Irreducible factors of a primitive polynomial with multiplicities.
///
/// Factors are primitive with positive leading coefficient and sorted by
/// degree, then by coefficient vector (ascending powers). The power of `x`
/// is reported as the factor `x` itself.
pub fn factor_primitive(f: &ZPoly) -> Vec<(ZPoly, u32)> {
    assert!(!f.is_zero());
    let mut f = f.primitive_part();
    let mut out = Vec::new();
    let tz = f.trailing_zeros();
    if tz > 0 {
        out.push((ZPoly::from_i64s(&[0, 1]), tz as u32));
        f = f.shift_down(tz);
    }
    if f.degree().unwrap() == 0 {
        return out;
    }
    let sqf = f.squarefree_part();
    let irreducibles = factor_squarefree(&sqf);
    for q in irreducibles {
        let mut mult = 0u32;
        while let Some(next) = f.exact_div(&q) {
            f = next;
            mult += 1;
        }
        debug_assert!(mult > 0);
        out.push((q, mult));
    }
    debug_assert!(f.degree() == Some(0));
    out.sort_by(|a, b| poly_order(&a.0, &b.0));
    out
}

/// Ordering used for deterministic factor lists: degree first, then
/// coefficients from the constant term upwards.
pub fn poly_order(a: &ZPoly, b: &ZPoly) -> std::cmp::Ordering {
    a.degree().cmp(&b.degree()).then_with(|| a.coeffs().cmp(b.coeffs()))
}

/// Factor a primitive squarefree polynomial with positive leading
/// coefficient and nonzero constant term.
pub fn factor_squarefree(f: &ZPoly) -> Vec<ZPoly> {
    let n = f.degree().expect("nonzero");
    if n <= 1 {
        return vec![f.primitive_part()];
    }
    let lc = f.lc();
    // Collect a few good primes and their factor degree patterns.
    let mut best: Option<(u64, Vec<FpPoly>)> = None;
    let mut allowed = vec![true; n + 1];
    let mut tried = 0;
    let mut p = 2u64;
    while tried < PRIME_TRIALS {
        p += 1;
        if !is_prime(p) || (&lc % BigInt::from(p)).is_zero() {
            continue;
        }
        let fp = FpPoly::from_zpoly(f, p);
        if fp.gcd(&fp.derivative()).degree() != Some(0) {
            continue;
        }
        tried += 1;
        let facs = berlekamp(&fp.monic());
        let sums = subset_sums(&facs, n);
        for d in 0..=n {
            allowed[d] &= sums[d];
        }
        if best.as_ref().is_none_or(|(_, b)| facs.len() < b.len()) {
            best = Some((p, facs));
        }
        if (1..n).all(|d| !allowed[d]) {
            return vec![f.primitive_part()];
        }
    }
    let (p, facs) = best.expect("some prime is good");
    if facs.len() == 1 {
        return vec![f.primitive_part()];
    }
    // Coefficient bound for factors of f (Mignotte), times |lc| for the
    // scaled candidates, doubled for the symmetric residue range.
    let bound = BigInt::from(2u32) * BigInt::from(n + 1) * (BigInt::one() << n) * f.max_norm() * lc.abs();
    let (lifted, modulus) = hensel::lift(f, &facs, p, &bound);
    recombine(f.clone(), lifted, &modulus, &allowed)
}

fn subset_sums(facs: &[FpPoly], n: usize) -> Vec<bool> {
    let mut reach = vec![false; n + 1];
    reach[0] = true;
    for g in facs {
        let d = g.degree().unwrap();
        for s in (d..=n).rev() {
            if reach[s - d] {
                reach[s] = true;
            }
        }
    }
    reach
}

fn symmetric(x: &BigInt, m: &BigInt) -> BigInt {
    let r = x.mod_floor(m);
    if &r * 2 > *m {
        r - m
    } else {
        r
    }
}

fn product_mod(parts: &[&Vec<BigInt>], scale: &BigInt, m: &BigInt) -> Vec<BigInt> {
    let mut acc = vec![scale.mod_floor(m)];
    for g in parts {
        let mut out = vec![BigInt::zero(); acc.len() + g.len() - 1];
        for (i, a) in acc.iter().enumerate() {
            for (j, b) in g.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        acc = out.into_iter().map(|c| c.mod_floor(m)).collect();
    }
    acc
}

fn recombine(mut f: ZPoly, mut lifted: Vec<Vec<BigInt>>, modulus: &BigInt, allowed: &[bool]) -> Vec<ZPoly> {
    let mut found = Vec::new();
    let mut size = 1;
    'sizes: while 2 * size <= lifted.len() {
        let r = lifted.len();
        let mut combo: Vec<usize> = (0..size).collect();
        loop {
            let deg: usize = combo.iter().map(|&i| lifted[i].len() - 1).sum();
            if allowed[deg] {
                if let Some(g) = try_candidate(&f, &lifted, &combo, modulus) {
                    f = f.exact_div(&g).unwrap().primitive_part();
                    for &i in combo.iter().rev() {
                        lifted.remove(i);
                    }
                    found.push(g);
                    continue 'sizes;
                }
            }
            if !next_combination(&mut combo, r) {
                break;
            }
        }
        size += 1;
    }
    if f.degree().unwrap_or(0) > 0 {
        found.push(f.primitive_part());
    }
    found
}

fn try_candidate(f: &ZPoly, lifted: &[Vec<BigInt>], combo: &[usize], m: &BigInt) -> Option<ZPoly> {
    let lc = f.lc();
    // Constant-term test before forming the full product.
    let mut c0 = lc.mod_floor(m);
    for &i in combo {
        c0 = (c0 * &lifted[i][0]).mod_floor(m);
    }
    let c0 = symmetric(&c0, m);
    if c0.is_zero() || !(&lc * f.coeff(0)).is_multiple_of(&c0) {
        return None;
    }
    let parts: Vec<&Vec<BigInt>> = combo.iter().map(|&i| &lifted[i]).collect();
    let prod = product_mod(&parts, &lc, m);
    let cand = ZPoly::new(prod.iter().map(|c| symmetric(c, m)).collect()).primitive_part();
    f.exact_div(&cand).map(|_| cand)
}

fn next_combination(c: &mut [usize], n: usize) -> bool {
    let k = c.len();
    let mut i = k;
    while i > 0 {
        i -= 1;
        if c[i] < n - k + i {
            c[i] += 1;
            for j in i + 1..k {
                c[j] = c[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> ZPoly {
        ZPoly::from_i64s(c)
    }

    #[test]
    fn golden_ratio_quartic() {
        let fs = factor_primitive(&p(&[1, 0, -3, 0, 1]));
        assert_eq!(fs, vec![(p(&[-1, -1, 1]), 1), (p(&[-1, 1, 1]), 1)]);
    }

    #[test]
    fn irreducible_quadratics() {
        assert_eq!(factor_primitive(&p(&[1, -1, 1])), vec![(p(&[1, -1, 1]), 1)]);
        assert_eq!(factor_primitive(&p(&[3, -7, 3])), vec![(p(&[3, -7, 3]), 1)]);
    }

    #[test]
    fn repeated_and_nonmonic_factors() {
        let a = p(&[-2, 1]);
        let b = p(&[-1, 2]);
        let c = p(&[3, -7, 3]);
        let f = &(&(&a * &a) * &b) * &(&c * &p(&[0, 0, 1]));
        let fs = factor_primitive(&f);
        assert_eq!(fs, vec![(a, 2), (b, 1), (p(&[0, 1]), 2), (c, 1)]);
    }

    #[test]
    fn cyclotomic_product_degree_64() {
        // x^64 - 1 = prod over d | 64 of the d-th cyclotomic polynomial
        let mut c = vec![0i64; 65];
        c[0] = -1;
        c[64] = 1;
        let fs = factor_primitive(&p(&c));
        let degrees: Vec<usize> = fs.iter().map(|(q, _)| q.degree().unwrap()).collect();
        assert_eq!(degrees, vec![1, 1, 2, 4, 8, 16, 32]);
        assert!(fs.iter().all(|(_, m)| *m == 1));
    }
}
