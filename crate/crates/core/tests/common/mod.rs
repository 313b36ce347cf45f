//! Strategies, oracles and checks shared by the property and acceptance
//! suites.
#![allow(dead_code, clippy::needless_range_loop)]

use concordance::catalog::Catalog;
use concordance::cyclotomic::cyclotomic_poly;
use concordance::matrix::IntMatrix;
use concordance::surgery::smith_normal_form;
use concordance::{fox_milnor_pairing, FoxMilnor, LaurentPoly, RootOfUnity, SeifertMatrix};
use nalgebra::{Complex, DMatrix};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;
use proptest::test_runner::RngSeed;

pub fn config(cases: u32) -> ProptestConfig {
    ProptestConfig {
        cases,
        rng_seed: RngSeed::Fixed(0x00c0_ffee),
        failure_persistence: None,
        ..ProptestConfig::default()
    }
}

pub fn lp(low: i64, c: &[i64]) -> LaurentPoly {
    LaurentPoly::from_coeffs(low, c)
}

pub fn small_poly(max_len: usize, bound: i64) -> impl Strategy<Value = LaurentPoly> {
    (prop::collection::vec(-bound..=bound, 1..=max_len), -3i64..=3)
        .prop_filter("nonzero", |(c, _)| c.iter().any(|&x| x != 0))
        .prop_map(|(c, low)| lp(low, &c))
}

// ---------- brute-force Fox–Milnor oracle ----------

/// Coefficients of `a` from its lowest term, as i64.
pub fn dense(a: &LaurentPoly) -> Vec<i64> {
    let lo = a.low_exp().unwrap();
    let hi = a.high_exp().unwrap();
    (lo..=hi).map(|e| i64::try_from(a.coeff(e)).unwrap()).collect()
}

/// Does `a = ±t^g f(t) f(t^-1)` for some integer polynomial `f`? The
/// middle coefficient of `f(t) f(t^-1)` is `Σ fᵢ²`, which bounds the
/// search completely.
pub fn brute_force_pairing(a: &LaurentPoly) -> bool {
    let c = dense(a);
    let sym = c.iter().eq(c.iter().rev()) || c.iter().eq(c.iter().rev().map(|x| -x).collect::<Vec<_>>().iter());
    if (c.len() - 1) % 2 == 1 || !sym {
        return false;
    }
    let d = (c.len() - 1) / 2;
    let mid = c[d];
    if mid == 0 {
        return false;
    }
    let target: Vec<i64> = c.iter().map(|x| x * mid.signum()).collect();
    let mut f = vec![0i64; d + 1];
    fn search(f: &mut Vec<i64>, i: usize, left: i64, target: &[i64], d: usize) -> bool {
        if i == f.len() {
            if left != 0 || f[0] == 0 || f[d] == 0 {
                return false;
            }
            return (0..=d).all(|k| (0..=d - k).map(|j| f[j] * f[j + k]).sum::<i64>() == target[d + k]);
        }
        let r = (left as f64).sqrt() as i64 + 1;
        for v in -r..=r {
            if v * v <= left {
                f[i] = v;
                if search(f, i + 1, left - v * v, target, d) {
                    return true;
                }
            }
        }
        f[i] = 0;
        false
    }
    search(&mut f, 0, mid.abs(), &target, d)
}

pub fn fm_input() -> impl Strategy<Value = LaurentPoly> {
    prop_oneof![
        (small_poly(5, 3), small_poly(5, 3)).prop_map(|(a, b)| &a * &b),
        small_poly(5, 3).prop_map(|a| &a * &a.reciprocal()),
        (small_poly(5, 3), small_poly(5, 3)).prop_map(|(a, b)| &a * &b.reciprocal()),
        (small_poly(3, 3), small_poly(3, 3)).prop_map(|(a, b)| &(&a * &a.reciprocal()) * &(&b * &b)),
        (small_poly(3, 3), any::<bool>()).prop_map(|(a, neg)| {
            let x = &a * &a.reciprocal();
            let x = &x * &lp(0, &[1, -1, 1]);
            if neg {
                -x
            } else {
                x
            }
        }),
    ]
}

pub fn seifert_strategy() -> impl Strategy<Value = SeifertMatrix> {
    (1usize..=2)
        .prop_flat_map(|g| prop::collection::vec(-2i64..=2, (2 * g) * (2 * g + 1) / 2).prop_map(move |s| (g, s)))
        .prop_map(|(g, s)| {
            let n = 2 * g;
            let mut rows = vec![vec![0i64; n]; n];
            let mut it = s.into_iter();
            for i in 0..n {
                for j in i..n {
                    let x = it.next().unwrap();
                    rows[i][j] += x;
                    if i != j {
                        rows[j][i] += x;
                    }
                }
            }
            for h in 0..g {
                rows[2 * h][2 * h + 1] += 1;
            }
            SeifertMatrix::from_rows(&rows).unwrap()
        })
}

/// Signature of `(1 - ω) V + (1 - ω̄) Vᵀ` from floating-point eigenvalues.
pub fn float_signature(v: &SeifertMatrix, turns: f64) -> Option<i64> {
    let rows = v.to_rows();
    let n = rows.len();
    if n == 0 {
        return Some(0);
    }
    let w = Complex::from_polar(1.0, std::f64::consts::TAU * turns);
    let one = Complex::new(1.0, 0.0);
    let val = |i: usize, j: usize| rows[i][j].to_string().parse::<f64>().unwrap();
    let h = DMatrix::from_fn(n, n, |i, j| (one - w) * val(i, j) + (one - w.conj()) * val(j, i));
    let eig = h.symmetric_eigen().eigenvalues;
    let scale = eig.iter().fold(1.0f64, |m, e| m.max(e.abs()));
    if eig.iter().any(|e| e.abs() < 1e-9 * scale) {
        return None;
    }
    Some(eig.iter().map(|e| e.signum() as i64).sum())
}

pub fn catalog_matrices() -> Vec<SeifertMatrix> {
    Catalog::bundled()
        .entries()
        .iter()
        .filter_map(|e| e.profile.as_ref()?.seifert().cloned())
        .collect()
}

pub fn valid_root(v: &SeifertMatrix, w: &RootOfUnity) -> bool {
    !w.is_one() && v.levine_tristram(w).is_ok()
}

/// Exact divisibility of `δ` by the cyclotomic polynomial of order `b`.
pub fn cyclotomic_divides(delta: &LaurentPoly, b: u64) -> bool {
    let (_, p) = delta.to_zpoly();
    p.exact_div(&cyclotomic_poly(b)).is_some()
}

pub fn int_matrix(max: usize, bound: i64) -> impl Strategy<Value = IntMatrix> {
    (1..=max, 1..=max).prop_flat_map(move |(r, c)| {
        prop::collection::vec(-bound..=bound, r * c)
            .prop_map(move |d| IntMatrix::from_row_major(r, c, d.into_iter().map(BigInt::from).collect()))
    })
}

/// Factorization multiplies back and has irreducible factors.
pub fn check_factorization(x: &LaurentPoly) -> Result<(), TestCaseError> {
    let fac = x.factor().unwrap();
    prop_assert_eq!(fac.expand(), x.clone());
    for (q, _) in &fac.factors {
        prop_assert!(q.factor().unwrap().is_irreducible(), "{} not irreducible", q);
    }
    Ok(())
}

/// The pairing rule agrees with the brute-force search, and a returned
/// witness really pairs.
pub fn check_fox_milnor(a: &LaurentPoly) -> Result<(), TestCaseError> {
    let lib = fox_milnor_pairing(a).unwrap();
    prop_assert_eq!(lib.is_paired(), brute_force_pairing(a), "{}", a);
    if let FoxMilnor::Paired { witness } = lib {
        prop_assert!((&witness * &witness.reciprocal()).doteq(a));
    }
    Ok(())
}

/// Conjugation symmetry, mirror negation, evenness, additivity and the
/// floating-point eigenvalue count at `ω`, over the catalog knots. Returns
/// the number of knots for which `ω` was valid.
pub fn check_signature_symmetries(w: &RootOfUnity) -> Result<usize, TestCaseError> {
    let ms = catalog_matrices();
    let mut valid = 0;
    for (i, v) in ms.iter().enumerate() {
        if !valid_root(v, w) {
            continue;
        }
        valid += 1;
        let s = v.levine_tristram(w).unwrap();
        prop_assert_eq!(s, v.levine_tristram(&w.conj()).unwrap());
        prop_assert_eq!(v.mirror().levine_tristram(w).unwrap(), -s);
        prop_assert_eq!(s.rem_euclid(2), 0);
        if let Some(f) = float_signature(v, w.turns()) {
            prop_assert_eq!(s, f);
        }
        let u = &ms[(i + 1) % ms.len()];
        if valid_root(u, w) {
            prop_assert_eq!(
                v.block_sum(u).levine_tristram(w).unwrap(),
                s + u.levine_tristram(w).unwrap()
            );
        }
    }
    Ok(valid)
}

/// `U M V = D` with `U`, `V` unimodular and `D` a divisibility chain.
pub fn check_smith(m: &IntMatrix) -> Result<(), TestCaseError> {
    let s = smith_normal_form(m);
    prop_assert_eq!(s.u.mul(m).mul(&s.v), s.d.clone());
    prop_assert!(s.u.det().abs().is_one());
    prop_assert!(s.v.det().abs().is_one());
    for i in 0..s.d.rows() {
        for j in 0..s.d.cols() {
            if i != j {
                prop_assert!(s.d[(i, j)].is_zero());
            }
        }
    }
    let diag = s.diagonal();
    for w in diag.windows(2) {
        prop_assert!(!w[0].is_negative());
        if w[0].is_zero() {
            prop_assert!(w[1].is_zero());
        } else {
            prop_assert!(w[1].is_multiple_of(&w[0]));
        }
    }
    Ok(())
}
