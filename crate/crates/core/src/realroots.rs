//! Real root isolation for integer polynomials by Sturm sequences, with
//! dyadic rational endpoints.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::poly::ZPoly;

/// Dyadic rational `num / 2^exp`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Dyadic {
    pub num: BigInt,
    pub exp: u32,
}

impl Dyadic {
    /// Reduced form: `num` is odd unless `exp = 0`.
    pub fn new(num: impl Into<BigInt>, mut exp: u32) -> Self {
        let mut num = num.into();
        if num.is_zero() {
            return Dyadic { num, exp: 0 };
        }
        while exp > 0 && num.is_even() {
            num >>= 1;
            exp -= 1;
        }
        Dyadic { num, exp }
    }

    pub fn int(v: i64) -> Self {
        Dyadic::new(v, 0)
    }

    fn at_exp(&self, e: u32) -> BigInt {
        debug_assert!(e >= self.exp);
        &self.num << (e - self.exp)
    }

    pub fn midpoint(&self, o: &Dyadic) -> Dyadic {
        let e = self.exp.max(o.exp);
        Dyadic::new(self.at_exp(e) + o.at_exp(e), e + 1)
    }

    pub fn to_f64(&self) -> f64 {
        let s = self.num.to_string().parse::<f64>().unwrap_or(f64::NAN);
        s / 2f64.powi(self.exp as i32)
    }

    /// Compare with `num / 2^exp` given as a raw scaled integer.
    pub fn cmp_scaled(&self, num: &BigInt, exp: u32) -> Ordering {
        let e = self.exp.max(exp);
        self.at_exp(e).cmp(&(num << (e - exp)))
    }
}

impl PartialOrd for Dyadic {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

impl Ord for Dyadic {
    fn cmp(&self, o: &Self) -> Ordering {
        self.cmp_scaled(&o.num, o.exp)
    }
}

/// Sign of `p` at a dyadic point, computed exactly.
pub fn sign_at(p: &ZPoly, x: &Dyadic) -> Ordering {
    if p.is_zero() {
        return Ordering::Equal;
    }
    // Horner on 2^(exp·deg) p(num / 2^exp) = Σ c_i num^i 2^(exp(deg-i))
    let mut acc = BigInt::zero();
    let mut scale = BigInt::one();
    for c in p.coeffs().iter().rev() {
        acc = acc * &x.num + c * &scale;
        scale <<= x.exp;
    }
    acc.sign().cmp_zero()
}

trait SignCmp {
    fn cmp_zero(self) -> Ordering;
}

impl SignCmp for num_bigint::Sign {
    fn cmp_zero(self) -> Ordering {
        match self {
            num_bigint::Sign::Minus => Ordering::Less,
            num_bigint::Sign::NoSign => Ordering::Equal,
            num_bigint::Sign::Plus => Ordering::Greater,
        }
    }
}

/// Sturm sequence of a squarefree polynomial, scaled by positive constants.
pub fn sturm_sequence(p: &ZPoly) -> Vec<ZPoly> {
    let mut seq = vec![p.clone()];
    let dp = p.derivative();
    if dp.is_zero() {
        return seq;
    }
    seq.push(dp);
    loop {
        let n = seq.len();
        let (a, b) = (&seq[n - 2], &seq[n - 1]);
        if b.degree() == Some(0) {
            break;
        }
        // prem = lc(b)^(δ+1) a mod b; the Sturm step needs -rem(a, b).
        let delta = a.degree().unwrap() - b.degree().unwrap();
        let r = a.pseudo_rem(b);
        if r.is_zero() {
            break;
        }
        let flip = b.lc().is_negative() && (delta + 1) % 2 == 1;
        let mut next = if flip { r } else { -&r };
        let c = next.content();
        next = next.div_scalar(&c);
        seq.push(next);
    }
    seq
}

fn sign_changes(seq: &[ZPoly], x: &Dyadic) -> usize {
    let mut last = Ordering::Equal;
    let mut count = 0;
    for q in seq {
        let s = sign_at(q, x);
        if s == Ordering::Equal {
            continue;
        }
        if last != Ordering::Equal && s != last {
            count += 1;
        }
        last = s;
    }
    count
}

/// Isolating box for a real root: either an exact dyadic root
/// (`lo == hi`) or an open interval `(lo, hi)` containing exactly one
/// root, with the polynomial of opposite nonzero signs at the endpoints.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootBox {
    pub lo: Dyadic,
    pub hi: Dyadic,
}

impl RootBox {
    pub fn is_exact(&self) -> bool {
        self.lo == self.hi
    }

    /// Halve the box (`p` must be the squarefree polynomial it isolates).
    pub fn refine(&mut self, p: &ZPoly) {
        if self.is_exact() {
            return;
        }
        let mid = self.lo.midpoint(&self.hi);
        let sm = sign_at(p, &mid);
        if sm == Ordering::Equal {
            self.lo = mid.clone();
            self.hi = mid;
        } else if sm == sign_at(p, &self.lo) {
            self.lo = mid;
        } else {
            self.hi = mid;
        }
    }

    pub fn midpoint_f64(&self) -> f64 {
        (self.lo.to_f64() + self.hi.to_f64()) / 2.0
    }
}

/// Isolate the distinct real roots of `p` in `(lo, hi]`, in increasing
/// order.
pub fn isolate_roots(p: &ZPoly, lo: &Dyadic, hi: &Dyadic) -> Vec<RootBox> {
    let sqf = p.squarefree_part();
    if sqf.degree().unwrap_or(0) == 0 {
        return Vec::new();
    }
    let seq = sturm_sequence(&sqf);
    let count = |a: &Dyadic, b: &Dyadic| sign_changes(&seq, a) - sign_changes(&seq, b);
    let mut out = Vec::new();
    let mut stack = vec![(lo.clone(), hi.clone())];
    while let Some((a, b)) = stack.pop() {
        let n = count(&a, &b);
        if n == 0 {
            continue;
        }
        if n == 1 {
            if sign_at(&sqf, &b) == Ordering::Equal {
                out.push(RootBox { lo: b.clone(), hi: b });
                continue;
            }
            // a root sitting at the excluded end `a` forces another split
            if sign_at(&sqf, &a) != Ordering::Equal {
                out.push(RootBox { lo: a, hi: b });
                continue;
            }
        }
        let mid = a.midpoint(&b);
        stack.push((mid.clone(), b));
        stack.push((a, mid));
    }
    out.sort_by(|x, y| x.lo.cmp(&y.lo));
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> ZPoly {
        ZPoly::from_i64s(c)
    }

    #[test]
    fn dyadic_ordering_and_midpoint() {
        let a = Dyadic::new(1, 1);
        let b = Dyadic::new(3, 2);
        assert!(a < b);
        assert_eq!(a.midpoint(&b), Dyadic::new(5, 3));
    }

    #[test]
    fn sign_evaluation() {
        let q = p(&[-1, 0, 2]); // 2x^2 - 1
        assert_eq!(sign_at(&q, &Dyadic::new(1, 1)), Ordering::Less);
        assert_eq!(sign_at(&q, &Dyadic::int(1)), Ordering::Greater);
    }

    #[test]
    fn isolates_golden_roots() {
        // x^2 - x - 1: roots (1 ± √5)/2
        let q = p(&[-1, -1, 1]);
        let roots = isolate_roots(&q, &Dyadic::int(-2), &Dyadic::int(2));
        assert_eq!(roots.len(), 2);
        let mut r = roots[1].clone();
        for _ in 0..40 {
            r.refine(&q);
        }
        assert!((r.midpoint_f64() - 1.618033988749895).abs() < 1e-9);
    }

    #[test]
    fn exact_dyadic_roots_and_multiplicity() {
        // (x - 1)^2 (x + 1/2) (x^2 + 1)
        let q = &(&(&p(&[-1, 1]) * &p(&[-1, 1])) * &p(&[1, 2])) * &p(&[1, 0, 1]);
        let roots = isolate_roots(&q, &Dyadic::int(-2), &Dyadic::int(2));
        assert_eq!(roots.len(), 2);
        let sqf = q.squarefree_part();
        let roots: Vec<RootBox> = roots
            .into_iter()
            .map(|mut r| {
                for _ in 0..8 {
                    r.refine(&sqf);
                }
                r
            })
            .collect();
        assert!(roots.iter().all(|r| r.is_exact()));
        assert_eq!(roots[0].lo, Dyadic::new(-1, 1));
        assert_eq!(roots[1].lo, Dyadic::int(1));
    }

    #[test]
    fn no_roots_in_window() {
        // x^2 - 5 has roots ±√5 outside [-2, 2]
        assert!(isolate_roots(&p(&[-5, 0, 1]), &Dyadic::int(-2), &Dyadic::int(2)).is_empty());
    }

    #[test]
    fn sturm_sequence_ends_with_correct_sign() {
        // 2 D_6(x) - 5, the cable of 2t^2 - 5 + 2t^-2: roots ±2.013 only
        let q = p(&[-9, 0, 18, 0, -12, 0, 2]);
        assert_eq!(sturm_sequence(&q).last(), Some(&p(&[1])));
        assert!(isolate_roots(&q, &Dyadic::int(-2), &Dyadic::int(2)).is_empty());
    }
}
