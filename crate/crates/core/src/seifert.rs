//! Seifert matrices and their classical invariants: the Alexander
//! polynomial, Levine–Tristram signatures at roots of unity, and the
//! signature function on the unit circle.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::cyclotomic::{cos_turns, cyclotomic_poly, totient, CycloRing};
use crate::error::{Error, Result};
use crate::laurent::LaurentPoly;
use crate::matrix::{det_linear_pencil, IntMatrix};
use crate::poly::ZPoly;
use crate::realroots::{isolate_roots, Dyadic, RootBox};

/// `ω = exp(2πi a/b)` with `gcd(a, b) = 1` and `0 <= a < b`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RootOfUnity {
    num: u64,
    den: u64,
}

impl RootOfUnity {
    /// Reduce `a/b` modulo 1. Fails for `b <= 0`.
    pub fn new(a: i64, b: i64) -> Result<Self> {
        if b <= 0 {
            return Err(Error::InvalidRoot { num: a, den: b });
        }
        let a = a.rem_euclid(b);
        let g = a.gcd(&b).max(1);
        Ok(RootOfUnity {
            num: (a / g) as u64,
            den: (b / g) as u64,
        })
    }

    pub fn one() -> Self {
        RootOfUnity { num: 0, den: 1 }
    }

    pub fn num(&self) -> u64 {
        self.num
    }

    /// The order of `ω` in the circle group.
    pub fn den(&self) -> u64 {
        self.den
    }

    pub fn is_one(&self) -> bool {
        self.den == 1
    }

    pub fn pow(&self, p: u64) -> Self {
        let a = ((self.num as u128 * p as u128) % self.den as u128) as i64;
        Self::new(a, self.den as i64).unwrap()
    }

    pub fn conj(&self) -> Self {
        Self::new(-(self.num as i64), self.den as i64).unwrap()
    }

    /// Angle in turns folded into `[0, 1/2]`; equal for `ω` and `ω̄`.
    pub fn folded_num(&self) -> u64 {
        self.num.min(self.den - self.num)
    }

    pub fn turns(&self) -> f64 {
        self.num as f64 / self.den as f64
    }
}

impl fmt::Display for RootOfUnity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.num, self.den)
    }
}

impl FromStr for RootOfUnity {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::InvalidRoot { num: 0, den: 0 };
        let (a, b) = s.trim().split_once('/').ok_or_else(bad)?;
        let a: i64 = a.trim().parse().map_err(|_| bad())?;
        let b: i64 = b.trim().parse().map_err(|_| bad())?;
        Self::new(a, b)
    }
}

impl Serialize for RootOfUnity {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// `true` iff `ω` is a root of `delta` (exactly: `Φ_b` divides it).
pub fn is_root_of(delta: &LaurentPoly, w: &RootOfUnity) -> bool {
    if delta.is_zero() {
        return true;
    }
    let (_, p) = delta.to_zpoly();
    if (p.degree().unwrap() as u64) < totient(w.den) {
        return false;
    }
    p.exact_div(&cyclotomic_poly(w.den)).is_some()
}

/// Square integer matrix `V` with `|det(V - Vᵀ)| = 1`.
#[derive(Clone, PartialEq, Eq)]
pub struct SeifertMatrix {
    matrix: IntMatrix,
    alexander: LaurentPoly,
}

impl SeifertMatrix {
    pub fn new(matrix: IntMatrix) -> Result<Self> {
        if !matrix.is_square() {
            return Err(Error::InvalidSeifert(format!(
                "{}x{} is not square",
                matrix.rows(),
                matrix.cols()
            )));
        }
        let d = matrix.sub(&matrix.transpose()).det();
        if !d.abs().is_one() {
            return Err(Error::InvalidSeifert(format!("det(V - V^T) = {d}")));
        }
        let p = det_linear_pencil(&matrix, &matrix.transpose().neg());
        let alexander = LaurentPoly::from_zpoly(&p, 0).centered();
        Ok(SeifertMatrix { matrix, alexander })
    }

    pub fn from_rows<T: Into<BigInt> + Clone>(rows: &[Vec<T>]) -> Result<Self> {
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return Err(Error::InvalidSeifert("rows of unequal length".into()));
        }
        Self::new(IntMatrix::from_rows(rows))
    }

    /// The unknot's empty matrix.
    pub fn empty() -> Self {
        Self::new(IntMatrix::zeros(0, 0)).unwrap()
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.matrix
    }

    pub fn size(&self) -> usize {
        self.matrix.rows()
    }

    pub fn genus(&self) -> usize {
        self.size() / 2
    }

    /// `det(V - tVᵀ)`, centred with positive leading coefficient.
    pub fn alexander(&self) -> &LaurentPoly {
        &self.alexander
    }

    /// Signature of `(1-ω)V + (1-ω̄)Vᵀ`.
    pub fn levine_tristram(&self, w: &RootOfUnity) -> Result<i64> {
        if w.is_one() {
            return Err(Error::OmegaIsOne);
        }
        if is_root_of(&self.alexander, w) {
            return Err(Error::SingularAtOmega {
                num: w.num as i64,
                den: w.den as i64,
            });
        }
        let ring = CycloRing::new(w.num, w.den);
        let a = ring.sub(&ring.int(1), &ring.omega_pow(1));
        let a_bar = ring.conj(&a);
        let n = self.size();
        let h = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        ring.add(
                            &ring.scale(&a, &self.matrix[(i, j)]),
                            &ring.scale(&a_bar, &self.matrix[(j, i)]),
                        )
                    })
                    .collect()
            })
            .collect();
        let (sig, rank) = ring.hermitian_signature(h);
        assert_eq!(rank, n, "form is nonsingular away from Alexander roots");
        Ok(sig)
    }

    pub fn signature_function(&self) -> SignatureFunction {
        SignatureFunction::from_evaluator(self.alexander.clone(), |w| {
            self.levine_tristram(w).expect("sample avoids jumps")
        })
    }

    /// Seifert matrix of the connected sum.
    pub fn block_sum(&self, other: &SeifertMatrix) -> SeifertMatrix {
        Self::new(self.matrix.block_sum(&other.matrix)).expect("block sum stays valid")
    }

    /// Seifert matrix of the mirror image, `-Vᵀ`.
    pub fn mirror(&self) -> SeifertMatrix {
        Self::new(self.matrix.transpose().neg()).expect("mirror stays valid")
    }

    pub fn to_rows(&self) -> Vec<Vec<BigInt>> {
        self.matrix.to_rows()
    }
}

impl fmt::Debug for SeifertMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SeifertMatrix({:?})", self.matrix)
    }
}

#[derive(Serialize, Deserialize)]
#[serde(transparent)]
struct Rows(#[serde(with = "crate::serde_int::matrix")] Vec<Vec<BigInt>>);

impl Serialize for SeifertMatrix {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        Rows(self.to_rows()).serialize(s)
    }
}

impl<'de> Deserialize<'de> for SeifertMatrix {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let rows = Rows::deserialize(d)?.0;
        SeifertMatrix::from_rows(&rows).map_err(serde::de::Error::custom)
    }
}

/// Where a point of the circle sits relative to the jump set.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Location {
    /// Inside the arc with this index (arcs ordered by angle on `[0, π]`).
    Arc(usize),
    /// At the jump with this index.
    Jump(usize),
}

/// Constant value on an open arc, with the root of unity used to compute it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ArcValue {
    pub value: i64,
    pub sample: RootOfUnity,
}

/// Piecewise-constant function on the unit circle, symmetric under
/// conjugation, with jumps only at unit roots of its jump polynomial.
///
/// On the circle `δ(e^{iθ})` is a real polynomial in `x = 2cos θ`; its roots
/// in `(-2, 2)` are held as isolating boxes ordered by increasing `θ`.
#[derive(Clone, Debug)]
pub struct SignatureFunction {
    jump_poly: LaurentPoly,
    x_poly: ZPoly,
    roots: Vec<RootBox>,
    arcs: Vec<ArcValue>,
}

/// `R(x)` with `R(2cos θ) = Σ a_j e^{ijθ}` for a symmetric `Σ a_j t^j`.
pub fn chebyshev_form(delta: &LaurentPoly) -> ZPoly {
    let c = delta.centered();
    assert!(c == c.reciprocal(), "jump polynomial must be symmetric");
    let n = c.high_exp().unwrap_or(0).max(0) as usize;
    // D_0 = 2, D_1 = x, D_{j+1} = x D_j - D_{j-1}
    let x = ZPoly::from_i64s(&[0, 1]);
    let mut d_prev = ZPoly::from_i64s(&[2]);
    let mut d_cur = x.clone();
    let mut r = ZPoly::constant(c.coeff(0));
    for j in 1..=n {
        if j > 1 {
            let next = &(&x * &d_cur) - &d_prev;
            d_prev = std::mem::replace(&mut d_cur, next);
        }
        r = &r + &d_cur.scale(&c.coeff(j as i64));
    }
    r
}

impl SignatureFunction {
    /// Build the step function with jumps among the unit roots of
    /// `jump_poly`, evaluating `eval` once per arc at a root of unity
    /// chosen with the smallest denominator, then the smallest numerator.
    pub fn from_evaluator(jump_poly: LaurentPoly, eval: impl Fn(&RootOfUnity) -> i64) -> Self {
        let x_poly = chebyshev_form(&jump_poly).squarefree_part();
        assert!(
            !jump_poly.eval_one().is_zero() && !is_root_of(&jump_poly, &RootOfUnity::new(1, 2).unwrap()),
            "jump polynomial must not vanish at 1 or -1"
        );
        let mut roots = isolate_roots(&x_poly, &Dyadic::int(-2), &Dyadic::int(2));
        roots.reverse();
        let mut sf = SignatureFunction {
            jump_poly,
            x_poly,
            roots,
            arcs: Vec::new(),
        };
        let m = sf.roots.len() + 1;
        let mut samples: Vec<Option<RootOfUnity>> = vec![None; m];
        let mut missing = m;
        let mut b = 2u64;
        while missing > 0 {
            for a in 1..=b / 2 {
                if a.gcd(&b) != 1 {
                    continue;
                }
                let w = RootOfUnity::new(a as i64, b as i64).unwrap();
                if let Location::Arc(i) = sf.locate(&w) {
                    if samples[i].is_none() {
                        samples[i] = Some(w);
                        missing -= 1;
                    }
                }
            }
            b += 1;
        }
        sf.arcs = samples
            .into_iter()
            .map(|w| {
                let w = w.unwrap();
                ArcValue {
                    value: eval(&w),
                    sample: w,
                }
            })
            .collect();
        sf
    }

    /// The identically zero function (the unknot).
    pub fn zero() -> Self {
        Self::from_evaluator(LaurentPoly::one(), |_| 0)
    }

    pub fn jump_poly(&self) -> &LaurentPoly {
        &self.jump_poly
    }

    pub fn arcs(&self) -> &[ArcValue] {
        &self.arcs
    }

    pub fn jump_count(&self) -> usize {
        self.roots.len()
    }

    /// Approximate jump positions in turns, increasing in `[0, 1/2]`.
    pub fn jump_turns(&self) -> Vec<f64> {
        self.roots
            .iter()
            .map(|r| {
                let mut r = r.clone();
                for _ in 0..60 {
                    r.refine(&self.x_poly);
                }
                (r.midpoint_f64() / 2.0).clamp(-1.0, 1.0).acos() / std::f64::consts::TAU
            })
            .collect()
    }

    pub fn is_identically_zero(&self) -> bool {
        self.arcs.iter().all(|a| a.value == 0)
    }

    /// Position of `ω` relative to the jumps, decided exactly.
    pub fn locate(&self, w: &RootOfUnity) -> Location {
        if w.is_one() {
            return Location::Arc(0);
        }
        let jump = is_root_of(&self.jump_poly, w);
        if self.roots.is_empty() && !jump {
            return Location::Arc(0);
        }
        let mut boxes = self.roots.clone();
        let mut bits = 64u32;
        loop {
            let c = cos_turns(w.folded_num(), w.den, bits);
            // x = 2 cos θ lies in [xl, xh] / 2^bits
            let (xl, xh) = (&c.lo * 2, &c.hi * 2);
            let mut undecided = Vec::new();
            let mut above = 0;
            for (k, r) in boxes.iter().enumerate() {
                if r.lo.cmp_scaled(&xh, bits) == Ordering::Greater {
                    above += 1;
                } else if r.hi.cmp_scaled(&xl, bits) != Ordering::Less {
                    undecided.push(k);
                }
            }
            if jump && undecided.len() == 1 {
                // the root of the jump polynomial is the unique candidate
                let k = undecided[0];
                if boxes[k].hi.cmp_scaled(&xl, bits) != Ordering::Less
                    && boxes[k].lo.cmp_scaled(&xh, bits) != Ordering::Greater
                    && boxes.iter().enumerate().all(|(j, r)| {
                        j == k
                            || r.lo.cmp_scaled(&xh, bits) == Ordering::Greater
                            || r.hi.cmp_scaled(&xl, bits) == Ordering::Less
                    })
                {
                    return Location::Jump(k);
                }
            }
            if !jump && undecided.is_empty() {
                return Location::Arc(above);
            }
            assert!(bits < 1 << 16, "location did not converge");
            for k in undecided {
                for _ in 0..8 {
                    boxes[k].refine(&self.x_poly);
                }
            }
            bits *= 2;
        }
    }

    /// Value at `ω`; `ω = 1` gives 0. Jump points are rejected.
    pub fn value_at(&self, w: &RootOfUnity) -> Result<i64> {
        if w.is_one() {
            return Ok(0);
        }
        match self.locate(w) {
            Location::Arc(i) => Ok(self.arcs[i].value),
            Location::Jump(_) => Err(Error::SingularAtOmega {
                num: w.num as i64,
                den: w.den as i64,
            }),
        }
    }

    /// Pullback `ω ↦ σ(ω^p)`, the signature function of the `(p,1)`-cable.
    pub fn cable(&self, p: u32) -> SignatureFunction {
        assert!(p >= 1);
        if p == 1 {
            return self.clone();
        }
        SignatureFunction::from_evaluator(self.jump_poly.substitute_power(p), |w| {
            self.value_at(&w.pow(p as u64)).expect("sample avoids jumps")
        })
    }

    /// The function of the mirror image.
    pub fn negate(&self) -> SignatureFunction {
        let mut out = self.clone();
        for a in &mut out.arcs {
            a.value = -a.value;
        }
        out
    }

    /// The function of the connected sum.
    pub fn sum(&self, other: &SignatureFunction) -> SignatureFunction {
        let jump = &self.jump_poly * &other.jump_poly;
        SignatureFunction::from_evaluator(jump, |w| {
            self.value_at(w).expect("sample avoids jumps") + other.value_at(w).expect("sample avoids jumps")
        })
    }

    /// Tabular summary for reports.
    pub fn table(&self) -> SignatureTable {
        let jumps = self.jump_turns();
        let arcs = self
            .arcs
            .iter()
            .enumerate()
            .map(|(i, a)| ArcRow {
                from_turns: if i == 0 { 0.0 } else { round9(jumps[i - 1]) },
                to_turns: if i == jumps.len() { 0.5 } else { round9(jumps[i]) },
                value: a.value,
                sample: a.sample,
            })
            .collect();
        SignatureTable {
            jump_polynomial: self.jump_poly.to_string(),
            jumps_turns: jumps.into_iter().map(round9).collect(),
            arcs,
        }
    }
}

fn round9(x: f64) -> f64 {
    (x * 1e9).round() / 1e9
}

/// Report form of a [`SignatureFunction`] on `[0, 1/2]` turns; the other
/// half circle follows by conjugation symmetry.
#[derive(Clone, Debug, Serialize)]
pub struct SignatureTable {
    pub jump_polynomial: String,
    pub jumps_turns: Vec<f64>,
    pub arcs: Vec<ArcRow>,
}

#[derive(Clone, Debug, Serialize)]
pub struct ArcRow {
    pub from_turns: f64,
    pub to_turns: f64,
    pub value: i64,
    pub sample: RootOfUnity,
}
