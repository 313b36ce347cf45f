//! Exact Laurent polynomials in `t`, factorization up to units `±t^g`, and
//! the Fox–Milnor pairing test `a ≐ f(t) f(t^-1)`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::factor::{factor_primitive, poly_order};
use crate::poly::ZPoly;

/// Laurent polynomial with integer coefficients; no zero coefficient is
/// ever stored.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct LaurentPoly {
    terms: BTreeMap<i64, BigInt>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(1, 0)
    }

    pub fn monomial(c: impl Into<BigInt>, e: i64) -> Self {
        Self::from_terms([(e, c.into())])
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (i64, BigInt)>) -> Self {
        let mut map = BTreeMap::new();
        for (e, c) in terms {
            *map.entry(e).or_insert_with(BigInt::zero) += c;
        }
        map.retain(|_, c| !c.is_zero());
        LaurentPoly { terms: map }
    }

    /// Coefficients listed from exponent `low` upwards.
    pub fn from_coeffs(low: i64, coeffs: &[i64]) -> Self {
        Self::from_terms(
            coeffs
                .iter()
                .enumerate()
                .map(|(i, &c)| (low + i as i64, BigInt::from(c))),
        )
    }

    pub fn from_zpoly(p: &ZPoly, low: i64) -> Self {
        Self::from_terms(p.coeffs().iter().enumerate().map(|(i, c)| (low + i as i64, c.clone())))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.coeff(0).is_one()
    }

    pub fn low_exp(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    pub fn high_exp(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    /// `high - low`, zero for the zero polynomial.
    pub fn span(&self) -> u64 {
        match (self.low_exp(), self.high_exp()) {
            (Some(l), Some(h)) => (h - l) as u64,
            _ => 0,
        }
    }

    pub fn coeff(&self, e: i64) -> BigInt {
        self.terms.get(&e).cloned().unwrap_or_default()
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, &BigInt)> {
        self.terms.iter().map(|(e, c)| (*e, c))
    }

    pub fn leading_coeff(&self) -> BigInt {
        self.terms.values().next_back().cloned().unwrap_or_default()
    }

    /// Split as `t^low * p(t)` with `p(0) != 0`.
    pub fn to_zpoly(&self) -> (i64, ZPoly) {
        let Some(low) = self.low_exp() else {
            return (0, ZPoly::zero());
        };
        let len = (self.high_exp().unwrap() - low + 1) as usize;
        let mut coeffs = vec![BigInt::zero(); len];
        for (e, c) in &self.terms {
            coeffs[(e - low) as usize] = c.clone();
        }
        (low, ZPoly::new(coeffs))
    }

    pub fn content(&self) -> BigInt {
        self.to_zpoly().1.content()
    }

    /// Value at `t = 1`.
    pub fn eval_one(&self) -> BigInt {
        self.terms.values().sum()
    }

    /// Substitute `t -> t^k`.
    pub fn substitute_power(&self, k: u32) -> Self {
        assert!(k >= 1, "substitution exponent must be positive");
        Self::from_terms(self.terms.iter().map(|(e, c)| (e * k as i64, c.clone())))
    }

    /// Substitute `t -> t^-1`.
    pub fn reciprocal(&self) -> Self {
        Self::from_terms(self.terms.iter().map(|(e, c)| (-e, c.clone())))
    }

    /// Multiply by `t^g`.
    pub fn shift(&self, g: i64) -> Self {
        Self::from_terms(self.terms.iter().map(|(e, c)| (e + g, c.clone())))
    }

    /// Representative of the `≐` class: lowest exponent zero and positive
    /// leading coefficient. Content is kept.
    pub fn associate(&self) -> Self {
        let Some(low) = self.low_exp() else {
            return Self::zero();
        };
        let shifted = self.shift(-low);
        if shifted.leading_coeff().is_negative() {
            -shifted
        } else {
            shifted
        }
    }

    /// Ordinary-polynomial normal form: lowest exponent zero, primitive,
    /// positive leading coefficient.
    pub fn normal_form(&self) -> Self {
        let (_, p) = self.to_zpoly();
        Self::from_zpoly(&p.primitive_part(), 0)
    }

    /// Symmetrized representative: positive leading coefficient and exponent
    /// range centred on zero (requires even span).
    pub fn centered(&self) -> Self {
        let a = self.associate();
        if a.is_zero() {
            return a;
        }
        let span = a.span() as i64;
        debug_assert!(span % 2 == 0, "centering needs an even span");
        a.shift(-(span / 2))
    }

    /// `true` iff `self = ±t^g · other` for some integer `g`.
    pub fn doteq(&self, other: &LaurentPoly) -> bool {
        self.associate() == other.associate()
    }

    pub fn is_self_reciprocal(&self) -> bool {
        self.doteq(&self.reciprocal())
    }

    pub fn pow(&self, e: u32) -> Self {
        (0..e).fold(Self::one(), |acc, _| &acc * self)
    }

    /// Complete factorization over `Q` up to the unit `±t^g` and the
    /// positive integer content.
    pub fn factor(&self) -> Result<Factorization> {
        if self.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let (low, p) = self.to_zpoly();
        let sign = if p.lc().is_negative() { -1 } else { 1 };
        let content = p.content();
        let mut shift = low;
        let mut factors = Vec::new();
        for (q, m) in factor_primitive(&p) {
            if q == ZPoly::from_i64s(&[0, 1]) {
                shift += m as i64;
                continue;
            }
            factors.push((LaurentPoly::from_zpoly(&q, 0), m));
        }
        Ok(Factorization {
            sign,
            shift,
            content,
            factors,
        })
    }
}

/// Factorization `sign · t^shift · content · ∏ q_i^{m_i}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Factorization {
    pub sign: i8,
    pub shift: i64,
    /// Positive integer content of the input.
    #[serde(with = "crate::serde_int")]
    pub content: BigInt,
    /// Irreducible factors in normal form with multiplicities, sorted by
    /// degree then coefficients.
    pub factors: Vec<(LaurentPoly, u32)>,
}

impl Factorization {
    /// Multiply everything back together.
    pub fn expand(&self) -> LaurentPoly {
        let mut acc = LaurentPoly::monomial(BigInt::from(self.sign) * &self.content, self.shift);
        for (q, m) in &self.factors {
            acc = &acc * &q.pow(*m);
        }
        acc
    }

    pub fn is_irreducible(&self) -> bool {
        self.content.is_one() && self.factors.len() == 1 && self.factors[0].1 == 1
    }

    /// Merge two factorizations as the factorization of the product.
    pub fn merge(&self, other: &Factorization) -> Factorization {
        let mut map: BTreeMap<Vec<BigInt>, (LaurentPoly, u32)> = BTreeMap::new();
        for (q, m) in self.factors.iter().chain(&other.factors) {
            let key = q.to_zpoly().1.into_coeffs();
            map.entry(key).or_insert_with(|| (q.clone(), 0)).1 += m;
        }
        let mut factors: Vec<(LaurentPoly, u32)> = map.into_values().collect();
        factors.sort_by(|a, b| poly_order(&a.0.to_zpoly().1, &b.0.to_zpoly().1));
        Factorization {
            sign: self.sign * other.sign,
            shift: self.shift + other.shift,
            content: &self.content * &other.content,
            factors,
        }
    }
}

/// Outcome of the Fox–Milnor pairing test.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "outcome", rename_all = "snake_case")]
pub enum FoxMilnor {
    /// `a ≐ f(t) f(t^-1)` with the given `f`.
    Paired { witness: LaurentPoly },
    /// No `f` exists; the named piece breaks the pairing rule.
    Violation(PairingViolation),
}

impl FoxMilnor {
    pub fn is_paired(&self) -> bool {
        matches!(self, FoxMilnor::Paired { .. })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum PairingViolation {
    /// A self-reciprocal irreducible factor with odd multiplicity.
    OddSelfReciprocal { factor: LaurentPoly, multiplicity: u32 },
    /// An irreducible factor whose reciprocal partner has a different
    /// multiplicity.
    UnbalancedPair {
        factor: LaurentPoly,
        multiplicity: u32,
        partner: LaurentPoly,
        partner_multiplicity: u32,
    },
    /// Integer content that is not a perfect square.
    NonSquareContent {
        #[serde(with = "crate::serde_int")]
        content: BigInt,
    },
}

impl PairingViolation {
    pub fn factor(&self) -> Option<&LaurentPoly> {
        match self {
            PairingViolation::OddSelfReciprocal { factor, .. } | PairingViolation::UnbalancedPair { factor, .. } => {
                Some(factor)
            }
            PairingViolation::NonSquareContent { .. } => None,
        }
    }
}

/// Decide whether `a ≐ f(t) f(t^-1)` for some integer Laurent polynomial `f`.
pub fn fox_milnor_pairing(a: &LaurentPoly) -> Result<FoxMilnor> {
    Ok(pairing_from_factorization(&a.factor()?))
}

/// Pairing decision from an existing factorization.
pub fn pairing_from_factorization(fac: &Factorization) -> FoxMilnor {
    let mult_of = |q: &LaurentPoly| -> u32 { fac.factors.iter().find(|(r, _)| r == q).map(|(_, m)| *m).unwrap_or(0) };
    let mut witness = LaurentPoly::one();
    for (q, m) in &fac.factors {
        let partner = q.reciprocal().normal_form();
        if &partner == q {
            if m % 2 == 1 {
                return FoxMilnor::Violation(PairingViolation::OddSelfReciprocal {
                    factor: q.clone(),
                    multiplicity: *m,
                });
            }
            witness = &witness * &q.pow(m / 2);
            continue;
        }
        let pm = mult_of(&partner);
        if pm != *m {
            return FoxMilnor::Violation(PairingViolation::UnbalancedPair {
                factor: q.clone(),
                multiplicity: *m,
                partner,
                partner_multiplicity: pm,
            });
        }
        // Take the member of the pair that sorts first.
        if poly_order(&q.to_zpoly().1, &partner.to_zpoly().1).is_lt() {
            witness = &witness * &q.pow(*m);
        }
    }
    let root = fac.content.sqrt();
    if &root * &root != fac.content {
        return FoxMilnor::Violation(PairingViolation::NonSquareContent {
            content: fac.content.clone(),
        });
    }
    FoxMilnor::Paired {
        witness: witness.scale(&root),
    }
}

impl LaurentPoly {
    pub fn scale(&self, c: &BigInt) -> Self {
        Self::from_terms(self.terms.iter().map(|(e, x)| (*e, x * c)))
    }
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        LaurentPoly::from_terms(self.terms.iter().chain(rhs.terms.iter()).map(|(e, c)| (*e, c.clone())))
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        self + &(-rhs)
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out: BTreeMap<i64, BigInt> = BTreeMap::new();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &rhs.terms {
                *out.entry(e1 + e2).or_insert_with(BigInt::zero) += c1 * c2;
            }
        }
        out.retain(|_, c| !c.is_zero());
        LaurentPoly { terms: out }
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly {
            terms: self.terms.iter().map(|(e, c)| (*e, -c)).collect(),
        }
    }
}

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        -&self
    }
}

/// Printed highest exponent first: `3*t^1 - 7 + 3*t^-1`.
impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (e, c)) in self.terms.iter().rev().enumerate() {
            let mag = c.abs();
            match (i, c.is_negative()) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            if *e == 0 {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                write!(f, "t^{e}")?;
            } else {
                write!(f, "{mag}*t^{e}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LaurentPoly({self})")
    }
}

impl FromStr for LaurentPoly {
    type Err = Error;

    /// Accepts sums of terms `c`, `c*t^e`, `t^e`, `t`, `c*t` with optional
    /// whitespace; `e` may be negative.
    fn from_str(s: &str) -> Result<Self> {
        Parser {
            s: s.as_bytes(),
            pos: 0,
        }
        .parse()
    }
}

struct Parser<'a> {
    s: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn err<T>(&self, msg: &str) -> Result<T> {
        Err(Error::PolyParse {
            pos: self.pos,
            msg: msg.to_string(),
        })
    }

    fn skip_ws(&mut self) {
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.s.get(self.pos).copied()
    }

    fn number(&mut self) -> Option<BigInt> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return None;
        }
        std::str::from_utf8(&self.s[start..self.pos]).ok()?.parse().ok()
    }

    fn exponent(&mut self) -> Result<i64> {
        let neg = match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                true
            }
            Some(b'+') => {
                self.pos += 1;
                false
            }
            _ => false,
        };
        let Some(n) = self.number() else {
            return self.err("expected exponent");
        };
        let Ok(n) = i64::try_from(n) else {
            return self.err("exponent out of range");
        };
        Ok(if neg { -n } else { n })
    }

    fn parse(mut self) -> Result<LaurentPoly> {
        let mut terms = Vec::new();
        let mut first = true;
        loop {
            let mut sign = BigInt::one();
            match self.peek() {
                None if first => return self.err("empty polynomial"),
                None => break,
                Some(b'+') => self.pos += 1,
                Some(b'-') => {
                    self.pos += 1;
                    sign = -sign;
                }
                Some(_) if first => {}
                Some(_) => return self.err("expected `+` or `-`"),
            }
            first = false;
            let coeff = self.number();
            let has_var = match self.peek() {
                Some(b'*') if coeff.is_some() => {
                    self.pos += 1;
                    if self.peek() != Some(b't') {
                        return self.err("expected `t` after `*`");
                    }
                    true
                }
                Some(b't') if coeff.is_none() => true,
                _ => false,
            };
            let exp = if has_var {
                self.pos += 1;
                if self.peek() == Some(b'^') {
                    self.pos += 1;
                    self.exponent()?
                } else {
                    1
                }
            } else {
                if coeff.is_none() {
                    return self.err("expected coefficient or `t`");
                }
                0
            };
            terms.push((exp, sign * coeff.unwrap_or_else(BigInt::one)));
        }
        Ok(LaurentPoly::from_terms(terms))
    }
}

impl Serialize for LaurentPoly {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for LaurentPoly {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lp(s: &str) -> LaurentPoly {
        s.parse().unwrap()
    }

    #[test]
    fn doteq_examples() {
        assert!(lp("t - 1 + t^-1").doteq(&lp("-t^2 + t - 1")));
        assert!(!lp("t - 1 + t^-1").doteq(&lp("t + 1 + t^-1")));
        assert!(lp("3*t^1 - 7 + 3*t^-1").doteq(&lp("3*t^2 - 7*t + 3")));
        assert!(LaurentPoly::zero().doteq(&LaurentPoly::zero()));
        assert!(!LaurentPoly::zero().doteq(&LaurentPoly::one()));
        assert!(!lp("2").doteq(&lp("1")));
    }

    #[test]
    fn substitute_power_examples() {
        assert_eq!(lp("t - 1 + t^-1").substitute_power(1), lp("t - 1 + t^-1"));
        assert_eq!(lp("3*t - 7 + 3*t^-1").substitute_power(2), lp("3*t^2 - 7 + 3*t^-2"));
        assert_eq!(lp("t - 3 + t^-1").substitute_power(2), lp("t^2 - 3 + t^-2"));
    }

    #[test]
    fn reciprocal_examples() {
        assert_eq!(lp("t^2 - t - 1").reciprocal(), lp("t^-2 - t^-1 - 1"));
        assert_eq!(lp("t - 3 + t^-1").reciprocal(), lp("t^-1 - 3 + t"));
        assert_eq!(LaurentPoly::one().reciprocal(), LaurentPoly::one());
    }

    #[test]
    fn factor_examples() {
        let f = lp("t^4 - 3*t^2 + 1").factor().unwrap();
        assert_eq!((f.sign, f.shift), (1, 0));
        assert_eq!(f.factors, vec![(lp("t^2 - t - 1"), 1), (lp("t^2 + t - 1"), 1)]);
        assert!(lp("t^2 - t + 1").factor().unwrap().is_irreducible());
        assert!(lp("3*t^2 - 7*t + 3").factor().unwrap().is_irreducible());
        assert_eq!(LaurentPoly::zero().factor(), Err(Error::ZeroPolynomial));
    }

    #[test]
    fn factor_keeps_units_and_content() {
        let a = lp("-6*t^-3 + 12*t^-2 - 6*t^-1");
        let f = a.factor().unwrap();
        assert_eq!(f.sign, -1);
        assert_eq!(f.shift, -3);
        assert_eq!(f.content, BigInt::from(6));
        assert_eq!(f.factors, vec![(lp("t - 1"), 2)]);
        assert_eq!(f.expand(), a);
    }

    #[test]
    fn fox_milnor_examples() {
        assert_eq!(
            fox_milnor_pairing(&lp("t^4 - 3*t^2 + 1")).unwrap(),
            FoxMilnor::Paired {
                witness: lp("t^2 - t - 1")
            }
        );
        let twist = lp("3*t^2 - 7*t + 3");
        let a = &twist * &lp("3*t^4 - 7*t^2 + 3");
        match fox_milnor_pairing(&a).unwrap() {
            FoxMilnor::Violation(PairingViolation::OddSelfReciprocal { factor, multiplicity }) => {
                assert_eq!(factor, twist);
                assert_eq!(multiplicity, 1);
            }
            other => panic!("unexpected {other:?}"),
        }
        let b = &lp("t - 2") * &lp("1 - 2*t");
        assert_eq!(
            fox_milnor_pairing(&b).unwrap(),
            FoxMilnor::Paired { witness: lp("t - 2") }
        );
        assert!(matches!(
            fox_milnor_pairing(&lp("2*t^2 - 4*t + 2")).unwrap(),
            FoxMilnor::Violation(PairingViolation::NonSquareContent { .. })
        ));
        assert!(matches!(
            fox_milnor_pairing(&lp("t - 2")).unwrap(),
            FoxMilnor::Violation(PairingViolation::UnbalancedPair {
                partner_multiplicity: 0,
                ..
            })
        ));
        assert_eq!(fox_milnor_pairing(&LaurentPoly::zero()), Err(Error::ZeroPolynomial));
    }

    #[test]
    fn printer_format() {
        assert_eq!(lp("3*t - 7 + 3*t^-1").to_string(), "3*t^1 - 7 + 3*t^-1");
        assert_eq!(lp("-t^2 + t - 1").to_string(), "-t^2 + t^1 - 1");
        assert_eq!(LaurentPoly::zero().to_string(), "0");
        assert_eq!(lp("t^-1").to_string(), "t^-1");
    }

    #[test]
    fn parser_rejects_garbage() {
        for bad in ["", "3 t", "3*", "t^", "+ - 1", "3**t", "x"] {
            assert!(bad.parse::<LaurentPoly>().is_err(), "{bad:?}");
        }
    }
}
