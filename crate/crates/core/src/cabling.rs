//! Knot profiles, `(p,1)`-cable transforms of invariants, and obstructions
//! to rational concordance: signature witnesses, the Fox–Milnor condition
//! over a range of complexities, and τ comparison.

use std::fmt;

use num_traits::{One, Signed};
use serde::{Deserialize, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::factor::modp::is_prime;
use crate::laurent::{pairing_from_factorization, Factorization, FoxMilnor, LaurentPoly, PairingViolation};
use crate::seifert::{RootOfUnity, SeifertMatrix, SignatureFunction};

pub const DEFAULT_ANGLE_BOUND: u64 = 211;
pub const DEFAULT_K_MAX: u32 = 6;

pub const CITE_TAU_CABLE: &str =
    "tau(K(p,1)) = p tau(K): Hedden, On knot Floer homology and cabling II, Thm 1.2 (hypothesis there: tau(K) = g(K))";
pub const CITE_TAU_ADDITIVE: &str =
    "tau(K#J) = tau(K) + tau(J): Ozsvath-Szabo, Knot Floer homology and the four-ball genus";
pub const CITE_TAU_MIRROR: &str = "tau(-K) = -tau(K): Ozsvath-Szabo, Knot Floer homology and the four-ball genus";
pub const CITE_S_MIRROR: &str = "s(-K) = -s(K): Rasmussen, Khovanov homology and the slice genus";
pub const CITE_TAU_RATIONAL: &str =
    "tau is invariant under smooth rational concordance: tau vanishes on smoothly rationally slice knots (Ozsvath-Szabo, Thm 1.1) and is additive with tau(-J) = -tau(J)";
pub const CITE_FREEDMAN: &str =
    "Alexander polynomial 1 implies topologically slice: Freedman-Quinn, Topology of 4-manifolds";
pub const CITE_SIGNATURE_INVARIANCE: &str =
    "sigma_K0(w) = sigma_K1(w) for w of prime order when K0, K1 are rationally concordant: Cha-Ko, Thm 1.1";
pub const CITE_CABLE_SIGNATURE: &str = "sigma_K(p,1)(w) = sigma_K(w^p): Litherland, Signatures of iterated torus knots";
pub const CITE_FOX_MILNOR: &str =
    "rational concordance of complexity k forces d0(t^k) d1(t^k) = +-t^g f(t) f(t^-1): Cha, The structure of the rational concordance group of knots";

/// A declared value together with its literature source.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Cited<T> {
    pub value: T,
    pub citation: String,
}

impl<T> Cited<T> {
    pub fn new(value: T, citation: impl Into<String>) -> Self {
        Cited {
            value,
            citation: citation.into(),
        }
    }
}

/// Declared bounds on the smooth 4-genus.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GenusBounds {
    pub lower: u32,
    pub upper: Option<u32>,
    pub citation: String,
}

/// How the Levine–Tristram signatures of a profile are computed exactly.
#[derive(Clone, Debug)]
enum SignatureRoute {
    Seifert(SeifertMatrix),
    Cable(Box<SignatureRoute>, u32),
    Mirror(Box<SignatureRoute>),
    Sum(Box<SignatureRoute>, Box<SignatureRoute>),
}

impl SignatureRoute {
    fn exact(&self, w: &RootOfUnity) -> Result<i64> {
        if w.is_one() {
            return Ok(0);
        }
        match self {
            SignatureRoute::Seifert(v) => v.levine_tristram(w),
            SignatureRoute::Cable(base, p) => base.exact(&w.pow(*p as u64)),
            SignatureRoute::Mirror(base) => Ok(-base.exact(w)?),
            SignatureRoute::Sum(a, b) => Ok(a.exact(w)? + b.exact(w)?),
        }
    }
}

/// Everything known about a knot: computed data from a Seifert matrix or
/// derivation, and declared values with citations.
#[derive(Clone, Debug)]
pub struct KnotProfile {
    pub name: String,
    seifert: Option<SeifertMatrix>,
    alexander: LaurentPoly,
    route: Option<SignatureRoute>,
    signature: Option<SignatureFunction>,
    pub tau: Option<Cited<i64>>,
    pub s: Option<Cited<i64>>,
    pub genus: Option<Cited<u32>>,
    pub slice_genus: Option<GenusBounds>,
    pub topologically_slice: Option<Cited<bool>>,
    /// Declared: `δ(t^k)` is irreducible for every `k >= 1`.
    pub irreducible_powers: Option<Cited<bool>>,
    /// How this profile was obtained from others.
    pub derivation: Vec<String>,
}

impl KnotProfile {
    fn bare(name: impl Into<String>, alexander: LaurentPoly) -> Self {
        KnotProfile {
            name: name.into(),
            seifert: None,
            alexander,
            route: None,
            signature: None,
            tau: None,
            s: None,
            genus: None,
            slice_genus: None,
            topologically_slice: None,
            irreducible_powers: None,
            derivation: Vec::new(),
        }
    }

    pub fn from_seifert(name: impl Into<String>, v: SeifertMatrix) -> Self {
        let mut k = Self::bare(name, v.alexander().clone());
        k.signature = Some(v.signature_function());
        k.route = Some(SignatureRoute::Seifert(v.clone()));
        k.seifert = Some(v);
        k
    }

    /// Profile known only through its Alexander polynomial.
    pub fn from_alexander(name: impl Into<String>, alexander: LaurentPoly) -> Result<Self> {
        if alexander.is_zero() || !alexander.eval_one().abs().is_one() {
            return Err(Error::InconsistentProfile {
                name: name.into(),
                msg: format!("{alexander} is not a knot Alexander polynomial (|d(1)| != 1)"),
            });
        }
        Ok(Self::bare(name, alexander.centered()))
    }

    pub fn with_tau(mut self, value: i64, citation: impl Into<String>) -> Self {
        self.tau = Some(Cited::new(value, citation));
        self
    }

    pub fn with_s(mut self, value: i64, citation: impl Into<String>) -> Self {
        self.s = Some(Cited::new(value, citation));
        self
    }

    pub fn with_genus(mut self, value: u32, citation: impl Into<String>) -> Self {
        self.genus = Some(Cited::new(value, citation));
        self
    }

    pub fn with_slice_genus(mut self, lower: u32, upper: Option<u32>, citation: impl Into<String>) -> Self {
        self.slice_genus = Some(GenusBounds {
            lower,
            upper,
            citation: citation.into(),
        });
        self
    }

    pub fn with_topologically_slice(mut self, value: bool, citation: impl Into<String>) -> Self {
        self.topologically_slice = Some(Cited::new(value, citation));
        self
    }

    pub fn with_irreducible_powers(mut self, citation: impl Into<String>) -> Self {
        self.irreducible_powers = Some(Cited::new(true, citation));
        self
    }

    pub fn seifert(&self) -> Option<&SeifertMatrix> {
        self.seifert.as_ref()
    }

    pub fn alexander(&self) -> &LaurentPoly {
        &self.alexander
    }

    pub fn signature_function(&self) -> Option<&SignatureFunction> {
        self.signature.as_ref()
    }

    /// Exact signature at `ω` through the Seifert matrix this profile
    /// derives from, when there is one.
    pub fn exact_signature(&self, w: &RootOfUnity) -> Option<Result<i64>> {
        self.route.as_ref().map(|r| r.exact(w))
    }

    /// Declared value, or the consequence of a trivial Alexander polynomial.
    pub fn topologically_slice(&self) -> Option<Cited<bool>> {
        if let Some(c) = &self.topologically_slice {
            return Some(c.clone());
        }
        self.alexander.is_one().then(|| Cited::new(true, CITE_FREEDMAN))
    }

    /// Mutual consistency of declared and computed data.
    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| {
            Err(Error::InconsistentProfile {
                name: self.name.clone(),
                msg,
            })
        };
        if let Some(v) = &self.seifert {
            if v.alexander() != &self.alexander {
                return bad("declared Alexander polynomial differs from the Seifert matrix".into());
            }
        }
        if !self.alexander.is_self_reciprocal() || !self.alexander.eval_one().abs().is_one() {
            return bad(format!("{} is not a knot Alexander polynomial", self.alexander));
        }
        if let Some(g) = &self.genus {
            if (self.alexander.span() / 2) > g.value as u64 {
                return bad(format!("Alexander span exceeds 2g = {}", 2 * g.value));
            }
            if let Some(t) = &self.tau {
                if t.value.unsigned_abs() > g.value as u64 {
                    return bad(format!("|tau| = {} exceeds g = {}", t.value.abs(), g.value));
                }
            }
        }
        if let Some(b) = &self.slice_genus {
            if let Some(u) = b.upper {
                if b.lower > u {
                    return bad(format!("slice genus bounds {} > {}", b.lower, u));
                }
                if let Some(g) = &self.genus {
                    if b.lower > g.value {
                        return bad(format!("g4 >= {} exceeds g = {}", b.lower, g.value));
                    }
                }
                if let Some(t) = &self.tau {
                    if t.value.unsigned_abs() > u as u64 {
                        return bad(format!("|tau| = {} exceeds g4 <= {}", t.value.abs(), u));
                    }
                }
            }
        }
        if let Some(s) = &self.s {
            if s.value % 2 != 0 {
                return bad(format!("s = {} is odd", s.value));
            }
        }
        if let (Some(ts), Some(sf)) = (&self.topologically_slice, &self.signature) {
            if ts.value && !sf.is_identically_zero() {
                return bad("declared topologically slice but the signature function is nonzero".into());
            }
        }
        Ok(())
    }

    /// The `(p,1)`-cable with its computable invariants; declared values
    /// are not transferred (see [`tau_cable_rule`]).
    pub fn cable(&self, p: u32) -> KnotProfile {
        assert!(p >= 1);
        let mut k = Self::bare(format!("{}({},1)", self.name, p), cable_alexander(&self.alexander, p));
        k.route = self
            .route
            .as_ref()
            .map(|r| SignatureRoute::Cable(Box::new(r.clone()), p));
        k.signature = self.signature.as_ref().map(|s| cable_signature(s, p));
        k.irreducible_powers = self
            .irreducible_powers
            .as_ref()
            .map(|c| Cited::new(true, format!("{} (applied to d(t^{p}))", c.citation)));
        k.derivation = self.derivation.clone();
        k.derivation.push(format!("({p},1)-cable of {}", self.name));
        k
    }

    /// The mirror image, carrying τ and s through their negation rules.
    pub fn mirror(&self) -> KnotProfile {
        let mut k = Self::bare(format!("-{}", self.name), self.alexander.clone());
        k.seifert = self.seifert.as_ref().map(|v| v.mirror());
        k.route = self.route.as_ref().map(|r| SignatureRoute::Mirror(Box::new(r.clone())));
        k.signature = self.signature.as_ref().map(|s| s.negate());
        k.tau = self
            .tau
            .as_ref()
            .map(|t| Cited::new(-t.value, format!("{CITE_TAU_MIRROR}; from {}", t.citation)));
        k.s = self
            .s
            .as_ref()
            .map(|t| Cited::new(-t.value, format!("{CITE_S_MIRROR}; from {}", t.citation)));
        k.genus = self.genus.clone();
        k.slice_genus = self.slice_genus.clone();
        k.topologically_slice = self.topologically_slice.clone();
        k.irreducible_powers = self.irreducible_powers.clone();
        k.derivation = self.derivation.clone();
        k.derivation.push(format!("mirror of {}", self.name));
        k
    }

    /// The connected sum, with τ added when both summands declare it.
    pub fn connected_sum(&self, other: &KnotProfile) -> KnotProfile {
        let mut k = Self::bare(
            format!("{}#{}", self.name, other.name),
            &self.alexander * &other.alexander,
        );
        if let (Some(a), Some(b)) = (&self.seifert, &other.seifert) {
            k.seifert = Some(a.block_sum(b));
        }
        if let (Some(a), Some(b)) = (&self.route, &other.route) {
            k.route = Some(SignatureRoute::Sum(Box::new(a.clone()), Box::new(b.clone())));
        }
        if let (Some(a), Some(b)) = (&self.signature, &other.signature) {
            k.signature = Some(a.sum(b));
        }
        if let (Some(a), Some(b)) = (&self.tau, &other.tau) {
            k.tau = Some(Cited::new(
                a.value + b.value,
                format!("{CITE_TAU_ADDITIVE}; from {} and {}", a.citation, b.citation),
            ));
        }
        k.derivation = vec![format!("connected sum of {} and {}", self.name, other.name)];
        k
    }
}

/// Alexander polynomial of the `(p,1)`-cable: `δ(t^p)`.
pub fn cable_alexander(delta: &LaurentPoly, p: u32) -> LaurentPoly {
    assert!(p >= 1);
    delta.substitute_power(p)
}

/// Signature function of the `(p,1)`-cable: `ω ↦ σ(ω^p)`.
pub fn cable_signature(sigma: &SignatureFunction, p: u32) -> SignatureFunction {
    sigma.cable(p)
}

/// The τ rule table.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum TauRule {
    Cable,
    Additivity,
    Mirror,
}

impl TauRule {
    pub const ALL: [TauRule; 3] = [TauRule::Cable, TauRule::Additivity, TauRule::Mirror];

    pub fn citation(&self) -> &'static str {
        match self {
            TauRule::Cable => CITE_TAU_CABLE,
            TauRule::Additivity => CITE_TAU_ADDITIVE,
            TauRule::Mirror => CITE_TAU_MIRROR,
        }
    }
}

/// Profile of `K(p,1)` with `τ = p·τ(K)`; requires a declared `τ(K)`.
pub fn tau_cable_rule(k: &KnotProfile, p: u32) -> Result<KnotProfile> {
    let tau = k.tau.as_ref().ok_or_else(|| Error::MissingTau(k.name.clone()))?;
    let mut out = k.cable(p);
    out.tau = Some(Cited::new(
        p as i64 * tau.value,
        format!(
            "{}; from tau({}) = {} [{}]",
            TauRule::Cable.citation(),
            k.name,
            tau.value,
            tau.citation
        ),
    ));
    Ok(out)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Category {
    Smooth,
    Topological,
}

impl fmt::Display for Category {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Category::Smooth => "smooth",
            Category::Topological => "topological",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    Obstructed,
    /// Rules out rational concordances of every complexity `k <= k_max`.
    ObstructedUpToComplexity(u32),
    ConsistentUpToBounds,
    NoObstructionFound,
}

impl Verdict {
    pub fn is_obstructed(&self) -> bool {
        matches!(self, Verdict::Obstructed | Verdict::ObstructedUpToComplexity(_))
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::Obstructed => f.write_str("obstructed"),
            Verdict::ObstructedUpToComplexity(k) => write!(f, "obstructed-up-to-complexity-{k}"),
            Verdict::ConsistentUpToBounds => f.write_str("consistent-up-to-bounds"),
            Verdict::NoObstructionFound => f.write_str("no-obstruction-found"),
        }
    }
}

impl Serialize for Verdict {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// Checkable evidence attached to a report.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Witness {
    /// `σ_K(ω) = 0` while `σ_{K(p,1)}(ω) = σ_K(ω^p) != 0`.
    CableSignature {
        omega: RootOfUnity,
        sigma: i64,
        omega_power: RootOfUnity,
        sigma_cable: i64,
        exact_check: bool,
    },
    /// Different signatures of the two knots at `ω`.
    SignatureMismatch {
        omega: RootOfUnity,
        sigma_0: i64,
        sigma_1: i64,
        exact_check: bool,
    },
    FoxMilnorFailure {
        k: u32,
        product: LaurentPoly,
        violation: PairingViolation,
        factorization: Factorization,
    },
    FoxMilnorPairing {
        k: u32,
        product: LaurentPoly,
        f: LaurentPoly,
    },
    TauMismatch {
        tau_0: Cited<i64>,
        tau_1: Cited<i64>,
    },
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct SearchParameters {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub p: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub k_max: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub angle_denominator_bound: Option<u64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ObstructionReport {
    pub category: Category,
    pub verdict: Verdict,
    pub witnesses: Vec<Witness>,
    pub parameters: SearchParameters,
    /// Cited facts the verdict rests on.
    pub assumptions: Vec<String>,
}

fn primes_up_to(bound: u64) -> impl Iterator<Item = u64> {
    (2..=bound).filter(|&b| is_prime(b))
}

/// Search roots of unity of prime order `b <= bound`, smallest `b` then
/// smallest `a`, for `ω` with `σ_K(ω) = 0 != σ_K(ω^p)`. Such an `ω` shows
/// that `K` is not rationally concordant to `K(p,1)`.
pub fn finite_order_obstruction(k: &KnotProfile, p: u32, bound: u64) -> Result<ObstructionReport> {
    let v = k
        .seifert
        .as_ref()
        .ok_or_else(|| Error::MissingSeifert(k.name.clone()))?;
    let sf = k.signature.as_ref().expect("seifert profiles carry signatures");
    let parameters = SearchParameters {
        p: Some(p),
        k_max: None,
        angle_denominator_bound: Some(bound),
    };
    let assumptions = vec![CITE_SIGNATURE_INVARIANCE.to_string(), CITE_CABLE_SIGNATURE.to_string()];
    for b in primes_up_to(bound) {
        for a in 1..b {
            let w = RootOfUnity::new(a as i64, b as i64).unwrap();
            let Ok(sigma) = sf.value_at(&w) else { continue };
            if sigma != 0 {
                continue;
            }
            let wp = w.pow(p as u64);
            if wp.is_one() {
                continue;
            }
            let Ok(sigma_p) = sf.value_at(&wp) else { continue };
            if sigma_p == 0 {
                continue;
            }
            let exact = v.levine_tristram(&w)? == sigma && v.levine_tristram(&wp)? == sigma_p;
            assert!(exact, "signature function disagrees with the exact signature");
            return Ok(ObstructionReport {
                category: Category::Topological,
                verdict: Verdict::Obstructed,
                witnesses: vec![Witness::CableSignature {
                    omega: w,
                    sigma,
                    omega_power: wp,
                    sigma_cable: sigma_p,
                    exact_check: exact,
                }],
                parameters,
                assumptions,
            });
        }
    }
    Ok(ObstructionReport {
        category: Category::Topological,
        verdict: Verdict::NoObstructionFound,
        witnesses: Vec::new(),
        parameters,
        assumptions,
    })
}

/// Run the Fox–Milnor pairing test on `δ₀(t^k)δ₁(t^k)` for `k = 1..=k_max`.
pub fn fox_milnor_obstruction(k0: &KnotProfile, k1: &KnotProfile, k_max: u32) -> Result<ObstructionReport> {
    let parameters = SearchParameters {
        p: None,
        k_max: Some(k_max),
        angle_denominator_bound: None,
    };
    let mut failures = Vec::new();
    for k in 1..=k_max {
        let d0 = k0.alexander.substitute_power(k);
        let d1 = k1.alexander.substitute_power(k);
        let fac = d0.factor()?.merge(&d1.factor()?);
        let product = &d0 * &d1;
        match pairing_from_factorization(&fac) {
            FoxMilnor::Paired { witness } => {
                return Ok(ObstructionReport {
                    category: Category::Topological,
                    verdict: Verdict::ConsistentUpToBounds,
                    witnesses: vec![Witness::FoxMilnorPairing { k, product, f: witness }],
                    parameters,
                    assumptions: vec![CITE_FOX_MILNOR.to_string()],
                });
            }
            FoxMilnor::Violation(violation) => failures.push(Witness::FoxMilnorFailure {
                k,
                product,
                violation,
                factorization: fac,
            }),
        }
    }
    let mut assumptions = vec![CITE_FOX_MILNOR.to_string()];
    if let Some(note) = all_complexities_note(k0, k1) {
        assumptions.push(note);
    }
    Ok(ObstructionReport {
        category: Category::Topological,
        verdict: Verdict::ObstructedUpToComplexity(k_max),
        witnesses: failures,
        parameters,
        assumptions,
    })
}

/// When both `δ₀(t^k)` and `δ₁(t^k)` are declared irreducible for every `k`
/// and `δ₀ ≠ δ₁`, the product is two distinct self-reciprocal irreducibles
/// of multiplicity one for every `k`, so the obstruction holds for all `k`.
fn all_complexities_note(k0: &KnotProfile, k1: &KnotProfile) -> Option<String> {
    let (c0, c1) = (k0.irreducible_powers.as_ref()?, k1.irreducible_powers.as_ref()?);
    if k0.alexander.is_one() || k1.alexander.is_one() || k0.alexander.doteq(&k1.alexander) {
        return None;
    }
    Some(format!(
        "for every k >= 1 (cited, not computed): d0(t^k) and d1(t^k) are distinct irreducible self-reciprocal polynomials [{}; {}], so each occurs with odd multiplicity",
        c0.citation, c1.citation
    ))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SearchOptions {
    pub angle_denominator_bound: u64,
    pub k_max: u32,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions {
            angle_denominator_bound: DEFAULT_ANGLE_BOUND,
            k_max: DEFAULT_K_MAX,
        }
    }
}

/// Combined rational-concordance evidence in both categories.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerdictReport {
    pub knots: [String; 2],
    pub summary: String,
    pub topological: ObstructionReport,
    pub smooth: ObstructionReport,
    pub topologically_slice: [Option<Cited<bool>>; 2],
}

/// Search for `ω` of prime order with `σ₀(ω) != σ₁(ω)`.
fn signature_mismatch(k0: &KnotProfile, k1: &KnotProfile, bound: u64) -> Result<Option<Witness>> {
    let (Some(s0), Some(s1)) = (&k0.signature, &k1.signature) else {
        return Ok(None);
    };
    for b in primes_up_to(bound) {
        for a in 1..=b / 2 {
            let w = RootOfUnity::new(a as i64, b as i64).unwrap();
            let (Ok(v0), Ok(v1)) = (s0.value_at(&w), s1.value_at(&w)) else {
                continue;
            };
            if v0 == v1 {
                continue;
            }
            let exact = match (k0.exact_signature(&w), k1.exact_signature(&w)) {
                (Some(e0), Some(e1)) => {
                    let ok = e0? == v0 && e1? == v1;
                    assert!(ok, "signature function disagrees with the exact signature");
                    ok
                }
                _ => false,
            };
            return Ok(Some(Witness::SignatureMismatch {
                omega: w,
                sigma_0: v0,
                sigma_1: v1,
                exact_check: exact,
            }));
        }
    }
    Ok(None)
}

/// All applicable obstructions to `K₀` and `K₁` being rationally
/// concordant. Topological evidence: signatures and Fox–Milnor. Smooth
/// evidence adds τ, since a smooth rational concordance is also a
/// topological one.
pub fn rational_concordance_verdict(k0: &KnotProfile, k1: &KnotProfile, opts: &SearchOptions) -> Result<VerdictReport> {
    let mut top_witnesses = Vec::new();
    let mut top_assumptions = Vec::new();
    let mut top_verdict = Verdict::NoObstructionFound;
    if let Some(w) = signature_mismatch(k0, k1, opts.angle_denominator_bound)? {
        top_witnesses.push(w);
        top_assumptions.push(CITE_SIGNATURE_INVARIANCE.to_string());
        top_verdict = Verdict::Obstructed;
    }
    let fm = fox_milnor_obstruction(k0, k1, opts.k_max)?;
    if fm.verdict.is_obstructed() {
        if top_verdict == Verdict::NoObstructionFound {
            top_verdict = fm.verdict;
        }
        top_witnesses.extend(fm.witnesses);
        top_assumptions.extend(fm.assumptions);
    } else if top_verdict == Verdict::NoObstructionFound {
        // keep the pairing as evidence of consistency
        top_witnesses.extend(fm.witnesses);
    }
    let parameters = SearchParameters {
        p: None,
        k_max: Some(opts.k_max),
        angle_denominator_bound: Some(opts.angle_denominator_bound),
    };
    let topological = ObstructionReport {
        category: Category::Topological,
        verdict: top_verdict,
        witnesses: top_witnesses.clone(),
        parameters: parameters.clone(),
        assumptions: top_assumptions.clone(),
    };

    let mut smooth_witnesses = Vec::new();
    let mut smooth_assumptions = Vec::new();
    let mut smooth_verdict = Verdict::NoObstructionFound;
    if let (Some(t0), Some(t1)) = (&k0.tau, &k1.tau) {
        if t0.value != t1.value {
            smooth_witnesses.push(Witness::TauMismatch {
                tau_0: t0.clone(),
                tau_1: t1.clone(),
            });
            smooth_assumptions.push(CITE_TAU_RATIONAL.to_string());
            smooth_verdict = Verdict::Obstructed;
        }
    }
    if top_verdict.is_obstructed() {
        if smooth_verdict == Verdict::NoObstructionFound {
            smooth_verdict = top_verdict;
        }
        smooth_witnesses.extend(top_witnesses);
        smooth_assumptions.extend(top_assumptions);
    }
    let smooth = ObstructionReport {
        category: Category::Smooth,
        verdict: smooth_verdict,
        witnesses: smooth_witnesses,
        parameters,
        assumptions: smooth_assumptions,
    };

    let summary = if topological.verdict.is_obstructed() {
        format!("{} ({})", topological.verdict, Category::Topological)
    } else if smooth.verdict.is_obstructed() {
        format!("{} ({})", smooth.verdict, Category::Smooth)
    } else {
        Verdict::NoObstructionFound.to_string()
    };
    Ok(VerdictReport {
        knots: [k0.name.clone(), k1.name.clone()],
        summary,
        topological,
        smooth,
        topologically_slice: [k0.topologically_slice(), k1.topologically_slice()],
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn trefoil() -> KnotProfile {
        KnotProfile::from_seifert(
            "trefoil",
            SeifertMatrix::from_rows(&[vec![-1, 1], vec![0, -1]]).unwrap(),
        )
        .with_tau(1, "test")
        .with_genus(1, "test")
    }

    fn figure_eight() -> KnotProfile {
        KnotProfile::from_seifert("4_1", SeifertMatrix::from_rows(&[vec![-1, 1], vec![0, 1]]).unwrap())
    }

    fn twist() -> KnotProfile {
        KnotProfile::from_seifert("twist", SeifertMatrix::from_rows(&[vec![-1, 1], vec![0, 3]]).unwrap())
            .with_irreducible_powers("test")
    }

    fn unknot() -> KnotProfile {
        KnotProfile::from_seifert("unknot", SeifertMatrix::empty())
    }

    #[test]
    fn cable_alexander_examples() {
        let d: LaurentPoly = "3*t^1 - 7 + 3*t^-1".parse().unwrap();
        assert_eq!(cable_alexander(&d, 2).to_string(), "3*t^2 - 7 + 3*t^-2");
        assert!(cable_alexander(&LaurentPoly::one(), 5).is_one());
    }

    #[test]
    fn trefoil_cable_witness() {
        let r = finite_order_obstruction(&trefoil(), 2, DEFAULT_ANGLE_BOUND).unwrap();
        assert_eq!(r.verdict, Verdict::Obstructed);
        match &r.witnesses[0] {
            Witness::CableSignature {
                omega,
                sigma,
                sigma_cable,
                ..
            } => {
                assert_eq!(omega.to_string(), "1/7");
                assert_eq!((*sigma, *sigma_cable), (0, -2));
            }
            w => panic!("unexpected witness {w:?}"),
        }
    }

    #[test]
    fn no_obstruction_for_zero_signatures() {
        let r = finite_order_obstruction(&figure_eight(), 2, DEFAULT_ANGLE_BOUND).unwrap();
        assert_eq!(r.verdict, Verdict::NoObstructionFound);
        let r = finite_order_obstruction(&unknot(), 3, DEFAULT_ANGLE_BOUND).unwrap();
        assert_eq!(r.verdict, Verdict::NoObstructionFound);
        let bare = KnotProfile::from_alexander("x", LaurentPoly::one()).unwrap();
        assert_eq!(
            finite_order_obstruction(&bare, 2, 11),
            Err(Error::MissingSeifert("x".into()))
        );
    }

    #[test]
    fn fox_milnor_examples() {
        let r = fox_milnor_obstruction(&twist(), &twist().cable(2), 4).unwrap();
        assert_eq!(r.verdict, Verdict::ObstructedUpToComplexity(4));
        assert_eq!(r.witnesses.len(), 4);
        assert_eq!(r.assumptions.len(), 2);
        let r = fox_milnor_obstruction(&figure_eight(), &unknot(), 2).unwrap();
        match &r.witnesses[..] {
            [Witness::FoxMilnorPairing { k: 2, f, .. }] => assert_eq!(f.to_string(), "t^2 - t^1 - 1"),
            w => panic!("unexpected {w:?}"),
        }
        let r = fox_milnor_obstruction(&unknot(), &unknot(), 1).unwrap();
        assert_eq!(r.verdict, Verdict::ConsistentUpToBounds);
    }

    #[test]
    fn tau_rules() {
        assert_eq!(tau_cable_rule(&trefoil(), 3).unwrap().tau.unwrap().value, 3);
        assert_eq!(tau_cable_rule(&trefoil(), 1).unwrap().tau.unwrap().value, 1);
        assert!(matches!(tau_cable_rule(&unknot(), 2), Err(Error::MissingTau(_))));
        assert_eq!(trefoil().mirror().tau.unwrap().value, -1);
        assert_eq!(trefoil().connected_sum(&trefoil()).tau.unwrap().value, 2);
    }

    #[test]
    fn verdicts() {
        let opts = SearchOptions::default();
        let t = trefoil();
        let r = rational_concordance_verdict(&t, &t.cable(3), &opts).unwrap();
        assert_eq!(r.summary, "obstructed (topological)");
        let r = rational_concordance_verdict(&unknot(), &unknot(), &opts).unwrap();
        assert_eq!(r.summary, "no-obstruction-found");
        let a = rational_concordance_verdict(&t, &figure_eight(), &opts).unwrap();
        let b = rational_concordance_verdict(&figure_eight(), &t, &opts).unwrap();
        assert_eq!(a.summary, b.summary);
    }

    #[test]
    fn validation() {
        assert!(trefoil().validate().is_ok());
        assert!(trefoil().with_tau(2, "x").validate().is_err());
        assert!(trefoil().with_s(1, "x").validate().is_err());
        assert!(trefoil().with_slice_genus(2, Some(1), "x").validate().is_err());
    }
}
