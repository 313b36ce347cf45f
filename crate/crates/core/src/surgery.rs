//! First homology of framed-link surgery presentations by Smith normal
//! form, with named meridian classes carried through the change of basis.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::matrix::IntMatrix;

/// `U·M·V = D` with `U`, `V` unimodular and `D` diagonal, `d₁ | d₂ | …`,
/// nonnegative, zeros last.
#[derive(Clone, Debug)]
pub struct SmithForm {
    pub u: IntMatrix,
    pub d: IntMatrix,
    pub v: IntMatrix,
}

impl SmithForm {
    pub fn diagonal(&self) -> Vec<BigInt> {
        (0..self.d.rows().min(self.d.cols()))
            .map(|i| self.d[(i, i)].clone())
            .collect()
    }
}

fn swap_rows(m: &mut IntMatrix, i: usize, j: usize) {
    if i != j {
        for c in 0..m.cols() {
            let t = m[(i, c)].clone();
            m[(i, c)] = m[(j, c)].clone();
            m[(j, c)] = t;
        }
    }
}

fn swap_cols(m: &mut IntMatrix, i: usize, j: usize) {
    if i != j {
        for r in 0..m.rows() {
            let t = m[(r, i)].clone();
            m[(r, i)] = m[(r, j)].clone();
            m[(r, j)] = t;
        }
    }
}

// row_i -= q row_j
fn row_axpy(m: &mut IntMatrix, i: usize, j: usize, q: &BigInt) {
    for c in 0..m.cols() {
        let t = &m[(j, c)] * q;
        m[(i, c)] -= t;
    }
}

// col_i -= q col_j
fn col_axpy(m: &mut IntMatrix, i: usize, j: usize, q: &BigInt) {
    for r in 0..m.rows() {
        let t = &m[(r, j)] * q;
        m[(r, i)] -= t;
    }
}

/// Pivot rule: smallest nonzero absolute value in the trailing block,
/// ties broken by row-major position.
pub fn smith_normal_form(m: &IntMatrix) -> SmithForm {
    let (rows, cols) = (m.rows(), m.cols());
    let mut a = m.clone();
    let mut u = IntMatrix::identity(rows);
    let mut v = IntMatrix::identity(cols);
    for t in 0..rows.min(cols) {
        loop {
            let mut best: Option<(usize, usize)> = None;
            for i in t..rows {
                for j in t..cols {
                    if !a[(i, j)].is_zero() && best.is_none_or(|(bi, bj)| a[(i, j)].abs() < a[(bi, bj)].abs()) {
                        best = Some((i, j));
                    }
                }
            }
            let Some((pi, pj)) = best else {
                return SmithForm { u, d: a, v };
            };
            swap_rows(&mut a, t, pi);
            swap_rows(&mut u, t, pi);
            swap_cols(&mut a, t, pj);
            swap_cols(&mut v, t, pj);
            let mut clean = true;
            for i in t + 1..rows {
                let q = a[(i, t)].div_floor(&a[(t, t)]);
                if !q.is_zero() {
                    row_axpy(&mut a, i, t, &q);
                    row_axpy(&mut u, i, t, &q);
                }
                clean &= a[(i, t)].is_zero();
            }
            for j in t + 1..cols {
                let q = a[(t, j)].div_floor(&a[(t, t)]);
                if !q.is_zero() {
                    col_axpy(&mut a, j, t, &q);
                    col_axpy(&mut v, j, t, &q);
                }
                clean &= a[(t, j)].is_zero();
            }
            if !clean {
                continue;
            }
            // divisibility: fold a row with a non-multiple into the pivot row
            let bad = (t + 1..rows).find(|&i| (t + 1..cols).any(|j| !a[(i, j)].is_multiple_of(&a[(t, t)])));
            match bad {
                Some(i) => {
                    row_axpy(&mut a, t, i, &-BigInt::one());
                    row_axpy(&mut u, t, i, &-BigInt::one());
                }
                None => break,
            }
        }
        if a[(t, t)].is_negative() {
            for c in 0..cols {
                a[(t, c)] = -&a[(t, c)];
            }
            for c in 0..rows {
                u[(t, c)] = -&u[(t, c)];
            }
        }
    }
    SmithForm { u, d: a, v }
}

/// Linking matrix of a framed link (framings on the diagonal) with named
/// integer classes in the meridian basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SurgeryPresentation {
    linking: IntMatrix,
    classes: Vec<(String, Vec<BigInt>)>,
}

impl SurgeryPresentation {
    pub fn new(linking: IntMatrix, classes: Vec<(String, Vec<BigInt>)>) -> Result<Self> {
        if !linking.is_square() || !linking.is_symmetric() {
            return Err(Error::Presentation(
                "linking matrix must be square and symmetric".into(),
            ));
        }
        let n = linking.rows();
        for (i, (name, v)) in classes.iter().enumerate() {
            if v.len() != n {
                return Err(Error::Presentation(format!(
                    "class {name} has {} coordinates, expected {n}",
                    v.len()
                )));
            }
            if name.is_empty() || name.contains(char::is_whitespace) {
                return Err(Error::Presentation(format!("bad class name {name:?}")));
            }
            if classes[..i].iter().any(|(m, _)| m == name) {
                return Err(Error::Presentation(format!("duplicate class {name}")));
            }
        }
        Ok(SurgeryPresentation { linking, classes })
    }

    /// Components `K`, `P̃`, `H`, all 0-framed, with `H` linking `K` once
    /// and `P̃` `-p` times, tracking `mu_K = e₀` and `mu_Ptilde = e₁`.
    /// The relation from `H` reads `μ_K = p μ_P̃`.
    pub fn cabling_cobordism_model(p: i64) -> Self {
        let l = IntMatrix::from_rows(&[vec![0, 0, 1], vec![0, 0, -p], vec![1, -p, 0]]);
        let e = |i: usize| (0..3).map(|j| BigInt::from((i == j) as i64)).collect();
        SurgeryPresentation::new(l, vec![("mu_K".into(), e(0)), ("mu_Ptilde".into(), e(1))]).unwrap()
    }

    pub fn linking(&self) -> &IntMatrix {
        &self.linking
    }

    pub fn classes(&self) -> &[(String, Vec<BigInt>)] {
        &self.classes
    }

    pub fn class(&self, name: &str) -> Option<&[BigInt]> {
        self.classes.iter().find(|(n, _)| n == name).map(|(_, v)| v.as_slice())
    }

    /// Relabel components: new component `i` is old component `perm[i]`.
    pub fn permute(&self, perm: &[usize]) -> Result<Self> {
        let n = self.linking.rows();
        let mut seen = vec![false; n];
        if perm.len() != n || perm.iter().any(|&i| i >= n || std::mem::replace(&mut seen[i], true)) {
            return Err(Error::Presentation("not a permutation".into()));
        }
        let mut l = IntMatrix::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                l[(i, j)] = self.linking[(perm[i], perm[j])].clone();
            }
        }
        let classes = self
            .classes
            .iter()
            .map(|(name, v)| (name.clone(), perm.iter().map(|&i| v[i].clone()).collect()))
            .collect();
        SurgeryPresentation::new(l, classes)
    }
}

impl fmt::Display for SurgeryPresentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |v: &[BigInt]| v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ");
        writeln!(f, "matrix {}", self.linking.rows())?;
        for i in 0..self.linking.rows() {
            writeln!(f, "{}", join(self.linking.row(i)))?;
        }
        for (name, v) in &self.classes {
            writeln!(f, "class {name} {}", join(v))?;
        }
        Ok(())
    }
}

impl FromStr for SurgeryPresentation {
    type Err = Error;

    /// `matrix n` followed by `n` rows of integers, then `class name v₁ … vₙ`
    /// lines. `#` starts a comment.
    fn from_str(s: &str) -> Result<Self> {
        let mut n: Option<usize> = None;
        let mut rows: Vec<Vec<BigInt>> = Vec::new();
        let mut classes = Vec::new();
        for (idx, raw) in s.lines().enumerate() {
            let line = idx + 1;
            let bad = |msg: String| Error::PresentationParse { line, msg };
            let text = raw.split('#').next().unwrap().trim();
            if text.is_empty() {
                continue;
            }
            let ints = |ws: &[&str]| -> Result<Vec<BigInt>> {
                ws.iter()
                    .map(|w| w.parse::<BigInt>().map_err(|_| bad(format!("not an integer: {w}"))))
                    .collect()
            };
            let words: Vec<&str> = text.split_whitespace().collect();
            match (words[0], n) {
                ("matrix", None) => {
                    if words.len() != 2 {
                        return Err(bad("expected `matrix n`".into()));
                    }
                    n = Some(words[1].parse().map_err(|_| bad("bad size".into()))?);
                }
                ("matrix", Some(_)) => return Err(bad("second matrix header".into())),
                ("class", Some(k)) => {
                    if rows.len() != k {
                        return Err(bad(format!("class before all {k} matrix rows")));
                    }
                    if words.len() < 2 {
                        return Err(bad("class needs a name".into()));
                    }
                    classes.push((words[1].to_string(), ints(&words[2..])?));
                }
                (_, None) => return Err(bad("expected `matrix n` first".into())),
                (_, Some(k)) => {
                    if rows.len() == k {
                        return Err(bad("too many matrix rows".into()));
                    }
                    let r = ints(&words)?;
                    if r.len() != k {
                        return Err(bad(format!("row has {} entries, expected {k}", r.len())));
                    }
                    rows.push(r);
                }
            }
        }
        let k = n.ok_or(Error::PresentationParse {
            line: 0,
            msg: "missing matrix header".into(),
        })?;
        if rows.len() != k {
            return Err(Error::PresentationParse {
                line: 0,
                msg: format!("{} of {k} matrix rows", rows.len()),
            });
        }
        let l = if k == 0 {
            IntMatrix::zeros(0, 0)
        } else {
            IntMatrix::from_rows(&rows)
        };
        SurgeryPresentation::new(l, classes)
    }
}

/// Element of `Zʳ ⊕ ⨁ Z/dᵢ` in canonical coordinates; torsion entries are
/// reduced into `[0, dᵢ)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClassImage {
    #[serde(with = "crate::serde_int::vec")]
    pub free: Vec<BigInt>,
    #[serde(with = "crate::serde_int::vec")]
    pub torsion: Vec<BigInt>,
}

impl fmt::Display for ClassImage {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |v: &[BigInt]| v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(", ");
        write!(f, "free ({}) torsion ({})", join(&self.free), join(&self.torsion))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AbelianGroupDescription {
    pub rank: usize,
    #[serde(with = "crate::serde_int::vec")]
    pub torsion: Vec<BigInt>,
    pub classes: BTreeMap<String, ClassImage>,
}

impl AbelianGroupDescription {
    pub fn is_trivial(&self) -> bool {
        self.rank == 0 && self.torsion.is_empty()
    }

    fn reduce(&self, free: Vec<BigInt>, torsion: Vec<BigInt>) -> ClassImage {
        let torsion = torsion.iter().zip(&self.torsion).map(|(x, d)| x.mod_floor(d)).collect();
        ClassImage { free, torsion }
    }

    /// `a·x - b·y`.
    pub fn combine(&self, a: &BigInt, x: &ClassImage, b: &BigInt, y: &ClassImage) -> ClassImage {
        let lin = |u: &[BigInt], v: &[BigInt]| u.iter().zip(v).map(|(s, t)| a * s - b * t).collect();
        self.reduce(lin(&x.free, &y.free), lin(&x.torsion, &y.torsion))
    }
}

impl fmt::Display for AbelianGroupDescription {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = Vec::new();
        match self.rank {
            0 => {}
            1 => parts.push("Z".into()),
            r => parts.push(format!("Z^{r}")),
        }
        parts.extend(self.torsion.iter().map(|d| format!("Z/{d}")));
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

/// Cokernel of the linking matrix. A class `c` maps to `U·c`; coordinates
/// with invariant factor 1 vanish.
pub fn first_homology(s: &SurgeryPresentation) -> AbelianGroupDescription {
    let snf = smith_normal_form(&s.linking);
    let diag = snf.diagonal();
    let n = s.linking.rows();
    let torsion_idx: Vec<usize> = (0..n).filter(|&i| diag[i] > BigInt::one()).collect();
    let free_idx: Vec<usize> = (0..n).filter(|&i| diag[i].is_zero()).collect();
    let torsion: Vec<BigInt> = torsion_idx.iter().map(|&i| diag[i].clone()).collect();
    let mut g = AbelianGroupDescription {
        rank: free_idx.len(),
        torsion,
        classes: BTreeMap::new(),
    };
    for (name, v) in &s.classes {
        let w = snf.u.mul_vec(v);
        let img = g.reduce(
            free_idx.iter().map(|&i| w[i].clone()).collect(),
            torsion_idx.iter().map(|&i| w[i].clone()).collect(),
        );
        g.classes.insert(name.clone(), img);
    }
    g
}

/// Tensor with `Z[1/p]`: every prime dividing `p` is stripped from the
/// invariant factors; factors that become 1 disappear.
pub fn localize(g: &AbelianGroupDescription, p: &BigInt) -> AbelianGroupDescription {
    assert!(p.is_positive(), "localization needs p >= 1");
    let strip = |d: &BigInt| {
        let mut d = d.clone();
        loop {
            let c = d.gcd(p);
            if c.is_one() {
                return d;
            }
            d /= c;
        }
    };
    let kept: Vec<(usize, BigInt)> = g
        .torsion
        .iter()
        .enumerate()
        .map(|(i, d)| (i, strip(d)))
        .filter(|(_, d)| !d.is_one())
        .collect();
    let mut out = AbelianGroupDescription {
        rank: g.rank,
        torsion: kept.iter().map(|(_, d)| d.clone()).collect(),
        classes: BTreeMap::new(),
    };
    for (name, img) in &g.classes {
        let t = kept.iter().map(|(i, _)| img.torsion[*i].clone()).collect();
        let r = out.reduce(img.free.clone(), t);
        out.classes.insert(name.clone(), r);
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MeridianCheck {
    pub group: String,
    pub localized_group: String,
    pub mu0: String,
    pub mu1: String,
    #[serde(with = "crate::serde_int")]
    pub p: BigInt,
    /// `μ₀ = p·μ₁` in integral homology.
    pub integral_relation: bool,
    /// `μ₀ = p·μ₁` after inverting `p`, `p` being a positive unit there.
    pub localized_unit_relation: bool,
    /// `μ₀` spans a rank-1 free summand of the localized group.
    pub generates_free_summand: bool,
}

/// Check `μ₀ = p·μ₁` in `H₁` and, after inverting `p`, that the two
/// meridians differ by the positive unit `p`.
pub fn cobordism_meridian_check(s: &SurgeryPresentation, mu0: &str, mu1: &str, p: &BigInt) -> Result<MeridianCheck> {
    if !p.is_positive() {
        return Err(Error::Presentation(format!("p = {p} must be positive")));
    }
    let g = first_homology(s);
    let get = |g: &AbelianGroupDescription, n: &str| {
        g.classes
            .get(n)
            .cloned()
            .ok_or_else(|| Error::Presentation(format!("no tracked class {n}")))
    };
    let (a, b) = (get(&g, mu0)?, get(&g, mu1)?);
    let residual = g.combine(&BigInt::one(), &a, p, &b);
    let is_zero = |c: &ClassImage| c.free.iter().chain(&c.torsion).all(Zero::is_zero);
    if !is_zero(&residual) {
        return Err(Error::ClassMismatch {
            residual: format!("{mu0} - {p}*{mu1} = {residual} in {g}"),
        });
    }
    let lg = localize(&g, p);
    let (la, lb) = (get(&lg, mu0)?, get(&lg, mu1)?);
    let lres = lg.combine(&BigInt::one(), &la, p, &lb);
    if !is_zero(&lres) {
        return Err(Error::ClassMismatch {
            residual: format!("{mu0} - {p}*{mu1} = {lres} in {lg}"),
        });
    }
    // primitive over Z[1/p]: the free coordinates have gcd a unit
    let mut c = la.free.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    let summand = lg.rank == 1 && !c.is_zero() && {
        loop {
            let h = c.gcd(p);
            if h.is_one() {
                break;
            }
            c /= h;
        }
        c.is_one()
    };
    Ok(MeridianCheck {
        group: g.to_string(),
        localized_group: lg.to_string(),
        mu0: mu0.to_string(),
        mu1: mu1.to_string(),
        p: p.clone(),
        integral_relation: true,
        localized_unit_relation: true,
        generates_free_summand: summand,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[Vec<i64>]) -> IntMatrix {
        IntMatrix::from_rows(rows)
    }

    fn big(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| x.into()).collect()
    }

    fn check_snf(a: &IntMatrix) -> Vec<BigInt> {
        let s = smith_normal_form(a);
        assert_eq!(s.u.mul(a).mul(&s.v), s.d);
        assert_eq!(s.u.det().abs(), BigInt::one());
        assert_eq!(s.v.det().abs(), BigInt::one());
        s.diagonal()
    }

    #[test]
    fn snf_examples() {
        assert_eq!(check_snf(&m(&[vec![0]])), big(&[0]));
        assert_eq!(check_snf(&m(&[vec![2, 0], vec![0, 3]])), big(&[1, 6]));
        assert_eq!(check_snf(&m(&[vec![0, 5], vec![5, 0]])), big(&[5, 5]));
        assert_eq!(
            check_snf(&m(&[vec![2, 4, 4], vec![-6, 6, 12], vec![10, -4, -16]])),
            big(&[2, 6, 12])
        );
    }

    #[test]
    fn homology_examples() {
        let one = SurgeryPresentation::new(m(&[vec![0]]), vec![("mu".into(), big(&[1]))]).unwrap();
        let g = first_homology(&one);
        assert_eq!((g.rank, g.torsion.len()), (1, 0));
        assert_eq!(g.classes["mu"].free, big(&[1]));
        let unlink = SurgeryPresentation::new(m(&[vec![0, 0], vec![0, 0]]), vec![]).unwrap();
        assert_eq!(first_homology(&unlink).rank, 2);
        let hopf = SurgeryPresentation::new(m(&[vec![0, 1], vec![1, 0]]), vec![]).unwrap();
        assert!(first_homology(&hopf).is_trivial());
        let lens = SurgeryPresentation::new(m(&[vec![6]]), vec![]).unwrap();
        assert_eq!(first_homology(&lens).to_string(), "Z/6");
    }

    #[test]
    fn localization() {
        let s = SurgeryPresentation::new(m(&[vec![0, 0], vec![0, 6]]), vec![("x".into(), big(&[1, 5]))]).unwrap();
        let g = first_homology(&s);
        assert_eq!(g.to_string(), "Z + Z/6");
        let l = localize(&g, &2.into());
        assert_eq!(l.to_string(), "Z + Z/3");
        assert_eq!(l.classes["x"].torsion, big(&[2]));
        assert_eq!(localize(&l, &2.into()), l);
        let s = SurgeryPresentation::new(m(&[vec![8]]), vec![]).unwrap();
        assert!(localize(&first_homology(&s), &2.into()).is_trivial());
    }

    #[test]
    fn cabling_model_passes() {
        for p in [1i64, 2, 3, 5] {
            let s = SurgeryPresentation::cabling_cobordism_model(p);
            let g = first_homology(&s);
            assert_eq!(g.to_string(), "Z");
            let r = cobordism_meridian_check(&s, "mu_K", "mu_Ptilde", &p.into()).unwrap();
            assert!(r.integral_relation && r.localized_unit_relation && r.generates_free_summand);
        }
        let s = SurgeryPresentation::cabling_cobordism_model(2);
        assert!(matches!(
            cobordism_meridian_check(&s, "mu_K", "mu_Ptilde", &3.into()),
            Err(Error::ClassMismatch { .. })
        ));
    }

    #[test]
    fn hopf_pair_trivially_holds() {
        let s = SurgeryPresentation::new(
            m(&[vec![0, 1], vec![1, 0]]),
            vec![("a".into(), big(&[1, 0])), ("b".into(), big(&[1, 0]))],
        )
        .unwrap();
        let r = cobordism_meridian_check(&s, "a", "b", &1.into()).unwrap();
        assert!(r.integral_relation && !r.generates_free_summand);
    }

    #[test]
    fn text_round_trip() {
        let s = SurgeryPresentation::cabling_cobordism_model(3);
        let text = s.to_string();
        assert_eq!(
            text,
            "matrix 3\n0 0 1\n0 0 -3\n1 -3 0\nclass mu_K 1 0 0\nclass mu_Ptilde 0 1 0\n"
        );
        assert_eq!(text.parse::<SurgeryPresentation>().unwrap(), s);
        assert!(matches!(
            "matrix 2\n0 1\n2 0\n".parse::<SurgeryPresentation>(),
            Err(Error::Presentation(_))
        ));
        assert!(matches!(
            "matrix 1\n0 1\n".parse::<SurgeryPresentation>(),
            Err(Error::PresentationParse { line: 2, .. })
        ));
    }
}
