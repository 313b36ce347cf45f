//! Legendrian fronts as event lists, their Thurston–Bennequin and rotation
//! numbers, satellite formulas, and slice-genus bounds from the
//! slice-Bennequin inequality and its τ and s refinements.
//!
//! A front is read left to right as a sequence of columns. Strands in a
//! column are indexed from the bottom starting at 0. `L i` inserts a left
//! cusp whose two new strands take positions `i` and `i+1`; `R i` closes
//! the strands at `i` and `i+1` with a right cusp; `X i` crosses them.
//! A front in the solid torus starts and ends with `boundary` strands, the
//! right edge glued to the left edge at equal heights.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::cabling::{Cited, KnotProfile};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Event {
    LeftCusp(usize),
    RightCusp(usize),
    Crossing(usize),
}

impl fmt::Display for Event {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Event::LeftCusp(i) => write!(f, "L {i}"),
            Event::RightCusp(i) => write!(f, "R {i}"),
            Event::Crossing(i) => write!(f, "X {i}"),
        }
    }
}

/// Event-list front diagram with an orientation marker: the direction
/// (`+1` rightward, `-1` leftward) of the bottom strand in the first
/// column that has strands.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FrontDiagram {
    boundary: usize,
    orientation: i8,
    events: Vec<Event>,
}

/// Tally of a front, or formula-level values where only `tb` and `rot`
/// are known.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LegendrianInvariants {
    pub tb: i64,
    pub rot: i64,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub writhe: Option<i64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub cusps: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub down_left_cusps: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub up_right_cusps: Option<u64>,
    /// Algebraic winding around the solid torus (fronts with boundary).
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub winding: Option<i64>,
}

impl LegendrianInvariants {
    pub fn new(tb: i64, rot: i64) -> Self {
        LegendrianInvariants {
            tb,
            rot,
            writhe: None,
            cusps: None,
            down_left_cusps: None,
            up_right_cusps: None,
            winding: None,
        }
    }
}

// A strand segment between two column boundaries or cusps.
#[derive(Clone, Copy, Debug)]
enum End {
    Cusp(usize),
    Boundary(usize),
}

struct Piece {
    left: End,
    right: End,
}

struct Traced {
    directions: Vec<i8>,
    crossings: Vec<(usize, usize)>,
    left_cusps: Vec<(usize, usize)>,
    right_cusps: Vec<(usize, usize)>,
    left_boundary: Vec<usize>,
}

impl FrontDiagram {
    pub fn new(boundary: usize, orientation: i8, events: Vec<Event>) -> Result<Self> {
        if orientation != 1 && orientation != -1 {
            return Err(Error::InvalidFront(format!(
                "orientation {orientation} is not +1 or -1"
            )));
        }
        let d = FrontDiagram {
            boundary,
            orientation,
            events,
        };
        d.trace()?;
        Ok(d)
    }

    pub fn boundary(&self) -> usize {
        self.boundary
    }

    pub fn orientation(&self) -> i8 {
        self.orientation
    }

    pub fn events(&self) -> &[Event] {
        &self.events
    }

    pub fn is_planar(&self) -> bool {
        self.boundary == 0
    }

    /// Strand count after each prefix of the event list.
    fn strand_counts(&self) -> Vec<usize> {
        let mut n = self.boundary;
        let mut out = vec![n];
        for e in &self.events {
            match e {
                Event::LeftCusp(_) => n += 2,
                Event::RightCusp(_) => n = n.saturating_sub(2),
                Event::Crossing(_) => {}
            }
            out.push(n);
        }
        out
    }

    fn trace(&self) -> Result<Traced> {
        let mut pieces: Vec<Piece> = Vec::new();
        let mut strands: Vec<usize> = Vec::new();
        for h in 0..self.boundary {
            pieces.push(Piece {
                left: End::Boundary(h),
                right: End::Boundary(usize::MAX),
            });
            strands.push(h);
        }
        let (mut crossings, mut left_cusps, mut right_cusps) = (Vec::new(), Vec::new(), Vec::new());
        for (col, e) in self.events.iter().enumerate() {
            let bad = |msg: String| Err(Error::InvalidFront(format!("event {} ({e}): {msg}", col + 1)));
            match *e {
                Event::LeftCusp(i) => {
                    if i > strands.len() {
                        return bad(format!("height {i} above {} strands", strands.len()));
                    }
                    let a = pieces.len();
                    pieces.push(Piece {
                        left: End::Cusp(a + 1),
                        right: End::Boundary(usize::MAX),
                    });
                    pieces.push(Piece {
                        left: End::Cusp(a),
                        right: End::Boundary(usize::MAX),
                    });
                    strands.splice(i..i, [a, a + 1]);
                    left_cusps.push((a, a + 1));
                }
                Event::RightCusp(i) => {
                    if i + 1 >= strands.len() {
                        return bad(format!("needs strands {i} and {} of {}", i + 1, strands.len()));
                    }
                    let (a, b) = (strands[i], strands[i + 1]);
                    pieces[a].right = End::Cusp(b);
                    pieces[b].right = End::Cusp(a);
                    strands.drain(i..i + 2);
                    right_cusps.push((a, b));
                }
                Event::Crossing(i) => {
                    if i + 1 >= strands.len() {
                        return bad(format!("needs strands {i} and {} of {}", i + 1, strands.len()));
                    }
                    crossings.push((strands[i], strands[i + 1]));
                    strands.swap(i, i + 1);
                }
            }
        }
        if strands.len() != self.boundary {
            return Err(Error::NonClosed(format!(
                "{} strands at the right edge, {} at the left",
                strands.len(),
                self.boundary
            )));
        }
        for (h, &s) in strands.iter().enumerate() {
            pieces[s].right = End::Boundary(h);
        }
        let left_boundary: Vec<usize> = (0..self.boundary).collect();
        let right_boundary = strands;
        if pieces.is_empty() {
            return Err(Error::MultiComponent(0));
        }

        let mut directions = vec![0i8; pieces.len()];
        let mut components = 0;
        let mut first = true;
        // The marker fixes the first component; further components are
        // only counted.
        let start = if self.boundary > 0 { 0 } else { left_cusps[0].0 };
        let mut order = vec![start];
        order.extend(0..pieces.len());
        for s in order {
            if directions[s] != 0 {
                continue;
            }
            components += 1;
            let mut cur = s;
            let mut d: i8 = if first { self.orientation } else { 1 };
            first = false;
            while directions[cur] == 0 {
                directions[cur] = d;
                let end = if d == 1 { pieces[cur].right } else { pieces[cur].left };
                match end {
                    End::Cusp(p) => {
                        cur = p;
                        d = -d;
                    }
                    End::Boundary(h) => {
                        cur = if d == 1 { left_boundary[h] } else { right_boundary[h] };
                    }
                }
            }
        }
        if components != 1 {
            return Err(Error::MultiComponent(components));
        }
        Ok(Traced {
            directions,
            crossings,
            left_cusps,
            right_cusps,
            left_boundary,
        })
    }

    /// `tb = writhe - cusps/2`, `rot = #down left cusps - #up right cusps`.
    ///
    /// A crossing is positive iff both strands run in the same horizontal
    /// direction. A left cusp moves down iff its lower strand runs to the
    /// right; a right cusp moves up iff its lower strand runs to the right.
    pub fn invariants(&self) -> Result<LegendrianInvariants> {
        let t = self.trace()?;
        let dir = &t.directions;
        let writhe: i64 = t
            .crossings
            .iter()
            .map(|&(a, b)| if dir[a] == dir[b] { 1 } else { -1 })
            .sum();
        let cusps = (t.left_cusps.len() + t.right_cusps.len()) as u64;
        let down_left = t.left_cusps.iter().filter(|&&(a, _)| dir[a] == 1).count() as u64;
        let up_right = t.right_cusps.iter().filter(|&&(a, _)| dir[a] == 1).count() as u64;
        let tb = writhe - (cusps / 2) as i64;
        let rot = down_left as i64 - up_right as i64;
        let winding = (!self.is_planar()).then(|| t.left_boundary.iter().map(|&p| dir[p] as i64).sum());
        if self.is_planar() {
            debug_assert!((tb + rot.abs()).rem_euclid(2) == 1, "parity of a planar front");
        }
        Ok(LegendrianInvariants {
            tb,
            rot,
            writhe: Some(writhe),
            cusps: Some(cusps),
            down_left_cusps: Some(down_left),
            up_right_cusps: Some(up_right),
            winding,
        })
    }

    /// Cut the diagram before event `k` instead of at the left edge.
    /// The result encodes the same curve in the solid torus with the same
    /// orientation.
    pub fn rotate(&self, k: usize) -> Result<FrontDiagram> {
        let k = k % self.events.len().max(1);
        let counts = self.strand_counts();
        let t = self.trace()?;
        let mut events = self.events[k..].to_vec();
        events.extend_from_slice(&self.events[..k]);
        let boundary = counts[k];
        // Direction of the bottom strand in the first column with strands
        // of the rotated diagram, read off the original traversal.
        let mut strands: Vec<usize> = t.left_boundary.clone();
        let mut next_piece = self.boundary;
        let mut cols: Vec<Vec<usize>> = vec![strands.clone()];
        for e in &self.events {
            match *e {
                Event::LeftCusp(i) => {
                    strands.splice(i..i, [next_piece, next_piece + 1]);
                    next_piece += 2;
                }
                Event::RightCusp(i) => {
                    strands.drain(i..i + 2);
                }
                Event::Crossing(i) => strands.swap(i, i + 1),
            }
            cols.push(strands.clone());
        }
        let n = self.events.len();
        let first = (0..=n)
            .map(|j| &cols[(k + j) % (n + 1).max(1)])
            .map(|c| c.first().copied())
            .find(|c| c.is_some())
            .flatten()
            .expect("nonempty diagram");
        // the column after the last event equals the left edge
        let first = if boundary == 0 && k == n {
            t.left_cusps[0].0
        } else {
            first
        };
        FrontDiagram::new(boundary, t.directions[first], events)
    }

    /// Pattern data read off a front in the solid torus.
    pub fn pattern_data(&self, tilde_class: Cited<TildeClass>) -> Result<PatternData> {
        let inv = self.invariants()?;
        let winding = inv
            .winding
            .ok_or_else(|| Error::InvalidFront("a pattern front needs boundary strands".into()))?;
        Ok(PatternData {
            winding,
            tb: inv.tb,
            rot: inv.rot,
            tilde_class,
        })
    }
}

impl fmt::Display for FrontDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "orient {}", if self.orientation == 1 { "+" } else { "-" })?;
        if self.boundary > 0 {
            writeln!(f, "boundary {}", self.boundary)?;
        }
        for e in &self.events {
            writeln!(f, "{e}")?;
        }
        Ok(())
    }
}

impl FromStr for FrontDiagram {
    type Err = Error;

    /// One record per line: `orient +|-`, optional `boundary N`, then
    /// events `L i`, `R i`, `X i`. Blank lines and `#` comments are
    /// ignored.
    fn from_str(s: &str) -> Result<Self> {
        let mut orientation = None;
        let mut boundary = None;
        let mut events = Vec::new();
        for (idx, raw) in s.lines().enumerate() {
            let line = idx + 1;
            let bad = |msg: &str| Error::FrontParse {
                line,
                msg: msg.to_string(),
            };
            let text = raw.split('#').next().unwrap().trim();
            if text.is_empty() {
                continue;
            }
            let mut words = text.split_whitespace();
            let head = words.next().unwrap();
            let arg = words.next().ok_or_else(|| bad("missing argument"))?;
            if words.next().is_some() {
                return Err(bad("trailing input"));
            }
            match head {
                "orient" => {
                    if orientation.is_some() || !events.is_empty() {
                        return Err(bad("orient must come once, before events"));
                    }
                    orientation = Some(match arg {
                        "+" => 1,
                        "-" => -1,
                        _ => return Err(bad("orient takes + or -")),
                    });
                }
                "boundary" => {
                    if boundary.is_some() || !events.is_empty() {
                        return Err(bad("boundary must come once, before events"));
                    }
                    boundary = Some(arg.parse().map_err(|_| bad("boundary takes a count"))?);
                }
                "L" | "R" | "X" => {
                    let i: usize = arg.parse().map_err(|_| bad("height must be a nonnegative integer"))?;
                    events.push(match head {
                        "L" => Event::LeftCusp(i),
                        "R" => Event::RightCusp(i),
                        _ => Event::Crossing(i),
                    });
                }
                _ => return Err(bad("unknown record")),
            }
        }
        let orientation = orientation.ok_or(Error::FrontParse {
            line: 0,
            msg: "missing orient record".into(),
        })?;
        FrontDiagram::new(boundary.unwrap_or(0), orientation, events)
    }
}

/// Isotopy class of the pattern viewed in `S³` through the standard
/// unknotted solid torus.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum TildeClass {
    Unknot,
    ZSlice,
    /// Slice in a `Z[1/p]`-homology ball, `p` the winding number.
    ZInvPSlice,
    Other,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PatternData {
    pub winding: i64,
    pub tb: i64,
    pub rot: i64,
    pub tilde_class: Cited<TildeClass>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Stabilization {
    /// Raises `rot` by one.
    Positive,
    Negative,
}

/// `count` stabilizations: each lowers `tb` by one and moves `rot` by one.
pub fn stabilize(inv: &LegendrianInvariants, direction: Stabilization, count: u64) -> LegendrianInvariants {
    if count == 0 {
        return *inv;
    }
    let c = count as i64;
    let rot = match direction {
        Stabilization::Positive => inv.rot + c,
        Stabilization::Negative => inv.rot - c,
    };
    LegendrianInvariants::new(inv.tb - c, rot)
}

/// `tb(P(K)) = w² tb(K) + tb(P)`, `rot(P(K)) = w rot(K) + rot(P)`, with the
/// satellite taken in the Legendrian framing of the companion.
pub fn satellite_invariants(pattern: &PatternData, companion: &LegendrianInvariants) -> LegendrianInvariants {
    let w = pattern.winding;
    LegendrianInvariants::new(w * w * companion.tb + pattern.tb, w * companion.rot + pattern.rot)
}

/// Lower bounds from `tb + |rot| <= 2τ - 1 <= 2g₄ - 1` and
/// `tb + |rot| <= s - 1 <= 2g₄ - 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct SliceBounds {
    pub g4_min: u64,
    pub tau_min: i64,
    pub s_min: i64,
}

pub fn genus_bounds(inv: &LegendrianInvariants) -> SliceBounds {
    let m = inv.tb + inv.rot.abs() + 1;
    let half_up = m.div_euclid(2) + m.rem_euclid(2);
    SliceBounds {
        g4_min: half_up.max(0) as u64,
        tau_min: half_up,
        s_min: m,
    }
}

/// Values forced on a knot with a Legendrian realization attaining
/// `tb = 2g - 1`: `g₄ = τ = g`, `s = 2g`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct SharpValues {
    pub g4: u64,
    pub tau: i64,
    pub s: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SatelliteBoundsReport {
    pub knot: String,
    pub genus: u32,
    pub companion: LegendrianInvariants,
    pub stabilized: LegendrianInvariants,
    pub pattern: PatternData,
    pub satellite: LegendrianInvariants,
    pub companion_values: SharpValues,
    pub satellite_bounds: SliceBounds,
    pub g4_increases: bool,
    pub tau_increases: bool,
    pub s_increases: bool,
    pub notes: Vec<String>,
}

/// Stabilize a realization with `tb = 2g - 1`, `rot = 0` to `(0, 2g - 1)`,
/// form the satellite with `pattern`, and compare the resulting bounds
/// with the sharp values of the companion.
pub fn theorem31_pipeline(
    knot: &KnotProfile,
    realization: &LegendrianInvariants,
    pattern: &PatternData,
) -> Result<SatelliteBoundsReport> {
    let g = knot
        .genus
        .as_ref()
        .ok_or_else(|| Error::HypothesisNotMet(format!("no declared genus for {}", knot.name)))?
        .value;
    if g == 0 {
        return Err(Error::HypothesisNotMet(format!("{} has genus 0", knot.name)));
    }
    let target = 2 * g as i64 - 1;
    if realization.tb != target {
        return Err(Error::HypothesisNotMet(format!(
            "tb = {} but 2g - 1 = {target} for {}",
            realization.tb, knot.name
        )));
    }
    if realization.rot != 0 {
        return Err(Error::HypothesisNotMet(format!("rot = {} is not 0", realization.rot)));
    }
    let stabilized = stabilize(realization, Stabilization::Positive, realization.tb as u64);
    let satellite = satellite_invariants(pattern, &stabilized);
    let bounds = genus_bounds(&satellite);
    let sharp = SharpValues {
        g4: g as u64,
        tau: g as i64,
        s: 2 * g as i64,
    };
    let mut notes = Vec::new();
    if pattern.winding == 1 && pattern.tilde_class.value == TildeClass::Unknot {
        notes.push(format!(
            "winding number 1 and unknotted P~: the zero surgeries on {0} and P({0}) are smoothly Z-homology cobordant rel meridians (homology shadow: homology-check with p = 1)",
            knot.name
        ));
    }
    if let Some(ts) = knot.topologically_slice() {
        if ts.value && pattern.tilde_class.value == TildeClass::Unknot {
            notes.push(format!(
                "{0} is topologically slice [{1}], hence so is P({0}) (P~ is unknotted), while the smooth bounds above still increase",
                knot.name, ts.citation
            ));
        }
    }
    Ok(SatelliteBoundsReport {
        knot: knot.name.clone(),
        genus: g,
        companion: *realization,
        stabilized,
        pattern: pattern.clone(),
        satellite,
        companion_values: sharp,
        satellite_bounds: bounds,
        g4_increases: bounds.g4_min > sharp.g4,
        tau_increases: bounds.tau_min > sharp.tau,
        s_increases: bounds.s_min > sharp.s,
        notes,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    const TREFOIL_MAX: &str = "orient +\nL 0\nL 2\nX 1\nX 1\nX 1\nR 2\nR 0\n";
    const TREFOIL_STAB: &str = "orient +\nL 0\nL 2\nL 0\nR 1\nX 1\nX 1\nX 1\nR 2\nR 0\n";
    const PATTERN: &str = "orient -\nboundary 3\nL 0\nR 2\nX 1\nX 1\nX 1\n";

    fn counts(d: &FrontDiagram) -> (i64, u64, u64, u64, i64, i64) {
        let i = d.invariants().unwrap();
        (
            i.writhe.unwrap(),
            i.cusps.unwrap(),
            i.down_left_cusps.unwrap(),
            i.up_right_cusps.unwrap(),
            i.tb,
            i.rot,
        )
    }

    #[test]
    fn trefoil_fronts() {
        let d: FrontDiagram = TREFOIL_MAX.parse().unwrap();
        assert_eq!(counts(&d), (3, 4, 1, 1, 1, 0));
        let d: FrontDiagram = TREFOIL_STAB.parse().unwrap();
        assert_eq!(counts(&d), (3, 6, 2, 1, 0, 1));
    }

    #[test]
    fn pattern_front() {
        let d: FrontDiagram = PATTERN.parse().unwrap();
        assert_eq!(counts(&d), (3, 2, 0, 0, 2, 0));
        assert_eq!(d.invariants().unwrap().winding, Some(1));
    }

    #[test]
    fn satellite_front_matches_formulas() {
        let d: FrontDiagram = include_str!("../data/fronts/satellite_P_of_RH_trefoil.front")
            .parse()
            .unwrap();
        assert_eq!(d.events().len(), 68);
        assert_eq!(counts(&d), (12, 20, 5, 4, 2, 1));
        let pattern: FrontDiagram = PATTERN.parse().unwrap();
        let p = pattern.pattern_data(Cited::new(TildeClass::Unknot, "x")).unwrap();
        let k: FrontDiagram = TREFOIL_STAB.parse().unwrap();
        let sat = satellite_invariants(&p, &k.invariants().unwrap());
        assert_eq!((sat.tb, sat.rot), (2, 1));
    }

    #[test]
    fn torus_knot_front() {
        let d: FrontDiagram = "orient +\nL 0\nL 2\nX 1\nX 1\nX 1\nX 1\nX 1\nR 2\nR 0\n"
            .parse()
            .unwrap();
        assert_eq!(counts(&d), (5, 4, 1, 1, 3, 0));
    }

    #[test]
    fn print_parse_round_trip() {
        for s in [TREFOIL_MAX, TREFOIL_STAB, PATTERN] {
            let d: FrontDiagram = s.parse().unwrap();
            assert_eq!(d.to_string(), s);
        }
    }

    #[test]
    fn rejects_bad_fronts() {
        assert!(matches!(
            "orient +\nL 0\n".parse::<FrontDiagram>(),
            Err(Error::NonClosed(_))
        ));
        assert!(matches!(
            "orient +\nL 0\nL 0\nR 0\nR 0\n".parse::<FrontDiagram>(),
            Err(Error::MultiComponent(2))
        ));
        assert!(matches!(
            "L 0\nR 0\n".parse::<FrontDiagram>(),
            Err(Error::FrontParse { .. })
        ));
        assert!(matches!(
            "orient +\nQ 0\n".parse::<FrontDiagram>(),
            Err(Error::FrontParse { line: 2, .. })
        ));
        assert!(matches!(
            "orient +\nR 0\n".parse::<FrontDiagram>(),
            Err(Error::InvalidFront(_))
        ));
        assert!(matches!(
            "orient +\n".parse::<FrontDiagram>(),
            Err(Error::MultiComponent(0))
        ));
    }

    #[test]
    fn rotation_preserves_invariants() {
        for s in [TREFOIL_MAX, TREFOIL_STAB, PATTERN] {
            let d: FrontDiagram = s.parse().unwrap();
            let base = d.invariants().unwrap();
            for k in 0..d.events().len() {
                let r = d.rotate(k).unwrap();
                let i = r.invariants().unwrap();
                assert_eq!(
                    (i.writhe, i.cusps, i.down_left_cusps, i.up_right_cusps),
                    (base.writhe, base.cusps, base.down_left_cusps, base.up_right_cusps),
                    "{s} rotated by {k}"
                );
            }
        }
    }

    #[test]
    fn stabilization_and_satellites() {
        let s = stabilize(&LegendrianInvariants::new(3, 0), Stabilization::Positive, 3);
        assert_eq!((s.tb, s.rot), (0, 3));
        let s = stabilize(&LegendrianInvariants::new(1, 0), Stabilization::Negative, 2);
        assert_eq!((s.tb, s.rot), (-1, -2));
        let p = PatternData {
            winding: 1,
            tb: 2,
            rot: 0,
            tilde_class: Cited::new(TildeClass::Unknot, "x"),
        };
        let sat = satellite_invariants(&p, &LegendrianInvariants::new(0, 1));
        assert_eq!((sat.tb, sat.rot), (2, 1));
    }

    #[test]
    fn bounds() {
        let b = genus_bounds(&LegendrianInvariants::new(2, 3));
        assert_eq!((b.g4_min, b.tau_min, b.s_min), (3, 3, 6));
        assert_eq!(genus_bounds(&LegendrianInvariants::new(-1, 0)).g4_min, 0);
        assert_eq!(genus_bounds(&LegendrianInvariants::new(0, 1)).tau_min, 1);
    }
}
