//! Knot catalog: Seifert matrices, declared invariants with citations,
//! Legendrian fronts and surgery presentations.
//!
//! The catalog is a JSON array of entries. Computed data (Alexander
//! polynomial, signatures, front invariants) is always recomputed; a
//! stored Alexander polynomial is only checked against the matrix.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::cabling::{Cited, KnotProfile};
use crate::error::{Error, Result};
use crate::laurent::LaurentPoly;
use crate::legendrian::{FrontDiagram, LegendrianInvariants, PatternData, TildeClass};
use crate::seifert::SeifertMatrix;
use crate::surgery::SurgeryPresentation;

const BUNDLED_JSON: &str = include_str!("../data/catalog.json");

const BUNDLED_FILES: &[(&str, &str)] = &[
    ("fronts/pattern_P.front", include_str!("../data/fronts/pattern_P.front")),
    (
        "fronts/RH_trefoil_stabilized.front",
        include_str!("../data/fronts/RH_trefoil_stabilized.front"),
    ),
    (
        "fronts/RH_trefoil_max_tb.front",
        include_str!("../data/fronts/RH_trefoil_max_tb.front"),
    ),
    (
        "fronts/T2_5_max_tb.front",
        include_str!("../data/fronts/T2_5_max_tb.front"),
    ),
    (
        "fronts/satellite_P_of_RH_trefoil.front",
        include_str!("../data/fronts/satellite_P_of_RH_trefoil.front"),
    ),
    (
        "presentations/cable_cobordism_p1.pres",
        include_str!("../data/presentations/cable_cobordism_p1.pres"),
    ),
    (
        "presentations/cable_cobordism_p2.pres",
        include_str!("../data/presentations/cable_cobordism_p2.pres"),
    ),
    (
        "presentations/cable_cobordism_p3.pres",
        include_str!("../data/presentations/cable_cobordism_p3.pres"),
    ),
    (
        "presentations/cable_cobordism_p5.pres",
        include_str!("../data/presentations/cable_cobordism_p5.pres"),
    ),
];

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawFile {
    name: String,
    file: String,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawPresentation {
    name: String,
    file: String,
    mu0: Option<String>,
    mu1: Option<String>,
    p: Option<u64>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawLegendrian {
    tb: i64,
    rot: i64,
    citation: String,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawPattern {
    tilde_class: Cited<TildeClass>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawEntry {
    name: String,
    seifert_matrix: Option<Vec<Vec<i64>>>,
    alexander: Option<String>,
    genus: Option<Cited<u32>>,
    tau: Option<Cited<i64>>,
    s: Option<Cited<i64>>,
    topologically_slice: Option<Cited<bool>>,
    irreducible_powers: Option<Cited<bool>>,
    #[serde(default)]
    legendrian: Vec<RawLegendrian>,
    pattern: Option<RawPattern>,
    #[serde(default)]
    fronts: Vec<RawFile>,
    #[serde(default)]
    presentations: Vec<RawPresentation>,
}

#[derive(Clone, Debug)]
pub struct NamedFront {
    pub name: String,
    pub file: String,
    pub diagram: FrontDiagram,
}

/// A presentation with the classes and multiplier it is meant to be
/// checked with.
#[derive(Clone, Debug)]
pub struct NamedPresentation {
    pub name: String,
    pub file: String,
    pub presentation: SurgeryPresentation,
    pub mu0: Option<String>,
    pub mu1: Option<String>,
    pub p: Option<BigInt>,
}

/// Declared Legendrian realization (no front stored).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DeclaredRealization {
    pub invariants: LegendrianInvariants,
    pub citation: String,
}

#[derive(Clone, Debug)]
pub struct CatalogEntry {
    pub name: String,
    pub profile: Option<KnotProfile>,
    pub legendrian: Vec<DeclaredRealization>,
    pub pattern: Option<Cited<TildeClass>>,
    pub fronts: Vec<NamedFront>,
    pub presentations: Vec<NamedPresentation>,
}

impl CatalogEntry {
    /// Pattern data from this entry's first front with boundary strands.
    pub fn pattern_data(&self) -> Option<Result<PatternData>> {
        let class = self.pattern.clone()?;
        let front = self.fronts.iter().find(|f| !f.diagram.is_planar())?;
        Some(front.diagram.pattern_data(class))
    }
}

#[derive(Clone, Debug, Default)]
pub struct Catalog {
    entries: Vec<CatalogEntry>,
}

fn invalid(entry: &str, msg: impl Into<String>) -> Error {
    Error::CatalogValidation {
        entry: entry.to_string(),
        msg: msg.into(),
    }
}

impl Catalog {
    /// The catalog compiled into the library.
    pub fn bundled() -> Catalog {
        Catalog::from_json(BUNDLED_JSON, |f| {
            BUNDLED_FILES
                .iter()
                .find(|(n, _)| *n == f)
                .map(|(_, s)| s.to_string())
                .ok_or_else(|| Error::CatalogParse {
                    location: f.to_string(),
                    msg: "not a bundled file".into(),
                })
        })
        .expect("bundled catalog is valid")
    }

    /// Read a catalog file; front and presentation paths are relative to
    /// its directory.
    pub fn load(path: &Path) -> Result<Catalog> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::CatalogParse {
            location: path.display().to_string(),
            msg: e.to_string(),
        })?;
        let dir: PathBuf = path.parent().map(Path::to_path_buf).unwrap_or_default();
        Catalog::from_json(&text, |f| {
            let p = dir.join(f);
            std::fs::read_to_string(&p).map_err(|e| Error::CatalogParse {
                location: p.display().to_string(),
                msg: e.to_string(),
            })
        })
    }

    /// Parse and validate. `read` resolves referenced file names.
    pub fn from_json(text: &str, read: impl Fn(&str) -> Result<String>) -> Result<Catalog> {
        if text.trim().is_empty() {
            return Ok(Catalog::default());
        }
        let raw: Vec<RawEntry> = serde_json::from_str(text).map_err(|e| Error::CatalogParse {
            location: format!("line {} column {}", e.line(), e.column()),
            msg: e.to_string(),
        })?;
        let mut entries = Vec::new();
        for r in raw {
            entries.push(Self::entry(r, &read)?);
        }
        let cat = Catalog { entries };
        cat.check_unique()?;
        Ok(cat)
    }

    fn entry(r: RawEntry, read: &impl Fn(&str) -> Result<String>) -> Result<CatalogEntry> {
        let name = r.name;
        let knot_fields = r.alexander.is_some()
            || r.genus.is_some()
            || r.tau.is_some()
            || r.s.is_some()
            || r.topologically_slice.is_some()
            || r.irreducible_powers.is_some()
            || !r.legendrian.is_empty();
        let profile = match r.seifert_matrix {
            Some(rows) => {
                let v = if rows.is_empty() {
                    SeifertMatrix::empty()
                } else {
                    if rows.iter().any(|row| row.len() != rows.len()) {
                        return Err(invalid(&name, "seifert_matrix is not square"));
                    }
                    SeifertMatrix::from_rows(&rows).map_err(|e| invalid(&name, e.to_string()))?
                };
                if let Some(a) = &r.alexander {
                    let a: LaurentPoly = a
                        .parse()
                        .map_err(|e: Error| invalid(&name, format!("alexander: {e}")))?;
                    if !a.doteq(v.alexander()) {
                        return Err(invalid(
                            &name,
                            format!(
                                "declared Alexander polynomial {a} but the matrix gives {}",
                                v.alexander()
                            ),
                        ));
                    }
                }
                let mut k = KnotProfile::from_seifert(name.clone(), v);
                k.genus = r.genus;
                k.tau = r.tau;
                k.s = r.s;
                k.topologically_slice = r.topologically_slice;
                k.irreducible_powers = r.irreducible_powers;
                k.validate().map_err(|e| invalid(&name, e.to_string()))?;
                Some(k)
            }
            None if knot_fields => {
                return Err(invalid(&name, "knot invariants given without a seifert_matrix"));
            }
            None => None,
        };
        let genus = profile.as_ref().and_then(|k| k.genus.as_ref()).map(|g| g.value);
        let mut legendrian = Vec::new();
        for l in r.legendrian {
            let inv = LegendrianInvariants::new(l.tb, l.rot);
            if let Some(g) = genus {
                // slice-Bennequin against g4 <= g
                if inv.tb + inv.rot.abs() > 2 * g as i64 - 1 {
                    return Err(invalid(
                        &name,
                        format!("declared tb {} rot {} violate slice-Bennequin for g = {g}", l.tb, l.rot),
                    ));
                }
            }
            legendrian.push(DeclaredRealization {
                invariants: inv,
                citation: l.citation,
            });
        }
        let mut fronts = Vec::new();
        for f in r.fronts {
            let text = read(&f.file)?;
            let diagram: FrontDiagram = text
                .parse()
                .map_err(|e: Error| invalid(&name, format!("{}: {e}", f.file)))?;
            diagram
                .invariants()
                .map_err(|e| invalid(&name, format!("{}: {e}", f.file)))?;
            fronts.push(NamedFront {
                name: f.name,
                file: f.file,
                diagram,
            });
        }
        let pattern = r.pattern.map(|p| p.tilde_class);
        if pattern.is_some() && !fronts.iter().any(|f| !f.diagram.is_planar()) {
            return Err(invalid(&name, "pattern entry needs a front with boundary strands"));
        }
        let mut presentations = Vec::new();
        for p in r.presentations {
            let text = read(&p.file)?;
            let pres: SurgeryPresentation = text
                .parse()
                .map_err(|e: Error| invalid(&name, format!("{}: {e}", p.file)))?;
            for c in [&p.mu0, &p.mu1].into_iter().flatten() {
                if pres.class(c).is_none() {
                    return Err(invalid(&name, format!("{}: no class {c}", p.file)));
                }
            }
            if p.p == Some(0) {
                return Err(invalid(&name, format!("{}: p must be positive", p.file)));
            }
            presentations.push(NamedPresentation {
                name: p.name,
                file: p.file,
                presentation: pres,
                mu0: p.mu0,
                mu1: p.mu1,
                p: p.p.map(BigInt::from),
            });
        }
        Ok(CatalogEntry {
            name,
            profile,
            legendrian,
            pattern,
            fronts,
            presentations,
        })
    }

    fn check_unique(&self) -> Result<()> {
        let mut seen: BTreeMap<&str, &str> = BTreeMap::new();
        for e in &self.entries {
            if seen.insert(&e.name, "entry").is_some() {
                return Err(invalid(&e.name, "duplicate entry name"));
            }
        }
        let mut items: BTreeMap<&str, &str> = BTreeMap::new();
        for e in &self.entries {
            let names = e
                .fronts
                .iter()
                .map(|f| &f.name)
                .chain(e.presentations.iter().map(|p| &p.name));
            for n in names {
                if items.insert(n, &e.name).is_some() {
                    return Err(invalid(&e.name, format!("duplicate front or presentation name {n}")));
                }
            }
        }
        Ok(())
    }

    pub fn entries(&self) -> &[CatalogEntry] {
        &self.entries
    }

    pub fn entry_named(&self, name: &str) -> Result<&CatalogEntry> {
        self.entries
            .iter()
            .find(|e| e.name == name)
            .ok_or_else(|| Error::UnknownName(name.to_string()))
    }

    /// Knot profile by entry name.
    pub fn knot(&self, name: &str) -> Result<&KnotProfile> {
        self.entry_named(name)?
            .profile
            .as_ref()
            .ok_or_else(|| Error::UnknownName(format!("{name} (not a knot entry)")))
    }

    /// Front by front name, with the entry that holds it.
    pub fn front(&self, name: &str) -> Result<(&CatalogEntry, &NamedFront)> {
        self.entries
            .iter()
            .find_map(|e| e.fronts.iter().find(|f| f.name == name).map(|f| (e, f)))
            .ok_or_else(|| Error::UnknownName(name.to_string()))
    }

    pub fn presentation(&self, name: &str) -> Result<&NamedPresentation> {
        self.entries
            .iter()
            .find_map(|e| e.presentations.iter().find(|p| p.name == name))
            .ok_or_else(|| Error::UnknownName(name.to_string()))
    }

    /// Legendrian realizations of a knot entry: invariants of its planar
    /// fronts followed by declared ones, each with its source.
    pub fn realizations(&self, name: &str) -> Result<Vec<(LegendrianInvariants, String)>> {
        let e = self.entry_named(name)?;
        let mut out = Vec::new();
        for f in e.fronts.iter().filter(|f| f.diagram.is_planar()) {
            out.push((f.diagram.invariants()?, format!("front {}", f.name)));
        }
        for d in &e.legendrian {
            out.push((d.invariants, d.citation.clone()));
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn no_files(f: &str) -> Result<String> {
        Err(Error::CatalogParse {
            location: f.into(),
            msg: "no files".into(),
        })
    }

    #[test]
    fn bundled_catalog_loads() {
        let c = Catalog::bundled();
        let names: Vec<&str> = c.entries().iter().map(|e| e.name.as_str()).collect();
        for n in [
            "unknot",
            "RH-trefoil",
            "figure-eight",
            "3-twist-negative-clasp",
            "whitehead-double-RH-trefoil",
            "paper-pattern-P",
        ] {
            assert!(names.contains(&n), "{n}");
        }
        assert!(c.knot("whitehead-double-RH-trefoil").unwrap().alexander().is_one());
        let (_, f) = c.front("legendrian-RH-trefoil").unwrap();
        assert_eq!(f.diagram.invariants().unwrap().tb, 0);
        let p = c
            .entry_named("paper-pattern-P")
            .unwrap()
            .pattern_data()
            .unwrap()
            .unwrap();
        assert_eq!((p.winding, p.tb, p.rot), (1, 2, 0));
        assert!(matches!(c.knot("nope"), Err(Error::UnknownName(_))));
    }

    #[test]
    fn empty_catalog() {
        assert!(Catalog::from_json("  \n", no_files).unwrap().entries().is_empty());
        assert!(Catalog::from_json("[]", no_files).unwrap().entries().is_empty());
    }

    #[test]
    fn rejects_bad_entries() {
        let bad_det = r#"[{"name": "x", "seifert_matrix": [[1, 0], [0, 1]]}]"#;
        assert!(matches!(
            Catalog::from_json(bad_det, no_files),
            Err(Error::CatalogValidation { .. })
        ));
        let bad_alex = r#"[{"name": "x", "seifert_matrix": [[-1, 1], [0, -1]], "alexander": "1"}]"#;
        assert!(matches!(
            Catalog::from_json(bad_alex, no_files),
            Err(Error::CatalogValidation { .. })
        ));
        let bad_tau = r#"[{"name": "x", "seifert_matrix": [[-1, 1], [0, -1]],
            "genus": {"value": 1, "citation": "c"}, "tau": {"value": 2, "citation": "c"}}]"#;
        assert!(matches!(
            Catalog::from_json(bad_tau, no_files),
            Err(Error::CatalogValidation { .. })
        ));
        let no_cite = r#"[{"name": "x", "seifert_matrix": [], "tau": {"value": 0}}]"#;
        assert!(matches!(
            Catalog::from_json(no_cite, no_files),
            Err(Error::CatalogParse { .. })
        ));
        let dup = r#"[{"name": "x"}, {"name": "x"}]"#;
        assert!(matches!(
            Catalog::from_json(dup, no_files),
            Err(Error::CatalogValidation { .. })
        ));
        let syntax = "[{\"name\": }]";
        match Catalog::from_json(syntax, no_files) {
            Err(Error::CatalogParse { location, .. }) => assert_eq!(location, "line 1 column 11"),
            other => panic!("{other:?}"),
        }
    }
}
