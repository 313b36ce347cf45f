use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use concordance::cabling::{
    self, finite_order_obstruction, fox_milnor_obstruction, rational_concordance_verdict, tau_cable_rule, KnotProfile,
    ObstructionReport, SearchOptions, VerdictReport, Witness, DEFAULT_ANGLE_BOUND, DEFAULT_K_MAX,
};
use concordance::catalog::Catalog;
use concordance::legendrian::{
    genus_bounds, satellite_invariants, theorem31_pipeline, FrontDiagram, LegendrianInvariants, PatternData, TildeClass,
};
use concordance::surgery::{cobordism_meridian_check, first_homology, localize};
use concordance::{Error, RootOfUnity};
use num_bigint::BigInt;
use serde::Serialize;
use serde_json::json;

const CATALOG_ENV: &str = "CONCORDANCE_CATALOG";

#[derive(Parser)]
#[command(name = "concordance", version, about = "Obstructions to rational knot concordance")]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Table)]
    output: Format,
    /// Catalog file (default: $CONCORDANCE_CATALOG, else the bundled catalog).
    #[arg(long, global = true)]
    catalog: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Table,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// List catalog entries.
    Catalog,
    /// Exact Levine–Tristram signature at omega = exp(2 pi i a/b).
    Signature {
        knot: String,
        #[arg(long)]
        omega: RootOfUnity,
        #[arg(long)]
        cable: Option<u32>,
    },
    /// Alexander polynomial and its factorization.
    Alexander {
        knot: String,
        #[arg(long)]
        cable: Option<u32>,
    },
    /// Signature function on the upper half circle as a step table.
    Sigfn {
        knot: String,
        #[arg(long)]
        cable: Option<u32>,
    },
    /// Search for omega with sigma(omega) = 0 != sigma(omega^p).
    CableObstruction {
        knot: String,
        #[arg(long, alias = "cable")]
        p: u32,
        #[arg(long, default_value_t = DEFAULT_ANGLE_BOUND)]
        angle_denominator_bound: u64,
    },
    /// Fox–Milnor test of K against OTHER, or against K(p,1).
    FoxMilnor {
        knot: String,
        other: Option<String>,
        #[arg(long, alias = "p", required_unless_present = "other")]
        cable: Option<u32>,
        #[arg(long, default_value_t = DEFAULT_K_MAX)]
        k_max: u32,
    },
    /// Legendrian front invariants and satellites.
    Legendrian {
        #[command(subcommand)]
        action: LegendrianCmd,
    },
    /// Slice-genus increase for a satellite with a sharp companion.
    Theorem31 {
        knot: String,
        #[arg(long, default_value = "paper-pattern-P")]
        pattern: String,
    },
    /// First homology of a surgery presentation and the meridian relation.
    HomologyCheck {
        presentation: String,
        #[arg(long)]
        p: Option<u64>,
        #[arg(long)]
        mu0: Option<String>,
        #[arg(long)]
        mu1: Option<String>,
    },
    /// All obstructions to K and OTHER (or K(p,1)) being rationally concordant.
    Verdict {
        knot: String,
        other: Option<String>,
        #[arg(long, alias = "p", required_unless_present = "other")]
        cable: Option<u32>,
        #[arg(long, default_value_t = DEFAULT_K_MAX)]
        k_max: u32,
        #[arg(long, default_value_t = DEFAULT_ANGLE_BOUND)]
        angle_denominator_bound: u64,
    },
}

#[derive(Subcommand)]
enum LegendrianCmd {
    /// Invariants of a catalog front (or a front file).
    Front { front: String },
    /// tb and rot of the satellite of a pattern front and a companion front.
    Satellite { pattern: String, companion: String },
}

struct Output {
    json: serde_json::Value,
    table: String,
}

fn out<T: Serialize>(v: &T, table: String) -> Output {
    Output {
        json: serde_json::to_value(v).expect("reports serialize"),
        table,
    }
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::HypothesisNotMet(_) | Error::ClassMismatch { .. } | Error::MissingTau(_) => 3,
        Error::ZeroPolynomial => 4,
        _ => 2,
    }
}

fn load_catalog(path: &Option<PathBuf>) -> Result<Catalog, Error> {
    let path = path
        .clone()
        .or_else(|| std::env::var_os(CATALOG_ENV).map(PathBuf::from));
    match path {
        Some(p) => Catalog::load(&p),
        None => Ok(Catalog::bundled()),
    }
}

fn knot(cat: &Catalog, name: &str, cable: Option<u32>) -> Result<KnotProfile, Error> {
    let k = cat.knot(name)?;
    Ok(match cable {
        Some(0) => return Err(Error::HypothesisNotMet("cable parameter must be positive".into())),
        Some(p) => tau_cable_rule(k, p).unwrap_or_else(|_| k.cable(p)),
        None => k.clone(),
    })
}

/// A catalog front by name, or a front file on disk.
fn front(cat: &Catalog, name: &str) -> Result<(FrontDiagram, Option<PatternData>), Error> {
    if let Ok((entry, f)) = cat.front(name) {
        let pattern = if f.diagram.is_planar() {
            None
        } else {
            let class = entry
                .pattern
                .clone()
                .unwrap_or_else(|| cabling::Cited::new(TildeClass::Other, "not declared"));
            Some(f.diagram.pattern_data(class)?)
        };
        return Ok((f.diagram.clone(), pattern));
    }
    let text = std::fs::read_to_string(name).map_err(|_| Error::UnknownName(name.to_string()))?;
    let d: FrontDiagram = text.parse()?;
    let pattern = if d.is_planar() {
        None
    } else {
        Some(d.pattern_data(cabling::Cited::new(TildeClass::Other, "not declared"))?)
    };
    Ok((d, pattern))
}

fn describe_witness(w: &Witness) -> String {
    match w {
        Witness::CableSignature {
            omega,
            sigma,
            omega_power,
            sigma_cable,
            exact_check,
        } => format!(
            "omega = {omega}: sigma(omega) = {sigma}, sigma(omega^p = {omega_power}) = {sigma_cable}{}",
            if *exact_check { " [exact check]" } else { "" }
        ),
        Witness::SignatureMismatch {
            omega,
            sigma_0,
            sigma_1,
            exact_check,
        } => format!(
            "omega = {omega}: sigma_0 = {sigma_0}, sigma_1 = {sigma_1}{}",
            if *exact_check { " [exact check]" } else { "" }
        ),
        Witness::FoxMilnorFailure {
            k, product, violation, ..
        } => {
            format!(
                "k = {k}: {product} fails ({})",
                serde_json::to_string(violation).unwrap()
            )
        }
        Witness::FoxMilnorPairing { k, product, f } => format!("k = {k}: {product} = f(t) f(t^-1), f = {f}"),
        Witness::TauMismatch { tau_0, tau_1 } => format!(
            "tau_0 = {} [{}], tau_1 = {} [{}]",
            tau_0.value, tau_0.citation, tau_1.value, tau_1.citation
        ),
    }
}

fn report_table(r: &ObstructionReport) -> String {
    let mut s = String::new();
    writeln!(s, "{}: {}", r.category, r.verdict).unwrap();
    for w in &r.witnesses {
        writeln!(s, "  witness  {}", describe_witness(w)).unwrap();
    }
    for a in &r.assumptions {
        writeln!(s, "  assumes  {a}").unwrap();
    }
    s
}

fn verdict_table(v: &VerdictReport) -> String {
    let mut s = format!("K0: {}\nK1: {}\nsummary: {}\n", v.knots[0], v.knots[1], v.summary);
    s += &report_table(&v.topological);
    s += &report_table(&v.smooth);
    for (name, ts) in v.knots.iter().zip(&v.topologically_slice) {
        if let Some(c) = ts {
            writeln!(s, "{name} topologically slice: {} [{}]", c.value, c.citation).unwrap();
        }
    }
    s
}

fn inv_table(i: &LegendrianInvariants) -> String {
    let mut s = String::new();
    let opt = |x: Option<String>| x.unwrap_or_else(|| "-".into());
    writeln!(s, "writhe  cusps  down-left  up-right  tb  rot  winding").unwrap();
    writeln!(
        s,
        "{:>6}  {:>5}  {:>9}  {:>8}  {:>2}  {:>3}  {:>7}",
        opt(i.writhe.map(|x| x.to_string())),
        opt(i.cusps.map(|x| x.to_string())),
        opt(i.down_left_cusps.map(|x| x.to_string())),
        opt(i.up_right_cusps.map(|x| x.to_string())),
        i.tb,
        i.rot,
        opt(i.winding.map(|x| x.to_string())),
    )
    .unwrap();
    s
}

fn run(cli: &Cli) -> Result<Output, Error> {
    let cat = load_catalog(&cli.catalog)?;
    match &cli.command {
        Command::Catalog => {
            let rows: Vec<_> = cat
                .entries()
                .iter()
                .map(|e| {
                    let kind = if e.profile.is_some() {
                        "knot"
                    } else if e.pattern.is_some() {
                        "pattern"
                    } else {
                        "presentations"
                    };
                    json!({
                        "name": e.name,
                        "kind": kind,
                        "fronts": e.fronts.iter().map(|f| &f.name).collect::<Vec<_>>(),
                        "presentations": e.presentations.iter().map(|p| &p.name).collect::<Vec<_>>(),
                    })
                })
                .collect();
            let mut t = String::new();
            for r in &rows {
                writeln!(
                    t,
                    "{:<30} {:<14} {}",
                    r["name"].as_str().unwrap(),
                    r["kind"].as_str().unwrap(),
                    {
                        let mut names: Vec<String> = Vec::new();
                        for key in ["fronts", "presentations"] {
                            names.extend(
                                r[key]
                                    .as_array()
                                    .unwrap()
                                    .iter()
                                    .map(|v| v.as_str().unwrap().to_string()),
                            );
                        }
                        names.join(" ")
                    }
                )
                .unwrap();
            }
            Ok(out(&rows, t))
        }
        Command::Signature {
            knot: name,
            omega,
            cable,
        } => {
            let k = knot(&cat, name, *cable)?;
            let sigma = k
                .exact_signature(omega)
                .ok_or_else(|| Error::MissingSeifert(k.name.clone()))??;
            let v = json!({ "knot": k.name, "omega": omega, "signature": sigma });
            Ok(out(&v, format!("sigma_{}({omega}) = {sigma}\n", k.name)))
        }
        Command::Alexander { knot: name, cable } => {
            let k = knot(&cat, name, *cable)?;
            let fac = k.alexander().factor()?;
            let mut t = format!("{}: {}\n", k.name, k.alexander());
            for (f, m) in &fac.factors {
                writeln!(t, "  factor  ({f})^{m}").unwrap();
            }
            let v = json!({ "knot": k.name, "alexander": k.alexander(), "factorization": fac });
            Ok(out(&v, t))
        }
        Command::Sigfn { knot: name, cable } => {
            let k = knot(&cat, name, *cable)?;
            let sf = k
                .signature_function()
                .ok_or_else(|| Error::MissingSeifert(k.name.clone()))?;
            let table = sf.table();
            let mut t = format!("{}  jump polynomial {}\n", k.name, table.jump_polynomial);
            writeln!(t, "{:>12}  {:>12}  {:>6}  sample", "from", "to", "sigma").unwrap();
            for a in &table.arcs {
                writeln!(
                    t,
                    "{:>12.9}  {:>12.9}  {:>6}  {}",
                    a.from_turns, a.to_turns, a.value, a.sample
                )
                .unwrap();
            }
            let v = json!({ "knot": k.name, "table": table });
            Ok(out(&v, t))
        }
        Command::CableObstruction {
            knot: name,
            p,
            angle_denominator_bound,
        } => {
            let k = knot(&cat, name, None)?;
            let r = finite_order_obstruction(&k, *p, *angle_denominator_bound)?;
            let t = format!("{} vs {}({p},1)\n{}", k.name, k.name, report_table(&r));
            Ok(out(&json!({ "knot": k.name, "p": p, "report": r }), t))
        }
        Command::FoxMilnor {
            knot: name,
            other,
            cable,
            k_max,
        } => {
            let k0 = knot(&cat, name, None)?;
            let k1 = match (other, cable) {
                (Some(o), _) => knot(&cat, o, *cable)?,
                (None, Some(p)) => knot(&cat, name, Some(*p))?,
                (None, None) => unreachable!("clap requires OTHER or --cable"),
            };
            let r = fox_milnor_obstruction(&k0, &k1, *k_max)?;
            let t = format!("{} vs {}\n{}", k0.name, k1.name, report_table(&r));
            Ok(out(&json!({ "knots": [k0.name, k1.name], "report": r }), t))
        }
        Command::Legendrian { action } => match action {
            LegendrianCmd::Front { front: name } => {
                let (d, pattern) = front(&cat, name)?;
                let inv = d.invariants()?;
                let mut t = inv_table(&inv);
                let bounds = d.is_planar().then(|| genus_bounds(&inv));
                if let Some(b) = &bounds {
                    writeln!(t, "bounds: g4 >= {}, tau >= {}, s >= {}", b.g4_min, b.tau_min, b.s_min).unwrap();
                }
                let v = json!({ "front": name, "invariants": inv, "bounds": bounds, "pattern": pattern });
                Ok(out(&v, t))
            }
            LegendrianCmd::Satellite { pattern, companion } => {
                let (_, p) = front(&cat, pattern)?;
                let p = p.ok_or_else(|| Error::InvalidFront(format!("{pattern} has no boundary strands")))?;
                let (kd, _) = front(&cat, companion)?;
                if !kd.is_planar() {
                    return Err(Error::InvalidFront(format!("{companion} is not a front in the plane")));
                }
                let kinv = kd.invariants()?;
                let sat = satellite_invariants(&p, &kinv);
                let b = genus_bounds(&sat);
                let t = format!(
                    "pattern {pattern}: w = {}, tb = {}, rot = {}\ncompanion {companion}: tb = {}, rot = {}\nsatellite: tb = {}, rot = {}\nbounds: g4 >= {}, tau >= {}, s >= {}\n",
                    p.winding, p.tb, p.rot, kinv.tb, kinv.rot, sat.tb, sat.rot, b.g4_min, b.tau_min, b.s_min
                );
                let v = json!({
                    "pattern": pattern, "pattern_data": p,
                    "companion": companion, "companion_invariants": kinv,
                    "satellite": sat, "bounds": b,
                });
                Ok(out(&v, t))
            }
        },
        Command::Theorem31 { knot: name, pattern } => {
            let k = cat.knot(name)?;
            let g = k.genus.as_ref().map(|g| g.value as i64);
            let real = cat.realizations(name)?;
            let pick = real
                .iter()
                .find(|(i, _)| Some(i.tb) == g.map(|g| 2 * g - 1) && i.rot == 0)
                .or(real.first())
                .ok_or_else(|| {
                    Error::HypothesisNotMet(format!("no Legendrian realization of {name} in the catalog"))
                })?;
            let (_, pd) = front(&cat, pattern)?;
            let pd = pd.ok_or_else(|| Error::InvalidFront(format!("{pattern} has no boundary strands")))?;
            let r = theorem31_pipeline(k, &pick.0, &pd)?;
            let mut t = format!(
                "companion {} (g = {}): tb = {}, rot = {}  [{}]\nstabilized: tb = {}, rot = {}\nsatellite: tb = {}, rot = {}\n",
                r.knot, r.genus, r.companion.tb, r.companion.rot, pick.1, r.stabilized.tb, r.stabilized.rot, r.satellite.tb, r.satellite.rot
            );
            let (b, c) = (&r.satellite_bounds, &r.companion_values);
            writeln!(
                t,
                "g4(P(K)) >= {} vs g4(K) = {}  increases: {}",
                b.g4_min, c.g4, r.g4_increases
            )
            .unwrap();
            writeln!(
                t,
                "tau(P(K)) >= {} vs tau(K) = {}  increases: {}",
                b.tau_min, c.tau, r.tau_increases
            )
            .unwrap();
            writeln!(
                t,
                "s(P(K)) >= {} vs s(K) = {}  increases: {}",
                b.s_min, c.s, r.s_increases
            )
            .unwrap();
            for n in &r.notes {
                writeln!(t, "note: {n}").unwrap();
            }
            let v = json!({ "report": r, "realization_source": pick.1 });
            Ok(out(&v, t))
        }
        Command::HomologyCheck {
            presentation,
            p,
            mu0,
            mu1,
        } => {
            let np = cat.presentation(presentation)?;
            let pick = |flag: &Option<String>, dflt: &Option<String>, which: &str| {
                flag.clone()
                    .or_else(|| dflt.clone())
                    .ok_or_else(|| Error::Presentation(format!("no {which} class given")))
            };
            let (a, b) = (pick(mu0, &np.mu0, "mu0")?, pick(mu1, &np.mu1, "mu1")?);
            let p: BigInt = p.map(BigInt::from).or_else(|| np.p.clone()).unwrap_or_else(|| 1.into());
            let g = first_homology(&np.presentation);
            let lg = localize(&g, &p);
            let r = cobordism_meridian_check(&np.presentation, &a, &b, &p)?;
            let t = format!(
                "H1 = {}\nH1 tensor Z[1/{p}] = {}\n{a} = {p} * {b}: {}\nunit relation after inverting {p}: {}\n{a} spans a free summand over Z[1/{p}]: {}\n",
                r.group, r.localized_group, r.integral_relation, r.localized_unit_relation, r.generates_free_summand
            );
            let v = json!({ "presentation": presentation, "homology": g, "localized": lg, "check": r });
            Ok(out(&v, t))
        }
        Command::Verdict {
            knot: name,
            other,
            cable,
            k_max,
            angle_denominator_bound,
        } => {
            let k0 = knot(&cat, name, None)?;
            let k1 = match (other, cable) {
                (Some(o), _) => knot(&cat, o, *cable)?,
                (None, Some(p)) => knot(&cat, name, Some(*p))?,
                (None, None) => unreachable!("clap requires OTHER or --cable"),
            };
            let opts = SearchOptions {
                angle_denominator_bound: *angle_denominator_bound,
                k_max: *k_max,
            };
            let r = rational_concordance_verdict(&k0, &k1, &opts)?;
            let t = verdict_table(&r);
            Ok(out(&r, t))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = std::panic::catch_unwind(|| run(&cli));
    match result {
        Ok(Ok(o)) => {
            match cli.output {
                Format::Json => println!("{}", serde_json::to_string_pretty(&o.json).unwrap()),
                Format::Table => print!("{}", o.table),
            }
            ExitCode::SUCCESS
        }
        Ok(Err(e)) => {
            let code = exit_code(&e);
            match cli.output {
                Format::Json => println!(
                    "{}",
                    serde_json::to_string_pretty(&json!({ "error": e.to_string(), "exit_code": code })).unwrap()
                ),
                Format::Table => eprintln!("error: {e}"),
            }
            ExitCode::from(code)
        }
        Err(_) => ExitCode::from(4),
    }
}
